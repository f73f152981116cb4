/** Display formatting. */

import { describe, expect, it } from "vitest";

import { barWidth, cellColor, formatPercent, shortHash } from "../src/format.js";


describe("formatPercent", () => {
  it("renders one decimal place", () => {
    expect(formatPercent(0)).toBe("0.0%");
    expect(formatPercent(1)).toBe("100.0%");
    expect(formatPercent(0.345)).toBe("34.5%");
    expect(formatPercent(0.3618329152444296)).toBe("36.2%");
    expect(formatPercent(0.8657831611175227)).toBe("86.6%");
  });

  it("rounds, not truncates", () => {
    expect(formatPercent(0.73089)).toBe("73.1%");
    expect(formatPercent(0.0004)).toBe("0.0%");
    expect(formatPercent(0.9996)).toBe("100.0%");
  });
});


describe("barWidth", () => {
  it("clamps to the track", () => {
    expect(barWidth(-0.1)).toBe(0);
    expect(barWidth(0.25)).toBe(25);
    expect(barWidth(1.7)).toBe(100);
  });
});


describe("cellColor", () => {
  it("darkens with risk and stays a valid hsl string", () => {
    const low = cellColor(0.0);
    const high = cellColor(1.0);
    expect(low).toMatch(/^hsl\(8, 76%, \d+(\.\d+)?%\)$/);
    const lightnessOf = (s: string) => parseFloat(s.split(",")[2]);
    expect(lightnessOf(low)).toBeGreaterThan(lightnessOf(high));
    expect(cellColor(2)).toBe(high);
  });
});


describe("shortHash", () => {
  it("keeps a 12-character prefix", () => {
    expect(shortHash("726fad159abfbcff7e12")).toBe("726fad159abf");
  });
});
