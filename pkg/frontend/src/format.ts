/** Number formatting: the UI does no probability arithmetic beyond
 * turning server probabilities into display percentages. */

/** One-decimal percentage, e.g. 0.3618 -> "36.2%". */
export function formatPercent(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

/** Width of a posterior bar in percent, clamped to [0, 100]. */
export function barWidth(probability: number): number {
  return Math.min(100, Math.max(0, probability * 100));
}

/** Background color for a sweep grid cell: white at 0 risk to saturated
 * red at 1. */
export function cellColor(probability: number): string {
  const clamped = Math.min(1, Math.max(0, probability));
  const lightness = 97 - clamped * 55;
  return `hsl(8, 76%, ${lightness.toFixed(1)}%)`;
}

export function shortHash(hash: string): string {
  return hash.slice(0, 12);
}
