#!/usr/bin/env python3
"""Regenerate the bundled model file from the builder in roadrisk.climate.

Writes the canonical document to the packaged data directory and to the
repository root (the CLI's default model path). Run after any change to
the model constants.
"""

from pathlib import Path

from roadrisk.climate import build_model_document
from roadrisk.model_io import save_model

REPO_ROOT = Path(__file__).resolve().parent.parent
TARGETS = [
    REPO_ROOT / "src" / "roadrisk" / "data" / "danish_road_climate.model",
    REPO_ROOT / "danish_road_climate.model",
]


def main() -> None:
    text = save_model(build_model_document())
    for target in TARGETS:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        print(f"wrote {target} ({len(text)} bytes)")


if __name__ == "__main__":
    main()
