"""Bundled model files."""

from importlib import resources
from pathlib import Path

BUNDLED_MODEL_NAME = "danish_road_climate.model"


def bundled_model_path() -> Path:
    """Filesystem path of the packaged Danish road climate model."""
    return Path(resources.files(__name__).joinpath(BUNDLED_MODEL_NAME))  # type: ignore[arg-type]
