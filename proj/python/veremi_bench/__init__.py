"""VeReMi-format beacon traces: generation, misbehavior detection, evaluation."""

from ._core import (  # noqa: F401
    ConfigurationError,
    DataFormatError,
    IoError,
    __version__,
    default_thresholds,
    detect_run,
    euclidean_distance,
    generate_run,
    gini,
    write_report,
)

__all__ = [
    "ConfigurationError",
    "DataFormatError",
    "IoError",
    "__version__",
    "default_thresholds",
    "detect_run",
    "euclidean_distance",
    "generate_run",
    "gini",
    "write_report",
]
