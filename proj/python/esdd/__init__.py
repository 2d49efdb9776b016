# Copyright 2026 ESDD Toolkit Authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
"""Environmental-sound deepfake detection toolkit (python bindings)."""

from ._core import (
    ConfigError,
    DataError,
    Model,
    compute_eer,
    ensemble,
    fix_duration,
    griffin_lim,
    mel_spectrogram,
    spec_augment,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Model",
    "compute_eer",
    "ensemble",
    "fix_duration",
    "griffin_lim",
    "mel_spectrogram",
    "spec_augment",
]

__version__ = "0.1.0"
