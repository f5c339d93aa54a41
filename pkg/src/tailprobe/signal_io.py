"""Signal loading: CSV (one value per line) and WAV (PCM int or float).

Loaded signals are validated immediately: NaN or Inf anywhere is a data
error reported with the offending line (CSV) or sample index (WAV). WAV
integer samples are scaled to [-1, 1); multi-channel files use the first
channel. CSV files carry no sample rate, so one must be supplied (the
package default is 25 kHz).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.io import wavfile

from .errors import ConfigError, DataError

DEFAULT_SAMPLE_RATE_HZ = 25000.0


@dataclass(frozen=True)
class Signal:
    """A finite 1-D signal with its sample rate."""

    values: np.ndarray
    sample_rate_hz: float
    source: str | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or len(v) == 0:
            raise DataError(f"signal must be a nonempty 1-D array, got shape {v.shape}")
        bad = np.flatnonzero(~np.isfinite(v))
        if len(bad):
            raise DataError(
                f"signal contains NaN/Inf at sample index {int(bad[0])} "
                f"({len(bad)} bad values total)"
            )
        fs = float(self.sample_rate_hz)
        if not np.isfinite(fs) or fs <= 0:
            raise ConfigError(f"sample_rate_hz must be positive, got {fs!r}")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "sample_rate_hz", fs)


def _load_csv(path: str, sample_rate_hz: float | None) -> Signal:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            try:
                x = float(text)
            except ValueError as exc:
                raise DataError(
                    f"{path}: line {lineno}: not a number: {text!r}"
                ) from exc
            if not np.isfinite(x):
                raise DataError(f"{path}: line {lineno}: NaN/Inf value {text!r}")
            values.append(x)
    if not values:
        raise DataError(f"{path}: no samples found")
    fs = DEFAULT_SAMPLE_RATE_HZ if sample_rate_hz is None else float(sample_rate_hz)
    return Signal(values=np.asarray(values), sample_rate_hz=fs, source=path)


_INT_SCALE = {np.dtype(np.int16): 2.0**15, np.dtype(np.int32): 2.0**31}


def _load_wav(path: str, sample_rate_hz: float | None) -> Signal:
    try:
        rate, data = wavfile.read(path)
    except ValueError as exc:
        raise DataError(f"{path}: unreadable WAV file: {exc}") from exc
    if sample_rate_hz is not None and float(sample_rate_hz) != float(rate):
        raise ConfigError(
            f"{path}: header sample rate {rate} Hz conflicts with requested "
            f"{sample_rate_hz} Hz"
        )
    if data.ndim == 2:
        data = data[:, 0]  # first channel
    if data.dtype in _INT_SCALE:
        values = data.astype(np.float64) / _INT_SCALE[data.dtype]
    elif data.dtype == np.uint8:
        values = (data.astype(np.float64) - 128.0) / 128.0
    elif data.dtype in (np.dtype(np.float32), np.dtype(np.float64)):
        values = data.astype(np.float64)
    else:
        raise DataError(f"{path}: unsupported WAV sample format {data.dtype}")
    bad = np.flatnonzero(~np.isfinite(values))
    if len(bad):
        raise DataError(
            f"{path}: NaN/Inf at sample index {int(bad[0])} "
            f"({len(bad)} bad values total)"
        )
    return Signal(values=values, sample_rate_hz=float(rate), source=path)


def load_signal(path: str, sample_rate_hz: float | None = None) -> Signal:
    """Load a signal from .csv/.txt (one value per line) or .wav."""
    lower = path.lower()
    try:
        if lower.endswith((".csv", ".txt")):
            return _load_csv(path, sample_rate_hz)
        if lower.endswith(".wav"):
            return _load_wav(path, sample_rate_hz)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    raise ConfigError(f"unsupported input format: {path} (use .csv, .txt, or .wav)")
