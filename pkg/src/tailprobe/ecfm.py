"""Empirical cumulative fourth moment (ECFM) of a normalized series.

The trace C(k) = (1/k) * sum_{i<=k} (x_i - xbar)^4 uses the full-sample mean
throughout, so C is exactly the running average of a fixed transformed series
and its increments are d_k = C(k+1) - C(k). Finite-fourth-moment inputs
plateau; infinite-fourth-moment inputs show persistent jumps.

Normalization is robust: center by median (or mean) and divide by the
conditional standard deviation of the inner 10-90% of the data, so extreme
values cannot inflate the scale estimate they are judged against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError
from .quantiles import quantile


def cond_std(values, q_lo: float = 0.1, q_hi: float = 0.9) -> float:
    """Sample std (ddof=1) of the values lying within the [q_lo, q_hi]
    quantile band, inclusive."""
    v = np.asarray(values, dtype=float)
    if not 0.0 <= q_lo < q_hi <= 1.0:
        raise ConfigError(f"need 0 <= q_lo < q_hi <= 1, got ({q_lo}, {q_hi})")
    lo, hi = quantile(v, [q_lo, q_hi])
    inner = v[(v >= lo) & (v <= hi)]
    if len(inner) < 2:
        raise DataError(
            f"trimmed subset has {len(inner)} points; need >= 2 for a std"
        )
    return float(np.std(inner, ddof=1))


def normalize(values, center: str = "median") -> np.ndarray:
    """(v - center) / cond_std(v); raises on zero conditional std."""
    v = np.asarray(values, dtype=float)
    if center == "median":
        c = float(np.median(v))
    elif center == "mean":
        c = float(np.mean(v))
    else:
        raise ConfigError(f"center must be 'median' or 'mean', got {center!r}")
    s = cond_std(v)
    if s == 0.0:
        raise DataError("zero conditional standard deviation; cannot normalize")
    return (v - c) / s


@dataclass(frozen=True)
class EcfmTrace:
    """ECFM values C(1..n), their n-1 increments, and (when the series came
    from a spectrogram bin) the bin's center frequency."""

    values: np.ndarray
    increments: np.ndarray
    source_freq_hz: float | None = None


def ecfm(values, source_freq_hz: float | None = None) -> EcfmTrace:
    """Running fourth-moment trace of a series, using the full-sample mean."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or len(v) < 2:
        raise DataError(f"need a 1-D series of length >= 2, got shape {v.shape}")
    dev4 = (v - v.mean()) ** 4
    k = np.arange(1, len(v) + 1, dtype=float)
    c = np.cumsum(dev4) / k
    return EcfmTrace(values=c, increments=np.diff(c), source_freq_hz=source_freq_hz)
