"""Quality and compression metrics plus intensity histograms.

MSE/PSNR/MAE compare a reference and a test image over all channel samples
(color divides by pixels x 3); CR and PSS quantify compressed sizes.
Histograms have 256 uniform bins over [0, 255] and support a normalized
intersection similarity in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image_io import ImageBuf

MAX_8BIT = 255.0


@dataclass
class MetricsReport:
    """MSE/PSNR/MAE for an image pair, optionally with CR/PSS."""

    mse: float
    psnr_db: float
    mae: float
    cr: float | None = None
    pss_percent: float | None = None
    max_value: float = MAX_8BIT

    def to_dict(self) -> dict:
        """JSON-ready form; an infinite PSNR serializes as the string 'inf'."""
        d = {
            "mse": self.mse,
            "psnr_db": "inf" if math.isinf(self.psnr_db) else self.psnr_db,
            "mae": self.mae,
        }
        if self.cr is not None:
            d["cr"] = self.cr
        if self.pss_percent is not None:
            d["pss_percent"] = self.pss_percent
        return d


def _paired_samples(a: ImageBuf, b: ImageBuf) -> tuple[np.ndarray, np.ndarray]:
    if a.channels != b.channels:
        raise ValueError(f"channel counts differ: {a.channels} vs {b.channels}")
    if a.planes[0].shape != b.planes[0].shape:
        raise ValueError(
            f"dimensions differ: {a.planes[0].shape} vs {b.planes[0].shape}"
        )
    return np.stack(a.planes), np.stack(b.planes)


def mse(a: ImageBuf, b: ImageBuf) -> float:
    """Mean squared error over all channel samples."""
    pa, pb = _paired_samples(a, b)
    return float(np.mean((pa - pb) ** 2))


def psnr(a: ImageBuf, b: ImageBuf, max_value: float = MAX_8BIT) -> float:
    """10 log10(max^2 / MSE); +inf for identical images."""
    return psnr_from_mse(mse(a, b), max_value)


def psnr_from_mse(mse_value: float, max_value: float = MAX_8BIT) -> float:
    if mse_value < 0:
        raise ValueError("MSE must be >= 0")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(max_value * max_value / mse_value)


def mae(a: ImageBuf, b: ImageBuf) -> float:
    """Mean absolute error over all channel samples."""
    pa, pb = _paired_samples(a, b)
    return float(np.mean(np.abs(pa - pb)))


def cr(uncompressed_bytes: int, compressed_bytes: int) -> float:
    """Compression ratio: uncompressed size over compressed size."""
    if uncompressed_bytes <= 0 or compressed_bytes <= 0:
        raise ValueError("sizes must be positive")
    return uncompressed_bytes / compressed_bytes


def pss(cr_value: float) -> float:
    """Percent space savings: (1 - 1/CR) * 100."""
    if cr_value <= 0:
        raise ValueError("compression ratio must be positive")
    return (1.0 - 1.0 / cr_value) * 100.0


def compare(
    a: ImageBuf,
    b: ImageBuf,
    uncompressed_bytes: int | None = None,
    compressed_bytes: int | None = None,
) -> MetricsReport:
    """Full report for a reference/test pair; CR/PSS when sizes are known."""
    m = mse(a, b)
    report = MetricsReport(mse=m, psnr_db=psnr_from_mse(m), mae=mae(a, b))
    if uncompressed_bytes is not None and compressed_bytes is not None:
        report.cr = cr(uncompressed_bytes, compressed_bytes)
        report.pss_percent = pss(report.cr)
    return report


@dataclass
class Histogram:
    """256 intensity bin counts."""

    bins: np.ndarray
    total: int


def histogram(plane: np.ndarray) -> Histogram:
    """256 uniform bins over [0, 255]; values are round-clamped for binning."""
    p = np.asarray(plane, dtype=np.float64)
    idx = np.clip(np.trunc(p + np.copysign(0.5, p)), 0.0, 255.0).astype(np.intp)
    bins = np.bincount(idx.ravel(), minlength=256)
    return Histogram(bins=bins, total=int(p.size))


def histogram_similarity(h1: Histogram, h2: Histogram) -> float:
    """Normalized intersection of two histograms, in [0, 1]."""
    if h1.total <= 0 or h2.total <= 0:
        raise ValueError("histograms must be non-empty")
    p1 = h1.bins / h1.total
    p2 = h2.bins / h2.total
    return float(np.minimum(p1, p2).sum())
