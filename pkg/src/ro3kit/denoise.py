"""Wavelet shrinkage denoising with the MAD/universal threshold.

Noise scale is the median absolute coefficient divided by 0.6745; the
shrinkage threshold is sigma * sqrt(2 ln N) with N the pixel count of the
subband the threshold is applied to.  Both hard and soft shrinkage are
provided; the approximation band is never touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image_io import ImageBuf, pad_to_multiple
from .wavelet import DAUB4, WaveletBasis, dwt2_multi, idwt2_multi

MAD_SCALE = 0.6745

THRESHOLD_MODES = ("soft", "hard")


def mad_sigma(coeffs: np.ndarray) -> float:
    """Robust noise estimate: median(|coeffs|) / 0.6745."""
    c = np.asarray(coeffs, dtype=np.float64)
    if c.size == 0:
        raise ValueError("mad_sigma needs a non-empty coefficient array")
    return float(np.median(np.abs(c)) / MAD_SCALE)


def universal_threshold(sigma: float, n: int) -> float:
    """Donoho-Johnstone threshold sigma * sqrt(2 ln n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return sigma * math.sqrt(2.0 * math.log(n))


@dataclass(frozen=True)
class ThresholdSpec:
    """Shrinkage parameters derived from one detail subband."""

    mode: str
    sigma: float
    lam: float
    n: int

    @classmethod
    def from_subband(cls, coeffs: np.ndarray, mode: str) -> "ThresholdSpec":
        if mode not in THRESHOLD_MODES:
            raise ValueError(f"mode must be one of {THRESHOLD_MODES}")
        sigma = mad_sigma(coeffs)
        n = int(np.asarray(coeffs).size)
        return cls(mode=mode, sigma=sigma, lam=universal_threshold(sigma, n), n=n)


def hard_threshold(plane: np.ndarray, lam: float) -> np.ndarray:
    """Zero every coefficient with |x| <= lam; keep the rest verbatim."""
    if lam < 0:
        raise ValueError("threshold must be >= 0")
    p = np.asarray(plane, dtype=np.float64)
    return np.where(np.abs(p) <= lam, 0.0, p)


def soft_threshold(plane: np.ndarray, lam: float, positive_only: bool = False) -> np.ndarray:
    """Shrink toward zero: sgn(x) * max(|x| - lam, 0).

    positive_only reproduces the asymmetric variant that zeroes |x| <= lam
    but subtracts lam only from coefficients above +lam, leaving values
    below -lam unchanged.
    """
    if lam < 0:
        raise ValueError("threshold must be >= 0")
    p = np.asarray(plane, dtype=np.float64)
    if positive_only:
        out = np.where(np.abs(p) <= lam, 0.0, p)
        return np.where(p > lam, p - lam, out)
    return np.sign(p) * np.maximum(np.abs(p) - lam, 0.0)


def _shrink(coeffs: np.ndarray, mode: str, lam: float | None) -> np.ndarray:
    if lam is None:
        lam = ThresholdSpec.from_subband(coeffs, mode).lam
    if mode == "hard":
        return hard_threshold(coeffs, lam)
    return soft_threshold(coeffs, lam)


def denoise_threshold(
    img: ImageBuf,
    basis: WaveletBasis = DAUB4,
    levels: int = 1,
    mode: str = "soft",
    lam: float | None = None,
) -> ImageBuf:
    """Multi-level shrinkage denoiser.

    By default each detail subband gets its own MAD sigma and universal
    threshold (N = that subband's pixel count); pass lam to shrink every
    subband with a fixed threshold instead.  The approximation band passes
    through, and the output is cropped back to the original extent.
    """
    if mode not in THRESHOLD_MODES:
        raise ValueError(f"mode must be one of {THRESHOLD_MODES}")
    padded = pad_to_multiple(img.cropped(), 1 << levels)
    planes = []
    for p in padded.planes:
        pyramid = dwt2_multi(p, basis, levels)
        for quad in pyramid:
            quad.lh = _shrink(quad.lh, mode, lam)
            quad.hl = _shrink(quad.hl, mode, lam)
            quad.hh = _shrink(quad.hh, mode, lam)
        planes.append(idwt2_multi(pyramid, basis))
    out = ImageBuf(planes=planes, orig_width=img.orig_width, orig_height=img.orig_height)
    return out.cropped()
