"""Separable 2-D orthonormal wavelet transform (Haar and Daubechies-4).

One analysis step splits a plane with even dimensions into four half-size
subbands LL/LH/HL/HH.  Filters are orthonormal (lowpass taps sum to sqrt(2)),
so a constant plane of value c maps to an LL plane of constant 2c and the
transform conserves energy exactly.  Boundaries are handled by periodizing
the signal, which keeps the transform orthogonal at critical sampling for
any even length; this is what makes synthesize(analyze(p)) == p hold to
machine precision for both bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SQRT2 = np.sqrt(2.0)

# Canonical 8-tap Daubechies-4 scaling coefficients (orthonormal, sum sqrt 2).
_DB4_LO = np.array([
    0.23037781330885523,
    0.7148465705525415,
    0.6308807679295904,
    -0.02798376941698385,
    -0.18703481171888114,
    0.030841381835986965,
    0.032883011666982945,
    -0.010597401784997278,
])


def _qmf(lowpass: np.ndarray) -> np.ndarray:
    """Quadrature-mirror highpass: g[n] = (-1)^n * h[L-1-n]."""
    g = lowpass[::-1].copy()
    g[1::2] *= -1.0
    return g


@dataclass(frozen=True)
class WaveletBasis:
    """An orthonormal analysis filter pair; highpass defaults to the QMF mate."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray | None = None

    def __post_init__(self):
        lo = np.asarray(self.lowpass, dtype=np.float64)
        object.__setattr__(self, "lowpass", lo)
        hi = _qmf(lo) if self.highpass is None else self.highpass
        object.__setattr__(self, "highpass", np.asarray(hi, dtype=np.float64))


HAAR = WaveletBasis("haar", np.array([1.0, 1.0]) / _SQRT2)
DAUB4 = WaveletBasis("db4", _DB4_LO)

_BASES = {"haar": HAAR, "db1": HAAR, "db4": DAUB4, "daub4": DAUB4}


def get_basis(name: str) -> WaveletBasis:
    """Look up a basis by name ('haar'/'db1' or 'db4')."""
    try:
        return _BASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown wavelet basis {name!r}") from None


@dataclass
class SubbandQuad:
    """The four subbands of one analysis step, each half the parent extent.

    lh holds the vertical detail (highpass across columns), hl the
    horizontal detail (highpass across rows), hh the diagonal detail.
    """

    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray
    level: int = 1

    def __post_init__(self):
        shapes = {b.shape for b in (self.ll, self.lh, self.hl, self.hh)}
        if len(shapes) != 1:
            raise ValueError(f"subband dimensions differ: {sorted(shapes)}")


def _analyze_axis(x: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """One periodized analysis step along the last axis (length must be even)."""
    n = x.shape[-1]
    if n % 2:
        raise ValueError(f"axis length {n} is odd; pad the input first")
    half = n // 2
    start = 2 * np.arange(half)
    low = np.zeros(x.shape[:-1] + (half,), dtype=np.float64)
    high = np.zeros_like(low)
    for k in range(lo.shape[0]):
        col = x[..., (start + k) % n]
        low += lo[k] * col
        high += hi[k] * col
    return low, high


def _synthesize_axis(low: np.ndarray, high: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Inverse of _analyze_axis (transpose of the orthogonal analysis map)."""
    half = low.shape[-1]
    n = 2 * half
    out = np.zeros(low.shape[:-1] + (n,), dtype=np.float64)
    start = 2 * np.arange(half)
    for k in range(lo.shape[0]):
        # start + k are distinct mod n for fixed k, so += has no collisions
        out[..., (start + k) % n] += lo[k] * low + hi[k] * high
    return out


def dwt2(plane: np.ndarray, basis: WaveletBasis) -> SubbandQuad:
    """One 2-D analysis step: rows first, then columns.

    Requires even width and height; returns half-size subbands.
    """
    p = np.asarray(plane, dtype=np.float64)
    if p.ndim != 2:
        raise ValueError("dwt2 expects a 2-D plane")
    h, w = p.shape
    if h % 2 or w % 2:
        raise ValueError(f"plane dimensions {w}x{h} must be even")
    lo, hi = basis.lowpass, basis.highpass
    row_lo, row_hi = _analyze_axis(p, lo, hi)
    ll, hl = _analyze_axis(row_lo.T, lo, hi)
    lh, hh = _analyze_axis(row_hi.T, lo, hi)
    return SubbandQuad(ll=ll.T, lh=lh.T, hl=hl.T, hh=hh.T, level=1)


def idwt2(quad: SubbandQuad, basis: WaveletBasis) -> np.ndarray:
    """Exact inverse of dwt2."""
    lo, hi = basis.lowpass, basis.highpass
    row_lo = _synthesize_axis(quad.ll.T, quad.hl.T, lo, hi).T
    row_hi = _synthesize_axis(quad.lh.T, quad.hh.T, lo, hi).T
    return _synthesize_axis(row_lo, row_hi, lo, hi)


def dwt2_multi(plane: np.ndarray, basis: WaveletBasis, levels: int) -> list[SubbandQuad]:
    """Recursive analysis of the LL band; quad i in the result is level i+1."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    p = np.asarray(plane, dtype=np.float64)
    h, w = p.shape
    div = 1 << levels
    if h % div or w % div:
        raise ValueError(f"dimensions {w}x{h} not divisible by 2^{levels}")
    pyramid = []
    current = p
    for i in range(levels):
        quad = dwt2(current, basis)
        quad.level = i + 1
        pyramid.append(quad)
        current = quad.ll
    return pyramid


def idwt2_multi(pyramid: list[SubbandQuad], basis: WaveletBasis) -> np.ndarray:
    """Reconstruct a plane from a dwt2_multi pyramid."""
    if not pyramid:
        raise ValueError("empty pyramid")
    ll = pyramid[-1].ll
    for quad in reversed(pyramid):
        ll = idwt2(SubbandQuad(ll, quad.lh, quad.hl, quad.hh, quad.level), basis)
    return ll
