"""Fixed 7x7 two-pass sharpening filter (post-decode edge enhancement).

The plane is zero-padded by 3 on every side, a vertical 7-tap pass with
weight -0.0129 runs over the interior rows, then a horizontal 7-tap sum of
that result plus 1.63 times the pre-vertical (padded) pixel runs over the
interior; everything outside the interior keeps its padded value and the
pad is cropped off.  Interior DC gain is 1.63 + 49 * (-0.0129) = 0.9979.

The zero pad deliberately contaminates a 3-pixel border; that behavior is
part of the contract.  Both passes accumulate tap by tap in ascending
order so the result is bit-identical to a scalar loop transcription.
"""

from __future__ import annotations

import numpy as np

from .image_io import ImageBuf

WINDOW = 7
PAD = WINDOW // 2
VERTICAL_TAP = -0.0129
CENTER_BOOST = 1.63
DC_GAIN = CENTER_BOOST + WINDOW * WINDOW * VERTICAL_TAP  # 0.9979


def deblur_plane(plane: np.ndarray) -> np.ndarray:
    """Apply the two-pass mask to one plane; output matches input dims."""
    p = np.asarray(plane, dtype=np.float64)
    rows, cols = p.shape
    padded = np.zeros((rows + 2 * PAD, cols + 2 * PAD), dtype=np.float64)
    padded[PAD : PAD + rows, PAD : PAD + cols] = p
    nr, nc = padded.shape

    # Vertical pass: rows PAD..nr-PAD-1, every column.
    vertical = padded.copy()
    acc = np.zeros((nr - 2 * PAD, nc), dtype=np.float64)
    for k in range(WINDOW):
        acc = acc + padded[k : k + nr - 2 * PAD, :] * VERTICAL_TAP
    vertical[PAD : nr - PAD, :] = acc

    # Horizontal pass over the interior; the boost uses the pre-vertical image.
    out = padded.copy()
    band = vertical[PAD : nr - PAD, :]
    acc = np.zeros((nr - 2 * PAD, nc - 2 * PAD), dtype=np.float64)
    for k in range(WINDOW):
        acc = acc + band[:, k : k + nc - 2 * PAD]
    out[PAD : nr - PAD, PAD : nc - PAD] = acc + CENTER_BOOST * padded[
        PAD : nr - PAD, PAD : nc - PAD
    ]
    return out[PAD : PAD + rows, PAD : PAD + cols]


def deblur(img: ImageBuf) -> ImageBuf:
    """Sharpen every channel; dimensions and metadata are unchanged."""
    return ImageBuf(
        planes=[deblur_plane(p) for p in img.planes],
        orig_width=img.orig_width,
        orig_height=img.orig_height,
    )
