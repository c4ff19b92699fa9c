"""Image loading, saving, padding and noise injection.

A plane is a 2-D float64 array in row-major order, nominal range [0, 255]
but unclamped while processing.  An ImageBuf bundles 1 (grayscale) or 3
(color) planes of identical shape together with the pre-padding size, so
pipelines can pad freely and crop back on output.

Native formats are binary PGM (P5) and PPM (P6), 8-bit.  PNG and JPEG are
routed through Pillow when it is installed; PNG round-trips 8-bit samples
exactly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    from PIL import Image as _PILImage
except ImportError:  # pragma: no cover - Pillow is a declared dependency
    _PILImage = None


class ImageFormatError(ValueError):
    """Raised for unsupported or malformed image files."""


@dataclass
class ImageBuf:
    """1-3 equally sized planes plus the original (pre-padding) size."""

    planes: list[np.ndarray]
    orig_width: int
    orig_height: int

    def __post_init__(self):
        if not 1 <= len(self.planes) <= 3:
            raise ValueError(f"expected 1-3 planes, got {len(self.planes)}")
        self.planes = [np.asarray(p, dtype=np.float64) for p in self.planes]
        shapes = {p.shape for p in self.planes}
        if len(shapes) != 1:
            raise ValueError(f"plane dimensions differ: {sorted(shapes)}")
        h, w = self.planes[0].shape
        if w < 1 or h < 1:
            raise ValueError("zero-sized image")
        if self.orig_width > w or self.orig_height > h:
            raise ValueError("original size exceeds plane size")
        if self.orig_width < 1 or self.orig_height < 1:
            raise ValueError("original size must be at least 1x1")

    @property
    def width(self) -> int:
        return self.planes[0].shape[1]

    @property
    def height(self) -> int:
        return self.planes[0].shape[0]

    @property
    def channels(self) -> int:
        return len(self.planes)

    @classmethod
    def from_planes(cls, planes: list[np.ndarray]) -> "ImageBuf":
        h, w = np.asarray(planes[0]).shape
        return cls(planes=list(planes), orig_width=w, orig_height=h)

    def cropped(self) -> "ImageBuf":
        """Planes restricted to the original extent."""
        return ImageBuf(
            planes=[p[: self.orig_height, : self.orig_width] for p in self.planes],
            orig_width=self.orig_width,
            orig_height=self.orig_height,
        )


def quantize_u8(values: np.ndarray) -> np.ndarray:
    """Round to nearest (ties away from zero), clamp to [0, 255], as uint8."""
    v = np.asarray(values, dtype=np.float64)
    rounded = np.trunc(v + np.copysign(0.5, v))
    return np.clip(rounded, 0.0, 255.0).astype(np.uint8)


# ---------------------------------------------------------------------------
# PNM (PGM/PPM) parsing

def _read_pnm_token(buf: io.BufferedReader) -> bytes:
    """Next whitespace-delimited header token, skipping '#' comments."""
    token = b""
    while True:
        ch = buf.read(1)
        if not ch:
            raise ImageFormatError("truncated PNM header")
        if ch == b"#":
            while ch not in (b"\n", b"\r", b""):
                ch = buf.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def _load_pnm(raw: io.BufferedReader, path) -> ImageBuf:
    magic = raw.read(2)
    if magic not in (b"P5", b"P6"):
        raise ImageFormatError(f"{path}: not a binary PGM/PPM file")
    width = int(_read_pnm_token(raw))
    height = int(_read_pnm_token(raw))
    maxval = int(_read_pnm_token(raw))
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: zero-sized image")
    if not 0 < maxval < 256:
        raise ImageFormatError(f"{path}: only 8-bit PNM supported (maxval {maxval})")
    channels = 1 if magic == b"P5" else 3
    count = width * height * channels
    data = raw.read(count)
    if len(data) != count:
        raise ImageFormatError(f"{path}: truncated pixel data")
    samples = np.frombuffer(data, dtype=np.uint8).astype(np.float64)
    if channels == 1:
        planes = [samples.reshape(height, width)]
    else:
        rgb = samples.reshape(height, width, 3)
        planes = [rgb[:, :, c].copy() for c in range(3)]
    return ImageBuf.from_planes(planes)


def _save_pnm(path: Path, planes: list[np.ndarray]) -> None:
    suffix = path.suffix.lower()
    if suffix == ".pgm":
        if len(planes) != 1:
            raise ImageFormatError("PGM holds a single channel; use PPM or PNG for color")
        magic, raster = b"P5", planes[0]
    else:
        if len(planes) != 3:
            raise ImageFormatError("PPM holds three channels; use PGM for grayscale")
        magic, raster = b"P6", np.stack(planes, axis=-1)
    h, w = planes[0].shape
    with open(path, "wb") as f:
        f.write(magic + b"\n%d %d\n255\n" % (w, h))
        f.write(raster.tobytes())


# ---------------------------------------------------------------------------
# Pillow-backed formats

_PIL_SUFFIXES = {".png", ".jpg", ".jpeg"}


def _load_pil(path: Path) -> ImageBuf:
    if _PILImage is None:
        raise ImageFormatError(f"{path}: PNG/JPEG support requires Pillow")
    try:
        with _PILImage.open(path) as im:
            im.load()
            if im.mode not in ("L", "RGB"):
                im = im.convert("L" if len(im.getbands()) == 1 else "RGB")
            arr = np.asarray(im, dtype=np.float64)
    except (OSError, SyntaxError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise ImageFormatError(f"{path}: {exc}") from exc
    if arr.size == 0:
        raise ImageFormatError(f"{path}: zero-sized image")
    if arr.ndim == 2:
        planes = [arr]
    else:
        planes = [arr[:, :, c].copy() for c in range(arr.shape[2])]
    return ImageBuf.from_planes(planes)


def _save_pil(path: Path, planes: list[np.ndarray]) -> None:
    if _PILImage is None:
        raise ImageFormatError(f"{path}: PNG/JPEG support requires Pillow")
    if len(planes) == 1:
        im = _PILImage.fromarray(planes[0], mode="L")
    else:
        im = _PILImage.fromarray(np.stack(planes, axis=-1), mode="RGB")
    im.save(path)


# ---------------------------------------------------------------------------
# Public operations

def load_image(path) -> ImageBuf:
    """Load a raster image; 8-bit samples map to reals exactly."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in _PIL_SUFFIXES:
        return _load_pil(path)
    with open(path, "rb") as raw:
        head = raw.read(2)
        raw.seek(0)
        if head in (b"P5", b"P6"):
            return _load_pnm(raw, path)
    if suffix in (".pgm", ".ppm", ".pnm"):
        raise ImageFormatError(f"{path}: not a binary PGM/PPM file")
    raise ImageFormatError(f"{path}: unsupported image format")


def save_image(img: ImageBuf, path) -> None:
    """Quantize to 8 bits (round half away from zero, clamp), crop, write."""
    path = Path(path)
    cropped = img.cropped()
    planes = [quantize_u8(p) for p in cropped.planes]
    suffix = path.suffix.lower()
    if suffix in (".pgm", ".ppm"):
        _save_pnm(path, planes)
    elif suffix in _PIL_SUFFIXES:
        _save_pil(path, planes)
    else:
        raise ImageFormatError(f"{path}: unsupported output format")


def pad_to_multiple(img: ImageBuf, m: int) -> ImageBuf:
    """Mirror-extend each plane so both dimensions are multiples of m.

    Original dimensions are preserved in the metadata and pixels inside the
    original extent are untouched.
    """
    if m < 1:
        raise ValueError("multiple must be positive")
    h, w = img.planes[0].shape
    pad_h = (-h) % m
    pad_w = (-w) % m
    if pad_h == 0 and pad_w == 0:
        return img
    planes = [np.pad(p, ((0, pad_h), (0, pad_w)), mode="symmetric") for p in img.planes]
    return ImageBuf(planes=planes, orig_width=img.orig_width, orig_height=img.orig_height)


def add_gaussian_noise(img: ImageBuf, mean: float, std: float, seed: int) -> ImageBuf:
    """Add seeded Gaussian noise on the [0, 1] normalized scale, then clamp.

    v' = clamp(v/255 + N(mean, std), 0, 1) * 255.  Deterministic for a fixed
    seed; channels consume the generator in order.
    """
    if std < 0:
        raise ValueError("noise standard deviation must be >= 0")
    rng = np.random.default_rng(seed)
    planes = []
    for p in img.planes:
        noisy = p / 255.0 + rng.normal(mean, std, size=p.shape)
        planes.append(np.clip(noisy, 0.0, 1.0) * 255.0)
    return ImageBuf(planes=planes, orig_width=img.orig_width, orig_height=img.orig_height)
