import numpy as np
import pytest

from ro3kit import ImageBuf


def synthetic_scene(size: int = 256, seed: int = 7, texture: float = 4.0) -> np.ndarray:
    """Deterministic photographic-looking plane: smooth shading, blobs, one
    block edge, and mild band-limited texture.  Used wherever a 'natural'
    test image is required."""
    yy, xx = (np.mgrid[0:size, 0:size].astype(np.float64)) / size
    img = 110 + 55 * np.sin(2 * np.pi * (0.9 * xx + 0.15)) * np.cos(2 * np.pi * (0.7 * yy + 0.1))
    img += 45 * np.exp(-(((xx - 0.32) ** 2 + (yy - 0.4) ** 2) / 0.045))
    img += 30 * np.exp(-(((xx - 0.72) ** 2 + (yy - 0.68) ** 2) / 0.012))
    img -= 25 * np.exp(-(((xx - 0.2) ** 2 + (yy - 0.8) ** 2) / 0.03))
    img += 18.0 * ((xx > 0.58) & (yy < 0.45))
    rng = np.random.default_rng(seed)
    tex = rng.normal(0.0, 1.0, (size, size))
    for axis in (0, 1):
        for _ in range(3):
            tex = (np.roll(tex, 1, axis) + tex + np.roll(tex, -1, axis)) / 3.0
    img += texture * tex
    return np.clip(img, 0.0, 255.0)


@pytest.fixture(scope="session")
def scene_256() -> ImageBuf:
    return ImageBuf.from_planes([synthetic_scene(256)])


@pytest.fixture(scope="session")
def scene_512() -> ImageBuf:
    return ImageBuf.from_planes([synthetic_scene(512)])


def constant_image(value: float, size: int = 4, channels: int = 1) -> ImageBuf:
    return ImageBuf.from_planes([np.full((size, size), float(value)) for _ in range(channels)])
