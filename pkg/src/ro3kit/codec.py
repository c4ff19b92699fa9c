"""Compression catalyst encoder/decoder around a pluggable still-image codec.

Encoding analyzes each channel one wavelet level, discards the three detail
subbands, halves the approximation band so it fits 8-bit range, and hands
the resulting quarter-size planes to a back-end codec (raw store, JPEG,
PNG, or JPEG2000 when available).  Decoding inverts the halving, estimates
the missing detail subbands by Rule of Three and resynthesizes, so the
back-end codec only ever sees a quarter of the pixels: it is a catalyst
for whatever codec actually does the compressing.

The on-disk container is a fixed 32-byte little-endian header followed by
the codec bitstream; see Ro3Container for the exact layout.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np

from .deblur import deblur
from .image_io import ImageBuf, pad_to_multiple, quantize_u8
from .ro3 import Ro3Params, _upscale_plane
from .wavelet import DAUB4, HAAR, WaveletBasis, dwt2

try:
    from PIL import Image as _PILImage
    from PIL import features as _pil_features
except ImportError:  # pragma: no cover - Pillow is a declared dependency
    _PILImage = None
    _pil_features = None

MAGIC = b"RO3C"
VERSION = 1
FLAG_DEBLUR_RECOMMENDED = 0x01

# magic, version, flags, codec_id, basis_id, channels, reserved, width,
# height, ap, payload_len -- exactly 32 bytes, little-endian.
_HEADER = struct.Struct("<4sBBBBB3sIIfQ")
HEADER_SIZE = _HEADER.size

_BASIS_IDS = {"haar": 0, "db4": 1}
_BASIS_BY_ID = {0: HAAR, 1: DAUB4}


class ContainerError(ValueError):
    """Raised for malformed or unsupported container data."""


@dataclass
class Ro3Container:
    """Parsed compressed file: header fields plus the codec payload."""

    codec_id: int
    basis_id: int
    channels: int
    orig_width: int
    orig_height: int
    ap: float
    payload: bytes
    flags: int = 0
    version: int = VERSION

    def serialize(self) -> bytes:
        header = _HEADER.pack(
            MAGIC,
            self.version,
            self.flags,
            self.codec_id,
            self.basis_id,
            self.channels,
            b"\x00\x00\x00",
            self.orig_width,
            self.orig_height,
            self.ap,
            len(self.payload),
        )
        return header + self.payload

    @classmethod
    def parse(cls, data: bytes) -> "Ro3Container":
        if len(data) < HEADER_SIZE:
            raise ContainerError(f"container shorter than the {HEADER_SIZE}-byte header")
        magic, version, flags, codec_id, basis_id, channels, _reserved, w, h, ap, plen = (
            _HEADER.unpack_from(data)
        )
        if magic != MAGIC:
            raise ContainerError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ContainerError(f"unsupported container version {version}")
        if channels not in (1, 3):
            raise ContainerError(f"invalid channel count {channels}")
        if w < 1 or h < 1:
            raise ContainerError(f"invalid dimensions {w}x{h}")
        payload = data[HEADER_SIZE:]
        if len(payload) != plen:
            raise ContainerError(f"payload length {len(payload)} != header field {plen}")
        return cls(
            codec_id=codec_id,
            basis_id=basis_id,
            channels=channels,
            orig_width=w,
            orig_height=h,
            ap=ap,
            payload=payload,
            flags=flags,
            version=version,
        )


# ---------------------------------------------------------------------------
# Back-end codecs

class StoreCodec:
    """Lossless reference: per channel u32 width, u32 height, raw bytes."""

    name = "store"
    codec_id = 0

    def encode(self, planes: list[np.ndarray], quality: int) -> bytes:
        out = bytearray()
        for p in planes:
            h, w = p.shape
            out += struct.pack("<II", w, h)
            out += p.astype(np.uint8).tobytes()
        return bytes(out)

    def decode(self, data: bytes) -> list[np.ndarray]:
        planes = []
        pos = 0
        while pos < len(data):
            if pos + 8 > len(data):
                raise ContainerError("truncated store payload header")
            w, h = struct.unpack_from("<II", data, pos)
            pos += 8
            count = w * h
            if pos + count > len(data):
                raise ContainerError("truncated store payload pixels")
            planes.append(
                np.frombuffer(data, dtype=np.uint8, count=count, offset=pos).reshape(h, w)
            )
            pos += count
        if not planes:
            raise ContainerError("empty store payload")
        return planes


class PilCodec:
    """PNG/JPEG/JPEG2000 backend over Pillow; planes travel as L or RGB."""

    def __init__(self, name: str, codec_id: int, pil_format: str):
        self.name = name
        self.codec_id = codec_id
        self.pil_format = pil_format

    def _save_args(self, quality: int) -> dict:
        if self.pil_format == "JPEG":
            return {"quality": quality}
        if self.pil_format == "JPEG2000":
            # quality maps to a target compression ratio for the irreversible path
            rate = max(1.0, (105.0 - quality) / 5.0)
            return {"irreversible": True, "quality_mode": "rates", "quality_layers": [rate]}
        return {}

    def encode(self, planes: list[np.ndarray], quality: int) -> bytes:
        if _PILImage is None:
            raise ContainerError(f"{self.name} codec requires Pillow")
        arr = planes[0] if len(planes) == 1 else np.stack(planes, axis=-1)
        im = _PILImage.fromarray(arr.astype(np.uint8))
        buf = io.BytesIO()
        im.save(buf, format=self.pil_format, **self._save_args(quality))
        return buf.getvalue()

    def decode(self, data: bytes) -> list[np.ndarray]:
        if _PILImage is None:
            raise ContainerError(f"{self.name} codec requires Pillow")
        try:
            with _PILImage.open(io.BytesIO(data)) as im:
                arr = np.asarray(im)
        except OSError as exc:
            raise ContainerError(f"undecodable {self.name} payload: {exc}") from exc
        if arr.ndim == 2:
            return [arr]
        return [arr[:, :, c] for c in range(arr.shape[2])]


STORE = StoreCodec()
JPEG = PilCodec("jpeg", 1, "JPEG")
JPEG2000 = PilCodec("jp2", 2, "JPEG2000")
PNG = PilCodec("png", 3, "PNG")

_CODECS = {c.codec_id: c for c in (STORE, JPEG, JPEG2000, PNG)}
_CODECS_BY_NAME = {c.name: c for c in (STORE, JPEG, JPEG2000, PNG)}


def available_codecs() -> list[str]:
    names = ["store"]
    if _pil_features is not None:
        if _pil_features.check("jpg"):
            names.append("jpeg")
        if _pil_features.check("jpg_2000"):
            names.append("jp2")
        if _pil_features.check("zlib"):
            names.append("png")
    return names


def get_codec(key):
    """Look up a back-end codec by name or numeric id."""
    table = _CODECS if isinstance(key, int) else _CODECS_BY_NAME
    try:
        return table[key]
    except KeyError:
        raise ContainerError(f"unknown codec {key!r}") from None


# ---------------------------------------------------------------------------
# Pipeline

def _downsample_planes(img: ImageBuf, basis: WaveletBasis) -> list[np.ndarray]:
    """Pad to /4, keep only the halved approximation band, quantize to 8-bit."""
    base = pad_to_multiple(img.cropped(), 4)
    return [quantize_u8(0.5 * dwt2(p, basis).ll) for p in base.planes]


def _reconstruct(
    stored: list[np.ndarray],
    params: Ro3Params,
    orig_width: int,
    orig_height: int,
) -> ImageBuf:
    """Rule-of-Three upscale of the stored planes, cropped to the original."""
    planes = [_upscale_plane(np.asarray(p, dtype=np.float64), params) for p in stored]
    out = ImageBuf(planes=planes, orig_width=orig_width, orig_height=orig_height)
    return out.cropped()


def encode(
    img: ImageBuf,
    basis: WaveletBasis = HAAR,
    codec=STORE,
    quality: int = 75,
    ap: float = 1e-4,
    recommend_deblur: bool = False,
) -> Ro3Container:
    """Compress an image into a container."""
    if not 1 <= quality <= 100:
        raise ValueError(f"quality {quality} outside 1..100")
    if basis.name not in _BASIS_IDS:
        raise ValueError(f"basis {basis.name!r} has no container id")
    stored = _downsample_planes(img, basis)
    payload = codec.encode(stored, quality)
    return Ro3Container(
        codec_id=codec.codec_id,
        basis_id=_BASIS_IDS[basis.name],
        channels=img.channels,
        orig_width=img.orig_width,
        orig_height=img.orig_height,
        ap=ap,
        payload=payload,
        flags=FLAG_DEBLUR_RECOMMENDED if recommend_deblur else 0,
    )


def _expected_stored_shape(container: Ro3Container) -> tuple[int, int]:
    pad_h = container.orig_height + (-container.orig_height) % 4
    pad_w = container.orig_width + (-container.orig_width) % 4
    return pad_h // 2, pad_w // 2


def decode(
    container: Ro3Container,
    params: Ro3Params | None = None,
    apply_deblur: bool = False,
    registry: dict[int, object] | None = None,
) -> ImageBuf:
    """Reconstruct an image from a container.

    When params is omitted the anchoring parameter and basis recorded in the
    container are used, with the faithful detail gain.  registry maps codec
    ids to back-end codecs; it defaults to the built-in table.
    """
    try:
        basis = _BASIS_BY_ID[container.basis_id]
    except KeyError:
        raise ContainerError(f"unknown basis id {container.basis_id}") from None
    if registry is None:
        codec = get_codec(container.codec_id)
    else:
        try:
            codec = registry[container.codec_id]
        except KeyError:
            raise ContainerError(f"unknown codec {container.codec_id!r}") from None
    if params is None:
        params = Ro3Params(ap=float(container.ap), basis=basis)
    stored = codec.decode(container.payload)
    if len(stored) != container.channels:
        raise ContainerError(
            f"payload holds {len(stored)} planes, header says {container.channels}"
        )
    expected = _expected_stored_shape(container)
    for p in stored:
        if p.shape != expected:
            raise ContainerError(f"stored plane {p.shape} != expected {expected}")
    out = _reconstruct(stored, params, container.orig_width, container.orig_height)
    if apply_deblur:
        out = deblur(out)
    return out


def denoise_ro3(img: ImageBuf, params: Ro3Params | None = None) -> ImageBuf:
    """Store-codec encode/decode round trip without serialization.

    Discarding the detail subbands and re-estimating them by Rule of Three
    is itself the denoiser.
    """
    params = params or Ro3Params()
    stored = _downsample_planes(img, params.basis)
    return _reconstruct(stored, params, img.orig_width, img.orig_height)
