"""Wavelet toolkit: Rule-of-Three superresolution, catalyst compression,
threshold denoising, deblurring and image quality metrics."""

from .codec import (
    JPEG,
    JPEG2000,
    PNG,
    STORE,
    ContainerError,
    Ro3Container,
    available_codecs,
    decode,
    denoise_ro3,
    encode,
    get_codec,
)
from .deblur import deblur, deblur_plane
from .denoise import (
    ThresholdSpec,
    denoise_threshold,
    hard_threshold,
    mad_sigma,
    soft_threshold,
    universal_threshold,
)
from .image_io import (
    ImageBuf,
    ImageFormatError,
    add_gaussian_noise,
    load_image,
    pad_to_multiple,
    quantize_u8,
    save_image,
)
from .metrics import (
    Histogram,
    MetricsReport,
    compare,
    cr,
    histogram,
    histogram_similarity,
    mae,
    mse,
    psnr,
    psnr_from_mse,
    pss,
)
from .ro3 import Ro3Params, ro3_estimate_detail, superresolve_once, superresolve_twice
from .wavelet import (
    DAUB4,
    HAAR,
    SubbandQuad,
    WaveletBasis,
    dwt2,
    dwt2_multi,
    get_basis,
    idwt2,
    idwt2_multi,
)

__version__ = "0.1.0"

__all__ = [
    "ContainerError",
    "DAUB4",
    "HAAR",
    "Histogram",
    "ImageBuf",
    "ImageFormatError",
    "JPEG",
    "JPEG2000",
    "MetricsReport",
    "PNG",
    "Ro3Container",
    "Ro3Params",
    "STORE",
    "SubbandQuad",
    "ThresholdSpec",
    "WaveletBasis",
    "add_gaussian_noise",
    "available_codecs",
    "compare",
    "cr",
    "deblur",
    "deblur_plane",
    "decode",
    "denoise_ro3",
    "denoise_threshold",
    "dwt2",
    "dwt2_multi",
    "encode",
    "get_basis",
    "get_codec",
    "hard_threshold",
    "histogram",
    "histogram_similarity",
    "idwt2",
    "idwt2_multi",
    "load_image",
    "mad_sigma",
    "mae",
    "mse",
    "pad_to_multiple",
    "psnr",
    "psnr_from_mse",
    "pss",
    "quantize_u8",
    "ro3_estimate_detail",
    "save_image",
    "soft_threshold",
    "superresolve_once",
    "superresolve_twice",
    "universal_threshold",
]
