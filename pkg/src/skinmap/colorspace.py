"""Color feature extraction for skin-tone modeling.

Pixels are 8-bit RGB values. Every function accepts an array of shape
(..., 3) (a single pixel, a flat pixel list, or a full H x W x 3 image)
and returns float64 features scaled to [0, 1] so that Euclidean
distances are comparable across channels.

Supported feature layouts:

    space   FULL3            CHROMA2
    rgb     (R, G, B)/255    normalized (r, g)
    hsv     (H, S, V)        (H, V)
    ycbcr   (Y, Cb, Cr)      (Cb, Cr)

The chroma pair for HSV is (H, V): the brightness-like channel that is
dropped there is S, which is the luminance-elimination pairing this
pipeline is built around.
"""

from enum import Enum

import numpy as np


class ColorSpace(str, Enum):
    RGB = "rgb"
    HSV = "hsv"
    YCBCR = "ycbcr"


class ChannelMode(str, Enum):
    FULL3 = "full3"
    CHROMA2 = "chroma2"


def feature_dim(space, mode) -> int:
    """Feature vector length for a (space, mode) pair: 3 for FULL3, 2 for CHROMA2."""
    return 3 if ChannelMode(mode) is ChannelMode.FULL3 else 2


def _as_rgb_float(rgb) -> np.ndarray:
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected trailing axis of size 3, got shape {arr.shape}")
    return arr


def rgb_to_normalized_rg(rgb) -> np.ndarray:
    """Map RGB to the normalized chromaticity pair (r, g) = (R, G) / (R+G+B).

    Black pixels (R+G+B = 0) map to the neutral point (1/3, 1/3) so the
    division is always defined.
    """
    arr = _as_rgb_float(rgb)
    total = arr.sum(axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        rg = arr[..., :2] / total
    return np.where(total > 0, rg, 1.0 / 3.0)


def rgb_to_hsv(rgb) -> np.ndarray:
    """Hexcone RGB -> HSV with H, S, V all in [0, 1]; H = 0 for achromatic pixels."""
    arr = _as_rgb_float(rgb) / 255.0
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    v = arr.max(axis=-1)
    delta = v - arr.min(axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        # sector formula; priority r, then g, then b on max ties
        h = np.select(
            [delta == 0, v == r, v == g],
            [0.0, np.mod((g - b) / delta, 6.0), (b - r) / delta + 2.0],
            default=(r - g) / delta + 4.0,
        ) / 6.0
        s = np.where(v > 0, delta / np.where(v > 0, v, 1.0), 0.0)
    return np.stack([h, s, v], axis=-1)


# BT.601 full-range, 128 chroma offset.
_YCBCR_MATRIX = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_YCBCR_OFFSET = np.array([0.0, 128.0, 128.0])


def rgb_to_ycbcr(rgb) -> np.ndarray:
    """RGB -> (Y, Cb, Cr) by the BT.601 full-range matrix, clamped to [0, 255], scaled by 1/255."""
    arr = _as_rgb_float(rgb)
    ycbcr = arr @ _YCBCR_MATRIX.T + _YCBCR_OFFSET
    return np.clip(ycbcr, 0.0, 255.0) / 255.0


def extract_features(rgb, space, mode) -> np.ndarray:
    """Convert RGB pixels into the feature vectors for a (space, mode) pair.

    Args:
        rgb: array-like of shape (..., 3), 8-bit channel values.
        space: ColorSpace or its string value.
        mode: ChannelMode or its string value.

    Returns:
        float64 array of shape (..., d) with d = feature_dim(space, mode).
    """
    space = ColorSpace(space)
    mode = ChannelMode(mode)
    if space is ColorSpace.RGB:
        if mode is ChannelMode.FULL3:
            return _as_rgb_float(rgb) / 255.0
        return rgb_to_normalized_rg(rgb)
    if space is ColorSpace.HSV:
        hsv = rgb_to_hsv(rgb)
        if mode is ChannelMode.FULL3:
            return hsv
        return hsv[..., [0, 2]]
    ycbcr = rgb_to_ycbcr(rgb)
    if mode is ChannelMode.FULL3:
        return ycbcr
    return ycbcr[..., [1, 2]]
