"""Skin Probability Maps.

An image is an (H, W, 3) uint8 array; an SPM is an (H, W) float64 array
in [0, 1] where bright means skin-like. Per-pixel mixture densities are
min-max normalized over the image, so the map is invariant to any
positive rescaling of the density.
"""

import numpy as np

from .colorspace import extract_features, feature_dim
from .errors import ContractViolationError
from .mixture import GaussianMixture, mixture_log_pdf


def normalize_log_densities(log_values) -> np.ndarray:
    """Min-max normalize densities given in log space.

    The max log value is subtracted before exponentiating, which cannot
    overflow and cancels out of the linear min-max. A constant input
    (including a single value) maps to 0.5 everywhere.
    """
    logv = np.asarray(log_values, dtype=np.float64)
    shifted = np.exp(logv - logv.max())
    lo = shifted.min()
    hi = shifted.max()
    if hi == lo:
        return np.full(logv.shape, 0.5)
    return (shifted - lo) / (hi - lo)


def compute_spm(image, gmm: GaussianMixture, space, mode) -> np.ndarray:
    """Score every pixel of an RGB image under a skin mixture.

    Args:
        image: (H, W, 3) array of 8-bit RGB values.
        gmm: skin color mixture over the chosen feature space.
        space: ColorSpace for feature extraction.
        mode: ChannelMode for feature extraction.

    Returns:
        (H, W) float64 SPM with values min-max normalized to [0, 1].
    """
    img = np.asarray(image)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ContractViolationError(f"image must be (H, W, 3), got shape {img.shape}")
    d = feature_dim(space, mode)
    if gmm.dim != d:
        raise ContractViolationError(
            f"mixture dim {gmm.dim} != feature dim {d} for ({space}, {mode})"
        )
    h, w = img.shape[:2]
    features = extract_features(img.reshape(-1, 3), space, mode)
    logv = mixture_log_pdf(features, gmm)
    return normalize_log_densities(logv).reshape(h, w)


def spm_to_gray8(spm) -> np.ndarray:
    """Quantize an SPM to an 8-bit grayscale image, rounding half up."""
    values = np.asarray(spm, dtype=np.float64)
    return np.clip(np.floor(255.0 * values + 0.5), 0, 255).astype(np.uint8)
