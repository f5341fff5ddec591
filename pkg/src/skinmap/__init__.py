"""Skin-tone segmentation with FCM- and EM-fitted Gaussian mixtures.

Pipelines: extract color features (RGB, HSV or YCbCr, with or without
the luminance-like channel), fit a skin color mixture by EM or by Fuzzy
C-Means, score images into Skin Probability Maps, and compare
configurations with pooled ROC curves.
"""

__version__ = "0.1.0"

from .clustering import (
    FcmConfig,
    FcmResult,
    fcm_fit,
    fcm_fit_from_centers,
    fcm_objective,
    fcm_to_gmm,
    harden,
    update_centers,
    update_memberships,
)
from .colorspace import (
    ChannelMode,
    ColorSpace,
    extract_features,
    feature_dim,
    rgb_to_hsv,
    rgb_to_normalized_rg,
    rgb_to_ycbcr,
)
from .dataset import (
    LabeledImage,
    SynthImageSpec,
    TrainingSet,
    load_image,
    load_labeled_image,
    load_manifest,
    read_manifest,
    sample_skin_pixels,
    synth_dataset,
    write_png,
)
from .evaluation import (
    THRESHOLDS,
    ConfusionCounts,
    RocCurve,
    aggregate_roc,
    auc,
    confusion_at,
    rates,
    roc_sweep,
    write_roc_csv,
)
from .mixture import (
    EmConfig,
    EmResult,
    GaussianComponent,
    GaussianMixture,
    em_fit,
    gaussian_log_pdf,
    gaussian_pdf,
    log_likelihood,
    mixture_log_pdf,
    mixture_pdf,
)
from .spm import compute_spm, normalize_log_densities, spm_to_gray8

__all__ = [
    "ChannelMode",
    "ColorSpace",
    "ConfusionCounts",
    "EmConfig",
    "EmResult",
    "FcmConfig",
    "FcmResult",
    "GaussianComponent",
    "GaussianMixture",
    "LabeledImage",
    "RocCurve",
    "SynthImageSpec",
    "THRESHOLDS",
    "TrainingSet",
    "aggregate_roc",
    "auc",
    "compute_spm",
    "confusion_at",
    "em_fit",
    "extract_features",
    "fcm_fit",
    "fcm_fit_from_centers",
    "fcm_objective",
    "fcm_to_gmm",
    "feature_dim",
    "gaussian_log_pdf",
    "gaussian_pdf",
    "harden",
    "load_image",
    "load_labeled_image",
    "load_manifest",
    "log_likelihood",
    "mixture_log_pdf",
    "mixture_pdf",
    "normalize_log_densities",
    "rates",
    "read_manifest",
    "rgb_to_hsv",
    "rgb_to_normalized_rg",
    "rgb_to_ycbcr",
    "roc_sweep",
    "sample_skin_pixels",
    "spm_to_gray8",
    "synth_dataset",
    "update_centers",
    "update_memberships",
    "write_png",
    "write_roc_csv",
    "__version__",
]
