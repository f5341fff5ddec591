"""Dataset loading, training-pixel sampling and synthetic data generation.

Images and masks are PNG files. A mask pixel is skin iff its value is
nonzero (any channel, for RGB masks). Manifests are text files with one
`image_path,mask_path` pair per line; `#` starts a comment, and relative
paths are resolved against the manifest's own directory.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .colorspace import ChannelMode, ColorSpace, extract_features
from .errors import (
    DecodeFailureError,
    EmptyTrainingSetError,
    InvalidSpecError,
    MaskMismatchError,
    MissingFileError,
    NumericDomainError,
)
from .mixture import GaussianMixture


@dataclass
class LabeledImage:
    image: np.ndarray  # (H, W, 3) uint8
    mask: np.ndarray   # (H, W) bool, True = skin
    id: str


@dataclass
class TrainingSet:
    features: np.ndarray  # (n, d)
    space: ColorSpace
    mode: ChannelMode
    source_count: int     # skin pixels that were available to draw from


def _read_png(path) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise MissingFileError(f"no such file: {path}")
    try:
        with Image.open(path) as im:
            return np.asarray(im)
    except UnidentifiedImageError as exc:
        raise DecodeFailureError(f"cannot decode {path}: {exc}") from exc


def load_image(path) -> np.ndarray:
    """Load a PNG as an (H, W, 3) uint8 RGB array (alpha dropped if present)."""
    img = _read_png(path)
    if img.ndim == 3 and img.shape[2] == 4:
        img = img[:, :, :3]
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8:
        raise DecodeFailureError(
            f"{path}: expected an 8-bit RGB image, got shape "
            f"{img.shape} dtype {img.dtype}"
        )
    return img


def load_labeled_image(image_path, mask_path) -> LabeledImage:
    """Load an image/mask pair, converting the mask by the nonzero test."""
    img = load_image(image_path)
    raw_mask = _read_png(mask_path)
    if raw_mask.ndim == 3:
        labels = raw_mask.any(axis=2)
    else:
        labels = raw_mask != 0
    if labels.shape != img.shape[:2]:
        raise MaskMismatchError(
            f"image {img.shape[:2]} and mask {labels.shape} dimensions differ"
        )
    return LabeledImage(image=img, mask=labels, id=Path(image_path).stem)


def read_manifest(path) -> list[tuple[Path, Path]]:
    """Parse a manifest into resolved (image_path, mask_path) pairs."""
    path = Path(path)
    if not path.exists():
        raise MissingFileError(f"no such manifest: {path}")
    base = path.parent
    pairs = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise InvalidSpecError(
                f"{path}:{lineno}: expected 'image_path,mask_path', got {line!r}"
            )
        pairs.append((base / parts[0], base / parts[1]))
    if not pairs:
        raise InvalidSpecError(f"{path}: manifest lists no image pairs")
    return pairs


def load_manifest(path) -> list[LabeledImage]:
    return [load_labeled_image(img, mask) for img, mask in read_manifest(path)]


def sample_skin_pixels(images, target: int, space, mode, seed: int) -> TrainingSet:
    """Draw up to `target` skin pixels uniformly without replacement.

    Skin pixels are pooled across all images (image order, row-major
    within each image). If fewer than `target` exist, every one is taken.
    TrainingSet.source_count records the pool size either way.

    Raises EmptyTrainingSetError when no image contributes a skin pixel.
    """
    if target < 1:
        raise InvalidSpecError(f"target must be >= 1, got {target}")
    pools = [img.image[img.mask] for img in images]
    skin = (
        np.concatenate(pools, axis=0)
        if pools
        else np.empty((0, 3), dtype=np.uint8)
    )
    available = skin.shape[0]
    if available == 0:
        raise EmptyTrainingSetError("no skin-labeled pixels in the dataset")
    if available > target:
        rng = np.random.default_rng(seed)
        idx = rng.choice(available, size=target, replace=False)
        skin = skin[idx]
    return TrainingSet(
        features=extract_features(skin, space, mode),
        space=ColorSpace(space),
        mode=ChannelMode(mode),
        source_count=available,
    )


@dataclass
class SynthImageSpec:
    """Recipe for one synthetic labeled image.

    skin and background are RGB-space mixtures (channel units 0..255);
    drawn colors are clamped to [0, 255] and quantized to uint8. The
    first skin_count pixels in row-major order are skin, the rest
    background, which keeps the layout and the mask count exact.
    """

    width: int
    height: int
    skin_count: int
    skin: GaussianMixture
    background: GaussianMixture

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidSpecError("image dimensions must be positive")
        if not 0 <= self.skin_count <= self.width * self.height:
            raise InvalidSpecError(
                f"skin_count {self.skin_count} does not fit a "
                f"{self.width}x{self.height} image"
            )
        for name, gmm in (("skin", self.skin), ("background", self.background)):
            if gmm.dim != 3:
                raise InvalidSpecError(f"{name} mixture must be 3-D (RGB)")


def _sample_mixture(gmm: GaussianMixture, n: int, rng) -> np.ndarray:
    which = rng.choice(gmm.n_components, size=n, p=gmm.weights)
    out = np.empty((n, 3))
    for i in range(gmm.n_components):
        sel = which == i
        count = int(sel.sum())
        if count == 0:
            continue
        try:
            out[sel] = rng.multivariate_normal(
                gmm.means[i], gmm.covariances[i], size=count, check_valid="raise"
            )
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise NumericDomainError(f"invalid covariance in component {i}") from exc
    return out


def synth_dataset(spec: SynthImageSpec, seed: int, id: str = "synthetic") -> LabeledImage:
    """Generate one labeled image from skin and background mixtures."""
    rng = np.random.default_rng(seed)
    n = spec.width * spec.height
    pixels = np.empty((n, 3))
    pixels[: spec.skin_count] = _sample_mixture(spec.skin, spec.skin_count, rng)
    pixels[spec.skin_count :] = _sample_mixture(
        spec.background, n - spec.skin_count, rng
    )
    image = (
        np.clip(np.rint(pixels), 0, 255)
        .astype(np.uint8)
        .reshape(spec.height, spec.width, 3)
    )
    mask = np.zeros(n, dtype=bool)
    mask[: spec.skin_count] = True
    return LabeledImage(image=image, mask=mask.reshape(spec.height, spec.width), id=id)


def write_png(path, array) -> None:
    """Write an (H, W) gray or (H, W, 3) RGB uint8 array as PNG."""
    Image.fromarray(np.asarray(array, dtype=np.uint8)).save(path, format="PNG")
