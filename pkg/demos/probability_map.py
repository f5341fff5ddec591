"""Train on one synthetic labeled image and render its probability map.

Run: python demos/probability_map.py
Outputs land in demos/output/probability_map/.
"""

from pathlib import Path

import numpy as np

from skinmap import (
    ChannelMode,
    ColorSpace,
    EmConfig,
    GaussianMixture,
    SynthImageSpec,
    compute_spm,
    em_fit,
    roc_sweep,
    sample_skin_pixels,
    spm_to_gray8,
    synth_dataset,
    write_png,
)

OUT = Path(__file__).parent / "output" / "probability_map"


def main():
    spec = SynthImageSpec(
        width=160, height=120, skin_count=160 * 120 // 3,
        skin=GaussianMixture([1.0], [[205.0, 140.0, 110.0]], [np.eye(3) * 225.0]),
        background=GaussianMixture(
            [0.5, 0.5],
            [[70.0, 110.0, 160.0], [90.0, 140.0, 80.0]],
            [np.eye(3) * 400.0, np.eye(3) * 400.0],
        ),
    )
    labeled = synth_dataset(spec, seed=5, id="demo")
    print(f"synthetic image {labeled.image.shape[1]}x{labeled.image.shape[0]}, "
          f"{int(labeled.mask.sum())} skin pixels")

    sampled = sample_skin_pixels([labeled], 5000, ColorSpace.YCBCR, ChannelMode.CHROMA2, seed=1)
    fitted = em_fit(sampled.features, EmConfig(p=3, seed=3)).mixture
    print(f"trained a 3-component model on {sampled.features.shape[0]} "
          f"of {sampled.source_count} skin pixels (ycbcr/chroma2)")

    spm = compute_spm(labeled.image, fitted, ColorSpace.YCBCR, ChannelMode.CHROMA2)
    curve = roc_sweep(spm, labeled.mask)
    print(f"probability map range [{spm.min():.3f}, {spm.max():.3f}], auc {curve.auc:.4f}")

    OUT.mkdir(parents=True, exist_ok=True)
    write_png(OUT / "input.png", labeled.image)
    write_png(OUT / "mask.png", labeled.mask.astype(np.uint8) * 255)
    write_png(OUT / "spm.png", spm_to_gray8(spm))
    print(f"wrote input.png, mask.png, spm.png -> {OUT}")

    skin_mean = spm[labeled.mask].mean()
    other_mean = spm[~labeled.mask].mean()
    print(f"mean map value on skin {skin_mean:.3f} vs elsewhere {other_mean:.3f}")


if __name__ == "__main__":
    main()
