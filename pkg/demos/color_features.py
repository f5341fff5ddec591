"""Walk through the six feature encodings on a handful of colors.

Run: python demos/color_features.py
"""

import numpy as np

from skinmap import ChannelMode, ColorSpace, extract_features

NAMED = [
    ("light skin", (231, 180, 147)),
    ("dark skin", (141, 85, 56)),
    ("foliage", (34, 120, 15)),
    ("sky", (135, 190, 235)),
    ("gray wall", (128, 128, 128)),
]


def fmt(vec):
    return "(" + ", ".join(f"{v:.3f}" for v in vec) + ")"


def main():
    print("Feature vectors per color space and channel mode")
    print("=" * 64)
    rgb = np.array([c for _, c in NAMED], dtype=np.uint8)
    for space in ColorSpace:
        for mode in ChannelMode:
            feats = extract_features(rgb, space, mode)
            print(f"\n{space.value} / {mode.value}:")
            for (name, _), row in zip(NAMED, feats):
                print(f"  {name:<11} {fmt(row)}")

    print("\nBrightness invariance of the normalized rg pair")
    print("=" * 64)
    base = np.array([180, 120, 90], dtype=np.float64)
    for k in (0.25, 0.5, 1.0, 1.4):
        rg = extract_features(base * k, ColorSpace.RGB, ChannelMode.CHROMA2)
        print(f"  {k:4.2f} x (180,120, 90) -> rg = {fmt(rg)}")
    print("\nScaling the light level moves every 3-channel encoding but"
          "\nleaves rg fixed, which is the point of the 2-channel modes.")


if __name__ == "__main__":
    main()
