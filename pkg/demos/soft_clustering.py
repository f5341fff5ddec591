"""Fuzzy C-Means on three planted 2-D blobs, step by step.

Run: python demos/soft_clustering.py
"""

import numpy as np

from skinmap import FcmConfig, fcm_fit, harden, update_memberships

TRUTH = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])


def main():
    rng = np.random.default_rng(7)
    x = np.concatenate([t + 0.3 * rng.standard_normal((400, 2)) for t in TRUTH])
    print(f"dataset: {x.shape[0]} points around {len(TRUTH)} planted centers")

    result = fcm_fit(x, FcmConfig(c=3, m=2.0, seed=1))
    print(f"converged: {result.converged} after {result.iterations_run} sweeps")
    print("objective trace (first 5):",
          ", ".join(f"{v:.1f}" for v in result.objective_trace[:5]))

    print("\nrecovered centers vs planted:")
    for mu in result.centers:
        nearest = TRUTH[np.argmin(np.linalg.norm(TRUTH - mu, axis=1))]
        print(f"  ({mu[0]: .3f}, {mu[1]: .3f})  <- planted ({nearest[0]:.0f}, {nearest[1]:.0f})")

    labels = harden(result.memberships)
    sizes = np.bincount(labels, minlength=3)
    print(f"\nhardened cluster sizes: {sizes.tolist()}")

    print("\nmembership softness along the segment between two centers:")
    a, b = result.centers[0], result.centers[1]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        point = (1 - frac) * a + frac * b
        delta = update_memberships(point[None, :], result.centers, 2.0)[0]
        shares = ", ".join(f"{v:.2f}" for v in delta)
        print(f"  {frac:4.2f} of the way: memberships ({shares})")
    print("\nhalfway between centers the two memberships meet, which is"
          "\nwhat 'soft' assignment means.")


if __name__ == "__main__":
    main()
