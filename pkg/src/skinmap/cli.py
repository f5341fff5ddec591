"""Command-line interface: train, spm, eval, compare, synth.

Exit codes are a stable contract:
    0 success, 1 usage error, 2 input/data error,
    3 numeric or degenerate-fit error, 4 I/O error.

One global --seed drives every random choice; sub-seeds are derived as
seed (pixel sampling), seed+1 (FCM init) and seed+2 (EM init), and
synth uses seed+i for the i-th generated image.
"""

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import FcmConfig, fcm_fit, fcm_to_gmm
from .colorspace import ChannelMode, ColorSpace, feature_dim
from .dataset import (
    SynthImageSpec,
    load_image,
    load_manifest,
    sample_skin_pixels,
    synth_dataset,
    write_png,
)
from .errors import DataError, InvalidSpecError, MissingFileError, SkinmapError
from .evaluation import aggregate_roc, write_roc_csv
from .mixture import EmConfig, GaussianMixture, em_fit
from .spm import compute_spm, spm_to_gray8
from .svgplot import write_roc_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

MODEL_FORMAT_VERSION = 1
DEFAULT_CLUSTERS = 3
DEFAULT_PIXELS = 23000
DEFAULT_FUZZIFIER = 2.0

SPACES = [s.value for s in ColorSpace]
MODES = [m.value for m in ChannelMode]
ALGORITHMS = ["em", "fcm"]


def write_model(path, gmm: GaussianMixture, space, mode, algorithm, seed, metadata) -> None:
    """Serialize a mixture as versioned JSON with full-precision floats."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "space": ColorSpace(space).value,
        "mode": ChannelMode(mode).value,
        "algorithm": algorithm,
        "seed": seed,
        "metadata": metadata,
        "components": [
            {
                "weight": float(w),
                "mean": [float(v) for v in mean],
                "covariance": [[float(v) for v in row] for row in cov],
            }
            for w, mean, cov in zip(gmm.weights, gmm.means, gmm.covariances)
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_model(path):
    """Load and validate a model file.

    Returns (mixture, space, mode, doc) where doc is the raw JSON.
    """
    path = Path(path)
    if not path.exists():
        raise MissingFileError(f"no such model file: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidSpecError(f"{path}: not valid JSON: {exc}") from exc
    try:
        if doc["format_version"] != MODEL_FORMAT_VERSION:
            raise InvalidSpecError(
                f"{path}: unsupported format_version {doc['format_version']!r}"
            )
        space = ColorSpace(doc["space"])
        mode = ChannelMode(doc["mode"])
        comps = doc["components"]
        gmm = GaussianMixture(
            weights=np.array([c["weight"] for c in comps]),
            means=np.array([c["mean"] for c in comps]),
            covariances=np.array([c["covariance"] for c in comps]),
        )
    except InvalidSpecError:
        raise
    except (KeyError, TypeError, ValueError, SkinmapError) as exc:
        raise InvalidSpecError(f"{path}: malformed model file: {exc}") from exc
    if gmm.dim != feature_dim(space, mode):
        raise InvalidSpecError(
            f"{path}: {gmm.dim}-D components inconsistent with "
            f"space={space.value} mode={mode.value}"
        )
    return gmm, space, mode, doc


def _train_one(images, space, mode, algorithm, pixels, clusters, seed):
    """Shared by train and compare: sample pixels, fit, return model pieces."""
    training = sample_skin_pixels(images, pixels, space, mode, seed=seed)
    if algorithm == "em":
        result = em_fit(training.features, EmConfig(p=clusters, seed=seed + 2))
        gmm = result.mixture
        iterations = result.iterations_run
        converged = result.converged
        extra = {}
    else:
        result = fcm_fit(
            training.features,
            FcmConfig(c=clusters, m=DEFAULT_FUZZIFIER, seed=seed + 1),
        )
        gmm = fcm_to_gmm(training.features, result)
        iterations = result.iterations_run
        converged = result.converged
        extra = {"fuzzifier": DEFAULT_FUZZIFIER}
    metadata = {
        "clusters": clusters,
        "requested_pixels": pixels,
        "training_pixels": int(training.features.shape[0]),
        "source_pixels": training.source_count,
        "iterations": iterations,
        "converged": converged,
        **extra,
    }
    return gmm, metadata


def _cmd_train(args) -> int:
    images = load_manifest(args.manifest)
    gmm, metadata = _train_one(
        images, args.space, args.mode, args.algorithm,
        args.pixels, args.clusters, args.seed,
    )
    write_model(args.out, gmm, args.space, args.mode, args.algorithm, args.seed, metadata)
    print(
        f"trained {args.algorithm} model ({args.space}/{args.mode}, "
        f"{metadata['clusters']} clusters, {metadata['training_pixels']} pixels, "
        f"{metadata['iterations']} iterations) -> {args.out}"
    )
    return EXIT_OK


def _cmd_spm(args) -> int:
    gmm, space, mode, _ = read_model(args.model)
    image = load_image(args.image)
    spm = compute_spm(image, gmm, space, mode)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_png(out, spm_to_gray8(spm))
    if args.csv:
        csv_path = Path(args.csv)
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            for row in spm:
                fh.write(",".join(f"{v:.6f}" for v in row) + "\n")
    print(f"wrote SPM {out}")
    return EXIT_OK


def _evaluate(gmm, space, mode, images):
    spms = [compute_spm(img.image, gmm, space, mode) for img in images]
    return aggregate_roc(spms, [img.mask for img in images])


def _cmd_eval(args) -> int:
    gmm, space, mode, _ = read_model(args.model)
    images = load_manifest(args.manifest)
    curve = _evaluate(gmm, space, mode, images)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_roc_csv(out, curve)
    if args.svg:
        svg_path = Path(args.svg)
        svg_path.parent.mkdir(parents=True, exist_ok=True)
        write_roc_svg(
            svg_path,
            [(f"{space.value}/{mode.value} auc={curve.auc:.3f}", curve.fpr, curve.tpr)],
            title=f"ROC {space.value}/{mode.value}",
        )
    print(f"evaluated {len(images)} images, auc={curve.auc:.6f} -> {out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    train_images = load_manifest(args.train_manifest)
    test_images = load_manifest(args.test_manifest)
    out_dir = Path(args.out)
    for sub in ("models", "roc", "plots"):
        (out_dir / sub).mkdir(parents=True, exist_ok=True)

    rows = []
    curves = {}
    for space, mode, algorithm in itertools.product(SPACES, MODES, ALGORITHMS):
        name = f"{space}_{mode}_{algorithm}"
        try:
            gmm, metadata = _train_one(
                train_images, space, mode, algorithm,
                args.pixels, args.clusters, args.seed,
            )
            write_model(
                out_dir / "models" / f"{name}.json",
                gmm, space, mode, algorithm, args.seed, metadata,
            )
            curve = _evaluate(gmm, space, mode, test_images)
            write_roc_csv(out_dir / "roc" / f"{name}.csv", curve)
            curves[(space, mode, algorithm)] = curve
            rows.append(
                {
                    "space": space,
                    "mode": mode,
                    "algorithm": algorithm,
                    "auc": curve.auc,
                    "training_n": metadata["training_pixels"],
                    "iterations": metadata["iterations"],
                    "status": "ok",
                }
            )
            print(f"{name}: auc={curve.auc:.6f}")
        except SkinmapError as exc:
            rows.append(
                {
                    "space": space,
                    "mode": mode,
                    "algorithm": algorithm,
                    "auc": None,
                    "training_n": 0,
                    "iterations": 0,
                    "status": f"failed:{type(exc).__name__}",
                }
            )
            print(f"{name}: failed ({exc})", file=sys.stderr)

    _write_overlays(out_dir / "plots", curves)
    _write_report(out_dir / "report.csv", rows)
    print(f"report -> {out_dir / 'report.csv'}")
    return EXIT_OK if any(r["status"] == "ok" for r in rows) else EXIT_NUMERIC


def _curve_entry(curves, key, label):
    curve = curves.get(key)
    if curve is None:
        return None
    return (f"{label} auc={curve.auc:.3f}", curve.fpr, curve.tpr)


def _write_overlays(plot_dir, curves) -> None:
    # EM vs FCM per space and mode (the per-space comparison figures)
    for space, mode in itertools.product(SPACES, MODES):
        entries = [
            _curve_entry(curves, (space, mode, alg), alg) for alg in ALGORITHMS
        ]
        entries = [e for e in entries if e]
        if entries:
            write_roc_svg(
                plot_dir / f"overlay_{space}_{mode}_em_vs_fcm.svg",
                entries,
                title=f"EM vs FCM ({space}, {mode})",
            )
    # 3 components vs 2 per algorithm and space
    for algorithm, space in itertools.product(ALGORITHMS, SPACES):
        entries = [
            _curve_entry(curves, (space, mode, algorithm), mode) for mode in MODES
        ]
        entries = [e for e in entries if e]
        if entries:
            write_roc_svg(
                plot_dir / f"overlay_{algorithm}_{space}_full3_vs_chroma2.svg",
                entries,
                title=f"{algorithm} in {space}: full3 vs chroma2",
            )
    # every space and mode per algorithm (the cross-space summary figures)
    for algorithm in ALGORITHMS:
        entries = [
            _curve_entry(curves, (space, mode, algorithm), f"{space}/{mode}")
            for space, mode in itertools.product(SPACES, MODES)
        ]
        entries = [e for e in entries if e]
        if entries:
            write_roc_svg(
                plot_dir / f"overlay_{algorithm}_all_spaces.svg",
                entries,
                title=f"{algorithm}: all spaces and modes",
            )


def _write_report(path, rows) -> None:
    # sorted by auc descending; failed configurations sink to the bottom
    rows = sorted(
        rows,
        key=lambda r: (r["auc"] is None, -(r["auc"] or 0.0), r["space"], r["mode"], r["algorithm"]),
    )
    lines = ["space,mode,algorithm,auc,training_n,iterations,status"]
    for r in rows:
        auc_text = "" if r["auc"] is None else f"{r['auc']:.6f}"
        lines.append(
            f"{r['space']},{r['mode']},{r['algorithm']},{auc_text},"
            f"{r['training_n']},{r['iterations']},{r['status']}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _mixture_from_spec(doc, what) -> GaussianMixture:
    try:
        weights = np.asarray(doc["weights"], dtype=np.float64)
        means = np.asarray(doc["means"], dtype=np.float64)
        raw_covs = doc["covariances"]
        covs = np.empty((means.shape[0], means.shape[1], means.shape[1]))
        for i, c in enumerate(raw_covs):
            arr = np.asarray(c, dtype=np.float64)
            # scalar shorthand: isotropic variance
            covs[i] = arr * np.eye(means.shape[1]) if arr.ndim == 0 else arr
        return GaussianMixture(weights=weights, means=means, covariances=covs)
    except (KeyError, TypeError, ValueError, IndexError, SkinmapError) as exc:
        raise InvalidSpecError(f"invalid {what} mixture: {exc}") from exc


def _cmd_synth(args) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise MissingFileError(f"no such spec file: {spec_path}")
    try:
        doc = json.loads(spec_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidSpecError(f"{spec_path}: not valid JSON: {exc}") from exc

    try:
        n_images = int(doc["images"])
        width = int(doc["width"])
        height = int(doc["height"])
        if "skin_count" in doc:
            skin_count = int(doc["skin_count"])
        else:
            skin_count = round(float(doc["skin_fraction"]) * width * height)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpecError(f"{spec_path}: {exc}") from exc
    if n_images < 1:
        raise InvalidSpecError(f"{spec_path}: images must be >= 1")
    skin = _mixture_from_spec(doc.get("skin", {}), "skin")
    background = _mixture_from_spec(doc.get("background", {}), "background")
    try:
        spec = SynthImageSpec(
            width=width, height=height, skin_count=skin_count,
            skin=skin, background=background,
        )
    except InvalidSpecError as exc:
        raise InvalidSpecError(f"{spec_path}: {exc}") from exc

    out_dir = Path(args.out)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)
    (out_dir / "masks").mkdir(parents=True, exist_ok=True)
    manifest_lines = ["# image_path,mask_path"]
    for i in range(n_images):
        name = f"img{i:03d}"
        labeled = synth_dataset(spec, seed=args.seed + i, id=name)
        write_png(out_dir / "images" / f"{name}.png", labeled.image)
        write_png(out_dir / "masks" / f"{name}.png", labeled.mask.astype(np.uint8) * 255)
        manifest_lines.append(f"images/{name}.png,masks/{name}.png")
    manifest = out_dir / "manifest.txt"
    with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(manifest_lines) + "\n")
    print(f"wrote {n_images} labeled images -> {manifest}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that uses exit code 1 for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="skinmap",
        description="Skin-tone segmentation: FCM- and EM-fitted Gaussian "
        "mixtures, skin probability maps and ROC evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    train = sub.add_parser(
        "train",
        help="fit a skin color mixture from a labeled dataset",
        description="Sample skin pixels from the manifest's masks and fit "
        "a Gaussian mixture, either by EM or by FCM followed by "
        "per-cluster moment estimation. FCM uses fuzzifier m=2.",
    )
    train.add_argument("--manifest", required=True, help="dataset manifest file")
    train.add_argument("--space", required=True, choices=SPACES, help="color space")
    train.add_argument("--mode", required=True, choices=MODES, help="channel selection")
    train.add_argument("--algorithm", required=True, choices=ALGORITHMS, help="fitting algorithm")
    train.add_argument("--clusters", type=int, default=DEFAULT_CLUSTERS,
                       help="mixture components (default: %(default)s)")
    train.add_argument("--pixels", type=int, default=DEFAULT_PIXELS,
                       help="training skin pixels to sample (default: %(default)s)")
    train.add_argument("--seed", type=int, default=0, help="global seed (default: %(default)s)")
    train.add_argument("--out", required=True, help="output model JSON path")
    train.set_defaults(func=_cmd_train)

    spm = sub.add_parser(
        "spm",
        help="compute a skin probability map for one image",
        description="Score every pixel of an image under a trained model "
        "and write the min-max normalized map as 8-bit grayscale PNG.",
    )
    spm.add_argument("--model", required=True, help="trained model JSON")
    spm.add_argument("--image", required=True, help="input RGB PNG")
    spm.add_argument("--out", required=True, help="output grayscale PNG path")
    spm.add_argument("--csv", help="also write raw SPM values as CSV")
    spm.set_defaults(func=_cmd_spm)

    ev = sub.add_parser(
        "eval",
        help="sweep thresholds and write the pooled ROC curve",
        description="Compute SPMs for every manifest image, pool confusion "
        "counts over the 999-point threshold grid (k/1000, k=1..999) and "
        "write the ROC as CSV.",
    )
    ev.add_argument("--model", required=True, help="trained model JSON")
    ev.add_argument("--manifest", required=True, help="dataset manifest file")
    ev.add_argument("--out", required=True, help="output ROC CSV path")
    ev.add_argument("--svg", help="also write an SVG plot of the curve")
    ev.set_defaults(func=_cmd_eval)

    cmp_ = sub.add_parser(
        "compare",
        help="train and evaluate all 12 space/mode/algorithm configurations",
        description="Run the full comparison matrix (rgb/hsv/ycbcr x "
        "full3/chroma2 x em/fcm) with one shared seed; write per-config "
        "models and ROC CSVs, overlay SVG plots and a summary report "
        "sorted by AUC.",
    )
    cmp_.add_argument("--train-manifest", required=True, help="training dataset manifest")
    cmp_.add_argument("--test-manifest", required=True, help="evaluation dataset manifest")
    cmp_.add_argument("--clusters", type=int, default=DEFAULT_CLUSTERS,
                      help="mixture components (default: %(default)s)")
    cmp_.add_argument("--pixels", type=int, default=DEFAULT_PIXELS,
                      help="training skin pixels to sample (default: %(default)s)")
    cmp_.add_argument("--seed", type=int, default=0, help="global seed (default: %(default)s)")
    cmp_.add_argument("--out", required=True, help="output directory")
    cmp_.set_defaults(func=_cmd_compare)

    synth = sub.add_parser(
        "synth",
        help="generate a synthetic labeled dataset",
        description="Generate PNG images and masks from skin/background "
        "mixtures described in a JSON spec, plus a manifest usable by "
        "train and eval. Image i uses seed+i.",
    )
    synth.add_argument("--spec", required=True, help="synthetic dataset JSON spec")
    synth.add_argument("--seed", type=int, default=0, help="global seed (default: %(default)s)")
    synth.add_argument("--out", required=True, help="output directory")
    synth.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DataError as exc:
        print(f"skinmap: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SkinmapError as exc:
        print(f"skinmap: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"skinmap: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())
