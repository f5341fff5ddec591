"""Shared fixtures: a small synthetic labeled dataset built through the CLI."""

import contextlib
import io
import json

import pytest

from skinmap.cli import main

WELL_SEPARATED_SPEC = {
    "images": 2,
    "width": 24,
    "height": 24,
    "skin_fraction": 0.5,
    "skin": {
        "weights": [0.6, 0.4],
        "means": [[225, 160, 120], [180, 120, 90]],
        "covariances": [9, 9],
    },
    "background": {
        "weights": [0.5, 0.5],
        "means": [[40, 70, 150], [60, 130, 60]],
        "covariances": [9, 9],
    },
}


def run_cli(argv):
    """Invoke the CLI in-process, capturing output streams."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory):
    """Two 24x24 labeled images with cleanly separated skin/background colors."""
    root = tmp_path_factory.mktemp("tinydata")
    spec = root / "spec.json"
    spec.write_text(json.dumps(WELL_SEPARATED_SPEC))
    code, _, err = run_cli(["synth", "--spec", spec, "--out", root / "train", "--seed", 100])
    assert code == 0, err
    code, _, err = run_cli(["synth", "--spec", spec, "--out", root / "test", "--seed", 200])
    assert code == 0, err
    return {
        "root": root,
        "spec": spec,
        "train_manifest": root / "train" / "manifest.txt",
        "test_manifest": root / "test" / "manifest.txt",
    }
