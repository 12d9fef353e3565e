"""Shared pytest fixtures: canonical curve pairs and their solved patches.

Everything runs in-process; nothing needs a network or external service.
"""

from pathlib import Path

import numpy as np
import pytest

from devpatch import sample_pairs
from devpatch.patch import DevelopablePatch
from devpatch.roots import trace_branches

from cli.storage.file_storage import FileStorage


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def cylinder():
    return sample_pairs.cylinder_pair()


@pytest.fixture
def cone():
    return sample_pairs.cone_pair()


@pytest.fixture
def mirrored():
    return sample_pairs.mirrored_pair()


@pytest.fixture
def saddle():
    return sample_pairs.saddle_pair()


@pytest.fixture
def planar():
    return sample_pairs.planar_pair()


@pytest.fixture
def quarter_cylinder():
    return sample_pairs.quarter_cylinder_pair()


@pytest.fixture
def scaled():
    return sample_pairs.scaled_pair()


@pytest.fixture
def spline():
    return sample_pairs.spline_pair()


def _solved_patch(pair, samples: int = 65) -> DevelopablePatch:
    c, d = pair
    branches = trace_branches(c, d, np.linspace(0.0, 1.0, samples))
    assert branches, "pair has no solution branch"
    return DevelopablePatch(c, d, branches[0])


def _write_pair(directory: Path, pair, stem: str = "") -> tuple:
    c, d = pair
    c_path = directory / f"{stem}c.json"
    d_path = directory / f"{stem}d.json"
    c_path.write_text(FileStorage.curve_to_json(c))
    d_path.write_text(FileStorage.curve_to_json(d))
    return str(c_path), str(d_path)


def _write_branch_rows(path: Path, rows) -> str:
    lines = ["t,T,dT"] + [f"{float(t)!r},{float(T)!r},{float(dT)!r}" for t, T, dT in rows]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def solved_patch():
    """Patch of the best branch of a pair, traced on a uniform t grid."""
    return _solved_patch


@pytest.fixture
def write_pair():
    """Write both curves of a pair as JSON files; returns their paths as strings."""
    return _write_pair


@pytest.fixture
def write_branch_rows():
    """Write (t, T, dT) rows as a branch CSV file."""
    return _write_branch_rows
