"""Both kernel backends must agree exactly."""

import numpy as np
import pytest

from fillin import _backend, _fallback
from fillin import Image, SlicParams, slic_segment

compiled = pytest.importorskip("fillin._kernels")


def test_backend_selected():
    assert _backend.NAME in ("cython", "python")


@pytest.mark.parametrize("seed", range(5))
def test_label_components_agree(seed):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 3, size=(37, 23)).astype(np.int64)
    a, na = compiled.label_components(labels)
    b, nb = _fallback.label_components(labels)
    assert na == nb
    assert np.array_equal(a, b)


@pytest.mark.parametrize("seed", range(5))
def test_slic_assign_agree(seed):
    rng = np.random.default_rng(seed)
    feat = rng.random((30, 40, 3)) * 100
    centers = np.column_stack([rng.random(12) * 29, rng.random(12) * 39, rng.random((12, 3)) * 100])
    out = []
    for k in (compiled, _fallback):
        labels = np.zeros((30, 40), dtype=np.int64)
        dist = np.full((30, 40), np.inf)
        k.slic_assign(feat, centers, 0.37, 6, 8, labels, dist)
        out.append((labels, dist))
    assert np.array_equal(out[0][0], out[1][0])
    assert np.array_equal(out[0][1], out[1][1])


def test_full_slic_agrees(monkeypatch):
    img = Image(np.random.default_rng(3).random((48, 40, 3)))
    a = slic_segment(img, SlicParams(20))
    monkeypatch.setattr(_backend, "slic_assign", _fallback.slic_assign)
    monkeypatch.setattr(_backend, "label_components", _fallback.label_components)
    b = slic_segment(img, SlicParams(20))
    assert a == b
