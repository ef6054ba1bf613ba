import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fillin import Image, LabelMap, SlicParams, relabel_connected, slic_segment
from fillin.oracle import oracle_components, oracle_is_four_connected
from fillin.superpixel import merge_orphans, orphan_threshold, palette_rgb, rgb_to_lab

from conftest import label_maps


def partition(m):
    """Pixel partition as a set of frozensets of flat indices."""
    flat = m.data.ravel()
    return {frozenset(np.flatnonzero(flat == v).tolist()) for v in np.unique(flat)}


class TestRelabel:
    def test_examples(self):
        assert relabel_connected(LabelMap([[0, 0], [0, 0]])).data.tolist() == [[0, 0], [0, 0]]
        assert relabel_connected(LabelMap([[5, 5], [5, 9]])).data.tolist() == [[0, 0], [0, 1]]
        assert relabel_connected(LabelMap([[1, 0, 1]])).data.tolist() == [[0, 1, 2]]

    def test_diagonal_is_not_connected(self):
        out = relabel_connected(LabelMap([[1, 0], [0, 1]]))
        assert out.data.tolist() == [[0, 1], [2, 3]]

    @given(label_maps(max_side=20, max_label=3))
    def test_matches_flood_fill(self, m):
        assert relabel_connected(m).data.tolist() == oracle_components(m)

    @given(label_maps(max_side=20, max_label=3), st.randoms(use_true_random=False))
    def test_permutation_invariant(self, m, rnd):
        labels = np.unique(m.data).tolist()
        perm = dict(zip(labels, rnd.sample(range(100, 200), len(labels))))
        permuted = LabelMap(np.vectorize(perm.get)(m.data))
        assert partition(relabel_connected(m)) == partition(relabel_connected(permuted))

    @given(label_maps(max_side=20, max_label=3))
    def test_refines(self, m):
        out = relabel_connected(m)
        assert len(np.unique(out.data)) >= len(np.unique(m.data))
        for part in partition(out):
            assert len({m.data.ravel()[i] for i in part}) == 1
        assert oracle_is_four_connected(out)


class TestSlic:
    def test_single_pixel(self):
        assert slic_segment(Image(np.zeros((1, 1))), SlicParams(1)).data.tolist() == [[0]]

    def test_constant_image(self):
        out = slic_segment(Image(np.full((8, 8), 0.4)), SlicParams(4))
        sizes = np.bincount(out.data.ravel())
        assert len(sizes) == 4
        assert ((sizes >= 8) & (sizes <= 24)).all()
        assert oracle_is_four_connected(out)

    def test_half_black_half_white(self):
        img = np.zeros((8, 8))
        img[:, 4:] = 1.0
        out = slic_segment(Image(img), SlicParams(2, compactness=0.1)).data
        assert len(np.unique(out)) == 2
        for row in out:
            change = np.flatnonzero(np.diff(row)) + 1
            assert len(change) == 1 and abs(change[0] - 4) <= 1

    def test_too_many_superpixels(self):
        with pytest.raises(ValueError):
            slic_segment(Image(np.zeros((2, 2))), SlicParams(5))

    def test_k_equals_pixels(self):
        out = slic_segment(Image(np.zeros((3, 3))), SlicParams(9))
        assert oracle_is_four_connected(out)

    @pytest.mark.parametrize("shape", [(1, 17), (17, 1), (5, 40), (33, 7)])
    def test_odd_shapes(self, shape, rng):
        img = Image(rng.random(shape))
        for k in (1, 3, 5):
            out = slic_segment(img, SlicParams(k))
            assert oracle_is_four_connected(out)
            assert relabel_connected(out) == out

    def test_rgb(self, rng):
        img = np.zeros((24, 24, 3))
        img[:, :12] = [1.0, 0.0, 0.0]
        img[:, 12:] = [0.0, 0.0, 1.0]
        out = slic_segment(Image(img), SlicParams(2, compactness=1.0)).data
        assert (out[:, :12] == out[0, 0]).all() and (out[:, 12:] == out[0, -1]).all()

    def test_deterministic(self, rng):
        img = Image(rng.random((20, 30, 3)))
        a = slic_segment(img, SlicParams(9))
        assert slic_segment(img, SlicParams(9)) == a

    @given(st.integers(0, 2**32 - 1), st.integers(4, 24), st.integers(4, 24), st.integers(1, 12))
    def test_output_contract(self, seed, r, c, k):
        img = Image(np.random.default_rng(seed).random((r, c)))
        out = slic_segment(img, SlicParams(k))
        n = len(np.unique(out.data))
        assert np.array_equal(np.unique(out.data), np.arange(n))
        assert relabel_connected(out) == out  # connected and in raster order
        sizes = np.bincount(out.data.ravel())
        if n > 1:
            assert sizes.min() >= orphan_threshold(r, c, k)
        assert 1 <= n <= 4 * k


class TestMergeOrphans:
    def test_longest_boundary_wins(self):
        # region 2 (single pixel) touches 0 on two edges and 1 on one edge
        comp = np.array([[0, 0, 0],
                         [0, 2, 1],
                         [1, 1, 1]])
        out = merge_orphans(comp, 3, 2)
        assert out[1, 1] == 0

    def test_tie_goes_to_lower_label(self):
        comp = np.array([[0, 0, 2, 1, 1]])
        assert merge_orphans(comp, 3, 2).tolist() == [[0, 0, 0, 1, 1]]

    def test_cascading(self):
        comp = np.array([[0, 0, 0, 0, 1, 2]])
        out = merge_orphans(comp, 3, 3)
        assert len(np.unique(out)) == 1


class TestColour:
    def test_lab_reference_points(self):
        lab = rgb_to_lab(np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [1.0, 0.0, 0.0]]))
        np.testing.assert_allclose(lab[0], [0, 0, 0], atol=1e-6)
        np.testing.assert_allclose(lab[1], [100, 0, 0], atol=1e-2)
        np.testing.assert_allclose(lab[2], [53.24, 80.09, 67.20], atol=0.05)

    def test_palette_deterministic(self):
        m = LabelMap([[0, 1], [1, 2]])
        p = palette_rgb(m)
        assert p.shape == (2, 2, 3) and p.dtype == np.uint8
        assert (p[0, 1] == p[1, 0]).all()
        assert not (p[0, 0] == p[0, 1]).all()
        assert np.array_equal(palette_rgb(LabelMap([[1]]))[0, 0], p[0, 1])
