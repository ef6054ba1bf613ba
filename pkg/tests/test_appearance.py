import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fillin import AppearanceSignal, LabelMap, compute_signal, downsample, label_set, reverse_signal
from fillin.oracle import oracle_downsample, oracle_survivors

from conftest import label_maps


class TestDownsample:
    def test_blocks(self):
        s = LabelMap([[0, 0, 1, 1], [0, 0, 1, 1], [2, 2, 3, 3], [2, 2, 3, 3]])
        assert downsample(s, 2).data.tolist() == [[0, 1], [2, 3]]

    def test_five_by_five_stride_three(self):
        s = LabelMap(np.arange(25).reshape(5, 5))
        out = downsample(s, 3)
        # frozen from the double-loop oracle: rows/cols {0, 3}
        assert out.data.tolist() == [[0, 3], [15, 18]]
        assert out == oracle_downsample(s, 3)

    @given(label_maps())
    def test_stride_one_identity(self, s):
        assert downsample(s, 1) == s

    @given(label_maps(), st.integers(1, 30))
    def test_output_dims(self, s, t):
        out = downsample(s, t)
        assert out.shape == (-(-s.rows // t), -(-s.cols // t))

    @pytest.mark.parametrize("t", [0, -1, 1.5, True])
    def test_bad_stride(self, t):
        with pytest.raises(ValueError):
            downsample(LabelMap([[0]]), t)

    @given(label_maps(max_side=40), st.integers(1, 4), st.integers(1, 4))
    def test_composition(self, s, a, b):
        # compose only where no sample index would be clamped
        out = downsample(s, a * b)
        assume(s.rows > a * b * (out.rows - 1) and s.cols > a * b * (out.cols - 1))
        assert downsample(downsample(s, a), b) == out


class TestLabelSet:
    def test_examples(self):
        assert label_set(LabelMap([[0, 0], [0, 7]])) == {0, 7}
        assert label_set(LabelMap([[3]])) == {3}

    def test_scan_oracle(self, rng):
        m = LabelMap(rng.integers(0, 500, size=(64, 64)))
        expected = set()
        for row in m.data.tolist():
            for v in row:
                expected.add(v)
        assert label_set(m) == expected


class TestSignal:
    def test_example(self):
        sig = compute_signal(LabelMap([[0, 0], [0, 7]]), 2)
        assert dict(sig) == {0: 1, 7: 0}
        assert sig.as_stride == 2

    @given(label_maps())
    def test_stride_one_all_survive(self, s):
        assert set(compute_signal(s, 1).values()) == {1}

    @given(st.integers(1, 20), st.integers(1, 20), st.integers(0, 99), st.integers(1, 40))
    def test_uniform_map(self, r, c, lab, p):
        assert dict(compute_signal(LabelMap(np.full((r, c), lab)), p)) == {lab: 1}

    @given(label_maps(), st.integers(1, 30))
    def test_matches_oracle(self, s, p):
        sig = compute_signal(s, p)
        assert sig.survivors == oracle_survivors(s, p)
        assert sig.source_labels == label_set(s)

    @given(label_maps(), st.integers(1, 8), st.integers(1, 4))
    def test_nested_strides(self, s, p, k):
        assert compute_signal(s, k * p).survivors <= compute_signal(s, p).survivors

    @given(label_maps(max_side=40, max_label=3), st.integers(1, 8), st.data())
    def test_planted_square_survives(self, s, p, data):
        side = p + 1
        assume(s.rows >= side and s.cols >= side)
        r = data.draw(st.integers(0, s.rows - side))
        c = data.draw(st.integers(0, s.cols - side))
        arr = s.data.copy()
        arr[r:r + side, c:c + side] = 1000
        assert compute_signal(LabelMap(arr), p)[1000] == 1

    def test_square_of_side_p_can_vanish(self):
        arr = np.zeros((8, 8), dtype=np.int64)
        arr[1:4, 1:4] = 5
        assert compute_signal(LabelMap(arr), 4)[5] == 0

    def test_zero_stride(self):
        with pytest.raises(ValueError):
            compute_signal(LabelMap([[0]]), 0)

    def test_text(self):
        sig = compute_signal(LabelMap([[7, 0], [0, 0]]), 2)
        assert sig.to_text() == "0 0\n7 1\n"


class TestReverse:
    def test_complement(self):
        a = AppearanceSignal.from_dict({0: 1, 7: 0}, 2)
        assert dict(reverse_signal(a)) == {0: 0, 7: 1}
        assert reverse_signal(a).as_stride == 2

    def test_all_ones(self):
        a = AppearanceSignal.from_dict({1: 1, 2: 1, 9: 1}, 3)
        assert set(reverse_signal(a).values()) == {0}

    @given(label_maps(), st.integers(1, 10))
    def test_involution(self, s, p):
        a = compute_signal(s, p)
        assert reverse_signal(reverse_signal(a)) == a


class TestSignalType:
    def test_mapping_protocol(self):
        a = AppearanceSignal.from_dict({5: 0, 2: 1}, 4)
        assert list(a) == [2, 5]
        assert len(a) == 2 and a[5] == 0
        with pytest.raises(KeyError):
            a[3]

    def test_rejects_duplicates_and_bad_bits(self):
        with pytest.raises(ValueError):
            AppearanceSignal(np.array([1, 1]), np.array([0, 1]), 2)
        with pytest.raises(ValueError):
            AppearanceSignal(np.array([1]), np.array([2]), 2)
