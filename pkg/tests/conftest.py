import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from fillin import FeatureMap, LabelMap

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def label_maps(max_side=24, max_label=6):
    shape = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return hnp.arrays(np.int64, shape, elements=st.integers(0, max_label)).map(LabelMap)


finite_f32 = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False, width=32)


def feature_maps(rows, cols, channels):
    return hnp.arrays(np.float32, (rows, cols, channels), elements=finite_f32).map(FeatureMap)


def random_label_map(rng, rows, cols, n_labels):
    return LabelMap(rng.integers(0, n_labels, size=(rows, cols)))


def random_feature_map(rng, rows, cols, channels):
    # normal draws are never exactly zero, so no signed-zero corner cases
    return FeatureMap(rng.standard_normal((rows, cols, channels)).astype(np.float32))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_runtest_makereport(item, call):
    crit = item.get_closest_marker("criterion")
    if crit is None or call.when != "call":
        return
    ok = call.excinfo is None
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  AC{crit.args[0]:<2} {crit.args[1]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
