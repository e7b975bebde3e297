import contextlib
import time

import numpy as np
import pytest
from hypothesis import strategies as st

from interpkit.measure_core import SampledFunction

_ACCEPTANCE_LINES = []


@contextlib.contextmanager
def _criterion(number, name, budget_s):
    """Time a criterion body, enforce its runtime budget, log one PASS/FAIL line."""
    info = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        elapsed = time.perf_counter() - t0
        ok = elapsed < budget_s
        if not ok:
            info["detail"] = f"runtime {elapsed:.2f}s exceeds {budget_s}s"
            raise AssertionError(info["detail"])
    except Exception as e:
        info.setdefault("detail", f"{type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}")
        raise
    finally:
        elapsed = time.perf_counter() - t0
        detail = info.get("detail", "")
        line = f"[{'PASS' if ok else 'FAIL'}] AC{number:02d} {name} ({elapsed:.2f}s / {budget_s}s)"
        _ACCEPTANCE_LINES.append(line + (f" :: {detail}" if detail else ""))
        print(_ACCEPTANCE_LINES[-1])


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


values_st = st.floats(min_value=0.0, max_value=100.0, allow_nan=False, allow_infinity=False)
measures_st = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def simple_functions(draw, max_cells=25, cells=None):
    n = cells if cells is not None else draw(st.integers(1, max_cells))
    vals = draw(st.lists(values_st, min_size=n, max_size=n))
    meas = draw(st.lists(measures_st, min_size=n, max_size=n))
    return SampledFunction(vals, meas)


@st.composite
def function_pairs(draw, max_cells=20):
    n = draw(st.integers(1, max_cells))
    meas = draw(st.lists(measures_st, min_size=n, max_size=n))
    a = draw(st.lists(values_st, min_size=n, max_size=n))
    b = draw(st.lists(values_st, min_size=n, max_size=n))
    return SampledFunction(a, meas), SampledFunction(b, meas)
