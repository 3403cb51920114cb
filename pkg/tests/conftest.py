import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from funksphere.polycore import Polynomial, stereographic_point  # noqa: E402
from funksphere.scalar import Q  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# ---------------------------------------------------------------------------
# strategies

def rationals(max_num=9, max_den=6):
    return st.builds(lambda n, d: Q(n, d), st.integers(-max_num, max_num), st.integers(1, max_den))


def nonzero_rationals(max_num=9, max_den=6):
    return rationals(max_num, max_den).filter(lambda q: q != 0)


@st.composite
def exponents(draw, m, max_deg):
    e = [0] * m
    for _ in range(draw(st.integers(0, max_deg))):
        e[draw(st.integers(0, m - 1))] += 1
    return e


@st.composite
def polynomials(draw, m=None, max_deg=4, max_terms=4, dims=(2, 3, 4)):
    if m is None:
        m = draw(st.sampled_from(dims))
    terms = draw(st.dictionaries(exponents(m, max_deg).map(tuple), nonzero_rationals(),
                                 min_size=0, max_size=max_terms))
    return Polynomial(m, terms)


@st.composite
def homogeneous_polynomials(draw, m, degree, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = [0] * m
        for _ in range(degree):
            e[draw(st.integers(0, m - 1))] += 1
        terms[tuple(e)] = draw(nonzero_rationals())
    return Polynomial(m, terms)


@st.composite
def unit_points(draw, m):
    u = draw(st.lists(rationals(6, 5), min_size=m - 1, max_size=m - 1))
    return stereographic_point(u)


def householder(v):
    """Rational orthogonal reflection I - 2 v v^T / (v^T v)."""
    v = [Q(c) for c in v]
    n2 = sum(c * c for c in v)
    m = len(v)
    return [[(1 if i == j else 0) - 2 * v[i] * v[j] / n2 for j in range(m)] for i in range(m)]


def matmul(a, b):
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


@st.composite
def orthogonal_matrices(draw, m):
    out = [[Q(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for _ in range(draw(st.integers(1, 3))):
        v = draw(st.lists(rationals(5, 4), min_size=m, max_size=m).filter(lambda v: any(v)))
        out = matmul(out, householder(v))
    return out


# ---------------------------------------------------------------------------
# acceptance summary

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def acceptance(request):
    """Record pass/fail and wall time for an acceptance criterion."""
    import time

    rec = {"name": request.node.name, "status": "FAIL", "seconds": None}
    ACCEPTANCE_RESULTS[request.node.name] = rec
    start = time.perf_counter()
    yield rec
    rec["seconds"] = time.perf_counter() - start


def pytest_runtest_makereport(item, call):
    rec = ACCEPTANCE_RESULTS.get(item.name)
    if rec is not None and call.when == "call":
        rec["status"] = "PASS" if call.excinfo is None else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: int(n.split("_")[1])):
        rec = ACCEPTANCE_RESULTS[name]
        secs = "" if rec["seconds"] is None else f" ({rec['seconds']:.2f}s)"
        terminalreporter.write_line(f"{rec['status']}  {name}{secs}")
