import mpmath
import pytest
from conftest import unit_points
from hypothesis import given, settings
from hypothesis import strategies as st

from funksphere.funk import SpherePolynomial, funk_transform
from funksphere.harmonics import sh_basis
from funksphere.oracle import (
    adaptive_gauss_legendre,
    build_frame,
    compare_numeric,
    gauss_legendre,
    gauss_legendre_nodes,
    make_report,
    oracle_region_integral,
    quadrature_inverse_at,
    sphere_monomial_moment,
    spectral_reference_inverter,
)
from funksphere.pizzetti import RegionSpec
from funksphere.polycore import Polynomial, norm_sq
from funksphere.scalar import ExactScalar, Q

E3 = (0, 0, 1)


def x(m, *e):
    return Polynomial(m, {tuple(e): 1})


def test_moment_examples():
    assert sphere_monomial_moment((0, 0, 0)) == ExactScalar(4, 2)
    assert sphere_monomial_moment((2, 0, 0)) == ExactScalar(Q(4, 3), 2)
    assert sphere_monomial_moment((2, 1, 0)).is_zero
    assert sphere_monomial_moment((0,), 1) == ExactScalar(2)
    with pytest.raises(ValueError):
        sphere_monomial_moment((0, 0), 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_moment_matches_quadrature(n):
    # moment of x1^2 x2^4, checked by quadrature (n=2) or Gaussian integrals
    if n == 2:
        with mpmath.workdps(30):
            ref = mpmath.quad(lambda t: mpmath.cos(t) ** 2 * mpmath.sin(t) ** 4, [0, 2 * mpmath.pi])
        assert mpmath.almosteq(sphere_monomial_moment((2, 4)).numeric(30), ref, 1e-25)
    else:
        alpha = (2, 4) + (0,) * (n - 2)
        # compare with the radial Gaussian identity: int x^a e^{-|x|^2} = moment * Gamma((|a|+n)/2) / 2
        with mpmath.workdps(30):
            gauss = mpmath.gamma(mpmath.mpf(3) / 2) * mpmath.gamma(mpmath.mpf(5) / 2) * mpmath.gamma(0.5) ** (n - 2)
            ref = 2 * gauss / mpmath.gamma(mpmath.mpf(6 + n) / 2)
        assert mpmath.almosteq(sphere_monomial_moment(alpha).numeric(30), ref, 1e-25)


@given(st.data())
@settings(max_examples=100)
def test_frame_orthonormal(data):
    m = data.draw(st.sampled_from([2, 3, 4, 5, 6]))
    w = data.draw(unit_points(m))
    f = build_frame(w, 30)
    assert f.orthonormality_error() < mpmath.mpf(10) ** -(f.precision - 4)
    with mpmath.workdps(f.precision):
        for a, b in zip(f.rows[0], w):
            assert abs(a - mpmath.mpf(int(b.numerator)) / int(b.denominator)) < mpmath.mpf(10) ** -(f.precision - 4)


def test_oracle_examples():
    with mpmath.workdps(30):
        v = oracle_region_integral(Polynomial.constant(3), RegionSpec("subsphere", 3, E3, 0)).value
        assert mpmath.almosteq(v, 2 * mpmath.pi, 1e-30)
        v = oracle_region_integral(x(3, 2, 0, 0), RegionSpec("sphere", 3)).value
        assert mpmath.almosteq(v, 4 * mpmath.pi / 3, 1e-30)
        v = oracle_region_integral(x(3, 0, 0, 1), RegionSpec("cap-upper", 3, E3, 0)).value
        assert mpmath.almosteq(v, mpmath.pi, 1e-30)
        v = oracle_region_integral(norm_sq(3), RegionSpec("ball", 3, r=2)).value
        assert mpmath.almosteq(v, 4 * mpmath.pi * 32 / 5, 1e-30)


def test_gauss_legendre_minimum_nodes_and_doubling():
    assert len(gauss_legendre_nodes(6, 30)) >= 64
    prec = 40
    with mpmath.workdps(prec):
        f = lambda t: mpmath.cos(t) ** 7 * mpmath.sin(t) ** 5  # noqa: E731
        lo, hi = mpmath.mpf(0), mpmath.acos(mpmath.mpf(3) / 5)
        value, degree = adaptive_gauss_legendre(f, lo, hi, prec)
        doubled = gauss_legendre(f, lo, hi, prec, degree + 1)
        assert abs(doubled - value) < mpmath.mpf("1e-12")
        ref = mpmath.quad(f, [lo, hi])
        assert mpmath.almosteq(value, ref, 1e-30)


@pytest.mark.parametrize("kind", ["cap-upper", "cap-lower"])
def test_cap_oracle_doubling_stable(kind):
    # higher precision tightens the convergence test and forces extra doublings
    P = x(4, 3, 2, 1, 0) + x(4, 0, 0, 0, 6)
    reg = RegionSpec(kind, 4, (Q(3, 5), Q(4, 5), 0, 0), Q(1, 2))
    a = oracle_region_integral(P, reg, 30).value
    b = oracle_region_integral(P, reg, 50).value
    with mpmath.workdps(60):
        assert abs(a - b) < mpmath.mpf("1e-12") * max(1, abs(b))


def test_spectral_examples():
    assert spectral_reference_inverter(SpherePolynomial(Polynomial.constant(3, 2), ExactScalar(1, 2))) \
        == SpherePolynomial(Polynomial.constant(3))
    H = sh_basis(3, 2)[0]
    assert spectral_reference_inverter(SpherePolynomial(H * -1, ExactScalar(1, 2))) == SpherePolynomial(H)
    with pytest.raises(ValueError):
        spectral_reference_inverter(SpherePolynomial(x(3, 1, 0, 0)))


@pytest.mark.parametrize("m", [4, 6])
def test_quadrature_inverse_matches(m):
    f = x(m, 2, 2, *([0] * (m - 2))) + x(m, 0, 1, 1, *([0] * (m - 3))) * 3 + 1
    fhat = funk_transform(f)
    pt = (Q(2, 3), Q(1, 3), Q(2, 3)) + (0,) * (m - 3)
    got = quadrature_inverse_at(fhat, pt, m, 30)
    want = SpherePolynomial(f).evaluate(pt).numeric(30)
    with mpmath.workdps(30):
        assert mpmath.almosteq(got, want, 1e-15)
    with pytest.raises(ValueError):
        quadrature_inverse_at(funk_transform(Polynomial.constant(3)), (0, 0, 1))


def test_compare_and_report():
    abs_err, rel_err, ok = compare_numeric(mpmath.mpf(2), mpmath.mpf(2) * (1 + mpmath.mpf("1e-12")))
    assert ok and rel_err < 1e-11
    assert not compare_numeric(1, 2)[2]
    assert compare_numeric(mpmath.mpf("1e-40"), 0)[2]
    rep = make_report("demo", {"m": 3}, None, mpmath.mpf(1), mpmath.mpf(1))
    data = rep.to_json()
    assert list(data) == ["formula", "inputs", "exact", "oracle", "abs_err", "rel_err", "tolerance", "pass"]
    assert data["pass"] is True
