import pytest
from conftest import orthogonal_matrices, polynomials, unit_points
from hypothesis import given, settings
from hypothesis import strategies as st

from funksphere.funk import (
    EVEN,
    ODD,
    SpherePolynomial,
    apply_p_polynomial,
    c_km_gamma,
    c_km_product,
    dual_at_distance,
    dual_transform,
    funk_eigenvalue,
    funk_transform,
    general_final_constant,
    ikj_finite_sum,
    ikj_term,
    inversion_constant_even,
    invert_even_m,
    invert_even_m_detailed,
    invert_general,
    invert_general_detailed,
    p_polynomial,
    p_polynomial_value,
    parity_of,
)
from funksphere.harmonics import sh_basis
from funksphere.oracle import spectral_reference_inverter
from funksphere.pizzetti import subsphere_integral
from funksphere.polycore import Polynomial, RationalPoint, norm_sq, substitute_orthogonal
from funksphere.scalar import ExactScalar, Q, gamma_half, sphere_area


def x(m, *e):
    return Polynomial(m, {tuple(e): 1})


def H2(m):
    return x(m, 2, *([0] * (m - 1))) - norm_sq(m) * Q(1, m)


def sp(poly, scale=None):
    return SpherePolynomial(poly) if scale is None else SpherePolynomial(poly, scale)


def test_funk_examples():
    assert funk_transform(Polynomial.constant(3)) == sp(Polynomial.constant(3, 2), ExactScalar(1, 2))
    got = funk_transform(x(3, 0, 0, 2))
    assert got == sp(Polynomial.constant(3) - x(3, 0, 0, 2), ExactScalar(1, 2))
    assert funk_transform(x(3, 1, 1, 1)).is_zero


def test_eigenvalue_examples():
    assert funk_eigenvalue(3, 1) == ExactScalar(-1, 2)
    assert funk_eigenvalue(4, 0) == ExactScalar(4, 2)
    assert funk_eigenvalue(3, 2) == ExactScalar(Q(3, 4), 2)
    assert funk_eigenvalue(2, 0) == ExactScalar(2)
    with pytest.raises(ValueError):
        funk_eigenvalue(1, 0)


def test_dual_examples():
    assert dual_transform(Polynomial.constant(3)) == sp(Polynomial.constant(3))
    assert dual_transform(H2(3)) == sp(H2(3) * Q(-1, 2))
    assert dual_transform(funk_transform(H2(4))) == sp(H2(4) * Q(4, 9), ExactScalar(1, 2))


@given(st.data())
@settings(max_examples=25)
def test_dual_is_scaled_funk(data):
    P = data.draw(polynomials(max_deg=5, dims=(2, 3, 4, 5)))
    m = P.dim
    assert funk_transform(P) == dual_transform(P).scaled(sphere_area(m - 1))


def test_dual_at_distance_examples():
    for p in (Q(0), Q(1, 3), Q(4, 5)):
        assert dual_at_distance(Polynomial.constant(3), p) == sp(Polynomial.constant(3))
        phi = x(3, 0, 0, 2)
        assert dual_at_distance(phi, p).evaluate((0, 0, 1)) == ExactScalar(p * p)
    P = x(4, 2, 1, 0, 1) + x(4, 0, 2, 0, 0)
    assert dual_at_distance(P, 0) == dual_transform(P)
    with pytest.raises(ValueError):
        dual_at_distance(P, 1)
    with pytest.raises(ValueError):
        dual_at_distance(P, Q(-1, 2))


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("p", [Q(1, 2), Q(3, 5)])
def test_dual_at_distance_matches_subsphere_average(m, p):
    # the average over {<w, x> = p} seen from x equals the normalised subsphere integral around x
    phi = x(m, 2, 0, *([1] + [0] * (m - 3))) + x(m, 1, 1, *([0] * (m - 2))) * 3 + x(m, 0, 4, *([0] * (m - 2)))
    pt = RationalPoint((Q(3, 5), Q(4, 5)) + (0,) * (m - 2))
    q2 = 1 - p * p
    area = sphere_area(m - 1)
    integral = subsphere_integral(phi, pt, p).exact
    # subsphere radius is sqrt(1-p^2); its area is area * q2^((m-2)/2)
    norm = area * ExactScalar(1, 0, q2 ** (m - 2))
    assert dual_at_distance(phi, p).evaluate(pt) == integral / norm


def test_p_polynomial_examples():
    assert p_polynomial(2) == ()
    assert p_polynomial(4) == (1,)
    assert p_polynomial(6) == (3, 3)
    assert p_polynomial_value(4, -8) == -9
    with pytest.raises(ValueError):
        p_polynomial(5)


@pytest.mark.parametrize("m", [4, 6, 8])
def test_c_km_forms_agree(m):
    for k in range(5):
        assert c_km_gamma(k, m) == ExactScalar(c_km_product(k, m))


def test_even_inversion_examples():
    f = x(4, 1, 1, 0, 0)
    fhat = funk_transform(f)
    assert fhat == sp(f * Q(-4, 3), ExactScalar(1, 2))
    rep = invert_even_m_detailed(fhat)
    assert rep.dual == sp(f * Q(4, 9), ExactScalar(1, 2))
    assert rep.after_p == sp(f * -4, ExactScalar(1, 2))
    assert rep.constant == ExactScalar(-4, 2)
    assert rep.result == sp(f)
    assert inversion_constant_even(2) == ExactScalar(2)
    assert invert_even_m(funk_transform(Polynomial.constant(2))) == sp(Polynomial.constant(2))
    with pytest.raises(ValueError):
        invert_even_m(funk_transform(Polynomial.constant(3)))
    with pytest.raises(ValueError):
        invert_even_m(x(4, 1, 0, 0, 0))


def test_p_polynomial_acts_by_eigenvalue():
    for m in (4, 6):
        for k in range(4):
            for H in sh_basis(m, 2 * k)[:3]:
                got = apply_p_polynomial(sp(H), m)
                assert got == sp(H * c_km_product(k, m))


def test_ikj_examples():
    assert ikj_term(4, 0, 0) == ExactScalar(Q(1, 4))
    assert ikj_term(3, 0, 0) == ExactScalar(Q(1, 2))
    for m in range(3, 9):
        for k in range(5):
            assert ikj_term(m, k, k) * 2 == gamma_half(m - 2) * gamma_half(2 * k + m - 1) / gamma_half(2 * k + 1)
            for j in range(k + 1):
                assert ikj_term(m, k, j) == ikj_finite_sum(m, k, j)
    with pytest.raises(ValueError):
        ikj_term(2, 0, 0)
    with pytest.raises(ValueError):
        ikj_term(4, 1, 2)


def test_general_inversion_examples():
    one = Polynomial.constant(3)
    fhat = funk_transform(one)
    assert fhat == sp(Polynomial.constant(3, 2), ExactScalar(1, 2))
    assert invert_general(fhat) == sp(one)
    f = x(4, 1, 1, 0, 0)
    assert invert_general(funk_transform(f)) == sp(f) == invert_even_m(funk_transform(f))
    with pytest.raises(ValueError):
        invert_general(funk_transform(Polynomial.constant(2)))


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_general_internal_F(m):
    from math import factorial
    for k in range(3):
        for H in sh_basis(m, 2 * k)[:2]:
            rep = invert_general_detailed(funk_transform(H))
            expected = sp(H).scaled(sphere_area(m - 1) * Q(factorial(m - 3), 2 ** (m - 2)))
            assert rep.F == expected
            assert rep.final_constant == general_final_constant(m)
            assert rep.result == sp(H)


def test_parity():
    assert parity_of(x(3, 1, 1, 0)) == EVEN
    assert parity_of(x(3, 1, 0, 0)) == ODD
    assert parity_of(x(3, 1, 0, 0) + 1) == "mixed"
    assert parity_of(Polynomial.zero(3)) == "zero"


def test_mixed_scale_classes_rejected():
    a = sp(Polynomial.constant(3), ExactScalar(1, 2))
    b = sp(x(3, 2, 0, 0))
    with pytest.raises(ValueError):
        a + b
    assert (a - a).is_zero


@given(st.data())
@settings(max_examples=25)
def test_well_defined_on_sphere(data):
    m = data.draw(st.sampled_from([2, 3, 4, 5]))
    f = data.draw(polynomials(m=m, max_deg=4))
    G = data.draw(polynomials(m=m, max_deg=3))
    g = f + (norm_sq(m) - 1) * G
    assert funk_transform(f) == funk_transform(g)


@given(st.data())
@settings(max_examples=20)
def test_equivariance(data):
    m = data.draw(st.sampled_from([2, 3, 4]))
    f = data.draw(polynomials(m=m, max_deg=4))
    M = data.draw(orthogonal_matrices(m))
    lhs = funk_transform(substitute_orthogonal(f, M))
    rhs = funk_transform(f)
    assert lhs == SpherePolynomial(substitute_orthogonal(rhs.poly, M), rhs.scale)


@given(st.data())
@settings(max_examples=25)
def test_funk_matches_great_subsphere_integral(data):
    m = data.draw(st.sampled_from([2, 3, 4, 5]))
    f = data.draw(polynomials(m=m, max_deg=5))
    w = data.draw(unit_points(m))
    assert funk_transform(f).evaluate(w) == subsphere_integral(f, w, 0).exact


@given(st.data())
@settings(max_examples=15)
def test_round_trips_random_even(data):
    m = data.draw(st.sampled_from([3, 4, 5, 6]))
    f = data.draw(polynomials(m=m, max_deg=4))
    even = Polynomial(m, {e: c for e, c in f.terms.items() if sum(e) % 2 == 0})
    target = sp(even)
    fhat = funk_transform(even)
    assert invert_general(fhat) == target
    assert spectral_reference_inverter(fhat) == target
    if m % 2 == 0:
        assert invert_even_m(fhat) == target


def test_to_json_and_str():
    s = sp(x(3, 2, 0, 0) * Q(4, 3), ExactScalar(1, 2))
    data = s.to_json()
    assert data["scale"] == {"pi_half": 2, "sqrt_arg": "1"}
    assert data["parity"] == EVEN
    assert str(sp(Polynomial.constant(3, 5))) == "5"
    assert str(s).startswith("pi * (")
