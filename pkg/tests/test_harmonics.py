import pytest
from conftest import orthogonal_matrices, polynomials
from hypothesis import given, settings
from hypothesis import strategies as st

from funksphere.harmonics import (
    exact_rank,
    fischer_decompose,
    harmonic_dimension,
    is_harmonic,
    laplace_beltrami,
    lb_eigenvalue,
    sh_basis,
    sh_basis_by_rank,
)
from funksphere.pizzetti import sphere_integral
from funksphere.polycore import Polynomial, norm_sq, substitute_orthogonal
from funksphere.scalar import Q


def test_fischer_examples():
    x1sq = Polynomial(3, {(2, 0, 0): 1})
    (dec,) = fischer_decompose(x1sq)
    assert dec.component(0) == x1sq - norm_sq(3) * Q(1, 3)
    assert dec.component(1) == Q(1, 3)
    x1x2 = Polynomial(4, {(1, 1, 0, 0): 1})
    assert fischer_decompose(x1x2)[0].components == ((0, x1x2),)
    r4 = norm_sq(3) ** 2
    assert fischer_decompose(r4)[0].components == ((2, Polynomial.constant(3)),)


@given(polynomials(max_deg=8, dims=(2, 3, 4, 5)))
@settings(max_examples=25)
def test_fischer_reconstructs(P):
    total = Polynomial.zero(P.dim)
    for dec in fischer_decompose(P):
        for j, h in dec.components:
            assert is_harmonic(h)
            assert h.is_homogeneous and h.degree == dec.degree - 2 * j
        total = total + dec.reconstruct()
    assert total == P


def test_lb_examples():
    assert laplace_beltrami(Polynomial.constant(3, 5)).is_zero
    x1x2 = Polynomial(3, {(1, 1, 0): 1})
    assert laplace_beltrami(x1x2) == x1x2 * -6
    assert lb_eigenvalue(0, 5) == 0
    assert lb_eigenvalue(2, 4) == -8
    assert lb_eigenvalue(2, 3) == -6


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_lb_eigenvalue_on_basis(m):
    for k in range(0, 9, 2):
        for H in sh_basis(m, k):
            assert laplace_beltrami(H) == H * lb_eigenvalue(k, m)


@given(st.data())
@settings(max_examples=15)
def test_lb_commutes_with_rotation(data):
    m = data.draw(st.sampled_from([2, 3, 4]))
    P = data.draw(polynomials(m=m, max_deg=4))
    M = data.draw(orthogonal_matrices(m))
    assert laplace_beltrami(substitute_orthogonal(P, M)) == substitute_orthogonal(laplace_beltrami(P), M)


def test_basis_counts():
    assert sh_basis(3, 1) == tuple(Polynomial.variable(3, i) for i in range(3))
    assert len(sh_basis(3, 2)) == 5
    assert len(sh_basis(4, 2)) == 9
    for m in range(2, 7):
        for k in range(9):
            b = sh_basis(m, k)
            assert len(b) == harmonic_dimension(m, k)
            assert all(is_harmonic(h) and h.degree == k for h in b)


@pytest.mark.parametrize("m,k", [(2, 5), (3, 4), (4, 4), (5, 3), (6, 2)])
def test_basis_is_independent(m, k):
    b = sh_basis(m, k)
    assert exact_rank(b) == len(b)
    assert len(sh_basis_by_rank(m, k)) == len(b)


def test_exact_rank_detects_dependence():
    x = [Polynomial.variable(3, i) for i in range(3)]
    assert exact_rank([x[0], x[1], x[0] * Q(1, 2) - x[1] * 3]) == 2
    assert exact_rank([]) == 0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_orthogonality_between_degrees(m):
    for k in range(0, 5):
        for k2 in range(k + 2, 7, 2):
            for H in sh_basis(m, k)[:3]:
                for H2 in sh_basis(m, k2)[:3]:
                    assert sphere_integral(H * H2).closed_form.is_zero
