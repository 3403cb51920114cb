"""Fischer decomposition, spherical harmonic bases and the Laplace-Beltrami operator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, gcd

from .polycore import (
    Polynomial,
    euler,
    fischer_components,
    harmonic_split,
    homogeneous_parts,
    laplacian,
    mul_norm_sq,
)


@dataclass(frozen=True)
class HarmonicDecomposition:
    """Components ``(j, H_{degree-2j})`` of one homogeneous part."""

    degree: int
    dim: int
    components: tuple

    def reconstruct(self) -> Polynomial:
        out = Polynomial.zero(self.dim)
        for j, h in self.components:
            term = h
            for _ in range(j):
                term = mul_norm_sq(term)
            out = out + term
        return out

    def component(self, j: int) -> Polynomial:
        for jj, h in self.components:
            if jj == j:
                return h
        return Polynomial.zero(self.dim)


def fischer_decompose(P: Polynomial) -> list[HarmonicDecomposition]:
    """One decomposition per non-zero homogeneous part, ascending degree."""
    return [
        HarmonicDecomposition(d, P.dim, tuple(fischer_components(part, d)))
        for d, part in homogeneous_parts(P)
    ]


def harmonic_projection(P: Polynomial) -> Polynomial:
    """Top Fischer component of a homogeneous polynomial."""
    if P.is_zero:
        return P
    if not P.is_homogeneous:
        raise ValueError("harmonic projection needs a homogeneous polynomial")
    return harmonic_split(P, P.degree)[0]


def harmonic_pieces(P: Polynomial) -> dict[int, Polynomial]:
    """Group the Fischer harmonics of P by their own degree.

    On the unit sphere P equals the sum of the returned values, and each value is
    a spherical harmonic of the keyed degree.
    """
    out: dict[int, Polynomial] = {}
    for dec in fischer_decompose(P):
        for j, h in dec.components:
            deg = dec.degree - 2 * j
            out[deg] = out[deg] + h if deg in out else h
    return {d: h for d, h in sorted(out.items()) if not h.is_zero}


def is_harmonic(P: Polynomial) -> bool:
    return laplacian(P).is_zero


def lb_eigenvalue(k: int, m: int) -> int:
    if k < 0 or m < 2:
        raise ValueError("need k >= 0 and m >= 2")
    return -k * (m - 2 + k)


def laplace_beltrami(P: Polynomial) -> Polynomial:
    """|x|^2 Lap P - (m - 2 + E) E P."""
    m = P.dim
    ep = euler(P)
    return mul_norm_sq(laplacian(P)) - (ep.scale(m - 2) + euler(ep))


def harmonic_dimension(m: int, k: int) -> int:
    if k < 0:
        return 0
    return comb(k + m - 1, m - 1) - (comb(k + m - 3, m - 1) if k >= 2 else 0)


def monomials(m: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(m), k):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@lru_cache(maxsize=None)
def sh_basis(m: int, k: int) -> tuple[Polynomial, ...]:
    """A basis of the degree-k harmonics in m variables.

    Harmonic projections of the monomials with exponent of x1 at most 1, in
    descending graded-lex order.  Modulo |x|^2 those monomials span P_k (any x1^2
    can be traded for -(x2^2 + ... + xm^2)), and projection kills |x|^2 P_{k-2},
    so the projections are independent and have the classical count.
    """
    if m < 2 or k < 0:
        raise ValueError("need m >= 2 and k >= 0")
    basis = []
    for e in monomials(m, k):
        if e[0] <= 1:
            basis.append(harmonic_projection(Polynomial(m, {e: 1})))
    return tuple(basis)


def exact_rank(polys) -> int:
    """Rank of a list of polynomials over Q via fraction-free (Bareiss) elimination."""
    polys = list(polys)
    if not polys:
        return 0
    monos = sorted({e for p in polys for e in p.terms}, reverse=True)
    col = {e: i for i, e in enumerate(monos)}
    rows = []
    for p in polys:
        den = 1
        for c in p.terms.values():
            den = den * int(c.denominator) // gcd(den, int(c.denominator))
        row = [0] * len(monos)
        for e, c in p.terms.items():
            row[col[e]] = int(c * den)
        rows.append(row)
    return _bareiss_rank(rows)


def _bareiss_rank(rows: list[list[int]]) -> int:
    a = [r[:] for r in rows]
    n_rows, n_cols = len(a), len(a[0]) if a else 0
    rank, prev = 0, 1
    for c in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, n_rows):
            for cc in range(c + 1, n_cols):
                a[r][cc] = (a[r][cc] * a[rank][c] - a[rank][cc] * a[r][c]) // prev
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == n_rows:
            break
    return rank


def greedy_independent(polys) -> list[Polynomial]:
    """Keep each polynomial that raises the exact rank of those kept so far."""
    kept: list[Polynomial] = []
    for p in polys:
        if p.is_zero:
            continue
        if exact_rank(kept + [p]) == len(kept) + 1:
            kept.append(p)
    return kept


def sh_basis_by_rank(m: int, k: int) -> list[Polynomial]:
    """Slow reference basis: greedy exact-rank filter over all projected monomials."""
    return greedy_independent(
        harmonic_projection(Polynomial(m, {e: 1})) for e in monomials(m, k)
    )


def sphere_restriction_equal(P: Polynomial, Q: Polynomial) -> bool:
    """True when P and Q agree on the unit sphere (same Fischer harmonics)."""
    return harmonic_pieces(P - Q) == {}


__all__ = [
    "HarmonicDecomposition", "fischer_decompose", "harmonic_projection", "harmonic_pieces",
    "is_harmonic", "lb_eigenvalue", "laplace_beltrami", "harmonic_dimension", "sh_basis",
    "monomials", "exact_rank", "greedy_independent", "sh_basis_by_rank", "sphere_restriction_equal",
]
