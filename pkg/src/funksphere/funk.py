"""Funk transform, its duals and the two inversion formulas as exact polynomial maps.

Every value here is ``scale * poly`` with ``poly`` rational and ``scale`` a
single exact scalar.  That is enough: for fixed m the Funk eigenvalues, the
sphere areas and every inversion constant share one pi/sqrt class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .harmonics import harmonic_pieces, laplace_beltrami
from .polycore import (
    Polynomial,
    evaluate,
    homogeneous_part,
    homogeneous_parts,
    laplacian,
    reduce_on_sphere,
    to_text,
)
from .scalar import (
    ONE,
    ZERO,
    ExactScalar,
    Q,
    exact_add,
    fmt_rational,
    gamma,
    gamma_half,
    pochhammer,
    sphere_area,
    to_rational,
)

EVEN, ODD, MIXED, ZERO_PARITY = "even", "odd", "mixed", "zero"


def parity_of(P: Polynomial) -> str:
    degs = {sum(e) % 2 for e in P.terms}
    if not degs:
        return ZERO_PARITY
    if degs == {0}:
        return EVEN
    if degs == {1}:
        return ODD
    return MIXED


@dataclass(frozen=True)
class SpherePolynomial:
    """``scale * poly`` restricted to the unit sphere, poly in reduced form.

    The scale is normalised to ``pi^(h/2) * sqrt(q)`` with unit coefficient;
    the rational part lives in ``poly`` so equality is structural.
    """

    poly: Polynomial
    scale: ExactScalar = field(default_factory=lambda: ExactScalar(ONE))

    def __post_init__(self):
        poly = reduce_on_sphere(self.poly)
        scale = self.scale
        if not isinstance(scale, ExactScalar):
            scale = ExactScalar(to_rational(scale))
        if poly.is_zero or scale.is_zero:
            poly, scale = Polynomial.zero(self.poly.dim), ExactScalar(ONE)
        elif scale.coeff != 1:
            poly = poly.scale(scale.coeff)
            scale = ExactScalar(ONE, scale.pi_half, scale.sqrt_arg)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "scale", scale)

    @classmethod
    def from_terms(cls, dim: int, terms) -> "SpherePolynomial":
        """Sum of ``(ExactScalar, Polynomial)`` pairs; all non-zero scalars must share a class."""
        keys = {}
        for s, p in terms:
            if s.is_zero or p.is_zero:
                continue
            keys.setdefault(s.class_key, Polynomial.zero(dim))
            keys[s.class_key] = keys[s.class_key] + p.scale(s.coeff)
        keys = {k: v for k, v in keys.items() if not reduce_on_sphere(v).is_zero}
        if not keys:
            return cls(Polynomial.zero(dim))
        if len(keys) > 1:
            raise ValueError("terms mix incommensurable pi/sqrt classes")
        (h, q), poly = next(iter(keys.items()))
        return cls(poly, ExactScalar(ONE, h, q))

    @property
    def dim(self) -> int:
        return self.poly.dim

    @property
    def parity(self) -> str:
        return parity_of(self.poly)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def scaled(self, factor) -> "SpherePolynomial":
        if not isinstance(factor, ExactScalar):
            factor = ExactScalar(to_rational(factor))
        return SpherePolynomial(self.poly, self.scale * factor)

    def __add__(self, other: "SpherePolynomial") -> "SpherePolynomial":
        return SpherePolynomial.from_terms(self.dim, [(self.scale, self.poly), (other.scale, other.poly)])

    def __sub__(self, other):
        return self + other.scaled(-1)

    def evaluate(self, pt) -> ExactScalar:
        return self.scale * evaluate(self.poly, pt)

    def to_json(self) -> dict:
        return {
            "poly": to_text(self.poly),
            "scale": {"pi_half": self.scale.pi_half, "sqrt_arg": fmt_rational(self.scale.sqrt_arg)},
            "parity": self.parity,
        }

    def __str__(self):
        if self.scale == ExactScalar(ONE):
            return to_text(self.poly)
        return f"{self.scale} * ({to_text(self.poly)})"


def as_sphere_polynomial(f) -> SpherePolynomial:
    return f if isinstance(f, SpherePolynomial) else SpherePolynomial(f)


def _check_dim(f: SpherePolynomial, m: int | None) -> int:
    if m is None:
        m = f.dim
    if m != f.dim:
        raise ValueError(f"dimension {m} does not match polynomial dimension {f.dim}")
    if m < 2:
        raise ValueError("dimension must be >= 2")
    return m


def _rho(k: int, m: int):
    """1 / (4^k k! ((m-1)/2)_k)."""
    return ONE / (4 ** k * factorial(k) * pochhammer(m - 1, k))


def _laplacian_chain(P: Polynomial) -> list[Polynomial]:
    chain = [P]
    while not chain[-1].is_zero:
        chain.append(laplacian(chain[-1]))
    return chain[:-1] or [P]


def _funk_rational(P: Polynomial, m: int) -> Polynomial:
    """funk(P) / sigma_{m-1} as a rational polynomial in omega (not reduced).

    Great-subsphere Pizzetti sum with omega kept symbolic: evaluation at the
    origin of Lap^{k-l} <omega, grad>^{2l} P picks the degree-2l part of
    Lap^{k-l} P evaluated at omega, times (2l)!.
    """
    lap = _laplacian_chain(P)
    out = Polynomial.zero(m)
    top = P.degree // 2 if not P.is_zero else -1
    for k in range(top + 1):
        acc = Polynomial.zero(m)
        for ell in range(k + 1):
            if k - ell >= len(lap):
                continue
            part = homogeneous_part(lap[k - ell], 2 * ell)
            if part.is_zero:
                continue
            acc = acc + part.scale(comb(k, ell) * (-1) ** ell * factorial(2 * ell))
        if not acc.is_zero:
            out = out + acc.scale(_rho(k, m))
    return out


def funk_transform(f, m: int | None = None) -> SpherePolynomial:
    """Integral of f over the great subsphere orthogonal to omega, as a function of omega."""
    f = as_sphere_polynomial(f)
    m = _check_dim(f, m)
    return SpherePolynomial(_funk_rational(f.poly, m), f.scale * sphere_area(m - 1))


def funk_eigenvalue(m: int, k: int) -> ExactScalar:
    """d_{m,k} = 2 pi^(m/2 - 1) (-1)^k G(k + 1/2) / G((m-1)/2 + k)."""
    if m < 2 or k < 0:
        raise ValueError("need m >= 2 and k >= 0")
    return ExactScalar((-1) ** k * 2, m - 2) * gamma_half(2 * k + 1) / gamma_half(m - 1 + 2 * k)


def dual_transform(phi, m: int | None = None) -> SpherePolynomial:
    """Normalised average of phi over the great subspheres through x."""
    phi = as_sphere_polynomial(phi)
    m = _check_dim(phi, m)
    return SpherePolynomial(_funk_rational(phi.poly, m), phi.scale)


def dual_at_distance(phi, p, m: int | None = None) -> SpherePolynomial:
    """Average of phi over the subsphere {<w, x> = p}, as a function of x; p = sin r."""
    phi = as_sphere_polynomial(phi)
    m = _check_dim(phi, m)
    p = to_rational(p)
    if not 0 <= p < 1:
        raise ValueError("p must satisfy 0 <= p < 1")
    q2 = 1 - p * p
    out = Polynomial.zero(m)
    for d, part in homogeneous_parts(phi.poly):
        lap = _laplacian_chain(part)
        for j in range(d // 2 + 1):
            acc = Polynomial.zero(m)
            for ell in range(j + 1):
                if j - ell >= len(lap):
                    continue
                g = lap[j - ell]
                if g.is_zero:
                    continue
                e = d - 2 * (j - ell)
                # <x, grad>^{2l} of a degree-e homogeneous g, evaluated at p x
                c = comb(j, ell) * (-1) ** ell * Q(factorial(e), factorial(e - 2 * ell)) * p ** (e - 2 * ell)
                acc = acc + g.scale(c)
            if not acc.is_zero:
                out = out + acc.scale(_rho(j, m) * q2 ** j)
    return SpherePolynomial(out, phi.scale)


# ---------------------------------------------------------------------------
# even-dimensional inversion

def p_polynomial(m: int) -> tuple[int, ...]:
    """Roots c_j = (m - 2j - 1)(2j - 1), j = 1..(m-2)/2, of P_{m-2}(z) = prod (z - c_j)."""
    if m < 2 or m % 2:
        raise ValueError("P_{m-2} is defined for even m >= 2")
    return tuple((m - 2 * j - 1) * (2 * j - 1) for j in range(1, (m - 2) // 2 + 1))


def p_polynomial_value(m: int, z):
    out = ONE
    for c in p_polynomial(m):
        out *= to_rational(z) - c
    return out


def inversion_constant_even(m: int) -> ExactScalar:
    """2 (-4 pi)^((m-2)/2) G((m-1)/2) / G(1/2)."""
    if m < 2 or m % 2:
        raise ValueError("needs even m >= 2")
    n = (m - 2) // 2
    return ExactScalar(2 * (-4) ** n * pochhammer(1, n), 2 * n)


def c_km_product(k: int, m: int):
    """P_{m-2} at the Laplace-Beltrami eigenvalue -2k(m - 2 + 2k)."""
    return p_polynomial_value(m, -2 * k * (m - 2 + 2 * k))


def c_km_gamma(k: int, m: int) -> ExactScalar:
    """4^(m/2-1) G(1/2-k) G((m-1)/2+k) / (G((3-m)/2-k) G(1/2+k))."""
    if m < 2 or m % 2:
        raise ValueError("needs even m >= 2")
    num = gamma(1 - 2 * k) * gamma(m - 1 + 2 * k)
    den = gamma(3 - m - 2 * k) * gamma(1 + 2 * k)
    return num / den * 4 ** (m // 2 - 1)


def apply_p_polynomial(phi: SpherePolynomial, m: int) -> SpherePolynomial:
    """P_{m-2}(Laplace-Beltrami) applied factor by factor."""
    poly = phi.poly
    for c in p_polynomial(m):
        poly = laplace_beltrami(poly) - poly.scale(c)
    return SpherePolynomial(poly, phi.scale)


@dataclass(frozen=True)
class EvenInversionReport:
    dual: SpherePolynomial
    after_p: SpherePolynomial
    constant: ExactScalar
    result: SpherePolynomial
    factors: tuple


def _require_even(fhat: SpherePolynomial):
    if fhat.parity in (ODD, MIXED):
        raise ValueError("inversion needs an even input (odd parts lie in the kernel)")


def invert_even_m_detailed(fhat, m: int | None = None) -> EvenInversionReport:
    fhat = as_sphere_polynomial(fhat)
    m = _check_dim(fhat, m)
    if m % 2:
        raise ValueError("invert_even_m needs even m")
    _require_even(fhat)
    dual = dual_transform(fhat, m)
    after = apply_p_polynomial(dual, m)
    const = inversion_constant_even(m)
    result = after.scaled(const.inverse())
    return EvenInversionReport(dual, after, const, result, p_polynomial(m))


def invert_even_m(fhat, m: int | None = None) -> SpherePolynomial:
    """f from its Funk transform via P_{m-2}(Laplace-Beltrami) of the dual, for even m."""
    return invert_even_m_detailed(fhat, m).result


# ---------------------------------------------------------------------------
# general inversion

def ikj_term(m: int, k: int, j: int) -> ExactScalar:
    """G((m-2)/2)/2 * G(j + (m-1)/2)/G(k + 1/2) * ((2-m)/2)_{k-j}."""
    if m < 3:
        raise ValueError("needs m >= 3")
    if not 0 <= j <= k:
        raise ValueError("needs 0 <= j <= k")
    return gamma_half(m - 2) * gamma_half(2 * j + m - 1) / gamma_half(2 * k + 1) \
        * (pochhammer(2 - m, k - j) / 2)


def ikj_finite_sum(m: int, k: int, j: int) -> ExactScalar:
    """Same quantity as an explicit alternating sum of Gamma ratios."""
    if m < 3:
        raise ValueError("needs m >= 3")
    total = ExactScalar(ZERO)
    for ell in range(k - j + 1):
        t = gamma_half(2 * (j + ell) + m - 1) / gamma_half(2 * (j + ell) + 1)
        total = exact_add(total, t * (comb(k - j, ell) * (-1) ** ell))
        if not isinstance(total, ExactScalar):
            raise ArithmeticError("finite sum left the exact class")
    return total * gamma_half(m - 2) / 2


def h_constant(m: int, k: int) -> ExactScalar:
    """2 pi^((m-1)/2) (2k)! / sigma_{m-1}."""
    return ExactScalar(2 * factorial(2 * k), m - 1) / sphere_area(m - 1)


def general_component_factor(m: int, k: int) -> ExactScalar:
    """F restricted to a degree-2k harmonic component is this constant times fhat's component."""
    total = ExactScalar(ZERO)
    for j in range(k + 1):
        t = ikj_term(m, k, j) / gamma(m - 1 + 2 * j) * Q((-1) ** j, 4 ** j * factorial(j) * factorial(2 * k - 2 * j))
        total = exact_add(total, t)
        if not isinstance(total, ExactScalar):
            raise ArithmeticError("sum over j left the exact class")
    return h_constant(m, k) * total


def general_final_constant(m: int) -> ExactScalar:
    """2^(m-2) / ((m-3)! sigma_{m-1})."""
    return ExactScalar(Q(2 ** (m - 2), factorial(m - 3))) / sphere_area(m - 1)


@dataclass(frozen=True)
class GeneralInversionReport:
    F: SpherePolynomial
    component_factors: dict
    final_constant: ExactScalar
    result: SpherePolynomial


def invert_general_detailed(fhat, m: int | None = None) -> GeneralInversionReport:
    fhat = as_sphere_polynomial(fhat)
    m = _check_dim(fhat, m)
    if m < 3:
        raise ValueError("invert_general needs m >= 3")
    _require_even(fhat)
    terms, factors = [], {}
    for deg, h in harmonic_pieces(fhat.poly).items():
        k = deg // 2
        factors[k] = general_component_factor(m, k)
        terms.append((fhat.scale * factors[k], h))
    F = SpherePolynomial.from_terms(m, terms)
    final = general_final_constant(m)
    return GeneralInversionReport(F, factors, final, F.scaled(final))


def invert_general(fhat, m: int | None = None) -> SpherePolynomial:
    """f from its Funk transform through the distance-r dual averages, any m >= 3."""
    return invert_general_detailed(fhat, m).result


def transform_report(kind: str, f: SpherePolynomial, out: SpherePolynomial, m: int,
                     constants: dict | None = None) -> dict:
    return {
        "transform": kind,
        "dim": m,
        "input": f.to_json(),
        "output": out.to_json(),
        "constants": constants or {},
        "exact": True,
    }


__all__ = [
    "EVEN", "ODD", "MIXED", "ZERO_PARITY", "parity_of", "SpherePolynomial", "as_sphere_polynomial",
    "funk_transform", "funk_eigenvalue", "dual_transform", "dual_at_distance",
    "p_polynomial", "p_polynomial_value", "inversion_constant_even", "c_km_product", "c_km_gamma",
    "apply_p_polynomial", "EvenInversionReport", "invert_even_m_detailed", "invert_even_m",
    "ikj_term", "ikj_finite_sum", "h_constant", "general_component_factor",
    "general_final_constant", "GeneralInversionReport", "invert_general_detailed",
    "invert_general", "transform_report",
]
