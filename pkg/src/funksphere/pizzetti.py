"""Pizzetti-type closed forms for polynomial integrals over sphere regions.

Every formula is a finite sum over k of a Gamma-weighted constant times an
iterated invariant operator applied to the integrand and evaluated at a point.
On hyperplane sections the operator is ``T = Lap - <omega, grad>^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import mpmath

from .config import resolve_precision
from .polycore import (
    Polynomial,
    RationalPoint,
    as_point,
    dir_deriv_power,
    evaluate,
    homogeneous_parts,
    laplacian,
    laplacian_power,
    unit_point,
)
from .scalar import (
    ONE,
    ZERO,
    ExactScalar,
    ExactSum,
    Q,
    fmt_rational,
    gamma,
    gamma_half,
    pochhammer,
    to_rational,
)

SPHERE = "sphere"
BALL = "ball"
SUBSPHERE = "subsphere"
SUBBALL = "subball"
CAP_UPPER = "cap-upper"
CAP_LOWER = "cap-lower"
KINDS = (SPHERE, BALL, SUBSPHERE, SUBBALL, CAP_UPPER, CAP_LOWER)
SECTION_KINDS = (SUBSPHERE, SUBBALL, CAP_UPPER, CAP_LOWER)

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class RegionSpec:
    """Integration domain in R^dim.  ``r`` is the radius for sphere/ball kinds."""

    kind: str
    dim: int
    omega: RationalPoint | None = None
    p: object = None
    r: object = ONE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        r = to_rational(self.r)
        if r <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "r", r)
        if self.kind in SECTION_KINDS:
            if self.omega is None or self.p is None:
                raise ValueError(f"region {self.kind} needs omega and p")
            omega = unit_point(self.omega)
            if omega.dim != self.dim:
                raise ValueError("omega dimension does not match region dimension")
            p = to_rational(self.p)
            if not -1 < p < 1:
                raise ValueError("p must satisfy -1 < p < 1")
            object.__setattr__(self, "omega", omega)
            object.__setattr__(self, "p", p)
        elif self.omega is not None or self.p is not None:
            raise ValueError(f"region {self.kind} takes no omega or p")

    @property
    def side(self) -> str | None:
        return {CAP_UPPER: UPPER, CAP_LOWER: LOWER}.get(self.kind)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim}
        if self.kind in SECTION_KINDS:
            out["omega"] = [fmt_rational(c) for c in self.omega.coords]
            out["p"] = fmt_rational(self.p)
        else:
            out["r"] = fmt_rational(self.r)
        return out

    @classmethod
    def from_json(cls, data: dict, dim: int | None = None) -> "RegionSpec":
        kind = data["kind"]
        omega = data.get("omega")
        if omega is not None:
            omega = RationalPoint(tuple(to_rational(c) for c in omega))
        d = data.get("dim", dim if dim is not None else (omega.dim if omega else None))
        if d is None:
            raise ValueError("region dimension is missing")
        p = data.get("p")
        return cls(kind, int(d), omega, None if p is None else to_rational(p),
                   to_rational(data.get("r", 1)))


@dataclass(frozen=True)
class IntegralResult:
    """Closed form of an integral plus its numeric rendering.

    ``closed_form`` may contain asin atoms (caps in even dimension); ``exact`` is
    set whenever the value is a single ``coeff * pi^(h/2) * sqrt(q)``.
    """

    closed_form: ExactSum
    precision: int = field(default_factory=resolve_precision)

    @property
    def exact(self) -> ExactScalar | None:
        return self.closed_form.as_scalar()

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def numeric(self):
        return self.closed_form.numeric(self.precision)

    def __add__(self, other: "IntegralResult") -> "IntegralResult":
        return IntegralResult(self.closed_form + other.closed_form,
                              min(self.precision, other.precision))

    def to_json(self) -> dict:
        ex = self.exact
        return {
            "closed_form": self.closed_form.to_json(),
            "exact": None if ex is None else
            {k: v for k, v in ex.to_json(self.precision).items() if k != "numeric"},
            "numeric": mpmath.nstr(self.numeric, self.precision),
        }


def _result(value, precision=None) -> IntegralResult:
    if isinstance(value, ExactScalar):
        value = ExactSum.from_scalar(value)
    return IntegralResult(value, resolve_precision(precision))


def power_half(base, two_e: int) -> ExactScalar:
    """base^(two_e/2) for rational base > 0 (or base = 0 with two_e > 0)."""
    base = to_rational(base)
    whole, half = divmod(two_e, 2)
    val = ExactScalar(base ** whole) if whole >= 0 else ExactScalar(ONE / base ** (-whole))
    if half:
        val = val * ExactScalar.sqrt(base)
    return val


# ---------------------------------------------------------------------------
# operator chains

def section_operator(P: Polynomial, omega) -> Polynomial:
    """T P = Lap P - <omega, grad>^2 P."""
    return laplacian(P) - dir_deriv_power(P, omega, 2)


@lru_cache(maxsize=8192)
def _t_chain(P: Polynomial, omega: tuple) -> tuple[Polynomial, ...]:
    chain = [P]
    while True:
        nxt = section_operator(chain[-1], omega)
        if nxt.is_zero:
            break
        chain.append(nxt)
    return tuple(chain)


def t_power(P: Polynomial, omega, k: int) -> Polynomial:
    """T^k P, memoised per (P, omega)."""
    chain = _t_chain(P, as_point(omega))
    return chain[k] if k < len(chain) else Polynomial.zero(P.dim)


def t_chain(P: Polynomial, omega) -> tuple[Polynomial, ...]:
    """(P, T P, T^2 P, ...) up to the last non-zero power."""
    return _t_chain(P, as_point(omega))


def _laplacian_values_at_origin(P: Polynomial) -> list:
    vals = []
    cur = P
    while not cur.is_zero:
        vals.append(cur.constant_term())
        cur = laplacian(cur)
    return vals


# ---------------------------------------------------------------------------
# whole sphere and ball

def sphere_integral(P: Polynomial, r=1, precision=None) -> IntegralResult:
    """Integral of P over the sphere of radius r centred at 0."""
    r = to_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    m = P.dim
    total = ExactScalar(ZERO)
    for k, lap in enumerate(_laplacian_values_at_origin(P)):
        if lap == 0:
            continue
        c = Q(lap, 4 ** k * factorial(k)) * r ** (2 * k + m - 1)
        total = total + ExactScalar(2 * c, m) / gamma_half(m + 2 * k)
    return _result(total, precision)


def ball_integral(P: Polynomial, r=1, precision=None) -> IntegralResult:
    r = to_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    m = P.dim
    total = ExactScalar(ZERO)
    for k, lap in enumerate(_laplacian_values_at_origin(P)):
        if lap == 0:
            continue
        c = Q(lap, 4 ** k * factorial(k)) * r ** (2 * k + m)
        total = total + ExactScalar(c, m) / gamma_half(m + 2 + 2 * k)
    return _result(total, precision)


# ---------------------------------------------------------------------------
# hyperplane sections

def _section_setup(P: Polynomial, omega, p):
    omega = unit_point(omega)
    if omega.dim != P.dim:
        raise ValueError("omega dimension does not match polynomial")
    p = to_rational(p)
    if not -1 < p < 1:
        raise ValueError("p must satisfy -1 < p < 1")
    return omega, p


def subsphere_integral(P: Polynomial, omega, p, precision=None) -> IntegralResult:
    """Integral over {x : |x| = 1, <x, omega> = p}."""
    omega, p = _section_setup(P, omega, p)
    m = P.dim
    u = 1 - p * p
    at = omega.scaled(p)
    total = ExactScalar(ZERO)
    for k, tk in enumerate(t_chain(P, omega)):
        v = evaluate(tk, at)
        if v == 0:
            continue
        c = ExactScalar(2 * v / (4 ** k * factorial(k)), m - 1) / gamma(m - 1 + 2 * k)
        total = total + c * power_half(u, 2 * k + m - 2)
    return _result(total, precision)


def subball_integral(P: Polynomial, omega, p, precision=None) -> IntegralResult:
    """Integral over {x : |x| <= 1, <x, omega> = p} with (m-1)-volume measure."""
    omega, p = _section_setup(P, omega, p)
    m = P.dim
    u = 1 - p * p
    at = omega.scaled(p)
    total = ExactScalar(ZERO)
    for k, tk in enumerate(t_chain(P, omega)):
        v = evaluate(tk, at)
        if v == 0:
            continue
        c = ExactScalar(v / (4 ** k * factorial(k)), m - 1) / gamma(m + 1 + 2 * k)
        total = total + c * power_half(u, 2 * k + m - 1)
    return _result(total, precision)


# ---------------------------------------------------------------------------
# caps

@lru_cache(maxsize=65536)
def _upper_moment(a: int, b_twice: int, p) -> ExactSum:
    """J(a, b) = integral_p^1 y^a (1 - y^2)^b dy with b = b_twice/2 >= -1/2."""
    u = 1 - p * p
    if a >= 2 or a == 1:
        head = power_half(u, b_twice + 2) * Q(1, b_twice + 2)
        if a == 1:
            return ExactSum.from_scalar(head)
        head = head * (p ** (a - 1))
        rest = _upper_moment(a - 2, b_twice + 2, p) * Q(a - 1, b_twice + 2)
        return ExactSum.from_scalar(head) + rest
    # a == 0
    if b_twice == 0:
        return ExactSum.from_scalar(ExactScalar(1 - p))
    if b_twice == -1:
        return ExactSum.from_scalar(ExactScalar.pi_power(2, Q(1, 2))) - ExactSum.asin(p)
    if b_twice < -1:
        raise ValueError("weight exponent below -1/2 is not integrable")
    # (2b + 1) J0(b) = -p u^b + 2b J0(b - 1)
    head = power_half(u, b_twice) * (-p)
    prev = _upper_moment(0, b_twice - 2, p) * Q(b_twice)
    return (ExactSum.from_scalar(head) + prev) * Q(1, b_twice + 1)


def cap_weight_exponent_twice(k: int, m: int) -> int:
    """Doubled exponent of (1 - y^2) in the cap coefficient: 2k + m - 3."""
    return 2 * k + m - 3


def cap_coefficient_closed(k: int, ell: int, p, m: int, side: str = UPPER) -> ExactSum:
    if 2 * k > ell:
        raise ValueError("cap coefficient needs 2k <= ell")
    if m < 2:
        raise ValueError("dimension must be >= 2")
    if side not in (UPPER, LOWER):
        raise ValueError(f"side must be {UPPER!r} or {LOWER!r}")
    p = to_rational(p)
    if not -1 < p < 1:
        raise ValueError("p must satisfy -1 < p < 1")
    a, b2 = ell - 2 * k, cap_weight_exponent_twice(k, m)
    if side == UPPER:
        return _upper_moment(a, b2, p)
    # substitute y -> -y
    val = _upper_moment(a, b2, -p)
    return -val if a % 2 else val


def cap_coefficient(k: int, ell: int, p, m: int, side: str = UPPER, precision=None) -> IntegralResult:
    """c_{k,ell}(p): weighted moment of [p, 1] (upper) or [-1, p] (lower)."""
    return _result(cap_coefficient_closed(k, ell, p, m, side), precision)


def cap_coefficient_at_zero(k: int, ell: int, m: int) -> ExactScalar:
    """Gamma closed form at p = 0: G((ell+1)/2 - k) G(k + (m-1)/2) / (2 G((ell+m)/2))."""
    if 2 * k > ell:
        raise ValueError("cap coefficient needs 2k <= ell")
    return gamma(ell + 1 - 2 * k) * gamma(2 * k + m - 1) / (gamma(ell + m) * 2)


def cap_integral(P: Polynomial, omega, p, side: str = UPPER, precision=None) -> IntegralResult:
    """Integral over {x on the unit sphere : <x, omega> > p} (upper) or < p (lower)."""
    omega, p = _section_setup(P, omega, p)
    m = P.dim
    total = ExactSum.zero()
    for ell, part in homogeneous_parts(P):
        for k, tk in enumerate(t_chain(part, omega)):
            v = evaluate(tk, omega)
            if v == 0:
                continue
            c = ExactScalar(2 * v / (4 ** k * factorial(k)), m - 1) / gamma(m - 1 + 2 * k)
            total = total + cap_coefficient_closed(k, ell, p, m, side) * c
    return _result(total, precision)


def modified_sphere_integral(P: Polynomial, omega, precision=None) -> IntegralResult:
    """Whole-sphere integral of a homogeneous even-degree P from data at omega alone."""
    if P.is_zero:
        return _result(ExactScalar(ZERO), precision)
    if not P.is_homogeneous or P.degree % 2:
        raise ValueError("needs a homogeneous polynomial of even degree")
    omega = unit_point(omega)
    m, s = P.dim, P.degree // 2
    total = ExactScalar(ZERO)
    for k, tk in enumerate(t_chain(P, omega)):
        v = evaluate(tk, omega)
        if v == 0:
            continue
        total = total + gamma(2 * s - 2 * k + 1) * Q(v, 4 ** k * factorial(k))
    return _result(total * ExactScalar(2, m - 1) / gamma(2 * s + m), precision)


def laplacian_identity_sides(R: Polynomial, omega) -> tuple:
    """Both sides of Lap^s R(0) = (4^s s!/sqrt(pi)) sum_k G(s-k+1/2)/(4^k k!) (T^k R)(omega).

    R is homogeneous of degree 2s; the right-hand side is rational since the
    half-integer Gammas all carry one sqrt(pi).
    """
    if not R.is_zero and (not R.is_homogeneous or R.degree % 2):
        raise ValueError("needs a homogeneous polynomial of even degree")
    omega = unit_point(omega)
    s = max(R.degree, 0) // 2
    lhs = laplacian_power(R, s).constant_term()
    rhs = ZERO
    for k, tk in enumerate(t_chain(R, omega)):
        v = evaluate(tk, omega)
        if v:
            # G(s - k + 1/2)/sqrt(pi) = (1/2)_{s-k}
            rhs += pochhammer(1, s - k) * Q(v, 4 ** k * factorial(k))
    return lhs, rhs * 4 ** s * factorial(s)


def integrate(P: Polynomial, region: RegionSpec, precision=None) -> IntegralResult:
    if region.dim != P.dim:
        raise ValueError("region and polynomial dimensions differ")
    if region.kind == SPHERE:
        return sphere_integral(P, region.r, precision)
    if region.kind == BALL:
        return ball_integral(P, region.r, precision)
    if region.kind == SUBSPHERE:
        return subsphere_integral(P, region.omega, region.p, precision)
    if region.kind == SUBBALL:
        return subball_integral(P, region.omega, region.p, precision)
    return cap_integral(P, region.omega, region.p, region.side, precision)


__all__ = [
    "KINDS", "SPHERE", "BALL", "SUBSPHERE", "SUBBALL", "CAP_UPPER", "CAP_LOWER", "UPPER", "LOWER",
    "RegionSpec", "IntegralResult", "power_half", "section_operator", "t_power", "t_chain",
    "sphere_integral", "ball_integral", "subsphere_integral", "subball_integral",
    "cap_weight_exponent_twice", "cap_coefficient", "cap_coefficient_closed",
    "cap_coefficient_at_zero", "cap_integral", "modified_sphere_integral",
    "laplacian_identity_sides", "integrate",
]
