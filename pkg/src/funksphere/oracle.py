"""Brute-force reference integrators.

Nothing here touches the differential-operator machinery: integrals come from
rotating the integrand numerically, classical monomial moments of spheres and
balls, and Gauss-Legendre quadrature for the one-dimensional cap slices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import mpmath
from mpmath.calculus.quadrature import GaussLegendre

from .config import Settings, resolve_precision
from .polycore import Polynomial
from .scalar import ExactScalar, NumericScalar, gamma_half

# smallest mpmath Gauss-Legendre degree with at least 64 nodes (3 * 2^(d-1))
_MIN_GL_DEGREE = 6
_MAX_GL_DEGREE = 11


def oracle_precision(precision=None) -> int:
    s = Settings(resolve_precision(precision))
    return s.precision + s.oracle_extra_digits


def _mpf(x):
    if isinstance(x, mpmath.mpf):
        return x
    num, den = getattr(x, "numerator", None), getattr(x, "denominator", None)
    if num is not None and den is not None:
        return mpmath.mpf(int(num)) / int(den)
    return mpmath.mpf(x)


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True)
class Frame:
    """Numeric orthogonal matrix (tuple of rows) whose first row is omega."""

    rows: tuple
    precision: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    def orthonormality_error(self):
        with mpmath.workdps(self.precision):
            worst = mpmath.mpf(0)
            for i, a in enumerate(self.rows):
                for j, b in enumerate(self.rows):
                    dot = mpmath.fsum(x * y for x, y in zip(a, b))
                    worst = max(worst, abs(dot - (1 if i == j else 0)))
            return worst


def build_frame(omega, precision=None) -> Frame:
    """Pivot on the largest |omega_i|, then Gram-Schmidt the remaining basis vectors."""
    prec = oracle_precision(precision)
    with mpmath.workdps(prec):
        w = [_mpf(c) for c in omega]
        n = len(w)
        norm = mpmath.sqrt(mpmath.fsum(c * c for c in w))
        if norm == 0:
            raise ValueError("omega must be non-zero")
        w = [c / norm for c in w]
        pivot = max(range(n), key=lambda i: abs(w[i]))
        rows = [w]
        for i in range(n):
            if i == pivot:
                continue
            v = [mpmath.mpf(1) if j == i else mpmath.mpf(0) for j in range(n)]
            for _ in range(2):  # second pass for numerical re-orthogonalisation
                for r in rows:
                    dot = mpmath.fsum(a * b for a, b in zip(v, r))
                    if dot:
                        v = [a - dot * b for a, b in zip(v, r)]
            nv = mpmath.sqrt(mpmath.fsum(a * a for a in v))
            rows.append([a / nv for a in v])
        return Frame(tuple(tuple(r) for r in rows), prec)


# ---------------------------------------------------------------------------
# moments

def sphere_monomial_moment(alpha, n: int | None = None) -> ExactScalar:
    """Integral of x^alpha over the unit sphere in R^n."""
    alpha = tuple(alpha)
    n = len(alpha) if n is None else n
    if n < 1 or len(alpha) != n:
        raise ValueError("multi-index length must equal the dimension")
    if any(a % 2 for a in alpha):
        return ExactScalar(0)
    out = ExactScalar(2)
    for a in alpha:
        out = out * gamma_half(a + 1)
    return out / gamma_half(sum(alpha) + n)


@lru_cache(maxsize=None)
def _moment_numeric(alpha: tuple, prec: int):
    return sphere_monomial_moment(alpha).numeric(prec)


# ---------------------------------------------------------------------------
# numeric polynomial expansion in the rotated frame

def rotate(P: Polynomial, frame: Frame) -> dict:
    """Coefficients of y -> P(M^T y) as {exponents: mpf}, at the frame precision."""
    n = P.dim
    M = frame.rows
    with mpmath.workdps(frame.precision):
        # x_i = sum_r M[r][i] y_r
        linear = []
        for i in range(n):
            form = {}
            for r in range(n):
                if M[r][i] != 0:
                    form[tuple(1 if s == r else 0 for s in range(n))] = M[r][i]
            linear.append(form)
        powers: dict = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = {(0,) * n: mpmath.mpf(1)} if k == 0 else _mul(power(i, k - 1), linear[i])
            return powers[(i, k)]

        out: dict = {}
        for e, c in P.terms.items():
            term = {(0,) * n: _mpf(c)}
            for i, k in enumerate(e):
                if k:
                    term = _mul(term, power(i, k))
            for ee, v in term.items():
                out[ee] = out.get(ee, 0) + v
        return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


# ---------------------------------------------------------------------------
# Gauss-Legendre

@lru_cache(maxsize=None)
def gauss_legendre_nodes(degree: int, prec: int):
    """mpmath's Gauss-Legendre rule on [-1, 1] with 3 * 2^(degree-1) nodes."""
    with mpmath.workdps(prec):
        return tuple(GaussLegendre(mpmath.mp).calc_nodes(degree, mpmath.mp.prec))


def gauss_legendre(f, a, b, prec: int, degree: int):
    with mpmath.workdps(prec):
        half, mid = (b - a) / 2, (b + a) / 2
        return half * mpmath.fsum(w * f(mid + half * x) for x, w in gauss_legendre_nodes(degree, prec))


def adaptive_gauss_legendre(f, a, b, prec: int, tol=None):
    """Double the node count (from 96) until two successive results agree."""
    with mpmath.workdps(prec):
        tol = mpmath.mpf(10) ** (-(prec - 4)) if tol is None else tol
        prev = gauss_legendre(f, a, b, prec, _MIN_GL_DEGREE)
        for degree in range(_MIN_GL_DEGREE + 1, _MAX_GL_DEGREE + 1):
            cur = gauss_legendre(f, a, b, prec, degree)
            if abs(cur - prev) <= tol * max(1, abs(cur)):
                return cur, degree
            prev = cur
        raise ArithmeticError("Gauss-Legendre did not converge")


@lru_cache(maxsize=None)
def _slice_integral(a: int, s: int, p, side: str, prec: int):
    """Integral over y in [p, 1] (upper) or [-1, p] (lower) of y^a (1-y^2)^((s-1)/2) dy.

    With y = cos(theta) this is the integral of cos^a sin^s over a theta
    interval, which is smooth at both ends.
    """
    with mpmath.workdps(prec):
        theta_p = mpmath.acos(p)
        lo, hi = (mpmath.mpf(0), theta_p) if side == "upper" else (theta_p, +mpmath.pi)
        value, _ = adaptive_gauss_legendre(
            lambda t: mpmath.cos(t) ** a * mpmath.sin(t) ** s, lo, hi, prec)
        return value


# ---------------------------------------------------------------------------
# region integrals

def integrate_rotated(coeffs: dict, kind: str, m: int, p=None, r=1, prec: int = 40):
    """Region integral of the polynomial with (rotated) coefficients ``coeffs``."""
    with mpmath.workdps(prec):
        total = mpmath.mpf(0)
        r = _mpf(r)
        if kind in ("sphere", "ball"):
            for e, c in coeffs.items():
                mom = _moment_numeric(e, prec)
                if not mom:
                    continue
                deg = sum(e)
                if kind == "sphere":
                    total += c * mom * r ** (deg + m - 1)
                else:
                    total += c * mom * r ** (deg + m) / (deg + m)
            return total
        p = _mpf(p)
        rho2 = 1 - p * p
        for e, c in coeffs.items():
            rest = e[1:]
            mom = _moment_numeric(rest, prec)
            if not mom:
                continue
            deg = sum(rest)
            if kind == "subsphere":
                total += c * p ** e[0] * mom * mpmath.power(rho2, mpmath.mpf(deg + m - 2) / 2)
            elif kind == "subball":
                total += c * p ** e[0] * mom * mpmath.power(rho2, mpmath.mpf(deg + m - 1) / 2) / (deg + m - 1)
            elif kind in ("cap-upper", "cap-lower"):
                side = "upper" if kind == "cap-upper" else "lower"
                total += c * mom * _slice_integral(e[0], deg + m - 2, p, side, prec)
            else:
                raise ValueError(f"unknown region kind {kind!r}")
        return total


def oracle_region_integral(P: Polynomial, region, precision=None) -> NumericScalar:
    """Independent numeric value of the integral of P over ``region`` (a RegionSpec-like object)."""
    prec = oracle_precision(precision)
    m = P.dim
    if region.kind in ("sphere", "ball"):
        coeffs = {e: _mpf(c) for e, c in P.terms.items()}
        with mpmath.workdps(prec):
            val = integrate_rotated(coeffs, region.kind, m, r=region.r, prec=prec)
        return NumericScalar(val, prec)
    frame = _frame_cached(tuple(region.omega), prec)
    coeffs = _rotated_cached(P, frame)
    with mpmath.workdps(prec):
        val = integrate_rotated(coeffs, region.kind, m, p=_mpf(region.p), prec=prec)
    return NumericScalar(val, prec)


@lru_cache(maxsize=64)
def _frame_cached(omega: tuple, prec: int) -> Frame:
    return build_frame(omega, prec - Settings().oracle_extra_digits)


@lru_cache(maxsize=20000)
def _rotated_cached(P: Polynomial, frame: Frame) -> dict:
    return rotate(P, frame)


# ---------------------------------------------------------------------------
# reference inverters

def spectral_reference_inverter(fhat, m: int | None = None):
    """Divide each harmonic component of fhat by its Funk eigenvalue."""
    from .funk import SpherePolynomial, as_sphere_polynomial, funk_eigenvalue, ODD, MIXED
    from .harmonics import harmonic_pieces

    fhat = as_sphere_polynomial(fhat)
    m = fhat.dim if m is None else m
    if fhat.parity in (ODD, MIXED):
        raise ValueError("spectral inversion needs an even input")
    terms = []
    for deg, h in harmonic_pieces(fhat.poly).items():
        d = funk_eigenvalue(m, deg // 2)
        if d.is_zero:
            raise ZeroDivisionError("zero Funk eigenvalue")
        terms.append((fhat.scale / d, h))
    return SpherePolynomial.from_terms(m, terms)


def quadrature_inverse_at(fhat, x, m: int | None = None, precision=None):
    """Numeric f(x) from fhat via the distance-r dual averages, for even m >= 4.

    Averages of fhat over {<w, x> = sqrt(1 - q^2)} come from the moment oracle.
    I(t) = int_0^t A(q) q^(m-2) (t^2 - q^2)^((m-4)/2) dq is sampled at several t
    by Gauss-Legendre, fitted as t^(2m-5) times a polynomial in t^2, and the
    (d/dt^2)^(m-2) derivative at t = 1 is taken on the fitted monomials.
    """
    from .funk import as_sphere_polynomial

    fhat = as_sphere_polynomial(fhat)
    m = fhat.dim if m is None else m
    if m < 4 or m % 2:
        raise ValueError("quadrature cross-check needs even m >= 4")
    prec = oracle_precision(precision)
    frame = build_frame(x, prec - Settings().oracle_extra_digits)
    coeffs = rotate(fhat.poly, frame)
    top = max(fhat.poly.degree, 0) // 2
    n_fit = top + 1
    with mpmath.workdps(prec):
        area = sphere_monomial_moment((0,) * (m - 1)).numeric(prec)
        scale = fhat.scale.numeric(prec)

        def average(q):
            p = mpmath.sqrt(1 - q * q)
            integral = integrate_rotated(coeffs, "subsphere", m, p=p, prec=prec)
            return scale * integral / (area * q ** (m - 2))

        half = (m - 4) // 2

        def I(t):
            return gauss_legendre(lambda q: average(q) * q ** (m - 2) * (t * t - q * q) ** half,
                                  mpmath.mpf(0), t, prec, _MIN_GL_DEGREE)

        ts = [1 - mpmath.mpf(i) / (2 * n_fit) for i in range(n_fit)]
        A = mpmath.matrix(n_fit, n_fit)
        b = mpmath.matrix(n_fit, 1)
        for row, t in enumerate(ts):
            for i in range(n_fit):
                A[row, i] = t ** (2 * i + 2 * m - 5)
            b[row] = I(t)
        sol = mpmath.lu_solve(A, b)
        # (d/ds)^(m-2) s^(i + m - 5/2) at s = 1
        total = mpmath.mpf(0)
        for i in range(n_fit):
            e = mpmath.mpf(2 * i + 2 * m - 5) / 2
            fall = mpmath.mpf(1)
            for j in range(m - 2):
                fall *= e - j
            total += sol[i] * fall
        const = mpmath.mpf(2) ** (m - 2) / (factorial(m - 3) * area)
        return const * total


# ---------------------------------------------------------------------------
# comparison records

@dataclass(frozen=True)
class VerifyReport:
    formula: str
    inputs: dict
    exact: object
    oracle: str
    abs_err: str
    rel_err: str
    tolerance: str
    passed: bool

    def to_json(self) -> dict:
        return {
            "formula": self.formula,
            "inputs": self.inputs,
            "exact": self.exact,
            "oracle": self.oracle,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def compare_numeric(value, reference, rel_tol=mpmath.mpf("1e-10"), zero_tol=None, prec: int = 40):
    """(abs_err, rel_err, passed).  A reference of (numerically) zero uses an absolute test."""
    with mpmath.workdps(prec):
        value, reference = _mpf(value), _mpf(reference)
        abs_err = abs(value - reference)
        zero_tol = mpmath.mpf(10) ** (-(prec - 10)) if zero_tol is None else zero_tol
        if abs(reference) <= zero_tol:
            return abs_err, abs_err, abs_err <= zero_tol
        rel_err = abs_err / abs(reference)
        return abs_err, rel_err, rel_err <= rel_tol


def make_report(formula: str, inputs: dict, exact_json, value, reference,
                rel_tol=mpmath.mpf("1e-10"), digits: int = 12, prec: int = 40) -> VerifyReport:
    abs_err, rel_err, ok = compare_numeric(value, reference, rel_tol, prec=prec)
    return VerifyReport(
        formula, inputs, exact_json,
        mpmath.nstr(_mpf(reference), digits),
        mpmath.nstr(abs_err, 3), mpmath.nstr(rel_err, 3),
        mpmath.nstr(rel_tol, 3), bool(ok),
    )


__all__ = [
    "Frame", "build_frame", "sphere_monomial_moment", "rotate", "gauss_legendre_nodes",
    "gauss_legendre", "adaptive_gauss_legendre", "integrate_rotated", "oracle_region_integral",
    "oracle_precision", "spectral_reference_inverter", "quadrature_inverse_at", "VerifyReport",
    "compare_numeric", "make_report",
]
