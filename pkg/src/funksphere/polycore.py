"""Sparse multivariate polynomials over exact rationals and the differential
operators the integration formulas are assembled from.

Variables are 1-based in text (``x1 .. xm``) and 0-based in exponent tuples.
Polynomials are immutable and hashable, so the heavier operator chains in
``pizzetti`` can be memoised on them.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .scalar import ONE, ZERO, Q, fmt_rational, to_rational


class DimensionError(ValueError):
    pass


def grlex_key(exps: tuple[int, ...]):
    """Sort key: total degree first, then lexicographic on the exponents."""
    return (sum(exps), exps)


class Polynomial:
    """Polynomial in ``dim`` variables with ``mpq`` coefficients."""

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if dim < 1:
            raise DimensionError("dimension must be >= 1")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != dim:
                raise DimensionError(f"monomial {exps} does not have {dim} exponents")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_rational(c)
            if c != 0:
                clean[exps] = c
        self.dim = dim
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        # trusted constructor: keys already valid tuples, values mpq (zeros dropped here)
        p = object.__new__(cls)
        p.dim = dim
        p.terms = {k: v for k, v in terms.items() if v != 0}
        p._hash = None
        return p

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim: int, value=1) -> "Polynomial":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, index: int) -> "Polynomial":
        """The coordinate x_{index+1} (0-based index)."""
        if not 0 <= index < dim:
            raise DimensionError(f"variable index {index} out of range for dimension {dim}")
        exps = [0] * dim
        exps[index] = 1
        return cls._raw(dim, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic structure ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), ZERO)

    def constant_term(self):
        return self.terms.get((0,) * self.dim, ZERO)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self.terms == other.terms
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.dim: c} if c != 0 else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.dim}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.dim, to_rational(other))

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, ZERO) + c
        return Polynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "Polynomial":
        f = to_rational(factor)
        if f == 0:
            return Polynomial.zero(self.dim)
        return Polynomial._raw(self.dim, {e: c * f for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return Polynomial._raw(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.scale(1 / to_rational(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- calculus ----------------------------------------------------------
    def diff(self, index: int) -> "Polynomial":
        out: dict = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                ne = e[:index] + (k - 1,) + e[index + 1:]
                out[ne] = out.get(ne, ZERO) + c * k
        return Polynomial._raw(self.dim, out)


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class RationalPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_rational(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def norm_sq(self):
        return sum((c * c for c in self.coords), ZERO)

    @property
    def on_unit_sphere(self) -> bool:
        return self.norm_sq == 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def scaled(self, factor) -> "RationalPoint":
        f = to_rational(factor)
        return RationalPoint(tuple(c * f for c in self.coords))

    def __neg__(self):
        return self.scaled(-1)


def as_point(pt) -> RationalPoint:
    return pt if isinstance(pt, RationalPoint) else RationalPoint(tuple(pt))


def unit_point(pt) -> RationalPoint:
    """Coerce to a point and insist that its squared norm is exactly 1."""
    p = as_point(pt)
    if not p.on_unit_sphere:
        raise ValueError(f"point {tuple(map(str, p.coords))} is not on the unit sphere")
    return p


def basis_vector(dim: int, index: int) -> RationalPoint:
    return RationalPoint(tuple(ONE if i == index else ZERO for i in range(dim)))


def stereographic_point(u: Sequence) -> RationalPoint:
    """Rational point on S^{m-1} from u in Q^{m-1} (inverse stereographic map)."""
    u = [to_rational(c) for c in u]
    s = sum((c * c for c in u), ZERO)
    den = s + 1
    return RationalPoint(tuple([2 * c / den for c in u] + [(s - 1) / den]))


# ---------------------------------------------------------------------------
# operators

def laplacian(P: Polynomial) -> Polynomial:
    out: dict = {}
    for e, c in P.terms.items():
        for i, k in enumerate(e):
            if k >= 2:
                ne = e[:i] + (k - 2,) + e[i + 1:]
                out[ne] = out.get(ne, ZERO) + c * (k * (k - 1))
    return Polynomial._raw(P.dim, out)


def laplacian_power(P: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        if P.is_zero:
            break
        P = laplacian(P)
    return P


def _check_dim(P: Polynomial, pt) -> RationalPoint:
    pt = as_point(pt)
    if pt.dim != P.dim:
        raise DimensionError(f"point has dimension {pt.dim}, polynomial has {P.dim}")
    return pt


def directional_derivative(P: Polynomial, omega) -> Polynomial:
    """One application of <omega, grad>."""
    w = _check_dim(P, omega).coords
    out: dict = {}
    for e, c in P.terms.items():
        for i, k in enumerate(e):
            if k and w[i]:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = out.get(ne, ZERO) + c * k * w[i]
    return Polynomial._raw(P.dim, out)


def dir_deriv_power(P: Polynomial, omega, j: int) -> Polynomial:
    """j-fold application of <omega, grad>."""
    if j < 0:
        raise ValueError("order must be non-negative")
    omega = _check_dim(P, omega)
    for _ in range(j):
        if P.is_zero:
            break
        P = directional_derivative(P, omega)
    return P


def euler(P: Polynomial) -> Polynomial:
    """Euler operator sum x_i d/dx_i: scales each term by its degree."""
    return Polynomial._raw(P.dim, {e: c * sum(e) for e, c in P.terms.items()})


def homogeneous_parts(P: Polynomial) -> list[tuple[int, Polynomial]]:
    """[(degree, part)] in ascending degree; empty for the zero polynomial."""
    buckets: dict[int, dict] = {}
    for e, c in P.terms.items():
        buckets.setdefault(sum(e), {})[e] = c
    return [(d, Polynomial._raw(P.dim, buckets[d])) for d in sorted(buckets)]


def homogeneous_part(P: Polynomial, degree: int) -> Polynomial:
    return Polynomial._raw(P.dim, {e: c for e, c in P.terms.items() if sum(e) == degree})


def mul_norm_sq(P: Polynomial) -> Polynomial:
    """Multiply by |x|^2 = x1^2 + ... + xm^2."""
    out: dict = {}
    for e, c in P.terms.items():
        for i in range(P.dim):
            ne = e[:i] + (e[i] + 2,) + e[i + 1:]
            out[ne] = out.get(ne, ZERO) + c
    return Polynomial._raw(P.dim, out)


def norm_sq(dim: int) -> Polynomial:
    return mul_norm_sq(Polynomial.constant(dim, 1))


def evaluate(P: Polynomial, pt) -> object:
    x = _check_dim(P, pt).coords
    total = ZERO
    for e, c in P.terms.items():
        t = c
        for xi, k in zip(x, e):
            if k:
                t *= xi ** k
        total += t
    return total


def is_orthogonal(M: Sequence[Sequence]) -> bool:
    n = len(M)
    rows = [[to_rational(v) for v in r] for r in M]
    if any(len(r) != n for r in rows):
        return False
    for i in range(n):
        for j in range(n):
            dot = sum((rows[k][i] * rows[k][j] for k in range(n)), ZERO)
            if dot != (ONE if i == j else ZERO):
                return False
    return True


def substitute_orthogonal(P: Polynomial, M: Sequence[Sequence]) -> Polynomial:
    """Return P o M^T, i.e. y -> P(M^T y) = P(M^{-1} y), for exactly orthogonal M."""
    n = P.dim
    if len(M) != n:
        raise DimensionError("matrix size does not match polynomial dimension")
    if not is_orthogonal(M):
        raise ValueError("matrix is not orthogonal")
    rows = [[to_rational(v) for v in r] for r in M]
    # x_i = sum_r M[r][i] y_r
    images = []
    for i in range(n):
        images.append(Polynomial._raw(n, {
            tuple(1 if s == r else 0 for s in range(n)): rows[r][i] for r in range(n)
        }))
    power_cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in power_cache:
            power_cache[key] = images[i] ** k
        return power_cache[key]

    out = Polynomial.zero(n)
    for e, c in P.terms.items():
        term = Polynomial.constant(n, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# harmonic projection (shared with ``harmonics``)

def harmonic_projection_coefficients(degree: int, dim: int) -> list:
    """a_j with H = sum_j a_j |x|^{2j} Lap^j P harmonic for P of the given degree.

    From Lap(|x|^{2j} Q) = |x|^{2j} Lap Q + 2j(2j + m - 2 + 2 deg Q)|x|^{2j-2} Q:
    a_0 = 1, a_{j+1} = -a_j / (2 (j+1) (2 deg + m - 4 - 2j)).
    """
    coeffs = [ONE]
    for j in range(degree // 2):
        coeffs.append(-coeffs[-1] / (2 * (j + 1) * (2 * degree + dim - 4 - 2 * j)))
    return coeffs


def harmonic_split(P: Polynomial, degree: int) -> tuple[Polynomial, Polynomial]:
    """Split homogeneous P = H + |x|^2 R with H harmonic; returns (H, R)."""
    a = harmonic_projection_coefficients(degree, P.dim)
    lap_powers = [P]
    for _ in range(1, len(a)):
        lap_powers.append(laplacian(lap_powers[-1]))
    harmonic = P
    rest = Polynomial.zero(P.dim)
    # rest = -sum_{j>=1} a_j |x|^{2(j-1)} Lap^j P, built Horner-style
    for j in range(len(a) - 1, 0, -1):
        rest = mul_norm_sq(rest) if not rest.is_zero else rest
        rest = rest - lap_powers[j].scale(a[j])
    if not rest.is_zero:
        harmonic = P - mul_norm_sq(rest)
    return harmonic, rest


def fischer_components(P: Polynomial, degree: int) -> list[tuple[int, Polynomial]]:
    """[(j, H_{degree-2j})] with P = sum_j |x|^{2j} H_{degree-2j} for homogeneous P."""
    comps = []
    cur, j = P, 0
    while not cur.is_zero:
        h, cur = harmonic_split(cur, degree - 2 * j)
        if not h.is_zero:
            comps.append((j, h))
        j += 1
    return comps


def reduce_on_sphere(P: Polynomial) -> Polynomial:
    """Canonical representative of P modulo |x|^2 - 1: the sum of its Fischer harmonics."""
    out: dict = {}
    for d, part in homogeneous_parts(P):
        for _, h in fischer_components(part, d):
            for e, c in h.terms.items():
                out[e] = out.get(e, ZERO) + c
    return Polynomial._raw(P.dim, out)


# ---------------------------------------------------------------------------
# text form

def _fmt_monomial(e: tuple[int, ...]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def to_text(P: Polynomial) -> str:
    """Canonical text: ``c*x<i>^<e>`` terms joined by +/-, descending graded-lex."""
    if P.is_zero:
        return "0"
    out = []
    for e, c in P.items():
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        mono = _fmt_monomial(e)
        if not mono:
            body = fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{fmt_rational(mag)}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def polynomial_from_terms(dim: int, terms: Iterable[tuple[Sequence[int], object]]) -> Polynomial:
    out: dict = {}
    for e, c in terms:
        e = tuple(e)
        out[e] = out.get(e, ZERO) + to_rational(c)
    return Polynomial(dim, out)


__all__ = [
    "DimensionError", "Polynomial", "RationalPoint", "Q", "as_point", "unit_point",
    "basis_vector", "stereographic_point", "laplacian", "laplacian_power",
    "directional_derivative", "dir_deriv_power", "euler", "homogeneous_parts",
    "homogeneous_part", "mul_norm_sq", "norm_sq", "evaluate", "is_orthogonal",
    "substitute_orthogonal", "harmonic_projection_coefficients", "harmonic_split",
    "fischer_components", "reduce_on_sphere", "to_text", "polynomial_from_terms",
]
