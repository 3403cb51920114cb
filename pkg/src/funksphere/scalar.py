"""Exact scalars of the form ``coeff * pi**(h/2) * sqrt(q)`` and the special
functions (Gamma at half-integers, Pochhammer, terminating 2F1, Gauss sum)
that stay inside that class.

Rationals are ``gmpy2.mpq``.  Every Gamma argument is passed *doubled*
(``two_x`` means ``x = two_x / 2``) so half-integers stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from numbers import Rational as _RationalABC

import gmpy2
import mpmath

from .config import resolve_precision

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)


def to_rational(value) -> gmpy2.mpq:
    """Coerce int / str ("3/5") / Fraction / mpq to ``mpq``; floats are refused."""
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Q(text)
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}") from None
    if isinstance(value, _RationalABC):
        return Q(value.numerator, value.denominator)
    if type(value).__name__ == "mpz":
        return Q(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def fmt_rational(value) -> str:
    return str(to_rational(value))


def _square_split(n: int) -> tuple[int, int]:
    """Return (s, f) with n == s*s*f and f square-free (n > 0)."""
    if gmpy2.is_square(n):
        return int(isqrt(n)), 1
    s, f = 1, 1
    rest = n
    p = 2
    # after stripping primes <= cbrt(rest), rest is 1, a prime, p*q or p*p
    while p * p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        if gmpy2.is_square(rest):
            s *= int(isqrt(rest))
        else:
            f *= rest
    return s, f


@dataclass(frozen=True)
class ExactScalar:
    """``coeff * pi**(pi_half/2) * sqrt(sqrt_arg)`` in canonical form."""

    coeff: object = ZERO
    pi_half: int = 0
    sqrt_arg: object = ONE

    def __post_init__(self):
        c = to_rational(self.coeff)
        q = to_rational(self.sqrt_arg)
        h = int(self.pi_half)
        if q < 0:
            raise ValueError("sqrt argument must be non-negative")
        if c == 0 or q == 0:
            c, h, q = ZERO, 0, ONE
        elif q != 1:
            num, den = int(q.numerator), int(q.denominator)
            s, f = _square_split(num * den)
            c = c * Q(s, den)
            q = Q(f)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "pi_half", h)
        object.__setattr__(self, "sqrt_arg", q)

    @classmethod
    def rational(cls, value) -> "ExactScalar":
        return cls(to_rational(value))

    @classmethod
    def pi_power(cls, pi_half: int, coeff=1) -> "ExactScalar":
        return cls(to_rational(coeff), pi_half)

    @classmethod
    def sqrt(cls, value) -> "ExactScalar":
        return cls(ONE, 0, to_rational(value))

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.pi_half == 0 and self.sqrt_arg == 1

    @property
    def exact(self) -> bool:
        return True

    @property
    def class_key(self) -> tuple[int, object]:
        """Terms with equal keys can be added exactly."""
        return self.pi_half, self.sqrt_arg

    def as_rational(self):
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeff

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        return ExactScalar(to_rational(other))

    def __mul__(self, other):
        if isinstance(other, ExactSum):
            return other * self
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.coeff * o.coeff, self.pi_half + o.pi_half,
                           self.sqrt_arg * o.sqrt_arg)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of exact zero")
        # 1/sqrt(q) = sqrt(q)/q
        return ExactScalar(1 / (self.coeff * self.sqrt_arg), -self.pi_half, self.sqrt_arg)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __neg__(self):
        return ExactScalar(-self.coeff, self.pi_half, self.sqrt_arg)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactScalar(ONE)
        for _ in range(n):
            out = out * self
        return out

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return exact_add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def numeric(self, precision: int | None = None):
        prec = resolve_precision(precision)
        with mpmath.workdps(prec):
            val = mpmath.mpf(int(self.coeff.numerator)) / int(self.coeff.denominator)
            if self.pi_half:
                val *= mpmath.power(mpmath.pi, mpmath.mpf(self.pi_half) / 2)
            if self.sqrt_arg != 1:
                val *= mpmath.sqrt(mpmath.mpf(int(self.sqrt_arg.numerator)) / int(self.sqrt_arg.denominator))
            return +val

    def to_json(self, precision: int | None = None) -> dict:
        prec = resolve_precision(precision)
        return {
            "coeff": fmt_rational(self.coeff),
            "pi_half": self.pi_half,
            "sqrt_arg": fmt_rational(self.sqrt_arg),
            "numeric": mpmath.nstr(self.numeric(prec), prec),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactScalar":
        return cls(to_rational(data["coeff"]), int(data["pi_half"]), to_rational(data["sqrt_arg"]))

    def __str__(self):
        h = self.pi_half
        parts = []
        if h == 2:
            parts.append("pi")
        elif h:
            parts.append(f"pi^{h // 2}" if h % 2 == 0 else f"pi^({h}/2)")
        if self.sqrt_arg != 1:
            parts.append(f"sqrt({fmt_rational(self.sqrt_arg)})")
        if not parts or abs(self.coeff) != 1:
            parts.insert(0, fmt_rational(self.coeff))
        elif self.coeff < 0:
            parts[0] = "-" + parts[0]
        return "*".join(parts)


@dataclass(frozen=True)
class NumericScalar:
    """A floating value produced when an exact sum leaves the closed class."""

    value: object
    precision: int

    def __post_init__(self):
        if self.precision < 15:
            raise ValueError("precision must be >= 15")

    @property
    def exact(self) -> bool:
        return False

    def numeric(self, precision: int | None = None):
        return self.value

    def to_json(self, precision: int | None = None) -> dict:
        return {"numeric": mpmath.nstr(self.value, self.precision), "exact": False}

    def __str__(self):
        return mpmath.nstr(self.value, self.precision)


def exact_add(a: ExactScalar, b: ExactScalar, precision: int | None = None):
    """Sum two exact scalars; degrade to ``NumericScalar`` across classes."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.class_key == b.class_key:
        return ExactScalar(a.coeff + b.coeff, a.pi_half, a.sqrt_arg)
    prec = resolve_precision(precision)
    with mpmath.workdps(prec):
        return NumericScalar(+(a.numeric(prec) + b.numeric(prec)), prec)


def _normalize_asin(arg):
    """Return (sign, arg) with arg > 0, or a pure-pi multiple for special args."""
    a = to_rational(arg)
    if abs(a) > 1:
        raise ValueError("asin argument outside [-1, 1]")
    sign = 1
    if a < 0:
        sign, a = -1, -a
    return sign, a


class ExactSum:
    """Finite formal sum of ``ExactScalar`` terms, each optionally times asin(a).

    Keys are ``(pi_half, sqrt_arg, asin_arg)`` with ``asin_arg`` ``None`` or a
    rational in (0, 1) other than 1/2 (asin(1/2) and asin(1) fold into pi).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = to_rational(c)
            if c != 0:
                clean[key] = clean.get(key, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def zero(cls) -> "ExactSum":
        return cls()

    @classmethod
    def from_scalar(cls, s: ExactScalar) -> "ExactSum":
        if s.is_zero:
            return cls()
        return cls({(s.pi_half, s.sqrt_arg, None): s.coeff})

    @classmethod
    def asin(cls, arg) -> "ExactSum":
        sign, a = _normalize_asin(arg)
        if a == 0:
            return cls()
        if a == Q(1, 2):
            return cls({(2, ONE, None): Q(sign, 6)})
        if a == 1:
            return cls({(2, ONE, None): Q(sign, 2)})
        return cls({(0, ONE, a): Q(sign)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            other = ExactSum.from_scalar(other)
        if not isinstance(other, ExactSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, ExactScalar):
            other = ExactSum.from_scalar(other)
        elif not isinstance(other, ExactSum):
            try:
                other = ExactSum.from_scalar(ExactScalar(to_rational(other)))
            except TypeError:
                return NotImplemented
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, ZERO) + v
        return ExactSum(merged)

    __radd__ = __add__

    def __neg__(self):
        return ExactSum({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExactSum):
            return NotImplemented
        s = other if isinstance(other, ExactScalar) else ExactScalar(to_rational(other))
        out = ExactSum()
        for (h, q, a), c in self.terms.items():
            t = ExactScalar(c, h, q) * s
            if not t.is_zero:
                out = out + ExactSum({(t.pi_half, t.sqrt_arg, a): t.coeff})
        return out

    __rmul__ = __mul__

    def as_scalar(self) -> ExactScalar | None:
        """The single ExactScalar this sum equals, if it has that shape."""
        if not self.terms:
            return ExactScalar(ZERO)
        if len(self.terms) != 1:
            return None
        (h, q, a), c = next(iter(self.terms.items()))
        if a is not None:
            return None
        return ExactScalar(c, h, q)

    def numeric(self, precision: int | None = None):
        prec = resolve_precision(precision)
        with mpmath.workdps(prec):
            total = mpmath.mpf(0)
            for (h, q, a), c in self.terms.items():
                v = ExactScalar(c, h, q).numeric(prec)
                if a is not None:
                    v *= mpmath.asin(mpmath.mpf(int(a.numerator)) / int(a.denominator))
                total += v
            return +total

    def to_json(self) -> list:
        rows = []
        for (h, q, a), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or ZERO)):
            rows.append({
                "coeff": fmt_rational(c),
                "pi_half": h,
                "sqrt_arg": fmt_rational(q),
                "asin_arg": None if a is None else fmt_rational(a),
            })
        return rows

    def __repr__(self):
        return f"ExactSum({self.to_json()})"

    def __str__(self):
        parts = []
        for row in self.to_json():
            s = str(ExactScalar(Q(row["coeff"]), row["pi_half"], Q(row["sqrt_arg"])))
            if row["asin_arg"] is not None:
                s += f"*asin({row['asin_arg']})"
            parts.append(s)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# special functions

def pochhammer(a_twice: int, n: int):
    """Rising factorial (a)_n with a = a_twice/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = Q(a_twice, 2)
    out = ONE
    for i in range(n):
        out *= a + i
    return out


def _is_pole(two_x: int) -> bool:
    return two_x <= 0 and two_x % 2 == 0


def gamma(two_x: int) -> ExactScalar:
    """Gamma(two_x/2) for any integer or half-integer argument off the poles."""
    if _is_pole(two_x):
        raise ValueError(f"Gamma has a pole at {Q(two_x, 2)}")
    if two_x > 0:
        return gamma_half(two_x)
    # shift into the positive range: Gamma(x) = Gamma(x + n) / (x)_n
    n = (-two_x) // 2 + 1
    return gamma_half(two_x + 2 * n) / pochhammer(two_x, n)


def gamma_half(two_n: int) -> ExactScalar:
    """Gamma(n) for n = two_n/2 > 0: factorial, or rational * sqrt(pi)."""
    if two_n <= 0:
        raise ValueError(f"gamma_half needs a positive argument, got {Q(two_n, 2)}")
    if two_n % 2 == 0:
        return ExactScalar(Q(factorial(two_n // 2 - 1)))
    # Gamma(1/2 + j) = (1/2)_j sqrt(pi)
    return ExactScalar(pochhammer(1, (two_n - 1) // 2), 1)


def gamma_ratio(num_twice: int, den_twice: int) -> ExactScalar:
    """Gamma(a)/Gamma(b); finite when b - a is a non-negative integer even across poles."""
    diff = num_twice - den_twice
    if diff % 2 == 0 and diff <= 0 and (_is_pole(num_twice) or _is_pole(den_twice)):
        # Gamma(b - n)/Gamma(b) = 1/(b - n)_n
        n = -diff // 2
        p = pochhammer(num_twice, n)
        if p == 0:
            raise ValueError("pole in the numerator Gamma")
        return ExactScalar(1 / p)
    if diff % 2 == 0 and diff >= 0 and (_is_pole(num_twice) or _is_pole(den_twice)):
        return ExactScalar(pochhammer(den_twice, diff // 2))
    if _is_pole(den_twice):
        return ExactScalar(ZERO)
    return gamma(num_twice) / gamma(den_twice)


def hyp2f1_terminating(n: int, b_twice: int, c_twice: int, z):
    """2F1(-n, b; c; z) as the finite sum over l = 0..n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    z = to_rational(z)
    if _is_pole(c_twice) and -c_twice // 2 < n:
        raise ValueError("c is a non-positive integer inside the summation range")
    total = ZERO
    term = ONE
    b, c = Q(b_twice, 2), Q(c_twice, 2)
    for ell in range(n + 1):
        total += term
        if ell == n:
            break
        term = term * (-n + ell) * (b + ell) / ((c + ell) * (ell + 1)) * z
    return total


def gauss_2f1_at_one(a_twice: int, b_twice: int, c_twice: int) -> ExactScalar:
    """Gauss summation: 2F1(a, b; c; 1) = G(c)G(c-a-b) / (G(c-a)G(c-b))."""
    if _is_pole(b_twice) and not _is_pole(a_twice):
        a_twice, b_twice = b_twice, a_twice
    if _is_pole(a_twice):
        # terminating: Chu-Vandermonde (c-b)_n / (c)_n
        n = -a_twice // 2
        den = pochhammer(c_twice, n)
        if den == 0:
            raise ValueError("c hits a pole inside the terminating range")
        return ExactScalar(pochhammer(c_twice - b_twice, n) / den)
    if not c_twice > a_twice + b_twice:
        raise ValueError("Gauss summation needs c > a + b")
    if _is_pole(c_twice):
        raise ValueError("c is a pole of Gamma")
    num = gamma(c_twice) * gamma(c_twice - a_twice - b_twice)
    out = num
    for t in (c_twice - a_twice, c_twice - b_twice):
        if _is_pole(t):
            return ExactScalar(ZERO)
        out = out / gamma(t)
    return out


def sphere_area(m: int) -> ExactScalar:
    """Surface area of the unit sphere in R^m: 2 pi^(m/2) / Gamma(m/2)."""
    if m < 1:
        raise ValueError("dimension must be >= 1")
    return ExactScalar(2, m) / gamma_half(m)
