"""Exact base-10 real and Gaussian numbers.

A :class:`DecimalReal` is ``mantissa * 10**exponent`` and a
:class:`DecimalComplex` is a pair of such numbers.  Both are kept in canonical
form: a zero mantissa has exponent 0 and a nonzero mantissa is never divisible
by 10, so equal values have equal representations.  Ring operations are
exact; rounding only happens through :func:`round_to` and the explicit
``floor``/``ceil`` helpers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

import gmpy2

from .errors import BadInput, MalformedInput

__all__ = [
    "DecimalReal",
    "DecimalComplex",
    "Config",
    "dc_arith",
    "round_to",
    "modulus_bounds",
    "decimal_floor",
    "decimal_ceil",
    "decimal_round",
    "pow10",
    "parse_real",
    "parse_complex",
]

_LITERAL = re.compile(r"([+-]?\d+)[eE]([+-]?\d+)")
_LOG10_2 = math.log10(2)


def pow10(k):
    """Exact ``10**k`` as an int (k >= 0) or a Fraction (k < 0)."""
    if k >= 0:
        return 10**k
    return Fraction(1, 10 ** (-k))


def _strip(m, e):
    if m == 0:
        return 0, 0
    if m % 10:
        return m, e
    # gmpy2.remove strips all factors of ten in one call, even on huge mantissas
    r, k = gmpy2.remove(gmpy2.mpz(m), 10)
    return int(r), e + int(k)


def digit_count(n):
    """Number of decimal digits of ``|n|`` (1 for zero), without str()."""
    n = abs(int(n))
    if n == 0:
        return 1
    k = int(gmpy2.num_digits(n, 10))
    if k > 1 and gmpy2.mpz(10) ** (k - 1) > n:
        k -= 1
    return k


def _imul(a, b):
    """Integer product; hands very large operands to GMP."""
    if a.bit_length() > 4096 and b.bit_length() > 4096:
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))
    return a * b


def _int_text(n):
    return gmpy2.mpz(n).digits()


def _digits_estimate(m):
    """Floor of log10|m| up to an error of one (m != 0)."""
    return int((abs(m).bit_length() - 1) * _LOG10_2)


def _align(m1, e1, m2, e2):
    if e1 == e2:
        return m1, m2, e1
    if e1 > e2:
        return m1 * 10 ** (e1 - e2), m2, e2
    return m1, m2 * 10 ** (e2 - e1), e1


def _cmp_parts(m1, e1, m2, e2):
    s1 = (m1 > 0) - (m1 < 0)
    s2 = (m2 > 0) - (m2 < 0)
    if s1 != s2:
        return (s1 > s2) - (s1 < s2)
    if s1 == 0:
        return 0
    # same sign: try an order-of-magnitude shortcut first
    l1 = e1 + _digits_estimate(m1)
    l2 = e2 + _digits_estimate(m2)
    if abs(l1 - l2) >= 2:
        bigger = 1 if l1 > l2 else -1
        return bigger if m1 > 0 else -bigger
    a, b, _ = _align(m1, e1, m2, e2)
    return (a > b) - (a < b)


@total_ordering
@dataclass(frozen=True)
class DecimalReal:
    """Exact real number ``mantissa * 10**exponent`` in canonical form."""

    mantissa: int
    exponent: int = 0

    def __post_init__(self):
        m, e = _strip(int(self.mantissa), int(self.exponent))
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, DecimalReal):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_real(x)
        if isinstance(x, Rational):
            q = Fraction(x)
            den = q.denominator
            twos = fives = 0
            while den % 2 == 0:
                den //= 2
                twos += 1
            while den % 5 == 0:
                den //= 5
                fives += 1
            if den != 1:
                raise BadInput(f"{x} has no finite decimal expansion")
            k = max(twos, fives)
            return cls(q.numerator * 10**k // q.denominator, -k)
        raise TypeError(f"cannot convert {type(x).__name__} to DecimalReal")

    def to_fraction(self):
        return Fraction(self.mantissa) * pow10(self.exponent)

    def is_zero(self):
        return self.mantissa == 0

    def sign(self):
        return (self.mantissa > 0) - (self.mantissa < 0)

    def __bool__(self):
        return self.mantissa != 0

    def __str__(self):
        return f"{_int_text(self.mantissa)}e{self.exponent}"

    def __repr__(self):
        return f"DecimalReal({self.mantissa}, {self.exponent})"

    def __neg__(self):
        return DecimalReal(-self.mantissa, self.exponent)

    def __abs__(self):
        return DecimalReal(abs(self.mantissa), self.exponent)

    def __add__(self, other):
        try:
            other = DecimalReal.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = _align(self.mantissa, self.exponent, other.mantissa, other.exponent)
        return DecimalReal(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = DecimalReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return DecimalReal.coerce(other) - self

    def __mul__(self, other):
        try:
            other = DecimalReal.coerce(other)
        except TypeError:
            return NotImplemented
        return DecimalReal(_imul(self.mantissa, other.mantissa), self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return DecimalReal(self.mantissa**k, self.exponent * k)

    def _cmp(self, other):
        if isinstance(other, DecimalReal):
            return _cmp_parts(self.mantissa, self.exponent, other.mantissa, other.exponent)
        if isinstance(other, int):
            return _cmp_parts(self.mantissa, self.exponent, other, 0)
        if isinstance(other, Rational):
            q = self.to_fraction()
            other = Fraction(other)
            return (q > other) - (q < other)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __hash__(self):
        return hash((self.mantissa, self.exponent))


@dataclass(frozen=True)
class DecimalComplex:
    """Exact Gaussian decimal ``m_re*10**e_re + i*m_im*10**e_im``."""

    m_re: int
    e_re: int = 0
    m_im: int = 0
    e_im: int = 0

    def __post_init__(self):
        mr, er = _strip(int(self.m_re), int(self.e_re))
        mi, ei = _strip(int(self.m_im), int(self.e_im))
        object.__setattr__(self, "m_re", mr)
        object.__setattr__(self, "e_re", er)
        object.__setattr__(self, "m_im", mi)
        object.__setattr__(self, "e_im", ei)

    @classmethod
    def from_parts(cls, re_part, im_part=0):
        r = DecimalReal.coerce(re_part)
        i = DecimalReal.coerce(im_part)
        return cls(r.mantissa, r.exponent, i.mantissa, i.exponent)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, DecimalComplex):
            return x
        if isinstance(x, str):
            return parse_complex(x)
        return cls.from_parts(x, 0)

    @property
    def re(self):
        return DecimalReal(self.m_re, self.e_re)

    @property
    def im(self):
        return DecimalReal(self.m_im, self.e_im)

    def is_zero(self):
        return self.m_re == 0 and self.m_im == 0

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return f"{_int_text(self.m_re)}e{self.e_re} {_int_text(self.m_im)}e{self.e_im}"

    def __repr__(self):
        return f"DecimalComplex({self.m_re}, {self.e_re}, {self.m_im}, {self.e_im})"

    def __neg__(self):
        return DecimalComplex(-self.m_re, self.e_re, -self.m_im, self.e_im)

    def conj(self):
        return DecimalComplex(self.m_re, self.e_re, -self.m_im, self.e_im)

    def __add__(self, other):
        try:
            other = DecimalComplex.coerce(other)
        except (TypeError, BadInput):
            return NotImplemented
        a, b, e = _align(self.m_re, self.e_re, other.m_re, other.e_re)
        c, d, f = _align(self.m_im, self.e_im, other.m_im, other.e_im)
        return DecimalComplex(a + b, e, c + d, f)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = DecimalComplex.coerce(other)
        except (TypeError, BadInput):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return DecimalComplex.coerce(other) - self

    def __mul__(self, other):
        try:
            other = DecimalComplex.coerce(other)
        except (TypeError, BadInput):
            return NotImplemented
        # (a + bi)(c + di) with every product carrying its own exponent
        ac_m, ac_e = _imul(self.m_re, other.m_re), self.e_re + other.e_re
        bd_m, bd_e = _imul(self.m_im, other.m_im), self.e_im + other.e_im
        ad_m, ad_e = _imul(self.m_re, other.m_im), self.e_re + other.e_im
        bc_m, bc_e = _imul(self.m_im, other.m_re), self.e_im + other.e_re
        x, y, e = _align(ac_m, ac_e, -bd_m, bd_e)
        u, v, f = _align(ad_m, ad_e, bc_m, bc_e)
        return DecimalComplex(x + y, e, u + v, f)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = DecimalComplex(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def abs2(self):
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def to_fractions(self):
        return self.re.to_fraction(), self.im.to_fraction()

    def to_complex(self):
        """Nearest Python complex; only for display and test oracles."""
        return complex(float(self.re.to_fraction()), float(self.im.to_fraction()))


def dc_arith(op, x, y=None):
    """Ring operation ``op`` on exact Gaussian decimals.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``neg``, ``conj``; the unary
    ones ignore ``y``.

    >>> dc_arith("mul", DecimalComplex(3, -1), DecimalComplex(7, -1))
    DecimalComplex(21, -2, 0, 0)
    """
    x = DecimalComplex.coerce(x)
    if op == "neg":
        return -x
    if op == "conj":
        return x.conj()
    y = DecimalComplex.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise BadInput(f"unknown ring operation {op!r}")


def _round_parts(m, e, digits, mode):
    """Round ``m*10**e`` to a multiple of ``10**-digits``."""
    if e >= -digits:
        return m, e
    k = -digits - e
    q, r = divmod(abs(m), 10**k)
    neg = m < 0
    if mode == "half":
        if 2 * r >= 10**k:
            q += 1
    elif r:
        # floor/ceil depend on sign
        if (mode == "ceil" and not neg) or (mode == "floor" and neg):
            q += 1
    return (-q if neg else q), -digits


def decimal_round(x, m):
    """Round a decimal real half away from zero to accuracy ``m``."""
    x = DecimalReal.coerce(x)
    return DecimalReal(*_round_parts(x.mantissa, x.exponent, m, "half"))


def decimal_floor(x, m):
    """Largest multiple of ``10**-m`` not exceeding ``x`` (decimal or rational)."""
    if isinstance(x, DecimalReal) or isinstance(x, int):
        x = DecimalReal.coerce(x)
        return DecimalReal(*_round_parts(x.mantissa, x.exponent, m, "floor"))
    q = Fraction(x)
    if m >= 0:
        return DecimalReal(q.numerator * 10**m // q.denominator, -m)
    return DecimalReal(q.numerator // (q.denominator * 10 ** (-m)), -m)


def decimal_ceil(x, m):
    """Smallest multiple of ``10**-m`` not below ``x`` (decimal or rational)."""
    return -decimal_floor(-x, m)


def round_to(x, m):
    """Round each component of ``x`` half away from zero to ``m`` digits.

    Works on :class:`DecimalComplex` and :class:`DecimalReal`.  The
    componentwise error is at most ``0.5*10**-m``, so the modulus error is at
    most ``0.71*10**-m``.

    >>> str(round_to(parse_complex("2e-1 5e-2"), 1))
    '2e-1 1e-1'
    """
    if isinstance(x, DecimalComplex):
        mr, er = _round_parts(x.m_re, x.e_re, m, "half")
        mi, ei = _round_parts(x.m_im, x.e_im, m, "half")
        return DecimalComplex(mr, er, mi, ei)
    return decimal_round(x, m)


def modulus_bounds(x, m):
    """Exact decimals ``lo <= |x| <= hi`` with ``hi - lo <= 10**-m``.

    The bounds are the floor and ceiling of ``|x|`` on the grid of step
    ``10**-(m+1)``, so refining ``m`` always yields nested intervals.
    """
    x = DecimalComplex.coerce(x)
    s = x.abs2()
    if s.is_zero():
        return DecimalReal(0), DecimalReal(0)
    shift = s.exponent + 2 * (m + 1)
    if shift >= 0:
        t = s.mantissa * 10**shift
        exact = True
    else:
        t, rem = divmod(s.mantissa, 10 ** (-shift))
        exact = rem == 0
    r = math.isqrt(t)
    lo = r
    hi = r if (exact and r * r == t) else r + 1
    return DecimalReal(lo, -(m + 1)), DecimalReal(hi, -(m + 1))


def parse_real(text):
    """Parse ``<m>e<e>`` or an ordinary decimal string such as ``-0.25``."""
    text = text.strip()
    match = _LITERAL.fullmatch(text)
    if match:
        return DecimalReal(int(match.group(1)), int(match.group(2)))
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise MalformedInput(f"not a decimal number: {text!r}") from None
    if not d.is_finite():
        raise MalformedInput(f"not a finite decimal: {text!r}")
    sign, digits, exp = d.as_tuple()
    mant = int("".join(map(str, digits)) or "0")
    return DecimalReal(-mant if sign else mant, exp)


def parse_complex(text):
    """Parse the two-field literal ``<m_re>e<e_re> <m_im>e<e_im>``.

    A single field is accepted as a real number.
    """
    fields = text.split()
    if len(fields) == 1:
        return DecimalComplex.from_parts(parse_real(fields[0]), 0)
    if len(fields) != 2:
        raise MalformedInput(f"expected '<m>e<e> <m>e<e>', got {text!r}")
    return DecimalComplex.from_parts(parse_real(fields[0]), parse_real(fields[1]))


def _positive_number(value, name):
    if isinstance(value, float):
        value = Fraction(value)
    if isinstance(value, str):
        value = parse_real(value).to_fraction()
    if not isinstance(value, Rational):
        raise BadInput(f"{name} must be a rational number")
    return value


@dataclass(frozen=True)
class Config:
    """Tunable constants of the certified algorithms.

    ``theta`` scales the conditioning and counting bounds, ``big_k`` scales
    the truncation order of series zero finding, and ``buckholtz_m`` is the
    power used by the exclusion function (at least 200 so that
    ``5**(1/M) <= 1.01``).
    """

    theta: Rational = 8
    big_k: Rational = 8
    buckholtz_m: int = 256

    def __post_init__(self):
        theta = _positive_number(self.theta, "theta")
        big_k = _positive_number(self.big_k, "big_k")
        if theta < 1:
            raise BadInput("theta must be at least 1")
        if big_k < 1:
            raise BadInput("big_k must be at least 1")
        if not isinstance(self.buckholtz_m, int) or self.buckholtz_m < 200:
            raise BadInput("buckholtz_m must be an integer >= 200")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "big_k", big_k)
