"""Conversions between exact decimals and Arb balls (python-flint)."""

from __future__ import annotations

from fractions import Fraction

from flint import acb, arb, fmpq, fmpz

from .numeric import DecimalComplex, DecimalReal, digit_count


def arb_exact_fraction(q):
    q = Fraction(q)
    return arb(fmpq(q.numerator, q.denominator))


def arb_of(x):
    """Ball containing a DecimalReal, int or Fraction (at the current precision)."""
    if isinstance(x, DecimalReal):
        if x.exponent >= 0:
            return arb(fmpz(x.mantissa) * fmpz(10) ** x.exponent)
        return arb(fmpq(fmpz(x.mantissa), fmpz(10) ** (-x.exponent)))
    if isinstance(x, int):
        return arb(fmpz(x))
    return arb_exact_fraction(x)


def acb_of(z):
    if isinstance(z, DecimalComplex):
        return acb(arb_of(z.re), arb_of(z.im))
    re_part, im_part = z
    return acb(arb_of(re_part), arb_of(im_part))


def point_fraction(x):
    """Exact value of a point ball (e.g. ``ball.lower()``) as a Fraction."""
    man, exp = x.mid().man_exp()
    man, exp = int(man), int(exp)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def lower_fraction(x):
    return point_fraction(x.lower())


def upper_fraction(x):
    return point_fraction(x.upper())


def _leading_exponent(q):
    """Rough floor(log10(q)) for q > 0; only used to size rounding steps."""
    return digit_count(q.numerator) - digit_count(q.denominator)


def floor_significant(q, digits):
    """Decimal <= q (q >= 0) carrying about ``digits`` significant digits."""
    q = Fraction(q)
    if q <= 0:
        return DecimalReal(0)
    e = _leading_exponent(q) - digits
    if e >= 0:
        n = q.numerator // (q.denominator * 10**e)
    else:
        n = q.numerator * 10 ** (-e) // q.denominator
    return DecimalReal(n, e)


def ceil_significant(q, digits):
    """Decimal >= q (q >= 0) carrying about ``digits`` significant digits."""
    q = Fraction(q)
    if q <= 0:
        return DecimalReal(0)
    e = _leading_exponent(q) - digits
    if e >= 0:
        n = -(-q.numerator // (q.denominator * 10**e))
    else:
        n = -(-q.numerator * 10 ** (-e) // q.denominator)
    return DecimalReal(n, e)
