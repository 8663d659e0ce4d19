"""Square roots and v-th roots of nonnegative reals by bisection.

Only ring operations and exact comparisons are used, so every output comes
with a proven error bound.
"""

from __future__ import annotations

from .errors import BadInput, OracleInconsistent
from .numeric import DecimalReal, _cmp_parts, decimal_round, digit_count, pow10

__all__ = ["RealOracle", "ExactRealOracle", "FunctionRealOracle", "sqrt_real", "nth_root_real"]


class RealOracle:
    """Source of decimal approximations of a fixed real number.

    Subclasses implement ``_answer(m)`` returning a :class:`DecimalReal`
    within ``10**-m`` of the hidden value.  :meth:`query` checks every answer
    against all earlier ones: two answers at accuracies ``m1`` and ``m2``
    must differ by at most ``10**-m1 + 10**-m2``.
    """

    def __init__(self):
        self._history = {}

    def _answer(self, m):
        raise NotImplementedError

    def query(self, m):
        if m in self._history:
            return self._history[m]
        x = DecimalReal.coerce(self._answer(m))
        for m_old, x_old in self._history.items():
            if abs(x - x_old).to_fraction() > pow10(-m) + pow10(-m_old):
                raise OracleInconsistent(
                    f"answers {x} (accuracy {m}) and {x_old} (accuracy {m_old}) cannot both hold"
                )
        self._history[m] = x
        return x


class ExactRealOracle(RealOracle):
    """Oracle for a known decimal value; answers are rounded to the request."""

    def __init__(self, value):
        super().__init__()
        self.value = DecimalReal.coerce(value)

    def _answer(self, m):
        return decimal_round(self.value, m)


class FunctionRealOracle(RealOracle):
    """Wrap a callable ``m -> decimal`` as an oracle."""

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def _answer(self, m):
        return self._fn(m)


def _ceil_log10_inverse(x):
    """Smallest integer s with 10**-s <= x, for x > 0."""
    s = -(x.exponent + digit_count(x.mantissa) - 1)
    while _cmp_parts(1, -s, x.mantissa, x.exponent) > 0:
        s += 1
    while _cmp_parts(1, -(s - 1), x.mantissa, x.exponent) <= 0:
        s -= 1
    return s


def _sqrt_snapshot(a_hat, m_b):
    """Bisect for sqrt(a_hat) and return a value within 0.6*10**-m_b of it."""
    m_a = max(0, -a_hat.exponent)
    n_a = a_hat.mantissa * 10 ** (a_hat.exponent + m_a)
    h = digit_count(n_a)
    if 10 ** (h - 1) >= n_a:
        h -= 1
    top = -((m_a - h) // 2)  # ceil((h - m_a) / 2)
    r2 = DecimalReal(1, top)
    r1 = DecimalReal(1, top - 1)
    width = DecimalReal(1, -(m_b + 1))
    half = DecimalReal(5, -1)
    while r2 - r1 > width:
        mid = (r1 + r2) * half
        f = mid * mid - a_hat
        if f.is_zero():
            return mid
        if f.sign() > 0:
            r2 = mid
        else:
            r1 = mid
    return (r1 + r2) * half


def sqrt_real(a, m_b):
    """Square root of the nonnegative real behind oracle ``a`` within ``10**-m_b``.

    The oracle is first probed at accuracies 10, 20, 40, ... digits until it
    either certifies ``a > 0`` or certifies ``a < 10**(-2*m_b)``, in which
    case 0 is returned.  With ``a > 10**-s`` established, one snapshot at
    ``m_b + max(s, 0) + 2`` digits moves the root by less than
    ``0.01*10**-m_b``; bisection brackets the root of the snapshot to
    ``10**-(m_b+1)`` and the midpoint is rounded to ``m_b`` digits.
    """
    if not isinstance(a, RealOracle):
        a = ExactRealOracle(a)
    if m_b < 0:
        raise BadInput("accuracy must be nonnegative")
    k = 10
    while True:
        x = a.query(k)
        eps = DecimalReal(1, -k)
        if x - eps > 0:
            lower = x - eps
            break
        if x + eps < DecimalReal(1, -2 * m_b):
            return DecimalReal(0)
        k *= 2
    s = _ceil_log10_inverse(lower)
    a_hat = a.query(m_b + max(s, 0) + 2)
    return decimal_round(_sqrt_snapshot(a_hat, m_b), m_b)


def nth_root_real(x, v, m):
    """Nonnegative ``v``-th root of the exact decimal ``x`` within ``10**-m``.

    Bisection runs over the grid of step ``10**-(m+1)`` inside
    ``[0, max(1, x)]`` and finds the largest grid point whose ``v``-th power
    does not exceed ``x``; that point is then rounded to ``m`` digits.
    """
    x = DecimalReal.coerce(x)
    if x.sign() < 0:
        raise BadInput("nth_root_real needs x >= 0")
    if v < 1:
        raise BadInput("root order must be positive")
    if v == 1:
        return decimal_round(x, m)
    if x.is_zero():
        return DecimalReal(0)
    scale = m + 1
    # upper end of the bracket: max(1, x) on the grid, rounded up
    top = max(DecimalReal(1), x)
    t = top.exponent + scale
    hi = top.mantissa * 10**t if t >= 0 else -((-top.mantissa) // 10 ** (-t))
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cmp_parts(mid**v, -v * scale, x.mantissa, x.exponent) <= 0:
            lo = mid
        else:
            hi = mid
    if _cmp_parts(hi**v, -v * scale, x.mantissa, x.exponent) <= 0:
        lo = hi
    return decimal_round(DecimalReal(lo, -scale), m)
