"""Zeros of converging power series inside a disk.

A series ``f = sum f_k x**k`` is of type ``(A, n)`` when ``|f_k| <= A (k+1)**n``
for every ``k``.  Given such a bound (with ``A = exp(a)``), a level ``mu`` such
that ``|f| > exp(-mu)`` somewhere in ``D(0, 1/2)``, and a radius
``r = 1 - 1/o``, :func:`series_zeros` truncates the series at a certified
order, normalises the surviving polynomial part, and hands it to the
polynomial root finder.

The Newton polygon helpers count zeros in a disk from coefficient sizes alone.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
from flint import arb, ctx

from ._balls import acb_of, arb_exact_fraction, arb_of, ceil_significant, lower_fraction, upper_fraction
from .errors import (
    BadInput,
    CenterOutsideDisk,
    CertificateViolated,
    InsufficientOracle,
    MalformedInput,
    ZeroConstantTerm,
)
from .numeric import (
    Config,
    DecimalComplex,
    DecimalReal,
    _cmp_parts,
    digit_count,
    modulus_bounds,
    parse_complex,
    round_to,
)
from .polyroot import ApproxDivisor, MonicPolynomial, conditioning_budget, weyl_roots

__all__ = [
    "CoefficientOracle",
    "PolynomialOracle",
    "ListOracle",
    "FunctionOracle",
    "SeriesCertificate",
    "NewtonPolygon",
    "ZeroCount",
    "type_value_bound",
    "remainder_bound",
    "refocus_certificate",
    "newton_polygon",
    "polygon_zero_count",
    "truncation_order",
    "choose_principal_index",
    "series_count_bound",
    "series_zeros",
    "parse_series",
]

_LOG10_E_LOWER = Fraction(4342, 10000)  # log10(e) = 0.434294...
_LOG10_E_UPPER = Fraction(4343, 10000)


# coefficient oracles


class CoefficientPrefix(Sequence):
    """Read-only view of ``f_0 ... f_K`` that stores only nonzero entries.

    ``last_nonzero`` is the largest index whose entry is not exactly zero
    (``-1`` if none); every later entry is the exact decimal 0.
    """

    def __init__(self, values, length):
        self._values = list(values)
        self._length = length
        last = -1
        for k, v in enumerate(self._values[:length]):
            if not v.is_zero():
                last = k
        self.last_nonzero = last

    def __len__(self):
        return self._length

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(self._length))]
        if k < 0:
            k += self._length
        if not 0 <= k < self._length:
            raise IndexError(k)
        if k < len(self._values):
            return self._values[k]
        return DecimalComplex(0)


class CoefficientOracle:
    """Black box returning ``f_0 ... f_K`` within ``10**-m`` each."""

    def query(self, K, m):
        raise NotImplementedError


def _round_rational(q, m):
    """Half-away rounding of a rational onto the grid ``10**-m`` (big numbers via gmpy2)."""
    q = Fraction(q)
    den = q.denominator
    # finite decimals already on the grid come back unchanged, without building 10**m
    twos, fives = gmpy2.remove(den, 2)[1], gmpy2.remove(den, 5)[1]
    if gmpy2.remove(gmpy2.remove(den, 2)[0], 5)[0] == 1 and max(twos, fives) <= m:
        k = max(twos, fives)
        return DecimalReal(q.numerator * (10**k // den), -k)
    num = gmpy2.mpz(abs(q.numerator))
    den = gmpy2.mpz(den)
    if m >= 0:
        num *= gmpy2.mpz(10) ** m
    else:
        den *= gmpy2.mpz(10) ** (-m)
    n = int((2 * num + den) // (2 * den))
    return DecimalReal(-n if q < 0 else n, -m)


def _round_pair(pair, m):
    return DecimalComplex.from_parts(_round_rational(Fraction(pair[0]), m), _round_rational(Fraction(pair[1]), m))


class PolynomialOracle(CoefficientOracle):
    """Series with finitely many nonzero coefficients, known exactly.

    Coefficients may be decimals, integers, rationals, or ``(re, im)``
    pairs of rationals.
    """

    def __init__(self, coeffs):
        self._exact = []
        for c in coeffs:
            if isinstance(c, tuple):
                self._exact.append((Fraction(c[0]), Fraction(c[1])))
            else:
                c = DecimalComplex.coerce(c)
                self._exact.append(c.to_fractions())
        while self._exact and self._exact[-1] == (0, 0):
            self._exact.pop()
        self._cache = {}

    @classmethod
    def from_zeros(cls, zeros):
        """Exact coefficients of ``prod (1 - x/z)``."""
        poly = [(Fraction(1), Fraction(0))]
        for z in zeros:
            zr, zi = DecimalComplex.coerce(z).to_fractions()
            nz = zr * zr + zi * zi
            if nz == 0:
                raise BadInput("zeros must be nonzero")
            ir, ii = zr / nz, -zi / nz  # 1/z
            nxt = [(Fraction(0), Fraction(0))] * (len(poly) + 1)
            for k, (cr, ci) in enumerate(poly):
                nxt[k] = (nxt[k][0] + cr, nxt[k][1] + ci)
                pr, pi = cr * ir - ci * ii, cr * ii + ci * ir
                nxt[k + 1] = (nxt[k + 1][0] - pr, nxt[k + 1][1] - pi)
            poly = nxt
        return cls(poly)

    def exact(self, k):
        return self._exact[k] if k < len(self._exact) else (Fraction(0), Fraction(0))

    def query(self, K, m):
        if m not in self._cache:
            self._cache = {m: [_round_pair(c, m) for c in self._exact]}
        return CoefficientPrefix(self._cache[m][: K + 1], K + 1)


class ListOracle(CoefficientOracle):
    """Finite list of exact coefficients, as read from a series file.

    Requests beyond the list raise :class:`InsufficientOracle`.
    """

    def __init__(self, coeffs):
        self._coeffs = [DecimalComplex.coerce(c) for c in coeffs]

    def query(self, K, m):
        if K >= len(self._coeffs):
            raise InsufficientOracle(
                f"need coefficients up to index {K} but only {len(self._coeffs)} are available",
                required=K + 1,
            )
        return CoefficientPrefix([round_to(c, m) for c in self._coeffs[: K + 1]], K + 1)


class FunctionOracle(CoefficientOracle):
    """Oracle backed by a callable ``(k, m) -> DecimalComplex``."""

    def __init__(self, fn):
        self._fn = fn

    def query(self, K, m):
        return CoefficientPrefix([DecimalComplex.coerce(self._fn(k, m)) for k in range(K + 1)], K + 1)


@dataclass(frozen=True)
class SeriesCertificate:
    """Promised facts about a series.

    The series is of type ``(exp(a), n)``, exceeds ``exp(-mu)`` in modulus
    somewhere in ``D(0, 1/2)``, and zeros are wanted in ``D(0, 1 - 1/o)``.
    """

    a: int
    n: int
    mu: int
    o: int

    def __post_init__(self):
        for name in ("a", "n", "mu", "o"):
            if not isinstance(getattr(self, name), int):
                raise BadInput(f"{name} must be an integer")
        if self.a < 0 or self.n < 1 or self.mu < 1 or self.o < 2:
            raise BadInput("need a >= 0, n >= 1, mu >= 1, o >= 2")

    @property
    def r(self):
        return 1 - Fraction(1, self.o)


# analytic bounds


def _as_fraction(r):
    if isinstance(r, DecimalReal):
        return r.to_fraction()
    return Fraction(r)


def _upper_decimal(x):
    return ceil_significant(upper_fraction(x), 20)


def type_value_bound(a, n, r):
    """Upper bound for ``|f(z)|``, ``|z| <= r``, over series of type ``(exp(a), n)``.

    The bound is ``n! exp(a) / (1-r)**(n+1)``, rounded up to a decimal.
    """
    r = _as_fraction(r)
    if not 0 <= r < 1:
        raise BadInput("radius must satisfy 0 <= r < 1")
    with ctx.workprec(128):
        val = arb(math.factorial(n)) * arb(a).exp() / arb_exact_fraction(1 - r) ** (n + 1)
        return _upper_decimal(val)


def remainder_bound(a, n, u, r):
    """Upper bound for the tail ``sum_{k >= u} f_k z**k`` on ``|z| <= r``.

    Two bounds are available: ``A r**u (u+1)**n n! / (1-r)**(n+1)`` always,
    and ``n! A r**(u/2) / (1-r)**(n+1)`` once ``u >= 4 n**2 / (log r)**2``.
    The smaller applicable one is returned.
    """
    r = _as_fraction(r)
    if not 0 <= r < 1:
        raise BadInput("radius must satisfy 0 <= r < 1")
    if u < 0:
        raise BadInput("order must be nonnegative")
    with ctx.workprec(128):
        A = arb(a).exp()
        rb = arb_exact_fraction(r)
        base = arb(math.factorial(n)) * A / arb_exact_fraction(1 - r) ** (n + 1)
        general = base * rb**u * arb(u + 1) ** n
        best = upper_fraction(general)
        if r > 0:
            lr = rb.log()
            if arb(u) * lr * lr >= arb(4 * n * n):
                sharp = upper_fraction(base * rb.sqrt() ** u)
                best = min(best, sharp)
        return ceil_significant(best, 20)


def refocus_certificate(a, n, c):
    """Type of ``f(c + x (1 - |c|))`` for ``f`` of type ``(exp(a), n)``.

    Returns ``(a', n + 1)`` with ``a'`` the least integer such that
    ``exp(a') >= n! exp(a) (1-|c|)**(-n-2) exp(n+1) 2**(n+1)``, evaluated with
    an upper bound for ``|c|``.
    """
    c = DecimalComplex.coerce(c)
    if c.abs2() >= 1:
        raise CenterOutsideDisk("recentering needs |c| < 1")
    digits = 10
    while True:
        _, hi = modulus_bounds(c, digits)
        if hi < 1:
            break
        digits *= 2
    hi = hi.to_fraction()
    with ctx.workprec(128):
        expo = (
            arb(math.factorial(n)).log()
            + a
            - (n + 2) * arb_exact_fraction(1 - hi).log()
            + (n + 1)
            + (n + 1) * arb(2).log()
        )
        up = upper_fraction(expo)
    a_new = math.ceil(up)
    return max(a_new, 0), n + 1


# Newton polygon


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points ``(k, -log|f_k / f_0|)``.

    ``vertices`` pairs each vertex abscissa with its height rounded to the
    requested accuracy; ``slopes`` are the finite edge slopes in increasing
    order.  ``ratios`` keeps the exact values ``|f_k / f_0|**2`` at the
    vertices so slopes can be re-evaluated at any precision.
    """

    vertices: tuple
    slopes: tuple
    has_right_vertical_edge: bool
    ratios: tuple
    accuracy: int


@dataclass(frozen=True)
class ZeroCount:
    count: int
    margin: str  # "P4" if the log 4 margin holds, else "P3"


def _log_ball(q, digits):
    """Ball for ``-log(q)/2`` (q a positive rational) with radius below 10**-(digits+2)."""
    prec = 64 + int(3.33 * (digits + 4))
    q = Fraction(q)
    size = abs(digit_count(q.numerator) - digit_count(q.denominator))
    prec += int(3.33 * digit_count(size))
    while True:
        with ctx.workprec(prec):
            val = -arb_exact_fraction(q).log() / 2
            if val.rad() < arb(10) ** (-(digits + 2)):
                return val, prec
        prec *= 2


def _ball_to_decimal(ball, digits):
    mid = lower_fraction(ball.mid())
    scaled = abs(mid) * 10**digits
    n = math.floor(scaled + Fraction(1, 2))
    return DecimalReal(-n if mid < 0 else n, -digits)


def newton_polygon(coeffs, m):
    """Newton polygon of a coefficient prefix, heights normalised by ``f_0``.

    Points with ``f_k = 0`` are left out of the cloud.  Hull membership is
    decided exactly by comparing integer powers of ``|f_k|**2``.
    """
    if len(coeffs) == 0 or DecimalComplex.coerce(coeffs[0]).is_zero():
        raise ZeroConstantTerm("the Newton polygon needs f_0 != 0")
    f0 = DecimalComplex.coerce(coeffs[0]).abs2().to_fraction()
    pts = []
    last = getattr(coeffs, "last_nonzero", len(coeffs) - 1)
    for k in range(0, last + 1):
        c = DecimalComplex.coerce(coeffs[k])
        if not c.is_zero():
            pts.append((k, c.abs2().to_fraction() / f0))
    hull = []
    for k, q in pts:
        while len(hull) >= 2:
            (i, qi), (j, qj) = hull[-2], hull[-1]
            # j lies on or above the chord from i to k when
            # |f_j|^(2(k-i)) <= |f_i|^(2(k-j)) |f_k|^(2(j-i))
            if qj ** (k - i) <= qi ** (k - j) * q ** (j - i):
                hull.pop()
            else:
                break
        hull.append((k, q))
    vertices = []
    for k, q in hull:
        ball, _ = _log_ball(q, m)
        vertices.append((k, _ball_to_decimal(ball, m)))
    slopes = []
    for (i, qi), (k, qk) in zip(hull, hull[1:]):
        ball, _ = _log_ball(qk / qi, m + digit_count(k - i))
        slopes.append(_ball_to_decimal(ball / (k - i), m))
    return NewtonPolygon(
        vertices=tuple(vertices),
        slopes=tuple(slopes),
        has_right_vertical_edge=hull[-1][0] >= 1,
        ratios=tuple(hull),
        accuracy=m,
    )


def _distance_exceeds(sigma_ball_fn, alpha, const):
    """Decide ``|alpha - sigma| > log(const)``; None when undecidable at any tried precision."""
    prec = 128
    while prec <= 1 << 14:
        with ctx.workprec(prec):
            sigma = sigma_ball_fn(prec)
            dist = abs(arb_of(alpha) - sigma)
            bound = arb(const).log()
            if dist > bound:
                return True
            if dist < bound:
                return False
        prec *= 2
    return False


def polygon_zero_count(poly, alpha) -> Optional[ZeroCount]:
    """Zero count in ``D(0, exp(alpha))`` from the Newton polygon.

    When ``alpha`` is farther than ``log 3`` from every finite slope, the
    supporting line of slope ``alpha`` touches a single vertex whose
    abscissa is the number of zeros in the open disk.  The margin is ``P4``
    when every distance also exceeds ``log 4``.  ``None`` means alpha is not
    admissible.
    """
    alpha = DecimalReal.coerce(alpha) if not isinstance(alpha, Fraction) else alpha
    hull = poly.ratios
    margin4 = True
    count = hull[0][0]
    for (i, qi), (k, qk) in zip(hull, hull[1:]):
        ratio = qk / qi
        width = k - i

        def sigma(prec, ratio=ratio, width=width):
            return -arb_exact_fraction(ratio).log() / (2 * width)

        if not _distance_exceeds(sigma, alpha, 3):
            return None
        if margin4 and not _distance_exceeds(sigma, alpha, 4):
            margin4 = False
        with ctx.workprec(256):
            if arb_of(alpha) > sigma(256):
                count = k
    return ZeroCount(count, "P4" if margin4 else "P3")


# truncation and principal index


def _ceil_rational(x):
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def _floor_rational(x):
    x = Fraction(x)
    return x.numerator // x.denominator


def truncation_order(m, cert, cfg=None):
    """Working order ``m' = K (m + o**6 (mu + n**2 + a))`` and ``u = 16 K**2 o (...)**2``."""
    cfg = cfg or Config()
    inner = m + cert.o**6 * (cert.mu + cert.n**2 + cert.a)
    K = Fraction(cfg.big_k)
    m_prime = _ceil_rational(K * inner)
    u = _ceil_rational(16 * K * K * cert.o * inner * inner)
    return m_prime, u


def _threshold_tests(value, exponent):
    """Classify ``|value|`` against ``T = 10**-exponent`` given an error of ``T/100``.

    Returns ``(big, small)``: ``big`` certifies ``|f| >= T/2`` and ``small``
    certifies ``|f| <= T``.  Since 0.51 < 0.99 at least one always holds.
    """
    s = value.abs2()
    big = _cmp_parts(s.mantissa, s.exponent, 51 * 51, -4 - 2 * exponent) >= 0
    small = _cmp_parts(s.mantissa, s.exponent, 99 * 99, -4 - 2 * exponent) <= 0
    return big, small


def choose_principal_index(coeffs, u, m_prime, accuracy=None):
    """Index ``v`` in ``[1, u]`` with ``|f_{v-1}| >= T/2`` and ``|f_w| <= T`` for ``v <= w < u``.

    Here ``T = 10**(-6 m'**2)``.  ``coeffs`` must hold ``f_0 ... f_{u-1}``
    within ``10**-accuracy`` (default ``6 m'**2 + 2``, an error of at most
    ``T/100``).  Scanning down from ``u - 1``, the first answer with
    ``|f| >= 0.51 T`` gives ``v``; every answer above it is below
    ``0.51 T``, so its coefficient is below ``T``.  No index qualifying means
    the certificate is false and :class:`CertificateViolated` is raised.
    """
    exponent = 6 * m_prime * m_prime
    if accuracy is None:
        accuracy = exponent + 2
    if accuracy < exponent + 2:
        raise BadInput("coefficients are not accurate enough for the thresholds")
    if len(coeffs) < u:
        raise InsufficientOracle(f"need {u} coefficients, got {len(coeffs)}", required=u)
    last = getattr(coeffs, "last_nonzero", None)
    start = u - 1 if last is None else min(u - 1, last)
    for j in range(start, -1, -1):
        big, small = _threshold_tests(DecimalComplex.coerce(coeffs[j]), exponent)
        if big:
            return j + 1
        assert small
    raise CertificateViolated("no coefficient reaches the threshold; the certificate is false")


def series_count_bound(cert, r, cfg=None):
    """``ceil(theta (n**2 + mu + a)**2 / (1 - r)**13)``."""
    cfg = cfg or Config()
    r = _as_fraction(r)
    if not Fraction(1, 2) <= r < 1:
        raise BadInput("need 1/2 <= r < 1")
    val = Fraction(cfg.theta) * (cert.n**2 + cert.mu + cert.a) ** 2 / (1 - r) ** 13
    return _ceil_rational(val)


# zero finding


def _div_round(num, den, digits):
    """``num / den`` (DecimalReal, den > 0) rounded half-away onto ``10**-digits``."""
    shift = num.exponent - den.exponent + digits
    top = gmpy2.mpz(abs(num.mantissa))
    bottom = gmpy2.mpz(den.mantissa)
    if shift >= 0:
        top *= gmpy2.mpz(10) ** shift
    else:
        bottom *= gmpy2.mpz(10) ** (-shift)
    n = int((2 * top + bottom) // (2 * bottom))
    return DecimalReal(-n if num.sign() < 0 else n, -digits)


def _normalised_polynomial(coeffs, v, digits):
    """Monic ``sum_{k<v} (f_k / f_{v-1}) x**k`` rounded to ``digits``."""
    lead = coeffs[v - 1]
    den = lead.abs2()
    conj = lead.conj()
    out = []
    for k in range(v - 1):
        prod = coeffs[k] * conj
        out.append(DecimalComplex.from_parts(_div_round(prod.re, den, digits), _div_round(prod.im, den, digits)))
    return MonicPolynomial(tuple(out))


def _ratio_bound(coeffs, v, err):
    """Integer bound on ``|f_k / f_{v-1}|``, ``k < v``, given answers within ``err``."""
    with ctx.workprec(64):
        e = arb_exact_fraction(err)
        top = max((acb_of(coeffs[k]).abs_upper() for k in range(v - 1)), key=upper_fraction)
        ratio = (top + e) / (acb_of(coeffs[v - 1]).abs_lower() - e)
        return _ceil_rational(upper_fraction(ratio))


def series_zeros(oracle, cert, m, cfg=None):
    """Zeros of a certified series in a disk of radius close to ``1 - 1/o``.

    Returns ``(r_prime, J, divisor)``: ``|r_prime - r| <= 10**-m``, the
    series has exactly ``J`` zeros in the closed disk of radius
    ``r_prime``, and ``divisor`` lists them within ``10**-m``.
    """
    cfg = cfg or Config()
    m_prime, u = truncation_order(m, cert, cfg)
    exponent = 6 * m_prime * m_prime
    coeffs = oracle.query(u - 1, exponent + 2)
    v = choose_principal_index(coeffs, u, m_prime)

    r = cert.r
    # natural scales converted to powers of ten, rounded the safe way:
    # 10**-e1 <= exp(-m'), exp(-2m') <= 10**-e2, 10**-t' <= exp(-2m')
    e1 = _ceil_rational(m_prime * _LOG10_E_UPPER)
    e2 = _floor_rational(2 * m_prime * _LOG10_E_LOWER)
    t_prime = _ceil_rational(2 * m_prime * _LOG10_E_UPPER)

    roots = []
    if v > 1:
        d = v - 1
        A_hat = _ratio_bound(coeffs, v, Fraction(1, 10 ** (exponent + 2)))
        _, _, m_P = conditioning_budget(d, max(A_hat, 1), t_prime + 1, cfg)
        # |f_{v-1}| >= T/2 so the ratio errors are below 10**-(m_P+1)
        m_q = m_P + exponent + digit_count(A_hat + 1) + 3
        precise = oracle.query(v - 1, m_q)
        P = _normalised_polynomial(precise, v, m_P)
        roots = list(weyl_roots(P, t_prime + 1, cfg).points)

    # candidate radii r0 - j*delta inside [r - exp(-m'), r] on a decimal grid
    grid = e1 + digit_count(2 * (v + 1))
    delta = Fraction(1, 10**grid)
    r0 = Fraction(math.floor(r * 10**grid), 10**grid)
    guard = 3 * Fraction(1, 10**e2)
    intervals = []
    for a in roots:
        lo, hi = modulus_bounds(a, e2 + 2)
        intervals.append((lo.to_fraction() - guard, hi.to_fraction() + guard))
    window_low = r - Fraction(1, 10**e1)
    j = 0
    while True:
        cand = r0 - j * delta
        if cand < window_low:
            raise CertificateViolated("no admissible radius in the window")
        if all(not (lo <= cand <= hi) for lo, hi in intervals):
            break
        j += 1
    r_prime = DecimalReal(cand.numerator * (10**grid // cand.denominator), -grid)
    inside = []
    for a, (lo, hi) in zip(roots, intervals):
        if hi < cand:
            inside.append(round_to(a, m + 1))
    inside.sort(key=lambda p: (p.re.to_fraction(), p.im.to_fraction()))
    return r_prime, len(inside), ApproxDivisor(tuple(inside), m)


def parse_series(text):
    """Read the series text format; returns ``(certificate, coefficients)``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) < 2:
        raise MalformedInput("series input needs a header and a coefficient count")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "series":
        raise MalformedInput("first line must be 'series <a> <n> <mu> <o>'")
    try:
        a, n, mu, o = (int(x) for x in head[1:])
    except ValueError:
        raise MalformedInput("certificate fields must be integers") from None
    cnt = lines[1].split()
    if len(cnt) != 2 or cnt[0] != "coeffs":
        raise MalformedInput("second line must be 'coeffs <count>'")
    try:
        count = int(cnt[1])
    except ValueError:
        raise MalformedInput("coefficient count must be an integer") from None
    body = lines[2:]
    if len(body) != count:
        raise MalformedInput(f"expected {count} coefficient lines, found {len(body)}")
    try:
        cert = SeriesCertificate(a, n, mu, o)
    except BadInput as exc:
        raise MalformedInput(str(exc)) from None
    return cert, [parse_complex(ln) for ln in body]
