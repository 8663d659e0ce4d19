"""Certified approximation of all complex roots of a monic polynomial.

The search is a quadtree over an initial square that contains every root.
Each generation splits the surviving squares in four and drops a square when
a certified lower bound on the distance from its center to the nearest root
exceeds its half-diagonal.  The lower bound comes from power sums of the
reciprocals of the shifted roots, pushed through repeated root squaring, and
is within a factor 1.01 of the true distance.

Once the number of connected groups of squares equals the degree, each
group holds exactly one root.  By default the root of each group is then
polished by Newton's method and the result is accepted only if a fresh
exclusion bound at the rounded point proves it accurate; otherwise the group
keeps being subdivided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from flint import acb, acb_poly, acb_series, arb, ctx, nmod_poly

from ._balls import acb_of, arb_exact_fraction, floor_significant, lower_fraction, upper_fraction
from .errors import BadInput, MalformedInput, SizeMismatch, ZeroConstantTerm, ZeroDiscriminant
from .numeric import Config, DecimalComplex, DecimalReal, digit_count, parse_complex, round_to

__all__ = [
    "MonicPolynomial",
    "ApproxDivisor",
    "Square",
    "taylor_shift",
    "newton_power_sums",
    "exclusion_radius",
    "exclusion_bounds",
    "make_squarefree",
    "discriminant_is_zero",
    "sylvester_resultant",
    "conditioning_budget",
    "weyl_roots",
    "root_separation_bound",
    "divisor_distance",
    "divisor_distance_squared",
]


# Gaussian integers are (re, im) pairs of Python ints.


def _gmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gadd(a, b):
    return a[0] + b[0], a[1] + b[1]


def _gdiv_exact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re_part = a[0] * b[0] + a[1] * b[1]
    im_part = a[1] * b[0] - a[0] * b[1]
    if re_part % n or im_part % n:
        raise ArithmeticError("inexact Gaussian division")
    return re_part // n, im_part // n


def _scaled(values):
    """Write decimals as Gaussian integers times one common power of ten."""
    exps = [e for v in values for (m, e) in ((v.m_re, v.e_re), (v.m_im, v.e_im)) if m]
    base = min(exps) if exps else 0
    ints = [
        (v.m_re * 10 ** (v.e_re - base) if v.m_re else 0, v.m_im * 10 ** (v.e_im - base) if v.m_im else 0)
        for v in values
    ]
    return ints, base


def _fraction_pair(z):
    if isinstance(z, DecimalComplex):
        return z.re.to_fraction(), z.im.to_fraction()
    return Fraction(z[0]), Fraction(z[1])


def _round_fraction(q, m):
    """Round a rational half away from zero onto the grid 10**-m."""
    scaled = abs(q) * 10**m
    n = math.floor(scaled + Fraction(1, 2))
    return DecimalReal(-n if q < 0 else n, -m)


def _decimal_from_pair(pair, m):
    return DecimalComplex.from_parts(_round_fraction(pair[0], m), _round_fraction(pair[1], m))


@dataclass(frozen=True)
class MonicPolynomial:
    """``x**d + a_{d-1} x**(d-1) + ... + a_0`` with exact decimal coefficients.

    ``coeffs`` lists ``a_0 ... a_{d-1}``; the leading 1 is implicit.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(DecimalComplex.coerce(c) for c in self.coeffs)
        if not cs:
            raise BadInput("a monic polynomial needs degree at least 1")
        object.__setattr__(self, "coeffs", cs)

    @property
    def d(self):
        return len(self.coeffs)

    @classmethod
    def from_roots(cls, roots):
        """Expand ``prod (x - z)`` exactly."""
        poly = [DecimalComplex(1)]
        for z in roots:
            z = DecimalComplex.coerce(z)
            nxt = [DecimalComplex(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - c * z
            poly = nxt
        return cls(tuple(poly[:-1]))

    def all_coeffs(self):
        return list(self.coeffs) + [DecimalComplex(1)]

    def bound(self):
        """Smallest integer A >= 1 with |a_k| <= A for every coefficient."""
        best = Fraction(0)
        for c in self.coeffs:
            best = max(best, c.abs2().to_fraction())
        a = math.isqrt(best.numerator // best.denominator)
        while a * a < best:
            a += 1
        return max(a, 1)

    def denominator_exponent(self):
        """Smallest D >= 0 such that 10**D times every coefficient is integral."""
        exps = [e for c in self.coeffs for (m, e) in ((c.m_re, c.e_re), (c.m_im, c.e_im)) if m]
        return max([0] + [-e for e in exps])

    def evaluate(self, z):
        """Exact value at a decimal point."""
        z = DecimalComplex.coerce(z)
        acc = DecimalComplex(1)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def evaluate_fraction(self, pair):
        """Exact value at a point with rational coordinates, as a Fraction pair."""
        x, y = pair
        ar, ai = Fraction(1), Fraction(0)
        for c in reversed(self.coeffs):
            cr, ci = c.to_fractions()
            ar, ai = ar * x - ai * y + cr, ar * y + ai * x + ci
        return ar, ai

    def to_text(self):
        lines = [f"poly {self.d}"] + [str(c) for c in self.coeffs]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise MalformedInput("empty polynomial input")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "poly":
            raise MalformedInput("first line must be 'poly <d>'")
        try:
            d = int(head[1])
        except ValueError:
            raise MalformedInput("degree must be an integer") from None
        if d < 1:
            raise MalformedInput("degree must be positive")
        if len(lines) != d + 1:
            raise MalformedInput(f"expected {d} coefficient lines, found {len(lines) - 1}")
        return cls(tuple(parse_complex(ln) for ln in lines[1:]))


@dataclass(frozen=True)
class ApproxDivisor:
    """Multiset of approximate roots, each claimed within ``10**-accuracy``."""

    points: tuple
    accuracy: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(DecimalComplex.coerce(p) for p in self.points))

    def __len__(self):
        return len(self.points)

    def sorted_points(self):
        return sorted(self.points, key=lambda p: (p.re.to_fraction(), p.im.to_fraction()))


@dataclass(frozen=True)
class Square:
    """Axis-parallel square given by its exact center and side."""

    center: DecimalComplex
    side: DecimalReal

    def half_diagonal_squared(self):
        s = self.side.to_fraction()
        return s * s / 2


def taylor_shift(P, z):
    """Exact coefficients of ``P(x + z)``.

    Everything is scaled to Gaussian integers so the shift is a plain integer
    Horner scheme.
    """
    z = DecimalComplex.coerce(z)
    d = P.d
    ints, base = _scaled(P.all_coeffs())
    (w,), zexp = _scaled([z])
    if zexp < 0:
        t = 10 ** (-zexp)
    else:
        t = 1
        w = (w[0] * 10**zexp, w[1] * 10**zexp)
    c = [(x * t ** (d - k), y * t ** (d - k)) for k, (x, y) in enumerate(ints)]
    for i in range(d):
        for k in range(d - 1, i - 1, -1):
            c[k] = _gadd(c[k], _gmul(w, c[k + 1]))
    out = []
    for j in range(d):
        e = base + (zexp * (d - j) if zexp < 0 else 0)
        out.append(DecimalComplex(c[j][0], e, c[j][1], e))
    return MonicPolynomial(tuple(out))


def newton_power_sums(P, count, direction, m):
    """Power sums of the roots (``positive``) or of their inverses (``negative``).

    Positive sums are computed exactly by Newton's identities, which only use
    ring operations, and then rounded to ``m`` digits.  For negative sums the identities run on the reversed polynomial with all
    quantities multiplied by the matching power of ``a_0``; only the final
    division is rounded, componentwise to ``m`` digits.
    """
    if direction not in ("positive", "negative"):
        raise BadInput("direction must be 'positive' or 'negative'")
    d = P.d
    if direction == "positive":
        a = P.all_coeffs()
        sums = []
        for k in range(1, count + 1):
            acc = DecimalComplex(k * (k <= d)) * (a[d - k] if k <= d else DecimalComplex(0))
            for i in range(1, min(k - 1, d) + 1):
                acc = acc + a[d - i] * sums[k - i - 1]
            sums.append(-acc)
        return [round_to(s, m) for s in sums]
    a = P.all_coeffs()
    a0 = a[0]
    if a0.is_zero():
        raise ZeroConstantTerm("negative power sums need a nonzero constant term")
    # reversed polynomial: coefficient of x^(d-i) is a_i, leading a_0
    powers = [DecimalComplex(1)]
    for _ in range(count):
        powers.append(powers[-1] * a0)
    scaled = []  # scaled[k-1] = a0**k * p_k
    for k in range(1, count + 1):
        acc = DecimalComplex(k) * a[k] * powers[k - 1] if k <= d else DecimalComplex(0)
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + a[i] * powers[i - 1] * scaled[k - i - 1]
        scaled.append(-acc)
    out = []
    for k, s in enumerate(scaled, start=1):
        num = s * powers[k].conj()
        den = powers[k].abs2().to_fraction()
        out.append(_decimal_from_pair((num.re.to_fraction() / den, num.im.to_fraction() / den), m))
    return out


# exclusion bounds with ball arithmetic


@dataclass
class ExclusionResult:
    """Certified data about the distance ``r`` from a point to the nearest root.

    ``rho <= r <= upper <= 1.01 * rho``; ``exact_root`` marks ``r == 0``.
    """

    rho: DecimalReal
    upper: Fraction
    exact_root: bool = False


_DISCARD = object()
_UNRESOLVED_VALUE = object()


def _two_adic(n):
    s = 0
    while n % 2 == 0:
        n //= 2
        s += 1
    return s, n


def _graeffe(q):
    cs = q.coeffs()
    even = acb_poly(cs[0::2])
    odd = acb_poly(cs[1::2])
    return even * even - acb_poly([0, 1]) * odd * odd


def _buckholtz_bounds(q, d, power, stride):
    """Ball bounds ``(lo, hi)`` on ``max_v (|nu_v| / d) ** (1 / (power*v))``.

    ``q`` has roots ``u ** (power / stride)``; ``nu_v`` is the sum of
    ``u ** (-power * v)``, read off the log-derivative series of ``q``.
    """
    n = stride * d
    old_cap = ctx.cap
    ctx.cap = n + 2
    try:
        series = acb_series(q.coeffs(), prec=n + 2)
        logder = (series.derivative() / series).coeffs()
    finally:
        ctx.cap = old_cap
    lo = arb(0)
    hi = arb(0)
    for v in range(1, d + 1):
        idx = stride * v - 1
        nu = -logder[idx] if idx < len(logder) else acb(0)
        mag = abs(nu)
        up = mag.upper()
        if up > 0:
            cand = ((up / d).log() / (power * v)).exp().upper()
            if cand > hi:
                hi = cand
        low = mag.lower()
        if low > 0:
            cand = ((low / d).log() / (power * v)).exp().lower()
            if cand > lo:
                lo = cand
    return lo, hi


class _ExclusionEngine:
    """Evaluates the exclusion bound of one polynomial at many points."""

    def __init__(self, P, buckholtz_m):
        self.P = P
        self.d = P.d
        self.M = buckholtz_m
        self.two_steps, self.odd = _two_adic(buckholtz_m)
        ints, base = _scaled(P.all_coeffs())
        self._ints, self._base = ints, base
        bits = max(max(abs(x).bit_length(), abs(y).bit_length()) for x, y in ints)
        self.coeff_bits = bits + int(3.33 * abs(base)) + 1
        # 128 bits hits flint's fast two-limb path; harder points escalate
        self.prec = 128
        self._cache = {}

    def poly(self, prec):
        if prec not in self._cache:
            with ctx.workprec(prec):
                if self._base >= 0:
                    scale = 10**self._base
                    cs = [acb(x * scale, y * scale) for x, y in self._ints]
                else:
                    den = 10 ** (-self._base)
                    cs = [acb(arb_exact_fraction(Fraction(x, den)), arb_exact_fraction(Fraction(y, den))) for x, y in self._ints]
                self._cache[prec] = acb_poly(cs)
        return self._cache[prec]

    def _attempt(self, center, prec, discard_h2, prefilter_steps):
        d, M = self.d, self.M
        with ctx.workprec(prec):
            c = acb_of(center)
            q = self.poly(prec)(acb_poly([c, 1]))
            q0 = q.coeffs()[0]
            if not q0.abs_lower() > 0:
                return _UNRESOLVED_VALUE
            for step in range(1, self.two_steps + 1):
                q = _graeffe(q)
                if discard_h2 is not None and step == prefilter_steps:
                    power = 2**step
                    lo, hi = _buckholtz_bounds(q, d, power, 1)
                    if hi > 0:
                        bound = lower_fraction(arb(5) ** (arb(-1) / power) / hi)
                        if bound * bound > discard_h2:
                            return _DISCARD
            lo, hi = _buckholtz_bounds(q, d, M, self.odd)
            if not lo > 0:
                return None
            rho = floor_significant(lower_fraction(arb(5) ** (arb(-1) / M) / hi), 15)
            upper = upper_fraction(1 / lo)
            if upper > Fraction(101, 100) * rho.to_fraction():
                return None
            return ExclusionResult(rho, upper)

    def vanishes_at(self, pair):
        """Exact test ``P(x + iy) == 0`` for rational ``x, y``."""
        x, y = pair
        den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        w = (x.numerator * (den // x.denominator), y.numerator * (den // y.denominator))
        d = self.d
        acc = self._ints[d]
        dpow = 1
        for k in range(d - 1, -1, -1):
            dpow *= den
            b = self._ints[k]
            acc = _gadd(_gmul(acc, w), (b[0] * dpow, b[1] * dpow))
        return acc == (0, 0)

    def evaluate(self, center, discard_h2=None, prefilter_steps=3, prec=None):
        """Exclusion data at ``center`` (a DecimalComplex or a Fraction pair).

        With ``discard_h2`` set, a cheaper bound using fewer squarings may
        answer early with the sentinel ``_DISCARD`` when it already proves the
        nearest root farther than ``sqrt(discard_h2)``.
        """
        pair = _fraction_pair(center)
        prec = max(prec or 0, self.prec)
        checked_zero = False
        while True:
            res = self._attempt(pair, prec, discard_h2, prefilter_steps)
            if res is _UNRESOLVED_VALUE:
                if not checked_zero:
                    checked_zero = True
                    if self.vanishes_at(pair):
                        return ExclusionResult(DecimalReal(0), Fraction(0), True)
            elif res is not None:
                return res
            prec *= 2
            if prec > 1 << 22:
                raise RuntimeError("exclusion bound did not certify")


def exclusion_bounds(P, z, cfg=None):
    """Full exclusion data at ``z``: ``rho <= r(z) <= upper <= 1.01*rho``."""
    cfg = cfg or Config()
    return _ExclusionEngine(P, cfg.buckholtz_m).evaluate(DecimalComplex.coerce(z))


def exclusion_radius(P, z, cfg=None):
    """Decimal ``rho`` with ``rho <= r(z) <= 1.01*rho``.

    ``r(z)`` is the distance from ``z`` to the nearest root of ``P``.  The
    bound is ``5**(-1/M) / max_v (|nu_{-M v}| / d) ** (1/(M v))`` where
    ``nu_{-k}`` sums the ``k``-th powers of the inverses of the roots of
    ``P(x + z)``.  With ``M = 2**s * t`` the polynomial undergoes ``s`` root
    squarings and the remaining power sums come from a power series division.
    """
    return exclusion_bounds(P, z, cfg).rho


# discriminants and squarefree perturbation


def sylvester_resultant(f, g):
    """Resultant of two Gaussian-integer polynomials (ascending coefficient lists).

    Fraction-free Bareiss elimination on the Sylvester matrix, so every
    intermediate division is exact.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return (1, 0)
    rows = []
    for i in range(n):
        row = [(0, 0)] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [(0, 0)] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    sign = 1
    prev = (1, 0)
    for k in range(size - 1):
        if rows[k][k] == (0, 0):
            for r in range(k + 1, size):
                if rows[r][k] != (0, 0):
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        piv = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = _gadd(_gmul(rows[i][j], piv), _gmul((-rows[i][k][0], -rows[i][k][1]), rows[k][j]))
                rows[i][j] = _gdiv_exact(num, prev)
        prev = piv
    det = rows[size - 1][size - 1]
    return (sign * det[0], sign * det[1])


def _derivative_ints(ints):
    return [(k * x, k * y) for k, (x, y) in enumerate(ints)][1:]


def _primes_1_mod_4(start):
    p = gmpy2.mpz(start)
    while True:
        p = gmpy2.next_prime(p)
        if p % 4 == 1:
            yield int(p)


def _sqrt_minus_one(p):
    for a in range(2, p):
        c = pow(a, (p - 1) // 4, p)
        if c * c % p == p - 1:
            return c
    raise ArithmeticError("no square root of -1")


def _modular_resultant_zero(f, g):
    """Decide exactly whether Res(f, g) = 0 using Gaussian primes.

    Each prime p = 1 mod 4 gives a ring map Z[i] -> Z/p.  A nonzero image
    proves the resultant nonzero.  Vanishing images at primes whose product
    exceeds the squared Hadamard bound prove it zero.
    """
    m, n = len(f) - 1, len(g) - 1
    norm_f = math.sqrt(sum(x * x + y * y for x, y in f))
    norm_g = math.sqrt(sum(x * x + y * y for x, y in g))
    log2_bound = n * math.log2(max(norm_f, 1.0)) + m * math.log2(max(norm_g, 1.0)) + 2
    needed = 2 * log2_bound + 4
    acc = 0.0
    lead = (f[-1], g[-1])
    for p in _primes_1_mod_4(1 << 40):
        s = _sqrt_minus_one(p)
        if any((c[0] + s * c[1]) % p == 0 for c in lead):
            continue
        fp = nmod_poly([(x + s * y) % p for x, y in f], p)
        gp = nmod_poly([(x + s * y) % p for x, y in g], p)
        if int(fp.resultant(gp)) != 0:
            return False
        acc += math.log2(p)
        if acc > needed:
            return True


def discriminant_is_zero(P, method="auto"):
    """Exact test for a repeated root, via the resultant of P and P'."""
    ints, _ = _scaled(P.all_coeffs())
    der = _derivative_ints(ints)
    if method == "auto":
        method = "sylvester" if P.d <= 12 else "modular"
    if method == "sylvester":
        return sylvester_resultant(ints, der) == (0, 0)
    if method == "modular":
        return _modular_resultant_zero(ints, der)
    raise BadInput(f"unknown method {method!r}")


def make_squarefree(P, m_P):
    """Add ``10**-m_P`` to the constant term until the discriminant is nonzero.

    At most ``d`` increments are needed since the discriminant of
    ``P + c`` is a nonzero polynomial of degree ``d - 1`` in ``c``.
    """
    step = DecimalComplex(1, -m_P)
    cur = P
    for _ in range(P.d + 1):
        if not discriminant_is_zero(cur):
            return cur
        cur = MonicPolynomial((cur.coeffs[0] + step,) + cur.coeffs[1:])
    raise RuntimeError("squarefree perturbation did not terminate")


def _ceil_log10(n):
    """Smallest k with 10**k >= n, for an integer n >= 1."""
    k = digit_count(n) - 1
    return k if 10**k >= n else k + 1


def conditioning_budget(d, A, m_Z, cfg=None):
    """Perturbation budget for moving the roots by at most ``10**-(m_Z+1)``.

    Returns ``(epsilon, log10_delta, m_P)``.  Coefficient changes of size at
    most ``10**log10_delta`` move the divisor by at most ``epsilon``; the
    exponent follows ``d log eps - d log A - theta d**3`` with every
    logarithm taken in base 10 and rounded outward.  ``m_P`` leaves room
    for rounding each coefficient once plus ``d`` squarefree increments.
    """
    cfg = cfg or Config()
    if d < 1 or A < 1 or m_Z < 0:
        raise BadInput("need d >= 1, A >= 1, m_Z >= 0")
    epsilon = DecimalReal(1, -(m_Z + 1))
    cubic = cfg.theta * d**3
    cubic = -((-cubic.numerator) // cubic.denominator) if isinstance(cubic, Fraction) else int(cubic)
    log10_delta = -(d * (m_Z + 1) + d * _ceil_log10(A) + cubic)
    m_P = -log10_delta + _ceil_log10(d + 1)
    return epsilon, log10_delta, m_P


def root_separation_bound(P):
    """Integer g with every pair of distinct roots at distance >= 10**-g.

    Uses ``|disc| >= 10**(-D(2d-2))`` for coefficients with denominator
    ``10**D`` together with Mahler's separation inequality; the returned
    exponent ``D(2d-1) + d(d-1) log10(2dA)`` dominates both.
    """
    if discriminant_is_zero(P):
        raise ZeroDiscriminant("polynomial has a repeated root")
    d = P.d
    if d == 1:
        return 0
    D = P.denominator_exponent()
    A = P.bound()
    return math.ceil(D * (2 * d - 1) + d * (d - 1) * math.log10(2 * d * A) + 1e-9)


# quadtree


def _components(cells):
    """Groups of cells connected through edges or corners."""
    remaining = set(cells)
    groups = []
    while remaining:
        start = min(remaining)
        remaining.discard(start)
        stack = [start]
        group = [start]
        while stack:
            i, j = stack.pop()
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    nb = (i + di, j + dj)
                    if nb in remaining:
                        remaining.discard(nb)
                        stack.append(nb)
                        group.append(nb)
        groups.append(sorted(group))
    groups.sort()
    return groups


@dataclass
class _Grid:
    half_width: int  # d*A; the initial square is [-dA, dA]^2

    def side(self, gen):
        return Fraction(2 * self.half_width, 2**gen)

    def center(self, gen, cell):
        s = self.side(gen)
        return (-self.half_width + (cell[0] + Fraction(1, 2)) * s, -self.half_width + (cell[1] + Fraction(1, 2)) * s)

    def cell_of(self, gen, pair):
        s = self.side(gen)
        return (math.floor((pair[0] + self.half_width) / s), math.floor((pair[1] + self.half_width) / s))


@dataclass
class _Stats:
    tests: int = 0
    generations: int = 0
    newton_accepted: int = 0
    quadtree_only: int = 0
    history: list = field(default_factory=list)


class _Quadtree:
    def __init__(self, P, cfg):
        self.P = P
        self.engine = _ExclusionEngine(P, cfg.buckholtz_m)
        self.grid = _Grid(P.d * P.bound())
        self.stats = _Stats()

    def keep(self, gen, cell):
        s = self.grid.side(gen)
        h2 = s * s / 2
        self.stats.tests += 1
        res = self.engine.evaluate(self.grid.center(gen, cell), discard_h2=h2)
        if res is _DISCARD:
            return False
        rho = res.rho.to_fraction()
        return rho * rho <= h2

    def split(self, gen, cells):
        out = []
        for i, j in cells:
            for di in (0, 1):
                for dj in (0, 1):
                    child = (2 * i + di, 2 * j + dj)
                    if self.keep(gen + 1, child):
                        out.append(child)
        return out


def _newton_polish(P, start, digits, coeff_bits):
    prec = max(64, coeff_bits) + int(3.33 * (digits + 10)) + 2 * P.d
    with ctx.workprec(prec):
        ints, base = _scaled(P.all_coeffs())
        if base >= 0:
            cs = [acb(x * 10**base, y * 10**base) for x, y in ints]
        else:
            den = 10 ** (-base)
            cs = [acb(arb_exact_fraction(Fraction(x, den)), arb_exact_fraction(Fraction(y, den))) for x, y in ints]
        f = acb_poly(cs)
        fp = f.derivative()
        w = acb_of(start)
        tol = arb(10) ** (-(digits + 3))
        for _ in range(200):
            val = f(w)
            der = fp(w)
            if not der.abs_lower() > 0:
                return None
            step = (val / der).mid()
            w = (w - step).mid()
            if abs(step).upper() < tol:
                break
        else:
            return None
        return lower_fraction(w.real.mid()), lower_fraction(w.imag.mid())


def _box(grid, gen, cells):
    s = grid.side(gen)
    i0 = min(c[0] for c in cells)
    i1 = max(c[0] for c in cells)
    j0 = min(c[1] for c in cells)
    j1 = max(c[1] for c in cells)
    lo = (-grid.half_width + i0 * s, -grid.half_width + j0 * s)
    hi = (-grid.half_width + (i1 + 1) * s, -grid.half_width + (j1 + 1) * s)
    center = ((lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2)
    half_diag2 = ((hi[0] - lo[0]) ** 2 + (hi[1] - lo[1]) ** 2) / 4
    return center, half_diag2


def _certify(tree, owner, snapshot_gen, label, point, bound):
    """Prove ``point`` lies within ``bound`` of the root owned by group ``label``."""
    digits = digit_count(bound.denominator)
    res = tree.engine.evaluate(point, prec=128 + int(3.33 * digits) + 2 * tree.P.d)
    if res.upper > bound:
        return False
    s = tree.grid.side(snapshot_gen)
    if res.upper > s / 2:
        return False
    i, j = tree.grid.cell_of(snapshot_gen, _fraction_pair(point))
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            other = owner.get((i + di, j + dj))
            if other is not None and other != label:
                return False
    return True


def weyl_roots(P, m_Z, cfg=None, refine=True, stats=None):
    """Approximate every root of ``P`` within ``10**-m_Z``.

    The coefficients are rounded to the working accuracy given by
    :func:`conditioning_budget` and the result is made squarefree; roots
    are then isolated by the quadtree.  Each isolated root is located to
    ``0.5*10**-(m_Z+1)`` either by certified Newton polishing
    (``refine=True``) or by subdividing its group until the group's bounding
    box is that small.  Points are rounded to ``m_Z + 2`` digits.
    """
    cfg = cfg or Config()
    d = P.d
    _, _, m_P = conditioning_budget(d, P.bound(), m_Z, cfg)
    work = MonicPolynomial(tuple(round_to(c, m_P) for c in P.coeffs))
    work = make_squarefree(work, m_P)
    tree = _Quadtree(work, cfg)
    if stats is not None:
        tree.stats = stats
    grid = tree.grid
    local = Fraction(1, 2 * 10 ** (m_Z + 1))
    out_digits = m_Z + 2

    gen = 0
    cells = [(0, 0)]
    while True:
        cells = tree.split(gen, cells)
        gen += 1
        tree.stats.generations = gen
        if len(cells) > 4 * d:
            raise RuntimeError("quadtree kept more than 4d squares")
        groups = _components(cells)
        tree.stats.history.append((gen, len(cells), len(groups)))
        if len(groups) == d:
            break
        if gen > 100000:
            raise RuntimeError("quadtree failed to separate the roots")

    owner = {cell: label for label, group in enumerate(groups) for cell in group}
    snapshot_gen = gen
    points = []
    for label, group in enumerate(groups):
        g_gen, g_cells = gen, group
        attempt = 0
        while True:
            center, half_diag2 = _box(grid, g_gen, g_cells)
            if refine and (attempt < 3 or attempt % 4 == 0):
                w = _newton_polish(work, center, out_digits, tree.engine.coeff_bits)
                if w is not None:
                    cand = _decimal_from_pair(w, out_digits)
                    if _certify(tree, owner, snapshot_gen, label, cand, local):
                        tree.stats.newton_accepted += 1
                        points.append(cand)
                        break
            if half_diag2 <= local * local:
                tree.stats.quadtree_only += 1
                points.append(_decimal_from_pair(center, out_digits))
                break
            g_cells = tree.split(g_gen, g_cells)
            g_gen += 1
            attempt += 1
            if not g_cells:
                raise RuntimeError("a root was lost during subdivision")
    return ApproxDivisor(tuple(sorted(points, key=lambda p: (p.re.to_fraction(), p.im.to_fraction()))), m_Z)


# divisor comparison


def _bipartite_perfect(adj, n):
    match = [-1] * n

    def augment(u, seen):
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                if match[v] < 0 or augment(match[v], seen):
                    match[v] = u
                    return True
        return False

    for u in range(n):
        if not augment(u, set()):
            return False
    return True


def divisor_distance_squared(D1, D2):
    """Exact square of the bottleneck distance between two divisors."""
    p1 = [DecimalComplex.coerce(p) for p in (D1.points if isinstance(D1, ApproxDivisor) else D1)]
    p2 = [DecimalComplex.coerce(p) for p in (D2.points if isinstance(D2, ApproxDivisor) else D2)]
    if len(p1) != len(p2):
        raise SizeMismatch(f"divisors have sizes {len(p1)} and {len(p2)}")
    n = len(p1)
    if n == 0:
        return Fraction(0)
    dist = [[(a - b).abs2().to_fraction() for b in p2] for a in p1]
    values = sorted({x for row in dist for x in row})
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        adj = [[j for j in range(n) if dist[i][j] <= values[mid]] for i in range(n)]
        if _bipartite_perfect(adj, n):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


def divisor_distance(D1, D2, m=None):
    """Bottleneck distance ``min_tau max_k |z_tau(k) - w_k|`` between divisors.

    The exact squared distance is found by matching; its square root is
    returned rounded up on the grid ``10**-(m+1)``, where ``m`` defaults to
    the larger accuracy attached to the divisors.  The result is exact
    whenever the distance is a decimal with at most ``m + 1`` digits.
    """
    sq = divisor_distance_squared(D1, D2)
    if m is None:
        m = max(getattr(D1, "accuracy", 0), getattr(D2, "accuracy", 0))
    k = m + 1
    t = sq * 10 ** (2 * k)
    r = math.isqrt(t.numerator // t.denominator)
    if r * r < t:
        r += 1
    return DecimalReal(r, -k)
