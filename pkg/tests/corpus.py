"""Seeded generators for constructed test instances shared by the suites."""

import random
from fractions import Fraction

import mpmath

from certroots import DecimalComplex, DecimalReal
from certroots.polyroot import MonicPolynomial


def random_point(rng, radius, digits=2):
    """Decimal point with ``digits`` fractional digits and modulus <= radius."""
    scale = 10**digits
    lim = int(radius * scale)
    while True:
        a, b = rng.randint(-lim, lim), rng.randint(-lim, lim)
        if Fraction(a * a + b * b, scale * scale) <= radius * radius:
            return DecimalComplex(a, -digits, b, -digits)


def separated_points(rng, count, radius, separation, digits=2, real=False):
    pts = []
    sep2 = Fraction(separation) ** 2
    while len(pts) < count:
        z = random_point(rng, radius, digits)
        if real:
            z = DecimalComplex.from_parts(z.re, 0)
        if all((z - w).abs2().to_fraction() >= sep2 for w in pts):
            pts.append(z)
    return pts


def root_corpus(seed, size, max_degree=6, radius=10, separation=Fraction(1, 100)):
    """``size`` pairs (roots, polynomial) with separated decimal roots."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        d = rng.randint(1, max_degree)
        digits = rng.choice([0, 1, 2, 3])
        roots = separated_points(rng, d, radius, separation, digits=max(digits, 2))
        out.append((roots, MonicPolynomial.from_roots(roots)))
    return out


def true_distance(z, roots):
    """Exact squared distance from z to the nearest root."""
    return min((z - w).abs2().to_fraction() for w in roots)


def mp_complex(z):
    re, im = z.to_fractions()
    return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)


def mp_real(x):
    x = x.to_fraction() if isinstance(x, DecimalReal) else Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def brute_roots(coeffs, dps=80):
    """Roots of ``x**d + ... + a_0`` (coeffs a_0..a_{d-1}) by mpmath at high precision."""
    with mpmath.workdps(dps):
        cs = [mpmath.mpc(1)] + [mp_complex(c) for c in reversed(coeffs)]
        return mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps)


def mp_bottleneck(xs, ys):
    """Bottleneck distance between two equal-size point lists (brute force)."""
    import itertools

    best = None
    for perm in itertools.permutations(range(len(ys))):
        worst = max((abs(xs[i] - ys[perm[i]]) for i in range(len(xs))), default=mpmath.mpf(0))
        if best is None or worst < best:
            best = worst
    return best if best is not None else mpmath.mpf(0)


def series_zero_instance(rng, min_modulus=Fraction(1, 20)):
    """Zeros for ``prod (1 - x/z)`` with |z| in [min_modulus, 0.4], separated by 1e-2."""
    count = rng.randint(0, 4)
    pts = []
    while len(pts) < count:
        z = random_point(rng, Fraction(2, 5), 2)
        if z.abs2().to_fraction() < min_modulus**2:
            continue
        if all((z - w).abs2().to_fraction() >= Fraction(1, 10**4) for w in pts):
            pts.append(z)
    return pts


def type_exponent(exact_coeffs, n):
    """Smallest integer a >= 0 with |f_k| <= exp(a) (k+1)**n for the given coefficients."""
    a = 0
    with mpmath.workdps(30):
        for k, (re, im) in enumerate(exact_coeffs):
            mod = mpmath.sqrt(mp_real(re) ** 2 + mp_real(im) ** 2)
            if mod > 0:
                need = mpmath.log(mod / (k + 1) ** n)
                a = max(a, int(mpmath.ceil(need + mpmath.mpf(10) ** -20)))
    return a


def sample_type_series(rng, a, n, length):
    """Coefficients with |f_k| <= exp(a) (k+1)**n as mpmath complex numbers."""
    A = mpmath.e**a
    out = []
    for k in range(length):
        radius = A * (k + 1) ** n * mpmath.mpf(rng.random())
        angle = 2 * mpmath.pi * mpmath.mpf(rng.random())
        out.append(radius * mpmath.expj(angle))
    return out


def recenter(coeffs, c, scale):
    """Coefficients of ``f(c + scale x)`` for a polynomial f given by its coefficient list."""
    n = len(coeffs)
    out = []
    for k in range(n):
        acc = mpmath.mpc(0)
        for j in range(k, n):
            acc += coeffs[j] * mpmath.binomial(j, k) * c ** (j - k)
        out.append(acc * scale**k)
    return out
