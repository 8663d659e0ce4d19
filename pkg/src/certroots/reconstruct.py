"""Exact rationals from approximations: continued fractions and CRT lattices.

Rationals are :class:`fractions.Fraction` values, which already keep a
reduced form with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
from flint import arb, ctx

from ._balls import arb_exact_fraction
from .errors import BadInput, DependentVectors, NoCandidate
from .numeric import DecimalReal

__all__ = [
    "as_rational",
    "format_rational",
    "cf_convergents",
    "cf_reconstruct",
    "crt_lift",
    "crt_reconstruct",
    "gauss_reduce_2d",
    "fast_pow_mod",
]


def as_rational(y):
    """Coerce ints, Fractions, DecimalReals and decimal/fraction strings."""
    if isinstance(y, DecimalReal):
        return y.to_fraction()
    if isinstance(y, str):
        text = y.strip()
        if "/" not in text:
            try:
                return DecimalReal.coerce(text).to_fraction()
            except BadInput:
                pass
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise BadInput(f"not a rational number: {y!r}") from None
    try:
        return Fraction(y)
    except TypeError:
        raise BadInput(f"not a rational number: {y!r}") from None


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def cf_convergents(y):
    """All convergents of the finite continued fraction of ``y``."""
    y = as_rational(y)
    p_prev, p = 1, math.floor(y)
    q_prev, q = 0, 1
    out = [Fraction(p, q)]
    num, den = y.numerator - p * y.denominator, y.denominator
    while num:
        num, den = den, num
        a = num // den
        num -= a * den
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(Fraction(p, q))
    return out


def _decide(pred):
    """Evaluate a strict ball predicate at rising precision until it is decided."""
    prec = 64
    while True:
        with ctx.workprec(prec):
            verdict = pred()
        if verdict is not None:
            return verdict
        prec *= 2
        if prec > 1 << 20:
            raise ArithmeticError("comparison could not be decided")


def _below_exp(q, h):
    """``q <= exp(h)`` for a rational ``q > 0`` and an integer ``h >= 0``."""
    if h == 0:
        return q <= 1

    def pred():
        diff = arb(h).exp() - arb_exact_fraction(q)
        if diff > 0:
            return True
        if diff < 0:
            return False
        return None

    return _decide(pred)


def _close_enough(delta, h):
    """``|delta| < exp(-2h)/2``."""
    delta = abs(delta)
    if delta == 0:
        return True
    if h == 0:
        return 2 * delta < 1

    def pred():
        diff = arb(-2 * h).exp() / 2 - arb_exact_fraction(delta)
        if diff > 0:
            return True
        if diff < 0:
            return False
        return None

    return _decide(pred)


def cf_reconstruct(y, h):
    """The rational of height at most ``h`` that ``y`` approximates.

    A convergent ``a/b`` is accepted when ``b <= exp(h)``,
    ``|y - a/b| < exp(-2h)/2`` and ``|y - a/b| < 1/(2 b**2)``.  Two
    distinct rationals of height ``h`` are at least ``exp(-2h)`` apart, so
    at most one convergent qualifies.
    """
    if not isinstance(h, int) or h < 0:
        raise BadInput("height must be a nonnegative integer")
    y = as_rational(y)
    for c in cf_convergents(y):
        delta = y - c
        if 2 * abs(delta) * c.denominator**2 >= 1:
            continue
        if _below_exp(c.denominator, h) and _close_enough(delta, h):
            return c
    raise NoCandidate("no convergent has small enough height and error")


def _is_prime(p):
    return p >= 2 and bool(gmpy2.is_prime(p, 50))


def crt_lift(pairs):
    """Incremental CRT: the ``X`` in ``[0, N)`` with ``X = r_p mod p``, and ``N``."""
    X, N = 0, 1
    for r, p in pairs:
        # X + N t = r mod p, t = (r - X) N^-1 mod p
        t = (r - X) * pow(N, -1, p) % p
        X += N * t
        N *= p
    return X, N


def _validate_pairs(pairs):
    seen = set()
    out = []
    for r, p in pairs:
        r, p = int(r), int(p)
        if not _is_prime(p):
            raise BadInput(f"{p} is not a prime")
        if p in seen:
            raise BadInput(f"prime {p} repeated")
        if not 0 <= r < p:
            raise BadInput(f"residue {r} is not reduced modulo {p}")
        seen.add(p)
        out.append((r, p))
    if not out:
        raise BadInput("need at least one residue")
    return out


def crt_reconstruct(pairs, M):
    """Recover ``a/b`` with ``max(|a|, |b|) <= M`` from residues ``a/b mod p``.

    The residues define the lattice of ``(n, m)`` with ``n = x m mod p`` for
    every prime; ``(a, b)`` is its shortest nonzero vector once the product of
    the primes exceeds ``2 M**2``.
    """
    if not isinstance(M, int) or M < 1:
        raise BadInput("height bound must be a positive integer")
    pairs = _validate_pairs(pairs)
    X, N = crt_lift(pairs)
    if N <= 2 * M * M:
        raise BadInput(f"product of primes {N} does not exceed 2*M**2 = {2 * M * M}")
    (a, b), _ = gauss_reduce_2d((X, 1), (N, 0))
    if b < 0:
        a, b = -a, -b
    if b == 0 or math.gcd(b, N) != 1:
        raise NoCandidate("shortest lattice vector has a denominator divisible by one of the primes")
    if max(abs(a), b) > M:
        raise NoCandidate("no rational of the requested height matches the residues")
    return Fraction(a, b)


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def gauss_reduce_2d(v1, v2):
    """Reduced basis of the lattice spanned by ``v1, v2``, shortest vector first."""
    v1 = (int(v1[0]), int(v1[1]))
    v2 = (int(v2[0]), int(v2[1]))
    if v1[0] * v2[1] - v1[1] * v2[0] == 0:
        raise DependentVectors("basis vectors are linearly dependent")
    n1, n2 = _dot(v1, v1), _dot(v2, v2)
    if n1 > n2:
        v1, v2, n1, n2 = v2, v1, n2, n1
    while True:
        # subtract the nearest integer multiple of v1 from v2
        d = _dot(v1, v2)
        q = (2 * d + n1) // (2 * n1)
        v2 = (v2[0] - q * v1[0], v2[1] - q * v1[1])
        n2 = _dot(v2, v2)
        if n2 >= n1:
            return v1, v2
        v1, v2, n1, n2 = v2, v1, n2, n1


def fast_pow_mod(a, e, N):
    """``a**e mod N`` by square-and-multiply on residues below ``N``."""
    if not isinstance(N, int) or N < 2:
        raise BadInput("modulus must be at least 2")
    if not isinstance(e, int) or e < 0 or not isinstance(a, int) or a < 0:
        raise BadInput("base and exponent must be nonnegative integers")
    result = 1 % N
    base = a % N
    while e:
        if e & 1:
            result = result * base % N
        base = base * base % N
        e >>= 1
    return result
