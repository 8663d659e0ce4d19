"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Tolerances are the ones promised by the library contracts; nothing is
loosened here.  Instance families are generated from fixed seeds.
"""

import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from certroots import Config, DecimalComplex, DecimalReal
from certroots.polyroot import (
    ApproxDivisor,
    MonicPolynomial,
    conditioning_budget,
    divisor_distance,
    exclusion_radius,
    newton_power_sums,
    weyl_roots,
)
from certroots.reconstruct import cf_convergents, cf_reconstruct, crt_reconstruct
from certroots.seriesroot import (
    PolynomialOracle,
    SeriesCertificate,
    newton_polygon,
    polygon_zero_count,
    refocus_certificate,
    remainder_bound,
    series_count_bound,
    series_zeros,
    truncation_order,
)

from corpus import (
    brute_roots,
    mp_bottleneck,
    mp_complex,
    mp_real,
    random_point,
    recenter,
    root_corpus,
    sample_type_series,
    separated_points,
    series_zero_instance,
    true_distance,
    type_exponent,
)

CORPUS = root_corpus(seed=2024, size=200)


def test_criterion_01_polynomial_roots(acceptance):
    start = time.time()
    failures = []
    for i, (roots, P) in enumerate(CORPUS):
        for m_Z in (5, 10, 20):
            D = weyl_roots(P, m_Z)
            dist = divisor_distance(D, ApproxDivisor(tuple(roots), m_Z), m_Z).to_fraction()
            if len(D) != P.d or dist > Fraction(1, 10**m_Z):
                failures.append((i, m_Z))
    elapsed = time.time() - start
    ok = not failures and elapsed < 600
    acceptance(1, ok, f"{len(CORPUS)} polynomials x 3 accuracies, {len(failures)} failures, {elapsed:.1f}s (< 600s)")
    assert ok, failures[:10]


def test_criterion_02_exclusion_sandwich(acceptance):
    rng = random.Random(77)
    bad = 0
    for roots, P in CORPUS:
        z = random_point(rng, 12, 2)
        rho = exclusion_radius(P, z).to_fraction()
        r2 = true_distance(z, roots)
        if not (rho * rho <= r2 <= (Fraction(101, 100) * rho) ** 2):
            bad += 1
    acceptance(2, bad == 0, f"{len(CORPUS)} (P, z) pairs, {bad} violations of rho <= r <= 1.01 rho")
    assert bad == 0


def test_criterion_03_buckholtz(acceptance):
    bad = 0
    for roots, P in CORPUS:
        d = P.d
        R2 = max(z.abs2().to_fraction() for z in roots)
        sums = newton_power_sums(P, d, "positive", 20)
        # compare (|nu_v|/d)**(1/v) with R and R/5 through exact 2v-th powers
        vals = [(s.abs2().to_fraction() / (d * d), v) for v, s in enumerate(sums, start=1)]
        upper_ok = all(q <= R2**v for q, v in vals)
        lower_ok = any(q * 25**v >= R2**v for q, v in vals)
        if not (upper_ok and lower_ok):
            bad += 1
    acceptance(3, bad == 0, f"{len(CORPUS)} polynomials, {bad} violations of R/5 <= max_v (|nu_v|/d)^(1/v) <= R")
    assert bad == 0


def _polygon_instance(rng):
    d = rng.randint(1, 6)
    roots = []
    while len(roots) < d:
        scale = rng.choice([-2, -1, 0, 1])
        z = random_point(rng, Fraction(99, 10), 1)
        z = DecimalComplex(z.m_re, z.e_re + scale, z.m_im, z.e_im + scale)
        if not z.is_zero():
            roots.append(z)
    P = MonicPolynomial.from_roots(roots)
    return roots, P.all_coeffs()


def test_criterion_04_newton_polygon(acceptance):
    rng = random.Random(404)
    alphas = [DecimalReal(k, -1) for k in range(-60, 61, 5)]
    checked = wrong = boundary_bad = p4 = 0
    with mpmath.workdps(50):
        for _ in range(100):
            roots, coeffs = _polygon_instance(rng)
            poly = newton_polygon(coeffs, 12)
            mods = [abs(mp_complex(z)) for z in roots]
            cs = [mp_complex(c) for c in coeffs]
            for alpha in alphas:
                res = polygon_zero_count(poly, alpha)
                if res is None:
                    continue
                checked += 1
                radius = mpmath.exp(mp_real(alpha))
                if res.count != sum(1 for m in mods if m < radius):
                    wrong += 1
                if res.margin == "P4":
                    p4 += 1
                    # the polynomial is its own truncation, so the remainder slack is zero
                    floor = abs(cs[res.count]) * radius**res.count / 3
                    for j in range(16):
                        z = radius * mpmath.expj(2 * mpmath.pi * j / 16)
                        if abs(mpmath.polyval(cs[::-1], z)) < floor:
                            boundary_bad += 1
    ok = wrong == 0 and boundary_bad == 0 and checked > 0
    acceptance(
        4,
        ok,
        f"{checked} admissible alphas, {wrong} wrong counts; {p4} P4 cases, {boundary_bad} boundary violations",
    )
    assert ok


def test_criterion_05_series_zeros(acceptance):
    rng = random.Random(505)
    cfg = Config(big_k=1)
    bad = []
    start = time.time()
    for i in range(50):
        zs = series_zero_instance(rng)
        oracle = PolynomialOracle.from_zeros(zs)
        a = type_exponent([oracle.exact(k) for k in range(len(zs) + 1)], 1)
        cert = SeriesCertificate(a, 1, 1, 2)
        for m in (5, 10):
            r_prime, J, D = series_zeros(oracle, cert, m, cfg)
            dist = divisor_distance(D, ApproxDivisor(tuple(zs), m), m).to_fraction()
            close = abs(r_prime.to_fraction() - Fraction(1, 2)) <= Fraction(1, 10**m)
            counted = J <= series_count_bound(cert, r_prime.to_fraction(), cfg)
            if J != len(zs) or dist > Fraction(1, 10**m) or not close or not counted:
                bad.append((i, m))
    main_time = time.time() - start
    # the full constant K = 8 once, on f = 1
    start = time.time()
    r_prime, J, D = series_zeros(PolynomialOracle(["1"]), SeriesCertificate(1, 1, 1, 2), 5)
    smoke_ok = J == 0 and len(D) == 0 and abs(r_prime.to_fraction() - Fraction(1, 2)) <= Fraction(1, 10**5)
    ok = not bad and smoke_ok
    acceptance(
        5,
        ok,
        f"50 series x m in {{5, 10}} at big_k=1: {len(bad)} failures ({main_time:.0f}s); "
        f"big_k=8 smoke on f=1 {'ok' if smoke_ok else 'failed'} ({time.time() - start:.0f}s)",
    )
    assert ok, bad


def test_criterion_06_remainder_and_refocus(acceptance):
    rng = random.Random(606)
    tail_bad = refocus_bad = 0
    with mpmath.workdps(40):
        for _ in range(100):
            a, n = rng.choice([0, 1]), rng.choice([1, 2, 3])
            u = rng.choice([0, 10, 40, 100, 200])
            coeffs = sample_type_series(rng, a, n, u + 301)
            for r in (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
                B = mp_real(remainder_bound(a, n, u, r))
                rm = mp_real(r)
                if mpmath.fsum(abs(coeffs[k]) * rm**k for k in range(u, u + 301)) > B:
                    tail_bad += 1
            poly = coeffs[:41]
            for _ in range(20):
                c = random_point(rng, Fraction(9, 10), 2)
                a2, n2 = refocus_certificate(a, n, c)
                cm = mp_complex(c)
                A2 = mpmath.e**a2
                for k, Fk in enumerate(recenter(poly, cm, 1 - abs(cm))):
                    if abs(Fk) > A2 * (k + 1) ** n2:
                        refocus_bad += 1
                        break
    ok = tail_bad == 0 and refocus_bad == 0
    acceptance(6, ok, f"100 series: {tail_bad} tail violations, {refocus_bad} recentering violations (20 centers each)")
    assert ok


def test_criterion_07_reconstruction(acceptance):
    cf_bad = law_bad = total = 0
    with mpmath.workdps(30):
        for b in range(1, 101):
            for a in range(-100, 101):
                q = Fraction(a, b)
                h = int(mpmath.ceil(mpmath.log(max(abs(a), b))))
                gap = mpmath.exp(-2 * h) / 4
                k = int(mpmath.ceil(-mpmath.log10(gap))) + 1
                step = Fraction(1, 10**k)
                base = Fraction(round(q * 10**k), 10**k)
                # decimals around q, all within exp(-2h)/4
                wiggle = int(mpmath.floor(gap * 10**k)) - 1
                for off in {0, wiggle, -wiggle}:
                    y = base + off * step
                    if abs(y - q) >= Fraction(mpmath.nstr(gap, 25, min_fixed=-50, max_fixed=50)):
                        continue
                    total += 1
                    if cf_reconstruct(y, h) != q:
                        cf_bad += 1
                    if 2 * abs(q - y) * q.denominator**2 < 1 and q not in cf_convergents(y):
                        law_bad += 1
    crt_bad = crt_total = 0
    for b in range(1, 21):
        for a in range(-20, 21):
            q = Fraction(a, b)
            pairs = [(q.numerator * pow(q.denominator, -1, p) % p, p) for p in (101, 103)]
            crt_total += 1
            if crt_reconstruct(pairs, 20) != q:
                crt_bad += 1
    ok = cf_bad == 0 and law_bad == 0 and crt_bad == 0
    acceptance(
        7,
        ok,
        f"continued fractions {total - cf_bad}/{total}, convergent law violations {law_bad}, CRT {crt_total - crt_bad}/{crt_total}",
    )
    assert ok


def test_criterion_08_conditioning(acceptance):
    rng = random.Random(808)
    units = [DecimalComplex(1), DecimalComplex(-1), DecimalComplex(0, 0, 1, 0), DecimalComplex(3, -1, -4, -1),
             DecimalComplex(-6, -1, 8, -1)]
    bad = 0
    for _ in range(50):
        d = rng.randint(1, 4)
        m_Z = rng.choice([2, 4, 6])
        roots = separated_points(rng, d, 10, Fraction(1, 100))
        P = MonicPolynomial.from_roots(roots)
        eps, log_delta, _ = conditioning_budget(d, P.bound(), m_Z)
        moved = MonicPolynomial(
            tuple(c + rng.choice(units) * DecimalComplex(1, log_delta) for c in P.coeffs)
        )
        dps = -log_delta + 40
        found = brute_roots(moved.coeffs, dps=dps)
        with mpmath.workdps(dps):
            dist = mp_bottleneck(found, [mp_complex(z) for z in roots])
            if dist > mp_real(eps):
                bad += 1
    acceptance(8, bad == 0, f"50 instances of degree <= 4 at theta=8, {bad} moved farther than epsilon")
    assert bad == 0


def _degree_100():
    rng = random.Random(1)
    cs = []
    for _ in range(100):
        while True:
            x, y = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
            if x * x + y * y <= 10**6:
                break
        cs.append(DecimalComplex(x, -3, y, -3))
    return MonicPolynomial(tuple(cs))


def test_criterion_09_performance(acceptance):
    P = _degree_100()
    start = time.time()
    D50 = weyl_roots(P, 50)
    t50 = time.time() - start
    start = time.time()
    D100 = weyl_roots(P, 100)
    t100 = time.time() - start
    close = divisor_distance(D50, D100, 50).to_fraction() <= 2 * Fraction(1, 10**50)
    ok = t50 < 60 and t100 / t50 < 6 and len(D50) == 100 and close
    acceptance(9, ok, f"d=100: m_Z=50 in {t50:.1f}s (< 60s), m_Z=100 in {t100:.1f}s, ratio {t100 / t50:.2f} (< 6)")
    assert ok


CLI_CASES = [
    (["sqrt", "--value", "2e0", "--digits", "5"], ""),
    (["sqrt", "--value", "123456789e-3", "--digits", "40"], ""),
    (["nthroot", "--value", "2", "--order", "3", "--digits", "20"], ""),
    (["poly-roots", "--digits", "10"], "poly 2\n-1e0 0e0\n0e0 0e0\n"),
    (["poly-roots", "--digits", "20"], "poly 4\n3e-1 1e0\n-2e0 0e0\n0e0 -5e-1\n1e0 1e0\n"),
    (["exclusion", "--at", "3e0 1e-1"], "poly 3\n2e0\n-1e0\n-2e0\n"),
    (["newton-polygon", "--digits", "6", "--alpha=-25e-1"], "1e0\n-102e0\n200e0\n"),
    (["series-count"], "series 1 1 1 2\ncoeffs 1\n1e0\n"),
    (["series-roots", "--digits", "5", "--big-k", "1"], "series 1 1 1 2\ncoeffs 2\n1e0\n-4e0\n"),
    (["cf", "--value", "3333e-4", "--height", "2"], ""),
    (["crt", "--max", "7", "--pairs", "9:11,7:13"], ""),
    (["powmod", "--base", "3", "--exp", "1000000", "--mod", "1000000007"], ""),
    (["crt", "--max", "99", "--pairs", "9:11,7:13"], ""),
]


def test_criterion_10_cli_determinism(acceptance):
    env = {k: v for k, v in os.environ.items() if not k.startswith("PYTHONHASHSEED")}
    mismatched = []
    for argv, payload in CLI_CASES:
        outs = []
        for seed in ("1", "2"):
            proc = subprocess.run(
                [sys.executable, "-m", "certroots", *argv],
                input=payload.encode(),
                capture_output=True,
                env={**env, "PYTHONHASHSEED": seed},
                timeout=300,
            )
            outs.append((proc.returncode, proc.stdout, proc.stderr))
        if outs[0] != outs[1]:
            mismatched.append(argv[0])
    ok = not mismatched
    acceptance(10, ok, f"{len(CLI_CASES)} invocations run twice in fresh processes, {len(mismatched)} differ")
    assert ok, mismatched
