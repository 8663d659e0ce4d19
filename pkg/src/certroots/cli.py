"""Command-line front end.

Exit status 0 means success, 1 a certified routine refused (the error name is
the first line on stderr), 2 malformed input or flags.
"""

from __future__ import annotations

import argparse
import sys

from .dichotomy import nth_root_real, sqrt_real
from .errors import CertRootsError, InsufficientOracle, MalformedInput
from .numeric import Config, DecimalReal, parse_complex, parse_real
from .polyroot import MonicPolynomial, exclusion_radius, weyl_roots
from .reconstruct import cf_reconstruct, crt_reconstruct, fast_pow_mod, format_rational
from .seriesroot import (
    ListOracle,
    newton_polygon,
    parse_series,
    polygon_zero_count,
    series_count_bound,
    series_zeros,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _nonneg(text):
    v = _int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _decimal(text):
    try:
        return parse_real(text)
    except MalformedInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex(text):
    try:
        return parse_complex(text.replace(",", " "))
    except MalformedInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser():
    p = _Parser(prog="certroots", description="Certified roots, series zeros and rational reconstruction.")
    p.add_argument("--theta", type=_decimal, help="override the conditioning constant")
    p.add_argument("--big-k", type=_decimal, help="override the series truncation constant")
    p.add_argument("--buckholtz-m", type=_int, help="override the exclusion-function power")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, payload=False, digits=True):
        sp = sub.add_parser(name, help=help_text)
        if digits:
            sp.add_argument("--digits", type=_nonneg, required=True, help="target accuracy 10**-digits")
        if payload:
            sp.add_argument("--input", help="payload file (default: stdin)")
        # Config overrides are accepted after the subcommand too
        sp.add_argument("--theta", type=_decimal, default=argparse.SUPPRESS)
        sp.add_argument("--big-k", type=_decimal, default=argparse.SUPPRESS)
        sp.add_argument("--buckholtz-m", type=_int, default=argparse.SUPPRESS)
        return sp

    sp = add("sqrt", "square root of a nonnegative decimal")
    sp.add_argument("--value", type=_decimal, required=True)
    sp = add("nthroot", "v-th root of a nonnegative decimal")
    sp.add_argument("--value", type=_decimal, required=True)
    sp.add_argument("--order", type=_int, required=True)
    add("poly-roots", "all roots of a monic polynomial", payload=True)
    sp = add("exclusion", "lower bound for the distance to the nearest root", payload=True, digits=False)
    sp.add_argument("--at", type=_complex, required=True, help="probe point, e.g. '1e0 0e0'")
    sp = add("newton-polygon", "Newton polygon of a coefficient list", payload=True)
    sp.add_argument("--alpha", type=_decimal, help="also count zeros in D(0, exp(alpha))")
    sp = add("series-count", "upper bound on the zero count of a certified series", payload=True, digits=False)
    sp.add_argument("--radius", type=_decimal, help="disk radius (default 1 - 1/o)")
    add("series-roots", "zeros of a certified series near the disk of radius 1 - 1/o", payload=True)
    sp = add("cf", "rational of bounded height from an approximation", digits=False)
    sp.add_argument("--value", required=True, help="decimal or a/b")
    sp.add_argument("--height", type=_nonneg, required=True, help="height bound h, natural-log units")
    sp = add("crt", "rational of bounded size from residues modulo primes", digits=False)
    sp.add_argument("--max", type=_int, required=True, help="bound M on |numerator| and denominator")
    sp.add_argument("--pairs", required=True, help="comma-separated residue:prime pairs")
    sp = add("powmod", "modular exponentiation", digits=False)
    sp.add_argument("--base", type=_nonneg, required=True)
    sp.add_argument("--exp", type=_nonneg, required=True)
    sp.add_argument("--mod", type=_int, required=True)
    return p


def _config(args):
    kwargs = {}
    if args.theta is not None:
        kwargs["theta"] = args.theta.to_fraction()
    if args.big_k is not None:
        kwargs["big_k"] = args.big_k.to_fraction()
    if args.buckholtz_m is not None:
        kwargs["buckholtz_m"] = args.buckholtz_m
    return Config(**kwargs)


def _payload(args, stdin):
    if getattr(args, "input", None):
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {args.input}: {exc.strerror}") from None
    return stdin.read()


def _coefficient_list(text):
    """Coefficients from a series file, or bare literals one per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if lines and lines[0].startswith("series"):
        return parse_series(text)[1]
    return [parse_complex(ln) for ln in lines]


def _run(args, stdin):
    cfg = _config(args)
    cmd = args.command
    out = []
    if cmd == "sqrt":
        out.append(str(sqrt_real(args.value, args.digits)))
    elif cmd == "nthroot":
        out.append(str(nth_root_real(args.value, args.order, args.digits)))
    elif cmd == "poly-roots":
        P = MonicPolynomial.from_text(_payload(args, stdin))
        out.extend(str(z) for z in weyl_roots(P, args.digits, cfg).sorted_points())
    elif cmd == "exclusion":
        P = MonicPolynomial.from_text(_payload(args, stdin))
        out.append(str(exclusion_radius(P, args.at, cfg)))
    elif cmd == "newton-polygon":
        poly = newton_polygon(_coefficient_list(_payload(args, stdin)), args.digits)
        out.extend(f"vertex {k} {h}" for k, h in poly.vertices)
        out.extend(f"slope {s}" for s in poly.slopes)
        if args.alpha is not None:
            res = polygon_zero_count(poly, args.alpha)
            out.append("not-admissible" if res is None else f"count {res.count} {res.margin}")
    elif cmd == "series-count":
        cert, _ = parse_series(_payload(args, stdin))
        r = args.radius.to_fraction() if args.radius is not None else cert.r
        out.append(str(series_count_bound(cert, r, cfg)))
    elif cmd == "series-roots":
        cert, coeffs = parse_series(_payload(args, stdin))
        r_prime, count, divisor = series_zeros(ListOracle(coeffs), cert, args.digits, cfg)
        out.append(f"r_prime {r_prime}")
        out.append(f"count {count}")
        out.extend(str(z) for z in divisor.sorted_points())
    elif cmd == "cf":
        out.append(format_rational(cf_reconstruct(args.value, args.height)))
    elif cmd == "crt":
        pairs = []
        for item in args.pairs.split(","):
            try:
                r, p = item.split(":")
                pairs.append((int(r), int(p)))
            except ValueError:
                raise MalformedInput(f"bad residue pair {item!r}; expected r:p") from None
        out.append(format_rational(crt_reconstruct(pairs, args.max)))
    elif cmd == "powmod":
        out.append(str(fast_pow_mod(args.base, args.exp, args.mod)))
    return out


def main(argv=None, stdin=None, stdout=None, stderr=None):
    """Run one invocation and return its exit status."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        lines = _run(args, stdin)
    except _UsageError as exc:
        stderr.write(f"MalformedInput\n{exc}\n")
        return 2
    except MalformedInput as exc:
        stderr.write(f"{exc.code}\n{exc}\n")
        return 2
    except InsufficientOracle as exc:
        stderr.write(f"{exc.code}\n{exc}\n")
        if exc.required is not None:
            stderr.write(f"required u = {exc.required}\n")
        return 1
    except CertRootsError as exc:
        stderr.write(f"{exc.code}\n{exc}\n")
        return 1
    for line in lines:
        stdout.write(line + "\n")
    return 0


def _entry():
    sys.exit(main())


if __name__ == "__main__":
    _entry()
