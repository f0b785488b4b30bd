"""Command-line entry point.

Exit codes: 0 success, 1 parse/usage error, 2 domain error, 3 property-check failure.
JSON goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import DomainError, ExprSyntaxError, SignProblemError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not v > 0 or v != v or v == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {s}")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {s}")
    return v


def _seed(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _emit(args, value) -> None:
    from .textio import format_text, to_json_obj

    if args.format == "text":
        print(format_text(value))
    else:
        print(json.dumps(to_json_obj(value)))


def _emit_report(report: dict) -> None:
    print(json.dumps(report, indent=2))


# -- subcommands ---------------------------------------------------------------


def cmd_star(args) -> int:
    from .textio import parse_poly
    from .weyl import moyal_star

    _emit(args, moyal_star(parse_poly(args.f, args.r), parse_poly(args.g, args.r)))
    return EXIT_OK


def cmd_b(args) -> int:
    from .hochschild import hochschild_b
    from .textio import parse_chain

    _emit(args, hochschild_b(parse_chain(args.chain, args.r), args.product))
    return EXIT_OK


def cmd_hkr(args) -> int:
    from .hkr import quantum_hkr
    from .textio import parse_chain

    _emit(args, quantum_hkr(parse_chain(args.chain, args.r)))
    return EXIT_OK


def cmd_wick(args) -> int:
    from .correlator import Vertex, wick_correlator
    from .textio import parse_poly, parse_time

    vertices = []
    for item in args.insertions:
        expr, sep, t = item.rpartition("@")
        if not sep:
            raise ExprSyntaxError("expected expr@time", len(item), item)
        vertices.append(Vertex(parse_time(t), parse_poly(expr, args.r)))
    _emit(args, wick_correlator(vertices))
    return EXIT_OK


def _check_case(job):
    from .hkr import chain_map_check
    from .randgen import random_monomial_chain
    from .textio import to_json_obj

    rank, m, max_degree, case_seed = job
    chain = random_monomial_chain(random.Random(case_seed), rank, m, max_degree)
    rep = chain_map_check(chain)
    if rep.equal:
        return None
    return {"chain": to_json_obj(chain), "lhs": to_json_obj(rep.lhs), "rhs": to_json_obj(rep.rhs)}


def cmd_hkr_check(args) -> int:
    rng = random.Random(args.seed)
    jobs = [(args.r, rng.randint(1, args.max_m), args.max_degree, rng.getrandbits(64)) for _ in range(args.cases)]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_check_case, jobs))
    else:
        results = [_check_case(j) for j in jobs]
    failures = [dict(case=i, **f) for i, f in enumerate(results) if f is not None]
    _emit_report(
        {
            "check": "quantum HKR chain map: sigma(b c) == i*h*Delta(sigma(c))",
            "rank": args.r,
            "max_m": args.max_m,
            "max_degree": args.max_degree,
            "cases": args.cases,
            "seed": args.seed,
            "passed": args.cases - len(failures),
            "failed": len(failures),
            "failures": failures,
        }
    )
    return EXIT_CHECK if failures else EXIT_OK


def cmd_partition(args) -> int:
    from .montecarlo import MCConfig, estimate_partition, partition_exact, partition_limit

    exact = partition_exact(args.sigma2, args.hbar, args.modes, args.rank)
    report = {
        "sigma2": args.sigma2,
        "hbar": args.hbar,
        "modes": args.modes,
        "rank": args.rank,
        "exact_truncated": exact,
        "exact_sinh_limit": partition_limit(args.sigma2, args.hbar, args.rank),
    }
    if not args.exact_only:
        cfg = MCConfig(args.modes, args.sigma2, args.hbar, args.samples, args.seed, args.rank)
        est = estimate_partition(cfg, threads=args.threads)
        report["mc_estimate"] = est.to_json(cfg)
        report["stderr"] = {"re": est.stderr_re, "im": est.stderr_im}
        report["mc_within_4_stderr"] = est.within(complex(exact, 0.0))
    _emit_report(report)
    return EXIT_OK


def cmd_mc_propagator(args) -> int:
    from .montecarlo import MCConfig, estimate_correlator, propagator_oracle

    kind = args.kind.upper()
    a, b = {"XP": ("X", "P"), "XX": ("X", "X"), "PP": ("P", "P")}[kind]
    cfg = MCConfig(args.modes, args.sigma2, args.hbar, args.samples, args.seed, args.rank)
    est = estimate_correlator([(a, 1, args.t), (b, 1, args.s)], cfg, threads=args.threads)
    oracle = propagator_oracle(args.sigma2, args.hbar, args.modes, kind, args.t, args.s)
    report = est.to_json(cfg)
    report.update(
        {
            "kind": kind,
            "t": args.t,
            "s": args.s,
            "oracle_re": oracle.real,
            "oracle_im": oracle.imag,
            "within_4_stderr": est.within(oracle),
        }
    )
    _emit_report(report)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all(seed=args.seed, quick=args.quick, log=sys.stderr)
    ok = all(r["passed"] for r in results)
    _emit_report({"passed": ok, "checks": results})
    return EXIT_OK if ok else EXIT_CHECK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker cap; results do not depend on it")

    ranked = _Parser(add_help=False)
    ranked.add_argument("--r", type=_positive_int, default=1, help="phase-space rank")

    p = _Parser(prog="tqm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("star", parents=[common, ranked], help="Moyal product f * g")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("b", parents=[common, ranked], help="Hochschild differential of a chain 'f0 | f1 | ...'")
    s.add_argument("chain")
    s.add_argument("--product", choices=("moyal", "commutative"), default="moyal")
    s.set_defaults(func=cmd_b)

    s = sub.add_parser("hkr", parents=[common, ranked], help="quantum HKR map of a chain")
    s.add_argument("chain")
    s.set_defaults(func=cmd_hkr)

    s = sub.add_parser("hkr-check", parents=[common, ranked], help="randomised chain-map check")
    s.add_argument("--max-m", type=_positive_int, default=2)
    s.add_argument("--max-degree", type=_positive_int, default=2)
    s.add_argument("--cases", type=_positive_int, default=25)
    s.add_argument("--seed", type=_seed, default=0)
    s.set_defaults(func=cmd_hkr_check)

    s = sub.add_parser("wick", parents=[common, ranked], help="correlator of observables 'expr@time'")
    s.add_argument("insertions", nargs="+")
    s.set_defaults(func=cmd_wick)

    mc = _Parser(add_help=False)
    mc.add_argument("--sigma2", type=_positive_float, required=True)
    mc.add_argument("--hbar", type=_positive_float, default=1.0)
    mc.add_argument("--modes", type=_positive_int, default=16)
    mc.add_argument("--samples", type=_positive_int, default=1_000_000)
    mc.add_argument("--seed", type=_seed, default=0)
    mc.add_argument("--rank", type=_positive_int, default=1)

    s = sub.add_parser("partition", parents=[common, mc], help="partition function: exact and Monte Carlo")
    s.add_argument("--exact-only", action="store_true")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("mc-propagator", parents=[common, mc], help="Monte Carlo two-point function vs exact oracle")
    s.add_argument("--kind", choices=("XP", "XX", "PP", "xp", "xx", "pp"), default="XP")
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--s", type=float, default=0.25)
    s.set_defaults(func=cmd_mc_propagator)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    s.add_argument("--seed", type=_seed, default=20240601)
    s.add_argument("--quick", action="store_true", help="smaller case counts")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(str(e).rstrip(), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    try:
        return args.func(args)
    except ExprSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SignProblemError as e:
        print(f"sign problem: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
