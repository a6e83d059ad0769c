"""Command-line front end.

Every decider, oracle routine and experiment is reachable from a
subcommand; input matrices, polynomial families and grid sets use the
same literal syntax as the library parsers.  Reports print as aligned
key/value text by default, as canonical JSON with --json (sorted keys,
so re-serializing parsed output is byte-identical) and as CSV with
--csv PATH where the operation produces a tabular report.

Exit codes: 0 success, 1 decision-contract violation (an oracle check
disagreed with a decider), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .deciders import (
    check_rokhlin_sufficient,
    decide_commuting_joint,
    decide_element_mixing,
    decide_joint_polyfamilies,
    decide_joint_powers,
    decide_polyfamily_mixing,
    decide_relative_joint_unipotent,
    witness_same_modulus_triple,
)
from .errors import TorusMixError
from .families import parse_family
from .intmat import Mat2Z, classify, parse_matrix
from .lab import (
    conjecture_scan,
    find_unipotent,
    krengel_orthogonal,
    rokhlin_report,
)
from .oracle import QC, GridSet, TrigPoly, char_correlation, lattice_correlation
from .polynomials import parse_poly
from .scenarios import run_scenarios

DEFAULT_Q_ENV = "TORUSMIX_Q"


def _default_q() -> int:
    return int(os.environ.get(DEFAULT_Q_ENV, "4096"))


def _parse_vec(text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"not an integer pair: {text!r}")
    return (int(parts[0]), int(parts[1]))


def _parse_trig(text: str) -> TrigPoly:
    """Frequency list "x1,x2;x1,x2;..." with unit coefficients."""
    coeffs = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        x = _parse_vec(chunk)
        coeffs[x] = coeffs.get(x, QC.of(0)) + QC.of(1)
    return TrigPoly(coeffs)


def _parse_n_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return range(1, int(text) + 1)


def _emit(args, payload: dict, csv_text: str | None = None) -> None:
    if getattr(args, "csv", None):
        if csv_text is None:
            raise ValueError("this subcommand has no CSV form")
        with open(args.csv, "w") as fh:
            fh.write(csv_text)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return
    _print_human(payload)


def _print_human(payload, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                print(f"{pad}{key}:")
                _print_human(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _print_human(value, indent)
                print()
            else:
                print(f"{pad}{value}")
    else:
        print(f"{pad}{payload}")


def _cmd_classify(args) -> int:
    T = parse_matrix(args.matrix)
    cls = classify(T)
    payload = {"kind": cls.kind}
    if cls.is_hyperbolic or cls.is_unipotent:
        payload["sign"] = cls.sign
    if cls.is_finite_order:
        payload["order"] = cls.order
    _emit(args, payload)
    return 0


def _cmd_decide_mixing(args) -> int:
    text = args.input
    try:
        T = parse_matrix(text)
        verdict = decide_element_mixing(T)
    except ValueError:
        verdict = decide_polyfamily_mixing(parse_family(text))
    _emit(args, verdict.to_dict())
    return 0


def _cmd_decide_joint(args) -> int:
    chosen = [
        name
        for name, val in (
            ("powers", args.powers),
            ("families", args.families),
            ("commuting", args.commuting),
        )
        if val
    ]
    if len(chosen) != 1:
        raise ValueError("give exactly one of --powers, --families, --commuting")
    if args.powers:
        verdict = decide_joint_powers([parse_matrix(m) for m in args.powers])
    elif args.families:
        verdict = decide_joint_polyfamilies([parse_family(f) for f in args.families])
    else:
        verdict = decide_commuting_joint([parse_matrix(m) for m in args.commuting])
    _emit(args, verdict.to_dict())
    return 0


def _cmd_decide_relative(args) -> int:
    if len(args.U) != len(args.a):
        raise ValueError("need one --a per --U")
    verdict = decide_relative_joint_unipotent(
        [parse_matrix(m) for m in args.U], [parse_poly(p) for p in args.a]
    )
    _emit(args, verdict.to_dict())
    return 0


def _cmd_rokhlin_check(args) -> int:
    if args.report:
        if not args.family:
            raise ValueError("--report requires --family")
        report = rokhlin_report(
            parse_family(args.family),
            [parse_poly(p) for p in args.a],
            _parse_n_range(args.n),
        )
        _emit(args, report.to_dict(), report.to_csv())
        return 0
    if len(args.T) != len(args.a):
        raise ValueError("need one --a per --T")
    verdict = check_rokhlin_sufficient(
        [parse_matrix(m) for m in args.T], [parse_poly(p) for p in args.a]
    )
    _emit(args, verdict.to_dict())
    return 0


def _cmd_witness_triple(args) -> int:
    Ts = [parse_matrix(m) for m in args.matrices]
    witness = witness_same_modulus_triple(Ts)
    _emit(args, {"witness": [list(x) for x in witness]})
    return 0


def _cmd_correlate(args) -> int:
    xs = [_parse_vec(x) for x in args.x]
    Ms = [parse_matrix(m) for m in args.M]
    value = char_correlation(xs, _parse_vec(args.y), Ms)
    _emit(args, {"correlation": value})
    return 0


def _cmd_estimate(args) -> int:
    Gs = [GridSet.parse(g) for g in args.G]
    Ms = [parse_matrix(m) for m in args.M]
    est, bound = lattice_correlation(Gs, Ms, args.Q)
    _emit(
        args,
        {
            "estimate": str(est),
            "estimate_float": float(est),
            "error_bound": bound,
            "Q": args.Q,
        },
    )
    return 0


def _cmd_scan_conjecture(args) -> int:
    report = conjecture_scan(
        parse_matrix(args.T),
        parse_matrix(args.S),
        GridSet.parse(args.rect),
        max(_parse_n_range(args.n)),
        args.Q,
    )
    _emit(args, report.to_dict(), report.to_csv())
    return 0


def _cmd_cesaro_scan(args) -> int:
    """Cesaro averages (1/N) sum_{n<=N} |mu(A & F(n)^{-1}B) - mu(A)mu(B)|."""
    F = parse_family(args.family)
    A = GridSet.parse(args.A)
    B = GridSet.parse(args.B)
    target = A.measure * B.measure
    rows = []
    total = 0.0
    ns = _parse_n_range(args.n)
    for n in ns:
        est, bound = lattice_correlation([A, B], [F(n)], args.Q)
        total += abs(float(est - target))
        rows.append((n, total / (n - ns.start + 1), bound))
    csv_lines = ["# torusmix-report v1", "n,cesaro_average,error_bound"]
    csv_lines.extend(f"{n},{avg:.12g},{bound:.6g}" for n, avg, bound in rows)
    payload = {
        "target": str(target),
        "rows": [
            {"n": n, "cesaro_average": avg, "error_bound": bound}
            for n, avg, bound in rows
        ],
    }
    _emit(args, payload, "\n".join(csv_lines) + "\n")
    return 0


def _cmd_krengel(args) -> int:
    cert = krengel_orthogonal(_parse_trig(args.f), parse_matrix(args.T))
    _emit(args, cert.to_dict())
    return 0


def _cmd_find_unipotent(args) -> int:
    word = find_unipotent([parse_matrix(m) for m in args.gen], args.L)
    if word is None:
        _emit(args, {"result": f"NoneUpTo({args.L})"})
    else:
        _emit(args, {"word": word})
    return 0


def _cmd_scenarios(args) -> int:
    results = run_scenarios(args.filter)
    payload = {"results": [r.to_dict() for r in results]}
    payload["all_ok"] = all(r.ok for r in results)
    _emit(args, payload)
    return 0 if payload["all_ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusmix",
        description="Mixing deciders and correlation oracles for SL(2,Z) "
        "toral automorphism sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit canonical JSON")
        p.add_argument("--csv", metavar="PATH", help="write CSV report to PATH")
        p.set_defaults(fn=fn)
        return p

    p = add("classify", _cmd_classify, "trace trichotomy of one matrix")
    p.add_argument("matrix")

    p = add("decide-mixing", _cmd_decide_mixing, "mixing of T^n or a family F(n)")
    p.add_argument("input", help='matrix "[[a,b],[c,d]]" or family with entries in n')

    p = add("decide-joint", _cmd_decide_joint, "joint mixing deciders")
    p.add_argument("--powers", nargs="+", metavar="M")
    p.add_argument("--families", nargs="+", metavar="F")
    p.add_argument("--commuting", nargs="+", metavar="M")

    p = add("decide-relative", _cmd_decide_relative, "relative joint mixing")
    p.add_argument("--U", action="append", required=True, metavar="M")
    p.add_argument("--a", action="append", required=True, metavar="POLY")

    p = add("rokhlin-check", _cmd_rokhlin_check, "divergence-sufficient check")
    p.add_argument("--T", action="append", default=[], metavar="M")
    p.add_argument("--a", action="append", default=[], metavar="POLY")
    p.add_argument("--report", action="store_true", help="norm/eigenvalue report")
    p.add_argument("--family", metavar="F")
    p.add_argument("--n", default="1..12", metavar="RANGE")

    p = add("witness-triple", _cmd_witness_triple, "shared-modulus cancellation")
    p.add_argument("matrices", nargs="+")

    p = add("correlate", _cmd_correlate, "exact character correlation")
    p.add_argument("--x", action="append", required=True, metavar="X1,X2")
    p.add_argument("--y", required=True, metavar="Y1,Y2")
    p.add_argument("--M", action="append", required=True, metavar="MATRIX")

    p = add("estimate", _cmd_estimate, "lattice measure-correlation estimate")
    p.add_argument("--G", action="append", required=True, metavar="GRIDSET")
    p.add_argument("--M", action="append", default=[], metavar="MATRIX")
    p.add_argument("--Q", type=int, default=_default_q())

    p = add("scan-conjecture", _cmd_scan_conjecture, "recurrence scan over n")
    p.add_argument("--T", required=True)
    p.add_argument("--S", required=True)
    p.add_argument("--rect", required=True, metavar="GRIDSET")
    p.add_argument("--Q", type=int, default=_default_q())
    p.add_argument("--n", default="1..6", metavar="RANGE")

    p = add("cesaro-scan", _cmd_cesaro_scan, "Cesaro correlation-decay averages")
    p.add_argument("--family", required=True, metavar="F")
    p.add_argument("--A", required=True, metavar="GRIDSET")
    p.add_argument("--B", required=True, metavar="GRIDSET")
    p.add_argument("--Q", type=int, default=_default_q())
    p.add_argument("--n", default="1..20", metavar="RANGE")

    p = add("krengel", _cmd_krengel, "orthogonalization modulus certificate")
    p.add_argument("--f", required=True, metavar="X1,X2;X1,X2;...")
    p.add_argument("--T", required=True, metavar="MATRIX")

    p = add("find-unipotent", _cmd_find_unipotent, "BFS word search")
    p.add_argument("--gen", action="append", required=True, metavar="MATRIX")
    p.add_argument("--L", type=int, default=4)

    p = add("scenarios", _cmd_scenarios, "run the bundled scenario suite")
    p.add_argument("--filter", metavar="NAME_OR_TAG")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TorusMixError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
