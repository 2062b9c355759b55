"""Command-line front end.

Exit codes: 0 ok, 1 invalid input, 3 database not worst-case optimal,
4 witness precondition failed, 5 oracle disagrees with the closed-form
classification, 6 profile enumeration too large.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import formats
from .bounds import compute_bounds, f2_nonempty, max_label_count, nontrivial_wc_nonempty
from .constructions import construct_cs_improving, construct_cs_reducing
from .errors import (
    EnumerationTooLarge,
    Infeasible,
    LabelNotBinding,
    LabelNotQualifying,
    NotWorstCaseOptimal,
    TrivialDatabase,
)
from .extreme import greedy_decompose
from .market import Market, check_alpha, validate_market
from .oracle import (
    best_case_weighted,
    candidate_profiles,
    point_to_segmentation,
    profile_program,
    worst_case_weighted,
)
from .regulation import Database, classify_weighted
from .segmentation import evaluate
from .simplex import LinearProgram, solve_lp

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_WC = 3
EXIT_PRECONDITION = 4
EXIT_MISMATCH = 5
EXIT_TOO_LARGE = 6

CONSTRUCTOR_ERRORS = (NotWorstCaseOptimal, LabelNotBinding, LabelNotQualifying, TrivialDatabase)


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load_market(path: str) -> Market:
    return formats.market_from_json(formats.load_json(path))


def _load_database(path: str) -> Database:
    return formats.database_from_json(formats.load_json(path))


def _alpha(text: str | None) -> Fraction:
    return check_alpha(Fraction(1) if text is None else Fraction(text))


def cmd_analyze(args) -> tuple[int, str]:
    market = _load_market(args.market)
    bounds = compute_bounds(market)
    report = formats.bounds_to_json(market, bounds)
    report["max_labels"] = max_label_count(bounds)
    report["nontrivial_wc_nonempty"] = nontrivial_wc_nonempty(bounds)
    report["f2_nonempty"] = f2_nonempty(bounds)
    if args.format == "json":
        return EXIT_OK, formats.dump_json(report)
    if args.format == "csv":
        keys = list(report)
        return EXIT_OK, formats.to_csv(keys, [[report[k] for k in keys]], exact=[k for k in keys if isinstance(report[k], str)])
    width = max(len(k) for k in report)
    return EXIT_OK, "".join(f"{k.ljust(width)}  {v}\n" for k, v in report.items())


def cmd_segment(args) -> tuple[int, str]:
    market = _load_market(args.market)
    dec = greedy_decompose(market)
    if dec.recombine() != market.masses:
        raise CommandFailed(EXIT_MISMATCH, "decomposition does not recombine to the input market")
    if args.format == "json":
        return EXIT_OK, formats.dump_json(formats.decomposition_to_json(dec))
    if args.format == "csv":
        header = ["step"] + [f"v={formats.q(v)}" for v in market.grid] + ["mass"]
        rows = [[i, *s.extreme.masses, s.mass] for i, s in enumerate(dec.steps)]
        return EXIT_OK, formats.to_csv(header, rows, exact=header[1:])
    return EXIT_OK, formats.decomposition_table(dec)


def cmd_classify(args) -> tuple[int, str]:
    market = _load_market(args.market)
    database = _load_database(args.database)
    cls = classify_weighted(market, database, _alpha(args.alpha))
    text = formats.dump_json(formats.classification_to_json(market, cls))
    return (EXIT_OK if cls.in_wc else EXIT_NOT_WC), text


def cmd_witness(args) -> tuple[int, str]:
    market = _load_market(args.market)
    database = _load_database(args.database)
    label = args.label - 1
    bounds = compute_bounds(market)
    try:
        if args.direction == "reduce":
            seg = construct_cs_reducing(market, database, label, bounds)
        else:
            eps = None if args.epsilon is None else Fraction(args.epsilon)
            seg = construct_cs_improving(market, database, label, bounds, eps)
    except CONSTRUCTOR_ERRORS as exc:
        raise CommandFailed(EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}") from exc
    out = evaluate(market, seg)
    if args.direction == "reduce":
        ok = out.cs < bounds.u_star
    else:
        ok = out.cs > bounds.u_star and out.ps > bounds.pi_star
    if not ok:
        raise CommandFailed(EXIT_MISMATCH, "witness does not satisfy the strict surplus inequality")
    report = {
        "direction": args.direction,
        "label": args.label,
        "segmentation": formats.segmentation_to_json(seg),
        "outcome": formats.outcome_to_json(market, out),
    }
    return EXIT_OK, formats.dump_json(report)


def cmd_verify(args) -> tuple[int, str]:
    market = _load_market(args.market)
    database = _load_database(args.database)
    alpha = _alpha(args.alpha)
    bounds = compute_bounds(market)
    cls = classify_weighted(market, database, alpha)
    baseline = alpha * bounds.u_star + (1 - alpha) * bounds.pi_star

    worst = worst_case_weighted(market, database, alpha, workers=args.workers)
    best = best_case_weighted(market, database, alpha, workers=args.workers)
    improves = best.achieved and best.witness_value > baseline

    checks = [
        ("worst case never exceeds uniform pricing", worst.value <= baseline, f"inf={worst.value} uniform={baseline}"),
        ("worst case equals uniform pricing iff every label exceeds lambda_lower",
         (worst.value == baseline) == cls.in_wc, f"inf={worst.value} in_wc={cls.in_wc}"),
        ("strict improvement achievable iff in F2",
         (improves and cls.in_wc) == cls.in_f2, f"sup={best.value} witness={best.witness_value} in_f2={cls.in_f2}"),
        ("worst-case witness attains the infimum", worst.attained, f"witness={worst.witness_value}"),
    ]
    lines = [f"alpha={alpha} lambda_lower={bounds.lambda_lower} lambda_upper={bounds.lambda_upper}\n"]
    for name, ok, detail in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})\n")
    code = EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_MISMATCH
    if args.format == "json":
        report = {
            "alpha": formats.q(alpha),
            "worst": formats.oracle_to_json(market, worst),
            "best": formats.oracle_to_json(market, best),
            "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in checks],
        }
        return code, formats.dump_json(report)
    return code, "".join(lines)


def sweep_rows(steps: int) -> list[list]:
    grid = [Fraction(1), Fraction(2), Fraction(3)]
    rows = []
    for j in range(1, steps + 1):
        x3 = Fraction(j, steps) / 10
        market = validate_market(grid, [Fraction(2, 5), Fraction(3, 5) - x3, x3])
        b = compute_bounds(market)
        rows.append([x3, float(x3), b.lambda_lower, float(b.lambda_lower), market.grid[b.i_star]])
    return rows


def cmd_sweep(args) -> tuple[int, str]:
    if args.x3_steps < 2:
        raise CommandFailed(EXIT_INVALID, "--x3-steps must be at least 2")
    header = ["x3", "x3_dec", "lambda_lower", "lambda_lower_dec", "v_star"]
    rows = sweep_rows(args.x3_steps)
    if args.format == "json":
        return EXIT_OK, formats.dump_json([dict(zip(header, [formats.q(r[0]), r[1], formats.q(r[2]), r[3], formats.q(r[4])])) for r in rows])
    return EXIT_OK, formats.to_csv(header, rows, exact=["x3", "lambda_lower", "v_star"])


def _random_objective(rng: random.Random, lp: LinearProgram) -> LinearProgram:
    c = tuple(Fraction(rng.randint(-10, 10)) for _ in range(lp.num_vars))
    return LinearProgram(c, lp.eq_rows, lp.eq_rhs, lp.ub_rows, lp.ub_rhs, maximize=True)


def triangle_points(market: Market, database: Database, samples: int, seed: int) -> list[tuple[str, Fraction, Fraction]]:
    """Reachable (producer, consumer) surplus pairs, first occurrence wins."""
    bounds = compute_bounds(market)
    points: list[tuple[str, Fraction, Fraction]] = [("uniform", bounds.pi_star, bounds.u_star)]
    for kind, build in (("reducing", construct_cs_reducing), ("improving", construct_cs_improving)):
        for s in range(database.size):
            try:
                seg = build(market, database, s, bounds)
            except CONSTRUCTOR_ERRORS:
                continue
            out = evaluate(market, seg)
            points.append((kind, out.ps, out.cs))
            break
    rng = random.Random(seed)
    profiles = candidate_profiles(market, database)
    for _ in range(samples):
        profile = profiles[rng.randrange(len(profiles))]
        lp = _random_objective(rng, profile_program(market, database, profile))
        try:
            sol = solve_lp(lp)
        except Infeasible:
            continue
        out = evaluate(market, point_to_segmentation(market, database, sol.x))
        points.append(("sample", out.ps, out.cs))
    seen = set()
    unique = []
    for kind, ps, cs in points:
        if (ps, cs) not in seen:
            seen.add((ps, cs))
            unique.append((kind, ps, cs))
    return unique


def cmd_triangle(args) -> tuple[int, str]:
    market = _load_market(args.market)
    database = _load_database(args.database)
    points = triangle_points(market, database, args.samples, args.seed)
    header = ["kind", "ps", "ps_dec", "cs", "cs_dec"]
    rows = [[k, ps, float(ps), cs, float(cs)] for k, ps, cs in points]
    if args.format == "json":
        return EXIT_OK, formats.dump_json([{"kind": k, "ps": formats.q(ps), "cs": formats.q(cs)} for k, ps, cs in points])
    return EXIT_OK, formats.to_csv(header, rows, exact=["ps", "cs"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segguard", description="Robust regulation of consumer databases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, formats_: Sequence[str], default: str, market=True, database=False):
        p = sub.add_parser(name, help=help)
        if market:
            p.add_argument("--market", required=True, metavar="PATH")
        if database:
            p.add_argument("--database", required=True, metavar="PATH")
        p.add_argument("--format", choices=formats_, default=default)
        p.add_argument("--out", metavar="PATH")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "bounds and uniform-pricing quantities", ["json", "table", "csv"], "json")
    add("segment", cmd_segment, "greedy extreme-market decomposition", ["table", "json", "csv"], "table")
    p = add("classify", cmd_classify, "worst-case optimality of a database", ["json"], "json", database=True)
    p.add_argument("--alpha", metavar="P/Q")
    p = add("witness", cmd_witness, "surplus-reducing or surplus-improving segmentation", ["json"], "json", database=True)
    p.add_argument("--direction", choices=["reduce", "improve"], required=True)
    p.add_argument("--label", type=int, required=True, help="1-based label")
    p.add_argument("--epsilon", metavar="P/Q", help="high-valuation share for the improving witness")
    p = add("verify", cmd_verify, "cross-check classification against the LP oracle", ["table", "json"], "table", database=True)
    p.add_argument("--alpha", metavar="P/Q")
    p.add_argument("--workers", type=int, default=1)
    p = add("sweep", cmd_sweep, "lambda_lower along x=(2/5, 3/5-x3, x3)", ["csv", "json"], "csv", market=False)
    p.add_argument("--x3-steps", type=int, default=10)
    p = add("triangle", cmd_triangle, "sampled reachable surplus pairs", ["csv", "json"], "csv", database=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = args.func(args)
    except CommandFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except CONSTRUCTOR_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, TypeError, KeyError, OSError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
