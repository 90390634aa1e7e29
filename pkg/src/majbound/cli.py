"""Command-line front end.

Exit codes:
    0  success
    1  a verification / inequality check failed
    2  bad input (schema, usage, unreadable file)
    3  enumeration guard tripped (problem too large)

Machine-readable output goes to stdout (or ``--output``); diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .bounds import BoundResult, least_upper_bound
from .entropy import (
    entropy_sum,
    improved_entropic_bound,
    lattice_metric,
    relative_entropy,
    renyi,
    shannon,
)
from .errors import EnumerationTooLarge, MajboundError
from .lattice import DistVector, compare, join, meet
from .lorenz import curves_to_csv, export_curves, lorenz_curve
from .presets import PRESETS, qubit_xz
from .problem import (
    Problem,
    SchemaError,
    fmt,
    fmt_list,
    load_json,
    parse_problem,
    parse_state,
    parse_vector,
)
from .quantum import QuantumState, direct_sum_distribution, unit_spectrum
from .verify import deflate, grid_oracle_qubit, verify_tightness, verify_upper_bound

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="problem JSON (schema v1)")
    src.add_argument("--example", choices=sorted(PRESETS), help="built-in worked example")
    p.add_argument("--theta", type=float, default=np.pi / 2, help="angle for qubit-xz (default pi/2)")
    p.add_argument("--spectrum", help="comma-separated state spectrum, overrides the problem's")


def _load_problem(args) -> Problem:
    if args.input:
        prob = parse_problem(load_json(args.input))
    else:
        ms = qubit_xz(args.theta) if args.example == "qubit-xz" else PRESETS[args.example]()
        prob = Problem(ms[0].dim, unit_spectrum([1.0] + [0.0] * (ms[0].dim - 1)), ms)
    if args.spectrum:
        try:
            values = [float(x) for x in args.spectrum.split(",")]
        except ValueError as exc:
            raise SchemaError("--spectrum", "expected comma-separated numbers") from exc
        if len(values) != prob.dimension:
            raise SchemaError("--spectrum", f"expected {prob.dimension} values")
        try:
            lam = unit_spectrum(values)
        except ValueError as exc:
            raise SchemaError("--spectrum", str(exc)) from exc
        prob = Problem(prob.dimension, lam, prob.measurements)
    return prob


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def bound_to_json(result: BoundResult, spectrum: DistVector) -> dict:
    per_n = []
    for rec in result.records:
        per_n.append(
            {
                "n": rec.n,
                "omega": fmt(rec.omega),
                "s_n": fmt_list(rec.s_n),
                "maximizers": [
                    {
                        "composition": list(mx.composition),
                        "subsets": [list(c.outcome_set) for c in mx.subsets],
                        "tau": fmt(mx.tau),
                    }
                    for mx in rec.maximizers
                ],
            }
        )
    return {
        "spectrum": fmt_list(spectrum),
        "mass": fmt(result.mass),
        "s": fmt_list(result.s),
        "per_n": per_n,
        "rpz": fmt_list(result.rpz),
    }


def cmd_bound(args) -> int:
    prob = _load_problem(args)
    result = least_upper_bound(prob.measurements, prob.spectrum)
    _emit(_dumps(bound_to_json(result, prob.spectrum)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    prob = _load_problem(args)
    result = least_upper_bound(prob.measurements, prob.spectrum)
    s = np.asarray(result.s, dtype=float)
    if args.deflate:
        if args.level is None:
            raise SchemaError("--level", "required together with --deflate")
        s = deflate(s, args.level, args.deflate)
    report = verify_upper_bound(
        prob.measurements, prob.spectrum, s, args.samples, args.seed, args.tol, result=result
    )
    tightness = verify_tightness(result.records, s, args.tol)
    doc = {
        "s": fmt_list(s),
        "upper_bound": _report_json(report),
        "tightness": [
            {
                "n": t.n,
                "omega": fmt(t.omega),
                "bound_sum": fmt(t.bound_sum),
                "achieved": t.achieved,
                "tight": t.tight,
            }
            for t in tightness
        ],
    }
    ok = report.passed and all(t.achieved is not False for t in tightness)
    if args.grid:
        grid = grid_oracle_qubit(prob.measurements, prob.spectrum, s, args.grid, args.tol)
        doc["grid"] = _report_json(grid)
        ok = ok and grid.passed
    doc["passed"] = ok
    sys.stdout.write(_dumps(doc))
    if not ok:
        print(f"verification failed: {len(report.violations)} violating states", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _report_json(report) -> dict:
    d = report.to_dict()
    for key in ("worst_slack_per_level", "max_observed_per_level"):
        d[key] = fmt_list(d[key])
    for v in d["violations"]:
        v["deficit"] = fmt(v["deficit"])
    d["violation_count"] = len(d["violations"])
    return d


def lorenz_curves(prob: Problem, result: BoundResult) -> list:
    """Named curves: each distinct ``s_n`` (equal ones share a name), ``s``, ``chi_mix``."""
    groups: list[tuple[list[int], DistVector]] = []
    for rec in result.records:
        for levels, vec in groups:
            if vec.allclose(rec.s_n):
                levels.append(rec.n)
                break
        else:
            groups.append(([rec.n], rec.s_n))
    curves = [("=".join(f"s({n})" for n in levels), lorenz_curve(vec)) for levels, vec in groups]
    curves.append(("s", lorenz_curve(result.s)))
    dim = prob.dimension
    mixed = QuantumState.from_density(np.eye(dim) / dim)
    curves.append(("chi_mix", lorenz_curve(direct_sum_distribution(prob.measurements, mixed))))
    return curves


def cmd_lorenz(args) -> int:
    prob = _load_problem(args)
    result = least_upper_bound(prob.measurements, prob.spectrum)
    curves = lorenz_curves(prob, result)
    if args.output:
        export_curves(curves, args.output)
    else:
        sys.stdout.write(curves_to_csv(curves))
    return EXIT_OK


def cmd_entropy(args) -> int:
    prob = _load_problem(args)
    result = least_upper_bound(prob.measurements, prob.spectrum)
    s = result.s
    doc: dict = {"s": fmt_list(s), "H_s": fmt(shannon(s))}
    if args.alpha is not None:
        doc["alpha"] = args.alpha
        doc["renyi_s"] = fmt(renyi(s, args.alpha))
    ok = True
    if args.state:
        state = parse_state(load_json(args.state, "--state"), prob.dimension)
        chi = direct_sum_distribution(prob.measurements, state)
        total = entropy_sum(prob.measurements, state)
        d = relative_entropy(s, chi)
        improved = improved_entropic_bound(prob.measurements, s, state)
        ok = total >= improved - 1e-9 and improved >= shannon(s) - 1e-9
        doc.update(
            {
                "chi": fmt_list(chi),
                "sum_H": fmt(total),
                "D": fmt(d) if np.isfinite(d) else "inf",
                "improved_bound": fmt(improved) if np.isfinite(improved) else "inf",
                "chain_holds": ok,
            }
        )
    sys.stdout.write(_dumps(doc))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_compare(args) -> int:
    a = parse_vector(load_json(args.a, args.a), args.a)
    b = parse_vector(load_json(args.b, args.b), args.b)
    try:
        rel = compare(a, b)
        doc = {
            "relation": rel.value,
            "join": fmt_list(join(a, b)),
            "meet": fmt_list(meet(a, b)),
            "distance": fmt(lattice_metric(a, b)),
        }
    except ValueError as exc:
        raise SchemaError("vectors", str(exc)) from exc
    sys.stdout.write(_dumps(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majbound", description="Optimal direct-sum majorization uncertainty bounds."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute the least upper bound s")
    _add_problem_args(p)
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="sample states and check chi < s")
    _add_problem_args(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--grid", type=int, default=0, help="also run the Bloch grid oracle (qubits)")
    p.add_argument("--deflate", type=float, default=0.0, help="negative control: lower one partial sum")
    p.add_argument("--level", type=int, help="level lowered by --deflate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lorenz", help="export Lorenz curves as CSV")
    _add_problem_args(p)
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_lorenz)

    p = sub.add_parser("entropy", help="entropic bounds derived from s")
    _add_problem_args(p)
    p.add_argument("--state", help="state JSON with 'psi' or 'rho'")
    p.add_argument("--alpha", type=float, help="also report the Renyi entropy of s")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("compare", help="order, join, meet and distance of two vectors")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MajboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
