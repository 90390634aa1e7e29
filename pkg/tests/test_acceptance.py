"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line.  Run the module
directly (``python tests/test_acceptance.py``) for just those lines.
"""

from __future__ import annotations

import csv
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from majbound.bounds import least_upper_bound  # noqa: E402
from majbound.cli import lorenz_curves  # noqa: E402
from majbound.entropy import check_entropic_chain, corollary2_check, lattice_metric, renyi  # noqa: E402
from majbound.lattice import (  # noqa: E402
    Relation,
    beta_vector,
    compare,
    join,
    majorizes,
    meet,
    sort_descending,
)
from majbound.lorenz import LorenzCurve, dominates, envelope_check, export_curves, lorenz_curve  # noqa: E402
from majbound.presets import qubit_xz, qutrit_coles, three_pauli  # noqa: E402
from majbound.problem import Problem  # noqa: E402
from majbound.quantum import (  # noqa: E402
    direct_sum_distribution,
    make_rng,
    pure_spectrum,
    random_state_with_spectrum,
)
from majbound.verify import verify_upper_bound  # noqa: E402
from oracle import GRID, grid_join, grid_meet, random_grid_vector  # noqa: E402

R2, R3, R6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)

# criterion tolerances
TOL_BOUND = 1e-9
TOL_RPZ = 1e-12
TOL_SAMPLE = 1e-8
TOL_LAWS = 1e-9
N_RANDOM = 1000
N_SAMPLES = 10_000

EXAMPLES = {
    "qubit-xz": lambda: qubit_xz(np.pi / 2),
    "three-pauli": three_pauli,
    "qutrit-coles": qutrit_coles,
}


def _line(num: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}"


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _random_dist(rng, dim):
    return sort_descending(rng.dirichlet(np.full(dim, rng.choice([0.3, 1.0, 3.0]))))


def qubit_closed_form(lam1, lam2, theta):
    c, q = np.cos(theta / 2), np.sin(theta / 4) ** 2
    return np.array([lam1, lam1 * c + 2 * lam2 * q, 2 * lam1 * q + lam2 * c, lam2])


def criterion_1():
    worst, elapsed = 0.0, 0.0
    for lam1 in (1.0, 0.9, 0.75, 0.5):
        for theta in (np.pi / 6, np.pi / 3, np.pi / 2):
            res, dt = _timed(lambda: least_upper_bound(qubit_xz(theta), [lam1, 1 - lam1]))
            elapsed = max(elapsed, dt)
            worst = max(worst, np.max(np.abs(res.s.components - qubit_closed_form(lam1, 1 - lam1, theta))))
    ok = worst <= TOL_BOUND and elapsed < 1.0
    return ok, f"qubit X/Z closed form, 12 grid points, max err {worst:.2e}, slowest {elapsed:.3f}s"


def criterion_2():
    res, dt = _timed(lambda: least_upper_bound(three_pauli()))
    want = [1, R2 / 2, (1 + R3 - R2) / 2, (1 - R3 + R2) / 2, (2 - R2) / 2, 0]
    err = np.max(np.abs(res.s.components - want))
    return err <= TOL_BOUND and dt < 1.0, f"three-Pauli bound, err {err:.2e}, {dt:.3f}s"


def criterion_3():
    res, dt = _timed(lambda: least_upper_bound(qutrit_coles()))
    err = np.max(np.abs(res.s.components - [1, R6 / 3, 1 - R6 / 3, 0, 0, 0]))
    om = res.omegas
    err_om = max(abs(om[1] - (3 + R6) / 3), abs(om[2] - 2))
    ok = err <= TOL_BOUND and err_om <= TOL_BOUND and dt < 5.0
    return ok, f"qutrit bound, err {err:.2e}, Omega_2/Omega_3 err {err_om:.2e}, {dt:.3f}s"


def criterion_4():
    p, q = (0.6, 0.15, 0.15, 0.1), (0.5, 0.25, 0.20, 0.05)
    j = join(p, q)
    err = np.max(np.abs(j.components - [0.6, 0.175, 0.175, 0.05]))
    beta = beta_vector(p, q)
    beta_err = np.max(np.abs(beta - [0.6, 0.15, 0.2, 0.05]))
    not_descending = bool(np.any(np.diff(beta) > 0))
    strictly_below = compare(j.components, beta) is Relation.LESS
    ok = err <= TOL_RPZ and beta_err <= TOL_RPZ and not_descending and strictly_below
    return ok, (
        f"join err {err:.2e}, Omega-difference vector descending={not not_descending}, "
        f"join strictly below it={strictly_below}"
    )


def criterion_5():
    worst_slack, all_achieved, violations = np.inf, True, 0
    t0 = time.perf_counter()
    for seed, build in enumerate(EXAMPLES.values()):
        ms = build()
        res = least_upper_bound(ms)
        rep = verify_upper_bound(ms, None, res.s, samples=N_SAMPLES, seed=seed, tol=TOL_SAMPLE, result=res)
        violations += len(rep.violations)
        all_achieved &= all(rep.tightness_achieved)
        worst_slack = min(worst_slack, min(rep.worst_slack_per_level))
    dt = time.perf_counter() - t0
    ok = violations == 0 and all_achieved and dt < 30.0
    return ok, (
        f"{N_SAMPLES} states x 3 examples, {violations} violations, min slack {worst_slack:.2e}, "
        f"maximizers achieve every Omega_n={all_achieved}, {dt:.2f}s"
    )


def _lattice_failures(a, b, c) -> list[str]:
    bad = []

    def same(x, y, what):
        if not x.allclose(y, TOL_LAWS):
            bad.append(what)

    same(join(a, b), join(b, a), "join commutative")
    same(meet(a, b), meet(b, a), "meet commutative")
    same(join(join(a, b), c), join(a, join(b, c)), "join associative")
    same(meet(meet(a, b), c), meet(a, meet(b, c)), "meet associative")
    same(join(a, meet(a, b)), sort_descending(a), "absorption (join)")
    same(meet(a, join(a, b)), sort_descending(a), "absorption (meet)")
    same(join(a, a), sort_descending(a), "join idempotent")
    same(meet(a, a), sort_descending(a), "meet idempotent")
    j, m = join(a, b), meet(a, b)
    if not (majorizes(j, a, TOL_LAWS) and majorizes(j, b, TOL_LAWS)):
        bad.append("join is an upper bound")
    if not (majorizes(a, m, TOL_LAWS) and majorizes(b, m, TOL_LAWS)):
        bad.append("meet is a lower bound")
    # anything above both a and b is above the join
    if majorizes(c, a, 0) and majorizes(c, b, 0) and not majorizes(c, j, TOL_LAWS):
        bad.append("join is least")
    return bad


def criterion_6():
    rng = make_rng(6)
    failures: list[str] = []
    for i in range(N_RANDOM):
        d = 2 + i % 7
        a, b, c = (_random_dist(rng, d) for _ in range(3))
        failures += _lattice_failures(a, b, c)
        # the top element sits above everything, exercising the leastness law
        failures += _lattice_failures(a, b, sort_descending(np.eye(d)[0]))
    grid_err = 0.0
    for i in range(N_RANDOM):
        d = 2 + i % 3
        an, bn = random_grid_vector(rng, d), random_grid_vector(rng, d)
        j = join(an / GRID, bn / GRID).components * GRID
        m = meet(an / GRID, bn / GRID).components * GRID
        grid_err = max(grid_err, np.max(np.abs(j - grid_join(an, bn))), np.max(np.abs(m - grid_meet(an, bn))))
    ok = not failures and grid_err / GRID <= TOL_LAWS
    kinds = sorted(set(failures))
    return ok, (
        f"{N_RANDOM} triples dims 2-8, law failures {len(failures)} {kinds if kinds else ''}".rstrip()
        + f", grid-oracle err {grid_err / GRID:.2e} on {N_RANDOM} pairs dims 2-4"
    )


def criterion_7():
    rng = make_rng(7)
    axiom_bad = 0
    for i in range(N_RANDOM):
        d = 2 + i % 7
        a, b, c = (_random_dist(rng, d) for _ in range(3))
        dab, dba = lattice_metric(a, b), lattice_metric(b, a)
        axiom_bad += abs(dab - dba) > TOL_LAWS
        axiom_bad += dab < -TOL_LAWS
        axiom_bad += abs(lattice_metric(a, a)) > TOL_LAWS
        axiom_bad += lattice_metric(a, c) > dab + lattice_metric(b, c) + TOL_LAWS
        if not a.allclose(b, 1e-6):
            axiom_bad += dab <= TOL_LAWS
    cor_bad = 0
    for name, build in EXAMPLES.items():
        ms = build()
        s = least_upper_bound(ms).s
        lam = pure_spectrum(ms[0].dim)
        for _ in range(N_RANDOM):
            chi1 = direct_sum_distribution(ms, random_state_with_spectrum(lam, rng))
            chi2 = direct_sum_distribution(ms, random_state_with_spectrum(lam, rng))
            cor_bad += not corollary2_check(chi1, chi2, s, TOL_LAWS)
    ok = axiom_bad == 0 and cor_bad == 0
    return ok, f"metric axiom failures {axiom_bad} on {N_RANDOM} triples, corollary failures {cor_bad} on 3x{N_RANDOM} pairs"


def criterion_8():
    rng = make_rng(8)
    bad = 0
    for build in EXAMPLES.values():
        ms = build()
        s = least_upper_bound(ms).s
        lam = pure_spectrum(ms[0].dim)
        for _ in range(N_RANDOM):
            bad += not check_entropic_chain(ms, s, random_state_with_spectrum(lam, rng), TOL_LAWS)
    return bad == 0, f"entropic chain failures {bad} on 3x{N_RANDOM} random states"


def criterion_9():
    p1, p2 = (0.5, 0.5, 0.0), (1 / 12, 1 / 12, 5 / 6)
    low = renyi(p1, 0.2) - renyi(p2, 0.2)
    high = renyi(p1, 2.0) - renyi(p2, 2.0)
    ok = np.sign(low) != np.sign(high) and low != 0 and high != 0
    return ok, f"H_a(p1)-H_a(p2) = {low:+.6f} at a=1/5, {high:+.6f} at a=2"


def _read_curves(path) -> dict[str, LorenzCurve]:
    rows: dict[str, list[tuple[int, float]]] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.setdefault(row["name"], []).append((int(row["k"]), float(row["y"])))
    return {n: LorenzCurve(np.array([k for k, _ in pts]), np.array([y for _, y in pts])) for n, pts in rows.items()}


def criterion_10():
    rng = make_rng(10)
    mismatches = comparable = 0
    for i in range(N_RANDOM):
        d = 2 + i % 7
        a = sort_descending(rng.integers(0, 6, size=d) + (np.arange(d) == 0))
        a = a.components / a.mass
        if i % 2:
            # a Robin Hood transfer yields a vector majorized by a
            j, k = sorted(rng.choice(d, 2, replace=False))
            t = rng.uniform(0, a[j] - a[k]) / 2
            b = a.copy()
            b[j] -= t
            b[k] += t
            b = sort_descending(b).components
        else:
            b = sort_descending(rng.integers(0, 6, size=d) + (np.arange(d) == 0)).components
            b = b / b.sum()
        for x, y in ((a, b), (b, a)):
            m = majorizes(x, y, tol=0.0)
            comparable += m
            mismatches += m != dominates(lorenz_curve(x), lorenz_curve(y))
    env_ok = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, build in EXAMPLES.items():
            ms = build()
            res = least_upper_bound(ms)
            prob = Problem(ms[0].dim, pure_spectrum(ms[0].dim), ms)
            path = export_curves(lorenz_curves(prob, res), Path(tmp) / f"{name}.csv")
            curves = _read_curves(path)
            levels = [c for n, c in curves.items() if n.startswith("s(")]
            env_ok.append(envelope_check(curves["s"], levels))
    ok = mismatches == 0 and all(env_ok)
    return ok, (
        f"{mismatches} order/Lorenz mismatches on {2 * N_RANDOM} ordered pairs ({comparable} comparable), "
        f"envelope_check per example {env_ok}"
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("num", range(1, len(CRITERIA) + 1))
def test_criterion(num, capsys):
    ok, detail = CRITERIA[num - 1]()
    with capsys.disabled():
        print("\n" + _line(num, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_line(i, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
