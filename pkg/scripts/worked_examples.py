"""Reproduce the bounds for the built-in examples and the join counterexample.

    python scripts/worked_examples.py [--theta 1.5708] [--top-weight 0.9]
"""

import argparse
from dataclasses import dataclass

import numpy as np

from majbound import compare, join, least_upper_bound, shannon
from majbound.lattice import beta_vector
from majbound.presets import qubit_xz, qutrit_coles, three_pauli


@dataclass
class Config:
    theta: float = np.pi / 2
    top_weight: float = 1.0  # largest eigenvalue of the state


def show(name, ms, lam):
    res = least_upper_bound(ms, lam)
    print(f"== {name}  spectrum={np.round(lam, 6).tolist()}")
    for rec in res.records:
        print(f"  n={rec.n}  Omega={rec.omega:.9f}  maximizers={len(rec.maximizers)}")
    print(f"  s    = {np.round(res.s.components, 9).tolist()}")
    print(f"  rpz  = {np.round(res.rpz.components, 9).tolist()}  ({compare(res.s, res.rpz).value} vs s)")
    print(f"  H(s) = {shannon(res.s):.6f} bits")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--theta", type=float, default=Config.theta)
    ap.add_argument("--top-weight", type=float, default=Config.top_weight)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})

    for name, ms in (("qubit X/Z", qubit_xz(cfg.theta)), ("three Pauli", three_pauli()), ("qutrit", qutrit_coles())):
        d = ms[0].dim
        rest = (1 - cfg.top_weight) / (d - 1)
        show(name, ms, [cfg.top_weight] + [rest] * (d - 1))

    p, q = (0.6, 0.15, 0.15, 0.1), (0.5, 0.25, 0.20, 0.05)
    print("== join of two incomparable vectors")
    print(f"  beta = {np.round(beta_vector(p, q), 12).tolist()}")
    print(f"  join = {np.round(join(p, q).components, 12).tolist()}")


if __name__ == "__main__":
    main()
