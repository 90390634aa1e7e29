"""Sweep the angle between two qubit bases.

For each angle, print H(s), the Maassen-Uffink value -log2 max|<x|z>|^2,
and the largest gap to the closed form of s over a few spectra.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from majbound import least_upper_bound, shannon
from majbound.presets import qubit_xz


@dataclass
class Config:
    steps: int = 16
    spectra: tuple = (1.0, 0.9, 0.75, 0.5)


def closed_form(l1, theta):
    l2 = 1 - l1
    c, q = np.cos(theta / 2), np.sin(theta / 4) ** 2
    return np.array([l1, l1 * c + 2 * l2 * q, 2 * l1 * q + l2 * c, l2])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=Config.steps)
    cfg = Config(steps=ap.parse_args().steps)

    print(f"{'theta':>8} {'H(s)':>10} {'MU':>10} {'max gap':>10}")
    for theta in np.linspace(np.pi / cfg.steps, np.pi / 2, cfg.steps // 2):
        gap = 0.0
        for l1 in cfg.spectra:
            s = least_upper_bound(qubit_xz(theta), [l1, 1 - l1]).s
            gap = max(gap, float(np.max(np.abs(s.components - closed_form(l1, theta)))))
        h = shannon(least_upper_bound(qubit_xz(theta)).s)
        mu = -np.log2(np.cos(theta / 2) ** 2)
        print(f"{theta:8.4f} {h:10.6f} {mu:10.6f} {gap:10.2e}")


if __name__ == "__main__":
    main()
