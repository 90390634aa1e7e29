"""Write Lorenz curves (every s(n), the bound s, the maximally mixed chi) to CSV.

    python scripts/lorenz_export.py --out lorenz/
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from majbound.bounds import least_upper_bound
from majbound.cli import lorenz_curves
from majbound.lorenz import envelope_check, export_curves
from majbound.presets import PRESETS, qubit_xz
from majbound.problem import Problem
from majbound.quantum import pure_spectrum


@dataclass
class Config:
    out: Path = Path("lorenz")
    theta: float = np.pi / 2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--theta", type=float, default=Config.theta)
    cfg = Config(**vars(ap.parse_args()))
    cfg.out.mkdir(parents=True, exist_ok=True)

    for name, build in sorted(PRESETS.items()):
        ms = qubit_xz(cfg.theta) if name == "qubit-xz" else build()
        res = least_upper_bound(ms)
        curves = lorenz_curves(Problem(ms[0].dim, pure_spectrum(ms[0].dim), ms), res)
        path = export_curves(curves, cfg.out / f"{name}.csv")
        named = dict(curves)
        ok = envelope_check(named["s"], [c for n, c in curves if n.startswith("s(")])
        print(f"{path}: {len(curves)} curves, s is the least envelope: {ok}")


if __name__ == "__main__":
    main()
