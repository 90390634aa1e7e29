"""Lorenz curves of non-increasing vectors and CSV export."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch
from .lattice import VectorLike, as_dist, join_many, sort_descending

TOUCH_TOL = 1e-8


@dataclass(frozen=True)
class LorenzCurve:
    """Points ``(k, v_1 + ... + v_k)`` for ``k = 0..dim``."""

    ks: np.ndarray
    ys: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.ks[-1])

    @property
    def points(self) -> list[tuple[int, float]]:
        return [(int(k), float(y)) for k, y in zip(self.ks, self.ys)]

    def increments(self) -> np.ndarray:
        return np.diff(self.ys)


def lorenz_curve(v: VectorLike) -> LorenzCurve:
    d = as_dist(v)
    ys = np.concatenate([[0.0], np.cumsum(d.components)])
    return LorenzCurve(np.arange(d.dim + 1), ys)


def dominates(upper: LorenzCurve, lower: LorenzCurve, tol: float = 0.0) -> bool:
    if upper.dim != lower.dim:
        raise DimensionMismatch(f"curve lengths differ: {upper.dim} vs {lower.dim}")
    return bool(np.all(lower.ys <= upper.ys + tol))


def envelope_check(
    bound: LorenzCurve, curves: Sequence[LorenzCurve], tol: float = TOUCH_TOL
) -> bool:
    """Is ``bound`` the least concave envelope of ``curves``?

    It must lie on or above every curve and coincide with the least concave
    majorant of their pointwise maximum, which equals that maximum wherever
    the join's flattening does not lift it.
    """
    if not curves:
        raise ValueError("need at least one curve")
    for c in curves:
        if c.dim != bound.dim:
            raise DimensionMismatch(f"curve lengths differ: {bound.dim} vs {c.dim}")
        if not dominates(bound, c, tol):
            return False
    top = np.max([c.ys for c in curves], axis=0)
    # sorting only undoes round-off ascents (e.g. curves read back from CSV)
    hull = lorenz_curve(join_many([sort_descending(np.clip(c.increments(), 0, None)) for c in curves]))
    touching = np.abs(hull.ys - top) <= tol
    if np.any(np.abs(bound.ys[touching] - top[touching]) > tol):
        return False
    return bool(np.all(np.abs(bound.ys - hull.ys) <= tol))


def curves_to_csv(curves: Iterable[tuple[str, LorenzCurve]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "k", "y"])
    for name, curve in curves:
        for k, y in curve.points:
            writer.writerow([name, k, format(y, ".12g")])
    return buf.getvalue()


def export_curves(curves: Iterable[tuple[str, LorenzCurve]], path) -> Path:
    """Write ``name,k,y`` rows in curve order; output bytes depend only on the input."""
    path = Path(path)
    text = curves_to_csv(curves)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write Lorenz curves to {path}: {exc}") from exc
    return path
