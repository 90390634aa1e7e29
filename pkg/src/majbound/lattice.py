"""The majorization lattice on non-increasing vectors of fixed total mass.

Vectors are compared through their cumulative (Lorenz) profiles: ``b`` is
majorized by ``a`` when every leading partial sum of ``b`` is at most the
matching partial sum of ``a``.  Join and meet are built from the pointwise
max / min of those profiles; the max needs a flattening pass to restore
concavity, the min never does.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EmptyInput, IncompatibleVectors, InvalidDistribution, NoAscent

EPS_NUM = 1e-9
EPS_SORT = 1e-12


@dataclass(frozen=True, eq=False)
class DistVector:
    """Non-negative vector in non-increasing order.

    ``mass`` is the component sum: 1 for a probability vector, ``M`` for the
    direct sum of ``M`` outcome distributions.
    """

    components: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.components, dtype=float).reshape(-1)
        if arr.size == 0:
            raise InvalidDistribution("empty vector")
        if not np.all(np.isfinite(arr)):
            raise InvalidDistribution(f"non-finite entries in {arr!r}")
        if np.any(arr < -EPS_NUM):
            raise InvalidDistribution(f"negative entry {arr.min():.3g}")
        arr = np.where(arr < 0.0, 0.0, arr)
        if np.any(np.diff(arr) > EPS_SORT):
            raise InvalidDistribution(f"components not in non-increasing order: {arr!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "components", arr)

    @property
    def mass(self) -> float:
        return float(self.components.sum())

    @property
    def dim(self) -> int:
        return int(self.components.size)

    def partial_sums(self) -> np.ndarray:
        return cumulative_profile(self)

    def tolist(self) -> list[float]:
        return self.components.tolist()

    def allclose(self, other: VectorLike, tol: float = EPS_NUM) -> bool:
        other = as_dist(other)
        return self.dim == other.dim and bool(
            np.all(np.abs(self.components - other.components) <= tol)
        )

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.components.tolist())

    def __getitem__(self, idx):
        return self.components[idx]

    def __array__(self, dtype=None, copy=None):
        if copy:
            return np.array(self.components, dtype=dtype)
        return np.asarray(self.components, dtype=dtype)

    def __repr__(self) -> str:
        inner = ", ".join(f"{x:.6g}" for x in self.components)
        return f"DistVector([{inner}])"


VectorLike = Union[DistVector, Sequence[float], np.ndarray]


class Relation(str, enum.Enum):
    EQUAL = "Equal"
    LESS = "Less"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


def sort_descending(v: VectorLike) -> DistVector:
    """Sort a raw vector into non-increasing order (stable under ties).

    Entries in ``[-EPS_NUM, 0)`` are treated as round-off and clamped to 0.
    """
    arr = np.asarray(v, dtype=float).reshape(-1)
    if np.any(arr < -EPS_NUM):
        raise InvalidDistribution(f"negative entry {arr.min():.3g} below tolerance")
    arr = np.where(arr < 0.0, 0.0, arr)
    order = np.argsort(-arr, kind="stable")
    return DistVector(arr[order])


def as_dist(v: VectorLike) -> DistVector:
    return v if isinstance(v, DistVector) else sort_descending(v)


def cumulative_profile(v: VectorLike) -> np.ndarray:
    """Leading partial sums ``[v1, v1+v2, ...]`` (no leading zero)."""
    return np.cumsum(np.asarray(v, dtype=float))


def _pair(a: VectorLike, b: VectorLike, tol: float = EPS_NUM) -> tuple[DistVector, DistVector]:
    a, b = as_dist(a), as_dist(b)
    if a.dim != b.dim:
        raise IncompatibleVectors(f"dimension mismatch: {a.dim} vs {b.dim}")
    if abs(a.mass - b.mass) > max(tol, EPS_NUM):
        raise IncompatibleVectors(f"mass mismatch: {a.mass!r} vs {b.mass!r}")
    return a, b


def majorizes(a: VectorLike, b: VectorLike, tol: float = EPS_NUM) -> bool:
    """True when ``b`` is majorized by ``a`` (``b < a``), up to ``tol``."""
    a, b = _pair(a, b, tol)
    return bool(np.all(cumulative_profile(b) <= cumulative_profile(a) + tol))


def compare(a: VectorLike, b: VectorLike, tol: float = EPS_NUM) -> Relation:
    """Position of ``a`` relative to ``b`` in the majorization order.

    Near-ties are decided after relaxing every partial-sum test by ``tol``,
    so vectors whose Lorenz curves cross by less than ``tol`` come out
    comparable.
    """
    a, b = _pair(a, b, tol)
    if a.allclose(b, tol):
        return Relation.EQUAL
    if majorizes(a, b, tol):
        return Relation.GREATER
    if majorizes(b, a, tol):
        return Relation.LESS
    return Relation.INCOMPARABLE


def beta_vector(a: VectorLike, b: VectorLike) -> np.ndarray:
    """Increments of the pointwise-max cumulative profile of ``a`` and ``b``.

    The result may contain ascents; ``join`` flattens them away.
    """
    a, b = _pair(a, b)
    upper = np.maximum(cumulative_profile(a), cumulative_profile(b))
    return np.diff(upper, prepend=0.0)


def _first_ascent(b: np.ndarray, tol: float) -> int | None:
    rises = np.nonzero(b[1:] > b[:-1] + tol)[0]
    return int(rises[0]) + 1 if rises.size else None


def flatten_once(b: VectorLike, tol: float = EPS_SORT) -> np.ndarray:
    """Average away the first ascent of ``b``.

    With ``j`` the first index where ``b[j] > b[j-1]``, the block ``b[i..j]``
    is replaced by its mean, choosing the largest ``i < j`` whose left
    neighbour is still at least that mean (the left neighbour of index 0
    counts as +inf).  No partial sum decreases.
    """
    arr = np.array(b, dtype=float).reshape(-1)
    j = _first_ascent(arr, tol)
    if j is None:
        raise NoAscent("vector is already non-increasing")
    for i in range(j - 1, -1, -1):
        avg = arr[i : j + 1].mean()
        left = arr[i - 1] if i > 0 else np.inf
        if left >= avg:
            break
    arr[i : j + 1] = avg
    return arr


def _flatten_all(b: np.ndarray) -> np.ndarray:
    n = b.size
    for _ in range(max(n - 1, 0)):
        try:
            b = flatten_once(b)
        except NoAscent:
            return b
    assert _first_ascent(b, EPS_SORT) is None, "flattening exceeded N-1 iterations"
    return b


def join(a: VectorLike, b: VectorLike) -> DistVector:
    """Least upper bound of ``a`` and ``b`` under majorization."""
    return DistVector(_flatten_all(beta_vector(a, b)))


def meet(a: VectorLike, b: VectorLike) -> DistVector:
    """Greatest lower bound of ``a`` and ``b`` under majorization.

    The pointwise min of two concave non-decreasing profiles is itself
    concave, so its increments are already non-increasing.
    """
    a, b = _pair(a, b)
    lower = np.minimum(cumulative_profile(a), cumulative_profile(b))
    inc = np.diff(lower, prepend=0.0)
    # round-off can leave ascents of a few ulps
    inc = _flatten_all(inc)
    return DistVector(inc)


def join_many(vs: Iterable[VectorLike]) -> DistVector:
    vs = [as_dist(v) for v in vs]
    if not vs:
        raise EmptyInput("join_many needs at least one vector")
    return reduce(join, vs)


def meet_many(vs: Iterable[VectorLike]) -> DistVector:
    vs = [as_dist(v) for v in vs]
    if not vs:
        raise EmptyInput("meet_many needs at least one vector")
    return reduce(meet, vs)
