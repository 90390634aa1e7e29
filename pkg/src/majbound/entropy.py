"""Shannon/Renyi entropies, relative entropy, and the entropic corollaries.

All logarithms are base 2.  Vectors may carry any total mass; entropies of
direct-sum vectors are the plain ``-sum v log v`` without renormalising.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .bounds import least_upper_bound
from .errors import InvalidDistribution, InvalidOrder, NotUpperBound
from .lattice import EPS_NUM, VectorLike, as_dist, join, majorizes
from .quantum import Measurement, QuantumState, direct_sum_distribution, outcome_probabilities


def _entries(v: VectorLike) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if np.any(arr < -EPS_NUM):
        raise InvalidDistribution(f"negative entry {arr.min():.3g}")
    return np.clip(arr, 0.0, None)


def shannon(v: VectorLike) -> float:
    p = _entries(v)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0


def renyi(v: VectorLike, alpha: float) -> float:
    """Renyi entropy of order ``alpha``; ``alpha == 1`` falls back to Shannon."""
    if not alpha > 0:
        raise InvalidOrder(f"Renyi order must be positive, got {alpha}")
    if alpha == 1:
        return shannon(v)
    p = _entries(v)
    p = p[p > 0]
    return float(np.log2(np.sum(p**alpha)) / (1.0 - alpha))


def relative_entropy(s: VectorLike, chi: VectorLike) -> float:
    """``sum_j s_j log2(s_j / chi_j)`` over both vectors sorted descending.

    Returns ``math.inf`` when ``s`` has weight where ``chi`` has none.
    """
    a = as_dist(s).components
    b = as_dist(chi).components
    if a.size != b.size:
        raise InvalidDistribution(f"dimension mismatch: {a.size} vs {b.size}")
    support = a > 0
    if np.any(b[support] <= 0):
        return math.inf
    return float(np.sum(a[support] * np.log2(a[support] / b[support])))


def lattice_metric(a: VectorLike, b: VectorLike) -> float:
    """``H(a) + H(b) - 2 H(a v b)``; zero exactly when ``a == b``."""
    return shannon(a) + shannon(b) - 2.0 * shannon(join(a, b))


def entropic_bound(ms: Sequence[Measurement], spectrum: VectorLike | None = None) -> float:
    """Lower bound ``H(s)`` on the summed measurement entropies."""
    return shannon(least_upper_bound(ms, spectrum).s)


def entropy_sum(ms: Sequence[Measurement], state: QuantumState) -> float:
    return sum(shannon(outcome_probabilities(m, state)) for m in ms)


def improved_entropic_bound(
    ms: Sequence[Measurement], s: VectorLike, state: QuantumState
) -> float:
    """State-dependent bound ``H(s) + D(s || chi(state))``."""
    chi = direct_sum_distribution(ms, state)
    return shannon(s) + relative_entropy(s, chi)


def check_entropic_chain(
    ms: Sequence[Measurement], s: VectorLike, state: QuantumState, tol: float = EPS_NUM
) -> bool:
    """``sum_j H(X_j) >= H(s) + D(s||chi) >= H(s)`` within ``tol``."""
    total = entropy_sum(ms, state)
    h_s = shannon(s)
    improved = improved_entropic_bound(ms, s, state)
    return total >= improved - tol and improved >= h_s - tol


def corollary2_check(
    chi1: VectorLike, chi2: VectorLike, s: VectorLike, tol: float = EPS_NUM
) -> bool:
    """``H(chi1) + H(chi2) >= 2 H(s) + d(chi1, chi2)`` for two vectors below ``s``."""
    for name, chi in (("chi1", chi1), ("chi2", chi2)):
        if not majorizes(s, chi, tol):
            raise NotUpperBound(f"{name} is not majorized by s")
    lhs = shannon(chi1) + shannon(chi2)
    rhs = 2.0 * shannon(s) + lattice_metric(chi1, chi2)
    return lhs >= rhs - tol
