"""Least upper bound of the direct-sum majorization uncertainty relation.

For every level ``n`` the largest achievable sum of ``n`` components of the
sorted direct-sum vector is found by brute force: each way of splitting ``n``
across the measurements, each choice of outcome subsets, and the top of the
Ky Fan-type bound ``eig(op)↓ · λ↓`` for the summed subset operator.  States
that saturate the bound give achievable vectors ``s_n``, and their lattice
join is the optimal bound.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, EnumerationTooLarge, IndexOutOfRange, InvalidMeasurement
from .lattice import DistVector, VectorLike, as_dist, join_many, sort_descending
from .quantum import (
    Measurement,
    QuantumState,
    unit_spectrum,
    as_hermitian,
    direct_sum_distribution,
    pure_spectrum,
    spectral_decompose,
)

MAX_TUPLES = 10**7
MAXIMIZER_TOL = 1e-9
# below this many subset tuples per level a thread pool costs more than it saves
_PARALLEL_MIN_TUPLES = 4096

Composition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class SubsetChoice:
    """Outcome indices (0-based, sorted) picked from one measurement."""

    measurement_index: int
    outcome_set: tuple[int, ...]


@dataclass(frozen=True)
class Maximizer:
    composition: Composition
    subsets: tuple[SubsetChoice, ...]
    tau: float
    state: QuantumState = field(repr=False)
    distribution: DistVector = field(repr=False)

    @property
    def key(self) -> tuple:
        return (self.composition, tuple(c.outcome_set for c in self.subsets))


@dataclass(frozen=True)
class SnRecord:
    n: int
    omega: float
    maximizers: list[Maximizer]
    s_n: DistVector


@dataclass(frozen=True)
class BoundResult:
    s: DistVector
    records: list[SnRecord]
    rpz: DistVector
    mass: float

    @property
    def omegas(self) -> np.ndarray:
        return np.array([r.omega for r in self.records])


def thread_count() -> int:
    env = os.environ.get("MAJBOUND_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def subset_operator(m: Measurement, outcome_set: Sequence[int]) -> np.ndarray:
    """Sum of the effects (projectors, for a basis) indexed by ``outcome_set``."""
    idx = list(outcome_set)
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange(f"duplicate outcome index in {idx}")
    for i in idx:
        if not 0 <= i < m.n_outcomes:
            raise IndexOutOfRange(f"outcome index {i} outside 0..{m.n_outcomes - 1}")
    if not idx:
        return np.zeros((m.dim, m.dim), dtype=complex)
    return m.effects[idx].sum(axis=0)


def enumerate_compositions(n: int, limits: Sequence[int]) -> list[Composition]:
    """All ``(n_1..n_M)`` with ``sum == n`` and ``0 <= n_j <= limits[j]``.

    Ordered lexicographically with larger leading parts first, e.g.
    ``n=2, limits=(2, 2)`` gives ``[(2, 0), (1, 1), (0, 2)]``.
    """
    limits = tuple(int(k) for k in limits)

    def rec(rest: int, j: int) -> Iterator[Composition]:
        if j == len(limits):
            if rest == 0:
                yield ()
            return
        tail_cap = sum(limits[j + 1 :])
        for first in range(min(rest, limits[j]), -1, -1):
            if rest - first > tail_cap:
                break
            for tail in rec(rest - first, j + 1):
                yield (first,) + tail

    if n < 0 or n > sum(limits):
        return []
    return list(rec(n, 0))


def tau_n(op, spectrum: VectorLike) -> float:
    """Largest ``Tr[op rho]`` over states whose spectrum is ``spectrum``."""
    a = as_hermitian(op)
    lam = as_dist(spectrum)
    if lam.dim != a.shape[0]:
        raise DimensionMismatch(f"operator dim {a.shape[0]} vs spectrum length {lam.dim}")
    xi = np.linalg.eigvalsh(a)[::-1]
    return float(xi @ lam.components)


def maximizer_state(op, spectrum: VectorLike) -> QuantumState:
    """State with the given spectrum, diagonal in the eigenbasis of ``op``,
    weights matched in descending order so that it attains ``tau_n``."""
    lam = unit_spectrum(spectrum)
    dec = spectral_decompose(op)
    if lam.dim != dec.eigenvalues.size:
        raise DimensionMismatch(f"operator dim {dec.eigenvalues.size} vs spectrum length {lam.dim}")
    return QuantumState.from_spectrum(lam, dec.eigenvectors)


def _check_measurements(ms: Sequence[Measurement]) -> int:
    if not ms:
        raise InvalidMeasurement("need at least one measurement")
    dims = {m.dim for m in ms}
    if len(dims) != 1:
        raise DimensionMismatch(f"measurements act on different dimensions: {sorted(dims)}")
    return dims.pop()


def total_subset_tuples(ms: Sequence[Measurement]) -> int:
    return math.prod(2**m.n_outcomes for m in ms)


def _level_tuples(ms: Sequence[Measurement], n: int) -> int:
    limits = [m.n_outcomes for m in ms]
    return sum(
        math.prod(math.comb(k, p) for k, p in zip(limits, comp))
        for comp in enumerate_compositions(n, limits)
    )


class _SubsetTable:
    """Per-measurement cache of every subset sum of a given size."""

    def __init__(self, ms: Sequence[Measurement]):
        self.ms = ms
        self._cache: dict[tuple[int, int], tuple[list[tuple[int, ...]], np.ndarray]] = {}

    def get(self, j: int, size: int):
        key = (j, size)
        if key not in self._cache:
            m = self.ms[j]
            combos = list(itertools.combinations(range(m.n_outcomes), size))
            if size == 0:
                ops = np.zeros((1, m.dim, m.dim), dtype=complex)
            else:
                ops = np.stack([m.effects[list(c)].sum(axis=0) for c in combos])
            self._cache[key] = (combos, ops)
        return self._cache[key]


def _scan_composition(table: _SubsetTable, comp: Composition, lam: np.ndarray):
    """tau for every subset tuple of one composition (row-major over measurements)."""
    parts = [table.get(j, p) for j, p in enumerate(comp)]
    combos = [c for c, _ in parts]
    ops = parts[0][1]
    for _, nxt in parts[1:]:
        ops = (ops[:, None] + nxt[None, :]).reshape(-1, *nxt.shape[1:])
    xi = np.linalg.eigvalsh(ops)[:, ::-1]
    return combos, ops, xi @ lam


def compute_s_n(
    ms: Sequence[Measurement],
    spectrum: VectorLike | None,
    n: int,
    *,
    tol: float = MAXIMIZER_TOL,
    _table: _SubsetTable | None = None,
) -> SnRecord:
    """Level-``n`` optimum: Omega_n, all maximizing subset tuples, and ``s_n``.

    ``s_n`` is the join of the sorted direct-sum distributions of every
    maximizer state, so ties between maximizers cannot change the result.
    """
    dim = _check_measurements(ms)
    lam = pure_spectrum(dim) if spectrum is None else unit_spectrum(spectrum)
    if lam.dim != dim:
        raise DimensionMismatch(f"spectrum length {lam.dim} vs dimension {dim}")
    limits = [m.n_outcomes for m in ms]
    if not 1 <= n <= sum(limits) - 1:
        raise ValueError(f"level n={n} outside 1..{sum(limits) - 1}")
    count = _level_tuples(ms, n)
    if count > MAX_TUPLES:
        raise EnumerationTooLarge(f"level {n} needs {count} subset tuples (limit {MAX_TUPLES})")

    table = _table or _SubsetTable(ms)
    comps = enumerate_compositions(n, limits)
    workers = min(thread_count(), len(comps))
    if workers > 1 and count >= _PARALLEL_MIN_TUPLES:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scans = list(pool.map(lambda c: _scan_composition(table, c, lam.components), comps))
    else:
        scans = [_scan_composition(table, c, lam.components) for c in comps]

    omega = max(float(taus.max()) for _, _, taus in scans)
    found: list[Maximizer] = []
    for comp, (combos, ops, taus) in zip(comps, scans):
        shape = [len(c) for c in combos]
        for flat in np.nonzero(taus >= omega - tol)[0]:
            picks = np.unravel_index(int(flat), shape)
            subsets = tuple(
                SubsetChoice(j, tuple(combos[j][p])) for j, p in enumerate(picks)
            )
            state = maximizer_state(ops[flat], lam)
            found.append(
                Maximizer(comp, subsets, float(taus[flat]), state, direct_sum_distribution(ms, state))
            )
    found.sort(key=lambda mx: mx.key)
    s_n = join_many([mx.distribution for mx in found])
    return SnRecord(n, omega, found, s_n)


def least_upper_bound(ms: Sequence[Measurement], spectrum: VectorLike | None = None) -> BoundResult:
    """Optimal ``s`` with ``chi(rho) < s`` for every state of the given spectrum.

    ``spectrum`` defaults to a pure state.
    """
    dim = _check_measurements(ms)
    lam = pure_spectrum(dim) if spectrum is None else unit_spectrum(spectrum)
    if lam.dim != dim:
        raise DimensionMismatch(f"spectrum length {lam.dim} vs dimension {dim}")
    total = total_subset_tuples(ms)
    if total > MAX_TUPLES:
        raise EnumerationTooLarge(f"{total} subset tuples exceed the limit of {MAX_TUPLES}")
    mass = float(len(ms))
    length = sum(m.n_outcomes for m in ms)
    table = _SubsetTable(ms)
    records = [compute_s_n(ms, lam, n, _table=table) for n in range(1, length)]
    if records:
        s = join_many([r.s_n for r in records])
    else:
        s = DistVector(np.full(length, mass / length))
    return BoundResult(s, records, rpz_bound(records, mass, length), mass)


def omega_differences(omegas: Sequence[float], mass: float) -> np.ndarray:
    """``(Omega_1, Omega_2 - Omega_1, ..., mass - Omega_last)`` in level order."""
    levels = np.concatenate([[0.0], np.asarray(omegas, dtype=float), [mass]])
    return np.diff(levels)


def rpz_bound(records: Sequence[SnRecord], mass: float, length: int | None = None) -> DistVector:
    """Sorted Omega-difference vector: a valid upper bound, generally not the least."""
    omegas = [r.omega for r in sorted(records, key=lambda r: r.n)]
    t = omega_differences(omegas, mass)
    if length is not None and t.size != length:
        raise ValueError(f"records cover {t.size - 1} levels, expected {length - 1}")
    return sort_descending(t)
