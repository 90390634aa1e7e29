"""Sampling and brute-force oracles for the optimal majorization bound.

Each check compares the sorted direct-sum vector of many states against the
cumulative profile of a candidate bound.  The profile of the candidate is
taken as given (no re-sorting), so a deflated or otherwise malformed bound
is judged by exactly the partial sums it claims.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .bounds import BoundResult, SnRecord, least_upper_bound
from .errors import UnsupportedDimension
from .lattice import Relation, VectorLike, compare
from .quantum import Measurement, make_rng, pure_spectrum, random_unitary, unit_spectrum

DEFAULT_TOL = 1e-8


@dataclass
class Violation:
    source: str
    level: int
    deficit: float


@dataclass
class VerificationReport:
    samples: int
    violations: list[Violation] = field(default_factory=list)
    worst_slack_per_level: list[float] = field(default_factory=list)
    max_observed_per_level: list[float] = field(default_factory=list)
    tightness_achieved: list[bool] = field(default_factory=list)
    rpz_strictly_worse: bool | None = None
    seed: int | None = None
    tol: float = DEFAULT_TOL

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


@dataclass(frozen=True)
class LevelTightness:
    n: int
    omega: float
    bound_sum: float
    achieved: bool | None  # None when the record carries no maximizer states
    tight: bool

    @property
    def lift(self) -> float:
        return self.bound_sum - self.omega


def deflate(s: VectorLike, level: int, eps: float) -> np.ndarray:
    """Move ``eps`` of weight from component ``level`` to ``level + 1``.

    Lowers the ``level``-th partial sum by ``eps`` and leaves every other
    partial sum unchanged.  Used as a negative control.
    """
    v = np.array(s, dtype=float)
    if not 1 <= level < v.size:
        raise ValueError(f"level must be in 1..{v.size - 1}, got {level}")
    v[level - 1] -= eps
    v[level] += eps
    return v


def _direct_sum_batch(ms: Sequence[Measurement], rhos: np.ndarray) -> np.ndarray:
    probs = [np.einsum("kij,sji->sk", m.effects, rhos).real for m in ms]
    chi = np.concatenate(probs, axis=1)
    return -np.sort(-chi, axis=1)


def _haar_states(spectrum: np.ndarray, count: int, seed: int) -> np.ndarray:
    rng = make_rng(seed)
    dim = spectrum.size
    out = np.empty((count, dim, dim), dtype=complex)
    for i in range(count):
        u = random_unitary(dim, rng)
        out[i] = (u * spectrum) @ u.conj().T
    return out


def _check_profiles(
    labels: list[str], chis: np.ndarray, s: VectorLike, tol: float
) -> tuple[list[Violation], np.ndarray, np.ndarray]:
    bound = np.cumsum(np.asarray(s, dtype=float))
    if chis.shape[1] != bound.size:
        raise ValueError(f"bound length {bound.size} vs direct-sum length {chis.shape[1]}")
    prof = np.cumsum(chis, axis=1)
    slack = bound[None, :] - prof
    violations = []
    for row in np.nonzero((slack < -tol).any(axis=1))[0]:
        k = int(np.argmin(slack[row]))
        violations.append(Violation(labels[row], k + 1, float(-slack[row, k])))
    return violations, slack.min(axis=0), prof.max(axis=0)


def _maximizer_batch(records: Sequence[SnRecord]) -> tuple[list[str], list[np.ndarray]]:
    labels, rhos = [], []
    for rec in records:
        for mx in rec.maximizers:
            sets = ";".join(",".join(map(str, c.outcome_set)) for c in mx.subsets)
            labels.append(f"maximizer n={rec.n} parts={list(mx.composition)} sets={sets}")
            rhos.append(mx.state.rho)
    return labels, rhos


def verify_tightness(
    records: Sequence[SnRecord], s: VectorLike, tol: float = DEFAULT_TOL
) -> list[LevelTightness]:
    """Per level: does a maximizer reach Omega_n, and does ``s`` sit exactly on it?

    ``tight`` is False only where flattening in the join lifted the partial
    sum of ``s`` above Omega_n.
    """
    bound = np.cumsum(np.asarray(s, dtype=float))
    out = []
    for rec in sorted(records, key=lambda r: r.n):
        if rec.maximizers:
            achieved = any(
                abs(np.sum(mx.distribution.components[: rec.n]) - rec.omega) <= tol
                for mx in rec.maximizers
            )
        else:
            achieved = None
        b = float(bound[rec.n - 1])
        out.append(LevelTightness(rec.n, rec.omega, b, achieved, abs(b - rec.omega) <= tol))
    return out


def verify_upper_bound(
    ms: Sequence[Measurement],
    spectrum: VectorLike | None,
    s: VectorLike,
    samples: int = 10_000,
    seed: int = 42,
    tol: float = DEFAULT_TOL,
    result: BoundResult | None = None,
) -> VerificationReport:
    """Check ``chi(rho) < s`` on ``samples`` Haar-random states plus every maximizer.

    States are ``U diag(spectrum) U^dag`` with PCG64-seeded Haar ``U``; for a
    pure spectrum this is a Haar-random pure state.  ``result`` supplies the
    maximizer states and Omega values; it is computed when omitted.
    """
    dim = ms[0].dim
    lam = pure_spectrum(dim) if spectrum is None else unit_spectrum(spectrum)
    if result is None:
        result = least_upper_bound(ms, lam)
    rhos = _haar_states(lam.components, samples, seed)
    labels = [f"seed={seed} sample={i}" for i in range(samples)]
    mx_labels, mx_rhos = _maximizer_batch(result.records)
    if mx_rhos:
        rhos = np.concatenate([rhos, np.stack(mx_rhos)])
        labels += mx_labels
    chis = _direct_sum_batch(ms, rhos)
    violations, worst, observed = _check_profiles(labels, chis, s, tol)
    tight = [t.achieved is True for t in verify_tightness(result.records, s, tol)]
    rel = compare(result.s, result.rpz, tol)
    return VerificationReport(
        samples=samples,
        violations=violations,
        worst_slack_per_level=worst.tolist(),
        max_observed_per_level=observed.tolist(),
        tightness_achieved=tight,
        rpz_strictly_worse=rel is Relation.LESS,
        seed=seed,
        tol=tol,
    )


def grid_oracle_qubit(
    ms: Sequence[Measurement],
    spectrum: VectorLike | None,
    s: VectorLike,
    grid_steps: int = 200,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Deterministic Bloch-sphere sweep for qubit measurements.

    Polar angle runs over ``pi * i / grid_steps`` (``i = 0..grid_steps``) and
    azimuth over ``2 pi * j / grid_steps`` (``j < grid_steps``); the state is
    ``l1 |psi><psi| + l2 |psi_perp><psi_perp|``.  Shares no code with the
    random sampler or the bound computation.
    """
    if any(m.dim != 2 for m in ms):
        raise UnsupportedDimension("grid oracle only supports qubit measurements")
    lam = pure_spectrum(2) if spectrum is None else unit_spectrum(spectrum)
    l1, l2 = lam.components
    theta = np.pi * np.arange(grid_steps + 1) / grid_steps
    phi = 2 * np.pi * np.arange(grid_steps) / grid_steps
    th, ph = (a.reshape(-1) for a in np.meshgrid(theta, phi, indexing="ij"))
    c, sn, e = np.cos(th / 2), np.sin(th / 2), np.exp(1j * ph)
    psi = np.stack([c, e * sn], axis=1)
    perp = np.stack([-np.conj(e) * sn, c], axis=1)
    rhos = l1 * np.einsum("si,sj->sij", psi, psi.conj()) + l2 * np.einsum(
        "si,sj->sij", perp, perp.conj()
    )
    labels = [f"grid theta={a:.6f} phi={b:.6f}" for a, b in zip(th, ph)]
    chis = _direct_sum_batch(ms, rhos)
    violations, worst, observed = _check_profiles(labels, chis, s, tol)
    return VerificationReport(
        samples=len(labels),
        violations=violations,
        worst_slack_per_level=worst.tolist(),
        max_observed_per_level=observed.tolist(),
        tol=tol,
    )
