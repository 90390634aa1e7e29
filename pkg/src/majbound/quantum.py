"""Finite-dimensional quantum layer: operators, states, measurements, sampling.

Random draws go through numpy's PCG64 generator.  A verification run is
fully determined by its integer seed; independent streams are derived with
``SeedSequence(seed, spawn_key=(stream,))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    EigensolverFailure,
    InvalidDimension,
    InvalidMeasurement,
    InvalidSpectrum,
    NotHermitian,
)
from .lattice import EPS_NUM, DistVector, VectorLike, as_dist, sort_descending

HERMITIAN_TOL = 1e-10

SeedLike = Union[int, np.random.Generator, None]


def make_rng(seed: SeedLike = None, stream: int | None = None) -> np.random.Generator:
    """PCG64 generator for ``seed``; ``stream`` selects an independent substream."""
    if isinstance(seed, np.random.Generator):
        return seed
    if stream is None:
        ss = np.random.SeedSequence(seed)
    else:
        ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(ss))


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``a`` as a square Hermitian matrix and return it as complex."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix has non-finite entries")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |A - A^dag| = {dev:.3g} exceeds {tol:g}")
    return m


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def spectral_decompose(a) -> SpectralDecomposition:
    m = as_hermitian(a)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    w, v = w[::-1].copy(), v[:, ::-1].copy()
    scale = max(np.linalg.norm(m, 2), 1.0)
    resid = np.linalg.norm(m @ v - v * w, axis=0)
    if np.any(resid > 1e-9 * scale):
        raise EigensolverFailure(f"eigen-residual {resid.max():.3g} too large")
    return SpectralDecomposition(w, v)


def eigvals_descending(a) -> np.ndarray:
    return np.linalg.eigvalsh(np.asarray(a, dtype=complex))[::-1]


@dataclass(frozen=True)
class Measurement:
    """A projective basis or a POVM, always carried as its list of effects.

    For a projective measurement ``basis`` holds the outcome vectors as
    columns and ``effects[i]`` is the projector onto column ``i``.
    """

    kind: str
    effects: np.ndarray
    basis: np.ndarray | None = None

    @classmethod
    def projective(cls, basis_columns, tol: float = EPS_NUM) -> "Measurement":
        u = np.asarray(basis_columns, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InvalidMeasurement(f"basis must be square, got shape {u.shape}")
        gram = u.conj().T @ u
        dev = np.max(np.abs(gram - np.eye(u.shape[0])))
        if dev > tol:
            raise InvalidMeasurement(f"basis is not orthonormal (Gram deviation {dev:.3g})")
        effects = np.einsum("ik,jk->kij", u, u.conj())
        return cls("projective", effects, u)

    @classmethod
    def povm(cls, effects, tol: float = EPS_NUM) -> "Measurement":
        e = np.asarray(effects, dtype=complex)
        if e.ndim != 3 or e.shape[1] != e.shape[2]:
            raise InvalidMeasurement(f"effects must be a list of square matrices, got {e.shape}")
        if e.shape[0] < 1:
            raise InvalidMeasurement("POVM needs at least one effect")
        for k, eff in enumerate(e):
            try:
                as_hermitian(eff)
            except NotHermitian as exc:
                raise InvalidMeasurement(f"effect {k}: {exc}") from exc
            low = np.linalg.eigvalsh(eff)[0]
            if low < -tol:
                raise InvalidMeasurement(f"effect {k} is not PSD (min eigenvalue {low:.3g})")
        dev = np.max(np.abs(e.sum(axis=0) - np.eye(e.shape[1])))
        if dev > tol:
            raise InvalidMeasurement(f"effects do not sum to identity (deviation {dev:.3g})")
        return cls("povm", e)

    @property
    def dim(self) -> int:
        return int(self.effects.shape[1])

    @property
    def n_outcomes(self) -> int:
        return int(self.effects.shape[0])

    def as_povm(self) -> "Measurement":
        return Measurement("povm", self.effects)


@dataclass(frozen=True)
class QuantumState:
    """Density matrix together with its descending spectrum."""

    rho: np.ndarray
    spectrum: DistVector

    @property
    def dim(self) -> int:
        return int(self.rho.shape[0])

    @classmethod
    def from_density(cls, rho, tol: float = EPS_NUM) -> "QuantumState":
        m = as_hermitian(rho, tol=max(tol, HERMITIAN_TOL))
        w = np.linalg.eigvalsh(m)
        if w[0] < -tol:
            raise InvalidSpectrum(f"density matrix not PSD (min eigenvalue {w[0]:.3g})")
        if abs(np.trace(m).real - 1.0) > tol:
            raise InvalidSpectrum(f"trace {np.trace(m).real!r} differs from 1")
        return cls(m, sort_descending(np.clip(w, 0.0, None)))

    @classmethod
    def from_spectrum(cls, spectrum: VectorLike, basis) -> "QuantumState":
        lam = unit_spectrum(spectrum)
        u = np.asarray(basis, dtype=complex)
        if u.shape != (lam.dim, lam.dim):
            raise DimensionMismatch(f"basis shape {u.shape} does not match spectrum length {lam.dim}")
        rho = (u * lam.components) @ u.conj().T
        return cls(0.5 * (rho + rho.conj().T), lam)

    @classmethod
    def pure(cls, psi) -> "QuantumState":
        v = np.asarray(psi, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidSpectrum("zero state vector")
        v = v / norm
        lam = np.zeros(v.size)
        lam[0] = 1.0
        return cls(np.outer(v, v.conj()), DistVector(lam))


def unit_spectrum(spectrum: VectorLike) -> DistVector:
    try:
        lam = as_dist(spectrum)
    except ValueError as exc:
        raise InvalidSpectrum(str(exc)) from exc
    if abs(lam.mass - 1.0) > EPS_NUM:
        raise InvalidSpectrum(f"spectrum must sum to 1, got {lam.mass!r}")
    return lam


def pure_spectrum(dim: int) -> DistVector:
    lam = np.zeros(dim)
    lam[0] = 1.0
    return DistVector(lam)


def outcome_probabilities(m: Measurement, state: QuantumState) -> np.ndarray:
    """Born-rule probabilities in outcome order (unsorted)."""
    if m.dim != state.dim:
        raise DimensionMismatch(f"measurement dim {m.dim} vs state dim {state.dim}")
    if m.basis is not None:
        u = m.basis
        p = np.einsum("ji,jk,ki->i", u.conj(), state.rho, u).real
    else:
        p = np.einsum("kij,ji->k", m.effects, state.rho).real
    return p


def outcome_distribution(m: Measurement, state: QuantumState) -> DistVector:
    return sort_descending(outcome_probabilities(m, state))


def direct_sum_distribution(ms: Sequence[Measurement], state: QuantumState) -> DistVector:
    """Concatenated outcome distributions of ``ms`` on ``state``, sorted."""
    if not ms:
        raise InvalidMeasurement("need at least one measurement")
    return sort_descending(np.concatenate([outcome_probabilities(m, state) for m in ms]))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary: QR of a complex Ginibre matrix with the R-diagonal phases removed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_state(dim: int, seed: SeedLike = None) -> QuantumState:
    if dim < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {dim}")
    rng = make_rng(seed)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return QuantumState.pure(psi)


def random_state_with_spectrum(spectrum: VectorLike, seed: SeedLike = None) -> QuantumState:
    lam = unit_spectrum(spectrum)
    if lam.dim < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {lam.dim}")
    u = random_unitary(lam.dim, make_rng(seed))
    return QuantumState.from_spectrum(lam, u)
