"""Entropic quantities, all in bits."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPartition, DimensionMismatch, DomainError, InvalidState
from .states import DensityMatrix, PureState, mixture, partial_trace

INFINITE = math.inf
EIG_FLOOR = 1e-12
KERNEL_EIG = 1e-10
KERNEL_WEIGHT = 1e-9
NEG_CLAMP = 1e-9


def _clamp(value: float) -> float:
    if value < 0.0:
        if value < -NEG_CLAMP:
            raise ArithmeticError(f"entropy came out negative: {value:.3e}")
        return 0.0
    return float(value)


def _xlog2x(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p >= EIG_FLOOR
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def binary_entropy(p: float) -> float:
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    p = min(max(float(p), 0.0), 1.0)
    return _clamp(-float(np.sum(_xlog2x(np.array([p, 1.0 - p])))))


def shannon_entropy(probs: Iterable[float]) -> float:
    return _clamp(-float(np.sum(_xlog2x(np.fromiter(probs, dtype=float)))))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return shannon_entropy(rho.eigenvalues())


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """``tr(rho log2 rho - rho log2 sigma)``; ``math.inf`` if supp(rho) is not inside supp(sigma).

    ``sigma``'s kernel is spanned by eigenvectors with eigenvalue below
    1e-10.  Any ``rho`` weight in that kernel above 1e-9 makes the result
    infinite; smaller weight is discarded as round-off.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    er = rho.eigen()
    es = sigma.eigen()
    mu = es.eigenvalues
    # diagonal of rho in sigma's eigenbasis
    rho_in_sigma = np.real(np.einsum("ij,jk,ki->i", np.conj(es.eigenvectors).T, rho.matrix, es.eigenvectors))
    kernel = mu < KERNEL_EIG
    if np.any(kernel) and float(np.sum(rho_in_sigma[kernel])) > KERNEL_WEIGHT:
        return INFINITE
    support = ~kernel
    cross = float(np.sum(rho_in_sigma[support] * np.log2(mu[support])))
    self_term = float(np.sum(_xlog2x(er.eigenvalues)))
    return _clamp(self_term - cross)


@dataclass(frozen=True)
class Ensemble:
    """Weighted collection of states sharing one factorization."""

    probabilities: tuple[float, ...]
    states: tuple[DensityMatrix, ...]

    def __init__(self, members: Sequence[tuple[float, DensityMatrix | PureState]]):
        if not members:
            raise InvalidState("an ensemble needs at least one member")
        probs = tuple(float(p) for p, _ in members)
        states = tuple(s.density() if isinstance(s, PureState) else s for _, s in members)
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise InvalidState("probabilities must lie in [0, 1]")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise InvalidState(f"probabilities sum to {sum(probs)!r}")
        if len({s.dims for s in states}) != 1:
            raise DimensionMismatch("ensemble members must share dims")
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "states", states)

    def average(self) -> DensityMatrix:
        return mixture(self.probabilities, self.states)

    def map(self, fn) -> "Ensemble":
        return Ensemble([(p, fn(s)) for p, s in zip(self.probabilities, self.states)])


def holevo_quantity(ensemble: Ensemble) -> float:
    """``sum_i p_i S(rho_i | rho_bar)``."""
    avg = ensemble.average()
    total = 0.0
    for p, s in zip(ensemble.probabilities, ensemble.states):
        if p == 0.0:
            continue
        total += p * relative_entropy(s, avg)
    return _clamp(total)


def entanglement_entropy(psi: PureState, alice: Iterable[int]) -> float:
    """Entropy of the reduced state on ``alice`` for a pure state ``psi``."""
    alice = set(alice)
    n = len(psi.dims)
    if not alice or len(alice) >= n or any(not 0 <= k < n for k in alice):
        raise BadPartition(f"{sorted(alice)} is not a proper nonempty subset of {n} subsystems")
    return von_neumann_entropy(partial_trace(psi.density(), alice))


def overlap(a: PureState, b: PureState) -> complex:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: PureState, b: PureState) -> float:
    return abs(overlap(a, b)) ** 2
