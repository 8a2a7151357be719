"""Pure states, density matrices, gates and seeded random sampling."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidState, NotAProjector

NORM_TOL = 1e-9
STATE_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    """Normalized state vector with a tensor factorization ``dims``."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, amplitudes, dims: Sequence[int] | None = None, *, normalize: bool = False):
        amp = np.array(amplitudes, dtype=np.complex128).ravel()
        if amp.size < 1 or not np.all(np.isfinite(amp)):
            raise InvalidState("amplitudes must be a nonempty finite vector")
        norm = float(np.linalg.norm(amp))
        if normalize:
            if norm == 0.0:
                raise InvalidState("cannot normalize the zero vector")
            amp = amp / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"state norm {norm!r} differs from 1")
        amp.setflags(write=False)
        dims = (amp.size,) if dims is None else linalg.check_dims(dims, amp.size)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "dims", tuple(dims))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __matmul__(self, other: "PureState") -> "PureState":
        """Tensor product ``self ⊗ other``."""
        return PureState(np.kron(self.amplitudes, other.amplitudes), self.dims + other.dims)

    def projector(self) -> np.ndarray:
        return linalg._frozen(np.outer(self.amplitudes, np.conj(self.amplitudes)))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector(), self.dims)

    def to_dict(self) -> dict:
        doc = linalg.matrix_to_dict(self.amplitudes.reshape(-1, 1))
        doc["dims"] = list(self.dims)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "PureState":
        m = linalg.matrix_from_dict(doc)
        if m.shape[1] != 1:
            raise DimensionMismatch("a pure state is serialized as a column vector")
        return cls(m[:, 0], doc.get("dims"))


def tensor(*states: PureState) -> PureState:
    out = states[0]
    for s in states[1:]:
        out = out @ s
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    matrix: np.ndarray
    dims: tuple[int, ...] = field(default=())
    _eig: linalg.EigenDecomposition | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        n = m.shape[0]
        if m.shape != (n, n):
            raise InvalidState(f"density matrix must be square, got {m.shape}")
        if linalg.hermiticity_defect(m) > STATE_TOL:
            raise InvalidState("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > STATE_TOL:
            raise InvalidState(f"trace {tr.real:.12g} differs from 1")
        eig = linalg.hermitian_eig(m)
        lam_min = float(eig.eigenvalues[-1])
        if lam_min < -STATE_TOL:
            raise InvalidState(f"negative eigenvalue {lam_min:.3e}")
        dims = (n,) if not self.dims else linalg.check_dims(self.dims, n)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(dims))
        # validation already paid for the spectrum; keep it for the entropy code
        object.__setattr__(self, "_eig", eig)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigen(self) -> linalg.EigenDecomposition:
        return self._eig

    def eigenvalues(self) -> np.ndarray:
        return self._eig.eigenvalues

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(linalg.kronecker(self.matrix, other.matrix), self.dims + other.dims)

    def to_dict(self) -> dict:
        doc = linalg.matrix_to_dict(self.matrix)
        doc["dims"] = list(self.dims)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "DensityMatrix":
        return cls(linalg.matrix_from_dict(doc), tuple(doc.get("dims") or ()))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the subsystems listed in ``keep``."""
    keep = sorted(set(keep))
    reduced = linalg.reduce_operator(rho.matrix, rho.dims, keep)
    return DensityMatrix(reduced, tuple(rho.dims[k] for k in keep))


def mixture(weights: Sequence[float], states: Sequence[DensityMatrix]) -> DensityMatrix:
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(m, states[0].dims)


# -- standard states and gates ---------------------------------------------

def basis_state(index: int, dim: int = 2) -> PureState:
    amp = np.zeros(dim, dtype=np.complex128)
    amp[index] = 1.0
    return PureState(amp)


def ket(bits: str) -> PureState:
    """Computational basis state of qubits, e.g. ``ket("10")``."""
    return tensor(*(basis_state(int(b)) for b in bits))


def qubit(theta: float, phi: float = 0.0) -> PureState:
    """``cos(theta)|0> + e^{i phi} sin(theta)|1>``."""
    return PureState([np.cos(theta), np.exp(1j * phi) * np.sin(theta)])


def qubit_with_overlap(s: float) -> PureState:
    """Real qubit whose overlap with ``|0>`` is ``s`` (0 <= s <= 1)."""
    return qubit(float(np.arccos(np.clip(s, -1.0, 1.0))), 0.0)


PLUS = qubit(np.pi / 4)
SIGMA_X = linalg.as_matrix([[0, 1], [1, 0]])


def is_unitary(u, tol: float = 1e-9) -> bool:
    u = linalg.as_matrix(u, copy=False)
    if u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(np.conj(u).T @ u - np.eye(u.shape[0])))) <= tol


def gate(u) -> np.ndarray:
    """Validate ``u`` as a unitary and return it read-only."""
    u = linalg.as_matrix(u)
    if not is_unitary(u):
        raise InvalidState("gate is not unitary")
    return u


def apply_unitary(u, rho: DensityMatrix) -> DensityMatrix:
    u = linalg.as_matrix(u, copy=False)
    if u.shape[1] != rho.dim:
        raise DimensionMismatch(f"unitary of shape {u.shape} on a {rho.dim}-dim state")
    m = u @ rho.matrix @ np.conj(u).T
    return DensityMatrix(0.5 * (m + np.conj(m).T), rho.dims)


def symmetric_projector_two_qubits() -> np.ndarray:
    """Projector onto span{|00>, (|01>+|10>)/sqrt2, |11>}."""
    triplet = (ket("01").amplitudes + ket("10").amplitudes) / np.sqrt(2)
    vecs = [ket("00").amplitudes, triplet, ket("11").amplitudes]
    return linalg._frozen(sum(np.outer(v, np.conj(v)) for v in vecs))


def projector_onto(vectors: Sequence) -> np.ndarray:
    """Orthogonal projector onto the span of ``vectors``."""
    basis = _orthonormalize([np.asarray(getattr(v, "amplitudes", v), dtype=np.complex128) for v in vectors])
    return linalg._frozen(sum(np.outer(b, np.conj(b)) for b in basis))


def _orthonormalize(vectors, tol: float = 1e-8):
    basis = []
    for v in vectors:
        w = v.astype(np.complex128)
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        n = np.linalg.norm(w)
        if n > tol:
            basis.append(w / n)
    return basis


def maximally_mixed_on(projector, dims: Sequence[int] | None = None) -> DensityMatrix:
    """The normalized projector ``P / rank(P)``."""
    p = linalg.as_matrix(projector, copy=False)
    if p.shape[0] != p.shape[1]:
        raise NotAProjector("projector must be square")
    if linalg.hermiticity_defect(p) > STATE_TOL or np.max(np.abs(p @ p - p)) > STATE_TOL:
        raise NotAProjector("matrix is not an orthogonal projector")
    rank = int(round(np.trace(p).real))
    if rank < 1:
        raise NotAProjector("projector has rank 0")
    return DensityMatrix(p / rank, dims or ())


# -- random sampling --------------------------------------------------------

def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed) & ((1 << 64) - 1)))


def _ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_pure_state(dim: int, seed: int, dims: Sequence[int] | None = None) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    if dim < 1:
        raise ValueError("dim must be positive")
    v = _ginibre(_rng(seed), dim)
    return PureState(v, dims, normalize=True)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary from the QR factorization of a Ginibre matrix.

    The phases of ``R``'s diagonal are absorbed into ``Q`` so the
    distribution is exactly Haar.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    z = _ginibre(_rng(seed), (dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return linalg._frozen(q)


def random_density_matrix(dim: int, seed: int, rank: int | None = None,
                          dims: Sequence[int] | None = None) -> DensityMatrix:
    """Reduced state of a random pure state on ``dim x rank`` (full rank by default)."""
    rank = dim if rank is None else rank
    psi = random_pure_state(dim * rank, seed)
    m = linalg.reduce_operator(psi.projector(), (dim, rank), [0])
    return DensityMatrix(m, dims or ())


def seed_stream(seed: int, count: int) -> list[int]:
    """Deterministic list of child seeds derived from ``seed``."""
    return [int(x) for x in _rng(seed).integers(0, 2**63 - 1, size=count)]


def state_to_json(state: PureState) -> str:
    return json.dumps(state.to_dict())


def state_from_json(text: str) -> PureState:
    return PureState.from_dict(json.loads(text))
