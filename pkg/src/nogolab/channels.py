"""Kraus-form quantum channels and their Stinespring dilations."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidChannel
from .states import DensityMatrix, PureState, random_unitary

CPTP_TOL = 1e-9
COMPLETION_SKIP = 1e-8


@dataclass(frozen=True)
class QuantumChannel:
    kraus: tuple[np.ndarray, ...]
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]

    def __init__(self, kraus: Sequence, in_dims: Sequence[int] | None = None,
                 out_dims: Sequence[int] | None = None):
        ops = tuple(linalg.as_matrix(k) for k in kraus)
        if not ops:
            raise InvalidChannel("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise DimensionMismatch("Kraus operators must share one shape")
        out_dim, in_dim = shape
        in_dims = (in_dim,) if in_dims is None else linalg.check_dims(in_dims, in_dim)
        out_dims = (out_dim,) if out_dims is None else linalg.check_dims(out_dims, out_dim)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "in_dims", tuple(in_dims))
        object.__setattr__(self, "out_dims", tuple(out_dims))

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        return apply_channel(self, rho)

    def to_dict(self) -> dict:
        return {
            "kraus": [linalg.matrix_to_dict(k) for k in self.kraus],
            "in_dims": list(self.in_dims),
            "out_dims": list(self.out_dims),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QuantumChannel":
        channel = cls([linalg.matrix_from_dict(k) for k in doc["kraus"]],
                      doc.get("in_dims"), doc.get("out_dims"))
        report = validate_cptp(channel)
        if not report.accepted:
            raise InvalidChannel(f"loaded channel is not CPTP (deviation {report.max_deviation:.3e})")
        return channel


@dataclass(frozen=True)
class CPTPReport:
    max_deviation: float
    tolerance: float = CPTP_TOL

    @property
    def accepted(self) -> bool:
        return self.max_deviation <= self.tolerance


def validate_cptp(channel: QuantumChannel) -> CPTPReport:
    """Max-entry deviation of ``sum A^dagger A`` from the identity."""
    total = sum(np.conj(k).T @ k for k in channel.kraus)
    dev = float(np.max(np.abs(total - np.eye(channel.in_dim))))
    return CPTPReport(dev)


def _require_valid(channel: QuantumChannel) -> None:
    report = validate_cptp(channel)
    if not report.accepted:
        raise InvalidChannel(f"channel is not trace preserving (deviation {report.max_deviation:.3e})")


def apply_channel(channel: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    _require_valid(channel)
    if rho.dim != channel.in_dim:
        raise DimensionMismatch(f"channel expects dim {channel.in_dim}, state has {rho.dim}")
    out = sum(k @ rho.matrix @ np.conj(k).T for k in channel.kraus)
    out = 0.5 * (out + np.conj(out).T)
    # an unfactored square channel keeps the input's factorization
    dims = channel.out_dims
    if len(dims) == 1 and channel.in_dim == channel.out_dim:
        dims = rho.dims
    return DensityMatrix(out, dims)


def unitary_channel(u, dims: Sequence[int] | None = None) -> QuantumChannel:
    return QuantumChannel([u], dims, dims)


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel([np.eye(dim)])


def replacement_channel(omega: DensityMatrix, in_dim: int) -> QuantumChannel:
    """Trace the input and prepare ``omega``: Kraus ``sqrt(w_j)|w_j><i|``."""
    eig = linalg.hermitian_eig(omega.matrix)
    ops = []
    for w, vec in zip(eig.eigenvalues, eig.eigenvectors.T):
        if w <= 1e-14:
            continue
        for i in range(in_dim):
            bra = np.zeros(in_dim)
            bra[i] = 1.0
            ops.append(np.sqrt(w) * np.outer(vec, bra))
    return QuantumChannel(ops, None, omega.dims)


def demon_channel() -> QuantumChannel:
    """Measure in the computational basis and flip a ``1`` outcome back to ``0``.

    Kraus operators ``|0><0|`` and ``sigma_x |1><1| = |0><1|``.
    """
    return QuantumChannel([[[1, 0], [0, 0]], [[0, 1], [0, 0]]])


def cnot() -> np.ndarray:
    """Controlled-NOT with the first qubit as control."""
    return linalg.as_matrix([[1, 0, 0, 0],
                             [0, 1, 0, 0],
                             [0, 0, 0, 1],
                             [0, 0, 1, 0]])


def random_channel(in_dim: int, out_dim: int, env_dim: int, seed: int) -> QuantumChannel:
    """Kraus operators sliced from a Haar-random isometry ``in -> out (x) env``."""
    if min(in_dim, out_dim, env_dim) < 1:
        raise ValueError("dimensions must be positive")
    if out_dim * env_dim < in_dim:
        raise ValueError("out_dim * env_dim must be at least in_dim for an isometry")
    v = random_unitary(out_dim * env_dim, seed)[:, :in_dim]
    blocks = v.reshape(out_dim, env_dim, in_dim)
    return QuantumChannel([blocks[:, k, :] for k in range(env_dim)])


@dataclass(frozen=True)
class Dilation:
    """Stinespring isometry and (for square channels) a unitary completion.

    The extended space is ``system (x) environment`` in Kronecker order, and
    the environment starts in ``|0>_E``.  ``unitary`` is ``None`` when the
    channel changes the system dimension.
    """

    isometry: np.ndarray
    env_dim: int
    unitary: np.ndarray | None
    out_dim: int

    def apply_isometry(self, psi: PureState) -> PureState:
        return PureState(self.isometry @ psi.amplitudes, (self.out_dim, self.env_dim))

    def environment_input(self, psi: PureState) -> np.ndarray:
        """Column vector ``|psi> (x) |0>_E``."""
        e0 = np.zeros(self.env_dim, dtype=np.complex128)
        e0[0] = 1.0
        return np.kron(psi.amplitudes, e0)


def stinespring(channel: QuantumChannel) -> Dilation:
    _require_valid(channel)
    env = len(channel.kraus)
    out_dim, in_dim = channel.out_dim, channel.in_dim
    iso = np.zeros((out_dim * env, in_dim), dtype=np.complex128)
    for i, k in enumerate(channel.kraus):
        iso[i::env, :] = k
    unitary = _complete_unitary(iso, env) if in_dim == out_dim else None
    return Dilation(linalg._frozen(iso), env, unitary, out_dim)


def _complete_unitary(iso: np.ndarray, env: int) -> np.ndarray:
    """Unitary ``U`` with ``U(|phi> (x) |0>_E) = iso |phi>``.

    Columns ``phi * env`` carry the isometry; the others are filled by
    Gram-Schmidt over standard basis vectors in index order.
    """
    n = iso.shape[0]
    u = np.zeros((n, n), dtype=np.complex128)
    fixed = [phi * env for phi in range(iso.shape[1])]
    for phi, col in enumerate(fixed):
        u[:, col] = iso[:, phi]
    basis = [iso[:, phi] for phi in range(iso.shape[1])]
    free = [c for c in range(n) if c not in set(fixed)]
    candidate = 0
    for col in free:
        while True:
            if candidate >= n:
                raise InvalidChannel("unitary completion ran out of basis vectors")
            w = np.zeros(n, dtype=np.complex128)
            w[candidate] = 1.0
            candidate += 1
            for _ in range(2):
                for b in basis:
                    w = w - np.vdot(b, w) * b
            norm = np.linalg.norm(w)
            if norm >= COMPLETION_SKIP:
                w = w / norm
                break
        basis.append(w)
        u[:, col] = w
    return linalg._frozen(u)


def channel_to_json(channel: QuantumChannel) -> str:
    return json.dumps(channel.to_dict())


def channel_from_json(text: str) -> QuantumChannel:
    return QuantumChannel.from_dict(json.loads(text))
