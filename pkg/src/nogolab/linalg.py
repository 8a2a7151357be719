"""Dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every function
here returns a fresh read-only array, so results can be shared freely.
The Hermitian eigensolver is a cyclic complex Jacobi iteration; it is slow
compared to LAPACK but simple, and the dimensions used by the experiments
never exceed 16.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubsystemIndex,
    DimensionMismatch,
    MatrixFormatError,
    NoConvergence,
    NotHermitian,
)

HERMITIAN_TOL = 1e-9
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PINV_CUTOFF = 1e-10


def as_matrix(a, *, copy: bool = True) -> np.ndarray:
    """Coerce ``a`` to a finite, read-only 2-D complex array.

    1-D input is treated as a column vector.
    """
    m = np.array(a, dtype=np.complex128) if copy else np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"expected a nonempty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    if m.flags.writeable:
        if not copy:
            # never freeze the caller's array
            m = m.view()
        m.setflags(write=False)
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return _frozen(np.ascontiguousarray(np.conj(m).T))


def identity(n: int) -> np.ndarray:
    return _frozen(np.eye(n, dtype=np.complex128))


def kronecker(a, b) -> np.ndarray:
    """Kronecker product with block (i, j) equal to ``a[i, j] * b``."""
    return _frozen(np.kron(as_matrix(a, copy=False), as_matrix(b, copy=False)))


def kron_all(factors: Iterable) -> np.ndarray:
    out = None
    for f in factors:
        out = as_matrix(f, copy=False) if out is None else kronecker(out, f)
    if out is None:
        raise ValueError("kron_all needs at least one factor")
    return out


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.conj(m).T)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ np.conj(v).T


def _off_diagonal_max(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.max(np.abs(off))) if a.shape[0] > 1 else 0.0


def hermitian_eig(m, *, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then annihilates the now-real pivot with a real
    Givens rotation.  Sweeps continue until every off-diagonal magnitude is
    below ``tol * max(1, ||m||_F)``.
    """
    a = np.array(as_matrix(m, copy=False), dtype=np.complex128)
    n, ncols = a.shape
    if n != ncols:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    if hermiticity_defect(a) > HERMITIAN_TOL:
        raise NotHermitian(f"|m - m^dagger|_max = {hermiticity_defect(a):.3e}")
    a = 0.5 * (a + np.conj(a).T)
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_diagonal_max(a) >= threshold:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 0.1 * threshold:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # J restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                jp = np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * jp * col_q
                a[:, q] = s * col_p + c * jp * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * np.conj(jp) * row_q
                a[q, :] = s * row_p + c * np.conj(jp) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * jp * vq
                v[:, q] = s * vp + c * jp * vq

    evals = np.real(np.diag(a)).copy()
    order = np.argsort(-evals, kind="stable")
    return EigenDecomposition(_frozen(evals[order]), _frozen(v[:, order]), sweeps)


def eigvalsh(m) -> np.ndarray:
    return hermitian_eig(m).eigenvalues


def check_dims(dims: Sequence[int], size: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionMismatch(f"invalid subsystem dimensions {dims}")
    if int(np.prod(dims)) != size:
        raise DimensionMismatch(f"dims {dims} do not multiply to {size}")
    return dims


def reduce_operator(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Partial trace of a square operator over every subsystem not in ``keep``.

    Kept subsystems stay in their original order.
    """
    m = as_matrix(m, copy=False)
    dims = check_dims(dims, m.shape[0])
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch("partial trace needs a square operator")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise BadSubsystemIndex("keep must be nonempty")
    for k in keep:
        if not 0 <= k < len(dims):
            raise BadSubsystemIndex(f"subsystem {k} out of range for dims {dims}")
    n = len(dims)
    traced = [i for i in range(n) if i not in keep]
    t = m.reshape(dims + dims)
    # trace out from the highest index down so axis numbers stay valid
    for count, i in enumerate(sorted(traced, reverse=True)):
        remaining = n - count
        t = np.trace(t, axis1=i, axis2=i + remaining)
    d = int(np.prod([dims[k] for k in keep]))
    return _frozen(np.ascontiguousarray(t.reshape(d, d)))


def fit_linear_operator(inputs: Sequence, outputs: Sequence, *, cutoff: float = PINV_CUTOFF) -> np.ndarray:
    """Least-squares operator ``L`` minimising ``sum_k |L x_k - y_k|^2``.

    The pseudo-inverse is assembled from the Jacobi eigendecomposition of
    the input Gram matrix ``X^dagger X``; Gram eigenvalues below
    ``cutoff * max(1, largest)`` are dropped.  Accepts raw vectors or
    objects with an ``amplitudes`` attribute.
    """
    if len(inputs) != len(outputs) or len(inputs) < 1:
        raise DimensionMismatch("inputs and outputs must be equally long and nonempty")
    xs = [np.asarray(getattr(x, "amplitudes", x), dtype=np.complex128).ravel() for x in inputs]
    ys = [np.asarray(getattr(y, "amplitudes", y), dtype=np.complex128).ravel() for y in outputs]
    if len({x.size for x in xs}) != 1 or len({y.size for y in ys}) != 1:
        raise DimensionMismatch("all inputs (and all outputs) must share one dimension")
    x = np.column_stack(xs)
    y = np.column_stack(ys)
    gram = np.conj(x).T @ x
    eig = hermitian_eig(gram)
    lam = eig.eigenvalues
    keep = lam > cutoff * max(1.0, float(lam[0]))
    vk = eig.eigenvectors[:, keep]
    gram_pinv = (vk / lam[keep]) @ np.conj(vk).T
    return _frozen(y @ gram_pinv @ np.conj(x).T)


# -- JSON interchange -------------------------------------------------------

def matrix_to_dict(m) -> dict:
    m = as_matrix(m, copy=False)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_dict(doc: dict) -> np.ndarray:
    try:
        rows, cols, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed matrix document: {exc}") from exc
    if rows < 1 or cols < 1:
        raise MatrixFormatError("rows and cols must be positive")
    if len(entries) != rows * cols:
        raise MatrixFormatError(f"expected {rows * cols} entries, got {len(entries)}")
    try:
        flat = [complex(float(re), float(im)) for re, im in entries]
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(f"entries must be [re, im] pairs: {exc}") from exc
    try:
        return as_matrix(np.array(flat).reshape(rows, cols))
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from exc


def dumps_matrix(m) -> str:
    return json.dumps(matrix_to_dict(m))


def loads_matrix(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
