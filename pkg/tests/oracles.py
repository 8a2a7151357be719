"""Independent reference computations used only by the tests.

Nothing here imports the package's eigensolver, partial trace or entropy
code; numbers come from explicit loops, LAPACK, or closed forms.
"""
import itertools
import math

import numpy as np


def h2(p):
    """Binary entropy straight from the formula."""
    return -sum(x * math.log2(x) for x in (p, 1.0 - p) if x > 0.0)


def entropy_from_spectrum(evals):
    return -sum(x * math.log2(x) for x in evals if x > 1e-14)


def lapack_entropy(m):
    return entropy_from_spectrum(np.linalg.eigvalsh(np.asarray(m)))


def loop_partial_trace(m, dims, keep):
    """Partial trace by explicit summation over multi-indices."""
    m = np.asarray(m)
    keep = sorted(keep)
    traced = [i for i in range(len(dims)) if i not in keep]
    kdims = [dims[i] for i in keep]
    out = np.zeros((int(np.prod(kdims)), int(np.prod(kdims))), dtype=complex)

    def flat(idx):
        f = 0
        for d, i in zip(dims, idx):
            f = f * d + i
        return f

    def kflat(idx):
        f = 0
        for d, i in zip(kdims, idx):
            f = f * d + i
        return f

    for a in itertools.product(*(range(d) for d in kdims)):
        for b in itertools.product(*(range(d) for d in kdims)):
            total = 0j
            for t in itertools.product(*(range(dims[i]) for i in traced)):
                ia = [0] * len(dims)
                ib = [0] * len(dims)
                for pos, k in enumerate(keep):
                    ia[k], ib[k] = a[pos], b[pos]
                for pos, k in enumerate(traced):
                    ia[k] = ib[k] = t[pos]
                total += m[flat(ia), flat(ib)]
            out[kflat(a), kflat(b)] = total
    return out


def loop_kron(a, b):
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def pure_pair_entropy(overlap_abs):
    """Entropy of an equal mixture of two pure states with |<a|b>| = c."""
    return h2((1.0 + overlap_abs) / 2.0)


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def lapack_relative_entropy(rho, sigma):
    """S(rho|sigma) via matrix logarithms from LAPACK (full-rank sigma only)."""
    def logm2(m):
        w, v = np.linalg.eigh(m)
        w = np.where(w > 1e-15, w, 1.0)
        return (v * np.log2(w)) @ v.conj().T

    return float(np.real(np.trace(rho @ logm2(rho)) - np.trace(rho @ logm2(sigma))))
