"""Dense complex linear algebra with explicit tolerances.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  Composite
indices of a two-party operator are flattened row-major as
``row = alice_index * d + bob_index``; the rest of the package relies on that.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import NonFinite, NonHermitian, NonSquare, ShapeMismatch

# Central tolerance knobs.  Functions take them as defaults and accept overrides.
HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9
EIG_RESIDUAL_TOL = 1e-10
BOUNDARY_BAND = 1e-8


class EigResult(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # orthonormal columns


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has NaN or Inf entries")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return frobenius(h - h.conj().T) <= tol * max(1.0, frobenius(h))


def hermitian_eig(h, tol: float = HERMITIAN_TOL) -> EigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NonSquare for rectangular input and NonHermitian when
    ``||H - H^dagger||_F > tol * max(1, ||H||_F)``.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NonSquare(f"matrix of shape {h.shape} is not square")
    if not is_hermitian(h, tol):
        raise NonHermitian(f"||H - H^dagger||_F = {frobenius(h - h.conj().T):.3e} exceeds tolerance")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return EigResult(w, v)


def min_eigenvalue(h, tol: float = HERMITIAN_TOL) -> float:
    return float(hermitian_eig(h, tol).eigenvalues[0])


def hermitian_part(a) -> np.ndarray:
    a = np.asarray(a)
    return (a + a.conj().T) / 2


def singular_values(m) -> np.ndarray:
    """Singular values, nonnegative and sorted descending."""
    m = as_matrix(m)
    return np.linalg.svd(m, compute_uv=False)


def trace_norm(m) -> float:
    return float(np.sum(singular_values(m)))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
