"""Operator Schmidt decomposition rho = sum_k L_k M_k (x) M_k of permutationally
invariant states, with signed coefficients and orthonormal Hermitian M_k."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics as nx
from .criteria import (
    LocalOrthogonalBasis,
    _expectations,
    _rho_d,
    hermitian_basis,
    partial_transpose,
)
from .exceptions import NonHermitianGenerator, NotPermutationallyInvariant, NotSymmetric
from .states import is_permutationally_invariant, is_symmetric


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray  # descending, signed
    observables: np.ndarray  # (d*d, d, d), orthonormal Hermitian

    @property
    def d(self) -> int:
        return self.observables.shape[1]

    def reconstruct(self, weights=None) -> np.ndarray:
        """sum_k w_k M_k (x) M_k, with w defaulting to the Schmidt coefficients."""
        w = self.coefficients if weights is None else np.asarray(weights, dtype=float)
        d = self.d
        out = np.zeros((d * d, d * d), dtype=complex)
        for wk, m in zip(w, self.observables):
            if wk != 0:
                out += wk * np.kron(m, m)
        return out

    def total(self) -> float:
        return float(np.sum(self.coefficients))


def _fix_sign(v: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Flip columns so the first significant component of each is positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > eps)
        if idx.size and col[idx[0]] < 0:
            v[:, k] = -col
    return v


def coefficient_matrix(s, basis: LocalOrthogonalBasis | None = None) -> np.ndarray:
    """T[k,l] = Tr(rho M_k (x) M_l) (complex; real for Hermitian input)."""
    rho, d = _rho_d(s)
    basis = basis if basis is not None else hermitian_basis(d)
    return _expectations(rho, d, basis.observables, basis.observables)


def schmidt_decompose(
    s, basis: LocalOrthogonalBasis | None = None, tol: float = nx.HERMITIAN_TOL
) -> SchmidtDecomposition:
    """Diagonalize the real symmetric coefficient matrix T = O diag(L) O^T.

    Accepts a state or any permutationally invariant Hermitian matrix (e.g. an
    unnormalized quasi-mixture).
    """
    rho, d = _rho_d(s)
    basis = basis if basis is not None else hermitian_basis(d)
    scale = max(1.0, nx.frobenius(rho))
    if not is_permutationally_invariant(rho, tol * scale):
        raise NotPermutationallyInvariant("F rho F != rho")
    t = coefficient_matrix(rho, basis)
    if np.max(np.abs(t.imag)) > 1e-8 * scale:
        raise NotPermutationallyInvariant("coefficient matrix is not real")
    t = t.real
    if np.max(np.abs(t - t.T)) > 1e-8 * scale:
        raise NotPermutationallyInvariant("coefficient matrix is not symmetric")
    w, o = np.linalg.eigh((t + t.T) / 2)
    order = np.argsort(-w, kind="stable")
    w, o = w[order], _fix_sign(o[:, order])
    obs = np.einsum("lk,lab->kab", o, basis.observables)
    obs = (obs + obs.conj().transpose(0, 2, 1)) / 2
    return SchmidtDecomposition(w, obs)


def ppt_iff_nonnegative_check(s, band: float = nx.BOUNDARY_BAND) -> bool:
    """PPT verdict and nonnegativity of all Schmidt coefficients agree."""
    rho, _ = _rho_d(s)
    if not is_symmetric(rho):
        raise NotSymmetric("state is not symmetric")
    ppt = nx.min_eigenvalue(partial_transpose(rho)) >= -band
    nonneg = schmidt_decompose(rho).coefficients.min() >= -band
    return ppt == nonneg


def quasi_mixture_build(coeffs, ops, parties: int = 2, tol: float = 1e-12) -> np.ndarray:
    """O = sum_k c_k A_k^{(x) parties} for Hermitian A_k."""
    if parties not in (2, 4):
        raise ValueError("parties must be 2 or 4")
    coeffs = np.asarray(coeffs, dtype=float)
    ops = [np.asarray(a, dtype=complex) for a in ops]
    if len(coeffs) != len(ops):
        raise ValueError("coefficient and operator counts differ")
    if parties == 2 and np.any(coeffs <= 0):
        raise ValueError("bipartite quasi-mixtures need c_k > 0")
    if parties == 4 and np.any(coeffs < 0):
        raise ValueError("four-party quasi-mixtures need c_k >= 0")
    for a in ops:
        if not nx.is_hermitian(a, tol):
            raise NonHermitianGenerator("generator A_k is not Hermitian")
    dim = ops[0].shape[0] ** parties
    out = np.zeros((dim, dim), dtype=complex)
    for c, a in zip(coeffs, ops):
        out += c * nx.kron_all([a] * parties)
    return out


def shift_to_state(o: np.ndarray) -> np.ndarray:
    """O' = O - min(0, L_min(O)) 1, normalized to unit trace."""
    lmin = nx.min_eigenvalue(o)
    if lmin < 0:
        o = o - lmin * np.eye(o.shape[0])
    return o / np.trace(o).real


def random_quasi_mixture(d: int, terms: int, seed: int) -> np.ndarray:
    """sum_k c_k A_k (x) A_k with random positive c_k and random Hermitian A_k."""
    rng = np.random.Generator(np.random.PCG64(seed))
    coeffs = rng.uniform(0.05, 1.0, terms)
    ops = []
    for _ in range(terms):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        ops.append((g + g.conj().T) / 2)
    return quasi_mixture_build(coeffs, ops, parties=2)
