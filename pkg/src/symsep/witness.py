"""Entanglement witnesses for symmetric states built from the operator Schmidt
decomposition, and the product-state maximization that fixes their constant.

A witness has the form ``W = c * 1 - M`` with ``c`` the supremum of
``<psi psi| M |psi psi>``.  The supremum is found by a multi-start see-saw
(eigenvector ascent) and can be cross-checked by brute force on a grid for
d <= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import numerics as nx
from .criteria import _rho_d
from .exceptions import (
    BadDecomposition,
    DimensionMismatch,
    DimensionTooLarge,
    NonHermitian,
    NotPSD,
    NotSymmetricOperator,
    Unsupported,
)
from .schmidt import SchmidtDecomposition, schmidt_decompose
from .states import builtin_rho33, random_unit_vector, symmetric_projector

F_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class ProductOptResult:
    best_value: float
    best_vector: np.ndarray
    restarts_used: int
    converged_fraction: float
    residual: float


@dataclass(frozen=True, eq=False)
class Witness:
    operator: np.ndarray
    constant: float
    kind: str = "symmetric"  # generic | symmetric | symmetric-mixed
    optimization: ProductOptResult | None = None

    def __post_init__(self):
        if self.kind not in ("generic", "symmetric", "symmetric-mixed"):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        m = nx.as_matrix(self.operator)
        if not nx.is_hermitian(m, 1e-10):
            raise NonHermitian("witness operator must be Hermitian")
        m = np.array(nx.hermitian_part(m))
        m.setflags(write=False)
        object.__setattr__(self, "operator", m)
        object.__setattr__(self, "constant", float(self.constant))

    def evaluate(self, s) -> float:
        return evaluate(self, s)


def evaluate(w: Witness, s) -> float:
    """c - Tr(M rho).  Negative certifies entanglement of a symmetric state when
    the witness is of a symmetric kind."""
    rho, _ = _rho_d(s)
    if rho.shape != w.operator.shape:
        raise DimensionMismatch(f"state {rho.shape} vs witness {w.operator.shape}")
    return float(w.constant - np.trace(w.operator @ rho).real)


def _check_operator(m) -> tuple[np.ndarray, int]:
    m = nx.as_matrix(m)
    if m.shape[0] != m.shape[1] or not nx.is_hermitian(m, 1e-10):
        raise NonHermitian("operator must be square and Hermitian")
    d = int(round(math.sqrt(m.shape[0])))
    if d * d != m.shape[0]:
        raise DimensionMismatch(f"operator dimension {m.shape[0]} is not a square")
    return nx.hermitian_part(m), d


def product_value(m4: np.ndarray, psi: np.ndarray, chi: np.ndarray | None = None) -> float:
    """<psi chi| M |psi chi> with ``m4 = M.reshape(d, d, d, d)``."""
    chi = psi if chi is None else chi
    return float(np.einsum("a,b,abce,c,e->", psi.conj(), chi.conj(), m4, psi, chi).real)


def effective_matrix(m4: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Swap-symmetrized contraction of M with psi on one slot.

    psi^dagger E(psi) psi = f(psi) and the gradient of f on the sphere is
    proportional to (E(psi) - f(psi)) psi.
    """
    e1 = np.einsum("b,abce,e->ac", psi.conj(), m4, psi)
    e2 = np.einsum("a,abce,c->be", psi.conj(), m4, psi)
    e = (e1 + e2) / 2
    return (e + e.conj().T) / 2


def _residual(m4, psi) -> float:
    e = effective_matrix(m4, psi)
    return float(np.linalg.norm(e @ psi - (psi.conj() @ e @ psi).real * psi))


def _seesaw(m4, psi, iters: int, ftol: float = F_TOL, history: list | None = None):
    """Eigenvector ascent from ``psi``; returns (psi, value, converged)."""
    f = product_value(m4, psi)
    if history is not None:
        history.append(f)
    for _ in range(iters):
        _, vecs = np.linalg.eigh(effective_matrix(m4, psi))
        cand = vecs[:, -1]
        ov = np.vdot(psi, cand)
        if abs(ov) > 0:
            cand = cand * (abs(ov) / ov)
        fc = product_value(m4, cand)
        step = 1.0
        while fc < f and step > 2**-20:
            # Damped step toward the candidate keeps the objective monotone.
            step /= 2
            trial = psi + step * (cand - psi)
            trial = trial / np.linalg.norm(trial)
            ft = product_value(m4, trial)
            if ft >= f:
                cand, fc = trial, ft
        if fc < f:
            return psi, f, True
        delta = fc - f
        psi, f = cand, fc
        if history is not None:
            history.append(f)
        if delta < ftol:
            return psi, f, True
    return psi, f, False


def _polish(m4, psi, f, max_iters: int = 5000):
    """Continue the ascent until the stationarity residual is tiny."""
    for _ in range(max_iters):
        if _residual(m4, psi) <= RESIDUAL_TOL:
            break
        new_psi, new_f, _ = _seesaw(m4, psi, 1, ftol=0.0)
        if new_f < f or np.allclose(new_psi, psi, atol=1e-16, rtol=0):
            break
        psi, f = new_psi, new_f
    return psi, f


def optimize_symmetric_product(m, restarts: int = 200, iters: int = 1000, seed: int = 42) -> ProductOptResult:
    """Maximize <psi psi| M |psi psi> over unit vectors psi.

    Each restart draws its start from a child of ``SeedSequence(seed)``, so the
    result is deterministic and ties resolve to the lowest restart index.
    """
    m, d = _check_operator(m)
    m4 = m.reshape(d, d, d, d)
    best_psi, best_f, converged = None, -np.inf, 0
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.Generator(np.random.PCG64(child))
        psi, f, ok = _seesaw(m4, random_unit_vector(d, rng), iters)
        converged += ok
        if f > best_f:
            best_psi, best_f = psi, f
    best_psi, best_f = _polish(m4, best_psi, best_f)
    # Remove the global phase: first significant component real positive.
    k = int(np.flatnonzero(np.abs(best_psi) > 1e-12)[0])
    best_psi = best_psi * (abs(best_psi[k]) / best_psi[k])
    best_psi = best_psi / np.linalg.norm(best_psi)
    return ProductOptResult(
        best_value=product_value(m4, best_psi),
        best_vector=best_psi,
        restarts_used=restarts,
        converged_fraction=converged / restarts,
        residual=_residual(m4, best_psi),
    )


def seesaw_trace(m, psi0, iters: int = 1000) -> list[float]:
    """Objective sequence of a single see-saw run (for monotonicity checks)."""
    m, d = _check_operator(m)
    hist: list[float] = []
    psi0 = np.asarray(psi0, dtype=complex)
    _seesaw(m.reshape(d, d, d, d), psi0 / np.linalg.norm(psi0), iters, history=hist)
    return hist


def optimize_product(m, restarts: int = 50, iters: int = 1000, seed: int = 0) -> float:
    """Maximize <psi1 psi2| M |psi1 psi2> over independent unit vectors by
    alternating exact maximization in each factor."""
    m, d = _check_operator(m)
    m4 = m.reshape(d, d, d, d)
    best = -np.inf
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.Generator(np.random.PCG64(child))
        a, b = random_unit_vector(d, rng), random_unit_vector(d, rng)
        f = product_value(m4, a, b)
        for _ in range(iters):
            ea = np.einsum("b,abce,e->ac", b.conj(), m4, b)
            a = np.linalg.eigh((ea + ea.conj().T) / 2)[1][:, -1]
            eb = np.einsum("a,abce,c->be", a.conj(), m4, a)
            b = np.linalg.eigh((eb + eb.conj().T) / 2)[1][:, -1]
            fn = product_value(m4, a, b)
            done = fn - f < F_TOL
            f = fn
            if done:
                break
        best = max(best, f)
    return float(best)


def _grid_vectors(d: int, resolution: int):
    """Yield batches of unit vectors with a real nonnegative first component."""
    theta = np.linspace(0.0, np.pi / 2, resolution)
    phi = np.linspace(0.0, 2 * np.pi, resolution, endpoint=False)
    if d == 2:
        t, p = np.meshgrid(theta, phi, indexing="ij")
        yield np.stack([np.cos(t), np.sin(t) * np.exp(1j * p)], axis=-1).reshape(-1, 2)
        return
    t2, p1, p2 = np.meshgrid(theta, phi, phi, indexing="ij")
    for t1 in theta:
        s1 = np.sin(t1)
        yield np.stack(
            [
                np.full(t2.shape, np.cos(t1), dtype=complex),
                s1 * np.cos(t2) * np.exp(1j * p1),
                s1 * np.sin(t2) * np.exp(1j * p2),
            ],
            axis=-1,
        ).reshape(-1, 3)


def certify_by_grid(m, resolution: int = 40) -> float:
    """Maximum of <psi psi| M |psi psi> over a deterministic grid on the sphere.

    Hyperspherical angles in [0, pi/2] and phases in [0, 2 pi), ``resolution``
    points per angle.  The result is a lower bound on the true supremum.
    """
    m, d = _check_operator(m)
    if d > 3:
        raise DimensionTooLarge("grid certification is limited to d <= 3")
    best = -np.inf
    for vecs in _grid_vectors(d, resolution):
        pp = np.einsum("ni,nj->nij", vecs, vecs).reshape(len(vecs), d * d)
        vals = np.einsum("ni,ij,nj->n", pp.conj(), m, pp).real
        best = max(best, float(vals.max()))
    return best


def product_value_mixed(coeffs, observables, rho, operator=None, tol: float = 1e-9) -> float:
    """Tr(M rho (x) rho) = sum_k c_k Tr(M_k rho)^2 for M = sum_k c_k M_k (x) M_k."""
    coeffs = np.asarray(coeffs, dtype=float)
    obs = np.asarray(observables, dtype=complex)
    if obs.ndim != 3 or len(coeffs) != len(obs):
        raise BadDecomposition("need one d x d observable per coefficient")
    for a in obs:
        if not nx.is_hermitian(a, tol):
            raise BadDecomposition("observables must be Hermitian")
    if operator is not None:
        recon = sum(c * np.kron(a, a) for c, a in zip(coeffs, obs))
        if nx.frobenius(recon - np.asarray(operator)) > tol:
            raise BadDecomposition("decomposition does not reconstruct the operator")
    rho = np.asarray(rho, dtype=complex)
    ev = np.einsum("kab,ba->k", obs, rho).real
    return float(np.sum(coeffs * ev**2))


def mixed_product_supremum(coeffs, observables, restarts: int = 200, seed: int = 42) -> float:
    """sup over rho of Tr(M rho (x) rho) for nonnegative weights.

    With all c_k >= 0 the target is convex in rho, so pure states attain the
    supremum and the see-saw over psi applies.  Other sign patterns are not
    handled here.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if np.all(coeffs <= 0):
        raise Unsupported("all-nonpositive weights need a semidefinite program")
    if np.any(coeffs < 0):
        raise Unsupported("mixed-sign weights are not supported")
    obs = np.asarray(observables, dtype=complex)
    m = sum(c * np.kron(a, a) for c, a in zip(coeffs, obs))
    return optimize_symmetric_product(m, restarts=restarts, seed=seed).best_value


def default_keep(d: int) -> int:
    return math.ceil(2 * d * d / 3)


def schmidt_witness(
    s,
    keep: int | None = None,
    rule: Callable[[np.ndarray], np.ndarray] | None = None,
    restarts: int = 200,
    iters: int = 1000,
    seed: int = 42,
    decomposition: SchmidtDecomposition | None = None,
) -> tuple[Witness, SchmidtDecomposition]:
    """Witness c 1 - sum_k f_k M_k (x) M_k from the Schmidt decomposition of a state.

    By default f_k = sqrt(L_k) for the ``keep`` largest coefficients (negative
    ones clipped to zero) and f_k = 0 for the rest; ``keep`` defaults to
    ceil(2 d^2 / 3), which is 6 for two qutrits.
    """
    dec = decomposition if decomposition is not None else schmidt_decompose(s)
    n = len(dec.coefficients)
    keep = default_keep(dec.d) if keep is None else keep
    if rule is None:
        weights = np.sqrt(np.clip(dec.coefficients, 0.0, None))
    else:
        weights = np.asarray(rule(dec.coefficients), dtype=float)
    weights = np.where(np.arange(n) < keep, weights, 0.0)
    if np.all(weights <= 0):
        raise Unsupported("all-nonpositive weights need a semidefinite program")
    m = dec.reconstruct(weights)
    res = optimize_symmetric_product(m, restarts=restarts, iters=iters, seed=seed)
    return Witness(m, res.best_value, "symmetric", res), dec


def build_rho33_witness(restarts: int = 200, seed: int = 42) -> Witness:
    """Schmidt-based witness for the bound entangled two-qutrit state."""
    w, _ = schmidt_witness(builtin_rho33(), keep=6, restarts=restarts, seed=seed)
    return w


@dataclass(frozen=True)
class OrderingSuprema:
    symmetric: float  # sup over psi (x) psi
    mixed_sampled: float  # max over sampled rho (x) rho
    product: float  # sup over psi1 (x) psi2 (optimized)
    product_sampled: float  # max over sampled psi1 (x) psi2


def ordering_suprema(m, samples: int = 200, seed: int = 0, restarts: int = 50) -> OrderingSuprema:
    m, d = _check_operator(m)
    m4 = m.reshape(d, d, d, d)
    rng = np.random.Generator(np.random.PCG64(seed))
    prod_s, mixed_s = -np.inf, -np.inf
    for _ in range(samples):
        a, b = random_unit_vector(d, rng), random_unit_vector(d, rng)
        prod_s = max(prod_s, product_value(m4, a, b))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        mixed_s = max(mixed_s, float(np.trace(m @ np.kron(rho, rho)).real))
    return OrderingSuprema(
        symmetric=optimize_symmetric_product(m, restarts=restarts, seed=seed).best_value,
        mixed_sampled=mixed_s,
        product=optimize_product(m, restarts=restarts, seed=seed),
        product_sampled=prod_s,
    )


def witness_ordering_spotcheck(m, samples: int = 200, seed: int = 0, tol: float = 1e-6) -> bool:
    """Check numerically that the three witness constants coincide for a PSD
    symmetric M.

    The constants satisfy sym <= mixed <= product by inclusion of the feasible
    sets; equality is confirmed when no sampled rho (x) rho and no optimized
    product pair exceeds the symmetric supremum.
    """
    m, d = _check_operator(m)
    if nx.min_eigenvalue(m) < -1e-9:
        raise NotPSD("M must be positive semidefinite")
    p = symmetric_projector(d)
    if nx.frobenius(p @ m @ p - m) > 1e-9:
        raise NotSymmetricOperator("M must live on the symmetric subspace")
    sup = ordering_suprema(m, samples, seed)
    return (
        sup.product_sampled <= sup.product + tol
        and sup.mixed_sampled <= sup.symmetric + tol
        and sup.product <= sup.symmetric + tol
        and sup.symmetric <= sup.product + tol
    )
