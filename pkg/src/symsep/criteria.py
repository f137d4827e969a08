"""Separability criteria for bipartite states and their multi-qubit variants.

For states of the symmetric subspace the six conditions below coincide:

1. PPT: the partial transpose has no negative eigenvalue.
2. CCNR: the realigned matrix has trace norm at most one.
3. <A (x) A> >= 0 for every observable A.
4. The expectation-value matrix eta is positive semidefinite.
5. The correlation matrix C is positive semidefinite.
6. ||C||_1^2 <= [1 - Tr rho_A^2][1 - Tr rho_B^2].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import numerics as nx
from .exceptions import (
    BadPartition,
    BasisSizeMismatch,
    ConsistencyError,
    NotPPT,
    NotSymmetric,
)
from .states import (
    Bipartition,
    BipartiteState,
    MultiQubitState,
    _as_rho,
    _local_dim,
    _rng,
    is_permutationally_invariant,
    is_symmetric,
)

log = logging.getLogger(__name__)

CRITERIA = ("ppt", "ccnr", "aa_positivity", "eta", "correlation", "covariance")


def _rho_d(s):
    rho = _as_rho(s)
    d = s.d if isinstance(s, BipartiteState) else _local_dim(rho)
    return rho, d


def partial_transpose(s) -> np.ndarray:
    """Transpose on Alice's factor: out[(k,m),(l,n)] = rho[(l,m),(k,n)]."""
    rho, d = _rho_d(s)
    return rho.reshape(d, d, d, d).transpose(2, 1, 0, 3).reshape(d * d, d * d)


def realign(s) -> np.ndarray:
    """Realigned matrix: out[(k,m),(l,n)] = rho[(k,l),(m,n)].

    Rows of the result are indexed by Alice's (row, column) pair and columns by
    Bob's.  The map is an involution.
    """
    rho, d = _rho_d(s)
    return rho.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def reduced_states(s) -> tuple[np.ndarray, np.ndarray]:
    rho, d = _rho_d(s)
    r4 = rho.reshape(d, d, d, d)
    return np.einsum("ambm->ab", r4), np.einsum("mamb->ab", r4)


@dataclass(frozen=True, eq=False)
class LocalOrthogonalBasis:
    """d^2 Hermitian observables with Tr(M_k M_l) = delta_kl."""

    d: int
    observables: np.ndarray  # shape (d*d, d, d)

    def __post_init__(self):
        obs = np.array(self.observables, dtype=complex)
        obs.setflags(write=False)
        object.__setattr__(self, "observables", obs)

    def __len__(self):
        return len(self.observables)

    def __iter__(self):
        return iter(self.observables)

    def __getitem__(self, i):
        return self.observables[i]

    def gram(self) -> np.ndarray:
        v = self.observables.reshape(len(self), -1)
        return v.conj() @ v.T

    def check(self, tol: float = 1e-10) -> None:
        """Raise ValueError unless the basis is Hermitian, orthonormal and complete."""
        if self.observables.shape != (self.d**2, self.d, self.d):
            raise BasisSizeMismatch(f"expected {self.d**2} observables of size {self.d}")
        for m in self.observables:
            if nx.frobenius(m - m.conj().T) > tol:
                raise ValueError("basis element is not Hermitian")
        if nx.frobenius(self.gram() - np.eye(self.d**2)) > tol:
            raise ValueError("basis is not orthonormal")

    def rotated(self, u: np.ndarray) -> np.ndarray:
        """Operators sum_l u[k, l] M_l (Hermitian only when u is real orthogonal)."""
        return np.einsum("kl,lab->kab", u, self.observables)


def hermitian_basis(d: int) -> LocalOrthogonalBasis:
    """Normalized generalized Gell-Mann basis, identity first.

    Order: 1/sqrt(d), the d-1 traceless diagonal matrices, then for each k<l the
    pair (|k><l| + |l><k|)/sqrt(2), i(|k><l| - |l><k|)/sqrt(2).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    obs = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for j in range(1, d):
        diag = np.zeros(d)
        diag[:j] = 1.0
        diag[j] = -j
        obs.append(np.diag(diag).astype(complex) / np.sqrt(j * (j + 1)))
    for k in range(d):
        for l in range(k + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[k, l] = s[l, k] = 1 / np.sqrt(2)
            a = np.zeros((d, d), dtype=complex)
            a[k, l] = 1j / np.sqrt(2)
            a[l, k] = -1j / np.sqrt(2)
            obs += [s, a]
    return LocalOrthogonalBasis(d, np.array(obs))


def matrix_unit_basis(d: int) -> np.ndarray:
    """Q_{kl} = |k><l| stacked at index k*d + l."""
    q = np.zeros((d * d, d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            q[k * d + l, k, l] = 1.0
    return q


def _ops(basis) -> np.ndarray:
    if isinstance(basis, LocalOrthogonalBasis):
        return basis.observables
    return np.asarray(basis, dtype=complex)


def _expectations(rho, d, ops_a, ops_b) -> np.ndarray:
    """out[i, j] = Tr(rho (A_i (x) B_j))."""
    r4 = rho.reshape(d, d, d, d)
    return np.einsum("abce,ica,jeb->ij", r4, ops_a, ops_b)


def expectation_value_matrix(s, basis) -> np.ndarray:
    """eta[i, j] = Tr(rho Q_i (x) Q_j^dagger) for a basis of d^2 operators."""
    rho, d = _rho_d(s)
    ops = _ops(basis)
    if ops.shape != (d * d, d, d):
        raise BasisSizeMismatch(f"need {d * d} operators of size {d}x{d}, got {ops.shape}")
    return _expectations(rho, d, ops, ops.conj().transpose(0, 2, 1))


def is_tomographically_complete(operators, d: int, tol: float = 1e-10) -> bool:
    """True when the operators span all d x d matrices (Gram rank d^2)."""
    ops = np.asarray(operators, dtype=complex).reshape(len(operators), -1)
    return int(np.linalg.matrix_rank(ops.conj() @ ops.T, tol=tol)) == d * d


def general_expectation_matrix(s, operators) -> tuple[np.ndarray, bool]:
    """eta for an arbitrary operator set, plus its tomographic-completeness flag.

    When the set is complete, eta is PSD exactly when eta over an orthonormal
    basis is.
    """
    rho, d = _rho_d(s)
    ops = np.asarray(operators, dtype=complex)
    if ops.ndim != 3 or ops.shape[1:] != (d, d):
        raise BasisSizeMismatch(f"operators must be {d}x{d}")
    eta = _expectations(rho, d, ops, ops.conj().transpose(0, 2, 1))
    return eta, is_tomographically_complete(ops, d)


def correlation_matrix(s, basis: LocalOrthogonalBasis | None = None) -> np.ndarray:
    """C[k,l] = <M_k (x) M_l> - <M_k (x) 1><1 (x) M_l>."""
    rho, d = _rho_d(s)
    ops = _ops(basis if basis is not None else hermitian_basis(d))
    eye = np.eye(d, dtype=complex)[None]
    corr = _expectations(rho, d, ops, ops)
    mean_a = _expectations(rho, d, ops, eye)[:, 0]
    mean_b = _expectations(rho, d, eye, ops)[0, :]
    return corr - np.outer(mean_a, mean_b)


def covariance_condition(s, basis: LocalOrthogonalBasis | None = None) -> tuple[float, float]:
    """Return (||C||_1^2, [1 - Tr rho_A^2][1 - Tr rho_B^2])."""
    rho_a, rho_b = reduced_states(s)
    c = correlation_matrix(s, basis)
    lhs = nx.trace_norm(c) ** 2
    rhs = (1 - np.trace(rho_a @ rho_a).real) * (1 - np.trace(rho_b @ rho_b).real)
    return float(lhs), float(rhs)


def correlation_min_eigenvalue(s, basis: LocalOrthogonalBasis | None = None) -> float:
    """Smallest eigenvalue of C off its structural null vector.

    C t = 0 for t_k = Tr(M_k) on every state (completeness of the basis), so the
    full spectrum always contains a zero.  Restricting to the complement of t
    leaves C >= 0 unchanged and gives a margin that is strictly positive inside
    the PSD region.
    """
    rho, d = _rho_d(s)
    basis = basis if basis is not None else hermitian_basis(d)
    c = nx.hermitian_part(correlation_matrix(rho, basis))
    t = np.einsum("kaa->k", basis.observables)
    if np.linalg.norm(t) < 1e-12:
        return float(np.linalg.eigvalsh(c)[0])
    # Orthonormal basis of the complement of t.
    u, _, _ = np.linalg.svd(t.reshape(-1, 1))
    comp = u[:, 1:]
    return float(np.linalg.eigvalsh(comp.conj().T @ c @ comp)[0])


def min_hermitian_eigenvalue(m) -> float:
    """Smallest eigenvalue of the Hermitian part; equals min x^dagger M x / x^dagger x."""
    return float(np.linalg.eigvalsh(nx.hermitian_part(m))[0])


def min_aa_expectation(s) -> tuple[float, np.ndarray]:
    """Minimum of <A (x) A> over Hermitian A with Tr A^2 = 1, and a minimizer.

    Writing A = sum_k a_k M_k with real a, <A (x) A> = a^T T a where
    T[k,l] = Re <M_k (x) M_l>; the minimum is the smallest eigenvalue of the
    symmetrized T.
    """
    rho, d = _rho_d(s)
    basis = hermitian_basis(d)
    t = _expectations(rho, d, basis.observables, basis.observables).real
    w, v = np.linalg.eigh((t + t.T) / 2)
    a = np.einsum("k,kab->ab", v[:, 0], basis.observables)
    return float(w[0]), a


def extremal_observable(s, tol: float = nx.HERMITIAN_TOL) -> tuple[np.ndarray, float]:
    """Observable A with Tr A^2 = 1 minimizing <A (x) A> on a symmetric state.

    The minimum equals the smallest eigenvalue of the partial transpose, so a
    negative value is a one-observable entanglement test.
    """
    rho, d = _rho_d(s)
    if not is_symmetric(rho, tol):
        raise NotSymmetric("extremal observable requires a symmetric state")
    eig = nx.hermitian_eig(partial_transpose(rho))
    lmin = float(eig.eigenvalues[0])
    # Reshaped min eigenvector, conjugated: it is Hermitian up to a global phase.
    v = eig.eigenvectors[:, 0].reshape(d, d).conj()
    best_a, best_val = None, np.inf
    for cand in ((v + v.conj().T) / 2, 1j * (v - v.conj().T) / 2):
        norm = nx.frobenius(cand)
        if norm < 1e-9:
            continue
        cand = cand / norm
        val = float(np.trace(rho @ np.kron(cand, cand)).real)
        if val < best_val:
            best_a, best_val = cand, val
    if best_a is None or best_val - lmin > 1e-7:
        # Degenerate minimum eigenspace: optimize over real combinations instead.
        val, a = min_aa_expectation(rho)
        a = a / nx.frobenius(a)
        gap = val - lmin
        if gap > 1e-6:
            log.warning("extremal observable misses the PT minimum by %.3e", gap)
        best_a, best_val = a, float(np.trace(rho @ np.kron(a, a)).real)
    best_a = nx.hermitian_part(best_a)
    return best_a, best_val


def observation3_check(s, trials: int = 500, seed: int = 0, tol: float = nx.PSD_TOL, real_only: bool = False) -> bool:
    """Sample random unit-norm observables A and test <A^T (x) A> >= -tol.

    Requires a PPT symmetric state.  With complex Hermitian A the inequality can
    fail even on separable states (|phi phi> with complex phi and A = sigma_y);
    with ``real_only=True`` the samples are real symmetric, A^T = A, and the test
    reduces to <A (x) A> >= 0, which every PPT symmetric state satisfies.
    """
    rho, d = _rho_d(s)
    if not is_symmetric(rho, tol):
        raise NotSymmetric("state is not symmetric")
    lmin = nx.min_eigenvalue(partial_transpose(rho))
    if lmin < -tol:
        raise NotPPT(f"partial transpose has eigenvalue {lmin:.3e}")
    rng = _rng(seed)
    for _ in range(trials):
        g = rng.standard_normal((d, d))
        if not real_only:
            g = g + 1j * rng.standard_normal((d, d))
        a = g + g.conj().T
        a /= nx.frobenius(a)
        if np.trace(rho @ np.kron(a.T, a)).real < -tol:
            return False
    return True


def _check_partition(s: MultiQubitState, p: Bipartition) -> None:
    if p.n != s.n:
        raise BadPartition(f"partition covers {p.n} qubits, state has {s.n}")


def multiqubit_partial_transpose(s: MultiQubitState, p: Bipartition) -> np.ndarray:
    """Transpose every qubit in ``p.left``."""
    _check_partition(s, p)
    n = s.n
    axes = list(range(2 * n))
    for q in p.left:
        axes[q], axes[n + q] = n + q, q
    return s.tensor().transpose(axes).reshape(2**n, 2**n)


def multiqubit_realign(s: MultiQubitState, p: Bipartition) -> np.ndarray:
    """Realign with ``p.left`` as Alice and ``p.right`` as Bob.

    Output has shape (d_A^2, d_B^2); rows are Alice's (row, col) pairs.
    """
    _check_partition(s, p)
    n = s.n
    order = list(p.left) + list(p.right)
    t = s.tensor().transpose(order + [n + q for q in order])
    da, db = 2 ** len(p.left), 2 ** len(p.right)
    return t.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


@dataclass
class CriteriaReport:
    ppt_min_eigenvalue: float
    ccnr_trace_norm: float
    aa_min_value: float
    eta_min_eigenvalue: float
    corr_min_eigenvalue: float
    covariance_lhs: float
    covariance_rhs: float
    symmetric: bool
    permutationally_invariant: bool
    tol: float
    verdicts: dict = field(default_factory=dict)

    @property
    def any_violated(self) -> bool:
        return any(self.verdicts.values())

    def margins(self) -> dict:
        """Signed distance from each criterion's threshold; positive means violated."""
        return {
            "ppt": -self.ppt_min_eigenvalue,
            "ccnr": self.ccnr_trace_norm - 1.0,
            "aa_positivity": -self.aa_min_value,
            "eta": -self.eta_min_eigenvalue,
            "correlation": -self.corr_min_eigenvalue,
            "covariance": self.covariance_lhs - self.covariance_rhs,
        }


def full_report(s, basis: LocalOrthogonalBasis | None = None, tol: float = nx.PSD_TOL) -> CriteriaReport:
    """Evaluate all six criteria; a verdict is True when the criterion is violated."""
    rho, d = _rho_d(s)
    basis = basis if basis is not None else hermitian_basis(d)
    sym = is_symmetric(rho, tol)
    pi = is_permutationally_invariant(rho, tol)
    pt_min = nx.min_eigenvalue(partial_transpose(rho))
    ccnr = nx.trace_norm(realign(rho))
    aa_min, _ = min_aa_expectation(rho)
    eta_min = min_hermitian_eigenvalue(expectation_value_matrix(rho, basis))
    corr_min = correlation_min_eigenvalue(rho, basis)
    lhs, rhs = covariance_condition(rho, basis)
    report = CriteriaReport(
        ppt_min_eigenvalue=pt_min,
        ccnr_trace_norm=ccnr,
        aa_min_value=aa_min,
        eta_min_eigenvalue=eta_min,
        corr_min_eigenvalue=corr_min,
        covariance_lhs=lhs,
        covariance_rhs=rhs,
        symmetric=sym,
        permutationally_invariant=pi,
        tol=tol,
    )
    report.verdicts = {name: bool(m > tol) for name, m in report.margins().items()}
    if sym:
        _check_symmetric_consistency(report, rho)
    return report


def _check_symmetric_consistency(report: CriteriaReport, rho, tol: float = 1e-8) -> None:
    vals = (report.ppt_min_eigenvalue, report.aa_min_value, report.eta_min_eigenvalue)
    if max(vals) - min(vals) > tol:
        raise ConsistencyError(f"min-eigenvalue fields disagree on a symmetric state: {vals}")
    rho_a, rho_b = reduced_states(rho)
    if nx.frobenius(rho_a - rho_b) > 1e-10:
        raise ConsistencyError("reduced states differ on a symmetric state")
