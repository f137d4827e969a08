"""Density matrices on d x d and n-qubit systems, and the concrete states used
throughout the package.

Random generators draw from ``numpy.random.Generator`` seeded with an explicit
64-bit integer (PCG64 bit generator), so every failing property case replays
exactly from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import numerics as nx
from .exceptions import BadPartition, DimensionTooLarge, ValidationError

MAX_QUBITS = 8

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def validate_density(rho, tol: float = nx.PSD_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array or raise ValidationError."""
    try:
        m = nx.as_matrix(rho)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"density matrix must be square, got {m.shape}")
    if not nx.is_hermitian(m, tol):
        raise ValidationError("density matrix is not Hermitian")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"trace is {tr!r}, expected 1")
    lmin = float(np.linalg.eigvalsh(nx.hermitian_part(m))[0])
    if lmin < -tol:
        raise ValidationError(f"minimum eigenvalue {lmin:.3e} is negative")
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=complex, copy=True)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Density operator on C^d (x) C^d.

    ``rho[k*d + m, l*d + n]`` is the coefficient of ``|k><l| (x) |m><n|``.
    """

    d: int
    rho: np.ndarray = field(repr=False)
    tol: float = field(default=nx.PSD_TOL, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError("local dimension must be positive")
        m = validate_density(self.rho, self.tol)
        if m.shape != (self.d**2, self.d**2):
            raise ValidationError(f"matrix shape {m.shape} does not match d={self.d} (expected {self.d**2})")
        object.__setattr__(self, "rho", _frozen(m))

    @classmethod
    def from_matrix(cls, rho, tol: float = nx.PSD_TOL) -> "BipartiteState":
        n = np.asarray(rho).shape[0]
        d = int(round(np.sqrt(n)))
        if d * d != n:
            raise ValidationError(f"dimension {n} is not a perfect square")
        return cls(d, rho, tol)

    @classmethod
    def from_vector(cls, psi, d: int | None = None) -> "BipartiteState":
        psi = np.asarray(psi, dtype=complex).ravel()
        psi = psi / np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        if d is None:
            return cls.from_matrix(rho)
        return cls(d, rho)


@dataclass(frozen=True)
class Bipartition:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left, right = tuple(sorted(self.left)), tuple(sorted(self.right))
        if not left or not right:
            raise BadPartition("both sides of a bipartition must be non-empty")
        if set(left) & set(right):
            raise BadPartition("bipartition sides overlap")
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise BadPartition("repeated qubit index")
        if set(left) | set(right) != set(range(len(left) + len(right))):
            raise BadPartition("bipartition does not cover qubits 0..n-1")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def from_left(cls, left, n: int) -> "Bipartition":
        left = tuple(int(i) for i in left)
        if any(i < 0 or i >= n for i in left):
            raise BadPartition(f"qubit index out of range for n={n}: {left}")
        return cls(left, tuple(i for i in range(n) if i not in left))

    @property
    def n(self) -> int:
        return len(self.left) + len(self.right)


@dataclass(frozen=True, eq=False)
class MultiQubitState:
    n: int
    rho: np.ndarray = field(repr=False)
    tol: float = field(default=nx.PSD_TOL, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("need at least one qubit")
        m = validate_density(self.rho, self.tol)
        if m.shape != (2**self.n, 2**self.n):
            raise ValidationError(f"matrix shape {m.shape} does not match n={self.n} qubits")
        object.__setattr__(self, "rho", _frozen(m))

    def tensor(self) -> np.ndarray:
        """View as an array with axes (row_0..row_{n-1}, col_0..col_{n-1})."""
        return self.rho.reshape((2,) * (2 * self.n))


def flip_operator(d: int) -> np.ndarray:
    """Swap operator F with F|a>|b> = |b>|a>."""
    if d < 2:
        raise ValueError("flip operator needs d >= 2")
    f = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            f[b * d + a, a * d + b] = 1.0
    return f


def symmetric_projector(d: int) -> np.ndarray:
    return (np.eye(d * d) + flip_operator(d)) / 2


def antisymmetric_projector(d: int) -> np.ndarray:
    return (np.eye(d * d) - flip_operator(d)) / 2


def _as_rho(s):
    if isinstance(s, (BipartiteState, MultiQubitState)):
        return s.rho
    return np.asarray(s, dtype=complex)


def _local_dim(rho) -> int:
    d = int(round(np.sqrt(rho.shape[0])))
    if d * d != rho.shape[0]:
        raise ValidationError(f"dimension {rho.shape[0]} is not a perfect square")
    return d


def is_symmetric(s, tol: float = nx.HERMITIAN_TOL) -> bool:
    """True when F rho = rho = rho F within ``tol`` in Frobenius norm."""
    rho = _as_rho(s)
    f = flip_operator(_local_dim(rho))
    return nx.frobenius(f @ rho - rho) <= tol and nx.frobenius(rho @ f - rho) <= tol


def is_permutationally_invariant(s, tol: float = nx.HERMITIAN_TOL) -> bool:
    rho = _as_rho(s)
    f = flip_operator(_local_dim(rho))
    return nx.frobenius(f @ rho @ f - rho) <= tol


def basis_ket(d: int, *indices: int) -> np.ndarray:
    return nx.kron_all(np.eye(d)[i].reshape(-1, 1) for i in indices).ravel()


def rho33_basis() -> list[np.ndarray]:
    """The five symmetric two-qutrit vectors the bound entangled state is built from."""
    k = lambda *ix: basis_ket(3, *ix)  # noqa: E731
    a, b, g = 0, 1, 2
    return [
        k(a, a),
        (k(a, b) + k(b, a)) / np.sqrt(2),
        (k(a, g) + 2 * k(b, b) + k(g, a)) / np.sqrt(6),
        (k(g, b) + k(b, g)) / np.sqrt(2),
        k(g, g),
    ]


RHO33_WEIGHTS = (0.22, 0.176, 0.167, 0.254, 0.183)
RHO33_COUPLING = -0.059


def builtin_rho33() -> BipartiteState:
    """PPT bound entangled symmetric two-qutrit state."""
    vecs = rho33_basis()
    rho = sum(w * np.outer(v, v.conj()) for w, v in zip(RHO33_WEIGHTS, vecs))
    rho = rho + RHO33_COUPLING * (np.outer(vecs[3], vecs[0].conj()) + np.outer(vecs[0], vecs[3].conj()))
    return BipartiteState(3, rho)


def smolin_state(n: int, max_qubits: int = MAX_QUBITS) -> MultiQubitState:
    """Generalized Smolin state on 2n qubits.

    ``2^{-2n} [1 + (-1)^n sum_l sigma_l^{(x) 2n}]``; ``n=2`` is the four-qubit
    Smolin state.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    nq = 2 * n
    if nq > max_qubits:
        raise DimensionTooLarge(f"{nq} qubits exceeds the cap of {max_qubits}")
    corr = sum(nx.kron_all([p] * nq) for p in (PAULI_X, PAULI_Y, PAULI_Z))
    rho = (np.eye(2**nq) + (-1) ** n * corr) / 2**nq
    return MultiQubitState(nq, rho)


def permute_qubits(rho: np.ndarray, perm) -> np.ndarray:
    """Relabel qubits: output qubit ``i`` is input qubit ``perm[i]``."""
    n = len(perm)
    t = np.asarray(rho).reshape((2,) * (2 * n))
    axes = list(perm) + [n + p for p in perm]
    return t.transpose(axes).reshape(2**n, 2**n)


def is_qubit_permutation_invariant(s: MultiQubitState, tol: float = nx.HERMITIAN_TOL) -> bool:
    """Check invariance under every adjacent transposition (these generate S_n)."""
    for i in range(s.n - 1):
        perm = list(range(s.n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if nx.frobenius(permute_qubits(s.rho, perm) - s.rho) > tol:
            return False
    return True


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_symmetric_state(d: int, seed: int, rank: int | None = None) -> BipartiteState:
    """Pi_S G G^dagger Pi_S / Tr(.) with G a complex Ginibre d^2 x rank matrix."""
    if d < 2:
        raise ValueError("d must be >= 2")
    rng = _rng(seed)
    g = _ginibre(rng, d * d, rank or d * d)
    p = symmetric_projector(d)
    x = p @ g @ g.conj().T @ p
    x = (x + x.conj().T) / 2
    return BipartiteState(d, x / np.trace(x).real)


def random_permutationally_invariant_state(d: int, seed: int, rank: int | None = None) -> BipartiteState:
    """(X + F X F) / 2 normalized, X a random Wishart matrix; generally not symmetric."""
    rng = _rng(seed)
    g = _ginibre(rng, d * d, rank or d * d)
    x = g @ g.conj().T
    f = flip_operator(d)
    x = (x + f @ x @ f) / 2
    x = (x + x.conj().T) / 2
    return BipartiteState(d, x / np.trace(x).real)


def random_mixed_symmetric_state(d: int, seed: int) -> BipartiteState:
    """Random symmetric state blended with the symmetric maximally mixed state.

    The blend weight and the Ginibre rank are drawn from the same seed, so the
    family covers both PPT and NPT states and the boundary between them.
    """
    rng = _rng(seed)
    rank = int(rng.integers(1, d * d + 1))
    weight = float(rng.uniform())
    g = _ginibre(rng, d * d, rank)
    p = symmetric_projector(d)
    x = p @ g @ g.conj().T @ p
    x = x / np.trace(x).real
    x = (1 - weight) * x + weight * p / np.trace(p).real
    return BipartiteState(d, (x + x.conj().T) / 2)


def random_separable_symmetric_state(d: int, terms: int, seed: int) -> BipartiteState:
    """Convex mixture of ``|phi><phi| (x) |phi><phi|`` with random phi and weights."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms)) if terms > 1 else np.ones(1)
    rho = np.zeros((d * d, d * d), dtype=complex)
    for w in weights:
        phi = random_unit_vector(d, rng)
        pp = np.kron(phi, phi)
        rho += w * np.outer(pp, pp.conj())
    return BipartiteState(d, (rho + rho.conj().T) / 2)


def symmetric_maximally_mixed(d: int) -> BipartiteState:
    p = symmetric_projector(d)
    return BipartiteState(d, p / np.trace(p).real)


def triplet_state() -> BipartiteState:
    """(|01> + |10>)/sqrt(2)."""
    return BipartiteState.from_vector(basis_ket(2, 0, 1) + basis_ket(2, 1, 0), d=2)


def singlet_state() -> BipartiteState:
    return BipartiteState.from_vector(basis_ket(2, 0, 1) - basis_ket(2, 1, 0), d=2)


def product_state(phi, chi=None) -> BipartiteState:
    phi = np.asarray(phi, dtype=complex)
    chi = phi if chi is None else np.asarray(chi, dtype=complex)
    return BipartiteState.from_vector(np.kron(phi, chi), d=len(phi))


def maximally_mixed(d: int) -> BipartiteState:
    return BipartiteState(d, np.eye(d * d) / d**2)


def embed_as_qubits(s: BipartiteState) -> MultiQubitState:
    """Reinterpret a 2 x 2 state as a two-qubit state (same matrix)."""
    if s.d != 2:
        raise ValidationError("only d=2 states embed as two qubits")
    return MultiQubitState(2, s.rho)


def all_bipartitions(n: int, size: int):
    """All bipartitions whose left side has ``size`` qubits, left containing 0 when size*2 == n."""
    out = []
    for left in combinations(range(n), size):
        if 2 * size == n and 0 not in left:
            continue
        out.append(Bipartition.from_left(left, n))
    return out
