"""Acceptance checks, one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even under
output capture).
"""

import time

import numpy as np
import pytest

from symsep import numerics as nx
from symsep import states
from symsep.criteria import (
    CRITERIA,
    extremal_observable,
    full_report,
    general_expectation_matrix,
    matrix_unit_basis,
    multiqubit_partial_transpose,
    multiqubit_realign,
    partial_transpose,
    realign,
)
from symsep.schmidt import quasi_mixture_build, random_quasi_mixture, schmidt_decompose, shift_to_state
from symsep.witness import build_rho33_witness, evaluate

DIMS = (2, 3, 4)
SEEDS = range(100)
TARGET_CONSTANT = 0.447775
TARGET_VALUE = -0.000753


@pytest.fixture(scope="module")
def corpus():
    return [states.random_mixed_symmetric_state(d, seed) for d in DIMS for seed in SEEDS]


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, detail

    return emit


def test_flip_realignment_identity(corpus, report):
    start = time.perf_counter()
    worst_flip = worst_eta = 0.0
    for s in corpus:
        pt = partial_transpose(s)
        worst_flip = max(worst_flip, nx.frobenius(states.flip_operator(s.d) @ realign(s) - pt))
        eta, _ = general_expectation_matrix(s, matrix_unit_basis(s.d))
        worst_eta = max(worst_eta, nx.frobenius(pt - eta))
    elapsed = time.perf_counter() - start
    ok = worst_flip <= 1e-10 and worst_eta <= 1e-10 and elapsed < 10
    report(
        "F rho^R = rho^TA = eta",
        ok,
        f"max |F rho^R - rho^TA| = {worst_flip:.2e}, max |rho^TA - eta| = {worst_eta:.2e}, {elapsed:.2f} s",
    )


def test_spectral_link(corpus, report):
    worst = 0.0
    for s in corpus:
        sv = np.sort(nx.singular_values(realign(s)))
        ev = np.sort(np.abs(nx.hermitian_eig(partial_transpose(s)).eigenvalues))
        worst = max(worst, float(np.max(np.abs(sv - ev))))
    report("singular values of rho^R = |eigenvalues| of rho^TA", worst <= 1e-9, f"max deviation {worst:.2e}")


def test_six_way_equivalence(corpus, report):
    disagreements, banded, npt = [], 0, 0
    for s in corpus:
        rep = full_report(s)
        if abs(rep.ppt_min_eigenvalue) < nx.BOUNDARY_BAND:
            banded += 1
            continue
        verdicts = {rep.verdicts[name] for name in CRITERIA}
        npt += rep.verdicts["ppt"]
        if len(verdicts) != 1:
            disagreements.append((s.d, rep.verdicts))
    report(
        "six criteria agree",
        not disagreements,
        f"{len(corpus) - banded} states compared ({npt} entangled, {banded} in band), {len(disagreements)} disagreements",
    )


def test_extremal_observable(corpus, report):
    worst_gap = worst_norm = worst_herm = 0.0
    count = 0
    for s in corpus:
        lmin = nx.min_eigenvalue(partial_transpose(s))
        if lmin >= -nx.BOUNDARY_BAND:
            continue
        count += 1
        a, val = extremal_observable(s)
        direct = float(np.trace(s.rho @ np.kron(a, a)).real)
        worst_gap = max(worst_gap, abs(direct - lmin), abs(val - lmin))
        worst_norm = max(worst_norm, abs(np.trace(a @ a).real - 1))
        worst_herm = max(worst_herm, nx.frobenius(a - a.conj().T))
    ok = count > 0 and worst_gap <= 1e-7 and worst_norm <= 1e-10 and worst_herm <= 1e-12
    report(
        "extremal observable reaches the PT minimum",
        ok,
        f"{count} entangled states, max gap {worst_gap:.2e}, max |Tr A^2 - 1| {worst_norm:.2e}",
    )


def test_rho33_profile(report):
    s = states.builtin_rho33()
    pt = nx.min_eigenvalue(partial_transpose(s))
    tn = nx.trace_norm(realign(s))
    lam = schmidt_decompose(s).coefficients
    ok = states.is_symmetric(s) and pt >= -1e-9 and tn <= 1 + 1e-9 and lam.min() >= -1e-9 and abs(lam.sum() - 1) <= 1e-9
    report(
        "two-qutrit bound entangled state profile",
        ok,
        f"PT min {pt:.3e}, CCNR norm {tn:.12f}, min coefficient {lam.min():.3e}, sum {lam.sum():.12f}",
    )


@pytest.fixture(scope="module")
def timed_witness():
    start = time.perf_counter()
    w = build_rho33_witness(restarts=200, seed=42)
    return w, time.perf_counter() - start


def test_witness_reproduction(timed_witness, report):
    w, elapsed = timed_witness
    rho = states.builtin_rho33()
    value = evaluate(w, rho)
    literal = TARGET_CONSTANT - float(np.trace(w.operator @ rho.rho).real)
    ok = (
        abs(w.constant - TARGET_CONSTANT) <= 1e-3
        and abs(value - TARGET_VALUE) <= 2e-4
        and abs(literal - TARGET_VALUE) <= 1e-5
        and elapsed < 60
    )
    report(
        "witness reproduction",
        ok,
        f"constant {w.constant:.6f}, value {value:.7f}, with literal constant {literal:.7f}, {elapsed:.1f} s",
    )


def test_witness_soundness(timed_witness, report):
    w, _ = timed_witness
    values = [
        evaluate(w, states.random_separable_symmetric_state(3, 1 + seed % 9, 10_000 + seed)) for seed in range(200)
    ]
    report("witness nonnegative on separable states", min(values) >= -1e-6, f"min over 200 states {min(values):.3e}")


def test_multipartite(report):
    s = states.smolin_state(2)
    half = [nx.min_eigenvalue(multiqubit_partial_transpose(s, p)) for p in states.all_bipartitions(4, 2)]
    single = [nx.min_eigenvalue(multiqubit_partial_transpose(s, p)) for p in states.all_bipartitions(4, 1)]
    tn = nx.trace_norm(multiqubit_realign(s, states.Bipartition.from_left([0, 1], 4)))
    ok = len(half) == 3 and len(single) == 4 and min(half) >= -1e-9 and max(single) < -1e-3 and tn <= 1 + 1e-9
    report(
        "four-qubit Smolin cuts",
        ok,
        f"2:2 PT minima {np.round(half, 12).tolist()}, 1:3 PT minima {np.round(single, 12).tolist()}, 2:2 CCNR norm {tn:.12f}",
    )


def test_schmidt_sum_rules(corpus, report):
    worst_sum = worst_rec = 0.0
    for s in corpus:
        dec = schmidt_decompose(s)
        worst_sum = max(worst_sum, abs(dec.total() - 1))
        worst_rec = max(worst_rec, nx.frobenius(dec.reconstruct() - s.rho))
    pi_sums = []
    for seed in range(50):
        s = states.random_permutationally_invariant_state(2 + seed % 3, seed)
        dec = schmidt_decompose(s)
        pi_sums.append(dec.total())
        worst_rec = max(worst_rec, nx.frobenius(dec.reconstruct() - s.rho))
    ok = worst_sum <= 1e-9 and worst_rec <= 1e-9 and all(-1 - 1e-9 <= t <= 1 + 1e-9 for t in pi_sums)
    report(
        "Schmidt sum rules",
        ok,
        f"symmetric max |sum-1| {worst_sum:.2e}, invariant sums in [{min(pi_sums):.3f}, {max(pi_sums):.3f}], max reconstruction error {worst_rec:.2e}",
    )


def _psd_quasi_mixture(seed):
    """Rejection-sample a positive semidefinite sum_k c_k A_k (x) A_k."""
    rng = np.random.Generator(np.random.PCG64(seed))
    d = 2 + seed % 3
    while True:
        terms = int(rng.integers(1, 6))
        coeffs = rng.uniform(0.05, 1.0, terms)
        ops = []
        for _ in range(terms):
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            ops.append((g + g.conj().T) / 2 + rng.uniform(0, 3) * np.eye(d))
        o = quasi_mixture_build(coeffs, ops)
        if nx.min_eigenvalue(o) >= 0:
            return o / np.trace(o).real


def test_quasi_mixtures_pass_ccnr(report):
    norms = []
    for seed in range(50):
        rho = _psd_quasi_mixture(seed)
        norms.append(nx.trace_norm(realign(rho)))
        o = random_quasi_mixture(2 + seed % 3, 1 + seed % 5, seed)
        norms.append(nx.trace_norm(realign(shift_to_state(o))))
    report(
        "nonnegative quasi-mixtures pass CCNR",
        max(norms) <= 1 + 1e-9,
        f"max trace norm over 100 states {max(norms):.12f}",
    )
