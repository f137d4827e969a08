"""Command-line front end.

Exit codes: 0 no criterion violated / nothing detected, 2 entanglement
detected, 1 error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__
from . import numerics as nx
from .criteria import full_report, multiqubit_partial_transpose, multiqubit_realign
from .exceptions import NotSymmetric, ParseError, SymsepError, UnknownBuiltin, ValidationError
from .schmidt import schmidt_decompose
from .serialization import dumps, load_state, save_state, save_witness
from .states import (
    MAX_QUBITS,
    BipartiteState,
    Bipartition,
    MultiQubitState,
    builtin_rho33,
    is_permutationally_invariant,
    is_symmetric,
    smolin_state,
)
from .witness import default_keep, evaluate, schmidt_witness

EXIT_OK, EXIT_ERROR, EXIT_DETECTED = 0, 1, 2
DEFAULT_TOL = 1e-9
DETECTION_THRESHOLD = 1e-6

log = logging.getLogger("symsep")


def resolve_tol(flag: float | None) -> float:
    if flag is not None:
        return flag
    env = os.environ.get("SYMSEP_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise SymsepError(f"SYMSEP_TOL={env!r} is not a number") from None
    return DEFAULT_TOL


def _header(command: str, args, tol: float, seed=None) -> dict:
    return {
        "tool": "symsep",
        "version": __version__,
        "command": command,
        "tolerance": tol,
        "seed": seed,
    }


def _input_descriptor(path, s) -> dict:
    desc = {"path": str(path)}
    if isinstance(s, BipartiteState):
        desc.update(kind="bipartite", d=s.d)
    else:
        desc.update(kind="multiqubit", n=s.n)
    return desc


def _load_bipartite(path, tol):
    s = load_state(path, tol)
    if not isinstance(s, BipartiteState):
        raise ValidationError("this command needs a bipartite state (use 'multiqubit')")
    return s


def _schmidt_block(s: BipartiteState, tol: float):
    if not is_permutationally_invariant(s, tol):
        return None
    dec = schmidt_decompose(s)
    return {"coefficients": dec.coefficients, "sum": dec.total(), "min": float(dec.coefficients.min())}


def _fmt(x) -> str:
    return f"{x: .12g}"


def _emit(report: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(dumps(report, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_builtin(args) -> int:
    name = args.name
    if name == "rho33":
        s = builtin_rho33()
    elif name == "smolin":
        if args.n is None:
            raise SymsepError("builtin smolin needs --n")
        s = smolin_state(args.n, MAX_QUBITS)
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r} (choose rho33 or smolin)")
    if args.out is None:
        raise SymsepError("builtin needs --out")
    save_state(s, args.out)
    dim = s.rho.shape[0]
    if args.format == "json":
        print(dumps({"command": "builtin", "name": name, "out": str(args.out), "dimension": dim}))
    else:
        print(f"wrote {name} ({dim}x{dim}) to {args.out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    tol = resolve_tol(args.tol)
    s = _load_bipartite(args.input, tol)
    rep = full_report(s, tol=tol)
    schmidt = _schmidt_block(s, tol)
    report = _header("analyze", args, tol)
    report.update(
        input=_input_descriptor(args.input, s),
        symmetry={"symmetric": rep.symmetric, "permutationally_invariant": rep.permutationally_invariant},
        criteria={
            "ppt_min_eigenvalue": rep.ppt_min_eigenvalue,
            "ccnr_trace_norm": rep.ccnr_trace_norm,
            "aa_min_value": rep.aa_min_value,
            "eta_min_eigenvalue": rep.eta_min_eigenvalue,
            "corr_min_eigenvalue": rep.corr_min_eigenvalue,
            "covariance_lhs": rep.covariance_lhs,
            "covariance_rhs": rep.covariance_rhs,
            "verdicts": rep.verdicts,
        },
        schmidt=schmidt,
        witness=None,
        entangled=rep.any_violated,
    )
    lines = [
        f"input: {args.input} (d={s.d})",
        f"symmetric: {rep.symmetric}  permutationally invariant: {rep.permutationally_invariant}",
        f"(i)   PPT   min eigenvalue of partial transpose {_fmt(rep.ppt_min_eigenvalue)}",
        f"(ii)  CCNR  trace norm of realigned matrix      {_fmt(rep.ccnr_trace_norm)}",
        f"(iii) min <A x A> over unit observables         {_fmt(rep.aa_min_value)}",
        f"(iv)  min eigenvalue of eta                     {_fmt(rep.eta_min_eigenvalue)}",
        f"(v)   min eigenvalue of C                       {_fmt(rep.corr_min_eigenvalue)}",
        f"(vi)  ||C||_1^2 = {_fmt(rep.covariance_lhs)}  vs  {_fmt(rep.covariance_rhs)}",
        "violated: " + (", ".join(k for k, v in rep.verdicts.items() if v) or "none"),
    ]
    if schmidt is not None:
        lines.append("schmidt coefficients: " + " ".join(f"{c:.6g}" for c in schmidt["coefficients"]))
    _emit(report, args.format, lines)
    return EXIT_DETECTED if rep.any_violated else EXIT_OK


def cmd_schmidt(args) -> int:
    tol = resolve_tol(args.tol)
    s = _load_bipartite(args.input, tol)
    dec = schmidt_decompose(s)
    sym = is_symmetric(s, tol)
    negative = bool(dec.coefficients.min() < -tol)
    report = _header("schmidt", args, tol)
    report.update(
        input=_input_descriptor(args.input, s),
        symmetry={"symmetric": sym, "permutationally_invariant": True},
        schmidt={
            "coefficients": dec.coefficients,
            "sum": dec.total(),
            "min": float(dec.coefficients.min()),
            "observables": [[[[float(z.real), float(z.imag)] for z in row] for row in m] for m in dec.observables],
        },
        entangled=sym and negative,
    )
    lines = [f"input: {args.input} (d={s.d}, symmetric={sym})"]
    lines += [f"  L[{k}] = {_fmt(c)}" for k, c in enumerate(dec.coefficients)]
    lines.append(f"sum = {_fmt(dec.total())}")
    _emit(report, args.format, lines)
    return EXIT_DETECTED if sym and negative else EXIT_OK


def cmd_witness(args) -> int:
    tol = resolve_tol(args.tol)
    s = _load_bipartite(args.input, tol)
    if not is_symmetric(s, tol):
        raise NotSymmetric("witness construction needs a symmetric state")
    keep = 6 if s.d == 3 else default_keep(s.d)
    w, dec = schmidt_witness(s, keep=keep, restarts=args.restarts, seed=args.seed)
    expectation = float(np.trace(w.operator @ s.rho).real)
    value = evaluate(w, s)
    detected = value < -DETECTION_THRESHOLD
    if args.out is not None:
        save_witness(w, args.out)
    weights = np.where(np.arange(len(dec.coefficients)) < keep, np.sqrt(np.clip(dec.coefficients, 0, None)), 0.0)
    report = _header("witness", args, tol, seed=args.seed)
    report.update(
        input=_input_descriptor(args.input, s),
        symmetry={"symmetric": True, "permutationally_invariant": True},
        schmidt={"coefficients": dec.coefficients, "sum": dec.total(), "min": float(dec.coefficients.min())},
        witness={
            "kind": w.kind,
            "constant": w.constant,
            "expectation": expectation,
            "value": value,
            "kept": keep,
            "weights": weights,
            "restarts": args.restarts,
            "converged_fraction": w.optimization.converged_fraction,
            "residual": w.optimization.residual,
            "detected": detected,
        },
        entangled=detected,
    )
    lines = [
        f"input: {args.input} (d={s.d})",
        f"kept {keep} Schmidt terms, f_k = sqrt(L_k)",
        f"constant (max over product symmetric states) {_fmt(w.constant)}",
        f"Tr(M rho)                                    {_fmt(expectation)}",
        f"witness value                                {_fmt(value)}",
        "verdict: " + ("entangled" if detected else "not detected"),
    ]
    _emit(report, args.format, lines)
    return EXIT_DETECTED if detected else EXIT_OK


def parse_partition(text: str, n: int) -> Bipartition:
    try:
        left = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ParseError(f"bad partition {text!r}; expected comma-separated qubit indices") from None
    return Bipartition.from_left(left, n)


def cmd_multiqubit(args) -> int:
    tol = resolve_tol(args.tol)
    s = load_state(args.input, tol)
    if not isinstance(s, MultiQubitState):
        raise ValidationError("multiqubit needs a multiqubit state file")
    if args.partition is None:
        raise SymsepError("multiqubit needs --partition")
    p = parse_partition(args.partition, s.n)
    pt_min = nx.min_eigenvalue(multiqubit_partial_transpose(s, p))
    tn = nx.trace_norm(multiqubit_realign(s, p))
    verdicts = {"ppt": pt_min < -tol, "ccnr": tn > 1 + tol}
    report = _header("multiqubit", args, tol)
    report.update(
        input=_input_descriptor(args.input, s),
        partition={"left": list(p.left), "right": list(p.right)},
        pt_min_eigenvalue=pt_min,
        realign_trace_norm=tn,
        verdicts=verdicts,
        entangled=any(verdicts.values()),
    )
    lines = [
        f"input: {args.input} (n={s.n})",
        f"partition: {list(p.left)} | {list(p.right)}",
        f"PT min eigenvalue      {_fmt(pt_min)}",
        f"realigned trace norm   {_fmt(tn)}",
        "violated: " + (", ".join(k for k, v in verdicts.items() if v) or "none"),
    ]
    _emit(report, args.format, lines)
    return EXIT_DETECTED if any(verdicts.values()) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symsep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=float, default=None, help="tolerance (env SYMSEP_TOL)")

    p = sub.add_parser("builtin", parents=[common], help="write a built-in state file")
    p.add_argument("name", help="rho33 or smolin")
    p.add_argument("--n", type=int, default=None, help="half-system size for smolin (2n qubits)")
    p.add_argument("-o", "--out", required=False)
    p.set_defaults(func=cmd_builtin)

    for name, func, helptext in (
        ("analyze", cmd_analyze, "evaluate the six separability criteria"),
        ("schmidt", cmd_schmidt, "operator Schmidt decomposition"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("-i", "--input", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("witness", parents=[common], help="build and evaluate a Schmidt-based witness")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--out", default=None, help="write the witness as JSON")
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("multiqubit", parents=[common], help="PPT and realignment across a qubit bipartition")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--partition", required=True, help="comma-separated qubits on the left side")
    p.set_defaults(func=cmd_multiqubit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except SymsepError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
