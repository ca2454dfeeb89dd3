"""Command-line entry point: ``pseudostab <subcommand> [options]``.

Exit status is 0 when the suite records no failures, 1 when it does and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .config import DEFAULT_TOLERANCES, REPORT_DIR_ENV, Tolerances
from .formats import FormatError, read_circuit, read_hamiltonian


def _int_list(text: str) -> list[int]:
    """``3``, ``1,3,5`` or an inclusive range ``2-8``."""
    out: list[int] = []
    for part in text.split(","):
        if "-" in part.strip()[1:]:
            lo, hi = part.split("-", 1)
            out += range(int(lo), int(hi) + 1)
        else:
            out.append(int(part))
    return out


def _common(p: argparse.ArgumentParser, trials: int | None = None, n: str | None = None) -> None:
    p.add_argument("--seed", type=int, default=0)
    if trials is not None:
        p.add_argument("--trials", type=int, default=trials)
    if n is not None:
        p.add_argument("--n", type=_int_list, default=_int_list(n), help="qubit counts, e.g. 2-8 or 6,7")
    p.add_argument("--tol-energy", type=float, default=DEFAULT_TOLERANCES.energy)
    p.add_argument("--tol-stab", type=float, default=DEFAULT_TOLERANCES.stab)
    p.add_argument("--tol-matrix", type=float, default=DEFAULT_TOLERANCES.matrix)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help=f"report path (JSON lines); default ${REPORT_DIR_ENV}/<suite>-<seed>.jsonl")
    p.add_argument("--json", action="store_true", help="print the report as JSON instead of a summary")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pseudostab", description="Stabilizer-group energy bound checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy of a circuit's output state")
    p.add_argument("circuit")
    p.add_argument("hamiltonian")
    _common(p)

    p = sub.add_parser("check-theorem1", help="rotation-count energy bound over random circuits")
    _common(p, trials=200, n="2-8")
    p.add_argument("--t", type=_int_list, default=None, help="rotation counts (default 0..n)")

    p = sub.add_parser("check-stabilizerodd", help="Type I/II witnesses for all maximal commuting groups")
    p.add_argument("--k", type=_int_list, default=[1, 3])
    p.add_argument("--allow-k5", action="store_true", help="permit the 75735-group k=5 enumeration")
    _common(p)

    p = sub.add_parser("check-localbound", help="Hadamard-type term energy at pseudo-stabilizer sets")
    p.add_argument("--k", type=_int_list, default=[1, 3, 5])
    _common(p, trials=500)

    p = sub.add_parser("check-dimension-bound", help="dim G against local views over coverings")
    _common(p, trials=1000, n="1-8")

    p = sub.add_parser("check-condition", help="count of pseudo-stabilizer disjoint terms")
    p.add_argument("--ham", help="Hamiltonian file (default: magic and rotated repetition at --n)")
    p.add_argument("--t", type=int, default=3, help="largest rotation count")
    _common(p, trials=100, n="6-8")

    p = sub.add_parser("check-symplectic", help="binary symplectic identities")
    p.add_argument("--n-max", type=int, default=5)
    _common(p, trials=1000)

    p = sub.add_parser("check-fidelity", help="overlap bound for anticommuting stabilizers")
    _common(p, trials=1000)

    p = sub.add_parser("check-fact6", help="r + ell against exhaustive commuting-subgroup search")
    _common(p, trials=200)
    return ap


def _dispatch(args: argparse.Namespace, tol: Tolerances) -> harness.VerificationReport:
    cmd = args.command
    if cmd == "energy":
        return harness.run_energy(read_circuit(args.circuit), read_hamiltonian(args.hamiltonian), tol)
    if cmd == "check-theorem1":
        return harness.check_theorem1(args.n, args.t, args.trials, args.seed, tol, args.workers)
    if cmd == "check-stabilizerodd":
        return harness.check_stabilizerodd(args.k, args.seed, tol, args.allow_k5)
    if cmd == "check-localbound":
        return harness.check_localbound(args.k, args.trials, args.seed, tol, args.workers)
    if cmd == "check-dimension-bound":
        return harness.check_dimension_bound(args.n, args.trials, args.seed, tol, args.workers)
    if cmd == "check-condition":
        if args.ham:
            hs = [(args.ham, read_hamiltonian(args.ham))]
        else:
            hs = harness.default_condition_hamiltonians(args.n)
        return harness.check_condition(hs, args.t, args.trials, args.seed, tol, args.workers)
    if cmd == "check-symplectic":
        return harness.check_symplectic(args.n_max, args.trials, args.seed, tol, args.workers)
    if cmd == "check-fidelity":
        return harness.check_fidelity(args.trials, args.seed, tol, args.workers)
    if cmd == "check-fact6":
        return harness.check_fact6(args.trials, args.seed, tol)
    raise AssertionError(cmd)


def _print_energy(rep: harness.VerificationReport) -> None:
    info = rep.info
    for row in info["terms"]:
        print(f"{row['term']:<24} {row['energy']:.12f}")
    print(f"energy {info['energy']:.12f}")
    if "bound" in info:
        print(f"bound  {info['bound']:.12f}  (t = {info['rotation_count']})")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    tol = Tolerances(stab=args.tol_stab, energy=args.tol_energy, matrix=args.tol_matrix)
    try:
        rep = _dispatch(args, tol)
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(rep.to_json())
    else:
        if rep.suite == "energy":
            _print_energy(rep)
        print(rep.summary() if rep.suite != "energy" else rep.summary().splitlines()[0])
    path = rep.write(args.out)
    if path:
        print(f"report written to {path}", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
