"""Verification suites and their structured reports.

Each suite builds a list of independent trial jobs, runs them (optionally in
a process pool), and folds the per-trial results into a
:class:`VerificationReport`.  Every trial derives its own RNG from the suite
seed and the trial coordinates, so results do not depend on scheduling.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .config import DEFAULT_TOLERANCES, LAGRANGIAN_CAP, LAGRANGIAN_OPTIONAL_CAP, Tolerances, report_dir
from .groups import PauliSubgroup, canonical_basis, independent_generators, verify_canonical_basis
from .hamiltonian import (
    SIN2_PI_8,
    HamTerm,
    LocalHamiltonian,
    TermKind,
    build_magic_hamiltonian,
    energy,
    rotated_repetition_hamiltonian,
    term_energies,
    term_energy,
    theorem1_bound,
)
from .local_views import (
    QubitSet,
    classify_types,
    count_pseudo_stabilizer_terms,
    dimension_bound_audit,
    find_type_witness,
    is_pseudo_stabilizer,
    local_view_group,
    satisfies_type,
)
from .oracles import (
    all_subspaces,
    center_bruteforce,
    group_elements,
    isotropic_subspaces,
    lagrangian_count_bruteforce,
    max_commuting_dim_bruteforce,
    max_isotropic_dim,
    random_subspace,
    type_elements_bruteforce,
)
from .pauli import PauliWord
from .statevec import (
    Circuit,
    Gate,
    Statevector,
    extract_stabilizer_group,
    fidelity_bound_check,
    prepare_psi_t,
    random_circuit,
    random_clifford_gates,
    random_pauli,
    random_angle,
    simulate,
)
from .symplectic import (
    F2Subspace,
    extend_to_lagrangian,
    enumerate_lagrangians,
    intersect,
    is_isotropic,
    is_lagrangian,
    is_lagrangian_in,
    lagrangian_count,
    maximal_isotropic,
    orthogonal_complement,
    project_bits,
    project_subspace,
    radical,
    reduce_rows,
    reduce_vector,
    subspace_sum,
)
from .tableau import random_stabilizer_group

SUITES = (
    "energy",
    "theorem1",
    "stabilizerodd",
    "localbound",
    "dimension-bound",
    "condition",
    "symplectic",
    "fidelity",
    "fact6",
)


# -- reports --------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    trials: int
    failures: list[dict[str, Any]]
    seed: int | None
    tolerances: dict[str, float]
    wall_time: float
    info: dict[str, Any] = field(default_factory=dict)
    version: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "VerificationReport":
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_jsonl(self) -> str:
        """One header record, then one record per failure."""
        head = self.to_dict()
        head.pop("failures")
        head["record"] = "report"
        head["failure_count"] = len(self.failures)
        lines = [json.dumps(head, sort_keys=True)]
        lines += [json.dumps({"record": "failure", **f}, sort_keys=True) for f in self.failures]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "VerificationReport":
        head, failures = None, []
        for line in text.splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            kind = rec.pop("record")
            if kind == "report":
                head = rec
            elif kind == "failure":
                failures.append(rec)
        if head is None:
            raise ValueError("no report record found")
        count = head.pop("failure_count")
        if count != len(failures):
            raise ValueError(f"report lists {count} failures, found {len(failures)}")
        return cls(failures=failures, **head)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [
            f"[{status}] {self.suite}: {self.trials} trials, {len(self.failures)} failures, "
            f"seed={self.seed}, {self.wall_time:.2f}s"
        ]
        for k in sorted(self.info):
            lines.append(f"  {k}: {self.info[k]}")
        for f in self.failures[:10]:
            lines.append(f"  failure: {json.dumps(f, sort_keys=True)}")
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more")
        return "\n".join(lines)

    def write(self, path: str | None = None) -> str | None:
        """Write JSONL to ``path``, or into the default report directory if set."""
        if path is None:
            d = report_dir()
            if d is None:
                return None
            os.makedirs(d, exist_ok=True)
            path = os.path.join(d, f"{self.suite}-{self.seed}.jsonl")
        with open(path, "w") as f:
            f.write(self.to_jsonl())
        return path


def _versions() -> dict[str, str]:
    return {"pseudostab": __version__, "numpy": np.__version__}


def _failure(inputs: dict, expected: Any, observed: Any) -> dict[str, Any]:
    return {"inputs": inputs, "expected": expected, "observed": observed}


@dataclass
class TrialResult:
    failures: list[dict[str, Any]] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)
    count: int = 1

    def fail(self, inputs: dict, expected: Any, observed: Any) -> None:
        self.failures.append(_failure(inputs, expected, observed))

    def bump(self, key: str, by: int = 1) -> None:
        self.info[key] = self.info.get(key, 0) + by


def _merge_info(acc: dict[str, Any], new: dict[str, Any]) -> None:
    # min_* and max_* keys keep extremes, everything else is summed
    for k, v in new.items():
        if k not in acc:
            acc[k] = v
        elif k.startswith("min_"):
            acc[k] = min(acc[k], v)
        elif k.startswith("max_"):
            acc[k] = max(acc[k], v)
        else:
            acc[k] += v


def _map(fn: Callable[[tuple], TrialResult], jobs: Sequence[tuple], workers: int) -> list[TrialResult]:
    """Results in job order, whether or not a process pool is used."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [fn(j) for j in jobs]


def _run(
    suite: str,
    fn: Callable[[tuple], TrialResult],
    jobs: Sequence[tuple],
    seed: int | None,
    tol: Tolerances,
    workers: int = 1,
    info: dict[str, Any] | None = None,
) -> VerificationReport:
    start = time.perf_counter()
    results = _map(fn, jobs, workers)
    failures: list[dict[str, Any]] = []
    merged: dict[str, Any] = dict(info or {})
    trials = 0
    for r in results:
        failures.extend(r.failures)
        _merge_info(merged, r.info)
        trials += r.count
    return VerificationReport(
        suite=suite,
        trials=trials,
        failures=failures,
        seed=seed,
        tolerances=tol.as_dict(),
        wall_time=time.perf_counter() - start,
        info=merged,
        version=_versions(),
    )


def _rng(seed: int, *coords: int) -> np.random.Generator:
    return np.random.default_rng([seed, *coords])


def _support_mask(g: PauliSubgroup) -> int:
    m = 0
    for w in g.generators:
        m |= w.support
    return m


# -- energy of one circuit ---------------------------------------------------


def run_energy(c: Circuit, h: LocalHamiltonian, tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Energy of C|0...0> with a per-term breakdown and, for H_D, the rotation-count bound."""
    start = time.perf_counter()
    if c.n != h.n:
        raise ValueError(f"circuit has {c.n} qubits, Hamiltonian {h.n}")
    psi = simulate(c)
    terms = term_energies(h, psi)
    e = energy(h, psi)
    info: dict[str, Any] = {
        "energy": e,
        "terms": [{"term": t.describe(), "energy": v} for t, v in zip(h.terms, terms)],
        "rotation_count": c.rotation_count,
    }
    failures = []
    if h.is_magic():
        bound = theorem1_bound(h.n, c.rotation_count)
        info["bound"] = bound
        if e < bound - tol.energy:
            failures.append(_failure({"n": h.n, "t": c.rotation_count}, f">= {bound}", e))
    return VerificationReport(
        "energy", 1, failures, None, tol.as_dict(), time.perf_counter() - start, info, _versions()
    )


# -- rotation-count energy bound ---------------------------------------------


def _theorem1_trial(job) -> TrialResult:
    seed, n, t, trial, tol_e, tol_s = job
    res = TrialResult()
    rng = _rng(seed, 1, n, t, trial)
    c = random_circuit(n, n, t, rng)
    psi = simulate(c)
    h = build_magic_hamiltonian(n)
    terms = term_energies(h, psi)
    e = float(h.normalization) * sum(terms)
    bound = theorem1_bound(n, t)
    where = {"n": n, "t": t, "trial": trial}
    if e < bound - tol_e:
        res.fail({**where, "check": "energy"}, f">= {bound}", e)
    res.info["min_energy_margin"] = e - bound
    g = extract_stabilizer_group(psi, tol_s)
    if g.dim < n - t:
        res.fail({**where, "check": "stabilizer-dimension"}, f">= {n - t}", g.dim)
    touched = _support_mask(g)
    if touched.bit_count() < n - t:
        res.fail({**where, "check": "qubits-touched"}, f">= {n - t}", touched.bit_count())
    # one-qubit terms on touched qubits each carry at least sin^2(pi/8)
    for q in range(n):
        if (touched >> q) & 1 and terms[q] < SIN2_PI_8 - tol_e:
            res.fail({**where, "check": "one-qubit-term", "qubit": q}, f">= {SIN2_PI_8}", terms[q])
    res.bump("stabilizer_dim_above_n_minus_t", int(g.dim > n - t))
    return res


def _psi_t_trial(job) -> TrialResult:
    n, t, tol_e = job
    res = TrialResult()
    e = energy(build_magic_hamiltonian(n), prepare_psi_t(n, t))
    bound = theorem1_bound(n, t)
    if abs(e - bound) > tol_e:
        res.fail({"n": n, "t": t, "check": "saturation"}, bound, e)
    res.info["max_saturation_error"] = abs(e - bound)
    return res


def check_theorem1(
    n_values: Iterable[int] = range(2, 9),
    t_values: Iterable[int] | None = None,
    trials: int = 200,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
) -> VerificationReport:
    """Random circuits with t rotations: energy >= (1 - t/n) sin^2(pi/8), dim stab >= n - t,
    at least n - t touched qubits each with one-qubit term energy >= sin^2(pi/8); plus psi_t saturation."""
    n_values = list(n_values)
    t_list = None if t_values is None else list(t_values)
    jobs = []
    sat = []
    for n in n_values:
        ts = range(n + 1) if t_list is None else [t for t in t_list if 0 <= t <= n]
        for t in ts:
            jobs += [(seed, n, t, i, tol.energy, tol.stab) for i in range(trials)]
            sat.append((n, t, tol.energy))
    rep = _run("theorem1", _theorem1_trial, jobs, seed, tol, workers)
    sat_rep = _run("theorem1", _psi_t_trial, sat, seed, tol)
    rep.failures += sat_rep.failures
    rep.info["saturation_cases"] = sat_rep.trials
    _merge_info(rep.info, sat_rep.info)
    rep.info["circuits"] = len(jobs)
    rep.trials += sat_rep.trials
    return rep


# -- maximal commuting subgroups of odd-size Pauli groups ------------------------


def check_stabilizerodd(
    k_values: Iterable[int] = (1, 3),
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    allow_k5: bool = False,
) -> VerificationReport:
    """Every Lagrangian of F_2^{2k} (odd k) has a verified Type I or Type II element."""
    start = time.perf_counter()
    failures: list[dict[str, Any]] = []
    info: dict[str, Any] = {}
    total = 0
    for k in k_values:
        if k % 2 == 0 or k < 1:
            raise ValueError(f"k={k} is not a positive odd integer")
        cap = LAGRANGIAN_OPTIONAL_CAP if allow_k5 else LAGRANGIAN_CAP
        if k > cap:
            raise ValueError(
                f"refusing k={k}: {lagrangian_count(k)} subgroups (cap k <= {cap}"
                + ("" if allow_k5 else "; k=5 needs the optional flag") + ")"
            )
        a = QubitSet.full(k)
        counted = 0
        kinds = {"TYPE_I": 0, "TYPE_II": 0}
        for lag in enumerate_lagrangians(k, max_n=cap):
            counted += 1
            gens = tuple(PauliWord(k, 0, r & ((1 << k) - 1), r >> k) for r in lag.rows)
            grp = PauliSubgroup(k, gens)
            wit = find_type_witness(grp, a)
            kinds[wit.kind.name] += 1
            ok = satisfies_type(wit.kind, wit.local_view, a) and wit.element in grp
            if k <= 3:
                t1, t2 = type_elements_bruteforce(group_elements(grp), a.members, k)
                bits = wit.element.x | (wit.element.z << k)
                ok = ok and bits in (t1 if wit.kind.name == "TYPE_I" else t2)
            if not ok:
                failures.append(_failure({"k": k, "group": str(grp)}, "Type I or II witness", str(wit.element)))
        expected = lagrangian_count(k)
        independent = lagrangian_count_bruteforce(k) if k <= 3 else expected
        info[f"k{k}_subgroups"] = counted
        info[f"k{k}_count_oracle"] = independent
        info[f"k{k}_type_i"] = kinds["TYPE_I"]
        info[f"k{k}_type_ii"] = kinds["TYPE_II"]
        if counted != expected or counted != independent:
            failures.append(_failure({"k": k, "check": "count"}, [expected, independent], counted))
        total += counted
    return VerificationReport(
        "stabilizerodd", total, failures, seed, tol.as_dict(), time.perf_counter() - start, info, _versions()
    )


# -- local energy bound at pseudo-stabilizer terms -------------------------


_STRATEGIES = ("product", "entangled", "generic")


def _localbound_instance(k: int, rng: np.random.Generator, strategy: str):
    extra = int(rng.integers(0, 3))
    n = k + extra
    a_members = tuple(sorted(int(q) for q in rng.choice(n, size=k, replace=False)))
    outside = [q for q in range(n) if q not in a_members]
    gates: list[Gate] = []
    if strategy == "product":
        gates += random_clifford_gates(n, 2 * k, rng, qubits=a_members)
        if outside:
            gates += random_clifford_gates(n, 2, rng, qubits=outside)
            for _ in range(int(rng.integers(1, 3))):
                gates.append(Gate.rot(random_pauli(n, rng, outside), random_angle(rng)))
    elif strategy == "entangled":
        gates += random_clifford_gates(n, 2 * n, rng)
        if outside:
            for _ in range(int(rng.integers(1, 3))):
                gates.append(Gate.rot(random_pauli(n, rng, outside), random_angle(rng)))
                gates += random_clifford_gates(n, 1, rng, qubits=outside)
    else:
        c = random_circuit(n, n, int(rng.integers(1, 3)), rng)
        gates = list(c.gates)
    return Circuit(n, tuple(gates)), QubitSet(n, a_members)


def _localbound_trial(job) -> TrialResult:
    seed, k, trial, tol_e, tol_s = job
    res = TrialResult(count=0)
    strategy = _STRATEGIES[trial % len(_STRATEGIES)]
    rng = _rng(seed, 3, k, trial)
    c, a = _localbound_instance(k, rng, strategy)
    psi = simulate(c)
    g = extract_stabilizer_group(psi, tol_s)
    cert = is_pseudo_stabilizer(g, a)
    e = term_energy(HamTerm(a, TermKind.HADTYPE), psi)
    where = {"k": k, "trial": trial, "strategy": strategy, "n": c.n, "A": list(a.members)}
    if k == 1:
        touched = any((w.support >> a.members[0]) & 1 for w in g.generators)
        if touched != cert.holds:
            res.fail({**where, "check": "one-qubit-criterion"}, touched, cert.holds)
    if not cert.holds:
        res.bump("control_instances")
        res.bump("control_below_bound", int(e < SIN2_PI_8 - tol_e))
        return res
    res.count = 1
    res.bump(f"accepted_{strategy}")
    if e < SIN2_PI_8 - tol_e:
        res.fail({**where, "check": "energy"}, f">= {SIN2_PI_8}", e)
    res.info["min_energy"] = e
    wit = classify_types(g, a)[0]
    if not (satisfies_type(wit.kind, wit.local_view, a) and wit.element in g.quotient()):
        res.fail({**where, "check": "type-witness"}, "valid witness", str(wit.element))
    return res


def check_localbound(
    k_values: Iterable[int] = (1, 3, 5),
    trials: int = 500,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
    max_attempts_factor: int = 20,
) -> VerificationReport:
    """Pseudo-stabilizer at odd A implies the Hadamard-type term on A has energy >= sin^2(pi/8).

    Instances are drawn until ``trials`` pseudo-stabilizer cases per k are
    found; non-pseudo-stabilizer draws are controls and only counted.
    """
    start = time.perf_counter()
    total = TrialResult(count=0)
    for k in k_values:
        if k % 2 == 0 or k < 1:
            raise ValueError(f"k={k} is not a positive odd integer")
        accepted, next_trial, batch = 0, 0, max(trials, 50)
        while accepted < trials:
            if next_trial >= max_attempts_factor * trials:
                total.fail({"k": k, "check": "sampling"}, f"{trials} instances", accepted)
                break
            jobs = [(seed, k, i, tol.energy, tol.stab) for i in range(next_trial, next_trial + batch)]
            next_trial += batch
            # accept in trial-index order so the outcome is independent of workers
            for r in _map(_localbound_trial, jobs, workers):
                if accepted >= trials and r.count:
                    break
                accepted += r.count
                total.failures.extend(r.failures)
                _merge_info(total.info, {f"{key}_k{k}": v for key, v in r.info.items()})
        total.info[f"accepted_k{k}"] = accepted
        total.count += accepted
    return VerificationReport(
        "localbound",
        total.count,
        total.failures,
        seed,
        tol.as_dict(),
        time.perf_counter() - start,
        total.info,
        _versions(),
    )


# -- dimension bound over disjoint coverings --------------------------------


def random_partition(n: int, rng: np.random.Generator) -> list[QubitSet]:
    blocks = int(rng.integers(1, n + 1))
    labels = rng.integers(0, blocks, size=n)
    out = []
    for b in range(blocks):
        members = tuple(int(q) for q in np.nonzero(labels == b)[0])
        if members:
            out.append(QubitSet(n, members))
    return out


def random_subgroup(g: PauliSubgroup, rng: np.random.Generator) -> PauliSubgroup:
    """Group generated by random products of ``g``'s generators."""
    words = []
    for _ in range(int(rng.integers(0, g.dim + 1))):
        w = PauliWord.identity(g.n)
        for gen in g.generators:
            if rng.integers(2):
                w = w * gen
        words.append(w)
    return independent_generators(words, n=g.n, stabilizer=True)


def _dimension_trial(job) -> TrialResult:
    seed, n, trial, tol_s = job
    res = TrialResult()
    rng = _rng(seed, 4, n, trial)
    strategy = ("tableau", "subgroup", "circuit")[trial % 3]
    if strategy == "tableau":
        g = random_stabilizer_group(n, rng)
    elif strategy == "subgroup":
        g = random_subgroup(random_stabilizer_group(n, rng), rng)
    else:
        g = extract_stabilizer_group(simulate(random_circuit(n, n, int(rng.integers(0, n + 1)), rng)), tol_s)
    cover = random_partition(n, rng)
    where = {"n": n, "trial": trial, "strategy": strategy, "group": str(g), "cover": [list(a) for a in cover]}
    try:
        audit = dimension_bound_audit(g, cover)
    except AssertionError as exc:
        res.fail(where, "dim G <= sum of local dims", str(exc))
        return res
    for a, c in zip(cover, audit.local_dims):
        lv = local_view_group(g, a)
        if lv.dim <= 6:
            ref = max_commuting_dim_bruteforce(lv)
            res.bump("oracle_local_dims")
            if ref != c:
                res.fail({**where, "block": list(a)}, ref, c)
    res.bump("slack_total", audit.bound - audit.dim_g)
    # |0...0> is tight for every covering
    zero = independent_generators([PauliWord.single(n, q, "Z") for q in range(n)], n=n, stabilizer=True)
    z_audit = dimension_bound_audit(zero, cover)
    if z_audit.bound != n:
        res.fail({"n": n, "trial": trial, "check": "equality-on-zero", "cover": where["cover"]}, n, z_audit.bound)
    return res


def check_dimension_bound(
    n_values: Iterable[int] = range(1, 9),
    trials: int = 1000,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
) -> VerificationReport:
    """dim G <= sum_i c(rho_{A_i}(G)) over random (group, disjoint covering) pairs."""
    ns = list(n_values)
    jobs = [(seed, ns[i % len(ns)], i, tol.stab) for i in range(trials)]
    return _run("dimension-bound", _dimension_trial, jobs, seed, tol, workers)


# -- many pseudo-stabilizer terms -------------------------------------------


def default_condition_hamiltonians(n_values: Iterable[int] = (6, 7, 8)) -> list[tuple[str, LocalHamiltonian]]:
    out = []
    for n in n_values:
        out.append((f"magic-{n}", build_magic_hamiltonian(n)))
        out.append((f"rotated-repetition-{n}", rotated_repetition_hamiltonian(n)))
    return out


def _condition_trial(job) -> TrialResult:
    seed, idx, name, h, t, trial, tol_s = job
    res = TrialResult()
    rng = _rng(seed, 5, idx, t, trial)
    g = extract_stabilizer_group(simulate(random_circuit(h.n, h.n, t, rng)), tol_s)
    where = {"hamiltonian": name, "t": t, "trial": trial}
    try:
        rep = count_pseudo_stabilizer_terms(g, h, t)
    except AssertionError as exc:
        res.fail(where, "count >= p - t", str(exc))
        return res
    if rep.count < rep.bound:
        res.fail(where, f">= {rep.bound}", rep.count)
    if t == 0 and h.is_magic() and rep.count != h.n:
        res.fail({**where, "check": "clifford-count"}, h.n, rep.count)
    res.info["min_count_margin"] = rep.count - rep.bound
    return res


def check_condition(
    hamiltonians: Sequence[tuple[str, LocalHamiltonian]] | None = None,
    t_max: int = 3,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
) -> VerificationReport:
    """Circuits with t rotations are pseudo-stabilizer at >= p - t of p disjoint terms."""
    hs = default_condition_hamiltonians() if hamiltonians is None else list(hamiltonians)
    jobs = [
        (seed, idx, name, h, t, i, tol.stab)
        for idx, (name, h) in enumerate(hs)
        for t in range(t_max + 1)
        for i in range(trials)
    ]
    return _run("condition", _condition_trial, jobs, seed, tol, workers, {"hamiltonians": [n for n, _ in hs]})


# -- binary symplectic identities ------------------------------------------------


def _preimage(w: F2Subspace, qubits: Sequence[int], t: F2Subspace) -> F2Subspace:
    """{x in w : rho_A(x) in t}."""
    d = w.ambient_dim
    n = w.n
    mask = sum(1 << q for q in qubits)
    combined = [reduce_vector(project_bits(r, mask, n), t.rows) | (r << d) for r in w.rows]
    kept = [r >> d for r in reduce_rows(combined) if r & ((1 << d) - 1) == 0]
    return F2Subspace.span(d, kept)


def _check_subspace_identities(res: TrialResult, w: F2Subspace, where: dict) -> None:
    perp = orthogonal_complement(w)
    if w.dim + perp.dim != w.ambient_dim:
        res.fail({**where, "check": "dim-sum"}, w.ambient_dim, w.dim + perp.dim)
    if orthogonal_complement(perp) != w:
        res.fail({**where, "check": "double-perp"}, str(w), str(orthogonal_complement(perp)))
    iso = maximal_isotropic(w)
    rad = radical(w)
    want = (w.dim + rad.dim) // 2
    if not (is_isotropic(iso) and iso.issubspace(w) and iso.dim == want and (w.dim + rad.dim) % 2 == 0):
        res.fail({**where, "check": "max-isotropic"}, want, iso.dim)
    if not is_lagrangian_in(iso, w):
        res.fail({**where, "check": "lagrangian-in"}, True, False)
    lag = extend_to_lagrangian(iso if w.dim == w.ambient_dim else rad)
    if not (is_lagrangian(lag) and lag.dim == w.n and orthogonal_complement(lag) == lag):
        res.fail({**where, "check": "lagrangian-dim"}, w.n, lag.dim)


def _symplectic_trial(job) -> TrialResult:
    seed, trial, n_max = job
    res = TrialResult()
    rng = _rng(seed, 7, trial)
    n = int(rng.integers(1, n_max + 1))
    d = 2 * n
    w = random_subspace(d, rng)
    where = {"n": n, "trial": trial, "W": list(w.rows)}
    _check_subspace_identities(res, w, where)
    a, b = random_subspace(d, rng), random_subspace(d, rng)
    lhs = orthogonal_complement(subspace_sum(a, b))
    rhs = intersect(orthogonal_complement(a), orthogonal_complement(b))
    if lhs != rhs:
        res.fail({**where, "check": "perp-of-sum", "A": list(a.rows), "B": list(b.rows)}, str(rhs), str(lhs))
    # bounds on isotropic dimension, against brute-force search when small
    u = maximal_isotropic(w)
    if u.dim > n:
        res.fail({**where, "check": "isotropic-at-most-n"}, f"<= {n}", u.dim)
    if w.dim <= 6:
        ref = max_isotropic_dim(set(w.elements()), n)
        res.bump("oracle_isotropic")
        if ref != (w.dim + radical(w).dim) // 2:
            res.fail({**where, "check": "isotropic-bound-oracle"}, ref, (w.dim + radical(w).dim) // 2)
    # per-block Lagrangians of local views of an isotropic subspace
    iso = maximal_isotropic(random_subspace(d, rng))
    if rng.integers(2):
        iso = extend_to_lagrangian(iso)
    total = 0
    labels = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
    for blk in sorted(set(labels.tolist())):
        qs = [q for q in range(n) if labels[q] == blk]
        view = project_subspace(iso, qs)
        t = maximal_isotropic(view)
        wi = _preimage(iso, qs, t)
        if not (wi.issubspace(iso) and project_subspace(wi, qs) == t and is_lagrangian_in(t, view)):
            res.fail({**where, "check": "block-lagrangian", "block": qs}, str(t), str(project_subspace(wi, qs)))
        total += t.dim
    if iso.dim > total:
        res.fail({**where, "check": "block-dimension-bound"}, f"{iso.dim} <= sum", total)
    return res


def _symplectic_exhaustive(tol: Tolerances) -> TrialResult:
    res = TrialResult(count=0)
    for n in (1, 2):
        d = 2 * n
        spaces = [F2Subspace.span(d, s) for s in all_subspaces(d)]
        for w in spaces:
            res.count += 1
            _check_subspace_identities(res, w, {"n": n, "W": list(w.rows), "exhaustive": True})
            ref = max_isotropic_dim(set(w.elements()), n)
            if ref != (w.dim + radical(w).dim) // 2:
                res.fail({"n": n, "W": list(w.rows), "check": "isotropic-bound-oracle"}, ref, None)
        for a in spaces:
            for b in spaces:
                lhs = orthogonal_complement(subspace_sum(a, b))
                if lhs != intersect(orthogonal_complement(a), orthogonal_complement(b)):
                    res.fail({"n": n, "A": list(a.rows), "B": list(b.rows), "check": "perp-of-sum"}, None, None)
        res.bump("exhaustive_pairs", len(spaces) ** 2)
        for s in isotropic_subspaces(n):
            dim = len(s).bit_length() - 1
            w = F2Subspace.span(d, s)
            if dim > n or (dim == n) != is_lagrangian(w):
                res.fail({"n": n, "W": list(w.rows), "check": "isotropic-at-most-n"}, f"<= {n}", dim)
        lags = list(enumerate_lagrangians(n))
        if len(lags) != lagrangian_count_bruteforce(n) or any(l.dim != n for l in lags):
            res.fail({"n": n, "check": "lagrangian-enumeration"}, lagrangian_count_bruteforce(n), len(lags))
        res.info[f"exhaustive_subspaces_n{n}"] = len(spaces)
    return res


def check_symplectic(
    n_max: int = 5,
    trials: int = 1000,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
) -> VerificationReport:
    """Orthogonal-complement, isotropic-dimension and per-block Lagrangian identities."""
    jobs = [(seed, i, n_max) for i in range(trials)]
    rep = _run("symplectic", _symplectic_trial, jobs, seed, tol, workers)
    ex = _symplectic_exhaustive(tol)
    rep.failures += ex.failures
    rep.trials += ex.count
    _merge_info(rep.info, ex.info)
    rep.info["randomized_trials"] = trials
    return rep


# -- overlap bound for anticommuting stabilizers ----------------------------------


def _fidelity_trial(job) -> TrialResult:
    seed, trial, tol_s, tol_e = job
    res = TrialResult(count=0)
    rng = _rng(seed, 8, trial)
    n = int(rng.integers(1, 5))
    psi = simulate(random_circuit(n, n, int(rng.integers(0, 3)), rng))
    if rng.integers(2):
        phi = simulate(Circuit(n, tuple(random_clifford_gates(n, 1, rng))), initial=psi)
    else:
        phi = simulate(random_circuit(n, n, int(rng.integers(0, 3)), rng))
    rep = fidelity_bound_check(psi, phi, tol_s, tol_e)
    if not rep.applicable:
        res.bump("not_applicable")
        return res
    res.count = 1
    if not rep.holds:
        res.fail({"trial": trial, "n": n, "witness": [str(w) for w in rep.witness]}, 1 / math.sqrt(2), rep.overlap)
    res.info["max_overlap"] = rep.overlap
    return res


def check_fidelity(
    trials: int = 1000,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    workers: int = 1,
) -> VerificationReport:
    """|<psi|phi>| <= 1/sqrt(2) when the stabilizer groups hold an anticommuting pair."""
    start = time.perf_counter()
    acc = TrialResult(count=0)
    nxt = 0
    while acc.count < trials and nxt < 20 * trials:
        jobs = [(seed, i, tol.stab, tol.energy) for i in range(nxt, nxt + trials)]
        nxt += trials
        for r in _map(_fidelity_trial, jobs, workers):
            if acc.count >= trials and r.count:
                break
            acc.count += r.count
            acc.failures.extend(r.failures)
            _merge_info(acc.info, r.info)
    if acc.count < trials:
        acc.fail({"check": "sampling"}, trials, acc.count)
    zero = Statevector.zero(1)
    plus = Statevector(1, np.array([1, 1], dtype=complex) / math.sqrt(2))
    sat = fidelity_bound_check(zero, plus, tol.stab, tol.energy)
    acc.info["saturation_overlap"] = sat.overlap
    if not sat.applicable or abs(sat.overlap - 1 / math.sqrt(2)) > tol.matrix:
        acc.fail({"check": "saturation", "pair": ["|0>", "|+>"]}, 1 / math.sqrt(2), sat.overlap)
    return VerificationReport(
        "fidelity", acc.count + 1, acc.failures, seed, tol.as_dict(), time.perf_counter() - start, acc.info, _versions()
    )


# -- r + ell against exhaustive commuting-subgroup search ---------------------------


def _fact6_check(res: TrialResult, grp: PauliSubgroup, where: dict) -> None:
    cb = canonical_basis(grp)
    verify_canonical_basis(cb, grp)
    ref = max_commuting_dim_bruteforce(grp)
    if cb.max_commuting_dim != ref:
        res.fail({**where, "group": str(grp)}, ref, cb.max_commuting_dim)
    cen = F2Subspace.span(2 * grp.n, (w.x | (w.z << grp.n) for w in cb.s_gens))
    if set(cen.elements()) != center_bruteforce(grp):
        res.fail({**where, "group": str(grp), "check": "center"}, "center match", "mismatch")


def _group_from_rows(n: int, rows) -> PauliSubgroup:
    mask = (1 << n) - 1
    return PauliSubgroup(n, tuple(PauliWord(n, 0, r & mask, r >> n) for r in rows))


def check_fact6(
    random_count: int = 200,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """c(M) = r + ell for every subgroup of the 2-qubit quotient group and random 3-qubit ones."""
    start = time.perf_counter()
    res = TrialResult(count=0)
    for elems in all_subspaces(4):
        res.count += 1
        _fact6_check(res, _group_from_rows(2, F2Subspace.span(4, elems).rows), {"n": 2})
    res.info["two_qubit_subgroups"] = res.count
    for i in range(random_count):
        rng = _rng(seed, 9, i)
        w = random_subspace(6, rng)
        res.count += 1
        _fact6_check(res, _group_from_rows(3, w.rows), {"n": 3, "trial": i})
    res.info["three_qubit_random"] = random_count
    return VerificationReport(
        "fact6", res.count, res.failures, seed, tol.as_dict(), time.perf_counter() - start, res.info, _versions()
    )
