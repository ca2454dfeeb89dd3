"""Local views of stabilizer groups and pseudo-stabilizer certification.

``rho_A`` keeps the letters of a Pauli word on the qubits in ``A`` and puts
identity elsewhere, discarding the phase.  On the phaseless group it is a
homomorphism, so the local view of a group is generated by the local views of
its generators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

from .groups import (
    Eliminator,
    PauliSubgroup,
    canonical_basis_with_lifts,
    pauli_bits,
)
from .pauli import PauliWord, commutator, multiply, popcount

if TYPE_CHECKING:
    from .hamiltonian import LocalHamiltonian

SUBGROUP_ASSUMPTION = (
    "witness is a subgroup of G; a maximal commuting subgroup of the local view "
    "always has a generating preimage in G"
)


@dataclass(frozen=True)
class QubitSet:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        if len(ms) != len(self.members):
            raise ValueError(f"repeated qubit in {self.members}")
        for q in ms:
            if not 0 <= q < self.n:
                raise IndexError(f"qubit {q} out of range for n={self.n}")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "QubitSet":
        return cls(n, tuple(members))

    @classmethod
    def full(cls, n: int) -> "QubitSet":
        return cls(n, tuple(range(n)))

    @property
    def mask(self) -> int:
        m = 0
        for q in self.members:
            m |= 1 << q
        return m

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def project(p: PauliWord, a: QubitSet) -> PauliWord:
    """Local view of ``p`` at ``a``."""
    if p.n != a.n:
        raise IndexError(f"qubit set lives on {a.n} qubits, word on {p.n}")
    m = a.mask
    return PauliWord(p.n, 0, p.x & m, p.z & m)


def local_view_group(g: PauliSubgroup, a: QubitSet) -> PauliSubgroup:
    elim = Eliminator(g.n)
    gens = []
    for gen in g.generators:
        w = project(gen, a)
        if elim.add(w):
            gens.append(w)
    return PauliSubgroup(g.n, tuple(gens))


@dataclass(frozen=True)
class PseudoStabCertificate:
    set: QubitSet
    holds: bool
    local_dim: int
    witness_generators: tuple[PauliWord, ...]
    assumption: str = SUBGROUP_ASSUMPTION

    def witness_local_views(self) -> list[PauliWord]:
        return [project(w, self.set) for w in self.witness_generators]


def _max_commuting_lifts(g: PauliSubgroup, a: QubitSet):
    """Canonical basis of rho_A(G) whose generators carry preimages in G."""
    views = [project(gen, a) for gen in g.generators]
    return canonical_basis_with_lifts(views, list(g.generators), g.n)


def is_pseudo_stabilizer(g: PauliSubgroup, a: QubitSet) -> PseudoStabCertificate:
    """Decide pseudo-stabilizerness at ``a`` via c(rho_A(G)) == |A|.

    The preimages of the center and X-bar generators of a canonical basis of
    the local view form an A-locally-commuting subset whose local view has
    dimension c(rho_A(G)), and no locally-commuting subset can do better.
    """
    if a.n != g.n:
        raise ValueError("qubit set and group live on different qubit counts")
    cb = _max_commuting_lifts(g, a)
    local_dim = cb.max_commuting_dim
    witnesses = tuple(cb.s_lifts + cb.x_lifts)
    holds = local_dim == len(a)
    return PseudoStabCertificate(a, holds, local_dim, witnesses)


class WitnessKind(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


@dataclass(frozen=True)
class TypeWitness:
    kind: WitnessKind
    element: PauliWord
    local_view: PauliWord
    set: QubitSet | None = field(default=None, compare=False)


def satisfies_type(kind: WitnessKind, local_view: PauliWord, a: QubitSet) -> bool:
    """Check the Type I / Type II condition on a local view at ``a`` verbatim."""
    m = a.mask
    x, z = local_view.x & m, local_view.z & m
    if (local_view.x | local_view.z) & ~m:
        return False
    if kind is WitnessKind.TYPE_I:
        only_y = x == z
        return only_y and popcount(x) % 2 == 1
    return popcount(x ^ z) % 2 == 1


def _xz_bits(p: PauliWord, cols: Sequence[int]) -> int:
    """f(P) on the columns ``cols``: 1 where the letter is X or Z."""
    xz = p.x ^ p.z
    return sum(((xz >> q) & 1) << j for j, q in enumerate(cols))


def _y_bits(p: PauliWord, cols: Sequence[int]) -> int:
    y = p.x & p.z
    return sum(((y >> q) & 1) << j for j, q in enumerate(cols))


def _type_witness(
    local: Sequence[PauliWord], lifts: Sequence[PauliWord], a: QubitSet
) -> TypeWitness:
    """Constructive Type I / Type II search on a maximal commuting group of odd rank.

    ``local`` generates K (supported on ``a``); ``lifts[i]`` is carried through
    every row operation applied to ``local[i]``.
    """
    cols = list(a.members)
    k = len(cols)
    gens = [(w, l) for w, l in zip(local, lifts)]

    def mul(u, v):
        return multiply(u[0], v[0]), multiply(u[1], v[1])

    # Gauss-Jordan on F(S) with products mirrored; pivot columns in qubit order
    pivots: list[int] = []
    row = 0
    for c in range(k):
        sel = next((i for i in range(row, k) if (_xz_bits(gens[i][0], cols) >> c) & 1), None)
        if sel is None:
            continue
        gens[row], gens[sel] = gens[sel], gens[row]
        for i in range(k):
            if i != row and (_xz_bits(gens[i][0], cols) >> c) & 1:
                gens[i] = mul(gens[i], gens[row])
        pivots.append(c)
        row += 1
    ell = len(pivots)

    def witness(kind, pair):
        w, lift = pair
        view = PauliWord(w.n, 0, w.x, w.z)
        return TypeWitness(kind, lift, view, a)

    if ell == k:
        prod = gens[0]
        for pair in gens[1:]:
            prod = mul(prod, pair)
        return witness(WitnessKind.TYPE_II, prod)

    y_rows = gens[ell:]
    free = [c for c in range(k) if c not in pivots]
    target_cols = None
    if ell == 0:
        target = (1 << k) - 1  # the all-Y word
    else:
        f_rows = [_xz_bits(w, cols) for w, _ in gens[:ell]]
        for c in free:
            weight = sum((r >> c) & 1 for r in f_rows)
            if weight % 2 == 0:
                target_cols = c
                break
        if target_cols is None:
            prod = gens[0]
            for pair in gens[1:ell]:
                prod = mul(prod, pair)
            return witness(WitnessKind.TYPE_II, prod)
        # row of (B^T | I) for column c: ones at c and at pivots whose row hits c
        target = 1 << target_cols
        for i, p in enumerate(pivots):
            if (f_rows[i] >> target_cols) & 1:
                target |= 1 << p

    # f_Y^{-1}(target): solve target as a sum of the Y-type generators' f_Y rows
    solver: dict[int, tuple[int, tuple]] = {}
    for pair in y_rows:
        v = _y_bits(pair[0], cols)
        for p in sorted(solver):
            if (v >> p) & 1:
                v ^= solver[p][0]
                pair = mul(pair, solver[p][1])
        if v:
            solver[(v & -v).bit_length() - 1] = (v, pair)
    v = target
    acc = None
    for p in sorted(solver):
        if (v >> p) & 1:
            v ^= solver[p][0]
            acc = solver[p][1] if acc is None else mul(acc, solver[p][1])
    if v or acc is None:
        raise AssertionError("Y-type generators do not span the kernel of (I | B)")
    return witness(WitnessKind.TYPE_I, acc)


def _check_k_group(local: Sequence[PauliWord], a: QubitSet) -> None:
    k = len(a)
    if k % 2 == 0:
        raise ValueError(f"|A| = {k} is even; Type I/II witnesses need odd |A|")
    if len(local) != k:
        raise ValueError(f"group has dimension {len(local)}, expected |A| = {k}")
    for i, u in enumerate(local):
        if (u.x | u.z) & ~a.mask:
            raise ValueError(f"{u} is not supported on {a.members}")
        for v in local[i + 1:]:
            if commutator(u, v) == -1:
                raise ValueError(f"{u} and {v} anticommute")


def find_type_witness(k_group: PauliSubgroup, a: QubitSet) -> TypeWitness:
    """Type I or Type II element of a commuting group with dim == |A| odd."""
    local = list(k_group.generators)
    _check_k_group(local, a)
    wit = _type_witness(local, local, a)
    return TypeWitness(wit.kind, wit.element.phaseless(), wit.local_view, a)


def classify_types(g: PauliSubgroup, a: QubitSet) -> list[TypeWitness]:
    """Lift a Type I/II witness from the local view back to an element of ``g``."""
    if len(a) % 2 == 0:
        raise ValueError(f"|A| = {len(a)} is even")
    cert = is_pseudo_stabilizer(g, a)
    if not cert.holds:
        raise ValueError(f"state is not pseudo-stabilizer at {a.members} (c = {cert.local_dim})")
    lifts = list(cert.witness_generators)
    local = [project(w, a) for w in lifts]
    _check_k_group(local, a)
    wit = _type_witness(local, lifts, a)
    if project(wit.element, a) != wit.local_view:
        raise AssertionError("lifted element does not have the witnessed local view")
    return [wit]


def select_disjoint_terms(h: "LocalHamiltonian") -> list[int]:
    """Indices of terms with pairwise-disjoint supports.

    Greedy in order of fewest conflicts (ties by index).  For k >= 2 the
    result is guaranteed to reach floor(m / (k^2 - k)) when every qubit lies
    in at most k supports; an exhaustive search backs up the greedy pass if
    it ever falls short on small instances.
    """
    masks = [t.support.mask for t in h.terms]
    m = len(masks)
    conflicts = [sum(1 for j in range(m) if j != i and masks[i] & masks[j]) for i in range(m)]
    order = sorted(range(m), key=lambda i: (conflicts[i], i))
    chosen, used = [], 0
    for i in order:
        if not masks[i] & used:
            chosen.append(i)
            used |= masks[i]
    k = h.locality
    if k >= 2 and m:
        target = m // (k * k - k)
        if len(chosen) < target and m <= 40:
            chosen = _max_disjoint(masks)
    return sorted(chosen)


def _max_disjoint(masks: Sequence[int]) -> list[int]:
    best: list[int] = []

    def go(i: int, used: int, cur: list[int]):
        nonlocal best
        if len(cur) + (len(masks) - i) <= len(best):
            return
        if i == len(masks):
            best = list(cur)
            return
        if not masks[i] & used:
            cur.append(i)
            go(i + 1, used | masks[i], cur)
            cur.pop()
        go(i + 1, used, cur)

    go(0, 0, [])
    return best


@dataclass(frozen=True)
class DimensionAudit:
    dim_g: int
    local_dims: tuple[int, ...]
    covering: tuple[QubitSet, ...]

    @property
    def bound(self) -> int:
        return sum(self.local_dims)

    @property
    def holds(self) -> bool:
        return self.dim_g <= self.bound


def _check_partition(n: int, covering: Sequence[QubitSet]) -> None:
    seen = 0
    for a in covering:
        if a.n != n:
            raise ValueError("covering block lives on a different qubit count")
        if seen & a.mask:
            raise ValueError(f"covering blocks overlap at {a.members}")
        seen |= a.mask
    if seen != (1 << n) - 1:
        raise ValueError("covering does not cover every qubit")


def dimension_bound_audit(g: PauliSubgroup, covering: Sequence[QubitSet]) -> DimensionAudit:
    """dim G against the sum of c(rho_{A_i}(G)) over a disjoint covering."""
    _check_partition(g.n, covering)
    dims = tuple(is_pseudo_stabilizer(g, a).local_dim for a in covering)
    audit = DimensionAudit(g.dim, dims, tuple(covering))
    if not audit.holds:
        raise AssertionError(f"dim G = {g.dim} exceeds sum of local dims {audit.bound}")
    return audit


@dataclass(frozen=True)
class ConditionReport:
    count: int
    disjoint_count: int
    bound: int
    dim_bound: int
    certified_terms: tuple[int, ...]
    blocks: tuple[QubitSet, ...]


def count_pseudo_stabilizer_terms(
    g: PauliSubgroup, h: "LocalHamiltonian", t: int | None = None
) -> ConditionReport:
    """Count disjoint terms of ``h`` where the state with group ``g`` is pseudo-stabilizer.

    ``bound`` is p - t when the rotation budget ``t`` is given, else
    p - (n - dim G).  Both inequalities are asserted.
    """
    n = g.n
    picked = select_disjoint_terms(h)
    blocks = [h.terms[i].support for i in picked]
    used = 0
    for b in blocks:
        used |= b.mask
    remainder = QubitSet(n, tuple(q for q in range(n) if not (used >> q) & 1))
    audit = dimension_bound_audit(g, blocks + [remainder])
    certified = tuple(i for i, b, c in zip(picked, blocks, audit.local_dims) if c == len(b))
    p = len(picked)
    dim_bound = p - (n - g.dim)
    if len(certified) < dim_bound:
        raise AssertionError(f"only {len(certified)} certified terms, need >= {dim_bound}")
    bound = dim_bound
    if t is not None:
        bound = p - t
        if len(certified) < bound:
            raise AssertionError(f"only {len(certified)} certified terms, need >= p - t = {bound}")
    return ConditionReport(len(certified), p, bound, dim_bound, certified, tuple(blocks) + (remainder,))
