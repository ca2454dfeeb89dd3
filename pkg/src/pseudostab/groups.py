"""Subgroups of the Pauli group given by independent generating sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .pauli import PauliWord, commutator, multiply, parse_pauli
from .symplectic import F2Subspace, radical, reduce_rows


class NotAStabilizerGroup(ValueError):
    pass


def pauli_bits(p: PauliWord) -> int:
    """Packed Pauli vector of ``p`` (X part low, Z part high)."""
    return p.x | (p.z << p.n)


class Eliminator:
    """Incremental GF(2) elimination over Pauli vectors that mirrors every row
    operation onto the words themselves (and optionally onto attached lifts).

    Rows are kept in echelon form keyed by pivot (lowest set bit), so reducing a
    vector is a single ascending sweep.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: dict[int, tuple[int, PauliWord, object]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, word: PauliWord, lift=None):
        """Return ``(remainder_bits, word * used rows, lift * used lifts)``."""
        v = pauli_bits(word)
        for p in sorted(self._rows):
            if (v >> p) & 1:
                rv, rw, rl = self._rows[p]
                v ^= rv
                word = multiply(word, rw)
                if lift is not None:
                    lift = multiply(lift, rl)
        return v, word, lift

    def add(self, word: PauliWord, lift=None) -> bool:
        """Insert ``word``; False (and no change) if it is dependent."""
        v, w, l = self.reduce(word, lift)
        if not v:
            return False
        self._rows[(v & -v).bit_length() - 1] = (v, w, l)
        return True


@dataclass(frozen=True)
class PauliSubgroup:
    """Group generated by ``generators``; generators are always independent.

    Phaseless groups store generators with ``phase_exp == 0``.  Phaseful
    groups keep exact signs and are used for stabilizer groups.
    """

    n: int
    generators: tuple[PauliWord, ...]
    phaseful: bool = False
    stabilizer: bool = False
    _rref: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        for g in self.generators:
            if g.n != self.n:
                raise ValueError(f"generator {g} is not on {self.n} qubits")
        object.__setattr__(self, "_rref", reduce_rows(pauli_bits(g) for g in self.generators))
        if len(self._rref) != len(self.generators):
            raise ValueError("generators are not independent")

    @property
    def dim(self) -> int:
        return len(self.generators)

    def subspace(self) -> F2Subspace:
        return F2Subspace(2 * self.n, self._rref)

    def quotient(self) -> "PauliSubgroup":
        """Phaseless version (same generators, phases dropped)."""
        return PauliSubgroup(self.n, tuple(g.phaseless() for g in self.generators))

    def is_commuting(self) -> bool:
        gens = self.generators
        return all(commutator(a, b) == 1 for i, a in enumerate(gens) for b in gens[i + 1:])

    def elements(self) -> Iterator[PauliWord]:
        """All 2^dim elements; products taken in generator order."""
        gens = self.generators
        for mask in range(1 << len(gens)):
            w = PauliWord.identity(self.n)
            for i, g in enumerate(gens):
                if (mask >> i) & 1:
                    w = multiply(w, g)
            yield w if self.phaseful else w.phaseless()

    def __contains__(self, p: PauliWord) -> bool:
        return member(self, p)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def independent_generators(
    words: Iterable[PauliWord | str],
    n: int | None = None,
    phaseful: bool = False,
    stabilizer: bool = False,
) -> PauliSubgroup:
    """Group generated by ``words`` with dependent words dropped.

    With ``stabilizer=True`` the words keep their signs and the result must be
    an Abelian group without -I; otherwise :class:`NotAStabilizerGroup`.
    """
    ws = [parse_pauli(w) if isinstance(w, str) else w for w in words]
    if n is None:
        if not ws:
            raise ValueError("qubit count needed for an empty generator list")
        n = ws[0].n
    if stabilizer:
        phaseful = True
    if not phaseful:
        ws = [w.phaseless() for w in ws]
    if stabilizer:
        for i, a in enumerate(ws):
            if not a.is_hermitian():
                raise NotAStabilizerGroup(f"{a} squares to -I")
            for b in ws[i + 1:]:
                if commutator(a, b) == -1:
                    raise NotAStabilizerGroup(f"{a} and {b} anticommute")
    elim = Eliminator(n)
    kept = []
    for w in ws:
        if w.n != n:
            raise ValueError(f"word {w} is not on {n} qubits")
        if elim.add(w):
            kept.append(w)
        elif stabilizer:
            _, residue, _ = elim.reduce(w)
            # residue is w times a product of group elements; its letters are I
            if residue.phase_exp != 0:
                raise NotAStabilizerGroup(f"{w} with the other generators produces {residue}")
    return PauliSubgroup(n, tuple(kept), phaseful=phaseful, stabilizer=stabilizer)


def trivial_group(n: int, phaseful: bool = False) -> PauliSubgroup:
    return PauliSubgroup(n, (), phaseful=phaseful, stabilizer=phaseful)


def member(g: PauliSubgroup, p: PauliWord) -> bool:
    """Span membership; phaseful groups also require the sign to match."""
    if p.n != g.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {g.n} qubits")
    elim = Eliminator(g.n)
    for gen in g.generators:
        elim.add(gen)
    v, residue, _ = elim.reduce(p if g.phaseful else p.phaseless())
    if v:
        return False
    if not g.phaseful:
        return True
    return residue.phase_exp == 0


def express(g: PauliSubgroup, p: PauliWord) -> PauliWord | None:
    """The element of ``g`` with the same letters as ``p`` (exact sign), or None."""
    elim = Eliminator(g.n)
    for gen in g.generators:
        elim.add(gen, gen)
    v, _, lift = elim.reduce(p.phaseless(), PauliWord.identity(g.n))
    return None if v else lift


@dataclass(frozen=True)
class CanonicalBasis:
    s_gens: tuple[PauliWord, ...]
    x_gens: tuple[PauliWord, ...]
    z_gens: tuple[PauliWord, ...]
    s_lifts: tuple = ()
    x_lifts: tuple = ()
    z_lifts: tuple = ()

    @property
    def r(self) -> int:
        return len(self.s_gens)

    @property
    def ell(self) -> int:
        return len(self.x_gens)

    @property
    def max_commuting_dim(self) -> int:
        return self.r + self.ell


def _canonical_pairs(words: Sequence[PauliWord], lifts: Sequence[PauliWord] | None):
    """Pairing sweep: scan left to right, pair the first anticommuting pair,
    clear that pair from everything else, repeat."""
    todo = list(zip(words, lifts if lifts is not None else [None] * len(words)))
    xs, zs = [], []

    def mul(a, b):
        return multiply(a[0], b[0]), (None if a[1] is None else multiply(a[1], b[1]))

    while True:
        found = None
        for i, (a, _) in enumerate(todo):
            for j in range(i + 1, len(todo)):
                if commutator(a, todo[j][0]) == -1:
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            return todo, xs, zs
        i, j = found
        g1, g2 = todo[i], todo[j]
        rest = []
        for k, gk in enumerate(todo):
            if k in (i, j):
                continue
            if commutator(gk[0], g1[0]) == -1:
                gk = mul(g2, gk)
            if commutator(gk[0], g2[0]) == -1:
                gk = mul(g1, gk)
            rest.append(gk)
        xs.append(g1)
        zs.append(g2)
        todo = rest


def canonical_basis_with_lifts(
    words: Sequence[PauliWord], lifts: Sequence[PauliWord] | None = None, n: int | None = None
) -> CanonicalBasis:
    """Canonical basis of the phaseless group generated by ``words``.

    ``lifts`` ride along: every product applied to a word is applied to its
    lift, so each output generator comes with a preimage.  Dependent words
    are dropped first.
    """
    if n is None:
        if not words:
            raise ValueError("qubit count needed for an empty word list")
        n = words[0].n
    elim = Eliminator(n)
    ind_w, ind_l = [], []
    for k, w in enumerate(words):
        w = w.phaseless()
        if elim.add(w):
            ind_w.append(w)
            ind_l.append(lifts[k] if lifts is not None else None)
    rest, xs, zs = _canonical_pairs(ind_w, ind_l if lifts is not None else None)
    basis = CanonicalBasis(
        s_gens=tuple(w.phaseless() for w, _ in rest),
        x_gens=tuple(w.phaseless() for w, _ in xs),
        z_gens=tuple(w.phaseless() for w, _ in zs),
        s_lifts=tuple(l for _, l in rest) if lifts is not None else (),
        x_lifts=tuple(l for _, l in xs) if lifts is not None else (),
        z_lifts=tuple(l for _, l in zs) if lifts is not None else (),
    )
    verify_canonical_basis(basis, PauliSubgroup(n, tuple(ind_w)))
    return basis


def canonical_basis(m: PauliSubgroup) -> CanonicalBasis:
    return canonical_basis_with_lifts(list(m.generators), None, m.n)


def verify_canonical_basis(cb: CanonicalBasis, m: PauliSubgroup) -> None:
    """Raise AssertionError unless ``cb`` is a canonical basis of ``m``."""
    n = m.n
    allw = list(cb.s_gens + cb.x_gens + cb.z_gens)
    if len(reduce_rows(pauli_bits(w) for w in allw)) != len(allw):
        raise AssertionError("canonical basis elements are not independent")
    for s in cb.s_gens:
        for w in allw:
            if commutator(s, w) != 1:
                raise AssertionError(f"center generator {s} anticommutes with {w}")
    for i, xi in enumerate(cb.x_gens):
        for j, zj in enumerate(cb.z_gens):
            want = -1 if i == j else 1
            if commutator(xi, zj) != want:
                raise AssertionError(f"pair relation fails for X{i}, Z{j}")
        for j, xj in enumerate(cb.x_gens):
            if commutator(xi, xj) != 1:
                raise AssertionError(f"X{i} and X{j} anticommute")
    for i, zi in enumerate(cb.z_gens):
        for zj in cb.z_gens[i + 1:]:
            if commutator(zi, zj) != 1:
                raise AssertionError("two Z-bar generators anticommute")
    span = F2Subspace.span(2 * n, (pauli_bits(w) for w in allw))
    if span != m.subspace():
        raise AssertionError("canonical basis does not generate the group")
    center_span = F2Subspace.span(2 * n, (pauli_bits(s) for s in cb.s_gens))
    if center_span != radical(m.subspace()):
        raise AssertionError("center generators do not span the center")


def center(m: PauliSubgroup) -> PauliSubgroup:
    return PauliSubgroup(m.n, canonical_basis(m).s_gens)


def max_commuting_dimension(m: PauliSubgroup) -> int:
    """Dimension of a largest commuting subgroup, r + ell."""
    return canonical_basis(m).max_commuting_dim


def logical_commutation_table(cb: CanonicalBasis) -> list[list[int]]:
    """Commutators among X-bar_1..X-bar_l, Z-bar_1..Z-bar_l (in that order)."""
    gens = list(cb.x_gens + cb.z_gens)
    return [[commutator(a, b) for b in gens] for a in gens]


def read_generators(text: str) -> list[PauliWord]:
    """One Pauli word per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_pauli(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out


def write_generators(words: Iterable[PauliWord]) -> str:
    return "".join(f"{w}\n" for w in words)
