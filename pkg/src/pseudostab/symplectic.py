"""Linear and symplectic algebra over GF(2).

Vectors of F_2^{2n} are packed into ints: bits ``0..n-1`` hold the X part
``a`` and bits ``n..2n-1`` the Z part ``b``.  Column ``c`` of a matrix is bit
``c``, so the text form of a vector reads ``a_0 ... a_{n-1} b_0 ... b_{n-1}``
left to right, and the pivot of a row is its lowest set bit.

Subspaces are always held as their reduced row echelon basis, which makes
equality a tuple comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def _lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


@dataclass(frozen=True)
class SymplecticVector:
    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "SymplecticVector":
        return cls(len(entries), sum((int(e) & 1) << i for i, e in enumerate(entries)))

    @classmethod
    def from_parts(cls, a: Sequence[int], b: Sequence[int]) -> "SymplecticVector":
        if len(a) != len(b):
            raise ValueError("a and b parts differ in length")
        return cls.from_list(list(a) + list(b))

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    @property
    def n(self) -> int:
        return self.length // 2

    @property
    def a(self) -> list[int]:
        return self.to_list()[: self.n]

    @property
    def b(self) -> list[int]:
        return self.to_list()[self.n:]

    def __add__(self, other: "SymplecticVector") -> "SymplecticVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return SymplecticVector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join(str(e) for e in self.to_list())


def omega_bits(u: int, v: int, n: int) -> int:
    """Symplectic form on packed vectors of F_2^{2n}."""
    mask = (1 << n) - 1
    return (((u & mask) & (v >> n)).bit_count() + ((u >> n) & (v & mask)).bit_count()) & 1


def swap_halves(v: int, n: int) -> int:
    mask = (1 << n) - 1
    return (v >> n) | ((v & mask) << n)


def symplectic_product(x: SymplecticVector, y: SymplecticVector) -> int:
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} vs {y.length}")
    if x.length % 2:
        raise ValueError(f"symplectic vectors have even length, got {x.length}")
    return omega_bits(x.bits, y.bits, x.length // 2)


def reduce_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Gauss-Jordan over GF(2); returns the RREF basis sorted by pivot."""
    basis: dict[int, int] = {}  # pivot -> row
    for r in rows:
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = _lowbit(r)
        for q in list(basis):
            if (basis[q] >> p) & 1:
                basis[q] ^= r
        basis[p] = r
    return tuple(basis[p] for p in sorted(basis))


def reduce_vector(v: int, rref_rows: Sequence[int]) -> int:
    """Remainder of ``v`` after elimination against an RREF basis."""
    for r in rref_rows:
        if (v >> _lowbit(r)) & 1:
            v ^= r
    return v


def kernel(rows: Sequence[int], ncols: int) -> tuple[int, ...]:
    """Basis of {x : <row, x> = 0 for every row} under the dot product."""
    red = reduce_rows(rows)
    pivots = {_lowbit(r): r for r in red}
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = 1 << f
        for p, r in pivots.items():
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return reduce_rows(out)


@dataclass(frozen=True)
class F2Subspace:
    ambient_dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if reduce_rows(self.rows) != self.rows:
            raise ValueError("rows are not a reduced row echelon basis")
        if any(r >> self.ambient_dim for r in self.rows):
            raise ValueError("row exceeds ambient dimension")

    @classmethod
    def zero(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> "F2Subspace":
        return cls(ambient_dim, reduce_rows(vectors))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ambient_dim // 2

    @property
    def basis(self) -> list[SymplecticVector]:
        return [SymplecticVector(self.ambient_dim, r) for r in self.rows]

    def contains(self, v: SymplecticVector | int) -> bool:
        bits = v.bits if isinstance(v, SymplecticVector) else v
        return reduce_vector(bits, self.rows) == 0

    __contains__ = contains

    def issubspace(self, other: "F2Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def elements(self) -> Iterator[int]:
        """All 2^dim vectors (packed ints)."""
        for mask in range(1 << self.dim):
            v = 0
            for i, r in enumerate(self.rows):
                if (mask >> i) & 1:
                    v ^= r
            yield v

    def __str__(self) -> str:
        return format_matrix(self.rows, self.ambient_dim)


def rref(rows: Iterable[SymplecticVector], ambient_dim: int | None = None) -> F2Subspace:
    rows = list(rows)
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient dimension needed for an empty row list")
        ambient_dim = rows[0].length
    if any(r.length != ambient_dim for r in rows):
        raise ValueError("rows differ in length")
    return F2Subspace.span(ambient_dim, (r.bits for r in rows))


def _check_same(a: F2Subspace, b: F2Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    _check_same(a, b)
    return F2Subspace.span(a.ambient_dim, a.rows + b.rows)


def intersect(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    """Zassenhaus: reduce rows (a|a) and (b|0); rows with zero left half span the meet."""
    _check_same(a, b)
    d = a.ambient_dim
    stacked = [r | (r << d) for r in a.rows] + list(b.rows)
    low = (1 << d) - 1
    meet = [r >> d for r in reduce_rows(stacked) if not r & low]
    return F2Subspace.span(d, meet)


def orthogonal_complement(w: F2Subspace) -> F2Subspace:
    """W-perp in the standard non-degenerate space (F_2^{2n}, omega)."""
    d = w.ambient_dim
    if d % 2:
        raise ValueError("symplectic ambient dimension must be even")
    # omega(x, w) = <x, swap(w)>, so W-perp is a plain kernel
    return F2Subspace(d, kernel([swap_halves(r, d // 2) for r in w.rows], d))


def radical(w: F2Subspace) -> F2Subspace:
    return intersect(w, orthogonal_complement(w))


def is_isotropic(w: F2Subspace) -> bool:
    n = w.n
    return all(omega_bits(u, v, n) == 0 for i, u in enumerate(w.rows) for v in w.rows[i + 1:])


def is_lagrangian(w: F2Subspace) -> bool:
    return is_isotropic(w) and w.dim == w.n


def symplectic_pairs(w: F2Subspace) -> tuple[list[tuple[int, int]], list[int]]:
    """Split a basis of ``w`` into hyperbolic pairs and a radical basis.

    Scans the basis left to right, pairs the first omega-nonorthogonal pair
    found, then clears both pair members from every remaining vector.  Returns
    ``(pairs, rest)`` with omega(u_i, v_j) = delta_ij, the pairs orthogonal to
    each other and to ``rest``; ``rest`` spans rad(w).
    """
    n = w.n
    todo = list(w.rows)
    pairs: list[tuple[int, int]] = []
    while True:
        found = None
        for i, u in enumerate(todo):
            for j in range(i + 1, len(todo)):
                if omega_bits(u, todo[j], n):
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            return pairs, todo
        i, j = found
        u, v = todo[i], todo[j]
        rest = []
        for k, t in enumerate(todo):
            if k in (i, j):
                continue
            if omega_bits(t, v, n):
                t ^= u
            if omega_bits(t, u, n):
                t ^= v
            rest.append(t)
        pairs.append((u, v))
        todo = rest


def radical_decomposition(w: F2Subspace) -> tuple[F2Subspace, F2Subspace]:
    """``(rad(w), s)`` with ``w = rad(w) (+) s`` and ``s`` non-degenerate."""
    pairs, rest = symplectic_pairs(w)
    s = F2Subspace.span(w.ambient_dim, [v for pair in pairs for v in pair])
    return F2Subspace.span(w.ambient_dim, rest), s


def maximal_isotropic(w: F2Subspace) -> F2Subspace:
    """A Lagrangian of ``w`` under the restricted form: rad(w) plus one side of each pair.

    Its dimension is ``(dim w + dim rad w) / 2``.
    """
    pairs, rest = symplectic_pairs(w)
    return F2Subspace.span(w.ambient_dim, rest + [u for u, _ in pairs])


def is_lagrangian_in(t: F2Subspace, w: F2Subspace) -> bool:
    """``t`` is a Lagrangian of ``w`` with the restricted form: T = T-perp within w."""
    if not t.issubspace(w):
        return False
    return intersect(orthogonal_complement(t), w) == t


def extend_to_lagrangian(w: F2Subspace) -> F2Subspace:
    """Greedily adjoin vectors of W-perp outside W until W is Lagrangian."""
    if not is_isotropic(w):
        raise ValueError("input subspace is not isotropic")
    while w.dim < w.n:
        perp = orthogonal_complement(w)
        for r in perp.rows:
            if not w.contains(r):
                w = F2Subspace.span(w.ambient_dim, w.rows + (r,))
                break
    return w


def lagrangian_count(n: int) -> int:
    """prod_{i=1..n} (2^i + 1)."""
    return math.prod((1 << i) + 1 for i in range(1, n + 1))


def enumerate_lagrangians(n: int, max_n: int = 4) -> Iterator[F2Subspace]:
    """Every Lagrangian subspace of F_2^{2n}, each exactly once.

    Walks RREF bases pivot set by pivot set, pruning as soon as a new row
    fails to be orthogonal to the rows already chosen.
    """
    if n > max_n:
        raise ValueError(
            f"refusing to enumerate Lagrangians for n={n}: "
            f"{lagrangian_count(n)} subspaces (cap n <= {max_n})"
        )
    d = 2 * n
    from itertools import combinations

    for pivots in combinations(range(d), n):
        pivot_set = set(pivots)
        free_per_row = [[c for c in range(p + 1, d) if c not in pivot_set] for p in pivots]

        def rows_for(i: int, chosen: list[int]):
            if i == n:
                yield tuple(chosen)
                return
            free = free_per_row[i]
            for mask in range(1 << len(free)):
                r = 1 << pivots[i]
                for j, c in enumerate(free):
                    if (mask >> j) & 1:
                        r |= 1 << c
                if any(omega_bits(r, s, n) for s in chosen):
                    continue
                chosen.append(r)
                yield from rows_for(i + 1, chosen)
                chosen.pop()

        for rows in rows_for(0, []):
            yield F2Subspace(d, rows)


def project_bits(v: int, qubit_mask: int, n: int) -> int:
    """Local view of a packed Pauli vector on the qubits in ``qubit_mask``."""
    return v & (qubit_mask | (qubit_mask << n))


def project_subspace(w: F2Subspace, qubits: Iterable[int]) -> F2Subspace:
    n = w.n
    mask = 0
    for q in qubits:
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for n={n}")
        mask |= 1 << q
    return F2Subspace.span(w.ambient_dim, (project_bits(r, mask, n) for r in w.rows))


def parse_matrix(text: str) -> list[list[int]]:
    """Rows of ``0``/``1`` characters, one per line; stops at the first blank line
    after content."""
    rows: list[list[int]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if rows:
                break
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"line {lineno}: expected only 0/1 characters, got {line!r}")
        if width is not None and len(line) != width:
            raise ValueError(f"line {lineno}: row length {len(line)} != {width}")
        width = len(line)
        rows.append([int(c) for c in line])
    return rows


def format_matrix(rows: Iterable[int], ncols: int) -> str:
    return "\n".join("".join(str((r >> c) & 1) for c in range(ncols)) for r in rows)


def load_subspace(text: str) -> F2Subspace:
    rows = parse_matrix(text)
    if not rows:
        raise ValueError("empty matrix")
    return rref([SymplecticVector.from_list(r) for r in rows])
