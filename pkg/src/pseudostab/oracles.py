"""Brute-force oracles used by the verification suites.

Everything here works by enumeration (elements, subspaces, dense matrices)
and shares no code path with the polynomial-time routines it checks, apart
from the packed-vector helpers.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .groups import PauliSubgroup
from .pauli import PauliWord, pauli_matrix
from .symplectic import F2Subspace, omega_bits


def matrix_commutator(p: PauliWord, q: PauliWord) -> int:
    a, b = pauli_matrix(p), pauli_matrix(q)
    return 1 if np.allclose(a @ b, b @ a) else -1


def all_subspaces(d: int) -> list[frozenset[int]]:
    """Every subspace of F_2^d as its element set, found by breadth-first extension."""
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    vectors = range(1, 1 << d)
    while frontier:
        nxt = []
        for s in frontier:
            for v in vectors:
                if v in s:
                    continue
                t = frozenset(s | {u ^ v for u in s})
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return list(seen)


def isotropic_subspaces(n: int) -> list[frozenset[int]]:
    """Every isotropic subspace of (F_2^{2n}, omega) as an element set."""
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for s in frontier:
            for v in range(1, 1 << (2 * n)):
                if v in s or any(omega_bits(v, u, n) for u in s):
                    continue
                t = frozenset(s | {u ^ v for u in s})
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return list(seen)


def lagrangian_count_bruteforce(n: int) -> int:
    return sum(1 for s in isotropic_subspaces(n) if len(s) == 1 << n)


def dim_of(elements: frozenset[int]) -> int:
    return len(elements).bit_length() - 1


def max_isotropic_dim(elements: set[int] | frozenset[int], n: int) -> int:
    """Largest isotropic subspace inside the given subspace (element set).

    Grows isotropic subspaces one dimension at a time, de-duplicated by their
    element sets, until no subspace can be extended.
    """
    elems = [v for v in elements if v]
    level = {frozenset({0}): ()}
    dim = 0
    while True:
        nxt: dict[frozenset[int], tuple[int, ...]] = {}
        for span, basis in level.items():
            for v in elems:
                if v in span or any(omega_bits(v, b, n) for b in basis):
                    continue
                key = frozenset(span | {u ^ v for u in span})
                if key not in nxt:
                    nxt[key] = basis + (v,)
        if not nxt:
            return dim
        level = nxt
        dim += 1


def group_elements(m: PauliSubgroup) -> frozenset[int]:
    return frozenset(F2Subspace(2 * m.n, m.subspace().rows).elements())


def max_commuting_dim_bruteforce(m: PauliSubgroup) -> int:
    return max_isotropic_dim(group_elements(m), m.n)


def center_bruteforce(m: PauliSubgroup) -> frozenset[int]:
    """Elements of ``m`` commuting with every element of ``m``."""
    elems = group_elements(m)
    return frozenset(v for v in elems if all(omega_bits(v, u, m.n) == 0 for u in elems))


def local_view_bruteforce(g: PauliSubgroup, members) -> frozenset[int]:
    mask = 0
    for q in members:
        mask |= 1 << q
    full = mask | (mask << g.n)
    return frozenset(v & full for v in group_elements(g))


def type_elements_bruteforce(k_elements, members, n: int) -> tuple[list[int], list[int]]:
    """(Type I, Type II) elements of a group given by its element set."""
    mask = 0
    for q in members:
        mask |= 1 << q
    low = (1 << n) - 1
    t1, t2 = [], []
    for v in k_elements:
        x, z = v & low & mask, (v >> n) & mask
        if x == z and x.bit_count() % 2 == 1:
            t1.append(v)
        if (x ^ z).bit_count() % 2 == 1:
            t2.append(v)
    return t1, t2


def random_subspace(d: int, rng: np.random.Generator, rows: int | None = None) -> F2Subspace:
    rows = int(rng.integers(0, d + 1)) if rows is None else rows
    return F2Subspace.span(d, (int(rng.integers(0, 1 << d)) for _ in range(rows)))


def iter_elements(w: F2Subspace) -> Iterator[int]:
    return w.elements()
