"""Gottesman-Knill propagation of stabilizer generators through Clifford circuits.

Only used as a cross-check oracle for the statevector extractor and as a cheap
source of random stabilizer groups.
"""

from __future__ import annotations

import numpy as np

from .groups import PauliSubgroup, independent_generators
from .pauli import PauliWord, multiply
from .statevec import Circuit, Gate, GateKind, random_clifford_gates


def _images(g: Gate, n: int) -> dict[tuple[str, int], PauliWord]:
    """U X_q U^dag and U Z_q U^dag for the qubits the gate touches."""
    def single(q, letter, phase=0):
        return PauliWord.single(n, q, letter).with_phase(phase)

    if g.kind is GateKind.H:
        (q,) = g.targets
        return {("X", q): single(q, "Z"), ("Z", q): single(q, "X")}
    if g.kind is GateKind.S:
        (q,) = g.targets
        return {("X", q): single(q, "Y"), ("Z", q): single(q, "Z")}
    if g.kind is GateKind.CNOT:
        c, t = g.targets
        return {
            ("X", c): multiply(single(c, "X"), single(t, "X")),
            ("Z", c): single(c, "Z"),
            ("X", t): single(t, "X"),
            ("Z", t): multiply(single(c, "Z"), single(t, "Z")),
        }
    raise ValueError("rotation gates are not Clifford")


def conjugate(p: PauliWord, g: Gate) -> PauliWord:
    """U P U^dag for a Clifford gate U."""
    n = p.n
    images = _images(g, n)
    # P = i^(phase + |x&z|) prod_q X_q^x_q prod_q Z_q^z_q
    out = PauliWord(n, (p.phase_exp + (p.x & p.z).bit_count()) % 4, 0, 0)
    for q in range(n):
        if (p.x >> q) & 1:
            out = multiply(out, images.get(("X", q), PauliWord.single(n, q, "X")))
    for q in range(n):
        if (p.z >> q) & 1:
            out = multiply(out, images.get(("Z", q), PauliWord.single(n, q, "Z")))
    return out


def propagate(c: Circuit, generators=None) -> PauliSubgroup:
    """Stabilizer group of C|0...0> (or of the state stabilized by ``generators``)."""
    if not c.is_clifford():
        raise ValueError("tableau propagation only handles Clifford circuits")
    gens = list(generators) if generators is not None else [
        PauliWord.single(c.n, q, "Z") for q in range(c.n)
    ]
    for g in c.gates:
        gens = [conjugate(p, g) for p in gens]
    return independent_generators(gens, n=c.n, stabilizer=True)


def random_stabilizer_group(n: int, rng: np.random.Generator, depth: int | None = None) -> PauliSubgroup:
    """Stabilizer group of a random Clifford circuit applied to |0...0>."""
    depth = 2 * n if depth is None else depth
    return propagate(Circuit(n, tuple(random_clifford_gates(n, depth, rng))))
