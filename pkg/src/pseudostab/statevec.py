"""Dense statevector simulation of Clifford + Pauli-rotation circuits.

Amplitude index bit ``q`` is qubit ``q`` (little-endian).  This module is the
brute-force oracle: it extracts stabilizer groups by scanning all 4^n Pauli
expectation values, so it is meant for n <= 8.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .groups import NotAStabilizerGroup, PauliSubgroup, independent_generators
from .pauli import PauliWord, commutator, parse_pauli

SIM_CAP = 14
EXTRACT_CAP = 8
DEFAULT_STAB_TOL = 1e-9

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


class GateKind(enum.Enum):
    H = "H"
    S = "S"
    CNOT = "CNOT"
    ROT = "ROT"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple[int, ...]
    axis: PauliWord | None = None
    angle: float = 0.0

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls(GateKind.H, (q,))

    @classmethod
    def s(cls, q: int) -> "Gate":
        return cls(GateKind.S, (q,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(GateKind.CNOT, (control, target))

    @classmethod
    def rot(cls, axis: PauliWord | str, angle: float) -> "Gate":
        """exp(i * angle * axis) for a Hermitian Pauli ``axis``."""
        if isinstance(axis, str):
            axis = parse_pauli(axis)
        if not axis.is_hermitian():
            raise ValueError(f"rotation axis {axis} is not Hermitian")
        targets = tuple(q for q in range(axis.n) if (axis.support >> q) & 1)
        return cls(GateKind.ROT, targets, axis, float(angle))


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if len(set(g.targets)) != len(g.targets):
                raise ValueError(f"repeated target in {g}")
            if any(not 0 <= q < self.n for q in g.targets):
                raise ValueError(f"gate {g.kind.value} target out of range for n={self.n}")
            if g.kind is GateKind.ROT and g.axis.n != self.n:
                raise ValueError(f"rotation axis {g.axis} is not on {self.n} qubits")

    @property
    def rotation_count(self) -> int:
        return sum(1 for g in self.gates if g.kind is GateKind.ROT)

    def is_clifford(self) -> bool:
        return self.rotation_count == 0


@dataclass(frozen=True, eq=False)
class Statevector:
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-12 * max(1, self.n):
            raise ValueError(f"statevector not normalized (norm {norm})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n: int) -> "Statevector":
        a = np.zeros(1 << n, dtype=complex)
        a[0] = 1
        return cls(n, a)

    @classmethod
    def product(cls, *single_qubit_states) -> "Statevector":
        """Tensor product; the first argument is qubit 0."""
        amps = np.ones(1, dtype=complex)
        for s in single_qubit_states:
            amps = np.kron(np.asarray(s, dtype=complex), amps)
        return cls(len(single_qubit_states), amps)

    def tensor(self, other: "Statevector") -> "Statevector":
        """``self`` on the low qubits, ``other`` on the high ones."""
        return Statevector(self.n + other.n, np.kron(other.amplitudes, self.amplitudes))


# -- gate application ---------------------------------------------------


def _apply_1q(amps: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    t = amps.reshape(1 << (n - 1 - q), 2, 1 << q)
    return np.einsum("ab,hbl->hal", u, t).reshape(-1)


def _apply_cnot(amps: np.ndarray, c: int, t: int) -> np.ndarray:
    idx = np.arange(amps.size)
    return amps[idx ^ (((idx >> c) & 1) << t)]


def _parity_sign(z: int, idx: np.ndarray) -> np.ndarray:
    return 1 - 2 * (np.bitwise_count(idx & z) & 1).astype(np.int8)


def apply_pauli(amps: np.ndarray, p: PauliWord) -> np.ndarray:
    """P |psi> for a letter word with phase."""
    idx = np.arange(amps.size)
    src = idx ^ p.x
    # (X^x Z^z psi)[j] = (-1)^{z.(j^x)} psi[j^x]; letter Y = i X Z
    out = _parity_sign(p.z, src) * amps[src]
    return (1j ** ((p.phase_exp + (p.x & p.z).bit_count()) % 4)) * out


def apply_rotation(amps: np.ndarray, axis: PauliWord, angle: float) -> np.ndarray:
    """exp(i angle P) = cos(angle) I + i sin(angle) P."""
    return math.cos(angle) * amps + 1j * math.sin(angle) * apply_pauli(amps, axis)


def apply_gate(amps: np.ndarray, g: Gate, n: int) -> np.ndarray:
    if g.kind is GateKind.H:
        return _apply_1q(amps, _H, g.targets[0], n)
    if g.kind is GateKind.S:
        return _apply_1q(amps, _S, g.targets[0], n)
    if g.kind is GateKind.CNOT:
        return _apply_cnot(amps, *g.targets)
    return apply_rotation(amps, g.axis, g.angle)


def apply_local(amps: np.ndarray, u: np.ndarray, qubits, n: int) -> np.ndarray:
    """Apply a 2^k x 2^k matrix whose index bit j acts on ``qubits[j]``."""
    k = len(qubits)
    t = amps.reshape((2,) * n)
    ut = np.asarray(u, dtype=complex).reshape((2,) * (2 * k))
    # tensor axis of qubit q is n-1-q; matrix axes run from bit k-1 down to 0
    in_axes = [n - 1 - qubits[j] for j in reversed(range(k))]
    res = np.tensordot(ut, t, axes=(list(range(k, 2 * k)), in_axes))
    return np.moveaxis(res, list(range(k)), in_axes).reshape(-1)


def simulate(c: Circuit, cap: int = SIM_CAP, initial: Statevector | None = None) -> Statevector:
    """C |0...0> (or C |initial>)."""
    if c.n > cap:
        raise ValueError(f"refusing to simulate n={c.n} qubits (cap {cap})")
    amps = (initial.amplitudes if initial is not None else Statevector.zero(c.n).amplitudes).copy()
    for g in c.gates:
        amps = apply_gate(amps, g, c.n)
    return Statevector(c.n, amps / np.linalg.norm(amps))


def d_plus() -> np.ndarray:
    """D|+> with D = exp(i pi/8 Y)."""
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    return apply_rotation(plus, PauliWord(1, 0, 1, 1), math.pi / 8)


def psi_t_circuit(n: int, t: int) -> Circuit:
    """(D|+>)^{t} on qubits 0..t-1, |0> on the rest."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    gates = []
    for q in range(t):
        gates.append(Gate.h(q))
        gates.append(Gate.rot(PauliWord.single(n, q, "Y"), math.pi / 8))
    return Circuit(n, tuple(gates))


def prepare_psi_t(n: int, t: int) -> Statevector:
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    zero = np.array([1, 0], dtype=complex)
    return Statevector.product(*([d_plus()] * t + [zero] * (n - t)))


def overlap(psi: Statevector, phi: Statevector) -> complex:
    """<psi|phi>."""
    if psi.n != phi.n:
        raise ValueError("qubit count mismatch")
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


# -- stabilizer extraction ----------------------------------------------


class StabilizerExtractionError(RuntimeError):
    pass


def _walsh_hadamard_rows(m: np.ndarray) -> np.ndarray:
    rows, size = m.shape
    h = m
    step = 1
    while step < size:
        h = h.reshape(rows, -1, 2, step)
        h = np.stack((h[:, :, 0, :] + h[:, :, 1, :], h[:, :, 0, :] - h[:, :, 1, :]), axis=2)
        step *= 2
    return h.reshape(rows, size)


def pauli_expectations(psi: Statevector) -> np.ndarray:
    """E[x, z] = <psi| X^x Z^z |psi> for all x, z (no letter phases applied)."""
    a = psi.amplitudes
    idx = np.arange(a.size)
    v = np.conj(a[idx[None, :] ^ idx[:, None]]) * a[None, :]
    return _walsh_hadamard_rows(v)


def letter_expectations(psi: Statevector) -> np.ndarray:
    """<psi|P|psi> for every letter word P = i^{|x&z|} X^x Z^z, indexed [x, z]; real."""
    e = pauli_expectations(psi)
    idx = np.arange(e.shape[0])
    ypow = np.bitwise_count(idx[:, None] & idx[None, :]) % 4
    return ((1j ** ypow) * e).real


def extract_stabilizer_group(
    psi: Statevector, tol: float = DEFAULT_STAB_TOL, cap: int = EXTRACT_CAP
) -> PauliSubgroup:
    """stab(|psi>) as an independent, signed generating set."""
    n = psi.n
    if n > cap:
        raise ValueError(f"refusing a 4^{n} Pauli scan (cap n <= {cap})")
    e = letter_expectations(psi)
    xs, zs = np.nonzero(np.abs(e) >= 1 - tol)
    words = []
    for x, z in zip(xs.tolist(), zs.tolist()):
        sign = e[x, z]
        words.append(PauliWord(n, 0 if sign > 0 else 2, x, z))
    try:
        group = independent_generators(words, n=n, stabilizer=True)
    except NotAStabilizerGroup as exc:
        raise StabilizerExtractionError(f"detected stabilizers are inconsistent: {exc}") from None
    if len(words) != 1 << group.dim:
        raise StabilizerExtractionError(
            f"found {len(words)} stabilizers, not a group of size 2^{group.dim}; adjust tol"
        )
    for g in group.generators:
        resid = np.linalg.norm(apply_pauli(psi.amplitudes, g) - psi.amplitudes)
        if resid > math.sqrt(2 * tol) + 1e-12:
            raise StabilizerExtractionError(f"{g} fails P|psi> = |psi> (residual {resid:.3g})")
    return group


def stabilizer_dimension(psi: Statevector, tol: float = DEFAULT_STAB_TOL) -> int:
    return extract_stabilizer_group(psi, tol).dim


@dataclass(frozen=True)
class FidelityReport:
    applicable: bool
    overlap: float
    witness: tuple[PauliWord, PauliWord] | None
    holds: bool


def fidelity_bound_check(
    psi: Statevector,
    phi: Statevector,
    tol: float = DEFAULT_STAB_TOL,
    slack: float = 1e-9,
) -> FidelityReport:
    """|<psi|phi>| <= 1/sqrt(2) whenever the stabilizer groups hold an anticommuting pair.

    Generators suffice: if every generator pair commutes, every element pair does.
    """
    g1 = extract_stabilizer_group(psi, tol)
    g2 = extract_stabilizer_group(phi, tol)
    ov = abs(overlap(psi, phi))
    for a in g1.generators:
        for b in g2.generators:
            if commutator(a, b) == -1:
                return FidelityReport(True, ov, (a, b), ov <= 1 / math.sqrt(2) + slack)
    return FidelityReport(False, ov, None, True)


# -- random instances ---------------------------------------------------

DEFAULT_ANGLES = (math.pi / 8, math.pi / 5, 1.0)


def random_pauli(n: int, rng: np.random.Generator, qubits=None) -> PauliWord:
    """Uniform non-identity Hermitian Pauli with random sign, supported on ``qubits``."""
    qs = list(range(n)) if qubits is None else list(qubits)
    while True:
        x = z = 0
        for q in qs:
            if rng.integers(2):
                x |= 1 << q
            if rng.integers(2):
                z |= 1 << q
        if x or z:
            return PauliWord(n, 2 * int(rng.integers(2)), x, z)


def random_angle(rng: np.random.Generator, angles=DEFAULT_ANGLES) -> float:
    """One of ``angles`` or, with equal weight, a uniform draw from [0, 2 pi)."""
    k = int(rng.integers(len(angles) + 1))
    return float(angles[k]) if k < len(angles) else float(rng.uniform(0, 2 * math.pi))


def random_clifford_gates(n: int, depth: int, rng: np.random.Generator, qubits=None) -> list[Gate]:
    """``depth`` layers; each layer touches every qubit in ``qubits`` at most once."""
    qs = list(range(n)) if qubits is None else list(qubits)
    gates: list[Gate] = []
    for _ in range(depth):
        order = list(rng.permutation(qs))
        while order:
            q = int(order.pop())
            choice = int(rng.integers(3))
            if choice == 2 and order:
                other = int(order.pop())
                gates.append(Gate.cnot(q, other) if rng.integers(2) else Gate.cnot(other, q))
            elif choice == 1:
                gates.append(Gate.s(q))
            else:
                gates.append(Gate.h(q))
    return gates


def random_circuit(
    n: int,
    clifford_depth: int,
    t: int,
    seed,
    angles=DEFAULT_ANGLES,
    rotation_qubits=None,
) -> Circuit:
    """Random {H, S, CNOT} layers with ``t`` rotations at random positions.

    Deterministic in ``seed`` (an int or a numpy SeedSequence/Generator).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    gates = random_clifford_gates(n, clifford_depth, rng)
    for _ in range(t):
        rot = Gate.rot(random_pauli(n, rng, rotation_qubits), random_angle(rng, angles))
        gates.insert(int(rng.integers(len(gates) + 1)), rot)
    return Circuit(n, tuple(gates))
