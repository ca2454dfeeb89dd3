"""Local Hamiltonians: magic-state, stabilizer/CSS and D-rotated CSS forms.

Every term is evaluated through its own 2^k x 2^k matrix on its support; the
full 2^n x 2^n operator is only built by :func:`dense_matrix` for oracles.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .local_views import QubitSet
from .pauli import PauliWord, parse_pauli, pauli_matrix, restrict
from .statevec import Statevector, apply_local

SIN2_PI_8 = (1 - 1 / math.sqrt(2)) / 2
DENSE_CAP = 10

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CONJ_HADAMARD = np.array([[1, -1], [-1, -1]], dtype=complex) / math.sqrt(2)  # -X H X
D_GATE = np.array(
    [[math.cos(math.pi / 8), math.sin(math.pi / 8)], [-math.sin(math.pi / 8), math.cos(math.pi / 8)]],
    dtype=complex,
)  # exp(i pi/8 Y)


class TermKind(enum.Enum):
    PROJ = "PROJ"
    HADTYPE = "HADTYPE"
    CONJHADTYPE = "CONJHADTYPE"
    DENSE = "DENSE"


@dataclass(frozen=True, eq=False)
class HamTerm:
    support: QubitSet
    kind: TermKind
    pauli: PauliWord | None = None
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind is TermKind.PROJ:
            p = self.pauli
            if p is None or p.phase_exp not in (0, 2):
                raise ValueError("projector terms need a Hermitian signed Pauli")
            if p.support != self.support.mask:
                raise ValueError(f"support of {p} does not match {self.support.members}")
        elif self.kind is TermKind.DENSE:
            k = len(self.support)
            m = np.asarray(self.matrix, dtype=complex)
            if m.shape != (1 << k, 1 << k):
                raise ValueError(f"dense term needs a {1 << k}x{1 << k} matrix")
            if not np.allclose(m, m.conj().T, atol=1e-12):
                raise ValueError("dense term is not Hermitian")
            if np.linalg.norm(m, 2) > 1 + 1e-12:
                raise ValueError("dense term has spectral norm above 1")
            object.__setattr__(self, "matrix", m)

    @property
    def k(self) -> int:
        return len(self.support)

    def local_matrix(self) -> np.ndarray:
        """Matrix on the support; index bit j is qubit ``support.members[j]``."""
        k = self.k
        eye = np.eye(1 << k, dtype=complex)
        if self.kind is TermKind.PROJ:
            local = restrict(self.pauli, self.support.members).with_phase(self.pauli.phase_exp)
            return (eye - pauli_matrix(local)) / 2
        if self.kind is TermKind.HADTYPE:
            return (eye - _kron_power(HADAMARD, k)) / 2
        if self.kind is TermKind.CONJHADTYPE:
            return (eye - _kron_power(CONJ_HADAMARD, k)) / 2
        return self.matrix

    def describe(self) -> str:
        if self.kind is TermKind.PROJ:
            return f"PROJ {self.pauli}"
        if self.kind is TermKind.DENSE:
            return f"DENSE {','.join(map(str, self.support.members))}"
        return f"{self.kind.value} {','.join(map(str, self.support.members))}"


def _kron_power(m: np.ndarray, k: int) -> np.ndarray:
    return reduce(np.kron, [m] * k, np.ones((1, 1), dtype=complex))


@dataclass(frozen=True)
class LocalHamiltonian:
    n: int
    terms: tuple[HamTerm, ...]
    normalization: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("Hamiltonian needs at least one term")
        for t in self.terms:
            if t.support.n != self.n:
                raise ValueError("term support lives on a different qubit count")
        if self.normalization is None:
            object.__setattr__(self, "normalization", Fraction(1, len(self.terms)))

    @property
    def m(self) -> int:
        return len(self.terms)

    @property
    def locality(self) -> int:
        return max(t.k for t in self.terms)

    @property
    def max_degree(self) -> int:
        """Largest number of terms acting on one qubit."""
        return max(sum(1 for t in self.terms if q in t.support.members) for q in range(self.n))

    def is_magic(self) -> bool:
        """True for H_D: n one-qubit Hadamard-type terms, one per qubit, norm 1/n."""
        return (
            self.m == self.n
            and all(t.kind is TermKind.HADTYPE and t.k == 1 for t in self.terms)
            and sorted(t.support.members[0] for t in self.terms) == list(range(self.n))
            and self.normalization == Fraction(1, self.n)
        )


def build_magic_hamiltonian(n: int) -> LocalHamiltonian:
    """H_D = (1/n) sum_i (I - H_i)/2."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return LocalHamiltonian(
        n, tuple(HamTerm(QubitSet(n, (i,)), TermKind.HADTYPE) for i in range(n)), Fraction(1, n)
    )


def build_stabilizer_hamiltonian(
    gens: Sequence[PauliWord | str],
    max_locality: int | None = None,
    max_degree: int | None = None,
) -> LocalHamiltonian:
    """(1/|S|) sum_S (I - S)/2, one projector term per generator."""
    words = [parse_pauli(g) if isinstance(g, str) else g for g in gens]
    if not words:
        raise ValueError("no generators")
    n = words[0].n
    terms = []
    for w in words:
        if w.n != n:
            raise ValueError(f"generator {w} is not on {n} qubits")
        if w.is_identity():
            raise ValueError("identity generator has no support")
        support = QubitSet(n, tuple(q for q in range(n) if (w.support >> q) & 1))
        if max_locality is not None and len(support) > max_locality:
            raise ValueError(f"generator {w} acts on {len(support)} > {max_locality} qubits")
        terms.append(HamTerm(support, TermKind.PROJ, w))
    h = LocalHamiltonian(n, tuple(terms))
    if max_degree is not None and h.max_degree > max_degree:
        raise ValueError(f"a qubit is acted on by {h.max_degree} > {max_degree} terms")
    return h


def _css_kind(p: PauliWord) -> str | None:
    if p.z == 0:
        return "X"
    if p.x == 0:
        return "Z"
    return None


def rotate_css(h: LocalHamiltonian) -> LocalHamiltonian:
    """D^{(x)n} h D^dag{(x)n}: X-type terms become Hadamard-type, Z-type conjugate-Hadamard-type."""
    out = []
    for t in h.terms:
        if t.kind is not TermKind.PROJ:
            raise ValueError(f"term {t.describe()} is not a Pauli projector")
        kind = _css_kind(t.pauli)
        if kind is None:
            raise ValueError(f"generator {t.pauli} is neither X-type nor Z-type")
        if t.pauli.phase_exp != 0:
            raise ValueError(f"generator {t.pauli} carries a sign; rotation needs +X/+Z checks")
        out.append(HamTerm(t.support, TermKind.HADTYPE if kind == "X" else TermKind.CONJHADTYPE))
    return LocalHamiltonian(h.n, tuple(out), h.normalization)


def term_energy(term: HamTerm, psi: Statevector) -> float:
    """<psi|h|psi> via the term's local matrix."""
    if term.support.n != psi.n:
        raise ValueError("term and state live on different qubit counts")
    a = psi.amplitudes
    val = np.vdot(a, apply_local(a, term.local_matrix(), term.support.members, psi.n))
    if abs(val.imag) > 1e-9:
        raise ArithmeticError(f"non-real term energy {val}")
    return min(1.0, max(0.0, float(val.real)))


def term_energies(h: LocalHamiltonian, psi: Statevector) -> list[float]:
    return [term_energy(t, psi) for t in h.terms]


def energy(h: LocalHamiltonian, psi: Statevector) -> float:
    """Normalized energy; terms summed in index order."""
    total = 0.0
    for e in term_energies(h, psi):
        total += e
    return float(h.normalization) * total


def theorem1_bound(n: int, t: int) -> float:
    """(1 - t/n) sin^2(pi/8), floored at zero."""
    if t < 0 or n < 1:
        raise ValueError("need n >= 1 and t >= 0")
    return max(0.0, 1 - t / n) * SIN2_PI_8


def embed_local(u: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Full 2^n x 2^n matrix of a local operator."""
    if n > DENSE_CAP:
        raise ValueError(f"refusing a dense 2^{n} matrix (cap {DENSE_CAP})")
    dim = 1 << n
    cols = [apply_local(np.eye(dim, dtype=complex)[:, j], u, list(qubits), n) for j in range(dim)]
    return np.stack(cols, axis=1)


def dense_matrix(h: LocalHamiltonian) -> np.ndarray:
    total = np.zeros((1 << h.n, 1 << h.n), dtype=complex)
    for t in h.terms:
        total += embed_local(t.local_matrix(), t.support.members, h.n)
    return float(h.normalization) * total


def ground_energy_dense(h: LocalHamiltonian, cap: int = 6) -> float:
    """Smallest eigenvalue by full diagonalization (oracle only)."""
    if h.n > cap:
        raise ValueError(f"refusing to diagonalize n={h.n} (cap {cap})")
    return float(np.linalg.eigvalsh(dense_matrix(h))[0])


def d_rotation(n: int) -> np.ndarray:
    return _kron_power(D_GATE, n)


# -- code fixtures --------------------------------------------------------


def repetition_checks(n: int, weight: int = 3, letter: str = "X") -> list[PauliWord]:
    """Sliding-window checks ``letter`` on qubits i..i+weight-1, for i = 0..n-weight."""
    if n < weight:
        raise ValueError(f"need n >= {weight}")
    checks = []
    for i in range(n - weight + 1):
        w = PauliWord.identity(n)
        for q in range(i, i + weight):
            w = w * PauliWord.single(n, q, letter)
        checks.append(w.phaseless())
    return checks


def rotated_repetition_hamiltonian(n: int, weight: int = 3) -> LocalHamiltonian:
    """D-rotated CSS Hamiltonian of the weight-3 sliding X checks: all Hadamard-type."""
    return rotate_css(build_stabilizer_hamiltonian(repetition_checks(n, weight, "X")))


_HAMMING = ("1010101", "0110011", "0001111")


def steane_generators() -> list[PauliWord]:
    """X-type then Z-type checks of the [[7,1,3]] code (Hamming parity checks)."""
    out = []
    for letter in "XZ":
        for row in _HAMMING:
            out.append(parse_pauli("".join(letter if c == "1" else "I" for c in row)))
    return out
