"""Exact arithmetic on n-qubit Pauli words.

A word is stored as ``i**phase_exp * P_0 (x) P_1 (x) ... (x) P_{n-1}`` where each
letter is one of the Hermitian matrices I, X, Y, Z.  Qubit ``q`` carries

    (x_q, z_q) = (0, 0) -> I,  (1, 0) -> X,  (0, 1) -> Z,  (1, 1) -> Y

and the X/Z parts are packed into Python ints (bit ``q`` = qubit ``q``), so
products and commutators are word-parallel XOR/AND/popcount.

Phaseless words (elements of the quotient by <iI>) are ordinary words with
``phase_exp == 0``; functions that ignore phases say so.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

_LETTERS = "IXZY"  # indexed by x + 2*z
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PREFIX_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX_RE = re.compile(r"^([+-]?i?)")


class PauliParseError(ValueError):
    """Raised when a Pauli string cannot be parsed."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position} in {text!r}")


def popcount(v: int) -> int:
    return v.bit_count()


def parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True, repr=False)
class PauliWord:
    n: int
    phase_exp: int
    x: int
    z: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        if not 0 <= self.phase_exp < 4:
            object.__setattr__(self, "phase_exp", self.phase_exp % 4)
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask or self.x < 0 or self.z < 0:
            raise ValueError(f"bit vectors do not fit in {self.n} qubits")

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliWord":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliWord":
        """Letter ``letter`` on ``qubit``, identity elsewhere."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for n={n}")
        xb, zb = _LETTER_BITS[letter]
        return cls(n, 0, xb << qubit, zb << qubit)

    @classmethod
    def from_bits(cls, x_bits: Iterable[int], z_bits: Iterable[int], phase_exp: int = 0) -> "PauliWord":
        xs, zs = list(x_bits), list(z_bits)
        if len(xs) != len(zs):
            raise ValueError("x and z bit vectors differ in length")
        x = sum(int(b) << q for q, b in enumerate(xs))
        z = sum(int(b) << q for q, b in enumerate(zs))
        return cls(len(xs), phase_exp, x, z)

    # -- views ------------------------------------------------------------

    @property
    def x_bits(self) -> list[int]:
        return [(self.x >> q) & 1 for q in range(self.n)]

    @property
    def z_bits(self) -> list[int]:
        return [(self.z >> q) & 1 for q in range(self.n)]

    @property
    def support(self) -> int:
        """Bitmask of qubits carrying a non-identity letter."""
        return self.x | self.z

    @property
    def weight(self) -> int:
        return popcount(self.x | self.z)

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x >> qubit) & 1) + 2 * ((self.z >> qubit) & 1)]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def phaseless(self) -> "PauliWord":
        return PauliWord(self.n, 0, self.x, self.z) if self.phase_exp else self

    def is_identity(self) -> bool:
        """True if the letters are all I (any phase)."""
        return self.x == 0 and self.z == 0

    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    def with_phase(self, phase_exp: int) -> "PauliWord":
        return PauliWord(self.n, phase_exp % 4, self.x, self.z)

    def negate(self) -> "PauliWord":
        return self.with_phase(self.phase_exp + 2)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliWord({format_pauli(self)!r})"

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        return multiply(self, other)

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; basis index bit q is qubit q."""
        return pauli_matrix(self)


def parse_pauli(text: str) -> PauliWord:
    """Parse ``[+|-][i]`` followed by letters from ``IXYZ``."""
    s = text.strip()
    m = _PREFIX_RE.match(s)
    prefix = m.group(1) if m else ""
    # "i" alone followed by nothing is not a valid word
    if prefix not in _PREFIXES:
        raise PauliParseError(text, 0, "malformed phase prefix")
    body = s[len(prefix):]
    offset = len(text) - len(text.lstrip()) + len(prefix)
    x = z = 0
    for q, ch in enumerate(body):
        bits = _LETTER_BITS.get(ch)
        if bits is None:
            raise PauliParseError(text, offset + q, f"illegal character {ch!r}")
        x |= bits[0] << q
        z |= bits[1] << q
    return PauliWord(len(body), _PREFIXES[prefix], x, z)


def format_pauli(p: PauliWord) -> str:
    return _PREFIX_TEXT[p.phase_exp] + p.letters()


def _check_dims(p: PauliWord, q: PauliWord) -> None:
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n} qubits")


def multiply(p: PauliWord, q: PauliWord) -> PauliWord:
    """Exact product ``p q``."""
    _check_dims(p, q)
    # Y = iXZ, so a word equals i^(phase + |x&z|) X^x Z^z; moving Z^z1 past
    # X^x2 costs (-1)^|z1&x2|.
    x = p.x ^ q.x
    z = p.z ^ q.z
    phase = (
        p.phase_exp
        + q.phase_exp
        + popcount(p.x & p.z)
        + popcount(q.x & q.z)
        + 2 * popcount(p.z & q.x)
        - popcount(x & z)
    )
    return PauliWord(p.n, phase % 4, x, z)


def product(words: Iterable[PauliWord], n: int | None = None) -> PauliWord:
    """Ordered product of ``words`` (identity on ``n`` qubits if empty)."""
    acc = None
    for w in words:
        acc = w if acc is None else multiply(acc, w)
    if acc is None:
        if n is None:
            raise ValueError("empty product needs an explicit qubit count")
        return PauliWord.identity(n)
    return acc


def commutator(p: PauliWord, q: PauliWord) -> int:
    """+1 if ``p`` and ``q`` commute, -1 otherwise.  Ignores phases."""
    _check_dims(p, q)
    return -1 if parity((p.x & q.z) ^ (q.x & p.z)) else 1


def commutes(p: PauliWord, q: PauliWord) -> bool:
    return commutator(p, q) == 1


def to_pauli_vector(p: PauliWord):
    """Pauli vector ``[a | b]`` (a = X part, b = Z part); drops the phase."""
    from .symplectic import SymplecticVector

    return SymplecticVector(2 * p.n, p.x | (p.z << p.n))


def from_pauli_vector(v) -> PauliWord:
    """Phaseless word ``X^a Z^b`` up to phase, i.e. the letter word for ``[a | b]``."""
    length = v.length
    if length % 2:
        raise ValueError(f"Pauli vectors have even length, got {length}")
    n = length // 2
    mask = (1 << n) - 1
    return PauliWord(n, 0, v.bits & mask, (v.bits >> n) & mask)


def all_phaseless(n: int) -> Iterator[PauliWord]:
    """All 4^n phaseless words, identity first."""
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliWord(n, 0, x, z)


_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(p: PauliWord) -> np.ndarray:
    mat = np.ones((1, 1), dtype=complex)
    # kron puts its first factor on the most significant bit
    for q in reversed(range(p.n)):
        mat = np.kron(mat, _SINGLE[p.letter(q)])
    return (1j ** p.phase_exp) * mat


def restrict(p: PauliWord, qubits: Iterable[int]) -> PauliWord:
    """Phaseless word on ``len(qubits)`` qubits reading ``p`` at ``qubits`` in order."""
    x = z = 0
    qs = list(qubits)
    for j, q in enumerate(qs):
        x |= ((p.x >> q) & 1) << j
        z |= ((p.z >> q) & 1) << j
    return PauliWord(len(qs), 0, x, z)


def embed(p: PauliWord, qubits: Iterable[int], n: int) -> PauliWord:
    """Inverse of :func:`restrict`: place a ``len(qubits)``-qubit word on ``qubits`` of ``n``."""
    x = z = 0
    for j, q in enumerate(qubits):
        x |= ((p.x >> j) & 1) << q
        z |= ((p.z >> j) & 1) << q
    return PauliWord(n, p.phase_exp, x, z)
