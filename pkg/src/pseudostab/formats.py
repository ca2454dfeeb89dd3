"""Text formats for circuits and Hamiltonians.

Circuit file::

    CIRC n=3
    H 0
    CNOT 0 1
    ROT 0.39269908169872414 IYI

Hamiltonian file::

    HAM n=3 norm=1/3
    HADTYPE 0
    CONJHADTYPE 1,2
    PROJ -ZZI

Qubits are 0-based; in a Pauli string the first letter is qubit 0 and
amplitude index bit q is qubit q.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .hamiltonian import HamTerm, LocalHamiltonian, TermKind
from .local_views import QubitSet
from .pauli import PauliParseError, parse_pauli
from .statevec import Circuit, Gate, GateKind


class FormatError(ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


_HEADER = re.compile(r"^(CIRC|HAM)\s+n=(\d+)(?:\s+norm=(\S+))?$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines, kind: str):
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError(1, f"missing {kind} header") from None
    m = _HEADER.match(line)
    if not m or m.group(1) != kind:
        raise FormatError(no, f"expected '{kind} n=<n>' header, got {line!r}")
    return no, int(m.group(2)), m.group(3)


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(no, f"expected a qubit index, got {tok!r}") from None


def parse_circuit(text: str) -> Circuit:
    lines = _lines(text)
    _, n, extra = _header(lines, "CIRC")
    if extra is not None:
        raise FormatError(1, "circuit header takes only n=")
    gates = []
    for no, line in lines:
        op, *args = line.split()
        try:
            if op in ("H", "S") and len(args) == 1:
                q = _int(args[0], no)
                gates.append(Gate.h(q) if op == "H" else Gate.s(q))
            elif op == "CNOT" and len(args) == 2:
                gates.append(Gate.cnot(_int(args[0], no), _int(args[1], no)))
            elif op == "ROT" and len(args) == 2:
                try:
                    angle = float(args[0])
                except ValueError:
                    raise FormatError(no, f"bad angle {args[0]!r}") from None
                axis = parse_pauli(args[1])
                if axis.n != n:
                    raise FormatError(no, f"axis {args[1]} has {axis.n} letters, expected {n}")
                gates.append(Gate.rot(axis, angle))
            else:
                raise FormatError(no, f"unrecognized gate line {line!r}")
            Circuit(n, (gates[-1],))
        except FormatError:
            raise
        except (PauliParseError, ValueError, IndexError) as exc:
            raise FormatError(no, str(exc)) from None
    return Circuit(n, tuple(gates))


def format_circuit(c: Circuit) -> str:
    out = [f"CIRC n={c.n}"]
    for g in c.gates:
        if g.kind is GateKind.ROT:
            out.append(f"ROT {g.angle!r} {g.axis}")
        else:
            out.append(" ".join([g.kind.value, *map(str, g.targets)]))
    return "\n".join(out) + "\n"


def _qubit_list(tok: str, n: int, no: int) -> QubitSet:
    try:
        return QubitSet(n, tuple(_int(s, no) for s in tok.split(",")))
    except (ValueError, IndexError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(no, str(exc)) from None


def parse_hamiltonian(text: str) -> LocalHamiltonian:
    lines = _lines(text)
    hno, n, norm = _header(lines, "HAM")
    terms = []
    for no, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(no, f"expected '<KIND> <argument>', got {line!r}")
        op, arg = parts
        try:
            if op == "PROJ":
                p = parse_pauli(arg)
                if p.n != n:
                    raise FormatError(no, f"{arg} has {p.n} letters, expected {n}")
                support = QubitSet(n, tuple(q for q in range(n) if (p.support >> q) & 1))
                terms.append(HamTerm(support, TermKind.PROJ, p))
            elif op in ("HADTYPE", "CONJHADTYPE"):
                terms.append(HamTerm(_qubit_list(arg, n, no), TermKind(op)))
            else:
                raise FormatError(no, f"unknown term kind {op!r}")
        except FormatError:
            raise
        except (PauliParseError, ValueError, IndexError) as exc:
            raise FormatError(no, str(exc)) from None
    if not terms:
        raise FormatError(hno, "Hamiltonian has no terms")
    normalization = None
    if norm is not None:
        try:
            normalization = Fraction(norm)
        except (ValueError, ZeroDivisionError):
            raise FormatError(hno, f"bad normalization {norm!r}") from None
        if normalization != Fraction(1, len(terms)):
            raise FormatError(hno, f"norm={norm} but there are {len(terms)} terms")
    return LocalHamiltonian(n, tuple(terms), normalization)


def format_hamiltonian(h: LocalHamiltonian) -> str:
    out = [f"HAM n={h.n} norm={h.normalization.numerator}/{h.normalization.denominator}"]
    for t in h.terms:
        if t.kind is TermKind.DENSE:
            raise ValueError("dense terms have no text form")
        out.append(t.describe())
    return "\n".join(out) + "\n"


def read_circuit(path) -> Circuit:
    with open(path) as f:
        return parse_circuit(f.read())


def read_hamiltonian(path) -> LocalHamiltonian:
    with open(path) as f:
        return parse_hamiltonian(f.read())
