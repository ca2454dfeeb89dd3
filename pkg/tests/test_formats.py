import pytest
from hypothesis import given

from pseudostab.formats import (
    FormatError,
    format_circuit,
    format_hamiltonian,
    parse_circuit,
    parse_hamiltonian,
)
from pseudostab.hamiltonian import (
    TermKind,
    build_magic_hamiltonian,
    build_stabilizer_hamiltonian,
    rotate_css,
    rotated_repetition_hamiltonian,
)
from pseudostab.statevec import GateKind, random_circuit

from strategies import seeds


class TestCircuitFormat:
    def test_parse(self):
        c = parse_circuit("# demo\nCIRC n=3\nH 0\nS 1  # phase\nCNOT 0 2\n\nROT 0.5 -IYI\n")
        assert c.n == 3 and [g.kind for g in c.gates] == [GateKind.H, GateKind.S, GateKind.CNOT, GateKind.ROT]
        assert c.gates[2].targets == (0, 2)
        assert c.gates[3].angle == 0.5 and str(c.gates[3].axis) == "-IYI"
        assert c.rotation_count == 1

    @given(seeds)
    def test_round_trip(self, seed):
        c = random_circuit(4, 3, 2, seed)
        assert parse_circuit(format_circuit(c)) == c

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 1),
            ("HAM n=2\n", 1),
            ("CIRC n=2\nH 0\nT 1\n", 3),
            ("CIRC n=2\nCNOT 0\n", 2),
            ("CIRC n=2\nH 5\n", 2),
            ("CIRC n=2\nROT x XX\n", 2),
            ("CIRC n=2\nROT 0.1 XXX\n", 2),
            ("CIRC n=2\nROT 0.1 XQ\n", 2),
            ("CIRC n=2\nH a\n", 2),
        ],
    )
    def test_errors(self, text, line):
        with pytest.raises(FormatError) as exc:
            parse_circuit(text)
        assert exc.value.line == line
        assert f"line {line}" in str(exc.value)


class TestHamiltonianFormat:
    def test_parse(self):
        h = parse_hamiltonian("HAM n=3 norm=1/3\nHADTYPE 0\nCONJHADTYPE 1,2\nPROJ -ZZI\n")
        assert [t.kind for t in h.terms] == [TermKind.HADTYPE, TermKind.CONJHADTYPE, TermKind.PROJ]
        assert h.terms[1].support.members == (1, 2)
        assert str(h.terms[2].pauli) == "-ZZI"

    @pytest.mark.parametrize(
        "h",
        [
            build_magic_hamiltonian(4),
            rotated_repetition_hamiltonian(6),
            rotate_css(build_stabilizer_hamiltonian(["XXI", "IZZ"])),
            build_stabilizer_hamiltonian(["-ZZI", "IXX"]),
        ],
    )
    def test_round_trip(self, h):
        text = format_hamiltonian(h)
        back = parse_hamiltonian(text)
        assert format_hamiltonian(back) == text
        assert back.n == h.n and back.normalization == h.normalization

    def test_magic_detected(self):
        assert parse_hamiltonian(format_hamiltonian(build_magic_hamiltonian(3))).is_magic()

    @pytest.mark.parametrize(
        "text,line",
        [
            ("HAM n=2 norm=1/3\nHADTYPE 0\nHADTYPE 1\n", 1),
            ("HAM n=2\n", 1),
            ("HAM n=2\nFOO 0\n", 2),
            ("HAM n=2\nHADTYPE 0,0\n", 2),
            ("HAM n=2\nHADTYPE 0,7\n", 2),
            ("HAM n=2\nPROJ ZZZ\n", 2),
            ("HAM n=2\nPROJ iZZ\n", 2),
            ("HAM n=2 norm=x\nHADTYPE 0\n", 1),
        ],
    )
    def test_errors(self, text, line):
        with pytest.raises(FormatError) as exc:
            parse_hamiltonian(text)
        assert exc.value.line == line


def test_sample_files_parse_and_run():
    from pathlib import Path

    from pseudostab.formats import read_circuit, read_hamiltonian
    from pseudostab.harness import run_energy

    data = Path(__file__).resolve().parent.parent / "data"
    rep = run_energy(read_circuit(data / "bell_rot.circ"), read_hamiltonian(data / "magic2.ham"))
    assert rep.ok
    assert 0 <= rep.info["energy"] <= 1
