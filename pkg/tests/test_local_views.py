import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudostab.groups import PauliSubgroup, independent_generators
from pseudostab.hamiltonian import (
    build_magic_hamiltonian,
    build_stabilizer_hamiltonian,
    rotated_repetition_hamiltonian,
)
from pseudostab.local_views import (
    SUBGROUP_ASSUMPTION,
    QubitSet,
    WitnessKind,
    classify_types,
    count_pseudo_stabilizer_terms,
    dimension_bound_audit,
    find_type_witness,
    is_pseudo_stabilizer,
    local_view_group,
    project,
    satisfies_type,
    select_disjoint_terms,
)
from pseudostab.oracles import (
    group_elements,
    local_view_bruteforce,
    max_commuting_dim_bruteforce,
    type_elements_bruteforce,
)
from pseudostab.pauli import PauliWord, all_phaseless, parse_pauli
from pseudostab.statevec import extract_stabilizer_group, prepare_psi_t, random_circuit, simulate
from pseudostab.symplectic import F2Subspace, enumerate_lagrangians
from pseudostab.tableau import random_stabilizer_group

from strategies import seeds


def grp(*texts, stabilizer=False):
    return independent_generators([parse_pauli(t) for t in texts], stabilizer=stabilizer)


def zero_group(n):
    return grp(*["I" * q + "Z" + "I" * (n - q - 1) for q in range(n)], stabilizer=True)


def low_t_group(seed, n=None, t=None):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7)) if n is None else n
    t = int(rng.integers(0, 3)) if t is None else t
    return extract_stabilizer_group(simulate(random_circuit(n, n, t, rng)))


def random_set(n, rng):
    size = int(rng.integers(1, n + 1))
    return QubitSet(n, tuple(int(q) for q in rng.choice(n, size=size, replace=False)))


class TestProject:
    def test_example_words(self):
        a = QubitSet(4, (0, 1))
        assert str(project(parse_pauli("iIIXI"), a)) == "IIII"
        assert str(project(parse_pauli("-XIZX"), a)) == "XIII"
        assert str(project(parse_pauli("IXZY"), a)) == "IXII"
        assert str(project(parse_pauli("XXYI"), a)) == "XXII"

    def test_full_set(self):
        p = parse_pauli("-iXZY")
        assert project(p, QubitSet.full(3)) == p.phaseless()

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            QubitSet(3, (3,))

    def test_homomorphism_exhaustive(self):
        for n in (1, 2, 3):
            words = list(all_phaseless(n))
            for members in itertools.chain.from_iterable(itertools.combinations(range(n), r) for r in range(n + 1)):
                a = QubitSet(n, members)
                for p, q in itertools.product(words, repeat=2):
                    assert project(p * q, a) == (project(p, a) * project(q, a)).phaseless()


class TestLocalViewGroup:
    def test_trivial_on_a(self):
        assert local_view_group(grp("ZII", "IZI"), QubitSet(3, (2,))).dim == 0

    def test_zero_state(self):
        a = QubitSet(4, (1, 3))
        lv = local_view_group(zero_group(4), a)
        assert lv.dim == 2 and lv.is_commuting()
        assert {str(w) for w in lv.generators} == {"IZII", "IIIZ"}

    @given(seeds)
    def test_bruteforce(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        g = random_stabilizer_group(n, rng)
        a = random_set(n, rng)
        assert set(group_elements(local_view_group(g, a))) == local_view_bruteforce(g, a.members)


class TestPseudoStabilizer:
    def test_product_state(self):
        # stabilizer state on qubits 0,1 tensored with a magic state on qubit 2
        g = low_t_group(3, n=2, t=0)
        gens = [PauliWord(3, w.phase_exp, w.x, w.z) for w in g.generators]
        cert = is_pseudo_stabilizer(independent_generators(gens, n=3, stabilizer=True), QubitSet(3, (0, 1)))
        assert cert.holds and cert.local_dim == 2
        assert cert.assumption == SUBGROUP_ASSUMPTION

    def test_trivial_group(self):
        cert = is_pseudo_stabilizer(PauliSubgroup(3, ()), QubitSet(3, (0,)))
        assert not cert.holds and cert.local_dim == 0

    def test_bell_pair_split(self):
        # ZZ and XX: locally at {0} they anticommute, so only one survives
        cert = is_pseudo_stabilizer(grp("XX", "ZZ", stabilizer=True), QubitSet(2, (0,)))
        assert cert.holds and cert.local_dim == 1

    @given(seeds)
    def test_matches_bruteforce(self, seed):
        rng = np.random.default_rng(seed)
        g = low_t_group(seed)
        a = random_set(g.n, rng)
        cert = is_pseudo_stabilizer(g, a)
        lv = local_view_group(g, a)
        assert cert.local_dim == max_commuting_dim_bruteforce(lv)
        assert cert.holds == (cert.local_dim == len(a))
        views = cert.witness_local_views()
        assert len(views) == cert.local_dim <= len(a)
        assert independent_generators(views, n=g.n).dim == len(views)
        assert all(p * q == (q * p) or (p * q).phaseless() == (q * p).phaseless() for p in views for q in views)
        assert PauliSubgroup(g.n, tuple(v.phaseless() for v in views)).is_commuting()
        assert all(w in g for w in cert.witness_generators)

    @given(seeds)
    def test_single_qubit_criterion(self, seed):
        g = low_t_group(seed)
        for i in range(g.n):
            touched = any((w.support >> i) & 1 for w in g.generators)
            assert is_pseudo_stabilizer(g, QubitSet(g.n, (i,))).holds == touched


class TestTypeWitness:
    def test_y(self):
        w = find_type_witness(grp("Y"), QubitSet.full(1))
        assert w.kind is WitnessKind.TYPE_I and str(w.element) == "Y"

    def test_x(self):
        w = find_type_witness(grp("X"), QubitSet.full(1))
        assert w.kind is WitnessKind.TYPE_II and str(w.element) == "X"

    def test_all_x(self):
        k = grp("XII", "IXI", "IIX")
        w = find_type_witness(k, QubitSet.full(3))
        assert w.kind is WitnessKind.TYPE_II and str(w.element) == "XXX"
        _, type2 = type_elements_bruteforce(group_elements(k), range(3), 3)
        assert 0b111 in type2

    def test_even_refused(self):
        with pytest.raises(ValueError):
            find_type_witness(grp("XX", "ZZ"), QubitSet.full(2))

    def test_wrong_dimension_refused(self):
        with pytest.raises(ValueError):
            find_type_witness(grp("XII", "IXI"), QubitSet.full(3))

    def test_noncommuting_refused(self):
        with pytest.raises(ValueError):
            find_type_witness(grp("XII", "ZII", "IIX"), QubitSet.full(3))

    @pytest.mark.parametrize("k", [1, 3])
    def test_every_lagrangian(self, k):
        a = QubitSet.full(k)
        for lag in enumerate_lagrangians(k):
            g = PauliSubgroup(k, tuple(PauliWord(k, 0, r & ((1 << k) - 1), r >> k) for r in lag.rows))
            w = find_type_witness(g, a)
            assert satisfies_type(w.kind, w.local_view, a)
            assert w.element in g
            type1, type2 = type_elements_bruteforce(group_elements(g), range(k), k)
            bits = w.element.x | (w.element.z << k)
            assert bits in (type1 if w.kind is WitnessKind.TYPE_I else type2)

    def test_satisfies_type_definition(self):
        a = QubitSet.full(3)
        assert satisfies_type(WitnessKind.TYPE_I, parse_pauli("YII"), a)
        assert not satisfies_type(WitnessKind.TYPE_I, parse_pauli("YYI"), a)
        assert not satisfies_type(WitnessKind.TYPE_I, parse_pauli("YXI"), a)
        assert satisfies_type(WitnessKind.TYPE_II, parse_pauli("XYI"), a)
        assert not satisfies_type(WitnessKind.TYPE_II, parse_pauli("XZI"), a)


class TestClassify:
    @pytest.mark.parametrize(
        "gens,kind,local",
        [
            (("YI", "IZ"), WitnessKind.TYPE_I, "YI"),
            (("XZ", "ZX"), WitnessKind.TYPE_II, "XI"),
        ],
    )
    def test_lifted_one_qubit(self, gens, kind, local):
        g = grp(*gens, stabilizer=True)
        (w,) = classify_types(g, QubitSet(2, (0,)))
        assert w.kind is kind and str(w.local_view) == local
        assert w.element in g.quotient()

    def test_lifted_three_qubits(self):
        # stabilizer of |+++> on qubits 0..2 entangled with qubit 3 via CZ-like Z tails
        g = grp("XIIZ", "IXIZ", "IIXZ", "ZZZX", stabilizer=True)
        a = QubitSet(4, (0, 1, 2))
        (w,) = classify_types(g, a)
        assert satisfies_type(w.kind, w.local_view, a)
        assert w.element in g.quotient()
        assert project(w.element, a) == w.local_view

    def test_requires_pseudo_stabilizer(self):
        with pytest.raises(ValueError):
            classify_types(grp("ZZI", stabilizer=True), QubitSet.full(3))
        with pytest.raises(ValueError):
            classify_types(grp("ZZ", stabilizer=True), QubitSet.full(2))
        with pytest.raises(ValueError):
            classify_types(PauliSubgroup(1, ()), QubitSet(1, (0,)))

    @given(seeds)
    def test_random_lifts(self, seed):
        rng = np.random.default_rng(seed)
        g = low_t_group(seed)
        odd = [QubitSet(g.n, c) for r in (1, 3) for c in itertools.combinations(range(g.n), r)]
        a = odd[int(rng.integers(len(odd)))]
        if not is_pseudo_stabilizer(g, a).holds:
            return
        (w,) = classify_types(g, a)
        assert satisfies_type(w.kind, w.local_view, a) and w.element in g.quotient()


class TestDisjointTerms:
    def test_magic_all_terms(self):
        assert select_disjoint_terms(build_magic_hamiltonian(5)) == list(range(5))

    def test_repetition(self):
        h = rotated_repetition_hamiltonian(8)
        picked = select_disjoint_terms(h)
        masks = [h.terms[i].support.mask for i in picked]
        assert len(picked) >= h.m // 6
        assert all(not (a & b) for a, b in itertools.combinations(masks, 2))
        assert len(picked) == 2  # windows of 3 on 8 qubits: at most 2 disjoint

    def test_single_term(self):
        assert select_disjoint_terms(build_stabilizer_hamiltonian(["XXX"])) == [0]


class TestDimensionAudit:
    @given(seeds)
    def test_zero_state_equality(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 9))
        labels = rng.integers(0, n, size=n)
        cover = [QubitSet(n, tuple(np.nonzero(labels == b)[0].tolist())) for b in set(labels.tolist())]
        audit = dimension_bound_audit(zero_group(n), cover)
        assert audit.dim_g == audit.bound == n

    def test_trivial_group(self):
        audit = dimension_bound_audit(PauliSubgroup(3, ()), [QubitSet.full(3)])
        assert audit.dim_g == 0 and audit.holds

    def test_not_partition(self):
        with pytest.raises(ValueError):
            dimension_bound_audit(zero_group(3), [QubitSet(3, (0, 1)), QubitSet(3, (1, 2))])
        with pytest.raises(ValueError):
            dimension_bound_audit(zero_group(3), [QubitSet(3, (0, 1))])

    @given(seeds)
    def test_random_inequality(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 9))
        g = random_stabilizer_group(n, rng)
        labels = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
        cover = [QubitSet(n, tuple(np.nonzero(labels == b)[0].tolist())) for b in set(labels.tolist())]
        audit = dimension_bound_audit(g, cover)
        assert audit.dim_g <= audit.bound
        for a, c in zip(cover, audit.local_dims):
            assert c <= len(a)


class TestConditionCount:
    def test_clifford_magic(self):
        rep = count_pseudo_stabilizer_terms(zero_group(5), build_magic_hamiltonian(5), t=0)
        assert rep.count == rep.bound == 5

    @pytest.mark.parametrize("n,t", [(4, 1), (6, 2), (6, 6)])
    def test_psi_t(self, n, t):
        g = extract_stabilizer_group(prepare_psi_t(n, t))
        rep = count_pseudo_stabilizer_terms(g, build_magic_hamiltonian(n), t)
        assert rep.count >= n - t
        assert rep.count == n - t  # the D-rotated qubits have no stabilizer support

    @given(seeds, st.integers(0, 3))
    def test_repetition_random(self, seed, t):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(6, 9))
        g = extract_stabilizer_group(simulate(random_circuit(n, n, t, rng)))
        h = rotated_repetition_hamiltonian(n)
        rep = count_pseudo_stabilizer_terms(g, h, t)
        assert rep.count >= rep.disjoint_count - t
        assert rep.count >= rep.dim_bound >= rep.disjoint_count - t
        assert len(rep.blocks) == rep.disjoint_count + 1

    @given(seeds, st.integers(0, 4))
    def test_touched_qubits(self, seed, t):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 8))
        g = extract_stabilizer_group(simulate(random_circuit(n, n, t, rng)))
        touched = 0
        for w in g.generators:
            touched |= w.support
        assert touched.bit_count() >= n - t
