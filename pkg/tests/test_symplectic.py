import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudostab.oracles import all_subspaces, isotropic_subspaces, lagrangian_count_bruteforce, max_isotropic_dim
from pseudostab.pauli import parse_pauli, to_pauli_vector
from pseudostab.symplectic import (
    F2Subspace,
    SymplecticVector,
    enumerate_lagrangians,
    extend_to_lagrangian,
    format_matrix,
    intersect,
    is_isotropic,
    is_lagrangian,
    is_lagrangian_in,
    lagrangian_count,
    load_subspace,
    maximal_isotropic,
    omega_bits,
    orthogonal_complement,
    parse_matrix,
    radical,
    radical_decomposition,
    rref,
    subspace_sum,
    symplectic_product,
)


def vec(word: str) -> int:
    return to_pauli_vector(parse_pauli(word)).bits


def elements(w: F2Subspace) -> set[int]:
    return set(w.elements())


@st.composite
def subspaces(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    d = 2 * n
    vs = draw(st.lists(st.integers(0, (1 << d) - 1), max_size=d + 1))
    return F2Subspace.span(d, vs)


@st.composite
def subspace_pairs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    d = 2 * n
    a = draw(st.lists(st.integers(0, (1 << d) - 1), max_size=d))
    b = draw(st.lists(st.integers(0, (1 << d) - 1), max_size=d))
    return F2Subspace.span(d, a), F2Subspace.span(d, b)


class TestProduct:
    def test_x_z(self):
        assert symplectic_product(SymplecticVector(2, vec("X")), SymplecticVector(2, vec("Z"))) == 1

    def test_xx_zz(self):
        assert omega_bits(vec("XX"), vec("ZZ"), 2) == 0

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << 2 * n) - 1))))
    def test_alternating(self, nv):
        n, v = nv
        assert omega_bits(v, v, n) == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            symplectic_product(SymplecticVector(2, 1), SymplecticVector(4, 1))


class TestRref:
    def test_two_rows(self):
        w = rref([SymplecticVector.from_list([1, 1]), SymplecticVector.from_list([0, 1])])
        assert w.dim == 2
        assert [b.to_list() for b in w.basis] == [[1, 0], [0, 1]]

    def test_duplicate(self):
        v = SymplecticVector.from_list([1, 0, 1, 1])
        w = rref([v, v])
        assert w.dim == 1 and w.basis[0] == v

    def test_empty(self):
        assert rref([], 4).dim == 0

    @given(subspaces())
    def test_canonical(self, w):
        # any spanning set of the same elements gives identical rows
        shuffled = list(w.elements())[::-1]
        assert F2Subspace.span(w.ambient_dim, shuffled) == w

    def test_rejects_non_reduced(self):
        with pytest.raises(ValueError):
            F2Subspace(2, (0b11, 0b10))


class TestSumIntersect:
    @given(subspace_pairs())
    def test_against_elements(self, ab):
        a, b = ab
        s, i = subspace_sum(a, b), intersect(a, b)
        assert elements(i) == elements(a) & elements(b)
        assert elements(s) == {x ^ y for x in elements(a) for y in elements(b)}
        assert a.dim + b.dim == s.dim + i.dim

    def test_trivial(self):
        w = F2Subspace.span(4, [vec("XZ"), vec("YI")])
        assert subspace_sum(w, F2Subspace.zero(4)) == w
        assert intersect(w, F2Subspace.full(4)) == w

    def test_disjoint_lines(self):
        assert intersect(F2Subspace.span(2, [1]), F2Subspace.span(2, [2])).dim == 0

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            intersect(F2Subspace.zero(2), F2Subspace.zero(4))


class TestComplement:
    def test_zero(self):
        assert orthogonal_complement(F2Subspace.zero(4)) == F2Subspace.full(4)

    def test_self_dual_line(self):
        w = F2Subspace.span(2, [vec("X")])
        assert orthogonal_complement(w) == w

    @given(subspaces())
    def test_dimension_and_involution(self, w):
        perp = orthogonal_complement(w)
        assert w.dim + perp.dim == w.ambient_dim
        assert orthogonal_complement(perp) == w

    @given(subspaces(max_n=4))
    def test_against_elements(self, w):
        n = w.n
        brute = {v for v in range(1 << (2 * n)) if all(omega_bits(v, u, n) == 0 for u in w.rows)}
        assert elements(orthogonal_complement(w)) == brute

    @given(subspace_pairs())
    def test_perp_of_sum(self, ab):
        a, b = ab
        assert orthogonal_complement(subspace_sum(a, b)) == intersect(orthogonal_complement(a), orthogonal_complement(b))

    @given(subspace_pairs())
    def test_order_reversing(self, ab):
        a, b = ab
        s = subspace_sum(a, b)
        assert orthogonal_complement(s).issubspace(orthogonal_complement(a))


class TestRadicalIsotropic:
    def test_isotropic_radical(self):
        w = F2Subspace.span(4, [vec("XX"), vec("ZZ")])
        assert is_isotropic(w) and radical(w) == w

    def test_full_space(self):
        assert radical(F2Subspace.full(6)).dim == 0

    @given(subspaces(max_n=4))
    def test_radical_elements(self, w):
        n = w.n
        els = elements(w)
        brute = {v for v in els if all(omega_bits(v, u, n) == 0 for u in els)}
        assert elements(radical(w)) == brute

    def test_all_x_lagrangian(self):
        for n in (1, 2, 3):
            w = F2Subspace.span(2 * n, [1 << q for q in range(n)])
            assert is_lagrangian(w)

    def test_zero_not_lagrangian(self):
        assert is_isotropic(F2Subspace.zero(2)) and not is_lagrangian(F2Subspace.zero(2))

    def test_anticommuting_pair_not_isotropic(self):
        assert not is_isotropic(F2Subspace.span(2, [vec("X"), vec("Z")]))


class TestDecomposition:
    def test_isotropic(self):
        w = F2Subspace.span(4, [vec("ZI"), vec("IZ")])
        rad, s = radical_decomposition(w)
        assert rad == w and s.dim == 0

    def test_full(self):
        rad, s = radical_decomposition(F2Subspace.full(4))
        assert rad.dim == 0 and s == F2Subspace.full(4)

    @given(subspaces(max_n=4))
    def test_direct_sum_and_nondegenerate(self, w):
        rad, s = radical_decomposition(w)
        assert rad == radical(w)
        assert rad.dim + s.dim == w.dim
        assert subspace_sum(rad, s) == w
        # no nonzero element of s is orthogonal to all of s
        n = w.n
        se = elements(s)
        for v in se - {0}:
            assert any(omega_bits(v, u, n) for u in se)

    @given(subspaces(max_n=3))
    def test_maximal_isotropic_matches_search(self, w):
        iso = maximal_isotropic(w)
        assert is_isotropic(iso) and iso.issubspace(w)
        assert iso.dim == (w.dim + radical(w).dim) // 2 == max_isotropic_dim(elements(w), w.n)
        assert is_lagrangian_in(iso, w)


class TestLagrangians:
    def test_extend_fixed_point(self):
        w = F2Subspace.span(4, [vec("XX"), vec("ZZ")])
        assert extend_to_lagrangian(w) == w

    def test_extend_zero(self):
        lag = extend_to_lagrangian(F2Subspace.zero(2))
        assert is_lagrangian(lag) and orthogonal_complement(lag) == lag

    def test_extend_line(self):
        line = F2Subspace.span(4, [vec("ZI")])
        lag = extend_to_lagrangian(line)
        assert line.issubspace(lag) and lag.dim == 2 and orthogonal_complement(lag) == lag

    def test_extend_rejects(self):
        with pytest.raises(ValueError):
            extend_to_lagrangian(F2Subspace.span(2, [vec("X"), vec("Z")]))

    @given(subspaces(max_n=5))
    def test_extend_random(self, w):
        iso = maximal_isotropic(w)
        lag = extend_to_lagrangian(iso)
        assert iso.issubspace(lag) and is_lagrangian(lag) and lag.dim == w.n

    def test_one_qubit_lines(self):
        lags = list(enumerate_lagrangians(1))
        assert {frozenset(elements(l)) for l in lags} == {
            frozenset({0, vec("X")}), frozenset({0, vec("Y")}), frozenset({0, vec("Z")})
        }

    @pytest.mark.parametrize("n,count", [(1, 3), (2, 15), (3, 135)])
    def test_counts(self, n, count):
        lags = list(enumerate_lagrangians(n))
        assert len(lags) == count == lagrangian_count(n) == lagrangian_count_bruteforce(n)
        assert len(set(lags)) == count
        assert all(is_lagrangian(l) for l in lags)

    def test_refusal_names_size(self):
        with pytest.raises(ValueError, match="75735"):
            list(enumerate_lagrangians(5))

    def test_isotropic_dim_bound_exhaustive(self):
        for n in (1, 2):
            for s in isotropic_subspaces(n):
                dim = len(s).bit_length() - 1
                assert dim <= n
                assert (dim == n) == is_lagrangian(F2Subspace.span(2 * n, s))


class TestMatrixFormat:
    def test_round_trip(self):
        w = F2Subspace.span(4, [vec("XZ"), vec("YI")])
        assert load_subspace(str(w)) == w

    def test_row_layout(self):
        # a_0 a_1 | b_0 b_1
        assert format_matrix([vec("XZ")], 4).strip() == "1001"

    def test_blank_line_terminates(self):
        assert parse_matrix("10\n01\n\n11\n") == [[1, 0], [0, 1]]

    def test_errors_have_line_numbers(self):
        with pytest.raises(ValueError, match="line 2"):
            parse_matrix("10\n1x\n")

    def test_all_subspace_count(self):
        # Gaussian binomials: 1 + 15 + 35 + 15 + 1
        assert len(all_subspaces(4)) == 67
