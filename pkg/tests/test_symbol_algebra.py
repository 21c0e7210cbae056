import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kummer.cyclotomic import CycInt, rho_power
from kummer.symbol_algebra import (
    AlgElement,
    CenterPoly,
    DependentBasis,
    ZeroElementError,
    bareiss_rank,
    first_dependent_index,
    is_kummer_element,
    is_kummer_space_power,
    is_kummer_space_trace,
    monomial_spanning_set,
    monomial_sym_coeff,
    mul,
    rank_over_K,
    sym_product,
    trace,
    tuples_of_weight,
)

from oracles import (
    cyc_value,
    element_matrix,
    mat_close,
    mat_mul,
    mat_trace,
    monomial_sym_coeff_oracle,
    multinomial,
    sym_product_matrix,
)

P = 5


def mono(a, b, c=1, p=P):
    return AlgElement.monomial(p, a, b, c)


def alpha(p=P):
    return CenterPoly.alpha(p)


def beta(p=P):
    return CenterPoly.beta(p)


x, y, one = mono(1, 0), mono(0, 1), AlgElement.one(P)

# generic-looking evaluation points for the matrix oracle
A_VAL = 1.05 * complex(0.8, 0.6)
B_VAL = 0.97 * complex(0.28, 0.96)


@st.composite
def center_polys(draw, p=P, max_terms=2, max_deg=1, bound=3):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        s = draw(st.integers(0, max_deg))
        t = draw(st.integers(0, max_deg))
        terms[(s, t)] = CycInt(p, draw(st.lists(st.integers(-bound, bound), min_size=p - 1, max_size=p - 1)))
    return CenterPoly(p, terms)


@st.composite
def elements(draw, p=P, max_terms=3):
    n = draw(st.integers(1, max_terms))
    e = AlgElement.zero(p)
    for _ in range(n):
        a = draw(st.integers(0, p - 1))
        b = draw(st.integers(0, p - 1))
        e = e + AlgElement(p, {(a, b): draw(center_polys(p))})
    return e


def matrix(e):
    return element_matrix(e, A_VAL, B_VAL)


class TestMultiplication:
    def test_y_times_x(self):
        assert y * x == mono(1, 1, rho_power(P, 1))

    def test_x_power_carries_into_alpha(self):
        assert mono(4, 0) * x == AlgElement.central(alpha())
        assert x ** 5 == AlgElement.central(alpha())

    def test_xy_squared(self):
        assert (x * y) * (x * y) == mono(2, 2, rho_power(P, 1))

    def test_monomial_constructor_carries(self):
        assert mono(7, 11) == AlgElement(P, {(2, 1): CenterPoly.monomial(P, 1, 2)})

    def test_mul_function_matches_operator(self):
        assert mul(x + y, y) == (x + y) * y

    def test_zero_is_absorbing(self):
        assert (x * AlgElement.zero(P)).is_zero()

    def test_display(self):
        assert "x" in str(x + y) and "y" in str(x + y)

    @settings(max_examples=40, deadline=None)
    @given(elements(), elements())
    def test_matches_matrix_representation(self, a, b):
        assert mat_close(matrix(a * b), mat_mul(matrix(a), matrix(b)))

    @settings(max_examples=40, deadline=None)
    @given(elements(), elements(), elements())
    def test_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @pytest.mark.parametrize("i,j", [(1, 1), (2, 3), (4, 4), (6, 2)])
    def test_rho_commutation(self, i, j):
        assert mono(0, j) * mono(i, 0) == mono(i, 0) * mono(0, j) * AlgElement.central(
            CenterPoly.const(P, rho_power(P, i * j))
        )


class TestTrace:
    def test_examples(self):
        assert trace(x).is_zero()
        assert trace(one) == CenterPoly.const(P, 5)
        assert trace(x ** 5) == CenterPoly.alpha(P).scale(5)

    @settings(max_examples=40, deadline=None)
    @given(elements(), elements())
    def test_symmetric(self, a, b):
        assert trace(a * b) == trace(b * a)

    @settings(max_examples=40, deadline=None)
    @given(elements(), center_polys())
    def test_k_linear(self, a, c):
        assert trace(a * AlgElement.central(c)) == trace(a) * c

    @settings(max_examples=40, deadline=None)
    @given(elements())
    def test_matches_matrix_trace(self, a):
        t = trace(a)
        value = 0j
        for (s, tt), c in t.terms.items():
            value += cyc_value(c.coords, P) * (A_VAL ** P) ** s * (B_VAL ** P) ** tt
        assert abs(value - mat_trace(matrix(a))) <= 1e-6 * (1 + abs(value))


class TestSymmetricProduct:
    def test_two_letters(self):
        assert sym_product([x, y], (1, 1)) == mono(1, 1, CycInt(P, [1, 1, 0, 0]))

    def test_three_letters(self):
        assert sym_product([x, y], (1, 2)) == mono(1, 2, CycInt(P, [1, 1, 1, 0]))

    def test_single_element(self):
        v = x + mono(2, 3)
        assert sym_product([v], (3,)) == v ** 3

    def test_geometric_sum_vanishes(self):
        assert sym_product([x, y], (4, 1)).is_zero()

    def test_empty_tuple_is_one(self):
        assert sym_product([x, y], (0, 0)) == one

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            sym_product([x, y], (1,))
        with pytest.raises(ValueError):
            sym_product([x, y], (1, -1))

    def test_tuples_of_weight_lex_order(self):
        assert list(tuples_of_weight(2, 2)) == [(0, 2), (1, 1), (2, 0)]
        assert len(list(tuples_of_weight(3, 4))) == 15

    @settings(max_examples=15, deadline=None)
    @given(elements(max_terms=2), elements(max_terms=2), st.integers(1, 5))
    def test_binomial_expansion(self, v1, v2, n):
        total = AlgElement.zero(P)
        for i in range(n + 1):
            total = total + sym_product([v1, v2], (i, n - i))
        assert total == (v1 + v2) ** n

    @settings(max_examples=15, deadline=None)
    @given(st.lists(elements(max_terms=2), min_size=1, max_size=3), st.data())
    def test_matches_sum_over_arrangements(self, vs, data):
        mults = data.draw(st.lists(st.integers(0, 2), min_size=len(vs), max_size=len(vs)))
        lhs = matrix(sym_product(vs, mults))
        rhs = sym_product_matrix([matrix(v) for v in vs], mults)
        assert mat_close(lhs, rhs)


class TestMonomialSymCoeff:
    def test_examples(self):
        assert monomial_sym_coeff(P, [(1, 0), (0, 1)], (1, 1)) == CycInt(P, [1, 1, 0, 0])
        c = monomial_sym_coeff(P, [(1, 0), (0, 1)], (1, 2))
        assert c == CycInt(P, [1, 1, 1, 0]) and c.residue() == 3
        assert monomial_sym_coeff(P, [(2, 3)], (4,)) == 1

    def test_weight_cap(self):
        with pytest.raises(ValueError):
            monomial_sym_coeff(P, [(1, 0)], (6,))

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([3, 5, 7]), st.data())
    def test_matches_word_oracle(self, p, data):
        t = data.draw(st.integers(1, 3))
        monos = [tuple(data.draw(st.tuples(st.integers(0, p - 1), st.integers(0, p - 1)))) for _ in range(t)]
        mults = data.draw(st.lists(st.integers(0, p), min_size=t, max_size=t).filter(lambda m: 0 < sum(m) <= p))
        assert monomial_sym_coeff(p, monos, mults).coords == monomial_sym_coeff_oracle(monos, mults, p)

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_consistent_with_sym_product(self, data):
        t = data.draw(st.integers(1, 3))
        monos = [tuple(data.draw(st.tuples(st.integers(0, 4), st.integers(0, 4)))) for _ in range(t)]
        mults = data.draw(st.lists(st.integers(0, 3), min_size=t, max_size=t).filter(lambda m: sum(m) <= P))
        els = [mono(a, b) for a, b in monos]
        ordered = one
        for e, m in zip(els, mults):
            ordered = ordered * e ** m
        c = monomial_sym_coeff(P, monos, mults)
        assert sym_product(els, mults) == ordered * AlgElement.central(CenterPoly.const(P, c))

    @pytest.mark.parametrize("p", [5, 7])
    def test_residue_is_multinomial(self, p):
        rng = random.Random(p)
        for _ in range(100):
            t = rng.randint(1, 4)
            monos = [(rng.randrange(p), rng.randrange(p)) for _ in range(t)]
            mults = [0] * t
            for _ in range(rng.randint(1, p - 1)):
                mults[rng.randrange(t)] += 1
            c = monomial_sym_coeff(p, monos, mults)
            assert c.residue() == multinomial(mults) % p != 0


class TestKummerElement:
    def test_x(self):
        assert is_kummer_element(x)

    def test_one(self):
        assert not is_kummer_element(one)

    def test_x_plus_y(self):
        assert is_kummer_element(x + y)
        assert (x + y) ** 5 == AlgElement.central(alpha() + beta())

    def test_zero_rejected(self):
        with pytest.raises(ZeroElementError):
            is_kummer_element(AlgElement.zero(P))


V1_BASIS = [x] + [mono(a, 1) for a in range(5)]


class TestKummerSpaces:
    def test_x_y(self):
        assert is_kummer_space_trace([x, y])
        assert is_kummer_space_power([x, y])

    def test_x_alone(self):
        assert is_kummer_space_power([x])

    def test_x_and_x_squared(self):
        v = is_kummer_space_trace([x, mono(2, 0)])
        assert not v and v.witness == (1, 2)

    def test_x_y_x2y2(self):
        basis = [x, y, mono(2, 2)]
        t = is_kummer_space_trace(basis)
        pw = is_kummer_space_power(basis)
        assert not t and t.witness == (1, 1, 2)
        assert not pw and pw.witness == (1, 1, 3)

    def test_standard_space_basis(self):
        assert is_kummer_space_trace(V1_BASIS)
        assert is_kummer_space_power(V1_BASIS)

    def test_dependent_basis_rejected(self):
        with pytest.raises(DependentBasis) as err:
            is_kummer_space_trace([x, y, x + y])
        assert err.value.index == 2

    def test_zero_rejected(self):
        with pytest.raises(ZeroElementError):
            is_kummer_space_trace([x, AlgElement.zero(P)])

    def test_monomial_triples_agree_with_brute_force(self):
        from oracles import brute_is_kummer

        for a, b in itertools.product(range(P), repeat=2):
            if (a, b) in ((0, 0), (1, 0), (0, 1)):
                continue
            basis = [x, y, mono(a, b)]
            t, pw = is_kummer_space_trace(basis), is_kummer_space_power(basis)
            assert t.is_kummer == pw.is_kummer == brute_is_kummer(P, [(1, 0), (0, 1), (a, b)])

    @settings(max_examples=12, deadline=None)
    @given(st.sampled_from([3, 5]), st.data())
    def test_criteria_agree_on_small_bases(self, p, data):
        basis = []
        for _ in range(data.draw(st.integers(1, 2))):
            basis.append(data.draw(elements(p=p, max_terms=2)))
        if rank_over_K(basis) < len(basis):
            return
        assert is_kummer_space_trace(basis).is_kummer == is_kummer_space_power(basis).is_kummer


class TestRank:
    def test_examples(self):
        assert rank_over_K([x, y]) == 2
        assert rank_over_K([x, AlgElement.central(alpha()) * x]) == 1
        assert rank_over_K([x + y, x - y, x]) == 2

    def test_empty(self):
        assert rank_over_K([]) == 0

    def test_first_dependent_index(self):
        assert first_dependent_index([x, y]) is None
        assert first_dependent_index([x, y, x + mono(0, 1, alpha())]) == 2
        assert first_dependent_index([x, y, x * y]) is None
        assert first_dependent_index([x, y, x * AlgElement.central(alpha() + 1) - y]) == 2

    def test_bareiss_on_integer_matrix(self):
        c = lambda n: CenterPoly.const(P, n)
        m = [[c(2), c(4), c(6)], [c(1), c(2), c(3)], [c(0), c(1), c(5)]]
        assert bareiss_rank(m, x.ctx) == 2

    @settings(max_examples=20, deadline=None)
    @given(st.lists(elements(max_terms=2), min_size=1, max_size=3), center_polys())
    def test_rank_invariant_under_combination(self, rows, c):
        extra = rows[0] * AlgElement.central(c)
        for r in rows[1:]:
            extra = extra + r
        assert rank_over_K(rows + [extra]) == rank_over_K(rows)


class TestSpanningSet:
    def test_examples(self):
        assert monomial_spanning_set([x, y]) == [(0, 1), (1, 0)]
        assert monomial_spanning_set([x + y]) is None
        assert monomial_spanning_set([x + y, x - y]) == [(0, 1), (1, 0)]
