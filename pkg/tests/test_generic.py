import random

import pytest
from hypothesis import given, settings, strategies as st

from kummer.classify import standard_space
from kummer.cyclotomic import CycInt, rho_power
from kummer.generic import (
    TElement,
    degenerate,
    degenerate_full,
    distinct_top_basis,
    embed_in_T,
    ingen_check,
    leading_class,
    normalize_basis,
    reduce_to_D,
    t_mul,
    top,
)
from kummer.symbol_algebra import (
    AlgElement,
    CenterPoly,
    DependentBasis,
    ZeroElementError,
    is_kummer_space_trace,
    rank_over_K,
)
from kummer.zerosum import Vec2p, min_zero_sum

from families import random_sub_basis_candidate
from oracles import brute_is_kummer, qp_word_product

P = 5
X, Y = TElement.X(P), TElement.Y(P)
x, y = AlgElement.x(P), AlgElement.y(P)
ALPHA = AlgElement.central(CenterPoly.alpha(P))


def T(terms):
    return TElement(P, terms)


def mono(a, b, c=1):
    return AlgElement.monomial(P, a, b, c)


@st.composite
def t_elements(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        key = (draw(st.integers(0, 8)), draw(st.integers(0, 8)))
        terms[key] = CycInt(P, draw(st.lists(st.integers(-3, 3), min_size=P - 1, max_size=P - 1)))
    t = TElement(P, terms)
    return t if t else X


def random_sub_basis(rng, d, p=P):
    while True:
        basis = random_sub_basis_candidate(rng, d, p)
        if rank_over_K(basis) == d:
            return basis


class TestQuantumPlane:
    def test_y_x(self):
        assert t_mul(Y, X) == T({(1, 1): rho_power(P, 1)})

    def test_no_reduction_in_t(self):
        assert t_mul(TElement.monomial(P, 2, 0), TElement.monomial(P, 3, 0)) == TElement.monomial(P, 5, 0)

    def test_distributes(self):
        assert t_mul(X + Y, X) == T({(2, 0): 1, (1, 1): rho_power(P, 1)})

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            TElement.monomial(P, -1, 0)

    @settings(max_examples=60, deadline=None)
    @given(t_elements(), t_elements())
    def test_matches_word_oracle(self, s, t):
        expected = {}
        for (i1, j1), c1 in s.terms.items():
            for (i2, j2), c2 in t.terms.items():
                key, e = qp_word_product([(i1, j1), (i2, j2)], P)
                expected[key] = expected.get(key, CycInt.zero(P)) + c1 * c2 * rho_power(P, e)
        assert t_mul(s, t) == TElement(P, expected)


class TestTop:
    def test_lex(self):
        assert top(T({(2, 1): 1, (1, 3): 1})) == ((2, 1), CycInt.one(P))

    def test_scalar(self):
        assert top(X * rho_power(P, 1)) == ((1, 0), rho_power(P, 1))

    def test_zero(self):
        with pytest.raises(ZeroElementError):
            top(TElement(P))

    @settings(max_examples=80, deadline=None)
    @given(t_elements(), t_elements())
    def test_multiplicative(self, s, t):
        (ds, cs), (dt, ct) = top(s), top(t)
        d, c = top(t_mul(s, t))
        assert d == (ds[0] + dt[0], ds[1] + dt[1])
        assert c == cs * ct * rho_power(P, ds[1] * dt[0])


class TestEmbedding:
    def test_reduce_examples(self):
        assert reduce_to_D(TElement.monomial(P, 7, 2)) == mono(2, 2, CenterPoly.alpha(P))
        assert reduce_to_D(TElement.monomial(P, 5, 0)) == ALPHA
        assert reduce_to_D(T({(2, 1): 1, (1, 3): 1})) == mono(2, 1) + mono(1, 3)

    @settings(max_examples=60, deadline=None)
    @given(t_elements())
    def test_round_trip(self, t):
        assert embed_in_T(reduce_to_D(t)) == t

    @settings(max_examples=40, deadline=None)
    @given(t_elements(), t_elements())
    def test_embedding_is_multiplicative(self, s, t):
        assert reduce_to_D(t_mul(s, t)) == reduce_to_D(s) * reduce_to_D(t)


class TestNormalize:
    def test_one_step(self):
        out = normalize_basis([x, x + y])
        assert sorted(leading_class(v) for v in out) == [(0, 1), (1, 0)]
        assert y in out

    def test_dependent(self):
        with pytest.raises(DependentBasis):
            normalize_basis([x, ALPHA * x])

    def test_three_elements(self):
        out = normalize_basis([x, y, x * y + x])
        assert sorted(leading_class(v) for v in out) == [(0, 1), (1, 0), (1, 1)]

    def test_span_preserved(self):
        rng = random.Random(3)
        for d in (2, 3, 4):
            basis = random_sub_basis(rng, d)
            out = normalize_basis(basis)
            assert len({leading_class(v) for v in out}) == d
            assert rank_over_K(list(basis) + out) == d


class TestDegenerate:
    V1 = [x] + [mono(a, 1) for a in range(5)]

    def test_monomial_basis(self):
        assert degenerate(self.V1) == tuple(standard_space(P, (1, 0), 1).vectors)

    def test_after_normalization(self):
        assert degenerate([x, x + y]) == (Vec2p(0, 1), Vec2p(1, 0))

    def test_top_collision_is_realigned(self):
        full = degenerate_full([x + ALPHA * y, y])
        assert full.classes == (Vec2p(0, 1), Vec2p(1, 0))

    def test_realigned_basis_spans_and_separates(self):
        rng = random.Random(32)
        hits = 0
        for _ in range(12):
            basis = random_sub_basis(rng, rng.randint(2, 5))
            full = degenerate_full(basis)
            assert len(set(full.classes)) == len(basis)
            if full.realigned:
                hits += 1
                assert rank_over_K(list(basis) + full.basis) == len(basis)
        assert hits > 0

    def test_distinct_top_basis_direct(self):
        out = distinct_top_basis([x + ALPHA * y, y])
        classes = sorted(Vec2p(d[0] % P, d[1] % P) for d, _ in (top(embed_in_T(v)) for v in out))
        assert classes == [(0, 1), (1, 0)]

    def test_kummer_sub_bases_degenerate_to_kummer_sets(self):
        rng = random.Random(8)
        for _ in range(10):
            d = rng.randint(1, 6)
            cls = degenerate(random_sub_basis(rng, d))
            assert len(cls) == d <= P + 1
            assert brute_is_kummer(P, list(cls))

    def test_trace_checked_bases(self):
        rng = random.Random(5)
        for _ in range(3):
            basis = random_sub_basis(rng, 2)
            assert is_kummer_space_trace(basis)
            assert min_zero_sum(P, degenerate(basis)) is None


class TestIngen:
    def test_v1_basis(self):
        rep = ingen_check(TestDegenerate.V1)
        assert rep.dimension == 6 == rep.bound
        assert rep.degeneration_kummer and rep.bound_ok and not rep.defects
        assert rep.input_verdict.is_kummer

    def test_non_kummer_input(self):
        rep = ingen_check([x, y, mono(2, 2)])
        assert not rep.degeneration_kummer
        assert not rep.input_verdict.is_kummer
        assert rep.defects == []
        d = rep.to_dict()
        assert d["input_witness"] == [1, 1, 2]

    def test_small(self):
        rep = ingen_check([x, x + y])
        assert rep.dimension == 2 and rep.degeneration_kummer

    def test_empty(self):
        with pytest.raises(ValueError):
            ingen_check([])
