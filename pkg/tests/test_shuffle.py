from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from zlab.magnus import GroupWord, epsilon, magnus_expand
from zlab.ncpoly import ModRing, pairing
from zlab.shuffle import (
    IntPoly,
    indec_dimension,
    infiltration,
    infiltration_poly,
    lyndon_span_check,
    relation_pairs,
    shuffle,
    shuffle_poly,
)
from zlab.words import necklace_count, words_of_length
from zlab.words import parse_word as W


def P(items, m=3):
    return IntPoly(m, {W(k): v for k, v in items.items()})


def riffle_oracle(u, v):
    """Enumerate the positions taken by u among |u|+|v| slots."""
    n = len(u) + len(v)
    out = {}
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        w = tuple(next(it_u) if k in pos else next(it_v) for k in range(n))
        out[w] = out.get(w, 0) + 1
    return out


def words(m=2, max_len=3):
    return st.lists(st.integers(0, m - 1), max_size=max_len).map(tuple)


class TestShuffle:
    def test_examples(self):
        assert shuffle(W("a"), W("b")) == P({"ab": 1, "ba": 1})
        assert shuffle(W("a"), W("a")) == P({"aa": 2})
        assert shuffle(W("ab"), W("c")) == P({"abc": 1, "acb": 1, "cab": 1})
        assert str(shuffle(W("ab"), W("c"))) == "abc + acb + cab"

    @given(words(3, 4), words(3, 4))
    def test_matches_riffles(self, u, v):
        assert shuffle(u, v).terms == riffle_oracle(u, v)
        assert sum(shuffle(u, v).terms.values()) == math.comb(len(u) + len(v), len(u))

    @given(words(), words(), words())
    def test_commutative_associative(self, u, v, w):
        assert shuffle(u, v) == shuffle(v, u)
        one = lambda x: IntPoly(2, {x: 1})
        assert shuffle_poly(shuffle(u, v), one(w)) == shuffle_poly(one(u), shuffle(v, w))

    def test_bound(self):
        with pytest.raises(ValueError):
            shuffle((0,) * 9, (1,) * 8)


class TestInfiltration:
    def test_examples(self):
        assert infiltration(W("a"), W("b")) == P({"ab": 1, "ba": 1})
        assert infiltration(W("a"), W("a")) == P({"aa": 2, "a": 1})
        assert infiltration(W("ab"), W("a")) == P({"aab": 2, "aba": 1, "ab": 1})

    @given(words(), words(), words())
    def test_commutative_associative(self, u, v, w):
        assert infiltration(u, v) == infiltration(v, u)
        one = lambda x: IntPoly(2, {x: 1})
        assert infiltration_poly(infiltration(u, v), one(w)) == infiltration_poly(one(u), infiltration(v, w))

    @given(words(2, 3), words(2, 3))
    def test_top_degree_is_shuffle(self, u, v):
        assert infiltration(u, v).degree_part(len(u) + len(v)) == shuffle(u, v)

    def test_cfl_identity_random(self):
        rng = random.Random(2024)
        for _ in range(200):
            p = rng.choice([2, 3, 5])
            ring = ModRing(p, rng.randint(1, 3))
            m = rng.randint(1, 3)
            sigma = GroupWord([(rng.randrange(m), rng.choice([1, -1]))
                               for _ in range(rng.randint(0, 12))])
            u = tuple(rng.randrange(m) for _ in range(rng.randint(1, 3)))
            v = tuple(rng.randint(0, m - 1) for _ in range(rng.randint(1, 3)))
            lam = magnus_expand(sigma, ring, len(u) + len(v), m)
            lhs = epsilon(sigma, u, ring) * epsilon(sigma, v, ring) % ring.modulus
            assert lhs == pairing(lam, infiltration(u, v))

    def test_map_count_convention_would_fail(self):
        # coefficient 2 on x would break the identity for sigma = x
        lam = magnus_expand(GroupWord([(0, 1)]), ModRing(5, 2), 2, 1)
        assert pairing(lam, P({"aa": 2, "a": 2}, m=1)) != 1
        assert pairing(lam, infiltration(W("a"), W("a"))) == 1


class TestQuotient:
    def test_examples(self):
        assert indec_dimension(2, 2, 3) == 1
        assert indec_dimension(2, 3, 5) == 2
        assert indec_dimension(2, 4, 5) == 3

    def test_span_examples(self):
        assert lyndon_span_check(2, 3, 5)
        assert lyndon_span_check(2, 4, 7)
        with pytest.raises(ValueError):
            lyndon_span_check(3, 2, 2)
        with pytest.raises(ValueError):
            lyndon_span_check(3, 3, 3)

    @pytest.mark.parametrize("m,n,p", [(2, 2, 3), (2, 3, 5), (3, 3, 5), (2, 5, 7), (3, 4, 5), (2, 6, 7)])
    def test_dimension_equals_necklaces_below_p(self, m, n, p):
        assert indec_dimension(m, n, p) == necklace_count(m, n)
        assert lyndon_span_check(m, n, p)

    def test_small_characteristic_is_larger(self):
        # mod 2, xx is no longer a product (x sh x = 2xx vanishes)
        assert indec_dimension(1, 2, 2) == 1
        assert indec_dimension(1, 2, 3) == 0

    def test_relation_pairs(self):
        pairs = relation_pairs(2, 3)
        assert all(u <= v and len(u) + len(v) == 3 and u and v for u, v in pairs)
        assert len(pairs) == 8

    def test_size_bound(self):
        with pytest.raises(ValueError):
            indec_dimension(9, 6, 7)

    def test_columns_cover_all_words(self):
        assert len(list(words_of_length(3, 4))) == 81
