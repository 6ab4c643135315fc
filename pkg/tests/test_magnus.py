from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from zlab.magnus import (
    GroupWord,
    GroupWordError,
    check_coefficient_bounds,
    commutator,
    epsilon,
    magnus_expand,
    parse_group_word,
    precision,
    rho,
    sigma_series,
    tau_group_word,
    tau_series,
    triangularity_violations,
)
from zlab.ncpoly import ModRing, NcSeries
from zlab.words import graded_key, lyndon_words
from zlab.words import parse_word as W

R4 = ModRing(2, 2)
R9 = ModRing(3, 2)


def group_words(m=3, max_len=8):
    factor = st.tuples(st.integers(0, m - 1), st.sampled_from([1, -1]))
    return st.lists(factor, max_size=max_len).map(GroupWord)


class TestGroupWords:
    def test_free_reduction(self):
        g = GroupWord([(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)])
        assert g.factors == ((2, 1),)
        assert (g * g.inverse()).factors == ()

    def test_parse(self):
        assert str(parse_group_word("a^-1 b a b^-1")) == "a^-1 b a b^-1"
        assert parse_group_word("comm(a,b)") == parse_group_word("a^-1 b^-1 a b")
        assert parse_group_word("") == parse_group_word("1") == GroupWord(())
        assert parse_group_word("(a b)^2") == parse_group_word("a b a b")
        assert parse_group_word("a^-2") == parse_group_word("a^-1*a^-1")

    @pytest.mark.parametrize("bad", ["z", "comm(a)", "a^", "(a b", "a^x"])
    def test_parse_errors(self, bad):
        with pytest.raises(GroupWordError):
            parse_group_word(bad)

    def test_tau_words(self):
        assert tau_group_word(W("a")) == GroupWord([(0, 1)])
        assert str(tau_group_word(W("ab"))) == "a^-1 b^-1 a b"
        t = tau_group_word(W("aab"))
        assert t == commutator(parse_group_word("a"), parse_group_word("comm(a,b)"))
        assert len(t.factors) == 8
        with pytest.raises(ValueError):
            tau_group_word(W("ba"))

    def test_power_cap(self):
        with pytest.raises(GroupWordError):
            parse_group_word("a") ** (10 ** 6)


class TestMagnus:
    def test_examples(self):
        assert magnus_expand(parse_group_word("a"), R4, 3) == NcSeries.from_words({"": 1, "a": 1}, R4, 1, 3)
        inv = magnus_expand(parse_group_word("a^-1"), R9, 2)
        assert inv == NcSeries.from_words({"": 1, "a": -1, "aa": 1}, R9, 1, 2)
        lam = magnus_expand(parse_group_word("comm(a,b)"), R4, 3)
        want = {"": 1, "ab": 1, "ba": -1, "aba": 1, "bab": -1, "aab": -1, "bba": 1}
        assert lam == NcSeries.from_words(want, R4, 2, 3)

    def test_epsilon_examples(self):
        assert epsilon(parse_group_word("a"), W("a"), R9) == 1
        assert epsilon(parse_group_word("comm(a,comm(a,b))"), W("abb"), R9) == 0
        assert R9.signed(epsilon(parse_group_word("comm(a,comm(b,c))"), W("acb"), R9)) == -1

    @given(group_words(), group_words())
    def test_homomorphism(self, g, h):
        lhs = magnus_expand(g * h, R9, 4, m=3)
        assert lhs == magnus_expand(g, R9, 4, m=3) * magnus_expand(h, R9, 4, m=3)

    @given(group_words())
    def test_constant_and_inverse(self, g):
        lam = magnus_expand(g, R4, 3, m=3)
        assert lam.constant() == 1
        assert lam * magnus_expand(g.inverse(), R4, 3, m=3) == NcSeries.one(R4, 3, 3)


class TestTau:
    def test_examples(self):
        assert tau_series(W("a"), R4, 3) == NcSeries.from_words({"": 1, "a": 1}, R4, 1, 3)
        assert tau_series(W("ab"), R4, 2) == NcSeries.from_words({"": 1, "ab": 1, "ba": -1}, R4, 2, 2)

    @pytest.mark.parametrize("ring", [R4, R9, ModRing(5, 2)])
    def test_agrees_with_group_word(self, ring):
        for w in lyndon_words(3, range(1, 5)):
            assert tau_series(w, ring, 5, m=3) == magnus_expand(tau_group_word(w), ring, 5, m=3)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("m", [2, 3])
    def test_triangularity(self, m, p):
        assert triangularity_violations(m, 5, ModRing(p, 2)) == []

    def test_triangularity_shape(self):
        w = W("aab")
        lam = tau_series(w, R9, 3, m=2)
        assert lam.terms[()] == 1 and lam.terms[w] == 1
        assert all(u in ((), w) or graded_key(u) > graded_key(w) for u in lam.terms)


class TestSigma:
    def test_examples(self):
        s = sigma_series(W("a"), 2, 3)
        assert s == NcSeries.from_words({"": 1, "a": 3, "aa": 3}, ModRing(3, 2), 1, 2)
        s3 = sigma_series(W("a"), 2, 3, trunc=3)
        assert s3.terms == {(): 1, (0,): 3, (0, 0): 3, (0, 0, 0): 1}
        assert sigma_series(W("ab"), 2, 5) == tau_series(W("ab"), ModRing(5, 2), 2)
        s8 = sigma_series(W("a"), 3, 2, trunc=4)
        assert s8.ring == ModRing(2, 3)
        assert s8.terms == {(): 1, (0,): 4, (0, 0): 6, (0, 0, 0): 4, (0, 0, 0, 0): 1}

    def test_precision(self):
        assert precision(3, 2) == 3 and precision(2, 3) == 2 and precision(8, 2) == 4

    def test_preconditions(self):
        with pytest.raises(ValueError):
            sigma_series(W("ba"), 3, 2)
        with pytest.raises(ValueError):
            sigma_series(W("aab"), 2, 2)


class TestRho:
    def test_examples(self):
        x = parse_group_word("a")
        assert rho(W("ab"), x, 2, 0).rows == ((1, 1, 0), (0, 1, 0), (0, 0, 1))
        g = parse_group_word("a^3 b")
        assert rho(W("a"), g, 5, 0).rows == ((1, 3), (0, 1))

    @given(group_words(m=2), group_words(m=2))
    def test_homomorphism(self, g, h):
        w = W("aba")
        assert rho(w, g * h, 3, 1) == rho(w, g, 3, 1) @ rho(w, h, 3, 1)


class TestCoefficientBounds:
    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 3), (2, 4), (5, 3)])
    def test_sigma_generators(self, p, n):
        from zlab.jumps import jump_set

        for w in lyndon_words(2, range(1, n + 1)):
            assert check_coefficient_bounds(_sigma_word(w, n, p), n, p)
        assert jump_set(n, p)

    def test_generator_fails(self):
        assert not check_coefficient_bounds(parse_group_word("a"), 2, 2)

    def test_random_members(self):
        rng = random.Random(7)
        n, p = 3, 2
        gens = [_sigma_word(w, n, p) for w in lyndon_words(2, range(1, n + 1))]
        for _ in range(20):
            a, b, c = (rng.choice(gens) for _ in range(3))
            conj = GroupWord([(rng.randrange(2), rng.choice([1, -1])) for _ in range(3)])
            assert check_coefficient_bounds(a * b * conj.inverse() * c * conj, n, p)


def _sigma_word(w, n, p):
    from zlab.jumps import j_exponent

    return tau_group_word(w) ** (p ** j_exponent(n, len(w), p))
