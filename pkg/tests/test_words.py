from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from zlab.words import (
    Bracket,
    WordError,
    bracketing,
    check_hall_conditions,
    check_word,
    compare_alp,
    compare_graded,
    duval_lyndon,
    format_word,
    is_lyndon,
    lyndon_hall_candidates,
    lyndon_words,
    minimal_lyndon_suffix,
    necklace_count,
    parse_bracket,
    parse_word,
    standard_factorization,
    words_of_length,
)

W = parse_word


def brute_lyndon(w):
    return len(w) > 0 and all(w < w[k:] for k in range(1, len(w)))


def brute_necklace(m, i):
    """Count aperiodic necklaces by canonical rotation."""
    seen = set()
    for w in itertools.product(range(m), repeat=i):
        rots = {w[k:] + w[:k] for k in range(i)}
        if len(rots) == i:
            seen.add(min(rots))
    return len(seen)


def words(m, max_len):
    return st.lists(st.integers(0, m - 1), max_size=max_len).map(tuple)


class TestOrders:
    def test_alphabetic_examples(self):
        assert compare_alp(W("ab"), W("b")) == -1
        assert compare_alp(W("ab"), W("abb")) == -1
        assert compare_alp(W("abc"), W("acb")) == -1

    def test_graded_examples(self):
        assert compare_graded(W("b"), W("ab")) == -1
        assert compare_graded(W("ab"), W("ba")) == -1
        assert compare_graded(W(""), W("a")) == -1

    @given(words(3, 6), words(3, 6), words(3, 6))
    def test_orders_are_total_and_transitive(self, a, b, c):
        for cmp in (compare_alp, compare_graded):
            assert cmp(a, b) == -cmp(b, a)
            assert (cmp(a, b) == 0) == (a == b)
            if cmp(a, b) <= 0 and cmp(b, c) <= 0:
                assert cmp(a, c) <= 0

    @given(words(3, 6), words(3, 6))
    def test_graded_refines_length(self, a, b):
        if len(a) < len(b):
            assert compare_graded(a, b) == -1


class TestLyndon:
    def test_examples(self):
        assert is_lyndon(W("ab"))
        assert not is_lyndon(W("aa"))
        assert is_lyndon(W("aab"))
        assert not is_lyndon(())

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_brute_force(self, m):
        for n in range(0, 9 if m < 3 else 7):
            for w in words_of_length(m, n):
                assert is_lyndon(w) == brute_lyndon(w)

    def test_lyndon_words_examples(self):
        assert [format_word(w) for w in lyndon_words(2, {1, 2, 3})] == ["a", "b", "ab", "aab", "abb"]
        assert lyndon_words(2, {2}) == [W("ab")]
        assert len(lyndon_words(3, {3})) == 8

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_counts_equal_necklaces(self, m):
        for i in range(1, 9):
            assert len(lyndon_words(m, [i])) == necklace_count(m, i)

    def test_duval_agrees_with_filter(self):
        for m in (2, 3):
            got = sorted(duval_lyndon(m, 6))
            want = sorted(w for n in range(1, 7) for w in words_of_length(m, n) if brute_lyndon(w))
            assert got == want

    def test_sorted_by_graded_order(self):
        ws = lyndon_words(3, range(1, 6))
        assert all(compare_graded(a, b) == -1 for a, b in zip(ws, ws[1:]))

    def test_length_bound(self):
        with pytest.raises(WordError):
            lyndon_words(2, [17])


class TestNecklace:
    def test_examples(self):
        assert necklace_count(5, 1) == 5
        assert necklace_count(2, 3) == 2
        assert necklace_count(2, 6) == 9

    @pytest.mark.parametrize("m,i", [(m, i) for m in (2, 3) for i in range(1, 8)])
    def test_against_rotation_oracle(self, m, i):
        assert necklace_count(m, i) == brute_necklace(m, i)


class TestFactorization:
    def test_examples(self):
        assert standard_factorization(W("ab")) == (W("a"), W("b"))
        assert standard_factorization(W("aab")) == (W("a"), W("ab"))
        assert standard_factorization(W("aabab")) == (W("aab"), W("ab"))

    def test_errors(self):
        with pytest.raises(WordError):
            standard_factorization(W("ba"))
        with pytest.raises(WordError):
            standard_factorization(W("a"))

    @pytest.mark.parametrize("m", [2, 3])
    def test_longest_suffix_is_minimal_factor(self, m):
        for w in lyndon_words(m, range(2, 9 if m == 2 else 7)):
            u, v = standard_factorization(w)
            assert u + v == w and is_lyndon(u) and is_lyndon(v)
            suffixes = [w[k:] for k in range(1, len(w)) if brute_lyndon(w[k:])]
            assert v == max(suffixes, key=len)
            assert v == minimal_lyndon_suffix(w)


class TestBrackets:
    def test_examples(self):
        assert bracketing(W("ab")) == Bracket(0, 1)
        assert bracketing(W("aab")) == Bracket(0, Bracket(0, 1))
        assert bracketing(W("abb")) == Bracket(Bracket(0, 1), 1)
        assert str(bracketing(W("abb"))) == "[[a,b],b]"

    def test_parse_roundtrip(self):
        for w in lyndon_words(3, range(1, 6)):
            b = bracketing(w)
            assert parse_bracket(str(b) if isinstance(b, Bracket) else format_word(w)) == b

    @pytest.mark.parametrize("text", ["[a,b", "[a b]", "[a,b]c", "[a,[b]]", "[,]"])
    def test_parse_errors(self, text):
        with pytest.raises(WordError):
            parse_bracket(text)

    def test_hall_examples(self):
        assert check_hall_conditions(lyndon_hall_candidates(2, 4), 4)
        assert check_hall_conditions([0, 1], 1)
        assert not check_hall_conditions([0, 1, Bracket(1, 0)], 2)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_lyndon_bracketings_are_hall(self, m):
        assert check_hall_conditions(lyndon_hall_candidates(m, 6), 6, m)

    def test_missing_bracket_detected(self):
        cands = lyndon_hall_candidates(2, 4)
        assert not check_hall_conditions([h for h in cands if h != bracketing(W("aab"))], 4)


class TestWordSyntax:
    def test_parse_format(self):
        assert parse_word("") == ()
        assert format_word(parse_word("abc")) == "abc"

    @pytest.mark.parametrize("bad", ["abz", "A", "a b"])
    def test_bad_letters(self, bad):
        with pytest.raises(WordError):
            parse_word(bad)

    def test_check_word_bounds(self):
        with pytest.raises(WordError):
            check_word((0,) * 17)
        with pytest.raises(WordError):
            check_word((2,), m=2)
