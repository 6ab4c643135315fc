from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from zlab.ncpoly import (
    ZZ,
    ModRing,
    NcSeries,
    NotInvertible,
    RingMismatch,
    TruncationError,
    add,
    coefficient,
    invert,
    mul,
    pairing,
    power,
)
from zlab.shuffle import infiltration
from zlab.words import parse_word as W

R4 = ModRing(2, 2)
R9 = ModRing(3, 2)


def S(items, ring=R4, m=2, trunc=3):
    return NcSeries.from_words(items, ring, m, trunc)


@st.composite
def series(draw, ring=R9, m=2, trunc=4, unit=False):
    words = st.lists(st.integers(0, m - 1), min_size=1, max_size=trunc).map(tuple)
    terms = draw(st.dictionaries(words, st.integers(0, ring.modulus - 1), max_size=8))
    c0 = draw(st.integers(0, ring.modulus - 1))
    if unit and c0 % ring.p == 0:
        c0 += 1
    terms[()] = c0
    return NcSeries(ring, m, trunc, terms)


class TestRing:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModRing(4, 1)
        with pytest.raises(ValueError):
            ModRing(2, 64)
        assert ModRing(2, 63).modulus == 2 ** 63

    def test_signed(self):
        assert R9.signed(8) == -1 and R9.signed(4) == 4


class TestArithmetic:
    def test_add_examples(self):
        assert add(S({"": 1, "a": 1}), S({"": 1, "a": -1})) == S({"": 2})
        assert str(add(S({"a": 1}), S({"b": 1}))) == "a + b"
        f = S({"": 1, "a": 1}, trunc=2) + S({"aa": 1}, trunc=1)
        assert f == S({"": 1, "a": 1}, trunc=1)

    def test_mul_examples(self):
        assert mul(S({"": 1, "a": 1}), S({"": 1, "b": 1})) == S({"": 1, "a": 1, "b": 1, "ab": 1})
        x, y = S({"a": 1}), S({"b": 1})
        assert x * y != y * x
        assert S({"": 1, "a": 1}, trunc=2) * S({"": 1, "a": -1, "aa": 1}, trunc=2) == S({"": 1}, trunc=2)

    def test_invert_examples(self):
        assert invert(S({"": 1, "a": 1}, trunc=2)) == S({"": 1, "a": -1, "aa": 1}, trunc=2)
        assert invert(S({"": 1})) == S({"": 1})
        g = invert(S({"": 2, "a": 1}, ring=R9, trunc=1))
        assert g.terms == {(): 5, (0,): 2}

    def test_invert_non_unit(self):
        with pytest.raises(NotInvertible):
            invert(S({"": 2, "a": 1}))

    def test_power_examples(self):
        one_x = S({"": 1, "a": 1}, trunc=2)
        assert power(one_x, 2) == S({"": 1, "a": 2, "aa": 1}, trunc=2)
        assert power(one_x, 4) == S({"": 1, "aa": 2}, trunc=2)
        assert power(S({"a": 3}), 0) == S({"": 1})

    def test_mismatch(self):
        with pytest.raises(RingMismatch):
            S({"a": 1}) + S({"a": 1}, ring=R9)
        with pytest.raises(RingMismatch):
            S({"a": 1}) * S({"a": 1}, m=3)

    @given(series(), series(), series())
    def test_ring_axioms(self, f, g, h):
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h

    @given(series(unit=True))
    def test_inverse(self, f):
        one = NcSeries.one(f.ring, f.m, f.trunc)
        assert f * invert(f) == one and invert(f) * f == one

    @given(series(), st.integers(0, 7), st.integers(0, 7))
    def test_power_law(self, f, a, b):
        assert power(f, a + b) == power(f, a) * power(f, b)

    @given(series(), series())
    def test_no_zero_coefficients(self, f, g):
        for h in (f + g, f - g, f * g, f.scale(3)):
            assert all(c != 0 for c in h.terms.values())
            assert all(len(w) <= h.trunc for w in h.terms)


class TestCoefficients:
    def test_coefficient(self):
        f = S({"": 1, "a": 1}, trunc=1)
        assert coefficient(f, W("a")) == 1
        assert coefficient(f, W("b")) == 0
        with pytest.raises(TruncationError):
            coefficient(f, W("aa"))

    def test_pairing_examples(self):
        assert pairing(S({"": 1, "ab": 2}), S({"ab": 1})) == 2
        assert pairing(S({"": 1, "ab": 2}), S({})) == 0
        lam = S({"": 1, "a": 1}, ring=R9, m=1, trunc=2)
        assert pairing(lam, infiltration(W("a"), W("a"))) == 1

    def test_pairing_truncation(self):
        with pytest.raises(TruncationError):
            pairing(S({"a": 1}, trunc=1), S({"aa": 1}))


class TestSerialization:
    def test_json_roundtrip_and_order(self):
        f = S({"": 1, "ba": 3, "b": 1, "ab": 2, "aab": 1}, ring=R9)
        data = f.to_dict()
        assert [t["word"] for t in data["terms"]] == ["", "b", "ab", "ba", "aab"]
        assert (data["p"], data["K"], data["trunc"]) == (3, 2, 3)
        assert NcSeries.from_json(f.to_json()) == f

    def test_integer_ring(self):
        f = NcSeries.from_words({"a": -5, "ab": 7}, ZZ, 2, 2)
        assert NcSeries.from_json(f.to_json()) == f
        assert str(f) == "-5a + 7ab"
