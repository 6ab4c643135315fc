"""Shuffle and infiltration products, and the indecomposable quotient of the shuffle algebra."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .kernels import rank_mod_p
from .ncpoly import format_terms
from .words import (
    MAX_WORD_LENGTH,
    check_alphabet,
    check_word,
    graded_key,
    lyndon_words,
    words_of_length,
)

MAX_QUOTIENT_SIZE = 10 ** 5


@dataclass(frozen=True, eq=False)
class IntPoly:
    """Integer combination of words; zero coefficients are dropped."""

    m: int
    terms: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(w): c for w, c in self.terms.items() if c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "IntPoly") -> "IntPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return IntPoly(max(self.m, other.m), out)

    def degree_part(self, d: int) -> "IntPoly":
        return IntPoly(self.m, {w: c for w, c in self.terms.items() if len(w) == d})

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))

    def __str__(self) -> str:
        return format_terms(self.sorted_terms())

    def __repr__(self) -> str:
        return f"IntPoly({self})"


def _check_pair(u, v) -> tuple[tuple, tuple]:
    u, v = check_word(u), check_word(v)
    if len(u) + len(v) > MAX_WORD_LENGTH:
        raise ValueError(f"|u| + |v| = {len(u) + len(v)} exceeds bound {MAX_WORD_LENGTH}")
    return u, v


def _alphabet(*words) -> int:
    return 1 + max((x for w in words for x in w), default=0)


@lru_cache(maxsize=65536)
def _shuffle(u: tuple, v: tuple) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = defaultdict(int)
    for w, c in _shuffle(u[1:], v).items():
        out[(u[0],) + w] += c
    for w, c in _shuffle(u, v[1:]).items():
        out[(v[0],) + w] += c
    return dict(out)


@lru_cache(maxsize=65536)
def _infiltration(u: tuple, v: tuple) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = defaultdict(int)
    for w, c in _infiltration(u[1:], v).items():
        out[(u[0],) + w] += c
    for w, c in _infiltration(u, v[1:]).items():
        out[(v[0],) + w] += c
    if u[0] == v[0]:
        for w, c in _infiltration(u[1:], v[1:]).items():
            out[(u[0],) + w] += c
    return dict(out)


def shuffle(u: Sequence[int], v: Sequence[int], m: int | None = None) -> IntPoly:
    """Sum over all riffle interleavings of ``u`` and ``v``."""
    u, v = _check_pair(u, v)
    return IntPoly(m or _alphabet(u, v), _shuffle(u, v))


def infiltration(u: Sequence[int], v: Sequence[int], m: int | None = None) -> IntPoly:
    """Infiltration product; like the shuffle but equal leading letters may also merge."""
    u, v = _check_pair(u, v)
    return IntPoly(m or _alphabet(u, v), _infiltration(u, v))


def shuffle_poly(f: IntPoly, g: IntPoly) -> IntPoly:
    """Bilinear extension of the shuffle product."""
    out: dict = defaultdict(int)
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            for w, c in _shuffle(u, v).items():
                out[w] += a * b * c
    return IntPoly(max(f.m, g.m), out)


def infiltration_poly(f: IntPoly, g: IntPoly) -> IntPoly:
    out: dict = defaultdict(int)
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            for w, c in _infiltration(u, v).items():
                out[w] += a * b * c
    return IntPoly(max(f.m, g.m), out)


def relation_pairs(m: int, n: int) -> list[tuple[tuple, tuple]]:
    """Pairs (u, v) of nonempty words, u <= v alphabetically, with |u| + |v| = n."""
    pairs = []
    for k in range(1, n):
        for u in words_of_length(m, k):
            for v in words_of_length(m, n - k):
                if u <= v:
                    pairs.append((u, v))
    return pairs


def _check_quotient(m: int, n: int) -> None:
    check_alphabet(m)
    if n < 1:
        raise ValueError("degree must be positive")
    if m ** n > MAX_QUOTIENT_SIZE:
        raise ValueError(f"m^n = {m ** n} exceeds {MAX_QUOTIENT_SIZE}")


def _relation_rows(m: int, n: int, p: int) -> tuple[list[tuple], list[list[int]]]:
    columns = list(words_of_length(m, n))
    position = {w: k for k, w in enumerate(columns)}
    rows = []
    for u, v in relation_pairs(m, n):
        row = [0] * len(columns)
        for w, c in _shuffle(u, v).items():
            row[position[w]] = c % p
        if any(row):
            rows.append(row)
    return columns, rows


def indec_dimension(m: int, n: int, p: int) -> int:
    """dim over F_p of degree-n words modulo products of nonempty words under the shuffle."""
    _check_quotient(m, n)
    columns, rows = _relation_rows(m, n, p)
    return len(columns) - rank_mod_p(rows, p) if rows else len(columns)


def lyndon_span_check(m: int, n: int, p: int) -> bool:
    """Do the Lyndon words of length n span the degree-n indecomposable quotient mod p?"""
    _check_quotient(m, n)
    if not 1 <= n < p:
        raise ValueError(f"need 1 <= n < p, got n={n}, p={p}")
    columns, rows = _relation_rows(m, n, p)
    position = {w: k for k, w in enumerate(columns)}
    unit_rows = []
    for w in lyndon_words(m, [n]):
        row = [0] * len(columns)
        row[position[w]] = 1
        unit_rows.append(row)
    return rank_mod_p(rows + unit_rows, p) == len(columns)
