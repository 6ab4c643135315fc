"""Free-group words, the Magnus map x -> 1 + x, and the commutators tau_w, sigma_w."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .jumps import j_exponent
from .ncpoly import ModRing, NcSeries, coefficient, invert, power
from .unitriangular import UnitriMatrix
from .words import (
    LETTERS,
    WordError,
    check_word,
    format_word,
    graded_key,
    is_lyndon,
    lyndon_words,
    standard_factorization,
)

MAX_GROUP_WORD = 10 ** 5


class GroupWordError(ValueError):
    pass


def _reduce(factors: Iterable[tuple[int, int]]) -> tuple:
    out: list = []
    for x, e in factors:
        if out and out[-1][0] == x and out[-1][1] == -e:
            out.pop()
        else:
            out.append((x, e))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word in the generators; factors are (letter, +1 or -1)."""

    factors: tuple = ()

    def __post_init__(self):
        for x, e in self.factors:
            if not (isinstance(x, int) and 0 <= x < len(LETTERS)) or e not in (1, -1):
                raise GroupWordError(f"bad factor {(x, e)!r}")
        object.__setattr__(self, "factors", _reduce(self.factors))

    @classmethod
    def generator(cls, x: int) -> "GroupWord":
        return cls(((x, 1),))

    def __len__(self) -> int:
        return len(self.factors)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.factors + other.factors)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((x, -e) for x, e in reversed(self.factors)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        if len(base) * abs(k) > MAX_GROUP_WORD:
            raise GroupWordError("group word exceeds the factor-count cap")
        return GroupWord(base.factors * abs(k))

    def letters(self) -> set:
        return {x for x, _ in self.factors}

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(LETTERS[x] if e == 1 else f"{LETTERS[x]}^-1" for x, e in self.factors)


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    """``[a, b] = a^-1 b^-1 a b``."""
    if 2 * (len(a) + len(b)) > MAX_GROUP_WORD:
        raise GroupWordError("group word exceeds the factor-count cap")
    return a.inverse() * b.inverse() * a * b


_TOKEN = re.compile(r"\s*(comm|[a-i]|\^|-?\d+|[(),*])")


def parse_group_word(text: str) -> GroupWord:
    """Parse e.g. ``"a^-1 b a b^-1"``, ``"comm(a,comm(a,b))^2"``; ``"1"`` or ``""`` is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return GroupWord()
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise GroupWordError(f"cannot parse {text!r} at position {pos}")
        tokens.append(match.group(1))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    tokens.append(None)
    k = 0

    def peek():
        return tokens[k]

    def take(expected=None):
        nonlocal k
        tok = tokens[k]
        if expected is not None and tok != expected:
            raise GroupWordError(f"expected {expected!r}, found {tok!r} in {text!r}")
        k += 1
        return tok

    def product():
        result = GroupWord()
        while peek() not in (None, ")", ","):
            if peek() == "*":
                take()
            result = result * factor()
        return result

    def factor():
        base = atom()
        if peek() == "^":
            take()
            tok = take()
            try:
                base = base ** int(tok)
            except (TypeError, ValueError):
                raise GroupWordError(f"bad exponent {tok!r} in {text!r}") from None
        return base

    def atom():
        tok = take()
        if tok == "comm":
            take("(")
            left = product()
            take(",")
            right = product()
            take(")")
            return commutator(left, right)
        if tok == "(":
            inner = product()
            take(")")
            return inner
        if tok is not None and len(tok) == 1 and tok in LETTERS:
            return GroupWord.generator(LETTERS.index(tok))
        raise GroupWordError(f"unexpected token {tok!r} in {text!r}")

    result = product()
    if peek() is not None:
        raise GroupWordError(f"trailing input in {text!r}")
    return result


def _alphabet_size(*letter_sets: Iterable[int]) -> int:
    return 1 + max((x for s in letter_sets for x in s), default=0)


def magnus_expand(g: GroupWord, ring, trunc: int, m: int | None = None) -> NcSeries:
    """Image of ``g`` under x -> 1 + x, truncated at degree ``trunc``."""
    if m is None:
        m = _alphabet_size(g.letters())
    terms = {(): 1}
    for x, e in g.factors:
        # right multiplication by 1 + x, or by 1 - x + x^2 - ... for x^-1
        new = dict(terms)
        for w, c in terms.items():
            room = trunc - len(w)
            if e == 1:
                if room > 0:
                    key = w + (x,)
                    new[key] = new.get(key, 0) + c
                continue
            key = w
            for _ in range(room):
                key = key + (x,)
                c = -c
                new[key] = new.get(key, 0) + c
        terms = {w: r for w, r in ((w, ring.reduce(c)) for w, c in new.items()) if r}
    return NcSeries(ring, m, trunc, terms)


def epsilon(g: GroupWord, w: Sequence[int], ring) -> int:
    """Magnus coefficient of the word ``w`` in the image of ``g``."""
    w = check_word(w)
    m = _alphabet_size(g.letters(), w)
    return coefficient(magnus_expand(g, ring, len(w), m), w)


def tau_group_word(w: Sequence[int]) -> GroupWord:
    """Iterated commutator along the standard factorization of a Lyndon word."""
    w = tuple(w)
    if not is_lyndon(w):
        raise WordError(f"{format_word(w)!r} is not a Lyndon word")
    return _tau_word(w)


@lru_cache(maxsize=1024)
def _tau_word(w: tuple) -> GroupWord:
    if len(w) == 1:
        return GroupWord.generator(w[0])
    u, v = standard_factorization(w)
    return commutator(_tau_word(u), _tau_word(v))


def tau_series(w: Sequence[int], ring, trunc: int, m: int | None = None) -> NcSeries:
    """Magnus image of tau_w, built from the series of its two factors."""
    w = tuple(w)
    if not is_lyndon(w):
        raise WordError(f"{format_word(w)!r} is not a Lyndon word")
    if m is None:
        m = _alphabet_size(w)
    return _tau_series(w, ring, trunc, m)


@lru_cache(maxsize=4096)
def _tau_series(w: tuple, ring, trunc: int, m: int) -> NcSeries:
    if len(w) == 1:
        return NcSeries(ring, m, trunc, {(): 1, w: 1})
    u, v = standard_factorization(w)
    a = _tau_series(u, ring, trunc, m)
    b = _tau_series(v, ring, trunc, m)
    return invert(a) * invert(b) * a * b


def precision(n: int, p: int) -> int:
    """Default precision K = j_n(1) + 1 for level n."""
    return j_exponent(n, 1, p) + 1


def sigma_series(w: Sequence[int], n: int, p: int, trunc: int | None = None,
                 m: int | None = None, K: int | None = None) -> NcSeries:
    """Magnus image of sigma_w = tau_w^(p^j_n(|w|)) over Z/p^K."""
    w = tuple(w)
    if not is_lyndon(w):
        raise WordError(f"{format_word(w)!r} is not a Lyndon word")
    if len(w) > n:
        raise ValueError(f"|w| = {len(w)} exceeds level n = {n}")
    ring = ModRing(p, precision(n, p) if K is None else K)
    if trunc is None:
        trunc = n
    if m is None:
        m = _alphabet_size(w)
    return _sigma_series(w, n, ring, trunc, m)


@lru_cache(maxsize=4096)
def _sigma_series(w: tuple, n: int, ring: ModRing, trunc: int, m: int) -> NcSeries:
    return power(_tau_series(w, ring, trunc, m), ring.p ** j_exponent(n, len(w), ring.p))


def rho(w: Sequence[int], g: GroupWord, p: int, j: int) -> UnitriMatrix:
    """Magnus representation: entry (k, l) is the coefficient of x_k ... x_{l-1}."""
    w = check_word(w)
    ring = ModRing(p, j + 1)
    size = len(w) + 1
    lam = magnus_expand(g, ring, len(w), _alphabet_size(g.letters(), w))
    rows = [
        [1 if k == l else (coefficient(lam, w[k:l]) if k < l else 0) for l in range(size)]
        for k in range(size)
    ]
    return UnitriMatrix.from_rows(rows, ring.modulus)


def check_coefficient_bounds(g: GroupWord, n: int, p: int) -> bool:
    """Every Magnus coefficient of length 1..n is divisible by p^min(j_n(|w|), K)."""
    K = precision(n, p)
    ring = ModRing(p, K)
    lam = magnus_expand(g, ring, n)
    for w, c in lam.terms.items():
        if w and c % p ** min(j_exponent(n, len(w), p), K):
            return False
    return True


def triangularity_violations(m: int, max_len: int, ring) -> list[str]:
    """Lyndon words w (|w| <= max_len) whose tau series is not 1 + w + (terms after w)."""
    bad = []
    for w in lyndon_words(m, range(1, max_len + 1)):
        lam = tau_series(w, ring, len(w), m)
        ok = lam.terms.get(()) == 1 and lam.terms.get(w) == 1 and all(
            u in ((), w) or graded_key(u) > graded_key(w) for u in lam.terms
        )
        if not ok:
            bad.append(format_word(w))
    return bad
