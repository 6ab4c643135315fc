"""Lie monomials of bracketed words and their restricted powers, expanded in k<X>."""
from __future__ import annotations

from typing import Sequence

from .kernels import rank_mod_p
from .ncpoly import ZZ, ModRing, NcSeries, TruncationError, power
from .words import MAX_WORD_LENGTH, Bracket, WordError, BracketedWord, bracketing, foliage, graded_key, lyndon_words, words_of_length


def lie_expand(b: BracketedWord, ring=ZZ, trunc: int | None = None, m: int | None = None) -> NcSeries:
    """Expand the bracketed word with ``[a, b] = ab - ba``."""
    leaves = foliage(b)
    if trunc is None:
        trunc = len(leaves)
    if len(leaves) > trunc:
        raise TruncationError(f"degree {len(leaves)} does not fit truncation {trunc}")
    if m is None:
        m = max(leaves) + 1
    return _expand(b, ring, trunc, m)


def _expand(b, ring, trunc, m):
    if not isinstance(b, Bracket):
        return NcSeries.letter(b, ring, m, trunc)
    left = _expand(b.left, ring, trunc, m)
    right = _expand(b.right, ring, trunc, m)
    return left * right - right * left


def restricted_power_expand(j: int, b: BracketedWord, ring, trunc: int | None = None,
                            m: int | None = None) -> NcSeries:
    """The p^j-th associative power of the Lie monomial of ``b`` (p = ring.p)."""
    degree = len(foliage(b)) * ring.p ** j
    if degree > MAX_WORD_LENGTH:
        raise WordError(f"degree {degree} exceeds word-length bound {MAX_WORD_LENGTH}")
    if trunc is None:
        trunc = degree
    if degree > trunc:
        raise TruncationError(f"degree {degree} does not fit truncation {trunc}")
    return power(lie_expand(b, ring, trunc, m), ring.p ** j)


def homogeneous_rank(polys: Sequence[NcSeries], degree: int, p: int) -> int:
    """Rank over F_p of the coefficient rows of homogeneous polynomials of one degree."""
    if not polys:
        return 0
    m = polys[0].m
    for f in polys:
        if f.m != m:
            raise ValueError("polynomials over different alphabets")
        if any(len(w) != degree for w in f.terms):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
    columns = sorted(words_of_length(m, degree), key=graded_key)
    rows = [[f.terms.get(w, 0) % p for w in columns] for f in polys]
    return rank_mod_p(rows, p)


def restricted_family(m: int, n: int, p: int) -> list[tuple[int, tuple, NcSeries]]:
    """All (j, w, P(w)^(p^j)) with w Lyndon over m letters and |w| p^j = n."""
    ring = ModRing(p, 1)
    family = []
    j = 0
    while p ** j <= n:
        if n % p ** j == 0:
            for w in lyndon_words(m, [n // p ** j]):
                family.append((j, w, restricted_power_expand(j, bracketing(w), ring, m=m)))
        j += 1
    return family


def lie_family(m: int, n: int, p: int) -> list[NcSeries]:
    ring = ModRing(p, 1)
    return [lie_expand(bracketing(w), ring, m=m) for w in lyndon_words(m, [n])]


def independence_check(m: int, n: int, p: int) -> bool:
    """Both families in degree n have full rank over F_p."""
    plain = lie_family(m, n, p)
    restricted = [f for _, _, f in restricted_family(m, n, p)]
    return (homogeneous_rank(plain, n, p) == len(plain)
            and homogeneous_rank(restricted, n, p) == len(restricted))
