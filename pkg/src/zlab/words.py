"""Words over a finite ordered alphabet, Lyndon words and Hall-set checks.

Letters are the integers ``0..m-1`` in their natural order and a word is a
plain ``tuple`` of letters.  Python's tuple comparison is exactly the
alphabetic order (a proper prefix precedes its extensions), so most of the
orders below reduce to key functions.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from sympy import divisors, mobius

MAX_LETTERS = 9
MAX_WORD_LENGTH = 16

Word = tuple  # tuple[int, ...]

LETTERS = string.ascii_lowercase[:MAX_LETTERS]


class WordError(ValueError):
    pass


def check_alphabet(m: int) -> int:
    if not 1 <= m <= MAX_LETTERS:
        raise WordError(f"alphabet size must be in 1..{MAX_LETTERS}, got {m}")
    return m


def check_word(w: Sequence[int], m: int | None = None) -> Word:
    w = tuple(w)
    if len(w) > MAX_WORD_LENGTH:
        raise WordError(f"word length {len(w)} exceeds bound {MAX_WORD_LENGTH}")
    bound = MAX_LETTERS if m is None else m
    for x in w:
        if not (isinstance(x, int) and 0 <= x < bound):
            raise WordError(f"letter {x!r} outside alphabet of size {bound}")
    return w


def parse_word(text: str) -> Word:
    """``"aab"`` -> ``(0, 0, 1)``; the empty string is the empty word."""
    try:
        return check_word(LETTERS.index(ch) for ch in text.strip())
    except ValueError as exc:
        if isinstance(exc, WordError):
            raise
        raise WordError(f"bad word {text!r}: letters must be in a-{LETTERS[-1]}") from None


def format_word(w: Sequence[int]) -> str:
    return "".join(LETTERS[x] for x in w)


def compare_alp(w1: Sequence[int], w2: Sequence[int]) -> int:
    """Alphabetic order; returns -1, 0 or 1."""
    w1, w2 = tuple(w1), tuple(w2)
    return (w1 > w2) - (w1 < w2)


def graded_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(w))


def compare_graded(w1: Sequence[int], w2: Sequence[int]) -> int:
    """Length first, then alphabetic; returns -1, 0 or 1."""
    k1, k2 = graded_key(w1), graded_key(w2)
    return (k1 > k2) - (k1 < k2)


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[k:] for k in range(1, len(w)))


def words_of_length(m: int, n: int) -> Iterator[Word]:
    """All words of length ``n`` in alphabetic order."""
    if n == 0:
        yield ()
        return
    for head in range(m):
        for tail in words_of_length(m, n - 1):
            yield (head,) + tail


def duval_lyndon(m: int, max_len: int) -> Iterator[Word]:
    """Duval's generation of all Lyndon words of length <= max_len, alphabetically."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        k = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - k])
        while w and w[-1] == m - 1:
            w.pop()


def lyndon_words(m: int, lengths: Iterable[int]) -> list[Word]:
    """All Lyndon words whose length lies in ``lengths``, sorted by (length, alphabetic)."""
    check_alphabet(m)
    wanted = set(lengths)
    if not wanted:
        return []
    if min(wanted) < 1:
        raise WordError("Lyndon word lengths must be positive")
    top = max(wanted)
    if top > MAX_WORD_LENGTH:
        raise WordError(f"length {top} exceeds bound {MAX_WORD_LENGTH}")
    return _lyndon_cached(m, frozenset(wanted))


@lru_cache(maxsize=256)
def _lyndon_cached(m: int, wanted: frozenset) -> list[Word]:
    found = [w for w in duval_lyndon(m, max(wanted)) if len(w) in wanted]
    found.sort(key=graded_key)
    return found


def standard_factorization(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a Lyndon word as ``u + v`` with ``v`` its longest proper Lyndon suffix."""
    w = tuple(w)
    if not is_lyndon(w):
        raise WordError(f"{format_word(w)!r} is not a Lyndon word")
    if len(w) < 2:
        raise WordError("a single letter has no standard factorization")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def minimal_lyndon_suffix(w: Sequence[int]) -> Word:
    """Alphabetically smallest proper Lyndon suffix (used as an oracle)."""
    w = tuple(w)
    return min(w[k:] for k in range(1, len(w)) if is_lyndon(w[k:]))


@dataclass(frozen=True)
class Bracket:
    """A non-associative product ``(left right)``; single letters are plain ints."""

    left: "BracketedWord"
    right: "BracketedWord"

    def __str__(self) -> str:
        return f"[{format_bracket(self.left)},{format_bracket(self.right)}]"


BracketedWord = Union[int, Bracket]


def foliage(b: BracketedWord) -> Word:
    if isinstance(b, Bracket):
        return foliage(b.left) + foliage(b.right)
    return (b,)


def format_bracket(b: BracketedWord) -> str:
    return str(b) if isinstance(b, Bracket) else LETTERS[b]


def parse_bracket(text: str) -> BracketedWord:
    """Parse ``[a,[a,b]]``; a bare word is read as a Lyndon word and bracketed."""
    text = text.replace(" ", "")
    if not text.startswith("["):
        return bracketing(parse_word(text))
    pos = 0

    def node() -> BracketedWord:
        nonlocal pos
        if pos < len(text) and text[pos] == "[":
            pos += 1
            left = node()
            expect(",")
            right = node()
            expect("]")
            return Bracket(left, right)
        if pos < len(text) and text[pos] in LETTERS:
            pos += 1
            return LETTERS.index(text[pos - 1])
        raise WordError(f"malformed bracket {text!r} at position {pos}")

    def expect(ch: str) -> None:
        nonlocal pos
        if pos >= len(text) or text[pos] != ch:
            raise WordError(f"expected {ch!r} at position {pos} in {text!r}")
        pos += 1

    result = node()
    if pos != len(text):
        raise WordError(f"trailing characters in {text!r}")
    return result


@lru_cache(maxsize=4096)
def bracketing(w: Word) -> BracketedWord:
    w = tuple(w)
    if not is_lyndon(w):
        raise WordError(f"{format_word(w)!r} is not a Lyndon word")
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return Bracket(bracketing(u), bracketing(v))


def lyndon_hall_candidates(m: int, max_len: int) -> list[BracketedWord]:
    """Lyndon bracketings of length <= max_len listed in the alphabetic order of foliages."""
    words = lyndon_words(m, range(1, max_len + 1))
    return [bracketing(w) for w in sorted(words)]


def check_hall_conditions(
    candidates: Sequence[BracketedWord], max_len: int, m: int | None = None
) -> bool:
    """Check the three Hall-set axioms on a finite, totally ordered candidate list.

    The position in ``candidates`` is the order.  Only candidates with foliage
    length <= ``max_len`` are considered, and the "if" half of the third axiom
    is tested on every pair of candidates whose combined length fits.
    ``m`` defaults to the letters seen in the candidates.
    """
    cands = [h for h in candidates if len(foliage(h)) <= max_len]
    rank = {h: r for r, h in enumerate(cands)}
    if len(rank) != len(cands):
        return False
    letters = sorted(h for h in cands if not isinstance(h, Bracket))
    if m is None:
        m = 1 + max((x for h in cands for x in foliage(h)), default=-1)
    # (1) every letter present, ordered as in the alphabet
    if letters != list(range(m)):
        return False
    if [h for h in cands if not isinstance(h, Bracket)] != letters:
        return False

    def admissible(left: BracketedWord, right: BracketedWord) -> bool:
        if left not in rank or right not in rank or rank[left] >= rank[right]:
            return False
        if isinstance(left, Bracket):
            return left.right in rank and rank[left.right] >= rank[right]
        return True

    for h in cands:
        if not isinstance(h, Bracket):
            continue
        # (2)
        if h.right not in rank or rank[h] >= rank[h.right]:
            return False
        # (3), "only if"
        if not admissible(h.left, h.right):
            return False
    # (3), "if"
    sizes = {h: len(foliage(h)) for h in cands}
    for left in cands:
        for right in cands:
            if sizes[left] + sizes[right] > max_len:
                continue
            if admissible(left, right) and Bracket(left, right) not in rank:
                return False
    return True


def necklace_count(m: int, i: int) -> int:
    """Witt's necklace number: Lyndon words of length ``i`` over ``m`` letters."""
    if i < 1 or m < 1:
        raise WordError("necklace_count needs positive arguments")
    if i > MAX_WORD_LENGTH:
        raise WordError(f"length {i} exceeds bound {MAX_WORD_LENGTH}")
    total = sum(int(mobius(d)) * m ** (i // d) for d in divisors(i))
    assert total % i == 0
    return total // i
