"""Level-n pairing values, the fundamental matrix over Lyndon words, and dimension checks."""
from __future__ import annotations

import csv
import io
import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .jumps import j_exponent, jump_set, jump_set_equivalence
from .magnus import precision, sigma_series
from .ncpoly import coefficient
from .parallel import thread_count
from .reports import Report
from .shuffle import _shuffle, indec_dimension, lyndon_span_check
from .words import (
    check_alphabet,
    format_word,
    is_lyndon,
    lyndon_words,
    necklace_count,
    words_of_length,
)

__all__ = [
    "LevelParams", "FundamentalMatrix", "PairingError", "pairing_value", "fundamental_matrix",
    "h2_dimension", "verify_shuffle_relations", "main_theorem_check", "j_exponent", "jump_set",
    "jump_set_equivalence",
]

MAX_LEVEL = 8
MAX_INDEX = 200


class PairingError(ArithmeticError):
    """A Magnus coefficient failed the divisibility it is guaranteed to have."""


@dataclass(frozen=True)
class LevelParams:
    p: int
    n: int
    m: int
    K: int | None = None

    def __post_init__(self):
        from sympy import isprime

        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not 2 <= self.n <= MAX_LEVEL:
            raise ValueError(f"level n must be in 2..{MAX_LEVEL}, got {self.n}")
        check_alphabet(self.m)
        default = precision(self.n, self.p)
        if self.K is None:
            object.__setattr__(self, "K", default)
        elif self.K < default:
            warnings.warn(
                f"precision K={self.K} is below j_n(1)+1={default}; pairing values are unreliable",
                stacklevel=2,
            )

    @property
    def jumps(self) -> list[int]:
        return jump_set(self.n, self.p)

    def index(self) -> list[tuple]:
        return lyndon_words(self.m, self.jumps)


def _sigma(w_prime: tuple, params: LevelParams):
    return sigma_series(w_prime, params.n, params.p, trunc=params.n, m=params.m, K=params.K)


def _reduce_pairing(c: int, length: int, params: LevelParams, context: str) -> int:
    j = j_exponent(params.n, length, params.p)
    if j >= params.K:
        raise PairingError(f"precision K={params.K} cannot resolve p^{j} for {context}")
    if c % params.p ** j:
        raise PairingError(f"coefficient {c} not divisible by {params.p}^{j} for {context}")
    return (c // params.p ** j) % params.p


def pairing_value(w, w_prime, params: LevelParams) -> int:
    """<w, w'>_n in F_p: the Magnus coefficient of w in sigma_w' divided by p^j_n(|w|)."""
    w, w_prime = tuple(w), tuple(w_prime)
    if not 1 <= len(w) <= params.n:
        raise ValueError(f"need 1 <= |w| <= n, got |w|={len(w)}")
    if not is_lyndon(w_prime) or len(w_prime) > params.n:
        raise ValueError(f"{format_word(w_prime)!r} must be a Lyndon word of length <= n")
    c = coefficient(_sigma(w_prime, params), w)
    return _reduce_pairing(c, len(w), params,
                           f"<{format_word(w)}, {format_word(w_prime)}>_{params.n}")


@dataclass(frozen=True)
class FundamentalMatrix:
    """Stored transposed: ``entries[r][c] = <index[c], index[r]>_n``, upper unitriangular."""

    params: LevelParams
    index: tuple
    entries: tuple
    transposed: bool = True

    @property
    def size(self) -> int:
        return len(self.index)

    def signed(self) -> list[list[int]]:
        p = self.params.p
        return [[x - p if 2 * x > p else x for x in row] for row in self.entries]

    def is_unitriangular(self) -> bool:
        return all(
            self.entries[r][c] == 1 if r == c else r < c or self.entries[r][c] == 0
            for r in range(self.size) for c in range(self.size)
        )

    def is_identity(self) -> bool:
        return all(self.entries[r][c] == int(r == c)
                   for r in range(self.size) for c in range(self.size))

    def off_diagonal(self) -> list[tuple[tuple, tuple, int]]:
        """Nonzero off-diagonal entries as (row word, column word, value)."""
        return [(self.index[r], self.index[c], self.entries[r][c])
                for r in range(self.size) for c in range(self.size)
                if r != c and self.entries[r][c]]

    def to_dict(self) -> dict:
        return {
            "p": self.params.p,
            "n": self.params.n,
            "m": self.params.m,
            "K": self.params.K,
            "index": [format_word(w) for w in self.index],
            "transposed": self.transposed,
            "matrix": [list(row) for row in self.entries],
            "signed_matrix": self.signed(),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(format_word(w) for w in self.index)
        writer.writerows(self.entries)
        return buf.getvalue()


def _matrix_row(w_prime: tuple, index: list, params: LevelParams) -> tuple:
    lam = _sigma(w_prime, params)
    return tuple(
        _reduce_pairing(coefficient(lam, w), len(w), params,
                        f"<{format_word(w)}, {format_word(w_prime)}>_{params.n}")
        for w in index
    )


def fundamental_matrix(params: LevelParams) -> FundamentalMatrix:
    index = params.index()
    if len(index) > MAX_INDEX:
        raise ValueError(f"index has {len(index)} words, above the limit {MAX_INDEX}")
    # one sigma series per row of the stored (transposed) matrix
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        rows = list(pool.map(lambda w: _matrix_row(w, index, params), index))
    return FundamentalMatrix(params, tuple(index), tuple(rows))


def h2_dimension(params: LevelParams) -> int:
    return sum(necklace_count(params.m, i) for i in params.jumps)


def verify_shuffle_relations(params: LevelParams) -> Report:
    """For i in J(n), i >= 2: sum_w (u sh v)_w <w, w'>_n = 0 for all nonempty u, v and Lyndon w'."""
    report = Report(f"shuffle relations p={params.p} n={params.n} m={params.m}")
    index = params.index()
    for i in params.jumps:
        if i < 2:
            continue
        words = list(words_of_length(params.m, i))
        pairs = [(u, v) for k in range(1, i)
                 for u in words_of_length(params.m, k)
                 for v in words_of_length(params.m, i - k)]
        for w_prime in index:
            lam = _sigma(w_prime, params)
            values = {
                w: _reduce_pairing(coefficient(lam, w), i, params,
                                   f"<{format_word(w)}, {format_word(w_prime)}>_{params.n}")
                for w in words
            }
            for u, v in pairs:
                total = sum(c * values[w] for w, c in _shuffle(u, v).items()) % params.p
                report.check(total == 0,
                             f"({format_word(u)} sh {format_word(v)}) paired with "
                             f"sigma_{format_word(w_prime)} gives {total}")
    return report


def main_theorem_check(params: LevelParams) -> bool:
    """m + dim indec_n = sum_{i in J(n)} phi_i(m) = index size, and Lyndon words span."""
    p, n, m = params.p, params.n, params.m
    if not 2 <= n < p:
        raise ValueError(f"need 2 <= n < p, got n={n}, p={p}")
    left = m + indec_dimension(m, n, p)
    return left == h2_dimension(params) == len(params.index()) and lyndon_span_check(m, n, p)
