"""Truncated non-commutative series with coefficients in Z/p^K (or Z)."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from sympy import isprime

from .words import check_alphabet, check_word, format_word, graded_key, parse_word


def format_terms(items: Iterable[tuple[tuple, int]]) -> str:
    """Render ``[(word, coeff), ...]`` as ``1 + ab - 2ba``."""
    text = ""
    for w, c in items:
        word = format_word(w)
        mag = str(abs(c)) if abs(c) != 1 or not word else ""
        sign = "-" if c < 0 else "+"
        text += (f" {sign} " if text else ("-" if c < 0 else "")) + mag + word
    return text or "0"


class RingMismatch(ValueError):
    pass


class TruncationError(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


@dataclass(frozen=True)
class ModRing:
    """The ring Z/p^K."""

    p: int
    K: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.K < 1:
            raise ValueError("precision K must be positive")
        if self.p ** self.K >= 2 ** 64:
            raise ValueError(f"p^K = {self.p}^{self.K} does not fit in 64 bits")

    @property
    def modulus(self) -> int:
        return self.p ** self.K

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise NotInvertible(f"{x} is not a unit modulo {self.modulus}")
        return pow(x, -1, self.modulus)

    def signed(self, x: int) -> int:
        """Representative in (-modulus/2, modulus/2]."""
        x %= self.modulus
        return x - self.modulus if 2 * x > self.modulus else x

    def __str__(self) -> str:
        return f"Z/{self.p}^{self.K}"


@dataclass(frozen=True)
class IntegerRing:
    """Plain integers; used for shuffle/infiltration polynomials and Lie expansions."""

    p = None
    K = None
    modulus = None

    def reduce(self, x: int) -> int:
        return x

    def is_unit(self, x: int) -> bool:
        return x in (1, -1)

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise NotInvertible(f"{x} is not a unit in Z")
        return x

    def signed(self, x: int) -> int:
        return x

    def __str__(self) -> str:
        return "Z"


ZZ = IntegerRing()


@dataclass(frozen=True, eq=False)
class NcSeries:
    """Sum of ``coeff * word`` over words of length <= ``trunc``.

    ``terms`` never holds zero coefficients; construction reduces and drops
    them.  Operations between series with different truncation degrees
    truncate to the smaller one.
    """

    ring: ModRing | IntegerRing
    m: int
    trunc: int
    terms: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        check_alphabet(self.m)
        if self.trunc < 0:
            raise ValueError("truncation degree must be non-negative")
        clean = {}
        for w, c in self.terms.items():
            w = check_word(w, self.m)
            if len(w) > self.trunc:
                continue
            c = self.ring.reduce(int(c))
            if c:
                clean[w] = c
        object.__setattr__(self, "terms", clean)

    # constructors

    @classmethod
    def one(cls, ring, m: int, trunc: int) -> "NcSeries":
        return cls(ring, m, trunc, {(): 1})

    @classmethod
    def zero(cls, ring, m: int, trunc: int) -> "NcSeries":
        return cls(ring, m, trunc, {})

    @classmethod
    def letter(cls, x: int, ring, m: int, trunc: int) -> "NcSeries":
        return cls(ring, m, trunc, {(x,): 1})

    @classmethod
    def from_words(cls, items: Mapping[str, int], ring, m: int, trunc: int) -> "NcSeries":
        return cls(ring, m, trunc, {parse_word(k): v for k, v in items.items()})

    # comparisons and display

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.m == other.m
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return format_terms((w, self.ring.signed(c)) for w, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"NcSeries({self}; {self.ring}, m={self.m}, trunc={self.trunc})"

    # arithmetic

    def _check_compatible(self, other: "NcSeries") -> None:
        if not isinstance(other, NcSeries):
            raise TypeError(f"expected NcSeries, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.m != other.m:
            raise RingMismatch(f"alphabet mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "NcSeries") -> "NcSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NcSeries(self.ring, self.m, min(self.trunc, other.trunc), out)

    def __neg__(self) -> "NcSeries":
        return NcSeries(self.ring, self.m, self.trunc, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcSeries") -> "NcSeries":
        return self + (-other)

    def scale(self, c: int) -> "NcSeries":
        return NcSeries(self.ring, self.m, self.trunc, {w: c * a for w, a in self.terms.items()})

    def __mul__(self, other: "NcSeries") -> "NcSeries":
        self._check_compatible(other)
        trunc = min(self.trunc, other.trunc)
        by_len = defaultdict(list)
        for v, b in other.terms.items():
            by_len[len(v)].append((v, b))
        out: dict = defaultdict(int)
        for u, a in self.terms.items():
            room = trunc - len(u)
            for k in range(room + 1):
                for v, b in by_len.get(k, ()):
                    out[u + v] += a * b
        return NcSeries(self.ring, self.m, trunc, out)

    def __pow__(self, e: int) -> "NcSeries":
        return power(self, e)

    def homogeneous_part(self, degree: int) -> "NcSeries":
        return NcSeries(
            self.ring, self.m, self.trunc, {w: c for w, c in self.terms.items() if len(w) == degree}
        )

    def constant(self) -> int:
        return self.terms.get((), 0)

    # serialization

    def to_dict(self) -> dict:
        return {
            "p": self.ring.p,
            "K": self.ring.K,
            "m": self.m,
            "trunc": self.trunc,
            "terms": [{"word": format_word(w), "coeff": c} for w, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "NcSeries":
        ring = ZZ if data.get("p") is None else ModRing(int(data["p"]), int(data["K"]))
        terms = {parse_word(t["word"]): int(t["coeff"]) for t in data["terms"]}
        m = data.get("m")
        if m is None:
            m = 1 + max((x for w in terms for x in w), default=0)
        return cls(ring, int(m), int(data["trunc"]), terms)

    @classmethod
    def from_json(cls, text: str) -> "NcSeries":
        return cls.from_dict(json.loads(text))


def add(f: NcSeries, g: NcSeries) -> NcSeries:
    return f + g


def mul(f: NcSeries, g: NcSeries) -> NcSeries:
    return f * g


def invert(f: NcSeries) -> NcSeries:
    """Inverse computed one degree at a time from ``f * g = 1``."""
    c0 = f.constant()
    if not f.ring.is_unit(c0):
        raise NotInvertible(f"constant term {c0} is not a unit of {f.ring}")
    c0_inv = f.ring.inverse(c0)
    f_by_len = defaultdict(list)
    for u, a in f.terms.items():
        if u:
            f_by_len[len(u)].append((u, a))
    g = {(): c0_inv}
    g_by_len: dict = {0: [((), c0_inv)]}
    for d in range(1, f.trunc + 1):
        acc: dict = defaultdict(int)
        for k in range(1, d + 1):
            for u, a in f_by_len.get(k, ()):
                for v, b in g_by_len.get(d - k, ()):
                    acc[u + v] += a * b
        layer = []
        for w, s in acc.items():
            c = f.ring.reduce(-c0_inv * s)
            if c:
                g[w] = c
                layer.append((w, c))
        g_by_len[d] = layer
    return NcSeries(f.ring, f.m, f.trunc, g)


def power(f: NcSeries, e: int) -> NcSeries:
    if e < 0:
        return power(invert(f), -e)
    result = NcSeries.one(f.ring, f.m, f.trunc)
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def coefficient(f: NcSeries, w: Sequence[int]) -> int:
    w = tuple(w)
    if len(w) > f.trunc:
        raise TruncationError(
            f"word of length {len(w)} is beyond truncation degree {f.trunc}"
        )
    return f.terms.get(w, 0)


def pairing(f: NcSeries, g) -> int:
    """``sum_w f_w g_w`` over the support of ``g`` (an NcSeries or IntPoly)."""
    total = 0
    for w, b in g.terms.items():
        if any(x >= f.m for x in w):
            raise RingMismatch(f"word {format_word(w)!r} is outside the alphabet of size {f.m}")
        if len(w) > f.trunc:
            raise TruncationError(
                f"support word {format_word(w)!r} exceeds truncation degree {f.trunc}"
            )
        total += f.terms.get(w, 0) * b
    return f.ring.reduce(total)


def series_from_terms(ring, m: int, trunc: int, items: Iterable[tuple[tuple, int]]) -> NcSeries:
    acc: dict = defaultdict(int)
    for w, c in items:
        acc[tuple(w)] += c
    return NcSeries(ring, m, trunc, acc)
