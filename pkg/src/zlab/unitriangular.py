"""Exhaustive subgroup computations in finite unitriangular groups U_i(Z/p^(j+1)).

Subgroups are stored as frozensets of packed element codes (see
``zlab._pycore`` for the packing); products, commutators and powers run in
the selected kernel backend.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import isprime

from . import kernels
from .jumps import j_exponent, jump_set
from .parallel import thread_count
from .reports import Report

MAX_ORDER = 10 ** 6


class GroupTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class UnitriMatrix:
    modulus: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: int) -> "UnitriMatrix":
        s = len(rows)
        clean = tuple(tuple(int(x) % modulus for x in row) for row in rows)
        for r in range(s):
            if len(clean[r]) != s:
                raise ValueError("matrix must be square")
            if clean[r][r] != 1 % modulus or any(clean[r][c] for c in range(r)):
                raise ValueError("matrix is not unitriangular")
        return cls(modulus, clean)

    @classmethod
    def identity(cls, size: int, modulus: int) -> "UnitriMatrix":
        return cls.from_rows([[int(r == c) for c in range(size)] for r in range(size)], modulus)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "UnitriMatrix") -> "UnitriMatrix":
        if self.modulus != other.modulus or self.size != other.size:
            raise ValueError("incompatible matrices")
        s = self.size
        return UnitriMatrix.from_rows(
            [[sum(self.rows[r][k] * other.rows[k][c] for k in range(s)) for c in range(s)]
             for r in range(s)],
            self.modulus,
        )

    __mul__ = __matmul__

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x}" for x in row) for row in self.rows)


class FiniteUTGroup:
    """U_i(Z/p^(j+1)): unitriangular (i+1)x(i+1) matrices."""

    def __init__(self, i: int, p: int, j: int, max_order: int = MAX_ORDER):
        if i < 1 or j < 0 or not isprime(p):
            raise ValueError(f"bad group parameters i={i}, p={p}, j={j}")
        self.i, self.p, self.j = i, p, j
        self.q = p ** (j + 1)
        self.ndigits = i * (i + 1) // 2
        self.order = self.q ** self.ndigits
        if self.order > max_order:
            raise GroupTooLarge(f"U_{i}(Z/{self.q}) has order {self.order} > {max_order}")
        self.kernel = kernels.UTKernel(i + 1, self.q)
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"FiniteUTGroup(i={self.i}, p={self.p}, j={self.j})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteUTGroup) and (self.i, self.q) == (other.i, other.q)

    def __hash__(self) -> int:
        return hash((self.i, self.q))

    # element conversion

    def to_matrix(self, code: int) -> UnitriMatrix:
        return UnitriMatrix.from_rows(self.kernel.decode(int(code)), self.q)

    def to_code(self, mat: UnitriMatrix) -> int:
        if mat.modulus != self.q or mat.size != self.i + 1:
            raise ValueError("matrix does not belong to this group")
        return int(self.kernel.encode(mat.rows))

    def elementary(self, r: int, c: int, value: int = 1) -> int:
        """Code of I + value * E_{r,c} (0-based, r < c)."""
        rows = [[int(a == b) for b in range(self.i + 1)] for a in range(self.i + 1)]
        rows[r][c] = value % self.q
        return int(self.kernel.encode(rows))

    def standard_generators(self) -> list[int]:
        return [self.elementary(k, k + 1) for k in range(self.i)]

    def whole(self) -> "SubgroupSet":
        key = ("whole",)
        if key not in self._cache:
            self._cache[key] = SubgroupSet(self, frozenset(range(self.order)),
                                           tuple(self.standard_generators()), verify=False)
        return self._cache[key]

    def trivial(self) -> "SubgroupSet":
        return SubgroupSet(self, frozenset({0}), (), verify=False)

    # predicted subgroups

    def diagonal_subgroup(self, k: int) -> "SubgroupSet":
        """Matrices vanishing on the first k-1 superdiagonals."""
        zeros = sum(self.i + 1 - d for d in range(1, min(k, self.i + 1)))
        step = self.q ** zeros
        return SubgroupSet(self, frozenset(range(0, self.order, step)), (), verify=False)

    def corner_subgroup(self, t: int) -> "SubgroupSet":
        """I + p^t Z E_{1,i+1}."""
        unit = self.q ** (self.ndigits - 1)
        step = self.p ** t
        values = range(0, self.q, step) if step < self.q else [0]
        return SubgroupSet(self, frozenset(v * unit for v in values), (), verify=False)


class SubgroupSet:
    """Explicit element set of a subgroup together with a generating list."""

    def __init__(self, parent: FiniteUTGroup, elements: frozenset, generators: tuple = (),
                 verify: bool = True):
        self.parent = parent
        self.elements = frozenset(int(e) for e in elements)
        self.generators = tuple(int(g) for g in generators)
        if verify and not parent.kernel.is_closed(sorted(self.elements), list(self.generators)
                                                  or [0]):
            raise ValueError("element set is not closed under the generators")
        if verify and not set(self.generators) <= self.elements:
            raise ValueError("generators outside the element set")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        if isinstance(item, UnitriMatrix):
            item = self.parent.to_code(item)
        return item in self.elements

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubgroupSet) and self.parent == other.parent
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.elements <= other.elements

    def is_trivial(self) -> bool:
        return self.elements == {0}

    def codes(self) -> list[int]:
        return sorted(self.elements)

    def matrices(self) -> list[UnitriMatrix]:
        return [self.parent.to_matrix(c) for c in self.codes()]

    def is_normal(self) -> bool:
        return bool(self.parent.kernel.is_normalized_by(self.codes(),
                                                        self.parent.standard_generators()))

    def __repr__(self) -> str:
        return f"SubgroupSet(order={self.order}, parent={self.parent!r})"


def _codes(parent: FiniteUTGroup, items: Iterable) -> list[int]:
    return [parent.to_code(x) if isinstance(x, UnitriMatrix) else int(x) for x in items]


def closure(parent: FiniteUTGroup, generators: Iterable) -> SubgroupSet:
    """Subgroup generated by ``generators`` (codes or UnitriMatrix values)."""
    elems, used = parent.kernel.closure(_codes(parent, generators))
    return SubgroupSet(parent, frozenset(int(e) for e in elems), tuple(used))


def product(parent: FiniteUTGroup, *subgroups: SubgroupSet) -> SubgroupSet:
    """Subgroup generated by the union (the product, for normal subgroups)."""
    gens: list[int] = []
    for h in subgroups:
        gens.extend(h.generators if h.generators else h.codes())
    # generating lists of predicted subgroups are empty; fall back to elements
    return closure(parent, gens)


def _generating_codes(H: SubgroupSet) -> list[int]:
    return list(H.generators) if H.generators else H.codes()


def normal_closure(parent: FiniteUTGroup, seeds: Iterable[int],
                   conjugators: Sequence[int]) -> SubgroupSet:
    """Smallest subgroup containing ``seeds`` and stable under conjugation by ``conjugators``."""
    k = parent.kernel
    H = closure(parent, seeds)
    inverses = [int(k.inv(g)) for g in conjugators]
    while True:
        fresh = {
            c
            for h in H.generators
            for g, gi in zip(conjugators, inverses)
            for c in (int(k.mul(k.mul(gi, h), g)), int(k.mul(k.mul(g, h), gi)))
            if c not in H.elements
        }
        if not fresh:
            return H
        H = closure(parent, list(H.generators) + sorted(fresh))


def commutator_subgroup(A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """[A, B], generated by commutators of generators, closed under conjugation by A and B."""
    if A.parent != B.parent:
        raise ValueError("subgroups of different groups")
    parent = A.parent
    key = ("comm", A.elements, B.elements)
    if key not in parent._cache:
        k = parent.kernel
        ga, gb = _generating_codes(A), _generating_codes(B)
        seeds = sorted({int(k.commutator(a, b)) for a in ga for b in gb})
        parent._cache[key] = normal_closure(parent, seeds, sorted(set(ga) | set(gb)))
    return parent._cache[key]


def commutator_subgroup_exhaustive(A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """[A, B] generated by all |A| * |B| commutators; the slow reference."""
    if A.parent != B.parent:
        raise ValueError("subgroups of different groups")
    return closure(A.parent, A.parent.kernel.commutators(A.codes(), B.codes()))


def power_subgroup(A: SubgroupSet, e: int) -> SubgroupSet:
    if e < 1:
        raise ValueError("exponent must be positive")
    if e == 1:
        return A
    parent = A.parent
    key = ("pow", A.elements, e)
    if key not in parent._cache:
        parent._cache[key] = closure(parent, parent.kernel.powers(A.codes(), e))
    return parent._cache[key]


def lower_central(G: FiniteUTGroup, k: int) -> SubgroupSet:
    """G^(1) = G, G^(k+1) = [G, G^(k)]."""
    if k < 1:
        raise ValueError("lower central series starts at 1")
    key = ("lcs", k)
    if key not in G._cache:
        if k == 1:
            G._cache[key] = G.whole()
        else:
            prev = lower_central(G, k - 1)
            G._cache[key] = prev if prev.is_trivial() else commutator_subgroup(G.whole(), prev)
    return G._cache[key]


def zassenhaus_product(G: FiniteUTGroup, n: int, p: int) -> SubgroupSet:
    """Product over 1 <= i <= n of (G^(i))^(p^j_n(i))."""
    key = ("zp", n, p)
    if key not in G._cache:
        parts = []
        for i in range(1, n + 1):
            lcs = lower_central(G, i)
            if lcs.is_trivial():
                break
            parts.append(power_subgroup(lcs, p ** j_exponent(n, i, p)))
        G._cache[key] = product(G, *parts) if parts else G.trivial()
    return G._cache[key]


def zassenhaus_inductive(G: FiniteUTGroup, n: int, p: int) -> SubgroupSet:
    """G_(1) = G; G_(n) = (G_(ceil(n/p)))^p * prod_{a+b=n} [G_(a), G_(b)]."""
    if n < 1:
        raise ValueError("n must be positive")
    key = ("zi", n, p)
    if key not in G._cache:
        if n == 1:
            G._cache[key] = G.whole()
        else:
            parts = [power_subgroup(zassenhaus_inductive(G, -(-n // p), p), p)]
            # [A, B] = [B, A], so a <= b suffices
            for a in range(1, n // 2 + 1):
                parts.append(commutator_subgroup(zassenhaus_inductive(G, a, p),
                                                 zassenhaus_inductive(G, n - a, p)))
            G._cache[key] = product(G, *parts)
    return G._cache[key]


def shalev_lhs(G: FiniteUTGroup, n: int, p: int) -> SubgroupSet:
    """Product over i p^j >= n of (G^(i+1))^(p^j)."""
    parts = []
    for i in range(1, n + 1):
        lcs = lower_central(G, i + 1)
        if lcs.is_trivial():
            break
        parts.append(power_subgroup(lcs, p ** j_exponent(n, i, p)))
    return product(G, *parts) if parts else G.trivial()


def frattini_like(G: FiniteUTGroup, n: int, p: int) -> SubgroupSet:
    """(G_(n,p))^p [G, G_(n,p)]."""
    Z = zassenhaus_product(G, n, p)
    return product(G, power_subgroup(Z, p), commutator_subgroup(G.whole(), Z))


def _floor_log(p: int, num: int, den: int) -> int:
    """Largest e with p^e <= num/den (num >= den >= 1)."""
    e = 0
    while p ** (e + 1) * den <= num:
        e += 1
    return e


def _exact_log(p: int, num: int, den: int) -> int | None:
    """e with p^e = num/den, or None."""
    if num % den:
        return None
    ratio, e = num // den, 0
    while ratio % p == 0:
        ratio //= p
        e += 1
    return e if ratio == 1 else None


def _section6_point(p: int, i: int, j: int) -> Report:
    report = Report(f"powers of U_{i}(Z/{p}^{j + 1})")
    G = FiniteUTGroup(i, p, j)
    corner = G.corner_subgroup(j)
    for ip in range(1, i + 1):
        U = lower_central(G, ip)
        report.check(U == G.diagonal_subgroup(ip),
                     f"U_{i}(Z/{G.q})^({ip}) differs from the diagonal description")
        top = j + 1 + _floor_log(p, i, ip) + 1
        for jp in range(0, top + 1):
            P = power_subgroup(U, p ** jp)
            tag = f"i={i}, j={j}, i'={ip}, j'={jp}"
            pred_a = jp >= j + 1 + _floor_log(p, i, ip)
            report.check(P.is_trivial() == pred_a, f"part (a) fails at {tag}")
            e = _exact_log(p, i, ip)
            pred_b = e is not None and jp == j + e
            report.check((P == corner) == pred_b, f"part (b) fails at {tag}")
            pred_c = p ** jp * ip >= p ** j * i
            report.check((P <= corner) == pred_c, f"part (c) fails at {tag}")
    return report


def _corollary_point(p: int, n: int, i: int) -> Report:
    j = j_exponent(n, i, p)
    report = Report(f"U_{i}(Z/{p}^{j + 1})_({n},{p})")
    G = FiniteUTGroup(i, p, j)
    Z = zassenhaus_product(G, n, p)
    predicted = i in jump_set(n, p)
    report.check((Z == G.corner_subgroup(j)) == predicted,
                 f"corollary fails at n={n}, i={i}, j={j}: equality={not predicted}")
    return report


def verify_section6(p: int, i_max: int, j_max: int, n_max: int,
                    max_order: int = MAX_ORDER) -> Report:
    """Powers of lower central terms and the shape of U_(n,p), checked exhaustively."""
    report = Report(f"section6 p={p} i<={i_max} j<={j_max} n<={n_max}")
    tasks = []
    for i in range(1, i_max + 1):
        for j in range(0, j_max + 1):
            order = (p ** (j + 1)) ** (i * (i + 1) // 2)
            if order > max_order:
                report.skipped.append(f"powers i={i} j={j} (order {order})")
                continue
            tasks.append((_section6_point, (p, i, j)))
    for n in range(1, n_max + 1):
        for i in range(1, min(i_max, n) + 1):
            j = j_exponent(n, i, p)
            order = (p ** (j + 1)) ** (i * (i + 1) // 2)
            if order > max_order:
                report.skipped.append(f"corollary n={n} i={i} (order {order})")
                continue
            tasks.append((_corollary_point, (p, n, i)))
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(lambda t: t[0](*t[1]), tasks))
    for r in results:
        report.merge(r)
    return report


def verify_group_identities(G: FiniteUTGroup, n: int, p: int) -> Report:
    """Inductive vs product filtration, Shalev's formula, G_(np) inclusion, minimal vanishing."""
    report = Report(f"identities {G!r} n={n} p={p}")
    Z = zassenhaus_product(G, n, p)
    report.check(zassenhaus_inductive(G, n, p) == Z,
                 f"inductive and product definitions differ at n={n}")
    report.check(shalev_lhs(G, n, p) == commutator_subgroup(G.whole(), Z),
                 f"Shalev's formula fails at n={n}")
    target = frattini_like(G, n, p)
    if n >= 2:
        report.check(zassenhaus_product(G, n * p, p) <= target,
                     f"G_(np) inclusion fails at n={n}")
    J = jump_set(n, p)
    for i in range(1, n + 1):
        if i in J:
            continue
        lcs = lower_central(G, i)
        report.check(power_subgroup(lcs, p ** j_exponent(n, i, p)) <= target,
                     f"minimal-vanish inclusion fails at n={n}, i={i}")
    # filtration shape
    nxt = zassenhaus_product(G, n + 1, p)
    report.check(nxt <= Z, f"G_({n + 1}) is not inside G_({n})")
    report.check(commutator_subgroup(Z, Z) <= nxt and power_subgroup(Z, p) <= nxt,
                 f"G_({n})/G_({n + 1}) is not elementary abelian")
    report.check(Z.is_normal(), f"G_({n}) is not normal")
    return report


@lru_cache(maxsize=None)
def _binomial_valuation(p: int, jp: int, l: int) -> int:
    value = math.comb(p ** jp, l)
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


def binomial_conditions(p: int, j: int, jp: int, t: int) -> tuple[bool, bool, bool]:
    """The three conditions on (p, j, j', t); see ``binomial_equiv_check``."""
    if jp < 1 or not 1 <= t <= min(p ** jp, 500):
        raise ValueError(f"need j' >= 1 and 1 <= t <= min(p^j', 500), got j'={jp}, t={t}")
    a = all(_binomial_valuation(p, jp, l) >= j for l in range(1, t + 1))
    log_t = _floor_log(p, t, 1)
    b = _binomial_valuation(p, jp, p ** log_t) >= j
    c = jp >= j + log_t
    return a, b, c


def binomial_equiv_check(p: int, j: int, jp: int, t: int) -> bool:
    """True iff p^j | C(p^j', l) for all l <= t, for l = p^floor(log_p t), and j' >= j + floor(log_p t) agree."""
    a, b, c = binomial_conditions(p, j, jp, t)
    return a == b == c


def verify_binomial(primes: Sequence[int] = (2, 3, 5), j_max: int = 4, jp_max: int = 5,
                    t_cap: int = 200) -> Report:
    report = Report(f"binomial lemma p in {list(primes)}, j<={j_max}, j'<={jp_max}, t<={t_cap}")
    for p in primes:
        for j in range(0, j_max + 1):
            for jp in range(1, jp_max + 1):
                for t in range(1, min(p ** jp, t_cap) + 1):
                    report.check(binomial_equiv_check(p, j, jp, t),
                                 f"conditions disagree at p={p}, j={j}, j'={jp}, t={t}")
    return report
