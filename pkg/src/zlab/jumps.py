"""Integer bookkeeping for the p-Zassenhaus filtration: j_n(i) and the jump set J(n)."""
from __future__ import annotations


def j_exponent(n: int, i: int, p: int) -> int:
    """Least j >= 0 with i * p**j >= n."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    j, reach = 0, i
    while reach < n:
        reach *= p
        j += 1
    return j


def jump_set(n: int, p: int) -> list[int]:
    """Sorted values of ceil(n / p**k) for k >= 0; always contains 1 and n."""
    if n < 1:
        raise ValueError("n must be positive")
    found = {1}
    pk = 1
    while pk <= n:
        found.add(-(-n // pk))
        pk *= p
    return sorted(found)


def jump_condition(n: int, p: int) -> list[int]:
    """Those 1 <= i <= n with i' p^j_n(i') >= i p^j_n(i) for every i' <= i."""
    reach = [0] + [i * p ** j_exponent(n, i, p) for i in range(1, n + 1)]
    return [i for i in range(1, n + 1) if min(reach[1:i + 1]) >= reach[i]]


def jump_set_equivalence(n: int, p: int) -> bool:
    if n > 10 ** 4:
        raise ValueError("n too large for the brute-force comparison")
    return jump_condition(n, p) == jump_set(n, p)
