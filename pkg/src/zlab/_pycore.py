"""Pure-Python kernels; the reference the compiled core is checked against.

Elements of U_i(Z/q) are packed into integers: the above-diagonal entries are
listed diagonal by diagonal (first superdiagonal first, top row first inside
a diagonal) and read as base-q digits.  The identity is code 0 and the
(1, i+1) corner is the most significant digit.
"""
from __future__ import annotations

from typing import Iterable, Sequence


class UTKernel:
    def __init__(self, size: int, q: int):
        if size < 1 or q < 2:
            raise ValueError("need size >= 1 and modulus >= 2")
        self.size = size
        self.q = q
        self.positions = [(r, r + d) for d in range(1, size) for r in range(size - d)]
        self.ndigits = len(self.positions)
        self.order = q ** self.ndigits
        self._index = {rc: k for k, rc in enumerate(self.positions)}

    # packing

    def decode(self, code: int) -> list[list[int]]:
        s, q = self.size, self.q
        mat = [[int(r == c) for c in range(s)] for r in range(s)]
        for r, c in self.positions:
            code, mat[r][c] = divmod(code, q)
        return mat

    def encode(self, mat: Sequence[Sequence[int]]) -> int:
        code = 0
        for r, c in reversed(self.positions):
            code = code * self.q + mat[r][c] % self.q
        return code

    # group law

    def _mul_mat(self, a, b):
        s, q = self.size, self.q
        out = [[int(r == c) for c in range(s)] for r in range(s)]
        for r in range(s):
            ar = a[r]
            for c in range(r + 1, s):
                acc = ar[c] + b[r][c]
                for k in range(r + 1, c):
                    acc += ar[k] * b[k][c]
                out[r][c] = acc % q
        return out

    def _inv_mat(self, a):
        s, q = self.size, self.q
        x = [[int(r == c) for c in range(s)] for r in range(s)]
        for r, c in self.positions:
            acc = a[r][c]
            for k in range(r + 1, c):
                acc += a[r][k] * x[k][c]
            x[r][c] = (-acc) % q
        return x

    def mul(self, a: int, b: int) -> int:
        return self.encode(self._mul_mat(self.decode(a), self.decode(b)))

    def inv(self, a: int) -> int:
        return self.encode(self._inv_mat(self.decode(a)))

    def _pow_mat(self, a, e: int):
        result = self.decode(0)
        while e:
            if e & 1:
                result = self._mul_mat(result, a)
            e >>= 1
            if e:
                a = self._mul_mat(a, a)
        return result

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        return self.encode(self._pow_mat(self.decode(a), e))

    def commutator(self, a: int, b: int) -> int:
        """``a^-1 b^-1 a b``."""
        ma, mb = self.decode(a), self.decode(b)
        t = self._mul_mat(self._inv_mat(ma), self._inv_mat(mb))
        return self.encode(self._mul_mat(self._mul_mat(t, ma), mb))

    # subgroup machinery

    def closure(self, gens: Iterable[int]) -> tuple[list[int], list[int]]:
        """Subgroup generated by ``gens``: (sorted elements, generators actually used)."""
        members = {0}
        elems = [0]
        used: list[int] = []
        used_mats: list = []
        for g in gens:
            g = int(g)
            if g in members:
                continue
            used.append(g)
            used_mats.append(self.decode(g))
            k = 0
            while k < len(elems):
                x = self.decode(elems[k])
                for h in used_mats:
                    y = self.encode(self._mul_mat(x, h))
                    if y not in members:
                        members.add(y)
                        elems.append(y)
                k += 1
        return sorted(elems), used

    def commutators(self, A: Iterable[int], B: Iterable[int]) -> list[int]:
        """Distinct values of ``[a, b]`` over all pairs."""
        ma = [(self.decode(a), self._inv_mat(self.decode(a))) for a in A]
        mb = [(self.decode(b), self._inv_mat(self.decode(b))) for b in B]
        found = set()
        for a, ai in ma:
            for b, bi in mb:
                t = self._mul_mat(self._mul_mat(self._mul_mat(ai, bi), a), b)
                found.add(self.encode(t))
        return sorted(found)

    def powers(self, A: Iterable[int], e: int) -> list[int]:
        return sorted({self.pow(int(a), e) for a in A})

    def is_normalized_by(self, H: Iterable[int], gens: Iterable[int]) -> bool:
        members = set(int(h) for h in H)
        for g in gens:
            mg = self.decode(int(g))
            mgi = self._inv_mat(mg)
            for h in members:
                if self.encode(self._mul_mat(self._mul_mat(mgi, self.decode(h)), mg)) not in members:
                    return False
        return True

    def is_closed(self, H: Iterable[int], gens: Iterable[int]) -> bool:
        members = set(int(h) for h in H)
        if 0 not in members:
            return False
        mats = [self.decode(int(g)) for g in gens]
        for h in members:
            mh = self.decode(h)
            for mg in mats:
                if self.encode(self._mul_mat(mh, mg)) not in members:
                    return False
        return True


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p; pivots on the leftmost available column."""
    mat = [[int(x) % p for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for r in range(rank + 1, len(mat)):
            f = mat[r][c]
            if f:
                row = mat[r]
                mat[r] = [(x - f * y) % p for x, y in zip(row, prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank
