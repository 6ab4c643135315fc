# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same interface and packing as ``zlab._pycore``."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()

cdef enum:
    MAXS = 8
    MAXD = 28


cdef class UTKernel:
    cdef public int size
    cdef public long long q
    cdef public int ndigits
    cdef public long long order
    cdef int rows[MAXD]
    cdef int cols[MAXD]
    cdef int idx[MAXS][MAXS]

    def __init__(self, int size, long long q):
        cdef int d, r, k = 0
        if size < 1 or q < 2:
            raise ValueError("need size >= 1 and modulus >= 2")
        if size > MAXS:
            raise ValueError(f"compiled kernel supports matrices up to {MAXS}x{MAXS}")
        self.size = size
        self.q = q
        for r in range(MAXS):
            for d in range(MAXS):
                self.idx[r][d] = -1
        for d in range(1, size):
            for r in range(size - d):
                self.rows[k] = r
                self.cols[k] = r + d
                self.idx[r][r + d] = k
                k += 1
        self.ndigits = k
        self.order = 1
        for d in range(k):
            if self.order > (1LL << 62) // q:
                raise OverflowError("group order does not fit in 63 bits")
            self.order *= q

    @property
    def positions(self):
        return [(self.rows[k], self.cols[k]) for k in range(self.ndigits)]

    # packing (digit vectors, entries of the above-diagonal part)

    cdef inline void _decode(self, long long code, long long* out) noexcept nogil:
        cdef int k
        for k in range(self.ndigits):
            out[k] = code % self.q
            code = code // self.q

    cdef inline long long _encode(self, long long* e) noexcept nogil:
        cdef long long code = 0
        cdef int k
        for k in range(self.ndigits - 1, -1, -1):
            code = code * self.q + e[k]
        return code

    cdef inline void _mul(self, long long* a, long long* b, long long* out) noexcept nogil:
        cdef int k, t, r, c
        cdef long long acc
        for k in range(self.ndigits):
            r = self.rows[k]
            c = self.cols[k]
            acc = a[k] + b[k]
            for t in range(r + 1, c):
                acc += a[self.idx[r][t]] * b[self.idx[t][c]]
            out[k] = acc % self.q

    cdef inline void _inv(self, long long* a, long long* out) noexcept nogil:
        cdef int k, t, r, c
        cdef long long acc
        for k in range(self.ndigits):
            r = self.rows[k]
            c = self.cols[k]
            acc = a[k]
            for t in range(r + 1, c):
                acc += a[self.idx[r][t]] * out[self.idx[t][c]]
            acc = (-acc) % self.q
            out[k] = acc + self.q if acc < 0 else acc

    cdef void _pow(self, long long* a, long long e, long long* out) noexcept nogil:
        cdef long long base[MAXD]
        cdef long long tmp[MAXD]
        cdef int k
        for k in range(self.ndigits):
            base[k] = a[k]
            out[k] = 0
        while e:
            if e & 1:
                self._mul(out, base, tmp)
                for k in range(self.ndigits):
                    out[k] = tmp[k]
            e >>= 1
            if e:
                self._mul(base, base, tmp)
                for k in range(self.ndigits):
                    base[k] = tmp[k]

    # scalar interface

    def decode(self, long long code):
        cdef long long e[MAXD]
        self._decode(code, e)
        mat = [[int(r == c) for c in range(self.size)] for r in range(self.size)]
        for k in range(self.ndigits):
            mat[self.rows[k]][self.cols[k]] = e[k]
        return mat

    def encode(self, mat):
        cdef long long e[MAXD]
        for k in range(self.ndigits):
            e[k] = mat[self.rows[k]][self.cols[k]] % self.q
        return self._encode(e)

    def mul(self, long long a, long long b):
        cdef long long x[MAXD]
        cdef long long y[MAXD]
        cdef long long z[MAXD]
        self._decode(a, x)
        self._decode(b, y)
        self._mul(x, y, z)
        return self._encode(z)

    def inv(self, long long a):
        cdef long long x[MAXD]
        cdef long long z[MAXD]
        self._decode(a, x)
        self._inv(x, z)
        return self._encode(z)

    def pow(self, long long a, long long e):
        cdef long long x[MAXD]
        cdef long long z[MAXD]
        if e < 0:
            return self.pow(self.inv(a), -e)
        self._decode(a, x)
        self._pow(x, e, z)
        return self._encode(z)

    def commutator(self, long long a, long long b):
        cdef long long x[MAXD]
        cdef long long y[MAXD]
        cdef long long xi[MAXD]
        cdef long long yi[MAXD]
        cdef long long t[MAXD]
        cdef long long u[MAXD]
        self._decode(a, x)
        self._decode(b, y)
        self._inv(x, xi)
        self._inv(y, yi)
        self._mul(xi, yi, t)
        self._mul(t, x, u)
        self._mul(u, y, t)
        return self._encode(t)

    # bulk interface

    cdef unsigned char* _bitmap(self) except NULL:
        cdef unsigned char* bits = <unsigned char*> calloc(self.order, 1)
        if bits == NULL:
            raise MemoryError()
        return bits

    def closure(self, gens):
        """(sorted elements, generators actually used) of the generated subgroup."""
        cdef cnp.int64_t[:] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).ravel())
        cdef unsigned char* bits = self._bitmap()
        cdef long long* elems = <long long*> malloc(self.order * sizeof(long long))
        cdef long long* usedd = <long long*> malloc((g.shape[0] + 1) * MAXD * sizeof(long long))
        cdef long long x[MAXD]
        cdef long long y[MAXD]
        cdef long long n = 1, k, code
        cdef Py_ssize_t gi, nused = 0, h
        used = []
        if elems == NULL or usedd == NULL:
            free(bits); free(elems); free(usedd)
            raise MemoryError()
        try:
            elems[0] = 0
            bits[0] = 1
            for gi in range(g.shape[0]):
                code = g[gi]
                if code < 0 or code >= self.order:
                    raise ValueError(f"code {code} outside group")
                if bits[code]:
                    continue
                used.append(int(code))
                self._decode(code, usedd + nused * MAXD)
                nused += 1
                with nogil:
                    k = 0
                    while k < n:
                        self._decode(elems[k], x)
                        for h in range(nused):
                            self._mul(x, usedd + h * MAXD, y)
                            code = self._encode(y)
                            if not bits[code]:
                                bits[code] = 1
                                elems[n] = code
                                n += 1
                        k += 1
            out = np.empty(n, dtype=np.int64)
            for k in range(n):
                out[k] = elems[k]
            out.sort()
            return out, used
        finally:
            free(bits)
            free(elems)
            free(usedd)

    cdef long long* _decode_all(self, cnp.int64_t[:] codes, bint inverse) except NULL:
        cdef Py_ssize_t n = codes.shape[0], k
        cdef long long* buf = <long long*> malloc((n + 1) * MAXD * sizeof(long long))
        cdef long long tmp[MAXD]
        if buf == NULL:
            raise MemoryError()
        for k in range(n):
            if inverse:
                self._decode(codes[k], tmp)
                self._inv(tmp, buf + k * MAXD)
            else:
                self._decode(codes[k], buf + k * MAXD)
        return buf

    cdef object _collect(self, unsigned char* bits):
        cdef long long k, n = 0
        for k in range(self.order):
            n += bits[k]
        out = np.empty(n, dtype=np.int64)
        cdef cnp.int64_t[:] o = out
        n = 0
        for k in range(self.order):
            if bits[k]:
                o[n] = k
                n += 1
        return out

    def commutators(self, A, B):
        """Sorted distinct values of ``a^-1 b^-1 a b`` over all pairs."""
        cdef cnp.int64_t[:] a = np.ascontiguousarray(np.asarray(A, dtype=np.int64).ravel())
        cdef cnp.int64_t[:] b = np.ascontiguousarray(np.asarray(B, dtype=np.int64).ravel())
        cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], s, t
        cdef long long* ad = self._decode_all(a, False)
        cdef long long* ai = self._decode_all(a, True)
        cdef long long* bd = self._decode_all(b, False)
        cdef long long* bi = self._decode_all(b, True)
        cdef unsigned char* bits = self._bitmap()
        cdef long long t1[MAXD]
        cdef long long t2[MAXD]
        try:
            with nogil:
                for s in range(na):
                    for t in range(nb):
                        self._mul(ai + s * MAXD, bi + t * MAXD, t1)
                        self._mul(t1, ad + s * MAXD, t2)
                        self._mul(t2, bd + t * MAXD, t1)
                        bits[self._encode(t1)] = 1
            return self._collect(bits)
        finally:
            free(ad); free(ai); free(bd); free(bi); free(bits)

    def powers(self, A, long long e):
        cdef cnp.int64_t[:] a = np.ascontiguousarray(np.asarray(A, dtype=np.int64).ravel())
        cdef Py_ssize_t na = a.shape[0], s
        cdef unsigned char* bits = self._bitmap()
        cdef long long x[MAXD]
        cdef long long z[MAXD]
        if e < 0:
            free(bits)
            return self.powers([self.inv(int(v)) for v in A], -e)
        try:
            with nogil:
                for s in range(na):
                    self._decode(a[s], x)
                    self._pow(x, e, z)
                    bits[self._encode(z)] = 1
            return self._collect(bits)
        finally:
            free(bits)

    def is_normalized_by(self, H, gens):
        cdef cnp.int64_t[:] h = np.ascontiguousarray(np.asarray(H, dtype=np.int64).ravel())
        cdef cnp.int64_t[:] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).ravel())
        cdef unsigned char* bits = self._bitmap()
        cdef long long* gd = self._decode_all(g, False)
        cdef long long* gi = self._decode_all(g, True)
        cdef long long x[MAXD]
        cdef long long t1[MAXD]
        cdef long long t2[MAXD]
        cdef Py_ssize_t s, t
        cdef bint ok = True
        try:
            for s in range(h.shape[0]):
                bits[h[s]] = 1
            with nogil:
                for t in range(g.shape[0]):
                    for s in range(h.shape[0]):
                        self._decode(h[s], x)
                        self._mul(gi + t * MAXD, x, t1)
                        self._mul(t1, gd + t * MAXD, t2)
                        if not bits[self._encode(t2)]:
                            ok = False
                            break
                    if not ok:
                        break
            return ok
        finally:
            free(bits); free(gd); free(gi)

    def is_closed(self, H, gens):
        cdef cnp.int64_t[:] h = np.ascontiguousarray(np.asarray(H, dtype=np.int64).ravel())
        cdef cnp.int64_t[:] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).ravel())
        cdef unsigned char* bits = self._bitmap()
        cdef long long* gd = self._decode_all(g, False)
        cdef long long x[MAXD]
        cdef long long t1[MAXD]
        cdef Py_ssize_t s, t
        cdef bint ok = True
        try:
            for s in range(h.shape[0]):
                bits[h[s]] = 1
            if not bits[0]:
                return False
            with nogil:
                for s in range(h.shape[0]):
                    self._decode(h[s], x)
                    for t in range(g.shape[0]):
                        self._mul(x, gd + t * MAXD, t1)
                        if not bits[self._encode(t1)]:
                            ok = False
                            break
                    if not ok:
                        break
            return ok
        finally:
            free(bits); free(gd)


def rank_mod_p(rows, long long p):
    """Rank over F_p; pivots on the leftmost available column."""
    arr = np.array(rows, dtype=np.int64, ndmin=2)
    if arr.size == 0:
        return 0
    arr %= p
    cdef cnp.int64_t[:, :] a = arr
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1], r, c, k, piv
    cdef Py_ssize_t rank = 0
    cdef long long inv, f, tmp
    with nogil:
        for c in range(nc):
            if rank == nr:
                break
            piv = -1
            for r in range(rank, nr):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(nc):
                    tmp = a[rank, k]
                    a[rank, k] = a[piv, k]
                    a[piv, k] = tmp
            inv = _inverse_mod(a[rank, c], p)
            for k in range(c, nc):
                a[rank, k] = a[rank, k] * inv % p
            for r in range(rank + 1, nr):
                f = a[r, c]
                if f != 0:
                    for k in range(c, nc):
                        a[r, k] = (a[r, k] - f * a[rank, k]) % p
                        if a[r, k] < 0:
                            a[r, k] += p
            rank += 1
    return rank


cdef long long _inverse_mod(long long x, long long p) noexcept nogil:
    cdef long long t = 0, newt = 1, r = p, newr = x, qq, tmp
    while newr != 0:
        qq = r // newr
        tmp = t - qq * newt
        t = newt
        newt = tmp
        tmp = r - qq * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t
