# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled structure-constant multiply for the truncated cohomology ring.

Same contract as ``_ringcore_py``. Small operands are accumulated in C
``long long``; the bound check below guarantees no overflow, otherwise the
loop runs on Python integers.
"""

from libc.stdlib cimport calloc, free


cdef inline int _bits(list v):
    cdef int best = 0, b
    for x in v:
        if x:
            b = (<object>x).bit_length()
            if b > best:
                best = b
    return best


def mul_dense(list a, list b, const long long[::1] start, const int[::1] idx,
              const long long[::1] coef, Py_ssize_t size):
    cdef Py_ssize_t i, j, t, s, e, row, na = 0, nb = 0, k
    cdef long long p
    cdef long long *facc
    cdef long long *fa
    cdef long long *fb
    cdef Py_ssize_t *ia
    cdef Py_ssize_t *ib
    cdef int cbits = 0, bits
    cdef long long c
    cdef list acc

    for t in range(coef.shape[0]):
        c = coef[t] if coef[t] >= 0 else -coef[t]
        bits = 0
        while c:
            bits += 1
            c >>= 1
        if bits > cbits:
            cbits = bits

    ia = <Py_ssize_t *> calloc(size + 1, sizeof(Py_ssize_t))
    ib = <Py_ssize_t *> calloc(size + 1, sizeof(Py_ssize_t))
    try:
        for i in range(size):
            if a[i]:
                ia[na] = i
                na += 1
            if b[i]:
                ib[nb] = i
                nb += 1
        if na == 0 or nb == 0:
            return [0] * size

        k = na * nb
        bits = 0
        while k:
            bits += 1
            k >>= 1
        if _bits(a) + _bits(b) + cbits + bits <= 62:
            facc = <long long *> calloc(size, sizeof(long long))
            fa = <long long *> calloc(size, sizeof(long long))
            fb = <long long *> calloc(size, sizeof(long long))
            try:
                for i in range(size):
                    fa[i] = a[i]
                    fb[i] = b[i]
                for s in range(na):
                    i = ia[s]
                    row = i * size
                    for e in range(nb):
                        j = ib[e]
                        p = fa[i] * fb[j]
                        for t in range(start[row + j], start[row + j + 1]):
                            facc[idx[t]] += p * coef[t]
                return [facc[i] for i in range(size)]
            finally:
                free(facc)
                free(fa)
                free(fb)

        acc = [0] * size
        for s in range(na):
            i = ia[s]
            row = i * size
            ai = a[i]
            for e in range(nb):
                j = ib[e]
                if start[row + j] == start[row + j + 1]:
                    continue
                pobj = ai * b[j]
                for t in range(start[row + j], start[row + j + 1]):
                    acc[idx[t]] += pobj * coef[t]
        return acc
    finally:
        free(ia)
        free(ib)


def scale_add(list a, object ka, list b, object kb):
    cdef Py_ssize_t i, n = len(a)
    return [ka * a[i] + kb * b[i] for i in range(n)]
