"""Pure-Python structure-constant multiply; reference twin of ``_ringcore.pyx``.

A product table for a basis of size ``n`` is stored in CSR form: the
normal form of ``basis[i] * basis[j]`` is the list of pairs
``(idx[t], coef[t])`` for ``t`` in ``range(start[i*n + j], start[i*n + j + 1])``.
"""

from __future__ import annotations


def mul_dense(a, b, start, idx, coef, size):
    """Return the integer numerator vector of ``a * b`` in the basis."""
    acc = [0] * size
    nzb = [(j, bj) for j, bj in enumerate(b) if bj]
    if not nzb:
        return acc
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = i * size
        for j, bj in nzb:
            s = start[row + j]
            e = start[row + j + 1]
            if s == e:
                continue
            p = ai * bj
            for t in range(s, e):
                acc[idx[t]] += p * coef[t]
    return acc


def scale_add(a, ka, b, kb):
    """Return ``ka*a + kb*b`` elementwise."""
    return [ka * x + kb * y for x, y in zip(a, b)]
