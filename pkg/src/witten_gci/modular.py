"""Level-one Eisenstein series and exact fits in ``Q[E4, E6]``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy


def eisenstein(weight: int, Q: int) -> tuple[Fraction, ...]:
    """``E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`` up to ``q^Q``."""
    if weight not in (4, 6):
        raise ValueError(f"only weights 4 and 6 are provided, got {weight}")
    b = sympy.bernoulli(weight)
    factor = Fraction(-2 * weight) / Fraction(int(b.p), int(b.q))
    out = [Fraction(1)]
    for n in range(1, Q + 1):
        out.append(factor * int(sympy.divisor_sigma(n, weight - 1)))
    return tuple(out)


def _mul(a, b, Q):
    out = [Fraction(0)] * (Q + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(Q + 1 - i):
                out[i + j] += x * b[j]
    return out


def monomial_basis(weight: int) -> list[tuple[int, int]]:
    return [(a, (weight - 4 * a) // 6) for a in range(weight // 4 + 1) if (weight - 4 * a) % 6 == 0]


def modular_fit(series: Sequence, weight: int) -> dict[tuple[int, int], Fraction] | None:
    """Express ``series`` as ``sum c_ab E4^a E6^b`` with ``4a + 6b = weight``.

    Returns the coefficients keyed by ``(a, b)`` (all of them, zeros
    included), or ``None`` when the exact linear system is inconsistent.
    """
    if weight < 0 or weight % 2:
        raise ValueError(f"weight must be even and >= 0, got {weight}")
    series = [Fraction(c) for c in series]
    Q = len(series) - 1
    monos = monomial_basis(weight)
    if Q + 1 <= len(monos):
        raise ValueError(
            f"q-order {Q} too small to determine a weight-{weight} form ({len(monos)} unknowns)"
        )
    if not monos:
        return {} if not any(series) else None
    e4, e6 = eisenstein(4, Q), eisenstein(6, Q)
    columns = []
    for a, b in monos:
        col = [Fraction(1)] + [Fraction(0)] * Q
        for _ in range(a):
            col = _mul(col, e4, Q)
        for _ in range(b):
            col = _mul(col, e6, Q)
        columns.append(col)
    A = sympy.Matrix(Q + 1, len(monos), lambda i, j: sympy.Rational(columns[j][i].numerator, columns[j][i].denominator))
    rhs = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in series])
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    # the columns have distinct leading structure, so the solution is unique
    sol = sol.subs({p: 0 for p in params})
    return {m: Fraction(int(v.p), int(v.q)) for m, v in zip(monos, sol)}
