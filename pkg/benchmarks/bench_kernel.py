"""Compiled vs pure-Python ring kernel.

Times the raw structure-constant multiply on a few ring sizes, then whole
genus computations with each backend selected. Usage::

    python benchmarks/bench_kernel.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from witten_gci import LineBundleSum, bott_tower, kernel, projective_product, witten_of_gci


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def _random_dense(M, rng, bits):
    return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(M.rank)]


def kernel_rows(repeat):
    models = [
        projective_product([2, 2, 2, 2]),
        projective_product([3, 3, 3]),
        bott_tower([(1, [])] + [(1, [[1] + [0] * (j - 1)]) for j in range(1, 7)], name="bott7"),
    ]
    rng = random.Random(0)
    for M in models:
        for bits in (20, 200):
            a, b = _random_dense(M, rng, bits), _random_dense(M, rng, bits)
            args = (M._start, M._idx, M._coef, M.rank)
            row = [M.name, str(M.rank), f"{bits}-bit"]
            for name in ("python", "compiled"):
                mod = kernel.BACKENDS.get(name)
                if mod is None:
                    row.append("n/a")
                    continue
                row.append(f"{1e6 * _best(lambda: mod.mul_dense(a, b, *args), repeat):9.1f}")
            yield row


def genus_rows(repeat):
    cases = [
        ("CP15, O(2)^4, q^5", projective_product([15]), [[2]] * 4, 5),
        ("CP3, O(4), q^12", projective_product([3]), [[4]], 12),
        ("CP3xCP3, O(2,0)+O(0,2), q^5", projective_product([3, 3]), [[2, 0], [0, 2]], 5),
        ("(CP2)^3, O(1,1,1)+O(2,2,2), q^3", projective_product([2, 2, 2]),
         [[1, 1, 1], [2, 2, 2]], 3),
        ("(CP2)^4, O(1,1,1,1)+O(2,2,2,2), q^6", projective_product([2, 2, 2, 2]),
         [[1, 1, 1, 1], [2, 2, 2, 2]], 6),
    ]
    for label, M, roots, Q in cases:
        V = LineBundleSum.of(roots)
        row = [label]
        for name in ("python", "compiled"):
            if name not in kernel.BACKENDS:
                row.append("n/a")
                continue
            with kernel.use_backend(name):
                row.append(f"{1e3 * _best(lambda: witten_of_gci(M, V, Q), repeat):8.1f}")
        yield row


def _table(header, rows):
    rows = [header] + list(rows)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"backends available: {sorted(kernel.BACKENDS)}; default {kernel.BACKEND}\n")
    print("single multiply (microseconds, best of repeats)")
    _table(["model", "rank", "entries", "python", "compiled"], kernel_rows(args.repeat))
    print("\nWitten genus of the intersection (milliseconds, best of repeats)")
    _table(["case", "python", "compiled"], genus_rows(args.repeat))


if __name__ == "__main__":
    main()
