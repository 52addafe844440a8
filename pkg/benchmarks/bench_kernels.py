"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import timeit

import numpy as np

from groupsquares import kernels
from groupsquares.width import builtin_group


def _gens(name):
    return np.array([g.images for g in builtin_group(name)], dtype=np.uint8)


def cases(backend):
    m12, m22 = _gens("M12"), _gens("M22")
    elems = backend.closure(m12, 10**6)
    rng = np.random.default_rng(0)
    queries = elems[rng.integers(0, len(elems), 10**5)]
    index = backend.ElementIndex(elems)
    return {
        "closure M12 (95040)": lambda: backend.closure(m12, 10**6),
        "closure M22 (443520)": lambda: backend.closure(m22, 10**6),
        "index build M12": lambda: backend.ElementIndex(elems),
        "lookup 1e5 rows": lambda: index.lookup(queries),
        "all_permutations(9)": lambda: backend.all_permutations(9),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    results = {}
    for name, backend in kernels.available_backends().items():
        for label, fn in cases(backend).items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results.setdefault(label, {})[name] = best
    if args.json:
        print(json.dumps(results, indent=2))
        return
    names = list(kernels.available_backends())
    print(f"{'case':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, row in results.items():
        line = f"{label:<24}" + "".join(f"{row[n]:>11.3f}s" for n in names)
        if "cython" in row:
            line += f"{row['python'] / row['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
