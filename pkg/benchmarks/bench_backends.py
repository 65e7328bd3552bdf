"""Compare the numba kernels with their pure-numpy twins.

    python3 benchmarks/bench_backends.py [--n 5 9 11] [--corpus 2000]

Both backends are imported directly, so the GRAPHDECODE_DISABLE_NUMBA flag
does not matter here. Outputs are checked for equality before timing.
"""

import argparse
import time

import numpy as np

from graphdecode import _kernels_numba as nbk
from graphdecode import _kernels_numpy as npk
from graphdecode import build_code, cycle_graph
from graphdecode.decoder import hierarchical_table
from graphdecode.harness import sample_syndrome_corpus
from graphdecode.noise import depolarizing


def best_of(fn, repeat=3):
    fn()  # warm-up / JIT
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(code, corpus):
    masks = np.array([s.mask for s in corpus], dtype=np.int64)
    xbar = np.int64(code.logical_x.z)
    cx, cz, _ = hierarchical_table(code)
    syn = nbk.syndrome_masks(cx, cz, code.gen_x, code.gen_z)
    fc = (code.gen_x, code.gen_z, code.n, cx, cz, syn, xbar, np.int64(code.logical_z.x), np.int64(code.logical_z.z))
    ex = np.random.default_rng(0).integers(0, 1 << code.n, 100_000)
    return {
        "syndrome_masks": lambda k: k.syndrome_masks(ex, ex[::-1].copy(), code.gen_x, code.gen_z),
        "hierarchical_batch": lambda k: k.hierarchical_batch(code.adjacency, masks, xbar, code.n, -1),
        "mld_batch": lambda k: k.mld_batch(code.gen_x, code.gen_z, code.n, masks),
        "failure_counts": lambda k: k.failure_counts(*fc),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 9, 11])
    ap.add_argument("--corpus", type=int, default=2000)
    ap.add_argument("--skip-exact", action="store_true", help="skip failure_counts (4^n enumeration)")
    args = ap.parse_args()
    print(f"{'n':>3} {'kernel':<20} {'numba s':>10} {'numpy s':>10} {'ratio':>8}")
    for n in args.n:
        code = build_code(cycle_graph(n), range(1, n + 1))
        corpus = sample_syndrome_corpus(code, depolarizing(0.05), args.corpus, seed=1)
        for name, call in cases(code, corpus).items():
            if name == "failure_counts" and args.skip_exact:
                continue
            a, b = call(nbk), call(npk)
            a, b = (a,) if not isinstance(a, tuple) else a, (b,) if not isinstance(b, tuple) else b
            assert all(np.array_equal(u, v) for u, v in zip(a, b)), f"{name} outputs differ at n={n}"
            t_nb = best_of(lambda: call(nbk))
            t_np = best_of(lambda: call(npk), repeat=1)
            print(f"{n:>3} {name:<20} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
