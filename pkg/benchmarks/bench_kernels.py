"""Compare the compiled and pure-Python integer kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Workloads are the matrices the package actually feeds the kernels (cocycle
systems of G-lattices) plus random sparse matrices with entries in {-1, 0, 1}.
Dense random matrices with large entries overflow int64 during elimination;
the compiled kernel then hands the call to Python, which the "fallback"
column reports.  The last rows time end-to-end resolutions.
"""
import argparse
import random
import statistics
import sys
import time

from flasque import _kernels_py, augmentation_kernel, coflasque_resolution, direct_sum, group_ring, klein_four
from flasque import symmetric_group, tensor, trivial_lattice
from flasque.cohomology import cocycle_matrix
from flasque.intmat import IntMatrix, available_backends, use_backend

try:
    from flasque import _kernels_c
except ImportError:
    _kernels_c = None


def sparse_matrix(rng, m, n, density):
    return IntMatrix([[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)], n)


def dense_matrix(rng, m, n, bound):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], n)


def median_time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def kernel_row(label, a, repeat):
    rows = a.tolist()
    out = []
    for name, call in (("row_hnf", lambda k: k.row_hnf(rows, a.ncols, True)),
                       ("smith", lambda k: k.smith_invariants(rows, a.ncols))):
        ref = call(_kernels_py)
        try:
            if call(_kernels_c) != ref:
                raise SystemExit(f"backends disagree on {name} for {label}")
            tc = median_time(lambda: call(_kernels_c), repeat)
            fallback = "no"
        except OverflowError:
            tc = None
            fallback = "yes"
        tp = median_time(lambda: call(_kernels_py), repeat)
        tc_s = f"{tc * 1e3:>13.2f}" if tc is not None else f"{'-':>13}"
        speed = f"{tp / tc:>8.1f}x" if tc else f"{'-':>9}"
        out.append(f"{name + ' ' + label:<34}{tp * 1e3:>12.2f}{tc_s}{speed}{fallback:>10}")
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if "compiled" not in available_backends():
        print("compiled kernel not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    g, s3 = klein_four(), symmetric_group(3)
    ig, _ = augmentation_kernel(g)
    cases = [
        ("Z1 eqs V4 I_G (x) I_G", cocycle_matrix(g.whole, tensor(ig, ig))),
        ("Z1 eqs S3 Z[S3] + Z", cocycle_matrix(s3.whole, direct_sum(group_ring(s3), trivial_lattice(s3)))),
        ("sparse 40x60", sparse_matrix(rng, 40, 60, 0.1)),
        ("sparse 80x120", sparse_matrix(rng, 80, 120, 0.05)),
        ("dense 12x18 |a|<=20", dense_matrix(rng, 12, 18, 20)),
    ]
    print(f"{'kernel workload':<34}{'python ms':>12}{'compiled ms':>13}{'speedup':>9}{'fallback':>10}")
    for label, a in cases:
        for line in kernel_row(f"{label} {a.nrows}x{a.ncols}", a, args.repeat):
            print(line)

    print()
    print(f"{'end-to-end':<34}{'python ms':>12}{'compiled ms':>13}{'speedup':>9}")
    for label, m in (("resolution of Z[S3] + Z", direct_sum(group_ring(s3), trivial_lattice(s3))),
                     ("resolution of I_G (x) I_G, V4", tensor(ig, ig))):
        with use_backend("python"):
            tp = median_time(lambda: coflasque_resolution(m), 1)
        with use_backend("compiled"):
            tc = median_time(lambda: coflasque_resolution(m), 1)
        print(f"{label:<34}{tp * 1e3:>12.1f}{tc * 1e3:>13.1f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
