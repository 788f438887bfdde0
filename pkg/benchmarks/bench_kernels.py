"""Compare the compiled and pure-Python kernel backends.

Times the two hot kernels (component labelling and per-component local
flags) on the tensor square of random connected windings, then the full
absolute-indecomposability decision under each backend.

    python3 benchmarks/bench_kernels.py --sizes 100 200 400 800 --repeat 5
"""

import argparse
import statistics
import time

from f1rep import kernels
from f1rep.covering import absolutely_indecomposable
from f1rep.fixtures import TWO_LOOPS
from f1rep.generate import random_connected_winding
from f1rep.tensor import tensor


def median_seconds(fn, repeat):
    fn()  # warm-up
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def kernel_jobs(w):
    t = tensor(w, w)
    li, ri = w.color_index, w.color_index
    n = t.n_vertices

    def label(backend):
        return lambda: kernels.label_components(n, t.src, t.tgt, backend=backend)

    def flags(backend):
        return lambda: kernels.component_flags(
            t.pi1, t.pi2, t.comp, t.ncomp, li.out_mask, li.in_mask, ri.out_mask, ri.in_mask,
            w.n_colors, backend=backend,
        )

    return {"label_components": label, "component_flags": flags}


def end_to_end(w, backend):
    def job():
        previous = kernels.use_backend(backend)
        try:
            absolutely_indecomposable(w)
        finally:
            kernels.use_backend(previous)

    return job


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is timed")
    header = f"{'arrows':>7}  {'job':<18}" + "".join(f"{b + ' ms':>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for m in args.sizes:
        w = random_connected_winding(TWO_LOOPS, m, seed=args.seed + m)
        jobs = kernel_jobs(w)
        jobs["absindec"] = lambda b: end_to_end(w, b)
        for name, make in jobs.items():
            times = [median_seconds(make(b), args.repeat) for b in backends]
            row = f"{m:>7}  {name:<18}" + "".join(f"{t * 1000:>12.3f}" for t in times)
            if len(times) == 2:
                row += f"{times[1] / times[0]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
