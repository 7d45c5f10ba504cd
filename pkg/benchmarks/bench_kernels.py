"""Compare the Cython and numpy propagation kernels.

Times the raw ``phase_sum`` kernel on Rabi-grid-sized inputs and a full
``simulate_rabi_grid`` call with each backend swapped in, and checks that the
two backends agree.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from hbar_dicke import _fallback, kernels, load_fixture
from hbar_dicke.dynamics import simulate_rabi_grid

try:
    from hbar_dicke import _kernels
except ImportError:
    _kernels = None


def best_of(func, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(impl, w, r, t, repeat):
    return best_of(lambda: impl.phase_sum(w, r, t), repeat), impl.phase_sum(w, r, t)


def bench_grid(impl, cluster, repeat, threads):
    saved = kernels._impl
    kernels._impl = impl
    try:
        run = lambda: simulate_rabi_grid(cluster, 4.772, 4.786, 81, 1.0, 201, threads=threads)  # noqa: E731
        return best_of(run, repeat), run().p_excited
    finally:
        kernels._impl = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    backends = {"python": _fallback}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("cython extension not built; timing the numpy fallback only")

    rng = np.random.default_rng(0)
    print(f"{'workload':34s}" + "".join(f"{name:>12s}" for name in backends) + "     speedup")
    for n_rates, n_times in ((3, 201), (4, 201), (4, 20001), (9, 100001)):
        w = rng.normal(size=n_rates) + 1j * rng.normal(size=n_rates)
        r = rng.normal(scale=50.0, size=n_rates)
        t = np.linspace(0.0, 1.0, n_times)
        times, results = {}, {}
        for name, impl in backends.items():
            times[name], results[name] = bench_kernel(impl, w, r, t, args.repeat)
        report(f"phase_sum {n_rates} rates x {n_times} times", times, results)

    cluster = load_fixture("device_B.json").cluster("S3_1")
    times, results = {}, {}
    for name, impl in backends.items():
        times[name], results[name] = bench_grid(impl, cluster, args.repeat, args.threads)
    report(f"rabi grid S3_1 81x201, {args.threads} thread(s)", times, results)


def report(label, times, results):
    line = f"{label:34s}" + "".join(f"{1e3 * t:10.3f}ms" for t in times.values())
    if "cython" in times:
        line += f"  {times['python'] / times['cython']:8.2f}x"
        diff = np.max(np.abs(results["python"] - results["cython"]))
        line += f"  (max diff {diff:.1e})"
    print(line)


if __name__ == "__main__":
    main()
