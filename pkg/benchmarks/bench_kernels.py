"""Time the compiled and pure-Python Monte Carlo kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--trials 20000] [--repeat 3]

Both backends draw from the same counter-based stream, so their outputs
must match exactly; the script checks that before reporting speedups.
"""

import argparse
import sys
import time

from uncertain_linear.oracle import Universe, available_backends, detector_sim, mc_independence


def best_of(repeat, fn):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20_000, help="independence trials")
    ap.add_argument("--detector-trials", type=int, default=200)
    ap.add_argument("--ticks", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)

    jobs = {
        f"independence ({args.trials} trials)": lambda b: mc_independence(
            20, 0.5, 10, 0.3, Universe(100), args.trials, args.seed, backend=b),
        f"detector ({args.detector_trials} x {args.ticks} ticks)": lambda b: detector_sim(
            0.7, 0.8, args.ticks, args.detector_trials, args.seed, backend=b),
    }
    print(f"{'kernel':<36}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for label, job in jobs.items():
        timed = {b: best_of(args.repeat, lambda b=b: job(b)) for b in backends}
        results = {r for _, r in timed.values()}
        if len(results) != 1:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        row = f"{label:<36}" + "".join(f"{timed[b][0]:>11.3f}s" for b in backends)
        if "compiled" in timed:
            row += f"{timed['python'][0] / timed['compiled'][0]:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
