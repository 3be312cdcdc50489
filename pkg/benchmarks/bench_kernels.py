"""Compare the compiled and pure-Python minor kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs a full TP_r scan (no negative minor, so every minor is
visited) or a batch of determinants, and reports the best of ``--repeat``.
"""
import argparse
import random
import timeit
from math import comb

from rtp import _pykernels

try:
    from rtp import _ckernels
except ImportError:
    _ckernels = None


def pascal(n):
    return [[comb(i, j) for j in range(n)] for i in range(n)]


def eulerian(n):
    E = [[0] * n for _ in range(n)]
    E[0][0] = 1
    for i in range(1, n):
        for k in range(1, i + 1):
            E[i][k] = k * E[i - 1][k] + (i - k + 1) * E[i - 1][k - 1]
    return E


def workloads():
    rng = random.Random(1)
    dets = [[[rng.randint(-50, 50) for _ in range(6)] for _ in range(6)] for _ in range(500)]
    return [
        ("pascal 12x12 TP4 scan", lambda k: k.first_negative_minor(pascal(12), 4)),
        ("eulerian 10x10 TP5 scan", lambda k: k.first_negative_minor(eulerian(10), 5)),
        ("500 random 6x6 dets", lambda k: [k.det_int(m) for m in dets]),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'workload':28s} " + " ".join(f"{n:>12s}" for n, _ in backends) + "   speedup")
    for name, fn in workloads():
        times = []
        results = []
        for _, mod in backends:
            results.append(fn(mod))
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else "      n/a"
        print(f"{name:28s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f" {speed}")
    if _ckernels is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
