"""Compare the compiled and pure-Python occurrence-counting kernels.

    python benchmarks/bench_kernel.py [--size-mb 4] [--anchors 200] [--repeat 5]
"""

from __future__ import annotations

import argparse
import random
import timeit

from docdrift import _pykernel

try:
    from docdrift import _ckernel
except ImportError:
    _ckernel = None


def synthetic_source(size: int, vocab: list[str], rng: random.Random) -> bytes:
    seps = [" ", "(", ")", ".", ", ", "\n", " = ", "_"]
    out, n = [], 0
    while n < size:
        tok = rng.choice(vocab) + rng.choice(seps)
        out.append(tok)
        n += len(tok)
    return "".join(out).encode()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size-mb", type=float, default=4.0)
    ap.add_argument("--anchors", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    vocab = [f"name{i}" for i in range(2000)] + [f"obj{i}.attr{i}" for i in range(200)]
    data = synthetic_source(int(args.size_mb * 2**20), vocab, rng)
    anchors = [a.encode() for a in rng.sample(vocab, args.anchors)]

    kernels = {"python": _pykernel}
    if _ckernel is not None:
        kernels["cython"] = _ckernel
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {name: k.count_anchors(data, anchors) for name, k in kernels.items()}
    if len({tuple(r) for r in results.values()}) != 1:
        raise SystemExit("kernels disagree")

    print(f"{len(data) / 2**20:.1f} MiB, {len(anchors)} anchors, best of {args.repeat}")
    timings = {}
    for name, k in kernels.items():
        best = min(timeit.repeat(lambda: k.count_anchors(data, anchors), number=1, repeat=args.repeat))
        timings[name] = best
        print(f"{name:>7}: {best * 1000:9.1f} ms  ({len(data) * len(anchors) / best / 2**30:.2f} GiB/s scanned)")
    if len(timings) == 2:
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()
