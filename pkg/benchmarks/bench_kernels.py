"""Compare the compiled and pure-Python segment contact kernels.

Run: python3 benchmarks/bench_kernels.py [--segments N] [--repeat R]
"""

import argparse
import random
import time

from chordknots import _kernels_py, kernels
from chordknots.encode import NAMED_GRIDS, encode, parse_grid
from chordknots.realize import realize_word


def random_segments(n: int, seed: int, span: int = 1000):
    rng = random.Random(seed)
    x1, y1, x2, y2 = [], [], [], []
    for _ in range(n):
        x, y = rng.randrange(span), rng.randrange(span)
        if rng.random() < 0.5:
            x1.append(x), y1.append(y), x2.append(x + rng.randrange(1, 60)), y2.append(y)
        else:
            x1.append(x), y1.append(y), x2.append(x), y2.append(y + rng.randrange(1, 60))
    return x1, y1, x2, y2


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--segments", type=int, default=4000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    segs = random_segments(args.segments, 0)
    py = best_of(lambda: _kernels_py.segment_contacts(*segs), args.repeat)
    print(f"backend in use: {kernels.BACKEND}")
    print(f"pure python : {py * 1e3:9.2f} ms for {args.segments} segments")
    if kernels.BACKEND == "cython":
        from chordknots import _kernels_c

        assert _kernels_c.segment_contacts(*segs) == _kernels_py.segment_contacts(*segs)
        c = best_of(lambda: _kernels_c.segment_contacts(*segs), args.repeat)
        print(f"cython      : {c * 1e3:9.2f} ms  (speedup {py / c:.1f}x)")
    t = best_of(lambda: realize_word("[1 [2 x1 X2 x1 ]1+ x2 [3 X1 ]2- x3 ]3+"), args.repeat)
    print(f"realize_word (12 tokens): {t * 1e3:.2f} ms")
    P = parse_grid(NAMED_GRIDS["figure_eight"])
    t = best_of(lambda: encode(P), args.repeat)
    print(f"encode figure-eight grid: {t * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
