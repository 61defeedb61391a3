"""Compiled vs numpy nearest-L1 kernel, alone and inside boundary training.

    python benchmarks/bench_kernels.py [--repeat 5] [--epochs 2]

The kernel rows time ``l1_nearest`` on shapes the generator loss produces
(batch x per-class pool x feature dim). The training rows run a short
``train_bal`` on a random 64-d bank once per backend in a subprocess, the
numpy one with ``BAL_PURE_PYTHON=1``.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from bal.kernels import BACKEND, l1_nearest_compiled, l1_nearest_numpy

SHAPES = [  # (queries, refs, dim)
    (13, 13, 64),      # one class of a 128 batch, batch pool
    (128, 600, 64),    # a whole batch against a reservoir pool
    (128, 6000, 64),   # against a full MNIST class
    (1000, 1000, 2),   # toy scale
]

TRAIN_SNIPPET = """
import time, numpy as np
from bal.data import FeatureBank
from bal.rdm import BalConfig, CondGan, train_bal
from bal.kernels import BACKEND
rng = np.random.default_rng(0)
bank = FeatureBank(rng.normal(size=(6000, 64)), rng.integers(0, 10, size=6000), 10)
cfg = BalConfig(epochs={epochs}, nn_pool="{pool}")
t0 = time.perf_counter()
train_bal(bank, CondGan.build(64, 10, seed=0), cfg, seed=0)
print(BACKEND, time.perf_counter() - t0)
"""


def bench_kernel(repeat: int):
    rng = np.random.default_rng(0)
    rows = []
    for nq, nr, m in SHAPES:
        q = rng.normal(size=(nq, m))
        r = rng.normal(size=(nr, m))
        t_np = min(timeit.repeat(lambda: l1_nearest_numpy(q, r), number=3, repeat=repeat)) / 3
        t_c = float("nan")
        if BACKEND == "cython":
            assert l1_nearest_compiled(q, r)[0].tobytes() == l1_nearest_numpy(q, r)[0].tobytes()
            t_c = min(timeit.repeat(lambda: l1_nearest_compiled(q, r), number=3, repeat=repeat)) / 3
        rows.append({"shape": f"{nq}x{nr}x{m}", "numpy_ms": 1e3 * t_np, "cython_ms": 1e3 * t_c,
                     "speedup": t_np / t_c})
    return rows


def bench_training(epochs: int, pool: str):
    out = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("BAL_PURE_PYTHON", None)
        if pure:
            env["BAL_PURE_PYTHON"] = "1"
        res = subprocess.run([sys.executable, "-c", TRAIN_SNIPPET.format(epochs=epochs, pool=pool)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--epochs", type=int, default=2)
    p.add_argument("--json", help="also write the results here")
    args = p.parse_args(argv)

    print(f"compiled kernel available: {BACKEND == 'cython'}")
    kernel = bench_kernel(args.repeat)
    print(f"{'shape':>14}  {'numpy ms':>9}  {'cython ms':>9}  {'speedup':>7}")
    for r in kernel:
        print(f"{r['shape']:>14}  {r['numpy_ms']:9.3f}  {r['cython_ms']:9.3f}  {r['speedup']:7.1f}")

    training = {}
    for pool in ("batch", "bank"):
        training[pool] = bench_training(args.epochs, pool)
        t = training[pool]
        print(f"train_bal {args.epochs} epochs, 6000x64 bank, nn_pool={pool}: "
              + "  ".join(f"{k} {v:.2f} s" for k, v in sorted(t.items())))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"kernel": kernel, "training": training}, fh, indent=2)


if __name__ == "__main__":
    main()
