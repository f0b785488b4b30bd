"""Time the Monte Carlo kernels under numba and pure numpy.

    python3 benchmarks/bench_kernels.py [--samples 32768] [--modes 16] [--repeat 5]

Each kernel is called once first so numba compilation is excluded.  The
end-to-end row runs a full estimate in a subprocess per backend, since the
backend is fixed at import time by TQM_NUMBA.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from tqm.montecarlo import _kernels


def kernel_rows(n, N, r, repeat):
    rng = np.random.default_rng(0)
    X, Y, P, Q = (rng.standard_normal((n, N, r)) for _ in range(4))
    w = 1 / (2 * np.pi * np.arange(1, N + 1))
    cc, cs = rng.standard_normal(N), rng.standard_normal(N)
    S, O = rng.standard_normal(n), rng.standard_normal(n)
    Z = np.zeros(n)
    coef = rng.standard_normal(10**6)
    calls = {
        "action_batch": lambda k: k["action_batch"](X, Y, P, Q, w),
        "field_batch": lambda k: k["field_batch"](X, Y, cc, cs, 0),
        "ratio_moments": lambda k: k["ratio_moments"](S, O, Z, 1.0),
        "sine_series(1e6)": lambda k: k["sine_series"](coef, 0.25),
    }
    backends = {"numpy": _kernels.numpy_kernels}
    if _kernels.numba_kernels:
        backends["numba"] = _kernels.numba_kernels
    for name, call in calls.items():
        row = {}
        for b, k in backends.items():
            call(k)
            row[b] = min(timeit.repeat(lambda: call(k), number=1, repeat=repeat))
        yield name, row


def end_to_end(samples):
    code = (
        "import time; from tqm.montecarlo import *;"
        f"cfg = MCConfig(16, 1.0, 1.0, {samples}, 1);"
        "estimate_correlator([('X', 1, 0.0), ('P', 1, 0.25)], MCConfig(16, 1.0, 1.0, 1000, 1));"
        "t = time.perf_counter(); e = estimate_correlator([('X', 1, 0.0), ('P', 1, 0.25)], cfg);"
        "print(time.perf_counter() - t)"
    )
    row = {}
    for flag, name in (("0", "numpy"), ("1", "numba")):
        env = dict(os.environ, TQM_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        row[name] = float(out.stdout)
    return row


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1 << 15)
    ap.add_argument("--modes", type=int, default=16)
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--e2e-samples", type=int, default=1_000_000)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = list(kernel_rows(args.samples, args.modes, args.rank, args.repeat))
    rows.append((f"estimate_correlator XP ({args.e2e_samples} samples)", end_to_end(args.e2e_samples)))
    if args.json:
        print(json.dumps({name: row for name, row in rows}, indent=2))
        return
    print(f"{'kernel':<44}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, row in rows:
        nb = row.get("numba", float("nan"))
        print(f"{name:<44}{row['numpy']:>12.5f}{nb:>12.5f}{row['numpy'] / nb:>10.2f}")


if __name__ == "__main__":
    main()
