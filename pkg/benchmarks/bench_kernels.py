"""Compare the numba-compiled enumeration kernels with the plain-Python path.

Each mode runs in its own interpreter because the kernel implementation is
chosen at import time from COMBPFAFF_DISABLE_NUMBA.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from combpfaff import _kernels
from combpfaff.flows import _KernelInput
from combpfaff.graphio import load_fixture
from combpfaff.groves import _edge_arrays

repeat = int(sys.argv[1])
out = {"numba": _kernels.USING_NUMBA}

g = load_fixture("fig6-grove")
eu, ev = _edge_arrays(g, 25)
label = np.full(len(g.vertices), -1, dtype=np.int64)
for pid, v in enumerate(g.boundary):
    label[g.index[v]] = pid
need = len(g.vertices) - len(g.boundary)

net = load_fixture("fig9-network")
kin = _KernelInput(net, 21)

def grove():
    return len(_kernels.grove_masks(len(g.vertices), eu, ev, label, need))

def flow():
    return len(kin.run(0, 0)[0])

for name, fn in (("grove fig6 singleton partition", grove), ("flow fig9 all flows", flow)):
    t0 = time.perf_counter()
    count = fn()
    first = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = {"count": count, "first_call": first, "best": best}
print(json.dumps(out))
"""


def run(disable, repeat):
    env = dict(os.environ)
    env["COMBPFAFF_DISABLE_NUMBA"] = "1" if disable else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    t0 = time.perf_counter()
    jit = run(False, args.repeat)
    pure = run(True, args.repeat)
    if not jit["numba"]:
        print("numba is not importable; both runs used the pure path")
    print(f"{'workload':34s} {'count':>8s} {'pure s':>9s} {'numba s':>9s} {'jit 1st':>9s} {'speedup':>8s}")
    for name in (k for k in jit if k != "numba"):
        a, b = pure[name], jit[name]
        assert a["count"] == b["count"], name
        print(f"{name:34s} {a['count']:8d} {a['best']:9.4f} {b['best']:9.4f} {b['first_call']:9.3f} "
              f"{a['best'] / b['best']:7.1f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
