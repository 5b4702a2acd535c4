"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Each backend runs in its own interpreter (the backend is fixed at import
time by ``RUNGE_KIT_PURE``); the workloads are the three hot loops.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "additive p2+p2=z^3, bound 3000": "search.additive_search(2, 2, 3, 3000)",
    "additive p2+p2=z^2, bound 3000": "search.additive_search(2, 2, 2, 3000)",
    "power sieve g_T, n=13, |x|<=2e5": "kernels.power_candidates(family.g_poly(13, (2, 3, 4, 5, 7, 9, 10, 12)), 2, -200000, 200000)",
    "square-free masks, n=14": "kernels.nonsquarefree_masks(14)",
}

CHILD = r"""
import json, sys, timeit
from runge_kit import family, kernels, search
out = {"backend": kernels.BACKEND}
for name, stmt in json.loads(sys.argv[1]).items():
    res = eval(stmt)
    t = min(timeit.repeat(lambda: eval(stmt), number=1, repeat=int(sys.argv[2])))
    out[name] = [t, len(res)]
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, RUNGE_KIT_PURE="1" if pure else "0")
    proc = subprocess.run(
        [sys.executable, "-c", CHILD, json.dumps(WORKLOADS), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "cython":
        print("warning: compiled extension not importable, both columns are pure Python")
    w = max(len(k) for k in WORKLOADS)
    print(f"{'workload':<{w}}  {'cython s':>9}  {'python s':>9}  {'speedup':>7}  results")
    for name in WORKLOADS:
        (tf, nf), (ts, ns) = fast[name], slow[name]
        same = "same" if nf == ns else f"DIFFER {nf} vs {ns}"
        print(f"{name:<{w}}  {tf:9.3f}  {ts:9.3f}  {ts / tf:6.1f}x  {same}")


if __name__ == "__main__":
    main()
