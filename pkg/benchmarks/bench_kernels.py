"""Time the compiled and numpy weight-histogram kernels on the same codes.

    python benchmarks/bench_kernels.py                # default cases
    python benchmarks/bench_kernels.py --repeat 5 --json out.json
    python benchmarks/bench_kernels.py --case 7,3,2,d1 --workers 1,2,4

Every run also checks that both backends return the same distribution.
"""

from __future__ import annotations

import argparse
import json
import platform
import statistics
import sys
import time

from homtrace import kernels
from homtrace.codes import build_code, enumeration_work, hom_weight_distribution

DEFAULT_CASES = ["3,3,2,d3,2", "3,4,2,d3,4", "5,2,2,d1", "3,2,3,d2", "5,3,2,d2", "7,3,2,d1"]


def parse_case(text: str):
    parts = text.split(",")
    p, m, k, variant = int(parts[0]), int(parts[1]), int(parts[2]), parts[3]
    nprime = int(parts[4]) if len(parts) > 4 else None
    return p, m, k, variant, nprime


def bench(case, backend, workers, repeat, budget):
    code = build_code(*case)
    hom_weight_distribution(code, budget=budget, backend=backend, workers=workers)  # warm tables
    times, dist = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        dist = hom_weight_distribution(code, budget=budget, backend=backend, workers=workers)
        times.append(time.perf_counter() - t0)
    work = enumeration_work(code)
    best = min(times)
    return {
        "case": ",".join(str(x) for x in case if x is not None),
        "backend": backend,
        "workers": workers,
        "work": work,
        "best_s": best,
        "median_s": statistics.median(times),
        "ops_per_s": work / best if best else float("inf"),
        "distribution": {str(w): f for w, f in dist.items()},
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", action="append", help="p,m,k,variant[,nprime]; repeatable")
    ap.add_argument("--backends", default=",".join(sorted(kernels.BACKENDS)))
    ap.add_argument("--workers", default="1")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--budget", type=float, default=5e9)
    ap.add_argument("--numpy-max-work", type=float, default=2e9, help="skip numpy above this many operations")
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)

    cases = [parse_case(c) for c in (args.case or DEFAULT_CASES)]
    backends = [b for b in args.backends.split(",") if b]
    missing = set(backends) - set(kernels.BACKENDS)
    if missing:
        print(f"unavailable backends: {sorted(missing)}", file=sys.stderr)
        backends = [b for b in backends if b in kernels.BACKENDS]
    workers = [int(w) for w in args.workers.split(",")]

    rows = []
    hdr = f"{'case':<14}{'backend':<9}{'workers':>8}{'work':>14}{'best s':>10}{'Mops/s':>10}{'speedup':>9}"
    print(hdr)
    print("-" * len(hdr))
    ok = True
    for case in cases:
        ref = None
        base_time = None
        for backend in backends:
            for w in workers:
                code = build_code(*case)
                if backend == "numpy" and enumeration_work(code) > args.numpy_max_work:
                    continue
                r = bench(case, backend, w, args.repeat, int(args.budget))
                if ref is None:
                    ref = r["distribution"]
                elif r["distribution"] != ref:
                    ok = False
                    print(f"MISMATCH on {r['case']} backend={backend} workers={w}", file=sys.stderr)
                if backend == "numpy" and w == 1:
                    base_time = r["best_s"]
                rows.append(r)
        for r in rows:
            if r["case"] == ",".join(str(x) for x in case if x is not None):
                r["speedup_vs_numpy"] = base_time / r["best_s"] if base_time else None
                sp = f"{r['speedup_vs_numpy']:.1f}x" if r["speedup_vs_numpy"] else "-"
                print(
                    f"{r['case']:<14}{r['backend']:<9}{r['workers']:>8}{r['work']:>14.3g}"
                    f"{r['best_s']:>10.3f}{r['ops_per_s'] / 1e6:>10.1f}{sp:>9}"
                )
    if args.json:
        meta = {"python": sys.version.split()[0], "machine": platform.machine(), "processor": platform.processor()}
        with open(args.json, "w") as fh:
            json.dump({"meta": meta, "rows": rows}, fh, indent=2, sort_keys=True)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
