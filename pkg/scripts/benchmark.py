"""
Benchmark script for the Khovanov engine.
Times khovanov_homology (and optionally Lee homology) on negative T(3, q)
braid closures and checks every result against the closed-form tables.

Usage:
    python scripts/benchmark.py                      # q = 2..5
    python scripts/benchmark.py --q-max 7            # larger diagrams
    python scripts/benchmark.py --workers 4          # parallel slice reductions
    python scripts/benchmark.py --lee --repeat 3
"""

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from apps.khovanov.homology.khovanov import khovanov_homology  # noqa: E402
from apps.khovanov.homology.lee import lee_homology  # noqa: E402
from apps.khovanov.knots.braids import from_braid, torus_braid  # noqa: E402
from apps.khovanov.telemetry import configure_logging  # noqa: E402
from apps.khovanov.torus.tables import expected_kh_3q  # noqa: E402


def time_one(q, workers, with_lee):
    """Run one T(3, q) computation and return a result record."""
    d = from_braid(torus_braid(q))
    start = time.perf_counter()
    table = khovanov_homology(d, workers=workers)
    kh_ms = (time.perf_counter() - start) * 1000
    record = {
        "q": q,
        "crossings": d.n,
        "kh_ms": round(kh_ms, 1),
        "total_dimension": table.total_dimension(),
        "matches_table": table == expected_kh_3q(q),
    }
    if with_lee:
        start = time.perf_counter()
        lee = lee_homology(d, workers=workers)
        record["lee_ms"] = round((time.perf_counter() - start) * 1000, 1)
        record["lee"] = lee.dims
    return record


def run_benchmark(q_max, repeat, workers, concurrency, with_lee):
    jobs = [q for q in range(2, q_max + 1) for _ in range(repeat)]
    results = []
    with ThreadPoolExecutor(max_workers=concurrency) as pool:
        futures = {pool.submit(time_one, q, workers, with_lee): q for q in jobs}
        for future in as_completed(futures):
            results.append(future.result())
    return sorted(results, key=lambda r: (r["q"], r["kh_ms"]))


def print_report(results):
    print(f"\n{'q':>3} {'n':>4} {'median ms':>10} {'max ms':>10} {'dim':>5}  ok")
    print("-" * 42)
    by_q = {}
    for r in results:
        by_q.setdefault(r["q"], []).append(r)
    for q, runs in sorted(by_q.items()):
        times = [r["kh_ms"] for r in runs]
        ok = all(r["matches_table"] for r in runs)
        print(
            f"{q:>3} {runs[0]['crossings']:>4} {statistics.median(times):>10.1f} "
            f"{max(times):>10.1f} {runs[0]['total_dimension']:>5}  {'yes' if ok else 'NO'}"
        )
    mismatched = sorted({r["q"] for r in results if not r["matches_table"]})
    if mismatched:
        print(f"\nMismatch against closed-form tables for q = {mismatched}")


def main():
    parser = argparse.ArgumentParser(description="Time Khovanov homology of T(3, q)")
    parser.add_argument("--q-max", type=int, default=5, help="largest q (default: 5)")
    parser.add_argument("--repeat", type=int, default=1, help="runs per q (default: 1)")
    parser.add_argument("--workers", type=int, default=1, help="process pool width for slice reductions")
    parser.add_argument("--concurrency", type=int, default=1, help="diagrams timed concurrently")
    parser.add_argument("--lee", action="store_true", help="also time Lee homology")
    parser.add_argument("--json", action="store_true", help="print raw records as JSON")
    args = parser.parse_args()

    configure_logging("WARNING", json_output=False)
    print(f"Benchmarking T(3, q) for q = 2..{args.q_max} ({args.repeat} run(s) each)")
    start = time.perf_counter()
    results = run_benchmark(args.q_max, args.repeat, args.workers, args.concurrency, args.lee)
    elapsed = time.perf_counter() - start

    if args.json:
        print(json.dumps(results, indent=2))
    else:
        print_report(results)
    print(f"\nTotal wall time: {elapsed:.1f}s")
    return 0 if all(r["matches_table"] for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
