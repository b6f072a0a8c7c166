"""Wall-clock and peak-memory benchmark of the spherical-function backends.

Each trial runs in a fresh interpreter so caches start cold and the peak
resident set belongs to that trial alone.  Peak memory comes from
``getrusage`` and is platform dependent (kilobytes on Linux).
"""
from __future__ import annotations

import argparse
import json
import os
import resource
import statistics
import subprocess
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from matchkern.zsf import AVERAGING_MAX_N, EXPLICIT_MAX_N, Backend

GUARDS = {Backend.ZP: None, Backend.EXPLICIT: EXPLICIT_MAX_N, Backend.AVG: AVERAGING_MAX_N}


@dataclass
class BenchCell:
    n: int
    backend: str
    impl: str
    seconds: List[float]
    peak_kb: List[int]
    skipped: bool = False

    @property
    def mean(self) -> float:
        return statistics.fmean(self.seconds) if self.seconds else float("nan")

    @property
    def std(self) -> float:
        return statistics.stdev(self.seconds) if len(self.seconds) > 1 else 0.0

    @property
    def peak_mb(self) -> float:
        return max(self.peak_kb) / 1024 if self.peak_kb else float("nan")


def run_trial(n: int, backend: str, size: int, seed: int) -> Dict[str, float]:
    """Build the kernel and a size x size Gram matrix in this process."""
    from matchkern import accel
    from matchkern.kernel import KernelConfig, MatchingKernel
    from matchkern.matching import random_matchings

    start = time.perf_counter()
    kernel = MatchingKernel(KernelConfig(n, backend=backend))
    gram = kernel.matrix(random_matchings(n, size, seed))
    seconds = time.perf_counter() - start
    return {
        "seconds": seconds,
        "peak_kb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
        "impl": accel.IMPLEMENTATION,
        "checksum": float(np.trace(gram)),
    }


def _spawn_trial(n: int, backend: str, size: int, seed: int, impl: str) -> Dict[str, float]:
    env = dict(os.environ)
    if impl == "pure":
        env["MATCHKERN_PURE"] = "1"
    else:
        env.pop("MATCHKERN_PURE", None)
    cmd = [sys.executable, "-m", "matchkern.bench", "--trial", str(n), backend, str(size), str(seed)]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    result = json.loads(out.stdout.strip().splitlines()[-1])
    if impl == "compiled" and result["impl"] != "compiled":
        raise RuntimeError("compiled extension is not available")
    return result


def run_benchmark(
    n_list: Sequence[int],
    backends: Sequence[str],
    size: int = 100,
    trials: int = 5,
    seed: int = 0,
    impls: Sequence[str] = ("compiled",),
    progress: Optional[Callable[[str], None]] = None,
) -> List[BenchCell]:
    cells = []
    for n in n_list:
        for name in backends:
            backend = Backend.parse(name)
            guard = GUARDS[backend]
            for impl in impls:
                if guard is not None and n > guard:
                    cells.append(BenchCell(n, backend.value, impl, [], [], skipped=True))
                    continue
                secs, peaks = [], []
                for t in range(trials):
                    r = _spawn_trial(n, backend.value, size, seed + t, impl)
                    secs.append(r["seconds"])
                    peaks.append(int(r["peak_kb"]))
                cell = BenchCell(n, backend.value, impl, secs, peaks)
                cells.append(cell)
                if progress:
                    progress(f"n={n} {backend.value} [{impl}]: {cell.mean:.3f}s")
    return cells


def format_table(cells: Sequence[BenchCell]) -> str:
    lines = [f"{'n':>3}  {'backend':<9} {'impl':<9} {'time (s)':>20}  {'peak RSS (MB)':>13}"]
    for c in cells:
        if c.skipped:
            lines.append(f"{c.n:>3}  {c.backend:<9} {c.impl:<9} {'—':>20}  {'—':>13}")
        else:
            t = f"{c.mean:.4f} ± {c.std:.4f}"
            lines.append(f"{c.n:>3}  {c.backend:<9} {c.impl:<9} {t:>20}  {c.peak_mb:>13.1f}")
    return "\n".join(lines)


def to_csv(cells: Sequence[BenchCell]) -> str:
    rows = ["n,backend,impl,mean_seconds,std_seconds,peak_rss_mb,trials"]
    for c in cells:
        if c.skipped:
            rows.append(f"{c.n},{c.backend},{c.impl},,,,0")
        else:
            rows.append(f"{c.n},{c.backend},{c.impl},{c.mean:.12g},{c.std:.12g},{c.peak_mb:.12g},{len(c.seconds)}")
    return "\n".join(rows) + "\n"


def accel_microbench(repeats: int = 3) -> List[Dict[str, object]]:
    """Time each hot loop in the compiled and pure implementations on the same inputs."""
    from matchkern import _speedups_py as pure
    from matchkern.matching import random_matchings
    from matchkern.zsf import _odd_column_tabloids, _sphere_pairs, coset_representative

    try:
        from matchkern import _speedups as compiled
    except ImportError:
        compiled = None

    partners = np.array([x.partners() for x in random_matchings(12, 150, 0)], dtype=np.int64)
    rows, signs = _odd_column_tabloids((2, 2, 1, 1))
    pairs = _sphere_pairs((3, 2, 1))
    sigma = coset_representative((3, 2))
    cases = {
        "pairwise_distance_codes": lambda m: m.pairwise_distance_codes(partners),
        "coset_cycle_type_counts": lambda m: m.coset_cycle_type_counts(sigma, 5),
        "signed_cover_count": lambda m: m.signed_cover_count(rows, signs, pairs),
    }
    out = []
    for name, fn in cases.items():
        timing = {}
        for label, mod in (("pure", pure), ("compiled", compiled)):
            if mod is None:
                continue
            best = float("inf")
            for _ in range(repeats):
                start = time.perf_counter()
                fn(mod)
                best = min(best, time.perf_counter() - start)
            timing[label] = best
        row = {"kernel": name, **timing}
        if "compiled" in timing:
            row["speedup"] = timing["pure"] / timing["compiled"]
        out.append(row)
    return out


def _main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m matchkern.bench")
    parser.add_argument("--trial", nargs=4, metavar=("N", "BACKEND", "SIZE", "SEED"))
    parser.add_argument("--micro", action="store_true")
    args = parser.parse_args(argv)
    if args.trial:
        n, backend, size, seed = args.trial
        print(json.dumps(run_trial(int(n), backend, int(size), int(seed))))
        return 0
    if args.micro:
        for row in accel_microbench():
            print(json.dumps(row))
        return 0
    parser.print_help()
    return 2


if __name__ == "__main__":
    sys.exit(_main())
