"""Evaluate the standard identity grids and write one CSV per identity.

    python3 scripts/run_grids.py --out results/ [--digits 30] [--workers 4]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

from xicheck.harness import emit, sweep
from xicheck.numeric import PrecisionContext


@dataclass
class GridConfig:
    identity: str
    grid: Dict[str, List]
    tol: float = 1e-8


@dataclass
class RunConfig:
    out: Path
    digits: int = 0
    workers: int = 1
    grids: List[GridConfig] = field(default_factory=lambda: [
        GridConfig("thm31", {"z": [2.5, 3.0, 4.2, 6.0], "alpha": [0.1, 0.5, 2.0, 10.0]}),
        GridConfig("thm41", {"z": [0.3, 0.8, 1.2, 1.7], "alpha": [0.2, 0.5, 2.0, 5.0]}),
        GridConfig("cor32", {"z": [3.0, 4.0, 5.5]}, tol=1e-9),
        GridConfig("ramanujan", {"alpha": [0.5, 1.0, 2.0]}, tol=1e-6),
        GridConfig("eq19", {"s": [2.2, 3.0], "n": [0.0, 0.5, 1.0]}),
        GridConfig("eq20", {"s": [-0.5, 0.0, 0.5], "n": [0.0, 0.3, 0.7]}),
        GridConfig("guinand", {"k": [2, 3, 4], "x": [0.5, 2.0, 3.0]}, tol=1e-9),
        GridConfig("eq15mod", {"s": [1.5, 2.5, 5.0], "alpha": [0.25, 3.141592653589793, 40.0]}),
        GridConfig("spurious", {"s": [2.5, 3.0, 4.0], "n": [0.0, 0.5]}),
    ])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--digits", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = RunConfig(args.out, args.digits, args.workers)
    cfg.out.mkdir(parents=True, exist_ok=True)

    failures = 0
    for g in cfg.grids:
        ctx = PrecisionContext(target_rel_tol=min(1e-10, g.tol), identity_tol=g.tol, digits=cfg.digits)
        t0 = time.perf_counter()
        reports = sweep(g.identity, g.grid, ctx, workers=cfg.workers)
        (cfg.out / f"{g.identity}.csv").write_bytes(emit(reports, "csv"))
        bad = sum(not r.passed for r in reports)
        failures += bad
        worst = max((r.max_rel_err for r in reports), default=float("nan"))
        print(f"{g.identity:<10} {len(reports):>3} points  {bad} failed  worst rel err {worst:.2e}  "
              f"{time.perf_counter() - t0:.1f} s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
