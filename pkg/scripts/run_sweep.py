#!/usr/bin/env python3
"""Enumerate almost affine classes over a range of sizes, compare each size
with the bundled fixture and write one JSON result per size plus a summary.

    python scripts/run_sweep.py --mode super --sizes 3-10 --out runs/super
"""

from __future__ import annotations

import argparse
import json
import logging
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from almost_affine.catalog import default_catalog
from almost_affine.fixtures import load_fixture, verify_fixture
from almost_affine.reflect import DEFAULT_LIMITS, Limits
from almost_affine.search import enumerate_classes

log = logging.getLogger("sweep")


@dataclass
class SweepConfig:
    mode: str = "super"
    first: int = 3
    last: int = 10
    jobs: int = 1
    limits: str = ""
    out: Path = Path("runs")
    verify: bool = True


def parse_sizes(text: str) -> tuple:
    lo, _, hi = text.partition("-")
    return int(lo), int(hi or lo)


def run(cfg: SweepConfig) -> dict:
    limits = Limits.parse(cfg.limits) if cfg.limits else DEFAULT_LIMITS
    fixture = load_fixture(cfg.mode) if cfg.verify else None
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    t0 = time.perf_counter()
    for n in range(cfg.first, cfg.last + 1):
        t = time.perf_counter()
        c = default_catalog(n)
        res = enumerate_classes(n, cfg.mode, c, jobs=cfg.jobs, limits=limits)
        row = {k: v for k, v in res.stats.items()}
        row["size"] = n
        row["seconds"] = round(time.perf_counter() - t, 2)
        if fixture is not None:
            report = verify_fixture(res, fixture, c)
            row["fixture_ok"] = report.ok
            row["fixture"] = report.summary()
        (cfg.out / f"{cfg.mode}_{n}.json").write_text(json.dumps(res.to_doc(), indent=1))
        log.info("size %d: %d classes (%d super), %.1fs", n, row["classes"],
                 row["super_classes"], row["seconds"])
        rows.append(row)
    summary = {
        "config": {k: str(v) for k, v in asdict(cfg).items()},
        "sizes": rows,
        "total_seconds": round(time.perf_counter() - t0, 2),
    }
    (cfg.out / f"{cfg.mode}_summary.json").write_text(json.dumps(summary, indent=1))
    return summary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=("super", "even"), default="super")
    ap.add_argument("--sizes", default="3-10", help="N or LO-HI")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--limits", default="")
    ap.add_argument("--out", type=Path, default=Path("runs"))
    ap.add_argument("--no-verify", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    first, last = parse_sizes(args.sizes)
    cfg = SweepConfig(args.mode, first, last, args.jobs, args.limits, args.out, not args.no_verify)
    summary = run(cfg)
    print(f"{'n':>3} {'classes':>8} {'super':>6} {'white':>6} {'sym':>5} {'incl':>5} {'secs':>8}  fixture")
    for r in summary["sizes"]:
        print(f"{r['size']:>3} {r['classes']:>8} {r['super_classes']:>6} {r['all_white_classes']:>6} "
              f"{r['symmetrizable']:>5} {r['inconclusive']:>5} {r['seconds']:>8}  {r.get('fixture', '-')}")
    print(f"total {summary['total_seconds']}s")


if __name__ == "__main__":
    main()
