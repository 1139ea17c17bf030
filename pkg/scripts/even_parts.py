#!/usr/bin/env python3
"""Map super classes to their even parts and check them against the even
fixture.  Uses saved sweep results when --runs points at them."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from almost_affine.cartan import canonical_form, pair_from_doc
from almost_affine.catalog import NotApplicable, even_part
from almost_affine.fixtures import load_fixture
from almost_affine.search import enumerate_classes


@dataclass
class EvenPartConfig:
    first: int = 3
    last: int = 10
    runs: Optional[Path] = None  # directory written by run_sweep.py --mode super


def representatives(cfg: EvenPartConfig, n: int) -> list:
    saved = cfg.runs / f"super_{n}.json" if cfg.runs else None
    if saved and saved.exists():
        doc = json.loads(saved.read_text())
        return [pair_from_doc(r["representative"]) for r in doc["classes"] if r["super"]]
    return [r.representative for r in enumerate_classes(n, "super").super_classes()]


def run(cfg: EvenPartConfig) -> dict:
    known = {canonical_form(p): e.label for e in load_fixture("even") for p in e.matrices}
    parts: dict = {}
    skipped = 0
    for n in range(cfg.first, cfg.last + 1):
        for p in representatives(cfg, n):
            try:
                q = canonical_form(even_part(p))
            except NotApplicable:
                skipped += 1
                continue
            parts.setdefault(q, []).append(n)
    missing = [q for q in parts if q not in known]
    return {"distinct": len(parts), "skipped": skipped, "not_in_fixture": len(missing),
            "labels": sorted({known[q] for q in parts if q in known})}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="3-10")
    ap.add_argument("--runs", type=Path)
    args = ap.parse_args()
    lo, _, hi = args.sizes.partition("-")
    res = run(EvenPartConfig(int(lo), int(hi or lo), args.runs))
    print(f"{res['distinct']} distinct even parts, {res['not_in_fixture']} outside the even fixture, "
          f"{res['skipped']} representatives with grey nodes skipped")


if __name__ == "__main__":
    main()
