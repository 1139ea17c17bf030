#!/usr/bin/env python3
"""Solve the rank-3 grey triangle templates for irrational parameters and
print each quadratic constraint with its orbit."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from almost_affine.cartan import pair_to_doc
from almost_affine.catalog import default_catalog
from almost_affine.reflect import DEFAULT_LIMITS, Limits
from almost_affine.scalar import format_scalar
from almost_affine.search import solve_parametric_rank3


@dataclass
class SolveConfig:
    limits: str = ""
    out: Optional[Path] = None
    show_notes: bool = False


def poly_text(c) -> str:
    c2, c1, c0 = c
    lead = "" if c2 == 1 else str(c2)
    return f"{lead}a^2 {'-' if c1 < 0 else '+'} {abs(c1)}a {'-' if c0 < 0 else '+'} {abs(c0)}"


def run(cfg: SolveConfig) -> list:
    limits = Limits.parse(cfg.limits) if cfg.limits else DEFAULT_LIMITS
    notes: list = []
    sols = solve_parametric_rank3(default_catalog(3), limits, report=notes)
    if cfg.show_notes:
        for n in notes:
            print("  note:", n)
    out = []
    for s in sols:
        orbit = s.record.orbit
        print(f"m = {s.shift}: {poly_text(s.constraint)} = 0, a = {format_scalar(s.root)}, "
              f"orbit of {len(orbit)}, 1/a in orbit: {s.inverse_equivalent}")
        for m, row in zip(orbit.members, orbit.transitions):
            print(f"    {m}  ->  {row}")
        out.append({
            "shift": s.shift,
            "constraint": list(s.constraint),
            "root": format_scalar(s.root),
            "orbit": [pair_to_doc(m) for m in orbit.members],
            "transitions": orbit.transitions,
        })
    if cfg.out:
        cfg.out.write_text(json.dumps(out, indent=1))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limits", default="")
    ap.add_argument("--out", type=Path)
    ap.add_argument("--notes", action="store_true", help="show discarded roots")
    args = ap.parse_args()
    run(SolveConfig(args.limits, args.out, args.notes))


if __name__ == "__main__":
    main()
