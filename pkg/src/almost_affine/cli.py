"""Command line front end.

Structured output goes to stdout (JSON unless --format says otherwise),
progress and summaries to stderr.  Exit status: 0 success, 1 verification
mismatch, 2 bad input.  Node numbers on the command line start at 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .cartan import CartanError, canonical_form, pair_from_doc, pair_to_doc
from .catalog import build_catalog, classify_blocks, default_catalog
from .dynkin import parse_notation, print_notation, recover, to_diagram, to_dot
from .reflect import DEFAULT_LIMITS, Limits, OverflowReport, odd_reflect, reflection_orbit
from .search import (
    almost_affine_class_test,
    almost_affine_matrix_test,
    enumerate_classes,
    solve_parametric_rank3,
)

log = logging.getLogger("almost_affine")


class InputError(ValueError):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=1, sort_keys=False) + "\n")


def _read_pairs(path: str) -> list:
    """A pair document, a list of them, or JSON lines."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
        docs = data if isinstance(data, list) else [data]
    except ValueError:
        try:
            docs = [json.loads(line) for line in text.splitlines() if line.strip()]
        except ValueError as exc:
            raise InputError(f"{path} is not JSON: {exc}") from None
    if not docs:
        raise InputError(f"{path} holds no pair")
    return [pair_from_doc(d) for d in docs]


def _limits(args) -> Limits:
    if not args.limits:
        return DEFAULT_LIMITS
    try:
        return Limits.parse(args.limits)
    except ValueError as exc:
        raise InputError(f"bad --limits: {exc}") from None


def cmd_classify(args) -> int:
    out = []
    for p in _read_pairs(args.pair):
        c = default_catalog(max(args.max_rank, p.n))
        blocks = classify_blocks(p, c)
        doc = {
            "pair": pair_to_doc(p),
            "blocks": [{"nodes": [i + 1 for i in idx], "verdict": cl.verdict, "name": cl.name}
                       for idx, cl in blocks],
        }
        if len(blocks) == 1:
            mt = almost_affine_matrix_test(p, c)
            doc["matrix_test"] = {"passed": mt.passed, "annotations": mt.annotations,
                                  "witness": mt.witness.to_doc() if mt.witness else None}
            if p.grey_nodes() or mt.passed:
                doc["class_test"] = almost_affine_class_test(p, c, _limits(args)).to_doc()
            print(f"{p.n}x{p.n}: {blocks[0][1].verdict}"
                  f"{', matrix test ' + ('passed' if mt.passed else 'failed')}", file=sys.stderr)
        out.append(doc)
    _emit(out if len(out) > 1 else out[0])
    return 0


def cmd_orbit(args) -> int:
    out = []
    for p in _read_pairs(args.pair):
        res = reflection_orbit(p, _limits(args))
        if isinstance(res, OverflowReport):
            print(f"orbit overflow: {res.reason}", file=sys.stderr)
        else:
            print(f"orbit of {len(res)} members", file=sys.stderr)
        out.append(res.to_doc())
    _emit(out if len(out) > 1 else out[0])
    return 0


def cmd_reflect(args) -> int:
    (p,) = _read_pairs(args.pair)[:1]
    if not 1 <= args.node <= p.n:
        raise InputError(f"node {args.node} out of range 1..{p.n}")
    q = odd_reflect(p, args.node - 1)
    _emit({"pair": pair_to_doc(q), "canonical": pair_to_doc(canonical_form(q))})
    return 0


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def cmd_enumerate(args) -> int:
    c = default_catalog(max(args.size, 2))
    res = enumerate_classes(args.size, args.mode, c, jobs=args.jobs, limits=_limits(args),
                            progress=_progress)
    s = res.stats
    print(f"size {args.size} {args.mode}: {s['classes']} classes "
          f"({s['super_classes']} with odd nodes, {s['all_white_classes']} all white), "
          f"{s['inconclusive']} inconclusive", file=sys.stderr)
    doc = res.to_doc()
    doc["stats"] = {k: v for k, v in s.items() if not k.endswith("_seconds")}
    _emit(doc)
    return 0


def cmd_catalog(args) -> int:
    c = build_catalog(args.max_rank)
    print(f"{len(c)} catalog entries up to rank {args.max_rank}", file=sys.stderr)
    _emit({"max_rank": c.max_rank, "entries": c.to_doc(),
           "collisions": [list(x) if isinstance(x, tuple) else x for x in c.collisions]})
    return 0


def cmd_diagram(args) -> int:
    pairs = _read_pairs(args.pair)
    for p in pairs:
        g = to_diagram(p)
        if args.format == "dot":
            sys.stdout.write(to_dot(g))
        elif args.format == "text":
            sys.stdout.write(print_notation(g) + "\n")
        else:
            _emit({"pair": pair_to_doc(p), "notation": print_notation(g)})
    return 0


def cmd_parse(args) -> int:
    try:
        text = sys.stdin.read() if args.notation == "-" else Path(args.notation).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.notation}: {exc.strerror}") from None
    g = parse_notation(text.strip())
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
        return 0
    if args.format == "text":
        sys.stdout.write(print_notation(g) + "\n")
        return 0
    doc = {"notation": print_notation(g)}
    if g.family is None and not any(not isinstance(e.multiplicity, int) for e in g.edges):
        pairs, ambiguous = recover(g)
        doc["pairs"] = [pair_to_doc(p) for p in sorted(pairs, key=repr)]
        doc["ambiguous_nodes"] = [i + 1 for i in ambiguous]
    _emit(doc)
    return 0


def cmd_verify(args) -> int:
    from .fixtures import load_fixture, verify_fixture

    fixture = load_fixture(args.mode, args.fixture)
    c = default_catalog(max(args.size, 2))
    res = enumerate_classes(args.size, args.mode, c, jobs=args.jobs, limits=_limits(args),
                            progress=_progress)
    report = verify_fixture(res, fixture, c)
    print(report.summary(), file=sys.stderr)
    _emit(report.to_doc())
    return 0 if report.ok and not res.inconclusive else 1


def cmd_solve(args) -> int:
    notes: list = []
    sols = solve_parametric_rank3(default_catalog(3), _limits(args), report=notes)
    for n in notes:
        print(n, file=sys.stderr)
    _emit([{
        "template_shift": s.shift,
        "constraint": list(s.constraint),
        "root": s.record.to_doc()["parameter"],
        "inverse_root_equivalent": s.inverse_equivalent,
        "class": s.record.to_doc(),
    } for s in sols])
    print(f"{len(sols)} parametric classes", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="almost-affine", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rank", type=int, default=9)
    common.add_argument("--limits", default="", help="members=K,height=H")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a pair and run the almost affine tests")
    p.add_argument("pair")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("orbit", parents=[common], help="odd reflection orbit")
    p.add_argument("pair")
    p.set_defaults(func=cmd_orbit)
    p = sub.add_parser("reflect", parents=[common], help="reflect at a grey node (1-based)")
    p.add_argument("pair")
    p.add_argument("node", type=int)
    p.set_defaults(func=cmd_reflect)
    for name, func, helptext in (("enumerate", cmd_enumerate, "all almost affine classes of a size"),
                                 ("verify", cmd_verify, "enumerate and compare with the fixture")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--size", type=int, required=True)
        p.add_argument("--mode", choices=("super", "even"), default="super")
        if name == "verify":
            p.add_argument("--fixture", default=None, help="fixture directory")
        p.set_defaults(func=func)
    p = sub.add_parser("catalog", parents=[common], help="dump the Fin/Aff catalog")
    p.set_defaults(func=cmd_catalog)
    p = sub.add_parser("diagram", parents=[common], help="Dynkin diagram of a pair")
    p.add_argument("pair")
    p.set_defaults(func=cmd_diagram)
    p = sub.add_parser("parse", parents=[common], help="parse diagram notation")
    p.add_argument("notation")
    p.set_defaults(func=cmd_parse)
    p = sub.add_parser("solve-parametric", parents=[common], help="rank-3 parametric classes")
    p.set_defaults(func=cmd_solve)
    return ap


def _module_of(exc: BaseException) -> str:
    mod = type(exc).__module__
    if mod.startswith("almost_affine."):
        return mod.split(".", 1)[1]
    return "cli"


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "size", None) is not None and args.size < 3:
        print("error: cli: --size must be at least 3", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, CartanError, ValueError, KeyError) as exc:
        print(f"error: {_module_of(exc)}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
