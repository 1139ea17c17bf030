"""Dynkin graphs: drawing a Cartan pair, recovering pairs from a graph, and a
small ASCII notation.

Notation: nodes are ``O`` (white), ``B`` (black), ``X`` (grey), ``S`` (star)
and ``U`` (sun), numbered from 1 left to right unless an explicit ``(i)``
prefix is given; a bare ``(i)`` refers back to node i.  Between two nodes an
edge token ``-k-`` draws k plain edges, ``=k=>`` and ``<=k=`` draw k edges
with the arrow at the right or left node, and ``-[x, y]-`` is a single edge
with the non-integer label (|A_left,right|, |A_right,left|).  Nodes written
next to each other without an edge token are not joined.  A trailing
``@cycle`` (optionally preceded by an edge token) joins the last node of the
statement to the first; ``;`` starts a new statement and ``@family=name``
marks diagrams drawn by the special parametric rules.

Example: ``O =2=> O -1- X`` or ``(1)X -1- (2)X -1- (3)X @cycle``.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .cartan import EVEN, ODD, CartanError, CartanPair, NodeKind, canonical_form, normalize
from .scalar import Quadratic, format_scalar, parse_scalar, sign, tidy

log = logging.getLogger(__name__)

TOWARD_I = "i"
TOWARD_J = "j"


class DiagramError(CartanError):
    pass


class UnsupportedDiagram(DiagramError):
    pass


class NotationSyntaxError(DiagramError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ValidationError(DiagramError):
    pass


@dataclass(frozen=True)
class NonIntegerLabel:
    """|A_ij| and |A_ji| of an edge whose entries are not integers."""
    a: object
    b: object

    def swapped(self) -> "NonIntegerLabel":
        return NonIntegerLabel(self.b, self.a)


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    multiplicity: Union[int, NonIntegerLabel]
    arrow: Optional[str] = None  # TOWARD_I, TOWARD_J or None

    def oriented(self, i: int) -> "Edge":
        """The same edge with ``i`` as its first end."""
        if i == self.i:
            return self
        arrow = {TOWARD_I: TOWARD_J, TOWARD_J: TOWARD_I}.get(self.arrow)
        mult = self.multiplicity
        if isinstance(mult, NonIntegerLabel):
            mult = mult.swapped()
        return Edge(self.j, self.i, mult, arrow)


@dataclass
class DynkinGraph:
    nodes: list
    edges: list = field(default_factory=list)
    family: Optional[str] = None  # set for d(alpha), d(alpha)^(1), svect diagrams

    def edge(self, i: int, j: int) -> Optional[Edge]:
        for e in self.edges:
            if {e.i, e.j} == {i, j}:
                return e.oriented(i)
        return None

    def key(self) -> tuple:
        es = sorted((e if e.i < e.j else e.oriented(e.j) for e in self.edges),
                    key=lambda e: (e.i, e.j))
        return tuple(self.nodes), tuple(es), self.family

    def __eq__(self, other):
        return isinstance(other, DynkinGraph) and self.key() == other.key()


_KIND_OF = {
    NodeKind.WHITE: (2, EVEN),
    NodeKind.BLACK: (1, ODD),
    NodeKind.GREY: (0, ODD),
    NodeKind.STAR: (1, EVEN),
    NodeKind.SUN: (0, EVEN),
}


def _integer_rows(p: CartanPair) -> list:
    """Rows of p with zero-diagonal rows rescaled to primitive integers when
    they are rational."""
    rows = []
    for i, row in enumerate(p.matrix):
        if row[i] != 0 or any(isinstance(x, Quadratic) for x in row):
            rows.append(list(row))
            continue
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        rows.append([x // g for x in ints] if g else ints)
    return rows


def _abs(x):
    return x if sign(x) >= 0 else tidy(-x)


def to_diagram(p: CartanPair) -> DynkinGraph:
    from .catalog import match_parametric

    p = normalize(p)
    rows = _integer_rows(p)
    edges = []
    for i in range(p.n):
        for j in range(i + 1, p.n):
            x, y = rows[i][j], rows[j][i]
            if x == 0:
                continue
            ax, ay = _abs(x), _abs(y)
            if isinstance(ax, int) and isinstance(ay, int):
                arrow = TOWARD_J if ax > ay else TOWARD_I if ax < ay else None
                edges.append(Edge(i, j, max(ax, ay), arrow))
            else:
                edges.append(Edge(i, j, NonIntegerLabel(ax, ay)))
    family = None
    if p.n in (3, 4) and p.grey_nodes():
        cl = match_parametric(p)
        if cl.finite_or_affine:
            family = cl.name
    return DynkinGraph(list(p.kinds()), edges, family)


def _sign_patterns(g: DynkinGraph, i: int, nb: list) -> tuple:
    """Allowed sign vectors for a zero-diagonal row with neighbours nb (up to a
    global -1), and whether the recovery rules left the row ambiguous."""
    if len(nb) == 1:
        return [(-1,)], False
    if len(nb) == 2:
        return [(-1, 1)], False
    if len(nb) == 3:
        joined = [(a, b) for a, b in itertools.combinations(range(3), 2) if g.edge(nb[a], nb[b])]
        if len(joined) == 1:
            a, b = joined[0]
            c = 3 - a - b
            pat = [0, 0, 0]
            pat[a] = pat[b] = -1
            pat[c] = 1
            return [tuple(pat)], False
    return [(-1,) + rest for rest in itertools.product((-1, 1), repeat=len(nb) - 1)], True


def recover(g: DynkinGraph) -> tuple:
    """All normalized pairs compatible with the graph, as canonical forms,
    plus the list of nodes whose row signs the rules do not pin down."""
    if g.family is not None:
        raise UnsupportedDiagram(f"{g.family} diagrams are drawn by special rules")
    n = len(g.nodes)
    base = [[0] * n for _ in range(n)]
    par = []
    for i, kind in enumerate(g.nodes):
        d, pi = _KIND_OF[kind]
        base[i][i] = d
        par.append(pi)
    for e in g.edges:
        if isinstance(e.multiplicity, NonIntegerLabel):
            raise UnsupportedDiagram("edges with non-integer labels cannot be recovered")
        k = e.multiplicity
        if e.arrow == TOWARD_J:
            base[e.i][e.j], base[e.j][e.i] = k, 1
        elif e.arrow == TOWARD_I:
            base[e.i][e.j], base[e.j][e.i] = 1, k
        else:
            base[e.i][e.j] = base[e.j][e.i] = k
    choices = []
    ambiguous = []
    for i in range(n):
        nb = [j for j in range(n) if j != i and base[i][j] != 0]
        if base[i][i] != 0 or not nb:
            choices.append([[(j, -base[i][j]) for j in nb]])
            continue
        pats, amb = _sign_patterns(g, i, nb)
        if amb:
            ambiguous.append(i)
        choices.append([[(j, s * base[i][j]) for j, s in zip(nb, pat)] for pat in pats])
    if ambiguous:
        log.warning("grey rows %s have %s", ambiguous, "sign patterns not fixed by the recovery rules")
    out = set()
    for combo in itertools.product(*choices):
        rows = [list(r) for r in base]
        for i, entries in enumerate(combo):
            for j, v in entries:
                rows[i][j] = v
        out.add(canonical_form(normalize(CartanPair.make(rows, par))))
    return out, ambiguous


def from_diagram(g: DynkinGraph) -> set:
    return recover(g)[0]


# notation --------------------------------------------------------------------

_NODE_CHARS = {"O": NodeKind.WHITE, "B": NodeKind.BLACK, "X": NodeKind.GREY,
               "S": NodeKind.STAR, "U": NodeKind.SUN}
_CHAR_OF = {v: k for k, v in _NODE_CHARS.items()}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ref>\((?P<idx>\d+)\)(?P<kind>[OBXSU])?)
  | (?P<node>[OBXSU])
  | (?P<plain>-(?P<pk>\d+)-)
  | (?P<right>=(?P<rk>\d+)=>)
  | (?P<left><=(?P<lk>\d+)=)
  | (?P<label>-\[(?P<la>[^,\]]+),(?P<lb>[^\]]+)\]-)
  | (?P<cycle>@cycle)
  | (?P<family>@family=(?P<fam>\S+))
  | (?P<sep>;)
""", re.X)


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise NotationSyntaxError(f"unexpected {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            yield m
        pos = m.end()


def parse_notation(text: str) -> DynkinGraph:
    nodes: dict = {}
    edges: dict = {}
    family = None
    auto = 0
    stmt_first = None
    prev = None
    pending = None  # (edge spec, position)

    def add_edge(a, b, spec, pos):
        if a == b:
            raise ValidationError(f"edge from node {a + 1} to itself")
        mult, arrow = spec
        e = Edge(a, b, mult, arrow)
        key = frozenset((a, b))
        if key in edges and edges[key] != e.oriented(min(a, b)):
            raise ValidationError(f"conflicting edges between nodes {a + 1} and {b + 1}")
        edges[key] = e.oriented(min(a, b))

    def node_at(idx, kind, pos):
        nonlocal auto
        if kind is None:
            if idx not in nodes:
                raise ValidationError(f"node ({idx + 1}) used before it is defined")
            return idx
        if idx in nodes and nodes[idx] != kind:
            raise ValidationError(f"node ({idx + 1}) defined twice")
        nodes[idx] = kind
        auto = max(auto, idx + 1)
        return idx

    for m in _tokens(text):
        g, pos = m.lastgroup, m.start()
        if family is not None:
            raise NotationSyntaxError("nothing may follow @family", pos)
        if g in ("ref", "node"):
            if g == "ref":
                idx = int(m.group("idx")) - 1
                if idx < 0:
                    raise NotationSyntaxError("node indices start at 1", pos)
                kind = _NODE_CHARS[m.group("kind")] if m.group("kind") else None
                cur = node_at(idx, kind, pos)
            else:
                cur = node_at(auto, _NODE_CHARS[m.group("node")], pos)
            if pending is not None:
                add_edge(prev, cur, pending[0], pending[1])
                pending = None
            if stmt_first is None:
                stmt_first = cur
            prev = cur
        elif g in ("plain", "right", "left", "label"):
            if prev is None or pending is not None:
                raise NotationSyntaxError("edge without a node on its left", pos)
            pending = (_edge_spec(m), pos)
        elif g == "cycle":
            if prev is None or prev == stmt_first:
                raise ValidationError("@cycle needs at least two nodes")
            spec = pending[0] if pending is not None else (1, None)
            add_edge(prev, stmt_first, spec, pos)
            pending = None
            prev = None
        elif g == "family":
            if pending is not None:
                raise NotationSyntaxError("dangling edge", pos)
            family = m.group("fam")
        elif g == "sep":
            if pending is not None:
                raise NotationSyntaxError("dangling edge", pos)
            stmt_first = prev = None
    if pending is not None:
        raise NotationSyntaxError("dangling edge", len(text))
    if not nodes:
        raise NotationSyntaxError("empty diagram", 0)
    if sorted(nodes) != list(range(len(nodes))):
        raise ValidationError("node indices must be 1..n without gaps")
    return DynkinGraph([nodes[i] for i in range(len(nodes))],
                       sorted(edges.values(), key=lambda e: (e.i, e.j)), family)


def _edge_spec(m) -> tuple:
    g = m.lastgroup
    if g == "label":
        try:
            a, b = parse_scalar(m.group("la").strip()), parse_scalar(m.group("lb").strip())
        except Exception as exc:
            raise NotationSyntaxError(f"bad label: {exc}", m.start()) from None
        if isinstance(a, int) and isinstance(b, int):
            raise ValidationError("integer labels must be written as -k-, =k=> or <=k=")
        return NonIntegerLabel(a, b), None
    k = int(m.group({"plain": "pk", "right": "rk", "left": "lk"}[g]))
    if k < 1:
        raise ValidationError("edge multiplicity must be positive")
    if g == "plain":
        return k, None
    if k == 1:
        raise ValidationError("a single edge cannot carry an arrow")
    return k, (TOWARD_J if g == "right" else TOWARD_I)


def _edge_token(e: Edge) -> str:
    """Token for e drawn with e.i on the left."""
    if isinstance(e.multiplicity, NonIntegerLabel):
        return f"-[{format_scalar(e.multiplicity.a)}, {format_scalar(e.multiplicity.b)}]-"
    if e.arrow == TOWARD_J:
        return f"={e.multiplicity}=>"
    if e.arrow == TOWARD_I:
        return f"<={e.multiplicity}="
    return f"-{e.multiplicity}-"


def print_notation(g: DynkinGraph) -> str:
    n = len(g.nodes)
    chars = [_CHAR_OF[k] for k in g.nodes]
    pairs = {frozenset((e.i, e.j)) for e in g.edges}
    path = {frozenset((i, i + 1)) for i in range(n - 1)}
    cyc = path | {frozenset((0, n - 1))} if n >= 3 else None
    tail = f" @family={g.family}" if g.family else ""
    if pairs == path or (cyc is not None and pairs == cyc):
        parts = [chars[0]]
        for i in range(1, n):
            parts += [_edge_token(g.edge(i - 1, i)), chars[i]]
        if pairs != path:
            e = g.edge(n - 1, 0)
            if e.multiplicity != 1:
                parts.append(_edge_token(e))
            parts.append("@cycle")
        return " ".join(parts) + tail
    head = " ".join(f"({i + 1}){c}" for i, c in enumerate(chars))
    stmts = [head]
    for e in sorted((e if e.i < e.j else e.oriented(e.j) for e in g.edges), key=lambda e: (e.i, e.j)):
        stmts.append(f"({e.i + 1}) {_edge_token(e)} ({e.j + 1})")
    return " ; ".join(stmts) + tail


def to_dot(g: DynkinGraph, name: str = "G") -> str:
    style = {
        NodeKind.WHITE: 'shape=circle, label=""',
        NodeKind.BLACK: 'shape=circle, style=filled, fillcolor=black, label=""',
        NodeKind.GREY: 'shape=circle, label="x"',
        NodeKind.STAR: 'shape=circle, label="*"',
        NodeKind.SUN: 'shape=doublecircle, label=""',
    }
    lines = [f"graph {name} {{"]
    if g.family:
        lines.append(f'  label="{g.family}";')
    for i, k in enumerate(g.nodes):
        lines.append(f"  n{i + 1} [{style[k]}, xlabel=\"{i + 1}\"];")
    for e in g.edges:
        if isinstance(e.multiplicity, NonIntegerLabel):
            lab = f"({format_scalar(e.multiplicity.a)}, {format_scalar(e.multiplicity.b)})"
        else:
            lab = str(e.multiplicity)
        attrs = [f'label="{lab}"']
        if e.arrow == TOWARD_J:
            attrs.append("dir=forward")
        elif e.arrow == TOWARD_I:
            attrs.append("dir=back")
        lines.append(f"  n{e.i + 1} -- n{e.j + 1} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
