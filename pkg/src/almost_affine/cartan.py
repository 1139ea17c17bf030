"""Cartan pairs (A, I): normalization, equivalence classes and canonical forms.

Indices are 0-based throughout the Python API.  A pair is equivalent to
another when one is obtained from the other by a simultaneous permutation of
rows and columns followed by rescaling rows by nonzero factors.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

from .scalar import Quadratic, Scalar, div, format_scalar, parse_scalar, sort_key, tidy, to_scalar

EVEN = 0
ODD = 1


class CartanError(ValueError):
    pass


class NonSymmetricZeroPattern(CartanError):
    pass


class IndexOutOfRange(CartanError, IndexError):
    pass


class NodeKind(enum.Enum):
    WHITE = "white"
    BLACK = "black"
    GREY = "grey"
    STAR = "star"
    SUN = "sun"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_SYMBOLS = {
    NodeKind.WHITE: "O",
    NodeKind.BLACK: "B",
    NodeKind.GREY: "X",
    NodeKind.STAR: "S",
    NodeKind.SUN: "U",
}


def node_kind(parity: int, diag) -> NodeKind:
    if parity == ODD:
        if diag == 0:
            return NodeKind.GREY
        if diag == 1:
            return NodeKind.BLACK
    else:
        if diag == 2:
            return NodeKind.WHITE
        if diag == 1:
            return NodeKind.STAR
        if diag == 0:
            return NodeKind.SUN
    raise CartanError(f"diagonal entry {diag} is not normalized")


@dataclass(frozen=True)
class CartanPair:
    matrix: tuple
    parities: tuple
    label: str | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0:
            raise CartanError("empty matrix")
        if len(self.parities) != n or any(len(r) != n for r in self.matrix):
            raise CartanError("matrix and parities must have matching sizes")

    @classmethod
    def make(cls, matrix: Iterable[Iterable], parities: Iterable | None = None,
             label: str | None = None) -> "CartanPair":
        """Build from nested lists; parities default to the ones implied by the
        diagonal (2 -> even, anything else -> odd)."""
        rows = tuple(tuple(to_scalar(x) for x in r) for r in matrix)
        if parities is None:
            par = tuple(EVEN if r[i] == 2 else ODD for i, r in enumerate(rows))
        else:
            par = tuple(_parity(p) for p in parities)
        return cls(rows, par, label)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def kinds(self) -> tuple:
        return tuple(node_kind(self.parities[i], self.matrix[i][i]) for i in range(self.n))

    def kind(self, i: int) -> NodeKind:
        return node_kind(self.parities[i], self.matrix[i][i])

    def is_integer(self) -> bool:
        return all(isinstance(x, int) for r in self.matrix for x in r)

    def is_even(self) -> bool:
        return all(p == EVEN for p in self.parities)

    def grey_nodes(self) -> list:
        return [i for i in range(self.n) if self.parities[i] == ODD and self.matrix[i][i] == 0]

    def neighbours(self, i: int) -> list:
        row = self.matrix[i]
        return [j for j in range(self.n) if j != i and row[j] != 0]

    def transpose(self) -> "CartanPair":
        n = self.n
        return CartanPair(tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n)),
                          self.parities)

    def with_label(self, label: str | None) -> "CartanPair":
        return CartanPair(self.matrix, self.parities, label)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.matrix)
        par = "".join("o" if p else "e" for p in self.parities)
        return f"CartanPair([{rows}], {par!r})"


def _parity(p) -> int:
    if p in (EVEN, "even", "e", False):
        return EVEN
    if p in (ODD, "odd", "o", True):
        return ODD
    raise CartanError(f"bad parity {p!r}")


def check_zero_pattern(p: CartanPair) -> None:
    m = p.matrix
    for i in range(p.n):
        for j in range(i + 1, p.n):
            if (m[i][j] == 0) != (m[j][i] == 0):
                raise NonSymmetricZeroPattern(f"A[{i}][{j}] and A[{j}][{i}] disagree on zero")


# normalization -----------------------------------------------------------

def row_factors(p: CartanPair) -> list:
    """The rescaling vector lambda with normalize(p) = diag(lambda) * A."""
    check_zero_pattern(p)
    out = []
    for i, row in enumerate(p.matrix):
        d = row[i]
        if d != 0:
            if p.parities[i] == ODD:
                target = 1
            else:
                target = 1 if d == 1 else 2
            out.append(div(target, d))
            continue
        lead = next((x for j, x in enumerate(row) if j != i and x != 0), None)
        if lead is None:
            out.append(1)
        else:
            # magnitude one, sign kept
            out.append(div(1, abs(lead)))
    return out


def scale_rows(p: CartanPair, factors: Sequence) -> CartanPair:
    rows = []
    for lam, row in zip(factors, p.matrix):
        if lam == 1:
            rows.append(row)
        else:
            rows.append(tuple(tidy(lam * x) for x in row))
    return CartanPair(tuple(rows), p.parities, p.label)


def normalize(p: CartanPair) -> CartanPair:
    return scale_rows(p, row_factors(p))


def is_normalized(p: CartanPair) -> bool:
    return normalize(p).matrix == p.matrix


# deletion and decomposition ------------------------------------------------

def principal_submatrix(p: CartanPair, keep: Sequence[int]) -> CartanPair:
    m = p.matrix
    return CartanPair(tuple(tuple(m[i][j] for j in keep) for i in keep),
                      tuple(p.parities[i] for i in keep))


def principal_delete(p: CartanPair, k: int) -> CartanPair:
    if p.n < 2:
        raise IndexOutOfRange("a 1x1 pair has no proper principal submatrix")
    if not 0 <= k < p.n:
        raise IndexOutOfRange(f"node {k} out of range for size {p.n}")
    return principal_submatrix(p, [i for i in range(p.n) if i != k])


class Block(NamedTuple):
    pair: CartanPair
    indices: tuple


def components(p: CartanPair) -> list:
    """Index sets of the connected components, each sorted, ordered by least index."""
    n = p.n
    seen = [False] * n
    out = []
    m = p.matrix
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            i = stack.pop()
            row = m[i]
            for j in range(n):
                if not seen[j] and row[j] != 0:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        out.append(tuple(sorted(comp)))
    return out


def decompose(p: CartanPair) -> list:
    return [Block(principal_submatrix(p, c), c) for c in components(p)]


def is_indecomposable(p: CartanPair) -> bool:
    return len(components(p)) == 1


# symmetrizability ----------------------------------------------------------

def symmetrizer(p: CartanPair):
    """Nonzero d with d_i A_ij = d_j A_ji, or None."""
    n = p.n
    m = p.matrix
    d = [None] * n
    for s in range(n):
        if d[s] is not None:
            continue
        d[s] = 1
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or m[i][j] == 0:
                    continue
                want = div(d[i] * m[i][j], m[j][i])
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    return None
    return d


def is_symmetrizable(p: CartanPair) -> bool:
    return symmetrizer(p) is not None


# canonical forms -----------------------------------------------------------

_KIND_CODE = {NodeKind.WHITE: 0, NodeKind.BLACK: 1, NodeKind.GREY: 2, NodeKind.STAR: 3, NodeKind.SUN: 4}


def refined_labels(p: CartanPair) -> list:
    """Colour refinement labels, invariant under permutation and row rescaling.

    Entries in rows with zero diagonal carry no scale-free value, so only their
    nonzeroness is used."""
    n = p.n
    m = p.matrix
    free = [m[i][i] == 0 for i in range(n)]

    def feat(i, j):
        if free[i]:
            return (2, 0)
        x = m[i][j]
        return (0, x) if not isinstance(x, Quadratic) else (1, sort_key(x))

    edge = {}
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] != 0:
                edge[i, j] = (feat(i, j), feat(j, i))
    labels = [_KIND_CODE[node_kind(p.parities[i], m[i][i])] for i in range(n)]
    count = len(set(labels))
    while True:
        sigs = []
        for i in range(n):
            nb = sorted((edge[i, j], labels[j]) for j in range(n) if (i, j) in edge)
            sigs.append((labels[i], tuple(nb)))
        order = sorted(set(sigs))
        rank = {s: k for k, s in enumerate(order)}
        new = [rank[s] for s in sigs]
        if len(order) == count:
            return new
        labels, count = new, len(order)


def _needs_keys(p: CartanPair) -> bool:
    return any(isinstance(x, Quadratic) for r in p.matrix for x in r)


class _Canon:
    __slots__ = ("m", "n", "free", "labels", "adj", "key")

    def __init__(self, p: CartanPair, keyed: bool):
        self.m = p.matrix
        self.n = p.n
        self.free = [self.m[i][i] == 0 for i in range(self.n)]
        self.labels = refined_labels(p)
        self.adj = [[j for j in range(self.n) if j != i and self.m[i][j] != 0] for i in range(self.n)]
        self.key = sort_key if keyed else _ident

    def scale_of(self, v, placed):
        """Factor for row v: its first nonzero entry among placed columns becomes -1."""
        if not self.free[v]:
            return 1
        row = self.m[v]
        for u in placed:
            x = row[u]
            if x != 0:
                return _neg_inv(x)
        return None

    def segment(self, v, placed, scales, sv):
        m = self.m
        key = self.key
        seg = [self.labels[v], key(m[v][v])]
        for u, su in zip(placed, scales):
            a = m[v][u]
            b = m[u][v]
            seg.append(key(tidy(a * sv)) if a != 0 else key(0))
            if b == 0:
                seg.append(key(0))
            elif su is None:
                # v is the first placed neighbour of u
                seg.append(key(-1))
            else:
                seg.append(key(tidy(b * su)))
        return tuple(seg)


def _ident(x):
    return x


def _neg_inv(x):
    return div(-1, x)


def _canonical_connected(p: CartanPair, keyed: bool):
    """Minimal code over connected-prefix orders; returns (code, order).

    The code of an order lists, node by node, the refined label, the diagonal
    entry and the entries linking the node to the nodes placed before it, read
    off the permuted matrix whose zero-diagonal rows are scaled so that their
    first nonzero entry is -1."""
    c = _Canon(p, keyed)
    n = c.n
    if n == 1:
        return ((c.labels[0], c.key(p.matrix[0][0])),), [0]
    best_label = min(c.labels)
    first = None
    states = []
    for v in range(n):
        if c.labels[v] != best_label:
            continue
        seg = c.segment(v, [], [], 1)
        if first is None or seg < first:
            first, states = seg, [([v], [None if c.free[v] else 1])]
        elif seg == first:
            states.append(([v], [None if c.free[v] else 1]))
    code = [first]
    for _ in range(1, n):
        best = None
        nxt = []
        for order, scales in states:
            placed = set(order)
            cand = sorted({u for w in order for u in c.adj[w] if u not in placed})
            for v in cand:
                sv = c.scale_of(v, order)
                seg = c.segment(v, order, scales, sv)
                if best is None or seg < best:
                    best, nxt = seg, []
                if seg == best:
                    new_scales = [(_neg_inv(c.m[u][v]) if s is None and c.m[u][v] != 0 else s)
                                  for u, s in zip(order, scales)]
                    nxt.append((order + [v], new_scales + [sv]))
        code.append(best)
        states = nxt
    return tuple(code), states[0][0]


def _apply_order(p: CartanPair, order: Sequence[int]) -> CartanPair:
    """Permute by order and rescale zero-diagonal rows so their first nonzero entry is -1."""
    m = p.matrix
    rows = []
    for v in order:
        row = [m[v][u] for u in order]
        if m[v][v] == 0:
            lead = next((x for x in row if x != 0), None)
            if lead is not None:
                f = _neg_inv(lead)
                row = [tidy(f * x) for x in row]
        rows.append(tuple(row))
    return CartanPair(tuple(rows), tuple(p.parities[v] for v in order))


_CANON_CACHE: dict = {}
_CACHE_LIMIT = 400_000


def canonical_order(p: CartanPair) -> list:
    """A permutation realizing the canonical form (components concatenated)."""
    keyed = _needs_keys(p)
    parts = []
    for comp in components(p):
        sub = principal_submatrix(p, comp)
        code, order = _canonical_connected(sub, keyed)
        parts.append((len(comp), code, [comp[i] for i in order]))
    parts.sort(key=lambda t: (t[0], t[1]))
    return [i for _, _, o in parts for i in o]


def canonical_form(p: CartanPair) -> CartanPair:
    key = (p.matrix, p.parities)
    hit = _CANON_CACHE.get(key)
    if hit is not None:
        return hit
    q = normalize(p)
    out = _apply_order(q, canonical_order(q))
    if len(_CANON_CACHE) > _CACHE_LIMIT:
        _CANON_CACHE.clear()
    _CANON_CACHE[key] = out
    _CANON_CACHE[(out.matrix, out.parities)] = out
    return out


def equivalent(p: CartanPair, q: CartanPair) -> bool:
    return canonical_form(p) == canonical_form(q)


def code_of(p: CartanPair, labels: Sequence[int], keyed: bool) -> tuple:
    """Code of an already permuted and scaled connected pair (reference version)."""
    key = sort_key if keyed else _ident
    m = p.matrix
    return tuple(
        tuple([labels[k], key(m[k][k])] + [key(x) for j in range(k) for x in (m[k][j], m[j][k])])
        for k in range(p.n)
    )


def brute_canonical_form(p: CartanPair) -> CartanPair:
    """Exhaustive reference: evaluate the code of every connected-prefix
    permutation of every component and keep the least."""
    q = normalize(p)
    keyed = _needs_keys(q)
    parts = []
    for comp in components(q):
        sub = principal_submatrix(q, comp)
        labels = refined_labels(sub)
        best = None
        for order in permutations(range(sub.n)):
            if any(all(sub.matrix[order[k]][order[j]] == 0 for j in range(k))
                   for k in range(1, sub.n)):
                continue
            code = code_of(_apply_order(sub, order), [labels[v] for v in order], keyed)
            if best is None or code < best[0]:
                best = (code, order)
        parts.append((len(comp), best[0], [comp[i] for i in best[1]]))
    parts.sort(key=lambda t: (t[0], t[1]))
    return _apply_order(q, [i for _, _, o in parts for i in o])


# documents -----------------------------------------------------------------

def pair_to_doc(p: CartanPair) -> dict:
    doc = {
        "size": p.n,
        "parities": ["odd" if x else "even" for x in p.parities],
        "matrix": [[format_scalar(x) for x in r] for r in p.matrix],
    }
    if p.label is not None:
        doc["label"] = p.label
    return doc


def pair_from_doc(doc: dict) -> CartanPair:
    try:
        n = int(doc["size"])
        rows = doc["matrix"]
        par = doc["parities"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CartanError(f"malformed pair document: {exc}") from None
    if len(rows) != n or len(par) != n:
        raise CartanError("pair document size mismatch")
    mat = [[parse_scalar(str(x)) for x in r] for r in rows]
    p = CartanPair.make(mat, [_parity(x) for x in par], doc.get("label"))
    check_zero_pattern(p)
    return p


def dumps_pair(p: CartanPair) -> str:
    return json.dumps(pair_to_doc(p), separators=(",", ":"))
