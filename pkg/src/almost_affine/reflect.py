"""Odd isotropic reflections and their orbits."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .cartan import (
    EVEN,
    ODD,
    CartanError,
    CartanPair,
    NonSymmetricZeroPattern,
    canonical_form,
    check_zero_pattern,
    normalize,
    pair_from_doc,
    pair_to_doc,
)
from .scalar import Quadratic, div, tidy


class NotIsotropicOdd(CartanError):
    pass


class DegenerateReflection(CartanError):
    """The reflected matrix has A_ij = 0 but A_ji != 0 for some pair."""


@dataclass(frozen=True)
class Limits:
    max_members: int = 10_000
    max_entry_height: int = 10**6

    @classmethod
    def parse(cls, text: str) -> "Limits":
        """Parse "members=K,height=H" (either part optional)."""
        kw = {}
        for part in filter(None, (t.strip() for t in text.split(","))):
            key, _, val = part.partition("=")
            if key == "members":
                kw["max_members"] = int(val)
            elif key == "height":
                kw["max_entry_height"] = int(val)
            else:
                raise ValueError(f"unknown limit {key!r}")
        return cls(**kw)


DEFAULT_LIMITS = Limits()


def odd_reflect(p: CartanPair, k: int) -> CartanPair:
    """Reflection in the isotropic odd simple root k, renormalized."""
    n = p.n
    m = p.matrix
    if not 0 <= k < n:
        raise NotIsotropicOdd(f"node {k} out of range")
    if p.parities[k] != ODD or m[k][k] != 0:
        raise NotIsotropicOdd(f"node {k} is not grey")
    b = [div(m[i][k], m[k][i]) if m[i][k] != 0 else 0 for i in range(n)]
    c = [1 if m[j][k] != 0 else 0 for j in range(n)]
    b[k] = c[k] = -2
    rows = []
    for i in range(n):
        mi, bi, mik = m[i], b[i], m[i][k]
        mk = m[k]
        rows.append(tuple(tidy(mi[j] + bi * mk[j] + c[j] * mik) for j in range(n)))
    par = tuple((p.parities[i] + c[i]) % 2 for i in range(n))
    # a reflected even root keeps the usual scale 2 even when the raw
    # diagonal comes out as 1 (star nodes never arise this way)
    rows = [tuple(tidy(div(2 * x, r[i])) for x in r) if par[i] == EVEN and r[i] != 0 else r
            for i, r in enumerate(rows)]
    out = CartanPair(tuple(rows), par)
    try:
        check_zero_pattern(out)
    except NonSymmetricZeroPattern as exc:
        raise DegenerateReflection(str(exc)) from None
    return normalize(out)


def entry_height(x) -> int:
    if isinstance(x, int):
        return abs(x)
    if isinstance(x, Fraction):
        return max(abs(x.numerator), x.denominator)
    if isinstance(x, Quadratic):
        return max(entry_height(x.a), entry_height(x.b))
    raise TypeError(type(x))


def pair_height(p: CartanPair) -> int:
    return max(entry_height(x) for r in p.matrix for x in r)


@dataclass
class OrbitClass:
    members: list
    transitions: list
    seed: CartanPair
    seed_index: int = 0

    def __len__(self):
        return len(self.members)

    def index(self, p: CartanPair) -> int:
        return self.members.index(canonical_form(p))

    def __contains__(self, p: CartanPair) -> bool:
        return canonical_form(p) in set(self.members)

    def to_doc(self) -> dict:
        return {
            "members": [pair_to_doc(m) for m in self.members],
            "transitions": [list(r) for r in self.transitions],
            "seed_index": self.seed_index,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "OrbitClass":
        members = [pair_from_doc(d) for d in doc["members"]]
        return cls(members, [list(r) for r in doc["transitions"]], members[doc.get("seed_index", 0)],
                   doc.get("seed_index", 0))


@dataclass
class OverflowReport:
    reason: str
    partial: OrbitClass
    extra: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {"overflow": self.reason, "partial": self.partial.to_doc()}


def orbit(p: CartanPair, limits: Limits = DEFAULT_LIMITS, stop=None):
    """Breadth-first closure under odd reflections.

    ``stop`` is an optional predicate on members; when it returns true the
    search ends early and an incomplete OrbitClass is returned together with
    the offending member (used by the class-level almost affine test)."""
    seed = canonical_form(normalize(p))
    members = [seed]
    index = {seed: 0}
    transitions: list = []
    queue = deque([0])
    if stop is not None and stop(seed):
        return OrbitClass(members, [[None] * seed.n], seed), seed
    while queue:
        i = queue.popleft()
        cur = members[i]
        row: list = [None] * cur.n
        for k in cur.grey_nodes():
            try:
                q = canonical_form(odd_reflect(cur, k))
            except DegenerateReflection as exc:
                transitions.append(row)
                return OverflowReport("degenerate reflection", _partial(members, transitions, seed),
                                      {"member": i, "node": k, "detail": str(exc)}), None
            j = index.get(q)
            if j is None:
                if len(members) >= limits.max_members:
                    transitions.append(row)
                    return OverflowReport("max_members", _partial(members, transitions, seed)), None
                if pair_height(q) > limits.max_entry_height:
                    transitions.append(row)
                    return OverflowReport("max_entry_height", _partial(members, transitions, seed)), None
                j = len(members)
                members.append(q)
                index[q] = j
                queue.append(j)
                if stop is not None and stop(q):
                    row[k] = j
                    transitions.append(row)
                    return _partial(members, transitions, seed), q
            row[k] = j
        transitions.append(row)
    return OrbitClass(members, transitions, seed), None


def _partial(members, transitions, seed) -> OrbitClass:
    rows = list(transitions) + [[None] * m.n for m in members[len(transitions):]]
    return OrbitClass(list(members), rows, seed)


def reflection_orbit(p: CartanPair, limits: Limits = DEFAULT_LIMITS):
    """OrbitClass, or OverflowReport when a limit is hit."""
    res, _ = orbit(p, limits)
    return res


def tables_match(t1: list, t2: list) -> bool:
    """Whether two transition tables agree up to relabeling members and, within
    each row, the nodes."""
    if len(t1) != len(t2):
        return False
    n = len(t1)

    def row_sig(row, relabel):
        return sorted((-1 if x is None else relabel[x]) for x in row)

    ident = list(range(n))
    target = [row_sig(r, ident) for r in t2]
    for perm in permutations(range(n)):
        # perm maps members of t1 to members of t2
        if all(row_sig(t1[i], perm) == target[perm[i]] for i in range(n)):
            return True
    return False
