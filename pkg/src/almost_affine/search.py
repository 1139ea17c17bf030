"""Almost affine tests and the enumeration of almost affine classes.

A connected matrix always has a node whose removal leaves it connected, so
every almost affine matrix of size n is a connected Fin/Aff matrix of size
n - 1 with one node attached.  The search extends every catalog entry of rank
n - 1 by a new node, assigning its row and column one old node at a time and
pruning with the fact that every connected principal submatrix of size at
most n - 2 must be Fin.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .cartan import (
    EVEN,
    ODD,
    CartanError,
    CartanPair,
    NodeKind,
    canonical_form,
    check_zero_pattern,
    decompose,
    is_symmetrizable,
    normalize,
    pair_to_doc,
    principal_delete,
)
from .catalog import (
    AFF,
    FIN,
    NOT_FIN_AFF,
    Catalog,
    Classification,
    NotApplicable,
    classify_blocks,
    classify_component,
    default_catalog,
    growth_of,
    even_part,
)
from .reflect import (
    DEFAULT_LIMITS,
    DegenerateReflection,
    Limits,
    OrbitClass,
    OverflowReport,
    odd_reflect,
    orbit,
)
from .scalar import Quadratic, div, format_scalar, quadratic_roots, tidy

log = logging.getLogger(__name__)

ALMOST_AFFINE = "AlmostAffine"
NOT_ALMOST_AFFINE = "NotAlmostAffine"
INCONCLUSIVE = "Inconclusive"

__all__ = [
    "ALMOST_AFFINE", "NOT_ALMOST_AFFINE", "INCONCLUSIVE", "Witness", "MatrixTest",
    "AlmostAffineVerdict", "ClassRecord", "EnumerationResult", "almost_affine_matrix_test",
    "almost_affine_class_test", "classify_rank2", "enumerate_classes", "solve_parametric_rank3",
    "even_part", "NotApplicable", "CatalogTooSmall",
]


class CatalogTooSmall(ValueError):
    pass


@dataclass
class Witness:
    member: CartanPair
    node: Optional[int] = None  # deleted node, None when the pair itself is Fin/Aff
    block: Optional[tuple] = None  # indices of the offending block (in member numbering)
    classification: Optional[Classification] = None
    reflected_at: Optional[int] = None  # grey node whose reflection breaks the zero pattern
    via: Optional[int] = None  # the member is the input reflected at this node (input numbering)

    def describe(self) -> str:
        if self.reflected_at is not None:
            return f"reflection at node {self.reflected_at} breaks the zero pattern"
        if self.node is None:
            return f"pair itself is {self.classification.verdict} ({self.classification.name})"
        return f"deleting node {self.node} leaves block {list(self.block)} of type {NOT_FIN_AFF}"

    def to_doc(self) -> dict:
        return {
            "member": pair_to_doc(self.member),
            "node": self.node,
            "block": None if self.block is None else list(self.block),
            "via": self.via,
            "detail": self.describe(),
        }


@dataclass
class MatrixTest:
    passed: bool
    annotations: list  # per deleted node: list of block names
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.passed


def block_names(p: CartanPair, k: int, c: Catalog) -> list:
    return [cl.name for _, cl in classify_blocks(principal_delete(p, k), c)]


def almost_affine_matrix_test(p: CartanPair, c: Catalog) -> MatrixTest:
    """Matrix-level test: p is not Fin/Aff but every principal deletion is a sum
    of Fin/Aff blocks."""
    p = normalize(p)
    full = classify_component(p, c)
    if full.finite_or_affine:
        return MatrixTest(False, [], Witness(p, None, None, full))
    notes = []
    for k in range(p.n):
        names = []
        for idx, cl in classify_blocks(principal_delete(p, k), c):
            if not cl.finite_or_affine:
                orig = tuple(i if i < k else i + 1 for i in idx)
                return MatrixTest(False, notes, Witness(p, k, orig, cl))
            names.append(cl.name)
        notes.append(names)
    return MatrixTest(True, notes)


@dataclass
class AlmostAffineVerdict:
    status: str
    orbit: Optional[OrbitClass] = None
    witness: Optional[Witness] = None
    overflow: Optional[OverflowReport] = None
    annotations: list = field(default_factory=list)  # per orbit member
    witnesses: list = field(default_factory=list)  # every failing one-step reflection of the input

    def to_doc(self) -> dict:
        doc = {"status": self.status}
        if self.orbit is not None:
            doc["orbit"] = self.orbit.to_doc()
            doc["annotations"] = self.annotations
        if self.witness is not None:
            doc["witness"] = self.witness.to_doc()
        if len(self.witnesses) > 1:
            doc["witnesses"] = [w.to_doc() for w in self.witnesses]
        if self.overflow is not None:
            doc["overflow"] = self.overflow.to_doc()
        return doc


def almost_affine_class_test(p: CartanPair, c: Catalog, limits: Limits = DEFAULT_LIMITS
                             ) -> AlmostAffineVerdict:
    """Every member of the odd reflection orbit must pass the matrix test.

    The input and its reflections at each grey node are screened first, in the
    input's own numbering, so a failure one step away is reported against the
    node that produces it."""
    results: dict = {}

    def test(q):
        key = canonical_form(q)
        if key not in results:
            results[key] = almost_affine_matrix_test(key, c)
        return results[key]

    p = normalize(p)
    if not test(p).passed:
        w = almost_affine_matrix_test(p, c).witness
        return AlmostAffineVerdict(NOT_ALMOST_AFFINE, witness=w, witnesses=[w])
    found = []
    for k in p.grey_nodes():
        try:
            q = odd_reflect(p, k)
        except DegenerateReflection:
            found.append(Witness(p, reflected_at=k))
            continue
        if not test(q).passed:
            w = almost_affine_matrix_test(q, c).witness
            found.append(Witness(q, w.node, w.block, w.classification, via=k))
    if found:
        return AlmostAffineVerdict(NOT_ALMOST_AFFINE, witness=found[0], witnesses=found)

    res, bad = orbit(p, limits, stop=lambda q: not test(q).passed)
    if isinstance(res, OverflowReport):
        if res.reason == "degenerate reflection":
            # the orbit reaches a matrix that is not a Cartan matrix at all
            member = res.partial.members[res.extra["member"]]
            w = Witness(member, reflected_at=res.extra["node"])
            return AlmostAffineVerdict(NOT_ALMOST_AFFINE, orbit=res.partial, witness=w, witnesses=[w])
        return AlmostAffineVerdict(INCONCLUSIVE, overflow=res)
    if bad is not None:
        w = results[bad].witness
        return AlmostAffineVerdict(NOT_ALMOST_AFFINE, orbit=res, witness=w, witnesses=[w])
    return AlmostAffineVerdict(ALMOST_AFFINE, orbit=res,
                               annotations=[test(m).annotations for m in res.members])


DECOMPOSABLE = "Decomposable"


def classify_rank2(p: CartanPair, c: Catalog) -> str:
    """Fin, Aff, AlmostAffine or Decomposable for a 2x2 pair."""
    if p.n != 2:
        raise ValueError("need a 2x2 pair")
    p = normalize(p)
    if p.matrix[0][1] == 0 and p.matrix[1][0] == 0:
        return DECOMPOSABLE
    cl = classify_component(p, c)
    return cl.verdict if cl.finite_or_affine else ALMOST_AFFINE


# enumeration -----------------------------------------------------------------

@dataclass
class ClassRecord:
    representative: CartanPair
    orbit: OrbitClass
    annotations: list
    symmetrizable: bool
    super: bool
    constraint: Optional[tuple] = None  # (c2, c1, c0) for parametric classes
    parameter: Optional[object] = None

    @property
    def key(self):
        return self.representative

    def to_doc(self) -> dict:
        doc = {
            "representative": pair_to_doc(self.representative),
            "orbit": self.orbit.to_doc(),
            "annotations": self.annotations,
            "symmetrizable": self.symmetrizable,
            "super": self.super,
        }
        if self.constraint is not None:
            doc["constraint"] = list(self.constraint)
            doc["parameter"] = format_scalar(self.parameter)
        return doc


@dataclass
class EnumerationResult:
    size: int
    mode: str
    classes: list
    inconclusive: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def super_classes(self) -> list:
        return [r for r in self.classes if r.super]

    def to_doc(self) -> dict:
        return {
            "size": self.size,
            "mode": self.mode,
            "stats": self.stats,
            "classes": [r.to_doc() for r in self.classes],
            "inconclusive": [o.to_doc() for o in self.inconclusive],
        }


def _sort_key(p: CartanPair) -> str:
    return repr(p)


def _record(verdict: AlmostAffineVerdict) -> ClassRecord:
    members = verdict.orbit.members
    order = sorted(range(len(members)), key=lambda i: _sort_key(members[i]))
    rep = members[order[0]]
    return ClassRecord(
        representative=rep,
        orbit=verdict.orbit,
        annotations=verdict.annotations,
        symmetrizable=is_symmetrizable(rep),
        super=any(not m.is_even() for m in members),
    )


def _bound_ok(p: CartanPair, e_max: int) -> bool:
    """White/black entries and primitive grey rows within the entry bound."""
    for i, row in enumerate(p.matrix):
        if row[i] == 0:
            vals = _primitive_row(row)
            if vals is None:
                return False
        else:
            vals = row
            if not all(isinstance(x, int) for x in row):
                return False
        if any(abs(x) > e_max for x in vals):
            return False
    return True


def _primitive_row(row):
    """Primitive integer multiple of a rational row (None if irrational)."""
    if any(isinstance(x, Quadratic) for x in row):
        return None
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def parametric_members(rank: int, e_max: int, limits: Limits = Limits(max_members=16)) -> list:
    """Integer members (within the entry bound) of the parametric Fin/Aff families
    d(alpha), svect_alpha(1|2) (rank 3) and d(alpha)^(1) (rank 4)."""
    seeds = []
    direct = []  # svect members all share the seed shape, no orbit needed
    rng = [x for x in range(-e_max, e_max + 1) if x]
    if rank == 3:
        for x in rng:
            for y in rng:
                if gcd(x, y) == 1 and x + y != 0:
                    seeds.append(CartanPair.make([[2, -1, 0], [x, 0, y], [0, -1, 2]], [EVEN, ODD, EVEN]))
        for num in range(-4 * e_max, 4 * e_max + 1):
            for den in range(1, 4 * e_max + 1):
                if gcd(num, den) != 1 or num == 0:
                    continue
                a = Fraction(num, den)
                rows = [[2, -1, -1], [1 - a, 0, a], [1 + a, -a, 0]]
                if 0 in (rows[1][0], rows[2][0]):
                    continue
                direct.append(normalize(CartanPair.make(rows, [EVEN, ODD, ODD])))
    elif rank == 4:
        for x in rng:
            for y in rng:
                z = -x - y
                if z and abs(z) <= e_max and gcd(gcd(x, y), z) == 1:
                    seeds.append(CartanPair.make(
                        [[0, x, y, z], [-1, 2, 0, 0], [-1, 0, 2, 0], [-1, 0, 0, 2]],
                        [ODD, EVEN, EVEN, EVEN]))
    out = {canonical_form(m) for m in direct if _bound_ok(m, e_max)}
    for s in seeds:
        res = orbit(s, limits)[0]
        members = res.partial.members if isinstance(res, OverflowReport) else res.members
        for m in members:
            if _bound_ok(m, e_max):
                out.add(m)
    return sorted(out, key=_sort_key)


_KIND_DIAG = {NodeKind.WHITE: (2, EVEN), NodeKind.BLACK: (1, ODD), NodeKind.GREY: (0, ODD)}


class _Extender:
    """Backtracking search for all one-node extensions of a connected pair."""

    def __init__(self, base: CartanPair, vkind: NodeKind, c: Catalog, e_max: int):
        self.base = base
        self.c = c
        self.e = e_max
        self.m = base.n
        self.n = base.n + 1
        diag, par = _KIND_DIAG[vkind]
        self.vkind = vkind
        self.par = tuple(base.parities) + (par,)
        n, m = self.n, self.m
        self.A = [list(r) + [0] for r in base.matrix] + [[0] * m + [diag]]
        self.order = self._bfs_order()
        self.adj = [[j for j in range(m) if j != i and base.matrix[i][j] != 0] for i in range(m)]
        self.col_options = [self._col_options(j) for j in range(m)]
        self.found: list = []

    def _bfs_order(self) -> list:
        seen = [0]
        k = 0
        while k < len(seen):
            i = seen[k]
            for j in range(self.m):
                if j not in seen and self.base.matrix[i][j] != 0:
                    seen.append(j)
            k += 1
        return seen

    def _col_options(self, j: int) -> list:
        """Values allowed for A[j][v]."""
        row = self.base.matrix[j]
        if row[j] != 0:
            return [-t for t in range(1, self.e + 1)]
        prim = _primitive_row(row)
        nz = next(x for x in row if x != 0)
        pnz = next(x for x in prim if x != 0)
        scale = div(nz, pnz)
        return [tidy(scale * t) for t in range(-self.e, self.e + 1) if t]

    def _row_options(self, first: bool) -> list:
        if self.vkind != NodeKind.GREY:
            return [-t for t in range(1, self.e + 1)]
        if first:
            return [-t for t in range(1, self.e + 1)]
        return [t for t in range(-self.e, self.e + 1) if t]

    def _component(self, decided: list) -> list:
        v = self.m
        A = self.A
        comp = [v]
        stack = [v]
        dec = set(decided)
        while stack:
            i = stack.pop()
            for j in decided:
                if j in dec and j not in comp and A[i][j] != 0:
                    comp.append(j)
                    stack.append(j)
        return sorted(comp)

    def _ok(self, comp: list) -> bool:
        if len(comp) == self.n:
            return True
        A = self.A
        rows = tuple(tuple(A[i][j] for j in comp) for i in comp)
        par = tuple(self.par[i] for i in comp)
        v = self.c._verdicts.get((rows, par))
        if v is None:
            v = growth_of(CartanPair(rows, par), self.c)
        if len(comp) <= self.n - 2:
            return v == FIN
        return v != NOT_FIN_AFF

    def run(self) -> list:
        self._step(0, [], 0, [self.m])
        return self.found

    def _step(self, idx: int, decided: list, degree: int, comp: list) -> None:
        if idx == self.m:
            if degree:
                self._leaf()
            return
        j = self.order[idx]
        A = self.A
        v = self.m
        # j not adjacent to v
        decided.append(j)
        if any(A[j][u] != 0 for u in comp):
            new = self._component(decided)
            if len(new) == len(comp) or self._ok(new):
                self._step(idx + 1, decided, degree, new)
        else:
            self._step(idx + 1, decided, degree, comp)
        # j adjacent to v
        for a in self._row_options(degree == 0):
            for b in self.col_options[j]:
                A[v][j] = a
                A[j][v] = b
                new = self._component(decided)
                if self._ok([v, j]) and self._ok(new):
                    self._step(idx + 1, decided, degree + 1, new)
        A[v][j] = 0
        A[j][v] = 0
        decided.pop()

    def _leaf(self) -> None:
        rows = tuple(tuple(r) for r in self.A)
        p = CartanPair(rows, self.par)
        if self.vkind == NodeKind.GREY:
            if _primitive_row(rows[self.m]) != [x for x in rows[self.m]]:
                return
        p = normalize(p)
        if almost_affine_matrix_test(p, self.c).passed:
            self.found.append(canonical_form(p))


def _bases(size: int, mode: str, c: Catalog, e_max: int) -> list:
    rank = size - 1
    out = []
    for e in c:
        if e.rank != rank:
            continue
        if mode == "even" and e.kind != "even":
            continue
        if _bound_ok(e.pair, e_max):
            out.append(e.pair)
    if mode == "super":
        known = set(out)
        out.extend(m for m in parametric_members(rank, e_max) if m not in known)
    return sorted(out, key=_sort_key)


def candidates(size: int, mode: str = "super", c: Optional[Catalog] = None,
               progress: Optional[Callable[[str], None]] = None) -> set:
    """Canonical matrices of the given size passing the matrix-level test."""
    c = c or default_catalog(size)
    if c.max_rank < size:
        raise CatalogTooSmall(f"catalog rank {c.max_rank} < {size}")
    e_max = c.e_max
    kinds = [NodeKind.WHITE] if mode == "even" else [NodeKind.WHITE, NodeKind.BLACK, NodeKind.GREY]
    bases = _bases(size, mode, c, e_max)
    found = set()
    for i, base in zip(range(len(bases)), bases):
        for kind in kinds:
            found.update(_Extender(base, kind, c, e_max).run())
        if progress and (i + 1) % 200 == 0:
            progress(f"size {size}: {i + 1}/{len(bases)} bases, {len(found)} matrices")
    return found


def _work(args):
    size, mode, chunk = args
    c = default_catalog(size)
    e_max = c.e_max
    kinds = [NodeKind.WHITE] if mode == "even" else [NodeKind.WHITE, NodeKind.BLACK, NodeKind.GREY]
    out = set()
    for base in chunk:
        for kind in kinds:
            out.update(_Extender(base, kind, c, e_max).run())
    return out


def enumerate_classes(size: int, mode: str = "super", c: Optional[Catalog] = None, jobs: int = 1,
                      limits: Limits = DEFAULT_LIMITS, parametric: bool = True,
                      progress: Optional[Callable[[str], None]] = None) -> EnumerationResult:
    """All almost affine classes of the given size.

    mode "super" colours the new node white, black or grey; "even" keeps every
    node white.  In super mode the rank-3 parametric classes are added."""
    if size < 3:
        raise ValueError("size must be at least 3")
    if mode not in ("super", "even"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    c = c or default_catalog(size)
    if c.max_rank < size:
        raise CatalogTooSmall(f"catalog rank {c.max_rank} < {size}")
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        bases = _bases(size, mode, c, c.e_max)
        chunks = [bases[i::jobs * 4] for i in range(jobs * 4)]
        found = set()
        with ProcessPoolExecutor(jobs) as ex:
            for part in ex.map(_work, [(size, mode, ch) for ch in chunks]):
                found |= part
    else:
        found = candidates(size, mode, c, progress)
    t1 = time.perf_counter()
    classes = []
    inconclusive = []
    seen: set = set()
    rejected = 0
    for p in sorted(found, key=_sort_key):
        if p in seen:
            continue
        verdict = almost_affine_class_test(p, c, limits)
        if verdict.status == ALMOST_AFFINE:
            seen.update(verdict.orbit.members)
            classes.append(_record(verdict))
        elif verdict.status == INCONCLUSIVE:
            seen.add(p)
            inconclusive.append(verdict.overflow)
        else:
            seen.add(p)
            rejected += 1
    n_integer = len(classes)
    if mode == "super" and size == 3 and parametric:
        for sol in solve_parametric_rank3(c, limits):
            classes.append(sol.record)
    classes.sort(key=lambda r: _sort_key(r.representative))
    supers = [r for r in classes if r.super]
    result = EnumerationResult(size, mode, classes, inconclusive)
    result.stats = {
        "classes": len(classes),
        "super_classes": len(supers),
        "all_white_classes": len(classes) - len(supers),
        "integer_classes": n_integer,
        "parametric_classes": len(classes) - n_integer,
        "symmetrizable": sum(r.symmetrizable for r in classes),
        "candidate_matrices": len(found),
        "rejected_orbits": rejected,
        "inconclusive": len(inconclusive),
        "search_seconds": round(t1 - t0, 3),
        "total_seconds": round(time.perf_counter() - t0, 3),
    }
    return result


# rank-3 parametric classes ----------------------------------------------------

PARAMETRIC_TEMPLATE_SHIFTS = (2, 3)

_FA_EVEN_PAIRS = {(-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1), (-2, -2), (-1, -4), (-4, -1)}


@dataclass
class ParametricSolution:
    shift: int
    constraint: tuple  # (c2, c1, c0)
    root: object
    record: ClassRecord
    inverse_equivalent: bool


def template(shift: int, a) -> CartanPair:
    """Grey triangle [[0, 1, a], [-1, 0, m + a], [-1, m + 1/a, 0]]."""
    rows = [[0, 1, a], [-1, 0, tidy(shift + a)], [-1, tidy(shift + div(1, a)), 0]]
    return CartanPair.make(rows, [ODD, ODD, ODD])


def _symbolic_orbit(shift: int):
    import sympy as sp

    a = sp.Symbol("a")
    M = sp.Matrix([[0, 1, a], [-1, 0, shift + a], [-1, shift + 1 / a, 0]])
    members = [(M, [ODD, ODD, ODD])]
    for k in range(3):
        members.append(_sym_reflect(M, [ODD, ODD, ODD], k))
    return a, members


def _sym_reflect(M, par, k):
    import sympy as sp

    n = M.shape[0]
    b = [sp.simplify(M[i, k] / M[k, i]) if M[i, k] != 0 else 0 for i in range(n)]
    cc = [1 if M[j, k] != 0 else 0 for j in range(n)]
    b[k] = cc[k] = -2
    N = sp.zeros(n, n)
    for i in range(n):
        for j in range(n):
            N[i, j] = sp.simplify(M[i, j] + b[i] * M[k, j] + cc[j] * M[i, k])
    newpar = [(par[i] + cc[i]) % 2 for i in range(n)]
    for i in range(n):
        d = sp.simplify(N[i, i])
        if d != 0:
            f = 2 / d if newpar[i] == EVEN else 1 / d
            for j in range(n):
                N[i, j] = sp.simplify(N[i, j] * f)
    return N, newpar


def _constraints(M, par) -> list:
    """Per 2x2 principal block: list of alternative equation systems (each a
    list of expressions that must vanish); an empty alternative means the block
    imposes nothing."""
    out = []
    n = M.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if M[i, j] == 0:
                continue
            di, dj = M[i, i], M[j, j]
            ki = "G" if di == 0 else ("W" if par[i] == EVEN else "B")
            kj = "G" if dj == 0 else ("W" if par[j] == EVEN else "B")
            x, y = M[i, j], M[j, i]
            if ki == "G" and kj == "G":
                continue
            if ki == "G":
                ki, kj, x, y = kj, ki, y, x
            if kj == "G":
                vals = (-1, -2) if ki == "W" else (-1,)
                out.append([[x - v] for v in vals])
                continue
            ex = x if ki == "W" else 2 * x
            ey = y if kj == "W" else 2 * y
            out.append([[ex - p, ey - q] for p, q in sorted(_FA_EVEN_PAIRS)])
    return out


def _roots_of(exprs, a) -> tuple:
    """Rational and quadratic roots of the first nontrivial equation, plus
    factors of higher degree that were skipped."""
    import sympy as sp

    for e in exprs:
        num = sp.numer(sp.together(e))
        poly = sp.Poly(sp.expand(num), a)
        if poly.is_zero:
            continue
        roots = set()
        skipped = []
        for fac, _ in sp.factor_list(poly)[1]:
            coeffs = [Fraction(int(sp.numer(x)), int(sp.denom(x))) for x in fac.all_coeffs()]
            if len(coeffs) == 2:
                roots.add(tidy(-coeffs[1] / coeffs[0]))
            elif len(coeffs) == 3:
                for r in quadratic_roots(*coeffs):
                    roots.add(r)
            elif len(coeffs) > 3:
                skipped.append(fac.as_expr())
        return roots, skipped
    return None, []


def _candidate_roots(shift: int) -> tuple:
    a, members = _symbolic_orbit(shift)
    cand = None
    skipped = []
    for M, par in members:
        for alts in _constraints(M, par):
            union: set = set()
            free = False
            for eqs in alts:
                r, sk = _roots_of(eqs, a)
                skipped.extend(sk)
                if r is None:
                    free = True
                    break
                union |= r
            if free:
                continue
            cand = union if cand is None else cand & union
    return (cand or set()), skipped


def _min_poly(x) -> tuple:
    """(c2, c1, c0) primitive integers with positive leading coefficient."""
    s = x.a * -2
    pr = x.a * x.a - x.b * x.b * x.d
    coeffs = [Fraction(1), s, pr]
    den = 1
    for q in coeffs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in coeffs]
    g = gcd(gcd(ints[0], ints[1]), ints[2])
    return tuple(v // g for v in ints)


def solve_parametric_rank3(c: Optional[Catalog] = None, limits: Limits = DEFAULT_LIMITS,
                           report: Optional[list] = None) -> list:
    """Irrational values of a for which the grey triangle templates give
    almost affine classes (one solution per quadratic constraint)."""
    c = c or default_catalog(3)
    sols = []
    for shift in PARAMETRIC_TEMPLATE_SHIFTS:
        roots, skipped = _candidate_roots(shift)
        for fac in skipped:
            _note(report, shift, fac, "factor of degree > 2 skipped")
        done = set()
        for r in sorted(roots, key=lambda x: (float(x), str(x))):
            if r == 0:
                _note(report, shift, r, "a = 0 is not allowed")
                continue
            try:
                p = template(shift, r)
                check_zero_pattern(p)
            except (CartanError, ZeroDivisionError) as exc:  # vanishing entry or broken zero pattern
                _note(report, shift, r, f"degenerate template: {exc}")
                continue
            verdict = almost_affine_class_test(p, c, limits)
            if not isinstance(r, Quadratic):
                _note(report, shift, r, f"rational root ({verdict.status})")
                continue
            if verdict.status != ALMOST_AFFINE:
                _note(report, shift, r, verdict.status)
                continue
            poly = _min_poly(r)
            if poly in done:
                continue
            done.add(poly)
            rec = _record(verdict)
            rec.constraint = poly
            rec.parameter = r
            inv = canonical_form(template(shift, div(1, r))) in set(verdict.orbit.members)
            sols.append(ParametricSolution(shift, poly, r, rec, inv))
    return sols


def _note(report, shift, value, reason):
    msg = f"template shift {shift}, a = {value}: {reason}"
    log.debug(msg)
    if report is not None:
        report.append(msg)


def reflect_all(p: CartanPair) -> dict:
    """Reflections of p at every grey node."""
    return {k: odd_reflect(p, k) for k in p.grey_nodes()}
