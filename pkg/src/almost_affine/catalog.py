"""Finite and affine Cartan matrices: Vinberg's test, family catalog, matchers.

The catalog maps canonical pairs to family names.  Even matrices are built
from simple root vectors; white/black super matrices are obtained from even
ones by halving rows; grey families come from simple root systems written in
letters (epsilon/delta style) and are closed under odd reflections.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, lcm
from typing import Iterable, Optional

from .cartan import (
    EVEN,
    ODD,
    CartanError,
    CartanPair,
    NodeKind,
    canonical_form,
    decompose,
    is_indecomposable,
    normalize,
    pair_from_doc,
    pair_to_doc,
    principal_delete,
)
from .reflect import DegenerateReflection, Limits, odd_reflect, orbit, OverflowReport
from .scalar import Quadratic, div, format_scalar, sign, tidy

FIN = "Fin"
AFF = "Aff"
IND = "Ind"
NOT_FIN_AFF = "NotFinAff"


class PreconditionViolation(CartanError):
    pass


class StarOrSunNode(CartanError):
    pass


class SeedOrbitOverflow(CartanError):
    pass


@dataclass(frozen=True)
class Classification:
    verdict: str
    name: Optional[str] = None
    note: Optional[str] = None

    @property
    def finite_or_affine(self) -> bool:
        return self.verdict != NOT_FIN_AFF

    def __str__(self):
        return self.name if self.name else self.verdict


NOT_CLASSIFIED = Classification(NOT_FIN_AFF)


@dataclass(frozen=True)
class CatalogEntry:
    pair: CartanPair
    family: str
    rank: int
    kind: str  # "even" or "super"
    growth: str

    def to_doc(self) -> dict:
        doc = pair_to_doc(self.pair)
        doc.update(family=self.family, growth=self.growth, rank=self.rank, kind=self.kind)
        return doc


# Vinberg ---------------------------------------------------------------------

def _check_vinberg(p: CartanPair) -> None:
    n = p.n
    for i in range(n):
        if p.parities[i] != EVEN or p.matrix[i][i] != 2:
            raise PreconditionViolation("need an even pair with diagonal 2")
        for j in range(n):
            if i != j:
                x = p.matrix[i][j]
                if sign(x) > 0:
                    raise PreconditionViolation(f"positive off-diagonal entry at ({i}, {j})")
                if (x == 0) != (p.matrix[j][i] == 0):
                    raise PreconditionViolation("zero pattern is not symmetric")
    if not is_indecomposable(p):
        raise PreconditionViolation("pair is decomposable")


def leading_minors(rows) -> list:
    """Leading principal minors D_1..D_n by fraction-free (Bareiss) elimination.

    Without pivoting a zero minor stops the elimination; the remaining minors
    are then computed directly."""
    n = len(rows)
    m = [list(r) for r in rows]
    out = []
    prev = 1
    for k in range(n):
        piv = m[k][k]
        out.append(piv)
        if piv == 0:
            out.extend(_det([r[: j + 1] for r in rows[: j + 1]]) for j in range(k + 1, n))
            return out
        for i in range(k + 1, n):
            mik = m[i][k]
            mi, mk = m[i], m[k]
            for j in range(k + 1, n):
                mi[j] = _exact(mi[j] * piv - mik * mk[j], prev)
        prev = piv
    return out


def _exact(x, y):
    if type(x) is int and type(y) is int:
        return x // y
    return tidy(x / y)


def _det(rows) -> object:
    """Determinant by Gaussian elimination over the field of the entries."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = div(m[i][k], m[k][k])
                m[i] = [tidy(a - f * b) for a, b in zip(m[i], m[k])]
    return tidy(det)


def determinant(p: CartanPair):
    return _det(p.matrix)


def vinberg_class(p: CartanPair) -> str:
    """Fin, Aff or Ind for an indecomposable even matrix with diagonal 2.

    Such a matrix is a Z-matrix, so it is Fin exactly when every leading
    principal minor is positive and Aff exactly when the first n-1 are
    positive and the determinant vanishes."""
    _check_vinberg(p)
    minors = leading_minors(p.matrix)
    if all(sign(d) > 0 for d in minors[:-1]):
        s = sign(minors[-1])
        if s > 0:
            return FIN
        if s == 0:
            return AFF
    return IND


def vinberg_brute(p: CartanPair) -> str:
    """Reference version over all principal minors."""
    _check_vinberg(p)
    n = p.n
    proper = all(
        sign(_det([[p.matrix[i][j] for j in s] for i in s])) > 0
        for r in range(1, n) for s in combinations(range(n), r)
    )
    d = sign(_det(p.matrix))
    if proper and d > 0:
        return FIN
    if proper and d == 0:
        return AFF
    return IND


# root models -----------------------------------------------------------------

class _Letters:
    """Orthogonal basis vectors with given squared lengths."""

    def __init__(self, forms: dict):
        self.forms = {k: Fraction(v) for k, v in forms.items()}

    def ip(self, u: dict, v: dict):
        return sum((c * v.get(k, 0) * self.forms[k] for k, c in u.items()), Fraction(0))


def _vec(*terms) -> dict:
    """_vec((1, 'e1'), (-1, 'd1')) -> {'e1': 1, 'd1': -1}"""
    out: dict = {}
    for c, k in terms:
        out[k] = out.get(k, 0) + Fraction(c)
    return {k: c for k, c in out.items() if c != 0}


def _neg(u: dict) -> dict:
    return {k: -c for k, c in u.items()}


def _add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c != 0}


def cartan_from_roots(letters: _Letters, roots: list) -> CartanPair:
    """roots: list of (vector, parity)."""
    rows = []
    for a, pa in roots:
        s = letters.ip(a, a)
        row = []
        for b, _ in roots:
            x = letters.ip(a, b)
            if s == 0:
                row.append(x)
            elif pa == EVEN:
                row.append(2 * x / s)
            else:
                row.append(x / s)
        rows.append([tidy(x) for x in row])
    for (a, pa), row in zip(roots, rows):
        if letters.ip(a, a) == 0 and pa == EVEN:
            raise CartanError("isotropic even root in a seed")
    return normalize(CartanPair.make(rows, [pa for _, pa in roots]))


class _Word:
    """An ordered list of letters for osp/sl type root systems.

    Each letter has a type ('so' or 'sp'), a parity and a squared length."""

    def __init__(self, spec: list):
        self.spec = spec  # (name, type, parity, form)
        self.letters = _Letters({nm: f for nm, _, _, f in spec})

    def root(self, *terms) -> tuple:
        v = _vec(*((c, self.spec[i][0]) for c, i in terms))
        par = sum(abs(int(c)) * self.spec[i][2] for c, i in terms) % 2
        return v, par

    def chain(self) -> list:
        return [self.root((1, i), (-1, i + 1)) for i in range(len(self.spec) - 1)]

    def osp_tail(self, so_odd: bool) -> tuple:
        k = len(self.spec) - 1
        if so_odd:
            return self.root((1, k))
        if self.spec[k][1] == "sp":
            v, _ = self.root((2, k))
            return v, EVEN
        return self.root((1, k - 1), (1, k))

    def osp(self, so_odd: bool) -> list:
        return self.chain() + [self.osp_tail(so_odd)]

    def first_pair(self, double_type: str) -> tuple:
        """2*x1 if x1 has type ``double_type``, else x1 + x2 (as a root)."""
        if self.spec[0][1] == double_type:
            v, _ = self.root((2, 0))
            return v, EVEN
        return self.root((1, 0), (1, 1))

    def cartan(self, roots: list) -> CartanPair:
        return cartan_from_roots(self.letters, roots)


def _osp_word(so: int, sp: int, sp_first: bool = True, so_parity=EVEN, sp_parity=ODD) -> _Word:
    so_l = [(f"e{i}", "so", so_parity, 1 if so_parity == EVEN else -1) for i in range(1, so + 1)]
    sp_l = [(f"d{i}", "sp", sp_parity, 1 if sp_parity == EVEN else -1) for i in range(1, sp + 1)]
    return _Word(sp_l + so_l if sp_first else so_l + sp_l)


def _negate(root: tuple, flip: bool = False) -> tuple:
    v, par = root
    return _neg(v), (par + 1) % 2 if flip else par


# even families ---------------------------------------------------------------

def _euclid(n: int) -> _Letters:
    return _Letters({f"e{i}": 1 for i in range(1, n + 2)})


def _e(i):
    return f"e{i}"


def _classical_even(kind: str, r: int) -> list:
    """Simple roots (vectors) of A_r, B_r, C_r, D_r."""
    if kind == "A":
        return [_vec((1, _e(i)), (-1, _e(i + 1))) for i in range(1, r + 1)]
    base = [_vec((1, _e(i)), (-1, _e(i + 1))) for i in range(1, r)]
    if kind == "B":
        return base + [_vec((1, _e(r)))]
    if kind == "C":
        return base + [_vec((2, _e(r)))]
    if kind == "D":
        return base + [_vec((1, _e(r - 1)), (1, _e(r)))]
    raise ValueError(kind)


def _even_pair(roots: list, letters: _Letters = None) -> CartanPair:
    letters = letters or _euclid(20)
    return cartan_from_roots(letters, [(v, EVEN) for v in roots])


def _tree(arms: tuple) -> CartanPair:
    """Simply laced star with arms of the given lengths (center excluded)."""
    n = 1 + sum(arms)
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            m[prev][nxt] = m[nxt][prev] = -1
            prev = nxt
            nxt += 1
    return CartanPair.make(m, [EVEN] * n)


def _f4_roots():
    h = Fraction(1, 2)
    return [_vec((1, "e2"), (-1, "e3")), _vec((1, "e3"), (-1, "e4")), _vec((1, "e4")),
            _vec((h, "e1"), (-h, "e2"), (-h, "e3"), (-h, "e4"))]


def _g2_roots():
    return [_vec((1, "e1"), (-1, "e2")), _vec((-2, "e1"), (1, "e2"), (1, "e3"))]


def even_families(max_rank: int) -> Iterable[tuple]:
    """(name, growth, pair) for the even Fin and Aff series up to max_rank."""
    for r in range(1, max_rank + 1):
        yield f"A_{r}", FIN, _even_pair(_classical_even("A", r))
        if r >= 2:
            yield f"B_{r}", FIN, _even_pair(_classical_even("B", r))
        if r >= 3:
            yield f"C_{r}", FIN, _even_pair(_classical_even("C", r))
        if r >= 4:
            yield f"D_{r}", FIN, _even_pair(_classical_even("D", r))
        if r in (6, 7, 8):
            yield f"E_{r}", FIN, _tree({6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)}[r])
        if r == 4:
            yield "F_4", FIN, _even_pair(_f4_roots())
        if r == 2:
            yield "G_2", FIN, _even_pair(_g2_roots())
        # affine: rank r means l = r - 1
        l = r - 1
        if l >= 1:
            a = _classical_even("A", l)
            theta = _vec((1, _e(1)), (-1, _e(l + 1)))
            yield f"A_{l}^(1)", AFF, _even_pair([_neg(theta)] + a)
        if l >= 3:
            yield f"B_{l}^(1)", AFF, _even_pair([_vec((-1, _e(1)), (-1, _e(2)))] + _classical_even("B", l))
        if l >= 2:
            yield f"C_{l}^(1)", AFF, _even_pair([_vec((-2, _e(1)))] + _classical_even("C", l))
        if l >= 4:
            yield f"D_{l}^(1)", AFF, _even_pair([_vec((-1, _e(1)), (-1, _e(2)))] + _classical_even("D", l))
        if l in (6, 7, 8):
            yield f"E_{l}^(1)", AFF, _tree({6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[l])
        if l == 4:
            f4 = _f4_roots()
            # the reference lists attach these two names (and the G_2 pair
            # below) the other way round from the root construction
            yield "E_6^(2)", AFF, _even_pair([_vec((-1, "e1"), (-1, "e2"))] + f4)
            yield "F_4^(1)", AFF, _even_pair([_vec((-1, "e1"))] + f4)
        if l == 2:
            g2 = _g2_roots()
            yield "D_4^(3)", AFF, _even_pair([_vec((1, "e1"), (1, "e2"), (-2, "e3"))] + g2)
            yield "G_2^(1)", AFF, _even_pair([_vec((1, "e2"), (-1, "e3"))] + g2)
        if l >= 1:
            yield f"A_{2 * l}^(2)", AFF, _even_pair([_vec((-2, _e(1)))] + _classical_even("B", l))
        if l >= 3:
            yield f"A_{2 * l - 1}^(2)", AFF, _even_pair([_vec((-1, _e(1)), (-1, _e(2)))]
                                                       + _classical_even("C", l))
        if l >= 2:
            yield f"D_{l + 1}^(2)", AFF, _even_pair([_vec((-1, _e(1)))] + _classical_even("B", l))


def _family_base(name: str) -> tuple:
    """('B', 3, 1) for 'B_3^(1)', ('A', 2, 0) for 'A_2'."""
    letter, rest = name.split("_", 1)
    if "^" in rest:
        idx, tw = rest.split("^")
        return letter, int(idx), int(tw.strip("()"))
    return letter, int(rest), 0


def _black_subsets(p: CartanPair) -> list:
    """Nonempty node sets whose rows have only even off-diagonal entries."""
    ok = [i for i in range(p.n)
          if all(j == i or p.matrix[i][j] % 2 == 0 for j in range(p.n))]
    return [s for r in range(1, len(ok) + 1) for s in combinations(ok, r)]


def _halve(p: CartanPair, nodes) -> CartanPair:
    rows = [list(r) for r in p.matrix]
    par = list(p.parities)
    for i in nodes:
        rows[i] = [div(x, 2) for x in rows[i]]
        par[i] = ODD
    return CartanPair.make(rows, par)


def _black_name(even_name: str, n_black: int, rank: int) -> str:
    letter, idx, tw = _family_base(even_name)
    if (letter, tw) == ("A", 0) and idx == 1:
        return "osp(1|2)"
    if (letter, tw) == ("B", 0):
        return f"osp(1|{2 * idx})"
    if (letter, tw) == ("A", 2) and idx % 2 == 0:
        return f"osp(1|{idx})^(1)"
    if (letter, tw) in (("B", 1), ("C", 1)) and rank >= 3:
        return f"sl(1|{2 * (rank - 1)})^(2)"
    if (letter, tw) == ("D", 2) or (letter, idx, tw) == ("A", 1, 1):
        l = rank - 1
        if n_black == 2:
            return f"osp(2|{2 * l})^(2)"
        return f"sl(1|{2 * l + 1})^(4)"
    raise CartanError(f"no super family for {even_name} with {n_black} black nodes")


# grey families ---------------------------------------------------------------

def _sl_word(m: int, n: int) -> _Word:
    return _Word([(f"e{i}", "so", EVEN, 1) for i in range(1, m + 1)]
                 + [(f"d{i}", "sp", ODD, -1) for i in range(1, n + 1)])


def _sl_name(m: int, n: int, tw: int = 0) -> str:
    a, b = sorted((m, n))
    return f"sl({a}|{b})" + (f"^({tw})" if tw else "")


def _g3_seed(affine: bool) -> CartanPair:
    third = Fraction(1, 3)
    letters = _Letters({"e1": 1, "e2": 1, "e3": 1, "d": Fraction(-2, 3)})

    def eps(i):
        return _vec(*((1 - third if j == i else -third, f"e{j}") for j in (1, 2, 3)))

    roots = [(_add(_vec((1, "d")), eps(1)), ODD), (eps(2), EVEN), (_add(eps(3), _neg(eps(2))), EVEN)]
    if affine:
        roots = [(_vec((-2, "d")), EVEN)] + roots
    return cartan_from_roots(letters, roots)


def _f4_seed(affine: bool) -> CartanPair:
    h = Fraction(1, 2)
    letters = _Letters({"e1": 1, "e2": 1, "e3": 1, "d": -3})
    roots = [(_vec((h, "d"), (-h, "e1"), (-h, "e2"), (-h, "e3")), ODD), (_vec((1, "e3")), EVEN),
             (_vec((1, "e2"), (-1, "e3")), EVEN), (_vec((1, "e1"), (-1, "e2")), EVEN)]
    if affine:
        roots = [(_vec((-1, "d")), EVEN)] + roots
    return cartan_from_roots(letters, roots)


def psq_seed(n: int) -> CartanPair:
    """Cyclic seed of psq(n)^(2): letters of signs 1,...,1,-1 closed with a twist."""
    s = [1] * (n - 1) + [-1]
    seen = s + [-s[0]]  # sign of letter i+1 as seen from node i
    rows = []
    par = []
    for i in range(n):
        row = [0] * n
        diag = s[i] + seen[i + 1]
        row[(i + 1) % n] += -seen[i + 1]
        row[(i - 1) % n] += -s[i]
        if diag == 0:
            row[i] = 0
            par.append(ODD)
        else:
            row = [Fraction(2 * x, diag) for x in row]
            row[i] = 2
            par.append(EVEN)
        rows.append(row)
    return normalize(CartanPair.make(rows, par))


def super_families(max_rank: int) -> Iterable[tuple]:
    """(name, growth, seed) for the grey super series up to max_rank."""
    for r in range(1, max_rank + 1):
        # finite
        for m in range(1, (r + 1) // 2 + 1):
            n = r + 1 - m
            yield _sl_name(m, n), FIN, _sl_word(m, n).cartan(_sl_word(m, n).chain())
        for m in range(1, r):
            n = r - m
            w = _osp_word(m, n)
            yield f"osp({2 * m + 1}|{2 * n})", FIN, w.cartan(w.osp(True))
        for m in range(1, r):
            n = r - m
            if m == 1:
                w = _osp_word(1, n, sp_first=False)
            else:
                w = _osp_word(m, n)
            yield f"osp({2 * m}|{2 * n})", FIN, w.cartan(w.osp(False))
        if r == 3:
            yield "ag(2)", FIN, _g3_seed(False)
        if r == 4:
            yield "ab(3)", FIN, _f4_seed(False)
        # untwisted affine
        for m in range(1, r // 2 + 1):
            n = r - m
            if (m, n) == (1, 1):
                continue
            w = _sl_word(m, n)
            close = w.root((1, len(w.spec) - 1), (-1, 0))
            yield _sl_name(m, n, 1), AFF, w.cartan(w.chain() + [close])
        for m in range(0, r - 1):
            n = r - 1 - m
            w = _osp_word(m, n)
            yield f"osp({2 * m + 1}|{2 * n})^(1)", AFF, w.cartan([_negate(w.first_pair("sp"))] + w.osp(True))
        for m in range(1, r - 1):
            n = r - 1 - m
            w = _osp_word(m, n, sp_first=m > 1)
            yield f"osp({2 * m}|{2 * n})^(1)", AFF, w.cartan([_negate(w.first_pair("sp"))] + w.osp(False))
        if r == 4:
            yield "ag(2)^(1)", AFF, _g3_seed(True)
        if r == 5:
            yield "ab(3)^(1)", AFF, _f4_seed(True)
        # twisted affine
        for m in range(0, r - 1):
            n = r - 1 - m
            w = _osp_word(m, n)
            yield f"osp({2 * m + 2}|{2 * n})^(2)", AFF, w.cartan([_negate(w.root((1, 0)))] + w.osp(True))
            if (m, n) != (0, 1):
                yield _sl_name(2 * m + 1, 2 * n, 2), AFF, w.cartan([_negate(w.first_pair("so"))] + w.osp(True))
            yield _sl_name(2 * m + 1, 2 * n + 1, 4), AFF, w.cartan([_negate(w.root((1, 0)), flip=True)]
                                                               + w.osp(True))
        for m in range(1, r - 1):
            n = r - 1 - m
            if (m, n) == (1, 1):
                continue
            # symplectic letters even, orthogonal letters odd
            w = _osp_word(n, m, sp_first=True, so_parity=ODD, sp_parity=EVEN)
            yield _sl_name(2 * m, 2 * n, 2), AFF, w.cartan([_negate(w.first_pair("so"))] + w.osp(False))
        if r >= 3:
            yield f"psq({r})^(2)", AFF, psq_seed(r)


# parametric matchers --------------------------------------------------------

def _alpha_orbit(alpha) -> list:
    """The six values equivalent to alpha under d(alpha) symmetries."""
    a = alpha
    vals = [a, div(1, a), -1 - a, div(-1, 1 + a), div(-a, 1 + a), div(-(1 + a), a)]
    return vals


def _pick_alpha(alpha):
    return max(_alpha_orbit(alpha), key=lambda x: (float(x), str(x)))


def _is_white_leaf(p: CartanPair, i: int, center: int) -> bool:
    row = p.matrix[i]
    return (p.parities[i] == EVEN and row[i] == 2 and row[center] == -1
            and all(row[j] == 0 for j in range(p.n) if j not in (i, center)))


def _d_alpha_member(p: CartanPair):
    """alpha if p has the white-grey-white shape of d(alpha), else None."""
    if p.n != 3:
        return None
    for c in range(3):
        if p.parities[c] != ODD or p.matrix[c][c] != 0:
            continue
        i, j = [k for k in range(3) if k != c]
        if _is_white_leaf(p, i, c) and _is_white_leaf(p, j, c):
            x, y = p.matrix[c][i], p.matrix[c][j]
            if x + y == 0:
                return None
            # grey row proportional to (alpha, -1 - alpha)
            return div(-x, x + y)
    return None


def _d_alpha1_member(p: CartanPair):
    if p.n != 4:
        return None
    for c in range(4):
        if p.parities[c] != ODD or p.matrix[c][c] != 0:
            continue
        leaves = [k for k in range(4) if k != c]
        if all(_is_white_leaf(p, k, c) for k in leaves):
            x, y, z = (p.matrix[c][k] for k in leaves)
            if x + y + z == 0:
                return div(y, x)
    return None


def _svect_member(p: CartanPair):
    """alpha if p matches [[2,-1,-1],[1-a,0,a],[1+a,-a,0]] up to equivalence."""
    if p.n != 3:
        return None
    for w in range(3):
        if p.parities[w] != EVEN or p.matrix[w][w] != 2:
            continue
        g1, g2 = [k for k in range(3) if k != w]
        if any(p.parities[g] != ODD or p.matrix[g][g] != 0 for g in (g1, g2)):
            continue
        if p.matrix[w][g1] != -1 or p.matrix[w][g2] != -1:
            continue
        for u, v in ((g1, g2), (g2, g1)):
            r0, r2 = p.matrix[u][w], p.matrix[u][v]
            if r0 + r2 == 0:
                continue
            a = div(r2, r0 + r2)  # row u ~ (1 - a, 0, a)
            s0, s1 = p.matrix[v][w], p.matrix[v][u]
            if a == 0 or s0 * (-a) != s1 * (1 + a):
                continue
            # swapping the two grey nodes sends alpha to -alpha
            return a if sign(a) > 0 else -a
    return None


def match_parametric(p: CartanPair) -> Classification:
    """Recognize d(alpha), d(alpha)^(1) and svect_alpha(1|2) for any scalar alpha.

    The orbit of d(alpha) consists of the grey triangle and white-grey-white
    chains, the orbit of d(alpha)^(1) of the grey K_4 and the white star around
    a grey node, so one reflection of an all-grey input reaches the pattern."""
    if p.n not in (3, 4) or not p.grey_nodes():
        return NOT_CLASSIFIED
    p = normalize(p)
    if p.n == 3:
        a = _svect_member(p)
        if a is not None:
            return Classification(AFF, f"svect_{format_scalar(a)}(1|2)")
    test = _d_alpha_member if p.n == 3 else _d_alpha1_member
    alpha = test(p)
    complete = all(p.matrix[i][j] != 0 for i in range(p.n) for j in range(p.n) if i != j)
    if alpha is None and complete and len(p.grey_nodes()) == p.n:
        for k in range(p.n):
            try:
                alpha = test(odd_reflect(p, k))
            except DegenerateReflection:
                alpha = None
            if alpha is not None:
                break
    if alpha is None:
        return NOT_CLASSIFIED
    alpha = _pick_alpha(alpha)
    note = "d(alpha) with alpha = 1" if alpha == 1 else None
    if p.n == 3:
        return Classification(FIN, f"d({format_scalar(alpha)})", note)
    return Classification(AFF, f"d({format_scalar(alpha)})^(1)", note)


# catalog ---------------------------------------------------------------------

SIZE_ONE = {
    ((2,), EVEN): "A_1",
    ((1,), ODD): "osp(1|2)",
    ((0,), ODD): "sl(1|1)",
}


_KIND_CODE = {(EVEN, 2): 0, (ODD, 1): 1, (ODD, 0): 2, (EVEN, 1): 3, (EVEN, 0): 4}


def signature(p: CartanPair) -> tuple:
    """Cheap invariant of a pair under permutations and row scaling: per node
    its kind, its neighbours' kinds and its sorted row (grey rows rescaled)."""
    m = p.matrix
    par = p.parities
    n = len(m)
    kc = [_KIND_CODE.get((par[i], m[i][i]), 5) for i in range(n)]
    sig = []
    for i in range(n):
        row = m[i]
        nbrs = []
        nz = []
        for j in range(n):
            x = row[j]
            if x != 0 and j != i:
                nbrs.append(kc[j])
                nz.append(x)
        nbrs.sort()
        if row[i] != 0 or not nz:
            if all(type(x) is int for x in row):
                vals = ("i",) + tuple(sorted(row))
            else:
                vals = ("r",) + tuple(sorted(str(x) for x in row))
        elif all(type(x) is int for x in nz):
            # grey rows only matter up to scale and sign
            g = gcd(*nz)
            up = sorted([x // g for x in nz])
            vals = ("g",) + min(tuple(up), tuple(sorted([-x for x in up])))
        else:
            vals = _grey_values(nz)
        sig.append((kc[i], tuple(nbrs), vals))
    sig.sort()
    return tuple(sig)


def _grey_values(nz: list) -> tuple:
    if any(isinstance(x, Quadratic) for x in nz):
        low = min(nz, key=lambda x: abs(float(x)))
        low = low if sign(low) > 0 else -low
        nz = [tidy(div(x, low)) for x in nz]
    if any(isinstance(x, Quadratic) for x in nz):
        return ("q",) + min(tuple(sorted(str(x) for x in nz)), tuple(sorted(str(-x) for x in nz)))
    up = sorted(_primitive(nz))
    return ("g",) + min(tuple(up), tuple(sorted(-x for x in up)))


class Catalog:
    """Canonical pair -> CatalogEntry, plus the even name table."""

    def __init__(self, max_rank: int, entries: dict, collisions: list | None = None):
        self.max_rank = max_rank
        self.entries = entries
        self.collisions = collisions or []
        self._cache: dict = {}
        self._signatures: Optional[set] = None
        self._verdicts: dict = {}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def lookup(self, p: CartanPair) -> Optional[CatalogEntry]:
        if self._signatures is None:
            self._signatures = {signature(e.pair) for e in self.entries.values()}
        if signature(p) not in self._signatures:
            return None
        return self.entries.get(canonical_form(p))

    def by_family(self, family: str) -> list:
        return [e for e in self.entries.values() if e.family == family]

    @property
    def e_max(self) -> int:
        """Largest absolute entry, grey rows taken as primitive integer vectors
        (parametric families excluded)."""
        best = 0
        for e in self.entries.values():
            for i, row in enumerate(e.pair.matrix):
                vals = row
                if e.pair.matrix[i][i] == 0:
                    vals = _primitive(row)
                best = max([best] + [abs(x) for x in vals])
        return int(best)

    def to_doc(self) -> list:
        return [e.to_doc() for e in sorted(self.entries.values(), key=_entry_order)]

    def dump(self, fp) -> None:
        json.dump({"max_rank": self.max_rank, "entries": self.to_doc()}, fp, separators=(",", ":"))

    @classmethod
    def load(cls, fp) -> "Catalog":
        doc = json.load(fp)
        entries = {}
        for d in doc["entries"]:
            pair = pair_from_doc(d)
            entries[pair] = CatalogEntry(pair, d["family"], int(d["rank"]), d["kind"], d["growth"])
        return cls(int(doc["max_rank"]), entries)


def _primitive(row) -> list:
    fr = [Fraction(x) for x in row if x != 0]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    return [x // g for x in ints]


def _entry_order(e: CatalogEntry) -> tuple:
    return (e.rank, e.kind, e.growth, e.family, repr(e.pair))


def build_catalog(max_rank: int = 9, limits: Limits = Limits(max_members=20_000)) -> Catalog:
    if max_rank < 1:
        raise ValueError("max_rank must be at least 1")
    entries: dict = {}
    collisions: list = []

    def put(pair, family, kind, growth):
        c = canonical_form(pair)
        old = entries.get(c)
        if old is not None:
            if old.family != family:
                collisions.append((old.family, family))
            return
        entries[c] = CatalogEntry(c, family, c.n, kind, growth)

    evens = list(even_families(max_rank))
    for name, growth, pair in evens:
        put(pair, name, "even", growth)
    for name, growth, pair in evens:
        for nodes in _black_subsets(pair):
            put(_halve(pair, nodes), _black_name(name, len(nodes), pair.n), "super", growth)
    for name, growth, seed in super_families(max_rank):
        res = orbit(seed, limits)[0]
        if isinstance(res, OverflowReport):
            raise SeedOrbitOverflow(f"{name}: {res.reason}")
        for member in res.members:
            put(member, name, "super", growth)
    return Catalog(max_rank, entries, collisions)


_DEFAULT: dict = {}


def default_catalog(max_rank: int = 9) -> Catalog:
    """Process-wide cached catalog."""
    for r, cat in _DEFAULT.items():
        if r >= max_rank:
            return cat
    cat = build_catalog(max_rank)
    _DEFAULT[max_rank] = cat
    return cat


# classification --------------------------------------------------------------

def even_part(p: CartanPair) -> CartanPair:
    """Rows with diagonal 1 doubled and every parity made even."""
    rows = []
    for i, row in enumerate(p.matrix):
        if row[i] == 0:
            raise NotApplicable("zero on the diagonal")
        rows.append([tidy(2 * x) for x in row] if row[i] == 1 else list(row))
    return normalize(CartanPair.make(rows, [EVEN] * p.n))


class NotApplicable(CartanError):
    pass


def classify_component(p: CartanPair, c: Catalog) -> Classification:
    """Fin/Aff verdict and family name of an indecomposable normalized pair."""
    key = (p.matrix, p.parities)
    hit = c._cache.get(key)
    if hit is not None:
        return hit
    out = _classify(p, c)
    if len(c._cache) > 500_000:
        c._cache.clear()
    c._cache[key] = out
    return out


def _classify(p: CartanPair, c: Catalog) -> Classification:
    kinds = p.kinds()
    if NodeKind.STAR in kinds or NodeKind.SUN in kinds:
        raise StarOrSunNode("star and sun nodes are not supported")
    if p.n == 1:
        return Classification(FIN, SIZE_ONE[(p.matrix[0], p.parities[0])])
    if NodeKind.GREY not in kinds:
        ev = p if NodeKind.BLACK not in kinds else even_part(p)
        if not ev.is_integer():
            # Fin/Aff Lie (super)algebras need a generalized Cartan matrix
            return NOT_CLASSIFIED
        try:
            verdict = vinberg_class(ev)
        except PreconditionViolation:
            return NOT_CLASSIFIED
        if verdict == IND:
            return NOT_CLASSIFIED
        entry = c.lookup(p)
        return Classification(verdict, entry.family if entry else None)
    entry = c.lookup(p)
    if entry is not None:
        return Classification(entry.growth, entry.family)
    return match_parametric(p)


def growth_of(p: CartanPair, c: Catalog) -> str:
    """Fin, Aff or NotFinAff of an indecomposable pair, skipping the family
    name where it is not needed (white/black pairs)."""
    key = (p.matrix, p.parities)
    hit = c._verdicts.get(key)
    if hit is not None:
        return hit
    kinds = p.kinds()
    if p.n > 1 and NodeKind.GREY not in kinds and NodeKind.STAR not in kinds and NodeKind.SUN not in kinds:
        ev = p if NodeKind.BLACK not in kinds else even_part(p)
        try:
            out = vinberg_class(ev) if ev.is_integer() else IND
        except PreconditionViolation:
            out = IND
        out = NOT_FIN_AFF if out == IND else out
    else:
        out = classify_component(p, c).verdict
    if len(c._verdicts) > 500_000:
        c._verdicts.clear()
    c._verdicts[key] = out
    return out


def classify_blocks(p: CartanPair, c: Catalog) -> list:
    """Classification of every indecomposable block of p."""
    return [(b.indices, classify_component(b.pair, c)) for b in decompose(p)]


def self_consistency(c: Catalog) -> list:
    """Catalog entries whose proper principal deletions are not all Fin."""
    bad = []
    for e in c:
        if e.rank < 2:
            continue
        for k in range(e.rank):
            for _, cl in classify_blocks(principal_delete(e.pair, k), c):
                if cl.verdict != FIN:
                    bad.append((e.family, e.pair, k, cl))
    return bad
