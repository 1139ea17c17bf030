"""Reference implementations that share no code with the package.

Each one is slow but obviously correct; tests compare the engine against them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

from almost_affine.scalar import Quadratic


# Q(sqrt d) with plain integers: (p, q, r) stands for (p + q*sqrt(d)) / r, r > 0

def qnorm(p: int, q: int, r: int) -> tuple:
    if r < 0:
        p, q, r = -p, -q, -r
    g = gcd(gcd(p, q), r)
    return p // g, q // g, r // g


def qadd(x, y):
    return qnorm(x[0] * y[2] + y[0] * x[2], x[1] * y[2] + y[1] * x[2], x[2] * y[2])


def qneg(x):
    return (-x[0], -x[1], x[2])


def qmul(x, y, d):
    return qnorm(x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0], x[2] * y[2])


def qinv(x, d):
    p, q, r = x
    n = p * p - d * q * q  # nonzero since d is not a square
    return qnorm(p * r, -q * r, n)


def qsign(x, d) -> int:
    p, q, _ = x
    if q == 0:
        return (p > 0) - (p < 0)
    if p >= 0 and q >= 0:
        return 1
    if p <= 0 and q <= 0:
        return -1
    big = p * p > d * q * q
    return (1 if p > 0 else -1) if big else (1 if q > 0 else -1)


def from_engine(x, d) -> tuple:
    """Engine scalar -> oracle triple."""
    if isinstance(x, Quadratic):
        assert x.d == d
        a, b = x.a, x.b
    else:
        a, b = Fraction(x), Fraction(0)
    r = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    return qnorm(int(a * r), int(b * r), r)


def to_engine(x, d):
    p, q, r = x
    if q == 0:
        return Fraction(p, r) if r != 1 else p
    return Quadratic(Fraction(p, r), Fraction(q, r), d)


# determinants by the Leibniz formula

def _perm_sign(perm) -> int:
    s = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def leibniz_det(rows) -> Fraction:
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        term = Fraction(_perm_sign(perm))
        for i in range(n):
            term *= rows[i][perm[i]]
            if term == 0:
                break
        total += term
    return total


def brute_vinberg(rows) -> str:
    """Fin/Aff/Ind from every principal minor of an indecomposable matrix."""
    n = len(rows)
    proper = []
    for k in range(1, n):
        for idx in combinations(range(n), k):
            proper.append(leibniz_det([[rows[i][j] for j in idx] for i in idx]))
    full = leibniz_det(rows)
    if all(m > 0 for m in proper):
        if full > 0:
            return "Fin"
        if full == 0:
            return "Aff"
    return "Ind"


def connected(rows) -> bool:
    n = len(rows)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and rows[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


# canonical forms by exhaustive search

def _scalar_key(x):
    if isinstance(x, Quadratic):
        return (1, x.d, x.a, x.b)
    return (0, 0, Fraction(x), Fraction(0))


def _exact_div(x, y):
    if isinstance(x, Quadratic) or isinstance(y, Quadratic):
        return x / y
    return Fraction(x) / Fraction(y)


def brute_key(p) -> tuple:
    """Least code over all permutations; zero-diagonal rows scaled so their
    first nonzero entry is -1.  Two pairs are equivalent exactly when their
    keys agree."""
    n = p.n
    best = None
    for perm in permutations(range(n)):
        rows = []
        for i in perm:
            row = [p.matrix[i][j] for j in perm]
            diag = row[perm.index(i)]
            if diag == 0:
                lead = next((x for x in row if x != 0), None)
                if lead is not None:
                    row = [_exact_div(x, -lead) for x in row]
            else:
                target = 2 if (p.parities[i] == 0 and diag != 1) else 1
                row = [_exact_div(x * target, diag) for x in row]
            rows.append(tuple(_scalar_key(x) for x in row))
        code = (tuple(p.parities[i] for i in perm), tuple(rows))
        if best is None or code < best:
            best = code
    return best
