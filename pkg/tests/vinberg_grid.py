"""Exhaustive size-4 grid for the Vinberg check.

Every 4x4 even matrix with off-diagonal entries in [-4, 0] and a symmetric
zero pattern is coded by six base-17 digits, one per node pair (0 for no
edge, otherwise 1 + 4*(a_ij + 4) + (a_ji + 4)).  The minors oracle is
evaluated with numpy over the whole grid; representatives under simultaneous
relabeling are the codes that are minimal in their orbit.
"""

from itertools import combinations, permutations

import numpy as np

N = 4
PAIRS = list(combinations(range(N), 2))
BASE = 17
SIZE = BASE ** len(PAIRS)
WEIGHTS = np.array([BASE ** e for e in range(len(PAIRS))], dtype=np.int64)
FIN, AFF, IND = 0, 1, 2
VERDICT = {"Fin": FIN, "Aff": AFF, "Ind": IND}

_X = np.array([0] + [-4 + (c - 1) // 4 for c in range(1, BASE)], dtype=np.int64)
_Y = np.array([0] + [-4 + (c - 1) % 4 for c in range(1, BASE)], dtype=np.int64)
_SWAP = np.array([0] + [1 + ((c - 1) % 4) * 4 + (c - 1) // 4 for c in range(1, BASE)], dtype=np.int64)


def digits(codes: np.ndarray) -> np.ndarray:
    return (codes[:, None] // WEIGHTS[None, :]) % BASE


def rows_of(code: int) -> list:
    m = [[2 if i == j else 0 for j in range(N)] for i in range(N)]
    for e, (i, j) in enumerate(PAIRS):
        c = (code // BASE ** e) % BASE
        m[i][j], m[j][i] = int(_X[c]), int(_Y[c])
    return m


def entries(d: np.ndarray) -> dict:
    a = {}
    for e, (i, j) in enumerate(PAIRS):
        a[i, j] = _X[d[:, e]]
        a[j, i] = _Y[d[:, e]]
    for i in range(N):
        a[i, i] = np.full(len(d), 2, dtype=np.int64)
    return a


def connected(d: np.ndarray) -> np.ndarray:
    adj = [0] * N
    for e, (i, j) in enumerate(PAIRS):
        bit = d[:, e] != 0
        adj[i] = adj[i] | (bit.astype(np.int64) << j)
        adj[j] = adj[j] | (bit.astype(np.int64) << i)
    seen = np.ones(len(d), dtype=np.int64)
    for _ in range(N - 1):
        grow = seen.copy()
        for i in range(N):
            grow |= np.where((seen >> i) & 1 == 1, adj[i], 0)
        seen = grow
    return seen == (1 << N) - 1


def _det(a: dict, idx: tuple) -> np.ndarray:
    total = 0
    for p in permutations(range(len(idx))):
        inv = sum(1 for x in range(len(p)) for y in range(x + 1, len(p)) if p[x] > p[y])
        term = 1
        for r, c in enumerate(p):
            term = term * a[idx[r], idx[c]]
        total = total + (-term if inv % 2 else term)
    return total


def oracle(d: np.ndarray) -> np.ndarray:
    """Fin/Aff/Ind codes from every principal minor."""
    a = entries(d)
    proper_pos = np.ones(len(d), dtype=bool)
    for k in range(1, N):
        for idx in combinations(range(N), k):
            proper_pos &= _det(a, idx) > 0
    full = _det(a, tuple(range(N)))
    out = np.full(len(d), IND, dtype=np.int8)
    out[proper_pos & (full > 0)] = FIN
    out[proper_pos & (full == 0)] = AFF
    return out


def orbit_min(d: np.ndarray) -> np.ndarray:
    """Smallest code among all simultaneous relabelings."""
    best = None
    for s in permutations(range(N)):
        code = np.zeros(len(d), dtype=np.int64)
        for e, (i, j) in enumerate(PAIRS):
            a, b = s[i], s[j]
            if a < b:
                code += d[:, e] * WEIGHTS[PAIRS.index((a, b))]
            else:
                code += _SWAP[d[:, e]] * WEIGHTS[PAIRS.index((b, a))]
        best = code if best is None else np.minimum(best, code)
    return best


def chunks(step: int = 1 << 20):
    for lo in range(0, SIZE, step):
        codes = np.arange(lo, min(lo + step, SIZE), dtype=np.int64)
        d = digits(codes)
        keep = connected(d)
        yield codes[keep], d[keep]
