"""Independent dense oracles used to cross-check the sparse implementations.

Everything here works on plain lists of Fractions/ints and never calls into
the code paths it is checking.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from braidhom import SparseLinearMap


def dense_of(m: SparseLinearMap) -> list[list[Fraction]]:
    out = [[Fraction(0)] * m.cols for _ in range(m.rows)]
    for r, c, v in m.entries():
        out[r][c] = Fraction(v)
    return out


def dense_matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    assert not a or len(a[0]) == inner
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            if a[i][k] == 0:
                continue
            aik = a[i][k]
            for j in range(cols):
                out[i][j] += aik * b[k][j]
    return out


def dense_kron(a, b):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = Fraction(a[i][j]) * Fraction(b[k][l])
    return out


def dense_rank(mat) -> int:
    """Plain Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if a else 0
    rank = 0
    piv_row = 0
    for col in range(cols):
        pivot = None
        for r in range(piv_row, rows):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        a[piv_row], a[pivot] = a[pivot], a[piv_row]
        pv = a[piv_row][col]
        for r in range(rows):
            if r != piv_row and a[r][col] != 0:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[piv_row])]
        piv_row += 1
        rank += 1
        if piv_row == rows:
            break
    return rank


def dense_rank_mod_p(mat, p: int) -> int:
    a = [[int(x) % p for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if a else 0
    rank = 0
    piv_row = 0
    for col in range(cols):
        pivot = None
        for r in range(piv_row, rows):
            if a[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        a[piv_row], a[pivot] = a[pivot], a[piv_row]
        inv = pow(a[piv_row][col], -1, p)
        for r in range(rows):
            if r != piv_row and a[r][col] % p:
                f = a[r][col] * inv % p
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[piv_row])]
        piv_row += 1
        rank += 1
        if piv_row == rows:
            break
    return rank


def snf_by_minor_gcds(mat) -> list[int]:
    """Invariant factors through determinantal divisors: d_k = gcd of all
    k x k minors, factor_k = d_k / d_{k-1}. Exponential, fine for tiny
    matrices; completely independent of elimination."""
    a = [[int(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if a else 0
    r = dense_rank(a)
    factors = []
    prev = 1
    for k in range(1, r + 1):
        g = 0
        for rsel in combinations(range(rows), k):
            for csel in combinations(range(cols), k):
                minor = _det([[a[i][j] for j in csel] for i in rsel])
                g = math.gcd(g, minor)
            if g == 1:
                break
        factors.append(g // prev)
        prev = g
    return factors


def _det(a) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [[a[i][k] for k in range(n) if k != j] for i in range(1, n)]
        total += (-1) ** j * a[0][j] * _det(minor)
    return total


def from_dense(rows, ring):
    entries = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v != 0]
    return SparseLinearMap.from_entries(len(rows), len(rows[0]) if rows else 0, entries, ring)
