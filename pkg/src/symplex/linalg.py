"""Small exact linear algebra over Q and Z.

Everything works on plain sequences of ints/Fractions; dimensions are tiny
(rank <= 6) so clarity wins over speed.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : row . x = 0 for every row}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def hermite_rows(gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite basis of the Z-span of ``gens`` (echelon, positive pivots)."""
    rows = [list(g) for g in gens if any(g)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    for c in range(ncols):
        live = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[c] // head[c]
                r = [a - q * b for a, b in zip(r, head)]
                (nxt if r[c] != 0 else rest).append(r)
            live = nxt
        if live:
            head = live[0]
            if head[c] < 0:
                head = [-a for a in head]
            out.append(head)
        rows = [r for r in rest if any(r)]
    return out


def lattice_contains(basis: list[list[int]], v: Sequence) -> bool:
    """Membership of an integer vector in the lattice with Hermite ``basis``."""
    if any(Fraction(x).denominator != 1 for x in v):
        return False
    w = [int(x) for x in v]
    for row in basis:
        c = next(k for k, a in enumerate(row) if a != 0)
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        w = [a - q * b for a, b in zip(w, row)]
    return not any(w)
