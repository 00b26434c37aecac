"""Exact rational linear algebra on small matrices.

Lattice membership, Cartan solves, and replication denominators are integer
questions; answering them with floats invites tolerance bugs, so everything
here runs on fractions.Fraction. Matrices are tuples of tuples, small enough
that O(n^3) elimination is free.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

FracMatrix = tuple[tuple[Fraction, ...], ...]
FracVector = tuple[Fraction, ...]


def as_fractions(rows: Iterable[Iterable]) -> FracMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> FracMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: FracMatrix) -> FracMatrix:
    return tuple(zip(*m))


def matvec(m: FracMatrix, v: Sequence) -> FracVector:
    return tuple(sum(row[j] * Fraction(v[j]) for j in range(len(v))) for row in m)


def matmul(a: FracMatrix, b: FracMatrix) -> FracMatrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(len(ra))) for cb in bt) for ra in a
    )


def invert(m: FracMatrix) -> FracMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(m)
    aug = [list(row) + list(ident_row) for row, ident_row in zip(m, identity(n))]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular over the rationals")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def is_integral(values: Iterable[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """Minimal-denominator rational in the closed interval [lo, hi], 0 < lo <= hi.

    Classic Stern-Brocot / continued-fraction descent: if the interval contains
    an integer, the smallest such integer wins; otherwise recurse on the
    reciprocal of the fractional parts.
    """
    if not (0 < lo <= hi):
        raise ValueError("need 0 < lo <= hi")
    c = Fraction(ceil(lo))
    if c <= hi:
        return c
    base = Fraction(floor(lo))
    return base + 1 / simplest_in_interval(1 / (hi - base), 1 / (lo - base))


def lcm_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        g = _gcd(out, d)
        out = out // g * d
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
