"""Exact linear algebra over the rationals.

Thin helpers on top of python-flint's ``fmpq_mat``.  Matrices come in as
lists of rows of anything ``Fraction`` accepts and vectors go out as lists
of ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint


def _to_fmpq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _to_fraction(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def to_flint(rows: Sequence[Sequence], ncols: int | None = None) -> flint.fmpq_mat:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    flat = [_to_fmpq(v) for row in rows for v in row]
    return flint.fmpq_mat(nrows, ncols, flat)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    return to_flint(rows, ncols).rank()


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    if not rows or ncols == 0:
        return [], []
    R, r = to_flint(rows, ncols).rref()
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    for i in range(r):
        row = [_to_fraction(R[i, j]) for j in range(ncols)]
        pivots.append(next(j for j, v in enumerate(row) if v != 0))
        out.append(row)
    return out, pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], ncols: int, rhs: Sequence) -> list[Fraction] | None:
    """One solution of A x = b, or None when the system is inconsistent."""
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * ncols
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def complement(sub: Sequence[Sequence], whole: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Vectors of ``whole`` extending a basis of span(sub) to span(sub + whole).

    Greedy: keeps each vector of ``whole`` that raises the rank.
    """
    kept: list[list[Fraction]] = []
    basis, _ = rref(sub, ncols) if sub else ([], [])
    current = [list(r) for r in basis]
    r0 = len(current)
    for v in whole:
        trial = current + [list(v)]
        r = rank(trial, ncols)
        if r > r0:
            kept.append([Fraction(x) for x in v])
            current, _ = rref(trial, ncols)
            r0 = r
    return kept
