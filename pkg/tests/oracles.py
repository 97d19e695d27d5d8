"""Independent oracles: plain-Fraction linear algebra and monomial brute force.

Nothing here imports the package's linear algebra or resolution code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def frac_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_monomial_ideal(e, gens):
    return any(divides(g, e) for g in gens)


def quotient_piece_dim(lam, ideal, mu):
    """dim of (A(lam)/(x^a : a in ideal)) in character mu."""
    e = tuple(l - m for l, m in zip(lam, mu))
    if any(x < 0 for x in e):
        return 0
    return 0 if in_monomial_ideal(e, ideal) else 1


def lcm(monos):
    return tuple(max(col) for col in zip(*monos))


def taylor_tor_dims(I, J, n, d):
    """dim Tor_k(A/I, A/J) in exponent degree d (character -d), all k.

    Uses the Taylor resolution of A/I tensored with A/J.
    """
    I = [tuple(a) for a in I]
    subsets = {k: list(combinations(range(len(I)), k)) for k in range(len(I) + 1)}
    deg = {S: (lcm([I[i] for i in S]) if S else (0,) * n) for k in subsets for S in subsets[k]}

    def basis(k):
        out = []
        for S in subsets[k]:
            e = tuple(x - y for x, y in zip(d, deg[S]))
            if all(x >= 0 for x in e) and not in_monomial_ideal(e, J):
                out.append(S)
        return out

    B = {k: basis(k) for k in subsets}
    ranks = {}
    for k in range(1, len(I) + 1):
        src, tgt = B[k], B[k - 1]
        if not src or not tgt:
            ranks[k] = 0
            continue
        pos = {S: i for i, S in enumerate(tgt)}
        mat = [[0] * len(src) for _ in tgt]
        for j, S in enumerate(src):
            for t, drop in enumerate(S):
                T = tuple(x for x in S if x != drop)
                if T in pos:
                    mat[pos[T]][j] += (-1) ** t
        ranks[k] = frac_rank(mat)
    out = {}
    for k in subsets:
        dim = len(B[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if dim:
            out[k] = dim
    return out


def box(lo, hi, n):
    return list(product(*[range(lo, hi + 1)] * n))
