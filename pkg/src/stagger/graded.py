"""Multigraded free modules, homogeneous matrices and presented modules.

Every graded piece of ``A = k[x_1..x_n]`` is at most one-dimensional, so a
homogeneous map ``A(lam_c) -> A(lam_r)`` is a scalar times the forced
monomial ``x^(lam_r - lam_c)``.  Matrices therefore store scalars only and
composition is plain scalar matrix multiplication.

Modules may live over a closure ring ``A / (x_i : i in killed)``; the
forced monomial must then avoid the killed variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, HomogeneityError, ResolutionTooLong
from .torus import Character, Stratum, add, character, is_nonneg, sub, unit

Coeffs = Mapping[tuple[int, int], Fraction]


def allowed(a: Sequence[int], killed: frozenset[int]) -> bool:
    """Is ``x^a`` a nonzero monomial of the ring with ``killed`` variables set to 0?"""
    return is_nonneg(a) and all(a[i - 1] == 0 for i in killed)


@dataclass(frozen=True)
class GradedFree:
    """``A(gens[0]) + A(gens[1]) + ...`` over the ring with ``killed`` variables zero."""

    n: int
    gens: tuple[Character, ...] = ()
    killed: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(character(g) for g in self.gens))
        object.__setattr__(self, "killed", frozenset(self.killed))
        for g in self.gens:
            if len(g) != self.n:
                raise DimensionMismatch("generator character has wrong length", n=self.n, character=list(g))

    @property
    def rank(self) -> int:
        return len(self.gens)

    def active(self, mu: Sequence[int]) -> list[int]:
        """Generators contributing to the ``mu`` piece."""
        return [j for j, g in enumerate(self.gens) if allowed(sub(g, mu), self.killed)]

    def piece_dim(self, mu: Sequence[int]) -> int:
        return len(self.active(mu))

    def twist(self, lam: Sequence[int]) -> "GradedFree":
        return GradedFree(self.n, tuple(add(g, lam) for g in self.gens), self.killed)

    def __add__(self, other: "GradedFree") -> "GradedFree":
        _same_ring(self, other)
        return GradedFree(self.n, self.gens + other.gens, self.killed)


def _same_ring(a: GradedFree, b: GradedFree) -> None:
    if a.n != b.n or a.killed != b.killed:
        raise DimensionMismatch(
            "free modules over different rings",
            n=[a.n, b.n],
            killed=[sorted(a.killed), sorted(b.killed)],
        )


def zero_free(n: int, killed: Iterable[int] = ()) -> GradedFree:
    return GradedFree(n, (), frozenset(killed))


@dataclass(frozen=True)
class GradedMatrix:
    """Homogeneous map ``source -> target``; entry (r, c) is the coefficient
    of ``x^(target[r] - source[c])``."""

    source: GradedFree
    target: GradedFree
    coeffs: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        _same_ring(self.source, self.target)
        clean = {}
        for (r, c), v in self.coeffs.items():
            v = Fraction(v)
            if v == 0:
                continue
            if not (0 <= r < self.target.rank and 0 <= c < self.source.rank):
                raise DimensionMismatch("entry outside matrix", entry=[r, c])
            a = sub(self.target.gens[r], self.source.gens[c])
            if not allowed(a, self.source.killed):
                raise HomogeneityError(
                    "entry forces a non-monomial exponent",
                    entry=[r, c],
                    exponent=list(a),
                    killed=sorted(self.source.killed),
                )
            clean[(r, c)] = v
        object.__setattr__(self, "coeffs", clean)

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def killed(self) -> frozenset[int]:
        return self.source.killed

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.rank, self.source.rank)

    def exponent(self, r: int, c: int) -> Character:
        return sub(self.target.gens[r], self.source.gens[c])

    def is_zero(self) -> bool:
        return not self.coeffs

    def column(self, c: int) -> dict[int, Fraction]:
        return {r: v for (r, cc), v in self.coeffs.items() if cc == c}

    @cached_property
    def _by_col(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.coeffs.items():
            out.setdefault(c, {})[r] = v
        return out

    @cached_property
    def _by_row(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.coeffs.items():
            out.setdefault(r, {})[c] = v
        return out

    def dense(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> list[list[Fraction]]:
        rows = range(self.target.rank) if rows is None else rows
        cols = range(self.source.rank) if cols is None else cols
        return [[self.coeffs.get((r, c), Fraction(0)) for c in cols] for r in rows]

    def piece(self, mu: Sequence[int]) -> tuple[list[int], list[int], list[list[Fraction]]]:
        """The linear map on ``mu`` pieces: (rows, cols, dense block)."""
        rows = self.target.active(mu)
        cols = self.source.active(mu)
        return rows, cols, self.dense(rows, cols)

    def rank_at(self, mu: Sequence[int]) -> int:
        rows, cols, block = self.piece(mu)
        return linalg.rank(block, len(cols)) if rows else 0

    def compose(self, first: "GradedMatrix") -> "GradedMatrix":
        """``self o first``."""
        if first.target != self.source:
            raise DimensionMismatch("composition of incompatible maps")
        out: dict[tuple[int, int], Fraction] = {}
        right = first._by_row
        for (r, k), v in self.coeffs.items():
            for c, w in right.get(k, {}).items():
                out[(r, c)] = out.get((r, c), Fraction(0)) + v * w
        return GradedMatrix(first.source, self.target, out)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self.compose(other)

    def scale(self, k) -> "GradedMatrix":
        k = Fraction(k)
        return GradedMatrix(self.source, self.target, {key: k * v for key, v in self.coeffs.items()})

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if other.source != self.source or other.target != self.target:
            raise DimensionMismatch("sum of maps with different source/target")
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + v
        return GradedMatrix(self.source, self.target, out)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "GradedMatrix":
        return self.scale(-1)

    def transpose_dual(self, lam: Sequence[int]) -> "GradedMatrix":
        """Induced map ``Hom(target, A(lam)) -> Hom(source, A(lam))``."""
        src = GradedFree(self.n, tuple(sub(lam, g) for g in self.target.gens), self.killed)
        tgt = GradedFree(self.n, tuple(sub(lam, g) for g in self.source.gens), self.killed)
        return GradedMatrix(src, tgt, {(c, r): v for (r, c), v in self.coeffs.items()})

    def twist(self, lam: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(self.source.twist(lam), self.target.twist(lam), self.coeffs)

    def restrict_columns(self, cols: Sequence[int]) -> "GradedMatrix":
        src = GradedFree(self.n, tuple(self.source.gens[c] for c in cols), self.killed)
        pos = {c: j for j, c in enumerate(cols)}
        return GradedMatrix(src, self.target, {(r, pos[c]): v for (r, c), v in self.coeffs.items() if c in pos})

    def restrict_rows(self, rows: Sequence[int]) -> "GradedMatrix":
        tgt = GradedFree(self.n, tuple(self.target.gens[r] for r in rows), self.killed)
        pos = {r: j for j, r in enumerate(rows)}
        return GradedMatrix(self.source, tgt, {(pos[r], c): v for (r, c), v in self.coeffs.items() if r in pos})

    def to_json(self) -> dict:
        return {
            "source": [list(g) for g in self.source.gens],
            "target": [list(g) for g in self.target.gens],
            "entries": [[r, c, fraction_str(v)] for (r, c), v in sorted(self.coeffs.items())],
        }


def fraction_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def zero_map(source: GradedFree, target: GradedFree) -> GradedMatrix:
    return GradedMatrix(source, target, {})


def identity(F: GradedFree) -> GradedMatrix:
    return GradedMatrix(F, F, {(j, j): Fraction(1) for j in range(F.rank)})


def hstack(maps: Sequence[GradedMatrix], target: GradedFree) -> GradedMatrix:
    """``[f_1 | f_2 | ...]`` from the direct sum of the sources."""
    gens: list[Character] = []
    coeffs = {}
    off = 0
    for f in maps:
        if f.target != target:
            raise DimensionMismatch("hstack with different targets")
        for (r, c), v in f.coeffs.items():
            coeffs[(r, c + off)] = v
        gens.extend(f.source.gens)
        off += f.source.rank
    return GradedMatrix(GradedFree(target.n, tuple(gens), target.killed), target, coeffs)


def block_diag(maps: Sequence[GradedMatrix]) -> GradedMatrix:
    n = maps[0].n
    killed = maps[0].killed
    sg: list[Character] = []
    tg: list[Character] = []
    coeffs = {}
    ro = co = 0
    for f in maps:
        for (r, c), v in f.coeffs.items():
            coeffs[(r + ro, c + co)] = v
        sg.extend(f.source.gens)
        tg.extend(f.target.gens)
        ro += f.target.rank
        co += f.source.rank
    return GradedMatrix(GradedFree(n, tuple(sg), killed), GradedFree(n, tuple(tg), killed), coeffs)


# -- kernels ---------------------------------------------------------------


def _meet(chars: Iterable[Character]) -> Character:
    return tuple(min(col) for col in zip(*chars))


def _meet_closure(chars: Sequence[Character]) -> set[Character]:
    seen = set(chars)
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for b in list(seen):
                m = _meet((a, b))
                if m not in seen:
                    seen.add(m)
                    new.append(m)
        frontier = new
    return seen


def syzygies(phi: GradedMatrix) -> GradedMatrix:
    """Minimal homogeneous generators of ``ker phi``, as a map into ``phi.source``.

    A kernel generator can only sit in a degree that is the meet of some set
    of source-generator degrees; in each such degree we keep a basis of the
    kernel modulo the part coming from one step up in every variable.
    """
    F = phi.source
    n, killed = F.n, F.killed
    if F.rank == 0:
        return zero_map(zero_free(n, killed), F)
    by_col = phi._by_col
    rows_used = sorted({r for (r, _c) in phi.coeffs})
    row_pos = {r: j for j, r in enumerate(rows_used)}
    cache: dict[tuple[int, ...], list[list[Fraction]]] = {}

    def kernel_on(cols: tuple[int, ...]) -> list[list[Fraction]]:
        if cols not in cache:
            block = [[Fraction(0)] * len(cols) for _ in rows_used]
            for j, c in enumerate(cols):
                for r, v in by_col.get(c, {}).items():
                    block[row_pos[r]][j] = v
            cache[cols] = linalg.nullspace(block, len(cols)) if rows_used else linalg.nullspace([], len(cols))
        return cache[cols]

    free_vars = [i for i in range(1, n + 1) if i not in killed]
    gens_out: list[Character] = []
    vectors: list[dict[int, Fraction]] = []
    for mu in sorted(_meet_closure(F.gens)):
        cols = tuple(F.active(mu))
        if not cols:
            continue
        K = kernel_on(cols)
        if not K:
            continue
        pos = {c: j for j, c in enumerate(cols)}
        lower = []
        for i in free_vars:
            up = add(mu, unit(n, i))
            ucols = tuple(F.active(up))
            for vec in kernel_on(ucols):
                full = [Fraction(0)] * len(cols)
                for c, val in zip(ucols, vec):
                    full[pos[c]] = val
                lower.append(full)
        for vec in linalg.complement(lower, K, len(cols)):
            gens_out.append(mu)
            vectors.append({c: val for c, val in zip(cols, vec) if val != 0})
    src = GradedFree(n, tuple(gens_out), killed)
    coeffs = {(c, j): v for j, vec in enumerate(vectors) for c, v in vec.items()}
    return GradedMatrix(src, F, coeffs)


def lift(target_map: GradedMatrix, rhs: GradedMatrix) -> GradedMatrix | None:
    """Solve ``target_map o X = rhs`` for a homogeneous ``X``; None if impossible."""
    if rhs.target != target_map.target:
        raise DimensionMismatch("lift with mismatched targets")
    K = target_map.source
    coeffs = {}
    for c, lam in enumerate(rhs.source.gens):
        cols = K.active(lam)
        rows = target_map.target.active(lam)
        col = rhs._by_col.get(c, {})
        if any(r not in set(rows) for r in col):
            return None
        if not col:
            continue
        block = target_map.dense(rows, cols)
        b = [col.get(r, Fraction(0)) for r in rows]
        x = linalg.solve(block, len(cols), b) if cols else None
        if x is None:
            return None
        for j, val in zip(cols, x):
            if val != 0:
                coeffs[(j, c)] = val
    return GradedMatrix(rhs.source, K, coeffs)


# -- presented modules -----------------------------------------------------


@dataclass(frozen=True)
class PresentedModule:
    """``coker(pres)``; generators are ``pres.target``."""

    pres: GradedMatrix

    @property
    def n(self) -> int:
        return self.pres.n

    @property
    def killed(self) -> frozenset[int]:
        return self.pres.killed

    @property
    def gens(self) -> GradedFree:
        return self.pres.target

    @property
    def relations(self) -> GradedFree:
        return self.pres.source

    def piece_dim(self, mu: Sequence[int]) -> int:
        return self.gens.piece_dim(mu) - self.pres.rank_at(mu)

    def characters(self) -> list[Character]:
        return list(self.gens.gens) + list(self.relations.gens)

    def is_zero(self) -> bool:
        return minimize_presentation(self).gens.rank == 0

    def twist(self, lam: Sequence[int]) -> "PresentedModule":
        return PresentedModule(self.pres.twist(lam))

    def to_json(self) -> dict:
        m = minimize_presentation(self)
        return {
            "ring_killed": sorted(self.killed),
            "generators": [list(g) for g in m.gens.gens],
            "relations": m.pres.to_json()["entries"],
            "relation_degrees": [list(g) for g in m.relations.gens],
        }


def free_module(n: int, gens: Iterable[Sequence[int]], killed: Iterable[int] = ()) -> PresentedModule:
    F = GradedFree(n, tuple(character(g) for g in gens), frozenset(killed))
    return PresentedModule(zero_map(zero_free(n, F.killed), F))


def quotient_by_variables(n: int, variables: Iterable[int], lam: Sequence[int] | None = None,
                          killed: Iterable[int] = ()) -> PresentedModule:
    """``A(lam) / (x_i : i in variables)``."""
    lam = character(lam) if lam is not None else (0,) * n
    killed = frozenset(killed)
    vs = [i for i in sorted(set(variables)) if i not in killed]
    F0 = GradedFree(n, (lam,), killed)
    F1 = GradedFree(n, tuple(sub(lam, unit(n, i)) for i in vs), killed)
    return PresentedModule(GradedMatrix(F1, F0, {(0, j): Fraction(1) for j in range(len(vs))}))


def stratum_sheaf(n: int, stratum: Stratum | Iterable[int]) -> PresentedModule:
    """Structure sheaf of the closure of the stratum with the given vanishing set."""
    van = stratum.vanishing if isinstance(stratum, Stratum) else frozenset(stratum)
    return quotient_by_variables(n, van)


def skyscraper(lam: Sequence[int]) -> PresentedModule:
    """One-dimensional module at the origin in character ``lam``."""
    n = len(lam)
    return quotient_by_variables(n, range(1, n + 1), lam)


def monomial_quotient(n: int, lam: Sequence[int], monomials: Iterable[Sequence[int]],
                      killed: Iterable[int] = ()) -> PresentedModule:
    """``A(lam) / (x^a : a in monomials)``."""
    lam = character(lam)
    killed = frozenset(killed)
    mons = [character(a) for a in monomials]
    mons = [a for a in mons if allowed(a, killed)]
    F0 = GradedFree(n, (lam,), killed)
    F1 = GradedFree(n, tuple(sub(lam, a) for a in mons), killed)
    return PresentedModule(GradedMatrix(F1, F0, {(0, j): Fraction(1) for j in range(len(mons))}))


def twist(M: PresentedModule, lam: Sequence[int]) -> PresentedModule:
    return M.twist(lam)


def direct_sum(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    return PresentedModule(block_diag([M.pres, N.pres]))


def tensor_free(F: GradedFree, G: GradedFree) -> tuple[GradedFree, dict[tuple[int, int], int]]:
    """``F (x) G`` with index map (i, j) -> position; ordering is i-major."""
    _same_ring(F, G)
    gens = []
    index = {}
    for i, a in enumerate(F.gens):
        for j, b in enumerate(G.gens):
            index[(i, j)] = len(gens)
            gens.append(add(a, b))
    return GradedFree(F.n, tuple(gens), F.killed), index


def tensor_maps(f: GradedMatrix, g: GradedMatrix) -> GradedMatrix:
    src, si = tensor_free(f.source, g.source)
    tgt, ti = tensor_free(f.target, g.target)
    coeffs = {}
    for (r1, c1), v in f.coeffs.items():
        for (r2, c2), w in g.coeffs.items():
            coeffs[(ti[(r1, r2)], si[(c1, c2)])] = v * w
    return GradedMatrix(src, tgt, coeffs)


def tensor_presentations(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """Underived tensor product ``M (x)_A N``."""
    F0, G0 = M.gens, N.gens
    left = tensor_maps(M.pres, identity(G0))
    right = tensor_maps(identity(F0), N.pres)
    target, _ = tensor_free(F0, G0)
    return PresentedModule(hstack([left, right], target))


def minimize_presentation(M: PresentedModule) -> PresentedModule:
    """Cancel unit entries (forced exponent 0) and drop zero relations."""
    return minimize_presentation_tracked(M)[0]


def minimize_presentation_tracked(M: PresentedModule) -> tuple[PresentedModule, list[int]]:
    """As ``minimize_presentation``, also returning the indices of the kept generators.

    Kept generators are the same elements of the module as before, so a map
    out of the old generators restricts to the new ones.
    """
    pres = M.pres
    kept = list(range(pres.target.rank))
    while True:
        hit = next(((r, c) for (r, c), v in sorted(pres.coeffs.items())
                    if pres.target.gens[r] == pres.source.gens[c]), None)
        if hit is None:
            break
        r0, c0 = hit
        u = pres.coeffs[hit]
        col = pres._by_col.get(c0, {})
        row = pres._by_row.get(r0, {})
        new = dict(pres.coeffs)
        for r, a in col.items():
            if r == r0:
                continue
            for c, b in row.items():
                if c == c0:
                    continue
                new[(r, c)] = new.get((r, c), Fraction(0)) - a * b / u
        rows = [r for r in range(pres.target.rank) if r != r0]
        cols = [c for c in range(pres.source.rank) if c != c0]
        rp = {r: j for j, r in enumerate(rows)}
        cp = {c: j for j, c in enumerate(cols)}
        tgt = GradedFree(pres.n, tuple(pres.target.gens[r] for r in rows), pres.killed)
        src = GradedFree(pres.n, tuple(pres.source.gens[c] for c in cols), pres.killed)
        pres = GradedMatrix(src, tgt, {(rp[r], cp[c]): v for (r, c), v in new.items()
                                       if r in rp and c in cp})
        del kept[r0]
    return PresentedModule(prune_relations(pres)), kept


def prune_relations(pres: GradedMatrix) -> GradedMatrix:
    """Drop relations generated by the others; what remains is a minimal set."""
    cols = sorted({c for (_r, c) in pres.coeffs}, key=lambda c: (sum(pres.source.gens[c]), pres.source.gens[c], c))
    keep = list(cols)
    for c in cols:
        mu = pres.source.gens[c]
        others = [j for j in keep if j != c and allowed(sub(pres.source.gens[j], mu), pres.killed)]
        rows = pres.target.active(mu)
        base = linalg.rank(pres.dense(rows, others), len(others)) if others and rows else 0
        with_c = linalg.rank(pres.dense(rows, others + [c]), len(others) + 1) if rows else 0
        if with_c == base:
            keep.remove(c)
    keep.sort()
    return pres if len(keep) == pres.source.rank else pres.restrict_columns(keep)


def piece_dim(M: PresentedModule, mu: Sequence[int]) -> int:
    return M.piece_dim(mu)


# -- fibers and localization at strata ------------------------------------


def _check_stratum_in_ring(killed: frozenset[int], stratum: Stratum) -> None:
    if not killed <= stratum.vanishing:
        raise DimensionMismatch(
            "stratum is not contained in the support ring",
            stratum=list(stratum.indices),
            killed=sorted(killed),
        )


def fiber_blocks(f: GradedMatrix, stratum: Stratum) -> dict[tuple[int, ...], tuple[list[int], list[int], list[list[Fraction]]]]:
    """Fiber of a map at the stratum's base point, split by stabilizer character.

    Variables vanishing on the stratum become 0 and the others become 1.
    Returns restricted character -> (rows, cols, block).
    """
    _check_stratum_in_ring(f.killed, stratum)
    rows_by: dict[tuple[int, ...], list[int]] = {}
    cols_by: dict[tuple[int, ...], list[int]] = {}
    for r, g in enumerate(f.target.gens):
        rows_by.setdefault(stratum.restrict(g), []).append(r)
    for c, g in enumerate(f.source.gens):
        cols_by.setdefault(stratum.restrict(g), []).append(c)
    out = {}
    for key in set(rows_by) | set(cols_by):
        rows = rows_by.get(key, [])
        cols = cols_by.get(key, [])
        out[key] = (rows, cols, f.dense(rows, cols))
    return out


def restrict_to_stratum(M: PresentedModule, stratum: Stratum):
    """Fiber of ``M`` at the stratum, as a multiset of stabilizer characters."""
    from .sstructure import OrbitRep

    chars = {}
    for key, (rows, cols, block) in fiber_blocks(M.pres, stratum).items():
        d = len(rows) - (linalg.rank(block, len(cols)) if rows and cols else 0)
        if d:
            chars[key] = d
    return OrbitRep(stratum, chars)


def localize_to_stratum(M: PresentedModule, stratum: Stratum) -> PresentedModule:
    """Slice of ``M`` over the stratum: invert and set to 1 the non-vanishing variables.

    The result is a module over the polynomial ring in the vanishing
    variables, graded by stabilizer characters.
    """
    _check_stratum_in_ring(M.killed, stratum)
    idx = stratum.indices
    m = len(idx)
    killed = frozenset(idx.index(i) + 1 for i in M.killed)
    src = GradedFree(m, tuple(stratum.restrict(g) for g in M.relations.gens), killed)
    tgt = GradedFree(m, tuple(stratum.restrict(g) for g in M.gens.gens), killed)
    return PresentedModule(GradedMatrix(src, tgt, M.pres.coeffs))


def pushforward_module(M: PresentedModule, killed: Iterable[int] = ()) -> PresentedModule:
    """Regard a module over a closure ring as a module over a ring with fewer killed variables."""
    new_killed = frozenset(killed)
    if not new_killed <= M.killed:
        raise DimensionMismatch("pushforward must enlarge the ring")
    n = M.n
    extra = sorted(M.killed - new_killed)
    tgt = GradedFree(n, M.gens.gens, new_killed)
    rel_gens = list(M.relations.gens)
    coeffs = dict(M.pres.coeffs)
    for r, g in enumerate(M.gens.gens):
        for i in extra:
            coeffs[(r, len(rel_gens))] = Fraction(1)
            rel_gens.append(sub(g, unit(n, i)))
    src = GradedFree(n, tuple(rel_gens), new_killed)
    return PresentedModule(GradedMatrix(src, tgt, coeffs))


# -- finite length ---------------------------------------------------------


def finite_length(M: PresentedModule, cap: int = 100000) -> dict[Character, int] | None:
    """Character multiset of ``M`` if it has finite length, else None."""
    from .torus import enumerate_strata_n

    for s in enumerate_strata_n(M.n):
        if not M.killed <= s.vanishing or len(s) == M.n:
            continue
        if restrict_to_stratum(M, s):
            return None
    out: dict[Character, int] = {}
    seen: set[Character] = set()
    frontier = list(set(M.gens.gens))
    free_vars = [i for i in range(1, M.n + 1) if i not in M.killed]
    while frontier:
        nxt = []
        for mu in frontier:
            if mu in seen:
                continue
            seen.add(mu)
            if len(seen) > cap:
                raise RuntimeError("finite-length scan exceeded its cap")
            d = M.piece_dim(mu)
            if d:
                out[mu] = d
                nxt.extend(sub(mu, unit(M.n, i)) for i in free_vars)
        frontier = nxt
    return dict(sorted(out.items()))


def validation_box(chars: Iterable[Sequence[int]], n: int, pad: int | None = None) -> list[Character]:
    """All characters in the padded componentwise span of ``chars``."""
    import os

    chars = [character(c) for c in chars]
    if pad is None:
        pad = int(os.environ.get("STAGGER_BOX_PAD", n))
    if not chars:
        return [(0,) * n]
    lo = [min(c[j] for c in chars) - pad for j in range(n)]
    hi = [max(c[j] for c in chars) + pad for j in range(n)]
    return [tuple(p) for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)])]
