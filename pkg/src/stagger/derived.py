"""Bounded complexes of graded free modules and the derived functors on them.

Conventions: ``F[m]^k = F^{k+m}`` with differential ``(-1)^m d``; the cone of
``f: F -> G`` has ``cone^k = F^{k+1} + G^k`` and differential
``[[-d_F, 0], [f, d_G]]``.  Complexes may live over a closure ring, i.e.
with some variables set to zero (``killed``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, NotChainMap, NotFiniteLength
from .graded import (
    GradedFree,
    GradedMatrix,
    PresentedModule,
    allowed,
    block_diag,
    fiber_blocks,
    finite_length,
    hstack,
    identity,
    minimize_presentation,
    minimize_presentation_tracked,
    quotient_by_variables,
    restrict_to_stratum as _fiber,
    skyscraper,
    syzygies,
    tensor_free,
    tensor_maps,
    zero_free,
    zero_map,
)
from .sstructure import OrbitRep
from .torus import Character, Stratum, TorusSetup, add, character, sub, unit


@dataclass(frozen=True)
class FreeComplex:
    """``terms[k]`` in cohomological degree k, ``diffs[k]: terms[k] -> terms[k+1]``."""

    n: int
    terms: Mapping[int, GradedFree] = field(default_factory=dict)
    diffs: Mapping[int, GradedMatrix] = field(default_factory=dict)
    killed: frozenset[int] = frozenset()

    def __post_init__(self):
        killed = frozenset(self.killed)
        object.__setattr__(self, "killed", killed)
        terms = {k: F for k, F in sorted(self.terms.items()) if F.rank}
        for F in terms.values():
            if F.n != self.n or F.killed != killed:
                raise DimensionMismatch("term over the wrong ring", n=self.n, killed=sorted(killed))
        diffs = {}
        for k, d in self.diffs.items():
            if d.is_zero():
                continue
            if d.source != self.term(k, terms) or d.target != self.term(k + 1, terms):
                raise DimensionMismatch("differential does not match terms", degree=k)
            diffs[k] = d
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "diffs", dict(sorted(diffs.items())))
        for k, d in diffs.items():
            nxt = diffs.get(k + 1)
            if nxt is not None and not (nxt @ d).is_zero():
                raise NotChainMap("d o d is not zero", degree=k)

    def term(self, k: int, terms: Mapping[int, GradedFree] | None = None) -> GradedFree:
        terms = self.terms if terms is None else terms
        return terms.get(k) or zero_free(self.n, self.killed)

    def diff(self, k: int) -> GradedMatrix:
        d = self.diffs.get(k)
        return d if d is not None else zero_map(self.term(k), self.term(k + 1))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def characters(self) -> list[Character]:
        return [g for F in self.terms.values() for g in F.gens]

    def twist(self, lam: Sequence[int]) -> "FreeComplex":
        return FreeComplex(
            self.n,
            {k: F.twist(lam) for k, F in self.terms.items()},
            {k: d.twist(lam) for k, d in self.diffs.items()},
            self.killed,
        )

    def shape(self) -> dict[int, list[Character]]:
        return {k: list(F.gens) for k, F in self.terms.items()}

    def to_json(self) -> dict:
        return {
            "ring_killed": sorted(self.killed),
            "terms": {str(k): [list(g) for g in F.gens] for k, F in self.terms.items()},
            "differentials": {str(k): d.to_json()["entries"] for k, d in self.diffs.items()},
        }


def zero_complex(n: int, killed: Iterable[int] = ()) -> FreeComplex:
    return FreeComplex(n, {}, {}, frozenset(killed))


def single(F: GradedFree, degree: int = 0) -> FreeComplex:
    return FreeComplex(F.n, {degree: F}, {}, F.killed)


def free(n: int, *lams: Sequence[int], degree: int = 0, killed: Iterable[int] = ()) -> FreeComplex:
    return single(GradedFree(n, tuple(character(l) for l in lams), frozenset(killed)), degree)


# -- resolutions -----------------------------------------------------------


def free_resolution(M: PresentedModule, max_len: int | None = None) -> FreeComplex:
    """Minimal free resolution, with ``M`` as the cohomology in degree 0."""
    from .errors import ResolutionTooLong

    n = M.n
    max_len = n if max_len is None else max_len
    m = minimize_presentation(M)
    terms = {0: m.gens}
    diffs = {}
    cur = m.pres
    k = -1
    while cur.source.rank:
        terms[k] = cur.source
        diffs[k] = cur
        if -k > max_len + 1:
            raise ResolutionTooLong("resolution exceeds the allowed length", max_len=max_len)
        cur = syzygies(cur)
        k -= 1
    out = minimize(FreeComplex(n, terms, diffs, M.killed))
    if out.terms and -min(out.terms) > max_len:
        raise ResolutionTooLong("resolution exceeds the allowed length", max_len=max_len, length=-min(out.terms))
    return out


def as_complex(obj) -> FreeComplex:
    if isinstance(obj, FreeComplex):
        return obj
    if isinstance(obj, PresentedModule):
        return free_resolution(obj)
    if isinstance(obj, GradedFree):
        return single(obj)
    raise TypeError(f"cannot view {type(obj).__name__} as a complex")


def koszul(n: int, variables: Iterable[int], lam: Sequence[int] | None = None) -> FreeComplex:
    """Koszul complex on the given variables (a resolution of ``A(lam)/(x_i)``)."""
    return free_resolution(quotient_by_variables(n, variables, lam))


# -- basic triangulated operations ----------------------------------------


def shift(F: FreeComplex, m: int) -> FreeComplex:
    sign = -1 if m % 2 else 1
    return FreeComplex(
        F.n,
        {k - m: T for k, T in F.terms.items()},
        {k - m: d.scale(sign) for k, d in F.diffs.items()},
        F.killed,
    )


def direct_sum(*complexes: FreeComplex) -> FreeComplex:
    if not complexes:
        raise ValueError("direct_sum needs at least one complex")
    n, killed = complexes[0].n, complexes[0].killed
    for C in complexes:
        if C.n != n or C.killed != killed:
            raise DimensionMismatch("direct sum of complexes over different rings")
    degs = sorted({k for C in complexes for k in C.terms})
    terms = {}
    diffs = {}
    for k in degs:
        terms[k] = GradedFree(n, tuple(g for C in complexes for g in C.term(k).gens), killed)
    for k in degs:
        diffs[k] = block_diag([C.diff(k) for C in complexes]) if k + 1 in terms else None
    return FreeComplex(n, terms, {k: d for k, d in diffs.items() if d is not None}, killed)


@dataclass(frozen=True)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    maps: Mapping[int, GradedMatrix]

    def component(self, k: int) -> GradedMatrix:
        f = self.maps.get(k)
        return f if f is not None else zero_map(self.source.term(k), self.target.term(k))

    def check(self) -> None:
        for k in set(self.source.terms) | set(self.target.terms) | {k - 1 for k in self.source.terms}:
            lhs = self.target.diff(k) @ self.component(k)
            rhs = self.component(k + 1) @ self.source.diff(k)
            if not (lhs - rhs).is_zero():
                raise NotChainMap("map does not commute with differentials", degree=k)


def cone(f: ChainMap) -> FreeComplex:
    f.check()
    F, G = f.source, f.target
    n, killed = F.n, F.killed
    degs = sorted({k - 1 for k in F.terms} | set(G.terms))
    terms = {k: F.term(k + 1) + G.term(k) for k in degs}
    diffs = {}
    for k in degs:
        a = F.term(k + 1).rank
        tgt = F.term(k + 2) + G.term(k + 1)
        coeffs = {}
        for (r, c), v in F.diff(k + 1).coeffs.items():
            coeffs[(r, c)] = -v
        for (r, c), v in f.component(k + 1).coeffs.items():
            coeffs[(F.term(k + 2).rank + r, c)] = v
        for (r, c), v in G.diff(k).coeffs.items():
            coeffs[(F.term(k + 2).rank + r, a + c)] = v
        diffs[k] = GradedMatrix(terms[k], tgt, coeffs)
    return FreeComplex(n, terms, {k: d for k, d in diffs.items() if k + 1 in terms}, killed)


def identity_map(F: FreeComplex) -> ChainMap:
    return ChainMap(F, F, {k: identity(T) for k, T in F.terms.items()})


# -- minimization ----------------------------------------------------------


def minimize(F: FreeComplex) -> FreeComplex:
    """Remove all unit entries of the differentials by Gaussian elimination."""
    terms = dict(F.terms)
    diffs = {k: d for k, d in F.diffs.items()}
    n, killed = F.n, F.killed
    while True:
        hit = None
        for k, d in sorted(diffs.items()):
            for (r, c), v in sorted(d.coeffs.items()):
                if d.target.gens[r] == d.source.gens[c]:
                    hit = (k, r, c)
                    break
            if hit:
                break
        if hit is None:
            break
        k, r0, c0 = hit
        d = diffs[k]
        u = d.coeffs[(r0, c0)]
        col = d._by_col.get(c0, {})
        row = d._by_row.get(r0, {})
        new = dict(d.coeffs)
        for r, a in col.items():
            if r == r0:
                continue
            for c, b in row.items():
                if c == c0:
                    continue
                new[(r, c)] = new.get((r, c), Fraction(0)) - a * b / u
        src_keep = [c for c in range(d.source.rank) if c != c0]
        tgt_keep = [r for r in range(d.target.rank) if r != r0]
        new_src = GradedFree(n, tuple(d.source.gens[c] for c in src_keep), killed)
        new_tgt = GradedFree(n, tuple(d.target.gens[r] for r in tgt_keep), killed)
        cp = {c: j for j, c in enumerate(src_keep)}
        rp = {r: j for j, r in enumerate(tgt_keep)}
        diffs[k] = GradedMatrix(new_src, new_tgt, {(rp[r], cp[c]): v for (r, c), v in new.items()
                                                   if r in rp and c in cp})
        if k - 1 in diffs:
            diffs[k - 1] = diffs[k - 1].restrict_rows(src_keep)
        if k + 1 in diffs:
            diffs[k + 1] = diffs[k + 1].restrict_columns(tgt_keep)
        terms[k] = new_src
        terms[k + 1] = new_tgt
    terms = {k: T for k, T in terms.items() if T.rank}
    diffs = {k: d for k, d in diffs.items() if k in terms and k + 1 in terms}
    return FreeComplex(n, terms, diffs, killed)


# -- tensor and Hom --------------------------------------------------------


def tensorL(F, G) -> FreeComplex:
    """Derived tensor product (total complex of termwise tensors)."""
    F, G = as_complex(F), as_complex(G)
    if F.n != G.n or F.killed != G.killed:
        raise DimensionMismatch("tensor of complexes over different rings")
    n, killed = F.n, F.killed
    index: dict[int, list[tuple[int, int]]] = {}
    for a in F.terms:
        for b in G.terms:
            index.setdefault(a + b, []).append((a, b))
    terms = {}
    offsets: dict[tuple[int, int], int] = {}
    for k, pairs in sorted(index.items()):
        gens: list[Character] = []
        for a, b in pairs:
            offsets[(a, b)] = len(gens)
            T, _ = tensor_free(F.term(a), G.term(b))
            gens.extend(T.gens)
        terms[k] = GradedFree(n, tuple(gens), killed)
    diffs = {}
    for k, pairs in index.items():
        if k + 1 not in terms:
            continue
        coeffs: dict[tuple[int, int], Fraction] = {}
        for a, b in pairs:
            off = offsets[(a, b)]
            gb = G.term(b).rank
            if (a + 1, b) in offsets:
                toff = offsets[(a + 1, b)]
                gb2 = G.term(b).rank
                for (r, c), v in F.diff(a).coeffs.items():
                    for j in range(gb):
                        key = (toff + r * gb2 + j, off + c * gb + j)
                        coeffs[key] = coeffs.get(key, Fraction(0)) + v
            if (a, b + 1) in offsets:
                toff = offsets[(a, b + 1)]
                gb2 = G.term(b + 1).rank
                sign = -1 if a % 2 else 1
                for (r, c), v in G.diff(b).coeffs.items():
                    for i in range(F.term(a).rank):
                        key = (toff + i * gb2 + r, off + i * gb + c)
                        coeffs[key] = coeffs.get(key, Fraction(0)) + sign * v
        diffs[k] = GradedMatrix(terms[k], terms[k + 1], coeffs)
    return FreeComplex(n, terms, diffs, killed)


def hom_complex(F, G) -> FreeComplex:
    """Internal Hom complex ``Hom^k = prod_p Hom(F^p, G^{p+k})``.

    Differential ``D f = d_G f - (-1)^k f d_F``.  Computes RHom when the
    terms of ``F`` are free (always the case here).
    """
    F, G = as_complex(F), as_complex(G)
    if F.n != G.n or F.killed != G.killed:
        raise DimensionMismatch("Hom between complexes over different rings")
    n, killed = F.n, F.killed
    index: dict[int, list[int]] = {}
    for p in F.terms:
        for q in G.terms:
            index.setdefault(q - p, []).append(p)
    terms = {}
    offsets: dict[tuple[int, int], int] = {}  # (k, p) -> offset; basis (j, i) at j * rank F^p + i
    for k, ps in sorted(index.items()):
        gens: list[Character] = []
        for p in sorted(ps):
            offsets[(k, p)] = len(gens)
            Fp, Gq = F.term(p), G.term(p + k)
            gens.extend(sub(mu, lam) for mu in Gq.gens for lam in Fp.gens)
        terms[k] = GradedFree(n, tuple(gens), killed)
    diffs = {}
    for k, ps in index.items():
        if k + 1 not in terms:
            continue
        coeffs: dict[tuple[int, int], Fraction] = {}
        sign = -1 if k % 2 else 1
        for p in ps:
            off = offsets[(k, p)]
            fr = F.term(p).rank
            # d_G o f : lands in Hom(F^p, G^{p+k+1})
            if (k + 1, p) in offsets:
                toff = offsets[(k + 1, p)]
                for (jj, j), v in G.diff(p + k).coeffs.items():
                    for i in range(fr):
                        key = (toff + jj * fr + i, off + j * fr + i)
                        coeffs[key] = coeffs.get(key, Fraction(0)) + v
            # -(-1)^k f o d_F : lands in Hom(F^{p-1}, G^{p+k})
            if (k + 1, p - 1) in offsets:
                toff = offsets[(k + 1, p - 1)]
                fr2 = F.term(p - 1).rank
                for (i, ii), v in F.diff(p - 1).coeffs.items():
                    for j in range(G.term(p + k).rank):
                        key = (toff + j * fr2 + ii, off + j * fr + i)
                        coeffs[key] = coeffs.get(key, Fraction(0)) - sign * v
        diffs[k] = GradedMatrix(terms[k], terms[k + 1], coeffs)
    return FreeComplex(n, terms, diffs, killed)


def rhom(F, G) -> FreeComplex:
    return hom_complex(F, G)


def omega(setup: TorusSetup, killed: Iterable[int] = ()) -> FreeComplex:
    """Dualizing complex of the closure ring with the given killed variables.

    ``A(lam_w)[d_w]`` on the ambient space and its shriek restriction
    ``A_Z(lam_w + sum_{i in Z} e_i)[d_w - |Z|]`` on a closure.
    """
    killed = frozenset(killed)
    lam = setup.omega_twist
    for i in killed:
        lam = add(lam, unit(setup.n, i))
    return single(GradedFree(setup.n, (lam,), killed), len(killed) - setup.omega_shift)


def dualize(setup: TorusSetup, F) -> FreeComplex:
    F = as_complex(F)
    return hom_complex(F, omega(setup, F.killed))


# -- closed strata ---------------------------------------------------------


def _killed_of(target) -> frozenset[int]:
    if isinstance(target, Stratum):
        return target.vanishing
    return frozenset(int(i) for i in target)


def _kill_matrix(d: GradedMatrix, killed: frozenset[int], src: GradedFree, tgt: GradedFree) -> GradedMatrix:
    return GradedMatrix(src, tgt, {(r, c): v for (r, c), v in d.coeffs.items()
                                   if allowed(d.exponent(r, c), killed)})


def pullback_L(setup: TorusSetup | None, F, C) -> FreeComplex:
    """Derived restriction to the closure of the stratum ``C`` (set ``x_i = 0`` for i in Z)."""
    F = as_complex(F)
    killed = _killed_of(C)
    if not F.killed <= killed:
        raise DimensionMismatch("closure is not inside the support ring", killed=sorted(F.killed), target=sorted(killed))
    terms = {k: GradedFree(F.n, T.gens, killed) for k, T in F.terms.items()}
    diffs = {k: _kill_matrix(d, killed, terms[k], terms[k + 1]) for k, d in F.diffs.items()}
    return FreeComplex(F.n, terms, diffs, killed)


def shriek_R(setup: TorusSetup, F, C) -> FreeComplex:
    """``Ri^!`` to the closure of ``C``, computed as ``D_closure o Li^* o D``."""
    F = as_complex(F)
    return dualize(setup, pullback_L(setup, dualize(setup, F), C))


def pushforward_closed(F, killed: Iterable[int] = ()) -> FreeComplex:
    """``i_*`` from a closure ring to a ring with fewer killed variables (default: ambient)."""
    if isinstance(F, PresentedModule):
        from .graded import pushforward_module

        return free_resolution(pushforward_module(F, killed))
    F = as_complex(F)
    new_killed = frozenset(killed)
    if not new_killed <= F.killed:
        raise DimensionMismatch("pushforward must enlarge the ring")
    terms = {k: GradedFree(F.n, T.gens, new_killed) for k, T in F.terms.items()}
    diffs = {k: GradedMatrix(terms[k], terms[k + 1], d.coeffs) for k, d in F.diffs.items()}
    lifted = FreeComplex(F.n, terms, diffs, new_killed)
    extra = sorted(F.killed - new_killed)
    if not extra:
        return lifted
    kos = free_resolution(quotient_by_variables(F.n, extra, killed=new_killed))
    return minimize(tensorL(lifted, kos))


# -- cohomology ------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyEntry:
    module: PresentedModule
    gen_map: GradedMatrix  # generators of the module -> cycles in F^k


def lift(sigma: GradedMatrix, rhs: GradedMatrix) -> GradedMatrix:
    from .graded import lift as _lift

    out = _lift(sigma, rhs)
    if out is None:
        raise NotChainMap("image is not contained in the kernel")
    return out


def cohomology_with_maps(F) -> dict[int, CohomologyEntry]:
    F = as_complex(F)
    out = {}
    for k in F.terms:
        Fk = F.term(k)
        d = F.diff(k)
        sigma = syzygies(d) if not d.is_zero() else identity(Fk)
        K = sigma.source
        if K.rank == 0:
            continue
        dprev = F.diff(k - 1)
        tau = lift(sigma, dprev) if not dprev.is_zero() else zero_map(F.term(k - 1), K)
        parts = []
        if not sigma.is_zero() and sigma.source.rank:
            s2 = syzygies(sigma)
            if s2.source.rank:
                parts.append(s2)
        if tau.source.rank:
            parts.append(tau)
        pres = hstack(parts, K) if parts else zero_map(zero_free(F.n, F.killed), K)
        module, kept = minimize_presentation_tracked(PresentedModule(pres))
        if module.gens.rank == 0:
            continue
        gen_map = sigma.restrict_columns(kept)
        out[k] = CohomologyEntry(module, gen_map)
    return out


def cohomology(F) -> dict[int, PresentedModule]:
    return {k: e.module for k, e in cohomology_with_maps(F).items()}


def piece_cohomology_dim(F: FreeComplex, k: int, mu: Sequence[int]) -> int:
    """``dim h^k(F)_mu`` by rank-nullity on the ``mu`` pieces (an oracle)."""
    dim = F.term(k).piece_dim(mu)
    return dim - F.diff(k).rank_at(mu) - F.diff(k - 1).rank_at(mu)


def hom_dim(F, G, k: int = 0) -> int:
    """``dim Hom_D(F, G[k])`` for bounded complexes of free modules."""
    H = hom_complex(F, G)
    return piece_cohomology_dim(H, k, (0,) * H.n)


def hom_complex_dims(F, G) -> dict[int, int]:
    H = hom_complex(F, G)
    zero = (0,) * H.n
    out = {}
    for k in range(min(H.terms, default=0) - 1, max(H.terms, default=0) + 2):
        d = piece_cohomology_dim(H, k, zero)
        if d:
            out[k] = d
    return out


# -- restriction to orbits -------------------------------------------------


def restrict_to_stratum(setup: TorusSetup | None, M: PresentedModule, C: Stratum) -> OrbitRep:
    """Fiber of a module at the stratum's base point, graded by the stabilizer."""
    return _fiber(M, C)


def fiber_cohomology(F: FreeComplex, C: Stratum) -> dict[int, OrbitRep]:
    """Cohomology of the derived fiber ``Li_C^* F|_C``, degree by degree."""
    if not F.killed <= C.vanishing:
        return {}
    blocks = {k: fiber_blocks(d, C) for k, d in F.diffs.items()}
    out = {}
    for k, T in F.terms.items():
        chars: dict[tuple[int, ...], int] = {}
        for g in T.gens:
            key = C.restrict(g)
            chars[key] = chars.get(key, 0) + 1
        for key in list(chars):
            for kk in (k, k - 1):
                b = blocks.get(kk, {}).get(key)
                if b and b[0] and b[1]:
                    chars[key] -= linalg.rank(b[2], len(b[1]))
        rep = OrbitRep(C, {kk: v for kk, v in chars.items() if v})
        if rep:
            out[k] = rep
    return out


def cohomology_fibers(F, C: Stratum) -> dict[int, OrbitRep]:
    """Underived fibers ``i_C^* h^k(F)|_C`` of every cohomology module."""
    out = {}
    for k, M in cohomology(F).items():
        if M.killed <= C.vanishing:
            rep = _fiber(M, C)
            if rep:
                out[k] = rep
    return out


def localize_cohomology(F, C: Stratum) -> dict[int, PresentedModule]:
    """Slices of the cohomology modules over the orbit ``C`` (see ``localize_to_stratum``)."""
    from .graded import localize_to_stratum

    out = {}
    for k, M in cohomology(F).items():
        if M.killed <= C.vanishing:
            L = minimize_presentation(localize_to_stratum(M, C))
            if L.gens.rank:
                out[k] = L
    return out


# -- splitting into cohomology ---------------------------------------------


class _LinearSystem:
    """Collects scalar linear equations in unknown matrix entries."""

    def __init__(self):
        self.nvars = 0
        self.rows: list[tuple[dict[int, Fraction], Fraction]] = []

    def unknown(self, source: GradedFree, target: GradedFree) -> dict[tuple[int, int], int]:
        out = {}
        for r, tg in enumerate(target.gens):
            for c, sg in enumerate(source.gens):
                if allowed(sub(tg, sg), source.killed):
                    out[(r, c)] = self.nvars
                    self.nvars += 1
        return out

    def solve(self) -> bool:
        if not self.rows:
            return True
        dense = []
        rhs = []
        for coeffs, const in self.rows:
            row = [Fraction(0)] * self.nvars
            for j, v in coeffs.items():
                row[j] += v
            dense.append(row)
            rhs.append(const)
        if self.nvars == 0:
            return all(c == 0 for c in rhs)
        return linalg.solve(dense, self.nvars, rhs) is not None


def _add_product(acc: dict, left: Mapping, right: Mapping, var_side: str, scale=1):
    """acc[(r, c)] += sum_k left[r,k] * right[k,c]; one factor holds variable ids."""
    by_row: dict[int, list] = {}
    for (k, c), v in right.items():
        by_row.setdefault(k, []).append((c, v))
    for (r, k), a in left.items():
        for c, b in by_row.get(k, []):
            lin = acc.setdefault((r, c), {})
            if var_side == "left":
                lin[a] = lin.get(a, Fraction(0)) + Fraction(scale) * b
            else:
                lin[b] = lin.get(b, Fraction(0)) + Fraction(scale) * a


def _splits_off(F: FreeComplex, k: int, entry: CohomologyEntry) -> bool:
    """Is there a chain map ``P[-k] -> F`` extending the generator map of h^k?"""
    P = free_resolution(entry.module)
    sys = _LinearSystem()
    g = entry.gen_map  # P^0 -> F^k
    H = sys.unknown(P.term(0), F.term(k - 1))
    L = -min(P.terms) if P.terms else 0
    fs = {0: None}
    for t in range(1, L + 1):
        fs[t] = sys.unknown(P.term(-t), F.term(k - t))
    for t in range(1, L + 1):
        dP = P.diff(-t).coeffs  # P^{-t} -> P^{-t+1}
        dF = F.diff(k - t).coeffs  # F^{k-t} -> F^{k-t+1}
        acc: dict = {}
        _add_product(acc, dF, fs[t], "right")
        if t == 1:
            # subtract (g + d H) o d_P
            dF1 = F.diff(k - 1).coeffs
            tmp: dict = {}
            _add_product(tmp, H, dP, "left")
            for (r, c), lin in tmp.items():
                for var, coef in lin.items():
                    for (rr, mid), a in dF1.items():
                        if mid == r:
                            cell = acc.setdefault((rr, c), {})
                            cell[var] = cell.get(var, Fraction(0)) - a * coef
            const = (g @ P.diff(-1)).coeffs
        else:
            _add_product(acc, fs[t - 1], dP, "left", scale=-1)
            const = {}
        keys = set(acc) | set(const)
        for key in keys:
            sys.rows.append((acc.get(key, {}), const.get(key, Fraction(0))))
    return sys.solve()


def iso_as_sum_of_cohomology(F) -> bool:
    """Does ``F`` split as the direct sum of its shifted cohomology modules?"""
    F = as_complex(F)
    table = cohomology_with_maps(F)
    for k, e in table.items():
        if finite_length(e.module) is None:
            raise NotFiniteLength("cohomology module is not of finite length", degree=k)
    return all(_splits_off(F, k, e) for k, e in table.items())


# -- complexes of presented modules ---------------------------------------


@dataclass(frozen=True)
class ModuleComplex:
    """Complex whose terms are presented modules; ``diffs[k]`` acts on generators."""

    n: int
    terms: Mapping[int, PresentedModule]
    diffs: Mapping[int, GradedMatrix]

    def term_generators(self) -> dict[int, list[Character]]:
        return {k: list(M.gens.gens) for k, M in sorted(self.terms.items())}

    def is_minimal(self) -> bool:
        return all(d.target.gens[r] != d.source.gens[c] for d in self.diffs.values() for (r, c) in d.coeffs)


def hom_into_module(P: FreeComplex, M: PresentedModule, degree: int = 0) -> ModuleComplex:
    """``Hom(P, M[-degree])`` for a free complex ``P`` and a module ``M``.

    ``Hom(A(lam), M) = M(-lam)``; the differential is precomposition with
    ``d_P`` (signed).
    """
    n = P.n
    terms = {}
    gen_index = {}
    for p, T in P.terms.items():
        k = degree - p
        parts = [M.twist(tuple(-x for x in lam)) for lam in T.gens]
        pres = block_diag([q.pres for q in parts])
        terms[k] = PresentedModule(pres)
        gen_index[k] = p
    diffs = {}
    m = M.gens.rank
    for k in terms:
        if k + 1 not in terms:
            continue
        p = gen_index[k]
        d = P.diff(p - 1)  # P^{p-1} -> P^p
        sign = -1 if (k - degree) % 2 else 1
        coeffs = {}
        for (i, ii), v in d.coeffs.items():
            for a in range(m):
                coeffs[(ii * m + a, i * m + a)] = -sign * v
        diffs[k] = GradedMatrix(terms[k].gens, terms[k + 1].gens, coeffs)
    return ModuleComplex(n, terms, diffs)


def module_complex_cohomology(C: ModuleComplex) -> dict[int, PresentedModule]:
    out = {}
    for k, Mk in C.terms.items():
        G = Mk.gens
        d = C.diffs.get(k)
        nxt = C.terms.get(k + 1)
        if d is not None and nxt is not None:
            both = hstack([d, nxt.pres], nxt.gens) if nxt.pres.source.rank else d
            syz = syzygies(both)
            sigma = GradedMatrix(syz.source, G, {(r, c): v for (r, c), v in syz.coeffs.items() if r < G.rank})
        else:
            sigma = identity(G)
        K = sigma.source
        if K.rank == 0:
            continue
        parts = [sigma, Mk.pres.scale(-1)]
        prev = C.diffs.get(k - 1)
        if prev is not None:
            parts.append(prev.scale(-1))
        big = hstack([p for p in parts if p.source.rank], G)
        rel = syzygies(big)
        proj = GradedMatrix(rel.source, K, {(r, c): v for (r, c), v in rel.coeffs.items() if r < K.rank})
        module = minimize_presentation(PresentedModule(proj))
        if module.gens.rank:
            out[k] = module
    return out


def dual_of_tensor_as_module_complex(setup: TorusSetup, M: PresentedModule, N: PresentedModule) -> ModuleComplex:
    """``D(M (x)^L N) = RHom(P_M, D N)`` written with module terms.

    Requires ``D N`` to have a single cohomology module.
    """
    DN = cohomology(dualize(setup, N))
    if len(DN) != 1:
        raise NotFiniteLength("dual of the second factor is not concentrated in one degree", degrees=sorted(DN))
    (deg, mod), = DN.items()
    return hom_into_module(free_resolution(M), minimize_presentation(mod), deg)


# -- builtin objects -------------------------------------------------------


def skyscraper_complex(lam: Sequence[int], degree: int = 0) -> FreeComplex:
    return shift(free_resolution(skyscraper(lam)), -degree)


def h_lambda(setup: TorusSetup, lam: Sequence[int], top: int | None = None) -> FreeComplex:
    """``C(lam)[step(lam) - top]`` at the origin; ``top`` defaults to n."""
    from .sstructure import step

    lam = character(lam)
    top = setup.n if top is None else top
    return shift(free_resolution(skyscraper(lam)), step(setup, setup.closed_stratum, lam) - top)
