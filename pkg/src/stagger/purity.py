"""Membership tests, purity certificates, filtrations, IC objects and decomposition.

Every "<=" family is a step-bound test on orbit fibers of cohomology
sheaves.  Every ">=" family is the "<=" test applied to the dual object
with the dual perversity; no Hom-orthogonality search is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .derived import (
    FreeComplex,
    as_complex,
    cohomology,
    dualize,
    fiber_cohomology,
    free_resolution,
    iso_as_sum_of_cohomology,
    localize_cohomology,
    pullback_L,
    shift,
    shriek_R,
)
from .errors import NotFiniteLength, NotPure, PerversityConditionError, StaggerError
from .graded import PresentedModule, finite_length, minimize_presentation, restrict_to_stratum, skyscraper
from .perversity import (
    Perversity,
    baric_dual,
    closure_pairs,
    db_dual,
    is_db_monotone_comonotone,
    skew_of,
    staggered_dual,
)
from .sstructure import altitude, restricted_step, step
from .torus import Character, Stratum, TorusSetup, character, closure_leq, codim

FAMILIES = (
    "baric_leq",
    "baric_geq",
    "staggered_leq",
    "staggered_geq",
    "staggered_heart",
    "skew_leq",
    "skew_geq",
    "purified_leq",
    "purified_geq",
    "pureperverse_leq",
    "pureperverse_geq",
)


@dataclass(frozen=True)
class Witness:
    stratum: Stratum
    k: int | None
    bound: int
    actual: int | None
    side: str = "leq"

    @property
    def ok(self) -> bool:
        return self.actual is None or self.actual <= self.bound

    def to_json(self) -> dict:
        return {
            "stratum": list(self.stratum.indices),
            "k": self.k,
            "bound": self.bound,
            "actual": self.actual,
            "side": self.side,
            "pass": self.ok,
        }


@dataclass(frozen=True)
class Certificate:
    """Outcome of a membership or purity test, with every step bound checked."""

    family: str
    params: Mapping[str, Any]
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()
    forced: bool | None = None

    @property
    def verdict(self) -> bool:
        if self.forced is not None:
            return self.forced
        return all(w.ok for w in self.witnesses)

    def __bool__(self) -> bool:
        return self.verdict

    @property
    def failures(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.ok]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": _jsonable(self.params),
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "notes": list(self.notes),
        }


def _jsonable(x):
    if isinstance(x, Perversity):
        return x.to_json()
    if isinstance(x, Stratum):
        return list(x.indices)
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _as_perversity(q) -> Perversity:
    return q if isinstance(q, Perversity) else Perversity(q)


def _strata_for(setup: TorusSetup, killed: frozenset[int]) -> list[Stratum]:
    return [s for s in setup.strata if killed <= s.vanishing]


def _bound(w: int, q: int) -> int:
    return (w + q) // 2


def _flip(ws: Sequence[Witness]) -> tuple[Witness, ...]:
    return tuple(Witness(w.stratum, w.k, w.bound, w.actual, "geq") for w in ws)


# -- coherent sheaves ------------------------------------------------------


def qC_witnesses(setup: TorusSetup, M: PresentedModule, w: int, q: Mapping[Stratum, int], k: int | None = None) -> list[Witness]:
    out = []
    for s in _strata_for(setup, M.killed):
        rep = restrict_to_stratum(M, s)
        if not rep:
            continue
        out.append(Witness(s, k, _bound(w, q[s]), rep.max_step(setup)))
    return out


def member_qC_leq(setup: TorusSetup, M: PresentedModule, w: int, q: Mapping[Stratum, int]) -> bool:
    """Every orbit fiber of ``M`` sits in steps ``<= floor((w + q(C)) / 2)``."""
    return all(x.ok for x in qC_witnesses(setup, M, w, q))


def _cohomology_witnesses(setup, F, bound_of_k, q, table=None) -> list[Witness]:
    table = cohomology(F) if table is None else table
    out = []
    for k, M in table.items():
        out.extend(qC_witnesses(setup, M, bound_of_k(k), q, k))
    return out


# -- baric structure -------------------------------------------------------


def baric_leq_certificate(setup, F, w, q) -> Certificate:
    q = _as_perversity(q)
    F = as_complex(F)
    ws = _cohomology_witnesses(setup, F, lambda k: w, q)
    return Certificate("baric_leq", {"w": w, "q": q}, tuple(ws))


def baric_geq_certificate(setup, F, w, q) -> Certificate:
    q = _as_perversity(q)
    inner = baric_leq_certificate(setup, dualize(setup, as_complex(F)), -w, baric_dual(setup, q))
    return Certificate("baric_geq", {"w": w, "q": q}, _flip(inner.witnesses))


def member_baric_leq(setup, F, w, q) -> bool:
    return baric_leq_certificate(setup, F, w, q).verdict


def member_baric_geq(setup, F, w, q) -> bool:
    return baric_geq_certificate(setup, F, w, q).verdict


def _middle_baric(setup) -> Perversity:
    return Perversity.from_function(setup.strata, lambda s: altitude(setup, s))


def is_pure(setup: TorusSetup, F, w: int, q: Mapping[Stratum, int] | None = None) -> Certificate:
    """Pure of baric degree ``w`` (for the self-dual baric perversity by default)."""
    q = _middle_baric(setup) if q is None else _as_perversity(q)
    a = baric_leq_certificate(setup, F, w, q)
    b = baric_geq_certificate(setup, F, w, q)
    return Certificate("baric_pure", {"w": w, "q": q}, a.witnesses + b.witnesses)


# -- staggered t-structure -------------------------------------------------


def staggered_leq_certificate(setup, F, n, r) -> Certificate:
    r = _as_perversity(r)
    ws = _cohomology_witnesses(setup, as_complex(F), lambda k: n - 2 * k, r * 2)
    return Certificate("staggered_leq", {"n": n, "r": r}, tuple(ws))


def staggered_geq_certificate(setup, F, n, r) -> Certificate:
    r = _as_perversity(r)
    inner = staggered_leq_certificate(setup, dualize(setup, as_complex(F)), -n, staggered_dual(setup, r))
    return Certificate("staggered_geq", {"n": n, "r": r}, _flip(inner.witnesses))


def member_staggered_leq(setup, F, n, r) -> bool:
    return staggered_leq_certificate(setup, F, n, r).verdict


def member_staggered_geq(setup, F, n, r) -> bool:
    return staggered_geq_certificate(setup, F, n, r).verdict


def heart_certificate(setup, F, r) -> Certificate:
    a = staggered_leq_certificate(setup, F, 0, r)
    b = staggered_geq_certificate(setup, F, 0, r)
    return Certificate("staggered_heart", {"r": _as_perversity(r)}, a.witnesses + b.witnesses)


def in_staggered_heart(setup, F, r) -> bool:
    return heart_certificate(setup, F, r).verdict


# -- skew co-t-structure ---------------------------------------------------


def skew_leq_certificate(setup, F, w, r) -> Certificate:
    r = _as_perversity(r)
    q2 = skew_of(setup, r) * 2
    ws = _cohomology_witnesses(setup, as_complex(F), lambda k: 2 * w + 2 * k, q2)
    return Certificate("skew_leq", {"w": w, "r": r}, tuple(ws))


def skew_geq_certificate(setup, F, w, r) -> Certificate:
    # the skew perversity of the staggered dual is the skew dual
    r = _as_perversity(r)
    inner = skew_leq_certificate(setup, dualize(setup, as_complex(F)), -w, staggered_dual(setup, r))
    return Certificate("skew_geq", {"w": w, "r": r}, _flip(inner.witnesses))


def member_skew_leq(setup, F, w, r) -> bool:
    return skew_leq_certificate(setup, F, w, r).verdict


def member_skew_geq(setup, F, w, r) -> bool:
    return skew_geq_certificate(setup, F, w, r).verdict


def is_skew_pure(setup, F, w, r) -> Certificate:
    a = skew_leq_certificate(setup, F, w, r)
    b = skew_geq_certificate(setup, F, w, r)
    return Certificate("skew_pure", {"w": w, "r": _as_perversity(r)}, a.witnesses + b.witnesses)


# -- purified standard structure ------------------------------------------


def purified_leq_certificate(setup, F, n, w, q) -> Certificate:
    """Baric ``<= w`` and, above cohomological degree ``n``, strictly baric ``<= w - 1``."""
    q = _as_perversity(q)
    F = as_complex(F)
    table = cohomology(F)
    ws = _cohomology_witnesses(setup, F, lambda k: w, q, table)
    strict = {k: M for k, M in table.items() if k > n}
    ws += _cohomology_witnesses(setup, F, lambda k: w - 1, q, strict)
    return Certificate("purified_leq", {"n": n, "w": w, "q": q}, tuple(ws))


def purified_geq_certificate(setup, F, n, w, q) -> Certificate:
    q = _as_perversity(q)
    inner = purified_leq_certificate(setup, dualize(setup, as_complex(F)), -n, -w, baric_dual(setup, q))
    return Certificate("purified_geq", {"n": n, "w": w, "q": q}, _flip(inner.witnesses))


def member_purified_leq(setup, F, n, w, q) -> bool:
    return purified_leq_certificate(setup, F, n, w, q).verdict


def member_purified_geq(setup, F, n, w, q) -> bool:
    return purified_geq_certificate(setup, F, n, w, q).verdict


# -- pure-perverse sheaves -------------------------------------------------


def _check_pp_perversity(setup, p: Perversity) -> None:
    for small, big in closure_pairs(p):
        dp = p[small] - p[big]
        if not (0 <= dp <= codim(setup, small) - codim(setup, big)):
            raise PerversityConditionError(
                "perversity must be monotone and comonotone",
                smaller=list(small.indices),
                larger=list(big.indices),
                difference=dp,
            )


def pureperverse_leq_certificate(setup, F, n, w, p, q) -> Certificate:
    """``Li_C^* F|_C`` passes the single-orbit purified test at ``n + p(C)`` for every C.

    ``p`` and ``q`` may be defined on a closed union of strata only; the
    object must then have no fiber elsewhere.
    """
    p, q = _as_perversity(p), _as_perversity(q)
    _check_pp_perversity(setup, p)
    F = as_complex(F)
    ws = []
    for s in _strata_for(setup, F.killed):
        fib = fiber_cohomology(F, s)
        if not fib:
            continue
        if s not in p or s not in q:
            raise PerversityConditionError("perversity undefined on a stratum where the object lives",
                                           stratum=list(s.indices))
        for k, rep in fib.items():
            b = _bound(w, q[s]) if k <= n + p[s] else _bound(w - 1, q[s])
            ws.append(Witness(s, k, b, rep.max_step(setup)))
    return Certificate("pureperverse_leq", {"n": n, "w": w, "p": p, "q": q}, tuple(ws))


def pureperverse_geq_certificate(setup, F, n, w, p, q) -> Certificate:
    p, q = _as_perversity(p), _as_perversity(q)
    _check_pp_perversity(setup, p)
    inner = pureperverse_leq_certificate(
        setup, dualize(setup, as_complex(F)), -n, -w, db_dual(setup, p), baric_dual(setup, q)
    )
    return Certificate("pureperverse_geq", {"n": n, "w": w, "p": p, "q": q}, _flip(inner.witnesses))


def member_pureperverse_leq(setup, F, n, w, p, q) -> bool:
    return pureperverse_leq_certificate(setup, F, n, w, p, q).verdict


def member_pureperverse_geq(setup, F, n, w, p, q) -> bool:
    return pureperverse_geq_certificate(setup, F, n, w, p, q).verdict


def in_pureperverse_heart(setup, F, w, p, q) -> bool:
    return member_pureperverse_leq(setup, F, 0, w, p, q) and member_pureperverse_geq(setup, F, 0, w, p, q)


# -- dispatcher ------------------------------------------------------------


def membership(setup: TorusSetup, F, family: str, **params) -> Certificate:
    """Run one membership family; ``params`` are the family's named arguments."""
    table = {
        "baric_leq": (baric_leq_certificate, ("w", "q")),
        "baric_geq": (baric_geq_certificate, ("w", "q")),
        "staggered_leq": (staggered_leq_certificate, ("n", "r")),
        "staggered_geq": (staggered_geq_certificate, ("n", "r")),
        "staggered_heart": (heart_certificate, ("r",)),
        "skew_leq": (skew_leq_certificate, ("w", "r")),
        "skew_geq": (skew_geq_certificate, ("w", "r")),
        "purified_leq": (purified_leq_certificate, ("n", "w", "q")),
        "purified_geq": (purified_geq_certificate, ("n", "w", "q")),
        "pureperverse_leq": (pureperverse_leq_certificate, ("n", "w", "p", "q")),
        "pureperverse_geq": (pureperverse_geq_certificate, ("n", "w", "p", "q")),
    }
    if family not in table:
        raise StaggerError(f"unknown membership family {family!r}", families=list(FAMILIES))
    fn, names = table[family]
    missing = [x for x in names if x not in params]
    if missing:
        raise StaggerError(f"family {family} needs parameters {missing}", family=family, missing=missing)
    return fn(setup, F, *(params[x] for x in names))


# -- degrees ---------------------------------------------------------------


def degree_formulas(setup: TorusSetup, C: Stratum, v: int, r: Mapping[Stratum, int]) -> tuple[int, int]:
    """(skew degree, baric degree) of the simple object on ``C`` with step ``v``."""
    skew = 2 * v - 2 * r[C] + codim(setup, C)
    baric = 2 * v - altitude(setup, C)
    rbar = staggered_dual(setup, {C: r[C]})[C]
    assert baric == skew + r[C] - rbar, "baric/skew degree relation broken"
    return skew, baric


# -- IC objects ------------------------------------------------------------


def ic_closed(setup: TorusSetup, lam: Sequence[int], r: Mapping[Stratum, int], C: Stratum | None = None) -> FreeComplex:
    """Simple staggered object on the closed stratum: ``C(lam)[step(lam) - r(origin)]``."""
    origin = setup.closed_stratum
    if C is not None and C != origin:
        raise StaggerError("only the closed stratum has an IC constructor", stratum=list(C.indices))
    lam = character(lam)
    v = step(setup, origin, lam)
    return shift(free_resolution(skyscraper(lam)), v - r[origin])


def h_lambda(setup: TorusSetup, lam: Sequence[int]) -> FreeComplex:
    """The middle-perversity simple object at the origin."""
    from .perversity import middle

    return ic_closed(setup, lam, middle(setup, "staggered"))


def ic_verify(setup: TorusSetup, F, C0: Stratum, lam: Sequence[int], r: Mapping[Stratum, int]) -> Certificate:
    """Check the characterizing properties of the IC object attached to (C0, lam).

    Notes record which condition fails.  ``lam`` may be a full character or
    one already restricted to the stabilizer of ``C0``.
    """
    r = _as_perversity(r)
    F = as_complex(F)
    lam = tuple(lam)
    rlam = C0.restrict(lam) if len(lam) == setup.n else lam
    v = restricted_step(setup, C0, rlam)
    notes = []
    ok = True
    table = cohomology(F)
    # support inside the closure of C0
    for s in setup.strata:
        if closure_leq(s, C0):
            continue
        for k, M in table.items():
            if M.killed <= s.vanishing and restrict_to_stratum(M, s):
                ok = False
                notes.append(f"support: degree {k} meets stratum {s.label()}")
    # (i) restriction to C0
    target_deg = r[C0] - v
    slices = localize_cohomology(F, C0)
    for k, M in slices.items():
        fl = finite_length(M)
        want = {rlam: 1} if k == target_deg else {}
        if fl != want:
            ok = False
            notes.append(f"(i): degree {k} restricts to {fl} on {C0.label()}, expected {want}")
    if target_deg not in slices:
        ok = False
        notes.append(f"(i): nothing in degree {target_deg} on {C0.label()}")
    witnesses: list[Witness] = []
    # (ii) strict bounds on smaller strata
    for s in setup.closure(C0):
        if s == C0:
            continue
        a = staggered_leq_certificate(setup, pullback_L(setup, F, s), -1, r)
        b = staggered_geq_certificate(setup, shriek_R(setup, F, s), 1, r)
        witnesses.extend(a.witnesses)
        witnesses.extend(b.witnesses)
        if not a.verdict:
            notes.append(f"(ii): pullback to {s.label()} fails")
        if not b.verdict:
            notes.append(f"(ii): shriek to {s.label()} fails")
    verdict = ok and all(w.ok for w in witnesses)
    return Certificate(
        "ic_verify",
        {"stratum": C0, "lam": list(rlam), "r": r},
        tuple(witnesses),
        tuple(notes),
        forced=verdict,
    )


# -- finite-length cohomology: filtrations and decomposition ---------------


def _finite_table(F: FreeComplex) -> dict[int, dict[Character, int]]:
    out = {}
    for k, M in cohomology(F).items():
        fl = finite_length(M)
        if fl is None:
            raise NotFiniteLength("cohomology is not of finite length", degree=k)
        out[k] = fl
    return out


def _summand_degrees(setup, r, lam, k) -> tuple[int, int, int]:
    """Shift s with ``C(lam)[-k] = IC(lam)[s]``, and its skew and baric degrees."""
    origin = setup.closed_stratum
    v = step(setup, origin, lam)
    s = r[origin] - v - k
    skew, baric = degree_formulas(setup, origin, v, r)
    return s, skew + s, baric


def purity_filtration(setup: TorusSetup, F, notion: str, r: Mapping[Stratum, int] | None = None) -> list[dict]:
    """Layers of the baric or skew filtration of an object with finite-length cohomology.

    Each layer lists its composition factors as (character, cohomological
    degree, multiplicity); layers are in increasing degree.
    """
    from .perversity import middle

    if notion not in ("baric", "skew"):
        raise StaggerError(f"unknown purity notion {notion!r}", notions=["baric", "skew"])
    r = middle(setup, "staggered") if r is None else _as_perversity(r)
    table = _finite_table(as_complex(F))
    layers: dict[int, list] = {}
    for k, chars in sorted(table.items()):
        for lam, mult in chars.items():
            s, skew, baric = _summand_degrees(setup, r, lam, k)
            w = baric if notion == "baric" else skew
            layers.setdefault(w, []).append({"character": list(lam), "degree": k, "multiplicity": mult, "shift": s})
    return [{"degree": w, "factors": layers[w]} for w in sorted(layers)]


def _is_semisimple(M: PresentedModule) -> bool:
    fl = finite_length(M)
    m = minimize_presentation(M)
    return fl is not None and sum(fl.values()) == m.gens.rank


def decompose_pure(setup: TorusSetup, F, notion: str, w: int, r: Mapping[Stratum, int]) -> list[tuple[Stratum, Character, int]]:
    """Write a pure object with finite-length cohomology as a sum of shifted IC objects.

    Returns (stratum, character, shift) triples, one per summand, sorted.
    """
    r = _as_perversity(r)
    F = as_complex(F)
    if notion == "baric":
        cert = is_pure(setup, F, w)
    elif notion == "skew":
        cert = is_skew_pure(setup, F, w, r)
    else:
        raise StaggerError(f"unknown purity notion {notion!r}", notions=["baric", "skew"])
    if not cert.verdict:
        raise NotPure(f"object is not {notion}-pure of degree {w}", failures=[x.to_json() for x in cert.failures])
    table = cohomology(F)
    for k, M in table.items():
        if finite_length(M) is None:
            raise NotFiniteLength("not finite length: general decomposition unsupported", degree=k)
    if not iso_as_sum_of_cohomology(F):
        raise NotPure("object does not split as a sum of its cohomology", notion=notion, w=w)
    origin = setup.closed_stratum
    out = []
    for k, M in sorted(table.items()):
        if not _is_semisimple(M):
            raise NotPure("cohomology module is not semisimple", degree=k)
        for lam, mult in finite_length(M).items():
            s, skew, baric = _summand_degrees(setup, r, lam, k)
            got = skew if notion == "skew" else baric
            if got != w:
                raise NotPure("summand has the wrong degree", character=list(lam), degree=got, expected=w)
            if not ic_verify(setup, ic_closed(setup, lam, r), origin, lam, r).verdict:
                raise NotPure("summand fails the IC characterization", character=list(lam))
            out.extend([(origin, lam, s)] * mult)
    return sorted(out, key=lambda t: (t[0].sort_key(), t[2], t[1]))
