"""s-structures: steps, altitude, recessed checks and orbit-level classification.

On a torus orbit an s-structure is the same thing as a cocharacter of the
stabilizer torus: a character ``lam`` of the stabilizer has step
``<phi, lam>``.  For orbits of more general groups the stabilizer has a
unipotent part whose torus weights ``upsilon`` constrain the admissible
cocharacters; that data is supplied by hand through ``AbstractOrbitClass``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch
from .torus import Stratum, TorusSetup, add, codim, conormal_weights, pair, unit


@dataclass(frozen=True)
class AbstractOrbitClass:
    """Stabilizer torus of rank ``rank`` and its weights on the unipotent Lie algebra."""

    rank: int
    upsilon: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "upsilon", tuple(tuple(int(x) for x in u) for u in self.upsilon))
        for u in self.upsilon:
            if len(u) != self.rank:
                raise DimensionMismatch("weight has wrong rank", rank=self.rank, weight=list(u))


def _pairings(cls: AbstractOrbitClass, phi: Sequence[int]) -> list[int]:
    if len(phi) != cls.rank:
        raise DimensionMismatch("cocharacter has wrong rank", rank=cls.rank, cocharacter=list(phi))
    return [sum(a * b for a, b in zip(phi, u)) for u in cls.upsilon]


def is_semifocused(cls: AbstractOrbitClass, phi: Sequence[int]) -> bool:
    return all(v <= 0 for v in _pairings(cls, phi))


def is_focused(cls: AbstractOrbitClass, phi: Sequence[int]) -> bool:
    return all(v < 0 for v in _pairings(cls, phi))


def step(setup: TorusSetup, stratum: Stratum, lam) -> int:
    """Step of the character ``lam`` (full, or restricted to the stratum)."""
    phi = setup.cochars[stratum]
    if isinstance(lam, Mapping):
        return pair(phi, lam)
    if len(lam) == setup.n:
        return pair(phi, lam)
    # restricted tuple aligned with stratum.indices
    if len(lam) != len(phi.values):
        raise DimensionMismatch("restricted character has wrong length", stratum=list(stratum.indices), character=list(lam))
    return sum(a * b for a, b in zip(phi.values, lam))


def restricted_step(setup: TorusSetup, stratum: Stratum, rlam: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(setup.cochars[stratum].values, rlam))


def is_recessed(setup: TorusSetup) -> bool:
    """Conormal bundle of every stratum sits in step <= -1."""
    for s in setup.strata:
        for w in conormal_weights(s):
            if restricted_step(setup, s, w) > -1:
                return False
    return True


def altitude(setup: TorusSetup, stratum: Stratum) -> int:
    lam = setup.omega_twist
    for i in stratum.indices:
        lam = add(lam, unit(setup.n, i))
    return step(setup, stratum, lam)


def scod(setup: TorusSetup, stratum: Stratum) -> int:
    return altitude(setup, stratum) + codim(setup, stratum)


@dataclass(frozen=True)
class OrbitRep:
    """Finite multiset of stabilizer characters over one stratum.

    ``chars`` maps a restricted character (aligned with
    ``stratum.indices``) to its positive multiplicity.
    """

    stratum: Stratum
    chars: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): int(v) for k, v in self.chars.items() if v}
        for k, v in clean.items():
            if v < 0:
                raise ValueError(f"negative multiplicity {v} for {k}")
            if len(k) != len(self.stratum):
                raise DimensionMismatch("character not in stabilizer lattice", stratum=list(self.stratum.indices), character=list(k))
        object.__setattr__(self, "chars", dict(sorted(clean.items())))

    def __bool__(self) -> bool:
        return bool(self.chars)

    def __add__(self, other: "OrbitRep") -> "OrbitRep":
        if other.stratum != self.stratum:
            raise DimensionMismatch("orbit representations over different strata")
        out = dict(self.chars)
        for k, v in other.chars.items():
            out[k] = out.get(k, 0) + v
        return OrbitRep(self.stratum, out)

    def steps(self, setup: TorusSetup) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, v in self.chars.items():
            s = restricted_step(setup, self.stratum, k)
            out[s] = out.get(s, 0) + v
        return out

    def max_step(self, setup: TorusSetup) -> int | None:
        st = self.steps(setup)
        return max(st) if st else None

    def min_step(self, setup: TorusSetup) -> int | None:
        st = self.steps(setup)
        return min(st) if st else None

    def to_json(self) -> dict:
        return {
            "stratum": list(self.stratum.indices),
            "chars": [{"char": list(k), "mult": v} for k, v in self.chars.items()],
        }


def sigma_leq(setup: TorusSetup, rep: OrbitRep, w: int) -> OrbitRep:
    """Largest subobject in steps <= w."""
    return OrbitRep(rep.stratum, {k: v for k, v in rep.chars.items() if restricted_step(setup, rep.stratum, k) <= w})


def sigma_geq(setup: TorusSetup, rep: OrbitRep, w: int) -> OrbitRep:
    """Largest quotient in steps >= w."""
    return OrbitRep(rep.stratum, {k: v for k, v in rep.chars.items() if restricted_step(setup, rep.stratum, k) >= w})


def cocharacters_distinguishable(phi: Sequence[int], psi: Sequence[int]) -> bool:
    """Distinct cocharacters give different steps on some basis character."""
    if len(phi) != len(psi):
        raise DimensionMismatch("cocharacters of different rank")
    rank = len(phi)
    basis = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    return any(
        sum(a * b for a, b in zip(phi, e)) != sum(a * b for a, b in zip(psi, e)) for e in basis
    )


def classify(upsilon: Iterable[Sequence[int]], phi: Sequence[int], rank: int | None = None) -> dict:
    ups = [tuple(u) for u in upsilon]
    cls = AbstractOrbitClass(rank if rank is not None else len(phi), tuple(ups))
    return {"semifocused": is_semifocused(cls, phi), "focused": is_focused(cls, phi)}
