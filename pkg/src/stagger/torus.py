"""Geometry of the diagonal torus acting on affine n-space.

Conventions used across the package:

* A character is a tuple of ``n`` integers.  The coordinate function
  ``x_i`` has character ``-e_i``, so the free module ``A(lam)`` has its
  generator in character ``lam`` and is nonzero in character ``mu`` exactly
  when ``lam - mu`` has nonnegative entries.
* Coordinates are numbered ``1..n``.  A stratum (torus orbit) is named by
  the set of coordinates that vanish on it; its stabilizer is the subtorus
  on those coordinates, so restricted characters are indexed by that set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, StaggerError

Character = tuple[int, ...]


def character(values: Iterable[int]) -> Character:
    return tuple(int(v) for v in values)


def zero_character(n: int) -> Character:
    return (0,) * n


def unit(n: int, i: int) -> Character:
    """``e_i`` for a 1-based coordinate ``i``."""
    return tuple(int(j == i - 1) for j in range(n))


def add(a: Sequence[int], b: Sequence[int]) -> Character:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Character:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence[int]) -> Character:
    return tuple(-x for x in a)


def is_nonneg(a: Sequence[int]) -> bool:
    return all(x >= 0 for x in a)


@dataclass(frozen=True)
class Stratum:
    """Torus orbit ``{x : x_i = 0 exactly for i in vanishing}``."""

    vanishing: frozenset[int] = field(default_factory=frozenset)

    def __init__(self, vanishing: Iterable[int] = ()):
        object.__setattr__(self, "vanishing", frozenset(int(i) for i in vanishing))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vanishing))

    def restrict(self, lam: Sequence[int]) -> tuple[int, ...]:
        """Restriction of a full character to the stabilizer lattice."""
        return tuple(lam[i - 1] for i in self.indices)

    def __len__(self) -> int:
        return len(self.vanishing)

    def label(self) -> str:
        return "{" + ",".join(str(i) for i in self.indices) + "}"

    def __repr__(self) -> str:
        return f"Stratum({self.label()})"

    def sort_key(self):
        return (len(self.vanishing), self.indices)

    def __lt__(self, other: "Stratum") -> bool:
        return self.sort_key() < other.sort_key()


def closure_leq(lower: Stratum, upper: Stratum) -> bool:
    """True when ``lower`` lies in the closure of ``upper``."""
    return upper.vanishing <= lower.vanishing


@dataclass(frozen=True)
class Cocharacter:
    """Integer vector indexed by a set of coordinates (a stratum's stabilizer)."""

    indices: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise DimensionMismatch(
                "cocharacter indices and values differ in length",
                indices=list(self.indices),
                values=list(self.values),
            )

    @classmethod
    def on(cls, stratum: Stratum, values: Sequence[int]) -> "Cocharacter":
        return cls(stratum.indices, tuple(int(v) for v in values))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.indices, self.values))


def pair(phi: Cocharacter, lam) -> int:
    """Pairing of a cocharacter with a character.

    ``lam`` is either a full character (sequence covering every index of
    ``phi``) or a restricted character given as a mapping index -> value,
    whose key set must equal the index set of ``phi``.
    """
    if isinstance(lam, Mapping):
        if set(lam) != set(phi.indices):
            raise DimensionMismatch(
                "restricted character and cocharacter live on different index sets",
                cocharacter=list(phi.indices),
                character=sorted(lam),
            )
        return sum(v * lam[i] for i, v in zip(phi.indices, phi.values))
    if phi.indices and max(phi.indices) > len(lam):
        raise DimensionMismatch(
            "character too short for cocharacter index set",
            cocharacter=list(phi.indices),
            length=len(lam),
        )
    return sum(v * lam[i - 1] for i, v in zip(phi.indices, phi.values))


def enumerate_strata_n(n: int) -> list[Stratum]:
    return [Stratum(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


@dataclass(frozen=True)
class TorusSetup:
    """Fixed geometric context: dimension, s-structure data and dualizing complex.

    The dualizing complex is ``A(omega_twist)[omega_shift]``.
    """

    n: int
    cochars: Mapping[Stratum, Cocharacter]
    omega_twist: Character
    omega_shift: int = 0

    def __post_init__(self):
        if len(self.omega_twist) != self.n:
            raise DimensionMismatch("dualizing twist has wrong length", n=self.n, twist=list(self.omega_twist))
        for s in enumerate_strata_n(self.n):
            phi = self.cochars.get(s)
            if phi is None:
                raise StaggerError("stratum without cocharacter", stratum=s.indices)
            if phi.indices != s.indices:
                raise DimensionMismatch(
                    "cocharacter index set differs from stratum vanishing set",
                    stratum=list(s.indices),
                    cocharacter=list(phi.indices),
                )

    @classmethod
    def global_linear(
        cls,
        coefficients: Sequence[int],
        omega_twist: Sequence[int] | None = None,
        omega_shift: int = 0,
        require_recessed: bool = False,
    ) -> "TorusSetup":
        """Every stratum gets the restriction of one linear form."""
        n = len(coefficients)
        cochars = {s: Cocharacter.on(s, [coefficients[i - 1] for i in s.indices]) for s in enumerate_strata_n(n)}
        setup = cls(n, cochars, character(omega_twist or zero_character(n)), int(omega_shift))
        if require_recessed:
            setup.assert_recessed()
        return setup

    @classmethod
    def per_stratum(
        cls,
        n: int,
        table: Mapping[Stratum, Sequence[int]],
        omega_twist: Sequence[int] | None = None,
        omega_shift: int = 0,
        require_recessed: bool = False,
    ) -> "TorusSetup":
        cochars = {s: Cocharacter.on(s, v) for s, v in table.items()}
        setup = cls(n, cochars, character(omega_twist or zero_character(n)), int(omega_shift))
        if require_recessed:
            setup.assert_recessed()
        return setup

    def assert_recessed(self) -> None:
        from .sstructure import is_recessed

        if not is_recessed(self):
            raise StaggerError("s-structure is not recessed")

    @property
    def strata(self) -> list[Stratum]:
        return enumerate_strata_n(self.n)

    @property
    def open_stratum(self) -> Stratum:
        return Stratum()

    @property
    def closed_stratum(self) -> Stratum:
        return Stratum(range(1, self.n + 1))

    def closure(self, stratum: Stratum) -> list[Stratum]:
        """Strata contained in the closure of ``stratum``."""
        return [s for s in self.strata if closure_leq(s, stratum)]


def enumerate_strata(setup: TorusSetup) -> list[Stratum]:
    """All ``2**n`` strata ordered by (codimension, lexicographic)."""
    return setup.strata


def codim(setup: TorusSetup, stratum: Stratum) -> int:
    return len(stratum.vanishing) - setup.omega_shift


def conormal_weights(stratum: Stratum) -> list[tuple[int, ...]]:
    """Weights of the conormal bundle, restricted to the stabilizer lattice."""
    idx = stratum.indices
    return [tuple(-int(j == i) for j in idx) for i in idx]
