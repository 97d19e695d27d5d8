"""Perversity bookkeeping: duals, monotonicity, middle and moderate perversities.

A perversity is an integer function on strata.  All half-integer
comparisons are done on doubled integers.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .errors import ParityError, PerversityConditionError, StaggerError
from .sstructure import altitude, scod
from .torus import Stratum, TorusSetup, closure_leq, codim

DUAL_KINDS = ("baric", "db", "staggered")


class Perversity(Mapping[Stratum, int]):
    """Immutable map stratum -> integer with pointwise arithmetic."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[Stratum, int] | Iterable[tuple[Stratum, int]]):
        items = values.items() if isinstance(values, Mapping) else values
        self._values = {s: int(v) for s, v in items}

    @classmethod
    def from_function(cls, strata: Iterable[Stratum], f: Callable[[Stratum], int]) -> "Perversity":
        return cls((s, f(s)) for s in strata)

    @classmethod
    def constant(cls, setup: TorusSetup, value: int) -> "Perversity":
        return cls.from_function(setup.strata, lambda s: value)

    def __getitem__(self, s: Stratum) -> int:
        return self._values[s]

    def __iter__(self) -> Iterator[Stratum]:
        return iter(sorted(self._values))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Perversity):
            return self._values == other._values
        if isinstance(other, Mapping):
            return self._values == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._values.items()))

    def _zip(self, other, op) -> "Perversity":
        if isinstance(other, Mapping):
            return Perversity((s, op(v, other[s])) for s, v in self._values.items())
        return Perversity((s, op(v, other)) for s, v in self._values.items())

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._zip(other, lambda a, b: b - a)

    def __mul__(self, k: int):
        return Perversity((s, k * v) for s, v in self._values.items())

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def restrict(self, strata: Iterable[Stratum]) -> "Perversity":
        return Perversity((s, self._values[s]) for s in strata)

    def __repr__(self) -> str:
        body = ", ".join(f"{s.label()}: {self._values[s]}" for s in self)
        return f"Perversity({body})"

    def to_json(self) -> list:
        return [{"stratum": list(s.indices), "value": self._values[s]} for s in self]


def codim_function(setup: TorusSetup) -> Perversity:
    return Perversity.from_function(setup.strata, lambda s: codim(setup, s))


def altitude_function(setup: TorusSetup) -> Perversity:
    return Perversity.from_function(setup.strata, lambda s: altitude(setup, s))


def scod_function(setup: TorusSetup) -> Perversity:
    return Perversity.from_function(setup.strata, lambda s: scod(setup, s))


def baric_dual(setup: TorusSetup, q: Mapping[Stratum, int]) -> Perversity:
    return Perversity((s, 2 * altitude(setup, s) - q[s]) for s in q)


def db_dual(setup: TorusSetup, q: Mapping[Stratum, int]) -> Perversity:
    return Perversity((s, codim(setup, s) - q[s]) for s in q)


def staggered_dual(setup: TorusSetup, q: Mapping[Stratum, int]) -> Perversity:
    return Perversity((s, scod(setup, s) - q[s]) for s in q)


def skew_dual(setup: TorusSetup, q: Mapping[Stratum, int]) -> Perversity:
    return Perversity((s, altitude(setup, s) - codim(setup, s) - q[s]) for s in q)


def dual(setup: TorusSetup, q: Mapping[Stratum, int], kind: str) -> Perversity:
    if kind == "baric":
        return baric_dual(setup, q)
    if kind == "db":
        return db_dual(setup, q)
    if kind == "staggered":
        return staggered_dual(setup, q)
    raise StaggerError(f"unknown dual kind {kind!r}", kinds=list(DUAL_KINDS))


def closure_pairs(strata: Iterable[Stratum]) -> list[tuple[Stratum, Stratum]]:
    """Pairs (smaller, larger) with smaller in the closure of larger, smaller != larger."""
    ss = sorted(strata)
    return [(a, b) for a in ss for b in ss if a != b and closure_leq(a, b)]


def is_monotone(q: Mapping[Stratum, int]) -> bool:
    return all(q[small] >= q[big] for small, big in closure_pairs(q))


def is_comonotone(setup: TorusSetup, q: Mapping[Stratum, int], dual_kind: str) -> bool:
    return is_monotone(dual(setup, q, dual_kind))


def middle(setup: TorusSetup, kind: str) -> Perversity:
    """Self-dual perversity of the given kind."""
    if kind == "baric":
        return altitude_function(setup)
    if kind == "db":
        source = codim_function(setup)
    elif kind == "staggered":
        source = scod_function(setup)
    else:
        raise StaggerError(f"unknown perversity kind {kind!r}", kinds=list(DUAL_KINDS))
    for s in source:
        if source[s] % 2:
            raise ParityError(
                f"middle {kind} perversity undefined: odd value at stratum {s.label()}",
                stratum=list(s.indices),
                value=source[s],
            )
    return Perversity((s, v // 2) for s, v in source.items())


def moderate_violations(setup: TorusSetup, r: Mapping[Stratum, int]) -> list[dict]:
    out = []
    for small, big in closure_pairs(r):
        dcod = codim(setup, small) - codim(setup, big)
        dalt = altitude(setup, small) - altitude(setup, big)
        dr = r[small] - r[big]
        if not (dcod <= dr <= dalt):
            out.append({"chain": "f1", "smaller": list(small.indices), "larger": list(big.indices)})
        # doubled: alt'/2 - alt/2 <= dr <= alt'/2 + cod' - alt/2 - cod
        if not (dalt <= 2 * dr <= dalt + 2 * dcod):
            out.append({"chain": "f2", "smaller": list(small.indices), "larger": list(big.indices)})
    return out


def is_moderate(setup: TorusSetup, r: Mapping[Stratum, int]) -> bool:
    return not moderate_violations(setup, r)


def skew_of(setup: TorusSetup, r: Mapping[Stratum, int]) -> Perversity:
    return Perversity((s, r[s] - codim(setup, s)) for s in r)


# -- constructions attached to a stratum C0 ---------------------------------


def flat_r(setup: TorusSetup, r: Mapping[Stratum, int], c0: Stratum) -> Perversity:
    """``r - 1`` on strata whose closure is strictly inside the closure of c0."""
    return Perversity(
        (s, r[s] - 1 if (closure_leq(s, c0) and s != c0) else r[s]) for s in r
    )


def tilde_stratum_set(setup: TorusSetup, c0: Stratum) -> list[Stratum]:
    """Strata of the closure of c0 not under any stratum of codimension >= 2 relative to c0."""
    closure = setup.closure(c0)
    deep = [c for c in closure if codim(setup, c) - codim(setup, c0) >= 2]
    return [s for s in closure if not any(closure_leq(s, c) for c in deep)]


def flat_sharp_p(
    setup: TorusSetup, p: Mapping[Stratum, int], c0: Stratum
) -> tuple[Perversity, Perversity]:
    """The pair of auxiliary DB perversities on the closure of c0.

    Requires ``0 < p(C) - p(C0) < cod C - cod C0`` on the complement of the
    tilde set.
    """
    closure = setup.closure(c0)
    tilde = set(tilde_stratum_set(setup, c0))
    for s in closure:
        if s in tilde:
            continue
        dp = p[s] - p[c0]
        dc = codim(setup, s) - codim(setup, c0)
        if not (0 < dp < dc):
            raise PerversityConditionError(
                f"strictness condition fails at stratum {s.label()}",
                stratum=list(s.indices),
                difference=dp,
                codim_difference=dc,
            )
    flat = {}
    sharp = {}
    for s in closure:
        if s in tilde:
            flat[s] = p[c0]
            sharp[s] = p[c0] if s == c0 else p[c0] + 1
        else:
            flat[s] = p[s] - 1
            sharp[s] = p[s] + 1
    return Perversity(flat), Perversity(sharp)


def ic_pp_perversities(
    setup: TorusSetup, c0: Stratum, v: int, r: Mapping[Stratum, int]
) -> tuple[Perversity, Perversity, int]:
    """DB perversity p, baric perversity q and degree w making an IC object pure-perverse."""
    closure = setup.closure(c0)
    tilde = set(tilde_stratum_set(setup, c0))
    alt0 = altitude(setup, c0)
    cod0 = codim(setup, c0)
    p = {}
    q = {}
    for s in closure:
        dc = codim(setup, s) - cod0
        base_q = alt0 + 2 * r[s] - 2 * r[c0] - 2 * dc
        if s in tilde:
            p[s] = r[c0] - v
            q[s] = base_q
        else:
            p[s] = r[c0] - v + dc - 1
            q[s] = base_q + 1
    return Perversity(p), Perversity(q), 2 * v - alt0


def is_db_monotone_comonotone(setup: TorusSetup, p: Mapping[Stratum, int]) -> bool:
    """``0 <= p(C') - p(C) <= cod C' - cod C`` on every closure pair."""
    for small, big in closure_pairs(p):
        dp = p[small] - p[big]
        if not (0 <= dp <= codim(setup, small) - codim(setup, big)):
            return False
    return True
