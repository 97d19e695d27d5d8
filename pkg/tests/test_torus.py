import pytest
from hypothesis import given, strategies as st

from stagger.errors import DimensionMismatch, StaggerError
from stagger.torus import (
    Cocharacter,
    Stratum,
    TorusSetup,
    closure_leq,
    codim,
    conormal_weights,
    enumerate_strata,
    pair,
)


def test_enumerate_counts(s12):
    strata = enumerate_strata(s12)
    assert len(strata) == 8
    assert strata[0] == Stratum() and strata[-1] == Stratum([1, 2, 3])
    assert [s.indices for s in strata if len(s) == 1] == [(1,), (2,), (3,)]


def test_point_has_one_stratum():
    assert enumerate_strata(TorusSetup.global_linear([])) == [Stratum()]


def test_codim_default_and_shifted(s12):
    assert codim(s12, Stratum([1, 2, 3])) == 3
    assert codim(s12, Stratum()) == 0
    shifted = TorusSetup.global_linear([1, 1, 1], omega_shift=2)
    assert codim(shifted, Stratum([1, 2, 3])) == 1


def test_conormal_weights():
    assert conormal_weights(Stratum([2, 3])) == [(-1, 0), (0, -1)]
    assert conormal_weights(Stratum()) == []
    assert conormal_weights(Stratum([1, 2, 3])) == [(-1, 0, 0), (0, -1, 0), (0, 0, -1)]


def test_pair_examples(s12):
    assert pair(s12.cochars[Stratum([1, 2, 3])], (0, -1, 0)) == -1
    assert pair(s12.cochars[Stratum([1, 3])], (0, 0, 0)) == 0
    phi = Cocharacter.on(Stratum([2, 3]), (1, 1))
    assert pair(phi, (5, 1, 1)) == 2


def test_pair_mismatch():
    phi = Cocharacter.on(Stratum([2, 3]), (1, 1))
    with pytest.raises(DimensionMismatch):
        pair(phi, {1: 3, 2: 1})
    with pytest.raises(DimensionMismatch):
        pair(phi, (1,))


def test_setup_validation():
    with pytest.raises(DimensionMismatch):
        TorusSetup.global_linear([1, 1], omega_twist=(0, 0, 0))
    cochars = {s: Cocharacter.on(s, [1] * len(s)) for s in enumerate_strata(TorusSetup.global_linear([1, 1]))}
    del cochars[Stratum([1])]
    with pytest.raises(StaggerError):
        TorusSetup(2, cochars, (0, 0))


def test_recessed_assertion():
    with pytest.raises(StaggerError):
        TorusSetup.global_linear([1, 0], require_recessed=True)
    TorusSetup.global_linear([1, 2], require_recessed=True)


subsets = st.frozensets(st.integers(1, 4))


@given(subsets, subsets, subsets)
def test_closure_order_is_partial_order(a, b, c):
    A, B, C = Stratum(a), Stratum(b), Stratum(c)
    assert closure_leq(A, A)
    if closure_leq(A, B) and closure_leq(B, A):
        assert A == B
    if closure_leq(A, B) and closure_leq(B, C):
        assert closure_leq(A, C)
    assert closure_leq(Stratum(range(1, 5)), A) and closure_leq(A, Stratum())


@given(subsets, subsets)
def test_codim_strictly_monotone(a, b):
    S = TorusSetup.global_linear([1, 1, 1, 1])
    A, B = Stratum(a), Stratum(b)
    if closure_leq(A, B) and A != B:
        assert codim(S, A) > codim(S, B)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-3, 3))
def test_pair_bilinear(phi, lam, mu, k):
    P = Cocharacter.on(Stratum([1, 2, 3]), phi)
    Q = Cocharacter.on(Stratum([1, 2, 3]), [k * x for x in phi])
    s = tuple(a + b for a, b in zip(lam, mu))
    assert pair(P, s) == pair(P, lam) + pair(P, mu)
    assert pair(Q, lam) == k * pair(P, lam)
