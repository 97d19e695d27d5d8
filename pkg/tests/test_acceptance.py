"""Acceptance criteria 1-9.

Each criterion prints one ``PASS``/``FAIL`` line; the lines are repeated in
the terminal summary.  Run standalone with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
import properties  # noqa: E402
from oracles import quotient_piece_dim, taylor_tor_dims  # noqa: E402
from stagger import derived, graded, perversity as pv, purity  # noqa: E402
from stagger.graded import finite_length, stratum_sheaf  # noqa: E402
from stagger.sstructure import altitude, classify, cocharacters_distinguishable, is_recessed, scod  # noqa: E402
from stagger.torus import Stratum, TorusSetup, codim  # noqa: E402

S = TorusSetup.global_linear([1, 1, 1])
ORIGIN = Stratum([1, 2, 3])
OX = stratum_sheaf(3, [2, 3])
OZ = stratum_sheaf(3, [1, 2])


def report(n: int, ok: bool, what: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)


def run_criterion(n: int, what: str, body) -> None:
    start = time.perf_counter()
    try:
        body()
    except BaseException:
        report(n, False, what)
        raise
    report(n, True, f"{what} ({time.perf_counter() - start:.1f}s)")


# -- 1 ------------------------------------------------------------------------


def _criterion_1():
    R = derived.free_resolution(OX)
    assert R.degrees == [-2, -1, 0]
    assert R.term(0).gens == ((0, 0, 0),)
    assert R.term(-1).gens == ((0, -1, 0), (0, 0, -1))
    assert R.term(-2).gens == ((0, -1, -1),)
    assert R.diff(-1).coeffs == {(0, 0): 1, (0, 1): 1}
    assert R.diff(-2).coeffs == {(0, 0): -1, (1, 0): 1}
    assert R.to_json()["differentials"] == {"-2": [[0, 0, "-1"], [1, 0, "1"]], "-1": [[0, 0, "1"], [0, 1, "1"]]}
    # exact, with O_x in degree 0 (checked against the monomial count)
    for mu in properties._span([-3, -3, -3], [0, 0, 0]):
        assert derived.piece_cohomology_dim(R, 0, mu) == quotient_piece_dim((0, 0, 0), [(0, 1, 0), (0, 0, 1)], mu)
        assert derived.piece_cohomology_dim(R, -1, mu) == 0
        assert derived.piece_cohomology_dim(R, -2, mu) == 0


def test_criterion_1():
    run_criterion(1, "minimal free resolution of O_x", _criterion_1)


# -- 2 ------------------------------------------------------------------------


def _criterion_2():
    A = graded.free_module(3, [(0, 0, 0)])
    table = derived.cohomology(derived.rhom(OZ, A))
    assert set(table) == {2}
    H = table[2]
    expected = graded.quotient_by_variables(3, [1, 2], (1, 1, 0))
    assert H.gens.gens == expected.gens.gens
    for mu in properties._span([-3, -3, -3], [2, 2, 1]):
        assert H.piece_dim(mu) == quotient_piece_dim((1, 1, 0), [(1, 0, 0), (0, 1, 0)], mu)


def test_criterion_2():
    run_criterion(2, "RHom(O_z, A) = O_z(1,1,0) in degree 2", _criterion_2)


# -- 3 ------------------------------------------------------------------------


def _criterion_3():
    D = derived.minimize(derived.dualize(S, derived.tensorL(OX, OZ)))
    mc = derived.dual_of_tensor_as_module_complex(S, OX, OZ)
    assert mc.is_minimal()
    terms = {k: sorted(g) for k, g in mc.term_generators().items()}
    assert terms == {2: [(1, 1, 0)], 3: [(1, 1, 1), (1, 2, 0)], 4: [(1, 2, 1)]}
    # same cohomology as the free model of the dual
    mod_coh = derived.module_complex_cohomology(mc)
    free_coh = derived.cohomology(D)
    assert set(k for k, M in mod_coh.items() if not M.is_zero()) == set(free_coh)
    for k, M in free_coh.items():
        assert finite_length(M) == finite_length(mod_coh[k])


def test_criterion_3():
    run_criterion(3, "dual of O_x (x)L O_z has terms in degrees 2, 3, 4", _criterion_3)


# -- 4 ------------------------------------------------------------------------


def _criterion_4():
    r = pv.middle(S, "staggered")
    T = derived.tensorL(OX, OZ)
    assert purity.is_skew_pure(S, T, 0, r).verdict is True
    parts = purity.decompose_pure(S, T, "skew", 0, r)
    assert parts == [(ORIGIN, (0, 0, 0), 3), (ORIGIN, (0, -1, 0), 5)]
    # Tor of O_x and O_z from the Taylor complex: Tor_1 at (0,1,0), Tor_0 at 0
    for d in properties._span([0, 0, 0], [1, 2, 1]):
        tor = taylor_tor_dims([(0, 1, 0), (0, 0, 1)], [(1, 0, 0), (0, 1, 0)], 3, d)
        mu = tuple(-x for x in d)
        for k in (0, 1, 2):
            assert derived.piece_cohomology_dim(T, -k, mu) == tor.get(k, 0)


def test_criterion_4():
    run_criterion(4, "O_x (x)L O_z is skew pure of degree 0 and splits as H0[3] + H(0,-1,0)[5]", _criterion_4)


# -- 5 ------------------------------------------------------------------------


def _criterion_5():
    assert len(S.strata) == 8
    for C in S.strata:
        assert altitude(S, C) == codim(S, C) == len(C)
        assert scod(S, C) % 2 == 0
    assert is_recessed(S)
    r = pv.middle(S, "staggered")
    assert all(2 * r[C] == scod(S, C) for C in S.strata)
    assert pv.is_moderate(S, r)


def test_criterion_5():
    run_criterion(5, "alt = cod on all 8 strata, recessed, middle r moderate", _criterion_5)


# -- 6 ------------------------------------------------------------------------

SIMPLE = [(0, 0, 0), (0, -1, 0), (1, 1, 1), (-2, 0, 1)]


def _criterion_6():
    r = pv.middle(S, "staggered")
    for lam in SIMPLE:
        H = purity.h_lambda(S, lam)
        w = 2 * sum(lam) - 3
        assert purity.in_staggered_heart(S, H, r), lam
        assert purity.ic_verify(S, H, ORIGIN, lam, r).verdict, lam
        assert purity.is_pure(S, H, w).verdict, lam
        assert purity.is_skew_pure(S, H, w, r).verdict, lam
        skew, baric = purity.degree_formulas(S, ORIGIN, sum(lam), r)
        assert skew == baric == w
        assert baric == skew + r[ORIGIN] - pv.staggered_dual(S, r)[ORIGIN]


def test_criterion_6():
    run_criterion(6, "simple objects H_lambda: heart, IC, baric and skew degree 2chi-3", _criterion_6)


# -- 7 ------------------------------------------------------------------------


@pytest.mark.parametrize("part", sorted(properties.CRITERION_7))
def test_criterion_7(part):
    check = properties.CRITERION_7[part]
    run_criterion(7, f"({part}) {check.__name__.removeprefix('check_').replace('_', ' ')}, 100 cases", check)


# -- 8 ------------------------------------------------------------------------

CLASSIFICATION = [
    ((), (3, -1), True, True),
    ((), (0, 0), True, True),
    (((1, 0),), (-1, 5), True, True),
    (((1, 0),), (1, 0), False, False),
    (((1, 0),), (0, 3), True, False),
    (((1, 0), (-1, 1)), (-1, -2), True, True),
    (((2, -1),), (-1, 1), True, True),
    (((2, -1),), (1, 2), True, False),
    (((1, 1),), (1, -1), True, False),
    (((1, 1), (0, 1)), (-1, 0), True, False),
    (((1, 1), (0, 1)), (-1, -1), True, True),
    (((1, 2), (2, 1)), (1, -1), False, False),
]


def _criterion_8():
    assert len(CLASSIFICATION) >= 10
    for ups, phi, semi, foc in CLASSIFICATION:
        assert classify(ups, phi, 2) == {"semifocused": semi, "focused": foc}, (ups, phi)
    cochars = [(1, 0, 0), (0, 1, 0), (1, 1, 1), (2, -1, 0), (0, 0, 0)]
    for a in cochars:
        for b in cochars:
            assert cocharacters_distinguishable(a, b) == (a != b)


def test_criterion_8():
    run_criterion(8, "semifocused/focused table and cocharacter injectivity", _criterion_8)


# -- 9 ------------------------------------------------------------------------


def _criterion_9():
    r = pv.middle(S, "staggered")
    summands = [((0, 0, 0), 3), ((0, -1, 0), 5)]
    F = derived.direct_sum(*(derived.shift(purity.h_lambda(S, lam), k) for lam, k in summands))
    # a shift changes the skew degree but not the baric one
    baric, skew = set(), set()
    for lam, k in summands:
        s, b = purity.degree_formulas(S, ORIGIN, sum(lam), r)
        baric.add(b)
        skew.add(s + k)
    layers_b = [layer["degree"] for layer in purity.purity_filtration(S, F, "baric", r)]
    layers_s = [layer["degree"] for layer in purity.purity_filtration(S, F, "skew", r)]
    assert layers_b == sorted(baric) == [-5, -3]
    assert layers_s == sorted(skew) == [0]


def test_criterion_9():
    run_criterion(9, "baric filtration layers -5, -3; skew filtration single layer 0", _criterion_9)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
