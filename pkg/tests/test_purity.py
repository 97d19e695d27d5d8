import pytest
from hypothesis import given, strategies as st

from stagger import derived, graded, perversity as pv, purity
from stagger.errors import NotFiniteLength, NotPure, PerversityConditionError, StaggerError
from stagger.perversity import Perversity
from stagger.torus import Stratum, TorusSetup, closure_leq, codim
from strategies import characters

S = TorusSetup.global_linear([1, 1, 1])
R = pv.middle(S, "staggered")
ALT = pv.middle(S, "baric")
ORIGIN = Stratum([1, 2, 3])


def H(lam, k=0):
    return derived.shift(purity.h_lambda(S, lam), k)


def closure_ic(lam, Z):
    """Simple object on the closure of the stratum Z, for lam vanishing off Z."""
    M = graded.quotient_by_variables(3, Z, lam)
    v = sum(lam[i - 1] for i in Z)
    return derived.shift(derived.free_resolution(M), v - R[Stratum(Z)])


ZERO = derived.zero_complex(3)


# -- coherent sheaves and baric structure ------------------------------------


def test_qC_examples():
    k = graded.skyscraper((0, 0, 0))
    zero_q = Perversity.constant(S, 0)
    assert not purity.member_qC_leq(S, k, -3, zero_q)
    assert purity.member_qC_leq(S, k, 0, zero_q)
    A = graded.free_module(3, [(0, 0, 0)])
    assert purity.member_qC_leq(S, A, 0, ALT)
    assert not purity.member_qC_leq(S, A, -1, ALT)
    assert purity.member_qC_leq(S, graded.minimize_presentation(graded.direct_sum(k, k)), 0, zero_q)


def test_baric_examples():
    H0 = H((0, 0, 0))
    assert purity.member_baric_leq(S, H0, -3, ALT)
    assert purity.member_baric_geq(S, H0, -3, ALT)
    assert not purity.member_baric_leq(S, H0, -4, ALT)
    assert purity.is_pure(S, H0, -3)
    assert not purity.is_pure(S, H0, -2)
    for w in range(-6, 6):
        assert purity.is_pure(S, ZERO, w)
        assert purity.member_baric_leq(S, ZERO, w, ALT)


def test_sum_of_two_degrees_is_not_pure():
    F = derived.direct_sum(H((0, 0, 0), 3), H((0, -1, 0), 5))
    assert not any(purity.is_pure(S, F, w).verdict for w in range(-8, 4))


def test_certificate_records_failures():
    cert = purity.is_pure(S, H((0, 0, 0)), -4)
    assert not cert and cert.failures
    js = cert.to_json()
    assert js["family"] == "baric_pure" and js["verdict"] is False
    bad = [w for w in js["witnesses"] if not w["pass"]]
    assert bad and bad[0]["stratum"] == [1, 2, 3]
    assert {"stratum", "k", "bound", "actual"} <= set(bad[0])


# -- staggered t-structure ---------------------------------------------------


def test_staggered_examples():
    H0 = H((0, 0, 0))
    assert purity.in_staggered_heart(S, H0, R)
    shifted = H((0, 0, 0), 1)
    assert purity.member_staggered_leq(S, shifted, 0, R)
    assert not purity.member_staggered_geq(S, shifted, 0, R)
    assert not purity.in_staggered_heart(S, shifted, R)
    # the bound n - 2k moves by two per shift, so [1] lands in the heart at n = -2
    assert purity.member_staggered_leq(S, shifted, -2, R) and purity.member_staggered_geq(S, shifted, -2, R)
    assert not purity.member_staggered_geq(S, shifted, -1, R)
    assert purity.in_staggered_heart(S, ZERO, R)


def test_heart_certificate_lists_both_sides():
    cert = purity.heart_certificate(S, H((0, 0, 0)), R)
    sides = {w.side for w in cert.witnesses}
    assert sides == {"leq", "geq"}


# -- skew co-t-structure -----------------------------------------------------


def test_skew_examples():
    Ox = graded.stratum_sheaf(3, [2, 3])
    Oz = graded.stratum_sheaf(3, [1, 2])
    assert purity.is_skew_pure(S, derived.tensorL(Ox, Oz), 0, R)
    assert purity.member_skew_leq(S, Oz, 0, R)
    assert purity.is_skew_pure(S, H((0, 0, 0), 3), 0, R)
    assert not purity.is_skew_pure(S, H((0, 0, 0)), 0, R)
    assert purity.is_skew_pure(S, H((0, 0, 0)), -3, R)


def test_skew_degree_moves_with_shift():
    for k in range(-2, 3):
        assert purity.is_skew_pure(S, H((1, 0, 0), k), -1 + k, R)
        assert purity.is_pure(S, H((1, 0, 0), k), -1)


# -- purified and pure-perverse ----------------------------------------------


def test_purified_examples():
    H0 = H((0, 0, 0))
    assert not purity.member_purified_leq(S, H0, 2, -3, ALT)
    assert purity.member_purified_leq(S, H0, 3, -3, ALT)
    for n in range(-2, 3):
        assert purity.member_purified_leq(S, ZERO, n, 0, ALT)
    A = graded.free_module(3, [(0, 0, 0)])
    assert purity.member_purified_leq(S, A, 0, 0, ALT) == purity.member_baric_leq(S, A, 0, ALT)


def test_purified_geq_is_dual():
    F = H((0, 1, 0), 2)
    for n in range(-3, 3):
        for w in (-2, -1, 0):
            lhs = purity.member_purified_geq(S, F, n, w, ALT)
            rhs = purity.member_purified_leq(S, derived.dualize(S, F), -n, -w, pv.baric_dual(S, ALT))
            assert lhs == rhs


def test_pureperverse_heart_of_simple():
    p, q, w = pv.ic_pp_perversities(S, ORIGIN, 0, R)
    assert purity.in_pureperverse_heart(S, H((0, 0, 0)), w, p, q)
    assert purity.in_pureperverse_heart(S, ZERO, w, p, q)


def test_pureperverse_rejects_bad_perversity():
    bad = {s: 2 * codim(S, s) for s in S.strata}
    with pytest.raises(PerversityConditionError):
        purity.member_pureperverse_leq(S, H((0, 0, 0)), 0, -3, bad, ALT)


def test_pureperverse_needs_values_where_object_lives():
    p = {ORIGIN: 0}
    q = {ORIGIN: 3}
    with pytest.raises(PerversityConditionError):
        purity.member_pureperverse_leq(S, graded.free_module(3, [(0, 0, 0)]), 0, 0, p, q)


def test_single_stratum_pureperverse_is_purified():
    point = TorusSetup.global_linear([])
    one = Perversity.constant(point, 0)
    F = derived.free(0, (), degree=1)
    for n in range(-1, 3):
        for w in range(-1, 2):
            assert purity.member_pureperverse_leq(point, F, n, w, one, one) == \
                purity.member_purified_leq(point, F, n, w, one)


# -- membership dispatcher -----------------------------------------------------


def test_membership_dispatch():
    H0 = H((0, 0, 0))
    for fam in purity.FAMILIES:
        params = {"n": 0, "w": -3, "r": R, "q": ALT}
        if fam.startswith("pureperverse"):
            p, q, w = pv.ic_pp_perversities(S, ORIGIN, 0, R)
            params = {"n": 0, "w": w, "p": p, "q": q}
        cert = purity.membership(S, H0, fam, **params)
        assert cert.family.startswith(fam.split("_")[0])
        if fam.startswith("purified"):
            assert cert.verdict is (fam == "purified_geq"), fam
        else:
            assert cert.verdict is True, fam
    assert purity.membership(S, H0, "purified_leq", n=3, w=-3, q=ALT).verdict
    with pytest.raises(StaggerError):
        purity.membership(S, H0, "nope")
    with pytest.raises(StaggerError):
        purity.membership(S, H0, "baric_leq", w=0)


# -- IC objects and degrees ------------------------------------------------------


def test_ic_closed_is_h_lambda():
    H0 = purity.ic_closed(S, (0, 0, 0), R)
    assert H0.shape() == derived.shift(derived.free_resolution(graded.skyscraper((0, 0, 0))), -3).shape()
    with pytest.raises(StaggerError):
        purity.ic_closed(S, (0, 0, 0), R, Stratum([1]))


def test_ic_verify_on_closures():
    Ox = graded.stratum_sheaf(3, [2, 3])
    assert purity.ic_verify(S, derived.shift(derived.free_resolution(Ox), -2), Stratum([2, 3]), (0, 0, 0), R)
    # wrong degree: condition (i) fails with a note
    cert = purity.ic_verify(S, Ox, Stratum([2, 3]), (0, 0, 0), R)
    assert not cert and any(n.startswith("(i)") for n in cert.notes)
    # twisted along the free direction: not a simple object
    tw = derived.shift(derived.free_resolution(graded.quotient_by_variables(3, [2, 3], (1, 0, 0))), -2)
    assert not purity.ic_verify(S, tw, Stratum([2, 3]), (1, 0, 0), R)


def test_ic_verify_wrong_restriction():
    cert = purity.ic_verify(S, H((0, 0, 0)), ORIGIN, (1, 0, 0), R)
    assert not cert.verdict
    assert any(n.startswith("(i)") for n in cert.notes)


def test_degree_formulas():
    assert purity.degree_formulas(S, ORIGIN, 0, R) == (-3, -3)
    assert purity.degree_formulas(S, ORIGIN, 1, R) == (-1, -1)
    assert purity.degree_formulas(S, Stratum(), 0, R)[0] == 0


# -- filtrations and decomposition -----------------------------------------------


def test_filtration_examples():
    F = derived.direct_sum(H((0, 0, 0), 3), H((0, -1, 0), 5))
    baric = purity.purity_filtration(S, F, "baric", R)
    assert [layer["degree"] for layer in baric] == [-5, -3]
    assert baric[0]["factors"] == [{"character": [0, -1, 0], "degree": -1, "multiplicity": 1, "shift": 5}]
    assert [layer["degree"] for layer in purity.purity_filtration(S, F, "skew", R)] == [0]
    assert len(purity.purity_filtration(S, H((2, 0, 0)), "baric")) == 1
    assert purity.purity_filtration(S, ZERO, "skew", R) == []
    with pytest.raises(NotFiniteLength):
        purity.purity_filtration(S, graded.stratum_sheaf(3, [1]), "baric")
    with pytest.raises(StaggerError):
        purity.purity_filtration(S, ZERO, "weights")


def test_decompose_examples():
    assert purity.decompose_pure(S, H((1, 0, 0)), "baric", -1, R) == [(ORIGIN, (1, 0, 0), 0)]
    double = derived.direct_sum(H((0, 0, 0)), H((0, 0, 0)))
    assert purity.decompose_pure(S, double, "skew", -3, R) == [(ORIGIN, (0, 0, 0), 0)] * 2
    with pytest.raises(NotPure):
        purity.decompose_pure(S, H((0, 0, 0)), "skew", 0, R)
    with pytest.raises(NotFiniteLength):
        Ox = derived.shift(derived.free_resolution(graded.stratum_sheaf(3, [2, 3])), -2)
        purity.decompose_pure(S, Ox, "baric", -2, R)


def test_nonsplit_extension_is_not_pure():
    # C(0) extended by C(-1,0,0): the two factors have skew degrees -3 and -4
    M = graded.monomial_quotient(3, (0, 0, 0), [(2, 0, 0), (0, 1, 0), (0, 0, 1)])
    F = derived.shift(derived.free_resolution(M), -3)
    layers = purity.purity_filtration(S, F, "skew", R)
    assert [layer["degree"] for layer in layers] == [-4, -3]
    assert not any(purity.is_skew_pure(S, F, w, R).verdict for w in range(-6, 0))
    with pytest.raises(NotPure):
        purity.decompose_pure(S, F, "skew", -4, R)


# -- properties ------------------------------------------------------------------


@given(characters(3, -2, 2))
def test_simple_objects_are_pure_of_formula_degree(lam):
    F = purity.h_lambda(S, lam)
    skew, baric = purity.degree_formulas(S, ORIGIN, sum(lam), R)
    assert skew == baric == 2 * sum(lam) - 3
    assert purity.is_pure(S, F, baric)
    assert purity.is_skew_pure(S, F, skew, R)
    assert purity.in_staggered_heart(S, F, R)


@given(st.sampled_from([Z for Z in ([1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3])]),
       characters(3, -2, 2))
def test_closure_objects_are_ic_and_pure(Z, raw):
    lam = tuple(x if i + 1 in Z else 0 for i, x in enumerate(raw))
    C0 = Stratum(Z)
    F = closure_ic(lam, Z)
    v = sum(lam)
    assert purity.ic_verify(S, F, C0, lam, R)
    skew, baric = purity.degree_formulas(S, C0, v, R)
    assert purity.is_pure(S, F, baric)
    assert purity.is_skew_pure(S, F, skew, R)
    assert purity.in_staggered_heart(S, F, R)


@given(st.sampled_from([[2, 3], [1, 2], [1], [3], [1, 2, 3]]), characters(3, -2, 2),
       st.lists(st.integers(0, 3), min_size=8, max_size=8), st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_ic_baric_bound(Z, raw, slack, noise):
    """Any q at least the closure bound keeps the simple object in baric <= 2v - alt."""
    lam = tuple(x if i + 1 in Z else 0 for i, x in enumerate(raw))
    C0 = Stratum(Z)
    F = closure_ic(lam, Z)
    v = sum(lam)
    q = {}
    for s, e, z in zip(S.strata, slack, noise):
        if closure_leq(s, C0):
            q[s] = len(C0) + 2 * R[s] - 2 * R[C0] - 2 * codim(S, s) + 2 * codim(S, C0) + e
        else:
            q[s] = z
    assert purity.member_baric_leq(S, F, 2 * v - len(C0), q)


@given(st.sampled_from([[2, 3], [1, 2], [1], [3], [2]]), characters(3, -2, 2))
def test_strict_restriction_bound(Z, raw):
    lam = tuple(x if i + 1 in Z else 0 for i, x in enumerate(raw))
    C0 = Stratum(Z)
    F = closure_ic(lam, Z)
    w = 2 * sum(lam) - len(C0)
    for C in S.closure(C0):
        if C == C0:
            continue
        assert purity.member_baric_leq(S, derived.pullback_L(S, F, C), w - 1, ALT), C
        assert purity.member_baric_geq(S, derived.shriek_R(S, F, C), w + 1, ALT), C


@given(characters(3, -1, 1), characters(3, -1, 1))
def test_pure_ext_bound(lam, mu):
    F, G = purity.h_lambda(S, lam), purity.h_lambda(S, mu)
    wf, wg = 2 * sum(lam) - 3, 2 * sum(mu) - 3
    for k in range(wf - wg + 1, wf - wg + 6):
        assert derived.hom_dim(F, G, k) == 0


@given(characters(3, -1, 1), st.integers(-2, 2),
       st.integers(-2, 2), st.integers(-3, 5), st.integers(-2, 2))
def test_pureperverse_heart_lies_in_staggered_heart(lam, shift, p0, q0, w):
    F = H(lam, shift)
    p, q = {ORIGIN: p0}, {ORIGIN: q0}
    if not purity.in_pureperverse_heart(S, F, w, p, q):
        return
    lo = p0 + (q0 + w) // 2
    hi = p0 - ((-(q0 + w)) // 2)
    for value in range(lo, hi + 1):
        r = Perversity({s: (value if s == ORIGIN else R[s]) for s in S.strata})
        assert purity.in_staggered_heart(S, F, r), value
