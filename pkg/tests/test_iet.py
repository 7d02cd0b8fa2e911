from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from iet_lowdisc.errors import (
    HypothesisViolated,
    InvalidParams,
    NonPositiveLength,
    NonPositiveResult,
    NoReturnWithinBudget,
    OutOfDomain,
    RadicandMismatch,
)
from iet_lowdisc.iet import (
    IET,
    RIGHT_CLOSED,
    CombinatorialData,
    beta_power_coords,
    build_iet,
    evaluate,
    evaluate_inverse,
    fls22_pair_failures,
    first_return,
    fls,
    fls_schedule,
    fls_start,
    fls_translation_vector,
    is_admissible,
    jls_coords,
    n3_certificate,
    n3_from_gamma,
    n3_standard,
    orbit,
    orbit_matches_jls,
    rotation_number,
)
from iet_lowdisc.quadratic import QuadReal, beta, cf_expand, frac_quad, golden

F = Fraction
third = F(1, 3)


def test_admissibility_examples():
    assert is_admissible(CombinatorialData.standard((2, 1)))
    assert not is_admissible(CombinatorialData.standard((1, 2, 3)))
    assert is_admissible(CombinatorialData.standard((3, 2, 1)))
    assert not is_admissible(CombinatorialData.standard((2, 1, 3)))


def test_bad_permutation():
    with pytest.raises(InvalidParams):
        CombinatorialData((1, 2, 3), (1, 1, 2))


def test_build_rejects_bad_lengths():
    comb = CombinatorialData.standard((2, 1))
    with pytest.raises(NonPositiveLength):
        build_iet(comb, [F(1, 2), 0])
    with pytest.raises(RadicandMismatch):
        build_iet(comb, [golden(), beta(2, 2)])


def test_translation_vectors():
    b = beta(2, 2)
    assert fls(2, 2).w == (b + b * b, -b, b * b, -b - b * b)
    lA, lB = F(2, 5), F(3, 5)
    rot = build_iet(CombinatorialData.standard((2, 1)), [lA, lB])
    assert rot.w == (lB, -lA)
    assert n3_standard(third, third, third).w == (F(2, 3), 0, F(-2, 3))


def test_evaluate_examples():
    f = n3_standard(third, third, third)
    assert evaluate(f, 0) == F(2, 3)
    assert evaluate_inverse(f, F(2, 3)) == 0
    # breakpoints belong to the interval on their right
    assert evaluate(f, third) == third
    rot = build_iet(CombinatorialData.standard((2, 1)), [F(1, 2), F(1, 2)])
    assert evaluate_inverse(rot, 0) == F(1, 2)
    with pytest.raises(OutOfDomain):
        evaluate(f, 1)


def test_right_closed_convention_moves_breakpoints():
    b = beta(2, 2)
    f = fls(2, 2, RIGHT_CLOSED)
    assert evaluate(f, b) == 2 * b + b * b
    assert evaluate(fls(2, 2), b) == 0
    with pytest.raises(OutOfDomain):
        evaluate(f, 0)


def test_orbit_basics():
    f = n3_standard(third, third, third)
    assert orbit(f, F(1, 7), 0, 0).points == [F(1, 7)]
    g = golden()
    rot = build_iet(CombinatorialData.standard((2, 1)), [1 - g, g])
    assert orbit(rot, 0, 0, 2).points == [0, g, 2 * g - 1]
    seg = orbit(rot, g, -3, 3)
    assert seg[0] == g and seg[-1] == 0


lengths3 = st.tuples(*[st.fractions(min_value=F(1, 50), max_value=5, max_denominator=60)] * 3)


@given(lengths3, st.permutations([1, 2, 3]), st.fractions(min_value=0, max_value=1, max_denominator=97))
def test_inverse_undoes_evaluate(lengths, pi1, t):
    f = build_iet(CombinatorialData.standard(pi1), lengths)
    x = f.total * t
    if x == f.total:
        return
    assert evaluate_inverse(f, evaluate(f, x)) == x
    assert 0 <= evaluate(f, x) < f.total


@given(lengths3)
def test_n3_rotation_identity_on_A(lengths):
    lA, lB, lC = lengths
    f = n3_standard(lA, lB, lC)
    for x in (0, lA / 2):
        assert evaluate(f, x) == x + lB + lC


def test_n3_f0_when_bc_equals_a():
    f = n3_standard(F(1, 2), F(1, 5), F(3, 10))
    assert evaluate(f, 0) == F(1, 2)


def test_n3_certificate():
    c = n3_certificate(third, third, third)
    assert c.rho == F(1, 2) and not c.verdict
    g = golden()
    lA, lB, lC = n3_from_gamma(g, F(2, 5))
    c = n3_certificate(lA, lB, lC)
    assert c.rho == g and c.cf.period == (1,) and c.verdict
    c = n3_certificate(g, g ** 2, g ** 3)
    assert not c.rho.is_rational and c.verdict


def test_n3_from_gamma():
    lA, lB, lC = n3_from_gamma(F(3, 5), F(1, 2))
    assert (lA, lB) == (F(1, 4), F(1, 4))
    assert (lB + lC) / (1 + lB) == F(3, 5)
    g = golden()
    with pytest.raises(NonPositiveResult) as info:
        n3_from_gamma(g, g / 2)
    assert info.value.which == "A"
    with pytest.raises(NonPositiveResult) as info:
        n3_from_gamma(g, g)
    assert info.value.which == "B"


def test_first_return():
    lA, lB, lC = F(1, 2), F(1, 5), F(3, 10)
    total = lA + lB + lC
    T = lambda y: (y + lB + lC) % (total + lB)
    y, k = first_return(total + lB, lB + lC, total, F(1, 10))
    assert (y, k) == (T(F(1, 10)), 1)
    y, k = first_return(total + lB, lB + lC, total, F(6, 10))
    assert (y, k) == (T(T(F(6, 10))), 2)
    assert first_return(4, 2, 4, F(1, 3))[1] == 1
    with pytest.raises(NoReturnWithinBudget):
        first_return(1, F(1, 1000), F(1, 1000), 0, max_steps=10)


def test_fls_family():
    for L in range(1, 7):
        for S in range(1, 7):
            f = fls(L, S)
            assert is_admissible(f.comb)
            assert f.total == 1
            assert f.w == fls_translation_vector(L, S)
    with pytest.raises(InvalidParams):
        fls(0, 2)


def test_fls_start():
    b = beta(2, 2)
    x0 = fls_start(2, 2, 0)
    assert 0 <= x0 < b and not frac_quad(x0 - b * b) < b
    for r in range(6):
        assert fls_start(2, 2, r) != fls_start(2, 2, r + 1)
    for r in range(-3, 4):
        assert 0 <= fls_start(3, 2, r) < beta(3, 2)


def test_beta_power_coords():
    assert beta_power_coords(2, 2, 0) == (1, 0)
    assert beta_power_coords(2, 2, 1) == (0, 1)
    assert beta_power_coords(2, 2, 3) == (F(-1, 2), F(3, 2))
    for L, S in [(1, 1), (2, 2), (3, 2), (4, 3)]:
        b = beta(L, S)
        for l in range(6):
            a, c = beta_power_coords(L, S, l)
            assert a + c * b == b ** l


def test_jls_coords():
    b = beta(2, 2)
    for m in range(-5, 6):
        for n in range(2):
            assert jls_coords(2, 2, frac_quad(m * b + n * b * b)) is not None
    assert jls_coords(2, 2, F(1, 3)) is None


def test_schedule_shape():
    assert fls_schedule(2, 2) == [1, 2, 1, 2, 1, 3, 4, 2, 1]
    assert len(fls_schedule(3, 2)) == 3 * 3 + 3 + 2 + 1


@pytest.mark.parametrize("L,S", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_orbit_matches_jls(L, S):
    rep = orbit_matches_jls(L, S)
    P = L * L + L + S
    assert rep.super_cycle == P and rep.return_times[0] == P


def test_orbit_jls_hypothesis():
    with pytest.raises(HypothesisViolated):
        orbit_matches_jls(2, 3)
    with pytest.raises(InvalidParams):
        orbit_matches_jls(2, 2, window=3)


def test_example_pair_structure():
    assert fls22_pair_failures(0, 50) == []
    # with [l, r) intervals the orbit of beta falls straight to 0
    assert fls22_pair_failures(0, 5, convention="left")


def test_json_round_trip():
    f = fls(3, 2, RIGHT_CLOSED)
    g = IET.from_json(f.to_json())
    assert g.to_dict() == f.to_dict()


def test_rotation_number_of_symmetric_iet():
    assert rotation_number(third, third, third) == F(1, 2)
    assert cf_expand(rotation_number(golden(), golden() ** 2, golden() ** 3)).period
