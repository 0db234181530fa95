import numpy as np
import pytest

from quanton_decay.errors import InvalidEta, VelocityNotSubluminal
from quanton_decay.minkowski import (
    REST,
    FourVector,
    UnitTimelike,
    Velocity3,
    eta_from_velocity,
    lorentz_inner,
)
from quanton_decay.relations import (
    BOTH_ZERO,
    CASE1,
    CASE2,
    CASE3,
    COLLINEAR_UNEQUAL,
    EQUAL_NONZERO,
    NON_COLLINEAR,
    classify_triple,
    classify_velocity_pair,
    format_record,
    json_record,
    support_condition_check,
    verdict_from_triple,
    velocity_pair_triple,
)


def etas(*vels):
    return [eta_from_velocity(Velocity3(*v)) for v in vels]


CANONICAL = {
    CASE3: etas((0, 0, 0), (0, 0, 0), (0, 0, 0)),
    CASE2: etas((0, 0, 0), (0.3, 0, 0), (0.6, 0, 0)),
    CASE1: etas((0, 0, 0), (0.6, 0, 0), (0, 0.6, 0)),
}


@pytest.mark.parametrize("case, rank, family_dim, n_nontrivial", [
    (CASE3, 1, 3, 2), (CASE2, 2, 2, 1), (CASE1, 3, 1, 0),
])
def test_canonical_triples(case, rank, family_dim, n_nontrivial):
    report = classify_triple(*CANONICAL[case])
    assert report.case_id == case
    assert report.rank == rank
    assert report.orthogonal_family_dim == family_dim
    assert len(report.nontrivial_combinations) == n_nontrivial
    assert len(report.relations) == 3 - rank
    assert len(report.trivial_combinations) == rank
    assert not report.near_degenerate


def test_case2_relation_and_combination():
    report = classify_triple(*CANONICAL[CASE2])
    (rel,) = report.relations
    assert report.nontrivial_combinations == (rel,)
    assert np.linalg.norm(rel) == pytest.approx(1.0, abs=1e-14)
    assert rel[0] > 0
    combo = sum(c * e.as_array() for c, e in zip(rel, CANONICAL[CASE2]))
    assert np.max(np.abs(combo)) < 1e-12
    assert not report.two_equal


def test_case2_two_equal_subcase():
    report = classify_triple(*etas((0.6, 0, 0), (0.6, 0, 0), (0, 0, 0)))
    assert report.case_id == CASE2 and report.two_equal
    np.testing.assert_allclose(report.relations[0], [2 ** -0.5, -(2 ** -0.5), 0], atol=1e-14)


def test_case3_relations_are_tau_differences():
    report = classify_triple(*CANONICAL[CASE3])
    np.testing.assert_allclose(report.relations, [[2 ** -0.5, 0, -(2 ** -0.5)],
                                                  [0, 2 ** -0.5, -(2 ** -0.5)]], atol=1e-14)
    np.testing.assert_allclose(report.trivial_combinations, [[3 ** -0.5] * 3], atol=1e-14)
    assert "p - p' = 0" in report.support_condition


def test_trivial_and_nontrivial_are_complementary():
    for triple in CANONICAL.values():
        report = classify_triple(*triple)
        for t in report.trivial_combinations:
            for r in report.relations:
                assert abs(np.dot(t, r)) < 1e-12


def test_invalid_eta():
    with pytest.raises(InvalidEta):
        classify_triple([1, 0, 0, 0], [2, 0, 0, 0], [1, 0, 0, 0])
    with pytest.raises(InvalidEta):
        classify_triple([1, 0, 0, 0], [1, 0, 0, 0], [-1, 0, 0, 0])


def test_report_deterministic():
    a = classify_triple(*CANONICAL[CASE2])
    b = classify_triple(*CANONICAL[CASE2])
    assert a == b
    assert format_record(a.to_dict()) == format_record(b.to_dict())
    assert json_record(a.to_dict()) == json_record(b.to_dict())


def random_eta(rng, max_speed=0.9):
    v = rng.normal(size=3)
    return eta_from_velocity(v / np.linalg.norm(v) * rng.uniform(0, max_speed))


def random_triple(rng):
    kind = rng.integers(4)
    a = random_eta(rng)
    if kind == 0:
        return [a, a, a]
    if kind == 1:
        b = random_eta(rng)
        return [a, b, b] if rng.integers(2) else [b, a, b]
    if kind == 2:
        # three normals in the plane spanned by e_t and one spatial direction
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        return [eta_from_velocity(n * rng.uniform(-0.9, 0.9)) for _ in range(3)]
    return [random_eta(rng) for _ in range(3)]


def test_random_triples_invariants():
    rng = np.random.default_rng(11)
    for _ in range(500):
        triple = random_triple(rng)
        report = classify_triple(*triple)
        assert report.rank + report.orthogonal_family_dim == 4
        for rel in report.relations:
            combo = sum(c * e.as_array() for c, e in zip(rel, triple))
            assert np.max(np.abs(combo)) < 1e-9
        for b in report.orthogonal_family:
            assert lorentz_inner(b, b) < 0
            for e in triple:
                assert abs(lorentz_inner(b, e)) < 1e-9 * e.t
        if report.case_id == CASE3:
            arr = np.array([e.as_array() for e in triple])
            assert np.max(np.abs(arr - arr[0])) < 1e-8


def test_rank_stability_under_perturbation():
    tol = 1e-9
    base = CANONICAL[CASE1]
    rng = np.random.default_rng(5)
    for _ in range(50):
        moved = [UnitTimelike.from_vector(e.as_array() + rng.uniform(-1, 1, 4) * tol / 10)
                 for e in base]
        assert classify_triple(*moved, tol=tol).case_id == CASE1
    a = REST.as_array()
    moved = [REST, UnitTimelike.from_vector(a + 100 * tol * np.array([0, 1, 0, 0])),
             UnitTimelike.from_vector(a + 100 * tol * np.array([0, 0, 1, 0]))]
    assert classify_triple(*moved, tol=tol).case_id != CASE3


def test_near_degenerate_flagged():
    tol = 1e-9
    moved = [REST, REST, UnitTimelike.from_vector(REST.as_array() + [0, 3 * tol, 0, 0])]
    assert classify_triple(*moved, tol=tol).near_degenerate


# -- velocity pairs -----------------------------------------------------------

@pytest.mark.parametrize("u, u_p, category, dependent", [
    ((0, 0, 0), (0, 0, 0), BOTH_ZERO, True),
    ((0.6, 0, 0), (0.6, 0, 0), EQUAL_NONZERO, False),
    ((0.3, 0, 0), (0.6, 0, 0), COLLINEAR_UNEQUAL, True),
    ((0.6, 0, 0), (0, 0.6, 0), NON_COLLINEAR, False),
    ((0.4, 0, 0), (-0.4, 0, 0), COLLINEAR_UNEQUAL, True),
    ((0, 0, 0), (0, 0.2, 0.1), COLLINEAR_UNEQUAL, True),
])
def test_velocity_pair_categories(u, u_p, category, dependent):
    verdict = classify_velocity_pair(Velocity3(*u), Velocity3(*u_p))
    assert verdict.category == category
    assert verdict.time_dependent is dependent
    assert verdict_from_triple(velocity_pair_triple(Velocity3(*u), Velocity3(*u_p))) is dependent


def test_velocity_pair_rejects_superluminal():
    with pytest.raises(VelocityNotSubluminal):
        classify_velocity_pair([1.2, 0, 0], [0, 0, 0])


EXPECTED_CASE = {BOTH_ZERO: CASE3, EQUAL_NONZERO: CASE2, COLLINEAR_UNEQUAL: CASE2,
                 NON_COLLINEAR: CASE1}


def random_pair(rng):
    kind = rng.integers(4)
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    if kind == 0:
        return Velocity3(), Velocity3()
    if kind == 1:
        u = Velocity3.from_array(n * rng.uniform(0.01, 0.95))
        return u, u
    if kind == 2:
        a, b = rng.uniform(-0.95, 0.95, 2)
        if rng.integers(4) == 0:
            a = 0.0
        return Velocity3.from_array(n * a), Velocity3.from_array(n * b)
    m = rng.normal(size=3)
    return (Velocity3.from_array(n * rng.uniform(0, 0.95)),
            Velocity3.from_array(m / np.linalg.norm(m) * rng.uniform(0.01, 0.95)))


def test_velocity_pair_consistency_with_triples():
    rng = np.random.default_rng(2024)
    seen = set()
    for _ in range(1000):
        u, u_p = random_pair(rng)
        verdict = classify_velocity_pair(u, u_p)
        report = velocity_pair_triple(u, u_p)
        seen.add(verdict.category)
        assert report.case_id == EXPECTED_CASE[verdict.category]
        assert verdict.time_dependent == verdict_from_triple(report)
        if verdict.category == EQUAL_NONZERO:
            assert report.two_equal
    assert seen == set(EXPECTED_CASE)


# -- support conditions ---------------------------------------------------------

def test_support_condition_examples():
    p = FourVector(0, 0.3, -0.2, 0.1)
    for triple in CANONICAL.values():
        assert support_condition_check(classify_triple(*triple), p, p)

    case1 = classify_triple(*CANONICAL[CASE1])
    (direction,) = case1.orthogonal_family
    shifted = p + FourVector(*direction) * 0.5
    assert not support_condition_check(case1, p, shifted)

    case3 = classify_triple(*CANONICAL[CASE3])
    assert not support_condition_check(case3, p, p + FourVector(0, 0, 1e-3, 0))


def test_support_allows_differences_inside_eta_span():
    case2 = classify_triple(*CANONICAL[CASE2])
    p = FourVector(0, 0, 0.4, 0)
    # a difference along the t-x plane is orthogonal to the (y, z) family
    assert support_condition_check(case2, p, p + FourVector(0.2, 0.7, 0, 0))
    assert not support_condition_check(case2, p, p + FourVector(0, 0, 0, 0.1))
