"""Test 1D p-variation, grid-like V_p, controlled p-variation and the sandwich bound."""

import numpy as np
import pytest

from rectvar.errors import CapExceededError, DomainError
from rectvar.geometry import Dissection, Rect, enumerate_gridlike, validate_partition
from rectvar.gridfunc import GridFunction
from rectvar.variation import (
    Method,
    ascent_starts,
    controlled_pvar_exact,
    evaluate_gridlike,
    evaluate_partition,
    interval_dp,
    pvar_1d,
    sandwich_constant,
    strict_gap_instance,
    verify_sandwich,
    vp_2d_alternating,
    vp_2d_exact,
    witness_objective,
)
from suites.common import random_grid, rng_for
from suites.oracles import pvar_1d_oracle, vp_2d_oracle


def st_grid() -> GridFunction:
    """f(s, t) = s * t on {0, 1}^2, given as grid data."""
    return GridFunction.on_integer_grid(np.array([[0.0, 0.0], [0.0, 1.0]]))


def test_pvar_1d_zigzag():
    """(0, 1, 0) has p-variation power sum 2 for p = 2."""
    result = pvar_1d([0.0, 1.0, 0.0], 2.0)
    assert result.power_sum == 2.0
    assert result.value == pytest.approx(np.sqrt(2.0))
    assert result.witness.points == (0.0, 1.0, 2.0)


def test_pvar_1d_monotone_path_prefers_endpoints():
    """For a monotone path and p > 1 the two-point dissection wins."""
    result = pvar_1d([0.0, 1.0, 3.0], 2.0)
    assert result.power_sum == 9.0
    assert result.witness.points == (0.0, 2.0)


def test_pvar_1d_rejects_small_p():
    """p < 1 is outside the domain."""
    with pytest.raises(DomainError):
        pvar_1d([0.0, 1.0], 0.5)


def test_interval_dp_tie_prefers_fewer_points():
    """Equal totals keep the chain with fewer points."""
    weights = np.array([[0.0, 1.0, 2.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    total, chain = interval_dp(weights)
    assert total == 2.0
    assert chain == [0, 2]


def test_pvar_1d_matches_exhaustive():
    """The interval DP agrees with brute force on random paths."""
    for k in range(40):
        rng = rng_for(1, "pvar", k)
        path = rng.uniform(-1, 1, int(rng.integers(2, 10))).tolist()
        for p in (1.0, 1.5, 2.0, 3.0):
            assert pvar_1d(path, p).power_sum == pytest.approx(pvar_1d_oracle(path, p), rel=1e-12)


def test_vp_of_product_is_one():
    """V_1(st; [0,1]^2) = 1 with an exact method."""
    result = vp_2d_exact(st_grid(), 1.0)
    assert result.value == 1.0
    assert result.method is Method.EXACT
    assert result.bound == "exact"


def test_vp_matches_brute_force():
    """Exact V_p agrees with direct enumeration of all dissection pairs."""
    for k in range(10):
        f = random_grid(rng_for(2, "vp", k), 3, 4)
        for p in (1.0, 2.0, 3.0):
            assert vp_2d_exact(f, p).power_sum == pytest.approx(vp_2d_oracle(f, p), rel=1e-12)


def test_vp_witness_reevaluates():
    """The reported V_p equals the objective on its own witness."""
    f = random_grid(rng_for(3, "witness"), 4, 3)
    result = vp_2d_exact(f, 2.0)
    assert witness_objective(result, f) == pytest.approx(result.power_sum, rel=1e-12)
    dx, dy = result.witness
    assert evaluate_partition(f, 2.0, enumerate_gridlike(dx, dy)) == pytest.approx(
        evaluate_gridlike(f, 2.0, dx, dy), rel=1e-12
    )


def test_vp_sampled_function_is_lower_bound():
    """Off-grid samples only give a lower bound."""
    xs = Dissection.uniform(0.0, 1.0, 4)
    f = GridFunction.sample(lambda s, t: np.sin(3 * s) * np.cos(2 * t), xs, xs)
    assert vp_2d_exact(f, 2.0).bound == "lower"


def test_vp_exact_cap():
    """Too many interior points per axis raise CapExceededError."""
    f = GridFunction.on_integer_grid(np.zeros((6, 3)))
    with pytest.raises(CapExceededError):
        vp_2d_exact(f, 2.0, cap=3)


def test_vp_restricted_to_subrectangle():
    """V_1 of st over [0,2]x[0,1] is the area 2."""
    xs = Dissection((0.0, 1.0, 2.0))
    f = GridFunction.sample(lambda s, t: s * t, xs, xs)
    assert vp_2d_exact(f, 1.0, Rect(0, 2, 0, 1)).value == pytest.approx(2.0)


def test_vp_invariant_under_affine_axes():
    """Moving and stretching each axis leaves V_p and the witness indices unchanged."""
    f = random_grid(rng_for(3, "affine"), 4, 3)
    g = GridFunction(
        Dissection(tuple(2.0 * v + 1.0 for v in f.xs.points)),
        Dissection(tuple(0.5 * v - 3.0 for v in f.ys.points)),
        f.values,
    )
    for p in (1.0, 2.0, 3.0):
        before, after = vp_2d_exact(f, p), vp_2d_exact(g, p)
        assert after.power_sum == pytest.approx(before.power_sum, rel=1e-12)
        assert after.witness[0].points == tuple(2.0 * v + 1.0 for v in before.witness[0].points)
        assert after.witness[1].points == tuple(0.5 * v - 3.0 for v in before.witness[1].points)


@pytest.mark.parametrize("r", [Rect(0, 2, 1, 3), Rect(1, 3, 0, 2), Rect(1, 2, 1, 2), Rect(0, 3, 0, 1)])
def test_variations_grow_with_the_rectangle(r):
    """Both variations over a sub-rectangle are at most their value over the whole grid."""
    for k in range(5):
        f = random_grid(rng_for(3, "monotone", k), 3, 3)
        for p in (1.0, 2.0):
            assert vp_2d_exact(f, p, r).power_sum <= vp_2d_exact(f, p).power_sum * (1 + 1e-12)
            assert controlled_pvar_exact(f, p, r).power_sum <= controlled_pvar_exact(f, p).power_sum * (1 + 1e-12)


def test_alternating_is_a_lower_bound():
    """Coordinate ascent never beats the exact value and never loses to the full dissection."""
    for k in range(10):
        f = random_grid(rng_for(4, "alt", k), 5, 5)
        for p in (1.0, 2.0):
            exact = vp_2d_exact(f, p)
            heuristic = vp_2d_alternating(f, p)
            full = evaluate_gridlike(f, p, f.xs, f.ys)
            assert heuristic.power_sum <= exact.power_sum * (1 + 1e-12)
            assert heuristic.power_sum >= full * (1 - 1e-12)
            assert heuristic.method is Method.HEURISTIC
            if p == 1.0:
                assert heuristic.power_sum == pytest.approx(exact.power_sum, rel=1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_alternating_exact_on_random_6x6(p):
    """Coordinate ascent hits the exact value on at least 95% of random 6x6 grids."""
    hits = 0
    trials = 60
    for k in range(trials):
        f = random_grid(rng_for(5, "alt6", k), 5, 5)
        exact = vp_2d_exact(f, p).power_sum
        if vp_2d_alternating(f, p).power_sum >= exact * (1 - 1e-12):
            hits += 1
    assert hits >= 0.95 * trials


def test_ascent_starts():
    """Starts are distinct index dissections keeping both endpoints, seeded and repeatable."""
    starts = ascent_starts(6, np.random.default_rng(0))
    assert starts[:2] == [[0, 1, 2, 3, 4, 5], [0, 5]]
    assert [0, 2, 5] in starts and [0, 1, 4, 5] in starts and [0, 1, 2, 4, 5] in starts
    assert len({tuple(s) for s in starts}) == len(starts)
    assert all(s[0] == 0 and s[-1] == 5 for s in starts)
    assert starts == ascent_starts(6, np.random.default_rng(0))
    assert ascent_starts(2, np.random.default_rng(0)) == [[0, 1]]


def test_alternating_is_seeded():
    """Same seed, same witness."""
    f = random_grid(rng_for(5, "seeded"), 7, 6)
    a = vp_2d_alternating(f, 2.0, seed=3)
    b = vp_2d_alternating(f, 2.0, seed=3)
    assert a.power_sum == b.power_sum
    assert a.witness == b.witness


def test_controlled_equals_vp_for_p1():
    """|f|_1-var = V_1 on random grids."""
    for k in range(10):
        f = random_grid(rng_for(6, "p1", k), 3, 3)
        assert controlled_pvar_exact(f, 1.0).value == pytest.approx(vp_2d_exact(f, 1.0).value, rel=1e-10)


def test_controlled_dominates_vp():
    """V_p <= |f|_p-var, with a valid maximizing partition."""
    for k in range(10):
        f = random_grid(rng_for(7, "order", k), 3, 3)
        for p in (1.5, 2.0, 3.0):
            cp = controlled_pvar_exact(f, p)
            assert vp_2d_exact(f, p).value <= cp.value * (1 + 1e-12)
            assert validate_partition(cp.witness)
            assert witness_objective(cp, f) == pytest.approx(cp.power_sum, rel=1e-12)


def test_strict_gap_found():
    """Some random grid has V_p strictly below |f|_p-var, witnessed by a non-grid-like partition."""
    found = None
    for k in range(200):
        found = strict_gap_instance(random_grid(rng_for(8, "gap", k), 3, 3), 2.0)
        if found is not None:
            break
    assert found is not None
    vp, cp = found
    assert vp.value < cp.value
    assert not cp.witness.is_gridlike()


def test_sandwich_constant_domain():
    """The constant is finite and at least 4 for valid (p, eps), and rejects bad ones."""
    c = sandwich_constant(2.0, 1.0)
    assert np.isfinite(c) and c > 4
    with pytest.raises(DomainError):
        sandwich_constant(2.0, 0.0)
    with pytest.raises(DomainError):
        sandwich_constant(0.5, 1.0)


@pytest.mark.parametrize("p", [1.0, 1.2, 2.0, 3.0])
def test_sandwich_constant_decreases_in_eps(p):
    """A larger exponent loss buys a smaller constant."""
    constants = [sandwich_constant(p, eps) for eps in (0.05, 0.3, 1.0, 5.0, 20.0)]
    assert all(a > b for a, b in zip(constants, constants[1:]))


def test_verify_sandwich_holds():
    """All sandwich records hold on a random grid; p = 1 adds the equality record."""
    f = random_grid(rng_for(9, "sandwich"), 3, 3)
    report = verify_sandwich(f, 1.0, 0.5)
    assert report.passed
    assert any(r.name == "V_1 = |f|_1-var" for r in report.records)
