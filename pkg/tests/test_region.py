import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdtwrc import (
    ChannelGains,
    CoherenceParams,
    PhaseMiTable,
    PlaneNetwork,
    PowerConstraints,
    RatePair,
    RegionLabel,
    df_phase_mi,
    inner_region_df,
    outer_region,
    rates_feasible,
    restrict_region,
    twc_region,
    ub_phase_mi,
    validate_rate_split,
)
from hdtwrc.core import ALL_PHASES
from hdtwrc.errors import GeometryError
from hdtwrc.region import split_constraints

from oracles import forwarding_cut_caps, random_mi_table, rate_polygon_vertices, ray_boundary, split_ray_max

ZERO = PhaseMiTable(**{k: 0.0 for k in random_mi_table(np.random.default_rng(0)).as_dict()})
UNIT = PhaseMiTable(**{**{k: 1.0 for k in ZERO.as_dict()}, "i2_1p5": 0.0, "i2_3p6": 0.0})


def random_tau(rng):
    return rng.dirichlet(np.ones(6)) * rng.uniform(0.5, 1.0)


def random_gaussian_instance(rng):
    """Relay somewhere in [-1, 2] x [-1.5, 1.5], powers in [1, 20], random beta/gamma."""
    while True:
        try:
            g = PlaneNetwork((rng.uniform(-1, 2), rng.uniform(-1.5, 1.5)), alpha=rng.uniform(2, 4)).gains()
            break
        except GeometryError:
            continue
    p = PowerConstraints(*rng.uniform(1, 20, size=3))
    c = CoherenceParams(*rng.uniform(0, 1, size=2))
    return g, p, c


@pytest.mark.parametrize("build", [outer_region, inner_region_df, twc_region])
def test_zero_table_collapses(build, rng):
    region = build(ZERO)
    for _ in range(5):
        assert np.all(region.capacities(random_tau(rng)) == 0.0)
    assert not rates_feasible(region, (1, 0, 0, 0, 0, 0), RatePair(1e-6, 0.0))


def test_outer_rows():
    region = outer_region(UNIT)
    assert region.label is RegionLabel.OUTER and len(region) == 4
    assert region.constraints[1].coeffs == (1, 0, 0, 1, 0, 1)
    mi = random_mi_table(np.random.default_rng(4))
    assert outer_region(mi).constraints[3].coeff(5) == mi.i23_1
    assert outer_region(mi).constraints[0].coeff(1) == mi.i1_23


def test_inner_rows():
    mi = random_mi_table(np.random.default_rng(5))
    region = inner_region_df(mi)
    assert region.label is RegionLabel.INNER_DF and len(region) == 5
    total = region.constraints[4]
    assert total.kind.value == "SUM"
    assert total.coeffs == (mi.i1_2, mi.i3_2, mi.i13_2, 0.0, mi.i3_1g2, mi.i1_3g2)
    assert region.constraints[0].coeff(1) == mi.i1_2
    assert region.constraints[2].coeff(2) == mi.i3_2


def test_twc_rows():
    mi = random_mi_table(np.random.default_rng(6))
    region = twc_region(mi)
    assert region.coeff_matrix().tolist() == [[mi.i1_3, 0, 0, 0, 0, 0], [0, mi.i3_1, 0, 0, 0, 0]]


def test_restrict_examples():
    mi = random_mi_table(np.random.default_rng(8))
    outer = outer_region(mi)
    assert restrict_region(outer, ALL_PHASES) == outer
    r = restrict_region(outer, {1, 2})
    assert r.label is RegionLabel.OUTER
    assert r.constraints[1].coeffs == (mi.i1_3, 0, 0, 0, 0, 0)
    empty = restrict_region(inner_region_df(mi), set())
    assert np.all(empty.coeff_matrix() == 0.0)
    with pytest.raises(ValueError):
        restrict_region(outer, {7})


def test_inner_contained_in_outer_sampled(rng):
    for _ in range(300):
        g, p, c = random_gaussian_instance(rng)
        inner = inner_region_df(df_phase_mi(g, p, c))
        outer = outer_region(ub_phase_mi(g, p, c))
        tau = random_tau(rng)
        for v in rate_polygon_vertices(inner, tau):
            assert rates_feasible(outer, tau, RatePair(*v))


def test_twc_contained_in_outer(rng):
    for _ in range(100):
        mi = random_mi_table(rng)
        t1, t2 = rng.dirichlet([1, 1]) * rng.uniform()
        tau = (t1, t2, 0, 0, 0, 0)
        for v in rate_polygon_vertices(twc_region(mi), tau):
            assert rates_feasible(outer_region(mi), tau, RatePair(*v))


def test_split_zero_rates():
    mi = random_mi_table(np.random.default_rng(9))
    split = validate_rate_split(RatePair(0, 0), (0.2,) * 5 + (0.0,), mi)
    assert split is not None and split.rates == (0.0,) * 12


def test_split_constraint_layout():
    rows = split_constraints((1 / 6,) * 6, UNIT)
    assert len(rows) == 13
    assert sorted(m for parts, _ in rows for m in parts if m <= 6) == [1, 1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 5, 6]


def test_split_rejects_sum_violation():
    mi = random_mi_table(np.random.default_rng(10))
    tau = (1 / 6,) * 6
    total = inner_region_df(mi).capacities(tau)[4]
    assert validate_rate_split(RatePair(0.6 * total, 0.6 * total), tau, mi) is None


def test_split_witness_is_valid(rng):
    for _ in range(50):
        mi = random_mi_table(rng)
        tau = random_tau(rng)
        caps = inner_region_df(mi).capacities(tau)
        extra = forwarding_cut_caps(tau, mi)
        r = RatePair(0.3 * min(caps[0], caps[1], extra[0]), 0.3 * min(caps[2], caps[3], extra[1]))
        split = validate_rate_split(r, tau, mi, margin=1e-6)
        assert split is not None
        assert split.r13 == pytest.approx(r.r13, abs=1e-7)
        assert split.r31 == pytest.approx(r.r31, abs=1e-7)
        for parts, cap in split_constraints(tau, mi):
            assert sum(split[m] for m in parts) <= cap + 1e-6 + 1e-9


def test_split_rejects_points_outside_df_region(rng):
    for _ in range(200):
        mi = random_mi_table(rng)
        tau = random_tau(rng)
        b = ray_boundary(inner_region_df(mi), tau, rng.uniform(0, math.pi / 2))
        assert validate_rate_split(RatePair(*(1.01 * b)), tau, mi) is None


def test_split_projection_is_df_region_plus_forwarding_cuts(rng):
    """Exact projection of the split polytope, traced along rays by an external LP.

    Uses Gaussian tables: arbitrary tables need not satisfy the multiple-access
    relations (e.g. i13_2 >= i1_2g3) and then carry further implied cuts.
    """
    for _ in range(200):
        mi = df_phase_mi(*random_gaussian_instance(rng))
        tau = random_tau(rng)
        theta = rng.uniform(0, math.pi / 2)
        d = np.array([math.cos(theta), math.sin(theta)])
        caps = inner_region_df(mi).capacities(tau)
        e13, e31 = forwarding_cut_caps(tau, mi)
        lim = [caps[0] / d[0], caps[1] / d[0], e13 / d[0],
               caps[2] / d[1], caps[3] / d[1], e31 / d[1], caps[4] / d.sum()]
        assert split_ray_max(tau, mi, theta) == pytest.approx(min(lim), rel=1e-9, abs=1e-12)


def test_split_decides_the_extended_region(rng):
    for _ in range(200):
        mi = df_phase_mi(*random_gaussian_instance(rng)) if rng.random() < 0.5 else random_mi_table(rng)
        tau = random_tau(rng)
        theta = rng.uniform(0, math.pi / 2)
        s = split_ray_max(tau, mi, theta)
        b = s * np.array([math.cos(theta), math.sin(theta)])
        assert validate_rate_split(RatePair(*(0.99 * b)), tau, mi) is not None
        assert validate_rate_split(RatePair(*(1.01 * b)), tau, mi) is None


def test_df_region_admits_points_the_split_rejects():
    # direct link stronger than the relay link; no forwarding time
    mi = PhaseMiTable(**{**ZERO.as_dict(), "i1_2": 1.0, "i1_3": 2.0, "i1_23": 2.0,
                         "i1_2g3": 3.0, "i13_2": 3.0})
    tau = (0.5, 0.0, 0.5, 0.0, 0.0, 0.0)
    region = inner_region_df(mi)
    # the DF rows allow R13 = 1, but every node-1 bit must pass the relay in phase 1: R13 <= 0.5
    assert rates_feasible(region, tau, RatePair(0.99, 0.0))
    assert forwarding_cut_caps(tau, mi)[0] == 0.5
    assert validate_rate_split(RatePair(0.99, 0.0), tau, mi) is None
    assert validate_rate_split(RatePair(0.49, 0.0), tau, mi) is not None


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_mirrored_table_mirrors_regions(seed):
    rng = np.random.default_rng(seed)
    mi = random_mi_table(rng)
    tau = random_tau(rng)
    swap = (tau[1], tau[0], tau[2], tau[3], tau[5], tau[4])
    for build in (inner_region_df, outer_region):
        a = sorted(build(mi).capacities(tau))
        b = sorted(build(mi.mirrored()).capacities(swap))
        np.testing.assert_allclose(a, b, rtol=1e-12)


def test_reciprocal_channel_constructor():
    g = ChannelGains.reciprocal(1.0, 2.0, 3.0)
    assert (g.h12, g.h21, g.h13, g.h31, g.h23, g.h32) == (1, 1, 2, 2, 3, 3)
