"""Exact enumeration and Monte Carlo validation of pattern-count laws,
the total-variation metric, and the experiment runner's report."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockmotif import (
    Categorical,
    InfeasibleError,
    PatternGraph,
    Poisson,
    PreconditionError,
    SbmmSpec,
    dumps_stable,
    exact_count_pmf,
    expected_count,
    monte_carlo_pmf,
    parse_experiment_config,
    pattern_to_json,
    run_experiment,
    spec_to_json,
    tv_distance,
)

TRIANGLE = PatternGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
LOOP_TRIANGLE = PatternGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1}, {0: 1})


def bernoulli(p):
    return Categorical([1 - p, p])


def one_class_spec(n, law, loop_law=None):
    loops = None if loop_law is None else (loop_law,)
    return SbmmSpec(n, 1, (1.0,), ((law,),), self_loop_laws=loops)


# -- exact enumeration ---------------------------------------------------------


def test_exact_triangle_pmf_on_three_vertices():
    p = 0.3
    pmf = exact_count_pmf(one_class_spec(3, bernoulli(p)), TRIANGLE)
    assert set(pmf) == {0, 1}
    assert pmf[1] == pytest.approx(p**3, rel=1e-12)
    assert pmf[0] == pytest.approx(1 - p**3, rel=1e-12)


def _triangle_pmf_oracle(n, p):
    """Enumerate all edge subsets of the complete graph directly."""
    pairs = list(combinations(range(n), 2))
    triples = list(combinations(range(n), 3))
    pmf = {}
    for mask in range(2 ** len(pairs)):
        present = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        w = sum(
            1
            for a, b, c in triples
            if (a, b) in present and (a, c) in present and (b, c) in present
        )
        prob = p ** len(present) * (1 - p) ** (len(pairs) - len(present))
        pmf[w] = pmf.get(w, 0.0) + prob
    return pmf


def test_exact_triangle_pmf_matches_subset_enumeration_oracle():
    p = 0.35
    got = exact_count_pmf(one_class_spec(4, bernoulli(p)), TRIANGLE)
    oracle = _triangle_pmf_oracle(4, p)
    assert set(got) == {k for k, prob in oracle.items() if prob > 0}
    for k, prob in got.items():
        assert prob == pytest.approx(oracle[k], abs=1e-14)
    # three triangles on four vertices are impossible
    assert 3 not in got
    mean = sum(k * prob for k, prob in got.items())
    assert mean == pytest.approx(4 * p**3, rel=1e-12)
    assert mean == pytest.approx(expected_count(one_class_spec(4, bernoulli(p)), TRIANGLE))


def test_exact_pmf_of_doubled_pairs_lives_on_multiples_of_eight():
    # pair counts 0 or 2: every triangle-supporting triple carries 2^3 copies
    doubled = one_class_spec(4, Categorical([0.9, 0.0, 0.1]))
    base = exact_count_pmf(one_class_spec(4, bernoulli(0.1)), TRIANGLE)
    got = exact_count_pmf(doubled, TRIANGLE)
    assert set(got) == {8 * k for k in base}
    for k, prob in base.items():
        assert got[8 * k] == pytest.approx(prob, abs=1e-14)


def test_exact_pmf_with_self_loops():
    p, q = 0.4, 0.25
    spec = one_class_spec(3, bernoulli(p), loop_law=bernoulli(q))
    pmf = exact_count_pmf(spec, LOOP_TRIANGLE)
    # copies = (all three pairs present) * (number of looped vertices)
    for j in (1, 2, 3):
        expect = p**3 * math.comb(3, j) * q**j * (1 - q) ** (3 - j)
        assert pmf[j] == pytest.approx(expect, rel=1e-12)
    assert pmf[0] == pytest.approx(1 - p**3 * (1 - (1 - q) ** 3), rel=1e-12)


def test_exact_pmf_two_class_mean_identity():
    f = (0.25, 0.75)
    laws = (
        (bernoulli(0.5), bernoulli(0.2)),
        (bernoulli(0.2), bernoulli(0.35)),
    )
    spec = SbmmSpec(4, 2, f, laws)
    pmf = exact_count_pmf(spec, TRIANGLE)
    assert math.fsum(pmf.values()) == pytest.approx(1.0, abs=1e-12)
    mean = sum(k * prob for k, prob in pmf.items())
    assert mean == pytest.approx(expected_count(spec, TRIANGLE), rel=1e-10)


def test_exact_pmf_loop_pattern_without_loop_laws_is_trivial():
    pmf = exact_count_pmf(one_class_spec(4, bernoulli(0.3)), LOOP_TRIANGLE)
    assert pmf == {0: 1.0}


def test_exact_pmf_preconditions():
    with pytest.raises(PreconditionError, match="categorical"):
        exact_count_pmf(one_class_spec(4, Poisson(0.3)), TRIANGLE)
    with pytest.raises(PreconditionError, match="categorical self-loop"):
        exact_count_pmf(
            one_class_spec(3, bernoulli(0.3), loop_law=Poisson(0.1)), LOOP_TRIANGLE
        )
    dc = SbmmSpec(4, 1, (1.0,), ((Poisson(0.3),),), degree_weights=(1.0,) * 4)
    with pytest.raises(PreconditionError, match="degree weights"):
        exact_count_pmf(dc, TRIANGLE)
    with pytest.raises(PreconditionError, match="vertices"):
        exact_count_pmf(one_class_spec(2, bernoulli(0.3)), TRIANGLE)


def test_exact_pmf_size_guard():
    with pytest.raises(InfeasibleError):
        exact_count_pmf(one_class_spec(12, bernoulli(0.3)), TRIANGLE)


# -- Monte Carlo ---------------------------------------------------------------


def test_monte_carlo_is_deterministic_and_seed_sensitive():
    spec = one_class_spec(4, bernoulli(0.35))
    pmf1, hist1 = monte_carlo_pmf(spec, TRIANGLE, 800, 77)
    pmf2, hist2 = monte_carlo_pmf(spec, TRIANGLE, 800, 77)
    assert pmf1 == pmf2 and hist1 == hist2
    assert sum(hist1.values()) == 800
    assert math.fsum(pmf1.values()) == pytest.approx(1.0, abs=1e-12)
    pmf3, _ = monte_carlo_pmf(spec, TRIANGLE, 800, 78)
    assert pmf1 != pmf3


def test_monte_carlo_agrees_with_exact_law():
    spec = one_class_spec(4, bernoulli(0.35))
    exact = exact_count_pmf(spec, TRIANGLE)
    reps = 4000
    emp, _ = monte_carlo_pmf(spec, TRIANGLE, reps, 77)
    for k in set(exact) | set(emp):
        pk = exact.get(k, 0.0)
        sigma = math.sqrt(pk * (1 - pk) / reps)
        assert abs(emp.get(k, 0.0) - pk) <= 4 * sigma + 1e-12, (k, pk, emp.get(k))


def test_monte_carlo_rejects_nonpositive_reps():
    spec = one_class_spec(4, bernoulli(0.35))
    with pytest.raises(ValueError):
        monte_carlo_pmf(spec, TRIANGLE, 0, 1)


# -- total-variation distance --------------------------------------------------


def test_tv_distance_basic_values():
    assert tv_distance({0: 1.0}, {0: 1.0}) == 0.0
    assert tv_distance({0: 0.5, 1: 0.5}, {0: 1.0}) == pytest.approx(0.5)
    assert tv_distance({0: 1.0}, {1: 1.0}) == pytest.approx(1.0)
    assert tv_distance({0: 0.25, 2: 0.75}, {0: 0.75, 2: 0.25}) == pytest.approx(0.5)


def test_tv_distance_counts_mass_deficits():
    # p is missing 0.4 of its mass: that sits on atoms q cannot match
    assert tv_distance({0: 0.6}, {0: 1.0}) == pytest.approx(0.4)
    assert tv_distance({0: 0.6}, {0: 0.6}) == 0.0
    assert tv_distance({}, {0: 1.0}) == pytest.approx(1.0)


def test_tv_distance_rejects_negative_mass():
    with pytest.raises(ValueError, match="negative mass in q"):
        tv_distance({0: 1.0}, {0: -0.1})
    with pytest.raises(ValueError, match="negative mass in p"):
        tv_distance({3: -1e-9}, {0: 1.0})


small_pmfs = st.dictionaries(
    st.integers(0, 5),
    st.floats(0.0, 1.0, allow_nan=False),
    max_size=4,
).map(
    lambda d: (
        {k: v / s for k, v in d.items()} if (s := sum(d.values())) > 1 else d
    )
)


@settings(max_examples=200, deadline=None)
@given(small_pmfs, small_pmfs, small_pmfs)
def test_tv_distance_is_a_metric(p, q, r):
    assert tv_distance(p, q) >= 0
    assert tv_distance(p, q) == pytest.approx(tv_distance(q, p), abs=1e-12)
    assert tv_distance(p, p) == 0.0
    assert tv_distance(p, q) <= tv_distance(p, r) + tv_distance(r, q) + 1e-12
    assert tv_distance(p, q) <= 1.0 + 1e-12


# -- experiment config ---------------------------------------------------------


def test_parse_config_defaults_and_routes():
    spec = one_class_spec(4, bernoulli(0.35))
    cfg = parse_experiment_config(
        {"spec": spec, "pattern": "triangle", "variant": "thm31_simple"}
    )
    assert cfg["mode"] == "exact"
    assert cfg["eps"] == 1e-10
    assert cfg["pattern"] == TRIANGLE
    assert cfg["spec"] is spec
    # spec and pattern also arrive as JSON payloads
    cfg2 = parse_experiment_config(
        {
            "spec": spec_to_json(spec),
            "pattern": pattern_to_json(TRIANGLE),
            "variant": "thm31_simple",
        }
    )
    assert cfg2["pattern"] == TRIANGLE
    assert cfg2["spec"].n == 4 and cfg2["spec"].Q == 1


def test_parse_config_rejects_bad_modes_and_missing_reps():
    spec = one_class_spec(4, bernoulli(0.35))
    with pytest.raises(ValueError, match="unknown mode"):
        parse_experiment_config(
            {"spec": spec, "pattern": "triangle", "variant": "x", "mode": "approx"}
        )
    with pytest.raises(ValueError, match="reps"):
        parse_experiment_config(
            {"spec": spec, "pattern": "triangle", "variant": "x", "mode": "monte_carlo"}
        )


# -- the experiment runner -----------------------------------------------------


def test_exact_experiment_report_shape_and_comparison():
    spec = one_class_spec(4, bernoulli(0.35))
    report = run_experiment(
        {"spec": spec, "pattern": TRIANGLE, "variant": "thm31_simple", "mode": "exact"}
    )
    assert sorted(report) == [
        "bound",
        "clump_rates",
        "comparison",
        "config",
        "extrema",
        "nu",
        "observed",
        "profile",
        "reference",
    ]
    assert report["config"]["reps"] is None and report["config"]["seed"] is None
    assert report["profile"]["strictly_balanced"] is True
    assert report["profile"]["density"] == "1"
    assert report["nu"] == pytest.approx(4 * 0.35**3, rel=1e-12)
    assert report["reference"]["kind"] == "compound_poisson"
    assert report["reference"]["truncation_deficit"] <= 1e-12
    assert report["bound"]["variant"] == "thm31_simple"
    assert report["bound"]["value"] == report["comparison"]["bound_value"]
    assert report["comparison"]["mc_allowance"] == 0.0
    # exact observation: measured distance must clear the bound on its own
    assert report["comparison"]["tv_distance"] <= report["comparison"]["bound_value"]
    assert report["comparison"]["pass"] is True
    obs = dict((k, p) for k, p in report["observed"]["pmf"])
    exact = exact_count_pmf(spec, TRIANGLE)
    assert obs == pytest.approx(exact)


def test_support_gcd_reveals_clump_granularity():
    doubled = one_class_spec(4, Categorical([0.9, 0.0, 0.1]))
    report = run_experiment(
        {"spec": doubled, "pattern": TRIANGLE, "variant": "thm41_multi", "mode": "exact"}
    )
    assert report["observed"]["support_gcd"] == 8
    assert report["clump_rates"]["imax"] == 8


def test_poisson_variants_use_poisson_reference():
    spec = one_class_spec(4, bernoulli(0.35))
    report = run_experiment(
        {
            "spec": spec,
            "pattern": TRIANGLE,
            "variant": "thm52_poisson_approx",
            "mode": "monte_carlo",
            "reps": 500,
            "seed": 5,
        }
    )
    assert report["reference"]["kind"] == "poisson"
    assert report["config"]["reps"] == 500 and report["config"]["seed"] == 5
    obs_keys = {k for k, _ in report["observed"]["pmf"]}
    ref_keys = {k for k, _ in report["reference"]["pmf"]}
    atoms = len(obs_keys | ref_keys)
    expect = math.sqrt(atoms / (4 * 500)) + report["reference"]["truncation_deficit"]
    assert report["comparison"]["mc_allowance"] == pytest.approx(expect, rel=1e-12)


def test_reference_support_covers_observation():
    spec = one_class_spec(5, bernoulli(0.5))
    report = run_experiment(
        {"spec": spec, "pattern": TRIANGLE, "variant": "thm31_simple", "mode": "exact"}
    )
    max_obs = max(k for k, _ in report["observed"]["pmf"])
    assert report["reference"]["kmax"] >= max_obs


def test_experiment_reports_are_byte_stable():
    spec = one_class_spec(4, bernoulli(0.35))
    config = {
        "spec": spec,
        "pattern": TRIANGLE,
        "variant": "thm52_poisson_approx",
        "mode": "monte_carlo",
        "reps": 300,
        "seed": 9,
    }
    assert dumps_stable(run_experiment(config)) == dumps_stable(run_experiment(config))
