"""Model specs, keyed sampling, extreme moments, serialization."""

import math
import random
from fractions import Fraction as F

import pytest
from scipy import stats

from blockmotif import (
    Categorical,
    Geometric,
    ModelExtrema,
    ObservedMultigraph,
    Poisson,
    SbmmSpec,
    binomial_moment,
    graph_from_text,
    graph_to_text,
    model_extrema,
    moment,
    pmf_tail,
    sample_graph,
    spec_from_json,
    spec_to_json,
)
from blockmotif._rng import substream_key, uniform_from_key

PLAIN_LAWS = ((Poisson(0.8), Poisson(0.3)), (Poisson(0.3), Poisson(1.2)))


def _plain_spec(n=12):
    return SbmmSpec(n, 2, (0.6, 0.4), PLAIN_LAWS)


# -- validation -----------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        SbmmSpec(0, 1, (1.0,), ((Poisson(1.0),),))
    with pytest.raises(ValueError):
        SbmmSpec(3, 2, (1.0,), ((Poisson(1.0),),))  # f length != Q
    with pytest.raises(ValueError):
        SbmmSpec(3, 1, (0.9,), ((Poisson(1.0),),))  # mass 0.9
    with pytest.raises(ValueError):
        SbmmSpec(3, 2, (1.0, 0.0), ((Poisson(1.0), Poisson(1.0)),) * 2)  # f not positive
    with pytest.raises(ValueError):
        SbmmSpec(3, 2, (0.5, 0.5), ((Poisson(1.0),),))  # not Q x Q
    with pytest.raises(ValueError):
        SbmmSpec(
            3, 2, (0.5, 0.5),
            ((Poisson(1.0), Poisson(0.5)), (Poisson(0.6), Poisson(1.0))),
        )  # asymmetric
    with pytest.raises(TypeError):
        SbmmSpec(3, 1, (1.0,), ((0.5,),))
    with pytest.raises(ValueError):
        SbmmSpec(3, 1, (1.0,), ((Categorical((0.5, 0.5)),),), degree_weights=(1, 1, 1))
    with pytest.raises(ValueError):
        SbmmSpec(3, 1, (1.0,), ((Poisson(1.0),),), degree_weights=(1.0, -1.0, 1.0))
    with pytest.raises(ValueError):
        SbmmSpec(3, 1, (1.0,), ((Poisson(1.0),),), degree_weights=(1.0, 1.0))
    with pytest.raises(ValueError):
        SbmmSpec(3, 1, (1.0,), ((Poisson(1.0),),), self_loop_laws=())


def test_spec_preserves_exact_class_probabilities():
    spec = SbmmSpec(4, 2, (F(1, 4), F(3, 4)), ((Poisson(0.1), Poisson(0.1)),) * 2)
    assert spec.f == (F(1, 4), F(3, 4))
    assert isinstance(spec.f[0], F)


def test_observed_multigraph_normalizes_and_drops_zeros():
    g = ObservedMultigraph(4, {(2, 1): 3, (0, 3): 0}, {1: 2, 2: 0})
    assert g.edge_counts == {(1, 2): 3}
    assert g.self_loop_counts == {1: 2}
    with pytest.raises(ValueError):
        ObservedMultigraph(3, {(1, 1): 1})
    with pytest.raises(ValueError):
        ObservedMultigraph(3, {(0, 3): 1})
    with pytest.raises(ValueError):
        ObservedMultigraph(3, {(0, 1): -2})


# -- sampling --------------------------------------------------------------------


def test_sampling_is_deterministic_and_seed_sensitive():
    spec = _plain_spec()
    assert sample_graph(spec, 42) == sample_graph(spec, 42)
    assert sample_graph(spec, 42) != sample_graph(spec, 43)


def test_unit_degree_weights_match_plain_poisson_sampling():
    plain = _plain_spec()
    corrected = SbmmSpec(12, 2, (0.6, 0.4), PLAIN_LAWS, degree_weights=(1.0,) * 12)
    for seed in range(5):
        assert sample_graph(plain, seed) == sample_graph(corrected, seed)


def test_sample_matches_per_key_scalar_oracle():
    # independent scalar re-derivation of the keyed inversion sampler
    spec = SbmmSpec(
        7, 2, (0.35, 0.65),
        ((Categorical((0.6, 0.3, 0.1)), Poisson(0.9)),
         (Poisson(0.9), Categorical((0.2, 0.5, 0.3)))),
        self_loop_laws=(Categorical((0.7, 0.3)), Categorical((0.9, 0.1))),
    )
    seed = 2024
    got = sample_graph(spec, seed)

    def classify(i):
        u = uniform_from_key(substream_key(seed, 0, i + 1))
        cdf = 0.0
        for a, fa in enumerate(spec.f):
            cdf += fa
            if u < cdf:
                return a
        return spec.Q - 1

    def invert(law, u):
        if isinstance(law, Categorical):
            cdf = 0.0
            for k, p in enumerate(law.probabilities):
                cdf += float(p)
                if u < cdf:
                    return k
            return len(law.probabilities) - 1
        # Poisson: smallest k with CDF(k) >= u, same forward stepping
        pmf = math.exp(-law.rate)
        cdf = pmf
        k = 0
        while cdf < u and pmf > 0.0:
            k += 1
            pmf *= law.rate / k
            cdf += pmf
        return k

    classes = tuple(classify(i) for i in range(7))
    assert got.classes == classes
    edges = {}
    for i in range(7):
        for j in range(i + 1, 7):
            u = uniform_from_key(substream_key(seed, i + 1, j + 1))
            a, b = sorted((classes[i], classes[j]))
            y = invert(spec.edge_laws[a][b], u)
            if y:
                edges[(i, j)] = y
    assert got.edge_counts == edges
    loops = {}
    for i in range(7):
        u = uniform_from_key(substream_key(seed, i + 1, i + 1))
        s = invert(spec.self_loop_laws[classes[i]], u)
        if s:
            loops[i] = s
    assert got.self_loop_counts == loops


def test_class_frequencies_match_f():
    spec = SbmmSpec(400, 3, (0.2, 0.3, 0.5), ((Poisson(0.1),) * 3,) * 3)
    counts = [0, 0, 0]
    for seed in range(50):
        for c in sample_graph(spec, seed).classes:
            counts[c] += 1
    total = sum(counts)
    res = stats.chisquare(counts, [f * total for f in spec.f])
    assert res.pvalue > 1e-3, (counts, res)


@pytest.mark.parametrize(
    "law",
    [Poisson(0.7), Geometric(0.45), Categorical((0.5, 0.3, 0.15, 0.05))],
)
def test_pair_counts_follow_the_law(law):
    spec = SbmmSpec(40, 1, (1.0,), ((law,),))
    hist = {}
    draws = 0
    for seed in range(40):
        g = sample_graph(spec, seed)
        draws += 40 * 39 // 2
        for y in g.edge_counts.values():
            hist[y] = hist.get(y, 0) + 1
    hist[0] = draws - sum(hist.values())
    kmax = max(hist)
    observed, expected = [], []
    tail_obs = tail_exp = 0.0
    for k in range(kmax + 1):
        pk = pmf_tail(law, k)[0] * draws
        if pk < 10:  # pool sparse cells for the chi-square approximation
            tail_obs += hist.get(k, 0)
            tail_exp += pk
        else:
            observed.append(hist.get(k, 0))
            expected.append(pk)
    tail_exp += pmf_tail(law, kmax + 1)[1] * draws
    if tail_exp > 0:
        observed.append(tail_obs)
        expected.append(tail_exp)
    else:
        assert tail_obs == 0  # draws outside the law's support
    res = stats.chisquare(observed, expected)
    assert res.pvalue > 1e-3, (observed, expected, res)


def test_degree_corrected_rates_scale_pair_means():
    theta = (0.25,) * 20 + (2.0,) * 20
    spec = SbmmSpec(40, 1, (1.0,), ((Poisson(0.5),),), degree_weights=theta)
    sums = {"ll": 0.0, "hl": 0.0, "hh": 0.0}
    draws = {"ll": 0, "hl": 0, "hh": 0}
    for seed in range(120):
        g = sample_graph(spec, seed)
        counts = dict(g.edge_counts)
        for i in range(40):
            for j in range(i + 1, 40):
                band = ("l" if theta[i] < 1 else "h") + ("l" if theta[j] < 1 else "h")
                band = "".join(sorted(band))
                sums[band] += counts.get((i, j), 0)
                draws[band] += 1
    means = {b: sums[b] / draws[b] for b in sums}
    assert means["ll"] == pytest.approx(0.25 * 0.25 * 0.5, rel=0.1)
    assert means["hl"] == pytest.approx(0.25 * 2.0 * 0.5, rel=0.05)
    assert means["hh"] == pytest.approx(2.0 * 2.0 * 0.5, rel=0.05)


# -- extreme moments ---------------------------------------------------------------


def test_model_extrema_takes_maxima_over_class_pairs():
    from blockmotif import pattern_from_name

    tri = pattern_from_name("triangle")
    spec = _plain_spec()
    ext = model_extrema(spec, tri)
    assert ext.mu1_star == 1.2
    assert ext.omega_star == 1.2
    assert ext.inhom_max == 1.2
    assert ext.mu_star == tuple(
        max(moment(law, k) for law in (Poisson(0.8), Poisson(0.3), Poisson(1.2)))
        for k in (1, 2)
    )
    assert ext.mu_dstar == (1.2,)
    assert ext.psi == max(2 * ext.mu_star[1], 1.2)
    assert ext.q2_star == pytest.approx(1 - (1 + 1.2) * math.exp(-1.2), abs=1e-15)
    assert ext.phi_star is None


def test_model_extrema_multigraph_pattern_orders():
    from blockmotif import PatternGraph

    dt = PatternGraph(3, {(0, 1): 2, (0, 2): 1, (1, 2): 1})
    law = Categorical((0.8, 0.15, 0.05))
    spec = SbmmSpec(10, 1, (1.0,), ((law,),))
    ext = model_extrema(spec, dt)
    # t = 2: raw moments up to 2t = 4, binomial moments up to t = 2
    assert len(ext.mu_star) == 4 and len(ext.mu_dstar) == 2
    assert ext.psi == max(2 * moment(law, 4), binomial_moment(law, 1), binomial_moment(law, 2))
    assert ext.omega_star is None  # not a Poisson model


def test_model_extrema_self_loops_and_degree_weights():
    from blockmotif import pattern_from_name

    tri = pattern_from_name("triangle")
    spec = SbmmSpec(
        6, 1, (1.0,), ((Poisson(0.3),),),
        self_loop_laws=(Geometric(0.25),),
    )
    ext = model_extrema(spec, tri)
    assert ext.phi_star == pytest.approx(0.25 / 0.75, rel=1e-12)

    dc = SbmmSpec(6, 1, (1.0,), ((Poisson(0.3),),), degree_weights=(3.0, 1.0, 2.0, 1.0, 1.0, 0.5))
    ext = model_extrema(dc, tri)
    assert ext.inhom_max == pytest.approx(3.0 * 2.0 * 0.3, rel=1e-12)


# -- serialization ------------------------------------------------------------------


def test_spec_json_round_trip():
    specs = [
        _plain_spec(),
        SbmmSpec(5, 1, (1.0,), ((Geometric(0.2),),), self_loop_laws=(Poisson(0.1),)),
        SbmmSpec(4, 1, (1.0,), ((Poisson(0.5),),), degree_weights=(1.0, 2.0, 0.5, 1.5)),
    ]
    for spec in specs:
        assert spec_from_json(spec_to_json(spec)) == spec


def test_graph_text_round_trip_keeps_isolated_vertices_and_classes():
    g = ObservedMultigraph(5, {(0, 2): 2, (1, 2): 1}, {3: 1}, classes=(0, 1, 0, 1, 0))
    text = graph_to_text(g)
    assert text.splitlines()[0] == "# n 5"
    assert "# classes 0 1 0 1 0" in text
    assert graph_from_text(text) == g

    bare = graph_from_text("0 1 2\n2 3 1\n")
    assert bare.n == 4 and bare.classes is None


def test_graph_text_rejects_duplicates_and_garbage():
    with pytest.raises(ValueError):
        graph_from_text("0 1 1\n1 0 2\n")
    with pytest.raises(ValueError):
        graph_from_text("0 1\n")
    with pytest.raises(ValueError):
        graph_from_text("")
