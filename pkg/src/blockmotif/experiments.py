"""Empirical validation: exact and simulated laws of the pattern count.

Two routes to the distribution of the copy count W:

* ``exact_count_pmf`` enumerates every class assignment and every edge
  configuration of a small finite-support model and accumulates the exact
  law of W;
* ``monte_carlo_pmf`` samples whole graphs (one keyed substream per
  replicate) and counts copies in each.

``run_experiment`` glues these to the approximation module: it computes the
structural profile, model extrema, clump rates, the requested
total-variation bound, the reference law (compound Poisson, or plain
Poisson for the Poisson-limit variants), the measured total-variation
distance, and a pass/fail comparison including a Monte Carlo error
allowance of ``sqrt(atoms / (4 reps))`` (a Cauchy-Schwarz bound on the
expected estimation error, over the union of compared supports) plus the
reference law's truncation deficit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from ._rng import substream_key
from .approximation import (
    CompoundPoissonParams,
    InfeasibleError,
    PreconditionError,
    cp_pmf,
    expected_count,
    lambda_params,
    tv_bound,
)
from .counting import count_copies
from .distributions import Categorical
from .model import (
    ObservedMultigraph,
    SbmmSpec,
    model_extrema,
    sample_graph,
    spec_from_json,
    spec_to_json,
)
from .patterns import (
    PatternGraph,
    balancedness_profile,
    pattern_from_json,
    pattern_from_name,
    pattern_to_json,
)

__all__ = [
    "exact_count_pmf",
    "monte_carlo_pmf",
    "tv_distance",
    "parse_experiment_config",
    "run_experiment",
]

EXACT_ENUMERATION_LIMIT = 10**8


def exact_count_pmf(spec: SbmmSpec, pattern: PatternGraph) -> dict[int, float]:
    """Exact law of the copy count W by full enumeration.

    Requires categorical (finite-support) edge laws, no degree weights, and
    a feasible enumeration size; self-loop slots are enumerated only when
    the pattern actually has self-loops.
    """
    if spec.degree_weights is not None:
        raise PreconditionError(
            "exact enumeration requires identically distributed pair counts, "
            "but the model has degree weights"
        )
    for law in spec.distinct_laws():
        if not isinstance(law, Categorical):
            raise PreconditionError("exact enumeration requires categorical edge laws")
    n, Q = spec.n, spec.Q
    v = pattern.vertex_count
    if v > n:
        raise PreconditionError(f"pattern has {v} vertices but the model only {n}")

    with_loops = bool(pattern.self_loops)
    if with_loops and spec.self_loop_laws is None:
        return {0: 1.0}
    if with_loops:
        for law in spec.self_loop_laws:
            if not isinstance(law, Categorical):
                raise PreconditionError(
                    "exact enumeration requires categorical self-loop laws"
                )

    n_pairs = n * (n - 1) // 2
    max_support = max(len(law.probabilities) for law in spec.distinct_laws())
    size = Q**n * max_support**n_pairs
    if with_loops:
        size *= max(len(law.probabilities) for law in spec.self_loop_laws) ** n
    if size > EXACT_ENUMERATION_LIMIT:
        raise InfeasibleError(
            f"exact enumeration needs up to {size} configurations "
            f"(limit {EXACT_ENUMERATION_LIMIT})"
        )

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count_cache: dict[tuple, int] = {}
    pmf: dict[int, float] = {}

    def copies_of(config: tuple) -> int:
        w = count_cache.get(config)
        if w is None:
            edge_counts = {pairs[k]: c for k, c in enumerate(config[:n_pairs]) if c}
            loop_counts = (
                {i: c for i, c in enumerate(config[n_pairs:]) if c} if with_loops else {}
            )
            w = count_copies(ObservedMultigraph(n, edge_counts, loop_counts), pattern)
            count_cache[config] = w
        return w

    for assign in product(range(Q), repeat=n):
        prob0 = 1.0
        for c in assign:
            prob0 *= spec.f[c]
        tables = [
            tuple(float(p) for p in spec.edge_laws[assign[i]][assign[j]].probabilities)
            for i, j in pairs
        ]
        if with_loops:
            tables.extend(
                tuple(float(p) for p in spec.self_loop_laws[assign[i]].probabilities)
                for i in range(n)
            )
        config = [0] * len(tables)

        def walk(idx: int, prob: float) -> None:
            if prob == 0.0:
                return
            if idx == len(tables):
                w = copies_of(tuple(config))
                pmf[w] = pmf.get(w, 0.0) + prob
            else:
                for val, p in enumerate(tables[idx]):
                    config[idx] = val
                    walk(idx + 1, prob * p)

        walk(0, prob0)

    total = math.fsum(pmf.values())
    assert abs(total - 1.0) <= 1e-10, f"enumerated probabilities sum to {total}"
    return dict(sorted(pmf.items()))


def monte_carlo_pmf(
    spec: SbmmSpec, pattern: PatternGraph, reps: int, seed: int
) -> tuple[dict[int, float], dict[int, int]]:
    """Empirical law of W over ``reps`` independent sampled graphs.

    Replicate r uses the substream keyed (seed, r), so the result does not
    depend on evaluation order or worker count.  Returns the empirical pmf
    and the exact integer histogram.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    hist: dict[int, int] = {}
    for r in range(reps):
        graph = sample_graph(spec, substream_key(seed, r))
        w = count_copies(graph, pattern)
        hist[w] = hist.get(w, 0) + 1
    hist = dict(sorted(hist.items()))
    pmf = {w: c / reps for w, c in hist.items()}
    return pmf, hist


def tv_distance(p: dict, q: dict) -> float:
    """Total-variation distance between two sub-probability mass functions.

    Any mass deficit (totals below 1) is treated as sitting on an atom the
    other law cannot share, contributing half the deficit difference.
    """
    for name, mapping in (("p", p), ("q", q)):
        for k, prob in mapping.items():
            if prob < 0:
                raise ValueError(f"negative mass in {name} at {k}: {prob}")
    support = set(p) | set(q)
    core = 0.5 * math.fsum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in support)
    deficit_p = max(0.0, 1.0 - math.fsum(p.values()))
    deficit_q = max(0.0, 1.0 - math.fsum(q.values()))
    return core + 0.5 * abs(deficit_p - deficit_q)


def _profile_json(pattern: PatternGraph) -> dict:
    prof = balancedness_profile(pattern)

    def frac(x: Fraction | None):
        return None if x is None else str(x)

    return {
        "density": frac(prof.density),
        "pseudo_density": frac(prof.pseudo_density),
        "alpha": frac(prof.alpha),
        "gamma": frac(prof.gamma),
        "alpha_m": frac(prof.alpha_m),
        "gamma_m": frac(prof.gamma_m),
        "strictly_balanced": prof.strictly_balanced,
        "strictly_pseudo_balanced": prof.strictly_pseudo_balanced,
    }


def _extrema_json(spec: SbmmSpec, pattern: PatternGraph) -> dict:
    ext = model_extrema(spec, pattern)
    out = {
        "mu1_star": ext.mu1_star,
        "mu_star": list(ext.mu_star),
        "mu_dstar": list(ext.mu_dstar),
        "psi": ext.psi,
        "q2_star": ext.q2_star,
        "inhom_max": ext.inhom_max,
    }
    if ext.phi_star is not None:
        out["phi_star"] = ext.phi_star
    if ext.omega_star is not None:
        out["omega_star"] = ext.omega_star
    return out


def _reference_pmf(params_or_nu, min_support: int) -> tuple[list[float], str]:
    """Reference law as P(0..kmax): CP(clump rates) or Poisson(nu).

    ``kmax`` grows until the cumulative mass reaches 1 - 1e-12 (capped) and
    covers ``min_support``.
    """
    if isinstance(params_or_nu, CompoundPoissonParams):
        params, kind = params_or_nu, "compound_poisson"
    else:
        params = CompoundPoissonParams(
            lam=(float(params_or_nu),), imax=1, truncation_mass=0.0,
            total=float(params_or_nu),
        )
        kind = "poisson"
    kmax = max(min_support, 64)
    while True:
        pmf = cp_pmf(params, kmax)
        if 1.0 - math.fsum(pmf) <= 1e-12 or kmax >= 100_000:
            return pmf, kind
        kmax = min(kmax * 4, 100_000)


def parse_experiment_config(config: dict) -> dict:
    """Normalize an experiment config: build spec/pattern, fill defaults."""
    spec = (
        config["spec"]
        if isinstance(config["spec"], SbmmSpec)
        else spec_from_json(config["spec"])
    )
    raw_pattern = config["pattern"]
    if isinstance(raw_pattern, PatternGraph):
        pattern = raw_pattern
    elif isinstance(raw_pattern, str):
        pattern = pattern_from_name(raw_pattern)
    else:
        pattern = pattern_from_json(raw_pattern)
    mode = config.get("mode", "exact")
    if mode not in ("exact", "monte_carlo"):
        raise ValueError(f"unknown mode {mode!r}")
    out = {
        "spec": spec,
        "pattern": pattern,
        "variant": config["variant"],
        "mode": mode,
        "reps": int(config.get("reps", 0) or 0),
        "seed": int(config.get("seed", 0) or 0),
        "eps": float(config.get("eps", 1e-10)),
        "c_override": config.get("c_override"),
        "regime_c": config.get("regime_c"),
        "regime_C": config.get("regime_C"),
    }
    if mode == "monte_carlo" and out["reps"] < 1:
        raise ValueError("monte_carlo mode needs reps >= 1")
    return out


def run_experiment(config: dict) -> dict:
    """Run one validation experiment and return the JSON-ready report.

    The report carries the pattern profile, model extrema, mean count,
    clump rates, CP pmf, the bound with its ingredients, the observed
    (exact or empirical) pmf, the measured total-variation distance, and
    the pass flag for "measured distance <= bound (+ allowance)".
    """
    cfg = parse_experiment_config(config)
    spec, pattern = cfg["spec"], cfg["pattern"]
    variant, mode = cfg["variant"], cfg["mode"]

    bound = tv_bound(
        spec,
        pattern,
        variant,
        c_override=cfg["c_override"],
        eps=cfg["eps"],
        regime_c=cfg["regime_c"],
        regime_C=cfg["regime_C"],
    )
    nu = expected_count(spec, pattern)
    params = lambda_params(spec, pattern, cfg["eps"])

    if mode == "exact":
        observed = exact_count_pmf(spec, pattern)
        reps_used = None
    else:
        observed, hist = monte_carlo_pmf(spec, pattern, cfg["reps"], cfg["seed"])
        reps_used = cfg["reps"]

    max_support = max(observed, default=0)
    poisson_reference = bound.variant in ("thm52_poisson_approx", "cor55_poisson_sbm")
    ref_pmf, ref_kind = _reference_pmf(nu if poisson_reference else params, max_support)
    reference = {k: p for k, p in enumerate(ref_pmf) if p > 0.0}
    ref_deficit = max(0.0, 1.0 - math.fsum(ref_pmf))

    distance = tv_distance(observed, reference)
    if mode == "exact":
        allowance = 0.0
    else:
        atoms = len(set(observed) | set(reference))
        allowance = math.sqrt(atoms / (4.0 * reps_used)) + ref_deficit
    passed = bool(distance <= bound.value + allowance)

    positive = [w for w in observed if w > 0]
    support_gcd = math.gcd(*positive) if positive else 0

    cp_total = float(params.total)
    return {
        "config": {
            "spec": spec_to_json(spec),
            "pattern": pattern_to_json(pattern),
            "variant": variant,
            "mode": mode,
            "reps": reps_used,
            "seed": cfg["seed"] if mode == "monte_carlo" else None,
            "eps": cfg["eps"],
        },
        "profile": _profile_json(pattern),
        "extrema": _extrema_json(spec, pattern),
        "nu": nu,
        "clump_rates": {
            "lambda": [float(x) for x in params.lam],
            "imax": params.imax,
            "truncation_mass": params.truncation_mass,
            "total": cp_total,
        },
        "bound": {
            "variant": bound.variant,
            "value": bound.value,
            "ingredients": bound.ingredients,
        },
        "reference": {
            "kind": ref_kind,
            "kmax": len(ref_pmf) - 1,
            "truncation_deficit": ref_deficit,
            "pmf": [[int(k), float(p)] for k, p in sorted(reference.items())],
        },
        "observed": {
            "mode": mode,
            "pmf": [[int(k), float(p)] for k, p in sorted(observed.items())],
            "support_gcd": support_gcd,
        },
        "comparison": {
            "tv_distance": distance,
            "bound_value": bound.value,
            "mc_allowance": allowance,
            "pass": passed,
        },
    }
