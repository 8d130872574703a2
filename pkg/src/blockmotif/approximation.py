"""Compound-Poisson approximation of pattern counts, with error bounds.

The total pattern count W is a sum, over vertex sets and placements, of
copy counts that cluster: all copies sharing one vertex set succeed or fail
together, in "clumps".  W is therefore approximated by a compound Poisson
law CP(lambda) in which lambda_i is the expected number of vertex sets
carrying exactly i copies.

How the clump rates are computed
--------------------------------
For one fixed set S of v pattern-many vertices, let Z be the number of
copies of the pattern supported on exactly S.  Summing the copy indicators
over the placements on S and conditioning on clump size i gives
``E[Z * 1(Z = i)] = i * P(Z = i)``, so the expected number of size-i clumps
contributed by S is ``P(Z = i)``; multiplying by the number of vertex sets
(all sets are exchangeable) yields

    lambda_i = C(n, v) * P(Z = i).

``lambda_params`` evaluates P(Z = i) exactly by enumerating class
assignments of S and all edge configurations on its pairs (and self-loop
slots), truncating each infinite-support law at a certified tail threshold
and reporting the neglected mass.

The total-variation error bounds come in seven variants (named in
``tv_bound``), each a closed form in the pattern's structural exponents and
the model's extreme moments.  The multiplicative constant ``c(lambda)`` is
taken from its generic upper bound ``exp(lambda) * min(1, 1/lambda_1)``
unless overridden, and the Poisson-limit variants use the sharper factor
``(1 - exp(-nu)) / nu`` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .counting import clump_size
from .distributions import (
    Categorical,
    Geometric,
    Poisson,
    binomial_moment,
    moment,
    pmf_tail,
    truncation_bound,
)
from .model import ModelExtrema, SbmmSpec, model_extrema
from .patterns import PatternGraph, balancedness_profile, kappa, rho

__all__ = [
    "CompoundPoissonParams",
    "BoundReport",
    "PreconditionError",
    "InfeasibleError",
    "BOUND_VARIANTS",
    "occurrence_mean",
    "expected_count",
    "lambda_params",
    "cp_pmf",
    "c_lambda_upper",
    "poisson_c_factor",
    "poisson_tail_q2",
    "tv_bound",
]

BOUND_VARIANTS = (
    "thm31_simple",
    "cor35_inhom",
    "thm41_multi",
    "thm51_selfloop",
    "thm52_poisson_approx",
    "cor55_poisson_sbm",
    "regime_corpn",
)


class PreconditionError(ValueError):
    """A bound variant's hypothesis fails for this (model, pattern) input."""


class InfeasibleError(ValueError):
    """An exact enumeration would exceed the configured size limit."""


@dataclass(frozen=True)
class CompoundPoissonParams:
    """Clump rates lambda_1..lambda_imax of a compound Poisson law.

    ``truncation_mass`` certifies an upper bound on the total rate beyond
    ``imax`` that the truncated enumeration may have missed; ``total`` is
    the enumerated ``sum(lam)``.  Entries are floats on the default path
    and exact Fractions on the rational path.
    """

    lam: tuple
    imax: int
    truncation_mass: float
    total: float


@dataclass(frozen=True)
class BoundReport:
    """A total-variation bound value plus every constant that built it."""

    variant: str
    value: float
    ingredients: dict


# -- means -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bmoment(law, r: int) -> float:
    return binomial_moment(law, r)


def _require_plain(spec: SbmmSpec, what: str) -> None:
    if spec.degree_weights is not None:
        raise PreconditionError(
            f"{what} requires identically distributed pair counts, but the "
            "model has degree weights (per-placement means are not constant)"
        )


def occurrence_mean(spec: SbmmSpec, pattern: PatternGraph) -> float:
    """Expected copy count contributed by one placement on one vertex set.

    Averages, over the class assignment of the placement's vertices, the
    product of binomial moments ``E[C(Y, multiplicity)]`` over pattern pairs
    and ``E[C(S, loops)]`` over self-loop vertices.  A pattern with
    self-loops has mean 0 under a model without self-loop laws.
    """
    _require_plain(spec, "the occurrence mean")
    v = pattern.vertex_count
    if pattern.self_loops and spec.self_loop_laws is None:
        return 0.0
    total = 0.0
    for assign in product(range(spec.Q), repeat=v):
        term = 1.0
        for c in assign:
            term *= spec.f[c]
        for (a, b), m in pattern.edge_mult.items():
            term *= _bmoment(spec.edge_laws[assign[a]][assign[b]], m)
            if term == 0.0:
                break
        else:
            for w, cnt in pattern.self_loops.items():
                term *= _bmoment(spec.self_loop_laws[assign[w]], cnt)
                if term == 0.0:
                    break
            else:
                total += term
    return total


def expected_count(spec: SbmmSpec, pattern: PatternGraph) -> float:
    """Expected total number of copies: C(n, v) * rho * occurrence mean."""
    v = pattern.vertex_count
    if v > spec.n:
        raise PreconditionError(
            f"pattern has {v} vertices but the model only {spec.n}"
        )
    return math.comb(spec.n, v) * rho(pattern) * occurrence_mean(spec, pattern)


# -- clump rates --------------------------------------------------------------


def _pmf_list(law, cap: int, exact: bool):
    if exact:
        if not isinstance(law, Categorical):
            raise PreconditionError(
                "the exact-rational path requires categorical laws only"
            )
        probs = [Fraction(p) for p in law.probabilities]
        return [(probs[k] if k < len(probs) else Fraction(0)) for k in range(cap + 1)]
    return [pmf_tail(law, k)[0] for k in range(cap + 1)]


def lambda_params(
    spec: SbmmSpec,
    pattern: PatternGraph,
    eps: float = 1e-10,
    exact: bool = False,
    max_configs: int = 5_000_000,
) -> CompoundPoissonParams:
    """Exact clump rates lambda_i = C(n, v) * P(Z = i).

    Enumerates, for one vertex set, every class assignment and every edge
    (and self-loop) configuration with per-pair supports truncated where the
    law's tail falls below ``eps``.  ``exact=True`` switches to rational
    arithmetic (categorical laws only) and returns Fractions.

    Raises :class:`InfeasibleError` when the enumeration would exceed
    ``max_configs`` configurations.
    """
    _require_plain(spec, "the clump-rate computation")
    v = pattern.vertex_count
    n, Q = spec.n, spec.Q
    if v > n:
        raise PreconditionError(f"pattern has {v} vertices but the model only {n}")

    pair_slots = v * (v - 1) // 2
    with_loops = bool(pattern.self_loops)
    if with_loops and spec.self_loop_laws is None:
        # the model never produces self-loops, so no copies ever occur
        return CompoundPoissonParams(lam=(), imax=0, truncation_mass=0.0, total=0.0)

    def cap_for(law):
        # the exact path keeps the whole (finite) support so that nothing is
        # neglected; the float path truncates where the tail drops below eps
        if exact:
            if not isinstance(law, Categorical):
                raise PreconditionError(
                    "the exact-rational path requires categorical laws only"
                )
            return len(law.probabilities) - 1
        return truncation_bound(law, eps)

    pair_caps = {}
    for a in range(Q):
        for b in range(a, Q):
            pair_caps[(a, b)] = cap_for(spec.edge_laws[a][b])
    loop_caps = {}
    if with_loops:
        for a in range(Q):
            loop_caps[a] = cap_for(spec.self_loop_laws[a])

    max_pair_cap = max(pair_caps.values()) if pair_slots else 0
    max_loop_cap = max(loop_caps.values()) if with_loops else 0
    size = Q**v * (max_pair_cap + 1) ** pair_slots
    if with_loops:
        size *= (max_loop_cap + 1) ** v
    if size > max_configs:
        raise InfeasibleError(
            f"clump enumeration needs up to {size} configurations "
            f"(limit {max_configs})"
        )

    # largest clump any truncated configuration can reach
    top_config = [max_pair_cap] * pair_slots + ([max_loop_cap] * v if with_loops else [])
    imax = clump_size(top_config, pattern)

    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    f = [Fraction(x) for x in spec.f] if exact else list(spec.f)

    pmf_cache = {}
    tail_cache = {}

    def pmfs(law, cap):
        key = (law, cap)
        if key not in pmf_cache:
            pmf_cache[key] = _pmf_list(law, cap, exact)
        return pmf_cache[key]

    def tail_excess(law, cap):
        # P(Y > cap), summed forward so there is no cancellation: the
        # neglected mass stays certified even after the C(n, v) blow-up
        key = (law, cap)
        if key not in tail_cache:
            if exact:
                tail_cache[key] = max(1 - sum(pmfs(law, cap), zero), zero)
            else:
                tail_cache[key] = pmf_tail(law, cap + 1)[1]
        return tail_cache[key]

    slot_pairs = [(a, b) for a in range(v) for b in range(a + 1, v)]
    clump_cache = {}
    size_prob = {}
    neglected = zero

    for assign in product(range(Q), repeat=v):
        a_prob = one
        for c in assign:
            a_prob *= f[c]
        tables = []
        excess = zero
        for sa, sb in slot_pairs:
            ca, cb = sorted((assign[sa], assign[sb]))
            law = spec.edge_laws[ca][cb]
            tables.append(pmfs(law, pair_caps[(ca, cb)]))
            excess += tail_excess(law, pair_caps[(ca, cb)])
        if with_loops:
            for w in range(v):
                law = spec.self_loop_laws[assign[w]]
                tables.append(pmfs(law, loop_caps[assign[w]]))
                excess += tail_excess(law, loop_caps[assign[w]])
        # union bound over slots on the probability that any slot exceeds
        # its truncated support
        neglected += a_prob * excess
        for config in product(*(range(len(t)) for t in tables)):
            p = a_prob
            for t, val in zip(tables, config):
                p *= t[val]
            if p == zero:
                continue
            z = clump_cache.get(config)
            if z is None:
                z = clump_size(list(config), pattern)
                clump_cache[config] = z
            if z > 0:
                size_prob[z] = size_prob.get(z, zero) + p

    n_sets = math.comb(n, v)
    lam = tuple(n_sets * size_prob.get(i, zero) for i in range(1, imax + 1))
    total = sum(lam, zero)
    return CompoundPoissonParams(
        lam=lam,
        imax=imax,
        truncation_mass=float(n_sets * neglected),
        total=total if exact else float(total),
    )


# -- compound Poisson law -----------------------------------------------------


def cp_pmf(params: CompoundPoissonParams, kmax: int) -> list[float]:
    """P(0..kmax) of the compound Poisson law with the given clump rates.

    Uses the standard recursion ``P(0) = exp(-sum(lam))`` and
    ``k P(k) = sum_i i lam_i P(k - i)``.
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    lam = [float(x) for x in params.lam]
    out = [math.exp(-math.fsum(lam))]
    for k in range(1, kmax + 1):
        acc = 0.0
        for i in range(1, min(k, len(lam)) + 1):
            if lam[i - 1]:
                acc += i * lam[i - 1] * out[k - i]
        out.append(acc / k)
    return out


def c_lambda_upper(params: CompoundPoissonParams) -> float:
    """Generic upper bound exp(lambda) * min(1, 1/lambda_1) on c(lambda).

    ``lambda`` here is the total rate including the certified truncation
    mass; when the single-copy rate is 0 the minimum degenerates to 1.
    """
    lam_total = float(params.total) + params.truncation_mass
    lam1 = float(params.lam[0]) if params.imax >= 1 and params.lam else 0.0
    scale = min(1.0, 1.0 / lam1) if lam1 > 0 else 1.0
    if lam_total > 700.0:
        return math.inf
    return math.exp(lam_total) * scale


def poisson_c_factor(nu: float) -> float:
    """The Poisson-approximation magic factor (1 - exp(-nu)) / nu; 1 at 0."""
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if nu == 0.0:
        return 1.0
    return -math.expm1(-nu) / nu


def poisson_tail_q2(omega: float) -> float:
    """P(Y >= 2) = 1 - (1 + omega) exp(-omega) for Y ~ Poisson(omega).

    Always at most omega^2 / 2.
    """
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    # exp(-w) * (exp(w) - 1 - w), stable for small w
    return math.exp(-omega) * (math.expm1(omega) - omega)


# -- total-variation bounds ---------------------------------------------------


def _pow(base: float, exponent) -> float:
    """IEEE power with +inf exponents allowed (0^0 = 1, x^inf by limits)."""
    b = float(base)
    x = float(exponent)
    if math.isinf(x) and x > 0:
        if b > 1.0:
            return math.inf
        if b == 1.0:
            return 1.0
        return 0.0
    return math.pow(b, x)


def _check_common(spec, pattern, variant, *, simple: bool, balanced_flag: bool):
    """Shared hypothesis checks; returns the balancedness profile."""
    if pattern.vertex_count > spec.n:
        raise PreconditionError(
            f"{variant}: pattern has {pattern.vertex_count} vertices "
            f"but the model only {spec.n}"
        )
    if pattern.edge_total == 0:
        raise PreconditionError(f"{variant}: pattern has no edges")
    prof = balancedness_profile(pattern)
    if simple:
        if pattern.max_multiplicity > 1:
            raise PreconditionError(f"{variant}: pattern has parallel edges")
        if pattern.loop_total > 0:
            raise PreconditionError(f"{variant}: pattern has self-loops")
        if balanced_flag and not prof.strictly_balanced:
            raise PreconditionError(f"{variant}: pattern is not strictly balanced")
    else:
        if balanced_flag and not prof.strictly_pseudo_balanced:
            raise PreconditionError(
                f"{variant}: pattern is not strictly pseudo-balanced"
            )
    return prof


def _c_from_spec(spec, pattern, c_override, eps):
    """c(lambda) and its source for the compound-Poisson variants."""
    if c_override is not None:
        return float(c_override), "override"
    if spec.degree_weights is not None:
        # clump rates are not computable with vertex-dependent means; fall
        # back to c <= exp(total rate) <= exp(mean count upper bound)
        ext = model_extrema(spec, pattern)
        mean_upper = (
            math.comb(spec.n, pattern.vertex_count)
            * rho(pattern)
            * _pow(ext.inhom_max, pattern.edge_total)
        )
        c = math.exp(mean_upper) if mean_upper <= 700.0 else math.inf
        return c, "mean_upper"
    c = c_lambda_upper(lambda_params(spec, pattern, eps))
    return c, "clump_upper"


def _simple_shell(n, v, e, rho_val, c, mu, kappas):
    """Common shape of the simple-pattern bounds.

    value = (c rho^2 / v!) n^v mu^e { (v^2/v!) n^(v-1) mu^e
            + sum_i C(v,i) n^(v-i) mu^kappa_i / (v-i)! }.
    """
    vfact = math.factorial(v)
    inner = (v * v / vfact) * float(n) ** (v - 1) * _pow(mu, e)
    for i in range(1, v):
        inner += (
            math.comb(v, i)
            * float(n) ** (v - i)
            * _pow(mu, kappas[i])
            / math.factorial(v - i)
        )
    return (c * rho_val * rho_val / vfact) * float(n) ** v * _pow(mu, e) * inner


def _multi_shell(n, v, e, rho_val, c, first_term_product, psi, kappas_m, phi, s):
    """Common shape of the multiplicity-aware bounds.

    value = (c rho^2 / v!) n^v { (v^2/v!) n^(v-1) phi^(2s) prod_i mu**_i^(2 e_i)
            + sum_i C(v,i) n^(v-i) phi^(2s-i) psi^(e+kappa_m_i) / (v-i)! }.
    """
    vfact = math.factorial(v)
    inner = (v * v / vfact) * float(n) ** (v - 1) * _pow(phi, 2 * s) * first_term_product
    for i in range(1, v):
        loop_factor = _pow(phi, 2 * s - i) if s else 1.0
        inner += (
            math.comb(v, i)
            * float(n) ** (v - i)
            * loop_factor
            * _pow(psi, e + kappas_m[i])
            / math.factorial(v - i)
        )
    return (c * rho_val * rho_val / vfact) * float(n) ** v * inner


def _poisson_shell(n, v, e, rho_val, factor, mu, q2, kappas):
    """Common shape of the Poisson-limit bounds.

    value = factor (rho^2/v!) n^v mu^(e-1) { (v^2/v!) n^(v-1) mu^(e+1)
            + q2 + sum_i C(v,i) n^(v-i) mu^(kappa_i+1) / (v-i)! }.
    """
    vfact = math.factorial(v)
    inner = (v * v / vfact) * float(n) ** (v - 1) * _pow(mu, e + 1) + q2
    for i in range(1, v):
        inner += (
            math.comb(v, i)
            * float(n) ** (v - i)
            * _pow(mu, kappas[i] + 1)
            / math.factorial(v - i)
        )
    return (
        (factor * rho_val * rho_val / vfact)
        * float(n) ** v
        * _pow(mu, e - 1)
        * inner
    )


def _frac_float(x) -> float:
    return math.inf if x is None else float(x)


def tv_bound(
    spec: SbmmSpec,
    pattern: PatternGraph,
    variant: str,
    c_override: float | None = None,
    eps: float = 1e-10,
    regime_c: float | None = None,
    regime_C: float | None = None,
) -> BoundReport:
    """Total-variation error bound for approximating the count of a pattern.

    Variants: ``thm31_simple`` (simple strictly balanced pattern, compound
    Poisson), ``cor35_inhom`` (same shape with the vertex-pair maximum mean,
    valid under degree weights), ``thm41_multi`` (multigraph pattern,
    strictly pseudo-balanced), ``thm51_selfloop`` (additionally self-loops;
    dispatches to ``thm41_multi`` when the pattern has none),
    ``thm52_poisson_approx`` (simple pattern against Poisson(mean)),
    ``cor55_poisson_sbm`` (Poisson edge laws against Poisson(mean)), and
    ``regime_corpn`` (simple pattern with pair means sandwiched between
    ``regime_c * n^(-1/density)`` and ``regime_C * n^(-1/density)``).

    Raises :class:`PreconditionError`, naming the failed hypothesis, when
    the variant does not apply.
    """
    if variant not in BOUND_VARIANTS:
        raise ValueError(f"unknown bound variant {variant!r}")
    if variant == "thm51_selfloop" and pattern.loop_total == 0:
        variant = "thm41_multi"
    if spec.degree_weights is not None and variant != "cor35_inhom":
        raise PreconditionError(
            f"{variant}: models with degree weights are only covered by "
            "cor35_inhom"
        )

    n, v, e = spec.n, pattern.vertex_count, pattern.edge_total
    rho_val = rho(pattern)
    ext = model_extrema(spec, pattern)

    if variant in ("thm31_simple", "cor35_inhom"):
        prof = _check_common(spec, pattern, variant, simple=True, balanced_flag=True)
        mu = ext.mu1_star if variant == "thm31_simple" else ext.inhom_max
        c, c_source = _c_from_spec(spec, pattern, c_override, eps)
        kappas = {i: kappa(pattern, i, "simple") for i in range(1, v)}
        value = _simple_shell(n, v, e, rho_val, c, mu, kappas)
        ingredients = {
            "n": n,
            "v": v,
            "e": e,
            "rho": rho_val,
            "c_lambda": c,
            "c_source": c_source,
            ("mu1_star" if variant == "thm31_simple" else "inhom_max"): mu,
            "density": float(prof.density),
            "alpha": _frac_float(prof.alpha),
            "gamma": _frac_float(prof.gamma),
        }
        for i in range(1, v):
            ingredients[f"kappa_{i}"] = float(kappas[i])
        return BoundReport(variant=variant, value=value, ingredients=ingredients)

    if variant in ("thm41_multi", "thm51_selfloop"):
        prof = _check_common(spec, pattern, variant, simple=False, balanced_flag=True)
        s = pattern.loop_total
        t = pattern.max_multiplicity
        hist = pattern.multiplicity_histogram()
        phi = ext.phi_star
        negative_exponent = s > 0 and any(2 * s - i < 0 for i in range(1, v))
        if s > 0:
            if phi is None:
                phi = 0.0
            if negative_exponent and phi == 0.0:
                raise PreconditionError(
                    f"{variant}: the bound needs a negative power of the "
                    "mean self-loop count, which is zero"
                )
        else:
            phi = 1.0  # unused
        c, c_source = _c_from_spec(spec, pattern, c_override, eps)
        kappas_m = {i: kappa(pattern, i, "multi") for i in range(1, v)}
        first = 1.0
        for i in range(1, t + 1):
            first *= _pow(ext.mu_dstar[i - 1], 2 * hist.get(i, 0))
        value = _multi_shell(
            n, v, e, rho_val, c, first, ext.psi, kappas_m, phi, s
        )
        ingredients = {
            "n": n,
            "v": v,
            "e": e,
            "s": s,
            "t": t,
            "rho": rho_val,
            "c_lambda": c,
            "c_source": c_source,
            "psi": ext.psi,
            "pseudo_density": float(prof.pseudo_density),
            "alpha_m": _frac_float(prof.alpha_m),
            "gamma_m": _frac_float(prof.gamma_m),
        }
        for i in range(1, t + 1):
            ingredients[f"mu_dstar_{i}"] = ext.mu_dstar[i - 1]
            ingredients[f"e_hist_{i}"] = hist.get(i, 0)
        for i in range(1, v):
            ingredients[f"kappa_m_{i}"] = float(kappas_m[i])
        if s > 0:
            ingredients["phi_star"] = phi
            ingredients["negative_selfloop_exponent"] = int(negative_exponent)
        return BoundReport(variant=variant, value=value, ingredients=ingredients)

    if variant in ("thm52_poisson_approx", "cor55_poisson_sbm"):
        prof = _check_common(spec, pattern, variant, simple=True, balanced_flag=True)
        if variant == "cor55_poisson_sbm":
            if ext.omega_star is None:
                raise PreconditionError(f"{variant}: edge laws are not all Poisson")
            mu = ext.omega_star
            q2 = 0.5 * ext.omega_star**2
        else:
            mu = ext.mu1_star
            q2 = ext.q2_star
        nu = expected_count(spec, pattern)
        factor = float(c_override) if c_override is not None else poisson_c_factor(nu)
        kappas = {i: kappa(pattern, i, "simple") for i in range(1, v)}
        value = _poisson_shell(n, v, e, rho_val, factor, mu, q2, kappas)
        ingredients = {
            "n": n,
            "v": v,
            "e": e,
            "rho": rho_val,
            "nu": nu,
            "poisson_factor": factor,
            ("mu1_star" if variant == "thm52_poisson_approx" else "omega_star"): mu,
            ("q2_star" if variant == "thm52_poisson_approx" else "q2_bound"): q2,
            "density": float(prof.density),
            "alpha": _frac_float(prof.alpha),
            "gamma": _frac_float(prof.gamma),
        }
        for i in range(1, v):
            ingredients[f"kappa_{i}"] = float(kappas[i])
        return BoundReport(variant=variant, value=value, ingredients=ingredients)

    # regime_corpn
    prof = _check_common(spec, pattern, variant, simple=True, balanced_flag=True)
    if regime_c is None or regime_C is None:
        raise PreconditionError(
            "regime_corpn: needs envelope constants regime_c and regime_C"
        )
    if not (0 < regime_c <= regime_C):
        raise PreconditionError("regime_corpn: needs 0 < regime_c <= regime_C")
    d = float(prof.density)
    scale = float(n) ** (-1.0 / d)
    for law in spec.distinct_laws():
        mean = moment(law, 1)
        if not (
            regime_c * scale * (1 - 1e-12) <= mean <= regime_C * scale * (1 + 1e-12)
        ):
            raise PreconditionError(
                f"regime_corpn: an edge mean {mean} lies outside the envelope "
                f"[{regime_c * scale}, {regime_C * scale}]"
            )
    c, c_source = _c_from_spec(spec, pattern, c_override, eps)
    alpha = _frac_float(prof.alpha)
    gamma = _frac_float(prof.gamma)
    C_big = float(regime_C)
    vfact = math.factorial(v)
    if math.isinf(alpha) or math.isinf(gamma):
        # no proper subgraph: the overlap terms vanish identically
        a_term = 0.0
        b_term = 0.0
    else:
        a_term = (1.0 + C_big**alpha) ** (v - 1) * float(n) ** (1.0 - alpha / d)
        b_term = (
            C_big ** (e + gamma) * (1.0 + C_big**-d) ** (v - 1) * float(n) ** (-gamma / d)
        )
    value = (
        (c * rho_val * rho_val / vfact)
        * C_big**e
        * ((v * v / vfact) * C_big**e / float(n) + min(a_term, b_term))
    )
    ingredients = {
        "n": n,
        "v": v,
        "e": e,
        "rho": rho_val,
        "c_lambda": c,
        "c_source": c_source,
        "regime_c": float(regime_c),
        "regime_C": C_big,
        "regime_A": a_term,
        "regime_B": b_term,
        "density": d,
        "alpha": alpha,
        "gamma": gamma,
    }
    return BoundReport(variant="regime_corpn", value=value, ingredients=ingredients)
