"""Block multigraph model: specification, sampling, and extreme moments.

A model assigns each of ``n`` vertices an independent class drawn from the
class-probability vector ``f`` and then, conditionally on the classes, draws
every unordered vertex pair's edge count independently from the law attached
to its class pair.  Optional extensions: per-vertex degree weights (each
pair's count becomes Poisson with rate ``weight_i * weight_j * rate_ab``;
only defined when every edge law is Poisson) and per-class self-loop laws.

Sampling is reproducible by construction: every random quantity reads
exactly one uniform from a keyed substream — classes from ``(seed, 0, i)``,
the count of pair ``i < j`` from ``(seed, i, j)``, the self-loop count of
vertex ``i`` from ``(seed, i, i)``, all with 1-based vertex labels — and is
produced from that uniform by inverting the law's CDF.  Results therefore
never depend on iteration order, grouping, or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._rng import substream_keys, uniforms_from_keys
from .distributions import (
    Categorical,
    EdgeCountDistribution,
    Geometric,
    Poisson,
    binomial_moment,
    law_from_json,
    law_to_json,
    moment,
    pmf_tail,
)
from .patterns import PatternGraph

__all__ = [
    "SbmmSpec",
    "ObservedMultigraph",
    "ModelExtrema",
    "sample_graph",
    "model_extrema",
    "spec_from_json",
    "spec_to_json",
    "graph_to_text",
    "graph_from_text",
]


class SbmmSpec:
    """A block multigraph model specification.

    Args:
        n: number of vertices.
        Q: number of vertex classes.
        f: sequence of Q positive class probabilities summing to 1.
        edge_laws: Q x Q matrix of edge-count laws, symmetric in the sense
            that ``edge_laws[a][b] == edge_laws[b][a]``.
        degree_weights: optional sequence of n positive vertex weights;
            requires every edge law to be Poisson.
        self_loop_laws: optional sequence of Q self-loop count laws.
    """

    def __init__(self, n, Q, f, edge_laws, degree_weights=None, self_loop_laws=None):
        n = int(n)
        Q = int(Q)
        if n < 1:
            raise ValueError("n must be at least 1")
        if Q < 1:
            raise ValueError("Q must be at least 1")
        # exact entries (Fraction/int/Decimal) are preserved for the
        # exact-rational computation path; floats stay floats
        f = tuple(x if isinstance(x, float) else Fraction(x) for x in f)
        if len(f) != Q:
            raise ValueError(f"f has {len(f)} entries, expected Q={Q}")
        if any(x <= 0 for x in f):
            raise ValueError("class probabilities must be strictly positive")
        if abs(math.fsum(f) - 1.0) > 1e-12:
            raise ValueError(f"class probabilities sum to {math.fsum(f)!r}, not 1")
        laws = tuple(tuple(row) for row in edge_laws)
        if len(laws) != Q or any(len(row) != Q for row in laws):
            raise ValueError("edge_laws must be a Q x Q matrix")
        for a in range(Q):
            for b in range(Q):
                if not isinstance(laws[a][b], (Categorical, Poisson, Geometric)):
                    raise TypeError(f"edge_laws[{a}][{b}] is not an edge-count law")
                if laws[a][b] != laws[b][a]:
                    raise ValueError(f"edge_laws not symmetric at ({a},{b})")
        weights = None
        if degree_weights is not None:
            weights = tuple(float(w) for w in degree_weights)
            if len(weights) != n:
                raise ValueError(f"degree_weights has {len(weights)} entries, expected n={n}")
            if any(w <= 0 or not math.isfinite(w) for w in weights):
                raise ValueError("degree weights must be finite and positive")
            if any(not isinstance(laws[a][b], Poisson) for a in range(Q) for b in range(Q)):
                raise ValueError("degree weights require every edge law to be Poisson")
        loop_laws = None
        if self_loop_laws is not None:
            loop_laws = tuple(self_loop_laws)
            if len(loop_laws) != Q:
                raise ValueError(f"self_loop_laws has {len(loop_laws)} entries, expected Q={Q}")
            for a, law in enumerate(loop_laws):
                if not isinstance(law, (Categorical, Poisson, Geometric)):
                    raise TypeError(f"self_loop_laws[{a}] is not an edge-count law")
        self.n = n
        self.Q = Q
        self.f = f
        self.edge_laws = laws
        self.degree_weights = weights
        self.self_loop_laws = loop_laws

    def __eq__(self, other):
        return isinstance(other, SbmmSpec) and (
            self.n,
            self.Q,
            self.f,
            self.edge_laws,
            self.degree_weights,
            self.self_loop_laws,
        ) == (
            other.n,
            other.Q,
            other.f,
            other.edge_laws,
            other.degree_weights,
            other.self_loop_laws,
        )

    def __hash__(self):
        return hash(
            (self.n, self.Q, self.f, self.edge_laws, self.degree_weights, self.self_loop_laws)
        )

    def __repr__(self):
        return (
            f"SbmmSpec(n={self.n}, Q={self.Q}, f={self.f}, "
            f"degree_weights={'set' if self.degree_weights else None}, "
            f"self_loop_laws={'set' if self.self_loop_laws else None})"
        )

    def distinct_laws(self):
        """Edge laws on or above the diagonal (one per unordered class pair)."""
        return [self.edge_laws[a][b] for a in range(self.Q) for b in range(a, self.Q)]


class ObservedMultigraph:
    """A multigraph on vertices 0..n-1 with integer pair and loop counts.

    ``edge_counts`` maps unordered pairs to positive counts (zero entries
    are dropped), ``self_loop_counts`` maps vertices to positive loop
    counts, and ``classes`` optionally records the class label per vertex.
    """

    def __init__(self, n, edge_counts, self_loop_counts=None, classes=None):
        n = int(n)
        if n < 0:
            raise ValueError("n must be nonnegative")
        counts = {}
        for (a, b), y in dict(edge_counts).items():
            a, b = int(a), int(b)
            y = int(y)
            if a == b:
                raise ValueError("self-loops belong in self_loop_counts")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a},{b}) outside vertex range 0..{n - 1}")
            if y < 0:
                raise ValueError("edge counts must be nonnegative")
            key = (a, b) if a < b else (b, a)
            if key in counts:
                raise ValueError(f"pair {key} appears twice")
            if y > 0:
                counts[key] = y
        loops = {}
        for w, s in dict(self_loop_counts or {}).items():
            w, s = int(w), int(s)
            if not 0 <= w < n:
                raise ValueError(f"vertex {w} outside range 0..{n - 1}")
            if s < 0:
                raise ValueError("self-loop counts must be nonnegative")
            if s > 0:
                loops[w] = s
        if classes is not None:
            classes = tuple(int(c) for c in classes)
            if len(classes) != n:
                raise ValueError(f"classes has {len(classes)} entries, expected n={n}")
        self.n = n
        self.edge_counts = dict(sorted(counts.items()))
        self.self_loop_counts = dict(sorted(loops.items()))
        self.classes = classes

    def __eq__(self, other):
        return isinstance(other, ObservedMultigraph) and (
            self.n,
            self.edge_counts,
            self.self_loop_counts,
            self.classes,
        ) == (other.n, other.edge_counts, other.self_loop_counts, other.classes)

    def __repr__(self):
        return (
            f"ObservedMultigraph(n={self.n}, edges={len(self.edge_counts)}, "
            f"loops={len(self.self_loop_counts)})"
        )


@dataclass(frozen=True)
class ModelExtrema:
    """Worst-case moment functionals of a model, relative to a pattern.

    ``mu_star[k-1]`` is the maximum over class pairs of the k-th raw moment
    of the edge law, for k up to twice the pattern's maximum multiplicity t;
    ``mu_dstar[k-1]`` the maximum k-th binomial moment, k up to t;
    ``psi = max(2 * mu_star[2t-1], max_{j<=t} mu_dstar[j-1])``.  ``phi_star``
    (maximum mean self-loop count) is None without self-loop laws;
    ``omega_star`` is None unless every edge law is Poisson; ``psi`` is None
    for patterns without edges.  ``inhom_max`` is the maximum expected count
    over vertex pairs: with degree weights it decorates the largest rate
    with the two largest weights, otherwise it equals ``mu1_star``.
    """

    mu1_star: float
    mu_star: tuple[float, ...]
    mu_dstar: tuple[float, ...]
    psi: float | None
    phi_star: float | None
    q2_star: float
    omega_star: float | None
    inhom_max: float


def model_extrema(spec: SbmmSpec, pattern: PatternGraph) -> ModelExtrema:
    """Maxima over class pairs of the moment functionals the bounds use."""
    laws = spec.distinct_laws()
    t = pattern.max_multiplicity
    mu_star = tuple(max(moment(law, k) for law in laws) for k in range(1, 2 * t + 1))
    mu_dstar = tuple(max(binomial_moment(law, k) for law in laws) for k in range(1, t + 1))
    mu1_star = mu_star[0] if mu_star else max(moment(law, 1) for law in laws)
    psi = max(2.0 * mu_star[2 * t - 1], max(mu_dstar)) if t >= 1 else None
    q2_star = max(pmf_tail(law, 2)[1] for law in laws)
    phi_star = None
    if spec.self_loop_laws is not None:
        phi_star = max(moment(law, 1) for law in spec.self_loop_laws)
    omega_star = None
    if all(isinstance(law, Poisson) for law in laws):
        omega_star = max(law.rate for law in laws)
    if spec.degree_weights is not None:
        top = sorted(spec.degree_weights, reverse=True)
        if len(top) < 2:
            raise ValueError("degree weights need at least two vertices")
        inhom_max = top[0] * top[1] * omega_star
    else:
        inhom_max = mu1_star
    return ModelExtrema(
        mu1_star=mu1_star,
        mu_star=mu_star,
        mu_dstar=mu_dstar,
        psi=psi,
        phi_star=phi_star,
        q2_star=q2_star,
        omega_star=omega_star,
        inhom_max=inhom_max,
    )


def _poisson_icdf(u: np.ndarray, rates: np.ndarray) -> np.ndarray:
    """Elementwise smallest k with Poisson(rate) CDF(k) >= u.

    Forward CDF stepping; each element's result depends only on its own
    (u, rate), so any grouping of calls yields identical values.
    """
    rates = np.asarray(rates, dtype=np.float64)
    if rates.size and float(np.max(rates)) > 700.0:
        raise ValueError("Poisson rate too large for direct CDF inversion")
    pmf = np.exp(-rates)
    cdf = pmf.copy()
    counts = np.zeros(u.shape, dtype=np.int64)
    active = cdf < u
    k = 0
    while active.any():
        k += 1
        if k > 10**6:
            raise RuntimeError("Poisson CDF inversion did not converge")
        pmf[active] *= rates[active] / k
        cdf[active] += pmf[active]
        counts[active] = k
        active &= (cdf < u) & (pmf > 0.0)
    return counts


def _categorical_icdf(u: np.ndarray, law: Categorical) -> np.ndarray:
    cum = np.cumsum(np.asarray(law.probabilities, dtype=np.float64))
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, len(cum) - 1).astype(np.int64)


def _geometric_icdf(u: np.ndarray, law: Geometric) -> np.ndarray:
    if law.ratio == 0.0:
        return np.zeros(u.shape, dtype=np.int64)
    # CDF(k) = 1 - ratio^(k+1); invert and round up to the crossover integer
    raw = np.ceil(np.log1p(-u) / math.log(law.ratio)) - 1.0
    return np.maximum(raw, 0.0).astype(np.int64)


def _sample_counts(u: np.ndarray, law: EdgeCountDistribution) -> np.ndarray:
    if isinstance(law, Poisson):
        return _poisson_icdf(u, np.full(u.shape, law.rate))
    if isinstance(law, Categorical):
        return _categorical_icdf(u, law)
    if isinstance(law, Geometric):
        return _geometric_icdf(u, law)
    raise TypeError(f"not an edge-count law: {law!r}")


def sample_graph(spec: SbmmSpec, seed: int) -> ObservedMultigraph:
    """Draw one multigraph from the model, deterministically in ``seed``."""
    n = spec.n
    # vertex classes from substreams (seed, 0, i), 1-based i
    labels = np.arange(1, n + 1, dtype=np.uint64)
    class_u = uniforms_from_keys(substream_keys(seed, np.zeros(n, dtype=np.uint64), labels))
    cum_f = np.cumsum(np.asarray(spec.f, dtype=np.float64))
    classes = np.minimum(
        np.searchsorted(cum_f, class_u, side="right"), spec.Q - 1
    ).astype(np.int64)

    # pair counts from substreams (seed, i, j), i < j, 1-based
    iu, ju = np.triu_indices(n, k=1)
    pair_u = uniforms_from_keys(
        substream_keys(seed, (iu + 1).astype(np.uint64), (ju + 1).astype(np.uint64))
    )
    counts = np.zeros(len(iu), dtype=np.int64)
    ci, cj = classes[iu], classes[ju]
    if spec.degree_weights is not None:
        omega = np.array(
            [[spec.edge_laws[a][b].rate for b in range(spec.Q)] for a in range(spec.Q)]
        )
        theta = np.asarray(spec.degree_weights, dtype=np.float64)
        counts = _poisson_icdf(pair_u, theta[iu] * theta[ju] * omega[ci, cj])
    else:
        lo, hi = np.minimum(ci, cj), np.maximum(ci, cj)
        for a in range(spec.Q):
            for b in range(a, spec.Q):
                mask = (lo == a) & (hi == b)
                if mask.any():
                    counts[mask] = _sample_counts(pair_u[mask], spec.edge_laws[a][b])

    edge_counts = {
        (int(iu[k]), int(ju[k])): int(counts[k]) for k in np.nonzero(counts)[0]
    }

    loop_counts = {}
    if spec.self_loop_laws is not None:
        loop_u = uniforms_from_keys(substream_keys(seed, labels, labels))
        loops = np.zeros(n, dtype=np.int64)
        for a in range(spec.Q):
            mask = classes == a
            if mask.any():
                loops[mask] = _sample_counts(loop_u[mask], spec.self_loop_laws[a])
        loop_counts = {int(i): int(loops[i]) for i in np.nonzero(loops)[0]}

    return ObservedMultigraph(
        n, edge_counts, loop_counts, classes=tuple(int(c) for c in classes)
    )


# -- serialization -----------------------------------------------------------


def spec_from_json(obj: dict) -> SbmmSpec:
    """Build a model spec from its JSON object form."""
    edge_laws = [[law_from_json(cell) for cell in row] for row in obj["edge_laws"]]
    loop_laws = None
    if obj.get("self_loop_laws") is not None:
        loop_laws = [law_from_json(cell) for cell in obj["self_loop_laws"]]
    return SbmmSpec(
        n=obj["n"],
        Q=obj["Q"],
        f=obj["f"],
        edge_laws=edge_laws,
        degree_weights=obj.get("degree_weights"),
        self_loop_laws=loop_laws,
    )


def spec_to_json(spec: SbmmSpec) -> dict:
    """JSON object form of a model spec (inverse of :func:`spec_from_json`)."""
    out = {
        "n": spec.n,
        "Q": spec.Q,
        "f": [float(x) for x in spec.f],
        "edge_laws": [[law_to_json(cell) for cell in row] for row in spec.edge_laws],
    }
    if spec.degree_weights is not None:
        out["degree_weights"] = list(spec.degree_weights)
    if spec.self_loop_laws is not None:
        out["self_loop_laws"] = [law_to_json(law) for law in spec.self_loop_laws]
    return out


def graph_to_text(graph: ObservedMultigraph) -> str:
    """Edge-list text: header comments, then one ``u v count`` line per pair.

    Self-loops appear as ``u u count``.  The ``# n`` header preserves the
    vertex count even when trailing vertices are isolated; classes, when
    known, are emitted as a ``# classes`` header.
    """
    lines = [f"# n {graph.n}"]
    if graph.classes is not None:
        lines.append("# classes " + " ".join(str(c) for c in graph.classes))
    for (a, b), y in graph.edge_counts.items():
        lines.append(f"{a} {b} {y}")
    for w, s in graph.self_loop_counts.items():
        lines.append(f"{w} {w} {s}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> ObservedMultigraph:
    """Parse the edge-list text form (inverse of :func:`graph_to_text`).

    Without a ``# n`` header the vertex count is inferred as one past the
    largest vertex mentioned.
    """
    n = None
    classes = None
    edges = {}
    loops = {}
    max_vertex = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if fields and fields[0] == "n":
                n = int(fields[1])
            elif fields and fields[0] == "classes":
                classes = [int(c) for c in fields[1:]]
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge-list line: {raw!r}")
        a, b, y = int(parts[0]), int(parts[1]), int(parts[2])
        max_vertex = max(max_vertex, a, b)
        if a == b:
            if a in loops:
                raise ValueError(f"self-loop line for vertex {a} appears twice")
            loops[a] = y
        else:
            key = (a, b) if a < b else (b, a)
            if key in edges:
                raise ValueError(f"edge line for pair {key} appears twice")
            edges[key] = y
    if n is None:
        if max_vertex < 0:
            raise ValueError("empty edge-list text: no '# n' header and no edges")
        n = max_vertex + 1
    return ObservedMultigraph(n, edges, loops, classes=classes)
