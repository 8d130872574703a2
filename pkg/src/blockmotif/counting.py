"""Counting copies of a pattern inside an observed multigraph.

A copy of a pattern on a chosen vertex set picks, for every pattern pair
with multiplicity ``i``, an unordered set of ``i`` of the parallel edges the
graph carries on the image pair (and likewise a set of ``c`` self-loops for
a pattern vertex with ``c`` loops).  Two copies are the same when they use
the same edge sets, so a placement on a fixed vertex set contributes the
product of binomial coefficients ``C(observed, required)``, and placements
are enumerated once per automorphism orbit.

``count_copies`` sums this product over all vertex subsets and orbit
placements; ``count_copies_bruteforce`` independently sums over all
injective vertex maps and divides by the automorphism count.  Both return
exact integers (the fast path falls back to arbitrary precision whenever
the product could overflow 64-bit arithmetic).
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .model import ObservedMultigraph
from .patterns import PatternGraph, automorphism_count, placements

__all__ = ["count_copies", "count_copies_bruteforce", "clump_size"]


@lru_cache(maxsize=32)
def _subset_array(n: int, v: int) -> np.ndarray:
    """All v-subsets of 0..n-1 in lexicographic order, shape (C(n,v), v)."""
    return np.array(list(combinations(range(n), v)), dtype=np.int64)


@lru_cache(maxsize=32)
def _comb_table(max_n: int, max_k: int) -> np.ndarray:
    """Table of C(n, k) for 0 <= n <= max_n, 0 <= k <= max_k."""
    table = np.zeros((max_n + 1, max_k + 1), dtype=np.int64)
    for n in range(max_n + 1):
        for k in range(min(n, max_k) + 1):
            table[n, k] = math.comb(n, k)
    return table


def _required_pairs(pattern: PatternGraph):
    """Per placement, the (slot pair index, required count) lists.

    Slot pairs are indexed in lexicographic order of
    ``combinations(range(v), 2)``; loop requirements as (slot, count).
    """
    v = pattern.vertex_count
    out = []
    for pair_req, loop_req in placements(pattern):
        pairs = [(k, r) for k, r in enumerate(pair_req) if r > 0]
        loops = [(w, c) for w, c in enumerate(loop_req) if c > 0]
        out.append((pairs, loops))
    return out


def _count_python(graph: ObservedMultigraph, pattern: PatternGraph) -> int:
    n, v = graph.n, pattern.vertex_count
    slot_pairs = list(combinations(range(v), 2))
    reqs = _required_pairs(pattern)
    y = graph.edge_counts
    s = graph.self_loop_counts
    total = 0
    for subset in combinations(range(n), v):
        for pairs, loops in reqs:
            prod = 1
            for k, r in pairs:
                a, b = slot_pairs[k]
                prod *= math.comb(y.get((subset[a], subset[b]), 0), r)
                if prod == 0:
                    break
            else:
                for w, c in loops:
                    prod *= math.comb(s.get(subset[w], 0), c)
                    if prod == 0:
                        break
                else:
                    total += prod
    return total


def _count_numpy(graph: ObservedMultigraph, pattern: PatternGraph) -> int:
    n, v = graph.n, pattern.vertex_count
    subsets = _subset_array(n, v)
    slot_pairs = list(combinations(range(v), 2))
    reqs = _required_pairs(pattern)

    max_req = max(pattern.max_multiplicity, max(pattern.self_loops.values(), default=0))
    max_obs = max(
        max(graph.edge_counts.values(), default=0),
        max(graph.self_loop_counts.values(), default=0),
    )
    table = _comb_table(max_obs, max_req)

    dense = np.zeros((n, n), dtype=np.int64)
    for (a, b), cnt in graph.edge_counts.items():
        dense[a, b] = cnt
    loops_vec = np.zeros(n, dtype=np.int64)
    for w, cnt in graph.self_loop_counts.items():
        loops_vec[w] = cnt

    # observed counts per subset and slot pair (subsets are ascending, so the
    # smaller slot of each pair maps to the smaller vertex)
    pair_obs = {
        k: dense[subsets[:, a], subsets[:, b]] for k, (a, b) in enumerate(slot_pairs)
    }
    total = 0
    for pairs, loops in reqs:
        prod = None
        for k, r in pairs:
            factor = table[pair_obs[k], r]
            prod = factor if prod is None else prod * factor
        for w, c in loops:
            factor = table[loops_vec[subsets[:, w]], c]
            prod = factor if prod is None else prod * factor
        if prod is not None:
            total += int(prod.sum())
    return total


def count_copies(graph: ObservedMultigraph, pattern: PatternGraph) -> int:
    """Number of copies of the pattern in the graph (exact integer)."""
    n, v = graph.n, pattern.vertex_count
    if v > n:
        raise ValueError(f"pattern has {v} vertices but the graph only {n}")

    # int64 safety: bound one placement's product by the worst-case binomials
    max_obs = max(
        max(graph.edge_counts.values(), default=0),
        max(graph.self_loop_counts.values(), default=0),
    )
    worst = 1
    for m in pattern.edge_mult.values():
        worst *= math.comb(max_obs, m) if max_obs >= m else 1
    for c in pattern.self_loops.values():
        worst *= math.comb(max_obs, c) if max_obs >= c else 1
    n_subsets = math.comb(n, v)
    fits_int64 = worst * n_subsets * len(placements(pattern)) < 2**62

    if fits_int64 and n_subsets * v <= 50_000_000:
        return _count_numpy(graph, pattern)
    return _count_python(graph, pattern)


def count_copies_bruteforce(graph: ObservedMultigraph, pattern: PatternGraph) -> int:
    """Independent oracle: sum over injective maps, divided by automorphisms."""
    n, v = graph.n, pattern.vertex_count
    if n > 9:
        raise ValueError("brute-force counting is limited to graphs with n <= 9")
    y = graph.edge_counts
    s = graph.self_loop_counts
    edges = list(pattern.edge_mult.items())
    loop_items = list(pattern.self_loops.items())
    total = 0
    for image in permutations(range(n), v):
        prod = 1
        for (a, b), m in edges:
            ia, ib = image[a], image[b]
            key = (ia, ib) if ia < ib else (ib, ia)
            prod *= math.comb(y.get(key, 0), m)
            if prod == 0:
                break
        else:
            for w, c in loop_items:
                prod *= math.comb(s.get(image[w], 0), c)
                if prod == 0:
                    break
            else:
                total += prod
    aut = automorphism_count(pattern)
    out, rem = divmod(total, aut)
    assert rem == 0, "injective-map total not divisible by the automorphism count"
    return out


def clump_size(edge_config, pattern: PatternGraph) -> int:
    """Copies of the pattern supported on exactly one v-vertex set.

    ``edge_config`` gives the observed count for each of the C(v,2) slot
    pairs (lexicographic order of ``combinations(range(v), 2)``), optionally
    followed by v self-loop counts; alternatively a mapping from slot pairs
    (and single slots for loops) to counts.  Returns the sum over orbit
    placements of the binomial-coefficient product.
    """
    v = pattern.vertex_count
    slot_pairs = list(combinations(range(v), 2))
    if isinstance(edge_config, dict):
        pair_counts = [0] * len(slot_pairs)
        loop_counts = [0] * v
        for key, cnt in edge_config.items():
            if isinstance(key, tuple):
                a, b = key
                if a == b:
                    loop_counts[a] = int(cnt)
                else:
                    key = (a, b) if a < b else (b, a)
                    pair_counts[slot_pairs.index(key)] = int(cnt)
            else:
                loop_counts[int(key)] = int(cnt)
    else:
        flat = [int(x) for x in edge_config]
        if len(flat) == len(slot_pairs):
            pair_counts, loop_counts = flat, [0] * v
        elif len(flat) == len(slot_pairs) + v:
            pair_counts, loop_counts = flat[: len(slot_pairs)], flat[len(slot_pairs) :]
        else:
            raise ValueError(
                f"config needs {len(slot_pairs)} pair counts "
                f"(optionally plus {v} loop counts), got {len(flat)}"
            )
    total = 0
    for pair_req, loop_req in placements(pattern):
        prod = 1
        for obs, r in zip(pair_counts, pair_req):
            if r:
                prod *= math.comb(obs, r)
                if prod == 0:
                    break
        else:
            for obs, c in zip(loop_counts, loop_req):
                if c:
                    prod *= math.comb(obs, c)
                    if prod == 0:
                        break
            else:
                total += prod
    return total
