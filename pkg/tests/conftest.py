"""Shared builders for randomized test instances."""

import random

from blockmotif import Categorical, Geometric, ObservedMultigraph, PatternGraph, Poisson, SbmmSpec


def random_multigraph(rng: random.Random, n: int, max_mult: int = 3, density: float = 0.5):
    """A random observed multigraph on n vertices (possibly with loops)."""
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                edges[(i, j)] = rng.randint(1, max_mult)
    loops = {}
    for i in range(n):
        if rng.random() < density / 2:
            loops[i] = rng.randint(1, max_mult)
    return ObservedMultigraph(n, edges, loops)


def random_connected_pattern(rng: random.Random, v: int, max_mult: int = 2):
    """A random connected pattern on v vertices (no self-loops)."""
    edges = {}
    order = list(range(v))
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):  # spanning path keeps it connected
        edges[(min(a, b), max(a, b))] = rng.randint(1, max_mult)
    for i in range(v):
        for j in range(i + 1, v):
            if (i, j) not in edges and rng.random() < 0.4:
                edges[(i, j)] = rng.randint(1, max_mult)
    return PatternGraph(v, edges)


def random_categorical(rng: random.Random, max_support: int = 2) -> Categorical:
    weights = [rng.random() + 0.05 for _ in range(rng.randint(2, max_support + 1))]
    total = sum(weights)
    return Categorical([w / total for w in weights])


def random_law(rng: random.Random):
    kind = rng.randrange(3)
    if kind == 0:
        return random_categorical(rng, max_support=3)
    if kind == 1:
        return Poisson(rng.uniform(0.05, 1.2))
    return Geometric(rng.uniform(0.05, 0.5))


def random_spec(rng: random.Random, n: int, Q: int, law_maker=random_law) -> SbmmSpec:
    weights = [rng.random() + 0.2 for _ in range(Q)]
    total = sum(weights)
    f = [w / total for w in weights]
    laws = [[None] * Q for _ in range(Q)]
    for a in range(Q):
        for b in range(a, Q):
            laws[a][b] = laws[b][a] = law_maker(rng)
    return SbmmSpec(n, Q, f, laws)
