"""Brute-force reference computations, independent of the package code paths."""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations

import numpy as np

INF = float("inf")


def random_connected_edges(rng: np.random.Generator, n: int, p: float) -> list[tuple[str, str]]:
    """Random spanning tree plus Erdos-Renyi extras, node names ``n00``..."""
    names = [f"n{i:02d}" for i in range(n)]
    perm = rng.permutation(n)
    edges = set()
    for k in range(1, n):
        a, b = perm[k], perm[rng.integers(k)]
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                edges.add((a, b))
    return [(names[a], names[b]) for a, b in sorted(edges)]


def all_pairs(nodes: list[str], edges) -> dict[str, dict[str, float]]:
    """Floyd-Warshall relaxation over every node triple."""
    d = {u: {v: (0 if u == v else INF) for v in nodes} for u in nodes}
    for a, b in edges:
        if a != b:
            d[a][b] = d[b][a] = 1
    for k in nodes:
        dk = d[k]
        for i in nodes:
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in nodes:
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def closeness_oracle(d, node) -> float:
    reach = [x for v, x in d[node].items() if v != node and x < INF]
    return (len(reach) + 1) / sum(reach) if reach else 0.0


def entropy_oracle(d, node) -> float:
    reach = [int(x) for v, x in d[node].items() if v != node and x < INF]
    if not reach:
        return 0.0
    M = max(reach)
    if M < 2:
        return 0.0
    c = Counter(reach)
    n = len(reach)
    return -sum((c[k] / n) * math.log(c[k] / n) for k in range(1, M + 1) if c[k]) / math.log(M)


def clustering_oracle(nodes, edges, node) -> float:
    E = {frozenset(e) for e in edges}
    nb = [v for v in nodes if frozenset((node, v)) in E]
    if len(nb) < 2:
        return 0.0
    closed = sum(1 for u, v in combinations(nb, 2) if frozenset((u, v)) in E)
    return closed / (len(nb) * (len(nb) - 1) / 2)


def min_normalized_cut(nodes, edges):
    """Exhaustive search over all bipartitions for the minimum normalized cut."""
    nodes = sorted(nodes)
    deg = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    best, best_part = INF, None
    first, rest = nodes[0], nodes[1:]
    for r in range(0, len(rest)):
        for extra in combinations(rest, r):
            S = {first, *extra}
            T = set(nodes) - S
            if not T:
                continue
            cut = sum(1 for a, b in edges if (a in S) != (b in S))
            ncut = cut / sum(deg[v] for v in S) + cut / sum(deg[v] for v in T)
            if ncut < best:
                best, best_part = ncut, (S, T)
    return best, best_part


def exact_subset_moments(emotion_sets: list[set[str]], m: int, emotions):
    """Mean and sd of richness over every m-subset of the units."""
    values = {e: [] for e in emotions}
    for subset in combinations(range(len(emotion_sets)), m):
        for e in emotions:
            values[e].append(sum(e in emotion_sets[i] for i in subset))
    return {
        e: (float(np.mean(v)), float(np.std(v)), len(v)) for e, v in values.items()
    }
