"""Shared independent oracles for the test suite.

Everything here recomputes results from definitions using plain Python
sets and exhaustive loops, deliberately avoiding the library's bitmask
fast paths, so oracle agreement is a genuine dual-route check.
"""

from __future__ import annotations

from itertools import combinations, permutations

import pytest

from iasgl.graphs import Graph
from iasgl.sets import GroundSet, IntegerSet


def nonempty_subsets(elements) -> list[frozenset[int]]:
    elems = sorted(elements)
    out = []
    for r in range(1, len(elems) + 1):
        for combo in combinations(elems, r):
            out.append(frozenset(combo))
    return out


def naive_sumset(a, b) -> frozenset[int]:
    return frozenset(x + y for x in a for y in b)


def oracle_classify(elements, distinct: bool = True):
    """Brute-force double loop over all subset pairs, in plain sets.

    Returns (non_sumsets, non_summands, neither) as sets of frozensets,
    covering every non-empty subset except {0}.
    """
    ground = frozenset(elements)
    zero = frozenset({0})
    subsets = nonempty_subsets(elements)
    candidates = [s for s in subsets if s != zero]

    sumsets = set()
    for a in subsets:
        for b in subsets:
            if a == zero or b == zero:
                continue
            if distinct and a == b:
                continue
            sumsets.add(naive_sumset(a, b))

    non_sumsets = {c for c in candidates if c not in sumsets}
    non_summands = set()
    for a in candidates:
        is_summand = False
        for b in subsets:
            if b == zero or (distinct and b == a):
                continue
            if naive_sumset(a, b) <= ground:
                is_summand = True
                break
        if not is_summand:
            non_summands.add(a)
    return non_sumsets, non_summands, non_sumsets & non_summands


def oracle_is_iasgl(graph: Graph, ground: frozenset[int], labels: dict[str, frozenset[int]]) -> bool:
    """Definition-level check of a graceful set-indexer, no library code."""
    if set(labels) != set(graph.vertex_ids):
        return False
    values = list(labels.values())
    if len(set(values)) != len(values):
        return False
    if any(not lab or not lab <= ground for lab in values):
        return False
    edge_labels = [naive_sumset(labels[u], labels[v]) for u, v in graph.sorted_edges()]
    if len(set(edge_labels)) != len(edge_labels):
        return False
    targets = {s for s in nonempty_subsets(ground) if s != frozenset({0})}
    return set(edge_labels) == targets


def oracle_search_all(graph: Graph, ground_elements) -> list[dict[str, frozenset[int]]]:
    """Every graceful labeling of the graph, by raw enumeration of all
    injective assignments of non-empty subsets to vertices."""
    ground = frozenset(ground_elements)
    subsets = nonempty_subsets(ground_elements)
    vertices = list(graph.vertex_ids)
    witnesses = []
    if len(vertices) > len(subsets):
        return witnesses
    for combo in permutations(subsets, len(vertices)):
        labels = dict(zip(vertices, combo))
        if oracle_is_iasgl(graph, ground, labels):
            witnesses.append(labels)
    return witnesses


def prufer_trees(m: int):
    """All labeled trees on m vertices, decoded from Prufer sequences."""
    import bisect
    from itertools import product

    if m == 2:
        yield [(0, 1)]
        return
    for seq in product(range(m), repeat=m - 2):
        degree = [1] * m
        for v in seq:
            degree[v] += 1
        edges = []
        leaves = sorted(v for v in range(m) if degree[v] == 1)
        for v in seq:
            leaf = leaves.pop(0)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                # v becomes a leaf; keep the pool sorted for determinism.
                bisect.insort(leaves, v)
        edges.append((leaves[0], leaves[1]))
        yield edges


def labeling_to_frozensets(labeling) -> dict[str, frozenset[int]]:
    return {vid: frozenset(s.elements) for vid, s in labeling.assignment}


@pytest.fixture
def x01() -> GroundSet:
    return GroundSet.of(0, 1)


@pytest.fixture
def x012() -> GroundSet:
    return GroundSet.of(0, 1, 2)


@pytest.fixture
def x0123() -> GroundSet:
    return GroundSet.of(0, 1, 2, 3)


def iset(*elements: int) -> IntegerSet:
    return IntegerSet.of(*elements)
