"""Deterministic synthetic network builders for experiments and tests."""

from __future__ import annotations

import random

from .errors import ValidationError
from .network import ConceptNode, SemanticNetwork, WeightedEdge, build_network

__all__ = ["generate_network", "complete_network"]


def generate_network(n: int, edge_prob: float, seed: int) -> SemanticNetwork:
    """Seeded random connected network with uniform weights in (0, 1].

    A random spanning tree guarantees connectivity; every remaining pair
    then gets an edge with probability edge_prob. The same (n,
    edge_prob, seed) triple always yields the identical network.
    """
    if n < 2:
        raise ValidationError(f"n {n} must be >= 2")
    if not 0.0 < edge_prob <= 1.0:
        raise ValidationError(f"edge_prob {edge_prob} outside (0, 1]")
    rng = random.Random(seed)
    nodes = [ConceptNode(id=i, label=f"c{i}") for i in range(n)]

    order = list(range(n))
    rng.shuffle(order)
    tree_pairs = set()
    for pos in range(1, n):
        anchor = order[rng.randrange(pos)]
        a, b = order[pos], anchor
        tree_pairs.add((min(a, b), max(a, b)))

    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) in tree_pairs or rng.random() < edge_prob:
                edges.append(WeightedEdge(a, b, 1.0 - rng.random()))
    return build_network(nodes, edges)


def complete_network(n: int, weight: float = 1.0) -> SemanticNetwork:
    """Complete graph with one uniform edge weight (symmetric scenario)."""
    if n < 2:
        raise ValidationError(f"n {n} must be >= 2")
    nodes = [ConceptNode(id=i, label=f"c{i}") for i in range(n)]
    edges = [WeightedEdge(a, b, weight) for a in range(n) for b in range(a + 1, n)]
    return build_network(nodes, edges)
