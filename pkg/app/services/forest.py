# app/services/forest.py
"""Bipartite incidence graphs of [I_r | D] and their spanning forests.

Vertices are ground-set labels: basis labels on one side, the other labels on
the other side. An edge (b, e) means D has a nonzero entry in row b, column e.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

import networkx as nx


def incidence_graph(
    row_labels: Sequence[int],
    col_labels: Sequence[int],
    nonzero: Callable[[int, int], bool],
) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(row_labels, side="row")
    G.add_nodes_from(col_labels, side="col")
    for i, b in enumerate(row_labels):
        for j, e in enumerate(col_labels):
            if nonzero(i, j):
                G.add_edge(b, e)
    return G


def bfs_forest(G: nx.Graph) -> list[tuple[int, int]]:
    """Tree edges (parent, child) of a BFS from the least unvisited label, neighbours ascending."""
    seen: set[int] = set()
    edges: list[tuple[int, int]] = []
    for root in sorted(G.nodes):
        if root in seen:
            continue
        seen.add(root)
        for u, v in nx.bfs_edges(G, root, sort_neighbors=sorted):
            seen.add(v)
            edges.append((u, v))
    return edges


def is_spanning_forest(G: nx.Graph, edges: Iterable[tuple[int, int]]) -> bool:
    edges = list(edges)
    if any(not G.has_edge(u, v) for u, v in edges):
        return False
    F = nx.Graph()
    F.add_nodes_from(G.nodes)
    F.add_edges_from(edges)
    if F.number_of_edges() != len(edges) or not nx.is_forest(F):
        return False
    return nx.number_connected_components(F) == nx.number_connected_components(G)


def row_side(G: nx.Graph, node: int) -> bool:
    return G.nodes[node].get("side") == "row"
