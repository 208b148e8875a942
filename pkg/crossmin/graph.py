"""
Undirected multigraph with stable vertex and edge identifiers.

Identifiers are plain integers handed out by per-graph counters and are never
reused, so planarization chains can reference host edges across arbitrarily
many mutations. Parallel edges and self-loops are supported; a self-loop
contributes 2 to the degree of its vertex and appears twice in its incidence
list.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

from .errors import StructuralError

logger = logging.getLogger(__name__)

VertexId = int
EdgeId = int


class Graph:
    def __init__(self):
        self._incidence: dict[VertexId, list[EdgeId]] = {}
        self._ends: dict[EdgeId, tuple[VertexId, VertexId]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    # ------------------------------------------------------------------
    # Mutation
    # ------------------------------------------------------------------

    def add_vertex(self) -> VertexId:
        v = self._next_vertex
        self._next_vertex += 1
        self._incidence[v] = []
        return v

    def add_edge(self, u: VertexId, v: VertexId) -> EdgeId:
        self._require_vertex(u)
        self._require_vertex(v)
        e = self._next_edge
        self._next_edge += 1
        self._ends[e] = (u, v)
        self._incidence[u].append(e)
        # a loop is listed twice at its vertex
        self._incidence[v].append(e)
        return e

    def delete_edge(self, e: EdgeId) -> None:
        u, v = self.endpoints(e)
        self._incidence[u].remove(e)
        self._incidence[v].remove(e)
        del self._ends[e]

    def delete_vertex(self, v: VertexId) -> None:
        self._require_vertex(v)
        for e in set(self._incidence[v]):
            self.delete_edge(e)
        del self._incidence[v]

    def add_vertex_with_id(self, v: VertexId) -> None:
        if v in self._incidence or v < 0:
            raise StructuralError(f"vertex id {v} is already taken")
        self._incidence[v] = []
        self._next_vertex = max(self._next_vertex, v + 1)

    def reserve_ids(self, other: "Graph") -> None:
        """Never hand out an id that is (or was) in use in ``other``."""
        self._next_vertex = max(self._next_vertex, other._next_vertex)
        self._next_edge = max(self._next_edge, other._next_edge)

    def _add_edge_with_id(self, e: EdgeId, u: VertexId, v: VertexId) -> None:
        if e in self._ends or e < 0:
            raise StructuralError(f"edge id {e} is already taken")
        self._require_vertex(u)
        self._require_vertex(v)
        self._ends[e] = (u, v)
        self._incidence[u].append(e)
        self._incidence[v].append(e)
        self._next_edge = max(self._next_edge, e + 1)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def _require_vertex(self, v: VertexId) -> None:
        if v not in self._incidence:
            raise StructuralError(f"unknown vertex {v}")

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._incidence

    def has_edge(self, e: EdgeId) -> bool:
        return e in self._ends

    def vertices(self) -> list[VertexId]:
        return sorted(self._incidence)

    def edges(self) -> list[EdgeId]:
        return sorted(self._ends)

    def number_of_vertices(self) -> int:
        return len(self._incidence)

    def number_of_edges(self) -> int:
        return len(self._ends)

    def endpoints(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        try:
            return self._ends[e]
        except KeyError:
            raise StructuralError(f"unknown edge {e}") from None

    def opposite(self, e: EdgeId, v: VertexId) -> VertexId:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise StructuralError(f"vertex {v} is not an endpoint of edge {e}")

    def incident(self, v: VertexId) -> list[EdgeId]:
        self._require_vertex(v)
        return list(self._incidence[v])

    def incident_edges(self, v: VertexId) -> list[EdgeId]:
        """Distinct incident edges in id order (loops once)."""
        self._require_vertex(v)
        return sorted(set(self._incidence[v]))

    def degree(self, v: VertexId) -> int:
        self._require_vertex(v)
        return len(self._incidence[v])

    def degree_in_subset(self, v: VertexId, edges: Iterable[EdgeId]) -> int:
        """Number of edges of ``edges`` incident to ``v``; a loop counts once."""
        self._require_vertex(v)
        subset = set(edges)
        return sum(1 for e in set(self._incidence[v]) if e in subset)

    def neighbors(self, v: VertexId) -> list[VertexId]:
        return sorted({self.opposite(e, v) for e in self.incident(v)})

    def edges_between(self, u: VertexId, v: VertexId) -> list[EdgeId]:
        return sorted(e for e in set(self.incident(u)) if set(self.endpoints(e)) == {u, v})

    def is_loop(self, e: EdgeId) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def __contains__(self, v: VertexId) -> bool:
        return v in self._incidence

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.vertices())

    def __len__(self) -> int:
        return len(self._incidence)

    def __repr__(self) -> str:
        return f"Graph(n={self.number_of_vertices()}, m={self.number_of_edges()})"

    # ------------------------------------------------------------------
    # Derived graphs
    # ------------------------------------------------------------------

    def copy(self) -> "Graph":
        g = Graph()
        g._incidence = {v: list(es) for v, es in self._incidence.items()}
        g._ends = dict(self._ends)
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    def edge_subgraph(self, edges: Iterable[EdgeId], vertices: Iterable[VertexId] | None = None) -> "Graph":
        """Subgraph with the given edges, keeping all ids.

        Without ``vertices`` every vertex of this graph is kept (spanning).
        """
        g = Graph()
        keep = self.vertices() if vertices is None else sorted(set(vertices))
        for v in keep:
            self._require_vertex(v)
            g.add_vertex_with_id(v)
        for e in sorted(set(edges)):
            u, v = self.endpoints(e)
            g._add_edge_with_id(e, u, v)
        return g

    def relabeled(self) -> "Graph":
        """Fresh copy with contiguous ids (vertices and edges in id order)."""
        g = Graph()
        index = {v: g.add_vertex() for v in self.vertices()}
        for e in self.edges():
            u, v = self.endpoints(e)
            g.add_edge(index[u], index[v])
        return g

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph whose edge keys are this graph's edge ids."""
        h = nx.MultiGraph()
        h.add_nodes_from(self.vertices())
        for e in self.edges():
            u, v = self._ends[e]
            h.add_edge(u, v, key=e)
        return h

    def to_simple_networkx(self) -> nx.Graph:
        """Simple projection: parallel edges merged, loops dropped."""
        h = nx.Graph()
        h.add_nodes_from(self.vertices())
        h.add_edges_from((u, v) for u, v in self._ends.values() if u != v)
        return h

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls()
        for _ in range(n):
            g.add_vertex()
        for u, v in edges:
            g.add_edge(u, v)
        return g


@dataclass(frozen=True)
class Star:
    """A vertex together with a subset of its incident edges."""

    center: VertexId
    rays: frozenset[EdgeId]

    def validate(self, g: Graph) -> None:
        for e in self.rays:
            if self.center not in g.endpoints(e):
                raise StructuralError(f"ray {e} is not incident to star center {self.center}")

    def far_endpoints(self, g: Graph) -> dict[EdgeId, VertexId]:
        return {e: g.opposite(e, self.center) for e in sorted(self.rays)}

    @classmethod
    def from_vertex(cls, g: Graph, v: VertexId, neighbours: Iterable[VertexId] | None = None) -> "Star":
        allowed = None if neighbours is None else set(neighbours)
        rays = [
            e for e in g.incident_edges(v)
            if not g.is_loop(e) and (allowed is None or g.opposite(e, v) in allowed)
        ]
        return cls(center=v, rays=frozenset(rays))


# ----------------------------------------------------------------------
# Connectivity
# ----------------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.number_of_vertices() == 0:
        return True
    return nx.is_connected(g.to_simple_networkx())


def cut_vertices(g: Graph) -> set[VertexId]:
    """Vertices whose removal disconnects ``g``."""
    if not is_connected(g):
        raise StructuralError("cut vertices are only defined here for connected graphs")
    if g.number_of_vertices() < 3:
        return set()
    return set(nx.articulation_points(g.to_simple_networkx()))


def bridges(g: Graph) -> set[EdgeId]:
    """Edges whose removal disconnects their endpoints (parallel edges never are)."""
    found = set()
    for u, v in nx.bridges(g.to_simple_networkx()):
        between = g.edges_between(u, v)
        if len(between) == 1:
            found.add(between[0])
    return found


def biconnected_components(g: Graph) -> list[set[EdgeId]]:
    """Partition of the edges into blocks (bridges and loops are blocks of their own)."""
    by_pair: dict[frozenset, list[EdgeId]] = {}
    loops: list[EdgeId] = []
    for e in g.edges():
        u, v = g.endpoints(e)
        if u == v:
            loops.append(e)
        else:
            by_pair.setdefault(frozenset((u, v)), []).append(e)

    components: list[set[EdgeId]] = []
    for block in nx.biconnected_component_edges(g.to_simple_networkx()):
        edges: set[EdgeId] = set()
        for u, v in block:
            edges.update(by_pair[frozenset((u, v))])
        components.append(edges)
    components.extend({e} for e in loops)
    components.sort(key=min)
    logger.debug("found %d biconnected components", len(components))
    return components
