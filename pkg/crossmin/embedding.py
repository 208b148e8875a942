"""
Combinatorial embeddings, faces and dual graphs.

An edge ``e`` with endpoints ``(u, v)`` owns two darts: ``(e, 0)`` leaves
``u`` and ``(e, 1)`` leaves ``v``. The rotation at a vertex is the cyclic order
of the darts leaving it; face boundaries follow ``next(d) = succ(twin(d))``.
Faces, vertex/face incidences and the dual are derived lazily and cached per
``version``, which every rotation mutation bumps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx
import numpy as np

from .errors import InvalidEmbeddingError, StructuralError
from .graph import EdgeId, Graph, VertexId

logger = logging.getLogger(__name__)

Dart = tuple[EdgeId, int]
FaceId = int


def twin(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


def dart_at(g: Graph, e: EdgeId, v: VertexId) -> Dart:
    """The dart of non-loop edge ``e`` that leaves ``v``."""
    u, w = g.endpoints(e)
    if v == u:
        return (e, 0)
    if v == w:
        return (e, 1)
    raise StructuralError(f"vertex {v} is not an endpoint of edge {e}")


@dataclass(frozen=True)
class Face:
    id: FaceId
    boundary: tuple[Dart, ...]

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass
class FaceStructure:
    faces: list[Face]
    face_of: dict[Dart, FaceId]
    position: dict[Dart, int]
    vertex_faces: dict[VertexId, list[FaceId]]

    def __len__(self) -> int:
        return len(self.faces)

    def corner(self, face: FaceId, tail: VertexId, emb: "CombinatorialEmbedding") -> Dart:
        """First dart of ``face`` leaving ``tail``."""
        for d in self.faces[face].boundary:
            if emb.tail(d) == tail:
                return d
        raise InvalidEmbeddingError(f"vertex {tail} is not on face {face}")


@dataclass
class DualGraph:
    graph: Graph
    dual_of: dict[EdgeId, EdgeId]
    primal_of: dict[EdgeId, EdgeId]
    adjacency: list[list[tuple[FaceId, EdgeId]]] = field(default_factory=list)

    def neighbors(self, face: FaceId) -> list[tuple[FaceId, EdgeId]]:
        """(neighbouring face, crossed primal edge) in primal edge id order."""
        return self.adjacency[face]


@dataclass(frozen=True)
class NonPlanarVerdict:
    witness: frozenset[EdgeId] | None = None

    def __bool__(self) -> bool:
        return False


class CombinatorialEmbedding:
    def __init__(self, graph: Graph, rotation: dict[VertexId, list[Dart]] | None = None):
        self.graph = graph
        self.version = 0
        self._succ: dict[Dart, Dart] = {}
        self._pred: dict[Dart, Dart] = {}
        self._at: dict[Dart, VertexId] = {}
        self._anchor: dict[VertexId, Dart] = {}
        self._faces: FaceStructure | None = None
        self._faces_version = -1
        self._dual: DualGraph | None = None
        self._dual_version = -1
        for v, darts in (rotation or {}).items():
            self.set_rotation(v, darts)

    # ------------------------------------------------------------------
    # Darts and rotations
    # ------------------------------------------------------------------

    def tail(self, d: Dart) -> VertexId:
        if d in self._at:
            return self._at[d]
        return self.graph.endpoints(d[0])[d[1]]

    def head(self, d: Dart) -> VertexId:
        return self.tail(twin(d))

    def succ(self, d: Dart) -> Dart:
        return self._succ[d]

    def pred(self, d: Dart) -> Dart:
        return self._pred[d]

    def rotation(self, v: VertexId) -> list[Dart]:
        start = self._anchor.get(v)
        if start is None:
            return []
        darts = [start]
        d = self._succ[start]
        while d != start:
            darts.append(d)
            d = self._succ[d]
        return darts

    def darts(self) -> list[Dart]:
        return sorted(self._succ)

    def _touch(self) -> None:
        self.version += 1

    def set_rotation(self, v: VertexId, darts: Iterable[Dart]) -> None:
        for d in self.rotation(v):
            self._forget(d)
        darts = list(darts)
        if not darts:
            self._anchor.pop(v, None)
            self._touch()
            return
        for i, d in enumerate(darts):
            if d in self._succ:
                raise InvalidEmbeddingError(f"dart {d} is already placed")
            self._at[d] = v
            self._succ[d] = darts[(i + 1) % len(darts)]
            self._pred[d] = darts[i - 1]
        self._anchor[v] = darts[0]
        self._touch()

    def insert_before(self, new: Dart, ref: Dart | None, at: VertexId | None = None) -> None:
        """Place ``new`` immediately before ``ref`` in the rotation of ``ref``'s tail.

        With ``ref=None`` the dart becomes the only dart at ``at``.
        """
        if new in self._succ:
            raise InvalidEmbeddingError(f"dart {new} is already placed")
        if ref is None:
            if at is None or self._anchor.get(at) is not None:
                raise InvalidEmbeddingError("a reference dart is required at a non-isolated vertex")
            self._at[new] = at
            self._succ[new] = self._pred[new] = new
            self._anchor[at] = new
        else:
            v = self._at[ref]
            p = self._pred[ref]
            self._at[new] = v
            self._succ[p] = new
            self._pred[new] = p
            self._succ[new] = ref
            self._pred[ref] = new
        self._touch()

    def replace(self, old: Dart, new: Dart) -> None:
        """``new`` takes the rotation slot of ``old``."""
        if new in self._succ:
            raise InvalidEmbeddingError(f"dart {new} is already placed")
        v = self._at.pop(old)
        s, p = self._succ.pop(old), self._pred.pop(old)
        self._at[new] = v
        if s == old:
            self._succ[new] = self._pred[new] = new
        else:
            self._succ[new], self._pred[new] = s, p
            self._succ[p] = new
            self._pred[s] = new
        if self._anchor.get(v) == old:
            self._anchor[v] = new
        self._touch()

    def detach(self, d: Dart) -> None:
        self._forget(d)
        self._touch()

    def _forget(self, d: Dart) -> None:
        v = self._at.pop(d)
        s, p = self._succ.pop(d), self._pred.pop(d)
        if s == d:
            del self._anchor[v]
            return
        self._succ[p] = s
        self._pred[s] = p
        if self._anchor[v] == d:
            self._anchor[v] = s

    def detach_edge(self, e: EdgeId) -> None:
        for d in ((e, 0), (e, 1)):
            if d in self._succ:
                self._forget(d)
        self._touch()

    # ------------------------------------------------------------------
    # Derived structure
    # ------------------------------------------------------------------

    @property
    def faces(self) -> FaceStructure:
        if self._faces is None or self._faces_version != self.version:
            self._faces = compute_faces(self)
            self._faces_version = self.version
        return self._faces

    @property
    def dual(self) -> DualGraph:
        if self._dual is None or self._dual_version != self.version:
            self._dual = build_dual(self)
            self._dual_version = self.version
        return self._dual

    def vertex_faces(self, v: VertexId) -> list[FaceId]:
        return self.faces.vertex_faces.get(v, [])

    def face_of(self, d: Dart) -> FaceId:
        return self.faces.face_of[d]

    def check(self) -> None:
        """Raise unless the rotation covers exactly the graph's darts and Euler holds."""
        expected = set()
        for e in self.graph.edges():
            u, v = self.graph.endpoints(e)
            expected.add((e, 0))
            expected.add((e, 1))
            for d, w in (((e, 0), u), ((e, 1), v)):
                if self._at.get(d) != w:
                    raise InvalidEmbeddingError(f"dart {d} is not placed at its tail {w}")
        if expected != set(self._succ):
            extra = sorted(set(self._succ) - expected)
            missing = sorted(expected - set(self._succ))
            raise InvalidEmbeddingError(f"rotation darts mismatch: extra={extra[:5]} missing={missing[:5]}")
        compute_faces(self)

    def copy(self, graph: Graph) -> "CombinatorialEmbedding":
        other = CombinatorialEmbedding(graph)
        other._succ = dict(self._succ)
        other._pred = dict(self._pred)
        other._at = dict(self._at)
        other._anchor = dict(self._anchor)
        other.version = self.version
        return other


# ----------------------------------------------------------------------
# Faces and dual
# ----------------------------------------------------------------------

def compute_faces(emb: CombinatorialEmbedding) -> FaceStructure:
    """Trace all faces of the rotation system and verify Euler's formula."""
    faces: list[Face] = []
    face_of: dict[Dart, FaceId] = {}
    position: dict[Dart, int] = {}
    for start in emb.darts():
        if start in face_of:
            continue
        fid = len(faces)
        boundary = []
        d = start
        while True:
            if d in face_of:
                raise InvalidEmbeddingError(f"face traversal from {start} does not close")
            face_of[d] = fid
            position[d] = len(boundary)
            boundary.append(d)
            d = emb.succ(twin(d))
            if d == start:
                break
        faces.append(Face(fid, tuple(boundary)))

    vertex_faces: dict[VertexId, set[FaceId]] = {v: set() for v in emb.graph.vertices()}
    for d, fid in face_of.items():
        vertex_faces[emb.tail(d)].add(fid)

    _check_euler(emb.graph, faces, emb)
    return FaceStructure(
        faces=faces,
        face_of=face_of,
        position=position,
        vertex_faces={v: sorted(fs) for v, fs in vertex_faces.items()},
    )


def _check_euler(g: Graph, faces: list[Face], emb: CombinatorialEmbedding) -> None:
    component = {}
    for index, part in enumerate(nx.connected_components(g.to_simple_networkx())):
        for v in part:
            component[v] = index
    n = np.zeros(len(set(component.values())) or 1, dtype=np.int64)
    m = np.zeros_like(n)
    f = np.zeros_like(n)
    for v, c in component.items():
        n[c] += 1
    for e in g.edges():
        m[component[g.endpoints(e)[0]]] += 1
    for face in faces:
        f[component[emb.tail(face.boundary[0])]] += 1
    for c in range(len(n)):
        if m[c] == 0:
            continue
        if n[c] - m[c] + f[c] != 2:
            raise InvalidEmbeddingError(
                f"Euler violation: n={n[c]} m={m[c]} f={f[c]} in component {c}"
            )


def build_dual(emb: CombinatorialEmbedding) -> DualGraph:
    structure = emb.faces
    dual = Graph()
    for _ in structure.faces:
        dual.add_vertex()
    dual_of: dict[EdgeId, EdgeId] = {}
    primal_of: dict[EdgeId, EdgeId] = {}
    adjacency: list[list[tuple[FaceId, EdgeId]]] = [[] for _ in structure.faces]
    for e in emb.graph.edges():
        left, right = structure.face_of[(e, 0)], structure.face_of[(e, 1)]
        de = dual.add_edge(left, right)
        dual_of[e] = de
        primal_of[de] = e
        adjacency[left].append((right, e))
        if right != left:
            adjacency[right].append((left, e))
    return DualGraph(dual, dual_of, primal_of, adjacency)


# ----------------------------------------------------------------------
# Planarity
# ----------------------------------------------------------------------

def test_planarity(g: Graph, witness: bool = False) -> CombinatorialEmbedding | NonPlanarVerdict:
    """Planar embedding of ``g`` or a verdict, optionally with a Kuratowski witness."""
    simple = g.to_simple_networkx()
    is_planar, certificate = nx.check_planarity(simple, counterexample=witness)
    if not is_planar:
        edges = None
        if witness and certificate is not None:
            edges = frozenset(g.edges_between(u, v)[0] for u, v in certificate.edges())
        return NonPlanarVerdict(witness=edges)

    rotation: dict[VertexId, list[Dart]] = {}
    for v in g.vertices():
        darts: list[Dart] = []
        for e in g.incident_edges(v):
            if g.is_loop(e):
                # consecutive darts: the loop bounds a face of its own
                darts.extend([(e, 1), (e, 0)])
        for w in certificate.neighbors_cw_order(v):
            parallel = g.edges_between(v, w)
            # the two ends of a parallel bundle use opposite orders
            if v < w:
                parallel = parallel[::-1]
            darts.extend(dart_at(g, e, v) for e in parallel)
        rotation[v] = darts
    emb = CombinatorialEmbedding(g, rotation)
    compute_faces(emb)
    return emb


test_planarity.__test__ = False


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_simple_networkx())[0]


@dataclass
class PlanarSubgraph:
    kept: set[EdgeId]
    deleted: list[EdgeId]


def maximal_planar_subgraph(g: Graph, order_seed: int = 0) -> PlanarSubgraph:
    """Inclusion-wise maximal planar subgraph by seeded incremental insertion."""
    edges = g.edges()
    rng = np.random.default_rng(order_seed)
    order = [edges[i] for i in rng.permutation(len(edges))]

    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    bound = max(3 * g.number_of_vertices() - 6, 1)
    kept: set[EdgeId] = set()
    deleted: list[EdgeId] = []
    for e in order:
        u, v = g.endpoints(e)
        if u == v or h.has_edge(u, v):
            kept.add(e)
            continue
        if h.number_of_edges() >= bound:
            deleted.append(e)
            continue
        h.add_edge(u, v)
        if nx.check_planarity(h)[0]:
            kept.add(e)
        else:
            h.remove_edge(u, v)
            deleted.append(e)

    # maximality pass; a single incremental pass already rejects each deleted
    # edge against a subset of the final edge set
    for e in list(deleted):
        u, v = g.endpoints(e)
        h.add_edge(u, v)
        if nx.check_planarity(h)[0]:
            kept.add(e)
            deleted.remove(e)
        else:
            h.remove_edge(u, v)
    logger.debug("maximal planar subgraph keeps %d of %d edges", len(kept), len(edges))
    return PlanarSubgraph(kept=kept, deleted=deleted)


def chordless_cycle(g: Graph) -> list[VertexId]:
    """A chordless cycle: a BFS fundamental cycle shortcut across chords."""
    adj = {v: set(g.neighbors(v)) - {v} for v in g.vertices()}
    parent: dict[VertexId, VertexId | None] = {}
    depth: dict[VertexId, int] = {}
    for root in g.vertices():
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in sorted(adj[u]):
                    if w not in parent:
                        parent[w] = u
                        depth[w] = depth[u] + 1
                        nxt.append(w)
            frontier = nxt

    non_tree = None
    for e in g.edges():
        u, v = g.endpoints(e)
        if u != v and parent[u] != v and parent[v] != u:
            non_tree = (u, v)
            break
    if non_tree is None:
        raise StructuralError("graph is acyclic; no chordless cycle exists")

    u, v = non_tree
    left, right = [u], [v]
    while left[-1] != right[-1]:
        if depth[left[-1]] >= depth[right[-1]]:
            left.append(parent[left[-1]])
        else:
            right.append(parent[right[-1]])
    cycle = left + right[-2::-1]

    while True:
        pos = {x: i for i, x in enumerate(cycle)}
        length = len(cycle)
        chord = None
        for i, x in enumerate(cycle):
            for y in adj[x]:
                j = pos.get(y)
                if j is None or j <= i + 1 or (i == 0 and j == length - 1):
                    continue
                chord = (i, j)
                break
            if chord:
                break
        if chord is None:
            return cycle
        i, j = chord
        inner = cycle[i:j + 1]
        outer = cycle[j:] + cycle[:i + 1]
        cycle = inner if len(inner) <= len(outer) else outer
