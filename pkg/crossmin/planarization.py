"""
Planarizations: a planar host graph whose degree-4 dummy vertices stand for
the crossings of a drawing of the original graph.

Original vertices keep their ids in the host. Every embedded original edge
owns a chain of host edges, oriented from its first to its second endpoint,
whose interior vertices are dummies. The embedding is updated in place by
rotation splices; no operation here re-runs the planarity test except
``from_planar_subgraph``.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field, fields
from pathlib import Path

from .embedding import CombinatorialEmbedding, Dart, FaceId, dart_at, test_planarity
from .errors import (
    InsertionError,
    InvalidEmbeddingError,
    InvariantViolation,
    PlanarityError,
    StaleInsertionError,
    StructuralError,
)
from .graph import EdgeId, Graph, Star, VertexId

logger = logging.getLogger(__name__)


@dataclass
class InsertionPath:
    """Faces ``faces[0..k]`` and the host edge crossed between each consecutive pair."""

    faces: list[FaceId]
    crossed: list[EdgeId]
    source: VertexId
    target: VertexId
    version: int

    @property
    def cost(self) -> int:
        return len(self.crossed)


@dataclass
class InsertionSpider:
    """One path per ray, each running from its far endpoint's face to ``center_face``."""

    center: VertexId
    center_face: FaceId
    paths: dict[EdgeId, InsertionPath]
    version: int

    @property
    def cost(self) -> int:
        return sum(path.cost for path in self.paths.values())


@dataclass
class PlanarizationStats:
    edge_insertions: int = 0
    star_insertions: int = 0
    alpha_removed: int = 0
    beta_removed: int = 0
    srm_alpha_removed: int = 0
    srm_beta_removed: int = 0
    sweeps: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class _Route:
    orig: EdgeId
    start: tuple[VertexId, Dart]
    # (host edge, canonical slot, side of the dart lying in the face before the crossing)
    crossings: list[tuple[EdgeId, int, int]]
    end: tuple[VertexId, Dart | None]


@dataclass
class Planarization:
    original: Graph
    host: Graph
    emb: CombinatorialEmbedding
    chain: dict[EdgeId, list[EdgeId]] = field(default_factory=dict)
    origin: dict[EdgeId, EdgeId] = field(default_factory=dict)
    dummies: dict[VertexId, frozenset[EdgeId]] = field(default_factory=dict)
    embedded_vertices: set[VertexId] = field(default_factory=set)
    stats: PlanarizationStats = field(default_factory=PlanarizationStats)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_planar_subgraph(
        cls,
        original: Graph,
        kept: set[EdgeId],
        vertices: set[VertexId] | None = None,
    ) -> "Planarization":
        """Planarization of the subgraph ``kept`` (spanning unless ``vertices`` is given)."""
        host = original.edge_subgraph(kept, vertices)
        host.reserve_ids(original)
        emb = test_planarity(host)
        if not emb:
            raise PlanarityError(f"kept edge set of size {len(kept)} is not planar")
        return cls(
            original=original,
            host=host,
            emb=emb,
            chain={e: [e] for e in sorted(kept)},
            origin={e: e for e in kept},
            embedded_vertices=set(host.vertices()),
        )

    def copy(self) -> "Planarization":
        host = self.host.copy()
        return Planarization(
            original=self.original,
            host=host,
            emb=self.emb.copy(host),
            chain={o: list(c) for o, c in self.chain.items()},
            origin=dict(self.origin),
            dummies=dict(self.dummies),
            embedded_vertices=set(self.embedded_vertices),
            stats=PlanarizationStats(**self.stats.as_dict()),
        )

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def crossing_count(self) -> int:
        return len(self.dummies)

    def is_embedded(self, o: EdgeId) -> bool:
        return o in self.chain

    def is_dummy(self, v: VertexId) -> bool:
        return v in self.dummies

    def chain_vertices(self, o: EdgeId) -> list[VertexId]:
        cur = self.original.endpoints(o)[0]
        verts = [cur]
        for h in self.chain[o]:
            cur = self.host.opposite(h, cur)
            verts.append(cur)
        return verts

    def chain_crossings(self, o: EdgeId) -> int:
        return len(self.chain[o]) - 1

    def star_crossings(self, v: VertexId) -> int:
        """Dummies on the chains of ``v``'s embedded edges (a dummy between two of them counts once)."""
        seen: set[VertexId] = set()
        for o in self.original.incident_edges(v):
            if o in self.chain:
                seen.update(self.chain_vertices(o)[1:-1])
        return len(seen)

    def _oriented(self, o: EdgeId, start: VertexId) -> tuple[list[VertexId], list[EdgeId]]:
        verts, edges = self.chain_vertices(o), list(self.chain[o])
        if verts[0] != start:
            verts.reverse()
            edges.reverse()
        return verts, edges

    def _assign(self, o: EdgeId, edges: list[EdgeId], start: VertexId) -> None:
        if start != self.original.endpoints(o)[0]:
            edges = edges[::-1]
        self.chain[o] = edges
        for h in edges:
            self.origin[h] = o

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> list[str]:
        """All violated planarization invariants, as readable messages."""
        problems: list[str] = []
        try:
            self.emb.check()
        except InvalidEmbeddingError as exc:
            problems.append(f"embedding: {exc}")

        owner: dict[EdgeId, EdgeId] = {}
        interior = 0
        for o, edges in self.chain.items():
            if not edges:
                problems.append(f"chain {o} is empty")
                continue
            try:
                verts = self.chain_vertices(o)
            except StructuralError as exc:
                problems.append(f"chain {o} is not a walk: {exc}")
                continue
            if verts[-1] != self.original.endpoints(o)[1]:
                problems.append(f"chain {o} ends at {verts[-1]}")
            if len(set(verts)) != len(verts):
                problems.append(f"chain {o} is not a path")
            for x in verts[1:-1]:
                if x not in self.dummies:
                    problems.append(f"chain {o} passes through non-dummy {x}")
            interior += len(verts) - 2
            for h in edges:
                if self.origin.get(h) != o:
                    problems.append(f"host edge {h} on chain {o} has origin {self.origin.get(h)}")
                if h in owner:
                    problems.append(f"host edge {h} is on chains {owner[h]} and {o}")
                owner[h] = o
        if set(owner) != set(self.host.edges()):
            problems.append("host edges and chains disagree")
        if interior != 2 * len(self.dummies):
            problems.append(f"{interior} chain-interior vertices for {len(self.dummies)} dummies")

        for x, pair in self.dummies.items():
            if not self.host.has_vertex(x) or self.host.degree(x) != 4:
                problems.append(f"dummy {x} does not have degree 4")
                continue
            ring = [self.origin.get(d[0]) for d in self.emb.rotation(x)]
            a, b = ring[0], ring[1]
            if a == b or ring != [a, b, a, b] or {a, b} != set(pair):
                problems.append(f"dummy {x} rotation {ring} does not alternate {sorted(pair)}")

        for v in self.host.vertices():
            if v not in self.dummies and v not in self.embedded_vertices:
                problems.append(f"host vertex {v} is neither a dummy nor embedded")
        return problems

    def check(self) -> None:
        problems = self.validate()
        if problems:
            raise InvariantViolation("; ".join(problems[:5]))

    # ------------------------------------------------------------------
    # Realization
    # ------------------------------------------------------------------

    def _require_current(self, version: int) -> None:
        if version != self.emb.version:
            raise StaleInsertionError(
                f"computed for embedding version {version}, current is {self.emb.version}"
            )

    def _side_in(self, h: EdgeId, face: FaceId) -> int:
        structure = self.emb.faces
        if structure.face_of[(h, 0)] == face:
            return 0
        if structure.face_of[(h, 1)] == face:
            return 1
        raise InvariantViolation(f"host edge {h} is not on face {face}")

    def realize_path(self, o: EdgeId, path: InsertionPath) -> int:
        """Embed original edge ``o`` along ``path``; returns the number of new dummies."""
        self._require_current(path.version)
        if o in self.chain:
            raise InvariantViolation(f"edge {o} is already embedded")
        if {path.source, path.target} != set(self.original.endpoints(o)):
            raise StructuralError(f"path does not connect the endpoints of edge {o}")
        for v in (path.source, path.target):
            if v not in self.embedded_vertices:
                raise InsertionError(f"endpoint {v} of edge {o} is not embedded")
        if len(set(path.crossed)) != len(path.crossed):
            raise InvariantViolation("insertion path crosses a host edge twice")

        structure = self.emb.faces
        crossings = []
        for i, h in enumerate(path.crossed):
            side = self._side_in(h, path.faces[i])
            if structure.face_of[(h, 1 - side)] != path.faces[i + 1]:
                raise InvariantViolation(f"host edge {h} does not separate faces {path.faces[i]} and {path.faces[i + 1]}")
            crossings.append((h, 1, side))
        route = _Route(
            orig=o,
            start=(path.source, structure.corner(path.faces[0], path.source, self.emb)),
            crossings=crossings,
            end=(path.target, structure.corner(path.faces[-1], path.target, self.emb)),
        )
        before = len(self.dummies)
        self._realize([route])
        self.stats.edge_insertions += 1
        return len(self.dummies) - before

    def realize_spider(self, star: Star, spider: InsertionSpider) -> int:
        """Place ``star.center`` in the spider's center face and embed every ray."""
        self._require_current(spider.version)
        v = star.center
        if v in self.embedded_vertices or v in self.dummies:
            raise InvariantViolation(f"star center {v} is already embedded")
        if not star.rays:
            raise InsertionError(f"star at {v} has no rays")
        if set(spider.paths) != set(star.rays):
            raise InvariantViolation("spider paths do not match the star's rays")
        far = star.far_endpoints(self.original)
        if len(set(far.values())) != len(far):
            raise StructuralError(f"star at {v} has parallel rays")

        structure = self.emb.faces
        root = spider.center_face
        parent: dict[FaceId, tuple[FaceId, EdgeId]] = {}
        for ray, path in spider.paths.items():
            if path.faces[-1] != root or path.source != far[ray]:
                raise InvariantViolation(f"spider path of ray {ray} does not end in the center face")
            if far[ray] not in self.embedded_vertices:
                raise InsertionError(f"far endpoint {far[ray]} is not embedded")
            for i, h in enumerate(path.crossed):
                link = (path.faces[i + 1], h)
                if parent.setdefault(path.faces[i], link) != link:
                    raise InvariantViolation(f"spider paths cross inside face {path.faces[i]}")
        if root in parent:
            raise InvariantViolation("spider paths cross the center face")

        def depth(face: FaceId) -> int:
            d = 0
            while face in parent:
                face = parent[face][0]
                d += 1
            return d

        corners: dict[FaceId, list[tuple[int, int, list[EdgeId]]]] = defaultdict(list)
        for ray in sorted(spider.paths):
            face = spider.paths[ray].faces[0]
            dart = structure.corner(face, far[ray], self.emb)
            corners[face].append((structure.position[dart], -1, [ray]))
        children: dict[FaceId, list[FaceId]] = defaultdict(list)
        for face, (up, _) in parent.items():
            children[up].append(face)

        # exit order of each face: rays by position along its exit dart
        exit_dart: dict[FaceId, Dart] = {}
        exit_order: dict[FaceId, list[EdgeId]] = {}
        slot: dict[tuple[EdgeId, FaceId], int] = {}

        def entries(face: FaceId) -> list[tuple[int, int, list[EdgeId]]]:
            items = list(corners.get(face, []))
            for child in children.get(face, []):
                incoming = exit_dart[child]
                idx = structure.position[(incoming[0], 1 - incoming[1])]
                for sub, ray in enumerate(reversed(exit_order[child])):
                    items.append((idx, sub, [ray]))
            return items

        for face in sorted(parent, key=lambda f: (-depth(f), f)):
            up, h = parent[face]
            side = self._side_in(h, face)
            beta = (h, side)
            exit_dart[face] = beta
            e_idx = structure.position[beta]
            length = len(structure.faces[face])
            ordered = [
                ray
                for _, _, rays in sorted(
                    entries(face), key=lambda item: ((item[0] - e_idx - 1) % length, item[1])
                )
                for ray in rays
            ]
            t = len(ordered)
            exit_order[face] = ordered[::-1]
            for pos, ray in enumerate(exit_order[face], start=1):
                slot[(ray, face)] = pos if side == 0 else t + 1 - pos

        center_order = [ray for _, _, rays in sorted(entries(root), key=lambda item: (item[0], item[1])) for ray in rays]

        routes = []
        for ray in sorted(spider.paths):
            path = spider.paths[ray]
            crossings = []
            for i, h in enumerate(path.crossed):
                face = path.faces[i]
                crossings.append((h, slot[(ray, face)], exit_dart[face][1]))
            w = far[ray]
            routes.append(
                _Route(
                    orig=ray,
                    start=(w, structure.corner(path.faces[0], w, self.emb)),
                    crossings=crossings,
                    end=(v, None),
                )
            )

        before = len(self.dummies)
        self.host.add_vertex_with_id(v)
        self.embedded_vertices.add(v)
        center_darts = self._realize(routes)
        self.emb.set_rotation(v, [center_darts[ray] for ray in reversed(center_order)])
        self.stats.star_insertions += 1
        return len(self.dummies) - before

    def _subdivide(self, h: EdgeId, t: int) -> tuple[list[EdgeId], list[VertexId]]:
        u, v = self.host.endpoints(h)
        o = self.origin[h]
        xs = [self.host.add_vertex() for _ in range(t)]
        seq = [u, *xs, v]
        pieces = [self.host.add_edge(seq[i], seq[i + 1]) for i in range(t + 1)]
        for piece in pieces:
            self.origin[piece] = o
        self.emb.replace((h, 0), (pieces[0], 0))
        self.emb.replace((h, 1), (pieces[-1], 1))
        for k, x in enumerate(xs, start=1):
            self.emb.set_rotation(x, [(pieces[k - 1], 1), (pieces[k], 0)])

        edges = self.chain[o]
        i = edges.index(h)
        forward = self.chain_vertices(o)[i] == u
        edges[i:i + 1] = pieces if forward else pieces[::-1]
        self.host.delete_edge(h)
        del self.origin[h]
        return pieces, xs

    def _realize(self, routes: list[_Route]) -> dict[EdgeId, Dart]:
        """Subdivide every crossed edge, then lay out each route's segments face by face.

        Returns the darts left for an open route end (a star center) by ray.
        """
        counts = Counter(h for route in routes for h, _, _ in route.crossings)
        crossed_origin = {h: self.origin[h] for h in counts}
        pieces: dict[EdgeId, list[EdgeId]] = {}
        xs: dict[EdgeId, list[VertexId]] = {}
        for h in sorted(counts):
            pieces[h], xs[h] = self._subdivide(h, counts[h])

        def remap(d: Dart) -> Dart:
            if d[0] not in pieces:
                return d
            return (pieces[d[0]][0], 0) if d[1] == 0 else (pieces[d[0]][-1], 1)

        def dummy_corner(h: EdgeId, k: int, side: int) -> Dart:
            return (pieces[h][k], 0) if side == 0 else (pieces[h][k - 1], 1)

        open_ends: dict[EdgeId, Dart] = {}
        for route in routes:
            segments = []
            at, corner = route.start[0], remap(route.start[1])
            for h, k, side in route.crossings:
                x = xs[h][k - 1]
                segments.append(self._segment(route.orig, at, corner, x, dummy_corner(h, k, side)))
                self.dummies[x] = frozenset((crossed_origin[h], route.orig))
                at, corner = x, dummy_corner(h, k, 1 - side)
            end, end_corner = route.end
            seg = self._segment(route.orig, at, corner, end, None if end_corner is None else remap(end_corner))
            segments.append(seg)
            if end_corner is None:
                open_ends[route.orig] = (seg, 1)
            self._assign(route.orig, segments, start=route.start[0])
        return open_ends

    def _segment(self, o: EdgeId, a: VertexId, corner_a: Dart, b: VertexId, corner_b: Dart | None) -> EdgeId:
        seg = self.host.add_edge(a, b)
        self.origin[seg] = o
        self.emb.insert_before((seg, 0), corner_a)
        if corner_b is not None:
            self.emb.insert_before((seg, 1), corner_b)
        return seg

    # ------------------------------------------------------------------
    # Removal
    # ------------------------------------------------------------------

    def remove_edge(self, o: EdgeId) -> int:
        """Delete the chain of ``o`` and smooth the dummies it leaves behind."""
        if o not in self.chain:
            raise StructuralError(f"edge {o} is not embedded")
        before = len(self.dummies)
        verts = self.chain_vertices(o)
        for h in self.chain.pop(o):
            self._drop_host_edge(h)
        for x in verts[1:-1]:
            self._settle(x)
        return before - len(self.dummies)

    def remove_star(self, v: VertexId) -> int:
        """Remove ``v`` with all of its embedded edges; returns the removed crossings."""
        if v in self.dummies or not self.original.has_vertex(v):
            raise StructuralError(f"{v} is not an original vertex")
        if v not in self.embedded_vertices:
            raise StructuralError(f"vertex {v} is not embedded")
        removed = 0
        for o in self.original.incident_edges(v):
            if o in self.chain:
                removed += self.remove_edge(o)
        self.host.delete_vertex(v)
        self.embedded_vertices.discard(v)
        return removed

    def _drop_host_edge(self, h: EdgeId) -> None:
        self.emb.detach_edge(h)
        self.host.delete_edge(h)
        del self.origin[h]

    def _settle(self, x: VertexId) -> None:
        if not self.host.has_vertex(x) or x in self.embedded_vertices:
            return
        degree = self.host.degree(x)
        if degree == 0:
            self.host.delete_vertex(x)
            self.dummies.pop(x, None)
        elif degree == 2:
            self._dissolve(x)

    def _merge(self, a: EdgeId, b: EdgeId, x: VertexId, o: EdgeId) -> EdgeId:
        """Replace host edges ``a`` and ``b`` meeting at ``x`` by one edge in the same rotation slots."""
        y, z = self.host.opposite(a, x), self.host.opposite(b, x)
        far_a, far_b = dart_at(self.host, a, y), dart_at(self.host, b, z)
        self.emb.detach(dart_at(self.host, a, x))
        self.emb.detach(dart_at(self.host, b, x))
        n = self.host.add_edge(y, z)
        self.emb.replace(far_a, (n, 0))
        self.emb.replace(far_b, (n, 1))
        for h in (a, b):
            self.host.delete_edge(h)
            del self.origin[h]
        self.origin[n] = o
        return n

    def _dissolve(self, x: VertexId) -> None:
        """Remove ``x`` by joining, for every chain through it, its two edges at ``x``."""
        while self.host.degree(x) > 0:
            o = self.origin[self.host.incident(x)[0]]
            verts, edges = self.chain_vertices(o), self.chain[o]
            i = next(i for i in range(1, len(verts) - 1) if verts[i] == x)
            edges[i - 1:i + 1] = [self._merge(edges[i - 1], edges[i], x, o)]
        self.host.delete_vertex(x)
        self.dummies.pop(x, None)

    def _cut_loops(self, o: EdgeId) -> None:
        """Cut the closed detours out of chain ``o`` until it is a path again."""
        while True:
            verts = self.chain_vertices(o)
            seen: dict[VertexId, int] = {}
            loop = None
            for j, x in enumerate(verts):
                if x in seen:
                    loop = (seen[x], j)
                    break
                seen[x] = j
            if loop is None:
                return
            i, j = loop
            edges = self.chain[o]
            for h in edges[i:j]:
                self._drop_host_edge(h)
            del edges[i:j]
            for x in verts[i:j]:
                self._settle(x)

    def _reregister(self) -> None:
        for x in list(self.dummies):
            pair = frozenset(self.origin[h] for h in self.host.incident(x))
            if len(pair) != 2:
                raise InvariantViolation(f"dummy {x} lies on {len(pair)} chains after re-assignment")
            self.dummies[x] = pair

    # ------------------------------------------------------------------
    # Non-simple crossings
    # ------------------------------------------------------------------

    def detect_nonsimple(self) -> tuple[list[VertexId], list[tuple[frozenset[EdgeId], list[VertexId]]]]:
        """Crossings of adjacent edges, and edge pairs crossing more than once."""
        alphas = []
        by_pair: dict[frozenset[EdgeId], list[VertexId]] = defaultdict(list)
        for x in sorted(self.dummies):
            pair = self.dummies[x]
            e, f = sorted(pair)
            if set(self.original.endpoints(e)) & set(self.original.endpoints(f)):
                alphas.append(x)
            by_pair[pair].append(x)
        betas = [(pair, xs) for pair, xs in sorted(by_pair.items(), key=lambda kv: sorted(kv[0])) if len(xs) > 1]
        return alphas, betas

    def _remove_alpha(self, x: VertexId) -> None:
        e1, e2 = sorted(self.dummies[x])
        s = min(set(self.original.endpoints(e1)) & set(self.original.endpoints(e2)))
        v1, c1 = self._oriented(e1, s)
        v2, c2 = self._oriented(e2, s)
        i1, i2 = v1.index(x), v2.index(x)
        self._assign(e1, c2[:i2] + c1[i1:], start=s)
        self._assign(e2, c1[:i1] + c2[i2:], start=s)
        self._dissolve(x)
        self._cut_loops(e1)
        self._cut_loops(e2)
        self._reregister()

    def _remove_beta(self, pair: frozenset[EdgeId]) -> None:
        e, f = sorted(pair)
        ve, ce = self.chain_vertices(e), list(self.chain[e])
        vf, cf = self.chain_vertices(f), list(self.chain[f])
        shared = [i for i, x in enumerate(ve) if self.dummies.get(x) == pair]
        ix, iy = shared[0], shared[1]
        x, y = ve[ix], ve[iy]
        jx, jy = vf.index(x), vf.index(y)
        seg_e = ce[ix:iy]
        if jx < jy:
            seg_f = cf[jx:jy]
            new_f = cf[:jx] + seg_e + cf[jy:]
        else:
            seg_f = cf[jy:jx][::-1]
            new_f = cf[:jy] + seg_e[::-1] + cf[jx:]
        start_e, start_f = self.original.endpoints(e)[0], self.original.endpoints(f)[0]
        self._assign(e, ce[:ix] + seg_f + ce[iy:], start=start_e)
        self._assign(f, new_f, start=start_f)
        self._dissolve(x)
        self._dissolve(y)
        self._cut_loops(e)
        self._cut_loops(f)
        self._reregister()

    def remove_nonsimple(self, during_srm: bool = False) -> int:
        """Remove crossings of adjacent edges first, then repeated crossings, until none is left."""
        total = 0
        while True:
            alphas, betas = self.detect_nonsimple()
            before = len(self.dummies)
            if alphas:
                self._remove_alpha(alphas[0])
                kind = "alpha"
            elif betas:
                self._remove_beta(betas[0][0])
                kind = "beta"
            else:
                break
            removed = before - len(self.dummies)
            if removed <= 0:
                raise InvariantViolation(f"{kind} removal did not reduce the crossing count")
            total += removed
            prefix = "srm_" if during_srm else ""
            name = f"{prefix}{kind}_removed"
            setattr(self.stats, name, getattr(self.stats, name) + removed)
        if total:
            logger.debug("removed %d non-simple crossings", total)
        return total

    # ------------------------------------------------------------------
    # Debug output
    # ------------------------------------------------------------------

    def dump(self, path: str | Path) -> None:
        """Write the host graph in the edge-list format, chains and dummies as comments."""
        index = {v: i for i, v in enumerate(self.host.vertices())}
        edge_index = {h: i for i, h in enumerate(self.host.edges())}
        lines = [f"{self.host.number_of_vertices()} {self.host.number_of_edges()}"]
        for h in self.host.edges():
            u, v = self.host.endpoints(h)
            lines.append(f"{index[u]} {index[v]}")
        for o in sorted(self.chain):
            lines.append(f"# chain {o}: " + " ".join(str(edge_index[h]) for h in self.chain[o]))
        for x in sorted(self.dummies):
            a, b = sorted(self.dummies[x])
            lines.append(f"# dummy {index[x]}: {a} {b}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def from_planar_subgraph(original: Graph, kept: set[EdgeId], vertices: set[VertexId] | None = None) -> Planarization:
    return Planarization.from_planar_subgraph(original, kept, vertices)
