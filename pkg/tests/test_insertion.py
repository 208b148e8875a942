#!/usr/bin/env python3
"""
Optimal edge and star insertion checked against brute-force face distances
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from crossmin.errors import InsertionError, StructuralError
from crossmin.graph import Graph, Star, cut_vertices
from crossmin.heuristics import plm_fix
from crossmin.embedding import maximal_planar_subgraph
from crossmin.insertion import UNREACHED, dual_bfs, eif, eif_cost, face_costs, sif
from crossmin.instances import complete, from_networkx
from crossmin.models import HeuristicConfig
from crossmin.planarization import Planarization


def brute_force_distances(p, v):
    """Face distances by repeated relaxation over all face pairs sharing an edge"""
    structure = p.emb.faces
    count = len(structure)
    inf = count + 1
    dist = [inf] * count
    for face in p.emb.vertex_faces(v):
        dist[face] = 0
    pairs = [(structure.face_of[(h, 0)], structure.face_of[(h, 1)]) for h in p.host.edges()]
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            for s, t in ((a, b), (b, a)):
                if dist[s] + 1 < dist[t]:
                    dist[t] = dist[s] + 1
                    changed = True
    return dist


def random_planarizations(count):
    """Raw planarizations of small random graphs, with dummies"""
    cfg = HeuristicConfig.parse("fix-none-raw")
    made = 0
    for seed in itertools.count():
        if made == count:
            return
        h = nx.gnp_random_graph(8, 0.6, seed=seed)
        if not nx.is_connected(h):
            continue
        g = from_networkx(h)
        sub = maximal_planar_subgraph(g, seed)
        made += 1
        yield g, plm_fix(g, sub.kept, cfg, np.random.default_rng(seed))


@pytest.fixture
def k5_minus_edge():
    g = complete(5)
    return g, Planarization.from_planar_subgraph(g, set(g.edges()) - {0})


class TestDualBfs:
    """Hop distances in the dual"""

    def test_k4_distances(self):
        """Every face of K4 touches every vertex but one"""
        g = complete(4)
        p = Planarization.from_planar_subgraph(g, set(g.edges()))
        dmap = dual_bfs(p, 0)
        assert sorted(dmap.distance.tolist()) == [0, 0, 0, 1]

    def test_cycle_distances(self):
        """Both faces of a cycle touch all its vertices"""
        g = Graph.from_edges(4, [(i, (i + 1) % 4) for i in range(4)])
        p = Planarization.from_planar_subgraph(g, set(g.edges()))
        assert dual_bfs(p, 2).distance.tolist() == [0, 0]

    def test_path_reconstruction(self, k5_minus_edge):
        """Paths alternate faces and the host edges between them"""
        g, p = k5_minus_edge
        dmap = dual_bfs(p, 0)
        structure = p.emb.faces
        for face in range(len(dmap)):
            faces, crossed = dmap.path_to(face)
            assert len(crossed) == dmap[face] == len(faces) - 1
            for i, h in enumerate(crossed):
                assert {structure.face_of[(h, 0)], structure.face_of[(h, 1)]} == {faces[i], faces[i + 1]}

    def test_unembedded_source(self):
        """Sources must be embedded"""
        g = complete(4)
        kept = {e for e in g.edges() if 3 not in g.endpoints(e)}
        p = Planarization.from_planar_subgraph(g, kept, vertices={0, 1, 2})
        with pytest.raises(InsertionError):
            dual_bfs(p, 3)

    def test_matches_brute_force(self):
        """BFS distances equal relaxation distances on random planarizations"""
        for g, p in random_planarizations(10):
            for v in sorted(p.embedded_vertices):
                assert dual_bfs(p, v).distance.tolist() == brute_force_distances(p, v)


class TestEdgeInsertion:
    """Shortest insertion paths"""

    def test_missing_k5_edge(self, k5_minus_edge):
        """The missing edge of K5 costs exactly one crossing"""
        g, p = k5_minus_edge
        path = eif(p, 0, 1)
        assert path.cost == 1
        assert eif_cost(p, 1, 0) == 1
        assert path.source == 0 and path.target == 1
        assert path.version == p.emb.version

    def test_same_endpoint_rejected(self, k5_minus_edge):
        """Loops are never inserted"""
        g, p = k5_minus_edge
        with pytest.raises(InsertionError):
            eif(p, 2, 2)

    def test_cost_matches_brute_force(self):
        """Path length is the minimum face distance between the endpoints"""
        for g, p in random_planarizations(10):
            vertices = sorted(p.embedded_vertices)
            for u, v in itertools.combinations(vertices, 2):
                dist = brute_force_distances(p, u)
                expected = min(dist[face] for face in p.emb.vertex_faces(v))
                assert eif_cost(p, u, v) == expected, f"Edge {u}-{v} on {g}"

    def test_deterministic(self, k5_minus_edge):
        """Repeated calls return the same path"""
        g, p = k5_minus_edge
        first, second = eif(p, 0, 1), eif(p, 0, 1)
        assert (first.faces, first.crossed) == (second.faces, second.crossed)


class TestStarInsertion:
    """Optimal face and spider for a star"""

    def test_k5_vertex(self):
        """The fifth vertex of K5 costs one crossing, on every face"""
        g = complete(5)
        kept = {e for e in g.edges() if 4 not in g.endpoints(e)}
        p = Planarization.from_planar_subgraph(g, kept, vertices={0, 1, 2, 3})
        face, spider, cost = sif(p, 4, [0, 1, 2, 3])
        assert cost == 1
        assert face == 0, "Ties go to the lowest face id"
        assert spider.cost == cost
        assert face_costs(p, [0, 1, 2, 3]).tolist() == [1, 1, 1, 1]

    def test_face_cost_matches_brute_force(self):
        """Per-face totals are sums of per-neighbour distances"""
        for g, p in random_planarizations(8):
            far = sorted(p.embedded_vertices)[:3]
            expected = np.sum([brute_force_distances(p, w) for w in far], axis=0)
            assert face_costs(p, far).tolist() == expected.tolist()

    def test_reinsertion_cost_matches_brute_force(self):
        """Star insertion finds the cheapest face and realizes exactly its cost"""
        checked = 0
        for g, p in random_planarizations(12):
            p.remove_nonsimple()
            cuts = cut_vertices(g)
            for v in sorted(g.vertices()):
                if v in cuts:
                    continue
                q = p.copy()
                q.remove_star(v)
                base = q.crossing_count()
                neighbours = [w for w in g.neighbors(v) if w != v]
                totals = [
                    sum(d)
                    for d in zip(*(brute_force_distances(q, w) for w in neighbours))
                ]
                face, spider, cost = sif(q, v, neighbours)
                assert cost == min(totals) == totals[face]
                created = q.realize_spider(Star.from_vertex(g, v, neighbours), spider)
                assert created == cost
                assert q.crossing_count() == base + cost
                assert q.validate() == []
                checked += 1
        assert checked > 0

    def test_embedded_center_rejected(self):
        """The center has to be removed first"""
        g = complete(4)
        p = Planarization.from_planar_subgraph(g, set(g.edges()))
        with pytest.raises(InsertionError):
            sif(p, 0, [1, 2, 3])

    def test_non_neighbour_rejected(self):
        """Rays must lead to neighbours of the center"""
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
        p = Planarization.from_planar_subgraph(g, {0, 1, 2}, vertices={0, 1, 2})
        with pytest.raises(StructuralError):
            sif(p, 3, [1])

    def test_unreachable_neighbours(self):
        """Neighbours in different components have no common face"""
        g = Graph.from_edges(5, [(0, 1), (2, 3), (4, 0), (4, 2)])
        p = Planarization.from_planar_subgraph(g, {0, 1}, vertices={0, 1, 2, 3})
        assert UNREACHED in face_costs(p, [0, 2]).tolist()
        with pytest.raises(InsertionError):
            sif(p, 4, [0, 2])
