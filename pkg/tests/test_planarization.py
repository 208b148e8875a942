#!/usr/bin/env python3
"""
Planarizations: realizing paths and spiders, star removal, non-simple crossings
"""

import pytest

from crossmin.errors import InvariantViolation, PlanarityError, StaleInsertionError, StructuralError
from crossmin.graph import Graph, Star
from crossmin.insertion import eif, sif
from crossmin.heuristics import Initialization, build
from crossmin.instances import complete, random_regular
from crossmin.models import HeuristicConfig
from crossmin.planarization import InsertionPath, Planarization


def face_with(p, vertices):
    """Id of the face whose boundary visits exactly ``vertices``"""
    matches = [
        face.id
        for face in p.emb.faces.faces
        if {p.emb.tail(d) for d in face.boundary} == set(vertices)
    ]
    assert len(matches) == 1, f"Expected one face on {sorted(vertices)}, found {len(matches)}"
    return matches[0]


def only_dummy(p):
    assert len(p.dummies) == 1
    return next(iter(p.dummies))


@pytest.fixture
def k5_minus_edge():
    """K5 with edge 0-1 left out of the planar part"""
    g = complete(5)
    return g, Planarization.from_planar_subgraph(g, set(g.edges()) - {0})


@pytest.fixture
def k4_host():
    """K5 whose vertex 4 is not embedded yet"""
    g = complete(5)
    kept = {e for e in g.edges() if 4 not in g.endpoints(e)}
    return g, Planarization.from_planar_subgraph(g, kept, vertices={0, 1, 2, 3})


@pytest.fixture
def wheel():
    """Wheel with rim 0..4 and hub 5; only the rim is embedded"""
    rim = [(i, (i + 1) % 5) for i in range(5)]
    g = Graph.from_edges(6, rim + [(i, 5) for i in range(5)])
    return g, Planarization.from_planar_subgraph(g, set(range(5)), vertices=set(range(5)))


@pytest.fixture
def square_alpha():
    """Square 0-1-2-3 with diagonal 0-2 routed across the adjacent edge 0-1"""
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    p = Planarization.from_planar_subgraph(g, {0, 1, 2, 3})
    faces = [p.emb.face_of((0, 0)), p.emb.face_of((0, 1))]
    path = InsertionPath(faces=faces, crossed=[0], source=0, target=2, version=p.emb.version)
    p.realize_path(4, path)
    return g, p


@pytest.fixture
def octagon_beta():
    """Octagon with chord f = 0-4, helper k = 2-6 crossing f, and e = 1-3 crossing f twice"""
    rim = [(i, (i + 1) % 8) for i in range(8)]
    g = Graph.from_edges(8, rim + [(0, 4), (2, 6), (1, 3)])
    f, k, e = 8, 9, 10
    p = Planarization.from_planar_subgraph(g, set(range(9)))

    left, right = face_with(p, {0, 1, 2, 3, 4}), face_with(p, {0, 4, 5, 6, 7})
    p.realize_path(k, InsertionPath(faces=[left, right], crossed=[f], source=2, target=6, version=p.emb.version))
    x = only_dummy(p)

    faces = [
        face_with(p, {0, 1, 2, x}),
        face_with(p, {0, 6, 7, x}),
        face_with(p, {4, 5, 6, x}),
        face_with(p, {2, 3, 4, x}),
    ]
    crossed = [
        p.host.edges_between(0, x)[0],
        p.host.edges_between(x, 6)[0],
        p.host.edges_between(x, 4)[0],
    ]
    p.realize_path(e, InsertionPath(faces=faces, crossed=crossed, source=1, target=3, version=p.emb.version))
    return g, p, (e, f, k)


class TestConstruction:
    """Planarizations of planar subgraphs"""

    def test_planar_graph(self):
        """All edges of a planar graph give zero crossings"""
        g = complete(4)
        p = Planarization.from_planar_subgraph(g, set(g.edges()))
        assert p.crossing_count() == 0
        assert p.validate() == []
        assert all(p.chain[e] == [e] for e in g.edges())

    def test_spanning_tree(self):
        """A spanning tree has a single face"""
        g = complete(4)
        p = Planarization.from_planar_subgraph(g, {0, 1, 2})
        assert len(p.emb.faces) == 1
        assert p.embedded_vertices == {0, 1, 2, 3}

    def test_non_planar_rejected(self):
        """A non-planar kept set is an error"""
        g = complete(5)
        with pytest.raises(PlanarityError):
            Planarization.from_planar_subgraph(g, set(g.edges()))


class TestRealizePath:
    """Edge insertion along a dual path"""

    def test_missing_k5_edge(self, k5_minus_edge):
        """The missing edge of K5 crosses once"""
        g, p = k5_minus_edge
        path = eif(p, 0, 1)
        assert path.cost == 1
        created = p.realize_path(0, path)
        assert created == 1
        assert p.crossing_count() == 1
        assert len(p.chain[0]) == 2
        assert p.validate() == []

    def test_dummy_registers_original_edges(self, k5_minus_edge):
        """The dummy is registered between the two original edges"""
        g, p = k5_minus_edge
        path = eif(p, 0, 1)
        crossed_origin = p.origin[path.crossed[0]]
        p.realize_path(0, path)
        assert p.dummies[only_dummy(p)] == frozenset({0, crossed_origin})

    def test_zero_length_path(self):
        """Endpoints on a common face need no dummy"""
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        p = Planarization.from_planar_subgraph(g, {0, 1, 2, 3})
        created = p.realize_path(4, eif(p, 0, 2))
        assert created == 0
        assert p.validate() == []

    def test_stale_path_rejected(self, k5_minus_edge):
        """Paths are tied to the embedding version they were computed on"""
        g, p = k5_minus_edge
        path = eif(p, 0, 1)
        p.realize_path(0, path)
        with pytest.raises(StaleInsertionError):
            p.realize_path(0, path)

    def test_crossing_a_chain_edge(self, octagon_beta):
        """Crossing a piece of a chain registers the chain's original edge"""
        g, p, (e, f, k) = octagon_beta
        assert p.crossing_count() == 4
        pairs = sorted(sorted(pair) for pair in p.dummies.values())
        assert pairs == sorted([sorted((e, f)), sorted((e, f)), sorted((e, k)), sorted((f, k))])
        assert p.validate() == []


class TestRealizeSpider:
    """Star insertion"""

    def test_fifth_vertex_of_k5(self, k4_host):
        """Inserting the last vertex of K5 into K4 costs one crossing"""
        g, p = k4_host
        face, spider, cost = sif(p, 4, [0, 1, 2, 3])
        assert cost == 1
        created = p.realize_spider(Star.from_vertex(g, 4), spider)
        assert created == 1
        assert p.crossing_count() == 1
        assert 4 in p.embedded_vertices
        assert set(p.chain) == set(g.edges())
        assert p.validate() == []

    def test_wheel_hub(self, wheel):
        """A wheel hub goes in without crossings"""
        g, p = wheel
        _, spider, cost = sif(p, 5, range(5))
        assert cost == 0
        p.realize_spider(Star.from_vertex(g, 5), spider)
        assert p.crossing_count() == 0
        assert p.host.number_of_edges() == 10
        assert p.validate() == []

    def test_single_ray(self, wheel):
        """A one-ray star behaves like an edge insertion"""
        g, p = wheel
        _, spider, cost = sif(p, 5, [2])
        assert cost == 0
        p.realize_spider(Star.from_vertex(g, 5, [2]), spider)
        assert p.host.degree(5) == 1
        assert p.validate() == []

    def test_embedded_center_rejected(self, k4_host):
        """The center must not be embedded yet"""
        g, p = k4_host
        _, spider, _ = sif(p, 4, [0, 1, 2, 3])
        p.realize_spider(Star.from_vertex(g, 4), spider)
        with pytest.raises((InvariantViolation, StaleInsertionError)):
            p.realize_spider(Star.from_vertex(g, 4), spider)


class TestRemoval:
    """Edge and star removal"""

    def test_remove_wheel_hub(self, wheel):
        """Removing the hub leaves the rim"""
        g, p = wheel
        _, spider, _ = sif(p, 5, range(5))
        p.realize_spider(Star.from_vertex(g, 5), spider)
        removed = p.remove_star(5)
        assert removed == 0
        assert p.host.number_of_edges() == 5
        assert 5 not in p.embedded_vertices
        assert p.validate() == []

    def test_remove_star_reversible(self, k4_host):
        """Removing and reinserting a star restores the crossing count"""
        g, p = k4_host
        _, spider, _ = sif(p, 4, [0, 1, 2, 3])
        p.realize_spider(Star.from_vertex(g, 4), spider)
        before = p.crossing_count()
        assert p.remove_star(4) == before
        assert p.crossing_count() == 0
        _, spider, cost = sif(p, 4, [0, 1, 2, 3])
        p.realize_spider(Star.from_vertex(g, 4), spider)
        assert p.crossing_count() == before
        assert p.validate() == []

    def test_remove_edge_smooths_dummies(self, octagon_beta):
        """Dropping an edge removes exactly the dummies on its chain"""
        g, p, (e, f, k) = octagon_beta
        on_k = p.chain_crossings(k)
        removed = p.remove_edge(k)
        assert removed == on_k == 2
        assert p.crossing_count() == 2
        assert p.validate() == []

    def test_remove_unknown_vertex(self, k5_minus_edge):
        """Dummies and unknown ids are not stars"""
        g, p = k5_minus_edge
        p.realize_path(0, eif(p, 0, 1))
        with pytest.raises(StructuralError):
            p.remove_star(only_dummy(p))
        with pytest.raises(StructuralError):
            p.remove_star(42)


class TestNonSimple:
    """Detection and removal of non-simple crossings"""

    def test_clean_planarization(self, k5_minus_edge):
        """An optimal K5 drawing is simple"""
        g, p = k5_minus_edge
        p.realize_path(0, eif(p, 0, 1))
        assert p.detect_nonsimple() == ([], [])
        assert p.remove_nonsimple() == 0

    def test_alpha_detected_and_removed(self, square_alpha):
        """A crossing of adjacent edges is removed in one step"""
        g, p = square_alpha
        alphas, betas = p.detect_nonsimple()
        assert len(alphas) == 1 and betas == []
        assert p.remove_nonsimple() == 1
        assert p.crossing_count() == 0
        assert p.stats.alpha_removed == 1
        assert p.validate() == []

    def test_beta_detected_and_removed(self, octagon_beta):
        """Two crossings of the same pair are removed together"""
        g, p, (e, f, k) = octagon_beta
        alphas, betas = p.detect_nonsimple()
        assert alphas == []
        assert [pair for pair, _ in betas] == [frozenset({e, f})]
        assert len(betas[0][1]) == 2
        assert p.remove_nonsimple() == 2
        assert p.crossing_count() == 2
        assert p.stats.beta_removed == 2
        assert p.validate() == []

    def test_removal_is_idempotent(self, octagon_beta):
        """A second call finds nothing"""
        g, p, _ = octagon_beta
        p.remove_nonsimple()
        assert p.remove_nonsimple() == 0
        assert p.detect_nonsimple() == ([], [])

    def test_pure_beta_after_helper_removed(self, octagon_beta):
        """Without the helper edge the pair cancels out completely"""
        g, p, (e, f, k) = octagon_beta
        p.remove_edge(k)
        assert p.crossing_count() == 2
        assert p.remove_nonsimple() == 2
        assert p.crossing_count() == 0
        assert p.validate() == []

    def test_registry_multiplicity(self, k5_minus_edge):
        """Two dummies on the same pair form one repeated-crossing entry"""
        g, p = k5_minus_edge
        p.dummies = {100: frozenset({3, 9}), 101: frozenset({3, 9}), 102: frozenset({4, 5})}
        alphas, betas = p.detect_nonsimple()
        assert betas == [(frozenset({3, 9}), [100, 101])]

    def test_star_insertions_create_adjacent_crossings(self):
        """Optimal star insertions alone make adjacent edges cross; removal clears them"""
        found = 0
        for k in range(40):
            g = random_regular(30, 6, k)
            p = build(HeuristicConfig.parse("ccm-raw", k), g, Initialization.compute(g, subgraph_seed=0))
            alphas, _ = p.detect_nonsimple()
            if not alphas:
                continue
            found += 1
            for x in alphas:
                a, b = p.dummies[x]
                assert set(g.endpoints(a)) & set(g.endpoints(b))
            before = p.crossing_count()
            removed = p.remove_nonsimple()
            assert removed >= 1
            assert p.crossing_count() == before - removed
            assert p.detect_nonsimple() == ([], [])
            assert p.validate() == []
            if found == 3:
                break
        assert found, "ccm-raw produced no adjacent crossings on 40 random 6-regular graphs"


class TestValidation:
    """Invariant checks, copies and dumps"""

    def test_corrupted_dummy_rotation(self, octagon_beta):
        """A dummy whose rotation no longer alternates is reported"""
        g, p, _ = octagon_beta
        x = min(p.dummies)
        ring = p.emb.rotation(x)
        p.emb.set_rotation(x, [ring[0], ring[2], ring[1], ring[3]])
        assert any("alternate" in problem for problem in p.validate())

    def test_copy_is_independent(self, octagon_beta):
        """Mutating a copy leaves the original untouched"""
        g, p, _ = octagon_beta
        other = p.copy()
        other.remove_nonsimple()
        assert p.crossing_count() == 4
        assert other.crossing_count() == 2
        assert p.validate() == [] and other.validate() == []

    def test_dump(self, octagon_beta, tmp_path):
        """The dump is an edge list with chain comments"""
        g, p, _ = octagon_beta
        target = tmp_path / "dump.txt"
        p.dump(target)
        lines = target.read_text().splitlines()
        assert lines[0] == f"{p.host.number_of_vertices()} {p.host.number_of_edges()}"
        assert sum(line.startswith("# chain") for line in lines) == g.number_of_edges()
        assert sum(line.startswith("# dummy") for line in lines) == 4
