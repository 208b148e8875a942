#!/usr/bin/env python3
"""
Instance families, the edge-list format, instance specs and preprocessing
"""

import networkx as nx
import pytest

from crossmin.errors import ConfigError, GraphFormatError, InstanceError
from crossmin.graph import Graph
from crossmin.instances import (
    build,
    complete,
    complete_bipartite,
    cycle_product,
    cycle_product_crossings,
    format_graph,
    guy_bound,
    parse_graph,
    petersen,
    preprocess,
    random_regular,
    read_graph,
    write_graph,
    zarankiewicz_bound,
)
from crossmin.models import InstanceSpec


def degrees(g):
    return sorted({g.degree(v) for v in g.vertices()})


def is_simple(g):
    pairs = [frozenset(g.endpoints(e)) for e in g.edges()]
    return all(len(pair) == 2 for pair in pairs) and len(set(pairs)) == len(pairs)


class TestFamilies:
    """Generators"""

    def test_complete(self):
        g = complete(7)
        assert (g.number_of_vertices(), g.number_of_edges()) == (7, 21)

    def test_complete_bipartite(self):
        g = complete_bipartite(3, 5)
        assert (g.number_of_vertices(), g.number_of_edges()) == (8, 15)
        assert degrees(g) == [3, 5]

    def test_cycle_product(self):
        """C_i x C_j is 4-regular with 2ij edges"""
        g = cycle_product(3, 5)
        assert g.number_of_vertices() == 15
        assert g.number_of_edges() == 30
        assert degrees(g) == [4]

    def test_petersen(self):
        """P(5, 2) is the Petersen graph and P(3, 1) the triangular prism"""
        assert nx.is_isomorphic(petersen(5, 2).to_simple_networkx(), nx.petersen_graph())
        assert nx.is_isomorphic(petersen(3, 1).to_simple_networkx(), nx.circular_ladder_graph(3))
        g = petersen(9, 4)
        assert g.number_of_edges() == 27
        assert degrees(g) == [3]
        assert is_simple(g)

    @pytest.mark.parametrize("call", [
        lambda: complete(0),
        lambda: cycle_product(2, 5),
        lambda: petersen(6, 3),
        lambda: petersen(2, 1),
    ])
    def test_invalid_parameters(self, call):
        """Out-of-range parameters are instance errors"""
        with pytest.raises(InstanceError):
            call()


class TestRandomRegular:
    """Stub-pairing sampler"""

    @pytest.mark.parametrize("n, d", [(30, 4), (20, 3), (12, 5), (10, 0)])
    def test_regular_and_simple(self, n, d):
        g = random_regular(n, d, seed=1)
        assert g.number_of_vertices() == n
        assert g.number_of_edges() == n * d // 2
        assert all(g.degree(v) == d for v in g.vertices())
        assert is_simple(g)

    def test_deterministic(self):
        """Same seed, same edge list"""
        a, b = random_regular(24, 4, 7), random_regular(24, 4, 7)
        assert format_graph(a) == format_graph(b)

    def test_seeds_differ(self):
        assert format_graph(random_regular(30, 4, 1)) != format_graph(random_regular(30, 4, 2))

    def test_parity(self):
        """n * d must be even"""
        with pytest.raises(InstanceError):
            random_regular(7, 3, 0)

    def test_degree_too_large(self):
        with pytest.raises(InstanceError):
            random_regular(6, 6, 0)


class TestKnownCrossingNumbers:
    """Closed formulas"""

    def test_guy(self):
        assert [guy_bound(n) for n in range(5, 9)] == [1, 3, 9, 18]
        assert guy_bound(4) == 0

    def test_zarankiewicz(self):
        assert [zarankiewicz_bound(m, m) for m in (3, 4, 5)] == [1, 4, 16]
        assert zarankiewicz_bound(3, 4) == 2

    def test_cycle_products(self):
        assert [cycle_product_crossings(3, j) for j in range(3, 7)] == [3, 4, 5, 6]
        assert cycle_product_crossings(5, 4) == 10
        with pytest.raises(InstanceError):
            cycle_product_crossings(8, 8)


class TestTextFormat:
    """Edge-list files"""

    def test_write_then_read(self, tmp_path):
        """Files written for a generated graph read back to the same text"""
        path = tmp_path / "p72.txt"
        g = petersen(7, 2)
        write_graph(g, path)
        assert path.read_text().splitlines()[0] == "14 21"
        assert format_graph(read_graph(path)) == format_graph(g)

    def test_comments_and_blank_lines(self):
        g = parse_graph("# K3 with a doubled edge\n3 4\n\n0 1\n1 2  # inline\n2 0\n0 1\n")
        assert g.number_of_edges() == 4
        assert g.edges_between(0, 1) == [0, 3]

    def test_loops_kept(self):
        g = parse_graph("2 2\n0 1\n1 1\n")
        assert g.is_loop(1)

    def test_isolated_vertices(self):
        g = parse_graph("5 1\n0 1\n")
        assert g.number_of_vertices() == 5

    @pytest.mark.parametrize("text, lineno", [
        ("3 1\n0 1 2\n", 2),
        ("3 1\n0 x\n", 2),
        ("3 1\n0 3\n", 2),
        ("-1 0\n", 1),
    ])
    def test_malformed_lines(self, text, lineno):
        """Errors name the offending line"""
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text)
        assert info.value.lineno == lineno
        assert f"line {lineno}" in str(info.value)

    @pytest.mark.parametrize("text", ["", "# only a comment\n", "3 2\n0 1\n"])
    def test_missing_data(self, text):
        """Missing headers and short edge lists"""
        with pytest.raises(GraphFormatError):
            parse_graph(text)


class TestInstanceSpec:
    """Instance spec strings"""

    def test_generator_specs(self):
        spec = InstanceSpec.parse("random_regular:30x4x7")
        assert spec.family == "random_regular"
        assert spec.params == (30, 4, 7)
        assert spec.id == "random_regular:30x4x7"
        assert build(spec).number_of_edges() == 60

    def test_file_specs(self, tmp_path):
        path = tmp_path / "k4.txt"
        write_graph(complete(4), path)
        for text in (f"file:{path}", str(path)):
            spec = InstanceSpec.parse(text)
            assert spec.family == "file"
            assert spec.id == "k4"
            assert build(spec).number_of_edges() == 6

    @pytest.mark.parametrize("text", ["complete", "complete:5x2", "wheel:5", "petersen:7xtwo", "no/such/file.txt"])
    def test_rejected(self, text):
        with pytest.raises(ConfigError):
            InstanceSpec.parse(text)


class TestPreprocess:
    """Splitting into non-planar biconnected components"""

    def test_planar_graph_vanishes(self):
        assert preprocess(petersen(6, 1)) == []

    def test_pendant_path_dropped(self):
        """Bridges and trees hanging off a block are not instances"""
        g = complete(5)
        a = g.add_vertex()
        b = g.add_vertex()
        g.add_edge(0, a)
        g.add_edge(a, b)
        parts = preprocess(g)
        assert len(parts) == 1
        assert (parts[0].number_of_vertices(), parts[0].number_of_edges()) == (5, 10)
        assert parts[0].vertices() == list(range(5))

    def test_blocks_sharing_a_cut_vertex(self):
        """Two K5 blocks glued at a vertex give two instances"""
        edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
        edges += [(u + 4, v + 4) for u, v in edges]
        parts = preprocess(Graph.from_edges(9, edges))
        assert [p.number_of_edges() for p in parts] == [10, 10]
