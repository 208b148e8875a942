"""
Synthetic instance families with known crossing numbers, the edge-list text
format and biconnected preprocessing.

Text format: a header line ``n m`` followed by ``m`` lines ``u v`` with
0-based vertex indices; ``#`` starts a comment.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from pathlib import Path

import networkx as nx
import numpy as np

from .embedding import is_planar
from .errors import GraphFormatError, InstanceError
from .graph import Graph, biconnected_components
from .models import InstanceSpec

logger = logging.getLogger(__name__)

REGULAR_RESTART_CAP = 10**6


def from_networkx(h: nx.Graph) -> Graph:
    """Graph on the nodes of ``h`` relabeled ``0..n-1`` in sorted node order."""
    index = {node: i for i, node in enumerate(sorted(h.nodes()))}
    edges = sorted(tuple(sorted((index[u], index[v]))) for u, v in h.edges())
    return Graph.from_edges(len(index), edges)


def complete(n: int) -> Graph:
    if n < 1:
        raise InstanceError("complete graphs need n >= 1")
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InstanceError("complete bipartite graphs need both sides >= 1")
    return from_networkx(nx.complete_bipartite_graph(a, b))


def cycle_product(i: int, j: int) -> Graph:
    """Cartesian product of the cycles C_i and C_j."""
    if i < 3 or j < 3:
        raise InstanceError("cycle products need i, j >= 3")
    return from_networkx(nx.cartesian_product(nx.cycle_graph(i), nx.cycle_graph(j)))


def petersen(m: int, k: int) -> Graph:
    """Generalized Petersen graph: outer m-cycle, spokes, inner cycle with step k."""
    if m < 3 or not 1 <= k < m / 2:
        raise InstanceError(f"petersen({m}, {k}) needs m >= 3 and 1 <= k < m/2")
    edges = []
    for i in range(m):
        edges.append((i, (i + 1) % m))
        edges.append((i, m + i))
        edges.append((m + i, m + (i + k) % m))
    return Graph.from_edges(2 * m, [tuple(sorted(e)) for e in edges])


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Simple d-regular graph on n vertices by stub pairing, deterministic per seed."""
    if (n * d) % 2 != 0:
        raise InstanceError(f"n * d must be even (n={n}, d={d})")
    if not 0 <= d < n:
        raise InstanceError(f"need 0 <= d < n (n={n}, d={d})")
    rng = np.random.default_rng(seed)

    def suitable(edges: set, potential: dict) -> bool:
        if not potential:
            return True
        nodes = sorted(potential)
        for i, s1 in enumerate(nodes):
            for s2 in nodes[:i]:
                if (s2, s1) not in edges:
                    return True
        return False

    def attempt() -> set | None:
        edges: set[tuple[int, int]] = set()
        stubs = np.repeat(np.arange(n), d)
        while stubs.size:
            potential: dict[int, int] = defaultdict(int)
            rng.shuffle(stubs)
            for s1, s2 in stubs.reshape(-1, 2).tolist():
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    potential[s1] += 1
                    potential[s2] += 1
            if not suitable(edges, potential):
                return None
            stubs = np.array([v for v, count in sorted(potential.items()) for _ in range(count)], dtype=np.int64)
        return edges

    for restart in range(REGULAR_RESTART_CAP):
        edges = attempt()
        if edges is not None:
            if restart:
                logger.debug("random_regular(%d, %d, %d) needed %d restarts", n, d, seed, restart)
            return Graph.from_edges(n, sorted(edges))
    raise InstanceError(f"random_regular({n}, {d}, {seed}) failed after {REGULAR_RESTART_CAP} restarts")


# ----------------------------------------------------------------------
# Known crossing numbers
# ----------------------------------------------------------------------

def guy_bound(n: int) -> int:
    """Guy's conjectured crossing number of K_n (proven for n <= 12)."""
    return (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2) // 4


def zarankiewicz_bound(a: int, b: int) -> int:
    """Zarankiewicz's crossing number of K_{a,b} (proven for min(a, b) <= 6)."""
    return (a // 2) * ((a - 1) // 2) * (b // 2) * ((b - 1) // 2)


def cycle_product_crossings(i: int, j: int) -> int:
    """cr(C_i x C_j) = (i - 2) * j for 3 <= i <= j, proven while i <= 7."""
    i, j = sorted((i, j))
    if i < 3 or i > 7:
        raise InstanceError(f"no proven crossing number for C{i} x C{j}")
    return (i - 2) * j


# ----------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------

def _content(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _content(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("header counts must be non-negative", lineno)
            header = (a, b)
            continue
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise GraphFormatError(f"vertex index out of range 0..{header[0] - 1}", lineno)
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="ascii"))


def format_graph(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices())}
    lines = [f"{g.number_of_vertices()} {g.number_of_edges()}"]
    for e in g.edges():
        u, v = g.endpoints(e)
        lines.append(f"{index[u]} {index[v]}")
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: str | Path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_graph(g))


# ----------------------------------------------------------------------
# Specs and preprocessing
# ----------------------------------------------------------------------

def build(spec: InstanceSpec) -> Graph:
    if spec.family == "file":
        return read_graph(spec.path)
    generator = {
        "complete": complete,
        "complete_bipartite": complete_bipartite,
        "cycle_product": cycle_product,
        "petersen": petersen,
        "random_regular": random_regular,
    }[spec.family]
    return generator(*spec.params)


def preprocess(g: Graph) -> list[Graph]:
    """Non-planar biconnected components of ``g`` as independent, relabeled graphs."""
    components = []
    for edges in biconnected_components(g):
        vertices = {v for e in edges for v in g.endpoints(e)}
        block = g.edge_subgraph(edges, vertices)
        if not is_planar(block):
            components.append(block.relabeled())
    logger.debug("preprocess kept %d non-planar components", len(components))
    return components
