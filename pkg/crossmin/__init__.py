"""Heuristic crossing minimization by planarization and optimal fixed-embedding insertion."""

from .bench import aggregate, emit_csv, run_matrix
from .embedding import CombinatorialEmbedding, chordless_cycle, maximal_planar_subgraph, test_planarity
from .errors import CrossminError
from .graph import Graph, Star
from .heuristics import Initialization, build, run
from .insertion import dual_bfs, eif, sif
from .models import AggregateRecord, HeuristicConfig, InstanceSpec, RunRecord
from .planarization import InsertionPath, InsertionSpider, Planarization

__version__ = "0.1.0"

__all__ = [
    "AggregateRecord",
    "CombinatorialEmbedding",
    "CrossminError",
    "Graph",
    "HeuristicConfig",
    "Initialization",
    "InsertionPath",
    "InsertionSpider",
    "InstanceSpec",
    "Planarization",
    "RunRecord",
    "Star",
    "aggregate",
    "build",
    "chordless_cycle",
    "dual_bfs",
    "eif",
    "emit_csv",
    "maximal_planar_subgraph",
    "run",
    "run_matrix",
    "sif",
    "test_planarity",
]
