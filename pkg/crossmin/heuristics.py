"""
Heuristic pipelines: planarization with fixed-embedding edge insertion,
the chordless cycle method, the mixed insertion method and star reinsertion
postprocessing.

Every pipeline draws its permutations from one ``numpy`` generator seeded by
the config, so a (config, seed, instance, initialization) tuple always
produces the same planarization.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .config import get_settings
from .embedding import chordless_cycle, maximal_planar_subgraph
from .errors import InsertionError, InvariantViolation, StructuralError
from .graph import EdgeId, Graph, Star, VertexId, bridges, cut_vertices, is_connected
from .insertion import eif, sif
from .models import HeuristicConfig, RunRecord
from .planarization import Planarization

logger = logging.getLogger(__name__)


@dataclass
class Initialization:
    """Per-instance precomputation shared by all runs on that instance."""

    kept: set[EdgeId]
    deleted: list[EdgeId]
    cycle: list[VertexId] | None

    @classmethod
    def compute(cls, g: Graph, subgraph_seed: int | None = None) -> "Initialization":
        if subgraph_seed is None:
            subgraph_seed = get_settings().subgraph_seed
        sub = maximal_planar_subgraph(g, subgraph_seed)
        try:
            cycle = chordless_cycle(g)
        except StructuralError:
            cycle = None
        return cls(kept=sub.kept, deleted=sub.deleted, cycle=cycle)


def _permuted(rng: np.random.Generator, items: list) -> list:
    return [items[i] for i in rng.permutation(len(items))]


def _checkpoint(p: Planarization) -> None:
    if get_settings().debug_validate:
        p.check()


def _insert_edge(p: Planarization, o: EdgeId) -> None:
    u, v = p.original.endpoints(o)
    p.realize_path(o, eif(p, u, v))


def _insert_star(p: Planarization, v: VertexId, cfg: HeuristicConfig, during_srm: bool = False) -> None:
    neighbours = [w for w in p.original.neighbors(v) if w != v and w in p.embedded_vertices]
    star = Star.from_vertex(p.original, v, neighbours)
    _, spider, _ = sif(p, v, neighbours)
    p.realize_spider(star, spider)
    if cfg.remove_nonsimple:
        p.remove_nonsimple(during_srm=during_srm)
    _checkpoint(p)


def _reinsert(p: Planarization, v: VertexId, cfg: HeuristicConfig, during_srm: bool = False) -> None:
    p.remove_star(v)
    _insert_star(p, v, cfg, during_srm)


# ----------------------------------------------------------------------
# Planarization method
# ----------------------------------------------------------------------

def postprocess_all(p: Planarization, rng: np.random.Generator, sweep_cap: int | None = None) -> int:
    """Delete and reinsert every embedded edge, sweep after sweep, until a sweep brings no improvement.

    Bridges of the embedded subgraph are left in place: removing one would
    isolate a leaf or split the host. Returns the number of sweeps executed.
    """
    cap = sweep_cap or get_settings().sweep_cap
    g = p.original
    embedded = [o for o in g.edges() if p.is_embedded(o)]
    pinned = bridges(g.edge_subgraph(embedded))
    edges = [o for o in embedded if o not in pinned and not g.is_loop(o)]
    for sweep in range(1, cap + 1):
        improved = False
        for o in _permuted(rng, edges):
            before = p.crossing_count()
            p.remove_edge(o)
            _insert_edge(p, o)
            after = p.crossing_count()
            if after > before:
                raise InvariantViolation(f"reinserting edge {o} raised crossings from {before} to {after}")
            improved |= after < before
        p.stats.sweeps += 1
        _checkpoint(p)
        logger.debug("edge reinsertion sweep %d: %d crossings", sweep, p.crossing_count())
        if not improved:
            return sweep
    logger.warning("edge reinsertion stopped at the sweep cap of %d", cap)
    return cap


def plm_fix(g: Graph, kept: set[EdgeId], cfg: HeuristicConfig, rng: np.random.Generator) -> Planarization:
    p = Planarization.from_planar_subgraph(g, kept)
    deleted = [o for o in g.edges() if o not in kept]
    for o in _permuted(rng, deleted):
        _insert_edge(p, o)
        if cfg.post == "inc":
            postprocess_all(p, rng)
            if cfg.remove_nonsimple:
                p.remove_nonsimple()
        _checkpoint(p)
    if cfg.remove_nonsimple:
        p.remove_nonsimple()
    if cfg.post == "all":
        postprocess_all(p, rng)
        if cfg.remove_nonsimple:
            p.remove_nonsimple()
    return p


# ----------------------------------------------------------------------
# Chordless cycle method
# ----------------------------------------------------------------------

def ccm(g: Graph, cycle: list[VertexId] | None, cfg: HeuristicConfig, rng: np.random.Generator) -> Planarization:
    if not is_connected(g):
        raise StructuralError("the chordless cycle method needs a connected graph")
    if not cycle:
        raise StructuralError("the chordless cycle method needs a cycle; the graph is acyclic")
    on_cycle = set(cycle)
    edges = set()
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        between = g.edges_between(u, v)
        if not between:
            raise StructuralError(f"cycle vertices {u} and {v} are not adjacent")
        edges.add(between[0])
    for u in cycle:
        chords = [w for w in g.neighbors(u) if w in on_cycle and w != u]
        if len(chords) > 2:
            raise StructuralError(f"cycle has a chord at vertex {u}")

    p = Planarization.from_planar_subgraph(g, edges, vertices=on_cycle)
    rank = {v: r for r, v in enumerate(_permuted(rng, g.vertices()))}
    waiting = set(g.vertices()) - on_cycle
    while waiting:
        ready = [v for v in waiting if any(w in p.embedded_vertices for w in g.neighbors(v))]
        v = min(ready, key=rank.__getitem__)
        _insert_star(p, v, cfg)
        waiting.discard(v)
        logger.debug("ccm inserted vertex %d: %d crossings", v, p.crossing_count())
    return p


# ----------------------------------------------------------------------
# Mixed insertion method
# ----------------------------------------------------------------------

def _choose_endpoints(
    cfg: HeuristicConfig,
    u: VertexId,
    v: VertexId,
    g: Graph,
    free_degree: Counter,
    rng: np.random.Generator,
) -> list[VertexId]:
    variant = cfg.mim_variant
    if variant == "both":
        return [u, v]
    if variant == "random":
        return [(u, v)[int(rng.integers(2))]]
    if variant in ("high_G", "low_G"):
        key = g.degree
    else:
        key = free_degree.__getitem__
    # ties go to the first endpoint
    high = variant.startswith("high")
    if key(u) == key(v):
        return [u]
    pick_u = key(u) > key(v) if high else key(u) < key(v)
    return [u if pick_u else v]


def mim(g: Graph, kept: set[EdgeId], cfg: HeuristicConfig, rng: np.random.Generator) -> Planarization:
    p = Planarization.from_planar_subgraph(g, kept)
    cuts = cut_vertices(g.edge_subgraph(kept))
    deleted = [o for o in g.edges() if o not in kept]
    free_degree: Counter = Counter()
    for o in deleted:
        ends = g.endpoints(o)
        if not set(ends) & cuts:
            free_degree.update(ends)

    for o in _permuted(rng, deleted):
        if p.is_embedded(o):
            continue
        u, v = g.endpoints(o)
        if u in cuts and v in cuts:
            _insert_edge(p, o)
            if cfg.remove_nonsimple:
                p.remove_nonsimple()
            _checkpoint(p)
            continue
        if u in cuts:
            targets = [v]
        elif v in cuts:
            targets = [u]
        else:
            targets = _choose_endpoints(cfg, u, v, g, free_degree, rng)
        for w in targets:
            _reinsert(p, w, cfg)
        logger.debug("mim edge %d via %s: %d crossings", o, targets, p.crossing_count())
    return p


# ----------------------------------------------------------------------
# Star reinsertion
# ----------------------------------------------------------------------

def srm(p: Planarization, cfg: HeuristicConfig, rng: np.random.Generator) -> Planarization:
    """First-improvement star reinsertion until no vertex improves; equal-cost moves are kept.

    Only vertices that are not cut vertices of the input graph are moved.
    Taking out the star of a cut vertex leaves the rest of the drawing in
    several pieces with no common face to reinsert it into, so those stars
    keep the position the base heuristic gave them.
    """
    g = p.original
    if g.number_of_vertices() <= 2:
        return p
    cuts = cut_vertices(g)
    candidates = [v for v in g.vertices() if v not in cuts and g.degree(v) > 0]
    quiet = 0
    while True:
        improved = False
        for v in _permuted(rng, candidates):
            before = p.crossing_count()
            snapshot = None if cfg.remove_nonsimple else p.copy()
            _reinsert(p, v, cfg, during_srm=True)
            after = p.crossing_count()
            if after > before:
                if snapshot is None:
                    raise InvariantViolation(f"reinserting vertex {v} raised crossings from {before} to {after}")
                # crossings between two edges of the same star are not removed in raw mode
                p = snapshot
                continue
            if after < before:
                improved = True
                logger.debug("srm vertex %d: %d -> %d crossings", v, before, after)
                break
        p.stats.sweeps += 1
        if improved:
            continue
        # equal-cost moves late in a quiet sweep can open up earlier vertices again
        if not verify_local_optimum(p):
            return p
        quiet += 1
        if quiet >= get_settings().sweep_cap:
            logger.warning("star reinsertion stopped after %d quiet sweeps without a certificate", quiet)
            return p


def verify_local_optimum(p: Planarization) -> list[VertexId]:
    """Non-cut vertices whose optimal reinsertion would strictly reduce the crossing count."""
    g = p.original
    if g.number_of_vertices() <= 2:
        return []
    cuts = cut_vertices(g)
    improvable = []
    for v in g.vertices():
        if v in cuts or g.degree(v) == 0:
            continue
        trial = p.copy()
        removed = trial.remove_star(v)
        neighbours = [w for w in g.neighbors(v) if w != v]
        _, _, cost = sif(trial, v, neighbours)
        if cost < removed:
            improvable.append(v)
    return improvable


# ----------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------

def build(cfg: HeuristicConfig, g: Graph, init: Initialization) -> Planarization:
    """Run the configured pipeline (with srm when requested) and return its planarization."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.base == "plm_fix":
        p = plm_fix(g, init.kept, cfg, rng)
    elif cfg.base == "ccm":
        p = ccm(g, init.cycle, cfg, rng)
    else:
        p = mim(g, init.kept, cfg, rng)
    if cfg.srm:
        p = srm(p, cfg, rng)
    return p


def run(cfg: HeuristicConfig, g: Graph, init: Initialization, instance: str = "") -> RunRecord:
    start = time.perf_counter_ns()
    p = build(cfg, g, init)
    elapsed_us = (time.perf_counter_ns() - start) // 1000

    problems = p.validate()
    if problems:
        raise InvariantViolation("; ".join(problems[:5]))
    missing = set(g.edges()) - set(p.chain) - {o for o in g.edges() if g.is_loop(o)}
    if missing:
        raise InsertionError(f"{len(missing)} edges were never embedded")

    stats = p.stats
    record = RunRecord(
        instance=instance,
        config=cfg.name,
        seed=cfg.seed,
        crossings=p.crossing_count(),
        time_us=elapsed_us,
        alpha_removed=stats.alpha_removed + stats.srm_alpha_removed,
        beta_removed=stats.beta_removed + stats.srm_beta_removed,
        sweeps=stats.sweeps,
    )
    logger.info("%s %s seed=%d: %d crossings in %d us", instance, cfg.name, cfg.seed, record.crossings, elapsed_us)
    return record
