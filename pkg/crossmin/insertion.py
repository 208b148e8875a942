"""
Optimal edge and star insertion into a fixed embedding.

Both problems reduce to unit-cost breadth-first search in the dual graph,
started from all faces incident to a source vertex at once. Neighbouring
faces are explored in host edge id order; among equally good faces the
lowest face id wins.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .embedding import FaceId
from .errors import InsertionError, StructuralError
from .graph import Star, VertexId
from .planarization import InsertionPath, InsertionSpider, Planarization

logger = logging.getLogger(__name__)

UNREACHED = -1


@dataclass
class DualDistanceMap:
    source: VertexId
    distance: np.ndarray
    predecessor: np.ndarray
    via: np.ndarray
    version: int

    def __getitem__(self, face: FaceId) -> int:
        return int(self.distance[face])

    def __len__(self) -> int:
        return len(self.distance)

    def path_to(self, face: FaceId) -> tuple[list[FaceId], list[int]]:
        """Faces and crossed host edges from a source face to ``face``."""
        if self.distance[face] == UNREACHED:
            raise InsertionError(f"face {face} is not reachable from vertex {self.source}")
        faces, crossed = [face], []
        while self.distance[face] > 0:
            crossed.append(int(self.via[face]))
            face = int(self.predecessor[face])
            faces.append(face)
        faces.reverse()
        crossed.reverse()
        return faces, crossed


def _bfs(p: Planarization, sources: Iterable[FaceId]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    dual = p.emb.dual
    count = len(p.emb.faces)
    distance = np.full(count, UNREACHED, dtype=np.int64)
    predecessor = np.full(count, UNREACHED, dtype=np.int64)
    via = np.full(count, UNREACHED, dtype=np.int64)
    queue = deque()
    for face in sorted(set(sources)):
        distance[face] = 0
        queue.append(face)
    while queue:
        face = queue.popleft()
        for neighbour, h in dual.neighbors(face):
            if distance[neighbour] == UNREACHED:
                distance[neighbour] = distance[face] + 1
                predecessor[neighbour] = face
                via[neighbour] = h
                queue.append(neighbour)
    return distance, predecessor, via


def _source_faces(p: Planarization, v: VertexId) -> list[FaceId]:
    if v not in p.embedded_vertices:
        raise InsertionError(f"vertex {v} is not embedded")
    faces = p.emb.vertex_faces(v)
    if not faces:
        raise InsertionError(f"vertex {v} has no incident edges in the planarization")
    return faces


def dual_bfs(p: Planarization, src: VertexId) -> DualDistanceMap:
    """Hop distances of all faces from the faces around ``src``."""
    distance, predecessor, via = _bfs(p, _source_faces(p, src))
    return DualDistanceMap(src, distance, predecessor, via, p.emb.version)


def _nearest(distance: np.ndarray, faces: list[FaceId], what: str) -> FaceId:
    reachable = [f for f in faces if distance[f] != UNREACHED]
    if not reachable:
        raise InsertionError(f"no face of {what} is reachable")
    return min(reachable, key=lambda f: (distance[f], f))


def eif(p: Planarization, v1: VertexId, v2: VertexId) -> InsertionPath:
    """Shortest insertion path for an edge between two embedded vertices."""
    if v1 == v2:
        raise InsertionError("edge insertion needs two distinct endpoints")
    dmap = dual_bfs(p, v1)
    target = _nearest(dmap.distance, _source_faces(p, v2), f"vertex {v2}")
    faces, crossed = dmap.path_to(target)
    return InsertionPath(faces=faces, crossed=crossed, source=v1, target=v2, version=p.emb.version)


def eif_cost(p: Planarization, v1: VertexId, v2: VertexId) -> int:
    return eif(p, v1, v2).cost


def face_costs(p: Planarization, far: Iterable[VertexId]) -> np.ndarray:
    """Per-face sum of dual distances to every vertex of ``far``; -1 where some vertex is unreachable."""
    far = list(far)
    if not far:
        raise InsertionError("star insertion needs at least one ray")
    distances = np.vstack([dual_bfs(p, w).distance for w in far])
    totals = distances.sum(axis=0)
    totals[(distances == UNREACHED).any(axis=0)] = UNREACHED
    return totals


def sif(p: Planarization, v: VertexId, rays: Iterable[VertexId]) -> tuple[FaceId, InsertionSpider, int]:
    """Optimal face and spider for inserting ``v`` with edges to the vertices ``rays``."""
    if v in p.embedded_vertices:
        raise InsertionError(f"star center {v} is already embedded")
    neighbours = sorted(set(rays))
    star = Star.from_vertex(p.original, v, neighbours)
    far = star.far_endpoints(p.original)
    if len(far) != len(set(far.values())):
        raise StructuralError(f"vertex {v} has parallel edges to its insertion neighbours")
    if len(far) != len(neighbours):
        raise StructuralError(f"vertex {v} is not adjacent to all of {neighbours}")

    totals = face_costs(p, far.values())
    valid = totals != UNREACHED
    if not valid.any():
        raise InsertionError(f"no face reaches all neighbours of vertex {v}")
    # argmin returns the first minimum: lowest face id on ties
    center_face = int(np.argmin(np.where(valid, totals, np.iinfo(np.int64).max)))
    cost = int(totals[center_face])

    distance, predecessor, via = _bfs(p, [center_face])
    paths = {}
    for ray, w in far.items():
        start = _nearest(distance, _source_faces(p, w), f"vertex {w}")
        faces, crossed = [start], []
        face = start
        while distance[face] > 0:
            crossed.append(int(via[face]))
            face = int(predecessor[face])
            faces.append(face)
        paths[ray] = InsertionPath(faces=faces, crossed=crossed, source=w, target=v, version=p.emb.version)
    spider = InsertionSpider(center=v, center_face=center_face, paths=paths, version=p.emb.version)
    logger.debug("star %d: face %d, cost %d over %d rays", v, center_face, cost, len(paths))
    return center_face, spider, cost
