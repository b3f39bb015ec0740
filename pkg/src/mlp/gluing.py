"""Identifications between faces induced by the side pairings of the domain.

The left wall maps to the right wall under the translation T, and the bottom
arc folds onto itself under the inversion S. An edge (src, dst, gen) records
the matching condition "P_src = P_dst slashed by gen" along one identified
boundary segment. Orbits of the resulting graph carry transport words, and
each independent non-tree edge yields one cocycle constraint on the orbit
root's polynomial.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .arrangement import FaceComplex
from .geometry import IDENTITY, Mat2, S, T


class GluingMismatch(RuntimeError):
    """Boundary segments that must pair off failed to match up."""


@dataclass(frozen=True)
class GluingEdge:
    src: int
    dst: int
    gen: Mat2
    segment: tuple  # ("wall", s_lo, s_hi) or ("bottom", x_lo, x_hi)


@dataclass(frozen=True)
class GluingGraph:
    n_faces: int
    edges: tuple[GluingEdge, ...]


def build_gluing_graph(fc: FaceComplex) -> GluingGraph:
    """One edge per identified boundary segment; geodesic boundaries get none.

    Wall edges run left face -> right face with generator T; bottom edges run
    from the segment in x <= 0 to its mirror with generator S, one edge per
    mirror pair (S is an involution, so one direction suffices).
    """
    edges: list[GluingEdge] = []
    if not fc.left_wall_in_e and not fc.right_wall_in_e:
        left, right = fc.left_segments, fc.right_segments
        if [(s.s_lo, s.s_hi) for s in left] != [(s.s_lo, s.s_hi) for s in right]:
            raise GluingMismatch(f"wall segments differ for disc {fc.disc}")
        for ls, rs in zip(left, right):
            edges.append(GluingEdge(ls.face, rs.face, T, ("wall", ls.s_lo, ls.s_hi)))
    if not fc.bottom_in_e:
        by_span = {(seg.x_lo, seg.x_hi): seg for seg in fc.bottom_segments}
        for seg in fc.bottom_segments:
            if seg.x_hi > 0:
                continue
            mirror = by_span.get((-seg.x_hi, -seg.x_lo))
            if mirror is None:
                raise GluingMismatch(f"bottom segment {seg} has no mirror, disc {fc.disc}")
            edges.append(GluingEdge(seg.face, mirror.face, S, ("bottom", seg.x_lo, seg.x_hi)))
    return GluingGraph(fc.face_count(), tuple(edges))


@dataclass
class Orbit:
    """A connected component of the gluing graph, rooted at its least face.

    words[f] transports the root polynomial to face f (P_f = P_root | words[f]);
    cycles are the words g with P_root = P_root | g, one per non-tree edge.
    """

    root: int
    faces: tuple[int, ...]
    words: dict[int, Mat2]
    cycles: tuple[Mat2, ...]


def orbits_and_cycles(graph: GluingGraph) -> tuple[Orbit, ...]:
    n = graph.n_faces
    adj: list[list[tuple[int, Mat2, bool, int]]] = [[] for _ in range(n)]
    for ei, e in enumerate(graph.edges):
        adj[e.src].append((e.dst, e.gen, True, ei))
        adj[e.dst].append((e.src, e.gen, False, ei))

    comp = [-1] * n
    orbits: list[Orbit] = []
    tree: set[int] = set()
    for root in range(n):
        if comp[root] >= 0:
            continue
        cid = len(orbits)
        comp[root] = cid
        words = {root: IDENTITY}
        order = [root]
        queue = deque([root])
        while queue:
            cur = queue.popleft()
            for nbr, gen, fwd, ei in adj[cur]:
                if comp[nbr] >= 0:
                    continue
                comp[nbr] = cid
                # edge relation P_src = P_dst | gen, so crossing it forward
                # multiplies the word by gen^-1, backwards by gen
                words[nbr] = words[cur] @ (gen.inv() if fwd else gen)
                tree.add(ei)
                order.append(nbr)
                queue.append(nbr)
        orbits.append(Orbit(root, tuple(order), words, ()))

    cycles: list[list[Mat2]] = [[] for _ in orbits]
    for ei, e in enumerate(graph.edges):
        if ei in tree:
            continue
        orb = orbits[comp[e.src]]
        # P_root|w_src = P_root|w_dst|gen collapses to one relation at the root
        cycles[comp[e.src]].append(orb.words[e.dst] @ e.gen @ orb.words[e.src].inv())
    for orb, cyc in zip(orbits, cycles):
        orb.cycles = tuple(cyc)
    return tuple(orbits)
