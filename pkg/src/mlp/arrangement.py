"""Decomposition of the capped fundamental domain by geodesics of fixed discriminant.

The domain is the standard fundamental strip |x| <= 1/2, |tau| >= 1, capped
above at y = ycap (an integer chosen strictly above every listed semicircle).
Heights are kept as y^2, so the whole construction runs on Fractions.

Faces are connected components of the domain minus the listed geodesics.
They are found by a sweep: the x-axis is cut at every critical abscissa
(arc endpoints, apexes, crossings, vertical lines); inside each open slab the
surviving arcs are totally ordered by height, giving a vertical stack of
cells, and cells of adjacent slabs are merged when their open height
intervals overlap across the shared boundary and no vertical geodesic
separates them.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .geometry import (
    HALF,
    AlgebraicPoint,
    QuadForm,
    check_discriminant,
    enumerate_forms,
    eval_form,
    is_even_square,
    semicircle_interval,
)


class OutOfRegion(ValueError):
    """The point lies outside the fundamental strip (walls or unit circle)."""


@dataclass(frozen=True)
class Arc:
    """A semicircle geodesic clipped to the domain: x in [lo, hi]."""

    form_index: int
    a: int
    b: int
    c: int
    lo: Fraction
    hi: Fraction

    def height_sq(self, x: Fraction) -> Fraction:
        """y^2 on the circle at abscissa x: -(bx+c)/a - x^2."""
        return Fraction(-(self.b * x + self.c), self.a) - x * x


@dataclass(frozen=True)
class VLine:
    """A vertical geodesic strictly inside the strip, running foot to cap."""

    form_index: int
    x: Fraction


@dataclass(frozen=True)
class WallSegment:
    """Maximal face-boundary interval on a wall; s_hi None means "up to the cap"."""

    s_lo: Fraction
    s_hi: Optional[Fraction]
    face: int


@dataclass(frozen=True)
class BottomSegment:
    """Maximal face-boundary interval on the unit circle, in x coordinates."""

    x_lo: Fraction
    x_hi: Fraction
    face: int


@dataclass(frozen=True)
class Face:
    index: int
    sample: AlgebraicPoint
    is_cusp: bool  # owns cells touching the cap (unbounded component)


@dataclass(frozen=True)
class OnExceptional:
    """locate() result for a point on the exceptional set: adjacent faces."""

    faces: tuple[int, ...]


@dataclass(frozen=True)
class BoundarySegments:
    left: tuple[WallSegment, ...]
    right: tuple[WallSegment, ...]
    bottom: tuple[BottomSegment, ...]
    left_wall_in_e: bool
    right_wall_in_e: bool
    bottom_in_e: bool


class FaceComplex:
    """Faces of the capped domain cut by the geodesics of one discriminant."""

    def __init__(self, disc: int, ycap: Optional[int] = None):
        check_discriminant(disc)
        self.disc = disc
        self.forms: tuple[QuadForm, ...] = tuple(enumerate_forms(disc))
        self.even_square = is_even_square(disc)
        floor_cap = isqrt(disc) // 2 + 1  # strictly above every semicircle
        if ycap is None:
            ycap = floor_cap
        elif ycap < floor_cap:
            raise ValueError(f"cap {ycap} does not clear the arcs (need >= {floor_cap})")
        self.ycap = ycap
        self.cap_sq = Fraction(self.ycap * self.ycap)

        self.bottom_in_e = False
        self.left_wall_in_e = False
        self.right_wall_in_e = False
        arcs: list[Arc] = []
        vlines: list[VLine] = []
        for idx, q in enumerate(self.forms):
            if q.a:
                if q.b == 0 and q.c == -q.a:
                    self.bottom_in_e = True
                    continue
                span = semicircle_interval(q)
                assert span is not None  # enumerate_forms filtered already
                arcs.append(Arc(idx, q.a, q.b, q.c, span[0], span[1]))
            else:
                x = Fraction(-q.c, q.b)
                if x == -HALF:
                    self.left_wall_in_e = True
                elif x == HALF:
                    self.right_wall_in_e = True
                else:
                    vlines.append(VLine(idx, x))
        self.arcs = tuple(arcs)
        self.vlines = tuple(vlines)

        self._build_cells()
        self._assign_faces()
        self._build_boundary()
        self._count_euler()

    # -- construction -------------------------------------------------

    def _build_cells(self) -> None:
        arcs, vlines = self.arcs, self.vlines
        crit = {-HALF, HALF, Fraction(0)}
        # vertices of the induced cell structure, as (x, y^2) pairs
        verts = {
            (-HALF, Fraction(3, 4)),
            (HALF, Fraction(3, 4)),
            (-HALF, self.cap_sq),
            (HALF, self.cap_sq),
        }
        arc_xs: list[set[Fraction]] = []
        for arc in arcs:
            crit.add(arc.lo)
            crit.add(arc.hi)
            apex = Fraction(-arc.b, 2 * arc.a)
            if arc.lo < apex < arc.hi:
                crit.add(apex)
            arc_xs.append({arc.lo, arc.hi})
            verts.add((arc.lo, arc.height_sq(arc.lo)))
            verts.add((arc.hi, arc.height_sq(arc.hi)))
        vline_ss: list[set[Fraction]] = []
        for v in vlines:
            crit.add(v.x)
            foot = 1 - v.x * v.x
            vline_ss.append({foot, self.cap_sq})
            verts.add((v.x, foot))
            verts.add((v.x, self.cap_sq))
        for i in range(len(arcs)):
            for j in range(i + 1, len(arcs)):
                ai, aj = arcs[i], arcs[j]
                det = ai.a * aj.b - aj.a * ai.b
                if det == 0:
                    continue  # concentric circles never meet
                x = Fraction(aj.a * ai.c - ai.a * aj.c, det)
                if ai.lo <= x <= ai.hi and aj.lo <= x <= aj.hi:
                    t = Fraction(aj.c * ai.b - ai.c * aj.b, det)
                    crit.add(x)
                    arc_xs[i].add(x)
                    arc_xs[j].add(x)
                    verts.add((x, t - x * x))
        for i, arc in enumerate(arcs):
            for j, v in enumerate(vlines):
                if arc.lo <= v.x <= arc.hi:
                    h = arc.height_sq(v.x)
                    arc_xs[i].add(v.x)
                    vline_ss[j].add(h)
                    verts.add((v.x, h))
        self._arc_xs = arc_xs
        self._vline_ss = vline_ss
        self._verts = verts

        xs = sorted(crit)
        self.xs = xs
        nslab = len(xs) - 1
        self.slab_arcs: list[tuple[int, ...]] = []
        for si in range(nslab):
            m = (xs[si] + xs[si + 1]) / 2
            idxs = [k for k, a in enumerate(arcs) if a.lo <= m <= a.hi]
            idxs.sort(key=lambda k: arcs[k].height_sq(m))
            self.slab_arcs.append(tuple(idxs))

    def _stack_values(self, si: int, x: Fraction) -> list[Fraction]:
        """Heights delimiting the cells of slab si at abscissa x, bottom to cap."""
        vals = [1 - x * x]
        vals.extend(self.arcs[k].height_sq(x) for k in self.slab_arcs[si])
        vals.append(self.cap_sq)
        return vals

    def _assign_faces(self) -> None:
        nslab = len(self.xs) - 1
        offsets = []
        total = 0
        for si in range(nslab):
            offsets.append(total)
            total += len(self.slab_arcs[si]) + 1
        parent = list(range(total))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i: int, j: int) -> None:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri

        vline_x = {v.x for v in self.vlines}
        for b in range(1, nslab):
            xb = self.xs[b]
            if xb in vline_x:
                continue
            lvals = self._stack_values(b - 1, xb)
            rvals = self._stack_values(b, xb)
            for k in range(len(lvals) - 1):
                if lvals[k] >= lvals[k + 1]:
                    continue  # cell pinched to a point at this boundary
                for l in range(len(rvals) - 1):
                    if rvals[l] >= rvals[l + 1]:
                        continue
                    if max(lvals[k], rvals[l]) < min(lvals[k + 1], rvals[l + 1]):
                        union(offsets[b - 1] + k, offsets[b] + l)

        # ids scan slabs left to right and each stack cap-down, so for every
        # discriminant the face at infinity of the leftmost slab gets id 0
        self.face_of: list[list[int]] = []
        first_cell: list[tuple[int, int]] = []
        root_to_id: dict[int, int] = {}
        for si in range(nslab):
            row = [-1] * (len(self.slab_arcs[si]) + 1)
            for lvl in range(len(self.slab_arcs[si]), -1, -1):
                r = find(offsets[si] + lvl)
                fid = root_to_id.get(r)
                if fid is None:
                    fid = len(root_to_id)
                    root_to_id[r] = fid
                    first_cell.append((si, lvl))
                row[lvl] = fid
            self.face_of.append(row)

        cusp_ids = {row[-1] for row in self.face_of}
        faces = []
        for fid, (si, lvl) in enumerate(first_cell):
            m = (self.xs[si] + self.xs[si + 1]) / 2
            vals = self._stack_values(si, m)
            sample = AlgebraicPoint(m, (vals[lvl] + vals[lvl + 1]) / 2)
            faces.append(Face(fid, sample, fid in cusp_ids))
        self.faces: tuple[Face, ...] = tuple(faces)

    def _wall_segments(self, left: bool) -> tuple[WallSegment, ...]:
        si = 0 if left else len(self.xs) - 2
        x = -HALF if left else HALF
        vals = self._stack_values(si, x)
        segs = []
        for k in range(len(vals) - 1):
            if vals[k] < vals[k + 1]:
                hi = None if k == len(vals) - 2 else vals[k + 1]
                segs.append(WallSegment(vals[k], hi, self.face_of[si][k]))
        return tuple(segs)

    def _build_boundary(self) -> None:
        self.left_segments = () if self.left_wall_in_e else self._wall_segments(True)
        self.right_segments = () if self.right_wall_in_e else self._wall_segments(False)

        bps = {-HALF, HALF, Fraction(0)}
        for arc in self.arcs:
            for e in (arc.lo, arc.hi):
                if arc.height_sq(e) == 1 - e * e:
                    bps.add(e)
        for v in self.vlines:
            bps.add(v.x)
        self._bottom_breaks = sorted(bps)
        if self.bottom_in_e:
            self.bottom_segments: tuple[BottomSegment, ...] = ()
        else:
            segs = []
            for xa, xb in zip(self._bottom_breaks, self._bottom_breaks[1:]):
                m = (xa + xb) / 2
                segs.append(BottomSegment(xa, xb, self.face_of[self._slab_of(m)][0]))
            self.bottom_segments = tuple(segs)

    def _count_euler(self) -> None:
        e = 0
        for pts in self._arc_xs:
            e += len(pts) - 1
        for ss in self._vline_ss:
            e += len(ss) - 1
        for left in (True, False):
            x = -HALF if left else HALF
            ss = {Fraction(3, 4), self.cap_sq}
            for arc in self.arcs:
                end = arc.lo if left else arc.hi
                if end == x:
                    ss.add(arc.height_sq(x))
            e += len(ss) - 1
        cap_pts = {-HALF, HALF} | {v.x for v in self.vlines}
        e += len(cap_pts) - 1
        bot_pts = {-HALF, HALF} | {v.x for v in self.vlines}
        for arc in self.arcs:
            for end in (arc.lo, arc.hi):
                if arc.height_sq(end) == 1 - end * end:
                    bot_pts.add(end)
        e += len(bot_pts) - 1
        self.edge_count = e
        self.vertex_count = len(self._verts)

    # -- queries --------------------------------------------------------

    def face_count(self) -> int:
        return len(self.faces)

    def cusp_face_count(self) -> int:
        return sum(1 for f in self.faces if f.is_cusp)

    def boundary_segments(self) -> BoundarySegments:
        return BoundarySegments(
            self.left_segments,
            self.right_segments,
            self.bottom_segments,
            self.left_wall_in_e,
            self.right_wall_in_e,
            self.bottom_in_e,
        )

    def _slab_of(self, x: Fraction) -> int:
        i = bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:
            return min(i, len(self.xs) - 2)
        return i - 1

    def locate(self, p: AlgebraicPoint) -> Union[int, OnExceptional]:
        """Face containing p, or the adjacent faces when p is on a geodesic.

        Points above the cap are fine (the stack is constant up there); only
        the walls and the unit circle bound the region.
        """
        x, s = p.x, p.s
        if x < -HALF or x > HALF or x * x + s < 1:
            raise OutOfRegion(f"({x}, {s}) outside the fundamental strip")
        on_exc = any(eval_form(q, p) == 0 for q in self.forms)
        s_eff = min(s, self.cap_sq)
        i = bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:
            cand = [si for si in (i - 1, i) if 0 <= si <= len(self.xs) - 2]
        else:
            cand = [i - 1]
        hits: set[int] = set()
        for si in cand:
            vals = self._stack_values(si, x)
            for k in range(len(vals) - 1):
                if vals[k] <= s_eff <= vals[k + 1]:
                    hits.add(self.face_of[si][k])
        if on_exc:
            return OnExceptional(tuple(sorted(hits)))
        assert len(hits) == 1, f"point ({x}, {s}) matched faces {hits}"
        return hits.pop()


def build_arrangement(disc: int, ycap: Optional[int] = None) -> FaceComplex:
    return FaceComplex(disc, ycap)
