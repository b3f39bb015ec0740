"""Spaces of piecewise polynomials matching across glued boundaries.

Weight k is even and nonpositive; on each face the function is a polynomial
of degree at most w = -k, stored as a coefficient vector in the basis
1, X, ..., X^w. The slash action of g = [[a,b],[c,d]] sends P to
(cX+d)^w P((aX+b)/(cX+d)), an integer matrix on coefficient vectors, and
the space attached to a gluing graph is cut out orbit by orbit: the root
polynomial must be fixed by every cycle word, everything else is transport.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .arrangement import FaceComplex, OnExceptional, build_arrangement
from .geometry import AlgebraicPoint, ExactComplex, Mat2, reduce_point
from .gluing import GluingGraph, Orbit, build_gluing_graph, orbits_and_cycles


class InvalidWeight(ValueError):
    """Weight must be an even integer <= 0."""


class OutOfDomain(ValueError):
    """Evaluation point must lie in the upper half-plane."""


def check_weight(k: int) -> int:
    """Return w = -k after validating the weight."""
    if not isinstance(k, int) or k > 0 or k % 2:
        raise InvalidWeight(f"invalid weight {k} (need an even integer <= 0)")
    return -k


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi:
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
    return out


def _poly_pow(p: list[int], n: int) -> list[int]:
    out = [1]
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


@dataclass(frozen=True)
class SlashMatrix:
    """Matrix of P -> P|g on coefficient vectors; composition reverses order:
    slash_matrix(g @ h, w) == slash_matrix(h, w) @ slash_matrix(g, w)."""

    mat: tuple[tuple[int, ...], ...]
    w: int

    def __matmul__(self, other: "SlashMatrix") -> "SlashMatrix":
        if self.w != other.w:
            raise InvalidWeight("weight mismatch in slash composition")
        n = self.w + 1
        prod = tuple(
            tuple(sum(self.mat[i][t] * other.mat[t][j] for t in range(n)) for j in range(n))
            for i in range(n)
        )
        return SlashMatrix(prod, self.w)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.w + 1
        return tuple(sum(self.mat[i][j] * vec[j] for j in range(n)) for i in range(n))


def slash_matrix(g: Mat2, w: int) -> SlashMatrix:
    if w < 0 or w % 2:
        raise InvalidWeight(f"invalid degree {w} (need an even integer >= 0)")
    # column j holds the coefficients of (aX+b)^j (cX+d)^(w-j)
    cols = []
    for j in range(w + 1):
        cols.append(_poly_mul(_poly_pow([g.b, g.a], j), _poly_pow([g.d, g.c], w - j)))
    mat = tuple(tuple(cols[j][i] for j in range(w + 1)) for i in range(w + 1))
    return SlashMatrix(mat, w)


def fixed_space(constraints: Sequence[SlashMatrix], w: int) -> list[tuple[Fraction, ...]]:
    """Basis of the joint fixed space {v : M v = v for every M}.

    Plain Gauss-Jordan over Fraction; each basis vector is scaled so its
    first nonzero coefficient (lowest degree) is 1, and the vectors come out
    ordered by free column. With no constraints this is the standard basis.
    """
    n = w + 1
    rows: list[list[Fraction]] = []
    for m in constraints:
        if m.w != w:
            raise InvalidWeight("constraint weight does not match")
        for i in range(n):
            row = [Fraction(m.mat[i][j] - (1 if i == j else 0)) for j in range(n)]
            if any(row):
                rows.append(row)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        hit = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if hit is None:
            continue
        rows[r], rows[hit] = rows[hit], rows[r]
        rows[r] = [e / rows[r][col] for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -rows[ri][free]
        lead = next(x for x in v if x)
        basis.append(tuple(x / lead for x in v))
    return basis


@dataclass
class LocalPolySpace:
    """Exact basis of the weight-k space for one discriminant.

    basis[i] maps face index -> coefficient vector; faces a given element
    vanishes on identically are simply absent from its mapping.
    """

    disc: int
    k: int
    w: int
    augmented: bool
    complex: FaceComplex
    graph: GluingGraph
    orbits: tuple[Orbit, ...]
    dim: int
    basis: tuple[dict[int, tuple[Fraction, ...]], ...]


def solve_space(
    fc: FaceComplex, graph: GluingGraph, k: int, augmented: bool = False
) -> LocalPolySpace:
    w = check_weight(k)
    orbits = orbits_and_cycles(graph)
    basis: list[dict[int, tuple[Fraction, ...]]] = []
    if augmented:
        # no matching conditions at all: monomials on every face
        for f in range(fc.face_count()):
            for j in range(w + 1):
                vec = tuple(Fraction(1 if t == j else 0) for t in range(w + 1))
                basis.append({f: vec})
    else:
        for orb in orbits:
            mats = [slash_matrix(g, w) for g in orb.cycles]
            vecs = fixed_space(mats, w)
            if not vecs:
                continue
            transport = {f: slash_matrix(orb.words[f], w) for f in orb.faces}
            for v in vecs:
                basis.append({f: transport[f].apply(v) for f in orb.faces})
    return LocalPolySpace(fc.disc, k, w, augmented, fc, graph, orbits, len(basis), tuple(basis))


def compute_space(disc: int, k: int, augmented: bool = False) -> LocalPolySpace:
    check_weight(k)
    fc = build_arrangement(disc)
    return solve_space(fc, build_gluing_graph(fc), k, augmented)


def _eval_poly(coeffs: Sequence[Fraction], z: ExactComplex) -> ExactComplex:
    acc = ExactComplex(Fraction(0))
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def evaluate(
    space: LocalPolySpace,
    index: int,
    point: Union[AlgebraicPoint, tuple],
) -> ExactComplex:
    """Value of basis element #index at the point x + i sqrt(s).

    The point is pulled back to the fundamental domain, picking up the
    automorphy factor (c tau + d)^w; on the exceptional set the value is the
    mean over the adjacent faces, which is what the matching condition
    prescribes there.
    """
    if not isinstance(point, AlgebraicPoint):
        x, s = point
        if s <= 0:
            raise OutOfDomain(f"need s > 0 for x + i*sqrt(s), got s={s}")
        point = AlgebraicPoint(x, s)
    g, moved = reduce_point(point)
    where = space.complex.locate(moved)
    elem = space.basis[index]
    zero = tuple(Fraction(0) for _ in range(space.w + 1))
    z = ExactComplex.from_point(moved)
    if isinstance(where, OnExceptional):
        total = ExactComplex(Fraction(0))
        for f in where.faces:
            total = total + _eval_poly(elem.get(f, zero), z)
        val = total * Fraction(1, len(where.faces))
    else:
        val = _eval_poly(elem.get(where, zero), z)
    jay = ExactComplex(g.c * point.x + g.d, Fraction(g.c), point.s)
    return jay ** space.w * val
