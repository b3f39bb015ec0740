from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mlp import (
    IDENTITY,
    S,
    T,
    AlgebraicPoint,
    ExactComplex,
    InvalidDiscriminant,
    InvalidWeight,
    Mat2,
    build_arrangement,
    build_gluing_graph,
    compute_space,
    evaluate,
    orbits_and_cycles,
)
from mlp.arrangement import OnExceptional
from mlp.polyspace import OutOfDomain, check_weight, fixed_space, slash_matrix

from _support import exceptional_points, random_word

HALF = Fraction(1, 2)
RHO = AlgebraicPoint(HALF, Fraction(3, 4))
ZERO = ExactComplex(0, 0, 0)
ONE = ExactComplex(1, 0, 0)


def _identity_matrix(w: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(w + 1)) for i in range(w + 1))


def _poly_at(coeffs, p: AlgebraicPoint) -> ExactComplex:
    z = ExactComplex.from_point(p)
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * z + ExactComplex(c, 0, 0)
    return acc


def test_check_weight():
    assert check_weight(0) == 0
    assert check_weight(-6) == 6
    for bad in (2, -1, -3, 1):
        with pytest.raises(InvalidWeight):
            check_weight(bad)


def test_slash_matrix_pins():
    assert slash_matrix(IDENTITY, 4).mat == _identity_matrix(4)
    # composition with X+1, column-wise binomial expansion
    assert slash_matrix(T, 2).mat == ((1, 1, 1), (0, 1, 2), (0, 0, 1))
    with pytest.raises(InvalidWeight):
        slash_matrix(T, 3)


def test_slash_matrix_weight_zero_is_trivial():
    rng = random.Random(31007)
    for _ in range(20):
        assert slash_matrix(random_word(rng), 0).mat == ((1,),)


def test_slash_right_action_law():
    rng = random.Random(90210)
    for w in (0, 2, 4, 6, 8):
        for _ in range(20):
            g1, g2 = random_word(rng), random_word(rng)
            assert slash_matrix(g1 @ g2, w) == slash_matrix(g2, w) @ slash_matrix(g1, w)


def test_slash_torsion_relations():
    for w in (0, 2, 4, 6, 8):
        ms, mt = slash_matrix(S, w), slash_matrix(T, w)
        assert (ms @ ms).mat == _identity_matrix(w)
        st = ms @ mt
        assert (st @ st @ st).mat == _identity_matrix(w)


def test_fixed_space_pins():
    assert fixed_space([slash_matrix(T, 2)], 2) == [(1, 0, 0)]
    full = fixed_space([], 2)
    assert len(full) == 3
    corner = Mat2(1, -1, 1, 0)
    assert fixed_space([slash_matrix(corner, 2)], 2) == [(1, -1, 1)]


def test_fixed_space_normalization():
    # first nonzero coefficient of each basis vector is 1
    for disc in (5, 8, 9, 13):
        for k in (0, -2, -4):
            space = compute_space(disc, k)
            for elem in space.basis:
                root_poly = min(elem.items())[1]
                lead = next(c for c in root_poly if c)
                assert lead == 1


def test_compute_space_d5_pinned_basis():
    space = compute_space(5, -2)
    assert space.dim == 2
    assert space.basis[0] == {0: (1, 0, 0)}
    assert space.basis[1] == {1: (1, 1, 1), 2: (1, -1, 1)}


def test_compute_space_d5_weight_zero():
    space = compute_space(5, 0)
    assert space.dim == 2
    assert space.basis[0] == {0: (1,)}
    assert space.basis[1] == {1: (1,), 2: (1,)}


def test_compute_space_d4_free_monomials():
    space = compute_space(4, -2)
    assert space.dim == 6
    for elem in space.basis:
        assert len(elem) == 1
        (coeffs,) = elem.values()
        assert sum(1 for c in coeffs if c) == 1 and 1 in coeffs


def test_compute_space_augmented():
    assert compute_space(5, -2, augmented=True).dim == 9
    assert compute_space(8, -4, augmented=True).dim == 20


def test_compute_space_rejects_bad_input():
    with pytest.raises(InvalidDiscriminant):
        compute_space(7, -2)
    with pytest.raises(InvalidWeight):
        compute_space(5, -3)
    with pytest.raises(InvalidWeight):
        compute_space(5, 2)


def test_dimension_regressions():
    expected = {
        (4, -2): 6,
        (8, -2): 5,
        (8, 0): 3,
        (1, -2): 1,
        (5, -2): 2,
        (9, -2): 28,
        (12, -2): 8,
    }
    for (disc, k), dim in expected.items():
        assert compute_space(disc, k).dim == dim, (disc, k)


def test_basis_satisfies_every_gluing_relation():
    # matrix check on each edge: P_src = P_dst slashed by the edge generator
    for disc in [d for d in range(1, 31) if d % 4 in (0, 1)]:
        for k in (0, -2, -4):
            space = compute_space(disc, k)
            w = -k
            zeros = (Fraction(0),) * (w + 1)
            for elem in space.basis:
                for e in space.graph.edges:
                    lhs = elem.get(e.src, zeros)
                    rhs = slash_matrix(e.gen, w).apply(elem.get(e.dst, zeros))
                    assert tuple(lhs) == tuple(rhs)


def test_dim_bound_and_weight_zero_identity():
    for disc in [d for d in range(1, 41) if d % 4 in (0, 1)]:
        fc = build_arrangement(disc)
        orbits = orbits_and_cycles(build_gluing_graph(fc))
        rf = fc.face_count()
        assert compute_space(disc, 0).dim == len(orbits)
        for k in (-2, -4):
            dim = compute_space(disc, k).dim
            assert dim <= (-k + 1) * rf
            assert (dim == (-k + 1) * rf) == fc.even_square


def test_evaluate_constant_element():
    space = compute_space(5, -2)
    assert evaluate(space, 0, AlgebraicPoint(0, 9)) == ONE
    # constant on the cusp face, zero on the other orbit's faces
    assert evaluate(space, 1, AlgebraicPoint(0, 9)) == ZERO


def test_evaluate_vanishes_at_corner():
    # X^2 - X + 1 has rho as a root
    space = compute_space(5, -2)
    assert evaluate(space, 1, RHO) == ZERO
    # same point reached from the left corner via x -> x+1
    assert evaluate(space, 1, AlgebraicPoint(-HALF, Fraction(3, 4))) == ZERO


def test_evaluate_rejects_lower_half_plane():
    space = compute_space(5, -2)
    with pytest.raises(OutOfDomain):
        evaluate(space, 0, (Fraction(0), Fraction(-1)))


def test_evaluate_is_modular():
    rng = random.Random(60911)
    for disc, k in ((5, -2), (8, -2), (5, 0)):
        space = compute_space(disc, k)
        w = -k
        for _ in range(50):
            g = random_word(rng, 8)
            p = AlgebraicPoint(
                Fraction(rng.randint(-30, 30), rng.randint(1, 12)),
                Fraction(rng.randint(1, 80), rng.randint(1, 10)),
            )
            jay = ExactComplex(g.c * p.x + g.d, Fraction(g.c), p.s)
            q = AlgebraicPoint(
                ((g.a * p.x + g.b) * (g.c * p.x + g.d) + g.a * g.c * p.s)
                / ((g.c * p.x + g.d) ** 2 + g.c * g.c * p.s),
                p.s / ((g.c * p.x + g.d) ** 2 + g.c * g.c * p.s) ** 2,
            )
            for idx in range(space.dim):
                assert evaluate(space, idx, p) == jay**w * evaluate(space, idx, q)


def test_evaluate_averages_on_exceptional_set():
    for disc in [d for d in range(1, 21) if d % 4 in (0, 1)]:
        space = compute_space(disc, -2)
        fc = space.complex
        for p in exceptional_points(fc, 20):
            loc = fc.locate(p)
            assert isinstance(loc, OnExceptional)
            carrier = next(
                q for q in fc.forms if q.a * (p.x * p.x + p.s) + q.b * p.x + q.c == 0
            )
            sides = _stable_side_faces(fc, p, vertical=carrier.a != 0)
            assert sides == set(loc.faces)
            zeros = (Fraction(0),) * 3
            for idx, elem in enumerate(space.basis):
                mean = ZERO
                for f in loc.faces:
                    mean = mean + _poly_at(elem.get(f, zeros), p)
                mean = mean * ExactComplex(Fraction(1, len(loc.faces)), 0, 0)
                assert evaluate(space, idx, p) == mean


def _stable_side_faces(fc, p: AlgebraicPoint, vertical: bool) -> set[int]:
    """One-sided faces at an exceptional point, stabilized over shrinking steps."""
    from mlp.arrangement import OutOfRegion

    prev = None
    for t in (10, 13, 16, 19, 22, 25):
        eps = Fraction(1, 2**t)
        try:
            if vertical:
                a = fc.locate(AlgebraicPoint(p.x, p.s + eps))
                b = fc.locate(AlgebraicPoint(p.x, p.s - eps))
            else:
                a = fc.locate(AlgebraicPoint(p.x + eps, p.s))
                b = fc.locate(AlgebraicPoint(p.x - eps, p.s))
        except OutOfRegion:
            prev = None
            continue
        if not (isinstance(a, int) and isinstance(b, int)):
            prev = None
            continue
        if prev == {a, b}:
            return prev
        prev = {a, b}
    raise AssertionError(f"one-sided faces did not stabilize at {p}")
