import random
from fractions import Fraction
from itertools import product

import pytest

from g2moduli.conics import (
    INF, BrauerObstruction, Conic, CubicForm, QuadraticAlgebra, bounded_factor,
    conic_det, conic_obstruction, conic_parametrize, conic_point, conic_value,
    cubic_pullback, diagonalize, hilbert_symbol, legendre_normalize, make_conic,
    v4_conic_cubic_data,
)
from g2moduli.errors import DegenerateConic, PointNotOnConic
from g2moduli.fields import GF, QQ


def _identity_holds(L, T, ring):
    """sum A_ij T_i T_j == 0 as a polynomial in (lambda, mu)."""
    acc = [ring.zero] * 5
    for i in range(3):
        for j in range(3):
            aij = L.matrix[i][j]
            for u in range(3):
                for v in range(3):
                    acc[u + v] = ring.add(acc[u + v],
                                          ring.mul(aij, ring.mul(T[i][u], T[j][v])))
    return all(v == ring.zero for v in acc)


def test_conic_det():
    assert conic_det(make_conic(QQ, [1, 0, 0, 1, 0, 1])) == 1
    assert conic_det(make_conic(QQ, [1, 0, 0, 1, 0, 0])) == 0


def test_diagonalize_congruence(rng):
    for _ in range(50):
        L = make_conic(QQ, [rng.randint(-9, 9) for _ in range(6)])
        diag, T = diagonalize(L)
        # rows of T must realize the diagonal values exactly
        for r, d in enumerate(diag):
            assert conic_value(L, T[r]) == d


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(1, 77, 2) == 1
    assert hilbert_symbol(1, -5, INF) == 1
    assert hilbert_symbol(1, 7, 7) == 1
    assert hilbert_symbol(2, 7, 7) == 1  # 2 is a square mod 7
    assert hilbert_symbol(3, 7, 7) == -1


def test_hilbert_product_formula(rng):
    for _ in range(200):
        a = rng.randint(-300, 300) or 1
        b = rng.randint(-300, 300) or 1
        places = {2, INF}
        for f in (bounded_factor(a), bounded_factor(b)):
            places.update(f)
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1


def test_hilbert_symmetry_and_rationals(rng):
    for _ in range(100):
        a = Fraction(rng.randint(-50, 50) or 3, rng.randint(1, 20))
        b = Fraction(rng.randint(-50, 50) or 5, rng.randint(1, 20))
        for v in (2, 3, 5, 7, INF):
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            # square-class invariance
            assert hilbert_symbol(a * 9, b, v) == hilbert_symbol(a, b, v)


def test_conic_point_examples():
    L = make_conic(QQ, [1, 0, 0, 1, 0, -1])
    pt = conic_point(L)
    assert pt is not None and conic_value(L, pt) == 0
    assert conic_point(make_conic(QQ, [1, 0, 0, 1, 0, 1])) is None
    pt = conic_point(make_conic(GF(7), [1, 0, 0, 1, 0, 1]))
    assert pt is not None
    with pytest.raises(DegenerateConic):
        conic_point(make_conic(QQ, [1, 0, 0, 1, 0, 0]))


def test_obstruction_examples():
    assert conic_obstruction(make_conic(QQ, [1, 0, 0, 1, 0, -1])).is_trivial()
    obs = conic_obstruction(make_conic(QQ, [1, 0, 0, 1, 0, 1]))
    assert obs.places == frozenset({2, INF})
    assert obs.to_json() == ["2", "inf"]


def test_obstruction_point_cross_validation(rng):
    obstructed = 0
    for _ in range(200):
        L = make_conic(QQ, [rng.randint(-15, 15) for _ in range(6)])
        if conic_det(L) == 0:
            continue
        obs = conic_obstruction(L)
        assert len(obs.places) % 2 == 0
        pt = conic_point(L)
        assert obs.is_trivial() == (pt is not None)
        if pt is not None:
            assert conic_value(L, pt) == 0
        else:
            obstructed += 1
    assert obstructed > 0


def test_fp_conic_always_solvable(rng):
    for p in (7, 11, 13):
        ctx = GF(p)
        for _ in range(60):
            L = make_conic(ctx, [ctx.rand(rng) for _ in range(6)])
            if conic_det(L) == 0:
                continue
            pt = conic_point(L)
            assert pt is not None and conic_value(L, pt) == 0


def test_legendre_normalize_properties(rng):
    from math import gcd

    for _ in range(60):
        diag = [Fraction(rng.randint(-400, 400) or 3, rng.randint(1, 30))
                for _ in range(3)]
        if any(v == 0 for v in diag):
            continue
        ints, scal, facs = legendre_normalize(diag)
        a, b, c = ints
        assert gcd(a, gcd(b, c)) in (1,)
        assert gcd(abs(a), abs(b)) == gcd(abs(a), abs(c)) == gcd(abs(b), abs(c)) == 1
        for v, f in zip(ints, facs):
            assert all(e == 1 for e in f.values())  # squarefree


def test_parametrization_pythagorean():
    L = make_conic(QQ, [1, 0, 0, 1, 0, -1])
    T = conic_parametrize(L, (Fraction(1), Fraction(0), Fraction(1)))
    assert _identity_holds(L, T, QQ)
    # the image contains non-proportional points: the map is nonconstant
    at0 = tuple(t[0] for t in T)
    at1 = tuple(t[2] for t in T)
    assert at0 != tuple(QQ.zero for _ in range(3))
    assert any(at0[i] * at1[j] != at0[j] * at1[i] for i in range(3) for j in range(3))


def test_parametrization_identity_random_fp(rng):
    ctx = GF(11)
    done = 0
    while done < 100:
        L = make_conic(ctx, [ctx.rand(rng) for _ in range(6)])
        if conic_det(L) == 0:
            continue
        pt = conic_point(L)
        T = conic_parametrize(L, pt)
        assert _identity_holds(L, T, ctx)
        done += 1


def test_parametrization_bad_point():
    L = make_conic(QQ, [1, 0, 0, 1, 0, -1])
    with pytest.raises(PointNotOnConic):
        conic_parametrize(L, (Fraction(1), Fraction(1), Fraction(1)))


def test_parametrization_hits_all_points_small_p():
    for p in (7, 11):
        ctx = GF(p)
        L = make_conic(ctx, [1, 0, 0, 1, 0, 1])
        pt = conic_point(L)
        T = conic_parametrize(L, pt)
        seen = set()
        params = [(1, 0)] + [(lam, 1) for lam in range(p)]
        for lam, mu in params:
            vec = tuple(
                ctx.add(ctx.mul(t[0], lam * lam),
                        ctx.add(ctx.mul(t[1], lam * mu), ctx.mul(t[2], mu * mu)))
                for t in T)
            nz = next((v for v in vec if v != 0), None)
            assert nz is not None
            inv = ctx.inv(nz)
            seen.add(tuple(ctx.mul(v, inv) for v in vec))
        actual = set()
        for v in product(range(p), repeat=3):
            if v != (0, 0, 0) and conic_value(L, v) == 0:
                nz = next(x for x in v if x != 0)
                inv = ctx.inv(nz)
                actual.add(tuple(ctx.mul(x, inv) for x in v))
        assert seen == actual
        assert len(actual) == p + 1


def _zero_cubic(ctx):
    return {
        (i, j, k): ctx.zero
        for i in (1, 2, 3) for j in (1, 2, 3) for k in (1, 2, 3) if i <= j <= k
    }


def test_cubic_pullback_degree_and_monomial():
    tensor = _zero_cubic(QQ)
    tensor[(1, 1, 1)] = Fraction(1)
    M = CubicForm(QQ, tensor)
    T = ((Fraction(0), Fraction(1), Fraction(0)),) * 3   # T_i = lambda*mu
    out = cubic_pullback(M, T)
    assert out.order == 6
    assert out.coeffs == (0, 0, 0, 1, 0, 0, 0)
    # mixed entry carries multiplicity 6
    tensor = _zero_cubic(QQ)
    tensor[(1, 2, 3)] = Fraction(1)
    out = cubic_pullback(CubicForm(QQ, tensor), T)
    assert out.coeffs == (0, 0, 0, 6, 0, 0, 0)


def test_quadratic_algebra_ring_axioms(rng):
    alg = QuadraticAlgebra(QQ, Fraction(-5), Fraction(7))
    vals = [tuple(Fraction(rng.randint(-4, 4)) for _ in range(4)) for _ in range(8)]
    for u in vals[:4]:
        for v in vals[4:]:
            assert alg.mul(u, v) == alg.mul(v, u)
            assert alg.add(u, v) == alg.add(v, u)
    s, t = alg.s, alg.t
    assert alg.mul(s, s) == alg.from_base(Fraction(-5))
    assert alg.mul(t, t) == alg.from_base(Fraction(7))
    st = alg.mul(s, t)
    assert alg.mul(st, st) == alg.from_base(Fraction(-35))


def test_v4_data_from_clebsch(sextic_pool):
    from g2moduli.covariants import CovariantChain

    for F in sextic_pool[:3]:
        ch = CovariantChain(F)
        data = v4_conic_cubic_data(ch.clebsch, r=ch.r)
        assert data.conic.entry(0, 0) == ch.conic_entry_bar(1, 1)
        assert data.cubic.entry(1, 2, 3) == ch.cubic_entry_bar(1, 2, 3)
