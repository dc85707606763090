"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
All comparisons are exact (no tolerances anywhere).
"""

import random
import time
from fractions import Fraction

import pytest

from g2moduli.classify import classify_point, t_invariant
from g2moduli.conics import conic_det, conic_obstruction, conic_point, make_conic
from g2moduli.covariants import (
    CovariantChain, v4_conic_entry, v4_cubic_entry,
)
from g2moduli.deriver import get_cache
from g2moduli.errors import DegenerateDenominator
from g2moduli.fields import GF, QQ
from g2moduli.forms import (
    binary_form, curve_from_poly, form_add, form_discriminant, form_mul,
    form_scale, random_sextic, zero_form,
)
from g2moduli.harness import sweep_moduli
from g2moduli.models import SPECIAL_GROUPS, AutGroup, family_model
from g2moduli.moduli import (
    ModuliPoint, igusa_invariants, lift_point, moduli_point,
)
from g2moduli.reconstruct import (
    mestre_data_from_invariants, reconstruct, reduced_lift, v4_reconstruct,
)


def _report(num, text):
    print(f"ACCEPTANCE {num}: PASS - {text}")


@pytest.fixture(scope="module")
def sweep7():
    return sweep_moduli(7)


def test_criterion_1_printed_formula_block():
    """All 19 closed conic/cubic identities hold exactly on 200 sextics."""
    t0 = time.time()
    rng = random.Random(101)
    kinds = 0
    for n in range(200):
        F = random_sextic(QQ, rng, 20, squarefree=False)
        ch = CovariantChain(F)
        c = ch.clebsch
        R = ch.r
        checked = 0
        for i in (1, 2, 3):
            for j in range(i, 4):
                assert ch.conic_entry_bar(i, j) == v4_conic_entry(c, i, j)
                checked += 1
                for k in range(j, 4):
                    assert ch.cubic_entry_bar(i, j, k) == v4_cubic_entry(c, i, j, k, r=R)
                    checked += 1
        kinds = checked
    elapsed = time.time() - t0
    assert kinds == 16  # 6 conic + 10 cubic entries per form (19 printed lines
    # cover these up to the stated index symmetry)
    assert elapsed < 60, f"criterion 1 runtime {elapsed:.1f}s"
    _report(1, f"19 printed identities exact on 200 sextics ({elapsed:.1f}s)")


def _syzygy(ch, entry, xs, order, ctx):
    acc = zero_form(ctx, order)
    idx = (1, 2, 3)
    if order == 4:
        for i in idx:
            for j in idx:
                acc = form_add(acc, form_scale(form_mul(xs(i), xs(j)), entry(i, j)))
    else:
        for i in idx:
            for j in idx:
                for k in idx:
                    acc = form_add(acc, form_scale(
                        form_mul(form_mul(xs(i), xs(j)), xs(k)), entry(i, j, k)))
    return acc


def test_criterion_2_syzygies():
    """Conic/cubic syzygies hold as exact polynomial identities, 50 sextics."""
    t0 = time.time()
    rng = random.Random(202)
    for n in range(50):
        F = random_sextic(QQ, rng, 12, squarefree=False)
        ch = CovariantChain(F)
        assert _syzygy(ch, ch.conic_entry, ch.x, 4, QQ).is_zero()
        cubic = _syzygy(ch, ch.cubic_entry, ch.x, 6, QQ)
        assert cubic.coeffs == form_scale(F, ch.r ** 3).coeffs
        assert _syzygy(ch, ch.conic_entry_bar, ch.xbar, 4, QQ).is_zero()
        raw_entry = lambda i, j, k: QQ.scale_frac(
            ch.cubic_entry_bar(i, j, k), Fraction(75, 2))
        cubic_bar = _syzygy(ch, raw_entry, ch.xbar, 6, QQ)
        assert cubic_bar.coeffs == form_scale(F, ch.rbar ** 3).coeffs
    elapsed = time.time() - t0
    assert elapsed < 60, f"criterion 2 runtime {elapsed:.1f}s"
    _report(2, f"four syzygies exact on 50 sextics ({elapsed:.1f}s)")


def test_criterion_3_adapted_conic_determinant():
    """det of the adapted conic on Bolza models is a fixed multiple of the
    three nondegeneracy factors to the fourth power."""
    rng = random.Random(303)
    constant = None
    samples = 0
    while samples < 50:
        a = Fraction(rng.randint(-25, 25))
        b = Fraction(rng.randint(-25, 25))
        factors = (a - b) * (a * a + a * b + b * b) \
            * (-1125 + 4 * a ** 3 + 110 * a * b - a ** 2 * b ** 2 + 4 * b ** 3)
        if factors == 0:
            continue
        try:
            C = curve_from_poly([1, 0, b, 0, a, 0, 1], QQ)
        except Exception:
            continue
        from g2moduli.forms import curve_to_form

        ch = CovariantChain(curve_to_form(C))
        L = make_conic(QQ, [[ch.conic_entry_bar(i, j) for j in (1, 2, 3)]
                            for i in (1, 2, 3)])
        det = conic_det(L)
        ratio = det / factors ** 4
        assert ratio != 0
        if constant is None:
            constant = ratio
        assert ratio == constant
        samples += 1
    _report(3, f"det(adapted conic) = {constant} * (factor product)^4 on 50 models")


def test_criterion_4_v4_round_trip():
    """100 random V4 points over Q reconstruct exactly."""
    t0 = time.time()
    rng = random.Random(404)
    done = 0
    while done < 100:
        a = Fraction(rng.randint(-30, 30))
        b = Fraction(rng.randint(-30, 30))
        if (a - b) * (a * a + a * b + b * b) == 0:
            continue
        if -1125 + 4 * a ** 3 + 110 * a * b - a ** 2 * b ** 2 + 4 * b ** 3 == 0:
            continue
        try:
            C = curve_from_poly([1, 0, b, 0, a, 0, 1], QQ)
        except Exception:
            continue
        P = moduli_point(C)
        if classify_point(P) is not AutGroup.V4:
            continue
        curve = v4_reconstruct(P, AutGroup.V4)
        assert curve.ctx == QQ
        assert moduli_point(curve) == P
        done += 1
    _report(4, f"100 V4 reconstructions verified exactly ({time.time()-t0:.1f}s)")


def test_criterion_5_family_round_trips():
    """t -> model -> t is exact for both families in char 0, 7, 3 and 5."""
    rng = random.Random(505)
    checks = 0

    def run(ctx, t, group):
        nonlocal checks
        C = family_model(group, t, ctx)
        P = moduli_point(C)
        try:
            assert t_invariant(P, group) == ctx.coerce(t)
            checks += 1
        except DegenerateDenominator:
            # the family passes through a one-point class at this t
            assert classify_point(P) in SPECIAL_GROUPS

    seen = set()
    while len(seen) < 50:
        t = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        if t in (0, Fraction(1, 4)) or t in seen:
            continue
        seen.add(t)
        run(QQ, t, AutGroup.D8)
        run(QQ, t, AutGroup.D12)
    ctx7 = GF(7)
    for t in range(7):
        if t in (0, 2):  # 1/4 = 2 mod 7
            continue
        run(ctx7, t, AutGroup.D8)
        run(ctx7, t, AutGroup.D12)
    ctx3 = GF(3)
    run(ctx3, 2, AutGroup.D8)          # t = -J2^2/J4 branch
    for tstar in (1, 2):               # t* = t in F_3; t = -J2^3/J6 branch
        run(ctx3, pow(tstar, 3, 3), AutGroup.D12)
    ctx5 = GF(5)
    for t in (1, 2, 3):                # 1/4 = 4 mod 5
        run(ctx5, t, AutGroup.D8)      # t = 1 + J4/J2^2
        run(ctx5, t, AutGroup.D12)     # t = -1 - J4/J2^2
    assert checks >= 100
    _report(5, f"{checks} family round trips exact across char 0, 7, 3, 5")


def test_criterion_6_one_point_classes(sweep7):
    """The three fixed curves classify correctly; (0,0,0) gives y^2 = x^5 - 1;
    the F_7 sweep sees each one-point class exactly once."""
    from g2moduli.classify import classify_curve

    assert classify_curve(curve_from_poly([-1, 0, 0, 0, 0, 1], QQ)) is AutGroup.C10
    assert classify_curve(curve_from_poly([-1, 0, 0, 0, 0, 0, 1], QQ)) is AutGroup.TwoD12
    assert classify_curve(curve_from_poly([0, -1, 0, 0, 0, 1], QQ)) is AutGroup.S4tilde
    res = reconstruct(ModuliPoint(QQ, *(Fraction(0),) * 3))
    assert res.outcome == "curve"
    assert res.curve.f_coeffs == (-1, 0, 0, 0, 0, 1)
    for group in (AutGroup.C10, AutGroup.TwoD12, AutGroup.S4tilde):
        assert sweep7.group_counts[group] == 1
    _report(6, "one-point classes: fixed curves, (0,0,0) model, F_7 counts all exact")


def test_criterion_7_field_sweeps(sweep7):
    """Full sweeps for p in {7, 11, 13}: all enumerated points reconstruct,
    no obstructions, p = 13 within its runtime budget."""
    lines = []
    for p, report in ((7, sweep7), (11, None), (13, None)):
        if report is None:
            report = sweep_moduli(p)
        assert report.obstructed == 0, f"obstructed points over F_{p}"
        assert report.unsupported == 0
        assert not report.failures, report.failures[:3]
        assert report.coverage_ok
        assert sum(report.group_counts.values()) == p ** 3
        if p == 13:
            assert report.elapsed <= 600, f"p=13 sweep took {report.elapsed:.0f}s"
        lines.append(f"p={p}: {report.total_points} pts, "
                     f"{report.enumerated_points} enumerated, "
                     f"{report.elapsed:.0f}s [{report.backend}]")
    _report(7, "; ".join(lines))


def test_criterion_8_obstruction_realization():
    """Some small-height C2 point is genuinely obstructed over Q; the generic
    and adapted conics have identical obstruction sets at curve points."""
    rng = random.Random(808)
    witness = None
    tried = 0
    while witness is None:
        tried += 1
        P = ModuliPoint(QQ, Fraction(rng.randint(-9, 9)),
                        Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
        try:
            if classify_point(P) is not AutGroup.C2:
                continue
        except Exception:
            continue
        data = mestre_data_from_invariants(reduced_lift(P))
        obs = conic_obstruction(data.conic)
        if obs.is_trivial():
            continue
        assert len(obs.places) % 2 == 0
        assert conic_point(data.conic) is None
        res = reconstruct(P)
        assert res.outcome == "obstructed"
        assert res.obstruction.places == obs.places
        witness = (tuple(str(v) for v in P.as_tuple()), obs.to_json())

    # generic vs adapted obstruction sets coincide when R is rational
    from g2moduli.forms import curve_to_form

    compared = 0
    rng2 = random.Random(809)
    while compared < 30:
        F = random_sextic(QQ, rng2, 6, squarefree=True)
        P = moduli_point(F)
        if classify_point(P) is not AutGroup.C2:
            continue
        ch = CovariantChain(F)
        L = make_conic(QQ, [[ch.conic_entry(i, j) for j in (1, 2, 3)]
                            for i in (1, 2, 3)])
        Lbar = make_conic(QQ, [[ch.conic_entry_bar(i, j) for j in (1, 2, 3)]
                               for i in (1, 2, 3)])
        if conic_det(L) == 0 or conic_det(Lbar) == 0:
            continue
        assert conic_obstruction(L).places == conic_obstruction(Lbar).places
        compared += 1
    _report(8, f"obstructed point {witness[0]} with places {witness[1]} "
               f"(found after {tried} tries); generic/adapted obstructions "
               f"agree on 30 curve points")


def test_criterion_9_deriver_soundness():
    """Cached expressions match their oracles on 100 fresh sextics; the
    discriminant pinning and mod-3 reduction hold on 100 forms each."""
    cache = get_cache()
    rng = random.Random(909)
    conic_keys = [f"A_{i}{j}" for i in (1, 2, 3) for j in range(i, 4)]
    cubic_keys = [f"a_{i}{j}{k}" for i in (1, 2, 3) for j in range(i, 4)
                  for k in range(j, 4)]
    for _ in range(100):
        F = random_sextic(QQ, rng, 9, squarefree=True)
        ch = CovariantChain(F)
        c = ch.clebsch.as_tuple()
        assert cache.expr("Rsq_c")(c, QQ) == ch.r ** 2
        for key in conic_keys:
            i, j = int(key[2]), int(key[3])
            assert cache.expr(key)(c, QQ) == ch.conic_entry(i, j)
        for key in cubic_keys:
            i, j, k = int(key[2]), int(key[3]), int(key[4])
            assert cache.expr(key)(c, QQ) == ch.cubic_entry(i, j, k)
    for _ in range(100):
        F = random_sextic(QQ, rng, 12, squarefree=False)
        assert 4096 * igusa_invariants(F).J10 == form_discriminant(F)
    ctx3 = GF(3)
    for _ in range(100):
        F = random_sextic(QQ, rng, 12)
        JQ = igusa_invariants(F)
        F3 = binary_form(ctx3, 6, [int(v) % 3 for v in F.coeffs])
        J3 = igusa_invariants(F3)
        assert tuple(ctx3.coerce(v) for v in JQ.as_tuple()) == J3.as_tuple()
    _report(9, "cached expressions, discriminant pinning, and mod-3 reduction "
               "all exact on 100 forms each")
