import random
from fractions import Fraction

import pytest

from g2moduli.covariants import CovariantChain
from g2moduli.deriver import (
    ExpressionCache, InvariantExpression, cache_bootstrap, clebsch_monomials,
    coeff_monomials, derive_expression, get_cache, igusa_clebsch_from_roots,
    split_sextic,
)
from g2moduli.errors import DegreeMismatch, MissingCache, NotAnInvariant
from g2moduli.fields import GF, QQ
from g2moduli.forms import form_discriminant, random_sextic


def test_monomial_enumeration_counts():
    # direct enumeration matches the closed loop
    for d in (2, 4, 6, 10, 14, 30):
        monos = clebsch_monomials(d)
        brute = [
            (a, b, c, e)
            for a in range(d // 2 + 1)
            for b in range(d // 4 + 1)
            for c in range(d // 6 + 1)
            for e in range(d // 10 + 1)
            if 2 * a + 4 * b + 6 * c + 10 * e == d
        ]
        assert sorted(monos) == sorted(brute)
    assert clebsch_monomials(2) == [(1, 0, 0, 0)]
    assert len(clebsch_monomials(30)) == 47


def test_coeff_monomials():
    monos = coeff_monomials(2, 6)
    assert set(monos) == {
        (1, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1, 0),
        (0, 0, 1, 0, 1, 0, 0), (0, 0, 0, 2, 0, 0, 0),
    }
    for e in coeff_monomials(6, 18):
        assert sum(e) == 6 and sum(i * v for i, v in enumerate(e)) == 18


def test_derive_trivial_basis_element(rng):
    expr = derive_expression(lambda F: CovariantChain(F).clebsch.c2, 2,
                             random.Random(5))
    assert expr.terms == {(1, 0, 0, 0): Fraction(1)}


def test_derive_conic_entry_matches_printed(rng):
    expr = derive_expression(lambda F: CovariantChain(F).conic_entry_bar(1, 1), 6,
                             random.Random(6))
    assert expr.terms == {(1, 1, 0, 0): Fraction(1, 3), (0, 0, 1, 0): Fraction(2)}


def test_derive_degree_mismatch(rng):
    with pytest.raises(DegreeMismatch):
        derive_expression(lambda F: CovariantChain(F).clebsch.c2, 4, random.Random(7))


def test_derive_not_an_invariant(rng):
    # a non-invariant of the right scaling degree fails fresh verification
    with pytest.raises((NotAnInvariant, DegreeMismatch)):
        derive_expression(lambda F: F.coeffs[0] * F.coeffs[6], 2, random.Random(8))


def test_cache_load_and_sampled_verification():
    cache = get_cache()
    assert cache.verify_sampled()
    assert cache.expr("Abar_22").terms == {(0, 0, 0, 1): Fraction(1)}
    assert cache.expr("abar_113").terms == {(0, 0, 0, 0): Fraction(-1, 150)}
    assert cache.r_multiplicity("abar_113") == 1
    assert cache.r_multiplicity("abar_112") == 0
    with pytest.raises(MissingCache):
        cache.expr("no_such_entry")


def test_cached_expressions_against_oracles(sextic_pool):
    cache = get_cache()
    for F in sextic_pool[:6]:
        ch = CovariantChain(F)
        c = ch.clebsch.as_tuple()
        for i in (1, 2, 3):
            for j in range(i, 4):
                assert cache.expr(f"A_{i}{j}")(c, QQ) == ch.conic_entry(i, j)
        assert cache.expr("a_123")(c, QQ) == ch.cubic_entry(1, 2, 3)
        assert cache.expr("a_333")(c, QQ) == ch.cubic_entry(3, 3, 3)
        assert cache.expr("Rsq_c")(c, QQ) == ch.r ** 2
        assert cache.expr("I10_c")(c, QQ) == form_discriminant(F)


def test_cache_round_trip(tmp_path):
    cache = get_cache()
    path = tmp_path / "cache.json"
    cache.save(path)
    again = ExpressionCache.load(path)
    assert set(again.entries) == set(cache.entries)
    assert all(again.entries[k] == cache.entries[k] for k in cache.entries)


def test_eval_mod_p_missing_cache():
    expr = InvariantExpression(2, {(1, 0, 0, 0): Fraction(1, 3)})
    ctx = GF(3)
    with pytest.raises(MissingCache):
        expr.eval_mod_p((1, 0, 0, 0), ctx)
    assert expr.eval_mod_p((1, 0, 0, 0), GF(7)) == GF(7).scale_frac(1, Fraction(1, 3))


def test_igusa_clebsch_root_oracle(rng):
    # I10 from root differences equals the form discriminant
    for _ in range(5):
        F, a0, roots = split_sextic(rng)
        i2, i4, i6, i10 = igusa_clebsch_from_roots(a0, roots)
        assert i10 == form_discriminant(F)


@pytest.mark.slow
def test_bootstrap_determinism():
    c1 = cache_bootstrap(seed=11)
    c2 = cache_bootstrap(seed=11)
    assert set(c1.entries) == set(c2.entries)
    assert all(c1.entries[k] == c2.entries[k] for k in c1.entries)
