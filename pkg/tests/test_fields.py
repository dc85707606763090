from fractions import Fraction

import pytest

from g2moduli.errors import CharTwo, NotPrime, WrongCharacteristic
from g2moduli.fields import GF, QQ, cube_root_char3, field_make, sqrt_in_field


def test_field_make():
    assert field_make("q") is QQ
    assert field_make("q").characteristic == 0
    ctx = field_make("fp:7")
    assert ctx.characteristic == 7
    assert field_make(ctx) is ctx


def test_field_make_rejects_char_two_and_composites():
    with pytest.raises(CharTwo):
        field_make("fp:2")
    with pytest.raises(NotPrime):
        field_make("fp:15")
    with pytest.raises(NotPrime):
        field_make("fp:1")


@pytest.mark.parametrize("spec", ["q", "fp:7", "fp:101", "fp:3"])
def test_field_axioms_random_triples(spec, rng):
    ctx = field_make(spec)
    for _ in range(1000):
        a, b, c = (ctx.rand(rng) for _ in range(3))
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.add(a, ctx.neg(a)) == ctx.zero
        if a != ctx.zero:
            assert ctx.mul(a, ctx.inv(a)) == ctx.one


def test_sqrt_examples():
    assert sqrt_in_field(GF(7), 2) == 3
    assert sqrt_in_field(GF(7), 3) is None
    assert sqrt_in_field(QQ, Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_in_field(QQ, Fraction(-1)) is None
    assert sqrt_in_field(QQ, Fraction(2)) is None


def test_sqrt_euler_criterion(rng):
    # existence agrees with Euler's criterion; value squares back
    for p in (7, 11, 13, 101, 10007):
        ctx = GF(p)
        for _ in range(200):
            x = ctx.rand(rng)
            r = ctx.sqrt(x)
            euler = x == 0 or pow(x, (p - 1) // 2, p) == 1
            assert (r is not None) == euler
            if r is not None:
                assert ctx.mul(r, r) == x
                assert r <= p - r  # canonical least root


def test_sqrt_tonelli_shanks_p_1_mod_4(rng):
    ctx = GF(13)  # 13 = 1 mod 4 exercises the general method
    seen = 0
    for x in range(13):
        r = ctx.sqrt(x)
        if r is not None:
            assert r * r % 13 == x
            seen += 1
    assert seen == 7  # 0 and the six nonzero squares


def test_cube_root_char3():
    ctx = GF(3)
    assert cube_root_char3(ctx, 2) == 2
    assert cube_root_char3(ctx, 0) == 0
    for x in range(3):
        t = cube_root_char3(ctx, x)
        assert pow(t, 3, 3) == x
    with pytest.raises(WrongCharacteristic):
        cube_root_char3(GF(7), 2)


def test_json_round_trip():
    assert QQ.to_json(Fraction(-3, 7)) == "-3/7"
    assert QQ.from_json("-3/7") == Fraction(-3, 7)
    ctx = GF(11)
    assert ctx.to_json(ctx.coerce(-1)) == "10"
    assert ctx.from_json("10") == 10
    assert ctx.coerce(Fraction(1, 2)) == 6  # 1/2 = 6 mod 11
