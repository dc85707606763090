"""Exact arithmetic over the supported base fields.

Field elements are plain Python values: ``fractions.Fraction`` over the
rationals, ``int`` in ``[0, p)`` over a prime field.  A field context object
supplies the operations, so polynomial code can stay generic over the base
field.  Both representations are canonical, hence ``==`` is exact equality.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CharTwo, NotPrime, WrongCharacteristic


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any desk-scale modulus
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldCtx:
    """Common interface of the two field contexts."""

    kind: str
    characteristic: int

    # subclasses provide: coerce, add, sub, mul, neg, inv, div, pow,
    # scale_frac, sqrt, rand, to_json, from_json

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, x) -> bool:
        return x == self.zero

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, xs, ys):
        return self.sum(self.mul(x, y) for x, y in zip(xs, ys))


class Rationals(FieldCtx):
    """The field Q with Fraction elements (always stored fully reduced)."""

    kind = "q"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / x

    def div(self, x, y):
        return x / y

    def pow(self, x, n: int):
        return x ** n

    def scale_frac(self, x, fr: Fraction):
        return x * fr

    def sqrt(self, x):
        """Nonnegative square root in Q, or None if x is not a square."""
        x = self.coerce(x)
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def rand(self, rng, bound: int = 20):
        return Fraction(rng.randint(-bound, bound))

    def to_json(self, x) -> str:
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)

    def from_json(self, s):
        return Fraction(s)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(FieldCtx):
    """The field F_p for an odd prime p; elements are ints in [0, p)."""

    kind = "fp"

    def __init__(self, p: int):
        if p == 2:
            raise CharTwo("characteristic 2 is not supported")
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.scale_frac(1, x)
        if isinstance(x, str):
            return self.scale_frac(1, Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def div(self, x, y):
        return x * self.inv(y) % self.p

    def pow(self, x, n: int):
        if n < 0:
            return pow(self.inv(x), -n, self.p)
        return pow(x, n, self.p)

    def scale_frac(self, x, fr: Fraction):
        den = fr.denominator % self.p
        if den == 0:
            from .errors import SmallCharacteristic

            raise SmallCharacteristic(
                f"denominator {fr.denominator} vanishes in characteristic {self.p}"
            )
        return x * fr.numerator * pow(den, self.p - 2, self.p) % self.p

    def is_square(self, x) -> bool:
        x %= self.p
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        """Least square root of x in [0, p/2], or None for non-squares."""
        p = self.p
        x %= p
        if x == 0:
            return 0
        if pow(x, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            r = pow(x, (p + 1) // 4, p)
        else:
            r = self._tonelli_shanks(x)
        return min(r, p - r)

    def _tonelli_shanks(self, x: int) -> int:
        p = self.p
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = tt * tt % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def rand(self, rng, bound: int | None = None):
        return rng.randrange(self.p)

    def to_json(self, x) -> str:
        return str(x % self.p)

    def from_json(self, s):
        return int(s) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QQ = Rationals()

_FP_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Prime field context for odd prime p (cached)."""
    ctx = _FP_CACHE.get(p)
    if ctx is None:
        ctx = _FP_CACHE[p] = PrimeField(p)
    return ctx


def field_make(spec) -> FieldCtx:
    """Build a field context from a descriptor.

    Accepts "q" (or "Q", "QQ") for the rationals and "fp:P" for F_P; an
    existing context passes through unchanged.
    """
    if isinstance(spec, FieldCtx):
        return spec
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals"):
            return QQ
        if s.startswith("fp:"):
            return GF(int(s[3:]))
        raise ValueError(f"unknown field descriptor {spec!r}")
    raise TypeError(f"cannot interpret {spec!r} as a field")


def sqrt_in_field(ctx: FieldCtx, x):
    """Square root of x in ctx with the canonical choice, or None."""
    return ctx.sqrt(ctx.coerce(x))


def cube_root_char3(ctx: FieldCtx, x):
    """Cube root in characteristic 3.  Over F_3 the Frobenius is the identity."""
    if ctx.characteristic != 3:
        raise WrongCharacteristic("cube_root_char3 requires characteristic 3")
    # only the prime field F_3 is supported, where t^3 = t
    return ctx.coerce(x)
