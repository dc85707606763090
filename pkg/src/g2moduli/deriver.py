"""Exact interpolation of even invariants as polynomials in the Clebsch basis,
and the versioned expression cache backing reconstruction.

Even invariants of binary sextics form a free polynomial ring on
(c2, c4, c6, c10), so an invariant of even degree d has a unique expansion
over the monomials with 2a + 4b + 6c + 10e = d.  The expansions are found by
sampling random integer sextics, solving the exact linear system, and
verifying on fresh samples.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

from .covariants import ClebschVector, CovariantChain
from .errors import DegreeMismatch, MissingCache, NotAnInvariant
from .fields import QQ, FieldCtx
from .forms import BinaryForm, form_discriminant, form_scale, random_sextic

CACHE_VERSION = 3
_BOOTSTRAP_SEED = 987654321


def clebsch_monomials(degree: int):
    """Exponent vectors (a,b,c,e) with 2a + 4b + 6c + 10e = degree."""
    if degree % 2:
        raise ValueError("even degree required")
    out = []
    half = degree // 2
    for e in range(half // 5 + 1):
        for c in range((half - 5 * e) // 3 + 1):
            for b in range((half - 5 * e - 3 * c) // 2 + 1):
                a = half - 5 * e - 3 * c - 2 * b
                out.append((a, b, c, e))
    out.sort()
    return out


def igusa_monomials(degree: int):
    """Exponent vectors (a,b,c,e) with 2a + 4b + 6c + 10e = degree (J-basis)."""
    return clebsch_monomials(degree)


def coeff_monomials(degree: int, weight: int):
    """Exponent vectors (e0..e6) with sum e_i = degree, sum i*e_i = weight."""
    out = []

    def rec(idx, rem_deg, rem_wt, cur):
        if idx == 6:
            if rem_deg >= 0 and rem_wt == 6 * rem_deg:
                out.append(tuple(cur + [rem_deg]))
            return
        for e in range(rem_deg + 1):
            w = rem_wt - idx * e
            if w < 0:
                break
            rec(idx + 1, rem_deg - e, w, cur + [e])

    rec(0, degree, weight, [])
    return sorted(out)


def eval_monomial(values, expo, ctx: FieldCtx):
    acc = ctx.one
    for v, e in zip(values, expo):
        if e:
            acc = ctx.mul(acc, ctx.pow(v, e))
    return acc


def solve_exact(matrix, rhs):
    """Solve a square Fraction system by Gaussian elimination.

    Returns None if the matrix is singular.
    """
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


class InvariantExpression:
    """Polynomial in a weighted basis: maps exponent vectors to Fractions."""

    def __init__(self, degree: int, terms: dict, basis: str = "c"):
        self.degree = degree
        self.terms = {k: Fraction(v) for k, v in terms.items() if v != 0}
        self.basis = basis

    def __call__(self, values, ctx: FieldCtx):
        acc = ctx.zero
        for expo, coeff in self.terms.items():
            acc = ctx.add(acc, ctx.scale_frac(eval_monomial(values, expo, ctx), coeff))
        return acc

    def eval_mod_p(self, values, ctx: FieldCtx):
        """Evaluate over F_p, failing if any denominator vanishes mod p."""
        p = ctx.characteristic
        for coeff in self.terms.values():
            if coeff.denominator % p == 0:
                raise MissingCache(f"expression has denominator divisible by {p}")
        return self(values, ctx)

    def to_json(self):
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": {
                ",".join(map(str, k)): f"{v.numerator}/{v.denominator}"
                for k, v in sorted(self.terms.items())
            },
        }

    @classmethod
    def from_json(cls, data):
        terms = {
            tuple(int(t) for t in k.split(",")): Fraction(v)
            for k, v in data["terms"].items()
        }
        return cls(data["degree"], terms, data.get("basis", "c"))

    def __eq__(self, other):
        return (
            isinstance(other, InvariantExpression)
            and self.degree == other.degree
            and self.basis == other.basis
            and self.terms == other.terms
        )


def _sample_forms(rng, count, bound=20):
    return [random_sextic(QQ, rng, bound, squarefree=True) for _ in range(count)]


def derive_expression(target, degree: int, rng=None, basis_values=None,
                      basis: str = "c", monomials=None, check_scaling: bool = True):
    """Expand an invariant evaluator (form -> scalar) in a weighted basis.

    ``basis_values`` maps a form to the tuple of basis invariant values
    (defaults to the Clebsch quadruple).  The system is solved exactly and
    verified on fresh samples.
    """
    rng = rng or random.Random(_BOOTSTRAP_SEED)
    if basis_values is None:
        basis_values = lambda F: CovariantChain(F).clebsch.as_tuple()
    if monomials is None:
        monomials = clebsch_monomials(degree)

    if check_scaling:
        F = _sample_forms(rng, 1, 6)[0]
        lam = Fraction(2)
        lhs = target(form_scale(F, lam))
        rhs = lam ** degree * target(F)
        if lhs != rhs:
            raise DegreeMismatch(f"target does not scale with degree {degree}")

    n = len(monomials)
    rows, rhs = [], []
    attempts = 0
    while True:
        while len(rows) < n:
            F = _sample_forms(rng, 1)[0]
            try:
                val = target(F)
            except ZeroDivisionError:
                continue
            rows.append([eval_monomial(basis_values(F), m, QQ) for m in monomials])
            rhs.append(val)
        sol = solve_exact(rows, rhs)
        if sol is not None:
            break
        # rank-deficient sample: drop a third and retry
        attempts += 1
        if attempts > 20:
            raise NotAnInvariant("persistent rank deficiency while interpolating")
        keep = max(0, n - n // 3 - 1)
        rows, rhs = rows[:keep], rhs[:keep]

    expr = InvariantExpression(degree, dict(zip(monomials, sol)), basis)
    checked = 0
    while checked < 6:
        F = _sample_forms(rng, 1, 9)[0]
        try:
            val = target(F)
        except ZeroDivisionError:
            continue
        if expr(basis_values(F), QQ) != val:
            raise NotAnInvariant("fresh-sample verification failed")
        checked += 1
    return expr


# ---------------------------------------------------------------------------
# Igusa-Clebsch invariants from root differences (bootstrap oracle)
# ---------------------------------------------------------------------------

_MATCHINGS = []          # 15 ways to pair {0..5}
_TRIPLE_SPLITS = []      # 10 unordered splits into two triples
_SPLIT_BIJECTIONS = []   # 60 splits with a bijection between the triples


def _init_combinatorics():
    import itertools

    if _MATCHINGS:
        return

    def matchings(items):
        if not items:
            yield []
            return
        first = items[0]
        for k in range(1, len(items)):
            rest = items[1:k] + items[k + 1:]
            for rem in matchings(rest):
                yield [(first, items[k])] + rem

    _MATCHINGS.extend(matchings(list(range(6))))
    seen = set()
    for combo in itertools.combinations(range(6), 3):
        other = tuple(sorted(set(range(6)) - set(combo)))
        key = frozenset((combo, other))
        if key in seen:
            continue
        seen.add(key)
        _TRIPLE_SPLITS.append((combo, other))
    for t1, t2 in _TRIPLE_SPLITS:
        for perm in itertools.permutations(t2):
            _SPLIT_BIJECTIONS.append((t1, perm))


def igusa_clebsch_from_roots(a0: Fraction, roots):
    """(I2, I4, I6, I10) of a0 * prod (x - r_i) via root differences."""
    _init_combinatorics()
    r = list(roots)

    def d2(i, j):
        return (r[i] - r[j]) ** 2

    i2 = a0 ** 2 * sum(
        d2(*m[0]) * d2(*m[1]) * d2(*m[2]) for m in _MATCHINGS
    )
    i4 = a0 ** 4 * sum(
        d2(t1[0], t1[1]) * d2(t1[1], t1[2]) * d2(t1[2], t1[0])
        * d2(t2[0], t2[1]) * d2(t2[1], t2[2]) * d2(t2[2], t2[0])
        for t1, t2 in _TRIPLE_SPLITS
    )
    i6 = a0 ** 6 * sum(
        d2(t1[0], t1[1]) * d2(t1[1], t1[2]) * d2(t1[2], t1[0])
        * d2(t2[0], t2[1]) * d2(t2[1], t2[2]) * d2(t2[2], t2[0])
        * d2(t1[0], t2[0]) * d2(t1[1], t2[1]) * d2(t1[2], t2[2])
        for t1, t2 in _SPLIT_BIJECTIONS
    )
    i10 = a0 ** 10
    for i in range(6):
        for j in range(i + 1, 6):
            i10 *= d2(i, j)
    return i2, i4, i6, i10


def split_sextic(rng, monic: bool = False):
    """Random squarefree sextic that splits over Q, with its (a0, roots)."""
    while True:
        roots = rng.sample(range(-12, 13), 6)
        a0 = Fraction(1 if monic else rng.choice([1, 2, 3, -1, -2, 5]))
        coeffs = [a0]
        for rt in roots:
            new = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i] += c
                new[i + 1] -= c * rt
            coeffs = new
        # coeffs: descending in x == ascending in x2-power
        F = BinaryForm(QQ, 6, tuple(coeffs))
        if form_discriminant(F) != 0:
            return F, a0, [Fraction(rt) for rt in roots]


# ---------------------------------------------------------------------------
# The expression cache
# ---------------------------------------------------------------------------

_CONIC_KEYS = ["A_11", "A_12", "A_13", "A_22", "A_23", "A_33"]
_CUBIC_KEYS = [
    "a_111", "a_112", "a_113", "a_122", "a_123", "a_133",
    "a_222", "a_223", "a_233", "a_333",
]
_CONIC_BAR_KEYS = [k.replace("A_", "Abar_") for k in _CONIC_KEYS]
_CUBIC_BAR_KEYS = [k.replace("a_", "abar_") for k in _CUBIC_KEYS]
_R_CARRYING_BAR = {"abar_113", "abar_123", "abar_223", "abar_333"}

_DEFAULT_CACHE = None


class ExpressionCache:
    """Named collection of derived invariant expressions."""

    def __init__(self, entries: dict, meta: dict):
        self.entries = entries
        self.meta = meta

    def expr(self, name: str) -> InvariantExpression:
        try:
            return self.entries[name]
        except KeyError:
            raise MissingCache(f"no cached expression {name!r}") from None

    def r_multiplicity(self, name: str) -> int:
        return 1 if name in _R_CARRYING_BAR else 0

    def save(self, path):
        payload = {
            "version": CACHE_VERSION,
            "meta": self.meta,
            "entries": {k: v.to_json() for k, v in sorted(self.entries.items())},
        }
        Path(path).write_text(json.dumps(payload, indent=1, sort_keys=True))

    @classmethod
    def load(cls, path):
        data = json.loads(Path(path).read_text())
        if data.get("version") != CACHE_VERSION:
            raise MissingCache(
                f"cache version {data.get('version')} != expected {CACHE_VERSION}"
            )
        entries = {k: InvariantExpression.from_json(v) for k, v in data["entries"].items()}
        return cls(entries, data.get("meta", {}))

    def verify_sampled(self, rng=None):
        """Spot-check a few entries against their transvectant oracles."""
        rng = rng or random.Random(1)
        F = random_sextic(QQ, rng, 7, squarefree=True)
        ch = CovariantChain(F)
        c = ch.clebsch.as_tuple()
        checks = {
            "A_11": ch.conic_entry(1, 1),
            "A_33": ch.conic_entry(3, 3),
            "a_123": ch.cubic_entry(1, 2, 3),
            "Abar_33": ch.conic_entry_bar(3, 3),
            "Rsq_c": ch.r ** 2,
        }
        for name, want in checks.items():
            if self.expr(name)(c, QQ) != want:
                raise MissingCache(f"cache entry {name} fails its oracle")
        # J round trip between the two bases
        jvals = tuple(self.expr(f"{n}_from_c")(c, QQ) for n in ("J2", "J4", "J6", "J10"))
        for n in ("c2", "c4", "c6", "c10"):
            idx = ("c2", "c4", "c6", "c10").index(n)
            if self.expr(f"{n}_from_J")(jvals, QQ) != c[idx]:
                raise MissingCache(f"cache entry {n}_from_J fails its oracle")
        return True


def _derive_all(rng):
    """Derive every cached expression.  One-time bootstrap computation."""
    from .covariants import (
        _V4_CONIC_FORMULAS, _V4_CUBIC_EVEN_FORMULAS, _V4_CUBIC_R_FORMULAS,
    )

    entries = {}

    def chain(F):
        return CovariantChain(F)

    # Mestre conic and cubic coefficients in the Clebsch basis
    for key in _CONIC_KEYS:
        i, j = (int(t) for t in key.split("_")[1])
        deg = 2 * (i + j + 1)
        entries[key] = derive_expression(
            lambda F, i=i, j=j: chain(F).conic_entry(i, j), deg, rng)
    for key in _CUBIC_KEYS:
        i, j, k = (int(t) for t in key.split("_")[1])
        deg = 2 * (i + j + k + 2)
        entries[key] = derive_expression(
            lambda F, i=i, j=j, k=k: chain(F).cubic_entry(i, j, k), deg, rng)

    # adapted (barred) family: even entries straight, R-carrying as cofactors
    for key in _CONIC_BAR_KEYS:
        i, j = (int(t) for t in key.split("_")[1])
        if (min(i, j), max(i, j)) in ((1, 3), (2, 3)):
            deg = 2 * (i + j + 1) + 1
            entries[key] = InvariantExpression(deg, {}, "c")
            continue
        deg = 2 * (i + j + 1) + (2 if i == j == 3 else 0)
        entries[key] = derive_expression(
            lambda F, i=i, j=j: chain(F).conic_entry_bar(i, j), deg, rng)
    for key in _CUBIC_BAR_KEYS:
        i, j, k = (int(t) for t in key.split("_")[1])
        delta3 = (i, j, k).count(3)
        deg = 2 * (i + j + k + 2) + delta3
        if key in _R_CARRYING_BAR:
            entries[key] = derive_expression(
                lambda F, i=i, j=j, k=k: chain(F).cubic_entry_bar(i, j, k) / chain(F).r,
                deg - 15, rng)
        else:
            entries[key] = derive_expression(
                lambda F, i=i, j=j, k=k: chain(F).cubic_entry_bar(i, j, k), deg, rng)

    # cross-check the adapted entries against the closed formulas
    for (i, j), terms in _V4_CONIC_FORMULAS.items():
        want = InvariantExpression(entries[f"Abar_{i}{j}"].degree, terms)
        if entries[f"Abar_{i}{j}"] != want:
            raise NotAnInvariant(f"Abar_{i}{j} disagrees with its closed formula")
    for key, terms in {**_V4_CUBIC_EVEN_FORMULAS, **_V4_CUBIC_R_FORMULAS}.items():
        name = "abar_" + "".join(map(str, key))
        want = InvariantExpression(entries[name].degree, terms)
        if entries[name] != want:
            raise NotAnInvariant(f"{name} disagrees with its closed formula")

    # R^2 as an even expression
    entries["Rsq_c"] = derive_expression(lambda F: chain(F).r ** 2, 30, rng)

    # Igusa-Clebsch invariants in the Clebsch basis, pinned from root-difference
    # sums on split sextics (I10 comes out equal to the discriminant)
    split_samples = []
    while len(split_samples) < 30:
        F, a0, roots = split_sextic(rng)
        split_samples.append((chain(F).clebsch.as_tuple(),
                              igusa_clebsch_from_roots(a0, roots),
                              form_discriminant(F)))
    for name, deg, idx in (("I2", 2, 0), ("I4", 4, 1), ("I6", 6, 2), ("I10", 10, 3)):
        monos = clebsch_monomials(deg)
        n = len(monos)
        rows = [[eval_monomial(c, m, QQ) for m in monos] for c, ii, _ in split_samples[:n]]
        rhs = [ii[idx] for _, ii, _ in split_samples[:n]]
        sol = solve_exact(rows, rhs)
        if sol is None:
            raise NotAnInvariant(f"singular system for {name}")
        expr = InvariantExpression(deg, dict(zip(monos, sol)))
        for c, ii, _ in split_samples[n:]:
            if expr(c, QQ) != ii[idx]:
                raise NotAnInvariant(f"{name} fails fresh split-form check")
        entries[f"{name}_c"] = expr
    for c, ii, disc in split_samples:
        if ii[3] != disc:
            raise NotAnInvariant("I10 does not equal the form discriminant")

    # Igusa invariants: J2 = I2/8, J4 = (4 J2^2 - I4)/96,
    # J6 = (8 J2^3 - 160 J2 J4 - I6)/576, J10 = I10/4096
    def j_values(c):
        i2 = entries["I2_c"](c, QQ)
        i4 = entries["I4_c"](c, QQ)
        i6 = entries["I6_c"](c, QQ)
        i10 = entries["I10_c"](c, QQ)
        j2 = i2 / 8
        j4 = (4 * j2 ** 2 - i4) / 96
        j6 = (8 * j2 ** 3 - 160 * j2 * j4 - i6) / 576
        return j2, j4, j6, i10 / 4096

    for name, deg, idx in (("J2", 2, 0), ("J4", 4, 1), ("J6", 6, 2), ("J10", 10, 3)):
        entries[f"{name}_from_c"] = derive_expression(
            lambda F, idx=idx: j_values(chain(F).clebsch.as_tuple())[idx], deg, rng)

    # Clebsch from Igusa (inverse conversion)
    def j_of_form(F):
        return j_values(chain(F).clebsch.as_tuple())

    for name, deg, idx in (("c2", 2, 0), ("c4", 4, 1), ("c6", 6, 2), ("c10", 10, 3)):
        entries[f"{name}_from_J"] = derive_expression(
            lambda F, idx=idx: chain(F).clebsch.as_tuple()[idx], deg, rng,
            basis_values=j_of_form, basis="J")

    # R^2 in the Igusa basis (used on lifted invariants)
    entries["Rsq_J"] = derive_expression(
        lambda F: chain(F).r ** 2, 30, rng, basis_values=j_of_form, basis="J")

    # Igusa invariants as integer-denominator polynomials in the raw
    # coefficients a0..a6 (the only route available mod 3 and mod 5)
    for name, deg, wt, idx in (("J2", 2, 6, 0), ("J4", 4, 12, 1), ("J6", 6, 18, 2)):
        monos = coeff_monomials(deg, wt)
        entries[f"{name}_a"] = derive_expression(
            lambda F, idx=idx: j_of_form(F)[idx], deg, rng,
            basis_values=lambda F: F.coeffs, basis="a", monomials=monos)
        for coeff in entries[f"{name}_a"].terms.values():
            den = coeff.denominator
            while den % 2 == 0:
                den //= 2
            if den != 1:
                raise NotAnInvariant(f"{name}_a has a non-2-power denominator")

    return entries


def cache_bootstrap(seed: int = _BOOTSTRAP_SEED) -> ExpressionCache:
    """Derive and verify the full expression cache (deterministic per seed)."""
    rng = random.Random(seed)
    entries = _derive_all(rng)
    meta = {"seed": seed, "normalization": "classical transvectant; R=-8*((Y1,Y2)_1,Y3)_2"}
    return ExpressionCache(entries, meta)


def default_cache_path() -> Path:
    return Path(__file__).parent / "data" / "expressions.json"


def get_cache(path=None) -> ExpressionCache:
    """Load (and memoize) the expression cache, spot-checking it on first load."""
    global _DEFAULT_CACHE
    if path is not None:
        cache = ExpressionCache.load(path)
        cache.verify_sampled()
        return cache
    if _DEFAULT_CACHE is None:
        cache = ExpressionCache.load(default_cache_path())
        cache.verify_sampled()
        _DEFAULT_CACHE = cache
    return _DEFAULT_CACHE


def set_default_cache(cache: ExpressionCache):
    global _DEFAULT_CACHE
    _DEFAULT_CACHE = cache
