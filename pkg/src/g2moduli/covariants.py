"""Covariant chains of binary sextics: Clebsch invariants, the odd invariant R,
and the two conic/cubic coefficient families used for reconstruction.

Everything is generated by transvectants from the sextic F and the order-4
covariant i = (F,F)_4.  Two parallel systems are used:

  * the generic system Y1, Y2, Y3 with coefficients A_ij = (Y_i,Y_j)_2 and
    a_ijk ~ (F, Y_i Y_j Y_k)_6, valid when the curve has no extra involution;
  * the adapted system with Y3 replaced by (Y1,Y2)_1, used on the locus of
    curves with extra involutions where the generic conic degenerates.

Normalization constants below are pinned so that the adapted coefficients
satisfy the known closed formulas in the Clebsch invariants (see
_V4_CONIC_FORMULAS / _V4_CUBIC_FORMULAS) and so that the syzygies
sum A_ij X_i X_j = 0 and sum a_ijk X_i X_j X_k = R^3 F hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .forms import BinaryForm, form_mul, transvectant


@dataclass(frozen=True)
class ClebschVector:
    ctx: object
    c2: object
    c4: object
    c6: object
    c10: object

    def as_tuple(self):
        return (self.c2, self.c4, self.c6, self.c10)


def _scalar(F: BinaryForm):
    """Value of an order-0 form."""
    if F.order != 0:
        raise ValueError("expected an order-0 form")
    return F.coeffs[0]


class CovariantChain:
    """All covariants of one sextic, computed lazily and memoized."""

    def __init__(self, F: BinaryForm):
        if F.order != 6:
            raise ValueError("covariant chain requires an order-6 form")
        self.F = F
        self.ctx = F.ctx
        self._memo = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    # --- order-4 covariants ---

    @property
    def i(self):
        return self._get("i", lambda: transvectant(self.F, self.F, 4))

    @property
    def delta(self):
        return self._get("delta", lambda: transvectant(self.i, self.i, 2))

    # --- the order-2 chains ---

    def y(self, k: int) -> BinaryForm:
        """Y_1 = (F,i)_4, Y_2 = (i,Y_1)_2, Y_3 = (i,Y_2)_2."""
        if k == 1:
            return self._get("y1", lambda: transvectant(self.F, self.i, 4))
        if k == 2:
            return self._get("y2", lambda: transvectant(self.i, self.y(1), 2))
        if k == 3:
            return self._get("y3", lambda: transvectant(self.i, self.y(2), 2))
        raise ValueError(k)

    def ybar(self, k: int) -> BinaryForm:
        """Adapted chain: same Y_1, Y_2 but third member (Y_1,Y_2)_1."""
        if k in (1, 2):
            return self.y(k)
        if k == 3:
            return self._get("ybar3", lambda: transvectant(self.y(1), self.y(2), 1))
        raise ValueError(k)

    def x(self, k: int) -> BinaryForm:
        """X_1 = (Y_2,Y_3)_1, X_2 = (Y_3,Y_1)_1, X_3 = (Y_1,Y_2)_1."""
        pairs = {1: (2, 3), 2: (3, 1), 3: (1, 2)}
        i, j = pairs[k]
        return self._get(("x", k), lambda: transvectant(self.y(i), self.y(j), 1))

    def xbar(self, k: int) -> BinaryForm:
        pairs = {1: (2, 3), 2: (3, 1), 3: (1, 2)}
        i, j = pairs[k]
        return self._get(("xbar", k), lambda: transvectant(self.ybar(i), self.ybar(j), 1))

    # --- invariants ---

    @property
    def clebsch(self) -> ClebschVector:
        def build():
            c2 = _scalar(transvectant(self.F, self.F, 6))
            c4 = _scalar(transvectant(self.i, self.i, 4))
            c6 = _scalar(transvectant(self.i, self.delta, 4))
            c10 = _scalar(transvectant(self.y(3), self.y(1), 2))
            return ClebschVector(self.ctx, c2, c4, c6, c10)

        return self._get("clebsch", build)

    @property
    def r(self):
        """The odd invariant of degree 15; zero iff an extra involution exists."""

        def build():
            raw = _scalar(transvectant(self.x(3), self.y(3), 2))
            return self.ctx.scale_frac(raw, _R_SCALE)

        return self._get("r", build)

    @property
    def rbar(self):
        """Degree-16 invariant playing the role of R for the adapted system."""

        def build():
            raw = _scalar(transvectant(self.xbar(3), self.ybar(3), 2))
            return self.ctx.scale_frac(raw, _RBAR_SCALE)

        return self._get("rbar", build)

    def conic_entry(self, i: int, j: int):
        """A_ij = (Y_i, Y_j)_2."""
        key = ("A", min(i, j), max(i, j))
        return self._get(key, lambda: _scalar(transvectant(self.y(i), self.y(j), 2)))

    def conic_entry_bar(self, i: int, j: int):
        key = ("Abar", min(i, j), max(i, j))
        return self._get(key, lambda: _scalar(transvectant(self.ybar(i), self.ybar(j), 2)))

    def cubic_entry(self, i: int, j: int, k: int):
        """a_ijk ~ (F, Y_i Y_j Y_k)_6, scaled to satisfy the degree-6 syzygy."""
        key = ("a",) + tuple(sorted((i, j, k)))

        def build():
            prod = form_mul(form_mul(self.y(i), self.y(j)), self.y(k))
            return self.ctx.scale_frac(_scalar(transvectant(self.F, prod, 6)), _CUBIC_SCALE)

        return self._get(key, build)

    def cubic_entry_bar(self, i: int, j: int, k: int):
        key = ("abar",) + tuple(sorted((i, j, k)))

        def build():
            prod = form_mul(form_mul(self.ybar(i), self.ybar(j)), self.ybar(k))
            return self.ctx.scale_frac(_scalar(transvectant(self.F, prod, 6)), _CUBIC_BAR_SCALE)

        return self._get(key, build)

    def conic_matrix(self, bar: bool = False):
        entry = self.conic_entry_bar if bar else self.conic_entry
        return [[entry(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]

    def cubic_tensor(self, bar: bool = False):
        entry = self.cubic_entry_bar if bar else self.cubic_entry
        return {
            (i, j, k): entry(i, j, k)
            for i in (1, 2, 3)
            for j in (1, 2, 3)
            for k in (1, 2, 3)
            if i <= j <= k
        }


def clebsch_invariants(F: BinaryForm) -> ClebschVector:
    """Clebsch invariants (c2, c4, c6, c10) of an order-6 form."""
    return CovariantChain(F).clebsch


def r_invariant(F: BinaryForm):
    """Odd degree-15 invariant; vanishes exactly on curves with extra involutions."""
    return CovariantChain(F).r


# --- normalization pins (see tests/test_covariants.py for the checks) ---
#
# _R_SCALE makes the adapted cubic entry with indices (1,1,3) equal -R/150,
# matching the closed formulas below; _CUBIC_SCALE then makes the syzygy
# sum a_ijk X_i X_j X_k = R^3 F exact.  The adapted cubic entries carry
# _CUBIC_BAR_SCALE to match the closed formulas; their syzygy is exact in
# the raw normalization, with rbar := ((Ybar1,Ybar2)_1, Ybar3)_2 unscaled.
_R_SCALE = Fraction(-8)
_RBAR_SCALE = Fraction(1)
_CUBIC_SCALE = Fraction(-512)
_CUBIC_BAR_SCALE = Fraction(2, 75)


# Closed formulas for the adapted conic/cubic coefficients in terms of the
# Clebsch invariants and R.  Each entry maps a (e2, e4, e6, e10) exponent
# vector to its rational coefficient; entries carrying an R factor are kept
# separately as (cofactor polynomial, multiplicity-1 flag).

_V4_CONIC_FORMULAS = {
    (1, 1): {(1, 1, 0, 0): Fraction(1, 3), (0, 0, 1, 0): Fraction(2)},
    (1, 2): {(0, 2, 0, 0): Fraction(2, 3), (1, 0, 1, 0): Fraction(2, 3)},
    (1, 3): {},
    (2, 2): {(0, 0, 0, 1): Fraction(1)},
    (2, 3): {},
    (3, 3): {
        (0, 4, 0, 0): Fraction(-4, 18),
        (1, 2, 1, 0): Fraction(-8, 18),
        (2, 0, 2, 0): Fraction(-4, 18),
        (1, 1, 0, 1): Fraction(3, 18),
        (0, 0, 1, 1): Fraction(1),
    },
}

_V4_CUBIC_EVEN_FORMULAS = {
    (1, 1, 1): {
        (2, 0, 1, 0): Fraction(4, 675),
        (0, 1, 1, 0): Fraction(-24, 675),
        (0, 0, 0, 1): Fraction(36, 675),
    },
    (1, 1, 2): {
        (0, 3, 0, 0): Fraction(4, 675),
        (1, 1, 1, 0): Fraction(8, 675),
        (0, 0, 2, 0): Fraction(24, 675),
        (1, 0, 0, 1): Fraction(6, 675),
    },
    (1, 2, 2): {
        (1, 3, 0, 0): Fraction(6, 2025),
        (2, 1, 1, 0): Fraction(8, 2025),
        (0, 2, 1, 0): Fraction(24, 2025),
        (1, 0, 2, 0): Fraction(36, 2025),
        (0, 1, 0, 1): Fraction(18, 2025),
    },
    (2, 2, 2): {
        (0, 4, 0, 0): Fraction(18, 2025),
        (1, 2, 1, 0): Fraction(36, 2025),
        (2, 0, 2, 0): Fraction(16, 2025),
        (0, 1, 2, 0): Fraction(12, 2025),
        (0, 0, 1, 1): Fraction(-18, 2025),
    },
    (1, 3, 3): {
        (2, 4, 0, 0): Fraction(-3, 6075),
        (0, 5, 0, 0): Fraction(24, 6075),
        (3, 2, 1, 0): Fraction(-4, 6075),
        (1, 3, 1, 0): Fraction(42, 6075),
        (2, 1, 2, 0): Fraction(6, 6075),
        (0, 2, 2, 0): Fraction(72, 6075),
        (1, 0, 3, 0): Fraction(36, 6075),
        (1, 2, 0, 1): Fraction(27, 6075),
        (2, 0, 1, 1): Fraction(18, 6075),
        (0, 1, 1, 1): Fraction(54, 6075),
        (0, 0, 0, 2): Fraction(-162, 6075),
    },
    (2, 3, 3): {
        (1, 5, 0, 0): Fraction(3, 6075),
        (2, 3, 1, 0): Fraction(10, 6075),
        (0, 4, 1, 0): Fraction(-6, 6075),
        (3, 1, 2, 0): Fraction(8, 6075),
        (1, 2, 2, 0): Fraction(6, 6075),
        (2, 0, 3, 0): Fraction(24, 6075),
        (0, 1, 3, 0): Fraction(-36, 6075),
        (0, 3, 0, 1): Fraction(18, 6075),
        (1, 1, 1, 1): Fraction(9, 6075),
        (0, 0, 2, 1): Fraction(-54, 6075),
        (1, 0, 0, 2): Fraction(-27, 6075),
    },
}

_V4_CUBIC_R_FORMULAS = {
    (1, 1, 3): {(0, 0, 0, 0): Fraction(-1, 150)},
    (1, 2, 3): {(1, 0, 0, 0): Fraction(-1, 900)},
    (2, 2, 3): {(0, 1, 0, 0): Fraction(-1, 900)},
    (3, 3, 3): {
        (1, 2, 0, 0): Fraction(-3, 5400),
        (2, 0, 1, 0): Fraction(-4, 5400),
        (0, 1, 1, 0): Fraction(6, 5400),
        (0, 0, 0, 1): Fraction(18, 5400),
    },
}


def eval_clebsch_poly(terms: dict, c: ClebschVector):
    """Evaluate a {(e2,e4,e6,e10): Fraction} polynomial at Clebsch values."""
    ctx = c.ctx
    acc = ctx.zero
    for (e2, e4, e6, e10), coeff in terms.items():
        t = ctx.scale_frac(ctx.one, coeff)
        for base, e in zip(c.as_tuple(), (e2, e4, e6, e10)):
            if e:
                t = ctx.mul(t, ctx.pow(base, e))
        acc = ctx.add(acc, t)
    return acc


def v4_conic_entry(c: ClebschVector, i: int, j: int):
    """Adapted conic coefficient from the closed Clebsch formula."""
    key = (min(i, j), max(i, j))
    return eval_clebsch_poly(_V4_CONIC_FORMULAS[key], c)


def v4_cubic_entry(c: ClebschVector, i: int, j: int, k: int, r=None):
    """Adapted cubic coefficient.  Entries with an odd number of index-3
    slots are R times an even cofactor; r=None treats R as 0 (the extra
    involution locus, where those entries vanish)."""
    key = tuple(sorted((i, j, k)))
    if key in _V4_CUBIC_EVEN_FORMULAS:
        return eval_clebsch_poly(_V4_CUBIC_EVEN_FORMULAS[key], c)
    ctx = c.ctx
    if r is None or r == ctx.zero:
        return ctx.zero
    return ctx.mul(eval_clebsch_poly(_V4_CUBIC_R_FORMULAS[key], c), r)
