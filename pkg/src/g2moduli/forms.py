"""Homogeneous binary forms, transvectants, the GL2 action and discriminants.

A form of order n is stored as a coefficient tuple of length n+1; index i
holds the coefficient of x1^(n-i) x2^i.  The zero form of any order is
allowed and propagates silently through all operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DegenerateCurve, SingularMatrix
from .fields import FieldCtx, field_make


@dataclass(frozen=True)
class BinaryForm:
    ctx: FieldCtx
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    def is_zero(self) -> bool:
        return all(c == self.ctx.zero for c in self.coeffs)

    def coeff(self, i: int):
        return self.coeffs[i]

    def __repr__(self):
        return f"BinaryForm({self.ctx!r}, order={self.order}, {list(self.coeffs)})"


def binary_form(ctx, order: int, coeffs) -> BinaryForm:
    """Build a form, coercing the coefficients into the field."""
    ctx = field_make(ctx)
    cs = tuple(ctx.coerce(c) for c in coeffs)
    return BinaryForm(ctx, order, cs)


def zero_form(ctx, order: int) -> BinaryForm:
    ctx = field_make(ctx)
    return BinaryForm(ctx, order, (ctx.zero,) * (order + 1))


def form_scale(F: BinaryForm, s) -> BinaryForm:
    ctx = F.ctx
    s = ctx.coerce(s)
    return BinaryForm(ctx, F.order, tuple(ctx.mul(s, c) for c in F.coeffs))


def form_add(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    if F.order != G.order:
        raise ValueError("cannot add forms of different orders")
    ctx = F.ctx
    return BinaryForm(ctx, F.order, tuple(ctx.add(a, b) for a, b in zip(F.coeffs, G.coeffs)))


def form_mul(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Product of forms: plain coefficient convolution."""
    ctx = F.ctx
    n = F.order + G.order
    out = [ctx.zero] * (n + 1)
    for i, a in enumerate(F.coeffs):
        if a == ctx.zero:
            continue
        for j, b in enumerate(G.coeffs):
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return BinaryForm(ctx, n, tuple(out))


def diff_x1(F: BinaryForm) -> BinaryForm:
    """Partial derivative with respect to x1."""
    ctx, n = F.ctx, F.order
    if n == 0:
        return zero_form(ctx, 0)
    cs = tuple(ctx.mul(ctx.coerce(n - i), F.coeffs[i]) for i in range(n))
    return BinaryForm(ctx, n - 1, cs)


def diff_x2(F: BinaryForm) -> BinaryForm:
    """Partial derivative with respect to x2."""
    ctx, n = F.ctx, F.order
    if n == 0:
        return zero_form(ctx, 0)
    cs = tuple(ctx.mul(ctx.coerce(i + 1), F.coeffs[i + 1]) for i in range(n))
    return BinaryForm(ctx, n - 1, cs)


def evaluate(F: BinaryForm, x1, x2):
    """Value of F at a point of the base field."""
    ctx = F.ctx
    x1, x2 = ctx.coerce(x1), ctx.coerce(x2)
    n = F.order
    acc = ctx.zero
    p1 = ctx.one
    pows2 = [ctx.one]
    for _ in range(n):
        pows2.append(ctx.mul(pows2[-1], x2))
    for i in range(n, -1, -1):
        # p1 = x1^(n-i) built up as i descends
        acc = ctx.add(acc, ctx.mul(F.coeffs[i], ctx.mul(p1, pows2[i])))
        p1 = ctx.mul(p1, x1)
    return acc


def transvectant(F: BinaryForm, G: BinaryForm, k: int) -> BinaryForm:
    """k-th transvectant with the classical factorial normalization.

    (F,G)_k = ((m-k)!(n-k)!)/(m!n!) * sum_j (-1)^j C(k,j)
              d^k F/dx1^(k-j) dx2^j  *  d^k G/dx1^j dx2^(k-j)
    """
    if k < 0:
        raise ValueError("transvectant index must be nonnegative")
    ctx = F.ctx
    m, n = F.order, G.order
    if k > m or k > n:
        return zero_form(ctx, 0)
    pref = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))

    # all k-th order partials, indexed by the number of x2-derivatives
    def partials(H: BinaryForm):
        out = [H]
        for _ in range(k):
            out.append(diff_x2(out[-1]))
        for j in range(k + 1):
            P = out[j]
            for _ in range(k - j):
                P = diff_x1(P)
            out[j] = P
        return out

    dF = partials(F)
    dG = partials(G)
    total = zero_form(ctx, (m - k) + (n - k))
    for j in range(k + 1):
        term = form_mul(dF[k - j], dG[j])
        sign = -comb(k, j) if j % 2 else comb(k, j)
        total = form_add(total, form_scale(term, ctx.scale_frac(ctx.one, Fraction(sign))))
    return form_scale(total, ctx.scale_frac(ctx.one, pref))


@dataclass(frozen=True)
class GL2Matrix:
    m: object
    n: object
    p: object
    q: object

    def det(self, ctx: FieldCtx):
        return ctx.sub(ctx.mul(self.m, self.q), ctx.mul(self.n, self.p))


def gl2_matrix(ctx, m, n, p, q) -> GL2Matrix:
    ctx = field_make(ctx)
    M = GL2Matrix(ctx.coerce(m), ctx.coerce(n), ctx.coerce(p), ctx.coerce(q))
    if M.det(ctx) == ctx.zero:
        raise SingularMatrix("GL2 matrix must have nonzero determinant")
    return M


def gl2_compose(ctx, M: GL2Matrix, N: GL2Matrix) -> GL2Matrix:
    """Matrix product M*N."""
    ctx = field_make(ctx)
    return GL2Matrix(
        ctx.add(ctx.mul(M.m, N.m), ctx.mul(M.n, N.p)),
        ctx.add(ctx.mul(M.m, N.n), ctx.mul(M.n, N.q)),
        ctx.add(ctx.mul(M.p, N.m), ctx.mul(M.q, N.p)),
        ctx.add(ctx.mul(M.p, N.n), ctx.mul(M.q, N.q)),
    )


def gl2_transform(F: BinaryForm, M: GL2Matrix) -> BinaryForm:
    """Substitute (x1, x2) -> (m x1 + n x2, p x1 + q x2) into F."""
    ctx = F.ctx
    if M.det(ctx) == ctx.zero:
        raise SingularMatrix("GL2 matrix must have nonzero determinant")
    n = F.order
    L1 = BinaryForm(ctx, 1, (ctx.coerce(M.m), ctx.coerce(M.n)))
    L2 = BinaryForm(ctx, 1, (ctx.coerce(M.p), ctx.coerce(M.q)))
    pow1 = [BinaryForm(ctx, 0, (ctx.one,))]
    pow2 = [BinaryForm(ctx, 0, (ctx.one,))]
    for _ in range(n):
        pow1.append(form_mul(pow1[-1], L1))
        pow2.append(form_mul(pow2[-1], L2))
    total = zero_form(ctx, n)
    for i, c in enumerate(F.coeffs):
        if c == ctx.zero:
            continue
        term = form_mul(pow1[n - i], pow2[i])
        total = form_add(total, form_scale(term, c))
    return total


def _det_gauss(rows, ctx: FieldCtx):
    """Determinant by fraction-preserving Gaussian elimination over a field."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = ctx.one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != ctx.zero:
                piv = r
                break
        if piv is None:
            return ctx.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = ctx.neg(det)
        det = ctx.mul(det, a[col][col])
        inv = ctx.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] == ctx.zero:
                continue
            f = ctx.mul(a[r][col], inv)
            for c in range(col, n):
                a[r][c] = ctx.sub(a[r][c], ctx.mul(f, a[col][c]))
    return det


def resultant(F: BinaryForm, G: BinaryForm):
    """Resultant of two binary forms via the Sylvester determinant."""
    ctx = F.ctx
    m, n = F.order, G.order
    size = m + n
    rows = []
    for shift in range(n):
        row = [ctx.zero] * size
        for i, c in enumerate(F.coeffs):
            row[shift + i] = c
        rows.append(row)
    for shift in range(m):
        row = [ctx.zero] * size
        for i, c in enumerate(G.coeffs):
            row[shift + i] = c
        rows.append(row)
    return _det_gauss(rows, ctx)


# Pinned so that the order-6 form discriminant agrees with the classical
# discriminant of a degree-6 polynomial: disc(x^6 - 1) = 6^6.
_DISC_SCALE = Fraction(-1, 1296)


def form_discriminant(F: BinaryForm):
    """Discriminant of an order-6 form; zero iff F has a repeated root in P^1.

    The discriminant is an integer polynomial in the coefficients, but the
    resultant normalization constant is divisible by 6, so in positive
    characteristic the value is computed over Z on lifted coefficients and
    reduced afterwards.
    """
    if F.order != 6:
        raise ValueError("form_discriminant expects an order-6 form")
    ctx = F.ctx
    if ctx.characteristic == 0:
        res = resultant(diff_x1(F), diff_x2(F))
        return ctx.scale_frac(res, _DISC_SCALE)
    from .fields import QQ

    lifted = BinaryForm(QQ, 6, tuple(Fraction(int(c)) for c in F.coeffs))
    disc = resultant(diff_x1(lifted), diff_x2(lifted)) * _DISC_SCALE
    assert disc.denominator == 1
    return ctx.coerce(disc.numerator)


@dataclass(frozen=True)
class CurveModel:
    """Hyperelliptic model y^2 = f(x), deg f in {5, 6}, f squarefree.

    f_coeffs is stored in ascending order: f_coeffs[j] multiplies x^j.
    """

    ctx: FieldCtx
    f_coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.f_coeffs) - 1

    def __repr__(self):
        return f"CurveModel({self.ctx!r}, y^2 = {list(self.f_coeffs)})"


def curve_from_poly(coeffs, ctx) -> CurveModel:
    """Validated genus-2 model from polynomial coefficients (ascending)."""
    ctx = field_make(ctx)
    cs = [ctx.coerce(c) for c in coeffs]
    while cs and cs[-1] == ctx.zero:
        cs.pop()
    deg = len(cs) - 1
    if deg not in (5, 6):
        raise DegenerateCurve(f"degree must be 5 or 6, got {deg}")
    C = CurveModel(ctx, tuple(cs))
    if form_discriminant(curve_to_form(C)) == ctx.zero:
        raise DegenerateCurve("polynomial has multiple roots (as a sextic form)")
    return C


def curve_to_form(C: CurveModel) -> BinaryForm:
    """Associated sextic form F(x1,x2) = x2^6 f(x1/x2)."""
    ctx = C.ctx
    cs = [ctx.zero] * 7
    for j, b in enumerate(C.f_coeffs):
        cs[6 - j] = b
    return BinaryForm(ctx, 6, tuple(cs))


def form_to_curve(F: BinaryForm) -> CurveModel:
    """Inverse of curve_to_form; validates the result."""
    if F.order != 6:
        raise ValueError("expected an order-6 form")
    coeffs = [F.coeffs[6 - j] for j in range(7)]
    return curve_from_poly(coeffs, F.ctx)


def random_sextic(ctx, rng, bound: int = 20, squarefree: bool = False) -> BinaryForm:
    """Random order-6 form with coefficients drawn from the context."""
    ctx = field_make(ctx)
    while True:
        F = binary_form(ctx, 6, [ctx.rand(rng, bound) for _ in range(7)])
        if F.is_zero():
            continue
        if squarefree and form_discriminant(F) == ctx.zero:
            continue
        return F
