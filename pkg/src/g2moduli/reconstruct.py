"""Curve reconstruction from a rational moduli point.

Dispatch on the automorphism group: the one-point classes and the D8/D12
families have verbatim models; V4 points use the radical-free closed model
(with conic fallbacks for its degenerate locus); generic C2 points go through
the conic/cubic construction, whose only possible failure over Q is the
Brauer obstruction, returned as a certified set of places.  Every curve is
verified against the input point before being returned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .classify import classify_point, t_invariant
from .conics import (
    BrauerObstruction, Conic, ConicCubicData, CubicForm, QuadraticAlgebra,
    bounded_factor, conic_det, conic_obstruction, conic_parametrize,
    conic_point, cubic_pullback, make_conic, v4_conic_cubic_data,
)
from .covariants import v4_conic_entry
from .deriver import get_cache
from .errors import (
    DegenerateConic, DegenerateCurve, DegenerateOutput, FactorizationLimit,
    SmallCharacteristic, Unsupported, VerificationFailed, WrongGroup,
)
from .fields import FieldCtx
from .forms import BinaryForm, CurveModel, curve_from_poly, form_discriminant, form_to_curve
from .models import AutGroup, PARAMETRIC_GROUPS, SPECIAL_GROUPS, family_model
from .moduli import (
    IgusaVector, ModuliPoint, clebsch_from_igusa, lift_point, moduli_point,
    rescale_invariants,
)


@dataclass(frozen=True)
class ReconstructionResult:
    group: AutGroup | None
    curve: CurveModel | None = None
    obstruction: BrauerObstruction | None = None
    reason: str | None = None

    @property
    def outcome(self) -> str:
        if self.curve is not None:
            return "curve"
        if self.obstruction is not None:
            return "obstructed"
        return "unsupported"

    def to_json(self):
        out = {"outcome": self.outcome}
        if self.group is not None:
            out["group"] = self.group.value
        if self.curve is not None:
            out["model"] = [self.curve.ctx.to_json(c) for c in self.curve.f_coeffs]
            out["verified"] = True
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        return out


# ---------------------------------------------------------------------------
# height control for lifted invariants over Q
# ---------------------------------------------------------------------------

def _partial_primes(n: int) -> set:
    """Primes found in |n| within budget (silently incomplete when hard)."""
    try:
        return set(bounded_factor(n))
    except FactorizationLimit:
        from sympy import factorint

        found = set()
        for q, _ in factorint(abs(n), limit=10 ** 6).items():
            from sympy import isprime

            if isprime(q):
                found.add(int(q))
        return found


def _valuation(x: Fraction, q: int) -> int:
    if x == 0:
        return 0
    v, n = 0, x.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = x.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


def reduced_lift(P: ModuliPoint) -> IgusaVector:
    """lift_point followed by weighted height reduction (over Q).

    The lift has weighted valuation vector (1,2,3,5)-shiftable; stripping the
    maximal weighted content keeps the conic coefficients desk-sized.
    """
    J = lift_point(P)
    ctx = P.ctx
    if ctx.characteristic != 0:
        return J
    vals = [Fraction(v) for v in J.as_tuple()]
    primes = set()
    for j in P.as_tuple():
        fr = Fraction(j)
        primes |= _partial_primes(fr.numerator)
        primes |= _partial_primes(fr.denominator)
    weights = (1, 2, 3, 5)
    d = Fraction(1)
    for q in sorted(primes):
        shifts = [
            math.floor(Fraction(_valuation(v, q), w))
            for v, w in zip(vals, weights) if v != 0
        ]
        if not shifts:
            continue
        t = min(shifts)
        if t:
            d /= Fraction(q) ** t
    if d != 1:
        J = rescale_invariants(J, ctx.coerce(d))
    return J


def _content_scaled(values):
    """Scale a list of Fractions by a positive rational to primitive integers."""
    nz = [Fraction(v) for v in values if v != 0]
    if not nz:
        return values
    den = 1
    for v in nz:
        den = den * v.denominator // math.gcd(den, v.denominator)
    num = 0
    for v in nz:
        num = math.gcd(num, abs(v.numerator * (den // v.denominator)))
    scale = Fraction(den, num or 1)
    return [Fraction(v) * scale for v in values]


def mestre_data_from_invariants(J: IgusaVector, normalize: bool = True) -> ConicCubicData:
    """Conic and cubic of the generic construction, evaluated at J's Clebsch values.

    Both objects are only needed projectively, so over Q they are scaled to
    primitive integer coefficients unless ``normalize`` is off.
    """
    ctx = J.ctx
    p = ctx.characteristic
    if p in (3, 5):
        raise SmallCharacteristic(
            "the generic conic/cubic coefficients are unavailable mod 3 and 5")
    cache = get_cache()
    c = clebsch_from_igusa(J).as_tuple()

    def ev(name):
        expr = cache.expr(name)
        return expr.eval_mod_p(c, ctx) if p else expr(c, ctx)

    rows = [[ev(f"A_{min(i, j)}{max(i, j)}") for j in (1, 2, 3)] for i in (1, 2, 3)]
    tensor = {
        (i, j, k): ev(f"a_{i}{j}{k}")
        for i in (1, 2, 3) for j in (1, 2, 3) for k in (1, 2, 3) if i <= j <= k
    }
    if normalize and p == 0:
        flat = _content_scaled([rows[i][j] for i in range(3) for j in range(3)])
        rows = [[flat[3 * i + j] for j in range(3)] for i in range(3)]
        keys = sorted(tensor)
        vals = _content_scaled([tensor[k] for k in keys])
        tensor = dict(zip(keys, vals))
    return ConicCubicData(make_conic(ctx, rows), CubicForm(ctx, tensor))


# ---------------------------------------------------------------------------
# pullback plumbing
# ---------------------------------------------------------------------------

def _reparametrize(T, M, ctx):
    """Substitute (lam, mu) -> (a lam + b mu, c lam + d mu) into the quadratics."""
    a, b, c, d = (ctx.coerce(v) for v in M)
    out = []
    for (q0, q1, q2) in T:
        # q0 L^2 + q1 L M + q2 M^2 with L = a lam + b mu, M = c lam + d mu
        r0 = ctx.add(ctx.add(ctx.mul(q0, ctx.mul(a, a)), ctx.mul(q1, ctx.mul(a, c))),
                     ctx.mul(q2, ctx.mul(c, c)))
        r1 = ctx.add(
            ctx.add(ctx.mul(q0, ctx.mul(ctx.coerce(2), ctx.mul(a, b))),
                    ctx.mul(q1, ctx.add(ctx.mul(a, d), ctx.mul(b, c)))),
            ctx.mul(q2, ctx.mul(ctx.coerce(2), ctx.mul(c, d))))
        r2 = ctx.add(ctx.add(ctx.mul(q0, ctx.mul(b, b)), ctx.mul(q1, ctx.mul(b, d))),
                     ctx.mul(q2, ctx.mul(d, d)))
        out.append((r0, r1, r2))
    return tuple(out)


def _primitive_sextic(F: BinaryForm) -> BinaryForm:
    """Scale a sextic over Q to primitive integer coefficients (a twist)."""
    ctx = F.ctx
    if ctx.characteristic != 0:
        return F
    scaled = _content_scaled(list(F.coeffs))
    return BinaryForm(ctx, 6, tuple(ctx.coerce(v) for v in scaled))


def _pullback_curve(data: ConicCubicData, pt, P: ModuliPoint, attempts: int = 20):
    """Parametrize through pt, pull the cubic back, and verify the curve."""
    ctx = P.ctx
    T = conic_parametrize(data.conic, pt)
    rng = random.Random(20 + attempts)
    for attempt in range(attempts + 1):
        F = cubic_pullback(data.cubic, T)
        F = _primitive_sextic(F)
        if not F.is_zero() and form_discriminant(F) != ctx.zero:
            curve = form_to_curve(F)
            if moduli_point(curve) != P:
                raise VerificationFailed(
                    "pulled-back sextic has the wrong moduli point")
            return curve
        while True:
            M = [ctx.coerce(rng.randint(-9, 9)) for _ in range(4)]
            if ctx.sub(ctx.mul(M[0], M[3]), ctx.mul(M[1], M[2])) != ctx.zero:
                break
        T = _reparametrize(T, M, ctx)
    raise DegenerateOutput("pullback stayed degenerate after reparametrization")


# ---------------------------------------------------------------------------
# the reconstruction paths
# ---------------------------------------------------------------------------

def mestre_reconstruct(P: ModuliPoint, group: AutGroup | None = None) -> ReconstructionResult:
    """Generic-curve path: conic point, parametrization, cubic pullback."""
    ctx = P.ctx
    if group is None:
        group = classify_point(P)
    if group is not AutGroup.C2:
        raise WrongGroup(f"generic path requires group C2, got {group.value}")
    J = reduced_lift(P)
    data = mestre_data_from_invariants(J)
    if conic_det(data.conic) == ctx.zero:
        raise DegenerateConic(
            "internal error: the generic conic degenerated at a C2 point")
    pt = conic_point(data.conic)
    if pt is None:
        return ReconstructionResult(group, obstruction=conic_obstruction(data.conic))
    curve = _pullback_curve(data, pt, P)
    return ReconstructionResult(group, curve=curve)


def _poly_eval_terms(ctx, *pairs):
    """Sum of coeff * poly products; polynomials are ascending coefficient lists."""
    acc = [ctx.zero]
    for coeff, polys in pairs:
        if coeff == ctx.zero:
            continue
        prod = [coeff]
        for q in polys:
            new = [ctx.zero] * (len(prod) + len(q) - 1)
            for i, u in enumerate(prod):
                if u == ctx.zero:
                    continue
                for j, v in enumerate(q):
                    new[i + j] = ctx.add(new[i + j], ctx.mul(u, v))
            prod = new
        if len(prod) > len(acc):
            acc += [ctx.zero] * (len(prod) - len(acc))
        for i, u in enumerate(prod):
            acc[i] = ctx.add(acc[i], u)
    return acc


def _v4_closed_model(ctx, c):
    """The radical-free sextic of the extra-involution construction."""
    a11 = v4_conic_entry(c, 1, 1)
    a12 = v4_conic_entry(c, 1, 2)
    a22 = v4_conic_entry(c, 2, 2)
    a33 = v4_conic_entry(c, 3, 3)
    from .covariants import v4_cubic_entry

    b111 = v4_cubic_entry(c, 1, 1, 1)
    b112 = v4_cubic_entry(c, 1, 1, 2)
    b122 = v4_cubic_entry(c, 1, 2, 2)
    b133 = v4_cubic_entry(c, 1, 3, 3)
    b222 = v4_cubic_entry(c, 2, 2, 2)
    b233 = v4_cubic_entry(c, 2, 3, 3)
    two = ctx.coerce(2)
    three = ctx.coerce(3)
    P1 = [ctx.neg(ctx.mul(two, a12)), ctx.neg(ctx.mul(two, a22))]
    P2 = [a11, ctx.zero, ctx.neg(a22)]
    P3 = [a11, ctx.mul(two, a12), a22]
    neg = ctx.neg
    return _poly_eval_terms(
        ctx,
        (neg(ctx.mul(a33, b111)), (P1, P1, P1)),
        (neg(ctx.mul(three, ctx.mul(a33, b112))), (P1, P1, P2)),
        (neg(ctx.mul(three, ctx.mul(a33, b122))), (P1, P2, P2)),
        (ctx.mul(three, ctx.mul(a22, b133)), (P1, P3, P3)),
        (neg(ctx.mul(a33, b222)), (P2, P2, P2)),
        (ctx.mul(three, ctx.mul(a22, b233)), (P2, P3, P3)),
    )


def _extract_single_component(coeffs, ctx):
    """If every algebra coefficient sits in one basis component, return it."""
    for comp in (1, 0, 2, 3):
        if all(all(c[i] == ctx.zero for i in range(4) if i != comp) for c in coeffs):
            vals = [c[comp] for c in coeffs]
            if any(v != ctx.zero for v in vals):
                return vals
    return None


def _v4_algebra_patterns(ctx, c, data: ConicCubicData, P: ModuliPoint):
    """Conic point over a quadratic extension algebra, pullback, descend to k."""
    a11 = v4_conic_entry(c, 1, 1)
    a22 = v4_conic_entry(c, 2, 2)
    a33 = v4_conic_entry(c, 3, 3)
    patterns = []
    if a33 != ctx.zero:
        patterns.append((ctx.neg(a33), a22, lambda alg: (alg.zero, alg.s, alg.t)))
        patterns.append((ctx.neg(a33), a11, lambda alg: (alg.s, alg.zero, alg.t)))
    if a11 != ctx.zero:
        patterns.append((ctx.neg(a22), a11, lambda alg: (alg.s, alg.t, alg.zero)))
    for d1, d2, mk in patterns:
        alg = QuadraticAlgebra(ctx, d1, d2)
        pt = mk(alg)
        try:
            T = conic_parametrize(data.conic, pt, ring=alg)
        except Exception:
            continue
        coeffs = cubic_pullback(data.cubic, T, ring=alg)
        vals = _extract_single_component(coeffs, ctx)
        if vals is None:
            continue
        F = _primitive_sextic(BinaryForm(ctx, 6, tuple(vals)))
        if form_discriminant(F) == ctx.zero:
            continue
        curve = form_to_curve(F)
        if moduli_point(curve) == P:
            return curve
    return None


def v4_reconstruct(P: ModuliPoint, group: AutGroup | None = None) -> CurveModel:
    """Extra-involution path: the closed radical-free model, with fallbacks."""
    ctx = P.ctx
    if ctx.characteristic in (3, 5):
        raise Unsupported("V4 reconstruction is not available mod 3 and 5")
    if group is None:
        group = classify_point(P)
    if group is not AutGroup.V4:
        raise WrongGroup(f"this path requires group V4, got {group.value}")
    J = reduced_lift(P)
    c = clebsch_from_igusa(J)

    coeffs = _v4_closed_model(ctx, c)
    if ctx.characteristic == 0:
        coeffs = [ctx.coerce(v) for v in _content_scaled(coeffs)]
    try:
        curve = curve_from_poly(coeffs, ctx)
    except DegenerateCurve:
        curve = None
    if curve is not None:
        if moduli_point(curve) != P:
            raise VerificationFailed("closed V4 model has the wrong moduli point")
        return curve

    # degenerate closed model: use the adapted conic directly
    data = v4_conic_cubic_data(c)
    if conic_det(data.conic) == ctx.zero:
        raise DegenerateConic(
            "internal error: adapted conic degenerated at a V4 point")
    pt = conic_point(data.conic)
    if pt is not None:
        try:
            return _pullback_curve(data, pt, P)
        except DegenerateOutput:
            pass
    curve = _v4_algebra_patterns(ctx, c, data, P)
    if curve is not None:
        return curve
    raise DegenerateOutput("all V4 fallbacks degenerated at this point")


def reconstruct(P: ModuliPoint) -> ReconstructionResult:
    """A curve over the base field with moduli point P, or the obstruction."""
    ctx = P.ctx
    try:
        group = classify_point(P)
    except Unsupported as exc:
        return ReconstructionResult(None, reason=str(exc))

    if group in SPECIAL_GROUPS or group in PARAMETRIC_GROUPS:
        try:
            t = t_invariant(P, group) if group in PARAMETRIC_GROUPS else None
            curve = family_model(group, t, ctx)
        except Unsupported as exc:
            return ReconstructionResult(group, reason=str(exc))
        if moduli_point(curve) != P:
            raise VerificationFailed(
                f"standard {group.value} model has the wrong moduli point")
        return ReconstructionResult(group, curve=curve)

    if group is AutGroup.V4:
        try:
            return ReconstructionResult(group, curve=v4_reconstruct(P, group))
        except Unsupported as exc:
            return ReconstructionResult(group, reason=str(exc))

    if ctx.characteristic in (3, 5):
        return ReconstructionResult(
            group, reason=f"generic reconstruction unavailable mod {ctx.characteristic}")
    return mestre_reconstruct(P, group)
