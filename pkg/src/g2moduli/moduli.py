"""Igusa invariants, moduli points, and the lift from a point to invariants.

The moduli coordinates follow the three-branch convention: with J2 != 0 the
triple is (J2^5/J10, J2^3 J4/J10, J2^2 J6/J10); with J2 = 0 != J4 it is
(0, J4^5/J10^2, J4 J6/J10); otherwise (0, 0, J6^5/J10^3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .covariants import CovariantChain, r_invariant
from .deriver import get_cache
from .errors import NotACurve, ZeroScale
from .fields import FieldCtx, field_make
from .forms import BinaryForm, CurveModel, curve_to_form, form_discriminant

_J10_SCALE = Fraction(1, 4096)   # J10 = disc / 2^12


@dataclass(frozen=True)
class IgusaVector:
    ctx: FieldCtx
    J2: object
    J4: object
    J6: object
    J10: object
    R_squared: object = None
    R: object = None

    def as_tuple(self):
        return (self.J2, self.J4, self.J6, self.J10)

    def to_json(self):
        ser = self.ctx.to_json
        out = {"field": field_tag(self.ctx),
               "J2": ser(self.J2), "J4": ser(self.J4),
               "J6": ser(self.J6), "J10": ser(self.J10)}
        if self.R_squared is not None:
            out["R_squared"] = ser(self.R_squared)
        if self.R is not None:
            out["R"] = ser(self.R)
        return out


@dataclass(frozen=True)
class ModuliPoint:
    ctx: FieldCtx
    j1: object
    j2: object
    j3: object

    def as_tuple(self):
        return (self.j1, self.j2, self.j3)

    def to_json(self):
        ser = self.ctx.to_json
        return {"field": field_tag(self.ctx),
                "j1": ser(self.j1), "j2": ser(self.j2), "j3": ser(self.j3)}

    def __eq__(self, other):
        return (isinstance(other, ModuliPoint) and self.ctx == other.ctx
                and self.as_tuple() == other.as_tuple())

    def __hash__(self):
        return hash((self.ctx, self.as_tuple()))


def field_tag(ctx: FieldCtx) -> str:
    return "q" if ctx.characteristic == 0 else f"fp:{ctx.characteristic}"


def moduli_point_from_json(data) -> ModuliPoint:
    ctx = field_make(data["field"])
    return ModuliPoint(ctx, ctx.from_json(data["j1"]),
                       ctx.from_json(data["j2"]), ctx.from_json(data["j3"]))


def _as_form(obj) -> BinaryForm:
    if isinstance(obj, CurveModel):
        return curve_to_form(obj)
    if isinstance(obj, BinaryForm):
        return obj
    raise TypeError(f"expected a curve or sextic form, got {obj!r}")


def igusa_invariants(obj) -> IgusaVector:
    """Igusa invariants of a curve or order-6 form, in any odd characteristic.

    J2, J4, J6 are evaluated from cached integer-denominator polynomials in
    the form coefficients; J10 is the form discriminant over 2^12.  In
    characteristic 0 or > 5, R and its square are filled in as well.
    """
    F = _as_form(obj)
    ctx = F.ctx
    cache = get_cache()
    vals = F.coeffs
    J2 = cache.expr("J2_a")(vals, ctx)
    J4 = cache.expr("J4_a")(vals, ctx)
    J6 = cache.expr("J6_a")(vals, ctx)
    J10 = ctx.scale_frac(form_discriminant(F), _J10_SCALE)
    R_squared = R = None
    if ctx.characteristic == 0 or ctx.characteristic > 5:
        ch = CovariantChain(F)
        R_squared = cache.expr("Rsq_c")(ch.clebsch.as_tuple(), ctx)
        R = ch.r
    return IgusaVector(ctx, J2, J4, J6, J10, R_squared, R)


def absolute_invariants(J: IgusaVector) -> ModuliPoint:
    """Moduli point of an invariant vector; requires J10 != 0."""
    ctx = J.ctx
    if J.J10 == ctx.zero:
        raise NotACurve("J10 = 0: not the invariants of a genus-2 curve")
    J2, J4, J6, J10 = J.as_tuple()
    if J2 != ctx.zero:
        j1 = ctx.div(ctx.pow(J2, 5), J10)
        j2 = ctx.div(ctx.mul(ctx.pow(J2, 3), J4), J10)
        j3 = ctx.div(ctx.mul(ctx.pow(J2, 2), J6), J10)
    elif J4 != ctx.zero:
        j1 = ctx.zero
        j2 = ctx.div(ctx.pow(J4, 5), ctx.pow(J10, 2))
        j3 = ctx.div(ctx.mul(J4, J6), J10)
    else:
        j1 = ctx.zero
        j2 = ctx.zero
        j3 = ctx.div(ctx.pow(J6, 5), ctx.pow(J10, 3))
    return ModuliPoint(ctx, j1, j2, j3)


def lift_point(P: ModuliPoint) -> IgusaVector:
    """Explicit invariants over the base field representing the point."""
    ctx = P.ctx
    j1, j2, j3 = P.as_tuple()
    if j1 != ctx.zero:
        J = (j1, ctx.mul(j1, j2), ctx.mul(ctx.pow(j1, 2), j3), ctx.pow(j1, 4))
    elif j2 != ctx.zero:
        J = (ctx.zero, j2, ctx.mul(j2, j3), ctx.pow(j2, 2))
    else:
        J = (ctx.zero, ctx.zero, ctx.pow(j3, 2), ctx.pow(j3, 3))
    return IgusaVector(ctx, *J)


def rescale_invariants(J: IgusaVector, d) -> IgusaVector:
    """Weighted rescaling (J2,J4,J6,J10) -> (d J2, d^2 J4, d^3 J6, d^5 J10)."""
    ctx = J.ctx
    d = ctx.coerce(d)
    if d == ctx.zero:
        raise ZeroScale("rescaling factor must be nonzero")
    Rsq = None if J.R_squared is None else ctx.mul(ctx.pow(d, 15), J.R_squared)
    R = None
    if J.R is not None:
        s = ctx.sqrt(ctx.pow(d, 15))
        if s is not None:
            R = ctx.mul(s, J.R)
    return IgusaVector(ctx, ctx.mul(d, J.J2), ctx.mul(ctx.pow(d, 2), J.J4),
                       ctx.mul(ctx.pow(d, 3), J.J6), ctx.mul(ctx.pow(d, 5), J.J10),
                       Rsq, R)


def moduli_point(obj) -> ModuliPoint:
    """Moduli point of a curve or sextic form."""
    return absolute_invariants(igusa_invariants(obj))


def same_moduli(C, D) -> bool:
    """True iff the two curves are isomorphic over the algebraic closure."""
    FC, FD = _as_form(C), _as_form(D)
    if FC.ctx != FD.ctx:
        raise ValueError("curves live over different fields")
    return moduli_point(FC) == moduli_point(FD)


def clebsch_from_igusa(J: IgusaVector):
    """Clebsch values at an invariant vector (characteristic 0 or > 5)."""
    ctx = J.ctx
    cache = get_cache()
    jv = J.as_tuple()
    get = lambda n: cache.expr(f"{n}_from_J").eval_mod_p(jv, ctx) \
        if ctx.characteristic else cache.expr(f"{n}_from_J")(jv, ctx)
    from .covariants import ClebschVector

    return ClebschVector(ctx, get("c2"), get("c4"), get("c6"), get("c10"))


def r_squared_at(J: IgusaVector):
    """R^2 evaluated at an invariant vector via the cached Igusa-basis expression."""
    ctx = J.ctx
    expr = get_cache().expr("Rsq_J")
    if ctx.characteristic:
        return expr.eval_mod_p(J.as_tuple(), ctx)
    return expr(J.as_tuple(), ctx)
