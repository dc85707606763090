"""Explicit curve models for the special automorphism-group families."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .errors import BadParameter, Unsupported
from .fields import cube_root_char3, field_make
from .forms import CurveModel, curve_from_poly

_QUARTER = Fraction(1, 4)


class AutGroup(Enum):
    """Automorphism groups of genus-2 curves (characteristic != 2)."""

    C2 = "C2"
    V4 = "V4"
    D8 = "D8"
    D12 = "D12"
    TwoD12 = "2D12"
    S4tilde = "S4~"
    C10 = "C10"


#: groups whose members form positive-dimensional families with a parameter t
PARAMETRIC_GROUPS = (AutGroup.D8, AutGroup.D12)

#: groups consisting of a single moduli point
SPECIAL_GROUPS = (AutGroup.TwoD12, AutGroup.S4tilde, AutGroup.C10)


def family_model(group: AutGroup, t, ctx) -> CurveModel:
    """The standard model of the family member with invariant t.

    D8: y^2 = x^5 + x^3 + t x with t not in {0, 1/4};
    D12: y^2 = x^6 + x^3 + t likewise, except in characteristic 3 where the
    model is y^2 = (1/t_*) x^6 + x^4 + x^2 + 1 with t_*^3 = t != 0.
    The three one-point classes take no parameter.
    """
    ctx = field_make(ctx)
    p = ctx.characteristic

    if group in SPECIAL_GROUPS:
        if t is not None:
            raise BadParameter(f"{group.value} takes no parameter")
        if p == 5:
            raise Unsupported("the one-point classes merge in characteristic 5")
        if group is AutGroup.C10:
            return curve_from_poly([-1, 0, 0, 0, 0, 1], ctx)
        if group is AutGroup.S4tilde:
            return curve_from_poly([0, -1, 0, 0, 0, 1], ctx)
        if p == 3:
            raise Unsupported("no curve has automorphism group 2D12 in characteristic 3")
        return curve_from_poly([-1, 0, 0, 0, 0, 0, 1], ctx)

    if group not in PARAMETRIC_GROUPS:
        raise BadParameter(f"no standard family model for {group.value}")
    if t is None:
        raise BadParameter(f"{group.value} requires the invariant t")
    t = ctx.coerce(t)

    if group is AutGroup.D8:
        quarter = ctx.scale_frac(ctx.one, _QUARTER)
        if t == ctx.zero or t == quarter:
            raise BadParameter("t in {0, 1/4} is excluded for this family")
        return curve_from_poly([ctx.zero, t, ctx.zero, ctx.one, ctx.zero, ctx.one], ctx)

    if p == 3:
        if t == ctx.zero:
            raise BadParameter("t must be nonzero in characteristic 3")
        tstar = cube_root_char3(ctx, t)
        lead = ctx.inv(tstar)
        return curve_from_poly(
            [ctx.one, ctx.zero, ctx.one, ctx.zero, ctx.one, ctx.zero, lead], ctx)
    quarter = ctx.scale_frac(ctx.one, _QUARTER)
    if t == ctx.zero or t == quarter:
        raise BadParameter("t in {0, 1/4} is excluded for this family")
    return curve_from_poly(
        [t, ctx.zero, ctx.zero, ctx.one, ctx.zero, ctx.zero, ctx.one], ctx)
