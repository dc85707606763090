"""Ternary conics over Q and F_p: rational points, Hilbert symbols, the
local-global obstruction, and quadratic parametrization with cubic pullback.

Over a finite field a nondegenerate conic always has a point (found by a
deterministic search).  Over Q the conic is reduced to a diagonal form with
squarefree pairwise-coprime integer coefficients; local solvability is decided
by Hilbert symbols and a point is found by classical descent (delegated to
sympy's ternary quadratic solver, then verified exactly on the original
conic).  Factorizations use trial division plus Pollard rho/p-1 within a
desk-scale budget; beyond it FactorizationLimit is raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint, isprime
from sympy.abc import x as _sx, y as _sy, z as _sz
from sympy.ntheory.factor_ import pollard_pm1, pollard_rho
from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

from .covariants import ClebschVector, v4_conic_entry, v4_cubic_entry
from .errors import DegenerateConic, FactorizationLimit, PointNotOnConic
from .fields import FieldCtx, PrimeField

INF = "inf"   # the real place


@dataclass(frozen=True)
class Conic:
    """Symmetric 3x3 coefficient matrix; the conic is sum A_ij Y_i Y_j = 0."""

    ctx: FieldCtx
    matrix: tuple  # 3x3 nested tuple, symmetric

    def entry(self, i, j):
        return self.matrix[i][j]

    def to_json(self):
        ser = self.ctx.to_json
        return [ser(self.matrix[i][j]) for i in range(3) for j in range(i, 3)]


@dataclass(frozen=True)
class CubicForm:
    """Symmetric coefficient tensor; the cubic is sum a_ijk Y_i Y_j Y_k = 0."""

    ctx: FieldCtx
    tensor: dict  # keys (i,j,k) with 1 <= i <= j <= k <= 3

    def entry(self, i, j, k):
        return self.tensor[tuple(sorted((i, j, k)))]


@dataclass(frozen=True)
class ConicCubicData:
    conic: Conic
    cubic: CubicForm


@dataclass(frozen=True)
class BrauerObstruction:
    """Places of Q where the conic is locally insolvable (even cardinality)."""

    places: frozenset

    def is_trivial(self) -> bool:
        return not self.places

    def sorted_places(self):
        return sorted(self.places, key=lambda v: (v == INF, 0 if v == INF else v))

    def to_json(self):
        return [str(v) for v in self.sorted_places()]


def make_conic(ctx, entries) -> Conic:
    """Conic from a 3x3 matrix or the 6 upper-triangle entries."""
    if isinstance(entries, (list, tuple)) and len(entries) == 6:
        a11, a12, a13, a22, a23, a33 = (ctx.coerce(v) for v in entries)
        m = ((a11, a12, a13), (a12, a22, a23), (a13, a23, a33))
    else:
        m = tuple(tuple(ctx.coerce(v) for v in row) for row in entries)
        for i in range(3):
            for j in range(3):
                if m[i][j] != m[j][i]:
                    raise ValueError("conic matrix must be symmetric")
    return Conic(ctx, m)


def conic_det(L: Conic):
    """Determinant of the conic's matrix."""
    m = L.matrix
    ctx = L.ctx
    return ctx.add(
        ctx.sub(
            ctx.mul(m[0][0], ctx.sub(ctx.mul(m[1][1], m[2][2]), ctx.mul(m[1][2], m[2][1]))),
            ctx.mul(m[0][1], ctx.sub(ctx.mul(m[1][0], m[2][2]), ctx.mul(m[1][2], m[2][0]))),
        ),
        ctx.mul(m[0][2], ctx.sub(ctx.mul(m[1][0], m[2][1]), ctx.mul(m[1][1], m[2][0]))),
    )


def conic_value(L: Conic, pt):
    """Value of the quadratic form at a point over the base field."""
    ctx = L.ctx
    acc = ctx.zero
    for i in range(3):
        for j in range(3):
            acc = ctx.add(acc, ctx.mul(L.matrix[i][j], ctx.mul(pt[i], pt[j])))
    return acc


def v4_conic_cubic_data(c: ClebschVector, r=None) -> ConicCubicData:
    """Adapted conic/cubic pair from Clebsch values (R treated as 0 when absent)."""
    ctx = c.ctx
    conic = make_conic(ctx, [[v4_conic_entry(c, i, j) for j in (1, 2, 3)] for i in (1, 2, 3)])
    tensor = {
        (i, j, k): v4_cubic_entry(c, i, j, k, r)
        for i in (1, 2, 3) for j in (1, 2, 3) for k in (1, 2, 3)
        if i <= j <= k
    }
    return ConicCubicData(conic, CubicForm(ctx, tensor))


# ---------------------------------------------------------------------------
# diagonalization and integer normalization
# ---------------------------------------------------------------------------

def diagonalize(L: Conic):
    """Congruence diagonalization.

    Returns (diag, T) with diag the three diagonal values and T a 3x3 matrix
    (rows = new basis vectors in old coordinates), so a solution (u,v,w) of
    the diagonal form maps to u*T[0] + v*T[1] + w*T[2] on the original conic.
    """
    ctx = L.ctx
    A = [list(row) for row in L.matrix]
    T = [[ctx.one if i == j else ctx.zero for j in range(3)] for i in range(3)]

    def add_mult(dst, src, factor):
        # basis change e_dst -> e_dst + factor * e_src
        for k in range(3):
            A[dst][k] = ctx.add(A[dst][k], ctx.mul(factor, A[src][k]))
        for k in range(3):
            A[k][dst] = ctx.add(A[k][dst], ctx.mul(factor, A[k][src]))
        for k in range(3):
            T[dst][k] = ctx.add(T[dst][k], ctx.mul(factor, T[src][k]))

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for k in range(3):
            A[k][i], A[k][j] = A[k][j], A[k][i]
        T[i], T[j] = T[j], T[i]

    for step in range(3):
        if A[step][step] == ctx.zero:
            piv = next((r for r in range(step + 1, 3) if A[r][r] != ctx.zero), None)
            if piv is not None:
                swap(step, piv)
            else:
                off = next(((r, s) for r in range(step, 3) for s in range(r + 1, 3)
                            if A[r][s] != ctx.zero), None)
                if off is None:
                    break  # remaining block is identically zero
                r, s = off
                if r != step:
                    swap(step, r)
                add_mult(step, s, ctx.one)
        if A[step][step] == ctx.zero:
            continue
        inv = ctx.inv(A[step][step])
        for r in range(step + 1, 3):
            if A[r][step] != ctx.zero:
                add_mult(r, step, ctx.neg(ctx.mul(A[r][step], inv)))
    diag = (A[0][0], A[1][1], A[2][2])
    return diag, T


_TRIAL_LIMIT = 10 ** 6
_RHO_ROUNDS = 24


def bounded_factor(n: int) -> dict:
    """Full factorization of |n| within the desk-scale budget.

    Trial division up to 10^6 plus a bounded number of Pollard rho / p-1
    rounds; raises FactorizationLimit when a composite cofactor survives.
    """
    n = abs(int(n))
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    stack = [(n, 1)]
    while stack:
        m, mult = stack.pop()
        m = int(m)
        if m == 1:
            continue
        if isprime(m):
            out[m] = out.get(m, 0) + mult
            continue
        partial = factorint(m, limit=_TRIAL_LIMIT)
        cofactors = []
        for q, e in partial.items():
            q, e = int(q), int(e)
            if isprime(q):
                out[q] = out.get(q, 0) + e * mult
            else:
                cofactors.append((q, e * mult))
        for q, e in cofactors:
            root, exp = _perfect_power(q)
            if exp > 1:
                stack.append((root, e * exp))
                continue
            d = None
            for attempt in range(_RHO_ROUNDS):
                d = pollard_rho(q, seed=attempt + 2)
                if d in (None, q):
                    d = pollard_pm1(q, B=10000 + 4000 * attempt)
                if d not in (None, q):
                    break
                d = None
            if d is None:
                raise FactorizationLimit(f"cannot factor {q} within budget")
            stack.append((int(d), e))
            stack.append((q // int(d), e))
    return out


def _perfect_power(n: int):
    """(root, exponent) with root^exponent = n, exponent maximal; (n, 1) if none."""
    if n <= 3:
        return n, 1
    for e in range(n.bit_length(), 1, -1):
        r = round(n ** (1.0 / e))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand ** e == n:
                return cand, e
    return n, 1


def _squarefree_part(n: int, factors: dict):
    """(squarefree kernel with sign, square root of the removed square part)."""
    sf, rt = (1 if n > 0 else -1), 1
    for q, e in factors.items():
        if e % 2:
            sf *= q
        rt *= q ** (e // 2)
    return sf, rt


def legendre_normalize(diag):
    """Normalize a rational diagonal conic to squarefree pairwise-coprime ints.

    Returns (ints, scalings, factorizations): ``ints`` are the normalized
    coefficients, ``scalings`` the per-variable rational multipliers mapping
    normalized solutions back to the input diagonal form, ``factorizations``
    the prime factorizations of the |ints|.
    """
    vals = [Fraction(v) for v in diag]
    if any(v == 0 for v in vals):
        raise DegenerateConic("diagonal entry vanished")
    scal = [Fraction(1)] * 3
    common = 1
    for v in vals:
        common = common * v.denominator // math.gcd(common, v.denominator)
    ints = [int(v * common) for v in vals]
    g = math.gcd(math.gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
    ints = [v // g for v in ints]

    while True:
        facs = [bounded_factor(v) for v in ints]
        for i in range(3):
            sf, rt = _squarefree_part(ints[i], facs[i])
            ints[i] = sf
            if rt != 1:
                scal[i] /= rt
        changed = False
        for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g = math.gcd(abs(ints[i]), abs(ints[j]))
            if g > 1:
                # p | a and p | b force p | z: divide a, b by g, multiply c;
                # a solution of the new form maps back via z = g z'
                ints[i] //= g
                ints[j] //= g
                ints[k] *= g
                scal[k] *= g
                changed = True
        if not changed:
            break
    facs = [bounded_factor(v) for v in ints]
    return ints, scal, facs


# ---------------------------------------------------------------------------
# Hilbert symbols and the obstruction
# ---------------------------------------------------------------------------

def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, v) -> int:
    """Classical Hilbert symbol (a,b)_v over Q; v is a prime or INF."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(v)
    an = a.numerator * a.denominator   # same square class as a
    bn = b.numerator * b.denominator

    def split(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        return e, n

    alpha, u = split(an)
    beta, w = split(bn)
    if p == 2:
        eps = ((u - 1) // 2) * ((w - 1) // 2)
        expo = eps + alpha * ((w * w - 1) // 8) + beta * ((u * u - 1) // 8)
        return -1 if expo % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2 and _legendre(u, p) == -1:
        sign = -sign
    if alpha % 2 and _legendre(w, p) == -1:
        sign = -sign
    return sign


def _local_conditions(ints, facs):
    """Candidate bad places and the diagonal Hilbert data for a x^2+b y^2+c z^2."""
    a, b, c = ints
    candidates = {2, INF}
    for f in facs:
        candidates.update(f.keys())
    return a, b, c, candidates


def conic_obstruction(L: Conic) -> BrauerObstruction:
    """Set of places of Q where the conic has no local point."""
    if L.ctx.characteristic != 0:
        raise ValueError("the obstruction is computed over Q")
    if conic_det(L) == L.ctx.zero:
        raise DegenerateConic("conic is degenerate")
    diag, _T = diagonalize(L)
    ints, _scal, facs = legendre_normalize(diag)
    a, b, c, candidates = _local_conditions(ints, facs)
    places = {v for v in candidates if hilbert_symbol(-a * c, -b * c, v) == -1}
    if len(places) % 2:
        raise ArithmeticError("odd obstruction set: product formula violated")
    return BrauerObstruction(frozenset(places))


# ---------------------------------------------------------------------------
# rational points
# ---------------------------------------------------------------------------

def _primitive(vec):
    """Scale a rational vector to coprime integers."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(v // (g or 1) for v in ints)


def conic_point(L: Conic):
    """A projective point on the conic, or None when locally insolvable over Q.

    The returned point is verified exactly against the conic equation.
    """
    ctx = L.ctx
    if conic_det(L) == ctx.zero:
        raise DegenerateConic("conic is degenerate")
    if isinstance(ctx, PrimeField):
        pt = _conic_point_fp(L)
    else:
        pt = _conic_point_q(L)
    if pt is None:
        return None
    if conic_value(L, pt) != ctx.zero or all(v == ctx.zero for v in pt):
        raise PointNotOnConic("internal error: found point fails verification")
    return pt


def _conic_point_fp(L: Conic):
    ctx: PrimeField = L.ctx
    p = ctx.p
    (a, b, c), T = diagonalize(L)
    sol = None
    for xv in range(p):
        rhs = ctx.div(ctx.neg(ctx.add(c, ctx.mul(a, ctx.mul(xv, xv)))), b)
        yv = ctx.sqrt(rhs)
        if yv is not None:
            sol = (xv, yv, 1)
            break
    if sol is None:
        # cannot happen for p >= 3: a smooth conic has p+1 >= 4 points, at
        # most 2 of which lie on z = 0
        raise PointNotOnConic("no affine point on nondegenerate conic over F_p")
    pt = []
    for col in range(3):
        acc = ctx.zero
        for row in range(3):
            acc = ctx.add(acc, ctx.mul(ctx.coerce(sol[row]), T[row][col]))
        pt.append(acc)
    return tuple(pt)


def _conic_point_q(L: Conic):
    ctx = L.ctx
    diag, T = diagonalize(L)
    ints, scal, facs = legendre_normalize(diag)
    a, b, c, candidates = _local_conditions(ints, facs)
    if any(hilbert_symbol(-a * c, -b * c, v) == -1 for v in candidates):
        return None
    sol = diop_ternary_quadratic(a * _sx ** 2 + b * _sy ** 2 + c * _sz ** 2)
    if sol is None or sol[0] is None:
        raise PointNotOnConic(
            "descent found no point although the conic is locally solvable")
    vals = [Fraction(int(s)) * sc for s, sc in zip(sol, scal)]
    pt = []
    for col in range(3):
        acc = Fraction(0)
        for row in range(3):
            acc += vals[row] * T[row][col]
        pt.append(acc)
    return tuple(ctx.coerce(v) for v in _primitive(pt))


# ---------------------------------------------------------------------------
# parametrization and pullback
# ---------------------------------------------------------------------------

def _embed(ring, value):
    """Carry a base-field value into the working ring."""
    return ring.from_base(value) if hasattr(ring, "from_base") else value


def conic_parametrize(L: Conic, P, ring=None):
    """Binary quadratics (T1, T2, T3) parametrizing the conic through P.

    Lines through P in the pencil direction (lambda, mu) meet the conic in
    one further point X = q(V) P - 2 (P^T A V) V; the coordinates of X are
    the returned quadratics.  ``ring`` may be a quadratic extension algebra
    of the base field (used when P has irrational coordinates).
    """
    ctx = L.ctx
    ring = ring or ctx
    P = tuple(P)
    acc = ring.zero
    for i in range(3):
        for j in range(3):
            acc = ring.add(acc, ring.mul(_embed(ring, L.matrix[i][j]), ring.mul(P[i], P[j])))
    if acc != ring.zero:
        raise PointNotOnConic("parametrization base point is not on the conic")
    cidx = next((i for i in (2, 1, 0) if P[i] != ring.zero), None)
    if cidx is None:
        raise PointNotOnConic("zero vector is not a projective point")
    aidx, bidx = (i for i in range(3) if i != cidx)

    w = []
    for l in (aidx, bidx):
        s = ring.zero
        for r in range(3):
            s = ring.add(s, ring.mul(P[r], _embed(ring, L.matrix[r][l])))
        w.append(s)
    qa = _embed(ring, L.matrix[aidx][aidx])
    qab = _embed(ring, L.matrix[aidx][bidx])
    qb = _embed(ring, L.matrix[bidx][bidx])
    two = ring.add(ring.one, ring.one)

    T = []
    for i in range(3):
        c_ll = ring.mul(qa, P[i])
        c_lm = ring.mul(two, ring.mul(qab, P[i]))
        c_mm = ring.mul(qb, P[i])
        if i == aidx:
            c_ll = ring.sub(c_ll, ring.mul(two, w[0]))
            c_lm = ring.sub(c_lm, ring.mul(two, w[1]))
        if i == bidx:
            c_lm = ring.sub(c_lm, ring.mul(two, w[0]))
            c_mm = ring.sub(c_mm, ring.mul(two, w[1]))
        T.append((c_ll, c_lm, c_mm))
    if ring is ctx and ctx.characteristic == 0:
        flat = _primitive([c for t in T for c in t])
        T = [tuple(ctx.coerce(v) for v in flat[k: k + 3]) for k in (0, 3, 6)]
    return tuple(T)


def _poly_mul(u, v, ring):
    out = [ring.zero] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return tuple(out)


def _ring_int(ring, n: int):
    acc = ring.zero
    for _ in range(n):
        acc = ring.add(acc, ring.one)
    return acc


def cubic_pullback(M: CubicForm, T, ring=None):
    """Order-6 form M(T1, T2, T3) for binary quadratics T_i.

    Returns a BinaryForm over the base field, or a coefficient tuple when
    working in an extension ring.
    """
    ctx = M.ctx
    ring = ring or ctx
    acc = [ring.zero] * 7
    for (i, j, k), coeff in M.tensor.items():
        mult = {3: 6, 2: 3, 1: 1}[len({i, j, k})]
        c = _embed(ring, coeff)
        if c == ring.zero:
            continue
        prod = _poly_mul(_poly_mul(T[i - 1], T[j - 1], ring), T[k - 1], ring)
        c = ring.mul(c, _ring_int(ring, mult))
        for idx in range(7):
            acc[idx] = ring.add(acc[idx], ring.mul(c, prod[idx]))
    if ring is ctx:
        from .forms import BinaryForm

        return BinaryForm(ctx, 6, tuple(acc))
    return tuple(acc)


class QuadraticAlgebra:
    """The commutative algebra k[s,t]/(s^2 - d1, t^2 - d2).

    Elements are 4-tuples (1, s, t, st components).  This is exactly enough
    ring structure to push a conic parametrization through a point whose
    coordinates involve two square roots and read off which component the
    pulled-back sextic lands in.
    """

    def __init__(self, ctx: FieldCtx, d1, d2):
        self.ctx = ctx
        self.d1 = ctx.coerce(d1)
        self.d2 = ctx.coerce(d2)
        self.zero = (ctx.zero,) * 4
        self.one = (ctx.one, ctx.zero, ctx.zero, ctx.zero)
        self.s = (ctx.zero, ctx.one, ctx.zero, ctx.zero)
        self.t = (ctx.zero, ctx.zero, ctx.one, ctx.zero)

    def from_base(self, x):
        return (self.ctx.coerce(x), self.ctx.zero, self.ctx.zero, self.ctx.zero)

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == 4:
            return x
        return self.from_base(x)

    def add(self, u, v):
        return tuple(self.ctx.add(a, b) for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(self.ctx.sub(a, b) for a, b in zip(u, v))

    def mul(self, u, v):
        c = self.ctx
        a0, a1, a2, a3 = u
        b0, b1, b2, b3 = v
        d1, d2 = self.d1, self.d2
        # basis products: s^2 = d1, t^2 = d2, (st)^2 = d1 d2
        r0 = c.add(c.add(c.mul(a0, b0), c.mul(d1, c.mul(a1, b1))),
                   c.add(c.mul(d2, c.mul(a2, b2)), c.mul(c.mul(d1, d2), c.mul(a3, b3))))
        r1 = c.add(c.add(c.mul(a0, b1), c.mul(a1, b0)),
                   c.mul(d2, c.add(c.mul(a2, b3), c.mul(a3, b2))))
        r2 = c.add(c.add(c.mul(a0, b2), c.mul(a2, b0)),
                   c.mul(d1, c.add(c.mul(a1, b3), c.mul(a3, b1))))
        r3 = c.add(c.add(c.mul(a0, b3), c.mul(a3, b0)),
                   c.add(c.mul(a1, b2), c.mul(a2, b1)))
        return (r0, r1, r2, r3)
