"""Pure-Python kernels for bulk invariant evaluation over F_p (p > 5).

Same algorithm as the compiled extension: the Clebsch chain of transvectants
on raw integer arrays mod p, then the fixed conversion to Igusa invariants.
Coefficient arrays are descending: a[i] multiplies x1^(n-i) x2^i.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

BACKEND_NAME = "pure"

# Igusa invariants in the Clebsch basis (degree-2 denominators are 2-powers
# times small primes invertible for p > 5); pinned at cache bootstrap.
_J2_C = ((-15, 1, (1, 0, 0, 0)),)
_J4_C = ((135, 8, (2, 0, 0, 0)), (-1125, 16, (0, 1, 0, 0)))
_J6_C = ((135, 16, (3, 0, 0, 0)), (-3375, 32, (1, 1, 0, 0)), (-5625, 16, (0, 0, 1, 0)))
_J10_C = (
    (-243, 16, (5, 0, 0, 0)), (30375, 128, (3, 1, 0, 0)), (-759375, 1024, (1, 2, 0, 0)),
    (50625, 128, (2, 0, 1, 0)), (-759375, 512, (0, 1, 1, 0)), (-2278125, 2048, (0, 0, 0, 1)),
)


def _transvectant_mod(F, m, G, n, k, p):
    """k-th transvectant of coefficient lists mod p (classical normalization)."""
    # partial derivative tables: dF[j] = d^k F / dx1^(k-j) dx2^j
    def partials(H, order):
        rows = [list(H)]
        for step in range(k):
            cur = rows[-1]
            o = order - step
            rows.append([(i + 1) * cur[i + 1] % p for i in range(o)])
        out = []
        for j in range(k + 1):
            cur = rows[j]
            o = order - j
            for step in range(k - j):
                cur = [((o - step) - i) * cur[i] % p for i in range(o - step)]
            out.append(cur)
        return out

    dF = partials(F, m)
    dG = partials(G, n)
    size = (m - k) + (n - k) + 1
    acc = [0] * size
    for j in range(k + 1):
        sign = -1 if j % 2 else 1
        cj = comb(k, j) * sign
        A, B = dF[k - j], dG[j]
        for i, av in enumerate(A):
            if not av:
                continue
            cav = cj * av
            for l, bv in enumerate(B):
                if bv:
                    acc[i + l] = (acc[i + l] + cav * bv) % p
    pref = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    mult = pref.numerator * pow(pref.denominator, p - 2, p) % p
    return [v * mult % p for v in acc]


def clebsch_mod_p(a, p):
    """(c2, c4, c6, c10) of a descending coefficient 7-list mod p (p > 5)."""
    F = [v % p for v in a]
    i_cov = _transvectant_mod(F, 6, F, 6, 4, p)
    delta = _transvectant_mod(i_cov, 4, i_cov, 4, 2, p)
    y1 = _transvectant_mod(F, 6, i_cov, 4, 4, p)
    y2 = _transvectant_mod(i_cov, 4, y1, 2, 2, p)
    y3 = _transvectant_mod(i_cov, 4, y2, 2, 2, p)
    c2 = _transvectant_mod(F, 6, F, 6, 6, p)[0]
    c4 = _transvectant_mod(i_cov, 4, i_cov, 4, 4, p)[0]
    c6 = _transvectant_mod(i_cov, 4, delta, 4, 4, p)[0]
    c10 = _transvectant_mod(y3, 2, y1, 2, 2, p)[0]
    return c2, c4, c6, c10


def _eval_terms(terms, c, p):
    acc = 0
    for num, den, expo in terms:
        t = num * pow(den, p - 2, p)
        for base, e in zip(c, expo):
            if e:
                t = t * pow(base, e, p)
        acc = (acc + t) % p
    return acc


def igusa_mod_p(a, p):
    """(J2, J4, J6, J10) of a descending coefficient 7-list mod p (p > 5)."""
    c = clebsch_mod_p(a, p)
    return (
        _eval_terms(_J2_C, c, p), _eval_terms(_J4_C, c, p),
        _eval_terms(_J6_C, c, p), _eval_terms(_J10_C, c, p),
    )


def _point_index(J2, J4, J6, J10, p):
    """Packed moduli triple j1*p^2 + j2*p + j3, or -1 when J10 = 0."""
    if J10 == 0:
        return -1
    inv10 = pow(J10, p - 2, p)
    if J2:
        j1 = pow(J2, 5, p) * inv10 % p
        j2 = J2 * J2 % p * J2 % p * J4 % p * inv10 % p
        j3 = J2 * J2 % p * J6 % p * inv10 % p
    elif J4:
        j1 = 0
        j2 = pow(J4, 5, p) * inv10 % p * inv10 % p
        j3 = J4 * J6 % p * inv10 % p
    else:
        j1 = 0
        j2 = 0
        j3 = pow(J6, 5, p) * pow(inv10, 3, p) % p
    return (j1 * p + j2) * p + j3


def enumerate_moduli(p, degree):
    """Moduli points of all monic squarefree polynomials of the given degree.

    Returns the set of packed indices j1*p^2 + j2*p + j3.
    """
    if degree not in (5, 6):
        raise ValueError("degree must be 5 or 6")
    out = set()
    a = [0] * 7
    a[1 if degree == 5 else 0] = 1
    free = list(range(2, 7)) if degree == 5 else list(range(1, 7))

    def rec(idx):
        if idx == len(free):
            J2, J4, J6, J10 = igusa_mod_p(a, p)
            pt = _point_index(J2, J4, J6, J10, p)
            if pt >= 0:
                out.add(pt)
            return
        for v in range(p):
            a[free[idx]] = v
            rec(idx + 1)

    rec(0)
    return out
