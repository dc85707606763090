# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: bulk Clebsch/Igusa evaluation over F_p and the
monic-polynomial moduli enumeration.  Mirrors _kernels.pure exactly."""

from libc.stdint cimport int64_t, uint8_t

BACKEND_NAME = "compiled"


cdef int64_t modpow(int64_t b, int64_t e, int64_t p) nogil:
    cdef int64_t acc = 1
    b %= p
    while e > 0:
        if e & 1:
            acc = acc * b % p
        b = b * b % p
        e >>= 1
    return acc


cdef int BINOM[7][7]
cdef int _i, _j
for _i in range(7):
    for _j in range(7):
        BINOM[_i][_j] = 0
for _i in range(7):
    BINOM[_i][0] = 1
    for _j in range(1, _i + 1):
        BINOM[_i][_j] = BINOM[_i - 1][_j - 1] + (BINOM[_i - 1][_j] if _j <= _i - 1 else 0)


cdef void transvect(int64_t* F, int m, int64_t* G, int n, int k,
                    int64_t p, int64_t pref, int64_t* out) nogil:
    """classical k-th transvectant of descending coefficient arrays mod p"""
    cdef int64_t dF[7][7]
    cdef int64_t dG[7][7]
    cdef int64_t tmp[7]
    cdef int i, j, l, o, step, size
    cdef int64_t cj, av

    # dX[j] = d^k X / dx1^(k-j) dx2^j, computed as j x2-derivatives then
    # (k-j) x1-derivatives
    for j in range(k + 1):
        o = m
        for i in range(o + 1):
            tmp[i] = F[i]
        for step in range(j):
            for i in range(o):
                tmp[i] = (i + 1) * tmp[i + 1] % p
            o -= 1
        for step in range(k - j):
            for i in range(o):
                tmp[i] = (o - i) * tmp[i] % p
            o -= 1
        for i in range(o + 1):
            dF[j][i] = tmp[i]
    for j in range(k + 1):
        o = n
        for i in range(o + 1):
            tmp[i] = G[i]
        for step in range(j):
            for i in range(o):
                tmp[i] = (i + 1) * tmp[i + 1] % p
            o -= 1
        for step in range(k - j):
            for i in range(o):
                tmp[i] = (o - i) * tmp[i] % p
            o -= 1
        for i in range(o + 1):
            dG[j][i] = tmp[i]

    size = (m - k) + (n - k) + 1
    for i in range(size):
        out[i] = 0
    for j in range(k + 1):
        cj = BINOM[k][j]
        if j & 1:
            cj = p - cj % p
        for i in range(m - k + 1):
            av = dF[k - j][i]
            if av == 0:
                continue
            av = av * cj % p
            for l in range(n - k + 1):
                if dG[j][l]:
                    out[i + l] = (out[i + l] + av * dG[j][l]) % p
    for i in range(size):
        out[i] = out[i] * pref % p


cdef class Chain:
    """Precomputed mod-p constants for the invariant chain."""

    cdef public int64_t p
    cdef int64_t pref_i, pref_delta, pref_y1, pref_y2, pref_c2, pref_c4, pref_c10
    cdef int64_t j2c[1]
    cdef int64_t j4c[2]
    cdef int64_t j6c[3]
    cdef int64_t j10c[6]

    def __init__(self, p):
        from math import factorial
        from .pure import _J2_C, _J4_C, _J6_C, _J10_C

        self.p = p

        def pref(m, n, k):
            num = factorial(m - k) * factorial(n - k)
            den = factorial(m) * factorial(n)
            return num * pow(den, p - 2, p) % p

        self.pref_i = pref(6, 6, 4)
        self.pref_delta = pref(4, 4, 2)
        self.pref_y1 = pref(6, 4, 4)
        self.pref_y2 = pref(4, 2, 2)
        self.pref_c2 = pref(6, 6, 6)
        self.pref_c4 = pref(4, 4, 4)
        self.pref_c10 = pref(2, 2, 2)

        def const(num, den):
            return num * pow(den, p - 2, p) % p

        self.j2c[0] = const(*_J2_C[0][:2])
        for i, (nu, de, _e) in enumerate(_J4_C):
            self.j4c[i] = const(nu, de)
        for i, (nu, de, _e) in enumerate(_J6_C):
            self.j6c[i] = const(nu, de)
        for i, (nu, de, _e) in enumerate(_J10_C):
            self.j10c[i] = const(nu, de)

    cdef void igusa(self, int64_t* a, int64_t* J) nogil:
        cdef int64_t p = self.p
        cdef int64_t icov[5]
        cdef int64_t delta[5]
        cdef int64_t y1[3]
        cdef int64_t y2[3]
        cdef int64_t y3[3]
        cdef int64_t sc[1]
        cdef int64_t c2, c4, c6, c10
        cdef int64_t c2_2, c2_3, c4_2

        transvect(a, 6, a, 6, 4, p, self.pref_i, icov)
        transvect(icov, 4, icov, 4, 2, p, self.pref_delta, delta)
        transvect(a, 6, icov, 4, 4, p, self.pref_y1, y1)
        transvect(icov, 4, y1, 2, 2, p, self.pref_y2, y2)
        transvect(icov, 4, y2, 2, 2, p, self.pref_y2, y3)
        transvect(a, 6, a, 6, 6, p, self.pref_c2, sc)
        c2 = sc[0]
        transvect(icov, 4, icov, 4, 4, p, self.pref_c4, sc)
        c4 = sc[0]
        transvect(icov, 4, delta, 4, 4, p, self.pref_c4, sc)
        c6 = sc[0]
        transvect(y3, 2, y1, 2, 2, p, self.pref_c10, sc)
        c10 = sc[0]

        c2_2 = c2 * c2 % p
        c2_3 = c2_2 * c2 % p
        c4_2 = c4 * c4 % p
        J[0] = self.j2c[0] * c2 % p
        J[1] = (self.j4c[0] * c2_2 + self.j4c[1] * c4) % p
        J[2] = (self.j6c[0] * (c2_3 * 1 % p) + self.j6c[1] * (c2 * c4 % p)
                + self.j6c[2] * c6) % p
        J[3] = (self.j10c[0] * (c2_3 * c2_2 % p)
                + self.j10c[1] * (c2_3 * c4 % p)
                + self.j10c[2] * (c2 * c4_2 % p)
                + self.j10c[3] * (c2_2 * c6 % p)
                + self.j10c[4] * (c4 * c6 % p)
                + self.j10c[5] * c10) % p

    def igusa_tuple(self, coeffs):
        """(J2, J4, J6, J10) of a descending 7-list mod p."""
        cdef int64_t a[7]
        cdef int64_t J[4]
        cdef int i
        for i in range(7):
            a[i] = coeffs[i] % self.p
        self.igusa(a, J)
        return (J[0], J[1], J[2], J[3])


def igusa_mod_p(coeffs, p):
    """(J2, J4, J6, J10) of a descending coefficient 7-list mod p (p > 5)."""
    return Chain(p).igusa_tuple(coeffs)


def clebsch_mod_p(coeffs, p):
    """(c2, c4, c6, c10) mod p, for backend parity tests."""
    from .pure import clebsch_mod_p as _pure

    # the chain is exercised via igusa_tuple; reuse the pure version here
    return _pure(coeffs, p)


def enumerate_moduli(p, degree):
    """Moduli points of all monic squarefree degree-5/6 polynomials mod p."""
    if degree not in (5, 6):
        raise ValueError("degree must be 5 or 6")
    cdef Chain chain = Chain(p)
    cdef int64_t pp = p
    cdef int64_t a[7]
    cdef int64_t J[4]
    cdef int64_t j1, j2, j3, inv10
    cdef int64_t v1, v2, v3, v4, v5, v6
    cdef Py_ssize_t n3 = pp * pp * pp
    hits = bytearray(n3)
    cdef uint8_t[::1] bits = hits
    cdef int start = 1 if degree == 5 else 0

    a[0] = 0
    a[start] = 1
    with nogil:
        for v1 in range(pp):
            a[start + 1] = v1
            for v2 in range(pp):
                a[start + 2] = v2
                for v3 in range(pp):
                    a[start + 3] = v3
                    for v4 in range(pp):
                        a[start + 4] = v4
                        for v5 in range(pp):
                            a[start + 5] = v5
                            if degree == 5:
                                chain.igusa(a, J)
                                if J[3] != 0:
                                    _mark(J, pp, bits)
                            else:
                                for v6 in range(pp):
                                    a[6] = v6
                                    chain.igusa(a, J)
                                    if J[3] != 0:
                                        _mark(J, pp, bits)
    return {i for i, hit in enumerate(hits) if hit}


cdef inline void _mark(int64_t* J, int64_t p, uint8_t[::1] bits) nogil:
    cdef int64_t j1, j2, j3, inv10
    inv10 = modpow(J[3], p - 2, p)
    if J[0]:
        j1 = modpow(J[0], 5, p) * inv10 % p
        j2 = J[0] * J[0] % p * J[0] % p * J[1] % p * inv10 % p
        j3 = J[0] * J[0] % p * J[2] % p * inv10 % p
    elif J[1]:
        j1 = 0
        j2 = modpow(J[1], 5, p) * inv10 % p * inv10 % p
        j3 = J[1] * J[2] % p * inv10 % p
    else:
        j1 = 0
        j2 = 0
        j3 = modpow(J[2], 5, p) * modpow(inv10, 3, p) % p
    bits[(j1 * p + j2) * p + j3] = 1
