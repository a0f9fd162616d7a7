# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Moduli up to 2^62 use 128-bit products; larger ones defer to Python."""

from libc.stdlib cimport malloc, free

from . import _kernels_py

cdef extern from *:
    """
    typedef unsigned long long u64;
    static inline u64 sc_mulmod(u64 a, u64 b, u64 m) {
        return (u64)(((unsigned __int128)a * b) % m);
    }
    """
    ctypedef unsigned long long u64
    u64 sc_mulmod(u64 a, u64 b, u64 m) nogil

ctypedef long long i64

cdef u64 LIMIT = (<u64>1) << 62


cdef inline int vsplit(i64 x, i64 p, i64* unit) nogil:
    cdef int v = 0
    while x % p == 0:
        x //= p
        v += 1
    unit[0] = x
    return v


cdef inline u64 tomod(i64 x, u64 m) nogil:
    cdef i64 r = x % <i64>m
    if r < 0:
        r += <i64>m
    return <u64>r


def hyper_sum_mod(num, den, long long scale_val, unit_num, unit_den, long long n, long long p, int s):
    cdef Py_ssize_t nn = len(num), nd = len(den)
    cdef Py_ssize_t i
    cdef long long j, x, u, last = n
    cdef int v = 0, dv, vmin = 0, shift, K, e
    cdef bint stop = False
    if p >= (1 << 30) or n >= (1 << 40):
        return _kernels_py.hyper_sum_mod(num, den, scale_val, unit_num, unit_den, n, p, s)
    cdef i64* na = <i64*>malloc((nn + nd + 1) * 2 * sizeof(i64))
    cdef int* vals = <int*>malloc((n + 1) * sizeof(int))
    if na == NULL or vals == NULL:
        free(na)
        free(vals)
        raise MemoryError()
    cdef i64* nb = na + nn
    cdef i64* da = na + 2 * nn
    cdef i64* db = da + nd
    try:
        for i in range(nn):
            na[i] = num[i][0]
            nb[i] = num[i][1]
        for i in range(nd):
            da[i] = den[i][0]
            db[i] = den[i][1]
            # a zero denominator factor inside the range is a caller error
            if da[i] == 0 and db[i] == 0:
                raise ZeroDivisionError("denominator factor vanishes")
        vals[0] = 0
        with nogil:
            for j in range(n):
                dv = scale_val
                stop = False
                for i in range(nn):
                    x = na[i] * j + nb[i]
                    if x == 0:
                        stop = True
                        break
                    dv += vsplit(x, p, &u)
                if stop:
                    last = j
                    break
                for i in range(nd):
                    x = da[i] * j + db[i]
                    if x == 0:
                        stop = True
                        break
                    dv -= vsplit(x, p, &u)
                if stop:
                    break
                v += dv
                vals[j + 1] = v
                if v < vmin:
                    vmin = v
        if stop and last != j:
            raise ZeroDivisionError("denominator factor vanishes")
        shift = -vmin
        K = s + shift
        M_py = (<object>p) ** K
        if M_py >= LIMIT:
            return _kernels_py.hyper_sum_mod(num, den, scale_val, unit_num, unit_den, n, p, s)
        return _accumulate(na, nb, nn, da, db, nd, vals, last, p, K, shift,
                           unit_num * pow(unit_den, -1, M_py) % M_py, M_py)
    finally:
        free(na)
        free(vals)


cdef tuple _accumulate(i64* na, i64* nb, Py_ssize_t nn, i64* da, i64* db, Py_ssize_t nd,
                       int* vals, long long last, long long p, int K, int shift, u64 uc, u64 M):
    cdef u64 pw[64]
    cdef u64 P = 1, Q = 1, S = 0, un, ud
    cdef long long j
    cdef i64 u
    cdef Py_ssize_t i
    cdef int e
    pw[0] = 1 % M
    for e in range(1, K):
        pw[e] = pw[e - 1] * <u64>p
    with nogil:
        for j in range(last + 1):
            e = vals[j] + shift
            if e < K:
                S = (S + sc_mulmod(pw[e], P, M)) % M
            if j == last:
                break
            un = uc
            for i in range(nn):
                vsplit(na[i] * j + nb[i], p, &u)
                un = sc_mulmod(un, tomod(u, M), M)
            ud = 1
            for i in range(nd):
                vsplit(da[i] * j + db[i], p, &u)
                ud = sc_mulmod(ud, tomod(u, M), M)
            P = sc_mulmod(P, un, M)
            S = sc_mulmod(S, ud, M)
            Q = sc_mulmod(Q, ud, M)
    tot = (<object>S) * pow(<object>Q, -1, <object>M) % <object>M
    if shift:
        ps = (<object>p) ** shift
        if tot % ps:
            return -1, shift
        tot //= ps
    return tot, shift


def cubic_char_sum(long long c3, long long c2, long long c1, long long c0, long long p):
    if p >= (1 << 20):
        return _kernels_py.cubic_char_sum(c3, c2, c1, c0, p)
    cdef signed char* chi = <signed char*>malloc(p)
    cdef long long x, y, total = 0
    if chi == NULL:
        raise MemoryError()
    c3 %= p; c2 %= p; c1 %= p; c0 %= p
    if c3 < 0: c3 += p
    if c2 < 0: c2 += p
    if c1 < 0: c1 += p
    if c0 < 0: c0 += p
    with nogil:
        for x in range(p):
            chi[x] = -1
        chi[0] = 0
        for x in range(1, (p + 1) // 2):
            chi[x * x % p] = 1
        for x in range(p):
            y = (((c3 * x + c2) % p * x + c1) % p * x + c0) % p
            total += chi[y]
    free(chi)
    return total


def affine_char_sum(int r, long long lam, long long p):
    if p >= (1 << 15) or r < 1 or r > 8:
        return _kernels_py.affine_char_sum(r, lam, p)
    cdef signed char* chi = <signed char*>malloc(p)
    cdef long long X[8]
    cdef long long f, total = 0, d
    cdef int i
    if chi == NULL:
        raise MemoryError()
    lam %= p
    if lam < 0:
        lam += p
    with nogil:
        for i in range(p):
            chi[i] = -1
        chi[0] = 0
        for i in range(1, (p + 1) // 2):
            chi[(<long long>i) * i % p] = 1
        for i in range(r):
            X[i] = 0
        while True:
            f = 1
            for i in range(r):
                f = f * X[i] % p
            for i in range(r - 1):
                d = X[i] - X[i + 1]
                if d < 0:
                    d += p
                f = f * d % p
            d = (X[r - 1] - lam * X[0]) % p
            if d < 0:
                d += p
            f = f * d % p
            total += chi[f]
            i = 0
            while i < r:
                X[i] += 1
                if X[i] < p:
                    break
                X[i] = 0
                i += 1
            if i == r:
                break
    free(chi)
    return total
