# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of ``_purekernels``.

All arithmetic is on 64-bit signed integers.  Callers go through
``tdelpezzo.kernels``, which keeps oversized inputs away from this module.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline i64 _floordiv(i64 a, i64 b) nogil:
    # b > 0
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


def hj_expansion(i64 r, i64 a):
    cdef list chain = []
    cdef i64 b, t
    while a:
        b = (r + a - 1) / a
        chain.append(b)
        t = b * a - r
        r = a
        a = t
    return chain


def from_hj(chain):
    cdef i64 p = 1, q = 0, t, b
    cdef Py_ssize_t i
    for i in range(len(chain) - 1, -1, -1):
        b = chain[i]
        t = b * p - q
        q = p
        p = t
    return p, q


cdef inline bint _t_test(i64 r, i64 a, i64 *d_out, i64 *n_out, i64 *ap_out) nogil:
    cdef i64 n, d, ap
    if r == 1:
        d_out[0] = 1
        n_out[0] = 1
        ap_out[0] = 1
        return True
    n = r / _gcd(r, a + 1)
    if r % (n * n):
        return False
    d = r / (n * n)
    ap = ((a + 1) / (d * n)) % n
    if ap == 0:
        ap = n
    d_out[0] = d
    n_out[0] = n
    ap_out[0] = ap
    return True


def t_witness(i64 r, i64 a):
    cdef i64 d = 0, n = 0, ap = 0
    if _t_test(r, a, &d, &n, &ap):
        return (d, n, ap)
    return None


cdef bint _wahl(i64 *chain, Py_ssize_t length) nogil:
    cdef Py_ssize_t lo = 0, hi = length - 1, i
    cdef i64 first, last
    cdef bint all_two = True
    for i in range(length):
        if chain[i] != 2:
            all_two = False
            break
    if all_two:
        return True
    first = chain[lo]
    last = chain[hi]
    while lo < hi:
        if first == 2 and last == 2:
            return False
        if first == 2:
            lo += 1
            last -= 1
            first = chain[lo] if lo != hi else last
        elif last == 2:
            hi -= 1
            first -= 1
            last = chain[hi] if lo != hi else first
        else:
            if first != 3 or last != 3:
                return False
            for i in range(lo + 1, hi):
                if chain[i] != 2:
                    return False
            return True
    return first == 4


def wahl_is_t(chain):
    cdef Py_ssize_t length = len(chain), i
    cdef i64 *buf
    cdef bint res
    if length == 0:
        return True
    buf = <i64 *> malloc(length * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(length):
            buf[i] = chain[i]
        res = _wahl(buf, length)
    finally:
        free(buf)
    return res


def t_sweep(int max_len, int max_entry):
    """Same contract as the pure version; chains enumerated as an odometer."""
    cdef i64 chain[64]
    cdef i64 p, q, t, d = 0, n = 0, ap = 0
    cdef Py_ssize_t length, i
    cdef long long checked = 0, found = 0
    cdef bint numeric, odometer_done
    cdef list bad = []
    if max_len > 64:
        raise ValueError("max_len too large for the compiled sweep")
    for length in range(1, max_len + 1):
        for i in range(length):
            chain[i] = 2
        odometer_done = False
        while not odometer_done:
            p = 1
            q = 0
            for i in range(length - 1, -1, -1):
                t = chain[i] * p - q
                q = p
                p = t
            checked += 1
            numeric = _t_test(p, q, &d, &n, &ap)
            if numeric:
                found += 1
            if numeric != _wahl(chain, length):
                bad.append(tuple([chain[i] for i in range(length)]))
            i = length - 1
            while True:
                if chain[i] < max_entry:
                    chain[i] += 1
                    break
                chain[i] = 2
                if i == 0:
                    odometer_done = True
                    break
                i -= 1
    return checked, found, bad


def count_polygon_points(rays, i64 level, i64 xmin, i64 xmax):
    cdef Py_ssize_t k = len(rays), j
    cdef i64 *vx = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *vy = <i64 *> malloc(k * sizeof(i64))
    cdef i64 x, rhs, lo, hi, bound, total = 0
    cdef bint has_lo, has_hi, ok
    if vx == NULL or vy == NULL:
        free(vx)
        free(vy)
        raise MemoryError()
    try:
        for j in range(k):
            vx[j] = rays[j][0]
            vy[j] = rays[j][1]
        with nogil:
            for x in range(xmin, xmax + 1):
                has_lo = False
                has_hi = False
                ok = True
                lo = 0
                hi = 0
                for j in range(k):
                    rhs = -level - vx[j] * x
                    if vy[j] > 0:
                        bound = -_floordiv(-rhs, vy[j])
                        if not has_lo or bound > lo:
                            lo = bound
                            has_lo = True
                    elif vy[j] < 0:
                        bound = _floordiv(-rhs, -vy[j])
                        if not has_hi or bound < hi:
                            hi = bound
                            has_hi = True
                    elif rhs > 0:
                        ok = False
                        break
                if ok and has_lo and has_hi and hi >= lo:
                    total += hi - lo + 1
    finally:
        free(vx)
        free(vy)
    return total
