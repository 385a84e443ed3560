"""Reference implementations of the integer kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results on machine-size inputs.  ``tdelpezzo.kernels`` picks one
at import time.
"""

from math import gcd

BACKEND = "python"


def hj_expansion(r, a):
    """Negative-regular continued fraction of r/a, as a list of entries >= 2."""
    chain = []
    while a:
        b = -(-r // a)
        chain.append(b)
        r, a = a, b * a - r
    return chain


def from_hj(chain):
    """Evaluate b1 - 1/(b2 - 1/(...)) and return (numerator, denominator)."""
    p, q = 1, 0
    for b in reversed(chain):
        p, q = b * p - q, p
    return p, q


def t_witness(r, a):
    """Return (d, n, aprime) with r = d*n^2 and a = d*n*aprime - 1 (mod r), or None.

    Any witness has n equal to the Gorenstein index r / gcd(r, a + 1), so only
    that n needs checking; divisibility of a + 1 by d*n and coprimality of
    aprime with n then hold automatically.
    """
    if r == 1:
        return (1, 1, 1)
    n = r // gcd(r, a + 1)
    d, rem = divmod(r, n * n)
    if rem:
        return None
    aprime = ((a + 1) // (d * n)) % n
    return (d, n, aprime or n)


def wahl_is_t(chain):
    """Recursive T-chain test, run backwards.

    [2, ..., 2] is Du Val.  Otherwise the chain must reduce to a base chain
    [4] or [3, 2, ..., 2, 3] by repeatedly dropping a leading 2 and lowering
    the last entry by one, or dropping a trailing 2 and lowering the first.
    """
    if all(b == 2 for b in chain):
        return True
    lo, hi = 0, len(chain) - 1
    first, last = chain[lo], chain[hi]
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
            return (first == 3 and last == 3
                    and all(chain[i] == 2 for i in range(lo + 1, hi)))
    return first == 4


def t_sweep(max_len, max_entry):
    """Compare the numeric T-test with the chain recursion on every chain.

    Chains of length 1..max_len with entries 2..max_entry are generated by
    prepending entries, so each continued fraction is one step from its
    suffix.  Returns (chains checked, T-chains found, list of disagreements).
    """
    entries = range(2, max_entry + 1)
    checked = 0
    found = 0
    bad = []
    # stack items: (suffix chain, numerator, denominator)
    stack = [([b], b, 1) for b in entries]
    while stack:
        chain, p, q = stack.pop()
        checked += 1
        numeric = t_witness(p, q) is not None
        if numeric:
            found += 1
        if numeric != wahl_is_t(chain):
            bad.append(tuple(chain))
        if len(chain) < max_len:
            for b in entries:
                stack.append(([b] + chain, b * p - q, p))
    return checked, found, bad


def count_polygon_points(rays, level, xmin, xmax):
    """Count m in Z^2 with <m, v> >= -level for every ray v, xmin <= m_x <= xmax."""
    total = 0
    for x in range(xmin, xmax + 1):
        lo = None
        hi = None
        ok = True
        for vx, vy in rays:
            rhs = -level - vx * x
            if vy > 0:
                bound = -(-rhs // vy)
                if lo is None or bound > lo:
                    lo = bound
            elif vy < 0:
                bound = (-rhs) // (-vy)
                if hi is None or bound < hi:
                    hi = bound
            elif rhs > 0:
                ok = False
                break
        if ok and lo is not None and hi is not None and hi >= lo:
            total += hi - lo + 1
    return total
