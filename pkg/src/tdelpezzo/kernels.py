"""Backend selection for the integer kernels.

The compiled module is used when it imports and ``TDP_PURE`` is unset.
Arguments too large for 64-bit arithmetic always take the pure path, so
results never depend on which backend is active.
"""

import os

from . import _purekernels as pure

compiled = None
if not os.environ.get("TDP_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

BACKEND = compiled.BACKEND if compiled is not None else pure.BACKEND

_LIMIT = 1 << 62


def _fits(*values):
    return all(-_LIMIT < v < _LIMIT for v in values)


def hj_expansion(r, a):
    if compiled is not None and _fits(r, a):
        return compiled.hj_expansion(r, a)
    return pure.hj_expansion(r, a)


def from_hj(chain):
    if compiled is not None and sum(b.bit_length() for b in chain) < 62:
        return compiled.from_hj(chain)
    return pure.from_hj(chain)


def t_witness(r, a):
    if compiled is not None and _fits(2 * r, 2 * a + 2):
        return compiled.t_witness(r, a)
    return pure.t_witness(r, a)


def wahl_is_t(chain):
    if compiled is not None and _fits(*chain):
        return compiled.wahl_is_t(list(chain))
    return pure.wahl_is_t(list(chain))


def t_sweep(max_len, max_entry):
    # entries <= max_entry over max_len steps bound the numerators by max_entry**max_len
    if compiled is not None and max_entry ** max_len < _LIMIT and max_len <= 64:
        return compiled.t_sweep(max_len, max_entry)
    return pure.t_sweep(max_len, max_entry)


def count_polygon_points(rays, level, xmin, xmax):
    big = max(max(abs(x), abs(y)) for x, y in rays)
    span = max(abs(xmin), abs(xmax))
    if compiled is not None and _fits(big * span + level + 1, big * span * 4):
        return compiled.count_polygon_points(rays, level, xmin, xmax)
    return pure.count_polygon_points(rays, level, xmin, xmax)
