"""Two-dimensional cyclic quotient and Du Val singularities.

A germ ``1/r(1, a)`` is canonical when ``a`` is the smaller of ``a`` and its
inverse modulo ``r``; the smooth germ is ``(1, 0)``.  :func:`normalize`
produces canonical germs.  Constructing :class:`CyclicQuotSing` directly (or
via :func:`from_hj`) keeps the literal weight, since ``1/r(1, a)`` and
``1/r(1, a^-1)`` have mutually reversed resolution chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional

from . import kernels
from .errors import InvalidChain, InvalidGerm, NotDuVal, NotTSingularity


@dataclass(frozen=True, order=True)
class CyclicQuotSing:
    r: int
    a: int

    def __post_init__(self):
        if self.r < 1:
            raise InvalidGerm(f"group order must be positive, got {self.r}")
        if self.r == 1:
            if self.a != 0:
                raise InvalidGerm("the smooth germ is (1, 0)")
        elif not (1 <= self.a < self.r) or gcd(self.a, self.r) != 1:
            raise InvalidGerm(f"1/{self.r}(1, {self.a}) is not a valid germ")

    @property
    def is_smooth(self) -> bool:
        return self.r == 1

    @property
    def is_du_val(self) -> bool:
        return self.r == 1 or self.a == self.r - 1

    def canonical(self) -> "CyclicQuotSing":
        return normalize(self.r, self.a)

    def inverse_weight(self) -> int:
        return 0 if self.r == 1 else pow(self.a, -1, self.r)

    def to_json(self) -> dict:
        return {"r": self.r, "a": self.a}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicQuotSing":
        return normalize(int(obj["r"]), int(obj["a"]))

    def __str__(self):
        return f"1/{self.r}(1,{self.a})"


SMOOTH = CyclicQuotSing(1, 0)


class TClassData(NamedTuple):
    """Witness that a germ is 1/(d n^2)(1, d n aprime - 1)."""

    d: int
    n: int
    aprime: int


def normalize(r: int, a: int) -> CyclicQuotSing:
    """Canonical representative of 1/r(1, a).

    >>> normalize(7, 5)
    CyclicQuotSing(r=7, a=3)
    """
    if r < 1:
        raise InvalidGerm(f"group order must be positive, got {r}")
    if r == 1:
        return SMOOTH
    a %= r
    if gcd(a, r) != 1:
        raise InvalidGerm(f"gcd({a}, {r}) != 1")
    return CyclicQuotSing(r, min(a, pow(a, -1, r)))


def hj_expansion(s: CyclicQuotSing) -> list[int]:
    """Hirzebruch-Jung chain [b1, ..., bk] with r/a = b1 - 1/(b2 - ...).

    The smooth germ has the empty chain.
    """
    if s.is_smooth:
        return []
    return kernels.hj_expansion(s.r, s.a)


def _check_chain(chain) -> list[int]:
    chain = [int(b) for b in chain]
    for b in chain:
        if b < 2:
            raise InvalidChain(f"chain entries must be >= 2, got {chain}")
    return chain


def from_hj(chain) -> CyclicQuotSing:
    """Germ whose continued fraction is ``chain``.

    The weight is taken literally (r/a is the value of the chain), not
    canonicalized, so ``hj_expansion(from_hj(c)) == c`` for every chain.
    """
    chain = _check_chain(chain)
    if not chain:
        return SMOOTH
    r, a = kernels.from_hj(chain)
    return CyclicQuotSing(r, a)


def t_data(s: CyclicQuotSing) -> Optional[TClassData]:
    """T-witness (d, n, aprime) or None.

    Du Val A-germs come back with n = 1.  The canonical weight is tried
    first, then its inverse.
    """
    for a in (s.a, s.inverse_weight()):
        w = kernels.t_witness(s.r, a)
        if w is not None:
            return TClassData(*w)
    return None


def t_witnesses(s: CyclicQuotSing) -> list[TClassData]:
    """Every witness found by the full search over n with n^2 | r."""
    out = []
    r = s.r
    n = 1
    while n * n <= r:
        if r % (n * n) == 0:
            d = r // (n * n)
            for a in sorted({s.a, s.inverse_weight()}):
                if (a + 1) % (d * n) == 0:
                    ap = ((a + 1) // (d * n)) % n or n
                    if gcd(ap, n) == 1:
                        w = TClassData(d, n, ap)
                        if w not in out:
                            out.append(w)
        n += 1
    return out


def wahl_chain_is_t(chain) -> bool:
    """Decide T-ness of a chain by the recursive construction alone.

    No arithmetic on r and a is involved, which makes this an independent
    check on :func:`t_data`.
    """
    chain = _check_chain(chain)
    return kernels.wahl_is_t(chain)


def is_t(s: CyclicQuotSing) -> bool:
    return t_data(s) is not None


def gorenstein_index(s: CyclicQuotSing) -> int:
    return s.r // gcd(s.r, s.a + 1)


@dataclass(frozen=True)
class SingularityClass:
    """A surface singularity: smooth, cyclic quotient, or Du Val of type D/E."""

    kind: str  # "smooth" | "cyclic" | "D" | "E"
    germ: Optional[CyclicQuotSing] = None
    rank: Optional[int] = None

    def __post_init__(self):
        if self.kind == "cyclic":
            if self.germ is None:
                raise InvalidGerm("cyclic class needs a germ")
        elif self.kind == "D":
            if self.rank is None or self.rank < 4:
                raise InvalidGerm(f"D_n needs n >= 4, got {self.rank}")
        elif self.kind == "E":
            if self.rank not in (6, 7, 8):
                raise InvalidGerm(f"E_n needs n in 6,7,8, got {self.rank}")
        elif self.kind != "smooth":
            raise InvalidGerm(f"unknown singularity kind {self.kind!r}")

    @classmethod
    def smooth(cls):
        return cls("smooth")

    @classmethod
    def cyclic(cls, r: int, a: int):
        g = normalize(r, a)
        return cls("smooth") if g.is_smooth else cls("cyclic", germ=g)

    @classmethod
    def from_germ(cls, g: CyclicQuotSing):
        return cls.cyclic(g.r, g.a)

    @classmethod
    def du_val_a(cls, n: int):
        """A_n, presented as the cyclic germ 1/(n+1)(1, n)."""
        return cls.cyclic(n + 1, n)

    @classmethod
    def du_val_d(cls, n: int):
        return cls("D", rank=n)

    @classmethod
    def du_val_e(cls, n: int):
        return cls("E", rank=n)

    @property
    def is_du_val(self) -> bool:
        if self.kind == "cyclic":
            return self.germ.is_du_val
        return True

    @property
    def is_t(self) -> bool:
        return self.kind != "cyclic" or is_t(self.germ)

    @property
    def milnor(self) -> int:
        return milnor_number(self)

    @property
    def gorenstein_index(self) -> int:
        return gorenstein_index(self.germ) if self.kind == "cyclic" else 1

    def sort_key(self):
        order = {"smooth": 0, "cyclic": 1, "D": 2, "E": 3}[self.kind]
        if self.kind == "cyclic":
            return (order, self.germ.r, self.germ.a)
        return (order, self.rank or 0, 0)

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return self.germ.to_json()
        if self.kind == "smooth":
            return {"r": 1, "a": 0}
        return {"type": f"{self.kind}{self.rank}"}

    @classmethod
    def from_json(cls, obj: dict) -> "SingularityClass":
        if "type" in obj:
            t = obj["type"]
            kind, rank = t[0], int(t[1:])
            if kind == "A":
                return cls.du_val_a(rank)
            return cls(kind, rank=rank)
        return cls.cyclic(int(obj["r"]), int(obj["a"]))

    def __str__(self):
        if self.kind == "smooth":
            return "smooth"
        if self.kind == "cyclic":
            if self.germ.is_du_val:
                return f"A{self.germ.r - 1}"
            return str(self.germ)
        return f"{self.kind}{self.rank}"


def milnor_number(c: SingularityClass) -> int:
    """Milnor number of the Q-Gorenstein smoothing of a T-singularity.

    Rank r for Du Val points, d - 1 for 1/(dn^2)(1, dna - 1).
    """
    if c.kind == "smooth":
        return 0
    if c.kind in ("D", "E"):
        return c.rank
    if c.germ.is_du_val:
        return c.germ.r - 1
    w = t_data(c.germ)
    if w is None:
        raise NotTSingularity(f"{c.germ} is not a T-singularity")
    return w.d - 1


def du_val_class_group(c: SingularityClass) -> list[int]:
    """Local Weil divisor class group as a list of cyclic-factor orders."""
    if c.kind == "smooth":
        return []
    if c.kind == "cyclic":
        if not c.germ.is_du_val:
            raise NotDuVal(f"{c.germ} is not Du Val")
        return [c.germ.r]
    if c.kind == "D":
        return [4] if c.rank % 2 else [2, 2]
    return {6: [3], 7: [2], 8: []}[c.rank]
