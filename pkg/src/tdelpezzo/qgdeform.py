"""Q-Gorenstein deformation combinatorics on abstract surface records.

A record keeps only (rho, K^2, singularities).  Deforming one T-point
1/(dn^2)(1, dna - 1) along a partition d = d1 + ... + dl replaces it by

* case A: A_{d1-1}, ..., A_{dl-1}
* case B: 1/(d1 n^2)(1, d1 n a - 1), A_{d2-1}, ..., A_{dl-1}

and raises rho by l - 1.  A_0 pieces are smooth and disappear.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import BoundViolation, InvalidDeformation
from .markov import MARKOV_5, MarkovEquation, is_solution, triple_to_weights
from .quotsing import SingularityClass, normalize, t_data
from .toric import Fan, ToricSurface, fraction_json, noether_defect, wps_fan


def _sorted_sings(sings) -> tuple:
    return tuple(sorted((c for c in sings if c.kind != "smooth"), key=SingularityClass.sort_key))


@dataclass(frozen=True)
class SurfaceRecord:
    rho: int
    k2: Fraction
    singularities: tuple
    origin: str = field(default="fan", compare=False)
    # records from T-del Pezzo fans and their deformations must obey s <= rho + 2
    from_t_del_pezzo: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "singularities", _sorted_sings(self.singularities))
        object.__setattr__(self, "k2", Fraction(self.k2))

    @property
    def s(self) -> int:
        """Number of non-Du Val points."""
        return sum(1 for c in self.singularities if not c.is_du_val)

    @property
    def all_t(self) -> bool:
        return all(c.is_t for c in self.singularities)

    @property
    def milnor_total(self) -> int:
        return sum(c.milnor for c in self.singularities)

    @property
    def noether_defect(self) -> Optional[Fraction]:
        return noether_defect(self.rho, self.k2, self.singularities)

    @property
    def margin(self) -> int:
        return self.rho + 2 - self.s

    def key(self):
        return (self.rho, self.k2, self.singularities)

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "k2": fraction_json(self.k2),
            "sings": [c.to_json() for c in self.singularities],
            "s": self.s,
            "margin": self.margin,
            "origin": self.origin,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SurfaceRecord":
        k2 = obj["k2"]
        k2 = Fraction(k2["num"], k2["den"]) if isinstance(k2, dict) else Fraction(k2)
        sings = [SingularityClass.from_json(c) for c in obj.get("sings", obj.get("singularities", []))]
        return cls(
            rho=int(obj["rho"]),
            k2=k2,
            singularities=tuple(sings),
            origin=obj.get("origin", "file"),
            from_t_del_pezzo=bool(obj.get("from_t_del_pezzo", False)),
        )

    def describe(self) -> str:
        sings = ", ".join(str(c) for c in self.singularities) or "smooth"
        return f"rho={self.rho} K^2={self.k2} s={self.s} [{sings}]"


class DeformationStep(NamedTuple):
    point_index: int
    partition: tuple
    case: str  # "A" or "B"

    def label(self) -> str:
        parts = ",".join(str(p) for p in self.partition)
        return f"point={self.point_index} partition={parts} case={self.case}"


def canonical_partition(partition, case: str) -> tuple:
    """Order parts descending, except that case B keeps d1 in front."""
    parts = tuple(int(p) for p in partition)
    if case == "A":
        return tuple(sorted(parts, reverse=True))
    return parts[:1] + tuple(sorted(parts[1:], reverse=True))


def record_from_fan(f: Fan, origin: str = "fan") -> SurfaceRecord:
    surf = ToricSurface(f)
    return SurfaceRecord(
        rho=surf.rho,
        k2=surf.k2,
        singularities=surf.singularities,
        origin=origin,
        from_t_del_pezzo=surf.del_pezzo and surf.all_t,
    )


def record_from_wps(w0: int, w1: int, w2: int) -> SurfaceRecord:
    return record_from_fan(wps_fan(w0, w1, w2), origin=f"wps({w0},{w1},{w2})")


def deform(rec: SurfaceRecord, step: DeformationStep) -> SurfaceRecord:
    """Apply the partition rule at one singular point."""
    i, partition, case = step
    if case not in ("A", "B"):
        raise InvalidDeformation(f"case must be A or B, got {case!r}")
    if not 0 <= i < len(rec.singularities):
        raise InvalidDeformation(f"point index {i} out of range")
    target = rec.singularities[i]
    if target.kind != "cyclic":
        raise InvalidDeformation(f"{target} is not a cyclic quotient point")
    w = t_data(target.germ)
    if w is None:
        raise InvalidDeformation(f"{target} is not a T-singularity")
    parts = canonical_partition(partition, case)
    if not parts or any(p < 1 for p in parts):
        raise InvalidDeformation(f"bad partition {partition}")
    if sum(parts) != w.d:
        raise InvalidDeformation(f"partition {parts} does not sum to d = {w.d}")
    if case == "A":
        pieces = [SingularityClass.du_val_a(p - 1) for p in parts]
    else:
        d1 = parts[0]
        if d1 * w.n * w.n == 1:
            raise InvalidDeformation("case B needs d1 * n^2 > 1")
        r = d1 * w.n * w.n
        pieces = [SingularityClass.cyclic(r, d1 * w.n * w.aprime - 1)]
        pieces += [SingularityClass.du_val_a(p - 1) for p in parts[1:]]
    sings = list(rec.singularities[:i]) + pieces + list(rec.singularities[i + 1:])
    return SurfaceRecord(
        rho=rec.rho + len(parts) - 1,
        k2=rec.k2,
        singularities=tuple(sings),
        origin=f"deformation-of({rec.origin}, {DeformationStep(i, parts, case).label()})",
        from_t_del_pezzo=rec.from_t_del_pezzo,
    )


def partitions(d: int, max_part: Optional[int] = None):
    """Partitions of d into parts <= max_part, each in descending order."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            yield (first,) + rest


def deformation_steps(rec: SurfaceRecord, point: Optional[int] = None):
    """Every valid step at one point (or at all deformable points)."""
    indices = range(len(rec.singularities)) if point is None else [point]
    for i in indices:
        c = rec.singularities[i]
        if c.kind != "cyclic":
            continue
        w = t_data(c.germ)
        if w is None:
            continue
        for p in partitions(w.d):
            yield DeformationStep(i, p, "A")
        for d1 in range(w.d, 0, -1):
            if d1 * w.n * w.n == 1:
                continue
            for rest in partitions(w.d - d1):
                yield DeformationStep(i, (d1,) + rest, "B")


def enumerate_deformations(rec: SurfaceRecord, point: Optional[int] = None) -> list[SurfaceRecord]:
    """All one-step deformations, deduplicated by (rho, K^2, singularities).

    The identity (case B with the one-part partition) is included whenever
    it is a valid step.
    """
    out = {}
    for step in deformation_steps(rec, point):
        new = deform(rec, step)
        out.setdefault(new.key(), new)
    return list(out.values())


@dataclass
class ExampleResult:
    triple: tuple
    base: SurfaceRecord
    third_point: SingularityClass
    alpha: int
    records: list
    warning: Optional[str] = None


def markov_family_example(t, eq: MarkovEquation = MARKOV_5) -> ExampleResult:
    """Deform the point 1/(5c^2)(a^2, b^2) of P(a^2, b^2, 5c^2) four ways.

    With a^2 delta = 1 mod 5c^2 and alpha = a b delta, the point is
    1/(5c^2)(1, 5c alpha - 1), i.e. d = 5, n = c.  The deformations use the
    partitions (1,4), (2,3), (3,2), (4,1) in case B.  When c = 1 the point is
    A_4, case B degenerates, and case A (the same result) is used for d1 = 1.
    """
    a, b, c = t
    if not is_solution(eq, t):
        raise InvalidDeformation(f"{tuple(t)} does not solve {eq}")
    r = eq.k * c * c
    delta = pow(a * a, -1, r)
    alpha = a * b * delta
    third = SingularityClass.cyclic(r, eq.k * c * alpha - 1)
    base = record_from_wps(*triple_to_weights(eq, t))
    from_weights = SingularityClass.cyclic(r, (b * b) * pow(a * a, -1, r))
    if third != from_weights:
        raise InvalidDeformation(f"third point mismatch: {third} vs {from_weights}")
    idx = base.singularities.index(third)
    warning = None
    if 1 in (a, b, c):
        warning = (
            f"triple {tuple(t)} has a coordinate 1: "
            f"P{triple_to_weights(eq, t)} has {len(base.singularities)} singular points, not three"
        )
        if c == 1:
            warning += "; the deformed point is Du Val"
        warnings.warn(warning, stacklevel=2)
    records = []
    for d1 in range(1, eq.k):
        parts = (d1, eq.k - d1)
        case = "B" if d1 * c * c > 1 else "A"
        records.append(deform(base, DeformationStep(idx, parts, case)))
    return ExampleResult(tuple(t), base, third, alpha, records, warning)


def bound_report(rec: SurfaceRecord, strict: bool = True) -> dict:
    """Position of a record relative to s <= rho + 2.

    ``strict`` turns a violation on a record descending from an all-T del
    Pezzo fan into :class:`BoundViolation`.
    """
    margin = rec.margin
    if margin < 0:
        cls = "violation"
        if strict and rec.from_t_del_pezzo and rec.all_t:
            raise BoundViolation(f"s = {rec.s} > rho + 2 = {rec.rho + 2} for {rec.describe()}")
    elif margin == 0:
        cls = "extremal"
    elif margin == 1:
        cls = "subextremal"
    else:
        cls = "interior"
    return {"s": rec.s, "rho": rec.rho, "margin": margin, "class": cls}
