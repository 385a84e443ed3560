"""Corpus generation and the verification harness.

Del Pezzo toric surfaces correspond to lattice polygons whose vertices are
primitive and in strictly convex position around the origin; the corpus is
found by a depth-first search over such vertex chains inside a coordinate
box, then reduced modulo SL(2, Z) and cyclic rotation.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from .qgdeform import SurfaceRecord, enumerate_deformations, record_from_fan
from .quotsing import normalize, t_data
from .toric import (
    Fan,
    LatticeVector,
    ToricSurface,
    _complement_basis,
    angle_key,
    anticanonical_point_count,
    cone_normal_form,
    det,
    fan_from_rays,
    varsigma_toric,
)


@dataclass(frozen=True)
class CorpusConfig:
    max_rays: int = 6
    coord_bound: int = 8
    require_del_pezzo: bool = True
    require_all_T: bool = True
    deformation_depth: int = 0

    def __post_init__(self):
        if self.max_rays < 3:
            raise ValueError("max_rays must be at least 3")
        if self.coord_bound < 1:
            raise ValueError("coord_bound must be at least 1")
        if not 0 <= self.deformation_depth <= 2:
            raise ValueError("deformation_depth must be 0, 1 or 2")


def canonical_rays(rays) -> tuple:
    """Lexicographically least ray list over SL(2, Z) and rotations.

    For each ray v_i, the unique transform sending v_i to (1, 0) and
    v_{i+1} to (p, r) with 0 <= p < r is applied.
    """
    k = len(rays)
    best = None
    for i in range(k):
        v = rays[i]
        u = _complement_basis(v)
        # w -> (det(w, u), det(v, w)) sends v to (1, 0) and u to (0, 1)
        nxt = rays[(i + 1) % k]
        alpha, r = det(nxt, u), det(v, nxt)
        shift = alpha // r
        cand = []
        for j in range(k):
            w = rays[(i + j) % k]
            a, b = det(w, u), det(v, w)
            cand.append(LatticeVector(a - shift * b, b))
        cand = tuple(cand)
        if best is None or cand < best:
            best = cand
    return best


def canonical_fan(f: Fan) -> Fan:
    return Fan(canonical_rays(f.rays))


def _primitive_box(bound: int):
    vs = [
        LatticeVector(x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if gcd(x, y) == 1
    ]
    vs.sort(key=angle_key)
    return vs


class _TCones:
    def __init__(self):
        self._cache = {}

    def ok(self, u, w) -> bool:
        key = (u, w)
        hit = self._cache.get(key)
        if hit is None:
            r, q = cone_normal_form(u, w)
            hit = r == 1 or t_data_pair(r, q)
            self._cache[key] = hit
        return hit


def t_data_pair(r: int, q: int) -> bool:
    return t_data(normalize(r, q)) is not None


def _search_from(start: int, cfg: CorpusConfig) -> list[tuple]:
    """All admissible ray chains whose least-angle ray is vs[start]."""
    vs = _primitive_box(cfg.coord_bound)
    v0 = vs[start]
    tcones = _TCones() if cfg.require_all_T else None
    convex = cfg.require_del_pezzo
    found = []
    n = len(vs)

    def cone_ok(u, w):
        if det(u, w) <= 0:
            return False
        return tcones is None or tcones.ok(u, w)

    def turn_ok(p, q, w):
        # strict left turn at q
        return det((q[0] - p[0], q[1] - p[1]), (w[0] - q[0], w[1] - q[1])) > 0

    def close(chain):
        last = chain[-1]
        if not cone_ok(last, v0):
            return
        if convex:
            if not turn_ok(chain[-2], last, v0) or not turn_ok(last, v0, chain[1]):
                return
        found.append(tuple(chain))

    def extend(chain, idx):
        q = chain[-1]
        if len(chain) >= 3:
            close(chain)
        if len(chain) == cfg.max_rays:
            return
        for j in range(idx + 1, n):
            w = vs[j]
            if not cone_ok(q, w):
                # later candidates only turn further from q
                if det(q, w) <= 0:
                    break
                continue
            if convex and len(chain) >= 2:
                if not turn_ok(chain[-2], q, w):
                    continue
                # v0 must stay strictly inside the half-plane left of q -> w
                if det((w[0] - q[0], w[1] - q[1]), (v0[0] - q[0], v0[1] - q[1])) <= 0:
                    continue
            chain.append(w)
            extend(chain, j)
            chain.pop()

    extend([v0], start)
    return found


def _shard(args):
    start, cfg = args
    out = {}
    for chain in _search_from(start, cfg):
        key = canonical_rays(list(chain))
        out.setdefault(key, chain)
    return out


def worker_count() -> int:
    cap = os.environ.get("TDP_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def generate_fans(cfg: CorpusConfig) -> list[Fan]:
    """Canonical fans of the corpus, sorted by (ray count, canonical rays)."""
    vs = _primitive_box(cfg.coord_bound)
    jobs = [(i, cfg) for i in range(len(vs))]
    merged = {}
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shard, jobs, chunksize=4))
    else:
        parts = [_shard(j) for j in jobs]
    for part in parts:
        for key in part:
            merged.setdefault(key, True)
    keys = sorted(merged, key=lambda k: (len(k), k))
    return [fan_from_rays(k) for k in keys]


def generate_corpus(cfg: CorpusConfig) -> Iterator[SurfaceRecord]:
    """Fan records first, then deformation records level by level.

    Deformation records are deduplicated against everything already
    emitted.
    """
    seen = set()
    level = []
    for f in generate_fans(cfg):
        rays = ",".join(f"({v.x},{v.y})" for v in f.rays)
        rec = record_from_fan(f, origin=f"fan[{rays}]")
        level.append(rec)
        seen.add(rec.key())
        yield rec
    for _ in range(cfg.deformation_depth):
        nxt = []
        for rec in level:
            if not rec.all_t:
                continue
            for new in enumerate_deformations(rec):
                if new.key() not in seen:
                    seen.add(new.key())
                    nxt.append(new)
                    yield new
        level = nxt


SECTION_LEVELS = range(1, 6)


@dataclass
class VerificationReport:
    fans: int = 0
    records: int = 0
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def tally(self, name: str, ok: bool, record: Optional[dict] = None):
        c = self.checks.setdefault(name, {"passed": 0, "failed": 0})
        if ok:
            c["passed"] += 1
        else:
            c["failed"] += 1
            self.failures.append({"check": name, "record": record})

    @property
    def failed(self) -> int:
        return sum(c["failed"] for c in self.checks.values())

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport(self.fans + other.fans, self.records + other.records)
        for src in (self.checks, other.checks):
            for name, c in src.items():
                d = out.checks.setdefault(name, {"passed": 0, "failed": 0})
                d["passed"] += c["passed"]
                d["failed"] += c["failed"]
        out.failures = self.failures + other.failures
        return out

    def to_json(self) -> dict:
        return {
            "fans": self.fans,
            "records": self.records,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "failed": self.failed,
            "failures": self.failures,
        }


def verify_fan(f: Fan, report: VerificationReport) -> None:
    surf = ToricSurface(f)
    rec = record_from_fan(f)
    payload = surf.report()
    report.fans += 1
    report.records += 1
    report.tally("varsigma", varsigma_toric(f) == 0, payload)
    if not surf.all_t:
        return
    report.tally("noether", surf.noether_defect == 0, payload)
    if surf.del_pezzo:
        report.tally("k2_plus_rho", surf.k2 + surf.rho <= 10, payload)
        report.tally(
            "riemann_roch",
            all(
                anticanonical_point_count(f, n) == Fraction(n * (n + 1), 2) * surf.k2 + 1
                for n in SECTION_LEVELS
            ),
            payload,
        )
        report.tally("bound", rec.margin >= 0, payload)


def verify_record(rec: SurfaceRecord, report: VerificationReport) -> None:
    report.records += 1
    payload = rec.to_json()
    report.tally("deform_noether", rec.noether_defect == 0, payload)
    report.tally("bound", rec.margin >= 0, payload)


def verify_corpus(cfg: CorpusConfig) -> VerificationReport:
    report = VerificationReport()
    fans = generate_fans(cfg)
    for f in fans:
        verify_fan(f, report)
    if cfg.deformation_depth:
        seen = set()
        level = []
        for f in fans:
            rec = record_from_fan(f)
            seen.add(rec.key())
            if rec.all_t and rec.from_t_del_pezzo:
                level.append(rec)
        for _ in range(cfg.deformation_depth):
            nxt = []
            for rec in level:
                for new in enumerate_deformations(rec):
                    if new.key() not in seen:
                        seen.add(new.key())
                        nxt.append(new)
                        verify_record(new, report)
            level = nxt
    return report
