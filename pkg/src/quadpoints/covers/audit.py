"""Empirical height-discriminant audit on double covers of P^1 and P^2.

Rows come from two kinds of base point: quadratic points with split fibre
(their preimages keep the residue field, so they are not contracted) and
rational points with inert fibre (the preimage is a quadratic point lying over
a rational one, so it is contracted). Each row records how far the point is
from violating ``(1 - eps) * h_K <= d + O(1)`` with the constant set to zero.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..exactmath import field_discriminant
from ..heights import MARGINAL, log_disc, weil_height
from .enumerate import enumerate_points
from .fibers import FiberKind, classify_fiber, classify_fiber_quadratic
from .model import CyclicCoverModel, canonical_multiplier

DEFAULT_EPSILON = 0.01


@dataclass(frozen=True)
class AuditRow:
    point_id: str
    field_d: int
    base_height: float
    canonical_height: float
    disc: float
    contracted: bool
    slack: float

    @property
    def marginal(self) -> bool:
        return abs(self.slack) <= MARGINAL

    def sort_key(self):
        return (round(self.base_height, 12), self.point_id)


@dataclass
class AuditSummary:
    rows: int
    contracted: int
    non_contracted: int
    marginal: int
    # max over rows of (left - right): the smallest O(1) that makes every row hold
    empirical_constant: float
    multiplier: int
    epsilon: float
    height_bound: float


def _row(label: str, field_d: int, h: float, mult: int, disc: float,
         contracted: bool, epsilon: float) -> AuditRow:
    hk = mult * h
    slack = disc + epsilon * hk - hk
    return AuditRow(label, field_d, h, hk, disc, contracted, slack)


def _audit_shard(c: CyclicCoverModel, height_bound: float, epsilon: float,
                 shard: tuple[int, int] | None) -> list[AuditRow]:
    mult = canonical_multiplier(c)
    rows = []
    for P in enumerate_points(c.r, height_bound, "quadratic", shard):
        fc = classify_fiber_quadratic(c, P)
        if fc.kind is not FiberKind.SPLIT:
            continue
        h = weil_height(P).value
        rows.append(_row(P.label(), P.d, h, mult, log_disc(P).log_value, False, epsilon))
    for P in enumerate_points(c.r, height_bound, "rational", shard):
        fc = classify_fiber(c, P)
        if fc.kind is not FiberKind.INERT:
            continue
        h = weil_height(P).value
        # discriminant of the upstairs residue field Q(sqrt field_d)
        disc = math.log(abs(field_discriminant(fc.field_d))) / 2
        rows.append(_row(P.label(), fc.field_d, h, mult, disc, True, epsilon))
    return rows


def _check_args(c: CyclicCoverModel, height_bound: float, epsilon: float):
    if c.e != 2:
        raise ValueError("the audit is implemented for double covers (e = 2)")
    if c.r not in (1, 2):
        raise ValueError("the audit is implemented over P^1 and P^2")
    if not height_bound > 0:
        raise ValueError("height bound must be positive")
    if not 0 <= epsilon < 1:
        raise ValueError("epsilon must lie in [0, 1)")


def vojta_audit(c: CyclicCoverModel, height_bound: float, epsilon: float = DEFAULT_EPSILON,
                workers: int = 1) -> list[AuditRow]:
    """Audit rows sorted by (base height, point label); independent of ``workers``."""
    _check_args(c, height_bound, epsilon)
    if workers <= 1:
        rows = _audit_shard(c, height_bound, epsilon, None)
    else:
        shards = [(i, workers) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_audit_shard, [c] * workers, [height_bound] * workers,
                             [epsilon] * workers, shards)
            rows = [r for part in parts for r in part]
    return sorted(rows, key=AuditRow.sort_key)


def summarize(c: CyclicCoverModel, rows: list[AuditRow], height_bound: float,
              epsilon: float) -> AuditSummary:
    contracted = sum(r.contracted for r in rows)
    return AuditSummary(
        rows=len(rows),
        contracted=contracted,
        non_contracted=len(rows) - contracted,
        marginal=sum(r.marginal for r in rows),
        empirical_constant=max((-r.slack for r in rows), default=0.0),
        multiplier=canonical_multiplier(c),
        epsilon=epsilon,
        height_bound=height_bound,
    )
