"""The census commands.  Each takes a :class:`RunConfig` and returns a Report;
argument parsing and file output live in :mod:`quadpoints.census.cli`."""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ..covers import (
    CyclicCoverModel,
    descend_involution,
    enumerate_points,
    generic_fiber,
    is_smooth_conic,
    point_sort_key,
    project_from_point,
    residue_degree_options,
    summarize,
    vojta_audit,
    vojta_threshold,
)
from ..ellfib import (
    BadReductionError,
    ConicParametrization,
    ECPoint,
    QuarticPoint,
    SectionPoleError,
    ec_add,
    ec_mul,
    ec_neg,
    generate_sections,
    is_torsion,
    lift_to_quadratic_point,
    paper_conic_constant,
    paper_cover,
    paper_quartic,
    quartic_is_smooth_at,
    quartic_to_weierstrass,
    specialize_section,
)
from ..exactmath import MultiPoly, PoleError, RatFunc
from ..heights import weil_height
from ..surfgeom import SingularityFlag, ci_canonical, ci_dimension, descended_canonical, fn_family
from .report import Report

PAPER = "paper"
DERIVED = "derived"


@dataclass
class RunConfig:
    command: str
    cover: str | None = None
    height_bound: float | None = None
    epsilon: float = 0.01
    workers: int = 1
    out: str | None = None
    seed: int = 0
    format: str = "csv"
    n_range: tuple[int, int] = (2, 20)
    t_values: tuple[Fraction, ...] = (Fraction(2), Fraction(3), Fraction(5), Fraction(7), Fraction(10))
    sections: int | None = None
    m: int = 4
    r_range: tuple[int, int] = (1, 3)
    d_range: tuple[int, int] = (1, 3)
    e_range: tuple[int, int] = (2, 3)
    dim: int = 1
    field_type: str = "rational"
    corrupt: tuple[str, ...] = ()

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be positive")
        if self.height_bound is not None and not self.height_bound > 0:
            raise ValueError("height bound must be positive")
        if not 0 <= self.epsilon < 1:
            raise ValueError("epsilon must lie in [0, 1)")


# -- audit -------------------------------------------------------------------------

AUDIT_COLUMNS = ["point_id", "field_d", "base_height", "canonical_height", "disc",
                 "contracted", "slack", "marginal"]


def cmd_audit(cfg: RunConfig, cover: CyclicCoverModel | None = None) -> Report:
    c = cover if cover is not None else CyclicCoverModel.load(cfg.cover)
    if cfg.height_bound is None:
        raise ValueError("audit needs a height bound")
    rows = vojta_audit(c, cfg.height_bound, cfg.epsilon, workers=cfg.workers)
    s = summarize(c, rows, cfg.height_bound, cfg.epsilon)
    report = Report("audit", AUDIT_COLUMNS)
    for r in rows:
        report.rows.append({
            "point_id": r.point_id, "field_d": r.field_d, "base_height": r.base_height,
            "canonical_height": r.canonical_height, "disc": r.disc,
            "contracted": r.contracted, "slack": r.slack, "marginal": r.marginal,
        })
    report.summary = {
        "cover": c.dumps(),
        "rows": s.rows,
        "contracted": s.contracted,
        "non_contracted": s.non_contracted,
        "marginal": s.marginal,
        "min_slack": min((r.slack for r in rows), default=0.0),
        "empirical_constant": s.empirical_constant,
        "multiplier": s.multiplier,
        "epsilon": float(cfg.epsilon),
        "height_bound": float(cfg.height_bound),
    }
    return report


# -- enumerate -----------------------------------------------------------------------

def _enumerate_shard(r, bound, fld, shard):
    return [(P.label(), P.d, weil_height(P).value, point_sort_key(P)) for P in enumerate_points(r, bound, fld, shard)]


def cmd_enumerate(cfg: RunConfig) -> Report:
    if cfg.height_bound is None:
        raise ValueError("enumerate needs a height bound")
    if cfg.dim not in (1, 2):
        raise ValueError("enumeration is implemented for P^1 and P^2")
    if cfg.field_type not in ("rational", "quadratic"):
        raise ValueError(f"unknown field {cfg.field_type!r}")
    if cfg.workers == 1:
        found = _enumerate_shard(cfg.dim, cfg.height_bound, cfg.field_type, None)
    else:
        n = cfg.workers
        with ProcessPoolExecutor(max_workers=n) as pool:
            parts = pool.map(_enumerate_shard, [cfg.dim] * n, [cfg.height_bound] * n,
                             [cfg.field_type] * n, [(i, n) for i in range(n)])
            found = [x for part in parts for x in part]
    found.sort(key=lambda x: x[3])
    report = Report("enumerate", ["point_id", "field_d", "height"])
    report.rows = [{"point_id": a, "field_d": d, "height": h} for a, d, h, _ in found]
    report.summary = {"rows": len(found), "dimension": cfg.dim, "field": cfg.field_type,
                      "height_bound": float(cfg.height_bound)}
    return report


# -- thresholds ----------------------------------------------------------------------

# the two rows quoted as lower bounds for m in the quadratic case
THRESHOLD_VALUES = {(1, 2, 2): 5, (2, 2, 2): 6}


def _check_range(name, lo_hi):
    lo, hi = lo_hi
    if lo < 1 or hi < lo:
        raise ValueError(f"{name} must be a nonempty range of positive integers")


def cmd_thresholds(cfg: RunConfig) -> Report:
    _check_range("r-range", cfg.r_range)
    _check_range("d-range", cfg.d_range)
    _check_range("e-range", cfg.e_range)
    if cfg.e_range[0] < 2:
        raise ValueError("e-range must start at 2 or above")
    report = Report("thresholds", ["r", "d", "e", "threshold", "residue_degree_options"])
    for r in range(cfg.r_range[0], cfg.r_range[1] + 1):
        for d in range(cfg.d_range[0], cfg.d_range[1] + 1):
            for e in range(cfg.e_range[0], cfg.e_range[1] + 1):
                m = vojta_threshold(r, d, e)
                opts = ";".join(str(k) for k in sorted(residue_degree_options(d, e)))
                report.rows.append({"r": r, "d": d, "e": e, "threshold": m,
                                    "residue_degree_options": opts})
                if (r, d, e) in THRESHOLD_VALUES:
                    expected = THRESHOLD_VALUES[(r, d, e)]
                    report.provenance.append(_entry(
                        f"threshold_{r}_{d}_{e}", PAPER, expected, m,
                        "least m for which the quadratic-point conclusion applies"))
    report.summary = {"rows": len(report.rows),
                      "checks": len(report.provenance),
                      "failed": sum(not p["passed"] for p in report.provenance)}
    report.failed = report.summary["failed"] > 0
    return report


# -- verify-examples -----------------------------------------------------------------

def _entry(check_id, source, expected, observed, claim, passed=None):
    if passed is None:
        passed = expected == observed
    return {"id": check_id, "source": source, "expected": expected,
            "observed": observed, "passed": bool(passed), "claim": claim}


def _perturb(v):
    """Corrupt a computed value so that a check built on it must fail."""
    if isinstance(v, bool):
        return not v
    if isinstance(v, (int, Fraction)):
        return v + 1
    if isinstance(v, tuple):
        return tuple(_perturb(x) for x in v)
    if isinstance(v, str):
        return v + " (corrupted)"
    if isinstance(v, dict):
        return {k: _perturb(x) for k, x in v.items()}
    raise TypeError(f"cannot corrupt {type(v).__name__}")


class _Checker:
    def __init__(self, corrupt):
        self.corrupt = set(corrupt)
        self.entries = []
        self.seen = set()

    def add(self, check_id, source, expected, compute, claim, render=None):
        """Run ``compute()``; compare to ``expected``.  Exceptions become failures."""
        self.seen.add(check_id)
        try:
            observed = compute()
            if check_id in self.corrupt:
                observed = _perturb(observed)
            passed = observed == expected
            shown = render(observed) if render else observed
        except Exception as exc:  # a crash is a failed check, not a failed run
            passed, shown = False, f"error: {type(exc).__name__}: {exc}"
        exp_shown = render(expected) if render else expected
        self.entries.append(_entry(check_id, source, exp_shown, shown, claim, passed))


def _quadric_p3():
    x, y, z, w = MultiPoly.gens(("x", "y", "z", "w"))
    return x * x + y * y + z * z - w * w


def _canonical_on_fiber(m):
    K = descended_canonical(m)
    return int(K * K.lattice.cls("F"))


def _fiber_coeffs(m):
    fib = generic_fiber(descend_involution(paper_cover(m)))
    return fib


def _group_law_spot_check(seed: int, cases: int = 10) -> bool:
    """Associativity and commutativity on seeded combinations ``aP + bT`` of the
    specialised section and a 2-torsion point at t = 2."""
    tr = quartic_to_weierstrass(paper_quartic().specialize(2))
    E = tr.curve
    P = tr.forward(QuarticPoint(1, 16))
    T = ECPoint(0, 0)
    rng = random.Random(seed)

    def pick():
        return ec_add(E, ec_mul(E, rng.randint(-3, 3), P), ec_mul(E, rng.randint(0, 1), T))

    for _ in range(cases):
        A, B, C = pick(), pick(), pick()
        if ec_add(E, ec_add(E, A, B), C) != ec_add(E, A, ec_add(E, B, C)):
            return False
        if ec_add(E, A, B) != ec_add(E, B, A):
            return False
        if not E.contains(ec_add(E, A, ec_neg(E, B))):
            return False
    return True


def cmd_verify_examples(cfg: RunConfig) -> Report:
    lo, hi = cfg.n_range
    if lo < 2 or hi < lo:
        raise ValueError("n-range must satisfy 2 <= A <= B")
    ck = _Checker(cfg.corrupt)
    t = RatFunc.t()

    # odd m: projection of a quadric, complete intersection in P^2 x P^2
    q = _quadric_p3()
    for i, p in enumerate(((0, 0, 0, 1), (1, 0, 0, 0)), start=1):
        ck.add(f"m1_projection_{i}_branch_degree", PAPER, 2,
               lambda p=p: project_from_point(q, p).s.total_degree(),
               "projection from a point off a smooth quadric is a double cover branched in a conic")
        ck.add(f"m1_projection_{i}_conic_smooth", PAPER, True,
               lambda p=p: is_smooth_conic(project_from_point(q, p).s),
               "the branch conic is smooth")
    ci = [(1, 1), (2, 2)]
    ck.add("m3_ci_dimension", DERIVED, 2, lambda: ci_dimension(ci), "type (1,1),(2,2) in P^2 x P^2 is a surface")
    ck.add("m3_ci_canonical", PAPER, (0, 0), lambda: ci_canonical(ci),
           "adjunction gives trivial canonical class", render=list)

    # even m: quotient by z -> -z and the fibration over [x:y]
    ck.add("m2_generic_fiber", PAPER, (t**4 - 1, RatFunc(0), RatFunc(1)),
           lambda: _fiber_coeffs(2).coeffs, "generic fibre is the conic v^2 = u^2 + t^4 - 1",
           render=lambda cs: _fmt_fiber(cs))
    ck.add("m2_conic_parametrization", DERIVED, True,
           lambda: ConicParametrization(paper_conic_constant(), (1, t**2)).verify_symbolic(),
           "the conic has a Q(t)-point and a rational parametrisation through it")
    ck.add("m2_descended_canonical_on_fiber", PAPER, -1,
           lambda: _canonical_on_fiber(2),
           "negative Kodaira dimension for m = 2 (K meets a fibre negatively)")
    ck.add("m4_generic_fiber", PAPER, (t**8 - 1, RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(1)),
           lambda: _fiber_coeffs(4).coeffs, "generic fibre is v^2 = u^4 + t^8 - 1",
           render=lambda cs: _fmt_fiber(cs))
    ck.add("m4_descended_canonical_zero", PAPER, True,
           lambda: not any(descended_canonical(4).coeffs), "K of the resolved quotient is trivial for m = 4")
    quartic = paper_quartic()
    ck.add("m4_section_on_fiber", PAPER, True, lambda: quartic.contains(quartic.generator),
           "Q_t = (1, t^4) satisfies 1 + t^8 - 1 = (t^4)^2")
    ck.add("m4_weierstrass_round_trip", DERIVED, True,
           lambda: quartic_to_weierstrass(quartic).verify_symbolic(),
           "quartic to Weierstrass map and its inverse compose to the identity")

    def nontorsion():
        tr = quartic_to_weierstrass(quartic.specialize(2))
        res = is_torsion(tr.curve, tr.forward(QuarticPoint(1, 16)))
        return {"torsion": res.torsion, "order": "inf" if res.order == math.inf else res.order}

    ck.add("m4_t2_nontorsion", PAPER, {"torsion": False, "order": "inf"}, nontorsion,
           "the point (1, 16) on v^2 = u^4 + 255 has infinite order")
    ck.add("group_law_seeded", DERIVED, True, lambda: _group_law_spot_check(cfg.seed),
           f"seeded group-law spot check (seed {cfg.seed})")

    for n in range(lo, hi + 1):
        inv = None

        def get(attr, n=n):
            nonlocal inv
            if inv is None:
                inv = fn_family(n)
            return getattr(inv, attr)

        ck.add(f"fn{n}_volume", PAPER, 16 * (n - 1), lambda: get("volume"), "K^2 = 16(n-1)")
        ck.add(f"fn{n}_branch_genus", PAPER, 28 * n - 7, lambda: get("branch_genus"), "g(C) = 28n - 7")
        ck.add(f"fn{n}_canonical_ample", PAPER, n > 2, lambda: get("canonical_ample"),
               "K ample exactly when n > 2")
        ck.add(f"fn{n}_plane_degree", PAPER, 8 * n, lambda: get("image_degree"), "image degree 8n")
        ck.add(f"fn{n}_multiplicity", PAPER, 8 * (n - 1), lambda: get("image_multiplicity"),
               "multiplicity 8(n-1) at the contracted point")
        ck.add(f"fn{n}_not_canonical", PAPER, SingularityFlag.NOT_CANONICAL.value,
               lambda: get("singularity").value, "singularity is not canonical")

    unknown = ck.corrupt - ck.seen
    if unknown:
        raise ValueError(f"unknown check id(s) to corrupt: {', '.join(sorted(unknown))}")
    report = Report("verify-examples", ["id", "source", "passed"])
    report.provenance = [_jsonable_entry(e) for e in ck.entries]
    report.rows = [{"id": e["id"], "source": e["source"], "passed": e["passed"]} for e in ck.entries]
    failed = [e["id"] for e in ck.entries if not e["passed"]]
    report.summary = {"checks": len(ck.entries), "passed": len(ck.entries) - len(failed),
                      "failed": len(failed), "failed_ids": failed, "seed": cfg.seed,
                      "n_range": f"{lo}..{hi}"}
    report.failed = bool(failed)
    return report


def _fmt_fiber(coeffs):
    if not isinstance(coeffs, tuple):
        return str(coeffs)
    from ..covers import FiberCurve

    return FiberCurve(tuple(coeffs)).format()


def _jsonable_entry(e):
    out = dict(e)
    for k in ("expected", "observed"):
        v = out[k]
        if isinstance(v, Fraction):
            out[k] = int(v) if v.denominator == 1 else str(v)
    return out


# -- generate-points -----------------------------------------------------------------

POINT_COLUMNS = ["t0", "section_index", "u0", "v0", "field_d", "is_rational",
                 "is_contracted_by_pi", "verified"]


def _lift_row(cover, t0, idx, u0, v0):
    lp = lift_to_quadratic_point(cover, t0, (u0, v0))
    return {"t0": t0, "section_index": idx, "u0": u0, "v0": v0, "field_d": lp.field_d,
            "is_rational": lp.is_rational, "is_contracted_by_pi": lp.is_contracted_by_pi,
            "verified": lp.verified}


def _points_m4(t_values, count):
    """Rows and exclusions for the sections +-n, 1 <= n <= count, at each t0."""
    q = paper_quartic()
    cover = paper_cover(4)
    rows, excluded = [], []
    if not t_values:
        return rows, excluded
    tr = quartic_to_weierstrass(q)
    secs = generate_sections(q, count, transform=tr)
    signed = []
    for s in secs:
        signed.append((s.n, s.point))
        signed.append((-s.n, tr.inverse(ec_neg(tr.curve, s.ec))))
    for t0 in t_values:
        if not quartic_is_smooth_at(q, t0):
            excluded.append(f"t0={t0}: singular fibre")
            continue
        for idx, pt in signed:
            try:
                P = specialize_section(q, pt, t0)
            except (SectionPoleError, BadReductionError) as exc:
                excluded.append(f"t0={t0}, section={idx}: {exc}")
                continue
            if P.is_infinite():
                excluded.append(f"t0={t0}, section={idx}: point at infinity of the fibre")
                continue
            if P.u == 0:
                excluded.append(f"t0={t0}, section={idx}: u0 = 0 lies on the branch locus z = 0")
                continue
            rows.append(_lift_row(cover, t0, idx, P.u, P.v))
    return rows, excluded


def _points_m2(t_values, count):
    """Rows for the conic parameters 0 <= lambda < count through (1, t0^2)."""
    cover = paper_cover(2)
    c = paper_conic_constant()
    rows, excluded = [], []
    for t0 in t_values:
        c0 = c(t0)
        if c0 == 0:
            excluded.append(f"t0={t0}: degenerate conic")
            continue
        par = ConicParametrization(c0, (1, t0 * t0))
        for lam in range(count):
            try:
                u0, v0 = par(lam)
            except (PoleError, ZeroDivisionError):
                excluded.append(f"t0={t0}, section={lam}: parameter maps to infinity")
                continue
            if u0 == 0:
                excluded.append(f"t0={t0}, section={lam}: u0 = 0 lies on the branch locus z = 0")
                continue
            rows.append(_lift_row(cover, t0, lam, u0, v0))
    return rows, excluded


def _points_shard(m, t_values, count):
    return (_points_m4 if m == 4 else _points_m2)(t_values, count)


def _row_key(row):
    i = row["section_index"]
    return (row["t0"], abs(i), i < 0)


def cmd_generate_points(cfg: RunConfig) -> Report:
    if cfg.m not in (2, 4):
        raise ValueError("generate-points supports m = 2 and m = 4")
    count = cfg.sections if cfg.sections is not None else (5 if cfg.m == 4 else 3)
    if count < 0:
        raise ValueError("section count must be nonnegative")
    if cfg.m == 4 and count > 5:
        raise ValueError("at most 5 sections are generated (coefficient growth)")
    tvals = sorted(set(Fraction(v) for v in cfg.t_values))
    if cfg.workers == 1 or len(tvals) < 2:
        rows, excluded = _points_shard(cfg.m, tvals, count)
    else:
        n = min(cfg.workers, len(tvals))
        shards = [tvals[i::n] for i in range(n)]
        with ProcessPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(_points_shard, [cfg.m] * n, shards, [count] * n))
        rows = [r for part in parts for r in part[0]]
        excluded = [e for part in parts for e in part[1]]
    rows.sort(key=_row_key)
    excluded.sort(key=lambda s: (Fraction(s.split(",")[0].split(":")[0][3:]), s))
    report = Report("generate-points", POINT_COLUMNS, rows=rows, exclusions=excluded)
    verified = sum(r["verified"] for r in rows)
    report.summary = {
        "m": cfg.m,
        "sections": count,
        "rows": len(rows),
        "verified": verified,
        "unverified": len(rows) - verified,
        "rational": sum(r["is_rational"] for r in rows),
        "quadratic": sum(not r["is_rational"] for r in rows),
        "distinct_t0": len({r["t0"] for r in rows}),
        "distinct_t0_section_pairs": len({(r["t0"], r["section_index"]) for r in rows}),
        "excluded": len(excluded),
    }
    report.failed = verified != len(rows)
    return report


COMMANDS = {
    "audit": cmd_audit,
    "verify-examples": cmd_verify_examples,
    "generate-points": cmd_generate_points,
    "thresholds": cmd_thresholds,
    "enumerate": cmd_enumerate,
}
