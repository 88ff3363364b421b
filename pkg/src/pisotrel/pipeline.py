"""End-to-end search: degree bounds, target intervals, sharded enumeration,
exact sieving, numeric prefilter and exact relation tests.

Left endpoints tau^(d/(2r)) are irrational.  Shards tile a slightly larger
rational cover, and every record is then sieved exactly by comparing
theta^(2r) with tau^d = F_d * tau + F_(d-1) in Q(sqrt 5).
"""

from __future__ import annotations

import concurrent.futures as cf
import csv
import hashlib
import io
import json
import logging
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import mpmath

from . import tables
from .enumeration import enumerate_pisot
from .polycore import IntPoly
from .relations import (
    FOUR_TERM,
    THREE_TERM,
    RelationType,
    RelationVerdict,
    numeric_prefilter,
    test_relation,
    PREFILTER_ROOT_EPS,
    PREFILTER_THRESHOLD,
)
from .rootcert import PisotRecord, RationalInterval, _dominant_root, _exact

log = logging.getLogger(__name__)

JOBS_ENV = "PISOTREL_JOBS"
DEFAULT_BASE_EPS = Fraction(1, 10)
FIXED_WIDTH_MAX_DEGREE = 12


class _Tau:
    """The golden ratio as an exact symbolic value."""

    def __repr__(self) -> str:
        return "TAU"

    __str__ = __repr__


TAU = _Tau()
AlphaMax = Union[int, Fraction, _Tau]

FAMILIES = {
    "three": (3, Fraction(2), THREE_TERM),
    "four": (4, Fraction(3), FOUR_TERM),
}


# -- exact golden-ratio comparisons ---------------------------------------------

def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_(n-1)) with F_0 = 0, F_(-1) = 1."""
    a, b = 0, 1  # F_0, F_(-1)
    for _ in range(n):
        a, b = a + b, a
    return a, b


def cmp_tau_power(q: Fraction, n: int) -> int:
    """Sign of q - tau^n for rational q and n >= 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    fn, fn1 = _fib_pair(n)
    a = Fraction(q) - fn1
    if fn == 0:
        return (a > 0) - (a < 0)
    # a - fn*tau = (2a - fn)/2 - (fn/2) sqrt 5
    u = 2 * a - fn
    if u <= 0:
        return -1
    return 1 if u * u > 5 * fn * fn else -1


def degree_bound(terms: int, alpha_max: AlphaMax) -> int:
    """floor(2 * terms * log(alpha_max) / log(tau)), decided exactly."""
    if terms not in (3, 4):
        raise ValueError("degree_bound is defined for 3 or 4 terms")
    if alpha_max is TAU:
        return 2 * terms
    a = Fraction(alpha_max)
    if a <= 1:
        raise ValueError("alpha_max must exceed 1")
    target = a ** (2 * terms)
    n = 0
    while cmp_tau_power(target, n + 1) > 0:
        n += 1
    return n


def tau_power_lower(d: int, k: int, bits: int = 40) -> Fraction:
    """Dyadic lo with lo^k < tau^d, within about 2^-bits of tau^(d/k)."""
    x = ((1 + math.sqrt(5)) / 2) ** (d / k)
    scale = 1 << bits
    lo = Fraction(math.floor(x * scale) - 2, scale)
    while cmp_tau_power(lo ** k, d) >= 0:
        lo -= Fraction(1, scale)
    return lo


def target_interval(d: int, terms: int, alpha_max: AlphaMax) -> RationalInterval:
    """Outward rational cover (lo, alpha_max) of (tau^(d/(2 terms)), alpha_max).

    Records found in the cover must still pass ``above_left_endpoint``.
    """
    if alpha_max is TAU:
        raise ValueError("target_interval needs a rational alpha_max")
    bound = degree_bound(terms, alpha_max)
    if not 1 <= d <= bound:
        raise ValueError(f"degree {d} outside 1..{bound}")
    return RationalInterval.open(tau_power_lower(d, 2 * terms), Fraction(alpha_max))


def above_left_endpoint(rec: PisotRecord, terms: int, max_refine: int = 64) -> bool:
    """Exact test theta > tau^(d/(2 terms)), i.e. theta^(2 terms) > tau^d."""
    k = 2 * terms
    d = rec.degree
    enc = rec.theta
    for _ in range(max_refine):
        lo, hi = enc.re - enc.radius, enc.re + enc.radius
        if lo > 0 and cmp_tau_power(lo ** k, d) > 0:
            return True
        if cmp_tau_power(hi ** k, d) < 0:
            return False
        if enc.radius == 0:
            raise ArithmeticError("theta coincides with the algebraic endpoint")
        enc = _dominant_root(rec.poly, enc.radius / 2**32)
    raise ArithmeticError(f"could not separate theta from tau^({d}/{k}) for {rec.poly}")


# -- degree filters -------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


COMBINATORIAL = {
    RelationType.SUM3_ZERO: frozenset({3, 6}),
    RelationType.EQ_SUM2: frozenset({8}),
}


def admissible_degrees(r: RelationType, alpha_max: Optional[AlphaMax] = None,
                       use_combinatorial: bool = True) -> set[int]:
    """Degrees that can carry relation r with theta < alpha_max.

    Prime degrees are dropped unless r is a plain sum-to-zero relation of
    length equal to the degree (all coefficients equal).
    """
    if alpha_max is None:
        alpha_max = FAMILIES["three" if r.arity == 3 else "four"][1]
    top = degree_bound(r.arity, alpha_max)
    out = set()
    for d in range(r.arity, top + 1):
        if _is_prime(d) and not (r.is_sum_zero and d == r.arity):
            continue
        out.add(d)
    if use_combinatorial and r in COMBINATORIAL:
        out &= COMBINATORIAL[r]
    return out


# -- sharding --------------------------------------------------------------------

@dataclass(frozen=True)
class ShardJob:
    degree: int
    interval: RationalInterval
    job_id: str


def shard_width(d: int, base: Fraction = DEFAULT_BASE_EPS) -> Fraction:
    base = Fraction(base)
    if d <= FIXED_WIDTH_MAX_DEGREE:
        return base
    return base / 3 ** (d - FIXED_WIDTH_MAX_DEGREE)


def _job_id(d: int, k: int, iv: RationalInterval) -> str:
    digest = hashlib.sha1(str(iv).encode()).hexdigest()[:8]
    return f"d{d:02d}-{k:05d}-{digest}"


def shard_plan(degrees: Iterable[int], intervals: dict[int, RationalInterval],
               base: Fraction = DEFAULT_BASE_EPS) -> list[ShardJob]:
    """Tile each target interval by (a, b] pieces of width shard_width(d).

    The first piece keeps the interval's own lower flag and the last piece
    its upper flag, so the pieces partition the interval exactly.
    """
    jobs = []
    for d in sorted(set(degrees)):
        iv = intervals[d]
        w = shard_width(d, base)
        if iv.lo is None or iv.hi is None or iv.lo >= iv.hi:
            continue
        a = iv.lo
        k = 0
        while a < iv.hi:
            b = min(a + w, iv.hi)
            last = b == iv.hi
            piece = RationalInterval(a, b, iv.lo_open if k == 0 else True, iv.hi_open if last else False)
            jobs.append(ShardJob(d, piece, _job_id(d, k, piece)))
            a = b
            k += 1
    return jobs


# -- heights -----------------------------------------------------------------

def weil_height(rec: PisotRecord, prec: int = 80) -> RationalInterval:
    """Enclosure of log(theta)/d, the absolute logarithmic Weil height."""
    lo = rec.theta.re - rec.theta.radius
    hi = rec.theta.re + rec.theta.radius
    ctx = mpmath.iv
    old = ctx.prec
    ctx.prec = prec
    try:
        a = ctx.mpf(lo.numerator) / ctx.mpf(lo.denominator)
        b = ctx.mpf(hi.numerator) / ctx.mpf(hi.denominator)
        val = ctx.log(ctx.mpf([a.a, b.b])) / rec.degree
        return RationalInterval.closed(_exact(mpmath.mpf(val.a)), _exact(mpmath.mpf(val.b)))
    finally:
        ctx.prec = old


# -- running ---------------------------------------------------------------------

def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", JOBS_ENV, env)
    return 1


@dataclass
class PipelineConfig:
    family: str = "both"
    max_degree: Optional[int] = None
    min_degree: Optional[int] = None
    jobs: int = field(default_factory=default_jobs)
    use_combinatorial: bool = True
    out_dir: Optional[Path] = None
    base_eps: Fraction = DEFAULT_BASE_EPS
    resume: bool = False
    threshold: Fraction = PREFILTER_THRESHOLD
    root_eps: Fraction = PREFILTER_ROOT_EPS

    def families(self) -> list[str]:
        if self.family == "both":
            return ["three", "four"]
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        return [self.family]

    def degrees(self, fam: str) -> list[int]:
        terms, alpha_max, _ = FAMILIES[fam]
        top = degree_bound(terms, alpha_max)
        if self.max_degree is not None:
            top = min(top, self.max_degree)
        low = terms if self.min_degree is None else max(terms, self.min_degree)
        return list(range(low, top + 1))


@dataclass
class FamilyReport:
    family: str
    terms: int
    alpha_max: Fraction
    intervals: dict[int, RationalInterval]
    enumerated: dict[int, int]
    records: dict[int, list[PisotRecord]]
    admissible: dict[RelationType, list[int]]
    survivors: dict[RelationType, list[tuple[IntPoly, Fraction, tuple[int, ...]]]]
    verdicts: dict[RelationType, list[tuple[IntPoly, RelationVerdict]]]

    @property
    def counts(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.records.items())}

    def solutions(self, r: RelationType) -> list[IntPoly]:
        return [p for p, v in self.verdicts.get(r, []) if v.holds]

    def to_json(self) -> dict:
        return {
            "terms": self.terms,
            "alpha_max": str(self.alpha_max),
            "search_covers": {str(d): str(iv) for d, iv in sorted(self.intervals.items())},
            "enumerated_in_cover": {str(d): n for d, n in sorted(self.enumerated.items())},
            "counts": {str(d): n for d, n in self.counts.items()},
            "admissible_degrees": {r.tag: ds for r, ds in self.admissible.items()},
            "survivors": {
                r.tag: [{"poly": p.to_line(), "residual": f"{float(res):.5e}", "witness": list(w)}
                        for p, res, w in lst]
                for r, lst in self.survivors.items()
            },
            "solutions": {r.tag: [p.to_line() for p in self.solutions(r)] for r in self.survivors},
        }


@dataclass
class PipelineReport:
    config: PipelineConfig
    families: dict[str, FamilyReport]
    timings: dict = field(default_factory=dict)
    shards: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        # parallelism, shard widths and timings are left out so the report
        # is identical for any execution schedule
        return {
            "config": {
                "family": self.config.family,
                "max_degree": self.config.max_degree,
                "min_degree": self.config.min_degree,
                "use_combinatorial": self.config.use_combinatorial,
                "threshold": str(self.config.threshold),
                "root_eps": str(self.config.root_eps),
            },
            "families": {name: fr.to_json() for name, fr in self.families.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _run_shard(job: ShardJob) -> tuple[str, list[str], float]:
    t0 = time.perf_counter()
    recs = enumerate_pisot(job.degree, job.interval)
    return job.job_id, [r.to_line() for r in recs], time.perf_counter() - t0


def _prefilter_one(args) -> list:
    line, types, threshold, root_eps = args
    f = IntPoly.from_line(line)
    return [(r.tag, res, flagged, w) for r, res, flagged, w in numeric_prefilter(f, types, threshold, root_eps)]


class _Executor:
    """Thin wrapper so jobs=1 runs in-process without a pool."""

    def __init__(self, jobs: int):
        self.jobs = jobs
        self.pool = cf.ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None

    def map_unordered(self, fn, items):
        if self.pool is None:
            for it in items:
                yield fn(it)
            return
        futs = [self.pool.submit(fn, it) for it in items]
        for fut in cf.as_completed(futs):
            yield fut.result()

    def map(self, fn, items, chunksize=16):
        if self.pool is None:
            return [fn(it) for it in items]
        return list(self.pool.map(fn, items, chunksize=chunksize))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


class Journal:
    """Append-only record of completed shard jobs."""

    def __init__(self, path: Optional[Path]):
        self.path = path
        self.done: dict[str, int] = {}
        if path is not None and path.exists():
            for line in path.read_text().splitlines():
                parts = line.split()
                if len(parts) >= 2:
                    self.done[parts[0]] = int(parts[1])

    def add(self, job_id: str, count: int) -> None:
        self.done[job_id] = count
        if self.path is not None:
            with open(self.path, "a") as fh:
                fh.write(f"{job_id} {count}\n")
                fh.flush()
                os.fsync(fh.fileno())


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _enumerate_family(jobs: list[ShardJob], ex: _Executor, shard_dir: Optional[Path], journal: Journal,
                      timings: dict, shard_log: list) -> dict[str, list[str]]:
    results: dict[str, list[str]] = {}
    todo = []
    for job in jobs:
        if job.job_id in journal.done and shard_dir is not None:
            f = shard_dir / f"{job.job_id}.txt"
            if f.exists():
                lines = f.read_text().splitlines()
                if len(lines) == journal.done[job.job_id]:
                    results[job.job_id] = lines
                    continue
            log.warning("journal lists %s but its shard file is missing or short; rerunning", job.job_id)
        todo.append(job)
    for job_id, lines, secs in ex.map_unordered(_run_shard, todo):
        if shard_dir is not None:
            try:
                _write_atomic(shard_dir / f"{job_id}.txt", "".join(l + "\n" for l in lines))
            except OSError as exc:
                raise OSError(f"shard {job_id}: {exc}") from exc
        journal.add(job_id, len(lines))
        results[job_id] = lines
        timings.setdefault("shards", {})[job_id] = round(secs, 4)
    for job in jobs:
        shard_log.append({"job_id": job.job_id, "degree": job.degree, "interval": str(job.interval),
                          "count": len(results[job.job_id])})
    return results


def run_pipeline(config: PipelineConfig) -> PipelineReport:
    t_start = time.perf_counter()
    out = Path(config.out_dir) if config.out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    timings: dict = {}
    shard_log: list = []
    shard_dir = None
    journal = Journal(None)
    if out is not None:
        shard_dir = out / "shards"
        shard_dir.mkdir(exist_ok=True)
        jpath = out / "journal.txt"
        if not config.resume and jpath.exists():
            jpath.unlink()
        journal = Journal(jpath)
    ex = _Executor(max(1, config.jobs))
    fams = {}
    try:
        for fam in config.families():
            fams[fam] = _run_family(fam, config, ex, shard_dir, journal, timings, shard_log)
    finally:
        ex.close()
    timings["total"] = round(time.perf_counter() - t_start, 3)
    report = PipelineReport(config, fams, timings, shard_log)
    if out is not None:
        _write_outputs(report, out)
    return report


def _run_family(fam: str, config: PipelineConfig, ex: _Executor, shard_dir: Optional[Path],
                journal: Journal, timings: dict, shard_log: list) -> FamilyReport:
    terms, alpha_max, types = FAMILIES[fam]
    degrees = config.degrees(fam)
    intervals = {d: target_interval(d, terms, alpha_max) for d in degrees}
    jobs = shard_plan(degrees, intervals, config.base_eps)
    log.info("%s-term family: degrees %s, %d shards", fam, degrees, len(jobs))

    t0 = time.perf_counter()
    results = _enumerate_family(jobs, ex, shard_dir, journal, timings, shard_log)
    timings[f"{fam}.enumerate"] = round(time.perf_counter() - t0, 3)

    # merge; shards partition the cover so every record appears once
    enumerated: dict[int, int] = {}
    records: dict[int, list[PisotRecord]] = {}
    t0 = time.perf_counter()
    for d in degrees:
        seen: dict[IntPoly, PisotRecord] = {}
        for job in (j for j in jobs if j.degree == d):
            for line in results[job.job_id]:
                rec = PisotRecord.from_line(line)
                if rec.poly in seen:
                    raise ArithmeticError(f"record {rec.poly} found in two shards")
                seen[rec.poly] = rec
        enumerated[d] = len(seen)
        records[d] = sorted(r for r in seen.values() if above_left_endpoint(r, terms))
    timings[f"{fam}.sieve"] = round(time.perf_counter() - t0, 3)

    admissible = {r: sorted(admissible_degrees(r, alpha_max, config.use_combinatorial) & set(degrees))
                  for r in types}

    # numeric prefilter over every record of an admissible degree
    t0 = time.perf_counter()
    wanted: dict[str, list[RelationType]] = {}
    for r in types:
        for d in admissible[r]:
            for rec in records[d]:
                wanted.setdefault(rec.poly.to_line(), []).append(r)
    lines = sorted(wanted, key=lambda s: IntPoly.from_line(s).desc())
    lines.sort(key=lambda s: len(s.split()))
    args = [(line, wanted[line], config.threshold, config.root_eps) for line in lines]
    survivors: dict[RelationType, list] = {r: [] for r in types}
    for line, res in zip(lines, ex.map(_prefilter_one, args)):
        p = IntPoly.from_line(line)
        for tag, residual, flagged, w in res:
            if flagged:
                survivors[RelationType.from_name(tag)].append((p, residual, w))
    timings[f"{fam}.prefilter"] = round(time.perf_counter() - t0, 3)

    t0 = time.perf_counter()
    verdicts: dict[RelationType, list] = {r: [] for r in types}
    for r in types:
        for p, _, _ in survivors[r]:
            verdicts[r].append((p, test_relation(p, r)))
    timings[f"{fam}.exact"] = round(time.perf_counter() - t0, 3)

    return FamilyReport(fam, terms, alpha_max, intervals, enumerated, records, admissible, survivors, verdicts)


def _write_outputs(report: PipelineReport, out: Path) -> None:
    rec_dir = out / "records"
    rec_dir.mkdir(exist_ok=True)
    verdict_lines = []
    rows = []
    for name, fr in report.families.items():
        for d, recs in sorted(fr.records.items()):
            _write_atomic(rec_dir / f"{name}-d{d:02d}.txt", "".join(r.to_line() + "\n" for r in recs))
            rows.append((name, d, fr.enumerated[d], len(recs)))
        for r, lst in fr.verdicts.items():
            for p, v in lst:
                verdict_lines.append(f"{p.degree} {p.to_line()}")
                verdict_lines.append(v.to_line())
    _write_atomic(out / "verdicts.txt", "".join(l + "\n" for l in verdict_lines))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "degree", "enumerated_in_cover", "in_target"])
    w.writerows(rows)
    _write_atomic(out / "counts.csv", buf.getvalue())
    _write_atomic(out / "report.json", report.dumps())
    _write_atomic(out / "timings.json", json.dumps(report.timings, indent=2, sort_keys=True) + "\n")
    _write_atomic(out / "shards.json", json.dumps(report.shards, indent=2) + "\n")


# -- verification against published data ---------------------------------------

@dataclass(frozen=True)
class TableCheck:
    name: str
    passed: bool
    detail: str

    def __str__(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _set_check(name: str, got: Sequence[IntPoly], want: Sequence[IntPoly]) -> TableCheck:
    g, w = set(got), set(want)
    if g == w:
        return TableCheck(name, True, f"{len(w)} polynomials match")
    missing = sorted(w - g)
    extra = sorted(g - w)
    det = "missing: " + "; ".join(map(str, missing)) + " | extra: " + "; ".join(map(str, extra))
    return TableCheck(name, False, det)


def verify_paper_tables(report: PipelineReport) -> list[TableCheck]:
    checks = []
    three = report.families.get("three")
    if three is not None:
        for d, lines in sorted(tables.LISTED_SETS.items()):
            if d in three.records:
                checks.append(_set_check(f"three-term degree {d} list",
                                         [r.poly for r in three.records[d]], tables.polys(lines)))
        for d, want in sorted(tables.THREE_TERM_COUNTS.items()):
            if d in three.records:
                got = len(three.records[d])
                checks.append(TableCheck(f"three-term degree {d} count", got == want, f"got {got}, want {want}"))
        if all(d in three.records for d in tables.THREE_TERM_COUNTS):
            total = sum(len(three.records[d]) for d in tables.THREE_TERM_COUNTS)
            checks.append(TableCheck("three-term total", total == 78, f"got {total}, want 78"))
    four = report.families.get("four")
    if four is not None:
        for d, want in sorted(tables.FOUR_TERM_COUNTS.items()):
            if d in four.records:
                got = len(four.records[d])
                checks.append(TableCheck(f"four-term degree {d} count", got == want, f"got {got}, want {want}"))
    return checks
