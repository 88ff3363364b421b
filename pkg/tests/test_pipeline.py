import copy
import csv
import json
import math
from fractions import Fraction

import pytest

from pisotrel.pipeline import (
    TAU,
    PipelineConfig,
    admissible_degrees,
    cmp_tau_power,
    degree_bound,
    run_pipeline,
    shard_plan,
    shard_width,
    target_interval,
    verify_paper_tables,
    weil_height,
)
from pisotrel.polycore import IntPoly
from pisotrel.relations import RelationType as R
from pisotrel.rootcert import RationalInterval, is_pisot

GOLD = (1 + 5 ** 0.5) / 2


def test_cmp_tau_power_matches_floats():
    for n in range(0, 30):
        t = GOLD ** n
        for q in (Fraction(t) * Fraction(1001, 1000), Fraction(t) * Fraction(999, 1000)):
            assert cmp_tau_power(q, n) == (1 if q > t else -1)
    assert cmp_tau_power(Fraction(1), 0) == 0


def test_degree_bound_examples():
    assert degree_bound(3, 2) == 8
    assert degree_bound(4, 3) == 18
    assert degree_bound(3, TAU) == 6
    assert degree_bound(4, Fraction(5, 2)) == math.floor(8 * math.log(2.5) / math.log(GOLD))
    with pytest.raises(ValueError):
        degree_bound(5, 2)


def test_target_interval_examples():
    for d, terms, hi in ((3, 3, 2), (6, 3, 2), (8, 4, 3)):
        iv = target_interval(d, terms, hi)
        exact = GOLD ** (d / (2 * terms))
        assert iv.hi == hi and iv.lo_open and iv.hi_open
        assert exact - 1e-9 < iv.lo
        assert cmp_tau_power(iv.lo ** (2 * terms), d) < 0
    with pytest.raises(ValueError):
        target_interval(9, 3, 2)


def test_admissible_degree_examples():
    assert admissible_degrees(R.SUM3_ZERO, use_combinatorial=True) == {3, 6}
    assert admissible_degrees(R.EQ_SUM2, use_combinatorial=False) == {4, 6, 8}
    assert admissible_degrees(R.EQ_SUM2, use_combinatorial=True) == {8}
    assert admissible_degrees(R.PAIR_EQ, use_combinatorial=False) == {4, 6, 8, 9, 10, 12, 14, 15, 16, 18}
    assert 4 in admissible_degrees(R.SUM4_ZERO)
    assert 3 in admissible_degrees(R.SUM3_ZERO, use_combinatorial=False)


def test_shard_widths():
    assert shard_width(12) == Fraction(1, 10)
    assert shard_width(13) == Fraction(1, 30)
    assert shard_width(14) == Fraction(1, 90)
    assert shard_width(5) == Fraction(1, 10)


def test_shard_plan_tiles_exactly():
    ivs = {d: target_interval(d, 4, 3) for d in (4, 13)}
    jobs = shard_plan([4, 13], ivs)
    assert len({j.job_id for j in jobs}) == len(jobs)
    for d in (4, 13):
        mine = [j for j in jobs if j.degree == d]
        assert mine[0].interval.lo == ivs[d].lo and mine[0].interval.lo_open
        assert mine[-1].interval.hi == 3 and mine[-1].interval.hi_open
        for a, b in zip(mine, mine[1:]):
            assert a.interval.hi == b.interval.lo
            assert not a.interval.hi_open and b.interval.lo_open
        for j in mine[:-1]:
            assert j.interval.width == shard_width(d)
    assert shard_plan([4], {4: RationalInterval.closed(2, 2)}) == []
    assert [j.job_id for j in shard_plan([4, 13], ivs)] == [j.job_id for j in jobs]


def test_weil_height():
    rec = is_pisot(IntPoly.from_desc([1, 0, -1, -1]), RationalInterval(1, None))
    h = weil_height(rec)
    assert h.width < Fraction(1, 10**12)
    assert float(h.lo) == pytest.approx(math.log(1.324717957244746) / 3, abs=1e-12)
    rec = is_pisot(IntPoly.from_desc([1, -2]), RationalInterval(1, None))
    h = weil_height(rec)
    assert h.lo <= Fraction(math.log(2)) <= h.hi and h.width < Fraction(1, 10**20)
    rec = is_pisot(IntPoly.from_desc([1, -2, 0, 1, -1]), RationalInterval(1, None))
    assert float(weil_height(rec).hi) == pytest.approx(math.log(1.86676039917386) / 4, abs=1e-12)


def test_small_four_term_run(small_four_term_report, tmp_path):
    fr = small_four_term_report.families["four"]
    assert fr.counts == {4: 43, 5: 162, 6: 353}
    assert [str(p) for p in fr.solutions(R.PAIR_EQ)] == ["x^4 - 2*x^3 + x - 1"]
    assert fr.solutions(R.EQ_SUM3) == [] and fr.solutions(R.SUM4_ZERO) == []
    for r in fr.survivors:
        assert set(fr.solutions(r)) <= {p for p, _, _ in fr.survivors[r]}


def test_output_files_are_consistent(tmp_path):
    out = tmp_path / "run"
    rep = run_pipeline(PipelineConfig(family="four", max_degree=5, jobs=1, out_dir=out))
    rows = list(csv.DictReader(open(out / "counts.csv")))
    for row in rows:
        d = int(row["degree"])
        lines = (out / "records" / f"four-d{d:02d}.txt").read_text().splitlines()
        assert len(lines) == int(row["in_target"]) == len(rep.families["four"].records[d])
    data = json.loads((out / "report.json").read_text())
    assert data["families"]["four"]["counts"] == {"4": 43, "5": 162}
    assert "timings" not in data
    verdicts = (out / "verdicts.txt").read_text().splitlines()
    assert verdicts == ["4 1 -2 0 1 -1", "PAIR_EQ 1 0.00000e+00 1,4,2,3"]
    journal = (out / "journal.txt").read_text().splitlines()
    assert len(journal) == len(rep.shards)


def test_resume_skips_completed_jobs(tmp_path):
    out = tmp_path / "run"
    cfg = PipelineConfig(family="three", max_degree=5, jobs=1, out_dir=out)
    first = run_pipeline(cfg)
    # drop one shard file: only that job reruns
    victim = first.shards[0]["job_id"]
    (out / "shards" / f"{victim}.txt").unlink()
    cfg.resume = True
    second = run_pipeline(cfg)
    assert list(second.timings["shards"]) == [victim]
    assert second.dumps() == first.dumps()
    third = run_pipeline(cfg)
    assert "shards" not in third.timings
    assert third.dumps() == first.dumps()


def test_verify_paper_tables_reports_mismatch(three_term_report):
    checks = verify_paper_tables(three_term_report)
    assert checks and all(c.passed for c in checks)
    broken = copy.copy(three_term_report)
    fam = copy.copy(broken.families["three"])
    fam.records = dict(fam.records)
    fam.records[3] = fam.records[3][1:]
    broken.families = {"three": fam}
    bad = [c for c in verify_paper_tables(broken) if not c.passed]
    assert {c.name for c in bad} == {"three-term degree 3 list", "three-term degree 3 count", "three-term total"}
    assert "missing: x^3 - 2*x^2 + x - 1" in bad[0].detail


def test_unknown_family():
    with pytest.raises(ValueError):
        run_pipeline(PipelineConfig(family="five", jobs=1))
