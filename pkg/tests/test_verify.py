import dataclasses

import pytest

from derangement_bijection import verify
from derangement_bijection.bijection import psi as real_psi
from derangement_bijection.enumerate import BoundExceeded
from derangement_bijection.perm import CycleForm
from derangement_bijection.verify import (
    GOLDEN_ROWS,
    GoldenRow,
    compare_golden,
    golden_tables,
    normalize,
    parse_compact,
    shard_plan,
    verify_n,
)


def test_verify_n4():
    r = verify_n(4)
    assert r.bijective and r.inverse_ok and r.exclusion_ok
    assert (r.excluded_count_d, r.excluded_count_f) == (1, 0)
    assert r.dstar_count == r.fstar_count == r.image_size == 8
    assert r.cardinalities.d_n == 9
    assert r.failures == ()


def test_verify_n5():
    r = verify_n(5)
    assert r.ok
    assert (r.excluded_count_d, r.excluded_count_f) == (0, 1)
    assert r.dstar_count == r.fstar_count == 44


def test_verify_n1_vacuous():
    r = verify_n(1)
    assert r.ok
    assert r.dstar_count == r.fstar_count == r.image_size == 0
    assert r.excluded_count_f == 1


def test_verify_bounds():
    with pytest.raises(BoundExceeded):
        verify_n(10)
    with pytest.raises(BoundExceeded):
        verify_n(5, bound=4)
    with pytest.raises(ValueError):
        verify_n(0)


def test_shard_plan_partitions_first_values():
    for n in range(1, 8):
        for shards in range(1, 10):
            plan = shard_plan(n, shards)
            assert sorted(v for firsts in plan for v in firsts) == list(range(1, n + 1))
            assert all(plan)
    with pytest.raises(ValueError):
        shard_plan(3, 0)


@pytest.mark.parametrize("shards", [2, 3, 7])
def test_sharded_matches_single(shards):
    assert verify_n(6, shard_count=shards) == verify_n(6)


def test_worker_processes_match_single():
    assert verify_n(6, shard_count=3, jobs=3) == verify_n(6)


def test_text_and_dict_forms():
    r = verify_n(3)
    text = r.to_text()
    assert "n=3\n" in text and "bijective=True" in text
    assert all("=" in line for line in text.splitlines())
    d = r.to_dict()
    assert d["n"] == 3 and d["ok"] is True
    assert d["cardinalities"]["d_n"] == 2


def _collapsing_psi(c):
    # wrong on purpose: send every case-(i), k=0 derangement of 5 to the same place
    sigma = real_psi(c)
    if c.n == 5 and c.cycles[0][0] == 1 and len(c.cycles[0]) >= 3:
        return CycleForm(5, ((1,), (2, 3, 4, 5)))
    return sigma


def test_detects_broken_map(monkeypatch):
    monkeypatch.setattr(verify, "psi", _collapsing_psi)
    r = verify_n(5)
    assert not r.bijective
    assert not r.inverse_ok
    assert r.image_size < r.dstar_count
    assert len(r.failures) == verify.MAX_FAILURES
    assert any(f.kind == "collision" for f in r.failures)


def test_failures_independent_of_sharding(monkeypatch):
    monkeypatch.setattr(verify, "psi", _collapsing_psi)
    single = verify_n(5)
    for shards in (2, 5):
        assert verify_n(5, shard_count=shards) == single


class TestGolden:
    def test_row_counts(self):
        # all 9 columns of the n=4 table and the 7 concrete columns of the n=5 table
        sizes = [parse_compact(g.sigma if g.pi == "-" else g.pi).n for g in GOLDEN_ROWS]
        assert sizes.count(4) == 9
        assert sizes.count(5) == 7

    def test_all_match(self):
        assert all(match for _, _, match in compare_golden())

    def test_specific_rows(self):
        rows = {r.input: r for r in golden_tables()}
        r = rows["(1,4)(2,3)"]
        assert (r.output, r.case, r.k, r.a1) == ("(1)(2,4,3)", "ii", 0, 4)
        r = rows["(1,2,3)(4,5)"]
        assert (r.output, r.case, r.k, r.a1) == ("(2)(1,3)(4,5)", "i", 0, 2)
        r = rows["(1,5,4)(2,3)"]
        assert (r.case, r.a1) == ("i", 5)
        assert rows["-"].output == "(1)(2,3)(4,5)"
        assert rows["(1,2)(3,4)"].output == "-"

    @pytest.mark.parametrize(
        "field, value",
        [("sigma", "(1)(243)"), ("case", "ii"), ("a1", 3), ("pi", "(1243)")],
    )
    def test_tampered_row_mismatches(self, field, value):
        tampered = list(GOLDEN_ROWS)
        tampered[3] = dataclasses.replace(tampered[3], **{field: value})
        results = compare_golden(tampered)
        assert [m for _, _, m in results].count(False) == 1
        assert not results[3][2]

    def test_malformed_row_reported_not_raised(self):
        rows = golden_tables([GoldenRow("(1)(23)", "(1)(23)", "i", 1)])
        assert rows[0].case == "error"

    def test_normalize(self):
        assert normalize("(1, 3)(2,4)") == "(13)(24)"

    def test_parse_compact(self):
        assert parse_compact("(1243)").cycles == ((1, 2, 4, 3),)
        assert parse_compact("(154)(23)").cycles == ((1, 5, 4), (2, 3))
