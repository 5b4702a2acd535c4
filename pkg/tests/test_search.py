import json
import math
import os

import pytest
from hypothesis import given, settings, strategies as st

from runge_kit import _pykernels, kernels
from runge_kit.search import (
    CheckpointError,
    SearchTask,
    additive_count,
    additive_search,
    bounded_equation_search,
    construct_additive_solution,
    negative_x_members,
    negative_x_scan,
    positive_x_scan,
    run_with_checkpoint,
    trivial_family_predicate,
)


def p(a, t):
    return math.prod(range(t, t + a + 1))


def naive_additive(a1, a2, m, bound):
    out = []
    for x in range(1, bound + 1):
        for y in range(x, bound + 1):
            v = p(a1, x) + p(a2, y)
            z = round(v ** (1 / m))
            for c in (z - 1, z, z + 1):
                if c >= 0 and c**m == v:
                    out.append((x, y, c))
    return out


@pytest.mark.parametrize("a1,a2,m,bound", [(2, 2, 3, 120), (2, 2, 2, 150), (1, 1, 2, 150), (1, 3, 2, 90), (0, 2, 3, 120)])
def test_additive_matches_naive(a1, a2, m, bound):
    assert additive_search(a1, a2, m, bound) == naive_additive(a1, a2, m, bound)


def test_additive_examples():
    r = additive_search(2, 2, 3, 10)
    assert (1, 5, 6) in r
    assert additive_search(2, 2, 3, 10, exclude_trivial=True) == []
    assert additive_search(4, 4, 2, 1000) == []
    got = additive_search(2, 2, 3, 2500, exclude_trivial=True, strict=True)
    assert [z for _, _, z in got] == [282, 558, 1110, 630, 2574]
    assert all(p(2, x) + p(2, y) == z**3 for x, y, z in got)


def test_square_count_tiny():
    # pairs 1 <= x <= y <= 10 with x + y a square
    want = sum(1 for x in range(1, 11) for y in range(x, 11) if math.isqrt(x + y) ** 2 == x + y)
    assert want == 9
    assert additive_count(0, 0, 2, 10) == want


def test_additive_backends_agree():
    m = 3
    mod, table = kernels.combined_table(m)
    for lo, hi in [(1, 40), (41, 300)]:
        want = _pykernels.additive_pairs(2, 2, m, lo, hi, 300, mod, table)
        assert kernels.additive_pairs(2, 2, m, lo, hi, 300) == [tuple(r) for r in want]


def test_additive_jobs_invariant():
    assert additive_search(2, 2, 3, 800, jobs=1) == additive_search(2, 2, 3, 800, jobs=3)


def test_trivial_predicate():
    pred = trivial_family_predicate(2, 2, 3)
    assert pred(1, 5) and pred(5, 1) and not pred(97, 277)
    assert not trivial_family_predicate(2, 2, 2)(1, 5)
    assert not trivial_family_predicate(4, 4, 7)(1, 5)


@given(st.sampled_from([2, 3]), st.lists(st.tuples(st.integers(0, 5), st.integers(1, 30)), min_size=1, max_size=4))
@settings(max_examples=50)
def test_construct_additive(m, tail):
    ar, vals = zip(*tail)
    arities, values, S = construct_additive_solution(m, ar, vals)
    assert sum(p(a, v) for a, v in zip(arities, values)) == S**m


def test_construct_additive_errors():
    with pytest.raises(ValueError):
        construct_additive_solution(4, [1], [1])
    with pytest.raises(ValueError):
        construct_additive_solution(2, [1, 2], [1])


def test_negative_x_scan():
    recs = negative_x_scan(-10, 8, 8)
    assert negative_x_members(recs) == [-9, -8, -5, -4, -1]
    for r in recs:
        n, T, x = r["n"], r["T"], r["x"]
        v = p(n, x) + sum(p(a, x) for a in T)
        assert r["y"] ** r["m"] == v
    hit = [r for r in recs if r["x"] == -9 and r["n"] == 5 and r["T"] == [3]]
    assert any(r["m"] == 2 and abs(r["y"]) == 252 for r in hit)


def test_positive_x_scan_values():
    recs = positive_x_scan(2, 6)
    assert recs
    for r in recs:
        v = p(r["n"], r["x"]) + sum(p(a, r["x"]) for a in r["T"])
        assert r["y"] ** r["m"] == v
    with pytest.raises(ValueError):
        positive_x_scan(0, 4)


def test_bounded_5_3_computed_set():
    # the set actually present for y^5 = g_T(x), n = 3, |x| <= 10^4
    recs = bounded_equation_search(5, 3, -10**4, 10**4)
    assert {(r["x"], r["y"]) for r in recs if r["y"]} == {(-4, 2), (-1, -1), (1, 2)}


def test_bounded_matches_naive_window():
    got = {(r["x"], r["y"], tuple(r["T"])) for r in bounded_equation_search(3, 4, -300, 300)}
    from runge_kit.family import enumerate_tuples

    want = set()
    for T in enumerate_tuples(4):
        for x in range(-300, 301):
            v = p(4, x) + sum(p(a, x) for a in T)
            r = round(abs(v) ** (1 / 3)) * (1 if v >= 0 else -1)
            for c in (r - 1, r, r + 1):
                if c**3 == v:
                    want.add((x, c, T))
    assert got == want


# -- checkpointing --------------------------------------------------------


def task():
    return SearchTask("additive", {"a1": 2, "a2": 2, "m": 3, "bound": 3000, "exclude_trivial": True})


def test_checkpoint_interrupt_resume(tmp_path):
    ck = str(tmp_path / "ck.json")
    full = run_with_checkpoint(task())
    part = run_with_checkpoint(task(), checkpoint=ck, max_units=40)
    assert not part.complete and os.path.exists(ck)
    rest = run_with_checkpoint(task(), checkpoint=ck, resume=True)
    assert rest.complete and rest.results == full.results
    assert [tuple(r[:2]) for r in full.results][:5] == [(97, 277), (176, 551), (263, 1104), (495, 503), (1244, 2472)]


def test_checkpoint_corrupt(tmp_path):
    ck = tmp_path / "ck.json"
    run_with_checkpoint(task(), checkpoint=str(ck), max_units=10)
    data = json.loads(ck.read_text())
    data["results"].append(["1", "2", "3"])
    ck.write_text(json.dumps(data))
    with pytest.raises(CheckpointError):
        run_with_checkpoint(task(), checkpoint=str(ck), resume=True)
    ck.write_text("{not json")
    with pytest.raises(CheckpointError):
        run_with_checkpoint(task(), checkpoint=str(ck), resume=True)


def test_checkpoint_foreign_task(tmp_path):
    ck = str(tmp_path / "ck.json")
    run_with_checkpoint(task(), checkpoint=ck, max_units=5)
    other = SearchTask("additive", {"a1": 2, "a2": 2, "m": 2, "bound": 3000})
    with pytest.raises(CheckpointError):
        run_with_checkpoint(other, checkpoint=ck, resume=True)


def test_checkpoint_jobs_invariant():
    t = SearchTask("negative-x", {"x_min": -12, "n_max": 7, "m_max": 6})
    assert run_with_checkpoint(t, jobs=1).results == run_with_checkpoint(t, jobs=4).results


def test_unknown_kind():
    with pytest.raises(ValueError):
        SearchTask("nope", {})
