import json
import subprocess
import sys

import pytest

from runge_kit import __version__, cli


def run(argv, tmp_path, name="out.jsonl"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    recs = [json.loads(l) for l in out.read_text().splitlines()] if out.exists() else []
    return code, recs


def test_solve_records(tmp_path):
    code, recs = run(["solve", "--m", "2", "--n", "5", "--tuple", "0,2"], tmp_path)
    assert code == 0
    kinds = [r["kind"] for r in recs]
    assert kinds[0] == "report" and set(kinds[1:]) == {"solution"}
    for r in recs:
        assert set(r) == {"kind", "source", "version", "payload"}
        assert r["version"] == __version__
    rep = recs[0]["payload"]
    assert rep["T"] == [0, 2] and rep["m"] == "2" and rep["root_part"]["D"] == "16"
    assert all(isinstance(c, str) for c in rep["f"])


def test_solve_inapplicable(tmp_path, capsys):
    code, _ = run(["solve", "--m", "3", "--n", "3", "--tuple", "0,1"], tmp_path)
    assert code == 2
    assert "Runge inapplicable: gcd(m, deg)=1" in capsys.readouterr().err


def test_invalid_tuple(tmp_path):
    code, _ = run(["solve", "--m", "2", "--n", "5", "--tuple", "3,1"], tmp_path)
    assert code == 2


def test_jobs_zero_rejected():
    with pytest.raises(SystemExit) as exc:
        cli.main(["batch", "--m", "2", "--n", "3", "--jobs", "0"])
    assert exc.value.code == 2


def test_contract_failure_exit(tmp_path):
    code, recs = run(["curves", "verify-tables"], tmp_path)
    assert code == 3
    assert recs[-1]["kind"] == "verification" and recs[-1]["payload"]["ok"] is False
    assert sum(1 for r in recs if r["kind"] == "point-check" and not r["payload"]["ok"]) == 4


def test_checkpoint_io_exit(tmp_path):
    bad = tmp_path / "ck.json"
    bad.write_text("garbage")
    code, _ = run(["search", "additive", "--arities", "2,2", "--m", "3", "--bound", "50",
                   "--checkpoint", str(bad), "--resume"], tmp_path)
    assert code == 4


def test_family_and_pell(tmp_path):
    code, recs = run(["family", "conjecture1", "--max-n", "8"], tmp_path)
    assert code == 0 and recs[-1]["payload"]["status"] == "verified up to n=8"
    assert sum(r["kind"] == "family" for r in recs) == 18
    code, recs = run(["pell", "neighbors", "--count", "3"], tmp_path, "p.jsonl")
    assert code == 0 and [r["payload"]["z"] for r in recs] == ["0", "12", "408"]
    code, recs = run(["pell", "congruences", "--n-max", "4"], tmp_path, "c.jsonl")
    assert code == 0 and recs[0]["payload"]["ok"] is True


def test_search_count(tmp_path):
    code, recs = run(["search", "count", "--arities", "0,0", "--m", "2", "--bound", "10"], tmp_path)
    assert code == 0 and recs[0]["payload"]["count"] == "9"


def test_timestamps_opt_in(tmp_path):
    _, plain = run(["pell", "odd-m", "--m", "3", "--t", "2"], tmp_path)
    assert "timestamp" not in plain[0]
    _, stamped = run(["pell", "odd-m", "--m", "3", "--t", "2", "--timestamps"], tmp_path, "t.jsonl")
    assert "timestamp" in stamped[0]


def test_read_jsonl_partial_tail(tmp_path):
    p = tmp_path / "r.jsonl"
    p.write_text('{"kind":"a"}\n{"kind":"b"}\n{"kind":"c", "pay')
    recs, warning = cli.read_jsonl(str(p))
    assert [r["kind"] for r in recs] == ["a", "b"] and "partial" in warning


def test_read_jsonl_interior_error(tmp_path):
    p = tmp_path / "r.jsonl"
    p.write_text('{"kind":"a"}\nnot json\n{"kind":"c"}\n')
    with pytest.raises(ValueError, match=r":2:"):
        cli.read_jsonl(str(p))


def test_report_totals(tmp_path, capsys):
    code, recs = run(["search", "additive", "--arities", "2,2", "--m", "3", "--bound", "2500", "--exclude-trivial"], tmp_path)
    assert code == 0
    capsys.readouterr()
    assert cli.main(["report", "--in", str(tmp_path / "out.jsonl")]) == 0
    lines = capsys.readouterr().out.splitlines()
    counts = dict(l.split() for l in lines[1:])
    assert counts == {"report": "1", "solution": "5", "total": str(len(recs))}


def test_report_missing_file(tmp_path):
    assert cli.main(["report", "--in", str(tmp_path / "nope.jsonl")]) == 4


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "runge_kit.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout


def test_encode():
    from fractions import Fraction

    from runge_kit.exact import Poly

    assert cli.encode({"T": [1, 2], "x": 10**30, "q": Fraction(1, 2), "f": Poly([1, 2]), "ok": True}) == {
        "T": [1, 2], "x": str(10**30), "q": "1/2", "f": ["1", "2"], "ok": True,
    }
