import csv
import io
import json
import math

import pytest

from quadcycle.cli import main
from quadcycle.report import SWEEP_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def trunc3(x):
    return math.trunc(x * 1000) / 1000


# -- analyze ----------------------------------------------------------------------


def test_analyze_degenerate(capsys):
    code, out, _ = run(capsys, "analyze", "--a", "1", "--b", "0", "--c", "-1.75")
    assert code == 0
    report = json.loads(out)
    assert report["delta"] == 0.0
    assert report["existence"] == "UniqueCycle"
    (cycle,) = report["cycles"]
    assert cycle["branch"] == "Degenerate"
    assert [trunc3(x) for x in cycle["points"]] == [-0.054, -1.746, 1.301]
    assert cycle["verdict"] == "Unstable"
    assert cycle["hyperbolic"] is False


def test_analyze_no_cycles(capsys):
    code, out, _ = run(capsys, "analyze", "--a", "1", "--b", "0", "--c", "0")
    report = json.loads(out)
    assert code == 0
    assert report["delta"] == -7.0
    assert report["existence"] == "NoCycles"
    assert report["cycles"] == []


def test_analyze_two_cycles_consistent(capsys):
    _, out, _ = run(capsys, "analyze", "--a", "1", "--b", "0", "--c", "-1.76")
    report = json.loads(out)
    assert report["existence"] == "TwoCycles"
    assert [c["branch"] for c in report["cycles"]] == ["PlusDelta", "MinusDelta"]
    for c in report["cycles"]:
        assert (abs(c["multiplier"]) < 1) == (c["verdict"] == "AsymptoticallyStable")


def test_analyze_compact_is_one_line(capsys):
    _, out, _ = run(capsys, "analyze", "--a", "1", "--b", "0", "--c", "-2", "--compact")
    assert out.count("\n") == 1
    assert json.loads(out)["existence"] == "TwoCycles"


def test_json_round_trips_doubles(capsys):
    _, out, _ = run(capsys, "analyze", "--a", "0.1", "--b", "0.2", "--c", "-30.3")
    report = json.loads(out)
    assert report["input"] == {"a": 0.1, "b": 0.2, "c": -30.3}


def test_schema_stable_within_existence_class(capsys):
    def keys(obj):
        if isinstance(obj, dict):
            return {k: keys(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [keys(v) for v in obj]
        return None

    _, first, _ = run(capsys, "analyze", "--a", "1", "--b", "0", "--c", "-2")
    _, second, _ = run(capsys, "analyze", "--a", "-0.3", "--b", "1.7", "--c", "10")
    assert keys(json.loads(first)) == keys(json.loads(second))


def test_analyze_rejects_zero_a(capsys):
    code, _, err = run_exit(capsys, "analyze", "--a", "0", "--b", "1", "--c", "1")
    assert code == 2
    assert "a must be nonzero" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--a", "1", "--b", "0"],
        ["analyze", "--a", "x", "--b", "0", "--c", "0"],
        ["analyze", "--a", "nan", "--b", "0", "--c", "0"],
        ["analyze-logistic", "--lambda", "0"],
        ["sweep", "logistic", "--from", "3", "--to", "4", "--step", "0"],
        ["sweep", "cubic", "--from", "3", "--to", "4", "--step", "0.1"],
        ["verify", "--a", "1"],
        ["verify", "--random", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run_exit(capsys, *argv)
    assert code == 2


def test_analyze_families(capsys):
    _, out, _ = run(capsys, "analyze-offset", "--c", "-1.75")
    report = json.loads(out)
    assert report["input"] == {"family": "offset", "parameter": -1.75, "a": 1.0, "b": 0.0, "c": -1.75}
    assert [trunc3(x) for x in report["thresholds"]["stability_boundary"]] == [-1.768]

    _, out, _ = run(capsys, "analyze-logistic", "--lambda", "4")
    report = json.loads(out)
    assert report["existence"] == "TwoCycles"
    assert sorted(c["multiplier"] for c in report["cycles"]) == [-8.0, 8.0]


# -- sweep ---------------------------------------------------------------------------


def read_rows(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == SWEEP_HEADER
    return [dict(zip(rows[0], r)) for r in rows[1:]]


def test_offset_sweep_existence_flip(capsys):
    _, out, _ = run(capsys, "sweep", "offset", "--from", "-1.80", "--to", "-1.70", "--step", "0.001")
    rows = read_rows(out)
    assert len(rows) == 101
    for row in rows:
        c = float(row["param"])
        if c > -1.75:
            assert row["existence"] == "NoCycles"
            assert row["plus_x1"] == row["minus_x1"] == ""
        elif c == -1.75:
            assert row["existence"] == "UniqueCycle"
            assert row["plus_x1"] != "" and row["minus_x1"] == ""
        else:
            assert row["existence"] == "TwoCycles"


def test_sweep_empty_range(capsys):
    code, out, _ = run(capsys, "sweep", "offset", "--from", "1", "--to", "0", "--step", "0.1")
    assert code == 0
    assert out == ",".join(SWEEP_HEADER) + "\n"


def test_sweep_to_file_uses_lf(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "logistic", "--from", "3.83", "--to", "3.85", "--step", "0.01", "--out", str(path))
    assert code == 0 and out == ""
    data = path.read_bytes()
    assert b"\r" not in data
    assert len(data.decode("utf-8").splitlines()) == 4


def test_sweep_unwritable_path(tmp_path, capsys):
    target = tmp_path / "missing" / "sweep.csv"
    code, _, err = run(capsys, "sweep", "offset", "--from", "-2", "--to", "-1", "--step", "0.5", "--out", str(target))
    assert code == 1
    assert "cannot write" in err


def test_sweep_is_deterministic(capsys):
    argv = ["sweep", "logistic", "--from", "3.8", "--to", "3.9", "--step", "0.001"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# -- verify ----------------------------------------------------------------------------


@pytest.mark.parametrize("c", ["-2", "0", "-1.75"])
def test_verify_single_map(capsys, c):
    code, out, _ = run(capsys, "verify", "--a", "1", "--b", "0", "--c", c)
    assert code == 0
    assert out.rstrip().endswith("PASS")
    assert "FAIL" not in out


def test_verify_two_cycles_matched(capsys):
    _, out, _ = run(capsys, "verify", "--a", "1", "--b", "0", "--c", "-2")
    assert "closed-form 2, oracle 2" in out


def test_verify_random(capsys):
    code, out, _ = run(capsys, "verify", "--random", "200", "--seed", "42")
    assert code == 0
    assert "failures: 0" in out
    _, again, _ = run(capsys, "verify", "--random", "200", "--seed", "42")
    assert again == out


def test_verify_failure_exit_code(capsys, monkeypatch):
    import quadcycle.cli as cli

    def broken(m):
        cmp = real_compare(m)
        cmp.point_deviation = 1.0
        return cmp

    real_compare = cli.compare
    monkeypatch.setattr(cli, "compare", broken)
    code, out, _ = run(capsys, "verify", "--a", "1", "--b", "0", "--c", "-2")
    assert code == 1
    assert "FAIL" in out
    assert "a=1.0 b=0.0 c=-2.0" in out
