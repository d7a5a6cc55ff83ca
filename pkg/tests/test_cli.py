import json

import pytest

from refcalc import __version__, suites
from refcalc.cli import main, replay, run_suite
from refcalc.report import SCHEMA

from .conftest import GOLDEN


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "name,argv",
    [
        ("linrec_seed7_cases5.json", ["--suite", "linrec", "--seed", "7", "--cases", "5"]),
        ("cartier.json", ["--suite", "cartier"]),
    ],
)
def test_golden_reports(capsys, name, argv):
    code, out, _ = _run(capsys, *argv, "--format", "json")
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_report_schema(capsys):
    code, out, _ = _run(capsys, "--suite", "linrec", "--cases", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == SCHEMA and data["version"] == __version__
    assert data["summary"] == {"passed": len(data["properties"]), "failed": 0, "skipped": 0}
    assert "timing" not in data


def test_text_output(capsys):
    code, out, _ = _run(capsys, "--suite", "linrec", "--cases", "2")
    assert code == 0
    assert out.splitlines()[-1].startswith("summary: ")
    assert any(line.startswith("PASS") for line in out.splitlines())


def test_timing_is_opt_in(capsys):
    _, out, _ = _run(capsys, "--suite", "linrec", "--cases", "1", "--format", "json", "--timing")
    assert "total" in json.loads(out)["timing"]


def test_planted_inequality_fails(capsys, models_dir):
    code, out, _ = _run(
        capsys, "--suite", "duality", "--cases", "1", "--model", str(models_dir / "planted_inequality.rcm"),
        "--format", "json", "--property", "equal sum_A prod_A",
    )
    assert code == 1
    (prop,) = [p for p in json.loads(out)["properties"] if p["status"] == "fail"]
    assert prop["witness"]["detail"]["subset"] == "Cofin{}"


def test_reflexive_model_passes(capsys, models_dir):
    code, _, err = _run(
        capsys, "--suite", "duality", "--cases", "1", "--model", str(models_dir / "reflexive.rcm"),
        "--property", "reflexivity-model", "--property", "equal R R2",
    )
    assert code == 0, err


def test_unknown_suite(capsys):
    code, _, err = _run(capsys, "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_bad_model_is_usage_error(capsys, models_dir):
    code, _, err = _run(capsys, "--suite", "duality", "--model", str(models_dir / "rect_on_sum.rcm"))
    assert code == 2 and "declaration 'bad'" in err


def test_missing_suite(capsys):
    code, _, _ = _run(capsys)
    assert code == 2


def test_guard_gives_skip(capsys, monkeypatch):
    monkeypatch.setenv("REFCALC_GUARD_MAX", "50")
    code, out, _ = _run(capsys, "--suite", "cartier", "--format", "json")
    assert code == 3
    skipped = [p for p in json.loads(out)["properties"] if p["status"] == "skip"]
    assert skipped and all(p["reason"] for p in skipped)


def test_list(capsys):
    code, out, _ = _run(capsys, "--list")
    assert code == 0 and "polar-laws" in out.split()


def test_workers_do_not_change_output(capsys):
    base = ["--suite", "polar-laws", "--cases", "12", "--seed", "3", "--format", "json"]
    _, one, _ = _run(capsys, *base, "--workers", "1")
    _, three, _ = _run(capsys, *base, "--workers", "3")
    assert one == three


def test_same_seed_same_report():
    a = run_suite("linrec", seed=1, cases=3).as_dict()
    b = run_suite("linrec", seed=1, cases=3).as_dict()
    assert a == b


def test_replay_reproduces_failure(monkeypatch, tmp_path, capsys):
    original = suites.polar_case

    def broken(seed, case):
        out = original(seed, case)
        if case % 5 == 2:
            out["extension"] = {"planted": case}
        return out

    monkeypatch.setattr(suites, "polar_case", broken)
    rep = run_suite("polar-laws", seed=11, cases=8)
    assert rep.exit_code == 1
    (ext,) = [o for o in rep.outcomes if o.name == "extension"]
    w = ext.witness
    assert w["case"] == 2 and w["detail"] == {"planted": 2}
    assert w["case_seed"] == suites.subseed(11, 2)

    again = replay(w)
    assert again.replay == {"property": "extension", "case": 2, "reproduced": True, "still_failing": True}

    path = tmp_path / "report.json"
    path.write_text(rep.to_json())
    code, out, _ = _run(capsys, "--replay", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)["replay"]["reproduced"] is True


def test_replay_of_fixed_failure(tmp_path, capsys):
    w = {"suite": "linrec", "property": "product-annihilation", "seed": 0, "case": 1, "detail": {"x": 1}}
    path = tmp_path / "w.json"
    path.write_text(json.dumps(w))
    code, out, _ = _run(capsys, "--replay", str(path), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["replay"]["still_failing"] is False and data["config"]["replay"]["case"] == 1
