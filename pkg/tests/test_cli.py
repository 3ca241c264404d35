import io
import json
import shutil
import subprocess
from fractions import Fraction

import jsonschema
import pytest

from tnkit import checks
from tnkit.catalog import default_config, load_catalog
from tnkit.checks import CheckFailure, Context, check, expand, require, run_suite
from tnkit.cli import emit, main
from tnkit.cmpmod import LocalLevel
from tnkit.exactlin import FgAbPresentation

SKIPPING = {
    "cmpmod.global.splitting[s3_example]", "cmpmod.global.splitting[v4_split]",
    "tn.global.surjectivity[s3_example]", "tn.global.surjectivity[v4_split]",
    "tn.global.epsilon_prime[s3_example]", "tn.global.epsilon_prime[v4_split]",
    "cmpmod.tower.split_infty[c2_to_v4_new_place]", "tn.global.transition[c2_to_v4_new_place]",
}

ALL_IDS = [full for full, _, _ in expand(Context(load_catalog()))]


@pytest.mark.parametrize("full_id", ALL_IDS)
def test_default_catalog_check(run_check, full_id):
    rec = run_check(full_id)
    want = "skip" if full_id in SKIPPING else "pass"
    assert rec["status"] == want, rec["witness"]


def test_check_command_exit_code(capsys):
    assert main(["check", "--filter", r"^exactlin\."]) == 0
    out = capsys.readouterr().out
    assert "exactlin.snf.identity" in out and "0 failed" in out


def test_json_report_is_idempotent(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["check", "--filter", r"^gmod\.tate", "--format", "json", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert all("time" not in r for r in rep["checks"])
    assert [r["id"] for r in rep["checks"]] == sorted(r["id"] for r in rep["checks"])


def test_timings_flag(tmp_path):
    p = tmp_path / "t.json"
    main(["check", "--filter", r"^exactlin\.snf", "--format", "json", "--timings", "--out", str(p)])
    rep = json.loads(p.read_text())
    assert all(isinstance(r["time"], float) for r in rep["checks"])


def test_missing_cover_skip_carries_witness(run_check):
    rec = run_check("cmpmod.global.splitting[s3_example]")
    assert rec["status"] == "skip"
    assert "(2 3)" in json.dumps(rec["witness"])


def _write(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return str(p)


def test_malformed_subgroup_exits_2(tmp_path, capsys):
    cfg = default_config()
    cfg["sites"]["s3_example"]["places"][1]["subgroup"] = ["()", "(1 2)", "(1 3)"]
    assert main(["check", "--config", _write(tmp_path, cfg)]) == 2
    err = capsys.readouterr().err
    assert "config error at /sites/s3_example" in err


def test_unknown_label_and_bad_json_exit_2(tmp_path, capsys):
    cfg = default_config()
    cfg["towers"]["c2_to_v4"]["map"]["(0,1)"] = "7"
    assert main(["check", "--config", _write(tmp_path, cfg)]) == 2
    assert "/towers/c2_to_v4" in capsys.readouterr().err
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert main(["check", "--config", str(p)]) == 2
    assert "config error at /" in capsys.readouterr().err


def test_emit_edge_cases():
    out = io.StringIO()
    emit({"checks": [], "summary": {"pass": 0, "fail": 0, "skip": 0}}, "json", out)
    assert json.loads(out.getvalue())["checks"] == []
    rec = {"id": "x", "module": "x", "ref": "r", "status": "pass", "witness": None}
    out = io.StringIO()
    emit({"checks": [rec], "summary": {"pass": 1, "fail": 0, "skip": 0}}, "json", out)
    assert json.loads(out.getvalue())["checks"][0]["status"] == "pass"
    out = io.StringIO()
    emit({"checks": [rec], "summary": {"pass": 1, "fail": 0, "skip": 0}}, "text", out)
    assert out.getvalue().startswith("PASS x")


def test_encode_rationals():
    assert checks.encode([Fraction(4, 2), Fraction(-1, 3), (1, None)]) == [2, "-1/3", [1, None]]


def test_induced_failure_is_reported_with_witness(ctx):
    cid = "cmpmod.local.perturbed_relations"

    @check(cid, "rigid quotient order with a perturbed relation matrix")
    def _perturbed(ctx):
        lev = LocalLevel(ctx.cat.groups["C2"], 2)
        rel = [list(c) for c in lev.M_rig.as_group().relations]
        rel[0] = [x + 1 for x in rel[0]]
        got = FgAbPresentation(len(rel[0]), rel).order
        require(got == 2, f"order {got} != 2", rel)

    try:
        rep = run_suite(ctx, "^" + cid.replace(".", r"\.") + "$")
    finally:
        del checks.REGISTRY[cid]
    (rec,) = rep["checks"]
    assert rec["status"] == "fail"
    rows = rec["witness"]["data"]
    assert rows and all(isinstance(x, int) for r in rows for x in r)
    assert rep["summary"] == {"pass": 0, "fail": 1, "skip": 0}


def test_crashing_check_counts_as_failure(ctx):
    cid = "exactlin.crash_probe"

    @check(cid, "probe")
    def _crash(ctx):
        raise ZeroDivisionError("boom")

    try:
        rep = run_suite(ctx, "^exactlin\\.crash_probe$")
    finally:
        del checks.REGISTRY[cid]
    assert rep["checks"][0]["status"] == "fail"
    assert "ZeroDivisionError" in rep["checks"][0]["witness"]["message"]


def test_registry_requires_implementations():
    with pytest.raises(RuntimeError):
        checks.verify_registry(["tn.no.such.check"])
    with pytest.raises(RuntimeError):
        check("exactlin.snf.identity", "duplicate")(lambda ctx: None)


def test_fixtures_output_validates(capsys):
    assert main(["fixtures"]) == 0
    cfg = json.loads(capsys.readouterr().out)
    from importlib import resources
    schema = json.loads(resources.files("tnkit").joinpath("config.schema.json").read_text())
    jsonschema.validate(cfg, schema)
    assert cfg == default_config()


def test_cohomology_command(capsys):
    assert main(["cohomology", "--module", "S3.sign", "--subgroup", "(1 2)"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["H^-1: Z/2", "H^ 0: 0", "H^ 1: Z/2", "H^ 2: 0"]
    assert main(["cohomology", "--module", "mid:C2:2", "--degree", "0", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["groups"] == [{"degree": 0, "invariants": [2], "order": 2}]
    assert main(["cohomology", "--module", "nope"]) == 2


def test_dotv_command(tmp_path, capsys):
    p = tmp_path / "classes.json"
    p.write_text(json.dumps([["()", "(1 2)"], ["()", "(1 2 3)", "(1 3 2)"]]))
    assert main(["dotv", "--group", "S3", "--classes", str(p)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("UNSAT") and "cross-check with enumeration: ok (0 covers)" in out
    p.write_text(json.dumps([["()", "(1 2)"]] * 3 + [["()", "(1 2 3)", "(1 3 2)"]]))
    assert main(["dotv", "--group", "S3", "--classes", str(p)]) == 0
    out = capsys.readouterr().out
    assert out.count("place ") == 4 and ": ok (" in out


@pytest.mark.skipif(shutil.which("tnkit") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["tnkit", "check", "--filter", r"^sites\.cover"], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert "0 failed" in r.stdout
