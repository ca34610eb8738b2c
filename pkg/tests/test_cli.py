import csv
import json
from pathlib import Path

import pytest

from gaborlab import cli

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "demos" / "scenarios"
MINIMAL = '{"group":[8],"lambda":{"generators":[[2]]},"gamma":{"generators":[[4]]},"window":{"kind":"delta"}}'


def write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def base(**kw):
    doc = json.loads(MINIMAL)
    doc.update(kw)
    return doc


def test_minimal_config_is_valid():
    cfg = cli.parse_config(MINIMAL)
    assert cfg.group == (8,) and cfg.tolerance == 1e-9 and cfg.checks == cli.CHECKS


@pytest.mark.parametrize("doc, path", [
    (base(window={"kind": "explicit", "values": {"re": [1, 2, 3]}}), "window.values"),
    (base(window={"kind": "bspline", "order": 2}, **{"lambda": {"generators": [[1]]}}), "window"),
    (base(**{"lambda": {"generators": [[9]]}}), "lambda.generators[0]"),
    (base(**{"gamma": {"generators": [[1, 0]]}}), "gamma.generators[0]"),
    (base(window={"kind": "random"}), "window"),
    (base(group=[0]), "group[0]"),
    (base(checks=["nope"]), "checks[0]"),
    (base(tolerance=-1), "tolerance"),
    (base(extra=1), ""),
])
def test_config_errors_name_the_path(doc, path):
    with pytest.raises(cli.ConfigError) as exc:
        cli.parse_config(json.dumps(doc))
    assert exc.value.path == path


def test_config_not_json():
    with pytest.raises(cli.ConfigError):
        cli.parse_config("{")
    with pytest.raises(cli.ConfigError):
        cli.parse_config(b"\xff\xfe")


def test_report_roundtrip_and_schema():
    doc = cli.run_scenario(cli.parse_config(MINIMAL))
    cli.validate_report(doc)
    text = cli.report_json(doc)
    assert json.loads(text) == doc
    assert list(json.loads(text)) == sorted(doc)
    assert doc["schema_version"] == cli.SCHEMA_VERSION


def test_text_table_has_five_bound_columns():
    doc = cli.run_scenario(cli.parse_config(MINIMAL))
    lines = cli.report_text(doc).splitlines()
    header = next(line for line in lines if line.strip().startswith("bound"))
    assert header.split()[1:] == ["oracle", "gramian", "zz", "freq", "riesz"]


def test_oversampled_delta_scenario():
    cfg = cli.parse_config((SCENARIOS / "z8_oversampled_delta.json").read_text())
    doc = cli.run_scenario(cfg)
    assert doc["summary"]["ok"] and doc["summary"]["failed"] == 0
    # the delta window leaves odd points uncovered: a Bessel system only
    assert doc["frame"]["is_frame"] is False
    assert doc["checks"]["critical"]["status"] == "skip"
    assert doc["checks"]["wexler_raz"]["status"] == "skip"


def test_critical_zak_zero_scenario():
    doc = cli.run_scenario(cli.parse_config((SCENARIOS / "z8_critical_zak_zero.json").read_text()))
    assert doc["frame"]["A"] == 0 and not doc["frame"]["is_frame"]
    assert all(b["A"] == 0 for b in doc["bounds"].values())
    assert doc["checks"]["critical"]["status"] == "pass"
    assert doc["checks"]["duality"]["status"] == "pass"


def test_parseval_scenario():
    doc = cli.run_scenario(cli.parse_config((SCENARIOS / "z12_parseval_bspline.json").read_text()))
    assert doc["frame"]["is_parseval"] and doc["summary"]["ok"]


def test_deterministic_json(tmp_path):
    cfg = str(SCENARIOS / "z8_oversampled_random.json")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["analyze", "--config", cfg, "--json-out", str(a)]) == 0
    assert cli.main(["analyze", "--config", cfg, "--json-out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "timing" not in json.loads(a.read_text())


def test_timing_opt_in(tmp_path, capsys):
    out = tmp_path / "t.json"
    cli.main(["analyze", "--config", str(SCENARIOS / "z8_minimal.json"), "--json-out", str(out), "--timing"])
    assert "timing" in json.loads(out.read_text())


def test_exit_codes(tmp_path, capsys):
    good = write(tmp_path, MINIMAL)
    assert cli.main(["analyze", "--config", good]) == 0
    # an impossibly strict tolerance makes residual checks fail
    assert cli.main(["analyze", "--config", str(SCENARIOS / "z8_oversampled_random.json"),
                     "--tolerance", "1e-300"]) == 1
    bad = write(tmp_path, base(window={"kind": "explicit", "values": {"re": [1]}}), "bad.json")
    assert cli.main(["analyze", "--config", bad]) == 2
    assert "window.values" in capsys.readouterr().err
    assert cli.main(["analyze", "--config", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["analyze", "--config", good, "--json-out", str(tmp_path / "no" / "x.json")]) == 2
    assert cli.main(["analyze", "--config", good, "--tolerance", "0"]) == 2
    assert cli.main(["bogus"]) == 2


def test_order_cap_env(tmp_path, monkeypatch):
    cfg = write(tmp_path, MINIMAL)
    monkeypatch.setenv("GABORLAB_MAX_ORDER", "4")
    assert cli.main(["analyze", "--config", cfg]) == 2
    big = write(tmp_path, base(group=[64, 128], **{"lambda": {"generators": [[0, 1]]},
                                                  "gamma": {"generators": [[1, 0]]}}), "big.json")
    monkeypatch.setenv("GABORLAB_MAX_ORDER", "4096")
    assert cli.main(["analyze", "--config", big]) == 2


def test_verify_subset(tmp_path, capsys):
    assert cli.main(["verify", "--config", write(tmp_path, MINIMAL), "--check", "walnut", "zz"]) == 0
    out = capsys.readouterr().out
    assert "walnut" in out and "janssen" not in out


def test_dual_command(tmp_path, capsys):
    assert cli.main(["dual", "--config", str(SCENARIOS / "z8_critical_frame.json")]) == 0
    vec = json.loads(capsys.readouterr().out)
    assert vec["re"][:3] == pytest.approx([0.5, 0.5, 0.0])
    assert cli.main(["dual", "--config", str(SCENARIOS / "z8_critical_zak_zero.json")]) == 1


def test_scan(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    assert cli.main(["scan", "--group", "2,4", "--csv-out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["lambda_order", "gamma_order", "p", "q", "A", "B", "frame"]
    assert len(rows) == 64
    for r in rows:
        if int(r["lambda_order"]) * int(r["gamma_order"]) < 8:
            assert r["frame"] == "0"
    assert cli.main(["scan", "--group", "8", "--max-subgroups", "2", "--csv-out", str(out)]) == 0
    assert len(list(csv.DictReader(out.open()))) == 4
    assert cli.main(["scan", "--group", "x", "--csv-out", str(out)]) == 2


def test_dump_fibers():
    doc = cli.run_scenario(cli.parse_config(MINIMAL), dump_fibers=True)
    cli.validate_report(doc)
    assert len(doc["spectral_fields"]["zz"]["per_fiber"]) == doc["spectral_fields"]["zz"]["fibers"]


def test_explicit_and_dual_window():
    doc = base(window={"kind": "explicit", "values": {"re": [1, 1, 0, 0, 0, 0, 0, 0]}},
               dual_window={"kind": "explicit", "values": {"re": [0.5, 0.5, 0, 0, 0, 0, 0, 0]}})
    rep = cli.run_scenario(cli.parse_config(json.dumps(doc)))
    assert rep["checks"]["wexler_raz"]["values"]["is_dual_pair"] is True
    doc["dual_window"] = {"kind": "constant", "value": 1.0}
    rep = cli.run_scenario(cli.parse_config(json.dumps(doc)))
    wr = rep["checks"]["wexler_raz"]
    assert wr["status"] == "pass" and wr["values"]["is_dual_pair"] is False


def test_shipped_schemas_match_package_copy():
    for name in ("scenario", "report"):
        pkg = json.loads((ROOT / "src" / "gaborlab" / "schemas" / f"{name}.schema.json").read_text())
        assert json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text()) == pkg
        assert pkg == cli.load_schema(name)


def test_all_demo_scenarios_parse():
    for p in sorted(SCENARIOS.glob("*.json")):
        cli.parse_config(p.read_text())
