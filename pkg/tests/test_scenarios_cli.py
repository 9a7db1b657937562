from __future__ import annotations

import json
from pathlib import Path

import pytest

from unimodal.cli import main
from unimodal.scenarios import (
    Report,
    ScenarioError,
    corpus_dir,
    emit_report,
    load_scenario,
    parse_report,
    parse_scenario,
    report_for,
    run_corpus,
    run_scenario,
)

CORPUS = Path(__file__).parent.parent / "src" / "unimodal" / "corpus"


def scn(kind: str, payload: dict, expected: dict, name: str = "t") -> str:
    return json.dumps(
        {"schema": "1", "kind": kind, "name": name, "payload": payload, "expected": expected}
    )


def test_parse_rejects_bad_input():
    with pytest.raises(ScenarioError):
        parse_scenario("{not json")
    with pytest.raises(ScenarioError):
        parse_scenario(json.dumps({"schema": "0", "kind": "pipeline", "name": "x", "payload": {}}))
    with pytest.raises(ScenarioError):
        parse_scenario(json.dumps({"schema": "1", "kind": "mystery", "name": "x", "payload": {}}))
    with pytest.raises(ScenarioError):
        parse_scenario(json.dumps({"schema": "1", "kind": "pipeline", "payload": {}}))
    with pytest.raises(ScenarioError):
        parse_scenario(
            json.dumps(
                {
                    "schema": "1",
                    "kind": "pipeline",
                    "name": "x",
                    "payload": {},
                    "expected": {"a": {}},
                }
            )
        )


def test_corpus_has_27_scenarios():
    assert len(sorted(CORPUS.glob("*.scn"))) == 27


def test_corpus_clean_with_three_flag_kinds():
    report = run_corpus(CORPUS)
    assert report.count("fail") == 0
    assert report.exit_code == 0
    assert report.flags == ("nef-bundle-en-values", "noether-c2", "z13-case2-count")


def test_corpus_deterministic_and_parallel_identical():
    serial = emit_report(run_corpus(CORPUS))
    again = emit_report(run_corpus(CORPUS))
    parallel = emit_report(run_corpus(CORPUS, jobs=4))
    assert serial == again == parallel


def test_report_round_trip():
    report = run_corpus(CORPUS)
    assert parse_report(emit_report(report)) == report


def test_e12_scenario_counts():
    scenario = load_scenario(CORPUS / "e12.scn")
    result = run_scenario(scenario)
    assert result.count("pass") == 14
    assert result.count("fail") == 0
    assert result.count("flagged") == 1  # the Euler-number discrepancy surfaces
    assert result.exit_code == 0


def test_scenario_missing_assertion_fails():
    scenario = parse_scenario(
        scn(
            "pipeline",
            {"construction": "section-class"},
            {"no-such-value": {"value": "1"}},
        )
    )
    result = run_scenario(scenario)
    assert result.exit_code == 1
    assert result.assertions[0].computed == "missing"


def test_scenario_value_regression_fails():
    scenario = parse_scenario(
        scn(
            "pipeline",
            {"construction": "section-class"},
            {"section-class-coefficient-genus-0": {"value": "7"}},
        )
    )
    assert run_scenario(scenario).exit_code == 1


def test_config_check_scenario():
    scenario = parse_scenario(
        scn(
            "config-check",
            {
                "config": {
                    "components": [
                        {"name": "E1", "self_int": "-3", "pa": "0", "sing": None},
                        {"name": "E2", "self_int": "-2", "pa": "0", "sing": None},
                    ],
                    "contacts": [{"pair": ["E1", "E2"], "mult": "2", "tangential": True}],
                    "concurrent": [],
                },
                "derived_from": {"fiber": "III", "blow_ups": [1, 0]},
            },
            {
                "negative-definite": {"value": "true"},
                "cycle-self-intersection": {"value": "-1"},
                "cycle-canonical-degree": {"value": "1"},
                "classification": {"value": "minimally-elliptic-degree-1"},
                "catalog-match": {"value": "E13"},
                "blown-up-fiber-match": {"value": "match"},
            },
        )
    )
    result = run_scenario(scenario)
    assert result.exit_code == 0
    assert result.count("pass") == 6


def test_plane_check_scenario():
    scenario = parse_scenario(
        scn(
            "plane-check",
            {
                "checks": [
                    {
                        "name": "cusp-at-origin",
                        "op": "an-type",
                        "germ": {"terms": {"2,0": "1", "0,3": "1"}},
                        "candidate": 2,
                    },
                    {
                        "name": "triple-with-triple",
                        "op": "detect-33",
                        "germ": {"terms": {"3,0": "1", "2,2": "1", "0,6": "1"}},
                    },
                    {
                        "name": "two-point-stabilizer",
                        "op": "stabilizer-dim",
                        "points": [["1", "0", "0"], ["1", "1", "0"]],
                    },
                    {
                        "name": "a4-tree",
                        "op": "mult-tree",
                        "germ": {"terms": {"2,0": "1", "0,5": "1"}},
                    },
                    {
                        "name": "sextic-restriction",
                        "op": "restrict",
                        "form": {"degree": 6, "coeffs": {"0,6,0": "1"}},
                        "line": {"degree": 1, "coeffs": {"0,0,1": "1"}},
                        "points": [["1", "0", "0"]],
                    },
                ]
            },
            {
                "cusp-at-origin": {"value": "A2"},
                "triple-with-triple": {"value": "true;6"},
                "two-point-stabilizer": {"value": "4"},
                "a4-tree": {"value": "2(2(1))"},
                "sextic-restriction": {"value": "orders=6;residual=0"},
            },
        )
    )
    result = run_scenario(scenario)
    assert result.exit_code == 0, [a for a in result.assertions if a.status != "pass"]


def test_dims_check_scenario_flag():
    scenario = load_scenario(CORPUS / "dims-z13-case2.scn")
    result = run_scenario(scenario)
    assert result.exit_code == 0
    flagged = [a for a in result.assertions if a.status == "flagged"]
    assert [a.name for a in flagged] == ["family-orbit-count"]
    assert flagged[0].computed == "16"
    assert flagged[0].expected == "15"


def test_cli_verify_exit_codes(tmp_path, capsys):
    good = main(["verify", str(CORPUS / "e12.scn")])
    assert good == 0
    capsys.readouterr()

    data = json.loads((CORPUS / "e12.scn").read_text())
    data["payload"]["config"]["components"][0]["self_int"] = "-2"
    bad = tmp_path / "bad.scn"
    bad.write_text(json.dumps(data))
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "exceptional-adjunction-integral" in out

    trunc = tmp_path / "trunc.scn"
    trunc.write_text((CORPUS / "e12.scn").read_text()[:50])
    assert main(["verify", str(trunc)]) == 2

    missing = tmp_path / "missing.scn"
    assert main(["verify", str(missing)]) == 2


def test_cli_corpus_json(capsys):
    assert main(["corpus", "--report=json", "--jobs=2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["scenarios"] == 27
    assert payload["summary"]["fail"] == 0
    assert payload["summary"]["flags"] == ["nef-bundle-en-values", "noether-c2", "z13-case2-count"]


def test_cli_corpus_env_override(tmp_path, monkeypatch, capsys):
    sub = tmp_path / "mini"
    sub.mkdir()
    (sub / "e12.scn").write_text((CORPUS / "e12.scn").read_text())
    monkeypatch.setenv("UNIMODAL_CORPUS", str(sub))
    assert corpus_dir() == sub
    assert main(["corpus", "--report=json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["scenarios"] == 1


def test_cli_corpus_dir_flag(tmp_path, capsys):
    sub = tmp_path / "two"
    sub.mkdir()
    for name in ("e12.scn", "section-class.scn"):
        (sub / name).write_text((CORPUS / name).read_text())
    assert main(["corpus", "--dir", str(sub), "--report=json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["scenarios"] == 2


def test_cli_catalog(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "E12" in out and "W13" in out and "A8" in out
    assert main(["catalog", "--report=json"]) == 0
    data = json.loads(capsys.readouterr().out)
    labels = [entry["label"] for entry in data]
    assert labels[:8] == ["E12", "E13", "E14", "Z11", "Z12", "Z13", "W12", "W13"]
    for entry in data:
        assert entry["recomputed"]["self_int"] == entry["self_int"]
        assert entry["recomputed"]["canonical_degree"] == entry["canonical_degree"]


def test_cli_dims(capsys):
    assert main(["dims"]) == 0
    out = capsys.readouterr().out
    assert "z13-case2" in out and "variant" in out
    assert main(["dims", "--report=json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 10
    flagged = [r for r in rows if r["family"] == "z13-case2"][0]
    assert flagged["computed"] == "16" and flagged["variant"] == "15"


def test_scenario_semantic_payload_error_is_exit_2(tmp_path):
    text = scn("pipeline", {"construction": "en", "singularity": "E12", "fiber_variant": "I2"}, {})
    path = tmp_path / "illegal.scn"
    path.write_text(text)
    assert main(["verify", str(path)]) == 2


def test_report_render_text_mentions_flags():
    report = report_for(load_scenario(CORPUS / "e13-i2.scn"))
    from unimodal.scenarios import render_text

    text = render_text(report)
    assert "FLAG" in text
    assert "nef-bundle-en-values" in text
