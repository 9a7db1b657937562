"""Scenario files, their execution, and machine-readable reports.

A scenario is a JSON document (conventionally ``*.scn``) with a schema
version, a kind, a payload and a block of expected assertions.  Reports are
JSON with sorted keys; integers and exact fractions travel as strings, never
as floating point.  A "flagged" status is reserved for the documented
discrepancies between stated and recomputed values and can never mask a
computation error: the recomputation must land exactly on the documented
engine value for the flag to stand.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from . import __version__
from .configurations import (
    blown_up_fiber,
    classify_minimally_elliptic,
    config_from_json,
    fundamental_cycle,
    is_negative_definite,
    isomorphic,
    match_catalog,
    recognize_kodaira_fiber,
)
from .pipelines import (
    CheckRecord,
    EnSpec,
    PipelineResult,
    ZwSpec,
    _family_checks,
    _Recorder,
    run_en_pipeline,
    run_riemann_hurwitz_check,
    run_section_class_check,
    run_zw_pipeline,
)
from .planecurves import (
    MarkedPoint,
    an_type_at,
    detect_33_point,
    form_from_json,
    germ,
    linear_form,
    mult_sequence,
    restrict_to_line,
    stabilizer_dim,
)
from .rationals import frac, rat_str
from .sextics import family

SCHEMA_VERSION = "1"
KINDS = ("pipeline", "config-check", "plane-check", "dims-check")
CORPUS_ENV = "UNIMODAL_CORPUS"


class ScenarioError(ValueError):
    """Malformed scenario input; maps to exit code 2."""


@dataclass(frozen=True)
class ExpectedEntry:
    value: str
    claimed: str | None = None
    flag: str | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    payload: Mapping
    expected: tuple[tuple[str, ExpectedEntry], ...]


@dataclass(frozen=True)
class Assertion:
    name: str
    computed: str
    expected: str
    status: str
    anchor: str
    flag: str | None = None


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    kind: str
    assertions: tuple[Assertion, ...]

    def count(self, status: str) -> int:
        return sum(1 for a in self.assertions if a.status == status)

    @property
    def exit_code(self) -> int:
        return 1 if self.count("fail") else 0


@dataclass(frozen=True)
class Report:
    engine: str
    schema: str
    scenarios: tuple[ScenarioReport, ...]

    def count(self, status: str) -> int:
        return sum(s.count(status) for s in self.scenarios)

    @property
    def flags(self) -> tuple[str, ...]:
        kinds = {
            a.flag
            for s in self.scenarios
            for a in s.assertions
            if a.status == "flagged" and a.flag
        }
        return tuple(sorted(kinds))

    @property
    def exit_code(self) -> int:
        return max((s.exit_code for s in self.scenarios), default=0)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_scenario(text: str, source: str = "<memory>") -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioError(f"{source}:{err.lineno}:{err.colno}: {err.msg}") from None
    if not isinstance(data, dict):
        raise ScenarioError(f"{source}: a scenario is a JSON object")
    schema = data.get("schema")
    if schema != SCHEMA_VERSION:
        raise ScenarioError(f"{source}: unsupported schema {schema!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ScenarioError(f"{source}: unknown kind {kind!r}")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError(f"{source}: a scenario needs a name")
    payload = data.get("payload")
    if not isinstance(payload, dict):
        raise ScenarioError(f"{source}: payload must be an object")
    expected_block = data.get("expected", {})
    if not isinstance(expected_block, dict):
        raise ScenarioError(f"{source}: expected block must be an object")
    expected = []
    for key in sorted(expected_block):
        entry = expected_block[key]
        if not isinstance(entry, dict) or "value" not in entry:
            raise ScenarioError(f"{source}: expected entry {key!r} needs a value")
        expected.append(
            (key, ExpectedEntry(str(entry["value"]), entry.get("claimed"), entry.get("flag")))
        )
    return Scenario(name, kind, payload, tuple(expected))


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ScenarioError(f"{path}: {err.strerror or err}") from None
    return parse_scenario(text, str(path))


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def _parse_point(coords) -> MarkedPoint:
    if not isinstance(coords, (list, tuple)) or len(coords) != 3:
        raise ScenarioError("a point is a list of three rationals")
    return MarkedPoint.of(*[frac(str(c)) for c in coords])


def _parse_germ(data) -> dict:
    terms = {}
    for key, value in data.get("terms", {}).items():
        a, b = (int(part) for part in key.split(","))
        terms[(a, b)] = frac(value)
    return germ(terms)


def _run_pipeline_payload(payload: Mapping) -> PipelineResult:
    construction = payload.get("construction")
    if construction == "en":
        config = config_from_json(payload["config"]) if "config" in payload else None
        branch_germ = None
        if "branch_germ" in payload:
            block = payload["branch_germ"]
            shape = _parse_germ(block["germ"])
            decomposition = None
            if "decomposition" in block:
                first, second = block["decomposition"]
                decomposition = (_parse_germ(first), _parse_germ(second))
            branch_germ = (shape, decomposition)
        spec = EnSpec(
            singularity=str(payload.get("singularity")),
            profile=int(payload.get("profile", 6)),
            fiber_variant=payload.get("fiber_variant"),
            config=config,
            germ_checks=bool(payload.get("germ_checks", True)),
            branch_germ=branch_germ,
        )
        return run_en_pipeline(spec)
    if construction == "zw":
        config = config_from_json(payload["config"]) if "config" in payload else None
        spec = ZwSpec(
            singularity=str(payload.get("singularity")),
            family_case=payload.get("family_case", 1),
            config=config,
        )
        return run_zw_pipeline(spec)
    if construction == "section-class":
        return run_section_class_check()
    if construction == "riemann-hurwitz":
        return run_riemann_hurwitz_check()
    raise ScenarioError(f"unknown construction {construction!r}")


def _config_check_values(payload: Mapping) -> dict[str, str]:
    config = config_from_json(payload["config"])
    values: dict[str, str] = {}
    nd = is_negative_definite(config)
    values["negative-definite"] = "true" if nd else "false"
    if nd:
        cycle = fundamental_cycle(config)
        values["cycle-coefficients"] = ",".join(str(c) for c in cycle.coeffs)
        values["cycle-self-intersection"] = rat_str(cycle.self_int)
        values["cycle-canonical-degree"] = rat_str(cycle.canonical_degree)
        values["cycle-genus"] = rat_str(cycle.pa)
        classified = classify_minimally_elliptic(config)
        if classified.kind == "minimally-elliptic":
            values["classification"] = f"minimally-elliptic-degree-{classified.degree}"
        else:
            values["classification"] = classified.kind
    entry = match_catalog(config)
    values["catalog-match"] = entry.label if entry else "none"
    values["kodaira-fiber"] = recognize_kodaira_fiber(config) or "none"
    derived = payload.get("derived_from")
    if derived:
        rebuilt = blown_up_fiber(str(derived["fiber"]), tuple(int(k) for k in derived["blow_ups"]))
        values["blown-up-fiber-match"] = "match" if isomorphic(rebuilt, config) else "different"
    return values


def _plane_check_values(payload: Mapping) -> dict[str, str]:
    values: dict[str, str] = {}
    for check in payload.get("checks", []):
        name = check["name"]
        op = check["op"]
        if op == "restrict":
            form = form_from_json(check["form"])
            line = form_from_json(check["line"])
            points = tuple(_parse_point(p) for p in check.get("points", []))
            pattern = restrict_to_line(form, line, points)
            if pattern.contained:
                values[name] = "contained"
            else:
                orders = ",".join(str(o) for o in pattern.orders)
                values[name] = f"orders={orders};residual={pattern.residual_degree}"
        elif op == "an-type":
            verdict = _an_verdict(check)
            values[name] = _an_label(verdict)
        elif op == "detect-33":
            shape = _parse_germ(check["germ"])
            decomposition = None
            if "decomposition" in check:
                first, second = check["decomposition"]
                decomposition = (_parse_germ(first), _parse_germ(second))
            verdict = detect_33_point(shape, decomposition=decomposition)
            parts = [
                "true" if verdict.is_33 else "false",
                str(verdict.profile) if verdict.profile else "none",
            ]
            if verdict.local_intersection is not None:
                parts.append(str(verdict.local_intersection))
                parts.append(_an_label(verdict.residual))
            values[name] = ";".join(parts)
        elif op == "mult-tree":
            shape = _parse_germ(check["germ"])
            values[name] = _tree_label(mult_sequence(shape))
        elif op == "stabilizer-dim":
            points = tuple(_parse_point(p) for p in check.get("points", []))
            lines = tuple(
                linear_form(*[frac(str(c)) for c in coeffs]) for coeffs in check.get("lines", [])
            )
            values[name] = str(stabilizer_dim(points, lines))
        else:
            raise ScenarioError(f"unknown plane-check op {op!r}")
    return values


def _an_verdict(check: Mapping):
    if "germ" in check:
        return an_type_at(_parse_germ(check["germ"]), candidate=int(check.get("candidate", 6)))
    form = form_from_json(check["form"])
    point = _parse_point(check["point"])
    return an_type_at(form, point, candidate=int(check.get("candidate", 6)))


def _an_label(verdict) -> str:
    if verdict is None:
        return "none"
    if verdict.kind == "A":
        return f"A{verdict.n}"
    return verdict.kind


def _tree_label(node) -> str:
    inner = ",".join(_tree_label(child) for child in node.children)
    grouped = "".join(f"{{{d}:{m}}}" for d, m in node.grouped)
    if inner or grouped:
        return f"{node.multiplicity}({inner}{grouped})"
    return str(node.multiplicity)


def _dims_check_result(payload: Mapping) -> PipelineResult:
    recorder = _Recorder()
    fam = family(str(payload["family"]))
    _family_checks(recorder, fam)
    recorder.note("stabilizer-dim", stabilizer_dim(fam.marked_points, fam.marked_lines))
    recorder.note("affine-parameters", fam.affine_parameter_count())
    return recorder.result(fam.family_id, ())


def run_scenario(scenario: Scenario) -> ScenarioReport:
    """Execute one scenario and merge its pins with the engine records."""
    records: tuple[CheckRecord, ...] = ()
    values: dict[str, str] = {}
    anchor_default = f"{scenario.kind} value"
    try:
        if scenario.kind == "pipeline":
            result = _run_pipeline_payload(scenario.payload)
            records = result.checks
            values = {r.name: r.computed for r in records}
            values.update({k: v for k, v in result.diagnostics})
        elif scenario.kind == "config-check":
            values = _config_check_values(scenario.payload)
        elif scenario.kind == "plane-check":
            values = _plane_check_values(scenario.payload)
        elif scenario.kind == "dims-check":
            result = _dims_check_result(scenario.payload)
            records = result.checks
            values = {r.name: r.computed for r in records}
            values.update({k: v for k, v in result.diagnostics})
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as err:
        raise ScenarioError(f"scenario {scenario.name!r}: malformed payload: {err}") from None

    record_map = {r.name: r for r in records}
    assertions: list[Assertion] = []
    pinned = set()
    for name, entry in scenario.expected:
        pinned.add(name)
        record = record_map.get(name)
        if record is not None:
            agreed = record.computed == entry.value and record.status != "fail"
            status = record.status if agreed else "fail"
            if record.status == "fail":
                shown = record.expected  # surface the engine's own comparison
            elif entry.claimed is not None:
                shown = entry.claimed
            else:
                shown = entry.value
            assertions.append(
                Assertion(name, record.computed, shown, status, record.anchor, record.flag or entry.flag)
            )
        elif name in values:
            computed = values[name]
            if computed == entry.value:
                if entry.flag and entry.claimed is not None and entry.claimed != entry.value:
                    status = "flagged"
                else:
                    status = "pass"
            else:
                status = "fail"
            shown = entry.claimed if entry.claimed is not None else entry.value
            assertions.append(Assertion(name, computed, shown, status, anchor_default, entry.flag))
        else:
            assertions.append(
                Assertion(name, "missing", entry.value, "fail", anchor_default, entry.flag)
            )
    for record in sorted(records, key=lambda r: r.name):
        if record.name in pinned or record.status == "pass":
            continue
        assertions.append(
            Assertion(
                record.name, record.computed, record.expected, record.status, record.anchor, record.flag
            )
        )
    return ScenarioReport(scenario.name, scenario.kind, tuple(assertions))


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


def corpus_dir(override: str | Path | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CORPUS_ENV)
    if env:
        return Path(env)
    return Path(resources.files("unimodal") / "corpus")


def run_corpus(directory: str | Path | None = None, jobs: int = 1) -> Report:
    """Run every bundled scenario; output order follows sorted file names."""
    base = corpus_dir(directory)
    paths = sorted(base.glob("*.scn"))
    scenarios = [load_scenario(p) for p in paths]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = tuple(pool.map(run_scenario, scenarios))
    else:
        reports = tuple(run_scenario(s) for s in scenarios)
    return Report(f"unimodal {__version__}", SCHEMA_VERSION, reports)


def report_for(scenario: Scenario) -> Report:
    return Report(f"unimodal {__version__}", SCHEMA_VERSION, (run_scenario(scenario),))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def report_to_json(report: Report) -> dict:
    return {
        "engine": report.engine,
        "schema": report.schema,
        "scenarios": [
            {
                "name": s.name,
                "kind": s.kind,
                "assertions": [
                    {
                        "name": a.name,
                        "computed": a.computed,
                        "expected": a.expected,
                        "status": a.status,
                        "anchor": a.anchor,
                        "flag": a.flag,
                    }
                    for a in s.assertions
                ],
                "counts": {
                    "pass": s.count("pass"),
                    "fail": s.count("fail"),
                    "flagged": s.count("flagged"),
                },
            }
            for s in report.scenarios
        ],
        "summary": {
            "scenarios": len(report.scenarios),
            "pass": report.count("pass"),
            "fail": report.count("fail"),
            "flagged": report.count("flagged"),
            "flags": list(report.flags),
            "exit_code": report.exit_code,
        },
    }


def emit_report(report: Report) -> str:
    return json.dumps(report_to_json(report), sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> Report:
    data = json.loads(text)
    scenarios = tuple(
        ScenarioReport(
            s["name"],
            s["kind"],
            tuple(
                Assertion(
                    a["name"], a["computed"], a["expected"], a["status"], a["anchor"], a.get("flag")
                )
                for a in s["assertions"]
            ),
        )
        for s in data["scenarios"]
    )
    return Report(data["engine"], data["schema"], scenarios)


def render_text(report: Report) -> str:
    lines = [f"{report.engine} (schema {report.schema})"]
    for s in report.scenarios:
        lines.append(f"scenario {s.name} [{s.kind}]")
        for a in s.assertions:
            mark = {"pass": "PASS", "fail": "FAIL", "flagged": "FLAG"}[a.status]
            if a.status == "flagged":
                lines.append(
                    f"  {mark} {a.name}: computed {a.computed}, stated {a.expected}"
                    f" ({a.flag})"
                )
            elif a.status == "fail":
                lines.append(f"  {mark} {a.name}: computed {a.computed}, expected {a.expected}")
            else:
                lines.append(f"  {mark} {a.name}: {a.computed}")
    flags = ", ".join(report.flags) if report.flags else "none"
    lines.append(
        f"summary: {len(report.scenarios)} scenario(s), {report.count('pass')} pass,"
        f" {report.count('fail')} fail, {report.count('flagged')} flagged"
        f" (flags: {flags})"
    )
    return "\n".join(lines) + "\n"
