"""Regenerate the golden pipeline audits under tests/goldens/.

One golden per singularity type, pinning every check record and diagnostic of
a designated pipeline run.  Regenerate only after re-deriving the values by
hand:  python3 tools/build_goldens.py
"""

from __future__ import annotations

import json
from pathlib import Path

from unimodal.pipelines import EnSpec, ZwSpec, run_en_pipeline, run_zw_pipeline

OUT = Path(__file__).resolve().parent.parent / "tests" / "goldens"

RUNS = {
    "e12": lambda: run_en_pipeline(EnSpec("E12", profile=6)),
    "e13": lambda: run_en_pipeline(EnSpec("E13", profile=6, fiber_variant="I2")),
    "e14": lambda: run_en_pipeline(EnSpec("E14", profile=6, fiber_variant="I3")),
    "z11": lambda: run_zw_pipeline(ZwSpec("Z11", family_case=1)),
    "z12": lambda: run_zw_pipeline(ZwSpec("Z12", family_case=1)),
    "z13": lambda: run_zw_pipeline(ZwSpec("Z13", family_case=2)),
    "w12": lambda: run_zw_pipeline(ZwSpec("W12", family_case=1)),
    "w13": lambda: run_zw_pipeline(ZwSpec("W13", family_case=1)),
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, runner in RUNS.items():
        result = runner()
        data = {
            "label": result.label,
            "checks": [
                {
                    "name": r.name,
                    "computed": r.computed,
                    "expected": r.expected,
                    "status": r.status,
                    "flag": r.flag,
                }
                for r in result.checks
            ],
            "diagnostics": {k: v for k, v in result.diagnostics},
        }
        (OUT / f"{name}.json").write_text(
            json.dumps(data, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    print(f"wrote {len(RUNS)} goldens to {OUT}")


if __name__ == "__main__":
    main()
