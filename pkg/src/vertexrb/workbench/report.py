"""Running a WorkbenchConfig and assembling the RunReport."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from ..kernel import CheckReport, _json, aggregate
from .config import WorkbenchConfig
from .registry import CHECKS, Context, build_algebra, build_operators

__all__ = ["RunReport", "run_suite", "SCHEMA_VERSION", "EXIT_CODES"]

SCHEMA_VERSION = "1.0"
EXIT_CODES = {"pass": 0, "fail": 1, "inconclusive": 2}


@dataclass
class RunReport:
    """``body`` is a pure function of config and seed; wall-clock data lives in ``header``."""

    body: dict
    header: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return self.body["verdict"]

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    @property
    def entries(self) -> list[dict]:
        return [e for r in self.body["runs"] for e in r["checks"]]

    def body_json(self) -> str:
        return json.dumps(self.body, indent=2, sort_keys=True)

    def to_json(self) -> str:
        return json.dumps({"header": self.header, "body": self.body}, indent=2, sort_keys=True)

    def human(self, verbosity: int = 1) -> str:
        lines = []
        title = self.body["config"].get("title")
        if title:
            lines.append(title)
        for run in self.body["runs"]:
            lines.append(f"== {run['title'] or run['algebra']}")
            for e in run["checks"]:
                exp = f" (expected {e['expected']})" if e.get("expected") else ""
                lines.append(f"[{e['outcome'].upper()}] {e['label']}: {e['verdict']}{exp}")
                if verbosity > 0 and "summary" in e:
                    lines.extend("    " + s for s in e["summary"].splitlines())
                if "error" in e:
                    lines.append(f"    {e['error']['type']}: {e['error']['message']}")
        lines.append(f"aggregate: {self.verdict}")
        return "\n".join(lines)


def _label(c: dict) -> str:
    if "label" in c:
        return c["label"]
    return c["name"] + (f"[{c['operator']}]" if "operator" in c else "")


def _outcome(verdict: str, expect: str | None) -> str:
    """With an expectation, a matching verdict is a pass and anything else a fail."""
    if expect is None:
        return verdict
    return "pass" if verdict == expect else "fail"


def _run_check(ctx: Context, c: dict, verbosity: int) -> tuple[dict, float]:
    t0 = time.perf_counter()
    expect = c.get("expect")
    entry = {"label": _label(c), "check": c["name"]}
    if "operator" in c:
        entry["operator"] = c["operator"]
    if expect:
        entry["expected"] = expect
    try:
        rep: CheckReport = CHECKS[c["name"]].run(ctx)
        entry["verdict"] = rep.verdict
        entry["outcome"] = _outcome(rep.verdict, expect)
        entry["report"] = rep.to_dict()
        entry["summary"] = rep.summary(depth=verbosity)
    except Exception as e:  # surfaced per check; the suite continues
        name = type(e).__name__
        entry["verdict"] = f"raises:{name}"
        entry["error"] = {"type": name, "message": str(e)}
        entry["outcome"] = "pass" if expect == f"raises:{name}" else "fail"
    return entry, time.perf_counter() - t0


def run_suite(cfg: WorkbenchConfig, *, cutoff: int | None = None, kmax: int | None = None,
              jobs: int = 1, seed: int | None = None) -> RunReport:
    seed = cfg.seed if seed is None else seed
    verbosity = cfg.output.get("verbosity", 1)
    runs, timings = [], []
    started = datetime.now(timezone.utc).isoformat()
    for r in cfg.runs:
        t0 = time.perf_counter()
        entries, times = [], {}
        try:
            V = build_algebra(r.algebra, cutoff)
            ops = build_operators(V, r.operators)
        except Exception as e:
            entry = {"label": "setup", "check": "setup", "verdict": f"raises:{type(e).__name__}",
                     "outcome": "fail", "error": {"type": type(e).__name__, "message": str(e)}}
            runs.append({"title": r.title, "algebra": r.algebra["name"], "checks": [entry], "verdict": "fail"})
            timings.append({"setup": time.perf_counter() - t0})
            continue
        for c in r.checks:
            params = dict(c)
            ctx = Context(V, ops, params, seed=seed, kmax=kmax, jobs=jobs)
            entry, dt = _run_check(ctx, c, verbosity)
            entries.append(entry)
            times[entry["label"]] = round(dt, 4)
        runs.append({"title": r.title, "algebra": V.name, "checks": entries,
                     "verdict": aggregate(e["outcome"] for e in entries)})
        times["setup+checks"] = round(time.perf_counter() - t0, 4)
        timings.append(times)
    overrides = {k: v for k, v in (("cutoff", cutoff), ("kmax", kmax)) if v is not None}
    body = {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.echo(),
        "overrides": overrides,
        "seed": seed,
        "runs": runs,
        "verdict": aggregate(r["verdict"] for r in runs),
    }
    header = {"started": started, "jobs": jobs, "timings": timings}
    return RunReport(_json(body), header)
