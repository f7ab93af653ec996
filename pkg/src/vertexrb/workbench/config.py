"""Workbench configuration: YAML text -> validated WorkbenchConfig.

Scalars that must be exact (levels, weights, table coefficients) are accepted
as integers or as strings like "3/2"; floats are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import yaml

__all__ = ["ParseError", "ValidationError", "WorkbenchConfig", "RunConfig", "parse_config", "load_config",
           "exact", "ALGEBRAS", "CHECK_KEYS"]


class ParseError(ValueError):
    """Malformed document; carries 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line, self.column = line, column


class ValidationError(ValueError):
    """Well-formed document with a bad key or value; ``key`` is a dotted path."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


ALGEBRAS = {
    "divided-power": {"cutoff"},
    "polynomial": {"cutoff"},
    "dual-divided-power": {"cutoff"},
    "heisenberg": {"rank", "level", "gram", "cutoff"},
    "lattice": {"N", "cutoff"},
    "tensor": {"left", "window"},
}

OPERATOR_KINDS = {"rbo", "derivation", "dendriform"}
OPERATOR_KEYS = {"kind", "constructor", "weight", "of", "split", "direction", "derivation", "table",
                 "otherwise", "degree", "scalar", "right", "from", "generator", "mode", "voa"}
CHECK_KEYS = {"name", "label", "operator", "triples", "pairs", "modes", "window", "kmax", "sample",
              "expect", "weight", "other"}
OUTPUT_KEYS = {"path", "format", "verbosity"}
TOP_KEYS = {"algebra", "operators", "checks", "output", "seed", "runs", "title"}
RUN_KEYS = {"algebra", "operators", "checks", "title"}
EXPECT = re.compile(r"^(pass|fail|inconclusive|raises:[A-Za-z_]\w*)$")


def exact(x: Any, key: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValidationError(key, f"expected an exact rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(key, f"expected an integer or a rational like '3/2', got {x!r}")


def _int(x: Any, key: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(key, f"expected an integer, got {x!r}")
    return x


def _keys(d: Any, allowed: set, key: str) -> dict:
    if not isinstance(d, dict):
        raise ValidationError(key, f"expected a mapping, got {type(d).__name__}")
    for k in d:
        if k not in allowed:
            raise ValidationError(f"{key}.{k}" if key else str(k), f"unknown key (allowed: {', '.join(sorted(allowed))})")
    return d


@dataclass
class RunConfig:
    """One algebra with its operators and checks."""

    algebra: dict
    operators: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    title: str = ""


@dataclass
class WorkbenchConfig:
    runs: list[RunConfig]
    output: dict = field(default_factory=lambda: {"format": "structured", "verbosity": 1})
    seed: int = 0
    title: str = ""
    source: Any = None

    def echo(self) -> dict:
        """The normalized config as it goes into the report (rationals as strings)."""
        from ..kernel import _json
        return _json({"title": self.title, "seed": self.seed,
                      "runs": [{"title": r.title, "algebra": r.algebra, "operators": r.operators,
                                "checks": r.checks} for r in self.runs]})


def _validate_algebra(a: Any, key: str) -> dict:
    if not isinstance(a, dict) or "name" not in a:
        raise ValidationError(key, "needs a 'name'")
    name = a["name"]
    if name not in ALGEBRAS:
        raise ValidationError(f"{key}.name", f"unknown algebra {name!r} (known: {', '.join(sorted(ALGEBRAS))})")
    _keys(a, ALGEBRAS[name] | {"name"}, key)
    out = {"name": name}
    for k, v in a.items():
        if k == "name":
            continue
        kk = f"{key}.{k}"
        if k in ("cutoff", "rank", "N"):
            out[k] = _int(v, kk)
        elif k == "level":
            out[k] = exact(v, kk)
        elif k == "gram":
            if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
                raise ValidationError(kk, "expected a list of rows")
            out[k] = [[exact(x, kk) for x in r] for r in v]
        elif k == "window":
            if not (isinstance(v, list) and len(v) == 2):
                raise ValidationError(kk, "expected [lo, hi]")
            out[k] = [_int(x, kk) for x in v]
        elif k == "left":
            out[k] = _validate_algebra(v, kk)
            if out[k]["name"] == "tensor":
                raise ValidationError(kk, "nested tensor products are not supported")
    if name == "tensor" and "left" not in out:
        raise ValidationError(key, "a tensor algebra needs a 'left' factor")
    return out


def _validate_operator(name: str, o: Any, key: str) -> dict:
    _keys(o, OPERATOR_KEYS, key)
    kind = o.get("kind", "rbo")
    if kind not in OPERATOR_KINDS:
        raise ValidationError(f"{key}.kind", f"unknown operator kind {kind!r}")
    out = dict(o)
    out["kind"] = kind
    if kind != "dendriform" and "constructor" not in o:
        raise ValidationError(key, "needs a 'constructor'")
    if kind == "dendriform" and "from" not in o:
        raise ValidationError(key, "a dendriform operator needs 'from: <rbo name>'")
    for k in ("weight", "scalar"):
        if k in o:
            out[k] = exact(o[k], f"{key}.{k}")
    if "degree" in o and o["degree"] is not None:
        out["degree"] = _int(o["degree"], f"{key}.degree")
    if "table" in o:
        t = o["table"]
        if not isinstance(t, dict) or not all(isinstance(k, str) and isinstance(v, (str, int)) for k, v in t.items()):
            raise ValidationError(f"{key}.table", "expected a mapping from basis strings to vector strings")
        out["table"] = {k: str(v) for k, v in t.items()}
    if "voa" in o and not isinstance(o["voa"], bool):
        raise ValidationError(f"{key}.voa", "expected true or false")
    if "otherwise" in o and o["otherwise"] not in ("zero", "identity", "error"):
        raise ValidationError(f"{key}.otherwise", "expected zero, identity or error")
    return out


def _validate_check(c: Any, key: str, operators: dict) -> dict:
    if isinstance(c, str):
        c = {"name": c}
    _keys(c, CHECK_KEYS, key)
    if "name" not in c:
        raise ValidationError(key, "needs a 'name'")
    from .registry import CHECKS
    if c["name"] not in CHECKS:
        raise ValidationError(f"{key}.name", f"unknown check {c['name']!r}")
    out = dict(c)
    for ref in ("operator", "other"):
        if ref in c and c[ref] not in operators:
            raise ValidationError(f"{key}.{ref}", f"no operator named {c[ref]!r}")
    for k in ("modes", "window"):
        if k in c:
            v = c[k]
            if not (isinstance(v, list) and len(v) == 2):
                raise ValidationError(f"{key}.{k}", "expected [lo, hi]")
            out[k] = [_int(x, f"{key}.{k}") for x in v]
    for k in ("kmax", "sample"):
        if k in c:
            out[k] = _int(c[k], f"{key}.{k}")
    for k, n in (("triples", 3), ("pairs", 2)):
        if k in c:
            v = c[k]
            if not isinstance(v, list) or not all(isinstance(t, list) and len(t) == n for t in v):
                raise ValidationError(f"{key}.{k}", f"expected a list of {n}-element lists of basis strings")
            out[k] = [[str(x) for x in t] for t in v]
    if "weight" in c:
        out["weight"] = exact(c["weight"], f"{key}.weight")
    if "expect" in c and not EXPECT.match(str(c["expect"])):
        raise ValidationError(f"{key}.expect", "expected pass, fail, inconclusive or raises:<ErrorName>")
    return out


def _validate_run(r: Any, key: str) -> RunConfig:
    _keys(r, RUN_KEYS, key)
    if "algebra" not in r:
        raise ValidationError(key, "needs an 'algebra' section")
    algebra = _validate_algebra(r["algebra"], f"{key}.algebra" if key else "algebra")
    ops_raw = r.get("operators") or {}
    if not isinstance(ops_raw, dict):
        raise ValidationError(f"{key}.operators" if key else "operators", "expected a mapping of named operators")
    ops = {}
    for name, o in ops_raw.items():
        ops[name] = _validate_operator(name, o, f"{key}.operators.{name}" if key else f"operators.{name}")
    for name, o in ops.items():
        for ref in ("of", "from"):
            if ref in o and o[ref] not in ops:
                raise ValidationError(f"operators.{name}.{ref}", f"no operator named {o[ref]!r}")
    checks_raw = r.get("checks") or []
    if not isinstance(checks_raw, list):
        raise ValidationError(f"{key}.checks" if key else "checks", "expected a list")
    checks = [_validate_check(c, f"{key}.checks[{i}]" if key else f"checks[{i}]", ops) for i, c in enumerate(checks_raw)]
    return RunConfig(algebra, ops, checks, str(r.get("title", "")))


def validate(doc: Any) -> WorkbenchConfig:
    if doc is None:
        raise ValidationError("(document)", "empty configuration")
    _keys(doc, TOP_KEYS, "")
    output = {"format": "structured", "verbosity": 1}
    if "output" in doc:
        _keys(doc["output"], OUTPUT_KEYS, "output")
        output.update(doc["output"])
        if output["format"] not in ("human", "structured"):
            raise ValidationError("output.format", "expected human or structured")
        output["verbosity"] = _int(output["verbosity"], "output.verbosity")
    seed = _int(doc.get("seed", 0), "seed")
    if "runs" in doc:
        if "algebra" in doc:
            raise ValidationError("runs", "use either 'runs' or a single 'algebra' section, not both")
        if not isinstance(doc["runs"], list):
            raise ValidationError("runs", "expected a list")
        runs = [_validate_run(r, f"runs[{i}]") for i, r in enumerate(doc["runs"])]
    else:
        runs = [_validate_run({k: v for k, v in doc.items() if k in RUN_KEYS}, "")]
    return WorkbenchConfig(runs, output, seed, str(doc.get("title", "")), doc)


def parse_config(text: str) -> WorkbenchConfig:
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        raise ParseError(e.problem or str(e), mark.line + 1 if mark else None,
                         mark.column + 1 if mark else None) from None
    except yaml.YAMLError as e:
        raise ParseError(str(e)) from None
    return validate(doc)


def load_config(path: str) -> WorkbenchConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())
