"""Scenario files: geometric setup plus named objects.

::

    {
      "n": 3,
      "cocharacters": {"global_linear": [1, 1, 1]},
      "dualizing": {"twist": [0, 0, 0], "shift": 0},
      "objects": {"Ox": "stratum_sheaf([2,3])", "Oz": "stratum_sheaf([1,2])"}
    }

``per_stratum`` keys are comma-separated vanishing sets (``""`` for the
open stratum).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import ScenarioError, StaggerError
from .expr import Evaluator
from .perversity import Perversity, middle
from .torus import Stratum, TorusSetup

S12 = {
    "n": 3,
    "cocharacters": {"global_linear": [1, 1, 1]},
    "dualizing": {"twist": [0, 0, 0], "shift": 0},
    "objects": {
        "Ox": "stratum_sheaf([2,3])",
        "Oz": "stratum_sheaf([1,2])",
    },
}


def parse_stratum(key: str | list, n: int) -> Stratum:
    if isinstance(key, list):
        idx = key
    else:
        body = key.strip().strip("{}").strip()
        try:
            idx = [int(x) for x in body.split(",")] if body else []
        except ValueError:
            raise ScenarioError(f"bad stratum key {key!r}") from None
    if any(not 1 <= i <= n for i in idx):
        raise ScenarioError(f"stratum {key!r} has coordinates outside 1..{n}")
    return Stratum(idx)


@dataclass
class Scenario:
    setup: TorusSetup
    object_exprs: Mapping[str, str] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def evaluator(self) -> Evaluator:
        ev = Evaluator(self.setup)
        for name, text in self.object_exprs.items():
            if name not in self._cache:
                self._cache[name] = ev.evaluate(text)
            ev.names[name] = self._cache[name]
        return ev

    def evaluate(self, text: str):
        return self.evaluator().evaluate(text)

    def perversity(self, literal) -> Perversity:
        return parse_perversity(self.setup, literal)


def _require(data: Mapping, key: str):
    if key not in data:
        raise ScenarioError(f"scenario is missing {key!r}")
    return data[key]


def scenario_from_dict(data: Mapping[str, Any]) -> Scenario:
    if not isinstance(data, Mapping):
        raise ScenarioError("scenario must be a JSON object")
    n = _require(data, "n")
    if not isinstance(n, int) or n < 0:
        raise ScenarioError("n must be a nonnegative integer")
    dual = data.get("dualizing", {}) or {}
    twist = dual.get("twist", [0] * n)
    shift = dual.get("shift", 0)
    coch = _require(data, "cocharacters")
    try:
        if "global_linear" in coch:
            coeffs = coch["global_linear"]
            if len(coeffs) != n:
                raise ScenarioError("global_linear needs n coefficients")
            setup = TorusSetup.global_linear(coeffs, twist, shift)
        elif "per_stratum" in coch:
            table = {parse_stratum(k, n): v for k, v in coch["per_stratum"].items()}
            setup = TorusSetup.per_stratum(n, table, twist, shift)
        else:
            raise ScenarioError("cocharacters must be global_linear or per_stratum")
    except StaggerError:
        raise
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed cocharacters: {exc}") from None
    objects = data.get("objects", {}) or {}
    if not all(isinstance(v, str) for v in objects.values()):
        raise ScenarioError("object expressions must be strings")
    sc = Scenario(setup, dict(objects))
    sc.evaluator()  # type-check every object up front
    return sc


def load_scenario(path: str | Path | None) -> Scenario:
    if path is None:
        return scenario_from_dict(S12)
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return scenario_from_dict(data)


def parse_perversity(setup: TorusSetup, literal) -> Perversity:
    """``middle_staggered``, ``middle_baric``, ``zero`` or an explicit map (JSON text or dict)."""
    if isinstance(literal, Perversity):
        return literal
    if isinstance(literal, str):
        key = literal.strip()
        if key == "middle_staggered":
            return middle(setup, "staggered")
        if key == "middle_baric":
            return middle(setup, "baric")
        if key == "middle_db":
            return middle(setup, "db")
        if key == "zero":
            return Perversity.constant(setup, 0)
        try:
            literal = json.loads(key)
        except json.JSONDecodeError:
            raise ScenarioError(f"unknown perversity literal {literal!r}") from None
    if not isinstance(literal, Mapping):
        raise ScenarioError("perversity must be a literal name or a map from strata to integers")
    values = {parse_stratum(k, setup.n): int(v) for k, v in literal.items()}
    return Perversity(values)
