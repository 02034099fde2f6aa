"""Problem-file ingestion: strict JSON stanzas for gamma and crossed modules.

A problem file is the module stanza itself plus optional orchestration keys.
All integers may be decimal strings (arbitrary precision survives the text
format) or plain JSON ints; unknown keys are rejected so result provenance is
unambiguous.  Module invariants (torsion, unit determinant, level normality,
character image) are checked here, before any computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .crossed import CrossedModule, Level
from .errors import ParseError, ValidationError
from .gamma import GammaModule
from .padic import PadicContext
from .series import Character

_COMMON_KEYS = {"schema", "kind", "p", "d", "precision", "truncation", "characters", "budget"}
_GAMMA_KEYS = _COMMON_KEYS | {"F", "n_levels", "n_max"}
_CROSSED_KEYS = _COMMON_KEYS | {"kappa", "A", "levels"}

DEFAULT_PRECISION = 64
DEFAULT_TRUNCATION = 128
DEFAULT_BUDGET = 25


def _as_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{what}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip().replace("−", "-")
        try:
            return int(s)
        except ValueError:
            raise ParseError(f"{what}: {value!r} is not a decimal integer") from None
    raise ParseError(f"{what}: expected an integer or decimal string, got {type(value).__name__}")


def _as_int_list(value, what: str):
    if not isinstance(value, list):
        raise ParseError(f"{what}: expected a list")
    return [_as_int(v, what) for v in value]


def _as_matrix(value, d: int, what: str):
    if not isinstance(value, list) or len(value) != d:
        raise ParseError(f"{what}: expected {d} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != d:
            raise ParseError(f"{what}: row {i} must have {d} series entries")
        rows.append([_as_int_list(e, f"{what}[{i}]") for e in row])
    return rows


@dataclass
class ProblemFile:
    """Validated problem: raw integer data plus a module built at `precision`."""

    kind: str
    p: int
    precision: int
    truncation: int
    budget: int
    characters: list
    module: object
    schema: int = 1
    gamma_levels: list | None = None
    n_max: int | None = None
    crossed_levels: list | None = None
    raw_entries: tuple = ()
    raw_kappa: int | None = None
    source: dict = field(default_factory=dict)

    def build_module(self, N: int):
        """Re-embed the exact input data at precision N (for escalation)."""
        ctx = PadicContext(self.p, N)
        if self.kind == "gamma":
            return GammaModule.from_int_matrix(ctx, self.raw_entries)
        return CrossedModule.from_int_data(ctx, self.raw_kappa, self.raw_entries)

    def characters_at(self, N: int):
        ctx = PadicContext(self.p, N)
        return [Character.from_int(ctx, u) for u in self.characters]

    def levels(self):
        if self.kind == "gamma":
            return self.gamma_levels
        return self.crossed_levels


def parse_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("the problem file must be a JSON object")

    kind = data.get("kind")
    if kind not in ("gamma", "crossed"):
        raise ParseError(f"kind must be 'gamma' or 'crossed', got {kind!r}")
    allowed = _GAMMA_KEYS if kind == "gamma" else _CROSSED_KEYS
    unknown = set(data) - allowed
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")

    schema = _as_int(data.get("schema", 1), "schema")
    if schema != 1:
        raise ParseError(f"unsupported schema version {schema}")
    if "p" not in data:
        raise ParseError("missing key 'p'")
    if "d" not in data:
        raise ParseError("missing key 'd'")
    p = _as_int(data["p"], "p")
    d = _as_int(data["d"], "d")
    if d < 1:
        raise ValidationError("rank-positive", f"d must be >= 1, got {d}")
    precision = _as_int(data.get("precision", DEFAULT_PRECISION), "precision")
    truncation = _as_int(data.get("truncation", DEFAULT_TRUNCATION), "truncation")
    budget = _as_int(data.get("budget", DEFAULT_BUDGET), "budget")
    if budget < 1:
        raise ValidationError("budget-positive", f"budget must be >= 1, got {budget}")
    characters = _as_int_list(data.get("characters", [1]), "characters")

    ctx = PadicContext(p, precision)
    for u in characters:
        Character.from_int(ctx, u)

    if kind == "gamma":
        if "F" not in data:
            raise ParseError("missing key 'F'")
        entries = _as_matrix(data["F"], d, "F")
        module = GammaModule.from_int_matrix(ctx, entries)
        n_levels = _as_int_list(data.get("n_levels", [0, 1]), "n_levels")
        for n in n_levels:
            if n < 0:
                raise ValidationError("level", "levels must be >= 0")
        n_max = _as_int(data["n_max"], "n_max") if "n_max" in data else max(n_levels)
        return ProblemFile(
            kind="gamma",
            p=p,
            precision=precision,
            truncation=truncation,
            budget=budget,
            characters=characters,
            module=module,
            schema=schema,
            gamma_levels=n_levels,
            n_max=n_max,
            raw_entries=module.exact_entries,
            source=data,
        )

    if "kappa" not in data:
        raise ParseError("missing key 'kappa'")
    if "A" not in data:
        raise ParseError("missing key 'A'")
    kappa = _as_int(data["kappa"], "kappa")
    entries = _as_matrix(data["A"], d, "A")
    module = CrossedModule.from_int_data(ctx, kappa, entries)
    raw_levels = data.get("levels", [])
    if not isinstance(raw_levels, list):
        raise ParseError("levels: expected a list of [n, m] pairs")
    levels = []
    for lv in raw_levels:
        if not isinstance(lv, list) or len(lv) != 2:
            raise ParseError("levels: each level is a pair [n, m]")
        levels.append(module.check_level(Level(_as_int(lv[0], "level"), _as_int(lv[1], "level"))))
    return ProblemFile(
        kind="crossed",
        p=p,
        precision=precision,
        truncation=truncation,
        budget=budget,
        characters=characters,
        module=module,
        schema=schema,
        crossed_levels=levels,
        raw_entries=module.exact_entries,
        raw_kappa=kappa,
        source=data,
    )
