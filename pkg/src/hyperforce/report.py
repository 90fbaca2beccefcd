"""Run configuration and JSON reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .colorings import Coloring, coloring_from_spec
from .engine import QCondition, Verdict, centers_from_spec
from .properties import parse_admissible, property_from_spec
from .scalar import EXACT, FLOAT, parse_scalar

DEFAULTS = {
    "n": 2,
    "mode": FLOAT,
    "seed": 0,
    "budget_spheres": 1000,
    "budget_witnesses": 100,
    "workers": 1,
    "radii": "(0,1)",
    "centers": "all",
}


@dataclass
class RunConfig:
    command: str
    n: int = 2
    mode: str = FLOAT
    seed: int = 0
    budget_spheres: int = 1000
    budget_witnesses: int = 100
    workers: int = 1
    coloring: object = None
    property: object = None
    radii: object = "(0,1)"
    centers: object = "all"
    epsilon: object = None
    out: str | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def merge(cls, command: str, file_values: dict | None, flag_values: dict) -> "RunConfig":
        """File values first, then every flag that was given explicitly."""
        names = {f.name for f in fields(cls)} - {"command", "extra"}
        values = dict(DEFAULTS)
        extra = {}
        for source in (file_values or {}, flag_values):
            for key, val in source.items():
                if val is None:
                    continue
                key = key.replace("-", "_")
                if key in names:
                    values[key] = val
                else:
                    extra[key] = val
        cfg = cls(command, **{k: v for k, v in values.items() if k in names}, extra=extra)
        if cfg.mode not in (EXACT, FLOAT):
            raise ValueError(f"mode must be {EXACT!r} or {FLOAT!r}")
        cfg.n, cfg.seed = int(cfg.n), int(cfg.seed)
        cfg.budget_spheres, cfg.budget_witnesses = int(cfg.budget_spheres), int(cfg.budget_witnesses)
        return cfg

    def to_json(self) -> dict:
        out = asdict(self)
        if not out["extra"]:
            del out["extra"]
        return out

    def coloring_obj(self) -> Coloring:
        if self.coloring is None:
            raise ValueError("a coloring is required")
        return coloring_from_spec(_maybe_json(self.coloring), self.n, self.mode)

    def condition(self) -> QCondition:
        if self.property is None:
            raise ValueError("a property is required")
        prop = property_from_spec(_maybe_json(self.property), self.mode)
        radii = parse_admissible(_maybe_json(self.radii), self.mode)
        centers = centers_from_spec(_maybe_json(self.centers), self.mode)
        eps = None if self.epsilon is None else parse_scalar(self.epsilon, self.mode)
        return QCondition(prop, radii, self.n, centers, None, eps)


def _maybe_json(value):
    if isinstance(value, str) and value.lstrip().startswith("{\""):
        try:
            return json.loads(value)
        except json.JSONDecodeError:
            return value
    return value


def check_report(cfg: RunConfig, q: QCondition, f: Coloring, verdicts: list[Verdict],
                 certificate: Verdict | None) -> dict:
    out = {
        "condition": q.to_json(),
        "coloring": f.spec(),
        "verdicts": [v.to_json() for v in verdicts],
        "seed": cfg.seed,
        "budgets": {"spheres": cfg.budget_spheres, "witnesses": cfg.budget_witnesses},
        "mode": cfg.mode,
        "config": cfg.to_json(),
    }
    if certificate is not None:
        out["certificate"] = certificate.to_json()
    return out


@dataclass
class ParsedReport:
    condition: QCondition
    coloring: Coloring
    verdicts: list
    certificate: Verdict | None
    seed: int
    budgets: dict
    mode: str
    config: dict


def parse_check_report(obj) -> ParsedReport:
    if isinstance(obj, str):
        obj = json.loads(obj)
    mode = obj["mode"]
    q = QCondition.from_json(obj["condition"], mode)
    f = coloring_from_spec(obj["coloring"], q.n, mode)
    cert = Verdict.from_json(obj["certificate"]) if "certificate" in obj else None
    return ParsedReport(q, f, [Verdict.from_json(v) for v in obj["verdicts"]], cert, obj["seed"],
                        obj["budgets"], mode, obj.get("config", {}))


def dumps(report) -> str:
    """Canonical text form: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
