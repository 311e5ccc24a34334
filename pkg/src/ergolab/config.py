"""Experiment configuration: a flat key/value text format or equivalent JSON.

Text grammar: sections in square brackets, ``key = value`` lines, ``#``
comments; values are quoted strings, integers, floats, booleans, or
comma-separated lists of those.  A JSON file with the same section/key
structure is accepted interchangeably.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError
from .frequency import Frequency, parse_frequency
from .qmult import QMultFunction, THUE_MORSE
from . import averaging, systems

KINDS = (
    "WW",
    "PRODUCT_ORTHOGONALITY",
    "WEIGHTED_MULTIREC",
    "JOININGS_SWEEP",
    "SPECTRUM_SCAN",
    "TEMPERED_CHECK",
)


def _parse_scalar(tok: str):
    tok = tok.strip()
    if tok.startswith('"') and tok.endswith('"') and len(tok) >= 2:
        return tok[1:-1]
    if tok in ("true", "false"):
        return tok == "true"
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        pass
    return tok


def parse_config_text(text: str) -> dict:
    out: dict = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            out.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key = value, got {raw!r}")
        if section is None:
            raise ConfigError(f"line {lineno}", "key outside of a [section]")
        key, val = (s.strip() for s in line.split("=", 1))
        if "," in val and not (val.startswith('"') and val.endswith('"')):
            out[section][key] = [_parse_scalar(v) for v in val.split(",")]
        else:
            out[section][key] = _parse_scalar(val)
    return out


def load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(path, f"cannot read config file: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(path, f"invalid JSON: {exc}") from exc
    return parse_config_text(text)


@dataclass
class ExperimentConfig:
    kind: str
    seed: int
    tolerance: float
    schedule_start: int
    schedule_doublings: int
    out: str | None = None
    format: str = "csv"
    params: dict = field(default_factory=dict)

    def schedule(self) -> list[int]:
        return [self.schedule_start << k for k in range(self.schedule_doublings + 1)]

    def echo(self) -> dict:
        return {
            "experiment": {
                "kind": self.kind,
                "seed": self.seed,
                "tolerance": self.tolerance,
                "out": self.out,
                "format": self.format,
            },
            "schedule": {
                "start": self.schedule_start,
                "doublings": self.schedule_doublings,
            },
            "params": dict(self.params),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        exp = d.get("experiment")
        if not isinstance(exp, dict):
            raise ConfigError("experiment", "missing [experiment] section")
        kind = exp.get("kind")
        if kind not in KINDS:
            raise ConfigError("experiment.kind", f"must be one of {KINDS}, got {kind!r}")
        if "seed" not in exp:
            raise ConfigError("experiment.seed", "seed is required for reproducibility")
        tol = exp.get("tolerance", 1e-2)
        if not (isinstance(tol, (int, float)) and tol > 0):
            raise ConfigError("experiment.tolerance", "must be a positive number")
        sched = d.get("schedule", {})
        start = sched.get("start", 1024)
        doublings = sched.get("doublings", 0)
        if not (isinstance(start, int) and start >= 1):
            raise ConfigError("schedule.start", "must be a positive integer")
        if not (isinstance(doublings, int) and doublings >= 0):
            raise ConfigError("schedule.doublings", "must be a non-negative integer")
        fmt = exp.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError("experiment.format", "must be csv or json")
        return cls(
            kind=kind,
            seed=int(exp["seed"]),
            tolerance=float(tol),
            schedule_start=start,
            schedule_doublings=doublings,
            out=exp.get("out"),
            format=fmt,
            params=dict(d.get("params", {})),
        )


# ---------------------------------------------------------------------------
# compact spec strings for systems, observables, weights


def parse_qmult(spec: str) -> QMultFunction:
    if spec == "tm":
        return THUE_MORSE
    try:
        parts = dict(kv.split("=", 1) for kv in spec.split(";"))
        q = int(parts["q"])
        mod = int(parts["mod"])
        digits = tuple(int(v) for v in parts["digits"].split(":"))
        return QMultFunction(q, mod, digits)
    except (KeyError, ValueError) as exc:
        raise ConfigError("qmult", f"bad sequence spec {spec!r}: {exc}") from exc


def parse_system(spec: str):
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        inner = spec[len("product(") : -1]
        left, right = _split_top(inner)
        return systems.product_system(parse_system(left), parse_system(right))
    if ":" not in spec:
        raise ConfigError("system", f"bad system spec {spec!r}")
    head, rest = spec.split(":", 1)
    try:
        if head == "finite":
            main, _, steppart = rest.partition(";")
            orders = tuple(int(v) for v in main.split(","))
            if steppart:
                step = tuple(int(v) for v in steppart.removeprefix("step=").split(","))
            else:
                step = tuple(1 for _ in orders)
            return systems.FiniteRotation(orders, step)
        if head == "rot":
            alphas = tuple(parse_frequency(v) for v in rest.split(","))
            return systems.TorusRotation(alphas)
        if head == "skew":
            return systems.SkewProduct(parse_frequency(rest))
        if head == "heis":
            a, b = rest.split(",")
            return systems.Heisenberg(parse_frequency(a), parse_frequency(b))
        if head == "qmult":
            return systems.QMultShift(parse_qmult(rest))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError("system", f"bad system spec {spec!r}: {exc}") from exc
    raise ConfigError("system", f"unknown system family {head!r}")


def _split_top(text: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            return text[:i], text[i + 1 :]
    raise ConfigError("system", f"expected 'left|right' in {text!r}")


def parse_observable(spec: str):
    spec = spec.strip()
    if spec.startswith("tensor(") and spec.endswith(")"):
        left, right = _split_top(spec[len("tensor(") : -1])
        return systems.TensorProduct(parse_observable(left), parse_observable(right))
    if spec == "symbol":
        return systems.SymbolValue()
    if ":" not in spec:
        raise ConfigError("observable", f"bad observable spec {spec!r}")
    head, rest = spec.split(":", 1)
    try:
        if head == "char":
            return systems.Character(tuple(int(v) for v in rest.split(",")))
        if head == "arc":
            start, length = rest.split(",")
            return systems.ArcIndicator(Fraction(start), Fraction(length))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError("observable", f"bad observable spec {spec!r}: {exc}") from exc
    raise ConfigError("observable", f"unknown observable {head!r}")


def parse_weight(spec: str):
    spec = spec.strip()
    if spec.startswith("prod(") and spec.endswith(")"):
        left, right = _split_top(spec[len("prod(") : -1])
        return averaging.PointwiseProduct((parse_weight(left), parse_weight(right)))
    if ":" not in spec:
        raise ConfigError("weight", f"bad weight spec {spec!r}")
    head, rest = spec.split(":", 1)
    try:
        if head == "const":
            return averaging.Constant(complex(float(rest)))
        if head == "charweight":
            return averaging.CharacterWeight(parse_frequency(rest))
        if head == "qmult":
            return averaging.QMultWeight(parse_qmult(rest))
        if head == "level":
            seq, target = rest.rsplit(",", 1)
            return averaging.LevelSetIndicator(parse_qmult(seq), int(target))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError("weight", f"bad weight spec {spec!r}: {exc}") from exc
    raise ConfigError("weight", f"unknown weight kind {head!r}")
