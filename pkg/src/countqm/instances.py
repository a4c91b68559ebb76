"""Instance configs: presentation + family parameters + caps.

A config is one JSON document; see ``CONFIG_SCHEMA``. The three built-ins
are stored in the same format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .amalgam import AmalgamPresentation
from .families import (
    AmalgamFamilyParams,
    HnnFamilyParams,
    validate_amalgam_params,
    validate_hnn_params,
)
from .groups import build_group, check_embedding, parse_map, subgroup
from .hnn import HnnPresentation

_GROUP = {"anyOf": [{"type": "string"}, {"type": "object"}, {"type": "array"}]}
_MAP = {"anyOf": [{"type": "string"}, {"type": "object"}, {"type": "array"}]}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "countqm instance",
    "type": "object",
    "required": ["kind", "A", "C", "family"],
    "properties": {
        "kind": {"enum": ["amalgam", "hnn"]},
        "name": {"type": "string"},
        "A": _GROUP,
        "B": _GROUP,
        "C": {"anyOf": [_GROUP, {"type": "array", "items": {"type": "integer"}}]},
        "iotaA": _MAP,
        "iotaB": _MAP,
        "phi": _MAP,
        "family": {
            "type": "object",
            "properties": {
                "a1": {"type": "integer"},
                "a2": {"type": "integer"},
                "b": {"type": "integer"},
                "g": {"type": "integer"},
                "h": {"type": "integer"},
                "base": {"type": "integer", "minimum": 2},
            },
        },
        "caps": {
            "type": "object",
            "properties": {
                "max_index": {"type": "integer", "minimum": 0},
                "h_max_index": {"type": "integer", "minimum": 0},
                "max_n": {"type": "integer", "minimum": 1},
                "orbit_cap": {"type": "integer", "minimum": 1},
                "samples": {"type": "integer", "minimum": 0},
                "max_len": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer"},
                "radius": {"type": "integer", "minimum": 0},
                "defect_radius": {"type": "integer", "minimum": 0},
                "oracle_radius": {"type": "integer", "minimum": 0},
                "lipschitz_samples": {"type": "integer", "minimum": 0},
                "britton_samples": {"type": "integer", "minimum": 0},
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "amalgam"}}},
            "then": {
                "required": ["B", "iotaA", "iotaB"],
                "properties": {"family": {"required": ["a1", "a2", "b"]}},
            },
        },
        {
            "if": {"properties": {"kind": {"const": "hnn"}}},
            "then": {"required": ["phi"], "properties": {"family": {"required": ["g", "h"]}}},
        },
    ],
}

DEFAULT_CAPS = {
    "max_index": 2,
    "h_max_index": 1,
    "max_n": 3,
    "orbit_cap": 1 << 16,
    "samples": 10_000,
    "max_len": 50,
    "seed": 42,
    "radius": 3,
    "defect_radius": 3,
    "oracle_radius": 3,
    "lipschitz_samples": 1000,
    "britton_samples": 500,
}

BUILTINS = {
    "psl2z": {
        "kind": "amalgam",
        "name": "psl2z",
        "A": "cyclic:3",
        "B": "cyclic:2",
        "C": "cyclic:1",
        "iotaA": "map:{}",
        "iotaB": "map:{}",
        "family": {"a1": 1, "a2": 2, "b": 1},
        "caps": {"radius": 5, "oracle_radius": 4},
    },
    "sl2z": {
        "kind": "amalgam",
        "name": "sl2z",
        "A": "cyclic:6",
        "B": "cyclic:4",
        "C": "cyclic:2",
        "iotaA": "map:{1->3}",
        "iotaB": "map:{1->2}",
        "family": {"a1": 1, "a2": 2, "b": 1},
        "caps": {"radius": 3, "oracle_radius": 2},
    },
    "klein-hnn": {
        "kind": "hnn",
        "name": "klein-hnn",
        "A": "product:[cyclic:2,cyclic:2]",
        "C": [0, 1],
        "phi": "map:{1->2}",
        "family": {"g": 2, "h": 1},
        "caps": {"radius": 4, "oracle_radius": 3},
    },
}


class ConfigError(ValueError):
    pass


@dataclass
class Instance:
    name: str
    kind: str
    model: object
    family: object
    caps: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    def cap(self, key: str):
        return self.caps.get(key, DEFAULT_CAPS[key])


def instance_from_config(cfg: dict) -> Instance:
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from None
    caps = {**DEFAULT_CAPS, **cfg.get("caps", {})}
    fam = cfg["family"]
    base = fam.get("base", 10)
    name = cfg.get("name", "custom")
    try:
        A = build_group(cfg["A"])
        if cfg["kind"] == "amalgam":
            B = build_group(cfg["B"])
            C = build_group(cfg["C"])
            iA = check_embedding(C, A, parse_map(cfg["iotaA"]))
            iB = check_embedding(C, B, parse_map(cfg["iotaB"]))
            model = AmalgamPresentation(A, B, C, iA, iB, name=name)
            params = validate_amalgam_params(
                AmalgamFamilyParams(model, fam["a1"], fam["a2"], fam["b"], base, caps["max_index"])
            )
        else:
            Csub = subgroup(A, cfg["C"])
            model = HnnPresentation(A, Csub, parse_map(cfg["phi"]), name=name)
            params = validate_hnn_params(
                HnnFamilyParams(model, fam["g"], fam["h"], base, caps["max_index"])
            )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return Instance(name, cfg["kind"], model, params, caps, cfg)


def load_instance(name: str | None = None, path: str | Path | None = None) -> Instance:
    """A built-in by name, or a config file (which wins when both are given)."""
    if path is not None:
        try:
            cfg = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return instance_from_config(cfg)
    if name is None:
        raise ConfigError("need an instance name or a config file")
    if name not in BUILTINS:
        raise ConfigError(f"unknown instance {name!r}; built-ins: {', '.join(BUILTINS)}")
    return instance_from_config(BUILTINS[name])
