"""JSON configuration parsing, validation, and canonical serialization.

The file format is a single JSON object with a versioned ``schema`` key.
Absent keys take the model defaults; ``p_obj`` has no default and must be
supplied explicitly (by the file, a preset, or a CLI flag). Unknown keys
are rejected by name.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Union

from .engine import SimConfig, TrustPrior
from .errors import ConfigError

SCHEMA_VERSION = 1

_TOP_KEYS = {
    "schema",
    "p_obj",
    "truth_mode",
    "base_rate",
    "prior_belief",
    "trust_prior",
    "assertion_threshold",
    "comm_prob",
    "inquiry_prob",
    "n_agents",
    "topology",
    "steps",
    "runs",
    "master_seed",
    "grid_resolution",
    "conditions",
    "evidence_sharing",
}


def _require_int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"config key '{key}': expected an integer, got {value!r}")
    return value


def _require_number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config key '{key}': expected a number, got {value!r}")
    return float(value)


def _parse_trust_prior(raw: Any) -> TrustPrior:
    if not isinstance(raw, Mapping):
        raise ConfigError(f"config key 'trust_prior': expected an object, got {raw!r}")
    unknown = set(raw) - {"kind", "alpha", "beta", "p"}
    if unknown:
        raise ConfigError(f"config key 'trust_prior': unknown key '{sorted(unknown)[0]}'")
    kind = raw.get("kind")
    if kind == "beta":
        return TrustPrior(
            "beta",
            alpha=_require_number(raw.get("alpha", 2.0), "trust_prior.alpha"),
            beta=_require_number(raw.get("beta", 1.0), "trust_prior.beta"),
            p=_require_number(raw.get("p", 0.66), "trust_prior.p"),
        )
    if kind == "fixed":
        if "p" not in raw:
            raise ConfigError("config key 'trust_prior.p': required for kind 'fixed'")
        return TrustPrior("fixed", p=_require_number(raw["p"], "trust_prior.p"))
    raise ConfigError(f"config key 'trust_prior.kind': must be 'beta' or 'fixed', got {kind!r}")


def read_config_file(path: Union[str, Path]) -> dict[str, Any]:
    """Load a config file into a raw dict (validated later by parse_config)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return raw


def parse_config(source: Union[str, Path, Mapping[str, Any]]) -> SimConfig:
    """Build a validated SimConfig from a JSON file path or a plain mapping."""
    if isinstance(source, Mapping):
        raw: Mapping[str, Any] = source
    else:
        raw = read_config_file(source)

    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config key '{sorted(unknown)[0]}'")
    schema = raw.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"config key 'schema': unsupported version {schema!r}")
    if "p_obj" not in raw:
        raise ConfigError("config key 'p_obj': required (no default)")

    kwargs: dict[str, Any] = {"p_obj": _require_number(raw["p_obj"], "p_obj")}
    if "truth_mode" in raw:
        kwargs["truth_mode"] = raw["truth_mode"]
    if "base_rate" in raw:
        kwargs["base_rate"] = _require_number(raw["base_rate"], "base_rate")
    if "prior_belief" in raw:
        pb = raw["prior_belief"]
        kwargs["prior_belief"] = pb if isinstance(pb, str) else _require_number(pb, "prior_belief")
    if "trust_prior" in raw:
        kwargs["trust_prior"] = _parse_trust_prior(raw["trust_prior"])
    for key in ("assertion_threshold", "comm_prob", "inquiry_prob"):
        if key in raw:
            kwargs[key] = _require_number(raw[key], key)
    for key in ("n_agents", "steps", "runs", "master_seed", "grid_resolution"):
        if key in raw:
            kwargs[key] = _require_int(raw[key], key)
    if "topology" in raw:
        topo = raw["topology"]
        if not isinstance(topo, Mapping):
            raise ConfigError(f"config key 'topology': expected an object, got {topo!r}")
        unknown = set(topo) - {"k", "p_rewire"}
        if unknown:
            raise ConfigError(f"config key 'topology': unknown key '{sorted(unknown)[0]}'")
        if "k" in topo:
            kwargs["k"] = _require_int(topo["k"], "topology.k")
        if "p_rewire" in topo:
            kwargs["p_rewire"] = _require_number(topo["p_rewire"], "topology.p_rewire")
    if "conditions" in raw:
        conds = raw["conditions"]
        if not isinstance(conds, (list, tuple)) or not all(isinstance(c, str) for c in conds):
            raise ConfigError("config key 'conditions': expected a list of condition names")
        kwargs["conditions"] = tuple(conds)
    if "evidence_sharing" in raw:
        kwargs["evidence_sharing"] = raw["evidence_sharing"]

    return SimConfig(**kwargs).validate()


def config_to_dict(config: SimConfig) -> dict[str, Any]:
    """Canonical JSON-ready form; ``parse_config`` inverts it exactly."""
    prior = config.trust_prior
    if prior.kind == "beta":
        trust_prior = {"kind": "beta", "alpha": prior.alpha, "beta": prior.beta, "p": prior.p}
    else:
        trust_prior = {"kind": "fixed", "p": prior.p}
    return {
        "schema": SCHEMA_VERSION,
        "p_obj": config.p_obj,
        "truth_mode": config.truth_mode,
        "base_rate": config.base_rate,
        "prior_belief": config.prior_belief,
        "trust_prior": trust_prior,
        "assertion_threshold": config.assertion_threshold,
        "comm_prob": config.comm_prob,
        "inquiry_prob": config.inquiry_prob,
        "n_agents": config.n_agents,
        "topology": {"k": config.k, "p_rewire": config.p_rewire},
        "steps": config.steps,
        "runs": config.runs,
        "master_seed": config.master_seed,
        "grid_resolution": config.grid_resolution,
        "conditions": list(config.conditions),
        "evidence_sharing": config.evidence_sharing,
    }


def merge_config_dicts(*layers: Mapping[str, Any]) -> dict[str, Any]:
    """Shallow-merge config dicts left to right (later layers win).

    The nested ``topology`` and ``trust_prior`` objects are replaced
    wholesale, not merged key by key.
    """
    merged: dict[str, Any] = {}
    for layer in layers:
        for key, value in layer.items():
            merged[key] = value
    return merged
