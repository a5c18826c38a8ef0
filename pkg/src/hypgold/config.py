"""Run configuration: defaults < config file < ER_* environment < CLI flags."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

from .errors import DomainError
from .numeric import DEFAULT_PRECISION, DEFAULT_REL_TOL, MODE_RATIONAL, MODES

OUTPUT_FORMATS = ("json", "csv")

ENV_PREFIX = "ER_"
_ENV_FIELDS = {
    "MODE": ("mode", str),
    "PRECISION": ("precision_bits", int),
    "TOL": ("tolerance_rel", float),
    "SEED": ("seed", int),
    "OUTPUT_FORMAT": ("output_format", str),
}


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    mode: str = MODE_RATIONAL
    tolerance_rel: float = DEFAULT_REL_TOL
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.precision_bits < 53:
            raise DomainError("precision_bits must be at least 53")
        if not self.tolerance_rel > 0:
            raise DomainError("tolerance_rel must be positive")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"output_format must be one of {OUTPUT_FORMATS}")

    def as_dict(self) -> dict:
        return {
            "precision_bits": self.precision_bits,
            "mode": self.mode,
            "tolerance_rel": self.tolerance_rel,
            "seed": self.seed,
            "output_format": self.output_format,
        }


def _from_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError(f"config file {path} must hold a JSON object")
    unknown = set(data) - set(RunConfig().as_dict())
    if unknown:
        raise DomainError(f"unknown config keys in {path}: {sorted(unknown)}")
    return data


def _from_env(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for suffix, (field_name, caster) in _ENV_FIELDS.items():
        raw = environ.get(ENV_PREFIX + suffix)
        if raw is None:
            continue
        try:
            out[field_name] = caster(raw)
        except ValueError as exc:
            raise DomainError(f"bad value for {ENV_PREFIX}{suffix}: {raw!r}") from exc
    return out


def resolve_config(cli_overrides: dict | None = None,
                   config_path: str | None = None,
                   environ=None) -> RunConfig:
    cfg = RunConfig()
    if config_path:
        cfg = replace(cfg, **_from_file(config_path))
    env = _from_env(environ)
    if env:
        cfg = replace(cfg, **env)
    overrides = {k: v for k, v in (cli_overrides or {}).items() if v is not None}
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg
