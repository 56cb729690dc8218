import json
import os
from dataclasses import dataclass, fields, replace
from typing import Optional, Tuple

from dotenv import load_dotenv

from program import LPError

load_dotenv()


class ConfigError(LPError):
    pass


# ===== Environment helpers =====

def _env_first(*names):
    for n in names:
        v = os.getenv(n)
        if v:
            return v
    return None


def _parse_bool_env(name: str, default: bool = None) -> bool | None:
    v = os.getenv(name)
    if v is None:
        return default
    return v.strip().lower() in ("1", "true", "yes", "y", "on")


def _parse_int_env(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None or not v.strip():
        return default
    try:
        return int(v)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {v!r}")


# ===== Defaults (environment overrides) =====

MAX_RULES = _parse_int_env("LPCHANGE_MAX_RULES", 4)
MAX_INPUT_RULES = _parse_int_env("LPCHANGE_MAX_INPUT_RULES", 2)
MAX_PROGRAM_RULES = _parse_int_env("LPCHANGE_MAX_PROGRAM_RULES", 12)
MAX_VOCAB = _parse_int_env("LPCHANGE_MAX_VOCAB", 4)
MAX_POOL = 12
MAX_ENUMERATED_ENSCONCEMENT = 6
WORKERS = _parse_int_env("LPCHANGE_WORKERS", 1)
SEED = _parse_int_env("LPCHANGE_SEED", 0)
SAMPLES = _parse_int_env("LPCHANGE_SAMPLES", 1000)
QUIET = _parse_bool_env("LPCHANGE_QUIET", False)

DISCORD_LOGS_URL = _env_first("DISCORD_LOGS_URL")
DISCORD_ERR_URL = _env_first("DISCORD_ERR_URL")
DISCORD_AVATAR_URL = _env_first("DISCORD_AVATAR_URL")
DISCORD_WEBHOOK_URL = _env_first("DISCORD_WEBHOOK_URL")


# ===== Run configuration =====

METHODS = ("pm", "ens", "distance", "pm-as")
FORMATS = ("text", "json", "table")


@dataclass(frozen=True)
class RunConfig:
    command: str = ""
    inputs: Tuple[str, ...] = ()
    vocab: Optional[str] = None
    method: str = "pm"
    policy: str = "full"
    ensconcement: Optional[str] = None
    auto_ensconcement: bool = False
    localized: bool = False
    q_se_models: Optional[str] = None
    materialize: bool = False
    compare: Optional[str] = None
    format: str = "text"
    seed: int = SEED
    workers: int = WORKERS
    max_rules: int = MAX_RULES
    max_input_rules: int = MAX_INPUT_RULES
    samples: int = SAMPLES
    operators: str = "pm,ens,distance"
    postulates: str = "all"
    suites: str = "postulates"
    pool: Optional[str] = None
    notify: bool = False

    @classmethod
    def from_sources(cls, file_values: Optional[dict] = None, flag_values: Optional[dict] = None) -> "RunConfig":
        """Defaults < config file < explicit flags."""
        known = {f.name for f in fields(cls)}
        merged = {}
        for source in (file_values or {}, flag_values or {}):
            for k, v in source.items():
                key = k.replace("-", "_")
                if key not in known:
                    raise ConfigError(f"unknown configuration key '{k}'")
                if v is not None:
                    merged[key] = tuple(v) if key == "inputs" else v
        return replace(cls(), **merged)

    def validate(self) -> "RunConfig":
        if self.method not in METHODS:
            raise ConfigError(f"unknown method '{self.method}' (expected one of {', '.join(METHODS)})")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format '{self.format}'")
        if self.command == "contract" and self.method in ("distance", "pm-as"):
            raise ConfigError(f"method '{self.method}' only revises")
        if self.method == "pm-as" and self.policy.split(":")[0] not in ("single", "single-choice-lex"):
            raise ConfigError("method 'pm-as' needs the 'single' policy")
        if self.method == "ens" and not (self.ensconcement or self.auto_ensconcement) and not self.compare:
            raise ConfigError("method 'ens' needs --ensconcement FILE or --auto-ensconcement")
        if self.localized and self.method not in ("pm", "ens"):
            raise ConfigError("--localized works with methods 'pm' and 'ens' only")
        if self.q_se_models and self.method not in ("pm", "ens"):
            raise ConfigError("--q-se-models works with methods 'pm' and 'ens' only")
        if self.max_rules < 0 or self.max_input_rules < 0 or self.workers < 1:
            raise ConfigError("corpus sizes must be non-negative and workers positive")
        return self


def load_config_file(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data
