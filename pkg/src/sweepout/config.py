"""Run configuration: specs, caps, seeds, and the shipped presets."""

import json
from dataclasses import dataclass, field, asdict

from .errors import ConfigError
from .gauges import DEFAULT_MAX_BITS
from .schedules import schedule_from_spec
from .sequences import sequence_from_spec

#: the two toy setups exercised throughout the test-suite, plus the
#: weighted variant on the same block base
PRESETS = {
    "theorem-a": {
        "schedule": {"variant": "theorem-a", "q": 2,
                     "gauge": {"type": "power", "a": 0.5}},
        "sequence": {"kind": "squares"},
        "u_max": 3,
        "k_max": 3,
    },
    "theorem-b": {
        "schedule": {"variant": "theorem-b",
                     "gauge": {"type": "log-power", "j": 1}},
        "sequence": {"kind": "synthetic-block"},
        "u_max": 2,
        "k_max": 1,
    },
    "lemma-14": {
        "schedule": {"variant": "lemma-14", "k": 1,
                     "gauge": {"type": "log-power", "j": 1},
                     "psi": {"type": "log-power", "j": "1/3"}},
        "sequence": {"kind": "synthetic-block"},
        "u_max": 2,
        "k_max": 1,
    },
}

_FIELDS = ("schedule", "sequence", "u_max", "k_max", "series_u_max",
           "grid_depth", "suite_functions", "seed", "max_bits",
           "element_cap", "out")


@dataclass
class RunConfig:
    schedule: dict
    sequence: dict
    u_max: int = 3              # block range for density/sweepout suites
    k_max: int = 3              # intervals to build
    series_u_max: int = 100     # series truncation
    grid_depth: int = 20        # p grid is {1 + 1/n : n <= depth}
    suite_functions: int = 100  # tracer sample size
    seed: int = 0
    max_bits: int = DEFAULT_MAX_BITS   # witness height ceiling
    element_cap: int = 2_000_000       # refuse to enumerate past this
    out: str = field(default="sweepout-out")

    def __post_init__(self):
        for name in ("u_max", "k_max", "series_u_max", "grid_depth",
                     "suite_functions", "max_bits", "element_cap"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"{name} must be an integer, got {v!r}")
        if self.u_max < 1:
            raise ConfigError(f"u_max must be >= 1, got {self.u_max}")
        if self.k_max < 0:
            raise ConfigError(f"k_max must be >= 0, got {self.k_max}")
        for name in ("series_u_max", "grid_depth", "suite_functions",
                     "max_bits", "element_cap"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        # fail early on malformed specs
        self.build_schedule()
        self.build_sequence()

    def build_schedule(self):
        sched = schedule_from_spec(self.schedule)
        sched.max_bits = self.max_bits
        return sched

    def build_sequence(self):
        return sequence_from_spec(self.sequence)

    def to_dict(self) -> dict:
        return asdict(self)


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {data!r}")
    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "schedule" not in data or "sequence" not in data:
        raise ConfigError("config needs both 'schedule' and 'sequence'")
    return RunConfig(**data)


def preset_config(name: str) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r} (one of {', '.join(sorted(PRESETS))})")
    return config_from_dict(dict(PRESETS[name]))


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"bad JSON in config {path}: {e}") from None
    return config_from_dict(data)
