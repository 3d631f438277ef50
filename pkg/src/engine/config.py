"""Check configuration"""
from dataclasses import dataclass

from arena.bounds import DEFAULT_CEILING
from utils.errors import ConfigError

MODES = ('memoryless', 'recall')
METRICS = ('symbols', 'rules')
TRANSITIONS = ('crisp', 'labelled')

DEFAULT_TAU_GUARD = 0.5
DEFAULT_TAU_TRUE = 1.0
DEFAULT_DEPTH_CAP = 5


@dataclass
class CheckConfig:
    mode: str = 'memoryless'
    metric: str = 'symbols'
    tau_guard: float = DEFAULT_TAU_GUARD
    tau_true: float = DEFAULT_TAU_TRUE
    transitions: str = 'crisp'
    depth_cap: int = DEFAULT_DEPTH_CAP
    workers: int = 1
    max_guard_symbols: int = 2
    max_regex_size: int = 3
    early_exit: bool = False
    depth_ceiling: int = DEFAULT_CEILING
    strict: bool = False

    def validate(self) -> 'CheckConfig':
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.metric not in METRICS:
            raise ConfigError(f"metric must be one of {METRICS}")
        if self.transitions not in TRANSITIONS:
            raise ConfigError(f"transitions must be one of {TRANSITIONS}")
        if self.mode == 'recall' and self.transitions == 'labelled':
            raise ConfigError("recall mode supports crisp transitions only")
        for name in ('tau_guard', 'tau_true'):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name}={v} outside [0,1]")
        if self.depth_cap < 1:
            raise ConfigError("depth_cap must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.max_guard_symbols < 1 or self.max_regex_size < 1:
            raise ConfigError("enumeration caps must be >= 1")
        return self

    @classmethod
    def from_args(cls, args) -> 'CheckConfig':
        return cls(
            mode=args.mode,
            metric=args.metric,
            tau_guard=args.tau_guard,
            tau_true=args.tau_true,
            transitions=args.transitions,
            depth_cap=args.depth_cap,
            workers=args.workers,
            early_exit=getattr(args, 'early_exit', False),
            strict=getattr(args, 'strict', False),
        ).validate()
