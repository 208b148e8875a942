"""Pydantic models shared by the heuristics, the instance generators and the benchmark runner."""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ConfigError

Base = Literal["plm_fix", "ccm", "mim"]
MimVariant = Literal["random", "high_G", "low_G", "high_F", "low_F", "both"]
Post = Literal["none", "all", "inc"]

_VARIANTS = {name.lower(): name for name in ("random", "high_G", "low_G", "high_F", "low_F", "both")}
_POSTS = ("none", "all", "inc")
_ARITY = {"complete": 1, "complete_bipartite": 2, "cycle_product": 2, "petersen": 2, "random_regular": 3}


class HeuristicConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: Base
    mim_variant: Optional[MimVariant] = None
    post: Optional[Post] = None
    srm: bool = False
    remove_nonsimple: bool = True
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_options(self):
        if (self.base == "mim") != (self.mim_variant is not None):
            raise ValueError("mim_variant is required for mim and only allowed there")
        if (self.base == "plm_fix") != (self.post is not None):
            raise ValueError("post is required for plm_fix and only allowed there")
        return self

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "HeuristicConfig":
        """Parse ``fix-<post>``, ``mim-<variant>`` or ``ccm``, then ``-srm`` and ``-raw`` (case-insensitive)."""
        tokens = [t for t in text.strip().lower().split("-")]
        if not tokens or not tokens[0]:
            raise ConfigError(f"empty heuristic config {text!r}")
        head, rest = tokens[0], tokens[1:]
        options: dict = {"seed": seed}
        if head == "fix":
            if not rest or rest[0] not in _POSTS:
                raise ConfigError(f"{text!r}: fix needs one of {', '.join(_POSTS)}")
            options.update(base="plm_fix", post=rest[0])
            rest = rest[1:]
        elif head == "mim":
            # variants contain underscores, never dashes
            if not rest or rest[0] not in _VARIANTS:
                raise ConfigError(f"{text!r}: mim needs one of {', '.join(_VARIANTS.values())}")
            options.update(base="mim", mim_variant=_VARIANTS[rest[0]])
            rest = rest[1:]
        elif head == "ccm":
            options.update(base="ccm")
        else:
            raise ConfigError(f"{text!r}: unknown heuristic {head!r}")

        if rest and rest[0] == "srm":
            options["srm"] = True
            rest = rest[1:]
        if rest and rest[0] == "raw":
            options["remove_nonsimple"] = False
            rest = rest[1:]
        if rest:
            raise ConfigError(f"{text!r}: unexpected suffix {'-'.join(rest)!r}")
        return cls(**options)

    @property
    def name(self) -> str:
        if self.base == "plm_fix":
            parts = ["fix", self.post]
        elif self.base == "mim":
            parts = ["mim", self.mim_variant]
        else:
            parts = ["ccm"]
        if self.srm:
            parts.append("srm")
        if not self.remove_nonsimple:
            parts.append("raw")
        return "-".join(parts)

    def with_seed(self, seed: int) -> "HeuristicConfig":
        return self.model_copy(update={"seed": seed})

    def __str__(self) -> str:
        return self.name


class InstanceSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Literal["complete", "complete_bipartite", "cycle_product", "petersen", "random_regular", "file"]
    params: tuple[int, ...] = ()
    path: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "InstanceSpec":
        """``family:AxBxC`` for generators, ``file:PATH`` or a bare existing path for files."""
        family, sep, args = text.partition(":")
        if family == "file":
            return cls(family="file", path=args)
        if not sep:
            if Path(text).exists():
                return cls(family="file", path=text)
            raise ConfigError(f"{text!r} is neither an instance spec nor an existing file")
        arity = _ARITY.get(family)
        if arity is None:
            raise ConfigError(f"unknown instance family {family!r}")
        try:
            params = tuple(int(x) for x in args.lower().split("x"))
        except ValueError:
            raise ConfigError(f"{text!r}: parameters must be integers separated by 'x'") from None
        if len(params) != arity:
            raise ConfigError(f"{text!r}: {family} takes {arity} parameter(s)")
        return cls(family=family, params=params)

    @property
    def id(self) -> str:
        if self.family == "file":
            return Path(self.path).stem
        return f"{self.family}:{'x'.join(str(x) for x in self.params)}"

    def __str__(self) -> str:
        return self.id


class RunRecord(BaseModel):
    instance: str
    config: str
    seed: int
    crossings: Optional[int] = Field(None, ge=0)
    time_us: int = Field(0, ge=0)
    alpha_removed: int = 0
    beta_removed: int = 0
    sweeps: int = 0
    error: Optional[str] = None

    @field_validator("config")
    @classmethod
    def _config_parses(cls, value: str) -> str:
        HeuristicConfig.parse(value)
        return value

    @property
    def ok(self) -> bool:
        return self.crossings is not None


CSV_COLUMNS = ["instance", "config", "seed", "crossings", "time_us", "alpha_removed", "beta_removed", "sweeps", "error"]


class AggregateRecord(BaseModel):
    instance: str
    config: str
    permutations: int = Field(ge=1)
    best: int = Field(ge=0)
    mean: float = Field(ge=0)
    relative_improvement: float = Field(ge=0, le=1)


AGGREGATE_COLUMNS = ["instance", "config", "permutations", "best", "mean", "relative_improvement"]
