"""
Run configuration for the command-line tool.

A RunConfig is built from CLI flags, from a JSON file, or both (flags win).
Unknown keys are rejected; questionable but legal values only log warnings.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

from orbit_subspace_codes.errors import ConfigError

logger = logging.getLogger(__name__)

COMMANDS = (
    "field",
    "grassmannian",
    "orbit",
    "spread",
    "abelian-construct",
    "partition",
    "fast-mindist",
    "voronoi",
    "multishot",
    "reproduce-paper",
)

OUTPUT_FORMATS = ("json", "csv")

# Commands whose report includes a distance table
CSV_COMMANDS = ("fast-mindist", "partition", "multishot", "reproduce-paper")

# Fields each command cannot run without
REQUIRED_FIELDS: dict[str, tuple[str, ...]] = {
    "field": (),
    "grassmannian": ("q", "n", "k"),
    "orbit": ("field", "subspace"),
    "spread": ("field", "r"),
    "abelian-construct": ("q", "r"),
    "partition": ("field", "subspace", "series"),
    "fast-mindist": ("field", "subspace", "subgroup_order"),
    "voronoi": ("field", "subspace"),
    "multishot": ("field", "alphabet", "m", "distance"),
    "reproduce-paper": (),
}


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs.

    Attributes:
        command: One of COMMANDS
        field: Field descriptor `gf(p,t,n,[c0,...,cn])`
        group: Generator specs (`scalar:9`, `semilinear:1,1`, `unipotent:...`, `gl:...`)
        subspace: Exponent list or matrix literal
        series: Subgroup orders of a descending series
        subgroup_order: Order of the subgroup H for fast-mindist
        alphabet: `grassmannian:k` or `grassmannian-minus-spread:k`
        m: Number of shots
        distance: Design distance of a multishot code
        components: Component code specs, one per level (the last one repeats)
        q, n, k, r: Plain parameters for grassmannian, spread and abelian-construct
        rank_distance: Target minimum rank distance for abelian-construct
        generators_file: JSON list of matrix literals for abelian-construct
        output: Output path; stdout when unset
        output_format: json or csv
        parallelism: Concurrent checks in reproduce-paper
        seed: Seed for randomized checks
        diagnostic: Voronoi regions compare each point only with other codewords
    """

    command: str
    field: str | None = None
    group: tuple[str, ...] = ()
    subspace: str | None = None
    series: tuple[int, ...] = ()
    subgroup_order: int | None = None
    alphabet: str | None = None
    m: int | None = None
    distance: int | None = None
    components: tuple[str, ...] = ("repetition",)
    q: int | None = None
    n: int | None = None
    k: int | None = None
    r: int | None = None
    rank_distance: int | None = None
    generators_file: str | None = None
    output: str | None = None
    output_format: str = "json"
    parallelism: int = 1
    seed: int = 2024
    diagnostic: bool = False

    @classmethod
    def keys(cls) -> set[str]:
        return {f.name for f in fields(cls)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Build from a mapping, rejecting unknown keys.

        Raises:
            ConfigError: Unknown keys or a missing command
        """
        unknown = sorted(set(data) - cls.keys())
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
        if "command" not in data:
            raise ConfigError("Configuration needs a command")
        values = dict(data)
        for key in ("group", "components"):
            if key in values and isinstance(values[key], str):
                values[key] = (values[key],)
            if key in values:
                values[key] = tuple(values[key])
        if "series" in values:
            try:
                values["series"] = tuple(int(x) for x in values["series"])
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Series must be a list of subgroup orders: {e}") from e
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path, overrides: dict[str, Any] | None = None) -> "RunConfig":
        """Load JSON and apply overrides (values that are None are ignored)."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read configuration file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Configuration file {path} must hold a JSON object")
        for key, value in (overrides or {}).items():
            if value is not None and value != ():
                data[key] = value
        return cls.from_dict(data)

    def with_updates(self, **changes: Any) -> "RunConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def validate(self) -> "RunConfig":
        """Check required fields and value ranges.

        Raises:
            ConfigError: If the configuration cannot run
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}', expected one of {COMMANDS}")
        required = REQUIRED_FIELDS[self.command]
        missing = [name for name in required if getattr(self, name) in (None, ())]
        if missing:
            raise ConfigError(f"Command '{self.command}' needs: {', '.join(missing)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"Output format must be one of {OUTPUT_FORMATS}, got {self.output_format}"
            )
        if self.parallelism < 1:
            raise ConfigError(f"Parallelism must be at least 1, got {self.parallelism}")
        for name in ("m", "distance", "subgroup_order", "q", "n", "r", "rank_distance"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.k is not None and self.k < 0:
            raise ConfigError(f"k must be non-negative, got {self.k}")
        if self.command == "abelian-construct" and not (self.rank_distance or self.generators_file):
            raise ConfigError("abelian-construct needs --rank-distance or --generators-file")
        self._warn_questionable()
        return self

    def _warn_questionable(self) -> None:
        cpus = os.cpu_count() or 1
        if self.parallelism > cpus:
            logger.warning(f"Parallelism {self.parallelism} exceeds the {cpus} available CPUs")
        if self.output and not Path(self.output).is_absolute():
            logger.warning(f"Output path '{self.output}' is relative to {Path.cwd()}")
        if self.output_format == "csv" and self.command not in CSV_COMMANDS:
            logger.warning(f"'{self.command}' has no distance table; writing JSON instead of CSV")
        if self.diagnostic and self.command != "voronoi":
            logger.warning("The diagnostic flag only affects the voronoi command")
        if self.generators_file and self.rank_distance:
            logger.warning("Both a generators file and a rank distance given; the file wins")
