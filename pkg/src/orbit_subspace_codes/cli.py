"""
Command-line entry point: `orbit-codes <command> [options]`.

Every command prints one JSON document (keys sorted) or, for commands with a
distance table, CSV rows. Exit codes: 0 success, 2 invalid configuration or
input, 3 a numeric verification failed.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from orbit_subspace_codes import __version__
from orbit_subspace_codes.abelian_unipotent import (
    BlockSubspaceLayout,
    build_rank_metric_code,
    cardinality_comparison,
    construct_code,
    gabidulin_code,
    stabilizer_in_code,
    stabilizer_is_solution_space,
)
from orbit_subspace_codes.config import COMMANDS, CSV_COMMANDS, RunConfig
from orbit_subspace_codes.errors import ConfigError, OrbitCodeError, VerificationError
from orbit_subspace_codes.finite_field import FieldSpec, default_field, parse_field_descriptor
from orbit_subspace_codes.group_action import (
    FiniteGroup,
    cyclic_subgroup,
    generate_group,
    parse_generator_spec,
)
from orbit_subspace_codes.gu_partition import (
    chain_partition,
    fast_min_distance,
    interdistance,
    inverse_pair_representatives,
    is_fair,
    is_fair_chain,
    partition,
    profile_polynomial,
)
from orbit_subspace_codes.matrix_fq import MatrixFq, hstack, parse_matrix_literal
from orbit_subspace_codes.multishot import (
    assemble,
    build_alphabet_partition,
    component_from_spec,
    distance_to_json,
    validate_component_codes,
)
from orbit_subspace_codes.orbit_code import (
    OrbitCode,
    generate_orbit,
    is_generating_group,
    is_geometrically_uniform,
    spread_code,
    voronoi_region,
)
from orbit_subspace_codes.reproduce import run_reproduction
from orbit_subspace_codes.subspace import (
    Subspace,
    gaussian_binomial,
    grassmannian,
    parse_subspace_spec,
)

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "ORBIT_CODES_LOG_LEVEL"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFICATION = 3


# ============================================================================
# Report
# ============================================================================


class Report:
    """A JSON document plus optional table rows for CSV output."""

    def __init__(self, document: dict[str, Any], rows: list[dict[str, Any]] | None = None):
        self.document = document
        self.rows = rows
        self.failed = False

    def render(self, output_format: str) -> str:
        if output_format == "csv" and self.rows:
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=list(self.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.rows)
            return buffer.getvalue()
        return json.dumps(self.document, indent=2, sort_keys=True) + "\n"


# ============================================================================
# Shared builders
# ============================================================================


def _field(config: RunConfig) -> FieldSpec:
    if config.field:
        return parse_field_descriptor(config.field)
    if config.q and config.n:
        return default_field(config.q, config.n)
    raise ConfigError("A field needs --field or both --q and --n")


def _group(config: RunConfig, spec: FieldSpec) -> FiniteGroup:
    """Group generated by the --group specs; <alpha> when none are given."""
    if not config.group:
        return cyclic_subgroup(spec, spec.mult_order)
    return generate_group([parse_generator_spec(g, spec) for g in config.group])


def _subspace(config: RunConfig, spec: FieldSpec) -> Subspace:
    assert config.subspace is not None
    return parse_subspace_spec(config.subspace, spec.q, spec.n, spec)


def _series(config: RunConfig, spec: FieldSpec) -> list[FiniteGroup]:
    return [cyclic_subgroup(spec, order) for order in config.series]


def _alphabet(config: RunConfig, spec: FieldSpec) -> list[Subspace]:
    """`grassmannian:k` or `grassmannian-minus-spread:k`."""
    assert config.alphabet is not None
    kind, _, body = config.alphabet.partition(":")
    try:
        k = int(body)
    except ValueError as e:
        raise ConfigError(f"Malformed alphabet '{config.alphabet}'") from e
    points = grassmannian(spec.n, k, spec.q)
    if kind == "grassmannian":
        return points
    if kind == "grassmannian-minus-spread":
        spread = set(spread_code(spec, k).codewords)
        return [s for s in points if s not in spread]
    raise ConfigError(f"Unknown alphabet kind '{kind}'")


def _code_summary(code: OrbitCode) -> dict[str, Any]:
    summary = code.to_dict()
    summary["generating_group"] = is_generating_group(code)
    summary["geometrically_uniform"] = is_geometrically_uniform(code)
    return summary


# ============================================================================
# Commands
# ============================================================================


def cmd_field(config: RunConfig) -> Report:
    spec = _field(config)
    powers = spec.exp_rows(list(range(spec.mult_order)))
    return Report(
        {
            "descriptor": spec.descriptor(),
            "q": spec.q,
            "n": spec.n,
            "order": spec.order,
            "powers": powers.tolist(),
        }
    )


def cmd_grassmannian(config: RunConfig) -> Report:
    assert config.q is not None and config.n is not None and config.k is not None
    points = grassmannian(config.n, config.k, config.q)
    return Report(
        {
            "q": config.q,
            "n": config.n,
            "k": config.k,
            "count": len(points),
            "gaussian_binomial": gaussian_binomial(config.n, config.k, config.q),
            "subspaces": [s.to_dict()["rows"] for s in points],
        }
    )


def cmd_orbit(config: RunConfig) -> Report:
    spec = _field(config)
    code = generate_orbit(_group(config, spec), _subspace(config, spec))
    return Report(_code_summary(code))


def cmd_spread(config: RunConfig) -> Report:
    assert config.r is not None
    return Report(_code_summary(spread_code(_field(config), config.r)))


def _load_generators(path: str, q: int) -> list[MatrixFq]:
    try:
        literals = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read generators file {path}: {e}") from e
    if not isinstance(literals, list):
        raise ConfigError(f"Generators file {path} must hold a list of matrix literals")
    return [parse_matrix_literal(str(m), q) for m in literals]


def cmd_abelian_construct(config: RunConfig) -> Report:
    assert config.q is not None and config.r is not None
    q, r = config.q, config.r
    if config.generators_file:
        rank_code = build_rank_metric_code(q, r, _load_generators(config.generators_file, q))
    else:
        assert config.rank_distance is not None
        rank_code = gabidulin_code(q, r, config.rank_distance)
    if config.subspace:
        layout = BlockSubspaceLayout.from_matrix(parse_matrix_literal(config.subspace, q))
    else:
        layout = BlockSubspaceLayout.from_matrix(
            hstack(MatrixFq.identity(q, r), MatrixFq.zeros(q, r, r))
        )
    code = construct_code(layout, rank_code)
    return Report(
        {
            "rank_metric_code": rank_code.to_dict(),
            "orbit_code": {
                "parameters": list(code.parameters()),
                "stabilizer_order": code.stabilizer.order,
            },
            "stabilizer_in_code": stabilizer_in_code(layout, rank_code),
            "stabilizer_is_solution_space": stabilizer_is_solution_space(layout),
            "comparison": cardinality_comparison(q, 2 * r).to_dict(),
        }
    )


def cmd_partition(config: RunConfig) -> Report:
    spec = _field(config)
    code = generate_orbit(_group(config, spec), _subspace(config, spec))
    chain = chain_partition(code, _series(config, spec))
    rows = [
        {
            "level": level,
            "subgroup_order": gu.subgroup.order,
            "subsets": len(gu.distinct_subsets()),
            "subset_size": gu.subcodes[0].size,
            "fair": is_fair(gu),
        }
        for level, gu in enumerate(chain.levels)
    ]
    document = {"code_size": code.size, "fair_chain": is_fair_chain(chain), "levels": rows}
    return Report(document, rows)


def cmd_fast_mindist(config: RunConfig) -> Report:
    assert config.subgroup_order is not None
    spec = _field(config)
    code = generate_orbit(_group(config, spec), _subspace(config, spec))
    subgroup = cyclic_subgroup(spec, config.subgroup_order)
    result = fast_min_distance(code, subgroup)
    rows = []
    if not result.fell_back:
        gu = partition(code, subgroup)
        for pos in inverse_pair_representatives(gu):
            g = gu.cosets[pos].representative
            multiset = interdistance(gu.subcodes[0].codewords, gu.subcodes[pos].codewords)
            rows.append(
                {
                    "coset": str(g),
                    "profile": str(profile_polynomial(gu, g)),
                    "minimum": multiset.minimum,
                }
            )
    return Report({**result.to_dict(), "table": rows}, rows)


def cmd_voronoi(config: RunConfig) -> Report:
    spec = _field(config)
    v = _subspace(config, spec)
    code = generate_orbit(_group(config, spec), v)
    ambient = grassmannian(spec.n, v.k, spec.q)
    region = voronoi_region(code, ambient, v, exclude_self=config.diagnostic)
    return Report(
        {
            "codeword": v.to_dict()["rows"],
            "diagnostic": config.diagnostic,
            "size": len(region),
            "region": [s.to_dict()["rows"] for s in region],
        }
    )


def cmd_multishot(config: RunConfig) -> Report:
    assert config.m is not None and config.distance is not None
    spec = _field(config)
    tree = build_alphabet_partition(
        _alphabet(config, spec), _group(config, spec), _series(config, spec)
    )
    specs = list(config.components)
    specs += [specs[-1]] * (tree.depth - len(specs))
    components = [
        component_from_spec(name, tree.branching[level + 1], config.m)
        for level, name in enumerate(specs[: tree.depth])
    ]
    validation = validate_component_codes(tree, components, config.distance)
    rows = tree.stats()
    document: dict[str, Any] = {"levels": rows, "validation": validation.to_dict()}
    report = Report(document, rows)
    if validation.valid:
        code = assemble(tree, components, validation, config.m)
        document["code"] = code.to_dict()
        document["min_extended_distance"] = distance_to_json(code.verify())
    else:
        report.failed = True
    return report


def cmd_reproduce_paper(config: RunConfig) -> Report:
    report = run_reproduction(config.parallelism, config.seed)
    result = Report(report.to_dict(), report.rows())
    result.failed = not report.passed
    return result


HANDLERS = {
    "field": cmd_field,
    "grassmannian": cmd_grassmannian,
    "orbit": cmd_orbit,
    "spread": cmd_spread,
    "abelian-construct": cmd_abelian_construct,
    "partition": cmd_partition,
    "fast-mindist": cmd_fast_mindist,
    "voronoi": cmd_voronoi,
    "multishot": cmd_multishot,
    "reproduce-paper": cmd_reproduce_paper,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Dispatch a validated configuration; returns the exit status and the rendered report."""
    config.validate()
    logger.info(f"Running {config.command}")
    report = HANDLERS[config.command](config)
    text = report.render(config.output_format if config.command in CSV_COMMANDS else "json")
    return (EXIT_VERIFICATION if report.failed else EXIT_OK), text


# ============================================================================
# Argument parsing
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbit-codes", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--config", help="JSON file with RunConfig keys; flags override it")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--format", dest="output_format", choices=("json", "csv"))
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--field", help="gf(p,t,n,[c0,...,cn])")
        cmd.add_argument("--group", action="append", help="Generator spec, repeatable")
        cmd.add_argument("--subspace", help="Exponent list or matrix literal")
        cmd.add_argument("--series", type=int, nargs="+", help="Subgroup orders, largest first")
        cmd.add_argument("--subgroup-order", type=int)
        cmd.add_argument("--alphabet")
        cmd.add_argument("--m", type=int)
        cmd.add_argument("--distance", type=int)
        cmd.add_argument("--components", nargs="+")
        for key in ("q", "n", "k", "r"):
            cmd.add_argument(f"--{key}", type=int)
        cmd.add_argument("--rank-distance", type=int)
        cmd.add_argument("--generators-file")
        cmd.add_argument("--parallelism", type=int)
        cmd.add_argument("--seed", type=int)
        cmd.add_argument("--diagnostic", action="store_true", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: getattr(args, key, None) for key in RunConfig.keys()}
    values["command"] = args.command
    for key in ("group", "series", "components"):
        if values[key] is not None:
            values[key] = tuple(values[key])
    if args.config:
        return RunConfig.from_file(args.config, values)
    return RunConfig.from_dict({k: v for k, v in values.items() if v is not None})


def configure_logging(verbose: int) -> None:
    level_name = os.environ.get(LOG_LEVEL_ENV)
    if verbose:
        level = logging.DEBUG if verbose > 1 else logging.INFO
    elif level_name:
        level = getattr(logging, level_name.upper(), logging.WARNING)
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
        status, text = run(config)
    except VerificationError as e:
        logger.error(f"Verification failed: {e}")
        return EXIT_VERIFICATION
    except OrbitCodeError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"orbit-codes: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except TypeError as e:
        # wrong value types in a config file
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG
    if config.output:
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
