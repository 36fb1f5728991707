"""Tests for the orbit-codes command line."""

import json

import pytest

from orbit_subspace_codes.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFICATION, main

from .conftest import GF16, GF64

BINARY_ORBIT = "1,8,12,26,27,32,35"
REDUCED_COUNT = "0,1,4,6,16,24,33"


def _run_json(tmp_path, argv, name="out.json"):
    path = tmp_path / name
    exit_code = main(["--output", str(path), *argv])
    return exit_code, json.loads(path.read_text())


def test_orbit_command(tmp_path):
    """Test the cyclic orbit report carries (n, M, d, k)."""
    exit_code, report = _run_json(tmp_path, ["orbit", "--field", GF64, "--subspace", BINARY_ORBIT])
    assert exit_code == EXIT_OK
    assert report["parameters"] == [6, 63, 4, 3]
    assert report["stabilizer_order"] == 1
    assert report["generating_group"] is True
    assert len(report["codewords"]) == 63


def test_output_is_deterministic(tmp_path):
    """Test two runs write identical bytes."""
    argv = ["orbit", "--field", GF16, "--subspace", "0,1,4"]
    main(["--output", str(tmp_path / "a.json"), *argv])
    main(["--output", str(tmp_path / "b.json"), *argv])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_grassmannian_to_stdout(capsys):
    """Test reports go to stdout without --output."""
    assert main(["grassmannian", "--q", "2", "--n", "4", "--k", "2"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["count"] == 35
    assert report["gaussian_binomial"] == 35


def test_field_command(tmp_path):
    """Test the field report lists every power of alpha."""
    exit_code, report = _run_json(tmp_path, ["field", "--field", GF16])
    assert exit_code == EXIT_OK
    assert report["order"] == 16
    assert len(report["powers"]) == 15
    assert report["powers"][4] == [1, 1, 0, 0]


def test_spread_from_config_file(tmp_path):
    """Test a JSON config file supplies the command's parameters."""
    config = tmp_path / "spread.json"
    config.write_text(json.dumps({"command": "spread", "field": GF16, "r": 2}))
    exit_code, report = _run_json(tmp_path, ["--config", str(config), "spread"])
    assert exit_code == EXIT_OK
    assert report["parameters"] == [4, 5, 4, 2]
    assert report["stabilizer_order"] == 3


def test_abelian_construct(tmp_path):
    """Test the unipotent orbit of [Id | 0] under a Gabidulin code."""
    exit_code, report = _run_json(
        tmp_path, ["abelian-construct", "--q", "2", "--r", "2", "--rank-distance", "2"]
    )
    assert exit_code == EXIT_OK
    assert report["rank_metric_code"]["mrd"] is True
    assert report["orbit_code"]["parameters"] == [4, 4, 4, 2]
    assert report["stabilizer_in_code"] == 1
    assert report["stabilizer_is_solution_space"] is True


def test_abelian_construct_from_generators_file(tmp_path):
    """Test rank-metric generators read from a JSON list of literals."""
    generators = tmp_path / "generators.json"
    generators.write_text(json.dumps(["1,0;0,1", "0,1;1,1"]))
    exit_code, report = _run_json(
        tmp_path,
        ["abelian-construct", "--q", "2", "--r", "2", "--generators-file", str(generators)],
    )
    assert exit_code == EXIT_OK
    assert report["rank_metric_code"]["size"] == 4
    assert report["orbit_code"]["parameters"][1] == 4


def test_fast_mindist_csv(tmp_path):
    """Test the CSV table has one row per representative coset."""
    path = tmp_path / "table.csv"
    exit_code = main(
        [
            "--output", str(path), "--format", "csv",
            "fast-mindist", "--field", GF64, "--subspace", REDUCED_COUNT, "--subgroup-order", "7",
        ]
    )
    assert exit_code == EXIT_OK
    lines = path.read_text().splitlines()
    assert lines[0] == "coset,profile,minimum"
    assert len(lines) == 5


def test_fast_mindist_json(tmp_path):
    """Test the JSON report carries the distance counts."""
    exit_code, report = _run_json(
        tmp_path,
        ["fast-mindist", "--field", GF64, "--subspace", REDUCED_COUNT, "--subgroup-order", "7"],
    )
    assert exit_code == EXIT_OK
    assert report["min_distance"] == 4
    assert report["computations_fast"] == 28
    assert report["computations_naive"] == 62
    assert len(report["table"]) == 4


def test_partition_command(tmp_path):
    """Test one row per level of the chain."""
    exit_code, report = _run_json(
        tmp_path,
        ["partition", "--field", GF64, "--subspace", REDUCED_COUNT, "--series", "21", "7"],
    )
    assert exit_code == EXIT_OK
    assert [row["subsets"] for row in report["levels"]] == [1, 3, 9]
    assert report["fair_chain"] is True


def test_voronoi_command(tmp_path):
    """Test the region of a line in F_2^4 includes the line itself."""
    exit_code, report = _run_json(tmp_path, ["voronoi", "--field", GF16, "--subspace", "0,1,4"])
    assert exit_code == EXIT_OK
    assert report["codeword"] in report["region"]
    assert report["diagnostic"] is False


def test_multishot_command(tmp_path):
    """Test repetition components reach the design distance."""
    exit_code, report = _run_json(
        tmp_path,
        [
            "multishot", "--field", GF16, "--alphabet", "grassmannian-minus-spread:2",
            "--series", "5", "--m", "2", "--distance", "4",
        ],
    )
    assert exit_code == EXIT_OK
    assert report["validation"]["valid"] is True
    assert report["code"]["size"] == 30
    assert report["min_extended_distance"] >= 4


def test_multishot_invalid_components(tmp_path):
    """Test failed validation exits with the verification status."""
    exit_code, report = _run_json(
        tmp_path,
        [
            "multishot", "--field", GF16, "--alphabet", "grassmannian-minus-spread:2",
            "--series", "5", "--m", "2", "--distance", "4", "--components", "full",
        ],
    )
    assert exit_code == EXIT_VERIFICATION
    assert report["validation"]["valid"] is False
    assert "code" not in report


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--field", "gf(2,1,2,[1,0,1])", "--subspace", "0"],
        ["orbit", "--field", GF16],
        ["fast-mindist", "--field", GF64, "--subspace", REDUCED_COUNT, "--subgroup-order", "5"],
        [
            "multishot", "--field", GF16, "--alphabet", "grassmannian:2",
            "--m", "2", "--distance", "4",
        ],
        ["orbit", "--field", GF16, "--subspace", "0,1,4", "--group", "bogus:1"],
        ["grassmannian", "--q", "1", "--n", "3", "--k", "1"],
        ["grassmannian", "--q", "6", "--n", "2", "--k", "1"],
    ],
)
def test_invalid_input_exit_code(argv, capsys):
    """Test invalid configurations and inputs exit with status 2."""
    assert main(argv) == EXIT_CONFIG
    assert "orbit-codes: error:" in capsys.readouterr().err


def test_bad_config_file(tmp_path):
    """Test unknown keys in a config file exit with status 2."""
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"command": "orbit", "colour": "blue"}))
    assert main(["--config", str(config), "orbit"]) == EXIT_CONFIG
