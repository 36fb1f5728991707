"""Tests for the reproduction runner and its checks."""

import pytest

from orbit_subspace_codes.errors import ConfigError, VerificationError
from orbit_subspace_codes.reproduce import (
    CHECKS,
    Check,
    ReproductionRunner,
    check_cyclic_orbit_parameters,
    check_general_layout_bound,
    check_multishot_assembly,
    check_profile_polynomials,
    check_special_layout_distance,
    run_reproduction,
    select_checks,
)

CHEAP = ["spread-codes", "reduced-count", "grassmannian-sizes", "voronoi-symmetry"]


def _failing(rng):
    raise VerificationError("expected 1, got 2")


def _crashing(rng):
    raise RuntimeError("boom")


def test_select_checks_by_name_and_number():
    """Test selection keeps the fixed order."""
    chosen = select_checks(["grassmannian-sizes", "5"])
    assert [c.number for c in chosen] == [5, 10]
    assert len(select_checks(None)) == len(CHECKS) == 12


def test_select_checks_rejects_unknown():
    """Test unknown check names raise ConfigError."""
    with pytest.raises(ConfigError):
        select_checks(["no-such-check"])


async def test_runner_passes_cheap_checks():
    """Test a subset of checks runs concurrently and reports in fixed order."""
    runner = ReproductionRunner(parallelism=2, checks=select_checks(CHEAP))
    report = await runner.run()
    assert report.passed
    assert [r.number for r in report.results] == [5, 8, 10, 11]
    assert runner.failures == {}
    assert report.results[1].detail["computations"] == 28


async def test_report_independent_of_parallelism():
    """Test the report is the same for one and several workers."""
    checks = select_checks(["spread-codes", "special-layout-distance", "general-layout-bound"])
    serial = await ReproductionRunner(parallelism=1, seed=5, checks=checks).run()
    parallel = await ReproductionRunner(parallelism=3, seed=5, checks=checks).run()
    assert serial.to_dict() == parallel.to_dict()


async def test_runner_records_failures():
    """Test verification failures and unexpected exceptions become failed results."""
    checks = [Check(1, "failing", _failing), Check(2, "crashing", _crashing)]
    runner = ReproductionRunner(parallelism=2, checks=checks)
    report = await runner.run()
    assert not report.passed
    first, second = report.results
    assert first.error == "expected 1, got 2"
    assert second.error == "RuntimeError: boom"
    assert set(runner.failures) == {"failing", "crashing"}
    assert report.rows()[0]["status"] == "fail"
    assert report.to_dict()["checks"][1]["status"] == "fail"


def test_individual_checks(rng):
    """Test the cheaper checks directly."""
    assert check_cyclic_orbit_parameters(rng) == {"parameters": [6, 63, 4, 3]}
    assert check_profile_polynomials(rng)["cosets"] == 9
    assert check_special_layout_distance(rng)["tested"]["q=2,r=2"] == 16
    assert check_general_layout_bound(rng)["layouts"] == 400


def test_multishot_check(rng):
    """Test the all-repetition components are the ones assembled."""
    detail = check_multishot_assembly(rng)
    assert detail["assembled"] == [
        {
            "components": ["repetition", "repetition", "repetition"],
            "size": 30,
            "min_extended_distance": 4,
        }
    ]


@pytest.mark.slow
def test_full_reproduction():
    """Test every published example reproduces."""
    report = run_reproduction(parallelism=4)
    failures = {r.name: r.error for r in report.results if not r.passed}
    assert failures == {}
