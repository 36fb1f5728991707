"""
Reproduction runner for the published examples and the construction properties.

Each check is a plain synchronous function that raises VerificationError on a
mismatch and returns a small JSON-ready detail dict. The runner dispatches the
checks to worker threads as tracked asyncio tasks and reports them in a fixed
order, so the report does not depend on the parallelism.
"""

import asyncio
import itertools
import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from orbit_subspace_codes.abelian_unipotent import (
    BlockSubspaceLayout,
    build_rank_metric_code,
    cardinality_comparison,
    construct_code,
    distance_bound,
    exact_distance_special,
)
from orbit_subspace_codes.errors import ConfigError, OrbitCodeError, VerificationError
from orbit_subspace_codes.finite_field import FieldSpec, parse_field_descriptor
from orbit_subspace_codes.group_action import (
    FieldScalar,
    Unipotent,
    cyclic_subgroup,
    semidirect_frobenius_group,
)
from orbit_subspace_codes.gu_partition import (
    closed_form_count,
    fast_min_distance,
    interdistance,
    intradistance,
    inverse_pair_representatives,
    partition,
    profile_polynomial,
)
from orbit_subspace_codes.matrix_fq import (
    MatrixFq,
    parse_matrix_literal,
    random_matrix,
    rank,
)
from orbit_subspace_codes.multishot import (
    assemble,
    build_alphabet_partition,
    component_from_spec,
    distance_to_json,
    intrasubset_distance,
    validate_component_codes,
)
from orbit_subspace_codes.orbit_code import (
    generate_orbit,
    min_distance_naive,
    orbits,
    spread_code,
    voronoi_region,
)
from orbit_subspace_codes.subspace import (
    from_field_elements,
    gaussian_binomial,
    grassmannian,
    subspace_distance,
)

logger = logging.getLogger(__name__)

GF64 = "gf(2,1,6,[1,1,0,0,0,0,1])"
GF16 = "gf(2,1,4,[1,1,0,0,1])"

TERNARY_LAYOUT = "1,0,0,1,2,0;0,1,0,1,0,0;0,0,1,0,2,1"
TERNARY_GENERATORS = (
    "1,0,0;0,1,0;0,0,0",
    "0,0,0;0,1,0;0,0,1",
    "0,0,1;0,1,0;0,1,0",
    "0,0,2;2,0,0;0,1,0",
    "1,1,2;0,1,2;2,0,1",
    "0,0,0;0,0,1;2,1,1",
)


# ============================================================================
# Helpers
# ============================================================================


def _expect(what: str, got: Any, want: Any) -> None:
    if got != want:
        raise VerificationError(f"{what}: expected {want}, got {got}")


def _gf64() -> FieldSpec:
    return parse_field_descriptor(GF64)


def _gf16() -> FieldSpec:
    return parse_field_descriptor(GF16)


def _histogram(counts: dict[int, int]) -> dict[str, int]:
    return {str(d): c for d, c in sorted(counts.items())}


# ============================================================================
# Checks
# ============================================================================


def check_cyclic_orbit_parameters(rng: np.random.Generator) -> dict[str, Any]:
    """Cyclic orbit code in GF(2^6) with parameters (6, 63, 4, 3)."""
    spec = _gf64()
    v = from_field_elements(spec, [1, 8, 12, 26, 27, 32, 35])
    code = generate_orbit(cyclic_subgroup(spec, spec.mult_order), v)
    _expect("Orbit code parameters", code.parameters(), (6, 63, 4, 3))
    return {"parameters": list(code.parameters())}


def check_unipotent_ternary_code(rng: np.random.Generator) -> dict[str, Any]:
    """Six ternary 3x3 generators span an MRD code; its orbit code is (6, 729, 4, 3)."""
    generators = [parse_matrix_literal(g, 3) for g in TERNARY_GENERATORS]
    rank_code = build_rank_metric_code(3, 3, generators)
    _expect("Rank-metric code size", rank_code.size, 729)
    _expect("Minimum rank distance", rank_code.min_rank_distance, 2)
    _expect("MRD", rank_code.is_mrd(), True)
    layout = BlockSubspaceLayout.from_matrix(parse_matrix_literal(TERNARY_LAYOUT, 3))
    code = construct_code(layout, rank_code)
    _expect("Orbit code parameters", code.parameters(), (6, 729, 4, 3))
    _expect("Stabilizer order", code.stabilizer.order, 1)
    comparison = cardinality_comparison(3, 6)
    return {
        "parameters": list(code.parameters()),
        "stabilizer_order": code.stabilizer.order,
        "semidirect_bound": comparison.semidirect_bound,
    }


def check_special_layout_distance(rng: np.random.Generator) -> dict[str, Any]:
    """d_S(V, V g_H) = 2 rank(H) for V = rs[Id | A]."""
    tested: dict[str, int] = {}
    for q, r in itertools.product((2, 3), (2, 3)):
        A = random_matrix(q, r, r, rng)
        layout = BlockSubspaceLayout.special(A)
        v = layout.subspace
        if q ** (r * r) <= 729:
            candidates = (
                MatrixFq(q, r, r, entries)
                for entries in itertools.product(range(q), repeat=r * r)
            )
            total = q ** (r * r)
        else:
            candidates = (random_matrix(q, r, r, rng) for _ in range(500))
            total = 500
        for H in candidates:
            got = subspace_distance(v, Unipotent(H).act(v))
            if got != exact_distance_special(A, H):
                raise VerificationError(
                    f"q={q}, r={r}: d_S = {got} but 2 rank(H) = {2 * rank(H)} for H = {H}"
                )
        tested[f"q={q},r={r}"] = total
    return {"tested": tested}


def _random_layout(q: int, rng: np.random.Generator) -> BlockSubspaceLayout:
    r = int(rng.integers(2, 4))
    k = int(rng.integers(1, 2 * r))
    while True:
        matrix = random_matrix(q, k, 2 * r, rng)
        if rank(matrix) == k:
            break
    return BlockSubspaceLayout.from_matrix(matrix, int(rng.integers(0, k + 1)))


def check_general_layout_bound(rng: np.random.Generator) -> dict[str, Any]:
    """d_S(V, V g_H) <= 2 rank([A H; C H]) on random layouts."""
    tight = 0
    for q in (2, 3):
        for _ in range(200):
            layout = _random_layout(q, rng)
            H = random_matrix(q, layout.r, layout.r, rng)
            v = layout.subspace
            got = subspace_distance(v, Unipotent(H).act(v))
            bound = distance_bound(layout, H)
            if got > bound:
                raise VerificationError(f"d_S = {got} exceeds the bound {bound} for {layout}")
            tight += got == bound
    return {"layouts": 400, "tight": tight}


def check_spread_codes(rng: np.random.Generator) -> dict[str, Any]:
    """Spread codes (q=2, n=6, r=3) and (q=2, n=4, r=2)."""
    result = {}
    for descriptor, r, size, d in ((GF64, 3, 9, 6), (GF16, 2, 5, 4)):
        code = spread_code(parse_field_descriptor(descriptor), r)
        _expect(f"Spread code size for r={r}", code.size, size)
        distances = intradistance(code.codewords).as_dict()
        _expect(f"Spread code distances for r={r}", set(distances), {d})
        result[f"n={code.n},r={r}"] = {"size": code.size, "distances": _histogram(distances)}
    return result


def check_profile_polynomials(rng: np.random.Generator) -> dict[str, Any]:
    """Equal profile polynomials of alpha^3 and alpha^6 under <alpha^9>, and inverse symmetry."""
    spec = _gf64()
    v = from_field_elements(spec, [0, 8, 10, 20, 48, 59, 61])
    code = generate_orbit(cyclic_subgroup(spec, spec.mult_order), v)
    gu = partition(code, cyclic_subgroup(spec, 7))
    want = {2: 7, 4: 14, 6: 28}
    polynomials = {}
    for i in (3, 6):
        poly = profile_polynomial(gu, FieldScalar(spec, i))
        _expect(f"Profile polynomial of alpha^{i}", dict(poly.coefficients), want)
        polynomials[f"a^{i}"] = str(poly)
    for coset in gu.cosets:
        g = coset.representative
        if profile_polynomial(gu, g) != profile_polynomial(gu, g.inverse()):
            raise VerificationError(f"Profile polynomials of {g} and its inverse differ")
    return {"polynomials": polynomials, "cosets": gu.t}


def check_fast_distance_oracle(rng: np.random.Generator) -> dict[str, Any]:
    """Coset-pair minimum distance equals the exhaustive minimum."""
    compared = 0
    cases = []
    spec64 = _gf64()
    pool = grassmannian(6, 3, 2)
    picks = rng.choice(len(pool), size=20, replace=False)
    cases.append((spec64, [pool[int(i)] for i in sorted(picks)]))
    spec16 = _gf16()
    cases.append((spec16, grassmannian(4, 2, 2)))
    for spec, subspaces in cases:
        group = cyclic_subgroup(spec, spec.mult_order)
        orders = [d for d in range(1, spec.mult_order + 1) if spec.mult_order % d == 0]
        subgroups = [cyclic_subgroup(spec, d) for d in orders]
        for v in subspaces:
            code = generate_orbit(group, v)
            oracle = min_distance_naive(code, exhaustive=True)
            for sub in subgroups:
                fast = fast_min_distance(code, sub).min_distance
                if fast != oracle:
                    raise VerificationError(
                        f"Fast distance {fast} != exhaustive {oracle} for {v} "
                        f"and the subgroup of order {sub.order}"
                    )
                compared += 1
    return {"comparisons": compared}


def check_reduced_count(rng: np.random.Generator) -> dict[str, Any]:
    """28 distance evaluations under <alpha^9> find minimum distance 4."""
    spec = _gf64()
    v = from_field_elements(spec, [0, 1, 4, 6, 16, 24, 33])
    code = generate_orbit(cyclic_subgroup(spec, spec.mult_order), v)
    subgroup = cyclic_subgroup(spec, 7)
    result = fast_min_distance(code, subgroup)
    _expect("Distance evaluations", result.computations, 28)
    _expect("Closed-form count", closed_form_count(2, 6, 7), 28)
    _expect("Minimum distance", result.min_distance, 4)
    gu = partition(code, subgroup)
    rows = []
    for pos in inverse_pair_representatives(gu):
        multiset = interdistance(gu.subcodes[0].codewords, gu.subcodes[pos].codewords)
        counts = multiset.as_dict()
        if not set(counts) <= {4, 6}:
            raise VerificationError(f"Interdistance row {counts} has values outside 4 and 6")
        rows.append(_histogram(counts))
    _expect("Interdistance rows", len(rows), 4)
    _expect("Smallest interdistance", min(int(d) for row in rows for d in row), 4)
    return {"computations": result.computations, "min_distance": 4, "rows": rows}


def check_alphabet_partition_counts(rng: np.random.Generator) -> dict[str, Any]:
    """G_2(6,3) minus the spread: orbit sizes and per-level distance counts."""
    spec = _gf64()
    spread = set(spread_code(spec, 3).codewords)
    alphabet = [s for s in grassmannian(6, 3, 2) if s not in spread]
    _expect("Alphabet size", len(alphabet), 1386)
    semidirect = sorted(o.size for o in orbits(semidirect_frobenius_group(spec), alphabet))
    _expect("Semidirect orbit sizes", semidirect, [126, 126, 189, 189, 378, 378])
    group = cyclic_subgroup(spec, spec.mult_order)
    series = [cyclic_subgroup(spec, 21), cyclic_subgroup(spec, 7)]
    tree = build_alphabet_partition(alphabet, group, series)
    _expect("Cyclic orbit sizes", [node.size for node in tree.levels[1]], [63] * 22)
    want = {1: (616, 42966), 2: (154, 13860), 3: (132, 4158)}
    counts = {}
    for level, (fast, naive) in want.items():
        result = intrasubset_distance(tree, level)
        got = (result.fast_computations, result.naive_computations)
        _expect(f"Level {level} fast/naive counts", got, (fast, naive))
        counts[str(level)] = {
            "fast": fast,
            "naive": naive,
            "distance": distance_to_json(result.distance),
        }
    return {"semidirect_orbits": semidirect, "levels": counts}


def check_grassmannian_sizes(rng: np.random.Generator) -> dict[str, Any]:
    """Enumerated Grassmannians match the Gaussian binomial."""
    sizes = {}
    for n, k, want in ((4, 2, 35), (6, 3, 1395)):
        points = grassmannian(n, k, 2)
        _expect(f"|G_2({n},{k})|", len(points), want)
        _expect(f"Gaussian binomial [{n} {k}]_2", gaussian_binomial(n, k, 2), want)
        _expect(f"Distinct points of G_2({n},{k})", len(set(points)), want)
        sizes[f"G_2({n},{k})"] = want
    return sizes


def check_voronoi_symmetry(rng: np.random.Generator) -> dict[str, Any]:
    """A symmetry of the code maps Voronoi regions onto Voronoi regions."""
    spec = _gf16()
    v1 = from_field_elements(spec, [0, 1, 4])
    code = generate_orbit(cyclic_subgroup(spec, spec.mult_order), v1)
    ambient = grassmannian(4, 2, 2)
    orbit_sizes = sorted(o.size for o in orbits(code.group, ambient))
    _expect("Orbit sizes of G_2(4,2)", orbit_sizes, [5, 15, 15])
    symmetry = FieldScalar(spec, 11)
    image = symmetry.act(v1)
    region = voronoi_region(code, ambient, v1)
    moved = sorted(symmetry.act(x) for x in region)
    target = voronoi_region(code, ambient, image)
    _expect("Image of the Voronoi region", moved, target)
    diagnostic = voronoi_region(code, ambient, v1, exclude_self=True)
    return {"region_size": len(region), "diagnostic_region_size": len(diagnostic)}


def check_multishot_assembly(rng: np.random.Generator) -> dict[str, Any]:
    """Validated component codes on G_2(4,2) minus the spread reach the design distance."""
    spec = _gf16()
    spread = set(spread_code(spec, 2).codewords)
    alphabet = [s for s in grassmannian(4, 2, 2) if s not in spread]
    group = cyclic_subgroup(spec, spec.mult_order)
    tree = build_alphabet_partition(alphabet, group, [cyclic_subgroup(spec, 5)])
    _expect("Branching", [tree.branching[level] for level in sorted(tree.branching)], [2, 3, 5])
    m, d = 2, 4
    assembled: dict[tuple[str, ...], dict[str, Any]] = {}
    for names in itertools.product(("repetition", "full"), repeat=tree.depth):
        components = [
            component_from_spec(name, tree.branching[level + 1], m)
            for level, name in enumerate(names)
        ]
        validation = validate_component_codes(tree, components, d)
        if not validation.valid:
            continue
        code = assemble(tree, components, validation)
        found = code.verify()
        used = names[: validation.last_level]
        assembled[used] = {
            "components": list(used),
            "size": code.size,
            "min_extended_distance": distance_to_json(found),
        }
    if not any(set(used) == {"repetition"} for used in assembled):
        raise VerificationError("The all-repetition components were not validated")
    return {"design_distance": d, "m": m, "assembled": list(assembled.values())}


# ============================================================================
# Runner
# ============================================================================


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    run: Callable[[np.random.Generator], dict[str, Any]]


CHECKS: tuple[Check, ...] = (
    Check(1, "cyclic-orbit-parameters", check_cyclic_orbit_parameters),
    Check(2, "unipotent-ternary-code", check_unipotent_ternary_code),
    Check(3, "special-layout-distance", check_special_layout_distance),
    Check(4, "general-layout-bound", check_general_layout_bound),
    Check(5, "spread-codes", check_spread_codes),
    Check(6, "profile-polynomials", check_profile_polynomials),
    Check(7, "fast-distance-oracle", check_fast_distance_oracle),
    Check(8, "reduced-count", check_reduced_count),
    Check(9, "alphabet-partition-counts", check_alphabet_partition_counts),
    Check(10, "grassmannian-sizes", check_grassmannian_sizes),
    Check(11, "voronoi-symmetry", check_voronoi_symmetry),
    Check(12, "multishot-assembly", check_multishot_assembly),
)


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "number": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "error": self.error,
        }


@dataclass
class ReproductionReport:
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "number": r.number,
                "name": r.name,
                "status": "pass" if r.passed else "fail",
                "error": r.error or "",
            }
            for r in self.results
        ]


class ReproductionRunner:
    """Runs checks in worker threads, at most `parallelism` at a time.

    Every check gets its own generator seeded from (seed, check number), so
    results do not depend on scheduling.
    """

    def __init__(
        self,
        parallelism: int = 1,
        seed: int = 2024,
        checks: Sequence[Check] = CHECKS,
    ) -> None:
        self.parallelism = max(1, parallelism)
        self.seed = seed
        self.checks = list(checks)
        self._tasks: dict[str, asyncio.Task] = {}
        self._failures: dict[str, str] = {}

    async def _run_check(self, check: Check, semaphore: asyncio.Semaphore) -> CheckResult:
        async with semaphore:
            rng = np.random.default_rng([self.seed, check.number])
            started = time.perf_counter()
            logger.info(f"Check {check.number} ({check.name}) started")
            try:
                detail = await asyncio.to_thread(check.run, rng)
            except VerificationError as e:
                return CheckResult(check.number, check.name, False, error=str(e))
            except OrbitCodeError as e:
                error = f"{type(e).__name__}: {e}"
                return CheckResult(check.number, check.name, False, error=error)
            finally:
                elapsed = time.perf_counter() - started
                logger.info(f"Check {check.number} ({check.name}) finished in {elapsed:.2f}s")
            return CheckResult(check.number, check.name, True, detail)

    def _on_check_complete(self, name: str, task: asyncio.Task) -> None:
        """Done callback: record failures and unexpected exceptions."""
        try:
            exc = task.exception()
            if exc:
                logger.error(f"Check {name} raised: {exc}")
                self._failures[name] = f"{type(exc).__name__}: {exc}"
            elif not task.result().passed:
                logger.error(f"Check {name} failed: {task.result().error}")
                self._failures[name] = task.result().error or "failed"
        except asyncio.CancelledError:
            logger.warning(f"Check {name} was cancelled")
            self._failures[name] = "cancelled"
        self._tasks.pop(name, None)
        logger.debug(f"Check {name} done, {len(self._tasks)} checks remaining")

    async def run(self) -> ReproductionReport:
        semaphore = asyncio.Semaphore(self.parallelism)
        ordered: list[tuple[Check, asyncio.Task]] = []
        for check in self.checks:
            task = asyncio.create_task(self._run_check(check, semaphore))
            self._tasks[check.name] = task
            task.add_done_callback(lambda t, name=check.name: self._on_check_complete(name, t))
            ordered.append((check, task))
        await asyncio.gather(*(task for _, task in ordered), return_exceptions=True)
        results = []
        for check, task in ordered:
            if task.cancelled():
                results.append(CheckResult(check.number, check.name, False, error="cancelled"))
            elif task.exception() is not None:
                exc = task.exception()
                error = f"{type(exc).__name__}: {exc}"
                results.append(CheckResult(check.number, check.name, False, error=error))
            else:
                results.append(task.result())
        passed = sum(r.passed for r in results)
        logger.info(f"{passed}/{len(results)} checks passed")
        return ReproductionReport(results)

    @property
    def failures(self) -> dict[str, str]:
        return dict(self._failures)


def select_checks(names: Sequence[str] | None) -> list[Check]:
    """Checks by name or number, in their fixed order; all of them for None."""
    if not names:
        return list(CHECKS)
    wanted = set(names)
    chosen = [c for c in CHECKS if c.name in wanted or str(c.number) in wanted]
    known = {c.name for c in chosen} | {str(c.number) for c in chosen}
    unknown = sorted(wanted - known)
    if unknown:
        raise ConfigError(f"Unknown checks: {', '.join(unknown)}")
    return chosen


def run_reproduction(
    parallelism: int = 1, seed: int = 2024, names: Sequence[str] | None = None
) -> ReproductionReport:
    return asyncio.run(ReproductionRunner(parallelism, seed, select_checks(names)).run())
