"""
Finite Field - arithmetic in GF(q^n) over a base field F_q.

The extension field is defined by a monic primitive polynomial p(x) over F_q,
with q = p^t. Base-field arithmetic is delegated to galois; the extension is
held in dual representation: every nonzero element is both a power alpha^i of
the root alpha of p(x) and a coordinate vector over the polynomial basis
{1, alpha, ..., alpha^(n-1)}. Both tables are built eagerly at construction.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Any

import galois
import numpy as np

from orbit_subspace_codes.errors import (
    FieldError,
    FieldZeroDivisionError,
    NonPrimitivePolynomialError,
    ReduciblePolynomialError,
)

logger = logging.getLogger(__name__)

SUPPORTED_CHARACTERISTICS = (2, 3, 5, 7)

# Largest q^n for which exp/log tables are built
MAX_FIELD_ORDER = 4096


def base_field(q: int) -> type[galois.FieldArray]:
    """Return the galois array class for F_q (cached by galois)."""
    return galois.GF(q)


def split_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^t for a supported characteristic p.

    Raises:
        FieldError: If q is not a power of a supported prime
    """
    for p in SUPPORTED_CHARACTERISTICS:
        t, rest = 0, q
        while rest % p == 0:
            rest //= p
            t += 1
        if rest == 1 and t >= 1:
            return p, t
    raise FieldError(f"q={q} is not a power of a supported prime {SUPPORTED_CHARACTERISTICS}")


# ============================================================================
# Field specification
# ============================================================================


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(q^n) = F_q[x]/<p(x)> with q = p^t.

    Attributes:
        p: Characteristic
        t: Base-field exponent, q = p^t
        n: Extension degree
        poly: Coefficients of p(x) over F_q, lowest degree first, length n+1
    """

    p: int
    t: int
    n: int
    poly: tuple[int, ...]
    _exp: np.ndarray = field(init=False, repr=False, compare=False)
    _log: np.ndarray = field(init=False, repr=False, compare=False)
    _weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._validate()
        exp_table = self._build_exp_table()
        log_table = np.full(self.order, -1, dtype=np.int64)
        weights = self.q ** np.arange(self.n, dtype=np.int64)
        log_table[exp_table @ weights] = np.arange(self.mult_order, dtype=np.int64)
        object.__setattr__(self, "_exp", exp_table)
        object.__setattr__(self, "_log", log_table)
        object.__setattr__(self, "_weights", weights)
        logger.debug(f"Built exp/log tables for {self.descriptor()}")

    @property
    def q(self) -> int:
        return self.p**self.t

    @property
    def order(self) -> int:
        """Number of field elements, q^n."""
        return self.q**self.n

    @property
    def mult_order(self) -> int:
        """Order of the multiplicative group, q^n - 1."""
        return self.order - 1

    @property
    def base(self) -> type[galois.FieldArray]:
        return base_field(self.q)

    def _validate(self) -> None:
        if not galois.is_prime(self.p):
            raise FieldError(f"Characteristic p={self.p} is not prime")
        if self.p not in SUPPORTED_CHARACTERISTICS:
            raise FieldError(
                f"Characteristic p={self.p} not in {SUPPORTED_CHARACTERISTICS}"
            )
        if self.t < 1 or self.n < 1:
            raise FieldError(f"Exponents must be positive, got t={self.t}, n={self.n}")
        if self.order > MAX_FIELD_ORDER:
            raise FieldError(
                f"GF({self.q}^{self.n}) has {self.order} elements, limit is {MAX_FIELD_ORDER}"
            )
        if len(self.poly) != self.n + 1:
            raise FieldError(
                f"Polynomial needs {self.n + 1} coefficients, got {len(self.poly)}"
            )
        if any(not 0 <= c < self.q for c in self.poly):
            raise FieldError(f"Polynomial coefficients must lie in F_{self.q}: {list(self.poly)}")
        if self.poly[-1] != 1:
            raise FieldError("Polynomial must be monic")
        poly = galois.Poly(list(self.poly), field=self.base, order="asc")
        if not poly.is_irreducible():
            raise ReduciblePolynomialError(f"{poly} is reducible over F_{self.q}")

    def _build_exp_table(self) -> np.ndarray:
        """Walk the powers of alpha, verifying that alpha has order q^n - 1."""
        GF = self.base
        low = GF(list(self.poly[: self.n]))
        current = GF.Zeros(self.n)
        current[0] = 1
        rows = np.zeros((self.mult_order, self.n), dtype=np.int64)
        for i in range(self.mult_order):
            if i > 0 and current[0] == 1 and not np.any(current[1:]):
                raise NonPrimitivePolynomialError(
                    f"Root of {list(self.poly)} has order {i}, not {self.mult_order}"
                )
            rows[i] = current.view(np.ndarray)
            top = current[-1]
            shifted = GF.Zeros(self.n)
            shifted[1:] = current[:-1]
            current = shifted - top * low
        if not (current[0] == 1 and not np.any(current[1:])):
            raise NonPrimitivePolynomialError(
                f"Root of {list(self.poly)} does not have order {self.mult_order}"
            )
        return rows

    # ------------------------------------------------------------------
    # Table access
    # ------------------------------------------------------------------

    def pack(self, coords: Any) -> int:
        """Index of a coordinate vector in [0, q^n)."""
        return int(np.asarray(coords, dtype=np.int64) @ self._weights)

    def exp_coords(self, exponent: int) -> np.ndarray:
        """Coordinates of alpha^exponent (copy)."""
        return self._exp[exponent % self.mult_order].copy()

    def exp_rows(self, exponents: np.ndarray) -> np.ndarray:
        """Coordinate rows for an array of exponents."""
        return self._exp[np.asarray(exponents, dtype=np.int64) % self.mult_order]

    def log_rows(self, rows: np.ndarray) -> np.ndarray:
        """Exponents of nonzero coordinate rows; zero rows map to -1."""
        return self._log[np.asarray(rows, dtype=np.int64) @ self._weights]

    def log_coords(self, coords: Any) -> int | None:
        """Exponent of a coordinate vector, None for zero."""
        value = int(self._log[self.pack(coords)])
        return None if value < 0 else value

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, None, (0,) * self.n)

    @property
    def one(self) -> "FieldElement":
        return self.element(0)

    @property
    def alpha(self) -> "FieldElement":
        return self.element(1)

    def element(self, exponent: int) -> "FieldElement":
        """The element alpha^exponent."""
        e = exponent % self.mult_order
        return FieldElement(self, e, tuple(int(c) for c in self._exp[e]))

    def from_coords(self, coords: Any) -> "FieldElement":
        """Inverse of to_coords; validates length and range."""
        values = [int(c) for c in coords]
        if len(values) != self.n:
            raise FieldError(f"Expected {self.n} coordinates, got {len(values)}")
        if any(not 0 <= c < self.q for c in values):
            raise FieldError(f"Coordinates must lie in F_{self.q}: {values}")
        return FieldElement(self, self.log_coords(values), tuple(values))

    def elements(self) -> list["FieldElement"]:
        """All q^n elements, zero first, then alpha^0 .. alpha^(q^n-2)."""
        return [self.zero] + [self.element(i) for i in range(self.mult_order)]

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> "FieldElement":
        if nonzero:
            return self.element(int(rng.integers(self.mult_order)))
        index = int(rng.integers(self.order))
        return self.zero if index == self.mult_order else self.element(index)

    def descriptor(self) -> str:
        """The `gf(p,t,n,[c0,...,cn])` descriptor string."""
        coeffs = ",".join(str(c) for c in self.poly)
        return f"gf({self.p},{self.t},{self.n},[{coeffs}])"

    def __str__(self) -> str:
        return self.descriptor()


# ============================================================================
# Elements
# ============================================================================


@dataclass(frozen=True)
class FieldElement:
    """Element of GF(q^n): exponent tag (None for zero) plus coordinates."""

    field: FieldSpec
    exponent: int | None
    coords: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("Operands belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        GF = self.field.base
        total = GF(list(self.coords)) + GF(list(other.coords))
        return self.field.from_coords(total.view(np.ndarray))

    def __neg__(self) -> "FieldElement":
        GF = self.field.base
        return self.field.from_coords((-GF(list(self.coords))).view(np.ndarray))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        if self.is_zero or other.is_zero:
            return self.field.zero
        return self.field.element(self.exponent + other.exponent)  # type: ignore[operator]

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, power: int) -> "FieldElement":
        if self.is_zero:
            if power < 0:
                raise FieldZeroDivisionError("Zero has no inverse")
            return self.field.one if power == 0 else self.field.zero
        return self.field.element(self.exponent * power)  # type: ignore[operator]

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise FieldZeroDivisionError("Zero has no inverse")
        return self.field.element(-self.exponent)  # type: ignore[operator]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return "1" if self.exponent == 0 else f"a^{self.exponent}"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, exponent: int) -> FieldElement:
    return a**exponent


def frobenius(a: FieldElement, j: int) -> FieldElement:
    """Return a^(q^j); frobenius(a, n) is the identity."""
    if a.is_zero:
        return a
    spec = a.field
    exponent: int = a.exponent  # type: ignore[assignment]
    return spec.element(exponent * pow(spec.q, j % spec.n, spec.mult_order))


def to_coords(a: FieldElement) -> tuple[int, ...]:
    return a.coords


def from_coords(spec: FieldSpec, coords: Any) -> FieldElement:
    return spec.from_coords(coords)


# ============================================================================
# Construction and descriptors
# ============================================================================


def make_field(p: int, t: int, n: int, poly_coeffs: Any) -> FieldSpec:
    """Build GF((p^t)^n) from a monic primitive polynomial (coefficients low to high).

    Raises:
        FieldError: Non-prime or unsupported p, wrong coefficient count
        ReduciblePolynomialError: p(x) factors over F_q
        NonPrimitivePolynomialError: p(x) is irreducible but not primitive
    """
    spec = FieldSpec(p, t, n, tuple(int(c) for c in poly_coeffs))
    logger.info(f"Constructed field {spec.descriptor()} with {spec.order} elements")
    return spec


def default_field(q: int, n: int) -> FieldSpec:
    """GF(q^n) defined by galois' default primitive polynomial of degree n."""
    p, t = split_prime_power(q)
    poly = galois.primitive_poly(q, n)
    coeffs = [int(c) for c in poly.coeffs.view(np.ndarray)[::-1]]
    return make_field(p, t, n, coeffs)


_DESCRIPTOR = re.compile(
    r"^\s*gf\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*\[([\d\s,]*)\]\s*\)\s*$", re.IGNORECASE
)


def parse_field_descriptor(text: str) -> FieldSpec:
    """Parse `gf(p,t,n,[c0,c1,...,cn])`.

    Raises:
        FieldError: Malformed descriptor or invalid field
    """
    match = _DESCRIPTOR.match(text)
    if not match:
        raise FieldError(f"Malformed field descriptor '{text}', expected gf(p,t,n,[c0,...,cn])")
    p, t, n = (int(match.group(i)) for i in (1, 2, 3))
    coeffs = [int(c) for c in match.group(4).split(",") if c.strip()]
    return make_field(p, t, n, coeffs)
