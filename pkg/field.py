"""Exact arithmetic in GF(2^n).

Elements are plain ints in the polynomial basis: bit i is the coefficient
of x^i. The field for a given n is pinned by a deterministic table so that
univariate coefficients and generator polynomials are reproducible.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional

import galois
import numpy as np

from errors import (
    AnalysisError,
    FieldDivisionError,
    InvalidEmbeddingError,
    InvalidSubfieldError,
    UnsupportedDegreeError,
    ZeroPointError,
)

logger = logging.getLogger(__name__)

MAX_DEGREE = 16


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) with a fixed reduction polynomial and primitive element alpha"""
    n: int
    reduction_poly: int
    alpha: int

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def group_order(self) -> int:
        """2^n - 1, also the length of every cyclic code over this field"""
        return (1 << self.n) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "poly_bits": format(self.reduction_poly, "x"),
            "alpha_bits": format(self.alpha, "x"),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FieldSpec":
        """Rebuild a spec from its JSON form, checking both field invariants"""
        try:
            n = int(data["n"])
            poly = int(str(data["poly_bits"]), 16)
            alpha = int(str(data["alpha_bits"]), 16)
        except (KeyError, TypeError, ValueError) as e:
            raise AnalysisError(f"Invalid field description: {e}") from e
        _check_degree(n)
        if poly.bit_length() - 1 != n or not is_irreducible(poly):
            raise AnalysisError(f"poly_bits {data['poly_bits']} is not an irreducible polynomial of degree {n}")
        if not 0 < alpha < (1 << n) or _multiplicative_order(alpha, poly, n) != (1 << n) - 1:
            raise AnalysisError(f"alpha_bits {data['alpha_bits']} is not primitive in GF(2^{n})")
        return cls(n=n, reduction_poly=poly, alpha=alpha)


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise UnsupportedDegreeError(f"Extension degree {n} is outside 1..{MAX_DEGREE}")


def _poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b, both GF(2)[x] polynomials packed into ints"""
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _mulmod(a: int, b: int, poly: int, n: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> n:
            a ^= poly
    return result


def _powmod(a: int, e: int, poly: int, n: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = _mulmod(result, a, poly, n)
        a = _mulmod(a, a, poly, n)
        e >>= 1
    return result


def _prime_factors(value: int) -> List[int]:
    factors = []
    p = 2
    while p * p <= value:
        if value % p == 0:
            factors.append(p)
            while value % p == 0:
                value //= p
        p += 1
    if value > 1:
        factors.append(value)
    return factors


def _multiplicative_order(a: int, poly: int, n: int) -> int:
    group = (1 << n) - 1
    if a == 0:
        return 0
    order = group
    for p in _prime_factors(group):
        while order % p == 0 and _powmod(a, order // p, poly, n) == 1:
            order //= p
    return order


def is_irreducible(bits: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2"""
    degree = bits.bit_length() - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for low in range(1 << d):
            if _poly_mod(bits, (1 << d) | low) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_poly(n: int) -> int:
    """Lowest-weight irreducible of degree n with non-zero constant term, smallest value first"""
    _check_degree(n)
    for middle_terms in range(0, n):
        candidates = sorted(
            (1 << n) | 1 | sum(1 << i for i in positions)
            for positions in itertools.combinations(range(1, n), middle_terms)
        )
        for candidate in candidates:
            if is_irreducible(candidate):
                return candidate
    raise UnsupportedDegreeError(f"No irreducible polynomial found for n={n}")


@lru_cache(maxsize=None)
def make_field(n: int) -> FieldSpec:
    """The pinned field for degree n: table polynomial plus its smallest primitive element"""
    poly = irreducible_poly(n)
    group = (1 << n) - 1
    alpha = next(a for a in range(1, 1 << n) if _multiplicative_order(a, poly, n) == group)
    spec = FieldSpec(n=n, reduction_poly=poly, alpha=alpha)
    logger.debug(f"Pinned GF(2^{n}): poly={poly:#x}, alpha={alpha:#x}")
    return spec


@lru_cache(maxsize=None)
def galois_field(spec: FieldSpec):
    """The galois FieldArray class matching spec (lookup tables are built once per spec)"""
    if spec.n == 1:
        return galois.GF(2)
    return galois.GF(2 ** spec.n, irreducible_poly=spec.reduction_poly, primitive_element=spec.alpha)


def to_ints(values) -> np.ndarray:
    """Plain int64 view of a field array"""
    return np.asarray(values.view(np.ndarray), dtype=np.int64)


def _element(spec: FieldSpec, a: int):
    if not 0 <= int(a) < spec.order:
        raise AnalysisError(f"{a} is not an element of GF(2^{spec.n})")
    return galois_field(spec)(int(a))


def add(a: int, b: int) -> int:
    return a ^ b


def mul(spec: FieldSpec, a: int, b: int) -> int:
    return int(_element(spec, a) * _element(spec, b))


def power(spec: FieldSpec, a: int, k: int) -> int:
    if a == 0 and k < 0:
        raise FieldDivisionError("Negative power of zero")
    return int(_element(spec, a) ** k)


def inv(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise FieldDivisionError("Zero has no multiplicative inverse")
    GF = galois_field(spec)
    return int(GF(1) / _element(spec, a))


@lru_cache(maxsize=None)
def exp_table(spec: FieldSpec) -> np.ndarray:
    """alpha^e for e = 0 .. 2^n - 2"""
    GF = galois_field(spec)
    exponents = np.arange(spec.group_order, dtype=np.int64)
    table = to_ints(GF(spec.alpha) ** exponents)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def log_table(spec: FieldSpec) -> np.ndarray:
    """Discrete log base alpha, indexed by element; entry 0 is -1"""
    table = np.full(spec.order, -1, dtype=np.int64)
    table[exp_table(spec)] = np.arange(spec.group_order, dtype=np.int64)
    table.setflags(write=False)
    return table


def log_alpha(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroPointError("Zero is not a power of alpha")
    _element(spec, a)
    return int(log_table(spec)[a])


def alpha_power(spec: FieldSpec, e: int) -> int:
    return int(exp_table(spec)[e % spec.group_order])


def _trace_values(GF, values, m: int, top: int):
    result = GF.Zeros(np.shape(values)) if np.ndim(values) else GF(0)
    current = values
    for _ in range(top // m):
        result = result + current
        current = current ** (2 ** m)
    return result


def trace(spec: FieldSpec, m: int, a: int, top: Optional[int] = None) -> int:
    """Tr^top_m(a) = a + a^(2^m) + ... + a^(2^(top-m)); top defaults to n"""
    top = spec.n if top is None else top
    if m < 1 or top % m or spec.n % top:
        raise InvalidSubfieldError(f"Need m | top | n, got m={m}, top={top}, n={spec.n}")
    GF = galois_field(spec)
    return int(_trace_values(GF, _element(spec, a), m, top))


def trace_array(spec: FieldSpec, m: int, values: np.ndarray, top: Optional[int] = None) -> np.ndarray:
    """Vectorised trace over an int array of elements"""
    top = spec.n if top is None else top
    if m < 1 or top % m or spec.n % top:
        raise InvalidSubfieldError(f"Need m | top | n, got m={m}, top={top}, n={spec.n}")
    GF = galois_field(spec)
    return to_ints(_trace_values(GF, GF(np.asarray(values, dtype=np.int64)), m, top))


@lru_cache(maxsize=None)
def subfield_basis(spec: FieldSpec, m: int) -> tuple:
    """Basis of GF(2^m) inside GF(2^n) used to identify F_2^m with the subfield.

    For m = n the basis is 1, x, ..., x^(n-1), i.e. bit patterns map to
    themselves. For m < n it is 1, beta, ..., beta^(m-1) with
    beta = alpha^((2^n-1)/(2^m-1)), a primitive element of the subfield.
    """
    if m < 1 or spec.n % m:
        raise InvalidSubfieldError(f"m={m} does not divide n={spec.n}")
    if m == spec.n:
        return tuple(1 << i for i in range(spec.n))
    beta_exponent = spec.group_order // ((1 << m) - 1)
    return tuple(alpha_power(spec, beta_exponent * i) for i in range(m))


@lru_cache(maxsize=None)
def embedding_table(spec: FieldSpec, m: int) -> np.ndarray:
    basis = subfield_basis(spec, m)
    table = np.zeros(1 << m, dtype=np.int64)
    for v in range(1, 1 << m):
        low = v & -v
        table[v] = table[v ^ low] ^ basis[low.bit_length() - 1]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _projection_map(spec: FieldSpec, m: int) -> Dict[int, int]:
    return {int(element): v for v, element in enumerate(embedding_table(spec, m))}


def embed(spec: FieldSpec, m: int, v: int) -> int:
    if not 0 <= v < (1 << m):
        raise InvalidEmbeddingError(f"{v} is not an {m}-bit value")
    return int(embedding_table(spec, m)[v])


def project(spec: FieldSpec, m: int, y: int) -> int:
    try:
        return _projection_map(spec, m)[int(y)]
    except KeyError:
        raise InvalidEmbeddingError(f"{y:#x} is not in the subfield GF(2^{m}) of GF(2^{spec.n})") from None


def field_to_dict(spec: FieldSpec) -> Dict[str, Any]:
    return spec.to_dict()


def field_from_dict(data: Dict[str, Any]) -> FieldSpec:
    return FieldSpec.from_dict(data)
