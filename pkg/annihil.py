"""Annihilator spaces and algebraic immunity by exact GF(2) elimination.

Rows of the evaluation matrix are Python ints, bit j standing for the j-th
monomial of degree <= d in increasing index order.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from errors import CapabilityError, NoAnnihilatorError, ShapeError
from funcrep import BooleanFunction, VectorialFunction, bits_to_int, hamming_weights, point_set

logger = logging.getLogger(__name__)

# spans larger than 2^16 functions are never enumerated
MAX_SPAN_DIMENSION = 16


@dataclass(frozen=True)
class AnnihilatorBasis:
    n: int
    degree_bound: int
    basis: Tuple[BooleanFunction, ...]
    note: Optional[str] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_empty(self) -> bool:
        return not self.basis

    def to_dict(self) -> Dict:
        data = {
            "degree_bound": self.degree_bound,
            "dimension": self.dimension,
            "basis": [g.anf_hex() for g in self.basis],
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class AIResult:
    """Algebraic immunity with the LDA of every non-empty preimage"""
    value: int
    degenerate: bool = False
    per_value: Dict[int, int] = dataclass_field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "value": self.value,
            "method": "flagged-degenerate" if self.degenerate else "exact",
            "per_value": {format(b, "x"): lda for b, lda in self.per_value.items()},
        }


@lru_cache(maxsize=None)
def monomials_up_to(n: int, d: int) -> Tuple[int, ...]:
    weights = hamming_weights(1 << n)
    return tuple(int(u) for u in np.flatnonzero(weights <= d))


def _check_points(points: np.ndarray, n: int) -> None:
    if points.size and (points[0] < 0 or points[-1] >= (1 << n)):
        raise ShapeError(f"Points must lie in 0 .. {(1 << n) - 1}")


def _evaluation_rows(points: np.ndarray, monomials: Tuple[int, ...]) -> List[int]:
    """One row per point: bit j set iff monomial j evaluates to 1 there (u subset of x)"""
    rows = []
    for x in points:
        x = int(x)
        row = 0
        for j, u in enumerate(monomials):
            if u & x == u:
                row |= 1 << j
        rows.append(row)
    return rows


def _row_reduce(rows: List[int]) -> Dict[int, int]:
    """Reduced echelon form keyed by pivot column, lowest column pivoted first"""
    pivots: Dict[int, int] = {}
    for row in rows:
        for col, pivot_row in pivots.items():
            if row >> col & 1:
                row ^= pivot_row
        if not row:
            continue
        col = (row & -row).bit_length() - 1
        for other in list(pivots):
            if pivots[other] >> col & 1:
                pivots[other] ^= row
        pivots[col] = row
    return pivots


def _kernel(rows: List[int], width: int) -> List[int]:
    pivots = _row_reduce(rows)
    kernel = []
    for free in range(width):
        if free in pivots:
            continue
        vector = 1 << free
        for col, row in pivots.items():
            if row >> free & 1:
                vector |= 1 << col
        kernel.append(vector)
    return kernel


def gf2_rank(rows: Iterable[int]) -> int:
    return len(_row_reduce(list(rows)))


def annihilator_basis(points: Iterable[int], d: int, n: int) -> AnnihilatorBasis:
    """Basis of {g : deg g <= d, g = 0 on points}, zero function excluded"""
    if not 0 <= d <= n:
        raise ShapeError(f"Degree bound {d} outside 0..{n}")
    points = point_set(points)
    _check_points(points, n)
    monomials = monomials_up_to(n, d)
    kernel = _kernel(_evaluation_rows(points, monomials), len(monomials))
    basis = []
    for vector in kernel:
        anf = np.zeros(1 << n, dtype=np.uint8)
        for j, u in enumerate(monomials):
            if vector >> j & 1:
                anf[u] = 1
        basis.append(BooleanFunction.from_anf(anf))
    logger.debug(f"Annihilators of {points.size} points at degree <= {d}: dimension {len(basis)}")
    return AnnihilatorBasis(n=n, degree_bound=d, basis=tuple(basis))


def annihilator_dimension(points: Iterable[int], d: int, n: int) -> int:
    points = point_set(points)
    _check_points(points, n)
    monomials = monomials_up_to(n, d)
    return len(monomials) - gf2_rank(_evaluation_rows(points, monomials))


def lda_of_set(points: Iterable[int], n: int) -> int:
    """Lowest degree of a non-zero function vanishing on points"""
    points = point_set(points)
    _check_points(points, n)
    if points.size == 1 << n:
        raise NoAnnihilatorError("Every point is constrained; only g = 0 vanishes everywhere")
    for d in range(n + 1):
        if annihilator_dimension(points, d, n) > 0:
            return d
    raise NoAnnihilatorError("No annihilator found up to degree n")


def ai_vectorial(F: VectorialFunction) -> AIResult:
    """min over non-empty preimages F^-1(b) of their LDA.

    Empty preimages are skipped. A constant F has its only preimage equal to
    the whole space and gets AI = 0 flagged as degenerate.
    """
    if F.is_constant():
        logger.warning(f"Constant function {F!r}: algebraic immunity reported as 0 (degenerate)")
        return AIResult(value=0, degenerate=True)
    per_value = {b: lda_of_set(points, F.n) for b, points in F.preimages().items()}
    return AIResult(value=min(per_value.values()), per_value=per_value)


def algebraic_immunity(f: BooleanFunction) -> AIResult:
    return ai_vectorial(f.to_vectorial())


def product_annihilators(F: VectorialFunction, d: int) -> AnnihilatorBasis:
    """Basis of {g != 0, deg g <= d : g(x) F(x) = 0 for all x}"""
    nonzero = F.nonzero_set()
    result = annihilator_basis(nonzero, d, F.n)
    if nonzero.size == 1 << F.n:
        return AnnihilatorBasis(result.n, d, result.basis, note="F has no zero; only g = 0 annihilates it")
    return result


def lda_product(F: VectorialFunction) -> Optional[int]:
    """Lowest degree of a product annihilator, None when F vanishes nowhere"""
    nonzero = F.nonzero_set()
    if nonzero.size == 1 << F.n:
        return None
    return lda_of_set(nonzero, F.n)


def annihilator_span(basis: AnnihilatorBasis, max_dimension: int = MAX_SPAN_DIMENSION) -> Set[int]:
    """Every non-zero function in the span, as truth-table ints"""
    if basis.dimension > max_dimension:
        raise CapabilityError(f"Span of dimension {basis.dimension} exceeds the limit {max_dimension}")
    generators = [g.to_int() for g in basis.basis]
    span = {0}
    for g in generators:
        span |= {s ^ g for s in span}
    span.discard(0)
    return span


def annihilator_set(points: Iterable[int], n: int) -> Set[int]:
    """AN(points): all non-zero functions of any degree vanishing on points"""
    return annihilator_span(annihilator_basis(points, n, n))


@lru_cache(maxsize=None)
def _monomial_tables(n: int) -> Tuple[int, ...]:
    size = 1 << n
    tables = []
    for u in range(size):
        tt = np.array([1 if u & x == u else 0 for x in range(size)], dtype=np.uint8)
        tables.append(bits_to_int(tt))
    return tuple(tables)


def brute_force_lda(points: Iterable[int], n: int) -> int:
    """Exhaustive oracle over all 2^(2^n) ANFs, Gray-code order; n <= 4 only"""
    if n > 4:
        raise CapabilityError(f"Brute-force annihilator search is limited to n <= 4, got n={n}")
    points = point_set(points)
    _check_points(points, n)
    mask = 0
    for x in points:
        mask |= 1 << int(x)
    tables = _monomial_tables(n)
    weights = hamming_weights(1 << n)
    degree_masks = [sum(1 << u for u in range(1 << n) if weights[u] == d) for d in range(n + 1)]
    best = None
    tt = 0
    anf = 0
    for step in range(1, 1 << (1 << n)):
        flip = (step & -step).bit_length() - 1
        anf ^= 1 << flip
        tt ^= tables[flip]
        if tt & mask:
            continue
        degree = max(d for d in range(n + 1) if anf & degree_masks[d])
        if best is None or degree < best:
            best = degree
            if best == 0:
                break
    if best is None:
        raise NoAnnihilatorError("Every point is constrained; only g = 0 vanishes everywhere")
    return best
