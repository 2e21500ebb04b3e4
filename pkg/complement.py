"""Algebraic complement of Boolean and vectorial functions.

f^c keeps exactly the ANF monomials missing from f, which is f + Delta with
Delta the indicator of the zero point. For F = (f_1, ..., f_m) the complement
is taken coordinatewise, so F^c agrees with F off zero and F^c(0) = F(0) + 1s.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

import numpy as np

from annihil import annihilator_set, lda_product
from funcrep import BooleanFunction, VectorialFunction

logger = logging.getLogger(__name__)


def complement_boolean(f: BooleanFunction) -> BooleanFunction:
    """Monomial complement of the ANF"""
    return BooleanFunction.from_anf(f.anf ^ 1)


def complement_table(F: VectorialFunction) -> np.ndarray:
    table = F.table.copy()
    table[0] ^= (1 << F.m) - 1
    return table


@dataclass(frozen=True)
class ComplementPair:
    F: VectorialFunction
    Fc: VectorialFunction
    delta: BooleanFunction

    def pointwise_holds(self) -> bool:
        """F^c = F + Delta (1, ..., 1)"""
        ones = (1 << self.F.m) - 1
        shift = self.delta.tt.astype(np.int64) * ones
        return bool(np.array_equal(self.Fc.table, self.F.table ^ shift))

    def anf_complement_holds(self) -> bool:
        """Each coordinate of F^c carries exactly the monomials its F-coordinate lacks"""
        return all(
            np.array_equal(fc.anf, f.anf ^ 1)
            for f, fc in zip(self.F.coordinates(), self.Fc.coordinates())
        )


def complement_vectorial(F: VectorialFunction) -> ComplementPair:
    coordinates = [complement_boolean(f) for f in F.coordinates()]
    Fc = VectorialFunction.from_coordinates(coordinates, F.spec)
    return ComplementPair(F, Fc, BooleanFunction.delta(F.n))


@dataclass(frozen=True)
class TrichotomyCase:
    b: int
    case: str
    holds: bool


def preimage_trichotomy(F: VectorialFunction) -> List[TrichotomyCase]:
    """For every b:
    - b = F(0): (F^c)^-1(b) = F^-1(b) minus {0}
    - b = F(0) + 1s: (F^c)^-1(b) = F^-1(b) plus {0}
    - otherwise: (F^c)^-1(b) = F^-1(b)
    """
    Fc = VectorialFunction(F.n, F.m, complement_table(F), F.spec)
    f0 = int(F.table[0])
    shifted = f0 ^ ((1 << F.m) - 1)
    cases = []
    for b in range(1 << F.m):
        before = set(F.preimage(b).tolist())
        after = set(Fc.preimage(b).tolist())
        if b == f0:
            case, expected = "drops_zero", before - {0}
        elif b == shifted:
            case, expected = "gains_zero", before | {0}
        else:
            case, expected = "unchanged", before
        cases.append(TrichotomyCase(b, case, after == expected))
    return cases


def complement_set(functions: Set[int]) -> Set[int]:
    """{g^c : g in functions} on truth-table ints; g^c flips the value at 0"""
    return {g ^ 1 for g in functions}


@dataclass(frozen=True)
class SetIdentityResult:
    """AN(X) = AN(Y) + AN(Y)^c compared against the exact annihilator sets.

    X is the side whose preimage lacks the zero point, Y the side holding it.
    The corrected identity adds Delta, the one function the literal one misses.
    """
    b: int
    case: str
    literal_holds: bool
    corrected_holds: bool
    missing: Set[int]
    extra: Set[int]

    def to_dict(self) -> Dict:
        return {
            "b": format(self.b, "x"),
            "case": self.case,
            "literal_holds": self.literal_holds,
            "corrected_holds": self.corrected_holds,
            "missing": sorted(format(g, "x") for g in self.missing),
            "extra": sorted(format(g, "x") for g in self.extra),
        }


def annihilator_set_identity(F: VectorialFunction, b: int) -> SetIdentityResult:
    """AN over (F^c)^-1(b) against AN over F^-1(b) and its complement image.

    When 0 is in F^-1(b), the complement side drops zero and
    AN((F^c)^-1(b)) = AN(F^-1(b)) + AN(F^-1(b))^c + {Delta}.
    When b = F(0) + 1s the roles swap. For every other b both preimages are
    equal and the identity degenerates to AN = AN.
    """
    n = F.n
    Fc_table = complement_table(F)
    points = F.preimage(b)
    points_c = np.flatnonzero(Fc_table == b)
    delta = 1
    if 0 in points:
        case, smaller, larger = "zero_in_preimage", points_c, points
    elif 0 in points_c:
        case, smaller, larger = "zero_in_complement_preimage", points, points_c
    else:
        return SetIdentityResult(b, "unchanged", True, True, set(), set())
    target = annihilator_set(smaller, n)
    source = annihilator_set(larger, n)
    literal = source | complement_set(source)
    literal.discard(0)
    corrected = literal | {delta}
    missing = target - literal
    extra = literal - target
    if missing:
        logger.debug(f"Literal annihilator identity at b={b:#x} misses {len(missing)} function(s)")
    return SetIdentityResult(b, case, not missing and not extra, corrected == target, missing, extra)


@dataclass(frozen=True)
class SandwichResult:
    lda: Optional[int]
    lda_complement: Optional[int]

    @property
    def skipped(self) -> bool:
        return self.lda is None or self.lda_complement is None

    @property
    def holds(self) -> Optional[bool]:
        if self.skipped:
            return None
        return self.lda - 1 <= self.lda_complement <= self.lda + 1

    def to_dict(self) -> Dict:
        return {"lda": self.lda, "lda_complement": self.lda_complement, "holds": self.holds,
                "skipped": self.skipped}


def lda_sandwich(F: VectorialFunction) -> SandwichResult:
    """LDA(F) - 1 <= LDA(F^c) <= LDA(F) + 1 under the product-annihilator notion"""
    Fc = VectorialFunction(F.n, F.m, complement_table(F), F.spec)
    result = SandwichResult(lda_product(F), lda_product(Fc))
    if result.skipped:
        logger.info("LDA sandwich skipped: one side vanishes nowhere")
    return result
