"""Filter-generator keystreams, Berlekamp-Massey and spectral immunity."""
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Sequence

import numpy as np

import field
from annihil import ai_vectorial, lda_product
from codes import DEFAULT_BUDGET, WeightProfile, code_of_g_f, min_distance
from errors import AnnihilatorContractError, CapabilityError, DegenerateOrbitError
from field import FieldSpec
from funcrep import BooleanFunction, VectorialFunction, fold_to_codeword, univariate_from_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterGenerator:
    """z_t = F(x alpha^t)"""
    spec: FieldSpec
    function: VectorialFunction
    state: int

    def orbit(self, T: int) -> np.ndarray:
        if self.state == 0:
            raise DegenerateOrbitError("The zero state never leaves zero")
        start = field.log_alpha(self.spec, self.state)
        return field.exp_table(self.spec)[(start + np.arange(T, dtype=np.int64)) % self.spec.group_order]


@dataclass(frozen=True, eq=False)
class BinSequence:
    symbols: np.ndarray
    period: int

    def __len__(self) -> int:
        return len(self.symbols)

    def is_zero(self) -> bool:
        return not np.any(self.symbols)

    def bits(self) -> str:
        return "".join(str(int(s)) for s in self.symbols)

    def to_hex(self, width: int) -> str:
        digits = max(1, (width + 3) // 4)
        return " ".join(format(int(s), f"0{digits}x") for s in self.symbols)


def minimal_period(symbols: np.ndarray, N: int) -> int:
    """Smallest divisor p of N with symbols[t] = symbols[t + p] over one period of N"""
    for p in range(1, N + 1):
        if N % p == 0 and np.array_equal(symbols, np.roll(symbols, -p)):
            return p
    return N


def keystream(generator: FilterGenerator, T: int) -> BinSequence:
    if T < 1:
        raise ValueError(f"Keystream length must be positive, got {T}")
    N = generator.spec.group_order
    one_period = generator.function.table[generator.orbit(N)]
    symbols = np.resize(one_period, T)
    return BinSequence(symbols, minimal_period(one_period, N))


@dataclass(frozen=True)
class BMResult:
    """Shortest LFSR: s_t = sum_{i=1}^{L} c_i s_{t-i}, connection polynomial bit i = c_i"""
    lc: int
    connection: int

    @property
    def minimal_poly(self) -> int:
        """x^L C(1/x): h_i = c_{L-i}"""
        return sum(((self.connection >> (self.lc - i)) & 1) << i for i in range(self.lc + 1))

    def to_dict(self) -> Dict:
        return {"lc": self.lc, "poly_bits": format(self.minimal_poly, "x"),
                "connection_bits": format(self.connection, "x")}


def berlekamp_massey(bits: Sequence[int]) -> BMResult:
    s = [int(b) & 1 for b in bits]
    c, b = 1, 1
    L, shift = 0, 1
    for t in range(len(s)):
        discrepancy = s[t]
        for i in range(1, L + 1):
            discrepancy ^= (c >> i) & s[t - i]
        if not discrepancy:
            shift += 1
        elif 2 * L <= t:
            previous = c
            c ^= b << shift
            L = t + 1 - L
            b = previous
            shift = 1
        else:
            c ^= b << shift
            shift += 1
    return BMResult(L, c)


def regenerates(bits: Sequence[int], result: BMResult) -> bool:
    s = [int(b) & 1 for b in bits]
    for t in range(result.lc, len(s)):
        value = 0
        for i in range(1, result.lc + 1):
            value ^= (result.connection >> i) & s[t - i]
        if value != s[t]:
            return False
    return True


def naive_linear_complexity(bits: Sequence[int]) -> int:
    """Shortest recurrence by trying every connection vector; short windows only"""
    s = [int(b) & 1 for b in bits]
    if len(s) > 20:
        raise CapabilityError(f"Naive linear complexity is limited to 20 symbols, got {len(s)}")
    for L in range(len(s) + 1):
        for taps in range(1 << L):
            connection = 1 | (taps << 1)
            if regenerates(s, BMResult(L, connection)):
                return L
    return len(s)


@dataclass(frozen=True)
class AnnihilatorSequence:
    sequence: BinSequence
    rejected: bool
    reason: Optional[str] = None


def sequence_annihilator_from_function(g: BooleanFunction, generator: FilterGenerator, T: int) -> AnnihilatorSequence:
    """u_t = g(x alpha^t); u_t z_t must vanish for every t"""
    points = generator.orbit(T)
    u = g.tt[points].astype(np.int64)
    z = generator.function.table[points]
    failing = np.flatnonzero((u != 0) & (z != 0))
    if failing.size:
        t = int(failing[0])
        raise AnnihilatorContractError(f"u_t z_t != 0 at t={t}", t)
    N = generator.spec.group_order
    sequence = BinSequence(u, minimal_period(g.tt[generator.orbit(N)].astype(np.int64), N))
    if sequence.is_zero():
        logger.warning("Annihilator vanishes on the whole orbit; zero sequence rejected")
        return AnnihilatorSequence(sequence, True, "zero annihilator sequence")
    return AnnihilatorSequence(sequence, False)


@dataclass(frozen=True)
class SpectralImmunity:
    profile: WeightProfile
    ai: int
    lda: Optional[int]
    n: int

    @property
    def value(self) -> Optional[int]:
        return self.profile.min_distance

    def literal_check(self) -> Optional[bool]:
        """SI <= sum_{i<=AI} C(n,i)"""
        if not self.profile.is_exact():
            return None
        return self.value <= sum(comb(self.n, i) for i in range(self.ai + 1))

    def lda_check(self) -> Optional[bool]:
        """SI <= sum_{i<=LDA} C(n,i) with the product-annihilator LDA"""
        if not self.profile.is_exact() or self.lda is None:
            return None
        return self.value <= sum(comb(self.n, i) for i in range(self.lda + 1))

    def to_dict(self) -> Dict:
        data = self.profile.to_dict()
        data["le_ai_binomial"] = self.literal_check()
        data["le_lda_binomial"] = self.lda_check()
        return data


def spectral_immunity(F: VectorialFunction, budget: int = DEFAULT_BUDGET) -> SpectralImmunity:
    """Minimum weight of the code generated by G_F"""
    code = code_of_g_f(F)
    profile = min_distance(code, budget)
    if profile.method == "degenerate":
        logger.warning(f"G_F = x^N + 1 for {F!r}: no non-zero annihilator codeword")
    return SpectralImmunity(profile, ai_vectorial(F).value, lda_product(F), F.n)


def product_annihilator_min_weight(F: VectorialFunction, budget: int = 1 << 16) -> Optional[int]:
    """Fewest non-zero folded univariate coefficients of a Boolean g with g(x) F(x) = 0.

    g runs over the non-zero indicator sums of F^-1(0). Folding is linear, so
    each candidate is an XOR of point words, visited in Gray-code order. The
    indicator of 0 folds to the zero word and does not count. None when no
    candidate folds to a non-zero word.
    """
    spec = F.spec
    zeros = F.preimage(0)
    if (1 << zeros.size) - 1 > budget:
        raise CapabilityError(f"{(1 << zeros.size) - 1} product annihilators exceed the budget {budget}")
    point_words = []
    for x in zeros:
        indicator = np.zeros(spec.order, dtype=np.int64)
        indicator[x] = 1
        point_words.append(fold_to_codeword(spec, univariate_from_table(spec, indicator)))
    best = None
    word = np.zeros(spec.group_order, dtype=np.int64)
    for i in range(1, 1 << zeros.size):
        word ^= point_words[(i & -i).bit_length() - 1]
        weight = int(np.count_nonzero(word))
        if weight and (best is None or weight < best):
            best = weight
    return best


def sequence_spectral_immunity(F: VectorialFunction, state: int = 1, budget: int = 1 << 16) -> Optional[int]:
    """Lowest linear complexity of a non-zero binary annihilator of the keystream.

    Every periodic u with u_t = 0 wherever z_t != 0 is enumerated over one
    period; None when the keystream is non-zero everywhere.
    """
    generator = FilterGenerator(F.spec, F, state)
    N = F.spec.group_order
    z = keystream(generator, N).symbols
    free = np.flatnonzero(z == 0)
    if free.size == 0:
        return None
    if (1 << free.size) - 1 > budget:
        raise CapabilityError(f"{(1 << free.size) - 1} candidate annihilators exceed the budget {budget}")
    best = None
    u = np.zeros(N, dtype=np.int64)
    for mask in range(1, 1 << free.size):
        u[:] = 0
        for i, position in enumerate(free):
            if mask >> i & 1:
                u[position] = 1
        lc = berlekamp_massey(np.tile(u, 2)).lc
        if best is None or lc < best:
            best = lc
    return best


def linear_complexity(symbols: Sequence[int]) -> int:
    return berlekamp_massey(symbols).lc
