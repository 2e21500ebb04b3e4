"""Cyclic codes of length 2^n - 1 over GF(2^n) attached to functions.

A code is held by its defining set: the exponents e with G(alpha^e) = 0.
Exponent arithmetic is mod N = 2^n - 1 throughout.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

import field
from errors import AnalysisError, NoCodewordError, ZeroPointError
from field import FieldSpec
from complement import complement_table
from funcrep import BooleanFunction, VectorialFunction, fold_to_codeword, hamming_weights

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 24
HT_CONVENTIONS = ("order", "n")

# seeded random codewords tried when the exact search runs out of budget
_SAMPLE_CODEWORDS = 4096


@dataclass(frozen=True)
class GenPoly:
    """Monic generator polynomial, coefficients in ascending order"""
    coeffs: Tuple[int, ...]
    roots: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def to_poly(self, spec: FieldSpec) -> galois.Poly:
        return galois.Poly(list(self.coeffs), field=field.galois_field(spec), order="asc")

    def to_dict(self) -> Dict:
        return {
            "gen_coeffs": [format(c, "x") for c in self.coeffs],
            "roots": list(self.roots),
        }


def poly_to_coeffs(poly: galois.Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in field.to_ints(poly.coeffs)[::-1])


def make_monic(poly: galois.Poly) -> galois.Poly:
    lead = poly.coeffs[0]
    return galois.Poly(poly.coeffs / lead)


def is_zero_poly(poly: galois.Poly) -> bool:
    return poly.degree == 0 and int(poly.coeffs[0]) == 0


def x_n_plus_one(spec: FieldSpec) -> galois.Poly:
    return galois.Poly.Degrees([spec.group_order, 0], field=field.galois_field(spec))


def poly_from_roots(spec: FieldSpec, exponents: Sequence[int]) -> galois.Poly:
    GF = field.galois_field(spec)
    if not exponents:
        return galois.Poly.One(GF)
    return galois.Poly.Roots(GF([field.alpha_power(spec, e) for e in exponents]))


@dataclass(frozen=True)
class CyclicCode:
    """Cyclic code of length 2^n - 1 with the given defining set.

    zero_in_preimage is set for codes built from a preimage F^-1(b); it decides
    how cyclic position 0 is read by the weight-height (exponent 0 or 2^n - 1).
    """
    spec: FieldSpec
    defining_set: Tuple[int, ...]
    zero_in_preimage: Optional[bool] = None

    @property
    def length(self) -> int:
        return self.spec.group_order

    @property
    def dimension(self) -> int:
        return self.length - len(self.defining_set)

    @cached_property
    def gen(self) -> GenPoly:
        poly = poly_from_roots(self.spec, self.defining_set)
        return GenPoly(poly_to_coeffs(poly), self.defining_set)

    def is_zero_code(self) -> bool:
        return self.dimension == 0

    def is_full_space(self) -> bool:
        return not self.defining_set

    def to_dict(self) -> Dict:
        return {
            "length": self.length,
            "dimension": self.dimension,
            "gen_coeffs": self.gen.to_dict()["gen_coeffs"],
            "defining_set": list(self.defining_set),
        }


def code_from_defining_set(spec: FieldSpec, exponents: Iterable[int], zero_in_preimage: Optional[bool] = None) -> CyclicCode:
    N = spec.group_order
    defining_set = tuple(sorted({int(e) % N for e in exponents}))
    return CyclicCode(spec, defining_set, zero_in_preimage)


def code_from_pointset(spec: FieldSpec, points: Iterable[int]) -> CyclicCode:
    """gen = prod (x - r) over r in Z; 0 is not an evaluation point"""
    points = [int(p) for p in points]
    if 0 in points:
        raise ZeroPointError("The zero element cannot be a root of a length 2^n - 1 code")
    exponents = [field.log_alpha(spec, r) for r in points]
    code = code_from_defining_set(spec, exponents)
    logger.debug(f"Code from {len(points)} points: dimension {code.dimension}")
    return code


def code_from_preimage(F: VectorialFunction, b: int) -> CyclicCode:
    """C(F^-1(b)) with defining set F^-1(b) minus the zero point"""
    points = F.preimage(b)
    exponents = field.log_table(F.spec)[points[points != 0]]
    return code_from_defining_set(F.spec, exponents.tolist(), zero_in_preimage=bool(points.size and points[0] == 0))


def g_f_exponents(F: VectorialFunction) -> Tuple[int, ...]:
    """Exponents e with F(alpha^e) != 0: the roots of G_F"""
    nonzero = F.nonzero_set()
    return tuple(sorted(int(e) for e in field.log_table(F.spec)[nonzero[nonzero != 0]]))


def generator_G_F(F: VectorialFunction, method: str = "roots") -> GenPoly:
    """G_F = prod over non-zero a of gcd(F(x) - a, x^N + 1).

    method="roots" multiplies (x - r) over non-zero r with F(r) != 0;
    method="gcd" runs the gcd product on the univariate form. Both agree.
    """
    spec = F.spec
    if method == "roots":
        exponents = g_f_exponents(F)
        return GenPoly(poly_to_coeffs(poly_from_roots(spec, exponents)), exponents)
    if method != "gcd":
        raise ValueError(f"Unknown G_F method '{method}'")
    GF = field.galois_field(spec)
    univariate = galois.Poly(F.univariate.tolist(), field=GF, order="asc")
    modulus = x_n_plus_one(spec)
    product = galois.Poly.One(GF)
    for a in range(1, spec.order):
        factor = galois.gcd(univariate - galois.Poly([a], field=GF), modulus)
        if factor.degree > 0:
            product = product * make_monic(factor)
    roots = tuple(sorted(e for e in range(spec.group_order) if product(GF(field.alpha_power(spec, e))) == 0))
    return GenPoly(poly_to_coeffs(product), roots)


def generator_paths_agree(F: VectorialFunction) -> bool:
    return generator_G_F(F, "roots") == generator_G_F(F, "gcd")


def code_of_g_f(F: VectorialFunction) -> CyclicCode:
    return code_from_defining_set(F.spec, g_f_exponents(F))


def generator_matrix(code: CyclicCode):
    """k x N matrix with rows x^i G(x)"""
    GF = field.galois_field(code.spec)
    k, N = code.dimension, code.length
    coeffs = GF(list(code.gen.coeffs))
    matrix = GF.Zeros((k, N))
    for i in range(k):
        matrix[i, i:i + len(coeffs)] = coeffs
    return matrix


def parity_matrix(code: CyclicCode):
    """Rows (alpha^(e*i))_i for e in the defining set"""
    GF = field.galois_field(code.spec)
    N = code.length
    exponents = (np.array(code.defining_set, dtype=np.int64)[:, None] * np.arange(N, dtype=np.int64)[None, :]) % N
    return GF(field.exp_table(code.spec)[exponents].reshape(len(code.defining_set), N))


def _matrix_rank(matrix) -> int:
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))


def is_codeword(code: CyclicCode, word: Sequence[int]) -> bool:
    GF = field.galois_field(code.spec)
    word = GF(np.asarray(word, dtype=np.int64))
    if len(word) != code.length:
        raise AnalysisError(f"Word of length {len(word)} does not match code length {code.length}")
    if code.is_full_space():
        return True
    return not np.any(parity_matrix(code) @ word)


def cyclic_shift(word: Sequence[int]) -> np.ndarray:
    return np.roll(np.asarray(word), 1)


def function_in_code(code: CyclicCode, g: BooleanFunction) -> bool:
    """g's univariate form reduced mod x^N + 1 is a codeword"""
    return is_codeword(code, fold_to_codeword(code.spec, g.univariate(code.spec)))


def dual_generator(code: CyclicCode) -> GenPoly:
    """g_perp = x^k p(1/x) / p(0) with p = (x^N + 1) / g"""
    spec = code.spec
    GF = field.galois_field(spec)
    p, remainder = divmod(x_n_plus_one(spec), code.gen.to_poly(spec))
    if not is_zero_poly(remainder):
        raise AnalysisError("Generator does not divide x^N + 1")
    reversed_coeffs = p.coeffs[::-1]
    dual = galois.Poly(reversed_coeffs / reversed_coeffs[0], field=GF)
    N = spec.group_order
    members = set(code.defining_set)
    roots = tuple(sorted((-e) % N for e in range(N) if e not in members))
    return GenPoly(poly_to_coeffs(dual), roots)


def dual_code(code: CyclicCode) -> CyclicCode:
    N = code.length
    members = set(code.defining_set)
    return code_from_defining_set(code.spec, ((-e) % N for e in range(N) if e not in members))


@dataclass(frozen=True)
class LcdResult:
    lcd: bool
    self_reciprocal: bool
    witness: Optional[int] = None
    rank_verified: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {"lcd": self.lcd, "self_reciprocal": self.self_reciprocal, "witness": self.witness,
                "rank_verified": self.rank_verified}


def is_self_reciprocal(spec: FieldSpec, gen: GenPoly) -> bool:
    """G = G_0^-1 x^deg(G) G(1/x)"""
    GF = field.galois_field(spec)
    coeffs = GF(list(gen.coeffs))
    if coeffs[0] == 0:
        return False
    return bool(np.array_equal(coeffs[::-1] / coeffs[0], coeffs))


def lcd_by_rank(code: CyclicCode) -> bool:
    """C and its dual meet in {0} iff the stacked generator matrices have rank N"""
    stacked = np.vstack([generator_matrix(code), generator_matrix(dual_code(code))])
    return _matrix_rank(stacked) == code.length


def is_lcd(code: CyclicCode, verify_rank: Optional[bool] = None) -> LcdResult:
    """LCD iff the defining set is closed under e -> -e; witness is the first exponent breaking it.

    The rank cross-check runs by default for n <= 4.
    """
    N = code.length
    members = set(code.defining_set)
    witness = next((e for e in code.defining_set if (-e) % N not in members), None)
    lcd = witness is None
    if verify_rank is None:
        verify_rank = code.spec.n <= 4
    rank_verified = None
    if verify_rank:
        rank_verified = lcd_by_rank(code) == lcd
        if not rank_verified:
            logger.error(f"LCD rank check disagrees with self-reciprocity for defining set {code.defining_set}")
    return LcdResult(lcd, is_self_reciprocal(code.spec, code.gen), witness, rank_verified)


@dataclass(frozen=True)
class HTPattern:
    """r + i*step + j in D for 0 <= i <= k, 0 <= j < t; distance > t + k"""
    r: int
    step: int
    t: int
    k: int
    convention: str

    @property
    def value(self) -> int:
        return self.t + self.k

    def exponents(self, N: int) -> List[int]:
        return sorted({(self.r + i * self.step + j) % N for i in range(self.k + 1) for j in range(self.t)})

    def to_dict(self) -> Dict:
        return {"r": self.r, "step": self.step, "t": self.t, "k": self.k, "value": self.value,
                "convention": self.convention}


def _allowed_steps(n: int, convention: str) -> List[int]:
    N = (1 << n) - 1
    if convention == "order":
        return [s for s in range(1, N) if math.gcd(s, N) == 1]
    if convention == "n":
        return [s for s in range(1, N) if math.gcd(s, n) == 1]
    raise ValueError(f"Unknown coprimality convention '{convention}', expected one of {HT_CONVENTIONS}")


def find_ht_pattern(defining_set: Iterable[int], n: int, convention: str = "order") -> Optional[HTPattern]:
    """Best consecutive-root pattern in the defining set, longest run first on ties; None for an empty set"""
    N = (1 << n) - 1
    members = {int(e) % N for e in defining_set}
    if not members:
        return None
    steps = _allowed_steps(n, convention) or [1]
    best = None
    for r in sorted(members):
        run = 0
        while run < N and (r + run) % N in members:
            run += 1
        for t in range(1, run + 1):
            for step in steps:
                k = 0
                while k < N - 1 and all((r + (k + 1) * step + j) % N in members for j in range(t)):
                    k += 1
                if best is None or (t + k, t) > (best.value, best.t):
                    best = HTPattern(r, step, t, k, convention)
    return best


def ht_bound(defining_set: Iterable[int], n: int, convention: str = "order") -> int:
    """t + k of the best pattern; the minimum distance exceeds it"""
    pattern = find_ht_pattern(defining_set, n, convention)
    return 0 if pattern is None else pattern.value


@dataclass(frozen=True)
class WeightProfile:
    """Minimum distance as an exact value or a [lower, upper] bracket"""
    min_distance: Optional[int]
    method: str
    lower: Optional[int] = None
    upper: Optional[int] = None
    distribution: Optional[Dict[int, int]] = None
    lightest: Optional[Tuple[int, ...]] = None
    note: Optional[str] = None

    def is_exact(self) -> bool:
        return self.method == "exact"

    def to_dict(self) -> Dict:
        if self.method == "exact":
            data = {"value": self.min_distance, "method": "exact"}
        elif self.method == "bracket":
            data = {"bracket": [self.lower, self.upper], "method": "bracket"}
        else:
            data = {"value": None, "method": "flagged-degenerate", "note": self.note}
        if self.distribution is not None:
            data["distribution"] = {str(w): count for w, count in sorted(self.distribution.items())}
        return data


def codeword_weight(word: Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(word)))


def weight_distribution(code: CyclicCode, budget: int = DEFAULT_BUDGET) -> Optional[Dict[int, int]]:
    """A_w for every w by message enumeration; None when q^k exceeds the budget"""
    q, k, N = code.spec.order, code.dimension, code.length
    if q ** k > budget:
        return None
    GF = field.galois_field(code.spec)
    G = generator_matrix(code)
    counts = np.zeros(N + 1, dtype=np.int64)
    if k == 0:
        counts[0] = 1
    else:
        total = q ** k
        chunk = max(1, min(total, (1 << 20) // max(1, N)))
        for start in range(0, total, chunk):
            index = np.arange(start, min(start + chunk, total), dtype=np.int64)
            digits = (index[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q
            words = GF(digits) @ G
            counts += np.bincount(np.count_nonzero(np.asarray(words), axis=1), minlength=N + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


def _lightest_sampled(code: CyclicCode, seed: int) -> Tuple[int, Tuple[int, ...]]:
    """Lightest of the generator row and seeded random codewords"""
    GF = field.galois_field(code.spec)
    G = generator_matrix(code)
    best_word = field.to_ints(G[0])
    best = codeword_weight(best_word)
    rng = np.random.default_rng(seed)
    for _ in range(_SAMPLE_CODEWORDS):
        message = GF(rng.integers(0, code.spec.order, size=code.dimension))
        if not np.any(message):
            continue
        word = field.to_ints(message @ G)
        weight = codeword_weight(word)
        if 0 < weight < best:
            best, best_word = weight, word
    return best, tuple(int(c) for c in best_word)


def _kernel_word(code: CyclicCode, support: Sequence[int]) -> Tuple[int, ...]:
    """A non-zero codeword supported inside support (columns known to be dependent)"""
    GF = field.galois_field(code.spec)
    reduced = parity_matrix(code)[:, list(support)].row_reduce()
    pivots = {}
    for row in range(reduced.shape[0]):
        nonzero = np.flatnonzero(reduced[row])
        if nonzero.size:
            pivots[int(nonzero[0])] = row
    free = next(col for col in range(len(support)) if col not in pivots)
    word = GF.Zeros(code.length)
    word[support[free]] = 1
    for col, row in pivots.items():
        word[support[col]] = reduced[row, free]
    return tuple(int(c) for c in field.to_ints(word))


def min_distance(code: CyclicCode, budget: int = DEFAULT_BUDGET, distribution: bool = False,
                 seed: int = 0) -> WeightProfile:
    """Minimum distance by support enumeration.

    A weight-w codeword exists iff some w columns of the parity matrix are
    dependent; by cyclicity one of them can be column 0. The search runs from
    the HT bound + 1 up to the generator weight, itself at most the Singleton
    bound deg(G) + 1, and stops after budget rank tests, in which case a
    bracket is returned.
    """
    if code.is_zero_code():
        return WeightProfile(None, "degenerate", note="zero code has no non-zero codeword")
    spectrum = weight_distribution(code, budget) if distribution else None
    if code.is_full_space():
        return WeightProfile(1, "exact", 1, 1, spectrum, (1,) + (0,) * (code.length - 1))
    lower = ht_bound(code.defining_set, code.spec.n, "order") + 1
    gen_word = tuple(code.gen.coeffs) + (0,) * (code.length - len(code.gen.coeffs))
    upper = code.gen.weight
    if lower >= upper:
        return WeightProfile(upper, "exact", upper, upper, spectrum, gen_word)
    H = parity_matrix(code)
    tests = 0
    for w in range(lower, upper):
        for rest in itertools.combinations(range(1, code.length), w - 1):
            if tests >= budget:
                sampled, word = _lightest_sampled(code, seed)
                logger.warning(f"Distance search stopped after {tests} rank tests: bracket [{w}, {min(upper, sampled)}]")
                best_word = word if sampled < upper else gen_word
                return WeightProfile(None, "bracket", w, min(upper, sampled), spectrum, best_word)
            tests += 1
            support = (0,) + rest
            if _matrix_rank(H[:, list(support)]) < w:
                return WeightProfile(w, "exact", w, w, spectrum, _kernel_word(code, support))
    return WeightProfile(upper, "exact", upper, upper, spectrum, gen_word)


def position_labels(code: CyclicCode) -> np.ndarray:
    """2-weight read off each cyclic position; position 0 is exponent 2^n - 1 when 0 is in the preimage"""
    labels = hamming_weights(1 << code.spec.n)[:code.length].copy()
    if code.zero_in_preimage:
        labels[0] = code.spec.n
    return labels


def weight_height(code: CyclicCode, word: Sequence[int]) -> int:
    """max label over non-zero positions"""
    word = np.asarray(word)
    nonzero = np.flatnonzero(word)
    if nonzero.size == 0:
        raise NoCodewordError("The zero word has no weight-height")
    return int(position_labels(code)[nonzero].max())


def min_weight_height(code: CyclicCode) -> int:
    """Smallest d such that a non-zero codeword lives on positions of label <= d.

    Each d costs one rank test on the column-restricted parity matrix.
    """
    n = code.spec.n
    if code.is_zero_code():
        if code.zero_in_preimage is False:
            # only the indicator of the zero point is left, folded to the zero word
            return n
        raise NoCodewordError("The zero code has no non-zero codeword")
    labels = position_labels(code)
    H = parity_matrix(code) if code.defining_set else None
    for d in range(n + 1):
        columns = np.flatnonzero(labels <= d)
        if columns.size == 0:
            continue
        rank = 0 if H is None else _matrix_rank(H[:, columns])
        if rank < columns.size:
            return d
    raise NoCodewordError("No non-zero codeword found")


@dataclass(frozen=True)
class DivisionResult:
    quotient: GenPoly
    divides: bool
    inclusions: Dict[str, Dict[int, bool]] = dataclass_field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "h_coeffs": [format(c, "x") for c in self.quotient.coeffs],
            "divides": self.divides,
            "inclusions": {pairing: {format(b, "x"): held for b, held in results.items()}
                           for pairing, results in self.inclusions.items()},
        }


def _contained(inner: CyclicCode, outer: CyclicCode) -> bool:
    """Every generator-matrix row of inner is a codeword of outer"""
    if inner.is_zero_code():
        return True
    G = generator_matrix(inner)
    return all(is_codeword(outer, field.to_ints(row)) for row in G)


def complement_generator_division(F: VectorialFunction) -> DivisionResult:
    """Divide G_F by G_{F^c} and check C(F^-1(b)) inside C((F^c)^-1(b')).

    Pairing "identity" uses b' = b. Pairing "shifted" uses b' = b + (1,...,1)
    on the fiber of F(0) and b' = b elsewhere.
    """
    spec = F.spec
    Fc = VectorialFunction(F.n, F.m, complement_table(F), spec)
    quotient, remainder = divmod(generator_G_F(F).to_poly(spec), generator_G_F(Fc).to_poly(spec))
    divides = is_zero_poly(remainder)
    ones = (1 << F.m) - 1
    f0 = int(F.table[0])
    inclusions: Dict[str, Dict[int, bool]] = {"identity": {}, "shifted": {}}
    for b in F.preimages():
        source = code_from_preimage(F, b)
        inclusions["identity"][b] = _contained(source, code_from_preimage(Fc, b))
        partner = b ^ ones if b == f0 else b
        inclusions["shifted"][b] = _contained(source, code_from_preimage(Fc, partner))
    quotient_roots = tuple(e for e in range(spec.group_order)
                           if quotient(field.galois_field(spec)(field.alpha_power(spec, e))) == 0)
    return DivisionResult(GenPoly(poly_to_coeffs(quotient), quotient_roots), bool(divides), inclusions)


@dataclass(frozen=True)
class ParameterCheck:
    b: int
    preimage_size: int
    walsh_size: int
    dimension: int
    stated_dimension: int

    @property
    def walsh_identity(self) -> bool:
        return self.preimage_size == self.walsh_size

    def to_dict(self) -> Dict:
        return {
            "b": format(self.b, "x"),
            "preimage_size": self.preimage_size,
            "walsh_size": self.walsh_size,
            "walsh_identity": self.walsh_identity,
            "dimension": self.dimension,
            "stated_dimension": self.stated_dimension,
            "stated_matches": self.dimension == self.stated_dimension,
        }


def parameters_check(F: VectorialFunction, b: int) -> ParameterCheck:
    """|F^-1(b)| against 2^(n-1) - W_phi(0)/2, with phi the indicator of F^-1(b)"""
    indicator = BooleanFunction(F.n, (F.table == b).astype(np.uint8))
    w0 = int(indicator.walsh("dot").values[0])
    walsh_size = (1 << (F.n - 1)) - w0 // 2
    code = code_from_preimage(F, b)
    return ParameterCheck(b, int(indicator.weight()), walsh_size, code.dimension, walsh_size)


@dataclass(frozen=True)
class NonzeroWeightCheck:
    applies: bool
    passed: Optional[bool]
    detail: str


def nonzero_weight_check(code: CyclicCode, profile: WeightProfile) -> NonzeroWeightCheck:
    """The claim: if the smallest e with sum_{i<=e} C(n,i) >= d is 1, every non-zero weight is >= 1 + n"""
    from bounds import smallest_degree

    n = code.spec.n
    if not profile.is_exact():
        return NonzeroWeightCheck(False, None, "distance not exact")
    e = smallest_degree(profile.min_distance, n)
    if e != 1:
        return NonzeroWeightCheck(False, None, f"e={e}, claim does not apply")
    passed = profile.min_distance >= n + 1
    return NonzeroWeightCheck(True, passed, f"min distance {profile.min_distance} vs {n + 1}")


def code_report(code: CyclicCode, budget: int = DEFAULT_BUDGET, convention: str = "order",
                distribution: bool = False, seed: int = 0, profile: Optional[WeightProfile] = None,
                lcd: Optional[LcdResult] = None) -> Dict:
    """JSON-ready report for one code; profile and lcd are computed unless given"""
    if profile is None:
        profile = min_distance(code, budget, distribution, seed)
    lcd = lcd or is_lcd(code)
    report = code.to_dict()
    report["lcd"] = lcd.lcd
    report["lcd_detail"] = lcd.to_dict()
    report["min_distance"] = profile.to_dict()
    pattern = find_ht_pattern(code.defining_set, code.spec.n, convention)
    report["ht_pattern"] = pattern.to_dict() if pattern else None
    if pattern and profile.is_exact():
        # a step coprime to n but not to N can claim more than the code has
        report["ht_pattern"]["sound"] = pattern.value < profile.min_distance
    try:
        report["min_weight_height"] = {"value": min_weight_height(code), "method": "exact"}
    except NoCodewordError:
        report["min_weight_height"] = {"value": None, "method": "flagged-degenerate"}
    if profile.distribution is not None:
        report["distribution"] = profile.to_dict()["distribution"]
    return report
