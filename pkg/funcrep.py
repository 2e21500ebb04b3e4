"""Boolean and (n,m)-functions: truth table, ANF and univariate form.

Points of F_2^n are the integers 0 .. 2^n - 1, x_1 being bit 0. The same
bit pattern names the field element of GF(2^n) in the polynomial basis, so
the truth table, the ANF and the univariate form all index the same points.
"""
import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

import field
from errors import InvalidEmbeddingError, ShapeError
from field import FieldSpec

logger = logging.getLogger(__name__)

# cap on entries of one power-sum block
_CHUNK_ENTRIES = 1 << 22


def _log2_length(length: int) -> int:
    if length < 2 or length & (length - 1):
        raise ShapeError(f"Table length {length} is not a power of two >= 2")
    return length.bit_length() - 1


@lru_cache(maxsize=None)
def hamming_weights(size: int) -> np.ndarray:
    """w_2(i) for i in range(size)"""
    idx = np.arange(size, dtype=np.int64)
    weights = np.zeros(size, dtype=np.int64)
    while np.any(idx):
        weights += idx & 1
        idx = idx >> 1
    weights.setflags(write=False)
    return weights


def moebius(bits: Sequence[int]) -> np.ndarray:
    """Binary Moebius transform; tt -> anf and anf -> tt alike"""
    a = np.array(bits, dtype=np.uint8) & 1
    _log2_length(a.size)
    size = a.size
    step = 1
    while step < size:
        a = a.reshape(-1, 2, step)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(size)
        step <<= 1
    return a


def anf_from_tt(tt: Sequence[int]) -> np.ndarray:
    return moebius(tt)


def tt_from_anf(anf: Sequence[int]) -> np.ndarray:
    return moebius(anf)


def bits_to_int(bits: np.ndarray) -> int:
    """Pack a 0/1 vector into an int, bit i = entry i"""
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def int_to_bits(value: int, length: int) -> np.ndarray:
    raw = np.frombuffer(value.to_bytes((length + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length].copy()


def bits_to_hex(bits: np.ndarray) -> str:
    width = max(1, (len(bits) + 3) // 4)
    return format(bits_to_int(bits), f"0{width}x")


def walsh_dot(tt: Sequence[int]) -> np.ndarray:
    """W(u) = sum_x (-1)^(f(x) + u.x), fast butterfly"""
    a = 1 - 2 * (np.asarray(tt, dtype=np.int64) & 1)
    size = a.size
    _log2_length(size)
    step = 1
    while step < size:
        a = a.reshape(-1, 2, step)
        low = a[:, 0, :].copy()
        high = a[:, 1, :]
        a = np.stack((low + high, low - high), axis=1).reshape(size)
        step <<= 1
    return a


@lru_cache(maxsize=None)
def trace_dual_index(spec: FieldSpec) -> np.ndarray:
    """c(u) with c(u)_i = Tr(u * x^i), so that Tr(u x) = c(u) . x"""
    GF = field.galois_field(spec)
    u = GF(np.arange(spec.order, dtype=np.int64))
    index = np.zeros(spec.order, dtype=np.int64)
    for i in range(spec.n):
        products = field.to_ints(u * GF(1 << i))
        index |= field.trace_array(spec, 1, products) << i
    index.setflags(write=False)
    return index


def _power_sums(spec: FieldSpec, values: np.ndarray, sign: int) -> np.ndarray:
    """out[i] = sum_j values[j] * alpha^(sign*i*j) for i, j in 0 .. N-1"""
    N = spec.group_order
    exp = field.exp_table(spec)
    logs = field.log_table(spec)[values]
    nonzero = np.flatnonzero(values)
    out = np.zeros(N, dtype=np.int64)
    if nonzero.size == 0:
        return out
    j = nonzero.astype(np.int64)
    base = logs[nonzero]
    rows = max(1, _CHUNK_ENTRIES // j.size)
    for start in range(0, N, rows):
        i = np.arange(start, min(start + rows, N), dtype=np.int64)
        exponents = (base[None, :] + sign * (i[:, None] * j[None, :] % N)) % N
        out[i] = np.bitwise_xor.reduce(exp[exponents], axis=1)
    return out


def univariate_from_table(spec: FieldSpec, table: Sequence[int], m: int = 1) -> np.ndarray:
    """Coefficients delta_0 .. delta_(2^n - 1) of the interpolating polynomial.

    Outputs are m-bit values embedded into the subfield GF(2^m); m = 1 covers
    Boolean functions.
    """
    values = np.asarray(table, dtype=np.int64)
    if values.size != spec.order:
        raise ShapeError(f"Table has {values.size} entries, GF(2^{spec.n}) has {spec.order} points")
    if spec.n % m:
        raise InvalidEmbeddingError(f"m={m} does not divide n={spec.n}")
    embedded = field.embedding_table(spec, m)[values]
    N = spec.group_order
    on_orbit = embedded[field.exp_table(spec)]
    sums = _power_sums(spec, on_orbit, -1)
    coeffs = np.zeros(spec.order, dtype=np.int64)
    coeffs[0] = embedded[0]
    coeffs[1:N] = sums[1:]
    coeffs[N] = embedded[0] ^ sums[0]
    return coeffs


def evaluate_univariate(spec: FieldSpec, coeffs: Sequence[int], m: Optional[int] = None) -> np.ndarray:
    """Evaluate at every point; with m given, project the values to m-bit vectors"""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if coeffs.size != spec.order:
        raise ShapeError(f"Expected {spec.order} coefficients, got {coeffs.size}")
    N = spec.group_order
    folded = fold_to_codeword(spec, coeffs)
    on_orbit = _power_sums(spec, folded, 1)
    values = np.zeros(spec.order, dtype=np.int64)
    values[0] = coeffs[0]
    values[field.exp_table(spec)] = on_orbit[:N]
    if m is None:
        return values
    if spec.n % m:
        raise InvalidEmbeddingError(f"m={m} does not divide n={spec.n}")
    back = np.full(spec.order, -1, dtype=np.int64)
    back[field.embedding_table(spec, m)] = np.arange(1 << m, dtype=np.int64)
    projected = back[values]
    if np.any(projected < 0):
        bad = int(values[np.flatnonzero(projected < 0)[0]])
        raise InvalidEmbeddingError(f"Value {bad:#x} lies outside the subfield GF(2^{m})")
    return projected


def fold_to_codeword(spec: FieldSpec, coeffs: Sequence[int]) -> np.ndarray:
    """Restriction to GF(2^n)* as a length 2^n - 1 word: c_0 = delta_0 + delta_N"""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    N = spec.group_order
    word = coeffs[:N].copy()
    word[0] ^= coeffs[N]
    return word


def univariate_degree(coeffs: Sequence[int], n: int) -> int:
    coeffs = np.asarray(coeffs)
    nonzero = np.flatnonzero(coeffs)
    if nonzero.size == 0:
        return 0
    return int(hamming_weights(1 << n)[nonzero].max())


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    values: np.ndarray
    inner: str = "trace"

    def parseval_holds(self) -> bool:
        return int(np.sum(self.values.astype(object) ** 2)) == len(self.values) ** 2


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """A function F_2^n -> F_2; tt is the source of truth, the other forms are derived"""
    n: int
    tt: np.ndarray

    def __post_init__(self):
        tt = np.asarray(self.tt, dtype=np.uint8)
        if tt.size != 1 << self.n:
            raise ShapeError(f"Truth table of length {tt.size} does not match n={self.n}")
        if np.any(tt > 1):
            raise ShapeError("Truth table entries must be 0 or 1")
        tt = tt.copy()
        tt.setflags(write=False)
        object.__setattr__(self, "tt", tt)

    @classmethod
    def from_tt(cls, tt: Sequence[int]) -> "BooleanFunction":
        tt = np.asarray(tt, dtype=np.uint8)
        return cls(_log2_length(tt.size), tt)

    @classmethod
    def from_anf(cls, anf: Sequence[int]) -> "BooleanFunction":
        return cls.from_tt(tt_from_anf(anf))

    @classmethod
    def from_int(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, int_to_bits(value, 1 << n))

    @classmethod
    def from_anf_int(cls, n: int, value: int) -> "BooleanFunction":
        return cls.from_anf(int_to_bits(value, 1 << n))

    @classmethod
    def from_univariate(cls, spec: FieldSpec, coeffs: Sequence[int]) -> "BooleanFunction":
        return cls(spec.n, evaluate_univariate(spec, coeffs, 1))

    @classmethod
    def delta(cls, n: int) -> "BooleanFunction":
        """Indicator of the zero point, prod(1 + x_i)"""
        tt = np.zeros(1 << n, dtype=np.uint8)
        tt[0] = 1
        return cls(n, tt)

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, np.full(1 << n, value & 1, dtype=np.uint8))

    @cached_property
    def anf(self) -> np.ndarray:
        anf = anf_from_tt(self.tt)
        anf.setflags(write=False)
        return anf

    def univariate(self, spec: Optional[FieldSpec] = None) -> np.ndarray:
        spec = spec or field.make_field(self.n)
        return univariate_from_table(spec, self.tt, 1)

    @property
    def degree(self) -> int:
        """Algebraic degree; 0 for the zero function"""
        monomials = np.flatnonzero(self.anf)
        if monomials.size == 0:
            return 0
        return int(hamming_weights(1 << self.n)[monomials].max())

    def to_int(self) -> int:
        return bits_to_int(self.tt)

    def anf_int(self) -> int:
        return bits_to_int(self.anf)

    def to_hex(self) -> str:
        return bits_to_hex(self.tt)

    def anf_hex(self) -> str:
        return bits_to_hex(self.anf)

    def __call__(self, x: int) -> int:
        return int(self.tt[x])

    def __add__(self, other: "BooleanFunction") -> "BooleanFunction":
        return BooleanFunction(self.n, self.tt ^ other.tt)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.tt, other.tt)

    def __hash__(self):
        return hash((self.n, self.to_int()))

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, tt=0x{self.to_hex()})"

    def is_zero(self) -> bool:
        return not np.any(self.tt)

    def weight(self) -> int:
        return int(np.count_nonzero(self.tt))

    def walsh(self, inner: str = "trace", spec: Optional[FieldSpec] = None) -> WalshSpectrum:
        """W_f(u) = sum_x (-1)^(f(x) + <u, x>).

        inner="trace" uses <u, x> = Tr(u x) over the field, inner="dot" the
        bitwise dot product. Both spectra hold the same values, re-indexed.
        """
        spectrum = walsh_dot(self.tt)
        if inner == "dot":
            return WalshSpectrum(spectrum, "dot")
        if inner != "trace":
            raise ValueError(f"Unknown inner product '{inner}'")
        spec = spec or field.make_field(self.n)
        return WalshSpectrum(spectrum[trace_dual_index(spec)], "trace")

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.tt)

    def to_vectorial(self, spec: Optional[FieldSpec] = None) -> "VectorialFunction":
        return VectorialFunction(self.n, 1, self.tt.astype(np.int64), spec)


def anf_from_tt_int(n: int, value: int) -> int:
    return bits_to_int(moebius(int_to_bits(value, 1 << n)))


def walsh(f: BooleanFunction, inner: str = "trace") -> WalshSpectrum:
    return f.walsh(inner)


def support(f: BooleanFunction) -> np.ndarray:
    return f.support()


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    """An (n,m)-function held as its table of m-bit outputs"""
    n: int
    m: int
    table: np.ndarray
    spec: Optional[FieldSpec] = None

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.size != 1 << self.n:
            raise ShapeError(f"Table of length {table.size} does not match n={self.n}")
        if self.m < 1:
            raise ShapeError(f"Output dimension m={self.m} must be positive")
        if np.any(table < 0) or np.any(table >> self.m):
            raise ShapeError(f"Table entries must be {self.m}-bit values")
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        if self.spec is None:
            object.__setattr__(self, "spec", field.make_field(self.n))
        elif self.spec.n != self.n:
            raise ShapeError(f"Field has degree {self.spec.n} but n={self.n}")

    @classmethod
    def from_table(cls, m: int, table: Sequence[int], spec: Optional[FieldSpec] = None) -> "VectorialFunction":
        table = np.asarray(table, dtype=np.int64)
        return cls(_log2_length(table.size), m, table, spec)

    @classmethod
    def from_univariate(cls, spec: FieldSpec, coeffs: Sequence[int], m: Optional[int] = None) -> "VectorialFunction":
        m = spec.n if m is None else m
        return cls(spec.n, m, evaluate_univariate(spec, coeffs, m), spec)

    @classmethod
    def from_coordinates(cls, coordinates: Sequence[BooleanFunction], spec: Optional[FieldSpec] = None) -> "VectorialFunction":
        n = coordinates[0].n
        table = np.zeros(1 << n, dtype=np.int64)
        for i, f in enumerate(coordinates):
            table |= f.tt.astype(np.int64) << i
        return cls(n, len(coordinates), table, spec)

    def coordinate(self, i: int) -> BooleanFunction:
        return BooleanFunction(self.n, ((self.table >> i) & 1).astype(np.uint8))

    def coordinates(self):
        return [self.coordinate(i) for i in range(self.m)]

    def as_boolean(self) -> BooleanFunction:
        if self.m != 1:
            raise ShapeError(f"An ({self.n},{self.m})-function is not Boolean")
        return self.coordinate(0)

    @cached_property
    def univariate(self) -> np.ndarray:
        coeffs = univariate_from_table(self.spec, self.table, self.m)
        coeffs.setflags(write=False)
        return coeffs

    @property
    def degree(self) -> int:
        return max(f.degree for f in self.coordinates())

    def is_constant(self) -> bool:
        return bool(np.all(self.table == self.table[0]))

    def is_permutation(self) -> bool:
        return self.n == self.m and np.unique(self.table).size == self.table.size

    def preimage(self, b: int) -> np.ndarray:
        return np.flatnonzero(self.table == b)

    def preimages(self) -> Dict[int, np.ndarray]:
        """Non-empty preimages keyed by output value, in increasing b"""
        values = np.unique(self.table)
        return {int(b): self.preimage(int(b)) for b in values}

    def nonzero_set(self) -> np.ndarray:
        """Points where F(x) != 0"""
        return np.flatnonzero(self.table)

    def component(self, v: int) -> BooleanFunction:
        """Tr^m_1(v F(x)), computed inside GF(2^n) with outputs in the subfield GF(2^m)"""
        if self.n % self.m:
            raise InvalidEmbeddingError(f"m={self.m} does not divide n={self.n}")
        if not 0 < v < (1 << self.m):
            raise ShapeError(f"Component index {v} must be a non-zero {self.m}-bit value")
        GF = field.galois_field(self.spec)
        embedded = field.embedding_table(self.spec, self.m)
        products = field.to_ints(GF(embedded[self.table]) * GF(int(embedded[v])))
        values = field.trace_array(self.spec, 1, products, top=self.m)
        return BooleanFunction(self.n, values.astype(np.uint8))

    def table_hex(self) -> str:
        if self.m == 1:
            return self.coordinate(0).to_hex()
        width = (self.m + 3) // 4
        return ",".join(format(int(y), f"0{width}x") for y in self.table)

    def digest(self) -> str:
        """SHA-256 of the canonical table, the function's identity in reports and the store"""
        canonical = f"{self.n}:{self.m}:{self.table_hex()}"
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def __repr__(self) -> str:
        return f"VectorialFunction(n={self.n}, m={self.m})"


def preimage(F: VectorialFunction, b: int) -> np.ndarray:
    return F.preimage(b)


def algebraic_degree(f) -> int:
    return f.degree


def point_set(points: Iterable[int]) -> np.ndarray:
    """Sorted unique int array from any iterable of points"""
    return np.unique(np.fromiter((int(p) for p in points), dtype=np.int64))
