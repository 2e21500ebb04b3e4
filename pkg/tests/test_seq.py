import os
import sys
import unittest

import numpy as np

# Add the parent directory to sys.path to import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import field
from errors import AnnihilatorContractError, CapabilityError, DegenerateOrbitError
from field import make_field
from funcrep import BooleanFunction, VectorialFunction
from seq import (BMResult, FilterGenerator, berlekamp_massey, keystream, linear_complexity, minimal_period,
                 naive_linear_complexity, product_annihilator_min_weight, regenerates,
                 sequence_annihilator_from_function, sequence_spectral_immunity, spectral_immunity)

M_SEQUENCE = [1, 0, 0, 1, 0, 1, 1]


def absolute_trace(n):
    spec = make_field(n)
    return BooleanFunction(n, field.trace_array(spec, 1, np.arange(spec.order)).astype(np.uint8))


class TestBerlekampMassey(unittest.TestCase):
    """Test case for linear complexity over GF(2)"""

    def test_zero_sequence(self):
        """Test the all-zero sequence has linear complexity 0"""
        self.assertEqual(berlekamp_massey([0] * 10).lc, 0)
        self.assertEqual(berlekamp_massey([]).lc, 0)

    def test_m_sequence(self):
        """Test two periods of an m-sequence of period 7 have complexity 3"""
        result = berlekamp_massey(M_SEQUENCE * 2)
        self.assertEqual(result.lc, 3)
        self.assertTrue(regenerates(M_SEQUENCE * 2, result))
        self.assertEqual(result.to_dict()["lc"], 3)
        self.assertEqual(result.minimal_poly.bit_length() - 1, 3)

    def test_single_late_one(self):
        """Test 0001 needs a register of length 4"""
        self.assertEqual(linear_complexity([0, 0, 0, 1]), 4)
        self.assertEqual(linear_complexity([1]), 1)

    def test_against_naive_search(self):
        """Test Berlekamp-Massey against trying every connection vector"""
        rng = np.random.default_rng(1)
        for _ in range(60):
            bits = rng.integers(0, 2, size=10).tolist()
            result = berlekamp_massey(bits)
            self.assertEqual(result.lc, naive_linear_complexity(bits), msg=str(bits))
            self.assertTrue(regenerates(bits, result))

    def test_naive_limit(self):
        with self.assertRaises(CapabilityError):
            naive_linear_complexity([0] * 21)

    def test_minimal_poly_reverses_connection(self):
        """Test h_i = c_(L-i)"""
        self.assertEqual(BMResult(3, 0b1011).minimal_poly, 0b1101)


class TestFilterGenerator(unittest.TestCase):
    """Test case for keystreams z_t = F(x alpha^t)"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.spec = make_field(3)
        self.trace = absolute_trace(3)
        self.generator = FilterGenerator(self.spec, self.trace.to_vectorial(), 1)

    def test_trace_keystream_is_m_sequence(self):
        """Test Tr(alpha^t) has period 7 and linear complexity 3"""
        stream = keystream(self.generator, 14)
        self.assertEqual(len(stream), 14)
        self.assertEqual(stream.period, 7)
        self.assertEqual(linear_complexity(stream.symbols), 3)
        self.assertEqual(stream.bits()[:7], stream.bits()[7:])

    def test_state_shifts_the_stream(self):
        """Test starting from alpha^s shifts the keystream by s"""
        base = keystream(self.generator, 7).symbols
        shifted = keystream(FilterGenerator(self.spec, self.trace.to_vectorial(), 4), 7).symbols
        self.assertTrue(np.array_equal(shifted, np.roll(base, -2)))

    def test_zero_state(self):
        """Test the zero state is refused"""
        with self.assertRaises(DegenerateOrbitError):
            keystream(FilterGenerator(self.spec, self.trace.to_vectorial(), 0), 7)
        with self.assertRaises(ValueError):
            keystream(self.generator, 0)

    def test_hex_symbols(self):
        """Test vectorial keystreams print as hex symbols"""
        F = VectorialFunction(3, 3, np.arange(8))
        stream = keystream(FilterGenerator(self.spec, F, 1), 3)
        self.assertEqual(stream.to_hex(3), "1 2 4")

    def test_minimal_period(self):
        self.assertEqual(minimal_period(np.array([1, 0, 1, 0, 1, 0]), 6), 2)
        self.assertEqual(minimal_period(np.zeros(7), 7), 1)


class TestSequenceAnnihilators(unittest.TestCase):
    """Test case for u_t = g(x alpha^t) with u_t z_t = 0"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.spec = make_field(3)
        self.trace = absolute_trace(3)
        self.generator = FilterGenerator(self.spec, self.trace.to_vectorial(), 1)

    def test_complement_annihilates(self):
        """Test 1 + f gives an accepted annihilator sequence"""
        g = self.trace + BooleanFunction.constant(3, 1)
        result = sequence_annihilator_from_function(g, self.generator, 14)
        self.assertFalse(result.rejected)
        z = keystream(self.generator, 14).symbols
        self.assertFalse(np.any(result.sequence.symbols * z))

    def test_contract_violation(self):
        """Test f itself breaks u_t z_t = 0 at the first t with z_t = 1"""
        with self.assertRaises(AnnihilatorContractError) as context:
            sequence_annihilator_from_function(self.trace, self.generator, 7)
        self.assertEqual(context.exception.t, 0)

    def test_zero_sequence_rejected(self):
        """Test Delta vanishes on the whole orbit and is rejected"""
        result = sequence_annihilator_from_function(BooleanFunction.delta(3), self.generator, 7)
        self.assertTrue(result.rejected)
        self.assertTrue(result.sequence.is_zero())


class TestSpectralImmunity(unittest.TestCase):
    """Test case for spectral immunity from the G_F code and from keystreams"""

    def test_zero_function(self):
        """Test F = 0 has G_F = 1 and spectral immunity 1"""
        si = spectral_immunity(BooleanFunction.constant(3, 0).to_vectorial())
        self.assertEqual(si.value, 1)

    def test_literal_bound_fails_lda_bound_holds(self):
        """Test f = 1 + x1x2x3: AI 1 but spectral immunity 7"""
        f = BooleanFunction.from_int(3, 0x7f)
        si = spectral_immunity(f.to_vectorial())
        self.assertEqual(si.ai, 1)
        self.assertEqual(si.value, 7)
        self.assertFalse(si.literal_check())
        self.assertEqual(si.lda, 3)
        self.assertTrue(si.lda_check())
        self.assertFalse(si.to_dict()["le_ai_binomial"])

    def test_permutation_is_degenerate(self):
        """Test a permutation leaves the zero code and no value"""
        si = spectral_immunity(VectorialFunction(3, 3, np.arange(8)))
        self.assertIsNone(si.value)
        self.assertIsNone(si.literal_check())

    def test_code_value_against_product_annihilators_exhaustive(self):
        """Test all n = 3 tables: lightest product annihilator = sequence value >= code value"""
        gaps = []
        for value in range(1, 256):
            F = BooleanFunction.from_int(3, value).to_vectorial()
            product_min = product_annihilator_min_weight(F)
            self.assertEqual(product_min, sequence_spectral_immunity(F), msg=f"table {value:02x}")
            si = spectral_immunity(F)
            if product_min is None or not si.profile.is_exact():
                continue
            self.assertLessEqual(si.value, product_min, msg=f"table {value:02x}")
            if si.value < product_min:
                gaps.append(value)
        self.assertIn(0x02, gaps)
        self.assertIn(0x03, gaps)

    def test_single_point_gap(self):
        """Test f = indicator of 1: code value 2 while Boolean annihilators need 3 coefficients"""
        F = BooleanFunction.from_int(3, 0x02).to_vectorial()
        self.assertEqual(spectral_immunity(F).value, 2)
        self.assertEqual(product_annihilator_min_weight(F), 3)

    def test_product_annihilators_of_zero_function(self):
        """Test F = 0 is annihilated by the constant 1, a single coefficient"""
        self.assertEqual(product_annihilator_min_weight(BooleanFunction.constant(3, 0).to_vectorial()), 1)

    def test_product_annihilators_when_only_zero_vanishes(self):
        """Test the indicator of 0 folds away, leaving no product annihilator"""
        F = BooleanFunction.from_int(3, 0xfe).to_vectorial()
        self.assertIsNone(product_annihilator_min_weight(F))
        with self.assertRaises(CapabilityError):
            product_annihilator_min_weight(BooleanFunction.constant(3, 0).to_vectorial(), budget=10)

    def test_nowhere_zero_keystream(self):
        """Test a keystream without zeros has no annihilator"""
        self.assertIsNone(sequence_spectral_immunity(VectorialFunction(2, 2, np.arange(4))))

    def test_sequence_budget(self):
        with self.assertRaises(CapabilityError):
            sequence_spectral_immunity(BooleanFunction.constant(3, 0).to_vectorial(), budget=10)


if __name__ == '__main__':
    unittest.main()
