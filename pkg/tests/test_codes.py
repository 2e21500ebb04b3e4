import os
import sys
import unittest

import numpy as np

# Add the parent directory to sys.path to import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import field
from annihil import ai_vectorial, annihilator_basis, lda_of_set
from codes import (code_from_defining_set, code_from_pointset, code_from_preimage, code_of_g_f, code_report,
                   complement_generator_division, cyclic_shift, dual_code, dual_generator, find_ht_pattern,
                   function_in_code, generator_G_F, generator_matrix, generator_paths_agree, ht_bound, is_codeword,
                   is_lcd, lcd_by_rank, min_distance, min_weight_height, nonzero_weight_check, parameters_check,
                   position_labels, weight_distribution, weight_height)
from errors import AnalysisError, NoCodewordError, ZeroPointError
from field import make_field
from funcrep import BooleanFunction, VectorialFunction


def sampled_functions(n, count, seed, output_dims):
    """Seeded random (n, m)-functions cycling through output_dims"""
    rng = np.random.default_rng(seed)
    for i in range(count):
        m = output_dims[i % len(output_dims)]
        yield VectorialFunction(n, m, rng.integers(0, 1 << m, size=1 << n))


def boolean_functions(n):
    for value in range(1 << (1 << n)):
        yield BooleanFunction.from_int(n, value).to_vectorial()


class TestCodeConstruction(unittest.TestCase):
    """Test case for cyclic codes from defining sets, point sets and preimages"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.spec = make_field(3)
        self.majority = BooleanFunction.from_int(3, 0xe8).to_vectorial()

    def test_defining_set_is_reduced(self):
        """Test exponents are taken mod 2^n - 1 and deduplicated"""
        code = code_from_defining_set(self.spec, [8, 1, 2, 9])
        self.assertEqual(code.defining_set, (1, 2))
        self.assertEqual(code.length, 7)
        self.assertEqual(code.dimension, 5)
        self.assertEqual(code.gen.degree, 2)

    def test_code_from_pointset(self):
        """Test field points become exponents through the discrete log"""
        code = code_from_pointset(self.spec, [1, 2, 4])
        self.assertEqual(code.defining_set, (0, 1, 2))
        self.assertEqual(code.dimension, 4)
        with self.assertRaises(ZeroPointError):
            code_from_pointset(self.spec, [0, 1])

    def test_code_from_preimage(self):
        """Test the zero point is dropped from the defining set and remembered"""
        code = code_from_preimage(self.majority, 0)
        expected = sorted(field.log_alpha(self.spec, r) for r in (1, 2, 4))
        self.assertEqual(list(code.defining_set), expected)
        self.assertTrue(code.zero_in_preimage)
        self.assertFalse(code_from_preimage(self.majority, 1).zero_in_preimage)

    def test_generator_and_parity(self):
        """Test generator-matrix rows and their cyclic shifts are codewords"""
        code = code_from_defining_set(self.spec, [1, 2])
        for row in generator_matrix(code):
            word = field.to_ints(row)
            self.assertTrue(is_codeword(code, word))
            self.assertTrue(is_codeword(code, cyclic_shift(word)))
        self.assertFalse(is_codeword(code, [1, 0, 0, 0, 0, 0, 0]))
        with self.assertRaises(AnalysisError):
            is_codeword(code, [0] * 6)

    def test_g_f_paths_agree(self):
        """Test the root product and the gcd product give the same G_F"""
        self.assertTrue(generator_paths_agree(self.majority))
        rng = np.random.default_rng(5)
        F = VectorialFunction(3, 3, rng.integers(0, 8, size=8))
        self.assertTrue(generator_paths_agree(F))
        self.assertEqual(generator_G_F(F, "gcd").roots, code_of_g_f(F).defining_set)

    def test_g_f_of_permutation(self):
        """Test a permutation has G_F = x^N + 1, leaving the zero code"""
        F = VectorialFunction(3, 3, np.arange(8))
        self.assertEqual(generator_G_F(F).degree, 7)
        self.assertTrue(code_of_g_f(F).is_zero_code())

    def test_function_in_code(self):
        """Test 1 + f annihilates supp(f) and so lies in the code of that preimage"""
        code = code_from_preimage(self.majority, 1)
        f = self.majority.as_boolean()
        self.assertTrue(function_in_code(code, f + BooleanFunction.constant(3, 1)))
        self.assertFalse(function_in_code(code, f))


class TestGeneratorOfF(unittest.TestCase):
    """Test case for G_F over whole families of functions"""

    def assertAnnihilatorsInCode(self, F, label):
        code = code_of_g_f(F)
        for g in annihilator_basis(F.nonzero_set(), F.n, F.n).basis:
            self.assertTrue(function_in_code(code, g), msg=f"{label}: {g!r}")

    def test_annihilators_in_code_n3_exhaustive(self):
        """Test every product annihilator of every 3-variable function folds into the G_F code"""
        for F in boolean_functions(3):
            self.assertAnnihilatorsInCode(F, F.table_hex())

    def test_annihilators_in_code_sampled_n4(self):
        """Test the same on 201 random (4, m)-functions, m in {1, 2, 4}"""
        for i, F in enumerate(sampled_functions(4, 201, 31, (1, 2, 4))):
            self.assertAnnihilatorsInCode(F, f"sample {i}, m={F.m}")

    def test_paths_agree_n3_exhaustive(self):
        """Test the root product and the gcd product for every 3-variable Boolean function"""
        for F in boolean_functions(3):
            self.assertTrue(generator_paths_agree(F), msg=F.table_hex())

    def test_paths_agree_sampled(self):
        """Test the two paths on random (3, 3)- and (4, m)-functions"""
        for F in sampled_functions(3, 30, 7, (3,)):
            self.assertTrue(generator_paths_agree(F), msg=F.table_hex())
        for i, F in enumerate(sampled_functions(4, 201, 32, (1, 2, 4))):
            self.assertTrue(generator_paths_agree(F), msg=f"sample {i}, m={F.m}")


class TestDualAndLcd(unittest.TestCase):
    """Test case for dual codes and the LCD property"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.spec = make_field(3)

    def test_dual_defining_set(self):
        """Test the dual's defining set is the negated complement"""
        code = code_from_defining_set(self.spec, [1, 2])
        dual = dual_code(code)
        self.assertEqual(dual.defining_set, (0, 1, 2, 3, 4))
        self.assertEqual(dual.dimension, 7 - code.dimension)
        gen = dual_generator(code)
        self.assertEqual(gen.roots, dual.defining_set)
        self.assertEqual(gen.coeffs, dual.gen.coeffs)

    def test_lcd_by_negation_closure(self):
        """Test LCD iff the defining set is closed under e -> -e, confirmed by rank"""
        not_lcd = is_lcd(code_from_defining_set(self.spec, [1, 2]))
        self.assertFalse(not_lcd.lcd)
        self.assertEqual(not_lcd.witness, 1)
        self.assertFalse(not_lcd.self_reciprocal)
        self.assertTrue(not_lcd.rank_verified)

        lcd = is_lcd(code_from_defining_set(self.spec, [1, 6]))
        self.assertTrue(lcd.lcd)
        self.assertIsNone(lcd.witness)
        self.assertTrue(lcd.self_reciprocal)
        self.assertTrue(lcd.rank_verified)

    def test_lcd_rank_exhaustive(self):
        """Test the closure rule against the rank test for every defining set at n = 2 and n = 3"""
        for n in (2, 3):
            spec = make_field(n)
            N = spec.group_order
            for mask in range(1 << N):
                code = code_from_defining_set(spec, [e for e in range(N) if mask >> e & 1])
                self.assertEqual(is_lcd(code, verify_rank=False).lcd, lcd_by_rank(code), msg=f"n={n}, mask {mask}")


class TestHartmannTzengPatterns(unittest.TestCase):
    """Test case for the consecutive-root pattern search"""

    def test_tie_prefers_longer_run(self):
        """Test D = {1, 2} picks t = 2, k = 0 over t = 1, k = 1"""
        pattern = find_ht_pattern([1, 2], 3)
        self.assertEqual((pattern.t, pattern.k, pattern.value), (2, 0, 2))
        self.assertEqual(pattern.exponents(7), [1, 2])
        self.assertEqual(ht_bound([1, 2], 3), 2)

    def test_stepped_pattern(self):
        """Test a pattern with a step larger than one"""
        pattern = find_ht_pattern([1, 3, 5], 3)
        self.assertEqual(pattern.value, 3)
        self.assertTrue(set(pattern.exponents(7)) <= {1, 3, 5})

    def test_empty_and_invalid(self):
        """Test the empty set and an unknown coprimality convention"""
        self.assertIsNone(find_ht_pattern([], 3))
        self.assertEqual(ht_bound([], 3), 0)
        with self.assertRaises(ValueError):
            find_ht_pattern([1], 3, "prime")

    def test_conventions_differ_at_n4(self):
        """Test step 3 is coprime to n = 4 but not to 15"""
        order = find_ht_pattern([1, 4], 4, "order")
        by_n = find_ht_pattern([1, 4], 4, "n")
        self.assertEqual(order.value, 1)
        self.assertEqual(by_n.value, 2)

    def test_bound_below_exact_distance_n3_exhaustive(self):
        """Test t + k < d for every defining set at n = 3, where N = 7 is prime and every step is safe"""
        spec = make_field(3)
        for mask in range(1 << 7):
            defining_set = [e for e in range(7) if mask >> e & 1]
            profile = min_distance(code_from_defining_set(spec, defining_set))
            if not profile.is_exact():
                continue
            for convention in ("order", "n"):
                self.assertLess(ht_bound(defining_set, 3, convention), profile.min_distance,
                                msg=f"D={defining_set}, {convention}")

    def test_bound_below_exact_distance_sampled_n4(self):
        """Test t + k < d on random defining sets at n = 4 with steps coprime to 15"""
        spec = make_field(4)
        rng = np.random.default_rng(15)
        for _ in range(60):
            defining_set = np.flatnonzero(rng.integers(0, 2, size=15)).tolist()
            profile = min_distance(code_from_defining_set(spec, defining_set))
            if profile.is_exact():
                self.assertLess(ht_bound(defining_set, 4, "order"), profile.min_distance, msg=f"D={defining_set}")

    def test_unsound_pattern_is_flagged(self):
        """Test D = {1, 4} at n = 4: step 3 claims d > 2 under the n convention, yet d = 2"""
        code = code_from_defining_set(make_field(4), [1, 4])
        by_n = code_report(code, convention="n")
        self.assertEqual(by_n["min_distance"]["value"], 2)
        self.assertEqual(by_n["ht_pattern"]["value"], 2)
        self.assertFalse(by_n["ht_pattern"]["sound"])
        self.assertTrue(code_report(code, convention="order")["ht_pattern"]["sound"])


class TestMinimumDistance(unittest.TestCase):
    """Test case for minimum distances, brackets and weight distributions"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.spec = make_field(3)

    def test_reed_solomon_distance(self):
        """Test D = {1, 2} gives a [7, 5, 3] MDS code"""
        profile = min_distance(code_from_defining_set(self.spec, [1, 2]), distribution=True)
        self.assertTrue(profile.is_exact())
        self.assertEqual(profile.min_distance, 3)
        self.assertEqual(profile.distribution[0], 1)
        self.assertEqual(profile.distribution[3], 245)
        self.assertEqual(sum(profile.distribution.values()), 8 ** 5)
        self.assertEqual(min(w for w in profile.distribution if w), 3)

    def test_search_finds_light_word(self):
        """Test D = {1, 4} at n = 4 has a weight-2 codeword below the generator weight"""
        code = code_from_defining_set(make_field(4), [1, 4])
        profile = min_distance(code)
        self.assertEqual(profile.min_distance, 2)
        self.assertEqual(sum(1 for c in profile.lightest if c), 2)
        self.assertTrue(is_codeword(code, profile.lightest))

    def test_budget_gives_bracket(self):
        """Test an exhausted budget reports a bracket instead of a value"""
        code = code_from_defining_set(make_field(4), [1, 4])
        profile = min_distance(code, budget=0)
        self.assertEqual(profile.method, "bracket")
        self.assertEqual(profile.lower, 2)
        self.assertIn(profile.upper, (2, 3))
        self.assertIn("bracket", profile.to_dict())

    def test_degenerate_codes(self):
        """Test the zero code is flagged and the full space has distance 1"""
        zero = min_distance(code_from_defining_set(self.spec, range(7)))
        self.assertIsNone(zero.min_distance)
        self.assertEqual(zero.to_dict()["method"], "flagged-degenerate")
        self.assertEqual(min_distance(code_from_defining_set(self.spec, [])).min_distance, 1)

    def test_distance_below_generator_weight(self):
        """Test d <= wt(G) <= N - k + 1 for every non-zero code at n = 3"""
        for mask in range((1 << 7) - 1):
            code = code_from_defining_set(self.spec, [e for e in range(7) if mask >> e & 1])
            profile = min_distance(code)
            self.assertTrue(profile.is_exact(), msg=f"mask {mask}")
            self.assertLessEqual(profile.min_distance, code.gen.weight, msg=f"mask {mask}")
            self.assertLessEqual(code.gen.weight, code.length - code.dimension + 1, msg=f"mask {mask}")

    def test_distribution_over_budget(self):
        """Test the distribution is skipped when q^k exceeds the budget"""
        self.assertIsNone(weight_distribution(code_from_defining_set(self.spec, [1]), budget=1000))

    def test_nonzero_weight_claim(self):
        """Test the weight claim applies only when the smallest degree is 1"""
        code = code_from_defining_set(self.spec, [1, 2])
        check = nonzero_weight_check(code, min_distance(code))
        self.assertTrue(check.applies)
        self.assertFalse(check.passed)


class TestWeightHeight(unittest.TestCase):
    """Test case for weight-heights and their link to annihilator degrees"""

    def test_labels(self):
        """Test position 0 reads as 2^n - 1 only when 0 is in the preimage"""
        spec = make_field(3)
        with_zero = code_from_defining_set(spec, [1], zero_in_preimage=True)
        without_zero = code_from_defining_set(spec, [1], zero_in_preimage=False)
        self.assertEqual(position_labels(with_zero).tolist(), [3, 1, 1, 2, 1, 2, 2])
        self.assertEqual(position_labels(without_zero).tolist(), [0, 1, 1, 2, 1, 2, 2])
        self.assertEqual(weight_height(without_zero, [0, 0, 0, 1, 0, 0, 0]), 2)
        with self.assertRaises(NoCodewordError):
            weight_height(without_zero, [0] * 7)

    def test_min_weight_height_equals_lda_exhaustive(self):
        """Test min weight-height of C(F^-1(b)) is the LDA of F^-1(b) for every 3-variable function"""
        for value in range(1, 255):
            F = BooleanFunction.from_int(3, value).to_vectorial()
            for b, points in F.preimages().items():
                self.assertEqual(min_weight_height(code_from_preimage(F, b)), lda_of_set(points, 3),
                                 msg=f"table {value:02x}, b={b}")

    def assertAiIsMinWeightHeight(self, F, label):
        per_value = [min_weight_height(code_from_preimage(F, b)) for b in F.preimages()]
        self.assertEqual(ai_vectorial(F).value, min(per_value), msg=label)

    def test_ai_equals_min_weight_height_boolean_n3(self):
        """Test AI(f) is the least min weight-height over both preimage codes, for every non-constant f"""
        for value in range(1, 255):
            self.assertAiIsMinWeightHeight(BooleanFunction.from_int(3, value).to_vectorial(), f"table {value:02x}")

    def test_ai_equals_min_weight_height_vectorial_n3(self):
        """Test the same on random (3,3)-functions"""
        for i, F in enumerate(sampled_functions(3, 300, 42, (3,))):
            if not F.is_constant():
                self.assertAiIsMinWeightHeight(F, f"sample {i}")

    def test_ai_equals_min_weight_height_sampled_n4(self):
        """Test the same on random (4, m)-functions, m in {1, 2, 4}"""
        for i, F in enumerate(sampled_functions(4, 60, 43, (1, 2, 4))):
            if not F.is_constant():
                self.assertAiIsMinWeightHeight(F, f"sample {i}, m={F.m}")

    def test_zero_code_cases(self):
        """Test the zero code: n without the zero point, an error with it"""
        spec = make_field(3)
        self.assertEqual(min_weight_height(code_from_defining_set(spec, range(7), zero_in_preimage=False)), 3)
        with self.assertRaises(NoCodewordError):
            min_weight_height(code_from_defining_set(spec, range(7), zero_in_preimage=True))


class TestComplementDivision(unittest.TestCase):
    """Test case for G_F against G_{F^c} and preimage-code inclusions"""

    def test_generators_coincide(self):
        """Test F and F^c agree off zero, so G_F / G_{F^c} = 1"""
        rng = np.random.default_rng(9)
        F = VectorialFunction(3, 2, rng.integers(0, 4, size=8))
        result = complement_generator_division(F)
        self.assertTrue(result.divides)
        self.assertEqual(result.quotient.coeffs, (1,))
        self.assertTrue(all(result.inclusions["identity"].values()))
        self.assertEqual(set(result.to_dict()["inclusions"]), {"identity", "shifted"})

    def test_parameters_check(self):
        """Test |F^-1(b)| = 2^(n-1) - W(0)/2 and the code dimension"""
        F = BooleanFunction.from_int(3, 0xe8).to_vectorial()
        check = parameters_check(F, 1)
        self.assertEqual(check.preimage_size, 4)
        self.assertTrue(check.walsh_identity)
        self.assertEqual(check.dimension, 3)


class TestCodeReport(unittest.TestCase):
    """Test case for the JSON code report"""

    def test_report_fields(self):
        """Test the report carries distance, LCD, pattern and weight-height"""
        report = code_report(code_from_defining_set(make_field(3), [1, 6]))
        self.assertEqual(report["dimension"], 5)
        self.assertTrue(report["lcd"])
        self.assertEqual(report["min_distance"], {"value": 3, "method": "exact"})
        self.assertIsNotNone(report["ht_pattern"])
        self.assertEqual(report["min_weight_height"]["method"], "exact")

    def test_zero_code_report(self):
        """Test the zero code reports degenerate distance and weight-height"""
        report = code_report(code_from_defining_set(make_field(3), range(7)))
        self.assertEqual(report["min_distance"]["method"], "flagged-degenerate")
        self.assertEqual(report["min_weight_height"]["method"], "flagged-degenerate")


if __name__ == '__main__':
    unittest.main()
