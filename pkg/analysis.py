"""Full analysis of one (n,m)-function, assembled into a JSON-ready report.

Every numeric claim is a {"value", "method"} object. Every theorem check is
{"name", "passed", "detail", "strict"}; only strict checks (those a proof
backs) decide the exit status, the others record claims whose stated
hypotheses are too weak.
"""
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import numpy as np

from annihil import ai_vectorial, annihilator_basis, brute_force_lda, lda_of_set, lda_product
from bounds import (ai_lower_corollary, ai_upper_report, consecutive_zero_bound,
                    lda_lower_from_distance)
from codes import (code_from_defining_set, code_from_preimage, code_of_g_f, code_report,
                   complement_generator_division, function_in_code, generator_G_F, generator_paths_agree, is_lcd,
                   min_distance, nonzero_weight_check, parameters_check)
from complement import (annihilator_set_identity, complement_table, complement_vectorial, lda_sandwich,
                        preimage_trichotomy)
from errors import CapabilityError, NoAnnihilatorError
from funcrep import VectorialFunction, univariate_degree
from models import AnalysisSettings
from seq import (FilterGenerator, berlekamp_massey, keystream, product_annihilator_min_weight,
                 sequence_spectral_immunity, spectral_immunity)

logger = logging.getLogger(__name__)

# exhaustive annihilator-set identities enumerate spans of up to 2^(2^n) functions
MAX_SET_IDENTITY_DEGREE = 4
MAX_ORACLE_DEGREE = 3
MAX_SEQUENCE_SI_DEGREE = 3
MAX_PRODUCT_CANDIDATES = 1 << 16
# above this the membership check uses the lowest-degree annihilators only
MAX_FULL_ANNIHILATOR_DEGREE = 6


def check(name: str, passed: Optional[bool], detail: str, strict: bool = True) -> Dict[str, Any]:
    return {"name": name, "passed": passed, "detail": detail, "strict": strict}


def claim(value: Any, method: str = "exact") -> Dict[str, Any]:
    return {"value": value, "method": method}


def failed_checks(report: Dict[str, Any]) -> List[str]:
    """Names of strict checks that failed; skipped checks (passed None) never fail"""
    return [c["name"] for c in report["checks"] if c["strict"] and c["passed"] is False]


class StageTimer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.timings: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        logger.info(f"Stage {name}")
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.timings[name] = round(time.perf_counter() - start, 6)


def _preimage_lda(F: VectorialFunction, points: np.ndarray, per_value: Dict[int, int], b: int) -> Optional[int]:
    if b in per_value:
        return per_value[b]
    try:
        return lda_of_set(points, F.n)
    except NoAnnihilatorError:
        return None


def _code_section(F: VectorialFunction, b: int, points: np.ndarray, lda: Optional[int],
                  settings: AnalysisSettings) -> Dict[str, Any]:
    """Code C(F^-1(b)) with its LCD, distance, parameter and bound checks"""
    n = F.n
    code = code_from_preimage(F, b)
    section: Dict[str, Any] = {"b": format(b, "x"), "preimage_size": int(points.size)}
    profile = min_distance(code, settings.budget, seed=settings.seed)
    lcd = is_lcd(code)
    section.update(code_report(code, settings.budget, settings.ht_coprime, profile=profile, lcd=lcd))
    checks = []
    if lcd.rank_verified is not None:
        checks.append(check(f"lcd_rank[b={b:x}]", lcd.rank_verified,
                            "self-reciprocity against the stacked generator rank"))
    pattern = section["ht_pattern"]
    if pattern is not None and "sound" in pattern:
        checks.append(check(f"ht_below_distance[b={b:x}]", pattern["sound"],
                            f"t + k = {pattern['value']} vs distance {profile.min_distance}",
                            strict=settings.ht_coprime == "order"))
    parameters = parameters_check(F, b)
    section["parameters"] = parameters.to_dict()
    checks.append(check(f"walsh_identity[b={b:x}]", parameters.walsh_identity,
                        f"|F^-1(b)| = {parameters.preimage_size}, from W(0): {parameters.walsh_size}"))
    checks.append(check(f"stated_dimension[b={b:x}]", section["parameters"]["stated_matches"],
                        f"standard dimension {parameters.dimension} vs stated {parameters.stated_dimension}",
                        strict=False))
    weight_claim = nonzero_weight_check(code, profile)
    if weight_claim.applies:
        checks.append(check(f"weights_above_n[b={b:x}]", weight_claim.passed, weight_claim.detail, strict=False))

    bounds = []
    if profile.is_exact() and lda is not None:
        for convention in ("strict", "weak"):
            report = lda_lower_from_distance(profile.min_distance, n, convention)
            if convention == settings.bound_convention:
                bounds.append(report.to_dict())
            checks.append(check(f"lda_from_distance[{convention}][b={b:x}]", report.value <= lda,
                                f"e = {report.value} vs LDA {lda} at distance {profile.min_distance}",
                                strict=convention == "strict"))
    if lda is not None:
        boolean = F.as_boolean() if F.m == 1 else None
        report = consecutive_zero_bound(code.defining_set, n, coprime=settings.ht_coprime,
                                        convention=settings.bound_convention, f=boolean)
        if report is not None:
            bounds.append(report.to_dict())
            checks.append(check(f"consecutive_zero_bound[b={b:x}]", report.value <= lda,
                                f"bound {report.value} vs LDA {lda}",
                                strict=settings.bound_convention == "strict" and settings.ht_coprime == "order"))
            checks.append(check(f"bound_certificate[b={b:x}]", report.verify(), "recomputed from certificate"))
    if F.m == 1 and code.defining_set:
        other = F.preimage(b ^ 1)
        lda_other = lda_of_set(other, n) if 0 < other.size < (1 << n) else None
        report = consecutive_zero_bound(code.defining_set, n, for_complemented=True,
                                        coprime=settings.ht_coprime, convention=settings.bound_convention)
        if report is not None and lda_other is not None:
            bounds.append(report.to_dict())
            checks.append(check(f"complemented_bound[b={b:x}]", report.value <= lda_other,
                                f"bound {report.value} vs LDA of the other preimage {lda_other}", strict=False))
        corollary = ai_lower_corollary(code.defining_set, n, settings.ht_coprime, settings.bound_convention)
        if corollary is not None:
            bounds.append(corollary.to_dict())
    section["bounds"] = bounds
    section["checks"] = checks
    return section


def _annihilator_membership(F: VectorialFunction, lda: Optional[int]) -> Dict[str, Any]:
    """Every product annihilator folds to a codeword of the code generated by G_F"""
    if lda is None:
        return check("annihilator_in_g_f_code", None, "F vanishes nowhere; no product annihilator")
    degree = F.n if F.n <= MAX_FULL_ANNIHILATOR_DEGREE else lda
    basis = annihilator_basis(F.nonzero_set(), degree, F.n)
    code = code_of_g_f(F)
    members = [function_in_code(code, g) for g in basis.basis]
    return check("annihilator_in_g_f_code", all(members),
                 f"{sum(members)}/{len(members)} basis annihilators of degree <= {degree} are codewords")


def _complement_section(F: VectorialFunction) -> Dict[str, Any]:
    pair = complement_vectorial(F)
    Fc = pair.Fc
    twice = VectorialFunction(F.n, F.m, complement_table(Fc), F.spec)
    checks = [
        check("complement_involution", bool(np.array_equal(twice.table, F.table)), "(F^c)^c = F"),
        check("complement_pointwise", pair.pointwise_holds(), "F^c = F + Delta (1,...,1)"),
        check("complement_anf", pair.anf_complement_holds(), "coordinate ANFs are monomial complements"),
        check("complement_table", bool(np.array_equal(Fc.table, complement_table(F))),
              "coordinatewise complement agrees with flipping F(0)"),
    ]
    cases = preimage_trichotomy(F)
    for case in cases:
        checks.append(check(f"trichotomy[b={case.b:x}]", case.holds, case.case))
    section: Dict[str, Any] = {
        "digest": Fc.digest(),
        "trichotomy": [{"b": format(c.b, "x"), "case": c.case, "holds": c.holds} for c in cases],
    }
    if F.n <= MAX_SET_IDENTITY_DEGREE:
        identities = []
        for case in cases:
            if case.case == "unchanged":
                continue
            result = annihilator_set_identity(F, case.b)
            identities.append(result.to_dict())
            checks.append(check(f"an_identity_literal[b={case.b:x}]", result.literal_holds,
                                f"{len(result.missing)} missing, {len(result.extra)} extra", strict=False))
            checks.append(check(f"an_identity_corrected[b={case.b:x}]", result.corrected_holds,
                                "literal identity plus Delta"))
        section["set_identities"] = identities
    sandwich = lda_sandwich(F)
    section["lda_sandwich"] = sandwich.to_dict()
    checks.append(check("lda_sandwich", sandwich.holds,
                        "skipped" if sandwich.skipped else f"LDA {sandwich.lda}, complement {sandwich.lda_complement}"))
    division = complement_generator_division(F)
    section["division"] = division.to_dict()
    checks.append(check("g_f_divides", division.divides, "G_{F^c} divides G_F"))
    identity = division.inclusions["identity"]
    checks.append(check("inclusion_identity", all(identity.values()),
                        f"{sum(identity.values())}/{len(identity)} preimage codes included"))
    shifted = division.inclusions["shifted"]
    checks.append(check("inclusion_shifted", all(shifted.values()),
                        f"{sum(shifted.values())}/{len(shifted)} preimage codes included", strict=False))
    section["checks"] = checks
    return section


def _spectral_section(F: VectorialFunction, settings: AnalysisSettings) -> Dict[str, Any]:
    si = spectral_immunity(F, settings.budget)
    section = si.to_dict()
    checks = [
        check("si_le_ai_binomial", si.literal_check(), f"SI vs binomial sum up to AI = {si.ai}", strict=False),
        check("si_le_lda_binomial", si.lda_check(), f"SI vs binomial sum up to LDA = {si.lda}"),
    ]
    if F.n <= MAX_SEQUENCE_SI_DEGREE:
        try:
            sequence_si = sequence_spectral_immunity(F)
        except CapabilityError as e:
            logger.warning(f"Sequence spectral immunity skipped: {e}")
            sequence_si = None
        section["sequence_si"] = claim(sequence_si, "exact" if sequence_si is not None else "flagged-degenerate")
        if si.profile.is_exact() and sequence_si is not None:
            checks.append(check("si_code_le_sequence", si.value <= sequence_si,
                                f"code SI {si.value} vs sequence SI {sequence_si}"))
    try:
        product_min = product_annihilator_min_weight(F, min(settings.budget, MAX_PRODUCT_CANDIDATES))
    except CapabilityError as e:
        logger.warning(f"Product annihilator enumeration skipped: {e}")
        product_min = None
    section["product_annihilator_min"] = claim(product_min,
                                               "exact" if product_min is not None else "flagged-degenerate")
    if si.profile.is_exact() and product_min is not None:
        # codewords need not be Boolean, so only <= is guaranteed
        checks.append(check("si_equals_product_annihilator_min", si.value == product_min,
                            f"code SI {si.value}, lightest Boolean product annihilator {product_min}, "
                            f"gap {product_min - si.value}", strict=False))
    generator = FilterGenerator(F.spec, F, 1)
    period = F.spec.group_order
    stream = keystream(generator, 2 * period)
    bits = (stream.symbols != 0).astype(np.int64) if F.m > 1 else stream.symbols
    bm = berlekamp_massey(bits)
    section["keystream"] = {"period": stream.period, "lc": claim(bm.lc), **bm.to_dict()}
    section["checks"] = checks
    return section


def analyze_function(F: VectorialFunction, settings: Optional[AnalysisSettings] = None) -> Dict[str, Any]:
    settings = settings or AnalysisSettings()
    timer = StageTimer(settings.timings)
    n, m = F.n, F.m
    logger.info(f"Analysing {F!r} ({F.digest()[:12]})")
    report: Dict[str, Any] = {
        "function": {"digest": F.digest(), "n": n, "m": m, "table_hex": F.table_hex()},
        "field": F.spec.to_dict(),
        "settings": settings.report_dict(),
    }
    checks: List[Dict[str, Any]] = []

    with timer.stage("representations"):
        report["degree"] = claim(F.degree)
        if n % m == 0:
            report["univariate_degree"] = claim(univariate_degree(F.univariate, n))
        else:
            # outputs have no subfield to live in
            report["univariate_degree"] = dict(claim(None, "flagged-degenerate"), note=f"m={m} does not divide n={n}")

    with timer.stage("annihilators"):
        ai = ai_vectorial(F)
        report["algebraic_immunity"] = ai.to_dict()
        lda = lda_product(F)
        report["lda_product"] = claim(lda, "exact" if lda is not None else "flagged-degenerate")
        if m <= n:
            upper = ai_upper_report(n, m)
            report["ai_upper"] = upper.to_dict()
            checks.append(check("ai_upper", ai.value <= upper.value, f"AI {ai.value} vs upper bound {upper.value}"))
        if n <= MAX_ORACLE_DEGREE:
            for b, points in F.preimages().items():
                if points.size < (1 << n):
                    oracle = brute_force_lda(points, n)
                    checks.append(check(f"lda_oracle[b={b:x}]", oracle == ai.per_value[b],
                                        f"exhaustive {oracle} vs elimination {ai.per_value[b]}"))
        checks.append(_annihilator_membership(F, lda))

    with timer.stage("codes"):
        gen = generator_G_F(F)
        degenerate = gen.degree == F.spec.group_order
        report["g_f"] = dict(gen.to_dict(), method="flagged-degenerate" if degenerate else "exact")
        if n % m == 0:
            checks.append(check("g_f_paths_agree", generator_paths_agree(F), "root product against gcd product"))
        preimages = F.preimages()
        workers = min(len(preimages), os.cpu_count() or 1)
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            sections = list(pool.map(
                lambda item: _code_section(F, item[0], item[1],
                                           _preimage_lda(F, item[1], ai.per_value, item[0]), settings),
                preimages.items(),
            ))
        for section in sections:
            checks.extend(section.pop("checks"))
        report["codes"] = sections

    with timer.stage("complement"):
        section = _complement_section(F)
        checks.extend(section.pop("checks"))
        report["complement"] = section

    with timer.stage("spectral"):
        section = _spectral_section(F, settings)
        checks.extend(section.pop("checks"))
        report["spectral_immunity"] = section

    report["checks"] = checks
    failures = failed_checks(report)
    report["passed"] = not failures
    if failures:
        logger.warning(f"{len(failures)} strict check(s) failed for {F.digest()[:12]}: {', '.join(failures)}")
    if settings.timings:
        report["timings"] = timer.timings
    return report


def analyze_code(spec, defining_set, settings: Optional[AnalysisSettings] = None) -> Dict[str, Any]:
    """Report for a code given directly by its defining set"""
    settings = settings or AnalysisSettings()
    code = code_from_defining_set(spec, defining_set)
    profile = min_distance(code, settings.budget, distribution=True, seed=settings.seed)
    report = code_report(code, settings.budget, settings.ht_coprime, profile=profile)
    report["field"] = spec.to_dict()
    bounds = []
    if profile.is_exact():
        bounds.append(lda_lower_from_distance(profile.min_distance, spec.n, settings.bound_convention).to_dict())
    pattern_bound = consecutive_zero_bound(code.defining_set, spec.n, coprime=settings.ht_coprime,
                                           convention=settings.bound_convention)
    if pattern_bound is not None:
        bounds.append(pattern_bound.to_dict())
    report["bounds"] = bounds
    return report
