"""Bounds on LDA and algebraic immunity, each with the certificate behind it."""
import logging
from dataclasses import dataclass, field as dataclass_field
from math import comb
from typing import Any, Dict, Iterable, Optional

from codes import find_ht_pattern
from errors import ImpossibleDistanceError
from funcrep import BooleanFunction

logger = logging.getLogger(__name__)

CONVENTIONS = ("strict", "weak")


def binomial_sum(n: int, e: int, start: int = 0) -> int:
    """sum_{i=start}^{e} C(n, i)"""
    return sum(comb(n, i) for i in range(start, e + 1))


def _start(convention: str) -> int:
    if convention not in CONVENTIONS:
        raise ValueError(f"Unknown convention '{convention}', expected one of {CONVENTIONS}")
    return 0 if convention == "strict" else 1


def smallest_degree(threshold: int, n: int, start: int = 0) -> int:
    """Smallest e with binomial_sum(n, e, start) >= threshold"""
    for e in range(n + 1):
        if binomial_sum(n, e, start) >= threshold:
            return e
    raise ImpossibleDistanceError(f"No degree e <= {n} reaches the binomial sum {threshold}")


@dataclass(frozen=True)
class BoundReport:
    kind: str
    value: int
    certificate: Dict[str, Any]
    convention_flags: Dict[str, str] = dataclass_field(default_factory=dict)

    def verify(self) -> bool:
        """Recompute value from the certificate"""
        c = self.certificate
        if c.get("unreachable"):
            return self.value == 0
        n = c["n"]
        if self.kind == "ai_upper":
            return self.value == next(d for d in range(n + 1) if binomial_sum(n, d) > c["threshold"])
        e = smallest_degree(c["threshold"], n, c["start"])
        if self.kind == "lda_lower":
            return self.value == e
        return self.value == max(0, e - 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "value": self.value,
            "certificate": dict(self.certificate),
            "convention_flags": dict(self.convention_flags),
        }


def lda_lower_from_distance(delta: int, n: int, convention: str = "strict") -> BoundReport:
    """LDA >= e for the smallest e with sum_{i<=e} C(n,i) >= delta.

    "strict" sums from i = 0 and is always sound; "weak" sums from i = 1.
    The certificate also names the largest degree e' with no annihilator.
    """
    if delta < 1 or delta > 1 << n:
        raise ImpossibleDistanceError(f"Minimum distance {delta} impossible for length {(1 << n) - 1} codes")
    start = _start(convention)
    e = smallest_degree(delta, n, start)
    certificate = {"n": n, "delta": delta, "threshold": delta, "start": start, "no_annihilator_up_to": e - 1}
    return BoundReport("lda_lower", e, certificate, {"bound_convention": convention})


def _degree_bound(kind: str, threshold: int, n: int, start: int, certificate: Dict[str, Any],
                  flags: Dict[str, str]) -> BoundReport:
    """e (lda_lower) or e - 1 (the other kinds) for the smallest e reaching threshold"""
    certificate = dict(certificate, n=n, threshold=threshold, start=start)
    try:
        e = smallest_degree(threshold, n, start)
    except ImpossibleDistanceError:
        logger.warning(f"{kind}: threshold {threshold} unreachable at n={n}, bound degrades to 0")
        return BoundReport(kind, 0, dict(certificate, unreachable=True), flags)
    return BoundReport(kind, e if kind == "lda_lower" else max(0, e - 1), certificate, flags)


def consecutive_zero_bound(defining_set: Iterable[int], n: int, for_complemented: bool = False,
                           coprime: str = "order", convention: str = "strict",
                           f: Optional[BooleanFunction] = None) -> Optional[BoundReport]:
    """Bounds from a union of runs V(alpha, l + i*m', delta - 1), 0 <= i <= k, in the defining set.

    Plain: LDA(f) >= e with sum_{i<=e} C(n,i) >= delta + k.
    for_complemented: LDA(1 + f) >= e - 1 with the threshold 2^n - delta + k.
    With f given the certificate records whether supp(1 + f) is the
    complement of supp(f). Returns None for an empty defining set.
    """
    pattern = find_ht_pattern(defining_set, n, coprime)
    if pattern is None:
        return None
    delta = pattern.t + 1
    certificate = {"delta": delta, "k": pattern.k, "pattern": pattern.to_dict()}
    flags = {"ht_coprime": coprime, "bound_convention": convention}
    if f is not None:
        everything = set(range(1 << n))
        certificate["support_identity"] = set((f + BooleanFunction.constant(n, 1)).support().tolist()) == \
            everything - set(f.support().tolist())
    if for_complemented:
        return _degree_bound("lda_complement_lower", (1 << n) - delta + pattern.k, n, _start(convention),
                             certificate, flags)
    return _degree_bound("lda_lower", delta + pattern.k, n, _start(convention), certificate, flags)


def ai_lower_corollary(defining_set: Iterable[int], n: int, coprime: str = "order",
                       convention: str = "strict") -> Optional[BoundReport]:
    """AI(f) >= e - 1 with e the smallest degree reaching min(delta + k, 2^n - delta + k)"""
    pattern = find_ht_pattern(defining_set, n, coprime)
    if pattern is None:
        return None
    delta = pattern.t + 1
    threshold = min(delta + pattern.k, (1 << n) - delta + pattern.k)
    certificate = {"delta": delta, "k": pattern.k, "pattern": pattern.to_dict()}
    flags = {"ht_coprime": coprime, "bound_convention": convention}
    return _degree_bound("ai_lower_corollary", threshold, n, _start(convention), certificate, flags)


def ai_upper(n: int, m: int) -> int:
    """Smallest d with sum_{i<=d} C(n,i) > 2^(n-m)"""
    if not 1 <= m <= n:
        raise ValueError(f"Need 1 <= m <= n, got n={n}, m={m}")
    threshold = 1 << (n - m)
    return next(d for d in range(n + 1) if binomial_sum(n, d) > threshold)


def ai_upper_report(n: int, m: int) -> BoundReport:
    return BoundReport("ai_upper", ai_upper(n, m), {"n": n, "m": m, "threshold": 1 << (n - m)})


def max_boolean_ai(n: int) -> int:
    """ceil(n / 2)"""
    return (n + 1) // 2
