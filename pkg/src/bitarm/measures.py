"""Per-rule interestingness measures and rule-set diversity (entropy, variance).

Every rule measure is a function of four counts: n, n_a, n_b, n_ab.  The
formulas are the standard ones from the association-rule literature:

    SUP    P_ab
    CONF   P_ab / P_a
    LIFT   P_ab / (P_a P_b)
    GAN    2 CONF - 1
    PS     n (P_ab - P_a P_b)
    LOE    (CONF - P_b) / P_!b
    ZHANG  (P_ab - P_a P_b) / max(P_ab P_!b, P_b P_a!b)
    IMPIND sqrt(n) (P_a!b - P_a P_!b) / sqrt(P_a P_!b)
    LC     (P_ab - P_a!b) / P_b
    CONV   P_a P_!b / P_a!b
    IMPINT P[Poisson(n P_a P_!b) >= n_a!b]
    SEB    P_ab / P_a!b
    BF     P_ab P_!b / (P_b P_a!b)

Vanishing denominators give +inf/-inf following the sign of the numerator.
A 0/0 yields the measure's value under independence (1 for LIFT, CONV, BF
and 0 for the rest), so degenerate marginals read as "no association".
"""
from __future__ import annotations

import math
from collections import namedtuple
from typing import Sequence

MEASURES = ("SUP", "CONF", "LIFT", "GAN", "PS", "LOE", "ZHANG", "IMPIND",
            "LC", "CONV", "IMPINT", "SEB", "BF")


class MeasureError(ValueError):
    pass


class ZeroTotal(MeasureError):
    pass


class TooFewValues(MeasureError):
    pass


class ContingencyCounts(namedtuple("ContingencyCounts", "n n_a n_b n_ab")):
    """Sufficient statistics of a rule A -> B over n transactions."""

    __slots__ = ()

    def __new__(cls, n: int, n_a: int, n_b: int, n_ab: int):
        if not 0 <= n_ab <= n_a <= n or not n_ab <= n_b <= n:
            raise MeasureError(f"inconsistent counts n={n} n_a={n_a} n_b={n_b} n_ab={n_ab}")
        return super().__new__(cls, n, n_a, n_b, n_ab)

    @property
    def n_a_notb(self) -> int:
        return self.n_a - self.n_ab

    @property
    def p_a(self) -> float:
        return self.n_a / self.n

    @property
    def p_b(self) -> float:
        return self.n_b / self.n

    @property
    def p_ab(self) -> float:
        return self.n_ab / self.n

    @property
    def p_notb(self) -> float:
        return (self.n - self.n_b) / self.n

    @property
    def p_a_notb(self) -> float:
        return self.n_a_notb / self.n


def _div(num: float, den: float, null: float) -> float:
    if den != 0:
        return num / den
    if num > 0:
        return math.inf
    if num < 0:
        return -math.inf
    return null


def poisson_sf(k: int, lam: float) -> float:
    """P[Poisson(lam) >= k], by direct summation of the pmf in log space.

    Sums the shorter side of the distribution so a tiny tail is not lost to
    cancellation in ``1 - cdf``.
    """
    if k <= 0:
        return 1.0
    if lam <= 0:
        return 0.0
    log_lam = math.log(lam)

    def pmf(i: int) -> float:
        return math.exp(i * log_lam - lam - math.lgamma(i + 1))

    if k <= lam:
        return max(0.0, 1.0 - math.fsum(pmf(i) for i in range(k)))
    terms = []
    i = k
    while True:
        t = pmf(i)
        terms.append(t)
        if t < 1e-20 * terms[0] or t == 0.0:
            break
        i += 1
    return min(1.0, math.fsum(terms))


def implication_intensity(c: ContingencyCounts) -> float:
    return poisson_sf(c.n_a_notb, c.n * c.p_a * c.p_notb)


def measure_vector(c: ContingencyCounts) -> dict[str, float]:
    """All thirteen measures for one rule.

    Evaluated on the integer counts (each formula multiplied through by the
    appropriate power of n) so that independence gives an exact zero numerator.
    """
    if c.n < 1 or c.n_a < 1:
        raise MeasureError("need n >= 1 and n_a >= 1")
    n, n_a, n_b, n_ab = c.n, c.n_a, c.n_b, c.n_ab
    n_notb = n - n_b
    n_a_notb = c.n_a_notb
    dev = n * n_ab - n_a * n_b          # n^2 (P_ab - P_a P_b)
    conf = n_ab / n_a
    return {
        "SUP": n_ab / n,
        "CONF": conf,
        "LIFT": _div(n * n_ab, n_a * n_b, 1.0),
        "GAN": 2 * conf - 1,
        "PS": dev / n,
        "LOE": _div(dev, n_a * n_notb, 0.0),
        "ZHANG": _div(dev, max(n_ab * n_notb, n_b * n_a_notb), 0.0),
        "IMPIND": _div(n * n_a_notb - n_a * n_notb, math.sqrt(n) * math.sqrt(n_a * n_notb), 0.0),
        "LC": _div(n_ab - n_a_notb, n_b, 0.0),
        "CONV": _div(n_a * n_notb, n * n_a_notb, 1.0),
        "IMPINT": implication_intensity(c),
        "SEB": _div(n_ab, n_a_notb, 1.0),
        "BF": _div(n_ab * n_notb, n_b * n_a_notb, 1.0),
    }


def select_measures(spec: str | Sequence[str]) -> tuple[str, ...]:
    """Resolve ``"all"`` or a comma list of acronyms (case-insensitive)."""
    if isinstance(spec, str):
        if spec.strip().lower() == "all":
            return MEASURES
        spec = [s for s in spec.split(",") if s.strip()]
    names = tuple(s.strip().upper() for s in spec)
    unknown = [s for s in names if s not in MEASURES]
    if unknown:
        raise MeasureError(f"unknown measures: {', '.join(unknown)}")
    return names


# -- rule-set diversity -----------------------------------------------------

def _check_unit(values: Sequence[float]) -> None:
    if any(not 0 <= v <= 1 for v in values):
        raise MeasureError("diversity inputs must lie in [0, 1]")


def entropy(values: Sequence[float], mode: str = "mean") -> float:
    """Shannon entropy (bits) of ``values`` normalized to sum to one.

    ``mode="sum"`` returns -sum p log2 p; ``mode="mean"`` divides that by the
    number of values.
    """
    if mode not in ("mean", "sum"):
        raise ValueError(f"unknown entropy mode {mode!r}")
    if len(values) < 1:
        raise TooFewValues("entropy needs at least one value")
    _check_unit(values)
    total = math.fsum(values)
    if total == 0:
        raise ZeroTotal("values sum to zero")
    h = -math.fsum(p * math.log2(p) for p in (v / total for v in values) if p > 0)
    h = max(h, 0.0)
    return h / len(values) if mode == "mean" else h


def variance(values: Sequence[float]) -> float:
    """Sample variance (n - 1 denominator) of the raw values."""
    n = len(values)
    if n < 2:
        raise TooFewValues("variance needs at least two values")
    _check_unit(values)
    q = math.fsum(values) / n
    return math.fsum((v - q) ** 2 for v in values) / (n - 1)
