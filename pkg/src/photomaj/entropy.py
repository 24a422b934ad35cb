"""Renyi and Tsallis entropies in nats, with Shannon entropy as their
``q -> 1`` limit, plus a check that they respect majorization verdicts."""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .majorize import DEFAULT_TOL, Relation, compare, order_profile

__all__ = [
    "Family",
    "EntropyQuery",
    "entropy",
    "shannon",
    "renyi",
    "tsallis",
    "SchurReport",
    "schur_consistency",
]

# |q - 1| below this is treated as the Shannon limit
SHANNON_WINDOW = 1e-6


class Family(enum.Enum):
    RENYI = "renyi"
    TSALLIS = "tsallis"
    SHANNON = "shannon"


@dataclass(frozen=True)
class EntropyQuery:
    family: Family
    q: float = 1.0

    def __post_init__(self):
        if not (self.q >= 0 and math.isfinite(self.q)):
            raise DomainError(f"entropic index must be finite and >= 0, got {self.q!r}")


def _probs(d):
    p = np.asarray(getattr(d, "probs", d), dtype=np.float64)
    return p[p > 0.0]


def shannon(d):
    p = _probs(d)
    return max(0.0, -math.fsum(p * np.log(p)))


def _power_sum(p, q):
    if q == 0:
        return float(p.size)
    return math.fsum(np.exp(q * np.log(p)))


def renyi(d, q):
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q!r}")
    if abs(q - 1.0) < SHANNON_WINDOW:
        return shannon(d)
    p = _probs(d)
    return max(0.0, math.log(_power_sum(p, q)) / (1.0 - q))


def tsallis(d, q):
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q!r}")
    if abs(q - 1.0) < SHANNON_WINDOW:
        return shannon(d)
    p = _probs(d)
    return max(0.0, (_power_sum(p, q) - 1.0) / (1.0 - q))


def entropy(d, query):
    if query.family is Family.SHANNON:
        return shannon(d)
    if query.family is Family.RENYI:
        return renyi(d, query.q)
    return tsallis(d, query.q)


@dataclass(frozen=True)
class SchurReport:
    relation: Relation
    checked: int
    violations: tuple  # (family, q, H(a), H(b))

    @property
    def consistent(self):
        return not self.violations


def schur_consistency(a, b, q_grid, tol=DEFAULT_TOL, slack=1e-12):
    """Check that every entropy in the grid reverses the majorization order.

    Requires a strict verdict.  If ``a`` majorizes ``b`` then ``H(b) >= H(a)``
    for both families at every ``q``; ``slack`` absorbs rounding.
    """
    verdict = compare(order_profile(a), order_profile(b), tol)
    if not verdict.strict:
        raise DomainError(
            f"entropy ordering is only implied by a strict verdict, got {verdict.relation.value}"
        )
    more_certain, less_certain = (a, b) if verdict.relation is Relation.MAJORIZES else (b, a)
    bad = []
    checked = 0
    for fam in (Family.RENYI, Family.TSALLIS):
        for q in q_grid:
            q = float(q)
            h_lo = entropy(more_certain, EntropyQuery(fam, q))
            h_hi = entropy(less_certain, EntropyQuery(fam, q))
            checked += 1
            if h_hi < h_lo - slack * max(1.0, abs(h_lo)):
                ha, hb = (h_lo, h_hi) if more_certain is a else (h_hi, h_lo)
                bad.append((fam.value, q, ha, hb))
    return SchurReport(verdict.relation, checked, tuple(bad))
