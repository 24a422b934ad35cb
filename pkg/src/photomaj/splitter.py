"""Photon statistics behind a lossless 50/50 beam splitter fed with vacuum in
its second port.

The number sum ``n+ = n1 + n2`` reproduces the input statistics, the number
difference ``n- = n1 - n2`` always has variance equal to the input mean, and
the detector covariance is ``(var - mean)/4``.  Comparing the ordered partial
sums of the two gives the clustering criterion: the sum being majorized by
the difference is clustering, the reverse is anti-clustering.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dist import PhotonDistribution, moments
from .errors import DomainError
from .majorize import DEFAULT_TOL, MajorizationVerdict, Relation, compare, order_profile

__all__ = [
    "SignedCountDistribution",
    "ClusterKind",
    "ClusterVerdict",
    "number_sum_distribution",
    "number_difference_distribution",
    "detector_covariance",
    "difference_variance",
    "classify_clustering",
    "prob_single_detector_silent",
]


@dataclass(frozen=True)
class SignedCountDistribution:
    """Probabilities of m = -offset..+offset; ``probs[i]`` is for m = i - offset."""

    offset: int
    probs: np.ndarray
    tail_bound: float = 0.0
    label: str = ""

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.size != 2 * self.offset + 1:
            raise DomainError("probs must cover m = -offset..offset")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise DomainError("probs must be finite and non-negative")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def m_values(self):
        return np.arange(-self.offset, self.offset + 1)

    def prob(self, m):
        i = m + self.offset
        return float(self.probs[i]) if 0 <= i < self.probs.size else 0.0

    def as_dict(self):
        return {int(m): float(p) for m, p in zip(self.m_values, self.probs) if p > 0}

    def mean(self):
        return math.fsum(self.m_values * self.probs)

    def variance(self):
        mu = self.mean()
        return math.fsum((self.m_values - mu) ** 2 * self.probs)


def number_sum_distribution(d):
    """Input statistics relabelled: no photon is lost at the splitter."""
    return PhotonDistribution(d.probs, d.tail_bound, f"sum[{d.label}]")


def number_difference_distribution(d):
    probs = _kernels.difference_distribution(d.probs)
    return SignedCountDistribution(d.n_max, probs, d.tail_bound, f"difference[{d.label}]")


def detector_covariance(d):
    m = moments(d)
    return 0.25 * (m.variance - m.mean)


def difference_variance(d):
    return number_difference_distribution(d).variance()


def prob_single_detector_silent(d):
    """Probability that at least one detector sees no photon (``n1*n2 = 0``)."""
    n = np.arange(d.probs.size, dtype=np.float64)
    weights = np.exp((1.0 - n) * math.log(2.0))
    weights[0] = 1.0
    return math.fsum(d.probs * weights)


class ClusterKind(enum.Enum):
    CLUSTERING = "clustering"
    ANTI_CLUSTERING = "anti-clustering"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ClusterVerdict:
    kind: ClusterKind
    verdict: MajorizationVerdict
    covariance: float

    @property
    def crossings(self):
        return self.verdict.crossings

    @property
    def effective_kind(self):
        if self.kind is not ClusterKind.INCOMPARABLE:
            return self.kind
        # profile "a" is the number sum
        if self.verdict.leader_at_start == "a":
            return ClusterKind.ANTI_CLUSTERING
        return ClusterKind.CLUSTERING

    @property
    def effective_up_to(self):
        return self.verdict.first_crossing_alpha


def classify_clustering(d, tol=DEFAULT_TOL):
    plus = order_profile(number_sum_distribution(d))
    minus = order_profile(number_difference_distribution(d))
    verdict = compare(plus, minus, tol)
    kind = {
        Relation.MAJORIZES: ClusterKind.ANTI_CLUSTERING,
        Relation.MAJORIZED_BY: ClusterKind.CLUSTERING,
        Relation.EQUAL: ClusterKind.EQUAL,
        Relation.INCOMPARABLE: ClusterKind.INCOMPARABLE,
    }[verdict.relation]
    return ClusterVerdict(kind, verdict, detector_covariance(d))
