"""Majorization of photon-number statistics.

A distribution ``a`` majorizes ``b`` when every ordered partial sum
``S_N(a) = sum of the N+1 largest probabilities`` is at least ``S_N(b)``.
Equivalently every confidence interval of ``b`` is at least as long as the
corresponding one of ``a``.  When the partial-sum curves cross, the
distributions are incomparable and each crossing is reported with an
interpolated position and confidence level.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dist import DEFAULT_EPS, coherent_distribution, moments
from .errors import DomainError, UnsatisfiableAlphaError

__all__ = [
    "DEFAULT_TOL",
    "OrderedProfile",
    "Relation",
    "CrossingPoint",
    "MajorizationVerdict",
    "EquivalenceReport",
    "PoissonClass",
    "PoissonVerdict",
    "order_profile",
    "compare",
    "confidence_interval",
    "confidence_intervals",
    "equivalence_check",
    "classify_poissonian",
    "alpha_grid",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class OrderedProfile:
    sorted_probs: np.ndarray
    partial_sums: np.ndarray
    source_label: str = ""
    tail_bound: float = 0.0

    def __len__(self):
        return self.partial_sums.size

    @property
    def total(self):
        return float(self.partial_sums[-1])

    def padded_sums(self, length):
        """Partial sums extended with their final value (zero-padded probs)."""
        s = self.partial_sums
        if length <= s.size:
            return s[:length]
        return np.concatenate([s, np.full(length - s.size, s[-1])])

    def S(self, N):
        if N < 0:
            raise DomainError("N must be non-negative")
        return float(self.partial_sums[min(int(N), self.partial_sums.size - 1)])


def order_profile(d):
    """Stable descending rearrangement and its compensated partial sums.

    Accepts anything exposing ``probs`` (photon-number or signed-count
    distributions) or a plain sequence of probabilities.
    """
    probs = np.asarray(getattr(d, "probs", d), dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0:
        raise DomainError("need a non-empty 1-d probability vector")
    order = np.argsort(-probs, kind="stable")
    sorted_probs = probs[order]
    sums = _kernels.compensated_cumsum(sorted_probs)
    # sums are non-decreasing by construction; guard against a final ulp wobble
    sums = np.maximum.accumulate(sums)
    sorted_probs.setflags(write=False)
    sums.setflags(write=False)
    return OrderedProfile(
        sorted_probs,
        sums,
        getattr(d, "label", ""),
        float(getattr(d, "tail_bound", 0.0)),
    )


def _as_profile(x):
    return x if isinstance(x, OrderedProfile) else order_profile(x)


class Relation(enum.Enum):
    MAJORIZES = "majorizes"
    MAJORIZED_BY = "majorized-by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class CrossingPoint:
    """Where the partial-sum curves of ``a`` and ``b`` swap order.

    ``n_interp`` is the crossing of the piecewise-linear curves in continuous
    ``N`` (``S_N`` sums ``N+1`` terms); ``outcomes = n_interp + 1`` is the same
    position counted in outcomes.  ``alpha`` is the common curve height there.
    ``alpha_band`` is the range of confidence levels at the first integer
    index past the crossing for which the confidence intervals strictly
    disagree in the new direction.
    """

    n_interp: float
    alpha: float
    leader_before: str
    bracket: tuple
    alpha_band: tuple

    @property
    def outcomes(self):
        return self.n_interp + 1.0

    @property
    def leader_after(self):
        return "b" if self.leader_before == "a" else "a"


@dataclass(frozen=True)
class MajorizationVerdict:
    relation: Relation
    crossings: tuple = ()
    tol: float = DEFAULT_TOL
    max_excess_a: float = 0.0
    max_excess_b: float = 0.0

    @property
    def strict(self):
        return self.relation in (Relation.MAJORIZES, Relation.MAJORIZED_BY)

    @property
    def leader_at_start(self):
        """Which profile is ahead before the first crossing (if any)."""
        if self.crossings:
            return self.crossings[0].leader_before
        return {Relation.MAJORIZES: "a", Relation.MAJORIZED_BY: "b"}.get(self.relation)

    @property
    def first_crossing_alpha(self):
        return self.crossings[0].alpha if self.crossings else None


def compare(a, b, tol=DEFAULT_TOL):
    """Decide the majorization relation between ``a`` and ``b``.

    Differences ``|S_N(a) - S_N(b)| <= tol`` count as equality at ``N``.
    ``MAJORIZES`` means ``b`` is majorized by ``a``.
    """
    if not (tol >= 0 and math.isfinite(tol)):
        raise DomainError(f"tol must be finite and non-negative, got {tol!r}")
    pa, pb = _as_profile(a), _as_profile(b)
    budget = pa.tail_bound + pb.tail_bound + max(tol, 1e-12)
    if abs(pa.total - pb.total) > budget:
        raise DomainError(
            f"normalizations differ by {abs(pa.total - pb.total):.3e}, "
            f"beyond the truncation budget {budget:.3e}"
        )
    length = max(len(pa), len(pb))
    sa, sb = pa.padded_sums(length), pb.padded_sums(length)
    diff = sa - sb
    max_a = float(max(diff.max(), 0.0))
    max_b = float(max((-diff).max(), 0.0))

    sig = np.nonzero(np.abs(diff) > tol)[0]
    crossings = []
    for j, i in zip(sig[:-1], sig[1:]):
        if np.sign(diff[j]) == np.sign(diff[i]):
            continue
        crossings.append(_crossing(sa, sb, diff, int(j), int(i)))

    if crossings:
        relation = Relation.INCOMPARABLE
    elif max_a > tol:
        relation = Relation.MAJORIZES
    elif max_b > tol:
        relation = Relation.MAJORIZED_BY
    else:
        relation = Relation.EQUAL
    return MajorizationVerdict(relation, tuple(crossings), tol, max_a, max_b)


def _crossing(sa, sb, diff, j, i):
    # j, i: consecutive indices where |diff| > tol, with opposite signs
    t = diff[j] / (diff[j] - diff[i])
    n_interp = j + t * (i - j)
    lo = int(math.floor(n_interp))
    hi = min(lo + 1, sa.size - 1)
    frac = n_interp - lo
    alpha = sa[lo] + frac * (sa[hi] - sa[lo])
    band = (float(min(sa[i], sb[i])), float(max(sa[i], sb[i])))
    leader = "a" if diff[j] > 0 else "b"
    return CrossingPoint(float(n_interp), float(alpha), leader, (j, i), band)


def confidence_interval(p, alpha):
    """Smallest ``N`` with ``S_N >= alpha`` (the interval holds N+1 outcomes)."""
    p = _as_profile(p)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if alpha > p.total:
        raise UnsatisfiableAlphaError(
            f"alpha={alpha!r} exceeds the available mass {p.total!r} "
            f"by {alpha - p.total:.3e}",
            deficit=alpha - p.total,
        )
    return int(np.searchsorted(p.partial_sums, alpha, side="left"))


def confidence_intervals(p, alphas):
    p = _as_profile(p)
    alphas = np.asarray(alphas, dtype=np.float64)
    out = np.searchsorted(p.partial_sums, alphas, side="left")
    return np.where(alphas <= p.total, out, -1)


def alpha_grid(points=999, highlighted=True):
    """0.01..0.999 in ``points`` steps, plus a few frequently cited levels
    (0.80 to 0.997) when ``highlighted``."""
    grid = np.linspace(0.01, 0.999, points)
    if highlighted:
        grid = np.union1d(grid, [0.80, 0.85, 0.9, 0.95, 0.995, 0.997])
    return grid


@dataclass(frozen=True)
class EquivalenceReport:
    verdict: MajorizationVerdict
    alphas_checked: int
    violations: tuple = field(default=())
    skipped: int = 0

    @property
    def consistent(self):
        """Comparable pairs must show no violations."""
        if self.verdict.relation is Relation.INCOMPARABLE:
            return True
        return not self.violations


def equivalence_check(a, b, alphas=None, tol=DEFAULT_TOL):
    """Cross-check a verdict against confidence intervals on an ``alpha`` grid.

    If ``a`` majorizes ``b``, every interval of ``b`` must be at least as long
    as that of ``a``; the levels where ``N_b(alpha) < N_a(alpha)`` are the
    violations.  When ``b`` majorizes ``a`` the roles swap.  Incomparable or
    equal pairs use the first orientation, so for a crossing pair the
    violations show where the leadership of ``a`` fails.  Levels above the
    smaller total mass are skipped.
    """
    pa, pb = _as_profile(a), _as_profile(b)
    verdict = compare(pa, pb, tol)
    alphas = alpha_grid(999, highlighted=False) if alphas is None else np.asarray(alphas, float)
    reachable = alphas <= min(pa.total, pb.total)
    checked = alphas[reachable]
    na = confidence_intervals(pa, checked)
    nb = confidence_intervals(pb, checked)
    bad = checked[na < nb] if verdict.relation is Relation.MAJORIZED_BY else checked[nb < na]
    return EquivalenceReport(
        verdict, int(checked.size), tuple(float(x) for x in bad), int((~reachable).sum())
    )


class PoissonClass(enum.Enum):
    OVER = "over-poissonian"
    UNDER = "under-poissonian"
    POISSONIAN = "poissonian"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class PoissonVerdict:
    kind: PoissonClass
    verdict: MajorizationVerdict
    mean: float
    variance: float
    degenerate: bool = False

    @property
    def crossings(self):
        return self.verdict.crossings

    @property
    def effective_kind(self):
        """Classification implied by the confidence levels below the first
        crossing."""
        if self.kind is not PoissonClass.INCOMPARABLE:
            return self.kind
        return PoissonClass.OVER if self.verdict.leader_at_start == "a" else PoissonClass.UNDER

    @property
    def effective_up_to(self):
        return self.verdict.first_crossing_alpha


def classify_poissonian(d, tol=DEFAULT_TOL, eps=DEFAULT_EPS):
    """Compare ``d`` with the Poisson distribution of the same mean.

    Majorizing the Poisson reference is over-Poissonian, being majorized by
    it is under-Poissonian.  The vacuum has no Poisson reference of positive
    mean and is reported as a degenerate Poissonian case.
    """
    m = moments(d)
    if m.mean <= 0.0:
        verdict = MajorizationVerdict(Relation.EQUAL, (), tol)
        return PoissonVerdict(PoissonClass.POISSONIAN, verdict, 0.0, m.variance, True)
    ref = coherent_distribution(m.mean, eps)
    verdict = compare(order_profile(d), order_profile(ref), tol)
    kind = {
        Relation.MAJORIZES: PoissonClass.OVER,
        Relation.MAJORIZED_BY: PoissonClass.UNDER,
        Relation.EQUAL: PoissonClass.POISSONIAN,
        Relation.INCOMPARABLE: PoissonClass.INCOMPARABLE,
    }[verdict.relation]
    return PoissonVerdict(kind, verdict, m.mean, m.variance)
