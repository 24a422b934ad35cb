"""Photon-number distributions for coherent, thermal, number, squeezed and
mixed states, with exact moments and closed-form partial sums.

Factorials and powers are evaluated in log space and exponentiated
last, so means in the hundreds do not overflow.  Each
distribution carries ``tail_bound``, an upper bound on the probability mass
dropped by truncation at ``n_max``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import erf, gammaln

from .errors import DomainError, InfeasibleTargetError

__all__ = [
    "DEFAULT_EPS",
    "PhotonDistribution",
    "Moments",
    "SqueezedParams",
    "MixtureSpec",
    "coherent_distribution",
    "thermal_distribution",
    "number_state_distribution",
    "squeezed_distribution",
    "squeezed_closed_form",
    "squeezed_closed_form_array",
    "gaussian_partial_sum",
    "rearranged_gaussian_partial_sum",
    "thermal_partial_sum_closed_form",
    "mixture",
    "solve_squeezed_params",
    "squeezed_variance_range",
    "moments",
]

DEFAULT_EPS = 1e-12
_MACHEPS = np.finfo(np.float64).eps


def _check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")


def _check_mean(mean):
    if not (math.isfinite(mean) and mean > 0.0):
        raise DomainError(f"mean must be finite and positive, got {mean!r}")


@dataclass(frozen=True)
class PhotonDistribution:
    """Truncated photon-number probabilities ``probs[n]`` for n = 0..n_max."""

    probs: np.ndarray
    tail_bound: float = 0.0
    label: str = ""

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("probs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise DomainError("probs must be finite and non-negative")
        if not (math.isfinite(self.tail_bound) and self.tail_bound >= 0.0):
            raise DomainError("tail_bound must be finite and non-negative")
        total = math.fsum(p)
        slack = 10.0 * _MACHEPS * max(p.size, 1)
        if not (1.0 - self.tail_bound - slack <= total <= 1.0 + slack):
            raise DomainError(
                f"probabilities sum to {total!r}, outside "
                f"[1 - {self.tail_bound:g}, 1] allowed by the tail bound"
            )
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n_max(self):
        return self.probs.size - 1

    def total(self):
        return math.fsum(self.probs)

    def padded(self, n_max):
        """Probabilities zero-padded (never renormalized) up to ``n_max``."""
        if n_max < self.n_max:
            raise DomainError("cannot pad to a shorter support")
        out = np.zeros(n_max + 1)
        out[: self.probs.size] = self.probs
        return out

    def relabel(self, label):
        return PhotonDistribution(self.probs, self.tail_bound, label)

    def __len__(self):
        return self.probs.size


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    # error bar from the truncated tail, 2 (n_max + 1)^2 * tail_bound; the
    # factor 2 covers geometric or lighter tails cut well past the mean
    tail_error: float = 0.0

    @property
    def fano(self):
        return self.variance / self.mean if self.mean > 0 else float("nan")


@dataclass(frozen=True)
class SqueezedParams:
    """Displacement amplitude ``R >= 0`` and signed squeezing ``r``.

    The state is ``D(R) S(r) |0>`` with ``S(r) = exp[(r/2)(a^+^2 - a^2)]``:
    positive ``r`` stretches the photon-number spread, negative ``r``
    narrows it (for ``R`` large enough).
    """

    R: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.R) and math.isfinite(self.r)):
            raise DomainError("squeezed parameters must be finite")
        if self.R < 0:
            raise DomainError(f"R must be non-negative, got {self.R!r}")

    @property
    def mean(self):
        return self.R**2 + math.sinh(self.r) ** 2

    @property
    def variance(self):
        return self.R**2 * math.exp(2 * self.r) + 0.5 * math.sinh(2 * self.r) ** 2


@dataclass(frozen=True)
class MixtureSpec:
    weight: float
    first: PhotonDistribution
    second: PhotonDistribution = field(repr=False)


# ---------------------------------------------------------------------------
# analytic families


def coherent_distribution(mean, eps=DEFAULT_EPS):
    """Poisson statistics of a coherent state with mean photon number ``mean``.

    The truncation point is the smallest ``N >= mean`` whose tail passes the
    ratio bound ``sum_{n>N} p_n <= p_{N+1} / (1 - mean/(N+2))``, valid because
    successive Poisson ratios ``mean/(n+1)`` decrease.
    """
    _check_mean(mean)
    _check_eps(eps)
    log_mean = math.log(mean)
    log_eps = math.log(eps)
    start = int(math.ceil(mean))
    span = int(40 * math.sqrt(mean) + 200)
    while True:
        N = np.arange(start, start + span)
        log_next = -mean + (N + 1) * log_mean - gammaln(N + 2.0)
        log_bound = log_next - np.log1p(-mean / (N + 2.0))
        ok = np.nonzero(log_bound <= log_eps)[0]
        if ok.size:
            n_max = int(N[ok[0]])
            tail = float(math.exp(log_bound[ok[0]]))
            break
        start += span
    n = np.arange(n_max + 1)
    probs = np.exp(-mean + n * log_mean - gammaln(n + 1.0))
    return PhotonDistribution(probs, tail, f"coherent(mean={mean!r})")


def _thermal_ratio(mean):
    # log(mean/(mean+1)) without cancellation for large means
    return -math.log1p(1.0 / mean)


def thermal_distribution(mean, eps=DEFAULT_EPS):
    """Bose-Einstein statistics; the tail past ``N`` is exactly ``q**(N+1)``."""
    _check_mean(mean)
    _check_eps(eps)
    log_q = _thermal_ratio(mean)
    n_max = max(0, int(math.ceil(math.log(eps) / log_q)) - 1)
    while (n_max + 1) * log_q > math.log(eps):
        n_max += 1
    while n_max > 0 and n_max * log_q <= math.log(eps):
        n_max -= 1
    n = np.arange(n_max + 1)
    probs = np.exp(n * log_q) / (mean + 1.0)
    tail = math.exp((n_max + 1) * log_q)
    return PhotonDistribution(probs, tail, f"thermal(mean={mean!r})")


def number_state_distribution(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"photon number must be a non-negative integer, got {n!r}")
    n = int(n)
    probs = np.zeros(n + 1)
    probs[n] = 1.0
    return PhotonDistribution(probs, 0.0, f"number({n})")


def thermal_partial_sum_closed_form(mean, N):
    _check_mean(mean)
    if N < 0:
        raise DomainError("N must be non-negative")
    return -math.expm1((N + 1) * _thermal_ratio(mean))


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def gaussian_partial_sum(delta_n, N):
    """``erf(N / (sqrt(2) * delta_n))``, the large-mean Gaussian approximation
    of the ordered partial sums in its common closed form.

    This integrates the Gaussian density over ``[mean, mean + N]`` on both
    sides, i.e. it counts a window of width ``2N``; see
    :func:`rearranged_gaussian_partial_sum` for the sum of the ``N+1``
    largest values.
    """
    if not (math.isfinite(delta_n) and delta_n > 0):
        raise DomainError(f"delta_n must be positive, got {delta_n!r}")
    return _scalar_or_array(erf(np.asarray(N, dtype=float) / (math.sqrt(2.0) * delta_n)))


def rearranged_gaussian_partial_sum(delta_n, N):
    """Gaussian mass of the ``N+1`` most likely integer outcomes.

    The descending rearrangement of a symmetric density collects both flanks,
    so ``N+1`` outcomes span a half-width of ``(N+1)/2`` around the mean.
    """
    if not (math.isfinite(delta_n) and delta_n > 0):
        raise DomainError(f"delta_n must be positive, got {delta_n!r}")
    x = (np.asarray(N, dtype=float) + 1.0) / (2.0 * math.sqrt(2.0) * delta_n)
    return _scalar_or_array(erf(x))


# ---------------------------------------------------------------------------
# squeezed states


def _log_hermite_imag_sq(y, n_max):
    """log |H_n(i y)|^2 for n = 0..n_max.

    With ``H_n(i y) = i^n K_n(y)`` the recurrence becomes
    ``K_{n+1} = 2y K_n + 2n K_{n-1}``, all terms of one sign for ``y >= 0``,
    so only the magnitude needs rescaling.
    """
    y = abs(y)
    out = np.empty(n_max + 1)
    k_prev, k_cur = 0.0, 1.0  # K_{-1}, K_0
    log_scale = 0.0
    for n in range(n_max + 1):
        out[n] = 2.0 * (math.log(k_cur) + log_scale) if k_cur > 0 else -math.inf
        k_next = 2.0 * y * k_cur + 2.0 * n * k_prev
        k_prev, k_cur = k_cur, k_next
        big = max(abs(k_prev), abs(k_cur))
        if big > 1e100:
            k_prev /= big
            k_cur /= big
            log_scale += math.log(big)
    return out


def squeezed_closed_form_array(params, n_max):
    """Closed-form squeezed photon statistics for ``r > 0``, n = 0..n_max."""
    R, r = params.R, params.r
    if not r > 0:
        raise DomainError(
            "the closed form is only valid for r > 0; use squeezed_distribution"
        )
    t = math.tanh(r)
    y = R / math.sqrt(2.0) * (1.0 / math.sqrt(t) - math.sqrt(t))
    n = np.arange(n_max + 1)
    log_p = (
        n * math.log(t / 2.0)
        - gammaln(n + 1.0)
        - math.log(math.cosh(r))
        - R**2 * (1.0 - t)
        + _log_hermite_imag_sq(y, n_max)
    )
    return np.exp(log_p)


def squeezed_closed_form(params, n):
    if n < 0:
        raise DomainError("n must be non-negative")
    return float(squeezed_closed_form_array(params, int(n))[int(n)])


def squeezed_distribution(params, eps=DEFAULT_EPS, max_dim=None):
    """Photon statistics of ``D(R) S(r)|0>`` from the truncated Fock-basis
    construction in :mod:`photomaj.fock`."""
    from .fock import squeezed_state

    _check_eps(eps)
    vec = squeezed_state(params, tol=eps, max_dim=max_dim)
    probs = np.abs(vec.amplitudes) ** 2
    deficit = max(vec.truncation_deficit, abs(1.0 - math.fsum(probs)))
    # drop a far tail whose second-moment weight sum (n+1)^2 p_n stays below
    # eps, so the moments keep their eps-level accuracy
    weight = (np.arange(probs.size) + 1.0) ** 2 * probs
    tail = np.cumsum(weight[::-1])[::-1]
    keep = int(np.count_nonzero(tail > eps))
    keep = max(keep, 1)
    dropped = math.fsum(probs[keep:])
    probs = probs[:keep]
    return PhotonDistribution(
        probs, deficit + dropped, f"squeezed(R={params.R!r},r={params.r!r})"
    )


def _variance_at(mean, r):
    return (mean - math.sinh(r) ** 2) * math.exp(2 * r) + 0.5 * math.sinh(2 * r) ** 2


def squeezed_variance_range(mean):
    """Smallest and largest photon-number variance reachable at ``mean``."""
    _check_mean(mean)
    r_max = math.asinh(math.sqrt(mean))
    res = minimize_scalar(
        lambda r: _variance_at(mean, r),
        bounds=(-r_max, 0.0),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return float(res.x), float(res.fun), 2.0 * mean * (mean + 1.0)


def solve_squeezed_params(target_mean, target_variance, branch="strong"):
    """Find ``(R, r)`` with the requested photon-number mean and variance.

    Eliminating ``R**2 = mean - sinh(r)**2`` leaves a one-dimensional root
    problem in ``r`` on ``[-asinh(sqrt(mean)), asinh(sqrt(mean))]``.  The
    variance there is not monotone: it dips to a minimum at some ``r* < 0``
    and reaches ``2 mean (mean + 1)`` at both ends, so most targets have two
    solutions.

    ``branch="strong"`` returns the more strongly squeezed one, on
    ``[-r_max, r*]``; ``branch="weak"`` returns the one between ``r*`` and
    ``r_max`` closest to the coherent point ``r = 0``.  A squeezed vacuum is
    reported with ``r >= 0`` since its statistics do not depend on the sign.
    """
    _check_mean(target_mean)
    if not (math.isfinite(target_variance) and target_variance > 0):
        raise DomainError("target variance must be finite and positive")
    if branch not in ("strong", "weak"):
        raise DomainError(f"branch must be 'strong' or 'weak', got {branch!r}")
    mean, var = float(target_mean), float(target_variance)
    r_max = math.asinh(math.sqrt(mean))
    r_star, v_min, v_max = squeezed_variance_range(mean)
    scale = max(var, 1.0)
    if var < v_min * (1 - 1e-12) or var > v_max * (1 + 1e-12):
        raise InfeasibleTargetError(
            f"variance {var!r} is not reachable at mean {mean!r}; "
            f"attainable range is [{v_min!r}, {v_max!r}]",
            variance_range=(v_min, v_max),
        )

    def f(r):
        return _variance_at(mean, r) - var

    if abs(var - v_max) <= 1e-12 * scale:
        r = r_max
    elif abs(var - v_min) <= 1e-12 * scale:
        r = r_star
    elif branch == "strong":
        r = brentq(f, -r_max, r_star, xtol=1e-15, rtol=4 * _MACHEPS, maxiter=200)
    elif var < mean:
        r = brentq(f, r_star, 0.0, xtol=1e-15, rtol=4 * _MACHEPS, maxiter=200)
    elif var == mean:
        r = 0.0
    else:
        r = brentq(f, 0.0, r_max, xtol=1e-15, rtol=4 * _MACHEPS, maxiter=200)
    R2 = mean - math.sinh(r) ** 2
    if R2 <= 1e-14 * mean:
        return SqueezedParams(0.0, abs(r))
    return SqueezedParams(math.sqrt(R2), r)


# ---------------------------------------------------------------------------
# mixtures and moments


def mixture(spec):
    """Convex combination ``weight*first + (1-weight)*second`` entrywise."""
    xi = spec.weight
    if not (0.0 <= xi <= 1.0):
        raise DomainError(f"mixing weight must lie in [0, 1], got {xi!r}")
    n_max = max(spec.first.n_max, spec.second.n_max)
    probs = xi * spec.first.padded(n_max) + (1.0 - xi) * spec.second.padded(n_max)
    tail = xi * spec.first.tail_bound + (1.0 - xi) * spec.second.tail_bound
    label = f"mix({xi!r};{spec.first.label};{spec.second.label})"
    return PhotonDistribution(probs, tail, label)


def moments(d):
    n = np.arange(d.probs.size, dtype=np.float64)
    mean = math.fsum(n * d.probs)
    # centred form of sum(n^2 p) - mean^2, free of cancellation
    var = math.fsum((n - mean) ** 2 * d.probs)
    err = 2.0 * (d.n_max + 1) ** 2 * d.tail_bound
    return Moments(mean, var, err)
