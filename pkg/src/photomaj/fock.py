"""Ground-truth generators used both in production and as test oracles.

* ``build_squeezed_state`` propagates the vacuum through the squeezing and
  displacement generators on a truncated Fock basis.
* ``joint_distribution_brute_force`` enumerates the detector-count pairs
  behind a lossless 50/50 beam splitter with vacuum in the second port.
* ``sample_beam_splitter`` simulates that experiment by Monte Carlo.
"""

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dist import SqueezedParams
from .errors import ConvergenceError, DomainError

__all__ = [
    "FockVector",
    "JointDistribution",
    "SampleReport",
    "SAMPLE_CHUNK",
    "build_squeezed_state",
    "squeezed_state",
    "default_dim",
    "joint_distribution_brute_force",
    "sample_beam_splitter",
]

# number of samples drawn from each independent substream
SAMPLE_CHUNK = 1 << 16
# cap on the Fock basis size used by squeezed_state
MAX_DIM = 1 << 14


class EdgeMassError(ConvergenceError):
    """Amplitude reached the edge of the truncated basis."""


@dataclass(frozen=True)
class FockVector:
    amplitudes: np.ndarray
    dim: int
    # probability found in the top quarter of the basis, where the hard edge
    # of the truncated generators distorts the evolution
    truncation_deficit: float

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def norm_deficit(self):
        return 1.0 - math.fsum(self.probabilities())


def default_dim(params):
    n = params.mean
    dim = max(64, int(math.ceil(8.0 * (n + 1.0))))
    return 1 << (dim - 1).bit_length()


def build_squeezed_state(params, dim, tol=1e-12):
    """Amplitudes of ``D(R) S(r)|0>`` in a basis of ``dim`` number states.

    Raises :class:`EdgeMassError` when more than ``1e-3 * tol`` of the
    probability sits in the top quarter of the basis.
    """
    if dim < 16:
        raise DomainError(f"dim must be at least 16, got {dim!r}")
    if not isinstance(params, SqueezedParams):
        raise DomainError("params must be SqueezedParams")
    n = np.arange(dim, dtype=np.float64)
    v = np.zeros(dim)
    v[0] = 1.0
    if params.r != 0.0:
        coef = 0.5 * params.r * np.sqrt((n[: dim - 2] + 1.0) * (n[: dim - 2] + 2.0))
        v = _kernels.skew_band_expm_apply(coef, 2, v)
    if params.R != 0.0:
        coef = params.R * np.sqrt(n[: dim - 1] + 1.0)
        v = _kernels.skew_band_expm_apply(coef, 1, v)
    edge = math.fsum(v[(3 * dim) // 4 :] ** 2)
    if edge > 1e-3 * tol:
        raise EdgeMassError(
            f"{edge:.3e} of the probability reached the top of a "
            f"{dim}-state basis; retry with a larger dim",
            achieved=edge,
        )
    return FockVector(v.astype(np.complex128), dim, edge)


def squeezed_state(params, tol=1e-12, dim=None, max_dim=None):
    """``build_squeezed_state`` with automatic doubling of ``dim`` up to
    ``max_dim`` (default :data:`MAX_DIM`)."""
    max_dim = MAX_DIM if max_dim is None else max_dim
    dim = min(default_dim(params) if dim is None else dim, max_dim)
    last = None
    while dim <= max_dim:
        try:
            return build_squeezed_state(params, dim, tol)
        except EdgeMassError as exc:
            last = exc.achieved
            dim *= 2
    raise ConvergenceError(
        f"truncated basis up to {max_dim} states could not hold the state "
        f"within tolerance {tol:g}; edge mass {last!r}",
        achieved=last,
    )


# ---------------------------------------------------------------------------
# beam splitter: exact enumeration


@dataclass(frozen=True)
class JointDistribution:
    """``probs[n1, n2]`` for detector counts behind the beam splitter."""

    probs: np.ndarray

    @property
    def n_max(self):
        return self.probs.shape[0] - 1

    def as_dict(self):
        i, j = np.nonzero(self.probs)
        return {(int(a), int(b)): float(self.probs[a, b]) for a, b in zip(i, j)}

    def sum_marginal(self):
        n_max = self.n_max
        out = np.zeros(n_max + 1)
        for n1 in range(n_max + 1):
            out[n1:] += self.probs[n1, : n_max + 1 - n1]
        return out

    def difference_marginal(self):
        """Probabilities for m = n1 - n2, indexed from m = -n_max."""
        n_max = self.n_max
        out = np.zeros(2 * n_max + 1)
        for n1 in range(n_max + 1):
            n2 = np.arange(n_max + 1 - n1)
            out[n_max + n1 - n2] += self.probs[n1, n2]
        return out

    def covariance(self):
        n = np.arange(self.n_max + 1, dtype=np.float64)
        p = self.probs
        m1 = math.fsum((n[:, None] * p).ravel())
        m2 = math.fsum((n[None, :] * p).ravel())
        return math.fsum((((n[:, None] - m1) * (n[None, :] - m2)) * p).ravel())

    def prob_product_zero(self):
        p = self.probs
        return math.fsum(p[0, :]) + math.fsum(p[1:, 0])


def joint_distribution_brute_force(d):
    """Enumerate ``p(n1, n2) = p_{n1+n2} 2^{-(n1+n2)} C(n1+n2, n1)``."""
    n_max = d.n_max
    out = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        if d.probs[n] == 0.0:
            continue
        # exact integer binomials, correctly rounded on division
        half = 1 << n
        weights = np.array([math.comb(n, k) / half for k in range(n + 1)])
        n1 = np.arange(n + 1)
        out[n1, n - n1] = d.probs[n] * weights
    return JointDistribution(out)


# ---------------------------------------------------------------------------
# beam splitter: Monte Carlo


@dataclass(frozen=True)
class SampleReport:
    joint_counts: dict
    n_samples: int
    seed: int
    algorithm: str = field(
        default="Philox4x64; chunk k of 65536 samples uses SeedSequence(seed, spawn_key=(k,))"
    )

    def difference_counts(self):
        out = Counter()
        for (n1, n2), c in self.joint_counts.items():
            out[n1 - n2] += c
        return dict(sorted(out.items()))

    def sum_counts(self):
        out = Counter()
        for (n1, n2), c in self.joint_counts.items():
            out[n1 + n2] += c
        return dict(sorted(out.items()))

    def difference_frequencies(self, m_max):
        """Empirical probabilities of m = -m_max..m_max as an array."""
        out = np.zeros(2 * m_max + 1)
        for m, c in self.difference_counts().items():
            if abs(m) <= m_max:
                out[m + m_max] = c
        return out / self.n_samples


def _substream(seed, k):
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(k,)))
    )


def _sample_chunk(cdf, n_max, seed, k, size):
    rng = _substream(seed, k)
    u = rng.random(size)
    n = np.minimum(np.searchsorted(cdf, u, side="right"), n_max)
    n1 = rng.binomial(n, 0.5)
    keys = n1 * (n_max + 1) + (n - n1)
    uniq, counts = np.unique(keys, return_counts=True)
    return uniq, counts


def sample_beam_splitter(d, n_samples, seed, workers=1):
    """Draw photon numbers from ``d`` and route each photon to either
    detector with probability 1/2.

    Samples are produced in chunks of :data:`SAMPLE_CHUNK`; chunk ``k`` always
    draws from the substream ``SeedSequence(seed, spawn_key=(k,))``, so the
    merged counts do not depend on ``workers``.
    """
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or n_samples < 1:
        raise DomainError(f"n_samples must be a positive integer, got {n_samples!r}")
    if isinstance(seed, bool) or int(seed) != seed or seed < 0:
        raise DomainError(f"seed must be a non-negative integer, got {seed!r}")
    n_samples, seed = int(n_samples), int(seed)
    cdf = np.cumsum(d.probs)
    cdf /= cdf[-1]
    n_max = d.n_max
    n_chunks = -(-n_samples // SAMPLE_CHUNK)
    sizes = [min(SAMPLE_CHUNK, n_samples - k * SAMPLE_CHUNK) for k in range(n_chunks)]

    def job(k):
        return _sample_chunk(cdf, n_max, seed, k, sizes[k])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(n_chunks)))
    else:
        parts = [job(k) for k in range(n_chunks)]

    totals = Counter()
    for uniq, counts in parts:
        for key, c in zip(uniq.tolist(), counts.tolist()):
            totals[key] += c
    joint = {
        divmod(key, n_max + 1): c for key, c in sorted(totals.items())
    }
    return SampleReport(joint, n_samples, seed)
