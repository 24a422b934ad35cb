"""Hot numeric loops, each with a numba and a pure-numpy implementation.

The numba versions are used when numba imports cleanly, unless the
environment variable ``PHOTOMAJ_DISABLE_NUMBA`` is set to a truthy value
(``1``, ``true``, ``yes``).  Both paths are importable directly as
``numpy_<name>`` and ``numba_<name>`` so they can be compared against each
other in tests and benchmarks.
"""

import math
import os

import numpy as np
from scipy.special import gammaln

LN2 = math.log(2.0)

_DISABLED = os.environ.get("PHOTOMAJ_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


# ---------------------------------------------------------------------------
# compensated prefix sums


def numpy_compensated_cumsum(x):
    x = np.asarray(x, dtype=np.float64)
    # extended-precision accumulation stands in for explicit compensation
    return np.cumsum(x, dtype=np.longdouble).astype(np.float64)


def _py_compensated_cumsum(x):
    out = np.empty(x.shape[0])
    s = 0.0
    c = 0.0
    for i in range(x.shape[0]):
        v = x[i]
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out


# ---------------------------------------------------------------------------
# number-difference distribution behind a balanced beam splitter


def numpy_difference_distribution(p):
    """Probability of m = n1 - n2 for photon-number probabilities ``p``."""
    p = np.asarray(p, dtype=np.float64)
    n_max = p.shape[0] - 1
    logfact = gammaln(np.arange(n_max + 1) + 1.0)
    out = np.zeros(2 * n_max + 1)
    for m in range(n_max + 1):
        n = np.arange(m, n_max + 1, 2)
        pn = p[n]
        keep = pn > 0.0
        if not keep.any():
            continue
        n = n[keep]
        logw = logfact[n] - logfact[(n + m) // 2] - logfact[(n - m) // 2] - n * LN2
        val = float(np.sum(pn[keep] * np.exp(logw)))
        out[n_max + m] = val
        out[n_max - m] = val
    return out


def _py_difference_distribution(p):
    n_max = p.shape[0] - 1
    logfact = np.empty(n_max + 1)
    for n in range(n_max + 1):
        logfact[n] = math.lgamma(n + 1.0)
    out = np.zeros(2 * n_max + 1)
    for m in range(n_max + 1):
        s = 0.0
        c = 0.0
        for n in range(m, n_max + 1, 2):
            pn = p[n]
            if pn <= 0.0:
                continue
            logw = logfact[n] - logfact[(n + m) // 2] - logfact[(n - m) // 2] - n * LN2
            v = pn * math.exp(logw)
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
        out[n_max + m] = s + c
        out[n_max - m] = s + c
    return out


# ---------------------------------------------------------------------------
# exp(t*A) v for a real antisymmetric single-band generator
#
# A has entries A[n+k, n] = coef[n] and A[n, n+k] = -coef[n], so both the
# squeezing generator (k=2) and the displacement generator (k=1) fit.


def _py_skew_band_matvec(coef, k, v, out):
    dim = v.shape[0]
    for n in range(dim):
        out[n] = 0.0
    for n in range(dim - k):
        out[n + k] += coef[n] * v[n]
        out[n] -= coef[n] * v[n + k]


def _py_skew_band_expm_apply(coef, k, v, steps, tol):
    dim = v.shape[0]
    x = v.copy()
    term = np.empty(dim)
    nxt = np.empty(dim)
    h = 1.0 / steps
    for _ in range(steps):
        for i in range(dim):
            term[i] = x[i]
        j = 1
        while True:
            _skew_band_matvec(coef, k, term, nxt)
            big = 0.0
            scale = h / j
            for i in range(dim):
                term[i] = nxt[i] * scale
                x[i] += term[i]
                if abs(term[i]) > big:
                    big = abs(term[i])
            j += 1
            if big <= tol or j > 200:
                break
    return x


def numpy_skew_band_expm_apply(coef, k, v, steps, tol):
    coef = np.asarray(coef, dtype=np.float64)
    x = np.array(v, dtype=np.float64)
    h = 1.0 / steps
    for _ in range(steps):
        term = x.copy()
        for j in range(1, 201):
            nxt = np.zeros_like(term)
            nxt[k:] += coef * term[:-k]
            nxt[:-k] -= coef * term[k:]
            term = nxt * (h / j)
            x += term
            if np.max(np.abs(term)) <= tol:
                break
    return x


if HAVE_NUMBA:
    numba_compensated_cumsum = njit(cache=True)(_py_compensated_cumsum)
    numba_difference_distribution = njit(cache=True)(_py_difference_distribution)
    _skew_band_matvec = njit(cache=True)(_py_skew_band_matvec)
    numba_skew_band_expm_apply = njit(cache=True)(_py_skew_band_expm_apply)
else:  # pragma: no cover
    numba_compensated_cumsum = None
    numba_difference_distribution = None
    _skew_band_matvec = _py_skew_band_matvec
    numba_skew_band_expm_apply = None


if USE_NUMBA:
    _cumsum_impl = numba_compensated_cumsum
    _difference_impl = numba_difference_distribution
    _expm_impl = numba_skew_band_expm_apply
else:
    _cumsum_impl = numpy_compensated_cumsum
    _difference_impl = numpy_difference_distribution
    _expm_impl = numpy_skew_band_expm_apply


def compensated_cumsum(x):
    return _cumsum_impl(np.ascontiguousarray(x, dtype=np.float64))


def difference_distribution(p):
    return _difference_impl(np.ascontiguousarray(p, dtype=np.float64))


def skew_band_expm_apply(coef, k, v, t=1.0, tol=1e-18):
    """Return ``exp(t*A) @ v`` by scaled Taylor stepping.

    The step count keeps ``|t|*||A||_inf/steps <= 1`` so each Taylor series
    converges in about twenty terms.
    """
    coef = np.ascontiguousarray(coef, dtype=np.float64) * t
    v = np.ascontiguousarray(v, dtype=np.float64)
    if coef.size == 0 or not np.any(coef):
        return v.copy()
    norm = 2.0 * float(np.max(np.abs(coef)))
    steps = max(1, int(math.ceil(norm)))
    return _expm_impl(coef, int(k), v, steps, tol)


def backend():
    return "numba" if USE_NUMBA else "numpy"
