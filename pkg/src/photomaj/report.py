"""Report documents behind the CLI, and their CSV/JSON serialisation.

A :class:`Document` is a list of ``key: value`` header entries plus named
tables.  CSV output writes the header as ``#``-prefixed lines and each table
as a ``# table: <name>`` line followed by a comma-separated block.  JSON
output carries every float as a 17-significant-digit decimal string so that
both formats round-trip exactly.
"""

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dist import DEFAULT_EPS, coherent_distribution, moments
from .entropy import EntropyQuery, Family, entropy
from .fock import sample_beam_splitter
from .majorize import (
    DEFAULT_TOL,
    alpha_grid,
    classify_poissonian,
    compare,
    confidence_intervals,
    order_profile,
)
from .splitter import (
    classify_clustering,
    difference_variance,
    number_difference_distribution,
    number_sum_distribution,
    prob_single_detector_silent,
)
from .statespec import parse_state_spec

__all__ = [
    "Document",
    "fmt_float",
    "run_dist",
    "run_compare",
    "run_classify",
    "run_entropy",
    "run_sample",
]


def fmt_float(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _cell(v):
    if isinstance(v, str):
        return v
    if v is None:
        return ""
    return fmt_float(v)


@dataclass
class Document:
    kind: str
    header: list = field(default_factory=list)
    tables: list = field(default_factory=list)

    def add(self, key, value):
        self.header.append((key, value))

    def table(self, name, columns, rows):
        self.tables.append((name, list(columns), rows))

    def to_csv(self):
        out = io.StringIO()
        out.write(f"# photomaj {self.kind}\n")
        out.write(f"# version: {__version__}\n")
        for key, value in self.header:
            out.write(f"# {key}: {_cell(value)}\n")
        for name, columns, rows in self.tables:
            out.write(f"# table: {name}\n")
            out.write(",".join(columns) + "\n")
            for row in rows:
                out.write(",".join(_cell(v) for v in row) + "\n")
        return out.getvalue()

    def to_json(self):
        doc = {
            "kind": self.kind,
            "version": __version__,
            "header": {k: _cell(v) for k, v in self.header},
            "tables": [
                {"name": name, "columns": columns, "rows": [[_cell(v) for v in r] for r in rows]}
                for name, columns, rows in self.tables
            ],
        }
        return json.dumps(doc, indent=1) + "\n"

    def render(self, fmt):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _spec(x):
    return parse_state_spec(x) if isinstance(x, str) else x


def _describe_crossings(doc, verdict, prefix="crossing"):
    doc.add(f"{prefix}_count", len(verdict.crossings))
    rows = []
    for c in verdict.crossings:
        rows.append(
            [c.n_interp, c.outcomes, c.alpha, c.alpha_band[0], c.alpha_band[1], c.leader_before]
        )
    doc.table(
        f"{prefix}s",
        ["n_interp", "outcomes", "alpha", "band_lo", "band_hi", "leader_before"],
        rows,
    )


def partial_sums_table(doc, name, labels, profiles):
    length = max(len(p) for p in profiles)
    cols = [p.padded_sums(length) for p in profiles]
    rows = [[n] + [c[n] for c in cols] for n in range(length)]
    doc.table(name, ["N"] + [f"S_{lab}" for lab in labels], rows)


def run_dist(spec, eps=DEFAULT_EPS):
    spec = _spec(spec)
    d = spec.build(eps)
    m = moments(d)
    doc = Document("dist")
    doc.add("state", str(spec))
    doc.add("eps", eps)
    doc.add("n_max", d.n_max)
    doc.add("tail_bound", d.tail_bound)
    doc.add("mean", m.mean)
    doc.add("variance", m.variance)
    doc.add("variance_over_mean", m.fano)
    doc.table("probabilities", ["n", "p"], [[n, p] for n, p in enumerate(d.probs)])
    return doc


def run_compare(spec_a, spec_b, tol=DEFAULT_TOL, eps=DEFAULT_EPS):
    """Partial-sum curves, verdict, crossings and confidence intervals of two
    states; ``S_N`` sums the ``N+1`` largest probabilities."""
    sa, sb = _spec(spec_a), _spec(spec_b)
    da, db = sa.build(eps), sb.build(eps)
    pa, pb = order_profile(da), order_profile(db)
    verdict = compare(pa, pb, tol)
    ma, mb = moments(da), moments(db)
    doc = Document("compare")
    doc.add("state_a", str(sa))
    doc.add("state_b", str(sb))
    doc.add("eps", eps)
    doc.add("tol", tol)
    doc.add("verdict", verdict.relation.value)
    doc.add("mean_a", ma.mean)
    doc.add("variance_a", ma.variance)
    doc.add("mean_b", mb.mean)
    doc.add("variance_b", mb.variance)
    _describe_crossings(doc, verdict)
    partial_sums_table(doc, "partial_sums", ["a", "b"], [pa, pb])
    grid = alpha_grid()
    na, nb = confidence_intervals(pa, grid), confidence_intervals(pb, grid)
    doc.table(
        "confidence_intervals",
        ["alpha", "N_a", "N_b"],
        [[al, int(x), int(y)] for al, x, y in zip(grid, na, nb)],
    )
    return doc


def run_classify(spec, criterion="poisson", tol=DEFAULT_TOL, eps=DEFAULT_EPS):
    spec = _spec(spec)
    d = spec.build(eps)
    m = moments(d)
    doc = Document("classify")
    doc.add("state", str(spec))
    doc.add("criterion", criterion)
    doc.add("eps", eps)
    doc.add("tol", tol)
    doc.add("mean", m.mean)
    doc.add("variance", m.variance)
    doc.add("variance_over_mean", m.fano)
    if criterion == "poisson":
        res = classify_poissonian(d, tol, eps)
        doc.add("verdict", res.kind.value)
        doc.add("effective", res.effective_kind.value)
        doc.add("effective_up_to_alpha", res.effective_up_to)
        _describe_crossings(doc, res.verdict)
        if not res.degenerate:
            ref = coherent_distribution(m.mean, eps)
            partial_sums_table(doc, "partial_sums", ["state", "poisson"], [order_profile(d), order_profile(ref)])
    elif criterion == "clustering":
        res = classify_clustering(d, tol)
        doc.add("verdict", res.kind.value)
        doc.add("effective", res.effective_kind.value)
        doc.add("effective_up_to_alpha", res.effective_up_to)
        doc.add("detector_covariance", res.covariance)
        doc.add("difference_variance", difference_variance(d))
        doc.add("prob_single_detector_silent", prob_single_detector_silent(d))
        _describe_crossings(doc, res.verdict)
        plus = order_profile(number_sum_distribution(d))
        minus = order_profile(number_difference_distribution(d))
        partial_sums_table(doc, "partial_sums", ["plus", "minus"], [plus, minus])
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    return doc


def run_entropy(spec, family="renyi", qs=(0.5, 1.0, 2.0), eps=DEFAULT_EPS, bits=False):
    spec = _spec(spec)
    d = spec.build(eps)
    fam = Family(family)
    scale = 1.0 / math.log(2.0) if bits else 1.0
    doc = Document("entropy")
    doc.add("state", str(spec))
    doc.add("family", fam.value)
    doc.add("unit", "bits" if bits else "nats")
    rows = [[q, entropy(d, EntropyQuery(fam, q)) * scale] for q in qs]
    doc.table("entropies", ["q", "H"], rows)
    return doc


def run_sample(spec, n_samples, seed, eps=DEFAULT_EPS, workers=1):
    spec = _spec(spec)
    d = spec.build(eps)
    rep = sample_beam_splitter(d, n_samples, seed, workers=workers)
    doc = Document("sample")
    doc.add("state", str(spec))
    doc.add("n_samples", rep.n_samples)
    doc.add("seed", rep.seed)
    doc.add("rng", rep.algorithm)
    rows = [[n1, n2, c] for (n1, n2), c in sorted(rep.joint_counts.items())]
    doc.table("joint_counts", ["n1", "n2", "count"], rows)
    return doc
