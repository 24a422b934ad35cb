"""Curve data for the predefined ordered-partial-sum figures.

Each figure id maps to a fixed set of states.  ``profiles`` figures plot
``S_N`` of every listed state; ``splitter`` figures plot ``S_N`` of the
number-sum and number-difference distributions of one state.
"""

from dataclasses import dataclass

from .dist import DEFAULT_EPS
from .errors import DomainError
from .majorize import order_profile
from .report import Document, partial_sums_table
from .splitter import number_difference_distribution, number_sum_distribution
from .statespec import parse_state_spec

__all__ = ["Figure", "FIGURES", "run_figure", "figure_help"]

_MIX = "mix(0.9;number(1);thermal(11))"


@dataclass(frozen=True)
class Figure:
    description: str
    kind: str  # "profiles" or "splitter"
    curves: tuple  # (column label, state spec)


FIGURES = {
    2: Figure(
        "coherent states with mean 1, 5 and 10",
        "profiles",
        (("coherent_1", "coherent(1)"), ("coherent_5", "coherent(5)"), ("coherent_10", "coherent(10)")),
    ),
    3: Figure(
        "coherent and thermal light, both with mean 1.5",
        "profiles",
        (("coherent", "coherent(1.5)"), ("thermal", "thermal(1.5)")),
    ),
    4: Figure(
        "coherent light with mean 100 and thermal light with mean 10",
        "profiles",
        (("coherent", "coherent(100)"), ("thermal", "thermal(10)")),
    ),
    5: Figure(
        "mean 6: squeezed with variance 0.6*mean, squeezed vacuum (variance 14*mean), coherent",
        "profiles",
        (
            ("sub", "squeezed_target(mean=6,var=3.6)"),
            ("super", "squeezed_target(mean=6,var=84)"),
            ("coherent", "coherent(6)"),
        ),
    ),
    7: Figure("number sum and difference for a coherent state with mean 1", "splitter", (("state", "coherent(1)"),)),
    8: Figure(
        "squeezed state with mean 6 and variance 2*mean against coherent light",
        "profiles",
        (("squeezed", "squeezed_target(mean=6,var=12)"), ("coherent", "coherent(6)")),
    ),
    9: Figure(
        "number sum and difference for the squeezed state with mean 6 and variance 12",
        "splitter",
        (("state", "squeezed_target(mean=6,var=12)"),),
    ),
    10: Figure(
        "0.9 one-photon + 0.1 thermal(11) mixture (mean 2) against coherent light",
        "profiles",
        (("mixture", _MIX), ("coherent", "coherent(2)")),
    ),
    11: Figure("number sum and difference for the one-photon/thermal mixture", "splitter", (("state", _MIX),)),
}


def figure_help():
    lines = []
    for fid, fig in FIGURES.items():
        states = "; ".join(spec for _, spec in fig.curves)
        lines.append(f"  {fid:>2}  {fig.description} [{states}]")
    return "\n".join(lines)


def run_figure(fid, eps=DEFAULT_EPS):
    """Build the curve document for figure ``fid``."""
    try:
        fig = FIGURES[int(fid)]
    except (KeyError, ValueError):
        valid = ", ".join(str(k) for k in FIGURES)
        raise DomainError(f"unknown figure id {fid!r}; valid ids are {valid}") from None
    doc = Document("figure")
    doc.add("figure", int(fid))
    doc.add("description", fig.description)
    doc.add("eps", eps)
    doc.add("note", "S_N is the sum of the N+1 largest probabilities")
    if fig.kind == "profiles":
        labels, profiles = [], []
        for label, text in fig.curves:
            spec = parse_state_spec(text)
            doc.add(f"curve {label}", str(spec))
            labels.append(label)
            profiles.append(order_profile(spec.build(eps)))
    else:
        (_, text), = fig.curves
        spec = parse_state_spec(text)
        d = spec.build(eps)
        doc.add("state", str(spec))
        labels = ["plus", "minus"]
        profiles = [
            order_profile(number_sum_distribution(d)),
            order_profile(number_difference_distribution(d)),
        ]
    partial_sums_table(doc, "partial_sums", labels, profiles)
    return doc
