"""Majorization, confidence intervals and entropies for photon-number
statistics of coherent, thermal, number, squeezed and mixed light."""

__version__ = "0.1.0"

from .dist import (  # noqa: E402
    DEFAULT_EPS,
    MixtureSpec,
    Moments,
    PhotonDistribution,
    SqueezedParams,
    coherent_distribution,
    gaussian_partial_sum,
    mixture,
    moments,
    number_state_distribution,
    rearranged_gaussian_partial_sum,
    solve_squeezed_params,
    squeezed_closed_form,
    squeezed_distribution,
    thermal_distribution,
    thermal_partial_sum_closed_form,
)
from .entropy import EntropyQuery, Family, entropy, schur_consistency  # noqa: E402
from .errors import (  # noqa: E402
    ConvergenceError,
    DomainError,
    InfeasibleTargetError,
    PhotomajError,
    SpecParseError,
    UnsatisfiableAlphaError,
)
from .fock import (  # noqa: E402
    build_squeezed_state,
    joint_distribution_brute_force,
    sample_beam_splitter,
)
from .majorize import (  # noqa: E402
    Relation,
    classify_poissonian,
    compare,
    confidence_interval,
    equivalence_check,
    order_profile,
)
from .splitter import (  # noqa: E402
    classify_clustering,
    detector_covariance,
    number_difference_distribution,
    number_sum_distribution,
    prob_single_detector_silent,
)
from .statespec import parse_state_spec  # noqa: E402
