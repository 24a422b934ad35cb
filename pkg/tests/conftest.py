import math
import sys

import pytest

from photomaj.dist import (
    MixtureSpec,
    coherent_distribution,
    mixture,
    number_state_distribution,
    solve_squeezed_params,
    squeezed_distribution,
    thermal_distribution,
)


def mixed_state():
    return mixture(
        MixtureSpec(0.9, number_state_distribution(1), thermal_distribution(11.0))
    )


def build_zoo():
    """States used across the suite, keyed by a readable name."""
    return {
        "number(0)": number_state_distribution(0),
        "number(1)": number_state_distribution(1),
        "number(3)": number_state_distribution(3),
        "coherent(0.5)": coherent_distribution(0.5),
        "coherent(1)": coherent_distribution(1.0),
        "coherent(5)": coherent_distribution(5.0),
        "coherent(10)": coherent_distribution(10.0),
        "thermal(1)": thermal_distribution(1.0),
        "thermal(1.5)": thermal_distribution(1.5),
        "thermal(10)": thermal_distribution(10.0),
        "squeezed(6,3.6)": squeezed_distribution(solve_squeezed_params(6, 3.6)),
        "squeezed(6,12)": squeezed_distribution(solve_squeezed_params(6, 12)),
        "squeezed_vacuum(6)": squeezed_distribution(solve_squeezed_params(6, 84)),
        "mix": mixed_state(),
    }


@pytest.fixture(scope="session")
def zoo():
    return build_zoo()


@pytest.fixture(scope="session")
def r_sq6():
    return math.asinh(math.sqrt(6.0))


@pytest.fixture(scope="session")
def zoo_joint(zoo):
    from photomaj.fock import joint_distribution_brute_force

    return {name: joint_distribution_brute_force(d) for name, d in zoo.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
