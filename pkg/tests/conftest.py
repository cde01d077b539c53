"""Shared fixtures: preset structures and their closed-form flat labels."""

import numpy as np
import pytest

from diskfold import build, newton_flat, ring_lattice

# Exact flat labels for the 7-circle configurations, from elementary
# circle geometry in the unit disk (boundary circle radius r, apex
# normalized to the unit circle so f_hat = 0):
#   tangent     r = 1/3        six radius-1/3 circles around a seventh
#   orthogonal  r = 1/sqrt(3)  mutually tangent, orthogonal to the rim
#   inscribed   side 1         regular unit hexagon, weight-0 points
HEX_FLAT = {
    "hex_tangent": np.array([np.log(1.0 / 3.0)] * 7 + [0.0]),
    "hex_orthogonal": np.array([-0.5 * np.log(3.0)] * 7 + [0.0]),
    "hex_inscribed": np.zeros(8),
}

# Gauge-invariant gap f_apex - f_boundary for the same three cases.
HEX_GAP = {
    "hex_tangent": np.log(3.0),
    "hex_orthogonal": 0.5 * np.log(3.0),
    "hex_inscribed": 0.0,
}


@pytest.fixture(scope="session")
def hex_tangent():
    return build("hex_tangent")


@pytest.fixture(scope="session")
def hex_orthogonal():
    return build("hex_orthogonal")


@pytest.fixture(scope="session")
def hex_inscribed():
    return build("hex_inscribed")


@pytest.fixture(scope="session")
def hex_tangent_solved(hex_tangent):
    aug, cs = hex_tangent
    res = newton_flat(aug, cs, tol=1e-12)
    assert res.converged
    return aug, cs, res


@pytest.fixture(scope="session")
def ring2():
    return ring_lattice(2)


def boundary_gaps(aug, f):
    """f_apex - f_v over the boundary cycle, f given as an array."""
    return [f[-1] - f[aug.vertex_index[v]] for v in aug.disk.boundary_cycle]
