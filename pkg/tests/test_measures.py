"""Multiplicity curvature: equivalence, valuation property, layout counts."""

import numpy as np
import pytest

from diskfold import (
    augment,
    attach_boundary_data,
    closure,
    layout_augmented,
    layout_point_multiplicity,
    measure_curvature,
    measure_curvatures,
    measure_equivalence_check,
    metric_data,
    standard_multiplicities,
    valuation_defect,
)
from diskfold.complexes import simplex_key
from diskfold.presets import hex_flower, ring_lattice, scenario_data, triangle_disk

from conftest import HEX_FLAT


def _hex_tangent():
    disk = hex_flower()
    aug = augment(disk)
    cs = attach_boundary_data(aug, *scenario_data(disk, "tangent"))
    return aug, cs


def test_measure_curvature_vanishes_at_flat_label():
    aug, cs = _hex_tangent()
    mu = standard_multiplicities(aug)
    md = metric_data(aug, cs, HEX_FLAT["hex_tangent"])
    for v in aug.vertex_order:
        assert measure_curvature(aug, mu, md, v) == pytest.approx(0.0, abs=1e-13)


def test_equivalence_on_flat_and_perturbed_labels():
    aug, cs = _hex_tangent()
    assert measure_equivalence_check(aug, cs, HEX_FLAT["hex_tangent"]) <= 1e-13
    rng = np.random.default_rng(21)
    for _ in range(20):
        f = HEX_FLAT["hex_tangent"] + rng.uniform(-0.08, 0.08, 8)
        assert measure_equivalence_check(aug, cs, f) <= 1e-12


def test_equivalence_on_single_triangle():
    disk = triangle_disk()
    aug = augment(disk)
    cs = attach_boundary_data(aug, *scenario_data(disk, "inscribed"))
    f = np.array([0.5 * np.log(3.0)] * 3 + [0.0])
    assert measure_equivalence_check(aug, cs, f) <= 1e-12


def test_equivalence_random_on_ring_lattice():
    from diskfold.presets import random_admissible

    disk = ring_lattice(2)
    rng = np.random.default_rng(33)
    for _ in range(50):
        aug, cs, f = random_admissible(disk, rng)
        assert measure_equivalence_check(aug, cs, f) <= 1e-12


def test_closure_adds_all_faces_of_faces():
    got = closure([(0, 1, 2)])
    assert got == {
        (0,), (1,), (2,),
        (0, 1), (0, 2), (1, 2),
        (0, 1, 2),
    }


def test_valuation_property():
    """K is a valuation: K(A u B) + K(A n B) = K(A) + K(B)."""
    aug, cs = _hex_tangent()
    mu = standard_multiplicities(aug)
    rng = np.random.default_rng(4)
    f = HEX_FLAT["hex_tangent"] + rng.uniform(-0.05, 0.05, 8)
    md = metric_data(aug, cs, f)
    apex = aug.apex
    pairs = [
        (closure([(0, 1, 2), (0, 2, 3)]), closure([(0, 3, 4), (0, 2, 3)])),
        (closure([(0, 1, 2)]), closure([simplex_key((1, 2, apex))])),
        (closure([(0, 1, 2), (0, 1, 6)]), closure([(1, 2, apex), (1, 6, apex)])),
    ]
    for A, B in pairs:
        for v in (0, 1, 2):
            assert valuation_defect(aug, mu, md, v, A, B) <= 1e-12


def test_valuation_rejects_non_subcomplexes():
    aug, cs = _hex_tangent()
    mu = standard_multiplicities(aug)
    md = metric_data(aug, cs, HEX_FLAT["hex_tangent"])
    open_set = frozenset({(0, 1, 2)})  # faces without their edges
    with pytest.raises(ValueError):
        valuation_defect(aug, mu, md, 0, open_set, open_set)


def test_measure_curvatures_matches_scalar_calls():
    aug, cs = _hex_tangent()
    mu = standard_multiplicities(aug)
    rng = np.random.default_rng(8)
    f = HEX_FLAT["hex_tangent"] + rng.uniform(-0.05, 0.05, 8)
    md = metric_data(aug, cs, f)
    allk = measure_curvatures(aug, mu, md)
    for v in aug.vertex_order:
        assert allk[v] == measure_curvature(aug, mu, md, v)


def test_layout_multiplicity_cancels_on_the_fold():
    """Each plane point is covered once per sheet with opposite signs."""
    aug, cs = _hex_tangent()
    mu = standard_multiplicities(aug)
    f = HEX_FLAT["hex_tangent"]
    lay = layout_augmented(aug, cs, f)
    pos = lay.positions
    # generic points inside disk faces
    for face in aug.disk_faces[:3]:
        c = (np.asarray(pos[face[0]]) + pos[face[1]] + pos[face[2]]) / 3.0
        assert layout_point_multiplicity(aug, mu, pos, tuple(c)) == 0
    # far outside everything
    assert layout_point_multiplicity(aug, mu, pos, (50.0, 0.0)) == 0
