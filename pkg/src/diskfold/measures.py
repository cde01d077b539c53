"""Curvature as a measure built from simplex multiplicities.

Every simplex contributes to the curvature at a vertex v it contains:
2*pi for v itself, pi per edge, (pi - theta) per face with theta the
angle at v.  Weighting the contributions by a multiplicity assignment
mu gives

    K_mu(v) = 2*pi*mu(v) + sum_e pi*mu(e) + sum_f (pi - theta_{v,f})*mu(f).

With the standard assignment this reproduces the angle curvature of
the folded disk exactly, and the map (subcomplex -> curvature) is a
valuation: K(A u B) = K(A) + K(B) - K(A n B).
"""

from __future__ import annotations

import numpy as np

from .complexes import (
    AugmentedDisk,
    MultiplicityAssignment,
    simplex_key,
    standard_multiplicities,
)
from .conformal import AngleSystem, ConformalStructure, MetricData, metric_data

__all__ = [
    "measure_curvature",
    "measure_curvatures",
    "measure_equivalence_check",
    "closure",
    "valuation_defect",
    "layout_point_multiplicity",
]


def _contribution(simplex, vertex, mu: MultiplicityAssignment, metric: MetricData) -> float:
    if vertex not in simplex:
        return 0.0
    d = len(simplex)
    if d == 1:
        return 2.0 * np.pi * mu(simplex)
    if d == 2:
        return np.pi * mu(simplex)
    return (np.pi - metric.angle(vertex, simplex)) * mu(simplex)


def measure_curvature(
    aug: AugmentedDisk, mu: MultiplicityAssignment, metric: MetricData, vertex
) -> float:
    """Curvature of the weighted complex at one vertex."""
    total = _contribution((vertex,), vertex, mu, metric)
    for e in aug.edges:
        if vertex in e:
            total += _contribution(e, vertex, mu, metric)
    for f in aug.faces:
        if vertex in f:
            total += _contribution(simplex_key(f), vertex, mu, metric)
    return total


def measure_curvatures(
    aug: AugmentedDisk, mu: MultiplicityAssignment, metric: MetricData
) -> dict:
    return {v: measure_curvature(aug, mu, metric, v) for v in aug.vertices}


def measure_equivalence_check(aug: AugmentedDisk, cs: ConformalStructure, f) -> float:
    """Max deviation between measure curvature and angle curvature.

    Uses the standard multiplicities; the two definitions agree up to
    summation order, so the deviation is pure roundoff.
    """
    sys = AngleSystem(aug, cs)
    K = sys.curvature(f)
    metric = metric_data(aug, cs, f)
    mu = standard_multiplicities(aug)
    dev = 0.0
    for i, v in enumerate(aug.vertices):
        dev = max(dev, abs(measure_curvature(aug, mu, metric, v) - K[i]))
    return dev


def closure(simplices) -> frozenset:
    """Close a set of simplices under taking sub-simplices."""
    out = set()
    for s in simplices:
        s = simplex_key(s)
        out.add(s)
        if len(s) >= 2:
            for v in s:
                out.add((v,))
        if len(s) == 3:
            a, b, c = s
            out.update({(a, b), (b, c), (a, c)})
    return frozenset(out)


def _subcomplex_curvature(X, vertex, mu, metric) -> float:
    return sum(_contribution(s, vertex, mu, metric) for s in X)


def valuation_defect(
    aug: AugmentedDisk,
    mu: MultiplicityAssignment,
    metric: MetricData,
    vertex,
    A,
    B,
) -> float:
    """|K(A u B) - K(A) - K(B) + K(A n B)| at one vertex.

    A and B must be subcomplexes (closed under sub-simplices) of the
    augmented disk; exact up to roundoff for any multiplicities.
    """
    allowed = closure(aug.faces) | {simplex_key(e) for e in aug.edges} | {
        (v,) for v in aug.vertices
    }
    A = frozenset(simplex_key(s) for s in A)
    B = frozenset(simplex_key(s) for s in B)
    for name, X in (("A", A), ("B", B)):
        if not X <= allowed:
            raise ValueError(f"{name} contains simplices outside the complex")
        if closure(X) != X:
            raise ValueError(f"{name} is not closed under sub-simplices")
    ka = _subcomplex_curvature(A, vertex, mu, metric)
    kb = _subcomplex_curvature(B, vertex, mu, metric)
    ku = _subcomplex_curvature(A | B, vertex, mu, metric)
    ki = _subcomplex_curvature(A & B, vertex, mu, metric)
    return abs(ku - ka - kb + ki)


def _segment_distance(a, b, q) -> float:
    ab = b - a
    t = float(np.dot(q - a, ab) / max(np.dot(ab, ab), 1e-300))
    t = min(max(t, 0.0), 1.0)
    return float(np.linalg.norm(a + t * ab - q))


def _in_triangle(a, b, c, q, tol) -> bool:
    area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if area2 == 0.0:
        return False
    s = 1.0 if area2 > 0 else -1.0
    for p0, p1 in ((a, b), (b, c), (c, a)):
        e = p1 - p0
        cross = (e[0] * (q[1] - p0[1]) - e[1] * (q[0] - p0[0])) * s
        if cross < -tol * float(np.linalg.norm(e)):
            return False
    return True


def layout_point_multiplicity(
    aug: AugmentedDisk,
    mu: MultiplicityAssignment,
    positions,
    point,
    tol: float = 1e-9,
) -> int:
    """Signed count of layout simplices covering a plane point.

    Sums mu over every closed simplex whose image under the layout
    contains the point (within tol).  With the standard multiplicities
    the two sheets of the fold cancel: the count is 0 wherever the
    configuration covers the point an equal number of times with each
    sign, in particular at generic points of the folded image.
    """
    q = np.asarray(point, dtype=float)
    pos = {v: np.asarray(positions[v], dtype=float) for v in aug.vertices}
    total = 0
    for v in aug.vertices:
        if float(np.linalg.norm(pos[v] - q)) <= tol:
            total += mu((v,))
    for e in aug.edges:
        if _segment_distance(pos[e[0]], pos[e[1]], q) <= tol:
            total += mu(e)
    for fc in aug.faces:
        if _in_triangle(pos[fc[0]], pos[fc[1]], pos[fc[2]], q, tol):
            total += mu(simplex_key(fc))
    return total
