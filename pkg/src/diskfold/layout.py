"""Developing a flat label into the plane and realizing it by circles.

A flat label assigns every face its Euclidean shape through the edge
lengths; zero curvature makes the development independent of the face
chain, so breadth-first and depth-first traversals agree up to
roundoff.  Disk faces are placed with positive orientation.  On an
augmented disk the apex goes to the origin and the augmented faces are
placed with negative orientation: the augmented sheet folds back over
the disk.

The layout lifts to Minkowski vectors

    xi_v = e^{-f_v} * lift(P_v, alpha_v e^{2 f_v})

which reproduce the structure constants: <xi_v, xi_v> = alpha_v and
-<xi_v, xi_w> = eta_vw on edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .complexes import AugmentedDisk, CombinatorialDisk, edge_key
from .conformal import AngleSystem, ConformalStructure
from .minkowski import MPoint, canonical_lift, project

__all__ = [
    "LayoutError",
    "PlaneLayout",
    "UnitDiskRealization",
    "BoundaryReport",
    "layout_disk",
    "layout_augmented",
    "layout_edge_error",
    "realize_mpoints",
    "normalize_to_unit_disk",
    "verify_boundary_condition",
]

#: Default bound on max |K| for a label to count as flat.
FLAT_TOL = 1e-8


class LayoutError(RuntimeError):
    """The label cannot be developed into the plane."""


@dataclass
class PlaneLayout:
    """Vertex positions plus the self-consistency of the development.

    consistency_residual is the largest distance between a placed
    vertex and its re-derivation from any single face, so it bounds the
    monodromy deviation along arbitrary face chains.
    """

    positions: dict
    consistency_residual: float
    traversal: str

    def diameter(self) -> float:
        pts = np.array([self.positions[v] for v in self.positions])
        d = 0.0
        for i in range(len(pts) - 1):
            d = max(d, float(np.max(np.linalg.norm(pts[i + 1:] - pts[i], axis=1))))
        return d


def _third_point(pa, pb, la, lb, orient):
    """Point at distance la from pa and lb from pb, on the side ``orient``."""
    ab = pb - pa
    d2 = float(ab @ ab)
    d = np.sqrt(d2)
    x = (d2 + la * la - lb * lb) / (2.0 * d)
    h2 = la * la - x * x
    h = np.sqrt(max(h2, 0.0))
    u = ab / d
    perp = np.array([-u[1], u[0]])
    return pa + x * u + orient * h * perp


_EVEN = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _corner_orientation(face, a, b) -> float:
    """+1 when (a, b, remaining) is an even permutation of the face."""
    rest = [v for v in face if v != a and v != b][0]
    perm = tuple(face.index(v) for v in (a, b, rest))
    return 1.0 if perm in _EVEN else -1.0


def _develop(faces, area_sign, lengths, start, seed_positions, traversal):
    """Walk the face adjacency graph, placing one vertex per new face."""
    if traversal not in ("bfs", "dfs"):
        raise ValueError(f"traversal must be 'bfs' or 'dfs', got {traversal!r}")
    edge_faces: dict = {}
    for fi, f in enumerate(faces):
        for i in range(3):
            edge_faces.setdefault(edge_key(f[i], f[(i + 1) % 3]), []).append(fi)

    positions = dict(seed_positions)
    queue = deque([start])
    visited = {start}
    while queue:
        fi = queue.popleft() if traversal == "bfs" else queue.pop()
        f = faces[fi]
        for i in range(3):
            e = edge_key(f[i], f[(i + 1) % 3])
            for fj in edge_faces[e]:
                if fj in visited:
                    continue
                g = faces[fj]
                missing = [v for v in g if v not in positions]
                if len(missing) > 1:
                    continue
                visited.add(fj)
                if missing:
                    m = missing[0]
                    a, b = (v for v in g if v != m)
                    la = lengths[edge_key(a, m)]
                    lb = lengths[edge_key(b, m)]
                    orient = area_sign[fj] * _corner_orientation(g, a, b)
                    positions[m] = _third_point(positions[a], positions[b], la, lb, orient)
                queue.append(fj)
    if len(visited) != len(faces):
        raise LayoutError("face graph is not edge-connected")

    residual = 0.0
    for fi, f in enumerate(faces):
        for c in range(3):
            m = f[c]
            a, b = f[(c + 1) % 3], f[(c + 2) % 3]
            la = lengths[edge_key(a, m)]
            lb = lengths[edge_key(b, m)]
            orient = area_sign[fi] * _corner_orientation(f, a, b)
            p = _third_point(positions[a], positions[b], la, lb, orient)
            residual = max(residual, float(np.linalg.norm(p - positions[m])))
    return positions, residual


def _lengths_dict(sys: AngleSystem, f) -> dict:
    l = sys.lengths(f)
    return {e: float(l[i]) for i, e in enumerate(sys.edge_order)}


def layout_disk(
    disk: CombinatorialDisk,
    cs: ConformalStructure,
    f,
    *,
    traversal: str = "bfs",
    flat_tol: float = FLAT_TOL,
) -> PlaneLayout:
    """Develop a disk whose interior curvature vanishes.

    The first face is pinned: first vertex at the origin, second on the
    positive x axis, third in the upper half plane.  All faces keep
    positive orientation.
    """
    sys = AngleSystem(disk, cs)
    farr = sys.label_array(f)
    sys.check_admissible(farr)
    K = sys.curvature(farr)
    index = {v: i for i, v in enumerate(sys.vertex_order)}
    interior = [index[v] for v in disk.interior_vertices]
    if interior:
        worst = float(np.max(np.abs(K[interior])))
        if worst > flat_tol:
            raise LayoutError(f"interior curvature max |K| = {worst!r} is not flat")

    lengths = _lengths_dict(sys, farr)
    v0, v1, v2 = disk.faces[0]
    seed = {v0: np.zeros(2), v1: np.array([lengths[edge_key(v0, v1)], 0.0])}
    seed[v2] = _third_point(
        seed[v0], seed[v1], lengths[edge_key(v0, v2)], lengths[edge_key(v1, v2)], 1.0
    )
    signs = np.ones(len(disk.faces))
    positions, residual = _develop(disk.faces, signs, lengths, 0, seed, traversal)
    return PlaneLayout(positions, residual, traversal)


def layout_augmented(
    aug: AugmentedDisk,
    cs: ConformalStructure,
    f,
    *,
    traversal: str = "bfs",
    flat_tol: float = FLAT_TOL,
) -> PlaneLayout:
    """Develop the folded sphere of a flat label, apex at the origin.

    Augmented faces get negative orientation (the fold); the first
    augmented face is pinned with its boundary edge started along the
    positive x axis.  Requires max |K| <= flat_tol at every vertex;
    a nonzero apex curvature would keep the boundary fan from closing.
    """
    sys = AngleSystem(aug, cs)
    farr = sys.label_array(f)
    sys.check_admissible(farr)
    K = sys.curvature(farr)
    worst = float(np.max(np.abs(K)))
    if worst > flat_tol:
        k_apex = float(abs(K[-1]))
        raise LayoutError(
            f"label is not flat: max |K| = {worst!r}, |K(apex)| = {k_apex!r}"
        )

    lengths = _lengths_dict(sys, farr)
    start = aug.n_disk_faces
    apex, w, v = aug.faces[start]
    seed = {apex: np.zeros(2), w: np.array([lengths[edge_key(apex, w)], 0.0])}
    seed[v] = _third_point(
        seed[apex], seed[w], lengths[edge_key(apex, v)], lengths[edge_key(w, v)], -1.0
    )
    signs = np.concatenate(
        [np.ones(aug.n_disk_faces), -np.ones(len(aug.faces) - aug.n_disk_faces)]
    )
    positions, residual = _develop(aug.faces, signs, lengths, start, seed, traversal)
    return PlaneLayout(positions, residual, traversal)


def layout_edge_error(complex_, cs: ConformalStructure, f, layout: PlaneLayout) -> float:
    """Largest relative deviation between layout distances and lengths."""
    sys = AngleSystem(complex_, cs)
    lengths = _lengths_dict(sys, sys.label_array(f))
    worst = 0.0
    for (u, v), l in lengths.items():
        d = float(np.linalg.norm(layout.positions[u] - layout.positions[v]))
        worst = max(worst, abs(d - l) / l)
    return worst


def realize_mpoints(
    aug: AugmentedDisk, cs: ConformalStructure, f, layout: PlaneLayout
) -> dict:
    """Minkowski vector per vertex: e^{-f_v} times the canonical lift.

    The prefactor makes the self-products equal alpha_v and the edge
    products equal -eta_vw, independent of the label gauge.
    """
    farr = aug.label_array(f)
    out = {}
    for i, v in enumerate(aug.vertices):
        p = layout.positions[v]
        w = cs.alpha[v] * np.exp(2.0 * farr[i])
        out[v] = canonical_lift(p, w).scaled(float(np.exp(-farr[i])))
    return out


@dataclass
class UnitDiskRealization:
    """A layout rescaled so the apex circle is the unit circle."""

    layout: PlaneLayout
    label: np.ndarray
    mpoints: dict


def normalize_to_unit_disk(
    aug: AugmentedDisk, cs: ConformalStructure, f, layout: PlaneLayout
) -> UnitDiskRealization:
    """Translate the apex to the origin and rescale it to radius one.

    Uniform label shifts and plane similarities are Lorentz moves of
    the realization, so the normalized configuration represents the
    same solution with f(apex) = 0.
    """
    farr = aug.label_array(f)
    s = float(np.exp(-farr[-1]))
    center = layout.positions[aug.apex]
    positions = {v: s * (p - center) for v, p in layout.positions.items()}
    new_layout = PlaneLayout(positions, layout.consistency_residual * s, layout.traversal)
    new_f = farr - farr[-1]
    mpoints = realize_mpoints(aug, cs, new_f, new_layout)
    return UnitDiskRealization(new_layout, new_f, mpoints)


@dataclass
class BoundaryReport:
    scenario: str
    residuals: dict
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


_SCENARIOS = ("tangent", "orthogonal", "inscribed")


def verify_boundary_condition(
    aug: AugmentedDisk, mpoints: dict, scenario: str, tol: float = 1e-9
) -> BoundaryReport:
    """Check each boundary circle against the apex circle.

    tangent:     internally tangent, |dist + r_v - r_apex| per vertex
    orthogonal:  |dist^2 - r_apex^2 - r_v^2|
    inscribed:   boundary points on the apex circle, ||p_v - p_apex| - r_apex|

    Meant for normalized realizations (apex = unit circle); the checks
    are absolute with the given tolerance.
    """
    if scenario not in _SCENARIOS:
        raise ValueError(f"scenario must be one of {_SCENARIOS}")
    hat = project(mpoints[aug.apex])
    r_hat = hat.radius
    residuals = {}
    for v in aug.disk.boundary_cycle:
        wp = project(mpoints[v])
        dist = float(np.linalg.norm(wp.p - hat.p))
        if scenario == "tangent":
            # weight-0 points come back as W = -eps from roundoff; a
            # genuinely imaginary radius cannot be tangent to anything
            if wp.W < -tol:
                residuals[v] = float("inf")
            else:
                residuals[v] = abs(dist + np.sqrt(max(wp.W, 0.0)) - r_hat)
        elif scenario == "orthogonal":
            residuals[v] = abs(dist * dist - r_hat * r_hat - wp.W)
        else:
            residuals[v] = abs(dist - r_hat)
    worst = max(residuals.values())
    return BoundaryReport(scenario, residuals, worst, tol)
