"""Edge lengths, angles, curvature and its Jacobian for labeled disks.

A conformal structure assigns a number alpha_v to each vertex and
eta_uv to each edge; a label f gives every vertex a logarithmic scale.
Squared edge lengths are

    l_uv^2 = alpha_u e^{2 f_u} + alpha_v e^{2 f_v} + 2 eta_uv e^{f_u + f_v}.

Adding a constant to f scales all lengths equally, so angles and
curvatures only depend on f up to a uniform shift.

Curvature on an augmented disk counts angles with a sign that folds the
augmented sheet over the disk: disk faces enter with -1, augmented
faces with +1, and the constant term is 2*pi at interior vertices, 0 at
boundary vertices and -2*pi at the apex.  The total curvature vanishes
identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import AugmentedDisk, CombinatorialDisk, Edge, edge_key, simplex_key

__all__ = [
    "ConformalStructure",
    "StructureError",
    "InadmissibleLabelError",
    "AngleSystem",
    "MetricData",
    "attach_boundary_data",
    "edge_length",
    "face_angles",
    "admissible",
    "check_admissible",
    "curvature",
    "curvature_jacobian",
    "metric_data",
]

#: Slack allowed when clamping arccos arguments to [-1, 1].
COS_CLAMP_TOL = 1e-12


class StructureError(ValueError):
    """The conformal structure does not cover the complex."""


class InadmissibleLabelError(ValueError):
    """A label produces a nonpositive squared length or a failed triangle inequality."""

    def __init__(self, message, simplex=None):
        super().__init__(message)
        self.simplex = simplex


@dataclass(frozen=True)
class ConformalStructure:
    """Vertex weights alpha and edge weights eta.  Treat as immutable.

    For an augmented disk the dictionaries cover the apex and the
    augmented edges as well; attach_boundary_data builds that extension
    from boundary data mu.
    """

    alpha: dict = field(default_factory=dict)
    eta: dict = field(default_factory=dict)

    def validate_for(self, complex_) -> None:
        vertices = complex_.vertices
        edges = complex_.edges
        missing_a = [v for v in vertices if v not in self.alpha]
        if missing_a:
            raise StructureError(f"alpha misses vertices {missing_a}")
        missing_e = [e for e in edges if e not in self.eta]
        if missing_e:
            raise StructureError(f"eta misses edges {missing_e}")
        for v, a in self.alpha.items():
            if not np.isfinite(a):
                raise StructureError(f"alpha[{v}] is not finite")
        for e, h in self.eta.items():
            if not np.isfinite(h):
                raise StructureError(f"eta[{e}] is not finite")


def attach_boundary_data(
    aug: AugmentedDisk, alpha, eta, mu, apex_alpha: float = 1.0
) -> ConformalStructure:
    """Extend disk data (alpha, eta) and boundary data mu over the apex.

    The boundary condition mu_v becomes the structure constant of the
    augmented edge (v, apex), and the apex gets weight ``apex_alpha``.
    """
    disk = aug.disk
    missing = [v for v in disk.vertices if v not in alpha]
    if missing:
        raise StructureError(f"alpha misses vertices {missing}")
    a = {v: float(alpha[v]) for v in disk.vertices}
    a[aug.apex] = float(apex_alpha)
    missing = [e for e in disk.edges if edge_key(*e) not in eta]
    if missing:
        raise StructureError(f"eta misses edges {missing}")
    h = {edge_key(*e): float(eta[edge_key(*e)]) for e in disk.edges}
    for v in disk.boundary_cycle:
        if v not in mu:
            raise StructureError(f"mu misses boundary vertex {v}")
        h[edge_key(v, aug.apex)] = float(mu[v])
    cs = ConformalStructure(alpha=a, eta=h)
    cs.validate_for(aug)
    return cs


class AngleSystem:
    """Array-compiled evaluator for one (complex, structure) pair.

    Bind once and reuse when evaluating many labels; the module-level
    functions build a fresh instance per call.  For a plain disk only
    the interior entries of curvature() are meaningful.
    """

    def __init__(self, complex_, cs: ConformalStructure):
        cs.validate_for(complex_)
        self.complex = complex_
        self.cs = cs
        verts = complex_.vertices
        self.vertex_order = verts
        self._vidx = {v: i for i, v in enumerate(verts)}
        n = len(verts)
        self.n_vertices = n

        edges = complex_.edges
        self.edge_order = edges
        self._eidx = {e: i for i, e in enumerate(edges)}
        self.alpha = np.array([cs.alpha[v] for v in verts])
        self.eta = np.array([cs.eta[e] for e in edges])
        self.E = np.array([[self._vidx[u], self._vidx[v]] for u, v in edges])

        faces = complex_.faces
        self.faces = faces
        self.F = np.array([[self._vidx[v] for v in f] for f in faces])
        self.FE = np.array(
            [
                [self._eidx[edge_key(f[(c + 1) % 3], f[(c + 2) % 3])] for c in range(3)]
                for f in faces
            ]
        )

        if isinstance(complex_, AugmentedDisk):
            nd = complex_.n_disk_faces
            self.curv_sign = np.concatenate(
                [-np.ones(nd), np.ones(len(faces) - nd)]
            )
            const = np.zeros(n)
            for v in complex_.disk.interior_vertices:
                const[self._vidx[v]] = 2.0 * np.pi
            const[self._vidx[complex_.apex]] = -2.0 * np.pi
            self.const = const
        else:
            # plain disk: angle defect 2*pi - sum(theta), interior rows only
            self.curv_sign = -np.ones(len(faces))
            self.const = np.full(n, 2.0 * np.pi)

        # scatter index arrays for the jacobian
        rows = np.repeat(self.F[:, :, None], 3, axis=2)  # (F, corner, edge slot)
        self._j_rows = rows.ravel()
        eg = self.FE[:, None, :].repeat(3, axis=1)  # global edge per slot
        self._j_edges = eg.ravel()
        self._j_cols_u = self.E[self._j_edges, 0]
        self._j_cols_v = self.E[self._j_edges, 1]

    def label_array(self, f) -> np.ndarray:
        if isinstance(self.complex, AugmentedDisk):
            return self.complex.label_array(f)
        if isinstance(f, dict):
            return np.array([float(f[v]) for v in self.vertex_order])
        arr = np.asarray(f, dtype=float)
        if arr.shape != (self.n_vertices,):
            raise ValueError(f"label must have shape ({self.n_vertices},)")
        return arr

    # -- lengths ------------------------------------------------------

    def lengths_sq(self, f) -> np.ndarray:
        f = self.label_array(f)
        fu, fv = f[self.E[:, 0]], f[self.E[:, 1]]
        au, av = self.alpha[self.E[:, 0]], self.alpha[self.E[:, 1]]
        # wild labels overflow exp; callers treat non-finite as inadmissible
        with np.errstate(over="ignore", invalid="ignore"):
            return au * np.exp(2 * fu) + av * np.exp(2 * fv) + 2 * self.eta * np.exp(fu + fv)

    def lengths(self, f) -> np.ndarray:
        l2 = self.lengths_sq(f)
        bad = np.nonzero(~(np.isfinite(l2) & (l2 > 0)))[0]
        if bad.size:
            e = self.edge_order[bad[0]]
            raise InadmissibleLabelError(
                f"squared length {l2[bad[0]]!r} on edge {e} is not positive", simplex=e
            )
        return np.sqrt(l2)

    def violation(self, f):
        """None if the label is admissible, else (kind, simplex, values)."""
        f = self.label_array(f)
        l2 = self.lengths_sq(f)
        if not np.all(np.isfinite(l2)):
            i = int(np.nonzero(~np.isfinite(l2))[0][0])
            return ("edge", self.edge_order[i], float(l2[i]))
        bad = np.nonzero(~(l2 > 0))[0]
        if bad.size:
            i = int(bad[0])
            return ("edge", self.edge_order[i], float(l2[i]))
        l = np.sqrt(l2)
        L = l[self.FE]
        a, b, c = L[:, 0], L[:, 1], L[:, 2]
        ok = (a + b > c) & (b + c > a) & (a + c > b)
        bad = np.nonzero(~ok)[0]
        if bad.size:
            i = int(bad[0])
            return ("face", self.faces[i], tuple(float(x) for x in L[i]))
        return None

    def admissible(self, f) -> bool:
        return self.violation(f) is None

    def check_admissible(self, f) -> None:
        v = self.violation(f)
        if v is None:
            return
        kind, simplex, values = v
        if kind == "edge":
            raise InadmissibleLabelError(
                f"squared length {values!r} on edge {simplex} is not positive",
                simplex=simplex,
            )
        raise InadmissibleLabelError(
            f"triangle inequality fails on face {simplex}: lengths {values}",
            simplex=simplex,
        )

    # -- angles and curvature ------------------------------------------

    def angles(self, f) -> np.ndarray:
        """Interior angles per face, column c at the corner faces[i][c]."""
        self.check_admissible(f)
        l = np.sqrt(self.lengths_sq(f))
        L = l[self.FE]
        th = np.empty_like(L)
        for c in range(3):
            a = L[:, c]
            b = L[:, (c + 1) % 3]
            cc = L[:, (c + 2) % 3]
            cosv = (b * b + cc * cc - a * a) / (2 * b * cc)
            if np.any(np.abs(cosv) > 1.0 + COS_CLAMP_TOL):
                i = int(np.argmax(np.abs(cosv)))
                raise InadmissibleLabelError(
                    f"degenerate angle in face {self.faces[i]}",
                    simplex=self.faces[i],
                )
            th[:, c] = np.arccos(np.clip(cosv, -1.0, 1.0))
        return th

    def curvature(self, f) -> np.ndarray:
        th = self.angles(f)
        K = self.const.copy()
        np.add.at(K, self.F.ravel(), (self.curv_sign[:, None] * th).ravel())
        return K

    def jacobian(self, f) -> np.ndarray:
        """dK/df, assembled from exact angle derivatives.

        In a face with angles th_i opposite sides a = l_jk, b = l_ik,
        c = l_ij and area A:

            d th_i / d a = a / (2 A)
            d th_i / d b = -a cos(th_k) / (2 A)
            d th_i / d c = -a cos(th_j) / (2 A)

        combined with d l_uv / d f_u = (alpha_u e^{2 f_u}
        + eta_uv e^{f_u + f_v}) / l_uv.
        """
        f = self.label_array(f)
        th = self.angles(f)
        l = np.sqrt(self.lengths_sq(f))
        fu, fv = f[self.E[:, 0]], f[self.E[:, 1]]
        au, av = self.alpha[self.E[:, 0]], self.alpha[self.E[:, 1]]
        cross = self.eta * np.exp(fu + fv)
        dl_du = (au * np.exp(2 * fu) + cross) / l
        dl_dv = (av * np.exp(2 * fv) + cross) / l

        L = l[self.FE]
        a, b, c = L[:, 0], L[:, 1], L[:, 2]
        s = (a + b + c) / 2
        area = np.sqrt(np.maximum(s * (s - a) * (s - b) * (s - c), 0.0))
        cth = np.cos(th)

        # a face can pass the strict triangle inequality while Heron's
        # formula rounds its area to zero; entries then come out inf and
        # the caller decides what to do with a blown-up Jacobian
        dth = np.empty((len(self.faces), 3, 3))
        with np.errstate(divide="ignore", invalid="ignore"):
            for ci in range(3):
                aa = L[:, ci]
                dth[:, ci, ci] = aa / (2 * area)
                dth[:, ci, (ci + 1) % 3] = -aa * cth[:, (ci + 2) % 3] / (2 * area)
                dth[:, ci, (ci + 2) % 3] = -aa * cth[:, (ci + 1) % 3] / (2 * area)
        dth *= self.curv_sign[:, None, None]

        n = self.n_vertices
        J = np.zeros((n, n))
        vals = dth.ravel()
        with np.errstate(invalid="ignore"):
            np.add.at(J, (self._j_rows, self._j_cols_u), vals * dl_du[self._j_edges])
            np.add.at(J, (self._j_rows, self._j_cols_v), vals * dl_dv[self._j_edges])
        return J

    # -- dictionary views ----------------------------------------------

    def lengths_dict(self, f) -> dict:
        l = self.lengths(f)
        return {e: float(l[i]) for i, e in enumerate(self.edge_order)}

    def angles_dict(self, f) -> dict:
        th = self.angles(f)
        out = {}
        for fi, face in enumerate(self.faces):
            for c in range(3):
                out[(face[c], simplex_key(face))] = float(th[fi, c])
        return out


@dataclass(frozen=True)
class MetricData:
    """Lengths per edge and angles per (vertex, face) for one label."""

    lengths: dict
    angles: dict

    def length(self, u, v=None) -> float:
        e = edge_key(u, v) if v is not None else edge_key(*u)
        return self.lengths[e]

    def angle(self, vertex, face) -> float:
        return self.angles[(vertex, simplex_key(face))]


def metric_data(complex_, cs: ConformalStructure, f) -> MetricData:
    sys = AngleSystem(complex_, cs)
    return MetricData(lengths=sys.lengths_dict(f), angles=sys.angles_dict(f))


def edge_length(cs: ConformalStructure, f, edge: Edge) -> float:
    """Length of one edge under the label.  f is a mapping here."""
    u, v = edge
    l2 = (
        cs.alpha[u] * np.exp(2 * f[u])
        + cs.alpha[v] * np.exp(2 * f[v])
        + 2 * cs.eta[edge_key(u, v)] * np.exp(f[u] + f[v])
    )
    if not l2 > 0:
        raise InadmissibleLabelError(
            f"squared length {l2!r} on edge {edge} is not positive", simplex=edge
        )
    return float(np.sqrt(l2))


def face_angles(cs: ConformalStructure, f, face) -> tuple:
    """Angles of one face at its three corners, in face order."""
    i, j, k = face
    a = edge_length(cs, f, (j, k))
    b = edge_length(cs, f, (i, k))
    c = edge_length(cs, f, (i, j))
    if not (a + b > c and b + c > a and a + c > b):
        raise InadmissibleLabelError(
            f"triangle inequality fails on face {face}: lengths {(a, b, c)}",
            simplex=face,
        )
    out = []
    for (op, s1, s2) in ((a, b, c), (b, a, c), (c, a, b)):
        cosv = (s1 * s1 + s2 * s2 - op * op) / (2 * s1 * s2)
        out.append(float(np.arccos(np.clip(cosv, -1.0, 1.0))))
    return tuple(out)


def admissible(complex_, cs: ConformalStructure, f) -> bool:
    return AngleSystem(complex_, cs).admissible(f)


def check_admissible(complex_, cs: ConformalStructure, f) -> None:
    AngleSystem(complex_, cs).check_admissible(f)


def curvature(complex_, cs: ConformalStructure, f) -> np.ndarray:
    """Curvature at every vertex, in complex vertex order."""
    return AngleSystem(complex_, cs).curvature(f)


def curvature_jacobian(complex_, cs: ConformalStructure, f) -> np.ndarray:
    return AngleSystem(complex_, cs).jacobian(f)
