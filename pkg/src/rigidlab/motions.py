"""Point configurations and spaces of infinitesimal motions.

A configuration is an n x k matrix whose column i is the position of
point i; a motion assigns a velocity column to each point, stored the
same way.  Motions flatten to vectors of length n*k column-major
(velocity of point 1 first), which is also the coordinate order used by
rigidity matrices.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .linalg import Subspace, is_exact, zeros


class PointConfiguration:
    """Positions of k labelled points in R^n (points are 1-based)."""

    __slots__ = ("points",)

    def __init__(self, points: np.ndarray):
        points = np.asarray(points)
        if points.ndim != 2:
            raise ValueError("points must be an n x k matrix")
        self.points = points

    @classmethod
    def from_rows(cls, rows) -> "PointConfiguration":
        """Build from a sequence of k points, each a length-n coordinate row."""
        arr = np.array(rows, dtype=object if any(
            is_exact(np.asarray(r)) for r in rows) else None)
        return cls(np.asarray(arr).T)

    @property
    def dim(self) -> int:
        return self.points.shape[0]

    @property
    def count(self) -> int:
        return self.points.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.points)

    def point(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.count:
            raise ValueError(f"point index {i} out of range 1..{self.count}")
        return self.points[:, i - 1]

    def affine_span_dim(self, tol: float | None = None) -> int:
        if self.count <= 1:
            return 0
        diffs = self.points[:, 1:] - self.points[:, [0]]
        return linalg.rank(diffs.T, tol)

    def is_general_position(self, tol: float | None = None) -> bool:
        """True when every subset of at most dim+1 points is affinely independent."""
        size = min(self.dim + 1, self.count)
        for subset in combinations(range(self.count), size):
            base = self.points[:, [subset[0]]]
            diffs = self.points[:, list(subset[1:])] - base
            if linalg.rank(diffs.T, tol) < size - 1:
                return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, PointConfiguration)
                and self.points.shape == other.points.shape
                and bool((self.points == other.points).all()))

    def __repr__(self) -> str:
        return f"PointConfiguration(dim={self.dim}, count={self.count})"


def take_points(mat: np.ndarray, ids) -> np.ndarray:
    """Columns of a configuration/motion matrix for the given 1-based points."""
    mat = np.asarray(mat)
    cols = []
    for i in ids:
        if not 1 <= i <= mat.shape[1]:
            raise ValueError(f"point index {i} out of range 1..{mat.shape[1]}")
        cols.append(i - 1)
    return mat[:, cols]


def permute_columns(mat: np.ndarray, perm) -> np.ndarray:
    """Relabel points: column i of the result is column perm[i] of the input."""
    return take_points(mat, perm)


def flatten_motion(u: np.ndarray) -> np.ndarray:
    return np.asarray(u).flatten(order="F")


def unflatten_motion(vec: np.ndarray, dim: int, count: int) -> np.ndarray:
    vec = np.asarray(vec).reshape(-1)
    if vec.size != dim * count:
        raise ValueError("flattened motion has the wrong length")
    return vec.reshape((dim, count), order="F")


def skew_basis(n: int, exact: bool = True) -> list[np.ndarray]:
    """Standard basis of the skew-symmetric n x n matrices."""
    out = []
    one = linalg.frac(1) if exact else 1.0
    for i in range(n):
        for j in range(i + 1, n):
            a = zeros((n, n), exact)
            a[i, j] = one
            a[j, i] = -one
            out.append(a)
    return out


def is_skew_symmetric(m: np.ndarray, tol: float | None = None) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = 1.0 if is_exact(m) else float(np.abs(m.astype(float)).max() or 1.0)
    return linalg.is_zero_matrix(m + m.T, tol, scale)


def is_infinitesimal_isometry(p: PointConfiguration, u: np.ndarray,
                              tol: float | None = None) -> bool:
    """True when u preserves every pairwise distance to first order."""
    u = np.asarray(u)
    if u.shape != p.points.shape:
        raise ValueError("motion shape does not match configuration")
    pts = p.points
    for i in range(p.count):
        for j in range(i + 1, p.count):
            du = u[:, i] - u[:, j]
            dp = pts[:, i] - pts[:, j]
            val = du @ dp
            if p.exact:
                if val != 0:
                    return False
            else:
                scale = float(np.linalg.norm(du) * np.linalg.norm(dp))
                if abs(float(val)) > linalg._tol(tol) * max(scale, 1.0):
                    return False
    return True


class MotionSpace:
    """A linear space of motions of one fixed configuration."""

    __slots__ = ("config", "subspace")

    def __init__(self, config: PointConfiguration, subspace: Subspace):
        if subspace.ambient_dim != config.dim * config.count:
            raise ValueError("subspace ambient dimension is not dim*count")
        self.config = config
        self.subspace = subspace

    @classmethod
    def from_motions(cls, config: PointConfiguration, motions,
                     tol: float | None = None) -> "MotionSpace":
        vecs = [flatten_motion(u) for u in motions]
        sub = Subspace.from_spanning(vecs, config.dim * config.count, tol)
        return cls(config, sub)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis_motions(self) -> list[np.ndarray]:
        return [unflatten_motion(v, self.config.dim, self.config.count)
                for v in self.subspace.basis]

    def contains(self, u: np.ndarray, tol: float | None = None) -> bool:
        return self.subspace.contains(flatten_motion(u), tol)

    def __repr__(self) -> str:
        return f"MotionSpace(dim={self.dim}, points={self.config.count})"


def trivial_motion_space(p: PointConfiguration,
                         tol: float | None = None) -> MotionSpace:
    """Motions induced by translations and infinitesimal rotations.

    Spanned by the constant fields e_j 1^T and the fields x -> a x for a
    running over a skew-symmetric basis; dimension is n(n+1)/2 whenever
    the affine span of the points has dimension at least n-1.
    """
    n, k, exact = p.dim, p.count, p.exact
    gens = []
    one = linalg.frac(1) if exact else 1.0
    for j in range(n):
        t = zeros((n, k), exact)
        t[j, :] = one
        gens.append(t)
    for a in skew_basis(n, exact):
        gens.append(a @ p.points)
    return MotionSpace.from_motions(p, gens, tol)


def linear_motion_matrix(p: PointConfiguration, u: np.ndarray,
                         tol: float | None = None):
    """Matrix m with u = m @ points, or None when no such m exists."""
    u = np.asarray(u)
    if u.shape != p.points.shape:
        raise ValueError("motion shape does not match configuration")
    x = linalg.solve(p.points.T, u.T, tol)
    return None if x is None else x.T


def affine_motion_parts(p: PointConfiguration, u: np.ndarray,
                        tol: float | None = None):
    """Pair (m, b) with u_i = m p_i + b for every point, or None."""
    u = np.asarray(u)
    if u.shape != p.points.shape:
        raise ValueError("motion shape does not match configuration")
    ones = linalg.ones_vector(p.count, p.exact).reshape(-1, 1)
    lhs = np.hstack([p.points.T, ones])
    x = linalg.solve(lhs, u.T, tol)
    if x is None:
        return None
    return x[: p.dim].T, x[p.dim]


def p_equivalent(s1: MotionSpace, s2: MotionSpace,
                 tol: float | None = None) -> bool:
    """True when s1 and s2 have equal images modulo the trivial motions."""
    if s1.config != s2.config:
        raise ValueError("motion spaces live on different configurations")
    if s1.dim != s2.dim:
        return False
    triv = trivial_motion_space(s1.config, tol).subspace
    j1 = s1.subspace.join(triv, tol)
    j2 = s2.subspace.join(triv, tol)
    if j1.dim != j2.dim:
        return False
    return j1.join(j2, tol).dim == j1.dim


def restricts_to_isometry(p: PointConfiguration, s: MotionSpace, subset,
                          tol: float | None = None) -> bool:
    """True when every motion in s preserves distances within the subset."""
    ids = sorted(set(subset))
    for i in ids:
        if not 1 <= i <= p.count:
            raise ValueError(f"point index {i} out of range 1..{p.count}")
    if s.config != p:
        raise ValueError("motion space does not belong to this configuration")
    pts = p.points
    for u in s.basis_motions():
        for a, b in combinations(ids, 2):
            du = u[:, a - 1] - u[:, b - 1]
            dp = pts[:, a - 1] - pts[:, b - 1]
            val = du @ dp
            if p.exact:
                if val != 0:
                    return False
            else:
                scale = float(np.linalg.norm(du) * np.linalg.norm(dp))
                if abs(float(val)) > linalg._tol(tol) * max(scale, 1.0):
                    return False
    return True
