"""Admissible motion subspaces of five points in R^3.

A subspace S of motions is admissible for p when it meets the trivial
motions only in zero and, for almost every pin position x, some nonzero
motion in S extends to a flex of the framework obtained by joining a new
vertex at x to all five points.  The extension through the block
(p1,p4,p5) and the one through (p1,p2,p3) must then agree, so
admissibility is a rank-deficiency condition on the mismatch of the two
pin velocities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (DegenerateConfigError, HypothesisViolatedError,
                     OnAffineSpanError, ParallelSpanError, SingularMatrixError)
from .linalg import Subspace, diag_vector, frac, invert, ones_vector
from .motions import (MotionSpace, PointConfiguration, affine_motion_parts,
                      linear_motion_matrix, p_equivalent, take_points,
                      trivial_motion_space)
from .pins import PinContext, limit_velocity, pin_velocity
from .sampling import (DEFAULT_BOUND, random_exact_vector, random_float_vector,
                       subrng)

# The two pin blocks of a five-point configuration share point 1: one
# keeps points (1,4,5), the other points (1,2,3).  Motions split the same
# way.
BLOCK_145 = (1, 4, 5)
BLOCK_123 = (1, 2, 3)


def _require_five_points(p: PointConfiguration) -> None:
    if p.dim != 3 or p.count != 5:
        raise ValueError(f"need 5 points in R^3, got {p.dim} x {p.count}")


def split_blocks(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(columns 1,4,5; columns 1,2,3) of a 5-column matrix."""
    return take_points(mat, BLOCK_145), take_points(mat, BLOCK_123)


def _pin_sides(p: PointConfiguration) -> tuple[PinContext, PinContext]:
    q, r = split_blocks(p.points)
    try:
        zero = linalg.zeros(q.shape, p.exact)
        return PinContext(q, zero), PinContext(r, zero)
    except SingularMatrixError as exc:
        raise DegenerateConfigError(f"pin block is singular: {exc}") from exc


def pin_mismatch_map(p: PointConfiguration, s: MotionSpace, x: np.ndarray,
                     tol: float | None = None) -> np.ndarray:
    """3 x dim(s) matrix whose column for basis motion u is the difference
    of the two pin velocities of u at x.  A nonzero kernel vector is a
    motion that extends to a flex of the cone at x."""
    _require_five_points(p)
    if s.config != p:
        raise ValueError("motion space does not belong to this configuration")
    side_q, side_r = _pin_sides(p)
    cols = []
    for u in s.basis_motions():
        v, w = split_blocks(u)
        delta = (pin_velocity(side_q.with_motion(v), x, tol)
                 - pin_velocity(side_r.with_motion(w), x, tol))
        cols.append(delta)
    out = np.empty((3, len(cols)), dtype=object if p.exact else float)
    for j, col in enumerate(cols):
        out[:, j] = col
    return out


@dataclass
class AdmissibilityReport:
    candidate_dim: int
    intersects_trivial: bool
    samples_tested: int
    max_mismatch_rank: int
    admissible: bool
    sample_ranks: list = field(default_factory=list)
    witness_failures: list = field(default_factory=list)


def _sample_pin_positions(p: PointConfiguration, samples: int, seed: int,
                          tag: str):
    """Yield up to 10*samples candidate pin positions."""
    for idx in range(10 * samples):
        rng = subrng(seed, tag, idx)
        if p.exact:
            yield random_exact_vector(3, rng)
        else:
            yield random_float_vector(3, rng, float(DEFAULT_BOUND))


def check_admissibility(p: PointConfiguration, s: MotionSpace,
                        samples: int = 20, seed: int = 0,
                        tol: float | None = None) -> AdmissibilityReport:
    """Sampled admissibility test for a motion subspace of five points.

    Condition 1 (trivial intersection) is decided outright; condition 2
    is accepted when the mismatch map is rank-deficient at every valid
    sample position.  Samples on either pin block's affine span are
    skipped without being counted.
    """
    _require_five_points(p)
    if s.dim < 1:
        raise ValueError("candidate subspace must have positive dimension")
    triv = trivial_motion_space(p, tol)
    intersects = s.subspace.intersection(triv.subspace, tol).dim > 0
    tested = 0
    ranks: list = []
    failures: list = []
    for x in _sample_pin_positions(p, samples, seed, "pin-sample"):
        if tested == samples:
            break
        try:
            m = pin_mismatch_map(p, s, x, tol)
        except OnAffineSpanError:
            continue
        tested += 1
        rk = linalg.rank(m, tol)
        ranks.append(rk)
        if rk >= s.dim:
            failures.append(x)
    if tested < samples:
        raise DegenerateConfigError("could not collect enough valid pin samples")
    return AdmissibilityReport(
        candidate_dim=s.dim,
        intersects_trivial=intersects,
        samples_tested=tested,
        max_mismatch_rank=max(ranks),
        admissible=(not intersects) and not failures,
        sample_ranks=ranks,
        witness_failures=failures,
    )


def single_vertex_space(p: PointConfiguration) -> MotionSpace:
    """Motions moving point 1 in the span of e1, e2 and fixing the rest."""
    _require_five_points(p)
    basis = []
    for axis in (0, 1):
        u = linalg.zeros((3, 5), p.exact)
        u[axis, 0] = frac(1) if p.exact else 1.0
        basis.append(u)
    return MotionSpace.from_motions(p, basis)


def proportional_pair_space(p: PointConfiguration, k) -> MotionSpace:
    """Motions with point 2's velocity k times point 1's, both orthogonal
    to the chord p1 - p2, and points 3,4,5 fixed."""
    _require_five_points(p)
    chord = p.point(1) - p.point(2)
    if linalg.is_zero_matrix(chord):
        raise DegenerateConfigError("points 1 and 2 coincide")
    scale = frac(k) if p.exact else float(k)
    plane = linalg.nullspace_rows(chord.reshape(1, 3))
    basis = []
    for direction in plane:
        u = linalg.zeros((3, 5), p.exact)
        u[:, 0] = direction
        u[:, 1] = direction * scale
        basis.append(u)
    return MotionSpace.from_motions(p, basis)


def _stress_gap(p: PointConfiguration, u: np.ndarray,
                sides: tuple[PinContext, PinContext] | None = None) -> np.ndarray:
    """(q^T)^{-1} diag(v^T q) - (r^T)^{-1} diag(w^T r) for one motion."""
    side_q, side_r = sides if sides is not None else _pin_sides(p)
    v, w = split_blocks(np.asarray(u))
    left = side_q.q_inv.T @ diag_vector(v.T @ side_q.q)
    right = side_r.q_inv.T @ diag_vector(w.T @ side_r.q)
    return left - right


def sufficient_check(p: PointConfiguration, s: MotionSpace,
                     tol: float | None = None) -> bool:
    """Sufficient (not necessary) admissibility test: trivial intersection
    zero, every motion linear, and the stress gap vanishing on s."""
    _require_five_points(p)
    triv = trivial_motion_space(p, tol)
    if s.subspace.intersection(triv.subspace, tol).dim > 0:
        return False
    sides = _pin_sides(p)
    for u in s.basis_motions():
        if linear_motion_matrix(p, u, tol) is None:
            return False
        gap = _stress_gap(p, u, sides)
        scale = 1.0 if p.exact else float(np.abs(u.astype(float)).max() or 1.0)
        if not linalg.is_zero_matrix(gap, tol, scale):
            return False
    return True


def stress_matched_linear_space(p: PointConfiguration,
                                tol: float | None = None) -> MotionSpace:
    """Linear motions u = m p whose stress gap vanishes.

    The gap is a linear map on the nine-dimensional space of linear
    motions with rank at most two (its first block component cancels), so
    the result has dimension at least seven and meets the trivial motions
    in the three-dimensional space of skew linear motions.
    """
    _require_five_points(p)
    sides = _pin_sides(p)
    gens = []
    gaps = []
    one = frac(1) if p.exact else 1.0
    for a in range(3):
        for b in range(3):
            m = linalg.zeros((3, 3), p.exact)
            m[a, b] = one
            u = m @ p.points
            gens.append(u)
            gaps.append(_stress_gap(p, u, sides))
    constraint = np.empty((3, 9), dtype=object if p.exact else float)
    for j, gap in enumerate(gaps):
        constraint[:, j] = gap
    coeff_basis = linalg.nullspace_rows(constraint, tol)
    motions = []
    for coeffs in coeff_basis:
        u = linalg.zeros((3, 5), p.exact)
        for c, gen in zip(coeffs, gens):
            u = u + gen * c
        motions.append(u)
    return MotionSpace.from_motions(p, motions, tol)


def construct_admissible_family(p: PointConfiguration, trials: int = 20,
                                seed: int = 0,
                                tol: float | None = None) -> list[MotionSpace]:
    """Sample 2-dimensional admissible subspaces of the stress-matched
    linear motions that meet the trivial motions only in zero."""
    _require_five_points(p)
    space = stress_matched_linear_space(p, tol)
    triv = trivial_motion_space(p, tol).subspace
    basis = space.subspace.basis
    out: list[MotionSpace] = []
    attempt = 0
    limit = 100 * trials
    while len(out) < trials and attempt < limit:
        rng = subrng(seed, "family", attempt)
        attempt += 1
        coeffs = [[frac(rng.randint(-9, 9)) for _ in range(space.dim)]
                  for _ in range(2)]
        if not p.exact:
            coeffs = [[float(c) for c in row] for row in coeffs]
        vecs = [sum((c * b for c, b in zip(row, basis)),
                    linalg.zeros(space.subspace.ambient_dim, p.exact))
                for row in coeffs]
        sub = Subspace.from_spanning(vecs, space.subspace.ambient_dim, tol)
        if sub.dim != 2 or sub.intersection(triv, tol).dim != 0:
            continue
        out.append(MotionSpace(p, sub))
    if len(out) < trials:
        raise DegenerateConfigError("failed to sample enough admissible subspaces")
    return out


def projected_limit_mismatch(p: PointConfiguration, u: np.ndarray,
                             x: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Difference of the two limit velocities of u at direction x,
    projected onto the plane orthogonal to p1 along (q^T)^{-1} 1.

    Closed form: B^T x - c * (x^T B_w x) / s with B = w r^{-1} - v q^{-1},
    B_w = (w r^{-1})^T, c the gap of the two inverse-transpose row sums,
    and s = (r^{-1} x)^T 1.
    """
    _require_five_points(p)
    u = np.asarray(u)
    if u.shape != (3, 5):
        raise ValueError("motion must be 3 x 5")
    side_q, side_r = _pin_sides(p)
    v, w = split_blocks(u)
    ones = ones_vector(3, p.exact)
    c = side_r.q_inv.T @ ones - side_q.q_inv.T @ ones
    w_r = w @ side_r.q_inv
    bmat = (w_r - v @ side_q.q_inv).T
    s = (side_r.q_inv @ x) @ ones
    if p.exact:
        if s == 0:
            raise ParallelSpanError("x is parallel to the affine span of the r block")
    elif abs(float(s)) <= linalg._tol(tol):
        raise ParallelSpanError("x is (numerically) parallel to the affine span")
    quad = x @ (w_r.T @ x)
    return bmat @ x - c * (quad / s)


def one_dim_space_inadmissible(p: PointConfiguration, u: np.ndarray,
                               samples: int = 20, seed: int = 0,
                               tol: float | None = None) -> bool:
    """Confirm that the line spanned by a nontrivial motion u of n+1
    points in R^n is inadmissible: the two pin extensions disagree at
    every sampled position.

    The pin blocks here drop point n (respectively point n+1).  Returns
    False as soon as one sample extends; trivial u is rejected.
    """
    n = p.dim
    if p.count != n + 1:
        raise ValueError(f"need {n + 1} points in R^{n}, got {p.count}")
    u = np.asarray(u)
    if u.shape != p.points.shape:
        raise ValueError("motion shape does not match configuration")
    if trivial_motion_space(p, tol).contains(u, tol):
        raise ValueError("u is a trivial motion; the test needs a nontrivial one")
    ids_q = tuple(list(range(1, n)) + [n + 1])
    ids_r = tuple(range(1, n + 1))
    try:
        side_q = PinContext(take_points(p.points, ids_q),
                            take_points(u, ids_q))
        side_r = PinContext(take_points(p.points, ids_r),
                            take_points(u, ids_r))
    except SingularMatrixError as exc:
        raise DegenerateConfigError(f"pin block is singular: {exc}") from exc
    tested = 0
    for idx in range(10 * samples):
        if tested == samples:
            break
        rng = subrng(seed, "one-dim", idx)
        x = (random_exact_vector(n, rng) if p.exact
             else random_float_vector(n, rng, float(DEFAULT_BOUND)))
        try:
            delta = pin_velocity(side_q, x, tol) - pin_velocity(side_r, x, tol)
        except OnAffineSpanError:
            continue
        tested += 1
        scale = 1.0 if p.exact else float(np.abs(delta.astype(float)).max() or 1.0)
        if linalg.is_zero_matrix(delta, tol, scale):
            return False
    if tested < samples:
        raise DegenerateConfigError("could not collect enough valid pin samples")
    return True


class ClassificationKind(Enum):
    ALL_AFFINE = "all-affine"
    RANK_ONE_FORM = "rank-one-form"
    ANOMALY = "anomaly"


@dataclass
class Classification:
    kind: ClassificationKind
    plane: Subspace | None
    weights: np.ndarray | None
    details: str

    @property
    def is_anomaly(self) -> bool:
        return self.kind is ClassificationKind.ANOMALY


def _normalize_weights(z: np.ndarray) -> np.ndarray:
    """Canonical representative of z modulo all-ones shifts and scaling.

    Shifting z by a multiple of the all-ones vector only changes the
    reconstruction by translations, so the most frequent entry is zeroed
    out and the first nonzero entry scaled to one.
    """
    values = list(z)
    best = max(values, key=lambda v: (values.count(v), -values.index(v)))
    shifted = np.array([v - best for v in values], dtype=object)
    for v in shifted:
        if v != 0:
            return shifted * (Fraction(1) / Fraction(v))
    return shifted


def _cross3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(3, dtype=a.dtype)
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]
    return out


def _sym_solve_rows(k_vec: np.ndarray):
    """Rows of the linear system Sym(l k^T) = given, unknown l in R^3."""
    rows = []
    index = []
    for a in range(3):
        for b in range(a, 3):
            coeff = [Fraction(0)] * 3
            half = Fraction(1, 2) if isinstance(k_vec[0], Fraction) else 0.5
            if a == b:
                coeff[a] = k_vec[a]
            else:
                coeff[a] = k_vec[b] * half
                coeff[b] = k_vec[a] * half
            rows.append(coeff)
            index.append((a, b))
    return rows, index


def classify_admissible(p: PointConfiguration, s: MotionSpace,
                        tol: float | None = None) -> Classification:
    """Normal form of an admissible 2-dimensional subspace.

    Either every motion in s is affine, or s is p-equivalent to a space
    {outer(direction, weights) : direction in plane} for a 2-dimensional
    plane in R^3 and a per-point weight vector.  Any failure of the
    reconstruction is reported loudly as an anomaly, never silently.
    Requires both pin blocks invertible and their inverse-transpose row
    sums distinct.
    """
    _require_five_points(p)
    if s.config != p:
        raise ValueError("motion space does not belong to this configuration")
    if s.dim != 2:
        raise ValueError("classification expects a 2-dimensional subspace")
    q, r = split_blocks(p.points)
    try:
        q_inv = invert(q, tol)
        r_inv = invert(r, tol)
    except SingularMatrixError as exc:
        raise HypothesisViolatedError(f"pin block is singular: {exc}") from exc
    exact = p.exact
    ones = ones_vector(3, exact)
    c = r_inv.T @ ones - q_inv.T @ ones
    scale_c = 1.0 if exact else float(np.abs(c.astype(float)).max() or 1.0)
    if linalg.is_zero_matrix(c, tol, 1.0 if exact else scale_c):
        raise HypothesisViolatedError(
            "the two pin blocks have equal inverse-transpose row sums "
            "(coplanar configuration)")

    basis = s.basis_motions()
    if all(affine_motion_parts(p, u, tol) is not None for u in basis):
        return Classification(ClassificationKind.ALL_AFFINE, None, None,
                              "every motion in the subspace is affine")

    q1 = q[:, 0]
    d = _cross3(q1, c)
    if linalg.is_zero_matrix(d, tol):
        raise HypothesisViolatedError("first point is zero or aligned with the "
                                      "row-sum gap; translate the configuration")
    cd = np.empty((3, 2), dtype=object if exact else float)
    cd[:, 0] = c
    cd[:, 1] = d

    k_vecs = []
    w_shifted = []
    for u in basis:
        v, w = split_blocks(u)
        a_t = (w @ r_inv - v @ q_inv).T
        coeffs = linalg.solve(cd, a_t, tol)
        if coeffs is None:
            return Classification(
                ClassificationKind.ANOMALY, None, None,
                "mismatch columns leave the plane orthogonal to p1")
        shift = -coeffs[0]
        k_vecs.append(np.array(list(coeffs[1]), dtype=object if exact else float))
        w_shifted.append(w + np.outer(shift, ones))

    plane = Subspace.from_spanning(k_vecs, 3, tol)
    if plane.dim != 2:
        return Classification(
            ClassificationKind.ANOMALY, None, None,
            "direction vectors of the rank-one normal form are dependent")

    rows: list[list] = []
    rhs: list = []
    for k_vec, w_t in zip(k_vecs, w_shifted):
        target = (w_t @ r_inv).T
        srows, index = _sym_solve_rows(k_vec)
        for row, (a, b) in zip(srows, index):
            rows.append(row)
            half = frac("1/2") if exact else 0.5
            value = target[a, b] if a == b else (target[a, b] + target[b, a]) * half
            rhs.append(value)
    lhs = np.array(rows, dtype=object if exact else float)
    lvec = linalg.solve(lhs, np.array(rhs, dtype=object if exact else float), tol)
    if lvec is None:
        return Classification(
            ClassificationKind.ANOMALY, None, None,
            "no common linear part solves the symmetric-part equations")

    weights = np.empty(5, dtype=object if exact else float)
    front = r.T @ lvec
    rear = q.T @ (lvec - d)
    weights[0] = front[0]
    weights[1] = front[1]
    weights[2] = front[2]
    weights[3] = rear[1]
    weights[4] = rear[2]
    seam = front[0] - rear[0]
    if exact:
        seam_zero = seam == 0
    else:
        seam_zero = abs(float(seam)) <= linalg._tol(tol) * max(
            1.0, abs(float(front[0])), abs(float(rear[0])))
    if not seam_zero:
        return Classification(
            ClassificationKind.ANOMALY, None, None,
            "weight consistency across the shared point failed")

    if exact:
        weights = _normalize_weights(weights)
    recon = MotionSpace.from_motions(
        p, [np.outer(direction, weights) for direction in plane.basis], tol)
    if recon.dim != 2 or not p_equivalent(s, recon, tol):
        return Classification(
            ClassificationKind.ANOMALY, plane, weights,
            "reconstructed rank-one space is not p-equivalent to the input")
    return Classification(
        ClassificationKind.RANK_ONE_FORM, plane, weights,
        "p-equivalent to directions drawn from a fixed plane scaled by "
        "per-point weights")
