"""Dense linear algebra over two scalar backends.

Matrices are plain numpy arrays.  dtype object means the exact backend
(entries are fractions.Fraction, all algorithms are exact elimination);
any float dtype means the float64 backend (rank decisions go through an
SVD with a relative tolerance).  Mixing backends in one call is a bug.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import OnAffineSpanError, SingularMatrixError

# Relative tolerance used by every float64 rank/zero decision.  Callers can
# override per call; exact-backend calls ignore it.
DEFAULT_RANK_TOL = 1e-9


def _tol(tol: float | None) -> float:
    return DEFAULT_RANK_TOL if tol is None else float(tol)


def frac(value) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        # Accept floats only when they carry an exact decimal intent.
        return Fraction(str(value))
    raise TypeError(f"cannot coerce {type(value).__name__} to Fraction")


def exact_matrix(data) -> np.ndarray:
    """Build an object-dtype matrix of Fractions from nested data."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = frac(v)
    return flat.reshape(arr.shape)


def float_matrix(data) -> np.ndarray:
    return np.array(data, dtype=float)


def is_exact(m: np.ndarray) -> bool:
    return np.asarray(m).dtype == object


def zeros(shape, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.zeros(shape)
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    return out


def identity(n: int, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.eye(n)
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def ones_vector(n: int, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.ones(n)
    out = np.empty(n, dtype=object)
    out[:] = Fraction(1)
    return out


def to_float(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=float) if is_exact(m) else np.asarray(m, dtype=float)


def is_zero_matrix(m: np.ndarray, tol: float | None = None, scale: float = 1.0) -> bool:
    m = np.asarray(m)
    if m.size == 0:
        return True
    if is_exact(m):
        return all(v == 0 for v in m.reshape(-1))
    return float(np.abs(m).max()) <= _tol(tol) * max(scale, 1.0)


def _rref_exact(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = Fraction(1) / rows[lead][col]
        if inv != 1:
            rows[lead] = [e * inv for e in rows[lead]]
        for i in range(len(rows)):
            f = rows[i][col]
            if i != lead and f != 0:
                base = rows[lead]
                rows[i] = [a - f * b for a, b in zip(rows[i], base)]
        pivots.append(col)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


def _as_rows(m: np.ndarray) -> list[list[Fraction]]:
    return [[frac(v) for v in row] for row in np.atleast_2d(m)]


def rank(m: np.ndarray, tol: float | None = None) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if is_exact(m):
        _, pivots = _rref_exact(_as_rows(m), m.shape[1])
        return len(pivots)
    s = np.linalg.svd(m.astype(float), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > _tol(tol) * s[0]))


def nullspace_rows(m: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Basis of the right nullspace, one vector per row."""
    m = np.asarray(m)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    n = m.shape[1]
    if is_exact(m):
        red, pivots = _rref_exact(_as_rows(m), n)
        free = [c for c in range(n) if c not in pivots]
        basis = zeros((len(free), n))
        for bi, fc in enumerate(free):
            basis[bi, fc] = Fraction(1)
            for ri, pc in enumerate(pivots):
                basis[bi, pc] = -red[ri][fc]
        return basis
    if m.size == 0:
        return np.eye(n)
    _, s, vh = np.linalg.svd(m.astype(float))
    cutoff = _tol(tol) * (s[0] if s.size else 0.0)
    r = int(np.count_nonzero(s > cutoff)) if s.size else 0
    return vh[r:].copy()


def invert(m: np.ndarray, tol: float | None = None) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"invert needs a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if not is_exact(m):
        if rank(m, tol) < n:
            raise SingularMatrixError("matrix is numerically singular")
        return np.linalg.inv(m.astype(float))
    aug = [row + ident for row, ident in
           zip(_as_rows(m), ([Fraction(int(i == j)) for j in range(n)] for i in range(n)))]
    red, pivots = _rref_exact(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    out = zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = red[i][n + j]
    return out


def solve(a: np.ndarray, b: np.ndarray, tol: float | None = None):
    """One solution of a @ x = b, or None when inconsistent.

    b may be a vector or a matrix of stacked right-hand sides; free
    variables are set to zero.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vector_rhs = b.ndim == 1
    brows = b.reshape(-1, 1) if vector_rhs else b
    if a.shape[0] != brows.shape[0]:
        raise ValueError("solve: row counts differ")
    ncols, nrhs = a.shape[1], brows.shape[1]
    if is_exact(a):
        aug = [ra + rb for ra, rb in zip(_as_rows(a), _as_rows(brows))]
        red, pivots = _rref_exact(aug, ncols + nrhs)
        if any(pc >= ncols for pc in pivots):
            return None
        x = zeros((ncols, nrhs))
        for ri, pc in enumerate(pivots):
            for j in range(nrhs):
                x[pc, j] = red[ri][ncols + j]
        return x[:, 0] if vector_rhs else x
    af = a.astype(float)
    bf = brows.astype(float)
    x, *_ = np.linalg.lstsq(af, bf, rcond=None)
    resid = af @ x - bf
    scale = max(1.0, float(np.abs(af).max()) * max(1.0, float(np.abs(x).max())),
                float(np.abs(bf).max()))
    if float(np.abs(resid).max()) > _tol(tol) * scale * max(af.shape):
        return None
    return x[:, 0] if vector_rhs else x


def diag_vector(b: np.ndarray) -> np.ndarray:
    """Column vector of the diagonal entries of a square matrix."""
    b = np.asarray(b)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError(f"diag_vector needs a square matrix, got shape {b.shape}")
    return np.array([b[i, i] for i in range(b.shape[0])], dtype=b.dtype)


def sherman_morrison_inverse(q: np.ndarray, x: np.ndarray,
                             tol: float | None = None) -> np.ndarray:
    """Inverse of (1 x^T - q^T) computed from q^{-1} by a rank-one update.

    1 is the all-ones column.  Requires q invertible and x off the affine
    span of the columns of q (the update denominator 1 - (q^{-1}x)^T 1
    must not vanish).
    """
    q = np.asarray(q)
    x = np.asarray(x)
    n = q.shape[0]
    if q.ndim != 2 or q.shape[1] != n:
        raise ValueError("sherman_morrison_inverse needs a square q")
    if x.shape != (n,):
        raise ValueError("x must be a vector matching q")
    q_inv = invert(q, tol)
    return _sherman_morrison_from_inverse(q_inv, x, tol)


def _sherman_morrison_from_inverse(q_inv: np.ndarray, x: np.ndarray,
                                   tol: float | None = None) -> np.ndarray:
    n = q_inv.shape[0]
    exact = is_exact(q_inv)
    ones = ones_vector(n, exact)
    qx = q_inv @ x
    denom = (Fraction(1) if exact else 1.0) - qx @ ones
    if exact:
        if denom == 0:
            raise OnAffineSpanError("x lies on the affine span of the columns of q")
    elif abs(float(denom)) <= _tol(tol) * max(1.0, float(np.abs(qx).max())):
        raise OnAffineSpanError("x lies (numerically) on the affine span of q's columns")
    eye = identity(n, exact)
    return -(q_inv.T @ (eye + np.outer(ones, qx) / denom))


class Subspace:
    """A linear subspace of R^n stored as a reduced row basis.

    Exact bases are kept in reduced row echelon form, so equal subspaces
    have identical basis arrays; float bases are orthonormal rows.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: np.ndarray):
        basis = np.asarray(basis)
        if basis.size == 0:
            basis = basis.reshape(0, ambient_dim)
        if basis.ndim != 2 or basis.shape[1] != ambient_dim:
            raise ValueError("basis shape does not match ambient dimension")
        self.ambient_dim = int(ambient_dim)
        self.basis = basis

    @classmethod
    def from_spanning(cls, vectors, ambient_dim: int | None = None,
                      tol: float | None = None) -> "Subspace":
        rows = [np.asarray(v).reshape(-1) for v in vectors]
        if not rows:
            if ambient_dim is None:
                raise ValueError("ambient_dim required for an empty spanning set")
            return cls(ambient_dim, zeros((0, ambient_dim)))
        n = rows[0].size
        if ambient_dim is not None and ambient_dim != n:
            raise ValueError("spanning vectors do not match ambient_dim")
        exact = any(is_exact(r) for r in rows)
        if exact:
            stacked = np.vstack([exact_matrix(r).reshape(1, -1) for r in rows])
            red, pivots = _rref_exact(_as_rows(stacked), n)
            basis = zeros((len(pivots), n))
            for i, row in enumerate(red):
                for j, v in enumerate(row):
                    basis[i, j] = v
            return cls(n, basis)
        stacked = np.vstack([r.astype(float) for r in rows])
        if not stacked.any():
            return cls(n, np.zeros((0, n)))
        _, s, vh = np.linalg.svd(stacked)
        r = int(np.count_nonzero(s > _tol(tol) * s[0])) if s.size and s[0] > 0 else 0
        return cls(n, vh[:r].copy())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    def contains(self, v: np.ndarray, tol: float | None = None) -> bool:
        v = np.asarray(v).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise ValueError("vector does not match ambient dimension")
        if self.dim == 0:
            return is_zero_matrix(v, tol)
        stacked = np.vstack([self.basis, v.reshape(1, -1)])
        return rank(stacked, tol) == self.dim

    def contains_subspace(self, other: "Subspace", tol: float | None = None) -> bool:
        self._check_peer(other)
        if other.dim == 0:
            return True
        stacked = np.vstack([self.basis, other.basis])
        return rank(stacked, tol) == self.dim

    def intersection(self, other: "Subspace", tol: float | None = None) -> "Subspace":
        self._check_peer(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim, zeros((0, self.ambient_dim), self.exact))
        m = np.hstack([self.basis.T, -other.basis.T])
        null = nullspace_rows(m, tol)
        vecs = [coeffs[: self.dim] @ self.basis for coeffs in null]
        return Subspace.from_spanning(vecs, self.ambient_dim, tol) if vecs else \
            Subspace(self.ambient_dim, zeros((0, self.ambient_dim), self.exact))

    def join(self, other: "Subspace", tol: float | None = None) -> "Subspace":
        self._check_peer(other)
        return Subspace.from_spanning(
            list(self.basis) + list(other.basis), self.ambient_dim, tol)

    def equals(self, other: "Subspace", tol: float | None = None) -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        if self.dim == 0:
            return True
        stacked = np.vstack([self.basis, other.basis])
        return rank(stacked, tol) == self.dim

    def _check_peer(self, other: "Subspace") -> None:
        if not isinstance(other, Subspace):
            raise TypeError("expected a Subspace")
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_intersection(a: Subspace, b: Subspace,
                          tol: float | None = None) -> Subspace:
    return a.intersection(b, tol)
