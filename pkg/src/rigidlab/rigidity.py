"""Bar-joint frameworks: rigidity matrices, flexes, generic rank oracles.

Generic properties are decided by exact arithmetic at random integer
configurations: a rigidity witness at one sample certifies generic
rigidity, while negative answers are only reported after two independent
samples agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import BadSupportError
from .linalg import frac
from .motions import MotionSpace, PointConfiguration, trivial_motion_space
from .sampling import random_config, subrng


def normalize_edge(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"loop edge ({i},{i}) is not allowed")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..vertex_count."""

    vertex_count: int
    edges: frozenset

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        for i, j in self.edges:
            if not (1 <= i < j <= self.vertex_count):
                raise ValueError(f"edge ({i},{j}) out of range or unordered")

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> "Graph":
        return cls(vertex_count, frozenset(normalize_edge(i, j) for i, j in edges))

    @classmethod
    def complete(cls, vertex_count: int) -> "Graph":
        return cls(vertex_count,
                   frozenset(combinations(range(1, vertex_count + 1), 2)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return normalize_edge(i, j) in self.edges

    def with_edge(self, i: int, j: int) -> "Graph":
        return Graph(self.vertex_count, self.edges | {normalize_edge(i, j)})

    def without_edges(self, pairs) -> "Graph":
        drop = {normalize_edge(i, j) for i, j in pairs}
        missing = drop - self.edges
        if missing:
            raise ValueError(f"edges not present: {sorted(missing)}")
        return Graph(self.vertex_count, self.edges - drop)

    def edges_within(self, vertices) -> set[tuple[int, int]]:
        vs = set(vertices)
        return {e for e in self.edges if e[0] in vs and e[1] in vs}


def double_banana() -> Graph:
    """Two complete graphs on five vertices, each missing the shared
    hinge edge {1,2}; the classic flexible circuit in three dimensions."""
    edges = set()
    for banana in ({1, 2, 3, 4, 5}, {1, 2, 6, 7, 8}):
        edges |= {e for e in combinations(sorted(banana), 2) if e != (1, 2)}
    return Graph.from_edges(8, edges)


@dataclass
class Framework:
    graph: Graph
    config: PointConfiguration

    def __post_init__(self):
        if self.graph.vertex_count != self.config.count:
            raise ValueError("graph and configuration disagree on point count")


@dataclass(frozen=True)
class RigidityReport:
    flex_dim: int
    trivial_dim: int
    is_isostatic: bool

    @property
    def is_rigid(self) -> bool:
        return self.flex_dim == self.trivial_dim


def _edge_row(pts: np.ndarray, i: int, j: int, exact: bool) -> list:
    """Row of the rigidity matrix for edge (i, j), 1-based, flattened
    column-major over points."""
    n, k = pts.shape
    row = [frac(0) if exact else 0.0] * (n * k)
    diff = pts[:, i - 1] - pts[:, j - 1]
    for c in range(n):
        row[n * (i - 1) + c] = diff[c]
        row[n * (j - 1) + c] = -diff[c]
    return row


def rigidity_matrix(fw: Framework) -> np.ndarray:
    """One row per edge: (p_i - p_j)^T in block i, the negative in block j."""
    p = fw.config
    rows = [_edge_row(p.points, i, j, p.exact) for i, j in fw.graph.sorted_edges()]
    if not rows:
        return linalg.zeros((0, p.dim * p.count), p.exact)
    out = np.empty((len(rows), p.dim * p.count), dtype=object if p.exact else float)
    for r, row in enumerate(rows):
        out[r, :] = row
    return out


def flex_space(fw: Framework, tol: float | None = None) -> MotionSpace:
    """Nullspace of the rigidity matrix; always contains the trivial motions."""
    basis = linalg.nullspace_rows(rigidity_matrix(fw), tol)
    sub = linalg.Subspace(fw.config.dim * fw.config.count, basis)
    return MotionSpace(fw.config, sub)


def analyze(fw: Framework, tol: float | None = None) -> RigidityReport:
    """Flex dimension, trivial dimension, and isostaticity of a framework.

    Isostatic means rigid with every edge load-bearing; each of the
    edge_count single-edge deletions is tested outright.
    """
    p = fw.config
    total = p.dim * p.count
    r = rigidity_matrix(fw)
    base_rank = linalg.rank(r, tol)
    flex_dim = total - base_rank
    trivial_dim = trivial_motion_space(p, tol).dim
    isostatic = flex_dim == trivial_dim
    if isostatic:
        for idx in range(r.shape[0]):
            keep = [k for k in range(r.shape[0]) if k != idx]
            if linalg.rank(r[keep], tol) != base_rank - 1:
                isostatic = False
                break
    return RigidityReport(flex_dim=flex_dim, trivial_dim=trivial_dim,
                          is_isostatic=isostatic)


def is_generically_rigid(g: Graph, n: int, seed: int = 0) -> bool:
    """Rigidity of g in R^n at generic configurations.

    One rigid witness decides; "not rigid" needs both samples to agree.
    """
    for idx in range(2):
        p = random_config(n, g.vertex_count, subrng(seed, "generic-rigid", idx))
        if analyze(Framework(g, p)).is_rigid:
            return True
    return False


def _implied_pairs_at(g: Graph, p: PointConfiguration, candidates) -> set:
    """Pairs whose edge row already lies in the rigidity row space at p."""
    pts = p.points
    rows = [_edge_row(pts, i, j, True) for i, j in g.sorted_edges()]
    ncols = p.dim * p.count
    red, pivots = linalg._rref_exact(rows, ncols) if rows else ([], [])
    out = set()
    for pair in candidates:
        if pair in g.edges:
            out.add(pair)
            continue
        row = _edge_row(pts, pair[0], pair[1], True)
        for ri, pc in enumerate(pivots):
            f = row[pc]
            if f != 0:
                base = red[ri]
                row = [a - f * b for a, b in zip(row, base)]
        if all(v == 0 for v in row):
            out.add(pair)
    return out


def implied_pairs(g: Graph, candidates, n: int, seed: int = 0) -> set:
    """Subset of candidate pairs implied by g at generic configurations."""
    cands = [normalize_edge(i, j) for i, j in candidates]
    agreed = None
    for idx in range(2):
        p = random_config(n, g.vertex_count, subrng(seed, "implied", idx))
        found = _implied_pairs_at(g, p, cands)
        agreed = found if agreed is None else agreed & found
    return agreed if agreed is not None else set()


def is_implied_edge(g: Graph, i: int, j: int, n: int, seed: int = 0) -> bool:
    """True when adding edge (i, j) does not raise the generic rank of g."""
    pair = normalize_edge(i, j)
    for v in pair:
        if not 1 <= v <= g.vertex_count:
            raise ValueError(f"vertex {v} out of range 1..{g.vertex_count}")
    return pair in implied_pairs(g, [pair], n, seed)


def find_implied_k4(g: Graph, x, n: int, seed: int = 0):
    """First 4-subset of x (lexicographic) on which all six pairs are
    implied edges of g, or None."""
    xs = sorted(set(x))
    for v in xs:
        if not 1 <= v <= g.vertex_count:
            raise ValueError(f"vertex {v} out of range 1..{g.vertex_count}")
    if len(xs) < 4:
        return None
    implied = implied_pairs(g, combinations(xs, 2), n, seed)
    for quad in combinations(xs, 4):
        if all(pair in implied for pair in combinations(quad, 2)):
            return quad
    return None


def henneberg_extend(g: Graph, x, f, n: int) -> Graph:
    """Delete the edge set f inside the support x, then add one new vertex
    adjacent to every vertex of x.  Requires |x| = n + |f| and f inside
    the edges spanned by x."""
    xs = sorted(set(x))
    for v in xs:
        if not 1 <= v <= g.vertex_count:
            raise BadSupportError(f"support vertex {v} out of range")
    fs = {normalize_edge(i, j) for i, j in f}
    if len(xs) != n + len(fs):
        raise BadSupportError(
            f"support size {len(xs)} != n + |f| = {n + len(fs)}")
    within = g.edges_within(xs)
    if not fs <= within:
        raise BadSupportError("deleted edges must lie inside the support")
    new = g.vertex_count + 1
    edges = (g.edges - fs) | {(v, new) for v in xs}
    return Graph(new, frozenset(edges))
