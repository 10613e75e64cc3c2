"""Column-stochastic link matrices and the damped teleportation operator.

For a graph with adjacency counts A_ij (link j -> i), the link matrix has
S_ij = A_ij / outdeg(j) for columns with outlinks; columns of nodes without
outlinks ("dangling") are uniform 1/N and kept implicit so that applying the
operator stays O(edges + N).  The damped operator with parameter alpha sends
v to ``alpha*S v + (1-alpha)/N * sum(v) * ones``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import sparse

from .netcore import DirectedGraph

if TYPE_CHECKING:
    from .ranking import RankVector

__all__ = [
    "DENSE_LIMIT_DEFAULT",
    "DEFAULT_ALPHA",
    "SizeLimitError",
    "StochasticMatrix",
    "GoogleMatrix",
    "build_stochastic",
    "materialize_dense",
    "truncate_by_rank",
    "dense_to_csv",
    "sparse_to_csv",
]

# Beyond a few times 10^4 nodes, dense storage and full diagonalization stop
# being practical; callers must raise the limit explicitly to go higher.
DENSE_LIMIT_DEFAULT = 30000
DEFAULT_ALPHA = 0.85

_COLSUM_TOL = 1e-12


class SizeLimitError(ValueError):
    """Matrix dimension exceeds the configured dense limit."""


class StochasticMatrix:
    """Sparse column-stochastic matrix with implicit uniform dangling columns.

    ``matrix`` holds only the explicit (non-dangling) columns; ``dangling``
    is a boolean mask of columns that are implicitly 1/N in every entry.
    """

    def __init__(self, matrix, dangling):
        matrix = sparse.csc_matrix(matrix)
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError("stochastic matrix must be square")
        n = matrix.shape[0]
        dangling = np.asarray(dangling, dtype=bool).reshape(n)
        if matrix.nnz and matrix.data.min() < 0:
            raise ValueError("negative entries in stochastic matrix")
        colsums = np.asarray(matrix.sum(axis=0)).ravel()
        if np.any(colsums[dangling] != 0.0):
            raise ValueError("dangling columns must store no explicit entries")
        bad = ~dangling & (np.abs(colsums - 1.0) > _COLSUM_TOL)
        if np.any(bad):
            j = int(np.nonzero(bad)[0][0])
            raise ValueError(
                f"column {j} sums to {colsums[j]!r}, expected 1 within {_COLSUM_TOL}"
            )
        matrix.sort_indices()
        self.matrix = matrix
        self.dangling = dangling
        self.dangling.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_dangling(self) -> int:
        return int(self.dangling.sum())


def build_stochastic(graph: DirectedGraph) -> StochasticMatrix:
    """Normalize each column of the adjacency counts by its out-degree.

    Parallel edges contribute their multiplicity to A_ij.  Columns are
    renormalized by their accumulated float sum so every explicit column sums
    to 1 to machine precision.
    """
    n = graph.n_nodes
    if n < 1:
        raise ValueError("graph must have at least one node")
    out_deg = graph.out_degrees()
    dangling = out_deg == 0
    if graph.n_edges:
        src = graph.edges[:, 0]
        dst = graph.edges[:, 1]
        data = 1.0 / out_deg[src]
        mat = sparse.coo_matrix((data, (dst, src)), shape=(n, n)).tocsc()
        # pairwise float accumulation can leave sums off by a few ulp
        colsums = np.asarray(mat.sum(axis=0)).ravel()
        scale = np.ones(n)
        nz = colsums > 0
        scale[nz] = 1.0 / colsums[nz]
        mat = mat @ sparse.diags(scale)
    else:
        mat = sparse.csc_matrix((n, n))
    return StochasticMatrix(mat, dangling)


@dataclass(frozen=True)
class GoogleMatrix:
    """Damped link operator ``alpha * S + (1-alpha) * uniform teleportation``.

    Immutable; acts on length-n vectors via :meth:`apply` without ever
    materializing the rank-one teleportation part.
    """

    s: StochasticMatrix
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def from_graph(cls, graph: DirectedGraph, alpha: float = DEFAULT_ALPHA) -> "GoogleMatrix":
        return cls(build_stochastic(graph), alpha)

    @property
    def n(self) -> int:
        return self.s.n

    def apply(self, v) -> np.ndarray:
        """Matrix-vector product in O(edges + N).

        Dangling columns contribute ``alpha/N * sum(v over dangling)`` to every
        entry and the teleportation part ``(1-alpha)/N * sum(v)``; the vector
        sum is preserved.
        """
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n,):
            raise ValueError(f"vector has shape {v.shape}, expected ({self.n},)")
        dangling_mass = float(v[self.s.dangling].sum())
        shift = (self.alpha * dangling_mass + (1.0 - self.alpha) * float(v.sum())) / self.n
        return self.alpha * (self.s.matrix @ v) + shift

    def to_dense(self, dense_limit: int = DENSE_LIMIT_DEFAULT) -> np.ndarray:
        """Materialize the full N x N matrix (guarded by ``dense_limit``)."""
        if self.n > dense_limit:
            raise SizeLimitError(
                f"matrix size {self.n} exceeds dense limit {dense_limit}; "
                "truncate by rank to diagonalize a smaller operator"
            )
        dense = (self.alpha * self.s.matrix).toarray()
        if self.s.n_dangling:
            dense[:, self.s.dangling] += self.alpha / self.n
        dense += (1.0 - self.alpha) / self.n
        return dense


def materialize_dense(g: GoogleMatrix, dense_limit: int = DENSE_LIMIT_DEFAULT) -> np.ndarray:
    return g.to_dense(dense_limit)


def truncate_by_rank(
    g: GoogleMatrix, rank: "RankVector", m: int
) -> tuple[GoogleMatrix, np.ndarray]:
    """Restrict the operator to the ``m`` nodes of largest rank score.

    Ties break toward the lower node id.  The restricted link matrix has each
    surviving column renormalized to sum 1; columns left with no entries
    (including previously dangling ones) become dangling columns of the m-node
    operator.  Returns the truncated operator and the kept node ids in
    ascending order.
    """
    n = g.n
    if not 1 <= m <= n:
        raise ValueError(f"m must lie in [1, {n}], got {m}")
    kept = np.sort(np.asarray(rank.order[:m], dtype=np.int64))
    sub = g.s.matrix[kept, :][:, kept].tocsc()
    colsums = np.asarray(sub.sum(axis=0)).ravel()
    new_dangling = colsums == 0.0
    scale = np.ones(m)
    scale[~new_dangling] = 1.0 / colsums[~new_dangling]
    sub = (sub @ sparse.diags(scale)).tocsc()
    return GoogleMatrix(StochasticMatrix(sub, new_dangling), g.alpha), kept


def dense_to_csv(matrix: np.ndarray, target, header_comment=None) -> None:
    """Row-major CSV at full float precision, no header row."""
    matrix = np.asarray(matrix)
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="\n") if own else target
    try:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        for row in matrix:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    finally:
        if own:
            fh.close()


def sparse_to_csv(s: StochasticMatrix, target, header_comment=None) -> None:
    """Explicit entries as ``j,i,value`` triplets, column-major order.

    Dangling columns have no rows here; they are implicitly uniform.
    """
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="\n") if own else target
    try:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("j,i,value\n")
        mat = s.matrix
        for j in range(s.n):
            start, stop = mat.indptr[j], mat.indptr[j + 1]
            for i, val in zip(mat.indices[start:stop], mat.data[start:stop]):
                fh.write(f"{j},{i},{val:.17g}\n")
    finally:
        if own:
            fh.close()
