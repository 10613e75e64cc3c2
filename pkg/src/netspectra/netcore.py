"""Directed graphs: edge-list ingestion, preprocessing filters, degree
statistics, and degree-preserving edge rewiring.

Node ids are dense integers ``0 .. n_nodes-1``.  The edge-list text format is
one ``src dst`` pair per line, ``#`` comment lines ignored, with an optional
``# nodes=N`` header fixing the node count (otherwise ``max id + 1`` is used).
"""

from __future__ import annotations

import io
import random
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DirectedGraph",
    "DegreeDistribution",
    "EdgeListParseError",
    "NodeIdError",
    "EmptyGraphError",
    "FitError",
    "load_edge_list",
    "save_edge_list",
    "filter_min_outdegree",
    "maslov_randomize",
    "degree_distribution",
    "degree_distribution_to_csv",
    "fit_loglog_slope",
    "reciprocity",
]

_HEADER_RE = re.compile(r"^#\s*nodes\s*=\s*(\d+)\s*$")


class EdgeListParseError(ValueError):
    """Malformed edge-list line (reports the 1-based line number)."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class NodeIdError(ValueError):
    """Node id outside the valid range ``[0, n_nodes)``."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class EmptyGraphError(ValueError):
    """An operation produced or received a graph with no nodes."""


class FitError(ValueError):
    """Not enough usable points for a log-log least-squares fit."""


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Immutable directed graph with an ordered edge list.

    Parameters
    ----------
    n_nodes : int
        Number of nodes; ids run from 0 to ``n_nodes - 1``.
    edges : array_like of shape (E, 2)
        Ordered ``(src, dst)`` pairs.  Duplicate pairs are only legal when
        ``multi_edges_allowed`` is set; the adjacency count of a pair is then
        its multiplicity.
    multi_edges_allowed : bool
        Whether parallel edges are permitted.
    node_labels : tuple of str, optional
        Opaque per-node labels (e.g. URLs), length ``n_nodes``.
    """

    n_nodes: int
    edges: np.ndarray
    multi_edges_allowed: bool = False
    node_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2).copy()
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        if self.n_nodes < 0:
            raise ValueError("n_nodes must be nonnegative")
        if edges.size:
            if edges.min() < 0:
                raise NodeIdError("negative node id")
            if edges.max() >= self.n_nodes:
                raise NodeIdError(
                    f"node id {edges.max()} out of range for n_nodes={self.n_nodes}"
                )
        if not self.multi_edges_allowed and len(edges) > 1:
            keys = edges[:, 0] * np.int64(self.n_nodes) + edges[:, 1]
            if np.unique(keys).size != keys.size:
                raise ValueError(
                    "duplicate edges present but multi_edges_allowed is False"
                )
        if self.node_labels is not None and len(self.node_labels) != self.n_nodes:
            raise ValueError("node_labels length must equal n_nodes")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def out_degrees(self) -> np.ndarray:
        """Out-degree per node, counting edge multiplicity."""
        if self.n_nodes == 0:
            return np.zeros(0, dtype=np.int64)
        return np.bincount(self.edges[:, 0], minlength=self.n_nodes)

    def in_degrees(self) -> np.ndarray:
        """In-degree per node, counting edge multiplicity."""
        if self.n_nodes == 0:
            return np.zeros(0, dtype=np.int64)
        return np.bincount(self.edges[:, 1], minlength=self.n_nodes)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(s), int(t)) for s, t in self.edges}

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and self.multi_edges_allowed == other.multi_edges_allowed
            and np.array_equal(self.edges, other.edges)
            and self.node_labels == other.node_labels
        )


@dataclass(frozen=True)
class DegreeDistribution:
    """Degree statistics in one direction.

    ``counts`` maps every observed degree k to the number of nodes with that
    degree; ``cumulative`` maps k to the fraction of nodes with degree >= k,
    so it is non-increasing and equals 1 at the smallest observed degree.
    ``mean_degree`` is edges / nodes (identical for both directions).
    """

    direction: str
    counts: dict[int, int]
    cumulative: dict[int, float]
    mean_degree: float
    n_nodes: int = 0


def _open_source(source):
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data)
    return open(source, "r", encoding="utf-8")


def load_edge_list(
    source,
    *,
    index_base: int = 0,
    dedupe: bool = True,
    allow_self_loops: bool = True,
) -> DirectedGraph:
    """Read a directed graph from edge-list text.

    Parameters
    ----------
    source : path or readable file object
        Text (or UTF-8 bytes) with one ``src dst`` pair per line.  Lines
        starting with ``#`` are comments; a ``# nodes=N`` line fixes the node
        count.
    index_base : {0, 1}
        Subtracted from every id on input (use 1 for one-based files).
    dedupe : bool
        Collapse repeated ``(src, dst)`` pairs, keeping first occurrence
        order.  When False the multiset is preserved and the result allows
        parallel edges.
    allow_self_loops : bool
        When False, ``u u`` edges are silently dropped.

    Raises
    ------
    EdgeListParseError
        On a line that is not two integer tokens.
    NodeIdError
        On a negative id after the base shift, or an id at or above a
        declared ``# nodes=N`` count.
    """
    if index_base not in (0, 1):
        raise ValueError("index_base must be 0 or 1")
    declared_n = None
    pairs: list[tuple[int, int]] = []
    with _open_source(source) as stream:
        for line_no, raw in enumerate(stream, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = _HEADER_RE.match(line)
                if m:
                    declared_n = int(m.group(1))
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListParseError(
                    f"expected two whitespace-separated integers, got {line!r}",
                    line_no,
                )
            try:
                src, dst = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(f"non-integer token in {line!r}", line_no)
            src -= index_base
            dst -= index_base
            if src < 0 or dst < 0:
                raise NodeIdError("negative node id after base shift", line_no)
            if src == dst and not allow_self_loops:
                continue
            pairs.append((src, dst))

    if dedupe:
        pairs = list(dict.fromkeys(pairs))
    max_id = max((max(s, t) for s, t in pairs), default=-1)
    n_nodes = declared_n if declared_n is not None else max_id + 1
    if max_id >= n_nodes:
        raise NodeIdError(f"node id {max_id} exceeds declared nodes={n_nodes}")
    return DirectedGraph(
        n_nodes=n_nodes,
        edges=np.array(pairs, dtype=np.int64).reshape(-1, 2),
        multi_edges_allowed=not dedupe,
    )


def save_edge_list(graph: DirectedGraph, target, colors=None) -> None:
    """Write the canonical edge-list form: ``# nodes=N`` header, optional
    ``# color <node> <color>`` lines, then one ``src dst`` line per edge in
    stored order.  Loading and re-saving a canonical file is byte-identical.
    """
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="\n") if own else target
    try:
        fh.write(f"# nodes={graph.n_nodes}\n")
        if colors is not None:
            colors = np.asarray(colors)
            if len(colors) != graph.n_nodes:
                raise ValueError("colors length must equal n_nodes")
            for node, col in enumerate(colors):
                fh.write(f"# color {node} {int(col)}\n")
        for src, dst in graph.edges:
            fh.write(f"{src} {dst}\n")
    finally:
        if own:
            fh.close()


def filter_min_outdegree(graph: DirectedGraph) -> tuple[DirectedGraph, dict[int, int]]:
    """Drop nodes with zero out-degree, compacting the surviving ids.

    A single pass only: nodes whose out-links all pointed at dropped nodes
    keep their (now dangling) status in the result rather than being removed
    in turn.  Returns the filtered graph and the old-id -> new-id mapping.

    Raises
    ------
    EmptyGraphError
        If no node has an out-link.
    """
    out_deg = graph.out_degrees()
    keep = out_deg > 0
    n_new = int(keep.sum())
    if n_new == 0:
        raise EmptyGraphError("every node has out-degree zero")
    new_id = -np.ones(graph.n_nodes, dtype=np.int64)
    new_id[keep] = np.arange(n_new)
    edges = graph.edges
    mask = keep[edges[:, 0]] & keep[edges[:, 1]]
    remapped = new_id[edges[mask]]
    labels = None
    if graph.node_labels is not None:
        labels = tuple(
            lbl for lbl, k in zip(graph.node_labels, keep) if k
        )
    mapping = {int(old): int(new_id[old]) for old in np.nonzero(keep)[0]}
    return (
        DirectedGraph(
            n_nodes=n_new,
            edges=remapped,
            multi_edges_allowed=graph.multi_edges_allowed,
            node_labels=labels,
        ),
        mapping,
    )


def maslov_randomize(
    graph: DirectedGraph,
    n_swaps: int | None = None,
    rng_seed: int = 0,
    allow_self_loops: bool = True,
) -> DirectedGraph:
    """Rewire by repeatedly swapping the sources of two random edges.

    Each attempt picks two distinct edges (a,b) and (c,d) uniformly and
    replaces them with (c,b) and (a,d), skipping the attempt if that would
    duplicate an existing edge (or create a self-loop when
    ``allow_self_loops`` is False).  In- and out-degree of every node are
    preserved exactly.  ``n_swaps`` counts attempts, not successful swaps,
    and defaults to ``10 * n_edges``.
    """
    if graph.multi_edges_allowed:
        raise ValueError("rewiring requires a simple graph (no parallel edges)")
    n_edges = graph.n_edges
    if n_edges < 2:
        raise ValueError("need at least two edges to swap")
    if n_swaps is None:
        n_swaps = 10 * n_edges
    rng = random.Random(rng_seed)
    edges = [(int(s), int(t)) for s, t in graph.edges]
    present = set(edges)
    for _ in range(n_swaps):
        i = rng.randrange(n_edges)
        j = rng.randrange(n_edges)
        while j == i:
            j = rng.randrange(n_edges)
        a, b = edges[i]
        c, d = edges[j]
        e1 = (c, b)
        e2 = (a, d)
        if not allow_self_loops and (c == b or a == d):
            continue
        present.discard((a, b))
        present.discard((c, d))
        if e1 in present or e2 in present or e1 == e2:
            present.add((a, b))
            present.add((c, d))
            continue
        edges[i] = e1
        edges[j] = e2
        present.add(e1)
        present.add(e2)
    return DirectedGraph(
        n_nodes=graph.n_nodes,
        edges=np.array(edges, dtype=np.int64),
        multi_edges_allowed=False,
        node_labels=graph.node_labels,
    )


def degree_distribution(graph: DirectedGraph, direction: str) -> DegreeDistribution:
    """Exact degree counts plus the cumulative fraction P_c(k) of nodes with
    degree >= k, for ``direction`` 'in' or 'out'."""
    if direction == "in":
        deg = graph.in_degrees()
    elif direction == "out":
        deg = graph.out_degrees()
    else:
        raise ValueError("direction must be 'in' or 'out'")
    if graph.n_nodes == 0:
        raise EmptyGraphError("degree distribution of an empty graph")
    binned = np.bincount(deg)
    observed = np.nonzero(binned)[0]
    counts = {int(k): int(binned[k]) for k in observed}
    # nodes with degree >= k, summed from the tail
    tail = np.cumsum(binned[::-1])[::-1]
    cumulative = {int(k): float(tail[k] / graph.n_nodes) for k in observed}
    return DegreeDistribution(
        direction=direction,
        counts=counts,
        cumulative=cumulative,
        mean_degree=graph.n_edges / graph.n_nodes,
        n_nodes=graph.n_nodes,
    )


def degree_distribution_to_csv(dist: DegreeDistribution, target, header_comment=None) -> None:
    """Write ``k,count,cumulative_fraction`` rows sorted by degree."""
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="\n") if own else target
    try:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("k,count,cumulative_fraction\n")
        for k in sorted(dist.counts):
            fh.write(f"{k},{dist.counts[k]},{dist.cumulative[k]:.17g}\n")
    finally:
        if own:
            fh.close()


def fit_loglog_slope(
    dist: DegreeDistribution, k_range: tuple[int, int] | None = None
) -> float:
    """Least-squares slope of log10 P_c(k) against log10 k.

    ``k_range`` is an inclusive (k_min, k_max) window; the default
    ``[3, k_max/4]`` skips the flat head and the noisy tail.  Requires at
    least three distinct usable degrees in the window.
    """
    ks = np.array([k for k in sorted(dist.cumulative) if k >= 1], dtype=float)
    if ks.size == 0:
        raise FitError("no positive degrees to fit")
    if k_range is None:
        k_range = (3, max(int(ks.max()) // 4, 3))
    lo, hi = k_range
    sel = ks[(ks >= lo) & (ks <= hi)]
    sel = np.array([k for k in sel if dist.cumulative[int(k)] > 0.0])
    if sel.size < 3:
        raise FitError(
            f"need >= 3 distinct degrees with nonzero cumulative in [{lo}, {hi}], "
            f"got {sel.size}"
        )
    x = np.log10(sel)
    y = np.log10([dist.cumulative[int(k)] for k in sel])
    slope = np.polyfit(x, y, 1)[0]
    return float(slope)


def reciprocity(graph: DirectedGraph) -> float:
    """Fraction of edges whose reverse edge is also present.

    Counted per edge instance; a self-loop is its own reverse.  The counting
    convention (edges with a reciprocal partner / total edges) is the common
    one but not the only possible reading of "symmetric links".
    """
    if graph.n_edges == 0:
        raise EmptyGraphError("reciprocity of an edgeless graph")
    present = graph.edge_set()
    hits = sum(1 for s, t in graph.edges if (int(t), int(s)) in present)
    return hits / graph.n_edges
