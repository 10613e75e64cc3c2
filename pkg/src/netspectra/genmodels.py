"""Seed-deterministic random directed-network generators.

Three growth processes over a shared preferential-attachment kernel
(target probability proportional to in-degree + 1):

* ``generate_ab`` -- scale-free growth with three event types: add m links
  from uniform sources (probability p), re-target the head of m existing
  links (probability q), or add a node with m outgoing links (otherwise).
* ``generate_color`` -- the same growth constrained to labeled communities:
  links between different labels are kept only with probability epsilon.
* ``generate_al`` -- each new node emits exactly m links drawn independently,
  with repetitions kept as edge multiplicities.

All decisions are drawn from ``random.Random(seed)``, so outputs are
bit-reproducible for a fixed seed and parameter set across platforms.
Within one growth event, targets are drawn against the in-degrees as they
were at the start of the event.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .netcore import DirectedGraph

__all__ = [
    "AbParams",
    "ColorParams",
    "AlParams",
    "generate_ab",
    "generate_color",
    "generate_al",
]

# Give up on a duplicate/self-loop-rejected link after this many redraws.
_MAX_DRAW_RETRIES = 50


@dataclass(frozen=True)
class AbParams:
    """Growth parameters: ``p`` link addition, ``q`` rewiring, ``1-p-q`` node
    addition, ``m`` links per event.  The process starts from an
    ``m+1``-node seed clique (bidirectional unless disabled)."""

    n_target: int
    m: int = 5
    p: float = 0.2
    q: float = 0.1
    seed: int = 0
    seed_bidirectional: bool = True
    allow_self_loops: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.p < 0 or self.q < 0 or self.p + self.q >= 1.0:
            raise ValueError("need p, q >= 0 and p + q < 1")
        if self.n_target < self.m + 1:
            raise ValueError(f"n_target must be >= seed size m+1 = {self.m + 1}")


@dataclass(frozen=True)
class ColorParams:
    """Community-constrained growth: a new node founds a new color with
    probability ``eta`` (else copies the color of a uniformly chosen
    existing node); links between different colors survive only with
    probability ``epsilon``."""

    ab: AbParams
    eta: float = 1e-2
    epsilon: float = 1e-3
    initial_colors: int = 3

    def __post_init__(self):
        if not (0.0 <= self.eta <= 1.0 and 0.0 <= self.epsilon <= 1.0):
            raise ValueError("eta and epsilon must lie in [0, 1]")
        if self.initial_colors < 1:
            raise ValueError("initial_colors must be >= 1")


@dataclass(frozen=True)
class AlParams:
    """Each node after the ``m+1``-node mutually linked seed emits exactly
    ``m`` outgoing links; repeated targets are kept as multiplicities."""

    n_target: int
    m: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n_target < self.m + 1:
            raise ValueError(f"n_target must be >= seed size m+1 = {self.m + 1}")


def _grow(params: AbParams, rng, color_cfg=None):
    """Shared growth engine; returns (edge list, colors or None).

    ``color_cfg`` is a (eta, epsilon, initial_colors) triple; when present,
    every candidate link is passed through the color rule (cross-color links
    kept with probability epsilon, never redrawn when omitted).
    """
    m = params.m
    n_seed = m + 1
    edges: list[tuple[int, int]] = []
    present: set[tuple[int, int]] = set()
    # preferential weight per node = in-degree + 1
    weight = np.zeros(params.n_target, dtype=np.int64)
    weight[:n_seed] = 1

    colors = None
    n_colors = 0
    if color_cfg is not None:
        eta, epsilon, initial_colors = color_cfg
        colors = np.zeros(params.n_target, dtype=np.int64)
        n_colors = initial_colors
        for i in range(n_seed):
            colors[i] = i % initial_colors

    def keep_link(src, tgt):
        if colors is None or colors[src] == colors[tgt]:
            return True
        return rng.random() < epsilon

    def add_edge(src, tgt):
        edges.append((src, tgt))
        present.add((src, tgt))
        weight[tgt] += 1

    if params.seed_bidirectional:
        seed_pairs = [(i, j) for i in range(n_seed) for j in range(n_seed) if i != j]
    else:
        seed_pairs = [(i, j) for i in range(n_seed) for j in range(i + 1, n_seed)]
    for i, j in seed_pairs:
        if keep_link(i, j):
            add_edge(i, j)

    n_now = n_seed
    while n_now < params.n_target:
        cum = np.cumsum(weight[:n_now])
        total = int(cum[-1])

        def draw_target():
            return int(np.searchsorted(cum, rng.randrange(total), side="right"))

        u = rng.random()
        if u < params.p:
            # add m links from uniform sources to preferential targets
            for _ in range(m):
                for _ in range(_MAX_DRAW_RETRIES):
                    src = rng.randrange(n_now)
                    tgt = draw_target()
                    if src == tgt and not params.allow_self_loops:
                        continue
                    if (src, tgt) in present:
                        continue
                    if keep_link(src, tgt):
                        add_edge(src, tgt)
                    break
        elif u < params.p + params.q:
            # re-target the head of m uniformly chosen existing links
            for _ in range(m):
                if not edges:
                    break
                for _ in range(_MAX_DRAW_RETRIES):
                    e_idx = rng.randrange(len(edges))
                    src, old_tgt = edges[e_idx]
                    tgt = draw_target()
                    if src == tgt and not params.allow_self_loops:
                        continue
                    if (src, tgt) in present:
                        continue
                    if keep_link(src, tgt):
                        present.discard((src, old_tgt))
                        weight[old_tgt] -= 1
                        edges[e_idx] = (src, tgt)
                        present.add((src, tgt))
                        weight[tgt] += 1
                    break
        else:
            # new node with m outgoing links
            node = n_now
            if colors is not None:
                if rng.random() < eta:
                    colors[node] = n_colors
                    n_colors += 1
                else:
                    colors[node] = colors[rng.randrange(n_now)]
            for _ in range(m):
                for _ in range(_MAX_DRAW_RETRIES):
                    tgt = draw_target()
                    if (node, tgt) in present:
                        continue
                    if keep_link(node, tgt):
                        add_edge(node, tgt)
                    break
            weight[node] = 1
            n_now += 1

    return edges, colors


def generate_ab(params: AbParams) -> DirectedGraph:
    """Scale-free directed graph grown to ``params.n_target`` nodes.

    Duplicate links and self-loops are rejected and redrawn (a bounded
    number of times, then the link is skipped), so the result is simple.
    """
    rng = random.Random(params.seed)
    edges, _ = _grow(params, rng)
    return DirectedGraph(
        n_nodes=params.n_target,
        edges=np.array(edges, dtype=np.int64).reshape(-1, 2),
        multi_edges_allowed=False,
    )


def generate_color(params: ColorParams) -> tuple[DirectedGraph, np.ndarray]:
    """Community-labeled scale-free graph plus the per-node color array.

    With ``epsilon = 0`` no link ever crosses a color boundary, so the link
    matrix is block-diagonal after sorting nodes by color.
    """
    rng = random.Random(params.ab.seed)
    edges, colors = _grow(
        params.ab, rng, color_cfg=(params.eta, params.epsilon, params.initial_colors)
    )
    graph = DirectedGraph(
        n_nodes=params.ab.n_target,
        edges=np.array(edges, dtype=np.int64).reshape(-1, 2),
        multi_edges_allowed=False,
    )
    return graph, colors


def generate_al(params: AlParams) -> DirectedGraph:
    """Multigraph growth: every non-seed node has out-degree exactly ``m``
    counting multiplicity; targets are drawn independently with probability
    proportional to in-degree + 1 at the node's arrival time."""
    rng = random.Random(params.seed)
    m = params.m
    n_seed = m + 1
    edges = [(i, j) for i in range(n_seed) for j in range(n_seed) if i != j]
    weight = np.zeros(params.n_target, dtype=np.int64)
    weight[:n_seed] = 1 + m  # baseline + seed-clique in-links
    for node in range(n_seed, params.n_target):
        cum = np.cumsum(weight[:node])
        total = int(cum[-1])
        targets = [
            int(np.searchsorted(cum, rng.randrange(total), side="right"))
            for _ in range(m)
        ]
        for tgt in targets:
            edges.append((node, tgt))
            weight[tgt] += 1
        weight[node] = 1
    return DirectedGraph(
        n_nodes=params.n_target,
        edges=np.array(edges, dtype=np.int64),
        multi_edges_allowed=True,
    )
