import io

import numpy as np
import pytest

from netspectra.gmatrix import (
    GoogleMatrix,
    SizeLimitError,
    StochasticMatrix,
    build_stochastic,
    dense_to_csv,
    materialize_dense,
    sparse_to_csv,
    truncate_by_rank,
)
from netspectra.netcore import DirectedGraph
from netspectra.ranking import pagerank_power

from helpers import ring_plus_random, sparse_random, two_cycle


class TestBuildStochastic:
    def test_two_cycle(self):
        s = build_stochastic(two_cycle())
        assert np.allclose(s.matrix.toarray(), [[0, 1], [1, 0]])
        assert s.n_dangling == 0

    def test_dangling_column_flagged_and_empty(self):
        g = DirectedGraph(n_nodes=2, edges=np.array([[0, 1]]))
        s = build_stochastic(g)
        assert s.dangling.tolist() == [False, True]
        dense = s.matrix.toarray()
        assert dense[:, 1].tolist() == [0.0, 0.0]
        assert dense[1, 0] == 1.0

    def test_multiplicity_weighting(self):
        g = DirectedGraph(
            n_nodes=3,
            edges=np.array([[0, 1], [0, 1], [0, 2]]),
            multi_edges_allowed=True,
        )
        s = build_stochastic(g)
        col = s.matrix.toarray()[:, 0]
        assert col[1] == pytest.approx(2 / 3, abs=1e-15)
        assert col[2] == pytest.approx(1 / 3, abs=1e-15)

    def test_column_sums_tight(self):
        g = sparse_random(200, seed=1)
        s = build_stochastic(g)
        sums = np.asarray(s.matrix.sum(axis=0)).ravel()
        assert np.all(np.abs(sums[~s.dangling] - 1.0) <= 1e-12)

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            build_stochastic(DirectedGraph(n_nodes=0, edges=np.zeros((0, 2))))

    def test_constructor_validates_dangling_columns(self):
        from scipy import sparse

        mat = sparse.csc_matrix(np.array([[0.0, 0.5], [1.0, 0.5]]))
        with pytest.raises(ValueError):
            StochasticMatrix(mat, [False, True])

    def test_constructor_validates_column_sums(self):
        from scipy import sparse

        mat = sparse.csc_matrix(np.array([[0.0, 0.0], [0.9, 0.0]]))
        with pytest.raises(ValueError):
            StochasticMatrix(mat, [False, True])


class TestApply:
    def test_alpha_zero_gives_uniform(self):
        g = GoogleMatrix.from_graph(sparse_random(10, seed=2), alpha=0.0)
        v = np.zeros(10)
        v[3] = 1.0
        assert np.allclose(g.apply(v), np.full(10, 0.1), atol=1e-15)

    def test_alpha_one_two_cycle(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=1.0)
        assert np.allclose(g.apply([1.0, 0.0]), [0.0, 1.0], atol=1e-15)

    def test_hand_value(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        assert np.allclose(g.apply([1.0, 0.0]), [0.075, 0.925], atol=1e-15)

    def test_dimension_mismatch(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        with pytest.raises(ValueError):
            g.apply([1.0, 0.0, 0.0])

    def test_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            GoogleMatrix.from_graph(two_cycle(), alpha=1.5)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 0.85, 1.0])
    def test_sum_preserved(self, alpha):
        rng = np.random.default_rng(7)
        g = GoogleMatrix.from_graph(sparse_random(150, seed=3), alpha=alpha)
        for _ in range(10):
            v = rng.random(150)
            assert abs(g.apply(v).sum() - v.sum()) <= 1e-12 * max(1.0, v.sum())

    def test_agrees_with_dense_on_random_vectors(self):
        rng = np.random.default_rng(11)
        for seed, n in ((0, 37), (1, 120), (2, 500)):
            g = GoogleMatrix.from_graph(sparse_random(n, seed=seed), alpha=0.85)
            dense = g.to_dense()
            for _ in range(34):
                v = rng.random(n)
                assert np.max(np.abs(g.apply(v) - dense @ v)) <= 1e-12


class TestDense:
    def test_two_cycle_alpha_one(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=1.0)
        assert np.array_equal(g.to_dense(), np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_alpha_zero_uniform(self):
        g = GoogleMatrix.from_graph(sparse_random(8, seed=5), alpha=0.0)
        assert np.allclose(g.to_dense(), np.full((8, 8), 1 / 8), atol=1e-16)

    def test_hand_value(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        assert np.allclose(
            g.to_dense(), [[0.075, 0.925], [0.925, 0.075]], atol=1e-15
        )

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.85, 1.0])
    def test_columns_stochastic_for_every_alpha(self, alpha):
        g = GoogleMatrix.from_graph(sparse_random(90, seed=6), alpha=alpha)
        sums = g.to_dense().sum(axis=0)
        assert np.max(np.abs(sums - 1.0)) <= 1e-12

    def test_size_limit(self):
        g = GoogleMatrix.from_graph(sparse_random(40, seed=7), alpha=0.85)
        with pytest.raises(SizeLimitError):
            g.to_dense(dense_limit=39)
        assert materialize_dense(g, dense_limit=40).shape == (40, 40)


class TestTruncateByRank:
    def test_full_size_keeps_operator(self):
        g = GoogleMatrix.from_graph(ring_plus_random(30, seed=1), alpha=0.85)
        rank = pagerank_power(g)
        truncated, kept = truncate_by_rank(g, rank, 30)
        assert kept.tolist() == list(range(30))
        assert np.max(np.abs(truncated.to_dense() - g.to_dense())) <= 1e-14

    def test_single_node(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        rank = pagerank_power(g)
        truncated, kept = truncate_by_rank(g, rank, 1)
        assert truncated.to_dense().tolist() == [[1.0]]

    def test_pendant_restriction_recovers_two_cycle(self):
        g = DirectedGraph(n_nodes=3, edges=np.array([[0, 1], [1, 0], [2, 0]]))
        gm = GoogleMatrix.from_graph(g, alpha=0.85)
        rank = pagerank_power(gm)
        assert set(rank.order[:2].tolist()) == {0, 1}
        truncated, kept = truncate_by_rank(gm, rank, 2)
        assert kept.tolist() == [0, 1]
        expected = GoogleMatrix.from_graph(two_cycle(), alpha=0.85).to_dense()
        assert np.max(np.abs(truncated.to_dense() - expected)) <= 1e-15

    def test_truncated_operator_is_stochastic(self):
        g = GoogleMatrix.from_graph(sparse_random(60, seed=8), alpha=0.85)
        rank = pagerank_power(g)
        for m in (60, 31, 7, 2):
            truncated, kept = truncate_by_rank(g, rank, m)
            dense = truncated.to_dense()
            assert dense.shape == (m, m)
            assert np.max(np.abs(dense.sum(axis=0) - 1.0)) <= 1e-12

    def test_rank_ties_break_toward_lower_ids(self):
        from helpers import complete_graph

        g = GoogleMatrix.from_graph(complete_graph(4), alpha=0.85)
        rank = pagerank_power(g)  # uniform scores: pure tie
        _, kept = truncate_by_rank(g, rank, 2)
        assert kept.tolist() == [0, 1]

    def test_m_out_of_range(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        rank = pagerank_power(g)
        for m in (0, 3):
            with pytest.raises(ValueError):
                truncate_by_rank(g, rank, m)


class TestCsv:
    def test_dense_round_trip(self):
        g = GoogleMatrix.from_graph(two_cycle(), alpha=0.85)
        buf = io.StringIO()
        dense_to_csv(g.to_dense(), buf)
        parsed = np.array(
            [[float(x) for x in line.split(",")] for line in buf.getvalue().splitlines()]
        )
        assert np.array_equal(parsed, g.to_dense())

    def test_sparse_triplets(self):
        g = DirectedGraph(n_nodes=2, edges=np.array([[0, 1]]))
        s = build_stochastic(g)
        buf = io.StringIO()
        sparse_to_csv(s, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "j,i,value"
        assert lines[1] == "0,1,1"
        assert len(lines) == 2  # dangling column 1 stores nothing
