"""Graph and hypergraph similarity construction."""

import numpy as np
import pytest
from scipy import sparse

from jointnmf.errors import (
    DataError,
    EmptyGraph,
    IndexOutOfRange,
    LabelMissing,
    NotSymmetric,
    ZeroDegree,
)
from jointnmf.graph import (
    Graph,
    Hypergraph,
    dual_hypergraph,
    hypergraph_from_edges,
    hypergraph_similarity,
    induce_subgraph,
    induce_subhypergraph,
    largest_connected_component,
    membership_counts,
    normalized_adjacency,
    read_edge_list,
    read_hyperedges,
    symmetrize,
)


def triangle():
    return symmetrize([(0, 1), (1, 2), (2, 0)], n_vertices=3)


# ---------------------------------------------------------------------------
# construction and validation


def test_symmetrize_triangle():
    A = triangle().adjacency.toarray()
    assert (A == A.T).all()
    assert (np.diag(A) == 0.0).all()
    assert A.sum() == 6.0


def test_symmetrize_drops_self_loops_and_duplicates():
    g = symmetrize([(0, 0), (0, 1), (1, 0), (0, 1)], n_vertices=2)
    A = g.adjacency.toarray()
    assert (A == np.array([[0.0, 1.0], [1.0, 0.0]])).all()


def test_symmetrize_infers_vertex_count():
    g = symmetrize([(0, 3)])
    assert g.n == 4


def test_symmetrize_rejects_out_of_range():
    with pytest.raises(IndexOutOfRange):
        symmetrize([(0, 5)], n_vertices=3)
    with pytest.raises(IndexOutOfRange):
        symmetrize([(-1, 0)], n_vertices=3)


def test_graph_validates_adjacency():
    with pytest.raises(NotSymmetric):
        Graph(sparse.csc_array(np.array([[0.0, 1.0], [0.0, 0.0]])))
    with pytest.raises(ValueError):
        Graph(sparse.csc_array(np.array([[1.0, 0.0], [0.0, 0.0]])))
    with pytest.raises(ValueError):
        Graph(sparse.csc_array(np.array([[0.0, -1.0], [-1.0, 0.0]])))


def test_hypergraph_validates_incidence():
    with pytest.raises(ValueError):
        Hypergraph(sparse.csc_array(np.array([[2.0], [0.0]])))
    hg = Hypergraph(sparse.csc_array(np.array([[1.0], [1.0]])))
    assert hg.n_vertices == 2 and hg.n_edges == 1


def test_hypergraph_from_edges_dedupes_within_edge():
    hg = hypergraph_from_edges([[0, 1, 1, 0]], n_vertices=2)
    assert hg.incidence.toarray().tolist() == [[1.0], [1.0]]
    with pytest.raises(IndexOutOfRange):
        hypergraph_from_edges([[0, 9]], n_vertices=3)


# ---------------------------------------------------------------------------
# normalized adjacency


def test_normalized_adjacency_triangle():
    S = normalized_adjacency(triangle()).toarray()
    expect = 0.5 * (np.ones((3, 3)) - np.eye(3))
    assert np.max(np.abs(S - expect)) <= 1e-14


def test_normalized_adjacency_star():
    g = symmetrize([(0, 1), (0, 2), (0, 3)], n_vertices=4)
    S = normalized_adjacency(g).toarray()
    assert abs(S[0, 1] - 1.0 / np.sqrt(3.0)) <= 1e-14
    assert S[1, 2] == 0.0


def test_normalized_adjacency_zero_degree():
    g = symmetrize([(0, 1)], n_vertices=3)
    with pytest.raises(ZeroDegree):
        normalized_adjacency(g)


def test_normalized_adjacency_empty_graph():
    with pytest.raises(EmptyGraph):
        normalized_adjacency(Graph(sparse.csc_array((0, 0))))


def test_normalized_adjacency_eigen_property():
    # sqrt(degree) is a fixed vector: S sqrt(d) = sqrt(d)
    rng = np.random.default_rng(21)
    for t in range(10):
        n = int(rng.integers(4, 12))
        pairs = {
            (int(a), int(b))
            for a, b in rng.integers(0, n, (3 * n, 2))
            if a != b
        }
        pairs.update((i, (i + 1) % n) for i in range(n))  # connected, all degrees > 0
        g = symmetrize(sorted(pairs), n_vertices=n)
        S = normalized_adjacency(g)
        d = np.asarray(g.adjacency.sum(axis=1)).ravel()
        v = np.sqrt(d)
        assert np.max(np.abs(S @ v - v)) <= 1e-12


# ---------------------------------------------------------------------------
# hypergraph similarity


def test_hypergraph_similarity_single_edge():
    hg = hypergraph_from_edges([[0, 1]], n_vertices=2)
    S = hypergraph_similarity(hg).toarray()
    assert np.max(np.abs(S - 0.5)) <= 1e-14


def test_hypergraph_similarity_triangle_exact():
    hg = hypergraph_from_edges([[0, 1], [1, 2], [2, 0]], n_vertices=3)
    S = hypergraph_similarity(hg).toarray()
    expect = 0.25 * np.ones((3, 3)) + 0.25 * np.eye(3)
    assert np.max(np.abs(S - expect)) <= 1e-14


def test_hypergraph_similarity_single_vertex():
    hg = hypergraph_from_edges([[0]], n_vertices=1)
    assert hypergraph_similarity(hg).toarray().tolist() == [[1.0]]


def test_hypergraph_similarity_errors():
    with pytest.raises(EmptyGraph):
        hypergraph_similarity(Hypergraph(sparse.csc_array((0, 0))))
    with pytest.raises(ZeroDegree):
        hypergraph_similarity(hypergraph_from_edges([[0]], n_vertices=2))
    empty_edge = sparse.csc_array(np.array([[1.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(ZeroDegree):
        hypergraph_similarity(Hypergraph(empty_edge))


def test_hypergraph_similarity_symmetric_on_random_instances():
    rng = np.random.default_rng(22)
    for _ in range(25):
        n = int(rng.integers(3, 10))
        edges = []
        for _ in range(int(rng.integers(2, 7))):
            size = int(rng.integers(1, n + 1))
            edges.append(list(rng.choice(n, size=size, replace=False)))
        edges.append(list(range(n)))  # no zero-degree vertices
        S = hypergraph_similarity(hypergraph_from_edges(edges, n_vertices=n)).toarray()
        assert np.max(np.abs(S - S.T)) <= 1e-14


def test_dual_hypergraph_swaps_roles_and_involutes():
    hg = hypergraph_from_edges([[0, 1], [1, 2, 3]], n_vertices=4)
    dual = dual_hypergraph(hg)
    assert dual.n_vertices == 2 and dual.n_edges == 4
    back = dual_hypergraph(dual)
    assert (back.incidence != hg.incidence).nnz == 0


# ---------------------------------------------------------------------------
# components and induced substructures


def test_lcc_disjoint_hyperedges():
    hg = hypergraph_from_edges([[0, 1], [2, 3, 4]], n_vertices=5)
    vertices, edges = largest_connected_component(hg)
    assert vertices.tolist() == [2, 3, 4]
    assert edges.tolist() == [1]


def test_lcc_path_keeps_everything():
    g = symmetrize([(0, 1), (1, 2), (2, 3)], n_vertices=4)
    assert largest_connected_component(g).tolist() == [0, 1, 2, 3]


def test_lcc_tie_prefers_smallest_vertex():
    g = symmetrize([(0, 1), (2, 3)], n_vertices=4)
    assert largest_connected_component(g).tolist() == [0, 1]
    hg = hypergraph_from_edges([[2, 3], [0, 1]], n_vertices=4)
    vertices, edges = largest_connected_component(hg)
    assert vertices.tolist() == [0, 1]
    assert edges.tolist() == [1]


def test_lcc_empty_inputs_rejected():
    with pytest.raises(EmptyGraph):
        largest_connected_component(Graph(sparse.csc_array((3, 3))))
    with pytest.raises(EmptyGraph):
        largest_connected_component(Hypergraph(sparse.csc_array((3, 2))))


def test_induce_subgraph():
    g = symmetrize([(0, 1), (1, 2), (2, 3)], n_vertices=4)
    sub = induce_subgraph(g, np.array([1, 2, 3]))
    A = sub.adjacency.toarray()
    assert A.tolist() == [[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]
    with pytest.raises(IndexOutOfRange):
        induce_subgraph(g, np.array([0, 9]))


def test_induce_subhypergraph_drops_emptied_edges():
    hg = hypergraph_from_edges([[0, 1], [2, 3], [1, 2]], n_vertices=4)
    sub, kept = induce_subhypergraph(hg, np.array([0, 1]))
    assert sub.n_vertices == 2 and sub.n_edges == 2
    assert kept.tolist() == [0, 2]
    sub2, kept2 = induce_subhypergraph(hg, np.array([0, 1]), np.array([0]))
    assert sub2.n_edges == 1 and kept2.tolist() == [0]


def test_lcc_then_induce_leaves_no_zero_degrees():
    rng = np.random.default_rng(23)
    for _ in range(10):
        n = int(rng.integers(4, 12))
        edges = [
            list(rng.choice(n, size=int(rng.integers(2, 4)), replace=False))
            for _ in range(int(rng.integers(2, 6)))
        ]
        hg = hypergraph_from_edges(edges, n_vertices=n)
        try:
            vertices, kept = largest_connected_component(hg)
        except EmptyGraph:
            continue
        sub, _ = induce_subhypergraph(hg, vertices, kept)
        S = hypergraph_similarity(sub)  # would raise ZeroDegree on a bad cut
        assert S.shape == (len(vertices), len(vertices))


# ---------------------------------------------------------------------------
# membership counting and file input


def test_membership_counts_distinct_labels():
    hg = hypergraph_from_edges([[0], [0], [0]], n_vertices=1)
    counts = membership_counts(["1", "1", "3"], hg)
    assert counts.tolist() == [2]


def test_membership_counts_one_edge_each():
    hg = hypergraph_from_edges([[0, 1]], n_vertices=2)
    assert membership_counts(["a"], hg).tolist() == [1, 1]


def test_membership_counts_isolated_vertex_zero():
    hg = hypergraph_from_edges([[0]], n_vertices=2)
    assert membership_counts(["a"], hg).tolist() == [1, 0]


def test_membership_counts_label_per_edge_required():
    hg = hypergraph_from_edges([[0], [1]], n_vertices=2)
    with pytest.raises(LabelMissing):
        membership_counts(["only-one"], hg)


def test_read_edge_list(tmp_path):
    path = tmp_path / "edges.tsv"
    path.write_text("0\t1\n\n2\t3\n")
    assert read_edge_list(path) == [(0, 1), (2, 3)]
    bad = tmp_path / "bad.tsv"
    bad.write_text("0,1\n")
    with pytest.raises(DataError):
        read_edge_list(bad)
    bad2 = tmp_path / "bad2.tsv"
    bad2.write_text("0\tx\n")
    with pytest.raises(DataError):
        read_edge_list(bad2)


def test_read_hyperedges(tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("0 1 2\n\n3 4\n")
    assert read_hyperedges(path) == [[0, 1, 2], [3, 4]]
    bad = tmp_path / "bad.txt"
    bad.write_text("0 oops\n")
    with pytest.raises(DataError):
        read_hyperedges(bad)
