"""Graphs, hypergraphs, and the similarity matrices built from them.

A Graph holds a symmetric 0/1 adjacency with empty diagonal.  A
Hypergraph holds a 0/1 incidence matrix with vertices as rows and
edges as columns.  Similarity for clustering is the degree-normalized
adjacency D^-1/2 A D^-1/2, or for hypergraphs

    S = Dv^-1/2 M De^-1 M^T Dv^-1/2

where Dv and De are the vertex and edge degree diagonals.  The dual
hypergraph (transposed incidence) swaps the roles of vertices and
edges, which is how a corpus of group events (each event one edge) is
clustered by the participants it shares.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import (
    EmptyGraph,
    IndexOutOfRange,
    LabelMissing,
    ShapeMismatch,
    ZeroDegree,
)
from .matrix import as_csc, require_symmetric

__all__ = [
    "Graph",
    "Hypergraph",
    "symmetrize",
    "normalized_adjacency",
    "hypergraph_similarity",
    "dual_hypergraph",
    "largest_connected_component",
    "membership_counts",
    "induce_subgraph",
    "induce_subhypergraph",
    "hypergraph_from_edges",
    "read_edge_list",
    "read_hyperedges",
]


@dataclass
class Graph:
    """Undirected unweighted graph as a symmetric sparse adjacency."""

    adjacency: sparse.csc_array

    def __post_init__(self):
        A = as_csc(self.adjacency)
        A.eliminate_zeros()
        require_symmetric(A, what="adjacency")
        if A.diagonal().any():
            raise ValueError("adjacency has nonzero diagonal entries")
        if A.data.size and A.data.min() < 0:
            raise ValueError("adjacency has negative entries")
        self.adjacency = A

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


@dataclass
class Hypergraph:
    """Hypergraph as a 0/1 incidence matrix, vertices x edges."""

    incidence: sparse.csc_array

    def __post_init__(self):
        M = as_csc(self.incidence)
        M.eliminate_zeros()
        if M.data.size and not np.all(M.data == 1.0):
            raise ValueError("incidence entries must be 0 or 1")
        self.incidence = M

    @property
    def n_vertices(self) -> int:
        return self.incidence.shape[0]

    @property
    def n_edges(self) -> int:
        return self.incidence.shape[1]


def symmetrize(edges, n_vertices: int | None = None) -> Graph:
    """Undirected graph from a directed edge list.

    Either direction produces A_ij = A_ji = 1; self-loops are dropped
    and duplicates collapse.  Vertex count is inferred from the largest
    id unless given.
    """
    pairs = [(int(a), int(b)) for a, b in edges]
    if n_vertices is None:
        n_vertices = max((max(a, b) for a, b in pairs), default=-1) + 1
    for a, b in pairs:
        if not (0 <= a < n_vertices and 0 <= b < n_vertices):
            raise IndexOutOfRange(
                f"edge ({a}, {b}) outside vertex range [0, {n_vertices})"
            )
    keep = [(a, b) for a, b in pairs if a != b]
    if not keep:
        return Graph(sparse.csc_array((n_vertices, n_vertices)))
    rows = np.array([a for a, b in keep] + [b for a, b in keep])
    cols = np.array([b for a, b in keep] + [a for a, b in keep])
    A = sparse.coo_array(
        (np.ones(rows.size), (rows, cols)), shape=(n_vertices, n_vertices)
    ).tocsc()
    A.data[:] = 1.0  # collapse duplicate edges
    return Graph(A)


def normalized_adjacency(G: Graph) -> sparse.csc_array:
    """S = D^-1/2 A D^-1/2.  Every vertex must have positive degree."""
    A = G.adjacency
    deg = A.sum(axis=1)
    if A.shape[0] == 0:
        raise EmptyGraph("graph has no vertices")
    if np.any(deg == 0):
        bad = int(np.flatnonzero(deg == 0)[0])
        raise ZeroDegree(f"vertex {bad} has zero degree; restrict to a component first")
    d = sparse.diags_array(1.0 / np.sqrt(deg))
    return as_csc(d @ A @ d)


def hypergraph_similarity(Hg: Hypergraph) -> sparse.csc_array:
    """Vertex similarity Dv^-1/2 M De^-1 M^T Dv^-1/2.

    The diagonal is naturally nonzero and is kept.
    """
    M = Hg.incidence
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise EmptyGraph("hypergraph has no vertices or no edges")
    dv = M.sum(axis=1)
    de = M.sum(axis=0)
    if np.any(dv == 0):
        bad = int(np.flatnonzero(dv == 0)[0])
        raise ZeroDegree(f"vertex {bad} belongs to no edge")
    if np.any(de == 0):
        bad = int(np.flatnonzero(de == 0)[0])
        raise ZeroDegree(f"edge {bad} has no vertices")
    dvi = sparse.diags_array(1.0 / np.sqrt(dv))
    dei = sparse.diags_array(1.0 / de)
    return as_csc(dvi @ M @ dei @ M.T @ dvi)


def dual_hypergraph(Hg: Hypergraph) -> Hypergraph:
    """Transpose the incidence: vertices and edges swap roles."""
    return Hypergraph(as_csc(Hg.incidence.T))


def largest_connected_component(obj):
    """Vertex indices of the largest component, smallest-first on ties.

    Hypergraph vertices are connected when they share an edge; for
    hypergraphs the surviving edge indices (all endpoints inside the
    component) are returned as well.
    """
    if isinstance(obj, Graph):
        A = obj.adjacency
        if obj.n == 0 or A.nnz == 0:
            raise EmptyGraph("graph has no edges")
        labels = _component_labels(A)
        return np.flatnonzero(labels == _best_component(labels))
    if isinstance(obj, Hypergraph):
        M = obj.incidence
        if M.shape[0] == 0 or M.shape[1] == 0 or M.nnz == 0:
            raise EmptyGraph("hypergraph has no incidences")
        labels = _component_labels(M @ M.T)
        best = _best_component(labels)
        vertices = np.flatnonzero(labels == best)
        csc = M.tocsc()
        edge_deg = np.diff(csc.indptr)
        first_vertex = np.full(M.shape[1], -1, dtype=np.int64)
        nonempty = edge_deg > 0
        first_vertex[nonempty] = csc.indices[csc.indptr[:-1][nonempty]]
        # an edge connects all its endpoints, so one endpoint inside
        # the component puts the whole edge inside
        edges = np.flatnonzero(nonempty & (labels[first_vertex] == best))
        return vertices, edges
    raise TypeError(f"expected Graph or Hypergraph, got {type(obj).__name__}")


def _component_labels(A):
    _, labels = csgraph.connected_components(A, directed=False)
    return labels


def _best_component(labels):
    # largest component; ties go to the one containing the smallest vertex
    sizes = np.bincount(labels)
    biggest = np.flatnonzero(sizes == sizes.max())
    first_seen = np.full(sizes.size, labels.size, dtype=np.int64)
    np.minimum.at(first_seen, labels, np.arange(labels.size))
    return int(biggest[np.argmin(first_seen[biggest])])


def induce_subgraph(G: Graph, vertices) -> Graph:
    """Restriction of the graph to the given vertex subset (ascending)."""
    idx = _index_subset(vertices, G.n, "vertex")
    return Graph(G.adjacency[idx][:, idx])


def induce_subhypergraph(Hg: Hypergraph, vertices, edges=None):
    """Restrict a hypergraph to a vertex subset.

    With edges=None, edges that lose every endpoint are dropped.
    Returns the restricted hypergraph and the kept edge indices.
    """
    vidx = _index_subset(vertices, Hg.n_vertices, "vertex")
    M = Hg.incidence[vidx]
    if edges is None:
        eidx = np.flatnonzero(np.diff(M.tocsc().indptr) > 0)
    else:
        eidx = _index_subset(edges, Hg.n_edges, "edge")
    return Hypergraph(M[:, eidx]), eidx


def membership_counts(edge_labels, Hg: Hypergraph) -> np.ndarray:
    """Per vertex, how many distinct labels its incident edges carry."""
    labels = list(edge_labels)
    if len(labels) != Hg.n_edges:
        raise LabelMissing(
            f"{len(labels)} labels for {Hg.n_edges} edges; labels must cover all edges"
        )
    if Hg.n_edges == 0:
        return np.zeros(Hg.n_vertices, dtype=np.int64)
    _, codes = np.unique(np.asarray(labels, dtype=object), return_inverse=True)
    coo = Hg.incidence.tocoo()
    pair = coo.row.astype(np.int64) * (codes.max() + 1) + codes[coo.col]
    vert = np.unique(pair) // (codes.max() + 1)
    return np.bincount(vert, minlength=Hg.n_vertices)


def hypergraph_from_edges(edge_vertex_lists, n_vertices: int | None = None) -> Hypergraph:
    """Build the incidence matrix from per-edge vertex id lists."""
    edges = [sorted({int(v) for v in e}) for e in edge_vertex_lists]
    if n_vertices is None:
        n_vertices = max((max(e) for e in edges if e), default=-1) + 1
    rows, cols = [], []
    for j, e in enumerate(edges):
        for v in e:
            if not 0 <= v < n_vertices:
                raise IndexOutOfRange(
                    f"edge {j} references vertex {v} outside [0, {n_vertices})"
                )
            rows.append(v)
            cols.append(j)
    M = sparse.coo_array(
        (np.ones(len(rows)), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(n_vertices, len(edges)),
    )
    return Hypergraph(M.tocsc())


def read_edge_list(path) -> list[tuple[int, int]]:
    """Parse `src<TAB>dst` lines, 0-based, skipping blanks."""
    from .errors import DataError

    out = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 2:
                raise DataError(f"{path}:{ln}: expected `src<TAB>dst`, got {line!r}")
            try:
                out.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise DataError(f"{path}:{ln}: non-integer vertex id") from exc
    return out


def read_hyperedges(path) -> list[list[int]]:
    """Parse one edge per line, whitespace-separated 0-based vertex ids."""
    from .errors import DataError

    out = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise DataError(f"{path}:{ln}: non-integer vertex id") from exc
    return out


def _index_subset(indices, limit, what):
    idx = np.unique(np.asarray(indices, dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= limit):
        raise IndexOutOfRange(f"{what} index outside [0, {limit})")
    return idx
