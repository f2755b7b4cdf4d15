import itertools

import pytest

from c2lab.errors import NotConnected, NotSpanningTree
from c2lab.fields import make_field
from c2lab.graphs import Graph, family, is_connected, spanning_trees
from c2lab.matform import (
    PolyMatrix,
    RowColOp,
    diagonalize_wrt_tree,
    eval_rank,
    p_matrix,
    tree_occurrence_contract,
    tree_occurrence_contract_mod_nontree,
)
from c2lab.multipoly import MLPoly, phi

a = MLPoly.variable

FIG2_TREE = Graph(((1, 2), (2, 3), (3, 4), (3, 5), (2, 6), (6, 7)), 7)


def test_p_matrix_banana2():
    P = p_matrix(family("banana", 2))
    assert P.dim == 1
    assert P[0, 0] == a(1) + a(2)


def test_p_matrix_triangle_structure():
    # labeling with e3 = (1,2) so vertex 3 is the deleted one
    tri = Graph(((1, 3), (2, 3), (1, 2)), 3)
    P = p_matrix(tri)
    assert P[0, 0] == a(1) + a(3)
    assert P[1, 1] == a(2) + a(3)
    assert P[0, 1] == MLPoly.constant(-1) * a(3)
    assert P.is_symmetric()


def test_p_matrix_det_is_phi(corpus):
    for name, G in corpus.items():
        if not is_connected(G):
            continue
        assert p_matrix(G).det() == phi(G), name


def test_p_matrix_deleted_vertex_independence():
    K4 = family("complete", 4)
    target = phi(K4)
    for v in range(1, 5):
        assert p_matrix(K4, v).det() == target


def test_p_matrix_requires_connected():
    with pytest.raises(NotConnected):
        p_matrix(Graph(((1, 2), (3, 4)), 4))


def test_row_col_op_preserves_det_and_symmetry():
    P = p_matrix(family("wheel", 4))
    d = P.det()
    for op in (RowColOp(1, 2), RowColOp(3, 1), RowColOp(4, 2)):
        P = P.apply_op(op)
        assert P.is_symmetric()
    assert P.det() == d


def test_fig2_op_list():
    d = diagonalize_wrt_tree(FIG2_TREE, {1, 2, 3, 4, 5, 6})
    assert [(op.source, op.target) for op in d.ops] == [
        (4, 2), (3, 2), (6, 5), (5, 1), (2, 1)
    ]
    assert d.root == 1
    assert tree_occurrence_contract(d)
    # on the bare tree the result is exactly diagonal with a1..a6
    for i in range(6):
        assert d.matrix[i, i] == a(i + 1)
        for j in range(6):
            if i != j:
                assert d.matrix[i, j].is_zero


def test_fig2_in_host_graph():
    host = Graph(FIG2_TREE.edges + ((4, 5), (5, 7), (1, 7)), 7)
    d = diagonalize_wrt_tree(host, {1, 2, 3, 4, 5, 6})
    assert [(op.source, op.target) for op in d.ops] == [
        (4, 2), (3, 2), (6, 5), (5, 1), (2, 1)
    ]
    assert tree_occurrence_contract(d)
    assert tree_occurrence_contract_mod_nontree(d, host)
    assert d.matrix.det() == phi(host)


def test_path_graph_hamiltonian_case():
    p3 = family("path", 3)
    d = diagonalize_wrt_tree(p3, {1, 2, 3})
    assert tree_occurrence_contract(d)
    assert [(op.source, op.target) for op in d.ops] == [(3, 2), (2, 1)]


def test_k4_all_trees_contract():
    K4 = family("complete", 4)
    target = phi(K4)
    for T in spanning_trees(K4):
        d = diagonalize_wrt_tree(K4, T)
        assert tree_occurrence_contract(d), T
        assert d.matrix.det() == target, T
        assert d.start.apply_ops(d.ops).entries == d.matrix.entries


def test_not_spanning_tree():
    K4 = family("complete", 4)
    with pytest.raises(NotSpanningTree):
        diagonalize_wrt_tree(K4, {1, 2})
    with pytest.raises(NotSpanningTree):
        diagonalize_wrt_tree(K4, {1, 2, 4})  # triangle, not a tree


def test_eval_rank_examples():
    F2, F3 = make_field(2), make_field(3)
    b2 = p_matrix(family("banana", 2))
    assert eval_rank(b2, {1: 1, 2: 2}, F3) == 0  # 1 + (-1) = 0
    tri = p_matrix(family("cycle", 3))
    assert eval_rank(tri, {1: 1, 2: 1, 3: 1}, F2) == 2
    assert eval_rank(tri, {1: 0, 2: 0, 3: 0}, F3) == 0


def test_rank_invariant_under_ops():
    K4 = family("complete", 4)
    F3 = make_field(3)
    d = diagonalize_wrt_tree(K4, next(iter(spanning_trees(K4))))
    for point_vals in itertools.product(range(3), repeat=6):
        point = dict(zip(sorted(K4.labels), point_vals))
        if sum(point_vals) % 7:  # thin the 729-point sweep
            continue
        assert eval_rank(d.start, point, F3) == eval_rank(d.matrix, point, F3)
