from random import Random

import pytest

from invsys import (
    COUNTABLY_INFINITE,
    DecreasingSeqTree,
    DisjointBranchesTree,
    FiniteSupportTree,
    NoBranchError,
    Node,
)
from invsys.sampling import sample_branch, sample_node


def test_restrict_decreasing_prefix():
    tree = DecreasingSeqTree()
    assert tree.restrict(Node(3, (5, 3, 1)), 1) == Node(1, (5,))


def test_restrict_disjoint_unique_path():
    tree = DisjointBranchesTree(2)
    assert tree.restrict(Node(4, 1), 2) == Node(2, 1)


def test_restrict_finite_support_domain_cut():
    tree = FiniteSupportTree((), 2)
    assert tree.restrict(Node(3, ((0, 1), (2, 1))), 2) == Node(2, ((0, 1),))


def test_restrict_level_errors():
    tree = DisjointBranchesTree(2)
    with pytest.raises(ValueError):
        tree.restrict(Node(2, 0), 2)
    with pytest.raises(ValueError):
        tree.restrict(Node(2, 0), 5)


def test_pro_level_within_disjoint():
    tree = DisjointBranchesTree(2)
    got = tree.pro_level_within(3, Node(1, 0), [Node(3, 0), Node(3, 1)])
    assert got == (Node(3, 0),)


def test_pro_level_within_decreasing():
    tree = DecreasingSeqTree()
    got = tree.pro_level_within(2, Node(1, (5,)), [Node(2, (5, 2)), Node(2, (4, 2))])
    assert got == (Node(2, (5, 2)),)


def test_pro_level_within_finite_support_extends_zero():
    tree = FiniteSupportTree((), 2)
    candidates = [Node(2, ()), Node(2, ((0, 1),)), Node(2, ((1, 1),))]
    got = tree.pro_level_within(2, Node(1, ()), candidates)
    # extending the zero map below level 1 means value 0 at position 0
    assert got == (Node(2, ()), Node(2, ((1, 1),)))


def test_pro_level_within_level_mismatch_errors():
    tree = DisjointBranchesTree(2)
    with pytest.raises(ValueError):
        tree.pro_level_within(3, Node(1, 0), [Node(2, 0)])


def test_branch_node_disjoint():
    tree = DisjointBranchesTree(3)
    assert tree.branch_node(tree.branch(2), 5) == Node(5, 2)


def test_branch_node_finite_support_below_support():
    tree = FiniteSupportTree((), 2)
    t = tree.branch(((1, 1),))
    assert tree.branch_node(t, 1) == Node(1, ())
    assert tree.branch_node(t, 3) == Node(3, ((1, 1),))


def test_branch_count_per_kind():
    assert DisjointBranchesTree(3).branch_count() == 3
    assert FiniteSupportTree((), 2).branch_count() == COUNTABLY_INFINITE
    assert DecreasingSeqTree().branch_count() == 0


def test_decreasing_tree_rejects_branches():
    tree = DecreasingSeqTree()
    with pytest.raises(NoBranchError):
        tree.branch(())


def test_decreasing_well_founded_descent_is_finite():
    # all descent chains from a node are finite: children values sit below the last entry
    tree = DecreasingSeqTree()

    def longest_descent(node):
        last = node.address[-1] if node.address else 4
        best = 0
        for v in range(last):
            child = Node(node.level + 1, node.address + (v,))
            tree.check_node(child)
            best = max(best, 1 + longest_descent(child))
        return best

    for start in [Node(1, (3,)), Node(2, (4, 2)), Node(0, ())]:
        assert longest_descent(start) < 10


def test_decreasing_has_nodes_at_every_desk_level():
    tree = DecreasingSeqTree()
    for level in range(9):
        node = Node(level, tuple(range(level - 1, -1, -1)))
        tree.check_node(node)


def test_finite_support_branch_count_matches_support_enumeration():
    # distinct finite binary supports give distinct branches
    tree = FiniteSupportTree((), 2)
    seen = set()
    for positions in [(), (0,), (1,), (0, 1), (2,), (0, 2)]:
        seen.add(tree.branch(tuple((p, 1) for p in positions)))
    assert len(seen) == 6


def test_restriction_transitivity_randomized():
    rng = Random(7)
    trees = [DisjointBranchesTree(3), FiniteSupportTree((3,), 2), DecreasingSeqTree()]
    for tree in trees:
        for _ in range(60):
            j = rng.randint(2, 8)
            node = sample_node(tree, rng, j)
            jp = rng.randint(1, j - 1)
            i = rng.randint(0, jp - 1)
            assert tree.restrict(node, i) == tree.restrict(tree.restrict(node, jp), i)


def test_branch_coherence_randomized():
    rng = Random(11)
    for tree in [DisjointBranchesTree(3), FiniteSupportTree((), 2)]:
        for _ in range(40):
            t = sample_branch(tree, rng)
            for j in range(1, 9):
                for i in range(j):
                    assert tree.restrict(tree.branch_node(t, j), i) == tree.branch_node(t, i)


def test_node_validation():
    tree = FiniteSupportTree((2, 3), 2)
    tree.check_node(Node(2, ((1, 2),)))
    with pytest.raises(ValueError):
        tree.check_node(Node(2, ((1, 3),)))  # value beyond width
    with pytest.raises(ValueError):
        tree.check_node(Node(1, ((1, 1),)))  # position beyond level
    with pytest.raises(ValueError):
        tree.check_node(Node(2, ((0, 0),)))  # explicit zero is not canonical
    with pytest.raises(ValueError):
        DecreasingSeqTree().check_node(Node(2, (3, 3)))


def test_eventual_width_must_exceed_one():
    with pytest.raises(ValueError):
        FiniteSupportTree((), 1)


def test_separation_and_presentation_levels():
    tree = FiniteSupportTree((), 2)
    t1 = tree.branch(((1, 1),))
    t2 = tree.branch(((1, 1), (3, 1)))
    assert tree.separation_level(t1, t2) == 4
    assert tree.presentation_level(t2) == 4
    assert tree.presentation_level(tree.branch(())) == 0
    disj = DisjointBranchesTree(2)
    assert disj.separation_level(disj.branch(0), disj.branch(1)) == 0


def test_tree_json_round_trip(sys1, sys2, sysf):
    from invsys import Tree

    for system in (sys1, sys2, sysf):
        assert Tree.from_json(system.tree.to_json()) == system.tree
    node = Node(3, ((0, 1), (2, 1)))
    assert sysf.tree.node_from_json(node.to_json()) == node
