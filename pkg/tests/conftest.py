import pytest

from invsys import DecreasingSeqTree, DisjointBranchesTree, FiniteSupportTree, Ring, System


@pytest.fixture
def sys1():
    """Z/3 over two disjoint branches."""
    return System(Ring(3), DisjointBranchesTree(2))


@pytest.fixture
def sys2():
    """Z/3 over the branchless decreasing-sequence tree."""
    return System(Ring(3), DecreasingSeqTree())


@pytest.fixture
def sys3():
    """Z/2 over three disjoint branches."""
    return System(Ring(2), DisjointBranchesTree(3))


@pytest.fixture
def sysf():
    """Z/3 over the width-2 finite-support tree."""
    return System(Ring(3), FiniteSupportTree((), 2))
