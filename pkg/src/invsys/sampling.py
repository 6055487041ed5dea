"""Deterministic random generation of nodes, branches, and planted elements.

Everything is driven by a caller-supplied ``random.Random`` so identical seeds
reproduce identical objects byte for byte.
"""

from __future__ import annotations

from random import Random

from .coherent import Coboundary, Planted, coboundary, planted
from .freemod import module_element
from .system import System
from .tree import Branch, DecreasingSeqTree, DisjointBranchesTree, FiniteSupportTree, Node, Tree


def sample_node(tree: Tree, rng: Random, level: int) -> Node:
    if isinstance(tree, DisjointBranchesTree):
        return Node(level, rng.randrange(tree.count))
    if isinstance(tree, FiniteSupportTree):
        pairs = []
        for pos in range(level):
            if tree.width(pos) >= 2 and rng.random() < 0.4:
                pairs.append((pos, rng.randrange(1, tree.width(pos))))
        return Node(level, tuple(pairs))
    if isinstance(tree, DecreasingSeqTree):
        values = rng.sample(range(level + 3), level)
        return Node(level, tuple(sorted(values, reverse=True)))
    raise TypeError(f"unknown tree kind: {tree!r}")


def sample_branch(tree: Tree, rng: Random, max_position: int = 4) -> Branch:
    if isinstance(tree, DisjointBranchesTree):
        return tree.branch(rng.randrange(tree.count))
    if isinstance(tree, FiniteSupportTree):
        pairs = []
        for pos in range(max_position):
            if tree.width(pos) >= 2 and rng.random() < 0.5:
                pairs.append((pos, rng.randrange(1, tree.width(pos))))
        return tree.branch(tuple(pairs))
    raise ValueError("tree has no branches to sample")


def sample_branches(tree: Tree, rng: Random, count: int, max_position: int = 4) -> list[Branch]:
    """Up to ``count`` distinct branches; fewer when the family is too small."""
    out: list[Branch] = []
    for _ in range(40 * (count + 1)):
        if len(out) >= count:
            break
        b = sample_branch(tree, rng, max_position)
        if b not in out:
            out.append(b)
    return out


def random_coboundary(
    system: System,
    rng: Random,
    max_levels: int = 4,
    max_terms: int = 3,
    level_cap: int = 4,
    index_spread: int = 4,
    index_cap: int | None = None,
) -> Coboundary:
    table = {}
    levels = rng.sample(range(level_cap), rng.randint(0, min(max_levels, level_cap)))
    for level in levels:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            node = sample_node(system.tree, rng, level)
            top = level + index_spread
            if index_cap is not None:
                top = min(top, index_cap)
            if top <= level:
                continue
            l = rng.randint(level + 1, top)
            key = (node, l)
            terms[key] = terms.get(key, 0) + rng.randrange(1, system.ring.modulus)
        elem = module_element(level, terms, system.ring, system.tree)
        if not elem.is_zero():
            table[level] = elem
    return coboundary(system, table)


def random_planted(
    system: System,
    rng: Random,
    max_branches: int = 3,
    max_fact_levels: int = 4,
    max_terms: int = 3,
    level_cap: int = 4,
    index_spread: int = 4,
    index_cap: int | None = None,
    branch_position_cap: int = 4,
) -> Planted:
    combo = {}
    if system.tree.has_branches():
        for branch in sample_branches(
            system.tree, rng, rng.randint(0, max_branches), branch_position_cap
        ):
            combo[branch] = rng.randrange(1, system.ring.modulus)
    fact = random_coboundary(
        system, rng,
        max_levels=max_fact_levels, max_terms=max_terms, level_cap=level_cap,
        index_spread=index_spread, index_cap=index_cap,
    )
    return planted(system, combo, fact)
