"""Elements of the free modules attached to tree levels, and the connecting maps.

The level-i module is freely generated by pairs ``(node at level i, l)`` with
``l > i``.  Elements are finite coefficient maps in canonical form: zero
coefficients dropped, terms sorted by node address then generator index, so
equality is syntactic.  The connecting homomorphism into a lower level i sends
the generator ``(eta, l)`` of level j to ``(eta|i, l) - (eta|i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .indexset import TailSet
from .ring import Ring, RingElem
from .tree import Node, Tree


@dataclass(frozen=True)
class ModuleElement:
    """A finitely supported element of the level-``level`` free module."""

    level: int
    terms: tuple[tuple[Node, int, int], ...]  # (node, l, coefficient), canonical
    ring: Ring
    tree: Tree

    # -- construction -----------------------------------------------------

    @staticmethod
    def zero(level: int, ring: Ring, tree: Tree) -> ModuleElement:
        return ModuleElement(level, (), ring, tree)

    def _check_mate(self, other: ModuleElement) -> None:
        if not isinstance(other, ModuleElement):
            raise TypeError(f"cannot combine ModuleElement with {type(other).__name__}")
        if self.level != other.level:
            raise ValueError(f"mismatched levels: {self.level} vs {other.level}")
        if self.ring != other.ring or self.tree != other.tree:
            raise ValueError("operands live in different systems")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ModuleElement) -> ModuleElement:
        self._check_mate(other)
        acc = {(n, l): c for n, l, c in self.terms}
        for n, l, c in other.terms:
            acc[(n, l)] = acc.get((n, l), 0) + c
        return module_element(self.level, acc, self.ring, self.tree)

    def __neg__(self) -> ModuleElement:
        return module_element(
            self.level, {(n, l): -c for n, l, c in self.terms}, self.ring, self.tree
        )

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return self + (-other)

    def scale(self, c) -> ModuleElement:
        value = c.value if isinstance(c, RingElem) else int(c)
        return module_element(
            self.level, {(n, l): value * coeff for n, l, coeff in self.terms},
            self.ring, self.tree,
        )

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[tuple[Node, int], ...]:
        return tuple((n, l) for n, l, _ in self.terms)

    def coefficient(self, node: Node, l: int) -> RingElem:
        for n, ll, c in self.terms:
            if n == node and ll == l:
                return self.ring.elem(c)
        return self.ring.zero

    def restrict_to(self, s: TailSet) -> ModuleElement:
        """Keep exactly the terms whose generator index lies in ``s``."""
        return module_element(
            self.level,
            {(n, l): c for n, l, c in self.terms if s.contains(l)},
            self.ring, self.tree,
        )

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "terms": [{"node": n.to_json(), "l": l, "coeff": c} for n, l, c in self.terms],
        }

    @staticmethod
    def from_json(obj: dict, ring: Ring, tree: Tree) -> ModuleElement:
        if not isinstance(obj, dict) or "level" not in obj or "terms" not in obj:
            raise ValueError(f"module element must have level and terms: {obj!r}")
        level = obj["level"]
        acc: dict[tuple[Node, int], int] = {}
        for term in obj["terms"]:
            node = tree.node_from_json(term["node"])
            key = (node, term["l"])
            acc[key] = acc.get(key, 0) + int(term["coeff"])
        return module_element(level, acc, ring, tree)


def module_element(level: int, terms, ring: Ring, tree: Tree) -> ModuleElement:
    """Canonicalizing constructor from a ``(node, l) -> coefficient`` mapping."""
    if level < 0:
        raise ValueError("level must be non-negative")
    items = terms.items() if isinstance(terms, dict) else terms
    canonical = []
    for (node, l), c in items:
        value = c.value if isinstance(c, RingElem) else int(c)
        value %= ring.modulus
        if value == 0:
            continue
        tree.check_node(node)
        if node.level != level:
            raise ValueError(f"term node {node!r} is not at level {level}")
        if l <= level:
            raise ValueError(f"generator index {l} must exceed the level {level}")
        canonical.append((node, l, value))
    canonical.sort(key=lambda t: (tree.node_sort_key(t[0]), t[1]))
    return ModuleElement(level, tuple(canonical), ring, tree)


def generator(node: Node, l: int, ring: Ring, tree: Tree) -> ModuleElement:
    """The basis element at ``(node, l)``."""
    return module_element(node.level, {(node, l): 1}, ring, tree)


def apply_hom(e: ModuleElement, i: int) -> ModuleElement:
    """Image of a level-j element under the connecting homomorphism into level ``i < j``."""
    if i >= e.level:
        raise ValueError(f"target level {i} must be below the source level {e.level}")
    if i < 0:
        raise ValueError("target level must be non-negative")
    acc: dict[tuple[Node, int], int] = {}
    j = e.level
    for eta, l, c in e.terms:
        down = e.tree.restrict(eta, i)
        acc[(down, l)] = acc.get((down, l), 0) + c
        acc[(down, j)] = acc.get((down, j), 0) - c
    return module_element(i, acc, e.ring, e.tree)
