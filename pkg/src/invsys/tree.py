"""Level trees of height omega with canonical node addresses and branch handles.

Three presented families are supported:

* ``disjoint_branches(count)`` -- ``count`` pairwise disjoint chains; level i
  has exactly ``count`` nodes and node k extends only node k below it.
* ``finite_support(widths)`` -- nodes at level i are maps defined on ``[0, i)``
  with finitely many nonzero values, value at position p drawn from
  ``[0, widths(p))``, ordered by inclusion.  Branches are the finitely
  supported total selectors, a countably infinite family.
* ``decreasing_seq`` -- nodes at level i are strictly decreasing length-i
  sequences of non-negative integers ordered by end-extension.  Every level is
  populated but there is no infinite branch.

Levels of the last two families are infinite, so there is deliberately no
full-level enumeration: all operations are restriction and membership based
and consult only nodes occurring in finite supports.
"""

from __future__ import annotations

from dataclasses import dataclass

COUNTABLY_INFINITE = "countably-infinite"


class NoBranchError(ValueError):
    """Raised when a branch handle is requested from a branchless tree."""


@dataclass(frozen=True)
class Node:
    """A tree node: its level and a canonical, kind-specific address."""

    level: int
    address: int | tuple

    def to_json(self) -> dict:
        return {"level": self.level, "address": _address_to_json(self.address)}


@dataclass(frozen=True)
class Branch:
    """A handle for a presented branch (a coherent selector of one node per level)."""

    presentation: int | tuple

    def to_json(self):
        return _address_to_json(self.presentation)


def _address_to_json(address):
    if isinstance(address, int):
        return address
    return [list(p) if isinstance(p, tuple) else p for p in address]


class Tree:
    """Common operations on a presented level tree."""

    kind = ""

    # -- nodes ------------------------------------------------------------

    def check_node(self, node: Node) -> None:
        raise NotImplementedError

    def is_valid_node(self, node: Node) -> bool:
        try:
            self.check_node(node)
        except ValueError:
            return False
        return True

    def restrict(self, node: Node, i: int) -> Node:
        """The unique node at level ``i < node.level`` lying below ``node``."""
        self.check_node(node)
        if i >= node.level:
            raise ValueError(f"restriction level {i} must be below node level {node.level}")
        if i < 0:
            raise ValueError("restriction level must be non-negative")
        return self._restrict(node, i)

    def _restrict(self, node: Node, i: int) -> Node:
        raise NotImplementedError

    def extends(self, eta: Node, nu: Node) -> bool:
        """Whether ``nu`` lies below ``eta`` in the tree order."""
        if nu.level > eta.level:
            return False
        if nu.level == eta.level:
            return nu == eta
        return self.restrict(eta, nu.level) == nu

    def pro_level_within(self, j: int, nu: Node, candidates) -> tuple[Node, ...]:
        """The candidates at level ``j`` extending ``nu``, in address order."""
        self.check_node(nu)
        if nu.level >= j:
            raise ValueError(f"projection level {j} must exceed node level {nu.level}")
        out = []
        for eta in candidates:
            if eta.level != j:
                raise ValueError(f"candidate {eta!r} is not at level {j}")
            self.check_node(eta)
            if self.restrict(eta, nu.level) == nu:
                out.append(eta)
        return tuple(sorted(out, key=self.node_sort_key))

    def node_sort_key(self, node: Node):
        raise NotImplementedError

    # -- branches ---------------------------------------------------------

    def has_branches(self) -> bool:
        raise NotImplementedError

    def branch(self, presentation) -> Branch:
        """Validate a presentation and wrap it as a branch handle."""
        raise NotImplementedError

    def branch_node(self, branch: Branch, i: int) -> Node:
        """The node the branch passes through at level ``i``."""
        raise NotImplementedError

    def branch_count(self):
        """Number of branches: an integer, 0, or ``COUNTABLY_INFINITE``."""
        raise NotImplementedError

    def branch_sort_key(self, branch: Branch):
        raise NotImplementedError

    def branch_from_node(self, node: Node) -> Branch:
        """The canonical branch through ``node`` (minimal continuation)."""
        raise NotImplementedError

    def separation_level(self, b1: Branch, b2: Branch) -> int:
        """Least level past which two distinct branches select distinct nodes."""
        raise NotImplementedError

    def presentation_level(self, branch: Branch) -> int:
        """Least level from which the branch's node determines the branch."""
        raise NotImplementedError

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_json(obj: dict) -> Tree:
        if not isinstance(obj, dict):
            raise ValueError(f"tree description must be an object, got {obj!r}")
        kind = obj.get("kind")
        if kind == "disjoint_branches":
            return DisjointBranchesTree(obj["count"])
        if kind == "finite_support":
            widths = obj.get("widths")
            if not isinstance(widths, dict):
                raise ValueError("finite_support tree needs a widths object")
            return FiniteSupportTree(tuple(widths.get("table", ())), widths["eventual"])
        if kind == "decreasing_seq":
            return DecreasingSeqTree()
        raise ValueError(f"unknown tree kind: {kind!r}")

    def node_from_json(self, obj: dict) -> Node:
        if not isinstance(obj, dict) or "level" not in obj or "address" not in obj:
            raise ValueError(f"node description must have level and address: {obj!r}")
        node = Node(obj["level"], self._address_from_json(obj["address"]))
        self.check_node(node)
        return node

    def branch_from_json(self, obj) -> Branch:
        return self.branch(self._address_from_json(obj))

    def _address_from_json(self, obj):
        raise NotImplementedError


def _as_support_map(obj) -> tuple[tuple[int, int], ...]:
    pairs = []
    for entry in obj:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"support map entry must be a [position, value] pair: {entry!r}")
        pairs.append((int(entry[0]), int(entry[1])))
    return tuple(sorted(pairs))


@dataclass(frozen=True)
class DisjointBranchesTree(Tree):
    """``count`` disjoint chains; node addresses are branch indices."""

    count: int
    kind = "disjoint_branches"

    def __post_init__(self):
        if not isinstance(self.count, int) or self.count < 1:
            raise ValueError(f"branch count must be a positive integer, got {self.count!r}")

    def check_node(self, node: Node) -> None:
        if node.level < 0:
            raise ValueError(f"negative level: {node!r}")
        if not isinstance(node.address, int) or not 0 <= node.address < self.count:
            raise ValueError(f"node address must be a branch index below {self.count}: {node!r}")

    def _restrict(self, node: Node, i: int) -> Node:
        return Node(i, node.address)

    def node_sort_key(self, node: Node):
        return (node.address,)

    def has_branches(self) -> bool:
        return True

    def branch(self, presentation) -> Branch:
        if not isinstance(presentation, int) or not 0 <= presentation < self.count:
            raise ValueError(f"branch index must lie below {self.count}: {presentation!r}")
        return Branch(presentation)

    def branch_node(self, branch: Branch, i: int) -> Node:
        node = Node(i, branch.presentation)
        self.check_node(node)
        return node

    def branch_count(self):
        return self.count

    def branch_sort_key(self, branch: Branch):
        return (branch.presentation,)

    def branch_from_node(self, node: Node) -> Branch:
        self.check_node(node)
        return Branch(node.address)

    def separation_level(self, b1: Branch, b2: Branch) -> int:
        return 0

    def presentation_level(self, branch: Branch) -> int:
        return 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "count": self.count}

    def _address_from_json(self, obj):
        if not isinstance(obj, int):
            raise ValueError(f"disjoint-branch address must be an integer: {obj!r}")
        return obj


@dataclass(frozen=True)
class FiniteSupportTree(Tree):
    """Nodes are finitely supported maps below their level, ordered by inclusion.

    ``widths`` gives the value range at each position: a finite table followed
    by an eventual constant.  The eventual width must be at least 2 so that the
    presented branch family is genuinely infinite.
    """

    widths_table: tuple[int, ...]
    eventual_width: int
    kind = "finite_support"

    def __post_init__(self):
        if any(not isinstance(w, int) or w < 1 for w in self.widths_table):
            raise ValueError(f"width table entries must be positive integers: {self.widths_table!r}")
        if not isinstance(self.eventual_width, int) or self.eventual_width < 2:
            raise ValueError(f"eventual width must be an integer >= 2, got {self.eventual_width!r}")

    def width(self, position: int) -> int:
        if position < len(self.widths_table):
            return self.widths_table[position]
        return self.eventual_width

    def _check_support(self, pairs, bound: int | None, what: str) -> None:
        if not isinstance(pairs, tuple):
            raise ValueError(f"{what} address must be a tuple of pairs: {pairs!r}")
        last = -1
        for entry in pairs:
            if not isinstance(entry, tuple) or len(entry) != 2:
                raise ValueError(f"{what} support entry must be a (position, value) pair: {entry!r}")
            p, v = entry
            if p <= last:
                raise ValueError(f"{what} support positions must be strictly increasing: {pairs!r}")
            last = p
            if p < 0 or (bound is not None and p >= bound):
                raise ValueError(f"{what} support position {p} out of range")
            if not 1 <= v < self.width(p):
                raise ValueError(f"{what} value {v} at position {p} must lie in [1, {self.width(p)})")

    def check_node(self, node: Node) -> None:
        if node.level < 0:
            raise ValueError(f"negative level: {node!r}")
        self._check_support(node.address, node.level, "node")

    def _restrict(self, node: Node, i: int) -> Node:
        return Node(i, tuple(p for p in node.address if p[0] < i))

    def node_sort_key(self, node: Node):
        return node.address

    def has_branches(self) -> bool:
        return True

    def branch(self, presentation) -> Branch:
        if not isinstance(presentation, tuple):
            presentation = _as_support_map(presentation)
        self._check_support(presentation, None, "branch")
        return Branch(presentation)

    def branch_node(self, branch: Branch, i: int) -> Node:
        if i < 0:
            raise ValueError("level must be non-negative")
        return Node(i, tuple(p for p in branch.presentation if p[0] < i))

    def branch_count(self):
        return COUNTABLY_INFINITE

    def branch_sort_key(self, branch: Branch):
        return branch.presentation

    def branch_from_node(self, node: Node) -> Branch:
        self.check_node(node)
        return Branch(node.address)

    def separation_level(self, b1: Branch, b2: Branch) -> int:
        m1 = dict(b1.presentation)
        m2 = dict(b2.presentation)
        if m1 == m2:
            raise ValueError("branches do not separate: equal presentations")
        first_diff = min(p for p in set(m1) | set(m2) if m1.get(p, 0) != m2.get(p, 0))
        return first_diff + 1

    def presentation_level(self, branch: Branch) -> int:
        if not branch.presentation:
            return 0
        return branch.presentation[-1][0] + 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "widths": {"table": list(self.widths_table), "eventual": self.eventual_width},
        }

    def _address_from_json(self, obj):
        return _as_support_map(obj)


@dataclass(frozen=True)
class DecreasingSeqTree(Tree):
    """Strictly decreasing integer sequences; populated at every level, branchless."""

    kind = "decreasing_seq"

    def check_node(self, node: Node) -> None:
        if node.level < 0:
            raise ValueError(f"negative level: {node!r}")
        seq = node.address
        if not isinstance(seq, tuple) or len(seq) != node.level:
            raise ValueError(f"node address must be a length-{node.level} sequence: {node!r}")
        for k, v in enumerate(seq):
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"sequence entries must be non-negative integers: {node!r}")
            if k > 0 and v >= seq[k - 1]:
                raise ValueError(f"sequence must be strictly decreasing: {node!r}")

    def _restrict(self, node: Node, i: int) -> Node:
        return Node(i, node.address[:i])

    def node_sort_key(self, node: Node):
        return node.address

    def has_branches(self) -> bool:
        return False

    def branch(self, presentation) -> Branch:
        raise NoBranchError("a decreasing-sequence tree has no branches")

    def branch_node(self, branch: Branch, i: int) -> Node:
        raise NoBranchError("a decreasing-sequence tree has no branches")

    def branch_count(self):
        return 0

    def branch_sort_key(self, branch: Branch):
        raise NoBranchError("a decreasing-sequence tree has no branches")

    def branch_from_node(self, node: Node) -> Branch:
        raise NoBranchError("no branch passes through a decreasing-sequence node")

    def separation_level(self, b1: Branch, b2: Branch) -> int:
        raise NoBranchError("a decreasing-sequence tree has no branches")

    def presentation_level(self, branch: Branch) -> int:
        raise NoBranchError("a decreasing-sequence tree has no branches")

    def to_json(self) -> dict:
        return {"kind": self.kind}

    def _address_from_json(self, obj):
        if not isinstance(obj, list):
            raise ValueError(f"decreasing-sequence address must be a list: {obj!r}")
        return tuple(int(v) for v in obj)
