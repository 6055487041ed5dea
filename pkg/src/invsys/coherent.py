"""Finitely presented coherent families and their normalization.

A coherent family assigns to every index pair ``(i, j)`` an element of the
level-i module so that ``a[i,k] = a[i,j] + hom(a[j,k])`` for all ``i < j < k``.
The presented members are *planted elements*: a finite combination of branch
generators (entry ``(i,j)`` of the generator of branch t is the basis element
``(t(i), j)``) plus a coboundary part induced by a finitely supported sequence
``y`` via ``y_i - hom(y_j)``.  Such combinations span everything expressible
modulo coboundaries, so they are complete for quotient-level questions.

Every identity checked here is universally quantified below a horizon and
guaranteed by the algebra above it: beyond the stabilization bound (one past
the last level carrying a nonzero ``y``) all entries are pure branch form, so
finite checks plus that uniformity give exact answers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .freemod import ModuleElement, apply_hom, module_element
from .indexset import FULL, IndexSet, ProPiece, below, index_set, tail
from .ring import RingElem
from .system import System
from .tree import Branch, Node


@dataclass(frozen=True)
class Coboundary:
    """A finitely supported sequence ``y`` of module elements, one per level.

    Levels not listed carry zero.  The induced family ``y_i - hom(y_j)`` is
    coherent for free, by the composition law of the connecting maps.
    """

    system: System
    entries: tuple[tuple[int, ModuleElement], ...]  # (level, nonzero element), sorted

    def y(self, i: int) -> ModuleElement:
        for level, elem in self.entries:
            if level == i:
                return elem
        return ModuleElement.zero(i, self.system.ring, self.system.tree)

    @property
    def stab_bound(self) -> int:
        """One past the last level with nonzero ``y``; 0 when empty."""
        return self.entries[-1][0] + 1 if self.entries else 0

    def max_generator_index(self) -> int:
        """The largest generator index appearing in any ``y``; 0 when empty."""
        out = 0
        for _, elem in self.entries:
            for _, l, _ in elem.terms:
                out = max(out, l)
        return out

    def induced(self, i: int, j: int) -> ModuleElement:
        """Entry ``(i, j)`` of the induced coherent family."""
        if i >= j:
            raise ValueError(f"need i < j, got ({i}, {j})")
        return self.y(i) - apply_hom(self.y(j), i)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: Coboundary) -> Coboundary:
        if other.system != self.system:
            raise ValueError("operands live in different systems")
        levels = {lvl for lvl, _ in self.entries} | {lvl for lvl, _ in other.entries}
        return coboundary(self.system, {i: self.y(i) + other.y(i) for i in levels})

    def __neg__(self) -> Coboundary:
        return coboundary(self.system, {lvl: -elem for lvl, elem in self.entries})

    def __sub__(self, other: Coboundary) -> Coboundary:
        return self + (-other)

    def to_json(self) -> list:
        return [{"level": lvl, "elem": elem.to_json()} for lvl, elem in self.entries]

    @staticmethod
    def from_json(obj: list, system: System) -> Coboundary:
        table = {}
        for entry in obj:
            elem = ModuleElement.from_json(entry["elem"], system.ring, system.tree)
            if elem.level != entry["level"]:
                raise ValueError(f"level tag {entry['level']} does not match element level {elem.level}")
            lvl = entry["level"]
            table[lvl] = table.get(lvl, ModuleElement.zero(lvl, system.ring, system.tree)) + elem
        return coboundary(system, table)


def coboundary(system: System, table) -> Coboundary:
    """Canonicalizing constructor from a ``level -> element`` mapping."""
    items = table.items() if isinstance(table, dict) else table
    entries = []
    for level, elem in items:
        if elem.level != level:
            raise ValueError(f"element at level {elem.level} filed under level {level}")
        if elem.ring != system.ring or elem.tree != system.tree:
            raise ValueError("element lives in a different system")
        if not elem.is_zero():
            entries.append((level, elem))
    entries.sort(key=lambda e: e[0])
    return Coboundary(system, tuple(entries))


@dataclass(frozen=True)
class Planted:
    """A branch-generator combination plus a coboundary part."""

    system: System
    combo: tuple[tuple[Branch, int], ...]  # (branch, nonzero coefficient), canonical
    fact: Coboundary

    @property
    def stab_bound(self) -> int:
        return self.fact.stab_bound

    @property
    def probe_bound(self) -> int:
        """A level past which entries are supported on separated branch nodes,
        each naming its branch outright and carrying its exact coefficient.

        This single number stands in for the unbounded-pigeonhole arguments
        that justify branch extraction: all structure read at or beyond it is
        still certified against the evaluation map afterwards.
        """
        bound = self.stab_bound
        branches = [b for b, _ in self.combo]
        tree = self.system.tree
        for b in branches:
            bound = max(bound, tree.presentation_level(b))
        for m, b1 in enumerate(branches):
            for b2 in branches[m + 1:]:
                bound = max(bound, tree.separation_level(b1, b2))
        return bound

    def is_zero(self) -> bool:
        return not self.combo and self.fact.is_zero()

    # -- evaluation -----------------------------------------------------------

    def eval_entry(self, i: int, j: int) -> ModuleElement:
        """Entry ``(i, j)`` of the presented coherent family, canonical."""
        if not 0 <= i < j:
            raise ValueError(f"need 0 <= i < j, got ({i}, {j})")
        tree = self.system.tree
        acc: dict[tuple[Node, int], int] = {}
        for branch, coeff in self.combo:
            node = tree.branch_node(branch, i)
            acc[(node, j)] = acc.get((node, j), 0) + coeff
        out = module_element(i, acc, self.system.ring, tree)
        if not self.fact.is_zero():
            out = out + self.fact.induced(i, j)
        return out

    def entry_coefficient(self, i: int, j: int, node: Node, l: int) -> RingElem:
        if l <= i:
            raise ValueError(f"generator index {l} must exceed the level {i}")
        return self.eval_entry(i, j).coefficient(node, l)

    # -- arithmetic -------------------------------------------------------------

    def _merge(self, other: Planted, sign: int) -> Planted:
        if other.system != self.system:
            raise ValueError("operands live in different systems")
        acc = {b: c for b, c in self.combo}
        for b, c in other.combo:
            acc[b] = acc.get(b, 0) + sign * c
        fact = self.fact + other.fact if sign > 0 else self.fact - other.fact
        return planted(self.system, acc, fact)

    def __add__(self, other: Planted) -> Planted:
        return self._merge(other, 1)

    def __sub__(self, other: Planted) -> Planted:
        return self._merge(other, -1)

    def __neg__(self) -> Planted:
        return planted(
            self.system, {b: -c for b, c in self.combo}, -self.fact
        )

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "combo": [{"branch": b.to_json(), "coeff": c} for b, c in self.combo],
            "fact_y": self.fact.to_json(),
        }

    @staticmethod
    def from_json(obj: dict, system: System) -> Planted:
        if not isinstance(obj, dict):
            raise ValueError(f"element description must be an object, got {type(obj).__name__}")
        acc: dict[Branch, int] = {}
        for entry in obj.get("combo", ()):
            branch = system.tree.branch_from_json(entry["branch"])
            acc[branch] = acc.get(branch, 0) + int(entry["coeff"])
        fact = Coboundary.from_json(obj.get("fact_y", ()), system)
        return planted(system, acc, fact)


def planted(system: System, combo, fact: Coboundary | None = None) -> Planted:
    """Canonicalizing constructor: branches merged, sorted, zero coefficients dropped."""
    if fact is None:
        fact = coboundary(system, {})
    if fact.system != system:
        raise ValueError("coboundary part lives in a different system")
    items = combo.items() if isinstance(combo, dict) else combo
    acc: dict[Branch, int] = {}
    for branch, coeff in items:
        value = coeff.value if isinstance(coeff, RingElem) else int(coeff)
        acc[branch] = acc.get(branch, 0) + value
    tree = system.tree
    canonical = []
    for branch, coeff in acc.items():
        coeff %= system.ring.modulus
        if coeff == 0:
            continue
        tree.branch(branch.presentation)
        canonical.append((branch, coeff))
    canonical.sort(key=lambda e: tree.branch_sort_key(e[0]))
    return Planted(system, tuple(canonical), fact)


def branch_generator(system: System, branch: Branch, coeff=1) -> Planted:
    """The coherent family attached to one branch, scaled by ``coeff``."""
    return planted(system, {branch: coeff})


def zero_element(system: System) -> Planted:
    return planted(system, {})


def default_horizon(a: Planted) -> int:
    """Default check horizon: everything interesting happens below it."""
    return max(8, 2 * a.stab_bound + 4)


# -- identity checks ----------------------------------------------------------


def check_coherence(a: Planted, horizon: int, eval_fn=None) -> bool:
    """Verify ``a[i,k] = a[i,j] + hom(a[j,k])`` for all ``i < j < k < horizon``.

    ``eval_fn`` substitutes the entry map, letting tests inject faults.
    """
    if horizon < 3:
        raise ValueError("horizon must be at least 3")
    ev = eval_fn if eval_fn is not None else a.eval_entry
    for i in range(horizon):
        for j in range(i + 1, horizon):
            for k in range(j + 1, horizon):
                if ev(i, k) != ev(i, j) + apply_hom(ev(j, k), i):
                    return False
    return True


@dataclass(frozen=True)
class EqViolation:
    equation: str
    i: int
    j: int
    k: int
    node: Node
    l: int

    def to_json(self) -> dict:
        return {
            "equation": self.equation, "i": self.i, "j": self.j, "k": self.k,
            "node": self.node.to_json(), "l": self.l,
        }


@dataclass(frozen=True)
class EqReport:
    horizon: int
    violations: tuple[EqViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }


def check_eq_recurrences(a: Planted, horizon: int, eval_fn=None) -> EqReport:
    """Check the three coefficient recurrences relating entries at ``(i,k)``,
    ``(i,j)`` and ``(j,k)`` over every triple below the horizon.

    For a fixed intermediate level j, the coefficient of ``(nu, l)`` in the
    ``(i,k)`` entry equals the ``(i,j)`` coefficient when ``l < j``; picks up
    the sum of the ``(j,k)`` coefficients over nodes extending ``nu`` when
    ``l > j``; and loses the total such mass at ``l = j``.  Sums range over
    support nodes only, so every check is finite.

    ``eval_fn`` substitutes the entry map, letting tests inject faults.
    """
    if horizon < 3:
        raise ValueError("horizon must be at least 3")
    ev = eval_fn if eval_fn is not None else a.eval_entry
    tree = a.system.tree
    ring = a.system.ring
    violations = []
    for i in range(horizon):
        for j in range(i + 1, horizon):
            for k in range(j + 1, horizon):
                e_ij = ev(i, j)
                e_ik = ev(i, k)
                e_jk = ev(j, k)
                upper_nodes = tuple({eta for eta, _, _ in e_jk.terms})
                candidates = set()
                for nu, l, _ in e_ij.terms:
                    candidates.add((nu, l))
                for nu, l, _ in e_ik.terms:
                    candidates.add((nu, l))
                for eta, l, _ in e_jk.terms:
                    down = tree.restrict(eta, i)
                    candidates.add((down, l))
                    candidates.add((down, j))
                for nu, l in sorted(candidates, key=lambda t: (tree.node_sort_key(t[0]), t[1])):
                    got = e_ik.coefficient(nu, l)
                    above = tree.pro_level_within(j, nu, upper_nodes)
                    if l < j:
                        want = e_ij.coefficient(nu, l)
                        tag = "below"
                    elif l == j:
                        total = ring.zero
                        for eta in above:
                            for eta2, l2, c in e_jk.terms:
                                if eta2 == eta and l2 > j:
                                    total = total + ring.elem(c)
                        want = e_ij.coefficient(nu, j) - total
                        tag = "at"
                    else:
                        total = ring.zero
                        for eta in above:
                            total = total + e_jk.coefficient(eta, l)
                        want = e_ij.coefficient(nu, l) + total
                        tag = "above"
                    if got != want:
                        violations.append(EqViolation(tag, i, j, k, nu, l))
    return EqReport(horizon, tuple(violations))


def restriction_stability(a: Planted, i: int, j: int, k: int, eval_fn=None) -> bool:
    """Whether the parts below ``j`` of the ``(i,j)`` and ``(i,k)`` entries agree.

    ``eval_fn`` substitutes the entry map, letting tests inject faults.
    """
    if not i < j < k:
        raise ValueError(f"need i < j < k, got ({i}, {j}, {k})")
    ev = eval_fn if eval_fn is not None else a.eval_entry
    window = below(j)
    return ev(i, j).restrict_to(window) == ev(i, k).restrict_to(window)


def tail_support_union(a: Planted, i: int) -> tuple[tuple[Node, int], ...]:
    """The union over ``j > i`` of the supports of the entries cut below ``j``.

    Entries cut below ``j`` only ever expose the coboundary data at level i,
    so the union stabilizes once ``j`` passes every generator index of ``y_i``;
    the sweep below runs exactly that far.
    """
    out: set[tuple[Node, int]] = set()
    stop = max(i + 2, a.fact.max_generator_index() + 2)
    for j in range(i + 1, stop):
        out.update(a.eval_entry(i, j).restrict_to(below(j)).support())
    tree = a.system.tree
    return tuple(sorted(out, key=lambda t: (tree.node_sort_key(t[0]), t[1])))


# -- normalization ---------------------------------------------------------------


@dataclass(frozen=True)
class LevelBounds:
    """Per-level stabilization bounds; past the table the bound is ``i + 1``."""

    table: tuple[int, ...]

    def at(self, i: int) -> int:
        return self.table[i] if i < len(self.table) else i + 1


@dataclass(frozen=True)
class Normalized:
    element: Planted
    witness: Coboundary
    index_set: IndexSet
    bounds: LevelBounds


def normalize_cobounded(a: Planted) -> Normalized:
    """Split off a coboundary so the remainder has entries concentrated at the
    top generator index.

    For each level i the entries cut below ``j`` stabilize from some least
    bound ``i* > i`` on; the stabilized cut defines the witness sequence
    ``y_i``, and subtracting its induced family leaves an element whose
    ``(i, j)`` entry, for ``j >= i*``, vanishes below ``j`` and is supported
    entirely at index ``j``.  The returned index set records those pairs and
    is cobounded with full first projection.
    """
    system = a.system
    bound_table = []
    for i in range(a.stab_bound):
        y_i = a.fact.y(i)
        if y_i.is_zero():
            bound_table.append(i + 1)
        else:
            bound_table.append(max(l for _, l, _ in y_i.terms) + 1)
    bounds = LevelBounds(tuple(bound_table))

    table = {}
    for i in range(a.stab_bound):
        istar = bounds.at(i)
        cut = a.eval_entry(i, istar).restrict_to(below(istar))
        if not cut.is_zero():
            table[i] = cut
    witness = coboundary(system, table)

    remainder = planted(system, a.combo, a.fact - witness)
    if not remainder.fact.is_zero():
        raise AssertionError("normalization must absorb the whole coboundary part")

    pieces = [ProPiece(i, i + 1, tail(bounds.at(i))) for i in range(a.stab_bound)]
    pieces.append(ProPiece(a.stab_bound, None, FULL))
    zero_pairs = index_set(FULL, pieces)
    return Normalized(remainder, witness, zero_pairs, bounds)
