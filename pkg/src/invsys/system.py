"""A system pairs a coefficient ring with a level tree; file-level schemas."""

from __future__ import annotations

from dataclasses import dataclass

from .ring import Ring
from .tree import Tree


class SchemaError(ValueError):
    """An input file failed validation; the message carries the JSON path."""


@dataclass(frozen=True)
class System:
    ring: Ring
    tree: Tree

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "tree": self.tree.to_json()}

    @staticmethod
    def from_json(obj: dict) -> System:
        if not isinstance(obj, dict):
            raise SchemaError(f"$: system description must be an object, got {type(obj).__name__}")
        try:
            ring = Ring.from_json(obj.get("ring"))
        except ValueError as exc:
            raise SchemaError(f"$.ring: {exc}") from exc
        try:
            tree = Tree.from_json(obj.get("tree"))
        except ValueError as exc:
            raise SchemaError(f"$.tree: {exc}") from exc
        return System(ring, tree)
