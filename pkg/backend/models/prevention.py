from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.exceptions import IllegalKind, InhibitArity
from models.tree import NodeKind, StructureTree

# --- Node kinds a disruption prevention tree may use ---
PREVENTION_KINDS = frozenset({NodeKind.LEAF, NodeKind.AND, NodeKind.OR, NodeKind.INHIBIT})


class PreventionTree(BaseModel):
    """
        Disruption Prevention Tree: LEAF/AND/OR/INHIBIT over a structure tree.

    The second child of an INHIBIT node is its prevention condition. A tree
    without INHIBIT nodes is a plain disruption tree (fault/attack tree).
    """

    tree: StructureTree

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_kinds(self) -> "PreventionTree":
        for node_id in self.tree.ordered_ids():
            node = self.tree.nodes[node_id]
            if node.kind not in PREVENTION_KINDS:
                raise IllegalKind(node.label, node.kind.value, "prevention tree")
            if node.kind is NodeKind.INHIBIT and len(node.children) != 2:
                raise InhibitArity(node.label, len(node.children))
        return self

    @property
    def root(self) -> int:
        return self.tree.root

    @property
    def has_inhibit(self) -> bool:
        return any(n.kind is NodeKind.INHIBIT for n in self.tree.nodes.values())


class ActivationSet(BaseModel):
    """
        The leaf events deemed to have occurred (A ⊆ LEAVES).
    """

    active: frozenset[str] = Field(default_factory=frozenset)

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, labels: Iterable[str]) -> "ActivationSet":
        return cls(active=frozenset(labels))

    def __contains__(self, label: object) -> bool:
        return label in self.active

    def __len__(self) -> int:
        return len(self.active)

    def sorted(self) -> list[str]:
        return sorted(self.active)


class DisruptionSet(BaseModel):
    """
        An inclusion-minimal activation set driving the root to 1.

    `required_absent` lists leaves whose occurrence alongside `active` would
    switch the root back to 0 (prevention conditions that must not occur).
    """

    active: frozenset[str]
    required_absent: frozenset[str] = Field(default_factory=frozenset)

    model_config = ConfigDict(frozen=True)


def as_prevention_tree(tree: StructureTree) -> PreventionTree:
    return PreventionTree(tree=tree)
