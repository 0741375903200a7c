from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.exceptions import ChooseArity, IllegalKind
from models.tree import NodeId, NodeKind, StructureTree

CONSEQUENCE_KINDS = frozenset({NodeKind.LEAF, NodeKind.CHOOSE})


class ConsequenceTree(BaseModel):
    """
        Disruption Consequence Tree: an event tree of CHOOSE branch points
        and LEAF outcomes.
    """

    tree: StructureTree

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_kinds(self) -> "ConsequenceTree":
        for node_id in self.tree.ordered_ids():
            node = self.tree.nodes[node_id]
            if node.kind not in CONSEQUENCE_KINDS:
                raise IllegalKind(node.label, node.kind.value, "consequence tree")
            if node.kind is NodeKind.CHOOSE and len(node.children) < 2:
                raise ChooseArity(node.label, len(node.children))
        return self

    @property
    def root(self) -> NodeId:
        return self.tree.root

    def choose_ids(self) -> list[NodeId]:
        return [
            i for i in self.tree.ordered_ids()
            if self.tree.nodes[i].kind is NodeKind.CHOOSE
        ]


class ConsequenceChoice(BaseModel):
    """
        Consequence function C: CHOOSE node id -> 1-based branch index.
    """

    choice: dict[NodeId, int] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    def __getitem__(self, node_id: NodeId) -> int:
        return self.choice[node_id]

    def items(self) -> list[tuple[NodeId, int]]:
        return sorted(self.choice.items())


class Outcome(BaseModel):
    """
        One enumerated consequence: a total choice and the outcome leaf it traces to.
    """

    choice: ConsequenceChoice
    outcome: NodeId
    path: tuple[NodeId, ...]

    model_config = ConfigDict(frozen=True)


def as_consequence_tree(tree: StructureTree) -> ConsequenceTree:
    return ConsequenceTree(tree=tree)
