"""
    Versioned JSON model document.

A document lists nodes and explicit child-index edges, so child order (which
matters for INHIBIT and CHOOSE) survives serialisation. A bowtie document
keeps its prevention tree in the top-level fields and nests the consequence
tree under `consequence`.
"""
from collections import defaultdict
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from core.exceptions import SchemaError
from models.bowtie import Bowtie
from models.consequence import ConsequenceTree
from models.prevention import PreventionTree
from models.tree import NodeId, NodeKind, StructureTree, TreeNode

FORMAT_VERSION = "1.0"

ModelKind = Literal["dpt", "dct", "bowtie"]
Model = Bowtie | PreventionTree | ConsequenceTree


class NodeDocument(BaseModel):
    id: NodeId = Field(..., ge=0)
    kind: NodeKind
    label: str = Field(..., min_length=1)
    provenance: str | None = None

    model_config = ConfigDict(extra="forbid")


class EdgeDocument(BaseModel):
    """One parent -> child edge; `index` is the 0-based position among the parent's children."""

    parent: NodeId
    index: int = Field(..., ge=0)
    child: NodeId
    tag: str | None = None

    model_config = ConfigDict(extra="forbid")


class TreeDocument(BaseModel):
    nodes: list[NodeDocument]
    edges: list[EdgeDocument] = Field(default_factory=list)
    root: NodeId
    next_id: int | None = None

    model_config = ConfigDict(extra="forbid")

    @classmethod
    def from_tree(cls, tree: StructureTree) -> "TreeDocument":
        nodes = []
        edges = []
        for node_id in tree.ordered_ids():
            node = tree.nodes[node_id]
            nodes.append(
                NodeDocument(id=node.id, kind=node.kind, label=node.label, provenance=node.provenance)
            )
            for index, child in enumerate(node.children):
                edges.append(
                    EdgeDocument(parent=node.id, index=index, child=child, tag=node.tag_of(index))
                )
        return cls(nodes=nodes, edges=edges, root=tree.root, next_id=tree.next_id)

    def to_tree(self, path: str = "") -> StructureTree:
        """
            Rebuild the structure tree; structural errors propagate unchanged.

        Document-level problems (duplicate ids, gaps in child indices,
        partially tagged children) raise SchemaError naming the field.
        """
        prefix = f"{path}." if path else ""
        seen: set[NodeId] = set()
        for i, node in enumerate(self.nodes):
            if node.id in seen:
                raise SchemaError(f"{prefix}nodes.{i}.id", f"duplicate node id {node.id}")
            seen.add(node.id)

        slots: dict[NodeId, dict[int, EdgeDocument]] = defaultdict(dict)
        for i, edge in enumerate(self.edges):
            if edge.index in slots[edge.parent]:
                raise SchemaError(
                    f"{prefix}edges.{i}.index",
                    f"node {edge.parent} has two children at index {edge.index}",
                )
            slots[edge.parent][edge.index] = edge

        built: dict[NodeId, TreeNode] = {}
        for node in self.nodes:
            edges = [slots[node.id][k] for k in sorted(slots[node.id])]
            if [e.index for e in edges] != list(range(len(edges))):
                raise SchemaError(f"{prefix}edges", f"child indices of node {node.id} are not 0..n-1")
            tags = [e.tag for e in edges]
            if any(t is not None for t in tags) and None in tags:
                raise SchemaError(f"{prefix}edges", f"node {node.id} tags only some of its children")
            built[node.id] = TreeNode(
                id=node.id,
                kind=node.kind,
                label=node.label,
                children=tuple(e.child for e in edges),
                tags=tuple(tags) if tags and tags[0] is not None else (),
                provenance=node.provenance,
            )
        for parent in slots:
            if parent not in built and slots[parent]:
                raise SchemaError(f"{prefix}edges", f"edge from unknown node {parent}")

        next_id = self.next_id if self.next_id is not None else max(built, default=-1) + 1
        if built and next_id <= max(built):
            raise SchemaError(f"{prefix}next_id", "must be greater than every node id")
        return StructureTree(nodes=built, root=self.root, next_id=next_id)


class ModelDocument(TreeDocument):
    """
        Top-level persisted model.
    """

    version: str = FORMAT_VERSION
    kind: ModelKind
    top_event: str | None = None
    consequence: TreeDocument | None = None

    @classmethod
    def from_model(cls, model: Model) -> "ModelDocument":
        if isinstance(model, Bowtie):
            base = TreeDocument.from_tree(model.prevention.tree)
            return cls(
                kind="bowtie",
                top_event=model.top_event,
                consequence=TreeDocument.from_tree(model.consequence.tree),
                **base.model_dump(),
            )
        kind: ModelKind = "dpt" if isinstance(model, PreventionTree) else "dct"
        return cls(kind=kind, **TreeDocument.from_tree(model.tree).model_dump())

    def to_model(self) -> Model:
        if self.version != FORMAT_VERSION:
            raise SchemaError(
                "version", f"unsupported format version '{self.version}', expected '{FORMAT_VERSION}'"
            )
        if self.kind == "dpt":
            return PreventionTree(tree=self.to_tree())
        if self.kind == "dct":
            return ConsequenceTree(tree=self.to_tree())
        if self.consequence is None:
            raise SchemaError("consequence", "a bowtie document needs a consequence tree")
        if not self.top_event:
            raise SchemaError("top_event", "a bowtie document needs a top event")
        return Bowtie(
            prevention=PreventionTree(tree=self.to_tree()),
            consequence=ConsequenceTree(tree=self.consequence.to_tree("consequence")),
            top_event=self.top_event,
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"
