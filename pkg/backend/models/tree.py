"""
    Structure tree carrier shared by prevention and consequence trees.

A structure tree is a typed, rooted, connected DAG: every node has exactly one
kind, gates have an ordered, duplicate-free child sequence and leaves have none.
Trees are frozen pydantic models and are validated on construction, so every
StructureTree value in the program satisfies the structural invariants.
"""
from collections.abc import Sequence
from enum import Enum

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.exceptions import (
    CycleDetected,
    Disconnected,
    DuplicateChild,
    DuplicateLabel,
    DuplicateLeafLabel,
    EmptyTree,
    GateWithoutChildren,
    LeafWithChildren,
    MultipleRoots,
    RootMismatch,
    UnknownLabel,
    UnknownNode,
)

NodeId = int


class NodeKind(str, Enum):
    LEAF = "LEAF"
    AND = "AND"
    OR = "OR"
    INHIBIT = "INHIBIT"
    CHOOSE = "CHOOSE"

    @property
    def is_gate(self) -> bool:
        return self is not NodeKind.LEAF


class TreeNode(BaseModel):
    """
        One node of a structure tree.

    `tags` are optional edge annotations parallel to `children` (CHOOSE branch
    tags, intermediate-event labels); they carry no Boolean meaning.
    `provenance` records which input tree a node came from after a join.
    """

    id: NodeId = Field(..., ge=0)
    kind: NodeKind
    label: str = Field(..., min_length=1)
    children: tuple[NodeId, ...] = ()
    tags: tuple[str, ...] = ()
    provenance: str | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_tags(self) -> "TreeNode":
        if self.tags and len(self.tags) != len(self.children):
            raise ValueError(
                f"node {self.id} has {len(self.tags)} tags for {len(self.children)} children"
            )
        return self

    def tag_of(self, index: int) -> str | None:
        return self.tags[index] if self.tags else None


class TreeFragment(BaseModel):
    """
        Result of a disjoint union: a node pool that is not yet a tree.
    """

    nodes: dict[NodeId, TreeNode]
    next_id: int

    model_config = ConfigDict(frozen=True)


class UnionRemap(BaseModel):
    """
        Old-id to new-id maps for both operands of a disjoint union.
    """

    left: dict[NodeId, NodeId]
    right: dict[NodeId, NodeId]

    model_config = ConfigDict(frozen=True)


class StructureTree(BaseModel):
    """
        Validated, immutable structure tree.

    `next_id` is a watermark strictly above every id ever used by this tree or
    the trees it was derived from, so ids are never reused after removal.
    """

    nodes: dict[NodeId, TreeNode]
    root: NodeId
    next_id: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_structure(self) -> "StructureTree":
        validate_structure(self.nodes, self.root)
        if self.nodes and self.next_id <= max(self.nodes):
            raise ValueError("next_id must be greater than every node id")
        return self

    # --- Accessors ---
    def node(self, node_id: NodeId) -> TreeNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def kind(self, node_id: NodeId) -> NodeKind:
        return self.node(node_id).kind

    def label(self, node_id: NodeId) -> str:
        return self.node(node_id).label

    def children(self, node_id: NodeId) -> tuple[NodeId, ...]:
        return self.node(node_id).children

    def ordered_ids(self) -> list[NodeId]:
        return sorted(self.nodes)

    def leaf_ids(self) -> list[NodeId]:
        """Leaves in NodeId order (the canonical leaf order)."""
        return [i for i in self.ordered_ids() if self.nodes[i].kind is NodeKind.LEAF]

    def leaf_labels(self) -> list[str]:
        return [self.nodes[i].label for i in self.leaf_ids()]

    def leaf_by_label(self, label: str) -> NodeId | None:
        for i in self.leaf_ids():
            if self.nodes[i].label == label:
                return i
        return None

    def shape(self, start: NodeId | None = None) -> tuple:
        """
            Id-free nested description used for structural equality.

        Leaves compare by label; AND/OR/INHIBIT by kind and ordered children;
        CHOOSE additionally by its event label and branch tags.
        """
        node = self.node(self.root if start is None else start)
        if node.kind is NodeKind.LEAF:
            return (node.kind.value, node.label)
        children = tuple(self.shape(c) for c in node.children)
        if node.kind is NodeKind.CHOOSE:
            return (node.kind.value, node.label, node.tags, children)
        return (node.kind.value, children)


# --- Structural validation ---
def _as_graph(nodes: dict[NodeId, TreeNode]) -> nx.DiGraph:
    graph = nx.DiGraph()
    for node_id in sorted(nodes):
        graph.add_node(node_id)
    for node_id in sorted(nodes):
        for child in nodes[node_id].children:
            graph.add_edge(node_id, child)
    return graph


def validate_structure(nodes: dict[NodeId, TreeNode], root: NodeId) -> None:
    """
        Check the structural invariants; the first violation found is raised.

    Order: empty, dangling child, duplicate child, duplicate leaf label, cycle,
    leaf with children, gate without children, disconnected, multiple roots,
    declared root mismatch.
    """
    if not nodes:
        raise EmptyTree("Tree has no nodes")

    ordered = sorted(nodes)
    for node_id in ordered:
        node = nodes[node_id]
        if node.id != node_id:
            raise ValueError(f"node keyed {node_id} carries id {node.id}")
        for child in node.children:
            if child not in nodes:
                raise UnknownNode(child)

    for node_id in ordered:
        node = nodes[node_id]
        seen: set[NodeId] = set()
        for child in node.children:
            if child in seen:
                raise DuplicateChild(node.label, nodes[child].label)
            seen.add(child)

    leaf_labels: set[str] = set()
    for node_id in ordered:
        node = nodes[node_id]
        if node.kind is NodeKind.LEAF:
            if node.label in leaf_labels:
                raise DuplicateLeafLabel(node.label)
            leaf_labels.add(node.label)

    graph = _as_graph(nodes)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        path = [nodes[u].label for u, _ in cycle] + [nodes[cycle[0][0]].label]
        raise CycleDetected(path)

    for node_id in ordered:
        node = nodes[node_id]
        if node.kind is NodeKind.LEAF and node.children:
            raise LeafWithChildren(node.label)
        if node.kind.is_gate and not node.children:
            raise GateWithoutChildren(node.label, node.kind.value)

    components = nx.number_weakly_connected_components(graph)
    if components > 1:
        raise Disconnected(components)

    parentless = [n for n in ordered if graph.in_degree(n) == 0]
    if len(parentless) > 1:
        raise MultipleRoots([nodes[n].label for n in parentless])
    if root != parentless[0]:
        declared = nodes[root].label if root in nodes else str(root)
        raise RootMismatch(declared, nodes[parentless[0]].label)


# --- Operations ---
def build_tree(
    nodes: Sequence[tuple[str, NodeKind | str]],
    edges: Sequence[tuple[str, str]],
) -> StructureTree:
    """
        Build a validated tree from labelled declarations.

    Declarations are referenced by label, so every declared label must be
    unique. NodeIds follow declaration order; child order follows edge order.
    """
    ids: dict[str, NodeId] = {}
    kinds: dict[NodeId, NodeKind] = {}
    for label, kind in nodes:
        if label in ids:
            raise DuplicateLabel(label)
        ids[label] = len(ids)
        kinds[ids[label]] = NodeKind(kind)

    children: dict[NodeId, list[NodeId]] = {i: [] for i in ids.values()}
    for parent, child in edges:
        for label in (parent, child):
            if label not in ids:
                raise UnknownLabel(label)
        children[ids[parent]].append(ids[child])

    built = {
        node_id: TreeNode(
            id=node_id,
            kind=kinds[node_id],
            label=label,
            children=tuple(children[node_id]),
        )
        for label, node_id in ids.items()
    }
    referenced = {c for kids in children.values() for c in kids}
    parentless = [i for i in sorted(built) if i not in referenced]
    root = parentless[0] if parentless else 0
    return StructureTree(nodes=built, root=root, next_id=len(built))


def leaves_of(tree: StructureTree) -> frozenset[NodeId]:
    return frozenset(tree.leaf_ids())


def nodes_of_kind(tree: StructureTree, kind: NodeKind | str) -> frozenset[NodeId]:
    wanted = NodeKind(kind)
    return frozenset(i for i, node in tree.nodes.items() if node.kind is wanted)


def disjoint_union(
    t1: StructureTree, t2: StructureTree
) -> tuple[TreeFragment, UnionRemap]:
    """
        Place both trees in one node pool with disjoint ids.

    The left tree keeps its ids; the right tree is shifted above the left
    tree's watermark. Labels are left untouched, so the fragment may hold
    equal labels; callers connect the two roots and resolve labels.
    """
    offset = t1.next_id
    left = {i: i for i in t1.ordered_ids()}
    right = {i: i + offset for i in t2.ordered_ids()}

    pool: dict[NodeId, TreeNode] = dict(t1.nodes)
    for old_id in t2.ordered_ids():
        node = t2.nodes[old_id]
        pool[right[old_id]] = node.model_copy(
            update={
                "id": right[old_id],
                "children": tuple(right[c] for c in node.children),
            }
        )
    fragment = TreeFragment(nodes=pool, next_id=offset + t2.next_id)
    return fragment, UnionRemap(left=left, right=right)


# --- Helpers for tree surgery (joins) ---
def redirect_children(
    nodes: dict[NodeId, TreeNode], mapping: dict[NodeId, NodeId]
) -> dict[NodeId, TreeNode]:
    """Rewrite child references through `mapping`; unmapped ids are kept."""
    result: dict[NodeId, TreeNode] = {}
    for node_id, node in nodes.items():
        if any(c in mapping for c in node.children):
            node = node.model_copy(
                update={"children": tuple(mapping.get(c, c) for c in node.children)}
            )
        result[node_id] = node
    return result


def merge_shared_leaves(
    nodes: dict[NodeId, TreeNode],
) -> tuple[dict[NodeId, TreeNode], list[str]]:
    """
        Collapse leaves with equal labels into the lowest-id leaf.

    Equal leaf labels across joined trees denote the same event. An untagged
    AND/OR gate left with the same leaf twice keeps it once (idempotence).
    """
    keep: dict[str, NodeId] = {}
    mapping: dict[NodeId, NodeId] = {}
    for node_id in sorted(nodes):
        node = nodes[node_id]
        if node.kind is not NodeKind.LEAF:
            continue
        if node.label in keep:
            mapping[node_id] = keep[node.label]
        else:
            keep[node.label] = node_id
    if not mapping:
        return dict(nodes), []
    merged = sorted({nodes[i].label for i in mapping})
    remaining = redirect_children(
        {i: n for i, n in nodes.items() if i not in mapping}, mapping
    )
    for node_id, node in remaining.items():
        if node.kind in (NodeKind.AND, NodeKind.OR) and not node.tags:
            unique = tuple(dict.fromkeys(node.children))
            if unique != node.children:
                remaining[node_id] = node.model_copy(update={"children": unique})
    return remaining, merged


def reachable_only(
    nodes: dict[NodeId, TreeNode], root: NodeId
) -> tuple[dict[NodeId, TreeNode], list[NodeId]]:
    """Drop nodes not reachable from `root`; returns (kept, pruned ids)."""
    seen: set[NodeId] = set()
    stack = [root]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        stack.extend(nodes[current].children)
    pruned = sorted(i for i in nodes if i not in seen)
    return {i: n for i, n in nodes.items() if i in seen}, pruned

