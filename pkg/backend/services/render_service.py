"""
    Graphviz DOT rendering of prevention trees, consequence trees and bowties.

Output is deterministic: nodes are emitted in NodeId order, edges by parent id
then child index, and graphviz sorts attributes after the label.
"""
import logging

from graphviz import Digraph, nohtml

from models.bowtie import Bowtie
from models.consequence import ConsequenceTree
from models.prevention import PreventionTree
from models.tree import NodeKind, StructureTree
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)

SHAPES = {
    NodeKind.LEAF: "trapezium",
    NodeKind.AND: "invhouse",
    NodeKind.OR: "invtriangle",
    NodeKind.INHIBIT: "hexagon",
    NodeKind.CHOOSE: "diamond",
}

GLYPHS = {
    NodeKind.AND: "∩",
    NodeKind.OR: "∪",
    NodeKind.INHIBIT: "⬡",
}

TOP_EVENT = "top"


class RenderService(ServiceBase):
    def export_dot(
        self, model: Bowtie | PreventionTree | ConsequenceTree, unicode: bool = False
    ) -> str:
        """
            DOT source for a model.

        A bowtie is laid out left to right: prevention cluster with edges
        pointing towards its root, the top event as a double circle, then the
        consequence cluster. INHIBIT prevention inputs are dashed edges.
        """
        if isinstance(model, Bowtie):
            dot = Digraph(name="bowtie", graph_attr={"rankdir": "LR"})
            with dot.subgraph(name="cluster_prevention", graph_attr={"label": "prevention"}) as left:
                add_tree(left, model.prevention.tree, "p", unicode, towards_root=True)
            dot.node(TOP_EVENT, nohtml(model.top_event), shape="doublecircle")
            with dot.subgraph(name="cluster_consequence", graph_attr={"label": "consequence"}) as right:
                add_tree(right, model.consequence.tree, "c", unicode)
            dot.edge(f"p{model.prevention.root}", TOP_EVENT)
            dot.edge(TOP_EVENT, f"c{model.consequence.root}")
        elif isinstance(model, PreventionTree):
            dot = Digraph(name="dpt")
            add_tree(dot, model.tree, "p", unicode)
        else:
            dot = Digraph(name="dct")
            add_tree(dot, model.tree, "c", unicode)
        logger.debug("Rendered %s to DOT", type(model).__name__)
        return dot.source


def node_label(kind: NodeKind, label: str, unicode: bool) -> str:
    if kind in (NodeKind.LEAF, NodeKind.CHOOSE):
        return label
    return GLYPHS[kind] if unicode else kind.value


def add_tree(
    graph: Digraph, tree: StructureTree, prefix: str, unicode: bool, towards_root: bool = False
) -> None:
    for node_id in tree.ordered_ids():
        node = tree.nodes[node_id]
        graph.node(
            f"{prefix}{node_id}",
            nohtml(node_label(node.kind, node.label, unicode)),
            shape=SHAPES[node.kind],
        )
    for node_id in tree.ordered_ids():
        node = tree.nodes[node_id]
        parent = f"{prefix}{node_id}"
        for index, child in enumerate(node.children):
            attrs = {}
            if node.kind is NodeKind.INHIBIT and index == 1:
                attrs["style"] = "dashed"
            tag = node.tag_of(index)
            label = nohtml(tag) if tag is not None else None
            head = f"{prefix}{child}"
            if towards_root:
                graph.edge(head, parent, label, **attrs)
            else:
                graph.edge(parent, head, label, **attrs)
