"""
    Interpretation of terms as structure trees, and back.
"""
from itertools import count

from models.term import And, Branch, Choose, Inhibit, Leaf, Or, Term
from models.tree import NodeId, NodeKind, StructureTree, TreeNode

DEFAULT_CHOOSE_LABEL = NodeKind.CHOOSE.value


def to_tree(ast: Term) -> StructureTree:
    """
        Build a structure tree from a term.

    Every gate occurrence becomes a fresh node; leaves are shared by label, so
    repeating a label inside one term denotes the same event (a DAG). NodeIds
    are assigned in pre-order, root first.
    """
    ids = count()
    nodes: dict[NodeId, TreeNode] = {}
    leaves: dict[str, NodeId] = {}

    def visit(term: Term) -> NodeId:
        if isinstance(term, Leaf):
            if term.label not in leaves:
                node_id = next(ids)
                leaves[term.label] = node_id
                nodes[node_id] = TreeNode(id=node_id, kind=NodeKind.LEAF, label=term.label)
            return leaves[term.label]

        node_id = next(ids)
        tags: tuple[str, ...] = ()
        if isinstance(term, And):
            kind, label, operands = NodeKind.AND, NodeKind.AND.value, term.operands
        elif isinstance(term, Or):
            kind, label, operands = NodeKind.OR, NodeKind.OR.value, term.operands
        elif isinstance(term, Inhibit):
            kind, label = NodeKind.INHIBIT, NodeKind.INHIBIT.value
            operands = (term.cause, term.prevention)
        else:
            kind, label = NodeKind.CHOOSE, term.label or DEFAULT_CHOOSE_LABEL
            operands = tuple(b.term for b in term.branches)
            tags = tuple(b.tag for b in term.branches)
        children = tuple(visit(op) for op in operands)
        nodes[node_id] = TreeNode(id=node_id, kind=kind, label=label, children=children, tags=tags)
        return node_id

    root = visit(ast)
    return StructureTree(nodes=nodes, root=root, next_id=len(nodes))


def tree_to_term(tree: StructureTree, start: NodeId | None = None) -> Term:
    """
        Read a tree back as a term. Shared nodes are written out at each use.
    """
    node = tree.node(tree.root if start is None else start)
    if node.kind is NodeKind.LEAF:
        return Leaf(label=node.label)
    operands = tuple(tree_to_term(tree, c) for c in node.children)
    if node.kind is NodeKind.AND:
        return And(operands=operands)
    if node.kind is NodeKind.OR:
        return Or(operands=operands)
    if node.kind is NodeKind.INHIBIT:
        return Inhibit(cause=operands[0], prevention=operands[1])
    branches = tuple(
        Branch(tag=node.tag_of(i) or str(i + 1), term=operand)
        for i, operand in enumerate(operands)
    )
    label = None if node.label == DEFAULT_CHOOSE_LABEL else node.label
    return Choose(label=label, branches=branches)


def structurally_equal(t1: StructureTree, t2: StructureTree) -> bool:
    """Same shape, leaf labels, CHOOSE events/tags and child order; ids ignored."""
    return t1.shape() == t2.shape()
