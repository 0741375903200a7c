import logging

from core.exceptions import IndexOutOfRange, MissingChoice, UnknownNode
from models.consequence import ConsequenceChoice, ConsequenceTree, Outcome
from models.tree import NodeId, NodeKind
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)


class ConsequenceService(ServiceBase):
    """
        Consequence-function semantics of disruption consequence trees.
    """

    def trace(self, t: ConsequenceTree, C: ConsequenceChoice) -> NodeId:
        """Follow the C(v)-th child at every CHOOSE node from the root to a leaf."""
        return self.trace_path(t, C)[-1]

    def trace_path(self, t: ConsequenceTree, C: ConsequenceChoice) -> list[NodeId]:
        self.check_choice(t, C)
        tree = t.tree
        path = [tree.root]
        while tree.kind(path[-1]) is NodeKind.CHOOSE:
            node = tree.node(path[-1])
            path.append(node.children[C[node.id] - 1])
        return path

    def enumerate_outcomes(self, t: ConsequenceTree) -> list[Outcome]:
        """
            Every distinct reachable choice projection with its outcome leaf.

        CHOOSE nodes not visited on a path are still assigned (branch 1) so
        each returned choice is total; choices differing only on unvisited
        nodes are reported once.
        """
        choose_ids = t.choose_ids()
        self.ensure_choice_cap(len(choose_ids))
        tree = t.tree
        outcomes: list[Outcome] = []

        def walk(node_id: NodeId, assigned: dict[NodeId, int], path: list[NodeId]) -> None:
            node = tree.node(node_id)
            path = path + [node_id]
            if node.kind is NodeKind.LEAF:
                total = {v: assigned.get(v, 1) for v in choose_ids}
                outcomes.append(
                    Outcome(choice=ConsequenceChoice(choice=total), outcome=node_id, path=tuple(path))
                )
                return
            for index, child in enumerate(node.children, start=1):
                walk(child, {**assigned, node_id: index}, path)

        walk(tree.root, {}, [])
        logger.debug("Enumerated %d outcomes over %d CHOOSE nodes", len(outcomes), len(choose_ids))
        return outcomes

    def reachable_outcomes(self, t: ConsequenceTree) -> list[NodeId]:
        """Distinct outcome leaves in enumeration order."""
        return list(dict.fromkeys(o.outcome for o in self.enumerate_outcomes(t)))

    def check_choice(self, t: ConsequenceTree, C: ConsequenceChoice) -> None:
        tree = t.tree
        choose_ids = set(t.choose_ids())
        for node_id, index in C.items():
            if node_id not in choose_ids:
                raise UnknownNode(node_id)
            arity = len(tree.children(node_id))
            if not 1 <= index <= arity:
                raise IndexOutOfRange(node_id, index, arity)
        missing = choose_ids - set(C.choice)
        if missing:
            raise MissingChoice(missing)
