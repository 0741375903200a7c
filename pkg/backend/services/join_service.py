"""
    The four interdependency joins between safety and security models.

Joins never mutate their inputs. Host/target node ids survive unchanged in
the result; nodes brought in from the other operand are renumbered above the
host's id watermark. Leaves with equal labels in both operands denote the
same event and are merged into one shared leaf (except in antagonistic joins,
whose two sides must stay distinguishable).
"""
import logging

from core.config import Settings
from core.exceptions import (
    EvaluationError,
    InvalidChoice,
    LabelCollision,
    NotALeaf,
    NotInhibit,
    UnknownLabel,
    UnknownNode,
)
from dsl.compiler import DEFAULT_CHOOSE_LABEL
from models.bowtie import Bowtie, JoinReport, ReinforcingBranch
from models.consequence import ConsequenceChoice, ConsequenceTree
from models.prevention import ActivationSet, PreventionTree
from models.tree import (
    NodeId,
    NodeKind,
    StructureTree,
    TreeNode,
    disjoint_union,
    merge_shared_leaves,
    reachable_only,
    redirect_children,
)
from services.consequence_service import ConsequenceService
from services.prevention_service import PreventionService
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)

SAFETY = "safety"
SECURITY = "security"


class JoinService(ServiceBase):
    def __init__(self, settings: Settings | None = None):
        super().__init__(settings)
        self.prevention = PreventionService(self.settings)
        self.consequence = ConsequenceService(self.settings)

    # --- Independent ---
    def independent_join(self, a: PreventionTree, f: PreventionTree) -> PreventionTree:
        tree, _ = self.independent_join_report(a, f)
        return tree

    def independent_join_report(
        self, a: PreventionTree, f: PreventionTree
    ) -> tuple[PreventionTree, JoinReport]:
        """
            Either scenario realises the disruption: OR over both roots.
        """
        fragment, remap = disjoint_union(a.tree, f.tree)
        root = fragment.next_id
        nodes = dict(fragment.nodes)
        nodes[root] = TreeNode(
            id=root,
            kind=NodeKind.OR,
            label=NodeKind.OR.value,
            children=(remap.left[a.root], remap.right[f.root]),
        )
        nodes, merged = merge_shared_leaves(nodes)
        joined = StructureTree(nodes=nodes, root=root, next_id=root + 1)
        self._log_join("independent", joined, merged)
        return PreventionTree(tree=joined), JoinReport(kind="independent", merged_labels=merged)

    # --- Conditional ---
    def conditional_join(
        self, host: PreventionTree, guest: PreventionTree, target_leaf: str
    ) -> PreventionTree:
        tree, _ = self.conditional_join_report(host, guest, target_leaf)
        return tree

    def conditional_join_report(
        self, host: PreventionTree, guest: PreventionTree, target_leaf: str
    ) -> tuple[PreventionTree, JoinReport]:
        """
            Expand the host leaf `target_leaf` into the whole guest tree.

        Every parent edge into the leaf is redirected to the guest root and the
        leaf itself is removed. An INHIBIT whose two inputs become the same
        node after leaf merging is rejected with LabelCollision.
        """
        target = host.tree.leaf_by_label(target_leaf)
        if target is None:
            if any(n.label == target_leaf for n in host.tree.nodes.values()):
                raise NotALeaf(target_leaf)
            raise UnknownLabel(target_leaf)
        if target_leaf in guest.tree.leaf_labels():
            raise LabelCollision(target_leaf)

        fragment, remap = disjoint_union(host.tree, guest.tree)
        guest_root = remap.right[guest.root]
        nodes = redirect_children(fragment.nodes, {target: guest_root})
        del nodes[target]
        root = guest_root if host.root == target else host.root

        nodes, merged = merge_shared_leaves(nodes)
        for node in nodes.values():
            if node.kind is NodeKind.INHIBIT and node.children[0] == node.children[1]:
                raise LabelCollision(nodes[node.children[0]].label)
        joined = StructureTree(nodes=nodes, root=root, next_id=fragment.next_id)
        self._log_join("conditional", joined, merged)
        return PreventionTree(tree=joined), JoinReport(kind="conditional", merged_labels=merged)

    # --- Reinforcing ---
    def reinforcing_join(
        self,
        source: Bowtie,
        target: PreventionTree,
        reinforced_inhibit: NodeId,
        C: ConsequenceChoice,
    ) -> PreventionTree:
        tree, _ = self.reinforcing_join_report(source, target, reinforced_inhibit, C)
        return tree

    def reinforcing_join_report(
        self,
        source: Bowtie,
        target: PreventionTree,
        reinforced_inhibit: NodeId,
        C: ConsequenceChoice,
    ) -> tuple[PreventionTree, JoinReport]:
        """
            Make a response branch of `source` the prevention input of an INHIBIT.

        The branch traced by C through the source consequence tree becomes an
        AND over its events (a single event stays a bare leaf) and replaces the
        INHIBIT's second child. The gate negates that input itself, so the
        reinforced cause is blocked whenever every event on the branch occurs.
        Nodes no longer reachable from the root are pruned and reported. A
        branch that reduces to the INHIBIT's own cause raises LabelCollision.
        """
        try:
            inhibit = target.tree.node(reinforced_inhibit)
        except UnknownNode:
            raise NotInhibit(reinforced_inhibit) from None
        if inhibit.kind is not NodeKind.INHIBIT:
            raise NotInhibit(reinforced_inhibit)

        branch = self.reinforcing_branch(source.consequence, C)
        tree = target.tree
        nodes = dict(tree.nodes)
        next_id = tree.next_id

        event_ids: list[NodeId] = []
        for event in branch.events():
            existing = tree.leaf_by_label(event)
            if existing is not None:
                event_ids.append(existing)
                continue
            nodes[next_id] = TreeNode(
                id=next_id, kind=NodeKind.LEAF, label=event, provenance=source.top_event
            )
            event_ids.append(next_id)
            next_id += 1

        if len(event_ids) == 1:
            prevention_input = event_ids[0]
        else:
            prevention_input = next_id
            nodes[next_id] = TreeNode(
                id=next_id,
                kind=NodeKind.AND,
                label=NodeKind.AND.value,
                children=tuple(event_ids),
                provenance=source.top_event,
            )
            next_id += 1

        if prevention_input == inhibit.children[0]:
            raise LabelCollision(tree.label(prevention_input))
        nodes[inhibit.id] = inhibit.model_copy(
            update={"children": (inhibit.children[0], prevention_input)}
        )
        nodes, pruned = reachable_only(nodes, tree.root)
        pruned_labels = [tree.nodes[i].label for i in pruned if i in tree.nodes]

        joined = StructureTree(nodes=nodes, root=tree.root, next_id=next_id)
        report = JoinReport(kind="reinforcing", pruned_labels=pruned_labels, branch=branch)
        if pruned_labels:
            logger.info("Reinforcing join pruned: %s", ", ".join(pruned_labels))
        self._log_join("reinforcing", joined, [])
        return PreventionTree(tree=joined), report

    def reinforcing_branch(self, dct: ConsequenceTree, C: ConsequenceChoice) -> ReinforcingBranch:
        try:
            path = self.consequence.trace_path(dct, C)
        except EvaluationError as e:
            raise InvalidChoice(str(e)) from e
        return ReinforcingBranch(
            path=tuple(dct.tree.label(i) for i in path if _names_event(dct.tree.node(i)))
        )

    # --- Antagonistic ---
    def antagonistic_join(
        self, s: ConsequenceTree, a: ConsequenceTree, event: str
    ) -> ConsequenceTree:
        """
            Root CHOOSE on `event`: branch 1 is the safety response tree `s`
            (security response withheld), branch 2 the security tree `a`
            (safety response withheld).

        Outcome leaves carry their side as provenance. Security labels that
        clash with safety labels are suffixed with " (security)".
        """
        safety = _with_provenance(s.tree, SAFETY, taken=set())
        security = _with_provenance(
            a.tree, SECURITY, taken={n.label for n in safety.nodes.values()}
        )
        fragment, remap = disjoint_union(safety, security)
        root = fragment.next_id
        nodes = dict(fragment.nodes)
        nodes[root] = TreeNode(
            id=root,
            kind=NodeKind.CHOOSE,
            label=event,
            children=(remap.left[safety.root], remap.right[security.root]),
            tags=(event, f"not {event}"),
        )
        joined = StructureTree(nodes=nodes, root=root, next_id=root + 1)
        self._log_join("antagonistic", joined, [])
        return ConsequenceTree(tree=joined)

    # --- Bowtie ---
    def end_to_end(self, b: Bowtie, A: ActivationSet) -> list[NodeId]:
        """Reachable outcomes if A realises the top event, else none."""
        if not self.prevention.evaluate(b.prevention, A):
            return []
        return self.consequence.reachable_outcomes(b.consequence)

    @staticmethod
    def _log_join(kind: str, joined: StructureTree, merged: list[str]) -> None:
        logger.debug("%s join produced %d nodes", kind, len(joined.nodes))
        if merged:
            logger.debug("%s join merged shared leaves: %s", kind, ", ".join(merged))


def _names_event(node: TreeNode) -> bool:
    # an unlabelled CHOOSE carries the placeholder label, not an event
    return not (node.kind is NodeKind.CHOOSE and node.label == DEFAULT_CHOOSE_LABEL)


def _with_provenance(tree: StructureTree, side: str, taken: set[str]) -> StructureTree:
    """
        Copy of `tree` with provenance set and leaf labels kept clear of `taken`.

    A renamed leaf also avoids every original leaf label of `tree` and every
    label already handed out, so the copy keeps its leaf labels unique.
    """
    own = {n.label for n in tree.nodes.values() if n.kind is NodeKind.LEAF}
    assigned: set[str] = set()
    nodes = {}
    for node_id in tree.ordered_ids():
        node = tree.nodes[node_id]
        label = node.label
        if node.kind is NodeKind.LEAF and label in taken:
            while label in taken or label in own or label in assigned:
                label = f"{label} ({side})"
            assigned.add(label)
        nodes[node_id] = node.model_copy(
            update={"label": label, "provenance": node.provenance or side}
        )
    return StructureTree(nodes=nodes, root=tree.root, next_id=tree.next_id)
