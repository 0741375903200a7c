import logging
from collections.abc import Iterator

from core.exceptions import UnknownLeaf
from models.prevention import ActivationSet, DisruptionSet, PreventionTree
from models.tree import NodeId, NodeKind
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)


class PreventionService(ServiceBase):
    """
        Structure-function semantics of disruption prevention trees.

    OR is true when any child is, AND when all children are, INHIBIT when its
    first child is true and its prevention child is false, and a LEAF when its
    label is in the activation set.
    """

    def evaluate(self, t: PreventionTree, A: ActivationSet) -> bool:
        return self.evaluate_at(t, t.root, A)

    def evaluate_at(self, t: PreventionTree, v: NodeId, A: ActivationSet) -> bool:
        tree = t.tree
        tree.node(v)
        self.check_activation(t, A)

        # --- Memoised by NodeId so shared subgraphs are evaluated once ---
        memo: dict[NodeId, bool] = {}
        return self._evaluate_node(t, v, A, memo)

    def truth_table(self, t: PreventionTree) -> dict[ActivationSet, bool]:
        """
            f_T for every activation set, in canonical subset order.

        Leaves are ordered by NodeId; subset k activates leaf i iff bit i of k
        is set.
        """
        return dict(self.truth_rows(t))

    def truth_rows(self, t: PreventionTree) -> Iterator[tuple[ActivationSet, bool]]:
        """Rows of the truth table, produced one at a time in canonical order."""
        labels = t.tree.leaf_labels()
        self.ensure_leaf_cap(len(labels))
        vector = self.truth_vector(t, labels)
        logger.debug("Truth table over %d leaves: %d true rows", len(labels), vector.bit_count())
        bits = _as_bytes(vector, 1 << len(labels))
        for k, A in enumerate(self.subsets(labels)):
            yield A, _bit(bits, k)

    def minimal_disruption_sets(self, t: PreventionTree) -> list[DisruptionSet]:
        """
            Inclusion-minimal activation sets that realise the root.

        INHIBIT makes the structure function non-monotone, so each witness also
        lists the leaves whose additional occurrence would switch the root off.
        Minimality is decided on the bit vector: a true row is minimal unless
        some strict subset of it is also true.
        """
        labels = t.tree.leaf_labels()
        self.ensure_leaf_cap(len(labels))
        size = 1 << len(labels)
        full = (1 << size) - 1
        vector = self.truth_vector(t, labels)
        patterns = [leaf_pattern(i, size) for i in range(len(labels))]

        # bit k of `covered`: some subset of k (k included) is true
        covered = vector
        for i, pattern in enumerate(patterns):
            covered |= (covered & ~pattern & full) << (1 << i)
        strict = 0
        for i, pattern in enumerate(patterns):
            strict |= (covered & ~pattern & full) << (1 << i)
        minimal = vector & ~strict & full

        bits = _as_bytes(vector, size)
        result = []
        for mask in _set_bits(minimal, size):
            active = frozenset(label for i, label in enumerate(labels) if mask >> i & 1)
            absent = frozenset(
                label for i, label in enumerate(labels)
                if not mask >> i & 1 and not _bit(bits, mask | 1 << i)
            )
            result.append(DisruptionSet(active=active, required_absent=absent))
        return sorted(result, key=lambda s: (len(s.active), sorted(s.active)))

    def truth_vector(
        self,
        t: PreventionTree,
        labels: list[str],
        start: NodeId | None = None,
        overrides: dict[str, int] | None = None,
    ) -> int:
        """
            Whole truth table of one node as an integer bit vector.

        Bit k is the value under canonical subset k of `labels`, which must
        cover every leaf below `start`. `overrides` replaces the vector of the
        named leaves (used to substitute a subtree's table for a leaf).
        """
        self.ensure_leaf_cap(len(labels))
        index = {label: i for i, label in enumerate(labels)}
        overrides = overrides or {}
        size = 1 << len(labels)
        full = (1 << size) - 1
        memo: dict[NodeId, int] = {}
        tree = t.tree

        def vector(node_id: NodeId) -> int:
            if node_id in memo:
                return memo[node_id]
            node = tree.nodes[node_id]
            if node.kind is NodeKind.LEAF:
                if node.label in overrides:
                    value = overrides[node.label]
                elif node.label in index:
                    value = leaf_pattern(index[node.label], size)
                else:
                    raise UnknownLeaf([node.label])
            else:
                values = [vector(c) for c in node.children]
                if node.kind is NodeKind.OR:
                    value = 0
                    for v in values:
                        value |= v
                elif node.kind is NodeKind.AND:
                    value = full
                    for v in values:
                        value &= v
                else:
                    value = values[0] & ~values[1] & full
            memo[node_id] = value
            return value

        return vector(tree.root if start is None else tree.node(start).id)

    # --- Helpers ---
    def check_activation(self, t: PreventionTree, A: ActivationSet) -> None:
        unknown = A.active - set(t.tree.leaf_labels())
        if unknown:
            raise UnknownLeaf(unknown)

    @staticmethod
    def subsets(labels: list[str]) -> Iterator[ActivationSet]:
        for mask in range(1 << len(labels)):
            # rows are built from known labels, so validation is skipped
            yield ActivationSet.model_construct(
                active=frozenset(label for i, label in enumerate(labels) if mask >> i & 1)
            )

    @staticmethod
    def _evaluate_node(
        t: PreventionTree, node_id: NodeId, A: ActivationSet, memo: dict[NodeId, bool]
    ) -> bool:
        if node_id in memo:
            return memo[node_id]
        node = t.tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            value = node.label in A.active
        else:
            values = [
                PreventionService._evaluate_node(t, c, A, memo) for c in node.children
            ]
            if node.kind is NodeKind.OR:
                value = any(values)
            elif node.kind is NodeKind.AND:
                value = all(values)
            else:
                value = values[0] and not values[1]
        memo[node_id] = value
        return value


def leaf_pattern(i: int, size: int) -> int:
    """Bit vector over `size` subsets with bit k set iff bit i of k is set."""
    width = 1 << i
    pattern = ((1 << width) - 1) << width
    period = width << 1
    while period < size:
        pattern |= pattern << period
        period <<= 1
    return pattern & ((1 << size) - 1)


def _as_bytes(vector: int, size: int) -> bytes:
    return vector.to_bytes((size + 7) // 8, "little")


def _bit(bits: bytes, k: int) -> bool:
    return bool(bits[k >> 3] >> (k & 7) & 1)


def _set_bits(vector: int, size: int) -> Iterator[int]:
    """Indices of the set bits of `vector`, ascending."""
    for index, byte in enumerate(_as_bytes(vector, size)):
        while byte:
            low = byte & -byte
            yield index * 8 + low.bit_length() - 1
            byte ^= low
