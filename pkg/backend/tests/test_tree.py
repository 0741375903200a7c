"""Unit tests for models.tree module."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

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
from models.tree import (
    NodeKind,
    StructureTree,
    TreeNode,
    build_tree,
    disjoint_union,
    leaves_of,
    merge_shared_leaves,
    nodes_of_kind,
    reachable_only,
)


def two_leaf_or() -> StructureTree:
    return build_tree([("r", "OR"), ("a", "LEAF"), ("b", "LEAF")], [("r", "a"), ("r", "b")])


class TestBuildTree:
    """Tests for build_tree."""

    def test_single_leaf(self):
        """Should build a one-node tree rooted at the leaf."""
        tree = build_tree([("x", NodeKind.LEAF)], [])

        assert tree.root == 0
        assert tree.label(tree.root) == "x"
        assert tree.next_id == 1

    def test_two_leaf_or_keeps_child_order(self):
        """Should assign ids in declaration order and keep edge order."""
        tree = two_leaf_or()

        assert tree.children(tree.root) == (1, 2)
        assert [tree.label(c) for c in tree.children(tree.root)] == ["a", "b"]

    def test_duplicate_edge_is_rejected(self):
        """Should reject a gate listing the same child twice."""
        with pytest.raises(DuplicateChild):
            build_tree([("r", "OR"), ("a", "LEAF")], [("r", "a"), ("r", "a")])

    def test_two_cycle_is_rejected(self):
        """Should report a cycle with the labels on it."""
        with pytest.raises(CycleDetected) as exc:
            build_tree([("a", "OR"), ("b", "OR")], [("a", "b"), ("b", "a")])
        assert set(exc.value.cycle) == {"a", "b"}

    def test_multiple_roots(self):
        """Should reject two parentless nodes in one component."""
        nodes = [("r1", "OR"), ("r2", "OR"), ("a", "LEAF")]
        with pytest.raises(MultipleRoots) as exc:
            build_tree(nodes, [("r1", "a"), ("r2", "a")])
        assert exc.value.roots == ["r1", "r2"]

    def test_disconnected(self):
        """Should reject a node unreachable from the rest of the tree."""
        with pytest.raises(Disconnected):
            build_tree([("r", "OR"), ("a", "LEAF"), ("stray", "LEAF")], [("r", "a")])

    def test_leaf_with_children(self):
        """Should reject a LEAF that has children."""
        nodes = [("r", "OR"), ("a", "LEAF"), ("b", "LEAF")]
        with pytest.raises(LeafWithChildren):
            build_tree(nodes, [("r", "a"), ("a", "b")])

    def test_gate_without_children(self):
        """Should reject a childless gate."""
        with pytest.raises(GateWithoutChildren):
            build_tree([("r", "AND")], [])

    def test_duplicate_declaration(self):
        """Should reject a label declared twice."""
        with pytest.raises(DuplicateLabel):
            build_tree([("a", "LEAF"), ("a", "LEAF")], [])

    def test_edge_to_undeclared_label(self):
        """Should reject edges naming undeclared labels."""
        with pytest.raises(UnknownLabel):
            build_tree([("r", "OR")], [("r", "ghost")])

    def test_is_deterministic(self):
        """Should build identical trees from identical declarations."""
        assert two_leaf_or() == two_leaf_or()


class TestStructureTreeValidation:
    """Tests for the invariants enforced on direct construction."""

    def test_empty_tree(self):
        """Should reject a tree without nodes."""
        with pytest.raises(EmptyTree):
            StructureTree(nodes={}, root=0, next_id=0)

    def test_dangling_child(self):
        """Should reject a child id with no node."""
        nodes = {0: TreeNode(id=0, kind=NodeKind.OR, label="r", children=(7,))}
        with pytest.raises(UnknownNode):
            StructureTree(nodes=nodes, root=0, next_id=1)

    def test_duplicate_leaf_label(self):
        """Should reject two leaves with the same label."""
        nodes = {
            0: TreeNode(id=0, kind=NodeKind.OR, label="r", children=(1, 2)),
            1: TreeNode(id=1, kind=NodeKind.LEAF, label="a"),
            2: TreeNode(id=2, kind=NodeKind.LEAF, label="a"),
        }
        with pytest.raises(DuplicateLeafLabel):
            StructureTree(nodes=nodes, root=0, next_id=3)

    def test_gate_labels_may_repeat(self):
        """Should allow repeated gate labels."""
        nodes = {
            0: TreeNode(id=0, kind=NodeKind.OR, label="g", children=(1, 2)),
            1: TreeNode(id=1, kind=NodeKind.OR, label="g", children=(2,)),
            2: TreeNode(id=2, kind=NodeKind.LEAF, label="a"),
        }
        tree = StructureTree(nodes=nodes, root=0, next_id=3)
        assert [i for i, n in tree.nodes.items() if 2 in n.children] == [0, 1]

    def test_root_mismatch(self):
        """Should reject a declared root that has a parent."""
        tree = two_leaf_or()
        with pytest.raises(RootMismatch):
            StructureTree(nodes=tree.nodes, root=1, next_id=3)

    def test_next_id_must_exceed_ids(self):
        """Should reject a watermark at or below an existing id."""
        tree = two_leaf_or()
        with pytest.raises(ValueError):
            StructureTree(nodes=tree.nodes, root=0, next_id=2)

    def test_tags_must_match_children(self):
        """Should reject edge tags not parallel to the children."""
        with pytest.raises(ValueError):
            TreeNode(id=0, kind=NodeKind.CHOOSE, label="c", children=(1, 2), tags=("y",))


class TestLeavesAndKinds:
    """Tests for leaves_of and nodes_of_kind."""

    def test_single_leaf(self):
        """Should return the only node."""
        assert leaves_of(build_tree([("x", "LEAF")], [])) == {0}

    def test_two_leaf_or(self):
        """Should return both leaves."""
        assert leaves_of(two_leaf_or()) == {1, 2}

    def test_dpt_s_leaves(self, dpt_s):
        """Should name the four safety events."""
        labels = {dpt_s.tree.label(i) for i in leaves_of(dpt_s.tree)}
        assert labels == {"server patch", "update check", "resolve DNS", "dns check"}

    def test_nodes_of_kind(self):
        """Should filter by kind."""
        tree = two_leaf_or()
        assert nodes_of_kind(tree, NodeKind.OR) == {0}
        assert nodes_of_kind(tree, "INHIBIT") == frozenset()

    def test_fb_dct_has_one_split(self, fb_dct):
        """Should find the single antagonism CHOOSE at the root."""
        assert nodes_of_kind(fb_dct.tree, NodeKind.CHOOSE) == {fb_dct.root}

    def test_leaves_are_childless_nodes(self, fb_dpt):
        """Should equal the set of nodes without children."""
        childless = {i for i, n in fb_dpt.tree.nodes.items() if not n.children}
        assert leaves_of(fb_dpt.tree) == childless


class TestDisjointUnion:
    """Tests for disjoint_union."""

    def test_self_union_keeps_both_copies(self):
        """Should produce two distinct nodes both labelled x."""
        leaf = build_tree([("x", "LEAF")], [])
        fragment, remap = disjoint_union(leaf, leaf)

        assert len(fragment.nodes) == 2
        assert remap.left[0] != remap.right[0]
        assert {n.label for n in fragment.nodes.values()} == {"x"}
        assert sorted(fragment.nodes) == [0, 1]

    def test_node_counts_add_up(self):
        """Should hold |N1| + |N2| nodes."""
        t1 = build_tree(
            [("r", "AND"), ("a", "LEAF"), ("b", "LEAF")], [("r", "a"), ("r", "b")]
        )
        t2 = build_tree([("s", "OR"), ("c", "LEAF")], [("s", "c")])
        fragment, _ = disjoint_union(t1, t2)
        assert len(fragment.nodes) == 5

    def test_case_study_union(self, dpt_a, dpt_s):
        """Should give 9 + 7 nodes for the two case-study trees."""
        fragment, remap = disjoint_union(dpt_a.tree, dpt_s.tree)

        assert len(dpt_a.tree.nodes) == 9
        assert len(dpt_s.tree.nodes) == 7
        assert len(fragment.nodes) == 16
        assert remap.left == {i: i for i in range(9)}
        assert remap.right[0] == 9
        assert fragment.next_id == 16

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=8))
    def test_union_preserves_count(self, n, m):
        """Should never lose or merge nodes."""
        def fan(prefix: str, k: int) -> StructureTree:
            if k == 1:
                return build_tree([(f"{prefix}0", "LEAF")], [])
            leaves = [(f"{prefix}{i}", "LEAF") for i in range(k)]
            return build_tree([("g", "OR"), *leaves], [("g", label) for label, _ in leaves])

        t1, t2 = fan("a", n), fan("b", m)
        fragment, _ = disjoint_union(t1, t2)
        assert len(fragment.nodes) == len(t1.nodes) + len(t2.nodes)


class TestSurgeryHelpers:
    """Tests for the helpers joins build on."""

    def test_merge_shared_leaves(self):
        """Should collapse equal leaf labels into the lowest id."""
        t = build_tree([("r", "OR"), ("x", "LEAF")], [("r", "x")])
        fragment, remap = disjoint_union(t, t)
        nodes, merged = merge_shared_leaves(fragment.nodes)

        assert merged == ["x"]
        assert remap.right[1] not in nodes
        assert nodes[remap.right[0]].children == (1,)

    def test_merge_deduplicates_or_children(self):
        """Should keep a shared leaf once under an OR."""
        nodes = {
            0: TreeNode(id=0, kind=NodeKind.OR, label="r", children=(1, 2)),
            1: TreeNode(id=1, kind=NodeKind.LEAF, label="x"),
            2: TreeNode(id=2, kind=NodeKind.LEAF, label="x"),
        }
        merged_nodes, _ = merge_shared_leaves(nodes)
        assert merged_nodes[0].children == (1,)

    def test_reachable_only(self):
        """Should drop and report unreachable nodes."""
        tree = two_leaf_or()
        nodes = dict(tree.nodes)
        nodes[0] = nodes[0].model_copy(update={"children": (1,)})
        kept, pruned = reachable_only(nodes, 0)

        assert set(kept) == {0, 1}
        assert pruned == [2]


class TestShape:
    """Tests for shape."""

    def test_shape_ignores_ids(self):
        """Should compare equal for the same structure under different ids."""
        a = two_leaf_or()
        fragment, remap = disjoint_union(build_tree([("z", "LEAF")], []), a)
        shifted = StructureTree(
            nodes={i: n for i, n in fragment.nodes.items() if i != 0},
            root=remap.right[a.root],
            next_id=fragment.next_id,
        )
        assert shifted.shape() == a.shape()
