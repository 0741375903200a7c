"""Unit tests for PreventionService and the prevention tree model."""
import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from core.config import Settings
from core.exceptions import IllegalKind, InhibitArity, TooManyLeaves, UnknownLeaf, UnknownNode
from models.prevention import ActivationSet, PreventionTree, as_prevention_tree
from models.tree import NodeKind, StructureTree, TreeNode, build_tree
from services.prevention_service import PreventionService, leaf_pattern
from tests.helpers import active, dpt


@pytest.fixture
def service() -> PreventionService:
    return PreventionService(Settings())


class TestPreventionTree:
    """Tests for the kind restrictions of prevention trees."""

    def test_two_leaf_or_is_accepted(self):
        """Should wrap a plain OR tree."""
        tree = build_tree([("r", "OR"), ("a", "LEAF"), ("b", "LEAF")], [("r", "a"), ("r", "b")])
        assert as_prevention_tree(tree).tree is tree

    def test_choose_is_illegal(self):
        """Should reject CHOOSE nodes."""
        tree = build_tree([("c", "CHOOSE"), ("a", "LEAF"), ("b", "LEAF")], [("c", "a"), ("c", "b")])
        with pytest.raises(IllegalKind):
            as_prevention_tree(tree)

    def test_inhibit_needs_two_children(self):
        """Should reject INHIBIT with three children."""
        tree = build_tree(
            [("i", "INHIBIT"), ("a", "LEAF"), ("b", "LEAF"), ("c", "LEAF")],
            [("i", "a"), ("i", "b"), ("i", "c")],
        )
        with pytest.raises(InhibitArity) as exc:
            as_prevention_tree(tree)
        assert exc.value.arity == 3

    def test_has_inhibit(self, dpt_a, dpt_s):
        """Should tell disruption trees from prevention trees."""
        assert not dpt_a.has_inhibit
        assert dpt_s.has_inhibit


class TestEvaluate:
    """Tests for evaluate and evaluate_at."""

    def test_inhibit_semantics(self, service):
        """Should fire only when the cause occurs without its prevention."""
        t = dpt('inhibit("server patch", "update check")')

        assert service.evaluate(t, active("server patch")) is True
        assert service.evaluate(t, active("server patch", "update check")) is False
        assert service.evaluate(t, active("update check")) is False

    def test_empty_activation_is_false(self, service, dpt_a, dpt_s, fb_dpt):
        """Should evaluate every fixture to 0 with nothing active."""
        for t in (dpt_a, dpt_s, fb_dpt):
            assert service.evaluate(t, ActivationSet()) is False

    @pytest.mark.parametrize(
        "labels, expected",
        [
            (("rsa", "ssh"), True),
            (("ftp", "rsh"), False),
            (("ftp", "rsh", "buffer overflow"), True),
            (("rsa",), False),
        ],
    )
    def test_security_tree(self, service, dpt_a, labels, expected):
        """Should realise the attack through either credential-less path."""
        assert service.evaluate(dpt_a, active(*labels)) is expected

    @pytest.mark.parametrize(
        "labels, expected",
        [
            (("server patch", "resolve DNS"), True),
            (("server patch", "resolve DNS", "dns check"), False),
            (("server patch", "resolve DNS", "update check"), False),
            (("server patch",), False),
        ],
    )
    def test_safety_tree(self, service, dpt_s, labels, expected):
        """Should fail only when both faults slip past their checks."""
        assert service.evaluate(dpt_s, active(*labels)) is expected

    def test_unknown_leaf(self, service, dpt_a):
        """Should reject activation labels that are not leaves."""
        with pytest.raises(UnknownLeaf) as exc:
            service.evaluate(dpt_a, active("rsa", "AND", "telnet"))
        assert exc.value.labels == ["AND", "telnet"]

    def test_evaluate_at_leaf(self, service, dpt_a):
        """Should read a leaf straight from the activation set."""
        rsa = dpt_a.tree.leaf_by_label("rsa")

        assert service.evaluate_at(dpt_a, rsa, active("rsa")) is True
        assert service.evaluate_at(dpt_a, rsa, ActivationSet()) is False

    def test_evaluate_at_attack_subtree(self, service, fb_dpt):
        """Should evaluate the security half of the case study on its own."""
        attack_root = fb_dpt.tree.children(fb_dpt.root)[0]
        assert service.evaluate_at(fb_dpt, attack_root, active("rsa", "ssh")) is True
        assert service.evaluate_at(fb_dpt, attack_root, active("server patch", "resolve DNS")) is False

    def test_evaluate_at_unknown_node(self, service, dpt_a):
        """Should reject ids that are not in the tree."""
        with pytest.raises(UnknownNode):
            service.evaluate_at(dpt_a, 99, ActivationSet())

    def test_unary_gates_are_identity(self, service):
        """Should treat one-child AND and OR as identity."""
        nodes = {
            0: TreeNode(id=0, kind=NodeKind.AND, label="AND", children=(1,)),
            1: TreeNode(id=1, kind=NodeKind.OR, label="OR", children=(2,)),
            2: TreeNode(id=2, kind=NodeKind.LEAF, label="x"),
        }
        t = PreventionTree(tree=StructureTree(nodes=nodes, root=0, next_id=3))

        assert service.evaluate(t, active("x")) is True
        assert service.evaluate(t, ActivationSet()) is False

    def test_shared_leaf(self, service):
        """Should evaluate a DAG with a shared leaf like its tree unfolding."""
        t = dpt("inhibit(x, y) | x & y")

        assert service.evaluate(t, active("x")) is True
        assert service.evaluate(t, active("x", "y")) is True
        assert service.evaluate(t, active("y")) is False


class TestTruthTable:
    """Tests for truth_table and truth_vector."""

    def test_single_leaf(self, service):
        """Should list the empty set as 0 and the leaf as 1."""
        table = service.truth_table(dpt("x"))
        assert list(table.items()) == [(ActivationSet(), False), (active("x"), True)]

    def test_two_leaf_and(self, service):
        """Should be true only on the full set."""
        table = service.truth_table(dpt("a & b"))
        assert [A for A, value in table.items() if value] == [active("a", "b")]

    def test_canonical_order(self, service):
        """Should order subsets by the bit mask over NodeId-ordered leaves."""
        table = service.truth_table(dpt("a | b"))
        assert list(table) == [ActivationSet(), active("a"), active("b"), active("a", "b")]

    def test_safety_tree_has_one_true_row(self, service, dpt_s):
        """Should realise the safety disruption under a single activation set."""
        table = service.truth_table(dpt_s)

        assert len(table) == 16
        assert [A for A, value in table.items() if value] == [active("server patch", "resolve DNS")]

    def test_rows_agree_with_evaluate(self, service, fb_dpt):
        """Should match evaluate on every row."""
        for A, value in service.truth_table(fb_dpt).items():
            assert service.evaluate(fb_dpt, A) is value

    def test_rows_match_the_table(self, service, fb_dpt):
        """Should produce the table rows in the same order."""
        assert list(service.truth_rows(fb_dpt)) == list(service.truth_table(fb_dpt).items())

    def test_leaf_cap(self, dpt_s):
        """Should refuse enumeration above the configured cap."""
        service = PreventionService(Settings(leaf_cap=3))
        with pytest.raises(TooManyLeaves) as exc:
            service.truth_table(dpt_s)
        assert (exc.value.count, exc.value.cap) == (4, 3)

    def test_leaf_cap_from_environment(self, monkeypatch, dpt_a):
        """Should read the cap from BOWTIE_LEAF_CAP."""
        monkeypatch.setenv("BOWTIE_LEAF_CAP", "4")
        with pytest.raises(TooManyLeaves):
            PreventionService().truth_table(dpt_a)

    @pytest.mark.parametrize("size_bits", [1, 2, 3, 4])
    def test_leaf_pattern(self, size_bits):
        """Should set bit k exactly when leaf i is in subset k."""
        size = 1 << size_bits
        for i in range(size_bits):
            pattern = leaf_pattern(i, size)
            assert [pattern >> k & 1 for k in range(size)] == [k >> i & 1 for k in range(size)]

    def test_vector_with_override(self, service):
        """Should substitute a whole table for a leaf."""
        labels = ["a", "b"]
        conditional = dpt("t | a")
        and_vector = service.truth_vector(dpt("a & b"), labels)
        vector = service.truth_vector(conditional, labels, overrides={"t": and_vector})

        assert vector == service.truth_vector(dpt("a & b | a"), labels)


class TestMinimalDisruptionSets:
    """Tests for minimal_disruption_sets."""

    def test_two_leaf_or(self, service):
        """Should give each leaf on its own."""
        sets = service.minimal_disruption_sets(dpt("a | b"))
        assert [s.active for s in sets] == [{"a"}, {"b"}]
        assert all(not s.required_absent for s in sets)

    def test_security_tree(self, service, dpt_a):
        """Should give both attack paths."""
        sets = service.minimal_disruption_sets(dpt_a)
        assert [s.active for s in sets] == [{"rsa", "ssh"}, {"buffer overflow", "ftp", "rsh"}]

    def test_inhibit_reports_required_absent(self, service):
        """Should name the prevention leaf that must not occur."""
        (witness,) = service.minimal_disruption_sets(dpt("inhibit(x, y)"))

        assert witness.active == {"x"}
        assert witness.required_absent == {"y"}

    def test_safety_tree(self, service, dpt_s):
        """Should require both checks to be absent."""
        (witness,) = service.minimal_disruption_sets(dpt_s)

        assert witness.active == {"server patch", "resolve DNS"}
        assert witness.required_absent == {"update check", "dns check"}

    def test_true_subset_below_a_false_one(self, service):
        """Should drop a true set whose only true subset is two leaves smaller."""
        sets = service.minimal_disruption_sets(dpt("inhibit(a, b) | a & b & c"))

        assert [s.active for s in sets] == [{"a"}]
        assert sets[0].required_absent == {"b"}

    def test_wide_or(self, service):
        """Should list every leaf of a sixteen-way OR as its own witness."""
        labels = [f"l{i:02d}" for i in range(16)]
        sets = service.minimal_disruption_sets(dpt(" | ".join(labels)))

        assert [s.active for s in sets] == [{label} for label in labels]
        assert all(not s.required_absent for s in sets)


# --- Properties ---
LEAF_NAMES = ["a", "b", "c", "d", "e"]


def monotone_terms() -> st.SearchStrategy[str]:
    leaves = st.sampled_from(LEAF_NAMES)
    return st.recursive(
        leaves,
        lambda inner: st.lists(inner, min_size=2, max_size=3, unique=True).flatmap(
            lambda ops: st.sampled_from([" & ", " | "]).map(
                lambda op: op.join(f"({o})" for o in ops)
            )
        ),
        max_leaves=8,
    )


class TestProperties:
    """Property tests over generated trees."""

    @settings(max_examples=60, deadline=None)
    @given(monotone_terms())
    def test_inhibit_free_trees_are_monotone(self, source):
        """Should never switch off when more leaves occur."""
        service = PreventionService(Settings())
        t = dpt(source)
        table = service.truth_table(t)
        for A, value in table.items():
            if not value:
                continue
            for extra in t.tree.leaf_labels():
                assert table[ActivationSet(active=A.active | {extra})]

    @settings(max_examples=40, deadline=None)
    @given(monotone_terms(), monotone_terms())
    def test_inhibit_identity(self, cause, prevention):
        """Should equal cause AND NOT prevention on every activation set."""
        assume(cause != prevention)
        service = PreventionService(Settings())
        t = dpt(f"inhibit({cause}, {prevention})")
        c, p = dpt(cause), dpt(prevention)
        labels = t.tree.leaf_labels()
        for mask in range(1 << len(labels)):
            chosen = {label for i, label in enumerate(labels) if mask >> i & 1}
            expected = (
                service.evaluate(c, ActivationSet(active=chosen & set(c.tree.leaf_labels())))
                and not service.evaluate(p, ActivationSet(active=chosen & set(p.tree.leaf_labels())))
            )
            assert service.evaluate(t, ActivationSet(active=chosen)) is expected

    @settings(max_examples=40, deadline=None)
    @given(monotone_terms(), monotone_terms())
    def test_minimal_sets_match_the_table(self, cause, prevention):
        """Should keep exactly the true rows without a true strict subset."""
        assume(cause != prevention)
        service = PreventionService(Settings())
        t = dpt(f"inhibit({cause}, {prevention}) | ({prevention})")
        table = service.truth_table(t)
        true_sets = [A.active for A, value in table.items() if value]
        expected = sorted(
            (s for s in true_sets if not any(other < s for other in true_sets)),
            key=lambda s: (len(s), sorted(s)),
        )

        sets = service.minimal_disruption_sets(t)
        assert [s.active for s in sets] == expected
        for s in sets:
            absent = {
                label for label in t.tree.leaf_labels()
                if label not in s.active and not table[ActivationSet(active=s.active | {label})]
            }
            assert s.required_absent == absent

    def test_gates_agree_with_any_and_all(self, service):
        """Should compute n-ary conjunction and disjunction."""
        conj, disj = dpt("a & b & c"), dpt("a | b | c")
        for bits in itertools.product([False, True], repeat=3):
            A = ActivationSet(active={l for l, b in zip("abc", bits) if b})
            assert service.evaluate(conj, A) is all(bits)
            assert service.evaluate(disj, A) is any(bits)
