"""
    Brute-force oracles and seeded property checks over generated models.
"""
import logging
import random
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import count

from core.config import Settings
from core.exceptions import InvalidCount, UnknownLabel, UnknownLeaf
from dsl.compiler import to_tree
from models.bowtie import make_bowtie
from models.consequence import ConsequenceChoice, ConsequenceTree
from models.prevention import ActivationSet, PreventionTree
from models.term import And, Branch, Choose, Inhibit, Leaf, Or, Term
from models.tree import NodeKind, StructureTree, TreeNode, nodes_of_kind
from schemas.analysis import SemanticsReport
from services.consequence_service import ConsequenceService
from services.join_service import SAFETY, SECURITY, JoinService
from services.prevention_service import PreventionService, leaf_pattern
from services.service_base import ServiceBase

logger = logging.getLogger(__name__)

ANTAGONISM_EVENT = "antagonism"


class AnalysisService(ServiceBase):
    def __init__(self, settings: Settings | None = None):
        super().__init__(settings)
        self.prevention = PreventionService(self.settings)
        self.consequence = ConsequenceService(self.settings)

    # --- Reference semantics ---
    def oracle_evaluate(self, t: PreventionTree, A: ActivationSet) -> bool:
        """
            Structure function by plain recursion: no memo, shared nodes are
            re-evaluated at every use.
        """
        tree = t.tree
        leaves = {n.label for n in tree.nodes.values() if n.kind is NodeKind.LEAF}
        unknown = [label for label in A.active if label not in leaves]
        if unknown:
            raise UnknownLeaf(unknown)
        return _naive(tree, tree.root, A.active)

    def antagonism_certificate(self, t: ConsequenceTree, o1: str, o2: str) -> bool:
        """
            True iff no consequence choice traces through nodes labelled with
            both `o1` and `o2`.

        Labels may name outcome leaves or CHOOSE events on the way to them. A
        CHOOSE event counts only on branches that do not negate it, so the
        `not <event>` branch of a split does not record the event.
        """
        labels = {n.label for n in t.tree.nodes.values()}
        for label in (o1, o2):
            if label not in labels:
                raise UnknownLabel(label)
        for outcome in self.consequence.enumerate_outcomes(t):
            seen = {
                t.tree.label(i) for i in outcome.path
                if not _negated(t.tree.node(i), outcome.choice)
            }
            if o1 in seen and o2 in seen:
                return False
        return True

    # --- Property suites ---
    def check_join_laws(
        self, seed: int, cases: int, join_service: JoinService | None = None
    ) -> list[SemanticsReport]:
        """
            Check the four join laws on `cases` generated cases.

        Each case draws from its own generator seeded by (seed, case index),
        so reports are reproducible and independent of worker scheduling.
        Records come back in case order, four per case; `report_lines` folds
        them into one line per case.
        """
        if cases < 1:
            raise InvalidCount(cases)
        joins = join_service or JoinService(self.settings)
        reports = self._run_cases(cases, partial(self._check_join_case, joins, seed))
        self._log_summary("join laws", seed, reports)
        return reports

    def check_oracle(self, seed: int, cases: int) -> list[SemanticsReport]:
        """Differential run of evaluate against oracle_evaluate on every subset."""
        if cases < 1:
            raise InvalidCount(cases)
        reports = self._run_cases(cases, partial(self._check_oracle_case, seed))
        self._log_summary("oracle", seed, reports)
        return reports

    def _run_cases(
        self, cases: int, check: Callable[[int], list[SemanticsReport]]
    ) -> list[SemanticsReport]:
        workers = self.settings.analysis_workers
        if workers > 1:
            # `check` is a bound method, pickled to the workers with its service
            with ProcessPoolExecutor(max_workers=workers) as pool:
                batches = list(pool.map(check, range(cases)))
        else:
            batches = [check(i) for i in range(cases)]
        return [report for batch in batches for report in batch]

    def _check_join_case(self, joins: JoinService, seed: int, index: int) -> list[SemanticsReport]:
        rng = case_rng(seed, index)
        tree_id = f"{seed}:{index}"

        # --- Independent: joined table is the pointwise OR ---
        a = self.random_prevention_tree(rng, "a")
        f = self.random_prevention_tree(rng, "f", shared=self.shared_labels(rng, a))
        joined = joins.independent_join(a, f)
        labels = joined.tree.leaf_labels()
        expected = self.prevention.truth_vector(a, labels) | self.prevention.truth_vector(f, labels)
        actual = self.prevention.truth_vector(joined, labels)
        independent = _compare(index, tree_id, "independent", labels, expected, actual)

        # --- Conditional: substitution of the guest table for the leaf ---
        target = rng.choice(a.tree.leaf_labels())
        guest = self.random_prevention_tree(
            rng, "g", shared=self.shared_labels(rng, a, exclude=target)
        )
        joined = joins.conditional_join(a, guest, target)
        labels = joined.tree.leaf_labels()
        substituted = {target: self.prevention.truth_vector(guest, labels)}
        expected = self.prevention.truth_vector(a, labels, overrides=substituted)
        actual = self.prevention.truth_vector(joined, labels)
        conditional = _compare(index, tree_id, "conditional", labels, expected, actual)

        # --- Reinforcing: branch events force the INHIBIT off ---
        host = self.random_prevention_tree(rng, "t", require_inhibit=True)
        source = make_bowtie(
            self.random_prevention_tree(rng, "p"), self.random_consequence_tree(rng, "s"), "top"
        )
        inhibit = rng.choice(sorted(nodes_of_kind(host.tree, NodeKind.INHIBIT)))
        choice = random_choice(rng, source.consequence)
        joined, report = joins.reinforcing_join_report(source, host, inhibit, choice)
        labels = joined.tree.leaf_labels()
        size = 1 << len(labels)
        branch = (1 << size) - 1
        for event in report.branch.events():
            branch &= leaf_pattern(labels.index(event), size)
        blocked = self.prevention.truth_vector(joined, labels, start=inhibit) & branch
        reinforcing = _compare(index, tree_id, "reinforcing", labels, 0, blocked)

        # --- Antagonistic: every trace reaches exactly one side ---
        s = self.random_consequence_tree(rng, "s")
        x = s if rng.random() < 0.25 else self.random_consequence_tree(rng, "x")
        antagonistic = self._check_antagonistic(joins, index, tree_id, s, x)

        return [independent, conditional, reinforcing, antagonistic]

    def _check_antagonistic(
        self, joins: JoinService, index: int, tree_id: str, s: ConsequenceTree, x: ConsequenceTree
    ) -> SemanticsReport:
        joined = joins.antagonistic_join(s, x, ANTAGONISM_EVENT)
        root = joined.root
        expected_counts = {
            SAFETY: len(self.consequence.reachable_outcomes(s)),
            SECURITY: len(self.consequence.reachable_outcomes(x)),
        }
        reached: dict[str, set[int]] = {SAFETY: set(), SECURITY: set()}
        outcomes = self.consequence.enumerate_outcomes(joined)
        for outcome in outcomes:
            side = SAFETY if outcome.choice[root] == 1 else SECURITY
            leaf = joined.tree.node(outcome.outcome)
            if leaf.provenance != side:
                return _violated(index, tree_id, "antagonistic", outcome.choice,
                                 f"branch {side} reached {leaf.provenance} outcome '{leaf.label}'")
            reached[side].add(outcome.outcome)
        for side, expected in expected_counts.items():
            if len(reached[side]) != expected:
                return _violated(index, tree_id, "antagonistic", outcomes[0].choice,
                                 f"{side} side reaches {len(reached[side])} outcomes, expected {expected}")
        return SemanticsReport(case=index, tree_id=tree_id, law="antagonistic", status="holds")

    def _check_oracle_case(self, seed: int, index: int) -> list[SemanticsReport]:
        rng = case_rng(seed, index)
        t = self.random_prevention_tree(rng, "v")
        labels = t.tree.leaf_labels()
        self.ensure_leaf_cap(len(labels))
        for A in self.prevention.subsets(labels):
            if self.prevention.evaluate(t, A) != self.oracle_evaluate(t, A):
                return [SemanticsReport(
                    case=index, tree_id=f"{seed}:{index}", law="evaluate-oracle",
                    status="violated", witness_active=A.sorted(),
                )]
        return [SemanticsReport(
            case=index, tree_id=f"{seed}:{index}", law="evaluate-oracle", status="holds"
        )]

    @staticmethod
    def _log_summary(suite: str, seed: int, reports: list[SemanticsReport]) -> None:
        violated = [r for r in reports if not r.holds]
        for r in violated:
            logger.warning("Law %s violated in case %s: %s", r.law, r.tree_id, r.detail or "")
        logger.info("%s suite, seed %d: %d checks, %d violations", suite, seed, len(reports), len(violated))

    # --- Generators ---
    def random_prevention_tree(
        self,
        rng: random.Random,
        prefix: str,
        require_inhibit: bool = False,
        shared: Sequence[str] = (),
    ) -> PreventionTree:
        """
            Random proper DPT with leaves `prefix0`, `prefix1`, ... and bounded depth.

        `shared` labels join the leaf pool so the tree can meet another one on
        them. Splits may copy a label into a sibling subtree, which gives
        leaves with several parents. With `require_inhibit` the root is an
        INHIBIT gate.
        """
        labels = self._leaf_labels(rng, prefix) + list(shared)
        if require_inhibit and len(labels) < 2:
            labels.append(f"{prefix}{len(labels)}")
        term = self._prevention_term(rng, labels, 0, require_inhibit)
        return PreventionTree(tree=to_tree(term))

    def random_consequence_tree(self, rng: random.Random, prefix: str) -> ConsequenceTree:
        """Random proper DCT; CHOOSE events are labelled `prefixe0`, `prefixe1`, ..."""
        labels = self._leaf_labels(rng, prefix)
        term = self._consequence_term(rng, labels, 0, prefix, count())
        return ConsequenceTree(tree=to_tree(term))

    def _leaf_labels(self, rng: random.Random, prefix: str) -> list[str]:
        n = rng.randint(self.settings.generator_min_leaves, self.settings.generator_max_leaves)
        return [f"{prefix}{i}" for i in range(n)]

    def _prevention_term(
        self, rng: random.Random, labels: list[str], depth: int, force_inhibit: bool = False
    ) -> Term:
        if len(labels) == 1:
            return Leaf(label=labels[0])
        inhibit = force_inhibit or rng.random() < self.settings.generator_inhibit_probability
        if depth >= self.settings.generator_max_depth - 1 and not force_inhibit:
            if inhibit and len(labels) == 2:
                return Inhibit(cause=Leaf(label=labels[0]), prevention=Leaf(label=labels[1]))
            gate = rng.choice((And, Or))
            return gate(operands=tuple(Leaf(label=label) for label in labels))
        if inhibit:
            cause, prevention = self._share(rng, _split(rng, labels, 2))
            return Inhibit(
                cause=self._prevention_term(rng, cause, depth + 1),
                prevention=self._prevention_term(rng, prevention, depth + 1),
            )
        groups = self._share(rng, _split(rng, labels, rng.randint(2, min(3, len(labels)))))
        gate = rng.choice((And, Or))
        return gate(operands=tuple(self._prevention_term(rng, g, depth + 1) for g in groups))

    def _share(self, rng: random.Random, groups: list[list[str]]) -> list[list[str]]:
        """Maybe copy one label into a sibling group that does not hold it yet."""
        if rng.random() >= self.settings.generator_share_probability:
            return groups
        source, target = rng.sample(range(len(groups)), 2)
        label = rng.choice(groups[source])
        # the receiving group has two labels or more, so it becomes a gate
        # and never a second copy of a leaf under the same parent
        return [[*g, label] if i == target else g for i, g in enumerate(groups)]

    def shared_labels(
        self, rng: random.Random, t: PreventionTree, exclude: str | None = None
    ) -> list[str]:
        """Maybe pick one leaf label of `t` for another generated tree to reuse."""
        if rng.random() >= self.settings.generator_share_probability:
            return []
        candidates = [label for label in t.tree.leaf_labels() if label != exclude]
        return [rng.choice(candidates)] if candidates else []

    def _consequence_term(
        self, rng: random.Random, labels: list[str], depth: int, prefix: str, events: Iterator[int]
    ) -> Term:
        if len(labels) == 1:
            return Leaf(label=labels[0])
        event = f"{prefix}e{next(events)}"
        if depth >= self.settings.generator_max_depth - 1:
            groups = [[label] for label in labels]
        else:
            groups = _split(rng, labels, rng.randint(2, min(3, len(labels))))
        branches = tuple(
            Branch(tag=str(i + 1), term=self._consequence_term(rng, g, depth + 1, prefix, events))
            for i, g in enumerate(groups)
        )
        return Choose(label=event, branches=branches)


# --- Helpers ---
def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def random_choice(rng: random.Random, t: ConsequenceTree) -> ConsequenceChoice:
    return ConsequenceChoice(
        choice={v: rng.randint(1, len(t.tree.children(v))) for v in t.choose_ids()}
    )


def _split(rng: random.Random, labels: list[str], parts: int) -> list[list[str]]:
    """Cut `labels` into `parts` non-empty contiguous groups."""
    cuts = sorted(rng.sample(range(1, len(labels)), parts - 1))
    bounds = [0, *cuts, len(labels)]
    return [labels[lo:hi] for lo, hi in zip(bounds, bounds[1:])]


def _negated(node: TreeNode, choice: ConsequenceChoice) -> bool:
    """True for a CHOOSE whose taken branch is tagged `not <its event>`."""
    if node.kind is not NodeKind.CHOOSE or node.id not in choice.choice:
        return False
    return node.tag_of(choice[node.id] - 1) == f"not {node.label}"


def _naive(tree: StructureTree, node_id: int, active: frozenset[str]) -> bool:
    node = tree.nodes[node_id]
    if node.kind is NodeKind.LEAF:
        return node.label in active
    if node.kind is NodeKind.AND:
        return all(_naive(tree, c, active) for c in node.children)
    if node.kind is NodeKind.OR:
        return any(_naive(tree, c, active) for c in node.children)
    cause, prevention = node.children
    return _naive(tree, cause, active) and not _naive(tree, prevention, active)


def _compare(
    index: int, tree_id: str, law: str, labels: list[str], expected: int, actual: int
) -> SemanticsReport:
    diff = expected ^ actual
    if not diff:
        return SemanticsReport(case=index, tree_id=tree_id, law=law, status="holds")
    k = (diff & -diff).bit_length() - 1
    witness = sorted(label for i, label in enumerate(labels) if k >> i & 1)
    return SemanticsReport(
        case=index, tree_id=tree_id, law=law, status="violated", witness_active=witness,
        detail=f"expected {bool(expected >> k & 1)}, got {bool(actual >> k & 1)}",
    )


def _violated(
    index: int, tree_id: str, law: str, choice: ConsequenceChoice, detail: str
) -> SemanticsReport:
    return SemanticsReport(
        case=index, tree_id=tree_id, law=law, status="violated",
        witness_choice=dict(choice.items()), detail=detail,
    )
