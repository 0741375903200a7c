"""
    Exception hierarchy shared by the models, services, DSL and both surfaces.

    Everything derives from BowtieError (a plain Exception, not ValueError), so
    it passes through pydantic validators unwrapped and the CLI/HTTP layers
    can catch one base class.
"""
from collections.abc import Iterable


class BowtieError(Exception):
    """Base class for all domain errors."""


# --- Structure (core tree) ---
class StructureError(BowtieError):
    """A structure tree violates one of its structural invariants."""


class EmptyTree(StructureError):
    pass


class UnknownLabel(StructureError):
    def __init__(self, label: str):
        super().__init__(f"Unknown label '{label}'")
        self.label = label


class DuplicateLabel(StructureError):
    def __init__(self, label: str):
        super().__init__(f"Label '{label}' is declared more than once")
        self.label = label


class DuplicateLeafLabel(StructureError):
    def __init__(self, label: str):
        super().__init__(f"Leaf label '{label}' is used by more than one leaf")
        self.label = label


class CycleDetected(StructureError):
    def __init__(self, cycle: list[str]):
        super().__init__(f"Cycle detected: {' -> '.join(cycle)}")
        self.cycle = cycle


class MultipleRoots(StructureError):
    def __init__(self, roots: list[str]):
        super().__init__(f"Tree has {len(roots)} roots: {', '.join(roots)}")
        self.roots = roots


class Disconnected(StructureError):
    def __init__(self, components: int):
        super().__init__(f"Tree is not connected ({components} components)")
        self.components = components


class DuplicateChild(StructureError):
    def __init__(self, parent: str, child: str):
        super().__init__(f"Node '{parent}' lists child '{child}' more than once")
        self.parent = parent
        self.child = child


class LeafWithChildren(StructureError):
    def __init__(self, label: str):
        super().__init__(f"LEAF node '{label}' has children")
        self.label = label


class GateWithoutChildren(StructureError):
    def __init__(self, label: str, kind: str):
        super().__init__(f"{kind} node '{label}' has no children")
        self.label = label


class RootMismatch(StructureError):
    def __init__(self, declared: str, actual: str):
        super().__init__(f"Declared root '{declared}' is not the parentless node '{actual}'")


# --- Kind restrictions (prevention / consequence) ---
class KindError(BowtieError):
    """A structure tree uses node kinds or arities its flavour forbids."""


class IllegalKind(KindError):
    def __init__(self, label: str, kind: str, flavour: str):
        super().__init__(f"Node '{label}' of kind {kind} is not allowed in a {flavour}")
        self.kind = kind


class InhibitArity(KindError):
    def __init__(self, label: str, arity: int):
        super().__init__(f"INHIBIT node '{label}' has {arity} children, expected 2")
        self.arity = arity


class ChooseArity(KindError):
    def __init__(self, label: str, arity: int):
        super().__init__(f"CHOOSE node '{label}' has {arity} children, expected at least 2")
        self.arity = arity


# --- Evaluation ---
class EvaluationError(BowtieError):
    pass


class UnknownLeaf(EvaluationError):
    def __init__(self, labels: Iterable[str]):
        names = sorted(labels)
        super().__init__(f"Not a leaf of this tree: {', '.join(names)}")
        self.labels = names


class UnknownNode(EvaluationError):
    def __init__(self, node_id: int):
        super().__init__(f"Unknown node id {node_id}")
        self.node_id = node_id


class TooManyLeaves(EvaluationError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"Tree has {count} leaves; exhaustive enumeration is capped at {cap}")
        self.count = count
        self.cap = cap


class TooManyChoices(EvaluationError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"Tree has {count} CHOOSE nodes; enumeration is capped at {cap}")
        self.count = count
        self.cap = cap


class IndexOutOfRange(EvaluationError):
    def __init__(self, node_id: int, index: int, arity: int):
        super().__init__(f"Choice {index} for node {node_id} is outside 1..{arity}")


class MissingChoice(EvaluationError):
    def __init__(self, node_ids: Iterable[int]):
        ids = sorted(node_ids)
        super().__init__(f"No choice given for CHOOSE node(s) {ids}")
        self.node_ids = ids


# --- Joins ---
class JoinError(BowtieError):
    pass


class NotALeaf(JoinError):
    def __init__(self, label: str):
        super().__init__(f"'{label}' is not a LEAF of the host tree")


class LabelCollision(JoinError):
    def __init__(self, label: str):
        super().__init__(f"Join would give the label '{label}' to two distinct inputs")


class NotInhibit(JoinError):
    def __init__(self, node_id: int):
        super().__init__(f"Node {node_id} is not an INHIBIT node of the target tree")


class InvalidChoice(JoinError):
    def __init__(self, reason: str):
        super().__init__(f"Invalid consequence choice: {reason}")


# --- DSL ---
class DslError(BowtieError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class TermSyntaxError(DslError):
    def __init__(self, found: str, expected: Iterable[str], line: int, column: int):
        self.expected = sorted(set(expected))
        self.found = found
        super().__init__(
            f"unexpected {found}, expected one of: {', '.join(self.expected)}",
            line,
            column,
        )


class UnbalancedParen(DslError):
    pass


class EmptyInput(DslError):
    def __init__(self):
        super().__init__("empty input")


# --- Persistence ---
class ModelIOError(BowtieError):
    pass


class IoError(ModelIOError):
    pass


class SchemaError(ModelIOError):
    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}" if field_path else message)
        self.field_path = field_path


class ModelValidationError(ModelIOError):
    def __init__(self, cause: BowtieError):
        self.invariant = type(cause).__name__
        super().__init__(f"{self.invariant}: {cause}")
        self.cause = cause


# --- Analysis ---
class InvalidCount(BowtieError):
    def __init__(self, count: int):
        super().__init__(f"cases must be at least 1, got {count}")
