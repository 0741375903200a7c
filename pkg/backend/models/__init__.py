"""Domain models."""
from .tree import (
    NodeId,
    NodeKind,
    StructureTree,
    TreeFragment,
    TreeNode,
    build_tree,
    disjoint_union,
    leaves_of,
    nodes_of_kind,
)
from .prevention import ActivationSet, DisruptionSet, PreventionTree
from .consequence import ConsequenceChoice, ConsequenceTree, Outcome
from .bowtie import Bowtie, JoinReport, ReinforcingBranch, make_bowtie

__all__ = [
    "NodeId",
    "NodeKind",
    "StructureTree",
    "TreeFragment",
    "TreeNode",
    "build_tree",
    "disjoint_union",
    "leaves_of",
    "nodes_of_kind",
    "ActivationSet",
    "DisruptionSet",
    "PreventionTree",
    "ConsequenceChoice",
    "ConsequenceTree",
    "Outcome",
    "Bowtie",
    "JoinReport",
    "ReinforcingBranch",
    "make_bowtie",
]
