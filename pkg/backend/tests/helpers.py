"""Builders shared by the test modules."""
from pathlib import Path

from dsl import parse, to_tree
from models.consequence import ConsequenceTree
from models.prevention import ActivationSet, PreventionTree

FIXTURES = Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def dpt(source: str) -> PreventionTree:
    return PreventionTree(tree=to_tree(parse(source)))


def dct(source: str) -> ConsequenceTree:
    return ConsequenceTree(tree=to_tree(parse(source)))


def active(*labels: str) -> ActivationSet:
    return ActivationSet.of(labels)
