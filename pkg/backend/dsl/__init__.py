"""
    Textual model language: parser, printer and tree interpretation.
"""
from .compiler import structurally_equal, to_tree, tree_to_term
from .parser import parse
from .printer import print_term

__all__ = ["parse", "print_term", "to_tree", "tree_to_term", "structurally_equal"]
