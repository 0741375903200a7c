"""
    Canonical printer for terms.

ASCII mode prints re-parseable source with the fewest parentheses that keep
the term's exact shape. Glyph mode prints the documentation notation
(∩, ∪, infix ⬡ for INHIBIT) with every compound operand parenthesised.
"""
from dsl.lexer import IDENT_RE, KEYWORDS
from models.term import And, Choose, Inhibit, Leaf, Or, Term

AND_GLYPH = "∩"
OR_GLYPH = "∪"
INHIBIT_GLYPH = "⬡"


def quote_label(label: str) -> str:
    if IDENT_RE.fullmatch(label) and label not in KEYWORDS:
        return label
    escaped = label.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _default_tags(choose: Choose) -> bool:
    return all(b.tag == str(i) for i, b in enumerate(choose.branches, start=1))


def _print_choose(choose: Choose, unicode: bool) -> str:
    show_tags = not _default_tags(choose)
    parts = []
    for branch in choose.branches:
        body = _print(branch.term, unicode)
        parts.append(f"{quote_label(branch.tag)}: {body}" if show_tags else body)
    head = "choose " if choose.label is None else f"choose {quote_label(choose.label)} "
    return f"{head}{{{', '.join(parts)}}}"


def _print(term: Term, unicode: bool) -> str:
    if isinstance(term, Leaf):
        return term.label if unicode else quote_label(term.label)
    if isinstance(term, Choose):
        return _print_choose(term, unicode)
    if unicode:
        return _print_glyph(term)

    if isinstance(term, Inhibit):
        cause = _print(term.cause, unicode)
        prevention = _print(term.prevention, unicode)
        return f"inhibit({cause}, {prevention})"
    if isinstance(term, Or):
        parts = [
            _wrap(_print(op, unicode), isinstance(op, Or))
            for op in term.operands
        ]
        return " | ".join(parts)
    if isinstance(term, And):
        parts = [
            _wrap(_print(op, unicode), isinstance(op, (And, Or)))
            for op in term.operands
        ]
        return " & ".join(parts)
    raise TypeError(f"not a term: {term!r}")


def _print_glyph(term: Term) -> str:
    if isinstance(term, Inhibit):
        operands = (term.cause, term.prevention)
        glyph = INHIBIT_GLYPH
    elif isinstance(term, And):
        operands = term.operands
        glyph = AND_GLYPH
    else:
        operands = term.operands
        glyph = OR_GLYPH
    parts = [
        _wrap(_print(op, True), not isinstance(op, (Leaf, Choose)))
        for op in operands
    ]
    return f" {glyph} ".join(parts)


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def print_term(ast: Term, unicode: bool = False) -> str:
    return _print(ast, unicode)
