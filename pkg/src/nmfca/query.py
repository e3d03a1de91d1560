"""Parser for implication and conditional queries.

Grammar::

    query   := names OP ["!"] names
    OP      := "->" | "~>"
    names   := [name ("," name)*]
    name    := bare | '"' quoted '"'

Bare names are trimmed; quoted names may contain commas, arrows and ``!``,
with ``""`` standing for a literal quote.  Either side may be empty (∅).
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditional import Conditional
from .context import FormalContext, Implication
from .errors import ContextParseError, UnknownNameError

__all__ = ["Query", "parse_query", "split_names"]

OPERATORS = ("~>", "->")


@dataclass(frozen=True)
class Query:
    operator: str
    premise: tuple[str, ...]
    conclusion: tuple[str, ...]
    negated: bool
    premise_columns: tuple[int, ...] = ()
    conclusion_columns: tuple[int, ...] = ()

    @property
    def defeasible(self) -> bool:
        return self.operator == "~>"

    def _resolve(self, ctx: FormalContext) -> tuple[frozenset[int], frozenset[int]]:
        sides = []
        for names, columns in ((self.premise, self.premise_columns),
                               (self.conclusion, self.conclusion_columns)):
            indices = set()
            for k, name in enumerate(names):
                if name not in ctx.attributes:
                    raise UnknownNameError("attribute", name, columns[k] if columns else None)
                indices.add(ctx.attributes.index(name))
            sides.append(frozenset(indices))
        return sides[0], sides[1]

    def implication(self, ctx: FormalContext) -> Implication:
        premise, conclusion = self._resolve(ctx)
        return Implication(premise, conclusion, self.negated)

    def conditional(self, ctx: FormalContext) -> Conditional:
        premise, conclusion = self._resolve(ctx)
        return Conditional(premise, conclusion, self.negated)

    def __str__(self) -> str:
        def side(names: tuple[str, ...]) -> str:
            return ", ".join(_quote(n) for n in names)

        bang = "!" if self.negated else ""
        return f"{side(self.premise)} {self.operator} {bang}{side(self.conclusion)}".strip()


def _quote(name: str) -> str:
    if any(ch in name for ch in ',"!') or "->" in name or "~>" in name or name != name.strip():
        return '"' + name.replace('"', '""') + '"'
    return name


def split_names(text: str, offset: int) -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Split a comma list; ``offset`` is the 0-based position of ``text`` in the query."""
    names: list[str] = []
    columns: list[int] = []
    i = 0
    n = len(text)
    if not text.strip():
        return (), ()
    while True:
        while i < n and text[i].isspace():
            i += 1
        start = i
        if i < n and text[i] == '"':
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise ContextParseError("unterminated quoted name", 1, offset + start + 1)
                if text[i] == '"':
                    if i + 1 < n and text[i + 1] == '"':
                        buf.append('"')
                        i += 2
                        continue
                    i += 1
                    break
                buf.append(text[i])
                i += 1
            name = "".join(buf)
            while i < n and text[i].isspace():
                i += 1
            if i < n and text[i] != ",":
                raise ContextParseError("unexpected text after quoted name", 1, offset + i + 1)
        else:
            end = text.find(",", i)
            end = n if end == -1 else end
            name = text[i:end].strip()
            i = end
        if not name:
            raise ContextParseError("empty attribute name", 1, offset + start + 1)
        names.append(name)
        columns.append(offset + start + 1)
        if i >= n:
            break
        i += 1  # skip comma
    return tuple(names), tuple(columns)


def _find_operator(text: str) -> tuple[int, str]:
    quote_start = None
    for i, ch in enumerate(text):
        if ch == '"':
            quote_start = i if quote_start is None else None
        elif quote_start is None and text[i:i + 2] in OPERATORS:
            return i, text[i:i + 2]
    if quote_start is not None:
        raise ContextParseError("unterminated quoted name", 1, quote_start + 1)
    raise ContextParseError("expected '->' or '~>'", 1, len(text) + 1)


def parse_query(text: str) -> Query:
    pos, op = _find_operator(text)
    premise, premise_cols = split_names(text[:pos], 0)
    rest_start = pos + 2
    rest = text[rest_start:]
    stripped = rest.lstrip()
    negated = stripped.startswith("!")
    if negated:
        bang = rest_start + (len(rest) - len(stripped))
        rest_start = bang + 1
        rest = text[rest_start:]
    try:
        extra, _ = _find_operator(rest)
    except ContextParseError:
        pass
    else:
        raise ContextParseError("more than one operator", 1, rest_start + extra + 1)
    conclusion, conclusion_cols = split_names(rest, rest_start)
    return Query(op, premise, conclusion, negated, premise_cols, conclusion_cols)
