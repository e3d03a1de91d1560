"""Formal contexts, derivation operators and classical implications.

Sets of objects and attributes are exposed as ``frozenset`` of positional
indices.  Internally every set is an ``int`` bitmask (bit ``i`` set iff index
``i`` is a member); the ``*_mask`` helpers work at that level and are what the
other modules use on hot paths.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import ContextParseError, UnknownNameError

__all__ = [
    "ContextFormat",
    "FormalContext",
    "Implication",
    "attr_equivalent",
    "closure",
    "derive_attributes",
    "derive_objects",
    "from_mask",
    "iter_bits",
    "load_context",
    "models_implication",
    "parse_context",
    "respects_implication",
    "serialize_context",
    "to_mask",
]

INCIDENT_CELLS = frozenset({"X", "x", "×"})
ABSENT_CELLS = frozenset({"", "."})


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 0:
            raise IndexError(f"negative index {i}")
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class ContextFormat(str, Enum):
    CXT = "cxt"
    CSV = "csv"


@dataclass(frozen=True)
class FormalContext:
    """A formal context ``(G, M, I)``.

    ``rows[g]`` is the intent of object ``g`` as an attribute bitmask.  Use
    :meth:`from_matrix` to build one from a boolean cross-table.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]
    columns: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(self.rows))
        _check_names("object", self.objects)
        _check_names("attribute", self.attributes)
        if len(self.rows) != len(self.objects):
            raise ValueError(
                f"incidence has {len(self.rows)} rows for {len(self.objects)} objects"
            )
        full = (1 << len(self.attributes)) - 1
        for g, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {g} references attributes beyond |M|")
        columns = []
        for m in range(len(self.attributes)):
            bit = 1 << m
            columns.append(sum(1 << g for g, row in enumerate(self.rows) if row & bit))
        object.__setattr__(self, "columns", tuple(columns))

    @classmethod
    def from_matrix(
        cls,
        objects: Sequence[str],
        attributes: Sequence[str],
        incidence: Sequence[Sequence[bool]],
    ) -> "FormalContext":
        if len(incidence) != len(objects):
            raise ValueError(f"incidence has {len(incidence)} rows for {len(objects)} objects")
        rows = []
        for g, row in enumerate(incidence):
            if len(row) != len(attributes):
                raise ValueError(
                    f"row {g} has {len(row)} cells for {len(attributes)} attributes"
                )
            rows.append(sum(1 << m for m, cell in enumerate(row) if cell))
        return cls(tuple(objects), tuple(attributes), tuple(rows))

    @classmethod
    def from_intents(
        cls, intents: dict[str, Iterable[str]], attributes: Sequence[str]
    ) -> "FormalContext":
        """Build a context from ``{object: attribute names}``, preserving dict order."""
        index = {name: i for i, name in enumerate(attributes)}
        rows = []
        for obj, names in intents.items():
            try:
                rows.append(to_mask(index[n] for n in names))
            except KeyError as exc:
                raise UnknownNameError("attribute", exc.args[0]) from None
        return cls(tuple(intents), tuple(attributes), tuple(rows))

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def all_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes(self) -> int:
        return (1 << len(self.attributes)) - 1

    @property
    def incidence(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(bool(row >> m & 1) for m in range(len(self.attributes))) for row in self.rows
        )

    def has(self, g: int, m: int) -> bool:
        return bool(self.rows[g] >> m & 1)

    # mask-level derivations

    def extent_mask(self, attrs: int) -> int:
        """Objects having every attribute in the mask ``attrs``."""
        ext = self.all_objects
        for m in iter_bits(attrs):
            ext &= self.columns[m]
        return ext

    def intent_mask(self, objs: int) -> int:
        """Attributes shared by every object in the mask ``objs``."""
        intent = self.all_attributes
        for g in iter_bits(objs):
            intent &= self.rows[g]
        return intent

    def closure_mask(self, attrs: int) -> int:
        return self.intent_mask(self.extent_mask(attrs))

    def attr_mask(self, indices: Iterable[int]) -> int:
        mask = to_mask(indices)
        if mask >> len(self.attributes):
            raise IndexError("attribute index out of range")
        return mask

    def obj_mask(self, indices: Iterable[int]) -> int:
        mask = to_mask(indices)
        if mask >> len(self.objects):
            raise IndexError("object index out of range")
        return mask

    # name lookup

    def attribute_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise UnknownNameError("attribute", name) from None

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise UnknownNameError("object", name) from None

    def attrs(self, *names: str) -> frozenset[int]:
        """Attribute index set for the given names."""
        return frozenset(self.attribute_index(n) for n in names)

    def objs(self, *names: str) -> frozenset[int]:
        return frozenset(self.object_index(n) for n in names)

    def attribute_names(self, indices: Iterable[int] | int) -> list[str]:
        if isinstance(indices, int):
            indices = iter_bits(indices)
        return [self.attributes[i] for i in sorted(indices)]

    def object_names(self, indices: Iterable[int] | int) -> list[str]:
        if isinstance(indices, int):
            indices = iter_bits(indices)
        return [self.objects[i] for i in sorted(indices)]


def _check_names(kind: str, names: tuple[str, ...]) -> None:
    if not names:
        raise ValueError(f"a formal context needs at least one {kind}")
    seen = set()
    for name in names:
        if not isinstance(name, str) or not name:
            raise ValueError(f"{kind} names must be non-empty strings")
        if name in seen:
            raise ValueError(f"duplicate {kind} name {name!r}")
        seen.add(name)


def derive_objects(ctx: FormalContext, objects: Iterable[int]) -> frozenset[int]:
    """``A'``: the attributes common to all objects in ``A`` (all of M for A = ∅)."""
    return from_mask(ctx.intent_mask(ctx.obj_mask(objects)))


def derive_attributes(ctx: FormalContext, attributes: Iterable[int]) -> frozenset[int]:
    """``B'``: the objects having every attribute in ``B`` (all of G for B = ∅)."""
    return from_mask(ctx.extent_mask(ctx.attr_mask(attributes)))


def closure(ctx: FormalContext, attributes: Iterable[int]) -> frozenset[int]:
    return from_mask(ctx.closure_mask(ctx.attr_mask(attributes)))


def attr_equivalent(ctx: FormalContext, a: Iterable[int], b: Iterable[int]) -> bool:
    """Attribute sets are equivalent iff they have the same extent."""
    return ctx.extent_mask(ctx.attr_mask(a)) == ctx.extent_mask(ctx.attr_mask(b))


@dataclass(frozen=True)
class Implication:
    """``premise -> conclusion``, or ``premise -> ¬conclusion`` when ``negated``."""

    premise: frozenset[int]
    conclusion: frozenset[int]
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion))

    @classmethod
    def of(cls, ctx: FormalContext, premise: Iterable[str], conclusion: Iterable[str],
           negated: bool = False) -> "Implication":
        return cls(ctx.attrs(*premise), ctx.attrs(*conclusion), negated)


def models_implication(ctx: FormalContext, imp: Implication) -> bool:
    premise_ext = ctx.extent_mask(ctx.attr_mask(imp.premise))
    conclusion_ext = ctx.extent_mask(ctx.attr_mask(imp.conclusion))
    if imp.negated:
        return premise_ext & conclusion_ext == 0
    return premise_ext & ~conclusion_ext == 0


def respects_implication(intent: Iterable[int], imp: Implication) -> bool:
    """Object-level check of a single intent against an implication."""
    intent = frozenset(intent)
    if not imp.premise <= intent:
        return True
    if imp.negated:
        return not imp.conclusion <= intent
    return imp.conclusion <= intent


# parsing and serialization


def parse_context(text: str, format: ContextFormat | str = ContextFormat.CXT) -> FormalContext:
    fmt = ContextFormat(format)
    if fmt is ContextFormat.CXT:
        return _parse_cxt(text)
    return _parse_csv(text)


def load_context(path: str | Path) -> FormalContext:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return parse_context(text, ContextFormat.CSV)
    if suffix == ".cxt":
        return parse_context(text, ContextFormat.CXT)
    return parse_context(text, ContextFormat.CSV if "," in text.split("\n", 1)[0] else ContextFormat.CXT)


def serialize_context(ctx: FormalContext, format: ContextFormat | str = ContextFormat.CXT) -> str:
    fmt = ContextFormat(format)
    if fmt is ContextFormat.CXT:
        lines = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
        lines += ctx.objects
        lines += ctx.attributes
        for row in ctx.rows:
            lines.append("".join("X" if row >> m & 1 else "." for m in range(ctx.n_attributes)))
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["", *ctx.attributes])
    for name, row in zip(ctx.objects, ctx.rows):
        writer.writerow([name, *("X" if row >> m & 1 else "" for m in range(ctx.n_attributes))])
    return buf.getvalue()


def _build(objects: list[str], attributes: list[str], rows: list[int], line: int) -> FormalContext:
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(rows))
    except ValueError as exc:
        raise ContextParseError(str(exc), line) from None


def _cell(value: str, line: int, column: int) -> bool:
    value = value.strip()
    if value in INCIDENT_CELLS:
        return True
    if value in ABSENT_CELLS:
        return False
    raise ContextParseError(f"malformed cell {value!r}", line, column)


def _parse_cxt(text: str) -> FormalContext:
    lines = text.splitlines()
    pos = 0

    def next_line(what: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise ContextParseError(f"unexpected end of input, expected {what}", pos + 1)
        pos += 1
        return lines[pos - 1].rstrip("\r")

    header = next_line("'B' header")
    if header.strip() != "B":
        raise ContextParseError(f"expected 'B' header, got {header!r}", 1)
    counts = []
    while len(counts) < 2:
        raw = next_line("object/attribute counts").strip()
        if not raw:
            if counts:
                raise ContextParseError("blank line between counts", pos)
            continue
        try:
            counts.append(int(raw))
        except ValueError:
            raise ContextParseError(f"expected a count, got {raw!r}", pos) from None
    n_obj, n_attr = counts
    if n_obj < 1 or n_attr < 1:
        raise ContextParseError("a formal context needs at least one object and one attribute", pos)
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    objects = [next_line("object name").strip() for _ in range(n_obj)]
    attributes = [next_line("attribute name").strip() for _ in range(n_attr)]
    rows = []
    for _ in range(n_obj):
        raw = next_line("incidence row").rstrip()
        if len(raw) != n_attr:
            raise ContextParseError(
                f"incidence row has {len(raw)} cells, expected {n_attr}", pos
            )
        rows.append(sum(1 << m for m, ch in enumerate(raw) if _cell(ch, pos, m + 1)))
    for extra in lines[pos:]:
        pos += 1
        if extra.strip():
            raise ContextParseError("trailing content after incidence rows", pos)
    return _build(objects, attributes, rows, pos)


def _parse_csv(text: str) -> FormalContext:
    records = [
        (number, row)
        for number, row in enumerate(csv.reader(io.StringIO(text)), start=1)
        if any(cell.strip() for cell in row)
    ]
    if not records:
        raise ContextParseError("empty cross-table", 1)
    header_line, header = records[0]
    attributes = [cell.strip() for cell in header[1:]]
    objects: list[str] = []
    rows: list[int] = []
    for number, record in records[1:]:
        if len(record) != len(header):
            raise ContextParseError(
                f"row has {len(record)} cells, header has {len(header)}", number
            )
        objects.append(record[0].strip())
        rows.append(
            sum(1 << m for m, cell in enumerate(record[1:]) if _cell(cell, number, m + 2))
        )
    return _build(objects, attributes, rows, header_line)
