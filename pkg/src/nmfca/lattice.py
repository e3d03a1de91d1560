"""Concept enumeration, lattice order, meets/joins and diagram export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .context import FormalContext, from_mask, iter_bits, to_mask

__all__ = [
    "ConceptLattice",
    "FormalConcept",
    "concept_from_attrs",
    "concept_from_objects",
    "enumerate_concepts",
    "join",
    "lattice_from_json",
    "lattice_to_json",
    "leq",
    "meet",
    "next_closure",
    "to_dot",
]


@dataclass(frozen=True)
class FormalConcept:
    extent: frozenset[int]
    intent: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "extent", frozenset(self.extent))
        object.__setattr__(self, "intent", frozenset(self.intent))

    @classmethod
    def from_masks(cls, extent: int, intent: int) -> "FormalConcept":
        return cls(from_mask(extent), from_mask(intent))

    @property
    def extent_mask(self) -> int:
        return to_mask(self.extent)

    @property
    def intent_mask(self) -> int:
        return to_mask(self.intent)

    def is_concept_of(self, ctx: FormalContext) -> bool:
        ext, intent = self.extent_mask, self.intent_mask
        return ctx.intent_mask(ext) == intent and ctx.extent_mask(intent) == ext

    def describe(self, ctx: FormalContext) -> str:
        objs = ", ".join(ctx.object_names(self.extent))
        attrs = ", ".join(ctx.attribute_names(self.intent))
        return f"({{{objs}}}, {{{attrs}}})"


def concept_from_attrs(ctx: FormalContext, attributes: Iterable[int]) -> FormalConcept:
    """``(B', B'')``."""
    ext = ctx.extent_mask(ctx.attr_mask(attributes))
    return FormalConcept.from_masks(ext, ctx.intent_mask(ext))


def concept_from_objects(ctx: FormalContext, objects: Iterable[int]) -> FormalConcept:
    """``(A'', A')``."""
    intent = ctx.intent_mask(ctx.obj_mask(objects))
    return FormalConcept.from_masks(ctx.extent_mask(intent), intent)


def meet(ctx: FormalContext, c1: FormalConcept, c2: FormalConcept) -> FormalConcept:
    extent = c1.extent_mask & c2.extent_mask
    return FormalConcept.from_masks(extent, ctx.closure_mask(c1.intent_mask | c2.intent_mask))


def join(ctx: FormalContext, c1: FormalConcept, c2: FormalConcept) -> FormalConcept:
    intent = c1.intent_mask & c2.intent_mask
    return FormalConcept.from_masks(ctx.extent_mask(ctx.intent_mask(c1.extent_mask | c2.extent_mask)), intent)


def leq(c1: FormalConcept, c2: FormalConcept) -> bool:
    """Sub-concept order: extent inclusion."""
    return c1.extent <= c2.extent


def next_closure(ctx: FormalContext) -> Iterator[int]:
    """Yield every closed intent (as a bitmask) in lectic order.

    The attribute with the highest index is the least significant position.
    """
    n = ctx.n_attributes
    full = ctx.all_attributes
    current = ctx.closure_mask(0)
    yield current
    while current != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
                continue
            candidate = ctx.closure_mask(current | bit)
            if (candidate & ~current) & (bit - 1) == 0:
                current = candidate
                break
        yield current


def _canonical_key(extent: int) -> tuple[int, tuple[int, ...]]:
    return extent.bit_count(), tuple(iter_bits(extent))


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context in canonical order with their ≤ relation.

    Canonical order sorts by extent size, then by the sorted tuple of extent
    indices.  ``up[i]`` is a bitmask over concept indices of the strict
    super-concepts of concept ``i``; ``upper_covers[i]`` holds only the
    Hasse-diagram neighbours.
    """

    context: FormalContext
    extents: tuple[int, ...]
    intents: tuple[int, ...]
    up: tuple[int, ...] = field(init=False, repr=False)
    upper_covers: tuple[int, ...] = field(init=False, repr=False)
    _by_extent: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.extents)
        up = []
        for i, ext in enumerate(self.extents):
            mask = 0
            for j, other in enumerate(self.extents):
                if j != i and ext & ~other == 0:
                    mask |= 1 << j
            up.append(mask)
        covers = []
        for i in range(n):
            transitive = 0
            for j in iter_bits(up[i]):
                transitive |= up[j]
            covers.append(up[i] & ~transitive)
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "upper_covers", tuple(covers))
        object.__setattr__(self, "_by_extent", {ext: i for i, ext in enumerate(self.extents)})

    @classmethod
    def from_intents(cls, ctx: FormalContext, intents: Iterable[int]) -> "ConceptLattice":
        pairs = {ctx.extent_mask(b): b for b in intents}
        extents = sorted(pairs, key=_canonical_key)
        return cls(ctx, tuple(extents), tuple(pairs[e] for e in extents))

    def __len__(self) -> int:
        return len(self.extents)

    @property
    def concepts(self) -> tuple[FormalConcept, ...]:
        return tuple(FormalConcept.from_masks(e, b) for e, b in zip(self.extents, self.intents))

    def concept(self, i: int) -> FormalConcept:
        return FormalConcept.from_masks(self.extents[i], self.intents[i])

    @property
    def top(self) -> int:
        return self._by_extent[self.context.all_objects]

    @property
    def bottom(self) -> int:
        return self._by_extent[self.context.extent_mask(self.context.all_attributes)]

    def index(self, concept: FormalConcept | int) -> int:
        """Index of a concept, given as a :class:`FormalConcept` or an extent mask."""
        ext = concept if isinstance(concept, int) else concept.extent_mask
        try:
            return self._by_extent[ext]
        except KeyError:
            raise KeyError(f"not a concept extent of this lattice: {sorted(iter_bits(ext))}") from None

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool(self.up[i] >> j & 1)

    @property
    def leq_pairs(self) -> frozenset[tuple[int, int]]:
        pairs = {(i, i) for i in range(len(self))}
        pairs.update((i, j) for i in range(len(self)) for j in iter_bits(self.up[i]))
        return frozenset(pairs)

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(lower, upper)`` sorted by index."""
        return [(i, j) for i in range(len(self)) for j in iter_bits(self.upper_covers[i])]

    def meet(self, i: int, j: int) -> int:
        return self._by_extent[self.extents[i] & self.extents[j]]

    def join(self, i: int, j: int) -> int:
        ctx = self.context
        return self._by_extent[ctx.extent_mask(self.intents[i] & self.intents[j])]

    def attribute_concept(self, m: int) -> int:
        return self._by_extent[self.context.columns[m]]

    def object_concept(self, g: int) -> int:
        return self._by_extent[self.context.extent_mask(self.context.rows[g])]


def enumerate_concepts(ctx: FormalContext) -> ConceptLattice:
    return ConceptLattice.from_intents(ctx, next_closure(ctx))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(lat: ConceptLattice, marks: Iterable[int] | None = None) -> str:
    """Hasse diagram in DOT with reduced labelling; ``marks`` are filled grey."""
    ctx = lat.context
    marked = set(marks or ())
    bad = marked - set(range(len(lat)))
    if bad:
        raise IndexError(f"marks reference unknown concepts: {sorted(bad)}")
    attr_labels: dict[int, list[str]] = {}
    obj_labels: dict[int, list[str]] = {}
    for m, name in enumerate(ctx.attributes):
        attr_labels.setdefault(lat.attribute_concept(m), []).append(name)
    for g, name in enumerate(ctx.objects):
        obj_labels.setdefault(lat.object_concept(g), []).append(name)

    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(len(lat)):
        parts = [", ".join(names) for names in (attr_labels.get(i), obj_labels.get(i)) if names]
        label = "\\n".join(_dot_escape(p) for p in parts)
        attrs = f'label="{label}"'
        if i in marked:
            attrs += " style=filled fillcolor=gray"
        lines.append(f"  c{i} [{attrs}];")
    for lower, upper in lat.covers:
        lines.append(f"  c{lower} -> c{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_json(lat: ConceptLattice) -> dict[str, Any]:
    ctx = lat.context
    return {
        "concepts": [
            {"extent": ctx.object_names(e), "intent": ctx.attribute_names(b)}
            for e, b in zip(lat.extents, lat.intents)
        ],
        "covers": [list(edge) for edge in lat.covers],
        "top": lat.top,
        "bottom": lat.bottom,
    }


def lattice_from_json(data: dict[str, Any] | str) -> ConceptLattice:
    """Rebuild a lattice (and its context) from :func:`lattice_to_json` output.

    Object names come from the top extent and attribute names from the bottom
    intent, both of which list every name in context order.
    """
    if isinstance(data, str):
        data = json.loads(data)
    concepts = data["concepts"]
    objects = concepts[data["top"]]["extent"]
    attributes = concepts[data["bottom"]]["intent"]
    obj_index = {name: i for i, name in enumerate(objects)}
    attr_index = {name: i for i, name in enumerate(attributes)}
    rows = [0] * len(objects)
    for c in concepts:
        intent = to_mask(attr_index[a] for a in c["intent"])
        for name in c["extent"]:
            rows[obj_index[name]] |= intent
    ctx = FormalContext(tuple(objects), tuple(attributes), tuple(rows))
    lat = ConceptLattice.from_intents(ctx, (to_mask(attr_index[a] for a in c["intent"]) for c in concepts))
    if len(lat) != len(concepts) or [list(e) for e in lat.covers] != data["covers"]:
        raise ValueError("JSON lattice is inconsistent with the context it implies")
    return lat
