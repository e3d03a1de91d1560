"""Preference orders over objects and the minimised derivation."""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .context import FormalContext, from_mask, iter_bits
from .errors import ContextParseError, OrderCycleError, UnknownNameError

__all__ = [
    "ExtendedContext",
    "PreferenceOrder",
    "build_order",
    "load_preferences",
    "minimised_return",
    "minimize",
    "parse_preferences",
]


@dataclass(frozen=True)
class PreferenceOrder:
    """Strict partial order ``≺`` on object indices, stored transitively closed.

    ``below[g]`` is the bitmask of objects ``h`` with ``h ≺ g`` (``h`` more
    typical than ``g``).
    """

    below: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "below", tuple(self.below))
        n = len(self.below)
        for g, mask in enumerate(self.below):
            if mask >> n:
                raise ValueError(f"object {g} is related to an index beyond {n}")
            if mask >> g & 1:
                raise ValueError(f"order is not irreflexive at object {g}")
            for h in iter_bits(mask):
                if self.below[h] & ~mask:
                    raise ValueError("order is not transitively closed")

    @classmethod
    def empty(cls, n_objects: int) -> "PreferenceOrder":
        return cls((0,) * n_objects)

    @classmethod
    def from_pairs(cls, n_objects: int, pairs: Iterable[tuple[int, int]]) -> "PreferenceOrder":
        """Close index pairs ``(g, h)`` meaning ``g ≺ h``; raises on cycles."""
        below = [0] * n_objects
        graph: dict[int, set[int]] = {}
        for g, h in pairs:
            if not (0 <= g < n_objects and 0 <= h < n_objects):
                raise IndexError(f"pair ({g}, {h}) out of range for {n_objects} objects")
            below[h] |= 1 << g
            graph.setdefault(h, set()).add(g)
        try:
            graphlib.TopologicalSorter(graph).prepare()
        except graphlib.CycleError as exc:
            raise OrderCycleError([str(i) for i in exc.args[1]]) from None
        # Floyd-Warshall over bitmask rows
        for k in range(n_objects):
            kbit = 1 << k
            for g in range(n_objects):
                if below[g] & kbit:
                    below[g] |= below[k]
        return cls(tuple(below))

    @property
    def n_objects(self) -> int:
        return len(self.below)

    def precedes(self, g: int, h: int) -> bool:
        """``g ≺ h``."""
        return bool(self.below[h] >> g & 1)

    @property
    def strict_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((g, h) for h, mask in enumerate(self.below) for g in iter_bits(mask))

    def minimal_mask(self, objs: int) -> int:
        """The ≺-minimal members of the object bitmask ``objs``."""
        result = 0
        for g in iter_bits(objs):
            if not self.below[g] & objs:
                result |= 1 << g
        return result


@dataclass(frozen=True)
class ExtendedContext:
    """A formal context together with a preference order over its objects."""

    context: FormalContext
    order: PreferenceOrder

    def __post_init__(self) -> None:
        if self.order.n_objects != self.context.n_objects:
            raise ValueError(
                f"order covers {self.order.n_objects} objects, context has {self.context.n_objects}"
            )

    @classmethod
    def unordered(cls, ctx: FormalContext) -> "ExtendedContext":
        return cls(ctx, PreferenceOrder.empty(ctx.n_objects))

    def min_mask(self, attrs: int) -> int:
        return self.order.minimal_mask(self.context.extent_mask(attrs))

    def min_return_mask(self, attrs: int) -> int:
        return self.context.intent_mask(self.min_mask(attrs))


def build_order(ctx: FormalContext, declared: Iterable[tuple[str, str]]) -> PreferenceOrder:
    """Transitively close ``(more_typical, less_typical)`` name pairs."""
    pairs = [(ctx.object_index(a), ctx.object_index(b)) for a, b in declared]
    try:
        return PreferenceOrder.from_pairs(ctx.n_objects, pairs)
    except OrderCycleError as exc:
        raise OrderCycleError([ctx.objects[int(i)] for i in exc.cycle]) from None


def parse_preferences(text: str, ctx: FormalContext) -> PreferenceOrder:
    """Parse ``NAME < NAME`` lines (left is more typical); ``#`` starts a comment."""
    pairs = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        parts = line.split("<")
        if len(parts) != 2:
            raise ContextParseError("expected 'NAME < NAME'", number)
        left, right = parts[0].strip(), parts[1].strip()
        if not left or not right:
            raise ContextParseError("expected 'NAME < NAME'", number)
        for name, col in ((left, line.index(left) + 1), (right, line.index(right, len(parts[0])) + 1)):
            if name not in ctx.objects:
                raise ContextParseError(f"unknown object {name!r}", number, col)
        pairs.append((left, right))
    try:
        return build_order(ctx, pairs)
    except UnknownNameError as exc:  # pragma: no cover - names checked above
        raise ContextParseError(str(exc)) from None


def load_preferences(path: str | Path, ctx: FormalContext) -> PreferenceOrder:
    return parse_preferences(Path(path).read_text(encoding="utf-8"), ctx)


def minimize(ext: ExtendedContext, attributes: Iterable[int]) -> frozenset[int]:
    """``min B``: the objects of ``B'`` with no strictly preferred object in ``B'``."""
    return from_mask(ext.min_mask(ext.context.attr_mask(attributes)))


def minimised_return(ext: ExtendedContext, attributes: Iterable[int]) -> frozenset[int]:
    """``(min B)'``: the attributes shared by the most typical objects having ``B``."""
    return from_mask(ext.min_return_mask(ext.context.attr_mask(attributes)))
