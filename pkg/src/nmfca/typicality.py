"""Typical concepts, the map phi, valid orders and the typical meet-semilattice."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .context import from_mask
from .lattice import ConceptLattice, FormalConcept, enumerate_concepts
from .preference import ExtendedContext

__all__ = [
    "TypicalSet",
    "enumerate_typical",
    "find_join_counterexample",
    "is_typical",
    "is_valid_order",
    "phi",
    "typical_concept_from",
    "typical_meet_semilattice",
]


def _typical_masks(ext: ExtendedContext, attrs: int) -> tuple[int, int]:
    ctx = ext.context
    intent = ctx.intent_mask(ext.min_mask(attrs))
    return ctx.extent_mask(intent), intent


def typical_concept_from(ext: ExtendedContext, attributes: Iterable[int]) -> FormalConcept:
    """``((min A)'', (min A)')``."""
    return FormalConcept.from_masks(*_typical_masks(ext, ext.context.attr_mask(attributes)))


def phi(ext: ExtendedContext, concept: FormalConcept) -> FormalConcept:
    """Map a concept to the typical concept generated by its intent."""
    return typical_concept_from(ext, concept.intent)


def is_typical(ext: ExtendedContext, concept: FormalConcept) -> bool:
    extent, _ = _typical_masks(ext, concept.intent_mask)
    return extent == concept.extent_mask


@dataclass(frozen=True)
class TypicalSet:
    """Typical concepts of a lattice (by index) plus structural diagnostics.

    ``meet_counterexample`` is ``(i, j, meet)`` for the first typical pair
    whose meet is not typical; ``join_counterexample`` likewise names the
    first pair whose join is not typical.  Validity fields are only filled in
    by :func:`typical_meet_semilattice`.
    """

    concepts: tuple[int, ...]
    meet_closed: bool
    meet_counterexample: tuple[int, int, int] | None
    join_counterexample: tuple[int, int] | None
    has_top: bool
    valid_order: bool | None = None
    validity_witness: frozenset[int] | None = None

    def __contains__(self, index: int) -> bool:
        return index in self.concepts

    def to_json(self, lat: ConceptLattice) -> dict[str, Any]:
        ctx = lat.context
        join_ce = None
        if self.join_counterexample is not None:
            i, j = self.join_counterexample
            k = lat.join(i, j)
            join_ce = {
                "left": i,
                "right": j,
                "join": {
                    "extent": ctx.object_names(lat.extents[k]),
                    "intent": ctx.attribute_names(lat.intents[k]),
                },
            }
        witness = None
        if self.validity_witness is not None:
            witness = ctx.attribute_names(self.validity_witness)
        return {
            "typical": list(self.concepts),
            "meet_closed": self.meet_closed,
            "has_top": self.has_top,
            "join_counterexample": join_ce,
            "valid_order": self.valid_order,
            "validity_witness": witness,
        }


def _typical_indices(ext: ExtendedContext, lat: ConceptLattice) -> list[int]:
    return [
        i
        for i, (extent, intent) in enumerate(zip(lat.extents, lat.intents))
        if _typical_masks(ext, intent)[0] == extent
    ]


def _first_bad_pair(typical: list[int], combine) -> tuple[int, int, int] | None:
    members = set(typical)
    for pos, i in enumerate(typical):
        for j in typical[pos + 1:]:
            k = combine(i, j)
            if k not in members:
                return i, j, k
    return None


def enumerate_typical(ext: ExtendedContext, lat: ConceptLattice | None = None) -> TypicalSet:
    if lat is None:
        lat = enumerate_concepts(ext.context)
    typical = _typical_indices(ext, lat)
    bad_meet = _first_bad_pair(typical, lat.meet)
    bad_join = _first_bad_pair(typical, lat.join)
    has_top = any(all(lat.leq(j, t) for j in typical) for t in typical)
    return TypicalSet(
        concepts=tuple(typical),
        meet_closed=bad_meet is None,
        meet_counterexample=bad_meet,
        join_counterexample=None if bad_join is None else bad_join[:2],
        has_top=has_top,
    )


def is_valid_order(
    ext: ExtendedContext, lat: ConceptLattice | None = None
) -> tuple[bool, frozenset[int] | None]:
    """Check ``min A = (min A)''`` for every attribute set ``A``.

    ``min A`` depends on ``A'`` only, and the sets ``A'`` are exactly the
    concept extents, so one intent per concept suffices.  Concepts are tried
    in canonical order and the first failing intent is returned as witness.
    """
    ctx = ext.context
    if lat is None:
        lat = enumerate_concepts(ctx)
    for intent in lat.intents:
        minimal = ext.min_mask(intent)
        if ctx.extent_mask(ctx.intent_mask(minimal)) != minimal:
            return False, from_mask(intent)
    return True, None


def typical_meet_semilattice(ext: ExtendedContext, lat: ConceptLattice | None = None) -> TypicalSet:
    """:func:`enumerate_typical` plus the order-validity diagnosis.

    Under a valid order the typical concepts must be meet-closed and contain
    the bottom concept; a violation raises ``RuntimeError``.
    """
    if lat is None:
        lat = enumerate_concepts(ext.context)
    ts = enumerate_typical(ext, lat)
    valid, witness = is_valid_order(ext, lat)
    if valid and not ts.meet_closed:
        raise RuntimeError(f"valid order but typical meet of {ts.meet_counterexample[:2]} is not typical")
    if lat.bottom not in ts.concepts:
        raise RuntimeError("bottom concept is not typical")
    return TypicalSet(
        concepts=ts.concepts,
        meet_closed=ts.meet_closed,
        meet_counterexample=ts.meet_counterexample,
        join_counterexample=ts.join_counterexample,
        has_top=ts.has_top,
        valid_order=valid,
        validity_witness=witness,
    )


def find_join_counterexample(
    ext: ExtendedContext, lat: ConceptLattice | None = None
) -> tuple[FormalConcept, FormalConcept, FormalConcept] | None:
    """Two typical concepts whose join is not typical, first in canonical order."""
    if lat is None:
        lat = enumerate_concepts(ext.context)
    bad = _first_bad_pair(_typical_indices(ext, lat), lat.join)
    if bad is None:
        return None
    return tuple(lat.concept(i) for i in bad)  # type: ignore[return-value]
