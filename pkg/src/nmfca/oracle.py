"""Brute-force reference implementations.

Everything here works from the boolean incidence matrix with plain Python
sets and shares no code with the bitmask operators it is used to check.
"""

from __future__ import annotations

from itertools import chain, combinations
from typing import Iterable, Iterator

from .context import FormalContext
from .errors import BoundExceededError
from .lattice import FormalConcept
from .preference import ExtendedContext

__all__ = [
    "BRUTE_CONCEPT_BOUND",
    "BRUTE_VALIDITY_BOUND",
    "brute_check_postulate",
    "brute_concepts",
    "brute_derive_attributes",
    "brute_derive_objects",
    "brute_holds",
    "brute_is_typical",
    "brute_min",
    "brute_valid_order",
    "powerset",
]

BRUTE_CONCEPT_BOUND = 20
BRUTE_VALIDITY_BOUND = 16


def powerset(n: int) -> Iterator[frozenset[int]]:
    items = range(n)
    return (frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(n + 1)))


def brute_derive_attributes(ctx: FormalContext, attributes: Iterable[int]) -> frozenset[int]:
    table = ctx.incidence
    attributes = list(attributes)
    return frozenset(g for g in range(len(table)) if all(table[g][m] for m in attributes))


def brute_derive_objects(ctx: FormalContext, objects: Iterable[int]) -> frozenset[int]:
    table = ctx.incidence
    objects = list(objects)
    return frozenset(m for m in range(len(ctx.attributes)) if all(table[g][m] for g in objects))


def brute_concepts(ctx: FormalContext) -> list[FormalConcept]:
    """All ``(B', B'')`` over every ``B ⊆ M``, deduplicated."""
    if ctx.n_attributes > BRUTE_CONCEPT_BOUND:
        raise BoundExceededError(f"brute_concepts needs |M| <= {BRUTE_CONCEPT_BOUND}")
    found = {}
    for b in powerset(ctx.n_attributes):
        extent = brute_derive_attributes(ctx, b)
        found[extent] = brute_derive_objects(ctx, extent)
    return [FormalConcept(e, i) for e, i in found.items()]


def brute_min(ext: ExtendedContext, attributes: Iterable[int]) -> frozenset[int]:
    """Double loop over ``B'`` keeping objects nothing strictly beats."""
    candidates = brute_derive_attributes(ext.context, attributes)
    pairs = ext.order.strict_pairs
    return frozenset(g for g in candidates if not any((h, g) in pairs for h in candidates))


def brute_holds(ext: ExtendedContext, premise: Iterable[int], conclusion: Iterable[int],
                negated: bool = False) -> bool:
    minimal = brute_min(ext, premise)
    ctx = ext.context
    if negated:
        return all(not set(conclusion) <= brute_derive_objects(ctx, [g]) for g in minimal)
    return all(set(conclusion) <= brute_derive_objects(ctx, [g]) for g in minimal)


def brute_is_typical(ext: ExtendedContext, concept: FormalConcept) -> bool:
    """Search every ``A ⊆ M`` for one generating the concept as a typical concept."""
    ctx = ext.context
    for a in powerset(ctx.n_attributes):
        intent = brute_derive_objects(ctx, brute_min(ext, a))
        if intent == concept.intent and brute_derive_attributes(ctx, intent) == concept.extent:
            return True
    return False


def brute_valid_order(ext: ExtendedContext) -> bool:
    """``min A = (min A)''`` for every one of the ``2^|M|`` attribute sets."""
    ctx = ext.context
    if ctx.n_attributes > BRUTE_VALIDITY_BOUND:
        raise BoundExceededError(f"brute_valid_order needs |M| <= {BRUTE_VALIDITY_BOUND}")
    for a in powerset(ctx.n_attributes):
        minimal = brute_min(ext, a)
        if brute_derive_attributes(ctx, brute_derive_objects(ctx, minimal)) != minimal:
            return False
    return True


def brute_check_postulate(ext: ExtendedContext, postulate: str, sets, syntactic_lle: bool = False) -> bool:
    """Evaluate one rule instance straight from the definitions.

    ``postulate`` is the rule's name as used in reports ("Reflexivity",
    "LLE", "RW", "Cut", "And", "CM", "RM", "Lemma1", "Lemma2").
    """
    ctx = ext.context
    sets = [frozenset(s) for s in sets]
    h = lambda a, b: brute_holds(ext, a, b)  # noqa: E731
    ext_of = lambda a: brute_derive_attributes(ctx, a)  # noqa: E731
    if postulate == "Reflexivity":
        return h(sets[0], sets[0])
    if postulate == "Lemma1":
        a, b = sets
        return ext_of(a) & ext_of(b) == ext_of(a | b)
    if postulate == "Lemma2":
        a, b = sets
        return not h(a, b) or brute_min(ext, a) == brute_min(ext, a | b)
    a, b, c = sets
    if postulate == "LLE":
        equivalent = a == b if syntactic_lle else ext_of(a) == ext_of(b)
        return not (equivalent and h(a, c)) or h(b, c)
    if postulate == "RW":
        return not (ext_of(a) <= ext_of(b) and h(c, a)) or h(c, b)
    if postulate == "Cut":
        return not (h(a | b, c) and h(a, b)) or h(a, c)
    if postulate == "And":
        return not (h(a, b) and h(a, c)) or h(a, b | c)
    if postulate == "CM":
        return not (h(a, b) and h(a, c)) or h(a | b, c)
    if postulate == "RM":
        return not (h(a, b) and not brute_holds(ext, a, c, negated=True)) or h(a | c, b)
    raise ValueError(f"unknown postulate {postulate!r}")
