"""The oracle is checked against hand-computed values before it checks anything else."""

import pytest

from corpus import make_context
from nmfca import BoundExceededError, ExtendedContext, FormalConcept
from nmfca.oracle import (
    brute_check_postulate,
    brute_concepts,
    brute_derive_attributes,
    brute_derive_objects,
    brute_holds,
    brute_is_typical,
    brute_min,
    brute_valid_order,
    powerset,
)


def test_powerset():
    subsets = list(powerset(3))
    assert len(subsets) == 8 and len(set(subsets)) == 8
    assert subsets[0] == frozenset() and subsets[-1] == frozenset({0, 1, 2})


def test_derivations(animals):
    ctx = animals
    assert brute_derive_objects(ctx, ctx.objs("duck", "penguin")) == ctx.attrs("southern", "bird")
    assert brute_derive_attributes(ctx, ctx.attrs("southern", "bird")) == ctx.objs("duck", "robin", "penguin")
    assert brute_derive_attributes(ctx, ctx.attrs("antarctic")) == ctx.objs("orca", "penguin")


def test_concepts(animals):
    assert len(brute_concepts(animals)) == 8


def test_concept_bound():
    with pytest.raises(BoundExceededError):
        brute_concepts(make_context([0], 21))


def test_min_and_holds(animals_ext):
    ctx = animals_ext.context
    assert brute_min(animals_ext, ctx.attrs("bird")) == ctx.objs("duck", "robin")
    assert brute_holds(animals_ext, ctx.attrs("bird"), ctx.attrs("flies"))
    assert brute_holds(animals_ext, ctx.attrs("bird", "antarctic"), ctx.attrs("flies"), negated=True)


def test_typical_and_validity(meet_failure, join_failure, animals_ext):
    ctx = meet_failure.context
    assert not brute_is_typical(meet_failure, FormalConcept(ctx.objs("b", "c"), ctx.attrs("X", "Y")))
    assert brute_is_typical(meet_failure, FormalConcept(ctx.objs("c"), ctx.attrs("X", "Y", "Z")))
    assert not brute_valid_order(meet_failure)
    assert not brute_valid_order(join_failure)
    assert brute_valid_order(animals_ext)


def test_validity_bound():
    with pytest.raises(BoundExceededError):
        brute_valid_order(ExtendedContext.unordered(make_context([0], 17)))


def test_postulates(animals_ext):
    ctx = animals_ext.context
    assert brute_check_postulate(animals_ext, "Reflexivity", [ctx.attrs("bird")])
    assert not brute_check_postulate(
        animals_ext, "RM", [(), ctx.attrs("northern"), ctx.attrs("antarctic")]
    )
    assert brute_check_postulate(animals_ext, "Lemma1", [ctx.attrs("flies"), ctx.attrs("bird")])
    with pytest.raises(ValueError):
        brute_check_postulate(animals_ext, "Or", [(), (), ()])
