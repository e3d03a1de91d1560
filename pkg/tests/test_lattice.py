import json
from itertools import product

import pytest
from hypothesis import given, settings

from corpus import contexts
from nmfca import (
    ConceptLattice,
    FormalConcept,
    FormalContext,
    concept_from_attrs,
    concept_from_objects,
    enumerate_concepts,
    join,
    lattice_from_json,
    lattice_to_json,
    leq,
    meet,
    to_dot,
)
from nmfca.oracle import brute_concepts


def _hasse_by_brute_force(lat: ConceptLattice) -> set[tuple[int, int]]:
    n = len(lat)
    below = {(i, j) for i, j in product(range(n), repeat=2)
             if i != j and lat.extents[i] & ~lat.extents[j] == 0}
    return {
        (i, j) for i, j in below
        if not any((i, k) in below and (k, j) in below for k in range(n))
    }


class TestAnimals:
    def test_concepts(self, animals):
        lat = enumerate_concepts(animals)
        names = [
            (tuple(animals.object_names(e)), tuple(animals.attribute_names(b)))
            for e, b in zip(lat.extents, lat.intents)
        ]
        assert names == [
            ((), ("northern", "southern", "flies", "antarctic", "bird")),
            (("orca",), ("northern", "southern", "antarctic")),
            (("penguin",), ("southern", "antarctic", "bird")),
            (("orca", "penguin"), ("southern", "antarctic")),
            (("duck", "robin"), ("northern", "southern", "flies", "bird")),
            (("orca", "duck", "robin"), ("northern", "southern")),
            (("duck", "robin", "penguin"), ("southern", "bird")),
            (("orca", "duck", "robin", "penguin"), ("southern",)),
        ]
        assert lat.bottom == 0 and lat.top == 7

    def test_twelve_hasse_edges(self, animals):
        lat = enumerate_concepts(animals)
        assert len(lat.covers) == 12
        assert set(lat.covers) == _hasse_by_brute_force(lat)

    def test_meet_and_join(self, animals):
        ctx = animals
        birds = concept_from_attrs(ctx, ctx.attrs("bird"))
        antarctic = concept_from_attrs(ctx, ctx.attrs("antarctic"))
        assert meet(ctx, birds, antarctic) == concept_from_objects(ctx, ctx.objs("penguin"))
        assert join(ctx, birds, antarctic) == concept_from_attrs(ctx, ctx.attrs("southern"))
        assert leq(meet(ctx, birds, antarctic), birds)

    def test_attribute_and_object_concepts(self, animals):
        lat = enumerate_concepts(animals)
        assert lat.attribute_concept(animals.attribute_index("flies")) == 4
        assert lat.object_concept(animals.object_index("penguin")) == 2
        assert lat.attribute_concept(animals.attribute_index("southern")) == lat.top

    def test_dot(self, animals):
        dot = to_dot(enumerate_concepts(animals))
        assert dot.startswith("digraph lattice {\n  rankdir=BT;\n")
        assert dot.count(" -> ") == 12
        assert '  c4 [label="flies\\nduck, robin"];' in dot
        assert '  c7 [label="southern"];' in dot
        assert '  c0 [label=""];' in dot

    def test_dot_marks(self, animals):
        dot = to_dot(enumerate_concepts(animals), marks=[0, 2])
        assert dot.count("fillcolor=gray") == 2
        with pytest.raises(IndexError):
            to_dot(enumerate_concepts(animals), marks=[8])

    def test_dot_escapes_quotes(self):
        ctx = FormalContext(('say "hi"',), ("a\\b",), (1,))
        dot = to_dot(enumerate_concepts(ctx))
        assert 'label="a\\\\b\\nsay \\"hi\\""' in dot

    def test_json_roundtrip(self, animals):
        lat = enumerate_concepts(animals)
        data = lattice_to_json(lat)
        assert data["covers"] == [list(e) for e in lat.covers]
        back = lattice_from_json(json.dumps(data))
        assert back == lat
        assert to_dot(back) == to_dot(lat)

    def test_json_inconsistent(self, animals):
        data = lattice_to_json(enumerate_concepts(animals))
        data["covers"] = data["covers"][:-1]
        with pytest.raises(ValueError):
            lattice_from_json(data)


def test_single_cell():
    lat = enumerate_concepts(FormalContext(("g",), ("m",), (1,)))
    assert lat.concepts == (FormalConcept(frozenset({0}), frozenset({0})),)
    assert lat.covers == []


def test_concept_requires_closed_pair(animals):
    bogus = FormalConcept(animals.objs("duck"), animals.attrs("flies"))
    assert not bogus.is_concept_of(animals)
    assert concept_from_objects(animals, animals.objs("duck")).is_concept_of(animals)


@settings(max_examples=150)
@given(contexts(7, 7))
def test_matches_oracle(ctx):
    lat = enumerate_concepts(ctx)
    assert set(lat.concepts) == set(brute_concepts(ctx))
    assert len(set(lat.extents)) == len(lat)
    assert all(c.is_concept_of(ctx) for c in lat.concepts)


@settings(max_examples=60)
@given(contexts(6, 6))
def test_lattice_laws(ctx):
    lat = enumerate_concepts(ctx)
    n = len(lat)
    for i, j in product(range(n), repeat=2):
        m, jn = lat.meet(i, j), lat.join(i, j)
        ci, cj = lat.concept(i), lat.concept(j)
        assert lat.concept(m) == meet(ctx, ci, cj)
        assert lat.concept(jn) == join(ctx, ci, cj)
        assert lat.leq(m, i) and lat.leq(m, j)
        assert lat.leq(i, jn) and lat.leq(j, jn)
        assert lat.meet(i, jn) == i and lat.join(i, m) == i
        assert lat.leq(i, j) == leq(ci, cj) == (lat.meet(i, j) == i)
    assert all(lat.leq(lat.bottom, k) and lat.leq(k, lat.top) for k in range(n))
    assert set(lat.covers) == _hasse_by_brute_force(lat)
    # canonical order is a linear extension of ≤
    assert all(i <= j for i, j in lat.leq_pairs)


@settings(max_examples=40)
@given(contexts(6, 6))
def test_json_roundtrip_random(ctx):
    lat = enumerate_concepts(ctx)
    back = lattice_from_json(json.loads(json.dumps(lattice_to_json(lat))))
    assert back.extents == lat.extents and back.intents == lat.intents
    assert to_dot(back) == to_dot(lat)
