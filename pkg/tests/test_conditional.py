from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import attribute_sets, extended_contexts, make_context, ranked_order
from nmfca import (
    ArityError,
    BoundExceededError,
    Conditional,
    ExtendedContext,
    Implication,
    Postulate,
    PreferenceOrder,
    check_lemma1,
    check_lemma2,
    check_postulate,
    consequences,
    holds,
    models_implication,
    verify_klm,
)
from nmfca.conditional import ARITY, _check, LLEMode
from nmfca.oracle import brute_check_postulate, brute_holds, powerset


class TestHolds:
    def test_typical_birds_fly(self, animals_ext):
        ctx = animals_ext.context
        assert holds(animals_ext, Conditional.of(ctx, ["bird"], ["flies"]))
        assert not models_implication(ctx, Implication.of(ctx, ["bird"], ["flies"]))

    def test_antarctic_birds_do_not(self, animals_ext):
        ctx = animals_ext.context
        assert not holds(animals_ext, Conditional.of(ctx, ["bird", "antarctic"], ["flies"]))
        assert holds(animals_ext, Conditional.of(ctx, ["bird", "antarctic"], ["flies"], negated=True))

    def test_greek(self, greek_ext):
        ctx = greek_ext.context
        assert holds(greek_ext, Conditional.of(ctx, ["hero"], ["demigod"]))
        assert not models_implication(ctx, Implication.of(ctx, ["hero"], ["demigod"]))

    def test_vacuous_premise(self):
        ctx = make_context([0b01, 0b01], 2)
        ext = ExtendedContext.unordered(ctx)
        only_second = frozenset({1})
        assert holds(ext, Conditional(only_second, frozenset({0})))
        assert holds(ext, Conditional(only_second, frozenset({0}), negated=True))

    def test_consequences(self, animals_ext):
        ctx = animals_ext.context
        assert consequences(animals_ext, ctx.attrs("bird")) == ctx.attrs(
            "northern", "southern", "flies", "bird"
        )


@given(extended_contexts(6, 5), st.data())
def test_agrees_with_oracle(ext, data):
    a = data.draw(attribute_sets(ext.context))
    b = data.draw(attribute_sets(ext.context))
    for negated in (False, True):
        assert holds(ext, Conditional(a, b, negated)) == brute_holds(ext, a, b, negated)
    assert (b <= consequences(ext, a)) == holds(ext, Conditional(a, b))


@given(extended_contexts(6, 5), st.data())
def test_supra_classical(ext, data):
    ctx = ext.context
    a = data.draw(attribute_sets(ctx))
    b = data.draw(attribute_sets(ctx))
    for negated in (False, True):
        if models_implication(ctx, Implication(a, b, negated)):
            assert holds(ext, Conditional(a, b, negated))


@given(extended_contexts(6, 5), st.data())
def test_empty_order_is_classical(ext, data):
    ctx = ext.context
    flat = ExtendedContext.unordered(ctx)
    a = data.draw(attribute_sets(ctx))
    b = data.draw(attribute_sets(ctx))
    assert holds(flat, Conditional(a, b)) == models_implication(ctx, Implication(a, b))


@given(extended_contexts(6, 5), st.data())
def test_negation_coherence(ext, data):
    ctx = ext.context
    a = data.draw(attribute_sets(ctx))
    b = data.draw(attribute_sets(ctx))
    positive = holds(ext, Conditional(a, b))
    negative = holds(ext, Conditional(a, b, negated=True))
    if ext.min_mask(ctx.attr_mask(a)):
        assert not (positive and negative)
    else:
        assert positive and negative


class TestCheckPostulate:
    def test_arity(self, animals_ext):
        with pytest.raises(ArityError):
            check_postulate(animals_ext, "Cut", [[0], [1]])
        with pytest.raises(ValueError):
            check_postulate(animals_ext, "Or", [[0], [1], [2]])

    def test_cut_instance(self, animals_ext):
        ctx = animals_ext.context
        assert check_postulate(
            animals_ext, Postulate.CUT,
            [ctx.attrs("bird"), ctx.attrs("flies"), ctx.attrs("northern")],
        )

    def test_rm_witness(self, animals_ext):
        ctx = animals_ext.context
        witness = [frozenset(), ctx.attrs("northern"), ctx.attrs("antarctic")]
        assert not check_postulate(animals_ext, "RM", witness)
        assert not brute_check_postulate(animals_ext, "RM", witness)

    def test_rm_greek_instance(self, greek_ext):
        ctx = greek_ext.context
        assert check_postulate(
            greek_ext, "RM", [ctx.attrs("hero"), ctx.attrs("demigod"), ctx.attrs("warrior")]
        )

    def test_lemmas(self, animals_ext):
        ctx = animals_ext.context
        assert check_lemma1(ctx, ctx.attrs("flies"), ctx.attrs("bird"))
        assert ctx.extent_mask(ctx.attr_mask(ctx.attrs("flies", "bird"))) == ctx.attr_mask(ctx.objs("duck", "robin"))
        assert check_lemma2(animals_ext, ctx.attrs("bird"), ctx.attrs("flies"))


class TestVerify:
    def test_animals_exhaustive(self, animals_ext):
        reports = verify_klm(animals_ext)
        assert [r.postulate.value for r in reports] == [
            "Reflexivity", "LLE", "RW", "Cut", "And", "CM", "RM", "Lemma1", "Lemma2"
        ]
        for r in reports:
            assert r.checked == 32 ** ARITY[r.postulate]
            if r.postulate is not Postulate.RM:
                assert r.ok, r.postulate
        rm = next(r for r in reports if r.postulate is Postulate.RM)
        # the RM report lists real counterexamples, each confirmed from first principles
        assert len(rm.violations) == 8
        ctx = animals_ext.context
        assert (frozenset(), ctx.attrs("northern"), ctx.attrs("antarctic")) in rm.violations
        for w in rm.violations:
            assert not brute_check_postulate(animals_ext, "RM", w)

    def test_bound(self):
        ctx = make_context([0b1111111], 7)
        with pytest.raises(BoundExceededError):
            verify_klm(ExtendedContext.unordered(ctx))
        assert len(verify_klm(ExtendedContext.unordered(ctx), max_attributes=7)) == 9

    def test_sampled_is_reproducible(self, animals_ext):
        first = verify_klm(animals_ext, "sampled", sample_count=300, seed=7)
        again = verify_klm(animals_ext, "sampled", sample_count=300, seed=7)
        assert first == again
        assert all(r.checked == 300 for r in first)
        assert all(r.ok for r in first if r.postulate is not Postulate.RM)
        for r in first:
            for w in r.violations:
                assert not brute_check_postulate(animals_ext, r.postulate.value, w)

    def test_sampled_needs_positive_count(self, animals_ext):
        with pytest.raises(ValueError):
            verify_klm(animals_ext, "sampled", sample_count=0)

    def test_syntactic_lle(self, animals_ext):
        reports = verify_klm(animals_ext, lle="syntactic")
        lle = next(r for r in reports if r.postulate is Postulate.LLE)
        assert lle.ok

    def test_report_json(self, animals_ext):
        rm = verify_klm(animals_ext)[6]
        data = rm.to_json(animals_ext.context)
        assert data["postulate"] == "RM" and data["checked"] == 32 ** 3
        assert [[], ["northern"], ["antarctic"]] in data["violations"]


def test_rm_minimal_counterexample():
    # h:{b}, g:{c}, k:{b,c} with h ≺ g; non-ranked because k is incomparable to both
    ctx = make_context([0b01, 0b10, 0b11], 2)
    ext = ExtendedContext(ctx, PreferenceOrder.from_pairs(3, [(0, 1)]))
    assert not check_postulate(ext, "RM", [frozenset(), {0}, {1}])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_rm_holds_for_ranked_orders(data):
    ctx = data.draw(extended_contexts(5, 4)).context
    ranks = data.draw(st.lists(st.integers(0, 3), min_size=ctx.n_objects, max_size=ctx.n_objects))
    ext = ExtendedContext(ctx, ranked_order(ctx.n_objects, ranks))
    assert all(r.ok for r in verify_klm(ext))


@settings(max_examples=30, deadline=None)
@given(extended_contexts(4, 3))
def test_vectorised_matches_per_instance(ext):
    m = ext.context.n_attributes
    sets = list(powerset(m))
    for lle in (LLEMode.SEMANTIC, LLEMode.SYNTACTIC):
        for report in verify_klm(ext, lle=lle):
            p = report.postulate
            expected = []
            for combo in product(sets, repeat=ARITY[p]):
                masks = [ext.context.attr_mask(s) for s in combo]
                ok = _check(ext, p, masks, lle)
                assert ok == brute_check_postulate(ext, p.value, combo, lle is LLEMode.SYNTACTIC)
                if not ok:
                    expected.append(tuple(combo))
            assert sorted(map(_key, report.violations)) == sorted(map(_key, expected))


def _key(t):
    return tuple(tuple(sorted(s)) for s in t)
