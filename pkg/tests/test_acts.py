import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from actpres.acts import (
    ActCongruence,
    ActError,
    FiniteAct,
    FreeActElement,
    Homomorphism,
    RelationViolation,
    Subact,
    act_from_presentation,
    congruence_closure,
    el,
    free_act,
    free_action,
    induced_homomorphism,
    kernel_congruence,
    rees_congruence,
    rees_quotient,
    subact_generated,
)
from actpres.fuzz import random_act, random_monoid, random_subact
from actpres.monoid import word
from actpres.presentations import ActPresentation, Relation, canonical_presentation

from conftest import idempotent_monoid


def random_small_act(seed, max_act=5):
    rng = random.Random(seed)
    m = random_monoid(rng, 4)
    return rng, random_act(rng, m, max_act)


def partitions(n):
    """All set partitions of range(n) as class-label tuples (restricted growth strings)."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            yield from rec(prefix + [c], max(top, c))
    yield from rec([0], 0) if n else iter([()])


def is_congruence(act, labels):
    for row in act.action.values():
        for a, b in itertools.combinations(act.elements, 2):
            if labels[a] == labels[b] and labels[row[a]] != labels[row[b]]:
                return False
    return True


# -- free action -----------------------------------------------------------


def test_free_action_identity_element(m514):
    assert free_action(m514, FreeActElement("x"), word("a b")) == el("x . a b")


def test_free_action_ex514(m514):
    # a . a times b b a: a a b b a reduces to a b a
    assert free_action(m514, el("x . a"), word("b b a")) == el("x . a b a")


def test_free_action_associative_on_finite():
    m = idempotent_monoid()
    for u, v, w in itertools.product(m.reps, repeat=3):
        e = FreeActElement("x", u)
        assert free_action(m, free_action(m, e, v), w) == free_action(m, e, m.multiply(v, w))


def test_free_act_size():
    m = idempotent_monoid()
    act, gens = free_act(m, ["x", "y"])
    assert act.size == 4 and gens == ("x", "y")


# -- congruences -----------------------------------------------------------


def test_closure_empty_seed_is_identity():
    _, act = random_small_act(1)
    assert len(congruence_closure(act, [])) == act.size


def test_closure_all_pairs_is_universal():
    _, act = random_small_act(2)
    pairs = list(itertools.combinations(act.elements, 2))
    assert len(congruence_closure(act, pairs)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_closure_is_least_congruence(seed, data):
    rng, act = random_small_act(seed)
    elems = list(act.elements)
    seed_pairs = data.draw(st.lists(st.tuples(st.sampled_from(elems), st.sampled_from(elems)),
                                    max_size=3))
    got = congruence_closure(act, seed_pairs)
    for a, b in seed_pairs:
        assert got.related(a, b)
    assert got.is_congruence()
    # intersection of every congruence containing the seed
    containing = [p for p in partitions(act.size)
                  if is_congruence(act, p) and all(p[a] == p[b] for a, b in seed_pairs)]
    for a, b in itertools.combinations(elems, 2):
        assert got.related(a, b) == all(p[a] == p[b] for p in containing)


# -- subacts and Rees quotients --------------------------------------------


def test_subact_generated_whole():
    _, act = random_small_act(3)
    assert len(subact_generated(act, act.elements)) == act.size


def test_subact_generated_empty_rejected():
    _, act = random_small_act(3)
    with pytest.raises(ActError):
        subact_generated(act, [])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_subact_generated_closed_and_minimal(seed):
    rng, act = random_small_act(seed, 8)
    seeds = rng.sample(list(act.elements), rng.randint(1, min(2, act.size)))
    sub = subact_generated(act, seeds)
    assert act.is_closed(sub.members)
    # every closed subset holding the seeds contains the generated subact
    for mask in range(1 << act.size):
        s = {a for a in act.elements if mask >> a & 1}
        if set(seeds) <= s and act.is_closed(s):
            assert sub.members <= s


def test_non_closed_subact_rejected():
    m = idempotent_monoid()
    act = FiniteAct(m, {"e": [1, 1]})
    with pytest.raises(ActError):
        Subact(act, frozenset({0}))


def test_rees_quotient_whole_act_is_trivial():
    _, act = random_small_act(4)
    q = rees_quotient(act, Subact(act, frozenset(act.elements)))
    assert q.result.size == 1


def test_rees_quotient_fixed_point_is_renaming():
    m = idempotent_monoid()
    act = FiniteAct(m, {"e": [1, 1, 2]})
    q = rees_quotient(act, Subact(act, frozenset({2})))
    assert q.result.size == act.size and q.result.labels[q.zero] == "0"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rees_projection_kernel(seed):
    rng, act = random_small_act(seed, 10)
    sub = Subact(act, frozenset(random_subact(rng, act)))
    q = rees_quotient(act, sub)
    assert q.result.size == act.size - len(sub) + 1
    f = Homomorphism(act, q.result, q.projection)
    assert kernel_congruence(f) == rees_congruence(act, sub)


# -- presented acts and homomorphisms --------------------------------------


def test_free_presentation_size():
    m = idempotent_monoid()
    o = act_from_presentation(ActPresentation(m, ["x", "y"], []))
    assert o.act.size == 2 * m.size


def test_small_presentation_by_hand():
    # x . e = x forces x = x e, so F_x collapses to one element
    m = idempotent_monoid()
    o = act_from_presentation(ActPresentation(m, ["x"], [Relation(el("x . e"), el("x"))]))
    assert o.act.size == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_style1_reproduces_act(seed):
    _, act = random_small_act(seed, 8)
    pres, gen_map = canonical_presentation(act, 1)
    o = act_from_presentation(pres)
    images = [act.apply_index(gen_map[g], i) for g in o.generators for i in range(act.monoid.size)]
    from actpres.acts import same_partition
    assert same_partition(o.projection, images)


def test_induced_identity():
    _, act = random_small_act(5)
    pres, gen_map = canonical_presentation(act, 3)
    f = induced_homomorphism(pres, act, gen_map)
    o = act_from_presentation(pres)
    assert f.is_surjective() and f.is_injective() and o.act.size == act.size


def test_induced_to_fixed_point():
    m = idempotent_monoid()
    target = FiniteAct(m, {"e": [1, 1]})
    pres = ActPresentation(m, ["x", "y"], [Relation(el("x . e"), el("y"))])
    f = induced_homomorphism(pres, target, {"x": 1, "y": 1})
    assert set(f.mapping) == {1}


def test_induced_reports_violation():
    m = idempotent_monoid()
    target = FiniteAct(m, {"e": [1, 1]})
    pres = ActPresentation(m, ["x"], [Relation(el("x . e"), el("x"))])
    with pytest.raises(RelationViolation):
        induced_homomorphism(pres, target, {"x": 0})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_induced_succeeds_iff_relations_hold(seed):
    from actpres.fuzz import random_presentation
    rng = random.Random(seed)
    m = random_monoid(rng, 4)
    pres, oracle = random_presentation(rng, m, 8)
    target = random_act(rng, m, 6)
    gen_map = {g: rng.randrange(target.size) for g in pres.generators}
    free = act_from_presentation(ActPresentation(m, pres.generators, []))
    img = [target.apply_index(gen_map[g], i) for g in pres.generators for i in range(m.size)]
    # the kernel of the extension contains <R> iff the quotient map factors through it
    contains = all(img[i] == img[j] for i in range(len(img)) for j in range(len(img))
                   if oracle.projection[i] == oracle.projection[j])
    try:
        induced_homomorphism(pres, target, gen_map)
        ok = True
    except RelationViolation:
        ok = False
    assert ok == contains


def test_kernel_of_injective_is_identity():
    _, act = random_small_act(6)
    f = Homomorphism(act, act, tuple(act.elements))
    assert len(kernel_congruence(f)) == act.size


def test_kernel_constant_is_universal():
    m = idempotent_monoid()
    act = FiniteAct(m, {"e": [1, 1, 2]})
    target = FiniteAct(m, {"e": [0]})
    f = Homomorphism(act, target, (0, 0, 0))
    assert len(kernel_congruence(f)) == 1


def test_incompatible_action_rejected():
    # e must act idempotently
    m = idempotent_monoid()
    with pytest.raises(ActError):
        FiniteAct(m, {"e": [1, 2, 0]})
