import random

import pytest
from hypothesis import given, settings, strategies as st

from actpres.acts import FreeActElement, act_from_presentation, el
from actpres.fuzz import finite_monoid_with_zero_act, random_act, random_monoid, random_presentation
from actpres.monoid import FiniteMonoid, FreeMonoid, word
from actpres.presentations import (
    ActPresentation,
    AddGenerators,
    AddRelations,
    Disproved,
    PresentationError,
    Proved,
    RSequence,
    Relation,
    RemoveGenerators,
    RemoveRelations,
    TietzeError,
    Unknown,
    canonical_presentation,
    defines_same_act,
    is_consequence,
    satisfies,
    tietze_apply,
    trivial_act_presentation,
    verify_presentation,
    violations,
)

from conftest import idempotent_monoid


def oracle_equal(oracle, u, v):
    return oracle.evaluate(u) == oracle.evaluate(v)


# -- presentations ---------------------------------------------------------


def test_generators_disjoint_from_letters(m514):
    with pytest.raises(PresentationError):
        ActPresentation(m514, ["a"], [])


def test_unknown_generator_rejected(m514):
    with pytest.raises(PresentationError):
        ActPresentation(m514, ["x"], [Relation(el("y"), el("x"))])


def test_empty_generators_rejected(m514):
    with pytest.raises(PresentationError):
        ActPresentation(m514, [], [])


# -- the prover ------------------------------------------------------------


def test_ex514_proof(m514):
    pres = ActPresentation(m514, ["A"], [Relation(el("A . a"), el("A"))])
    v = is_consequence(pres, el("A . b b a"), el("A . b a"))
    assert isinstance(v, Proved) and len(v.certificate) <= 4
    assert v.certificate.replays(pres)


def test_identical_sides_empty_certificate(m514):
    pres = ActPresentation(m514, ["A"], [])
    v = is_consequence(pres, el("A . b"), el("A . b"))
    assert isinstance(v, Proved) and len(v.certificate) == 0


def test_ex312_disproved():
    M = FreeMonoid("p q r")
    pres = ActPresentation(M, ["z"], [Relation(el("z . p"), el("z")), Relation(el("z . q"), el("z"))])
    v = is_consequence(pres, el("z . r"), el("z"))
    assert isinstance(v, Disproved)
    act, g = v.witness
    # the witness act satisfies the relations and separates the two sides
    assert satisfies(pres, act, g)
    assert act.apply(g["z"], ("r",)) != g["z"]


def test_singleton_orbit_disproof(m57):
    pres = ActPresentation(m57, ["A"], [Relation(el("A . b b a"), el("A . b a"))])
    v = is_consequence(pres, el("A . b b b a"), el("A . b a"))
    assert isinstance(v, Disproved) and "finite (1 elements)" in v.reason


def test_unknown_is_a_value(m57):
    pres = ActPresentation(m57, ["A"], [Relation(el("A . s"), el("A . t"))])
    v = is_consequence(pres, el("A . s s"), el("A . t t"), max_steps=1, max_nodes=50, model_size=1)
    assert isinstance(v, Unknown)


def test_certificate_text_roundtrip(m514):
    pres = ActPresentation(m514, ["A"], [Relation(el("A . a"), el("A"))])
    cert = is_consequence(pres, el("A . b b b a"), el("A . b a")).certificate
    back = RSequence.from_text(cert.start, cert.end, cert.to_text())
    assert back == cert and back.replays(pres)


def test_bad_certificate_does_not_replay(m514):
    pres = ActPresentation(m514, ["A"], [Relation(el("A . a"), el("A"))])
    cert = RSequence.from_text(el("A . b"), el("A"), "0\t+\tb\n")
    assert not cert.replays(pres)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_prover_agrees_with_oracle(seed):
    rng = random.Random(seed)
    m = random_monoid(rng, 4)
    pres, oracle = random_presentation(rng, m, 8, max_gens=2)
    elems = oracle.free_elements()
    for _ in range(6):
        u, v = rng.choice(elems), rng.choice(elems)
        got = is_consequence(pres, u, v, max_word_len=m.size)
        assert not isinstance(got, Unknown)
        assert isinstance(got, Proved) == oracle_equal(oracle, u, v)
        if isinstance(got, Proved):
            assert got.certificate.replays(pres)


# -- semantics -------------------------------------------------------------


def test_satisfies_empty():
    m = idempotent_monoid()
    act = random_act(random.Random(0), m)
    assert satisfies(ActPresentation(m, ["x"], []), act, {"x": 0})


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_style3_satisfied(seed):
    rng = random.Random(seed)
    act = random_act(rng, random_monoid(rng, 5))
    pres, g = canonical_presentation(act, 3)
    assert satisfies(pres, act, g)


def test_injected_violation_reported():
    rng = random.Random(7)
    m = random_monoid(rng, 5)
    act = random_act(rng, m)
    pres, g = canonical_presentation(act, 3)
    names = list(pres.generators)
    # relate two distinct elements: cannot hold
    bad = pres.replace(relations=pres.relations + (Relation(FreeActElement(names[0]),
                                                           FreeActElement(names[-1])),))
    if len(names) > 1:
        assert violations(bad, act, g) and not satisfies(bad, act, g)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_style1_verifies(seed):
    rng = random.Random(seed)
    act = random_act(rng, random_monoid(rng, 5))
    pres, g = canonical_presentation(act, 1)
    assert verify_presentation(pres, act, g)


def test_dropping_needed_relation_fails_verify():
    rng = random.Random(11)
    for _ in range(50):
        m = random_monoid(rng, 5)
        act = random_act(rng, m)
        pres, g = canonical_presentation(act, 2)
        for i in range(len(pres.relations)):
            rest = pres.replace(relations=pres.relations[:i] + pres.relations[i + 1:])
            if act_from_presentation(rest).act.size > act.size:
                assert not verify_presentation(rest, act, g)
                return
    pytest.fail("no non-redundant relation found")


def test_adding_consequence_keeps_verify():
    rng = random.Random(12)
    m = random_monoid(rng, 5)
    pres, oracle = random_presentation(rng, m)
    u = FreeActElement(pres.generators[0], m.reps[-1])
    other = [e for e in oracle.free_elements() if oracle.evaluate(e) == oracle.evaluate(u)][-1]
    more = pres.replace(relations=pres.relations + (Relation(u, other),))
    assert verify_presentation(more, oracle.act, oracle.gen_map)


# -- Tietze moves ----------------------------------------------------------


def test_t3_then_t4_round_trip():
    rng = random.Random(3)
    m = random_monoid(rng, 5)
    pres, _ = random_presentation(rng, m)
    x = pres.generators[0]
    w = FreeActElement(x, m.reps[-1])
    p1 = tietze_apply(pres, AddGenerators([("y", w)]))
    p2 = tietze_apply(p1, RemoveGenerators(["y"]))
    assert p2 == pres


def test_ex514_t2_reduction(m514):
    rels = [Relation(el("A . a"), el("A"))]
    rels += [Relation(FreeActElement("A", ("b",) * i + ("a",)), el("A . b a")) for i in range(2, 7)]
    pres = ActPresentation(m514, ["A"], rels)
    while len(pres.relations) > 1:
        pres = tietze_apply(pres, RemoveRelations([1]))
    assert pres == ActPresentation(m514, ["A"], [Relation(el("A . a"), el("A"))])


def test_t1_refuses_non_consequence():
    m = idempotent_monoid()
    pres = ActPresentation(m, ["x", "y"], [])
    with pytest.raises(TietzeError):
        tietze_apply(pres, AddRelations([Relation(el("x"), el("y"))]))


def test_t2_refuses_needed_relation():
    m = idempotent_monoid()
    pres = ActPresentation(m, ["x", "y"], [Relation(el("x"), el("y"))])
    with pytest.raises(TietzeError):
        tietze_apply(pres, RemoveRelations([0]))


def test_t1_with_bad_certificate_refused(m514):
    pres = ActPresentation(m514, ["A"], [Relation(el("A . a"), el("A"))])
    r = Relation(el("A . b b a"), el("A . b a"))
    bogus = RSequence(r.lhs, r.rhs, ())
    with pytest.raises(TietzeError):
        tietze_apply(pres, AddRelations([r], [bogus]))


def test_t4_refuses_self_reference():
    m = idempotent_monoid()
    pres = ActPresentation(m, ["x", "y"], [Relation(el("y"), el("y . e"))])
    with pytest.raises(TietzeError):
        tietze_apply(pres, RemoveGenerators(["y"]))


# -- canonical presentations ----------------------------------------------


def test_style3_trivial_act():
    m = random_monoid(random.Random(5), 5)
    from actpres.acts import FiniteAct
    triv = FiniteAct(m, {s: [0] for s in m.alphabet}, ["o"])
    pres, _ = canonical_presentation(triv, 3)
    assert pres.generators == ("o",)
    assert {(r.lhs, r.rhs) for r in pres.relations} == {(FreeActElement("o", (s,)), el("o"))
                                                         for s in m.alphabet}


def test_style1_over_trivial_monoid():
    from actpres.acts import FiniteAct
    m = FiniteMonoid([[0]], 0, {})
    act = FiniteAct(m, {}, ["o"])
    pres, _ = canonical_presentation(act, 1)
    assert [(str(r.lhs), str(r.rhs)) for r in pres.relations] == [("o", "o")]


def test_style2_verifies_on_random_acts():
    for seed in range(20):
        rng = random.Random(seed)
        act = random_act(rng, random_monoid(rng, 6))
        pres, g = canonical_presentation(act, 2)
        assert verify_presentation(pres, act, g), seed


# -- the trivial act from an act with a zero ------------------------------


def test_left_zero_case():
    # M = {1, z} with z m = z; the trivial act is <0 | 0 = 0 . z>
    m = FiniteMonoid([[0, 1], [1, 1]], 0, {"z": 1}, labels=["1", "z"])
    pres = ActPresentation(m, ["o"], [Relation(el("o"), el("o . z"))])
    out = trivial_act_presentation(pres, "o")
    assert [(r.lhs, r.rhs) for r in out.relations] == [(el("o"), el("o . z"))]
    assert act_from_presentation(out).act.size == 1


def test_trivial_monoid_empty_relations():
    m = FiniteMonoid([[0]], 0, {})
    out = trivial_act_presentation(ActPresentation(m, ["o"], []), "o")
    assert out.relations == () and act_from_presentation(out).act.size == 1


def test_trivial_act_on_random_zero_acts():
    from actpres.acts import FiniteAct
    for seed in range(10):
        m, pres, zero = finite_monoid_with_zero_act(random.Random(seed))
        out = trivial_act_presentation(pres, zero)
        one = FiniteAct(m, {s: [0] for s in m.alphabet}, ["o"])
        assert verify_presentation(out, one, {zero: 0})


def test_non_zero_generator_refused():
    m = idempotent_monoid()
    pres = ActPresentation(m, ["x"], [])
    with pytest.raises(PresentationError):
        trivial_act_presentation(pres, "x")
