"""Acceptance criteria 1 to 6, one PASS/FAIL line each."""

import random
import time

import pytest

from actpres.acts import FiniteAct, FreeActElement, act_from_presentation, el
from actpres.constructions import WordModel, intersection_generators, large_subact_generators, \
    LargeSubactContext, union_presentation
from actpres.fuzz import CHECKS, finite_monoid_with_zero_act, random_monoid, random_presentation
from actpres.monoid import FiniteMonoid, FreeMonoid, check_local_confluence, check_termination
from actpres.presentations import (
    ActPresentation,
    AddGenerators,
    AddRelations,
    Disproved,
    Proved,
    Relation,
    RemoveGenerators,
    RemoveRelations,
    TietzeError,
    is_consequence,
    tietze_apply,
    trivial_act_presentation,
)

BUDGET = 60.0


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, secs):
        status = "PASS" if ok and secs < BUDGET else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} ({secs:.1f}s) {detail}")
        assert ok, detail
        assert secs < BUDGET, f"took {secs:.1f}s"
    return emit


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_oracle_equivalence(report):
    t = time.perf_counter()
    failed = []
    for name, check in CHECKS.items():
        for seed in range(20):
            ok, _ = check(seed)
            if not ok:
                failed.append((name, seed))
    report(1, not failed, f"{len(CHECKS)} constructions x 20 seeds, failures {failed}",
           time.perf_counter() - t)


# -- 2 -----------------------------------------------------------------------


def _part_a(docs):
    M = docs["ex5.14"].monoid_handle()
    pres = ActPresentation(M, ["A"], [Relation(el("A . a"), el("A"))])
    worst = 0
    for i in range(2, 11):
        v = is_consequence(pres, FreeActElement("A", ("b",) * i + ("a",)), el("A . b a"))
        if not isinstance(v, Proved) or not v.certificate.replays(pres):
            return False, f"i={i}: {v.verdict}"
        worst = max(worst, len(v.certificate))
    return worst <= 5, f"longest certificate {worst}"


def _part_b(docs):
    M = FreeMonoid("p q r")
    pres = ActPresentation(M, ["z"], [Relation(el("z . p"), el("z")), Relation(el("z . q"), el("z"))])
    v = is_consequence(pres, el("z . r"), el("z"))
    return isinstance(v, Disproved), v.verdict


def _part_c(docs):
    doc = docs["ex5.7"]
    M = doc.monoid_handle()
    bad = []
    for k in range(2, 9):
        rels = [Relation(FreeActElement("A", ("b",) * i + ("a",)), el("A . b a")) for i in range(2, k + 1)]
        pres = ActPresentation(M, ["A", "T"], rels)
        v = is_consequence(pres, FreeActElement("A", ("b",) * (k + 1) + ("a",)), el("A . b a"))
        if not isinstance(v, Disproved):
            bad.append((k, v.verdict))
    return not bad, f"k = 2..8, not disproved {bad}"


def _part_d(docs):
    doc = docs["ex5.13"]
    M = doc.monoid_handle()
    U = intersection_generators(doc.presentation("C"), ["A"])
    want = [FreeActElement("A", ("c",) * i + ("a",)) for i in range(2, 9)]
    if U != want:
        return False, f"got {[str(u) for u in U]}"
    for i in range(2, 9):
        for j in range(2, 9):
            if i != j:
                ns, complete = M.multipliers(("a",) + ("c",) * j + ("a",), ("a",) + ("c",) * i + ("a",))
                if ns or not complete:
                    return False, f"a c^{i} a reached from a c^{j} a"
    return True, "A . c^i a, 2 <= i <= 8, pairwise independent"


def _part_e(docs):
    M = docs["ex6.10"].monoid_handle()
    ctx = LargeSubactContext.right_ideal(M, [(), ("a",)], schema_bound=8)
    got = sorted(large_subact_generators(ctx).values.values())
    return got == sorted([("b",), ("a", "a"), ("a", "b")]), str(got)


def _part_f(docs):
    doc = docs["ex5.14"]
    M = doc.monoid_handle()
    presA, presB, target = doc.presentation("A"), doc.presentation("B"), doc.presentation("C")
    model = WordModel(M, {"A": el("g . a"), "C": el("g . c")})
    con = union_presentation(presA, presB, model, [(el("A . b"), el("C . a b"))])
    fwd = all(isinstance(is_consequence(con.presentation, r.lhs, r.rhs), Proved) for r in target.relations)
    back = all(isinstance(is_consequence(target, r.lhs, r.rhs), Proved) for r in con.presentation.relations)
    return fwd and back, str(con.presentation)


def test_criterion_2_worked_examples(report):
    from actpres.corpus import CASES
    t = time.perf_counter()
    docs = {k: c.doc() for k, c in CASES.items()}
    parts = {p: f(docs) for p, f in zip("abcdef", (_part_a, _part_b, _part_c, _part_d, _part_e, _part_f))}
    ok = all(v[0] for v in parts.values())
    detail = "; ".join(f"({p}) {'ok' if v[0] else 'FAILED ' + v[1]}" for p, v in parts.items())
    report(2, ok, detail, time.perf_counter() - t)


# -- 3 -----------------------------------------------------------------------


def test_criterion_3_rewriting_soundness(report, systems):
    t = time.perf_counter()
    rng = random.Random(0)
    problems = []
    for name, M in systems.items():
        term = check_termination(M.system)
        if not term:
            problems.append(f"{name} termination: {term.detail}")
        conf = check_local_confluence(M.system, 8)
        if not conf:
            problems.append(f"{name} confluence: {conf.detail}")
        letters = M.alphabet
        for _ in range(10 ** 4):
            w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 14)))
            nf = M.normal_form(w)
            if M.normal_form(nf) != nf or len(nf) > len(w):
                problems.append(f"{name} nf of {' '.join(w)}")
                break
    report(3, not problems, "; ".join(problems) or "4 systems, 10^4 words each",
           time.perf_counter() - t)


# -- 4 -----------------------------------------------------------------------


def _random_chain(rng, pres, oracle, length=6):
    """Apply random certified T1-T4 moves; return the result and generator images."""
    M = pres.monoid
    images = {g: FreeActElement(g) for g in pres.generators}
    fresh = 0
    elems = lambda p: [FreeActElement(g, w) for g in p.generators for w in M.reps]
    for _ in range(length):
        kind = rng.choice("1234")
        if kind == "1":
            cur = act_from_presentation(pres)
            u, v = rng.choice(elems(pres)), rng.choice(elems(pres))
            if cur.evaluate(u) != cur.evaluate(v):
                continue
            cert = is_consequence(pres, u, v, max_word_len=M.size)
            if not isinstance(cert, Proved):
                continue
            pres = tietze_apply(pres, AddRelations((Relation(u, v),), (cert.certificate,)), verify=False)
        elif kind == "2" and pres.relations:
            i = rng.randrange(len(pres.relations))
            rest = pres.replace(relations=[r for j, r in enumerate(pres.relations) if j != i])
            r = pres.relations[i]
            cert = is_consequence(rest, r.lhs, r.rhs, max_word_len=M.size)
            if not isinstance(cert, Proved):
                continue
            pres = tietze_apply(pres, RemoveRelations((i,), (cert.certificate,)), verify=False)
        elif kind == "3":
            name = f"n{fresh}"
            fresh += 1
            w = rng.choice(elems(pres))
            pres = tietze_apply(pres, AddGenerators(((name, w),)), verify=False)
            base = images[w.generator]
            images[name] = FreeActElement(base.generator, base.word + w.word)
        elif kind == "4":
            added = [g for g in pres.generators if g.startswith("n")]
            if not added:
                continue
            g = rng.choice(added)
            try:
                pres = tietze_apply(pres, RemoveGenerators((g,)), verify=False)
            except TietzeError:
                continue
            del images[g]
    return pres, images


def _same_act(oracle, new, images):
    """The images induce a bijection from new's act onto the oracle act."""
    n = act_from_presentation(new)
    M = new.monoid
    f = {}
    for g in new.generators:
        for w in M.reps:
            a = n.evaluate(FreeActElement(g, w))
            img = images[g]
            b = oracle.evaluate(FreeActElement(img.generator, img.word + w))
            if f.setdefault(a, b) != b:
                return False
    return len(f) == n.act.size and set(f.values()) == set(oracle.act.elements) \
        and len(set(f.values())) == len(f)


def test_criterion_4_tietze_preservation(report):
    t = time.perf_counter()
    bad = []
    for seed in range(200):
        rng = random.Random(seed)
        m = random_monoid(rng, 5)
        pres, oracle = random_presentation(rng, m, 10)
        new, images = _random_chain(rng, pres, oracle)
        if not _same_act(oracle, new, images):
            bad.append(seed)
    report(4, not bad, f"200 chains, kernel changed for seeds {bad}", time.perf_counter() - t)


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_prover_at_scale(report):
    t = time.perf_counter()
    instances = pairs = 0
    bad = []
    for seed in range(1000):
        rng = random.Random(seed)
        m = random_monoid(rng, 6)
        pres, oracle = random_presentation(rng, m, 12)
        if len(pres.generators) * m.size > 24:
            continue
        instances += 1
        elems = oracle.free_elements()
        for i, u in enumerate(elems):
            for v in elems[i:]:
                pairs += 1
                got = is_consequence(pres, u, v, max_steps=10 ** 6, max_word_len=m.size,
                                     max_nodes=10 ** 6)
                same = oracle.evaluate(u) == oracle.evaluate(v)
                if isinstance(got, Proved):
                    good = same and got.certificate.replays(pres)
                else:
                    good = isinstance(got, Disproved) and not same
                if not good:
                    bad.append((seed, str(u), str(v), got.verdict))
        if instances == 100:
            break
    report(5, not bad and instances == 100,
           f"{instances} instances, {pairs} pairs, disagreements {bad[:3]}", time.perf_counter() - t)


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_trivial_act(report):
    t = time.perf_counter()
    bad = []
    for seed in range(10):
        m, pres, zero = finite_monoid_with_zero_act(random.Random(seed))
        out = trivial_act_presentation(pres, zero)
        if act_from_presentation(out).act.size != 1:
            bad.append(seed)
    m = FiniteMonoid([[0, 1], [1, 1]], 0, {"z": 1}, labels=["1", "z"])
    out = trivial_act_presentation(ActPresentation(m, ["o"], [Relation(el("o"), el("o . z"))]), "o")
    left_zero = act_from_presentation(out).act.size == 1
    report(6, not bad and left_zero, f"10 zero acts, failures {bad}; <0 | 0 = 0 . z> ok={left_zero}",
           time.perf_counter() - t)
