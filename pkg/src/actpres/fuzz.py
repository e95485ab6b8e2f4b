"""Seeded random finite monoids, acts and presentations for oracle testing."""

from __future__ import annotations

import random

from .acts import FiniteAct, FreeActElement, act_from_presentation
from .monoid import FiniteMonoid, MonoidError, monoid_from_transformations


def random_monoid(rng: random.Random, max_size: int = 6, letters=("s", "t", "u"),
                  min_size: int = 2) -> FiniteMonoid:
    """Transformation monoid on a small set with ``min_size <= |M| <= max_size``."""
    min_size = min(min_size, max_size)
    while True:
        degree = rng.randint(2, 4)
        k = rng.randint(1, len(letters))
        gens = {x: tuple(rng.randrange(degree) for _ in range(degree)) for x in letters[:k]}
        m = monoid_from_transformations(gens, degree)
        if min_size <= m.size <= max_size:
            return m


def random_word(rng: random.Random, monoid, max_len: int = 3) -> tuple:
    return tuple(rng.choice(monoid.alphabet) for _ in range(rng.randint(0, max_len)))


def random_presentation(rng: random.Random, monoid: FiniteMonoid, max_act: int = 12,
                        max_gens: int = 3, max_rels: int = 3, min_act: int = 2):
    """A random presentation whose act has between ``min_act`` and ``max_act`` elements.

    Returns ``(presentation, presented_act)``.
    """
    from .presentations import ActPresentation, Relation

    for attempt in range(200):
        if attempt == 100:
            min_act = 1
        ng = rng.randint(1, max_gens)
        gens = [f"x{i}" for i in range(ng)]
        rels = []
        for _ in range(rng.randint(0, max_rels)):
            rels.append(Relation(
                FreeActElement(rng.choice(gens), random_word(rng, monoid)),
                FreeActElement(rng.choice(gens), random_word(rng, monoid))))
        pres = ActPresentation(monoid, gens, rels)
        oracle = act_from_presentation(pres)
        if min_act <= oracle.act.size <= max_act:
            return pres, oracle
    raise MonoidError("no presentation within the size bounds")


def random_act(rng: random.Random, monoid: FiniteMonoid, max_act: int = 12) -> FiniteAct:
    _, oracle = random_presentation(rng, monoid, max_act)
    return oracle.act


def random_subact(rng: random.Random, act: FiniteAct) -> frozenset:
    seeds = rng.sample(list(act.elements), rng.randint(1, min(2, act.size)))
    return frozenset(act.orbit(seeds))


def random_instance(seed: int, max_monoid: int = 6, max_act: int = 12):
    rng = random.Random(seed)
    m = random_monoid(rng, max_monoid)
    return rng, m, random_act(rng, m, max_act)


def finite_monoid_with_zero_act(rng: random.Random, max_size: int = 6):
    """A random finite monoid together with a presentation of an act that has a zero.

    The act is the Rees quotient of a random presented act by a subact,
    presented with the generator ``o`` for the zero.
    """
    from .acts import Subact, rees_quotient
    from .presentations import canonical_presentation

    m = random_monoid(rng, max_size)
    act = random_act(rng, m, 8)
    sub = Subact(act, random_subact(rng, act))
    q = rees_quotient(act, sub)
    names = [("o" if i == q.zero else f"e{i}") for i in q.result.elements]
    pres, gen_map = canonical_presentation(q.result, 3, names=names)
    return m, pres, "o"


__all__ = [
    "CHECKS", "run_oracle",
    "random_monoid", "random_word", "random_presentation", "random_act", "random_subact",
    "random_instance", "finite_monoid_with_zero_act", "MonoidError",
]


# ---------------------------------------------------------------------------
# construction checks against the finite oracle


def _restricted(act, members, prefix):
    sub, order = act.restrict(members)
    pos = {a: i for i, a in enumerate(order)}
    return sub, pos


def _named(act, prefix):
    return [f"{prefix}{i}" for i in act.elements]


def _witness_names(model, gens, act, members, prefix="w"):
    from .constructions import subact_witnesses
    from .presentations import generating_set

    chosen = generating_set(act, sorted(members))
    return subact_witnesses(model, gens, {f"{prefix}{i}": a for i, a in enumerate(chosen)})


def check_rees(seed: int, max_monoid=6, max_act=12):
    from .acts import Subact, rees_quotient
    from .constructions import FiniteModel, rees_quotient_presentation
    from .presentations import verify_presentation

    rng = random.Random(seed)
    m = random_monoid(rng, max_monoid)
    pres, oracle = random_presentation(rng, m, max_act)
    act = oracle.act
    B = random_subact(rng, act)
    model = FiniteModel(act, oracle.gen_map)
    wit = _witness_names(model, pres.generators, act, B, "y")
    out = rees_quotient_presentation(pres, model, lambda v: v in B, wit)
    q = rees_quotient(act, Subact(act, B))
    zero = out.presentation.generators[-1]
    gm = {x: q.projection[v] for x, v in out.images.items() if x != zero}
    gm[zero] = q.zero
    return verify_presentation(out.presentation, q.result, gm), out


def check_extension(seed: int, max_monoid=6, max_act=12):
    from .acts import Subact, rees_quotient
    from .constructions import FiniteModel, extension_presentation
    from .presentations import canonical_presentation, verify_presentation

    rng = random.Random(seed)
    m = random_monoid(rng, max_monoid)
    _, oracle = random_presentation(rng, m, max_act)
    act = oracle.act
    B = random_subact(rng, act)
    bact, order = act.restrict(B)
    presB, bmap = canonical_presentation(bact, 2, names=_named(bact, "b"))
    q = rees_quotient(act, Subact(act, B))
    qnames = ["o" if i == q.zero else f"q{i}" for i in q.result.elements]
    presQ, qmap = canonical_presentation(q.result, 2, names=qnames)
    back = {}
    for a in act.elements:
        back.setdefault(q.projection[a], a)
    gen_map = {b: order[i] for b, i in bmap.items()}
    gen_map.update({y: back[i] for y, i in qmap.items() if y != "o"})
    model = FiniteModel(act, gen_map)
    out = extension_presentation(presB, presQ, model, lambda v: v in B, zero="o")
    return verify_presentation(out.presentation, act, out.images), out


def _union_instance(rng, max_monoid, max_act):
    m = random_monoid(rng, max_monoid)
    _, oracle = random_presentation(rng, m, max_act)
    act = oracle.act
    A1, B1 = random_subact(rng, act), random_subact(rng, act)
    cact, order = act.restrict(A1 | B1)
    pos = {a: i for i, a in enumerate(order)}
    return cact, frozenset(pos[a] for a in A1), frozenset(pos[a] for a in B1)


def check_union(seed: int, max_monoid=6, max_act=12):
    from .constructions import FiniteModel, union_presentation, union_witnesses
    from .presentations import canonical_presentation, generating_set, verify_presentation

    rng = random.Random(seed)
    C, A1, B1 = _union_instance(rng, max_monoid, max_act)
    pres = []
    gen_map = {}
    for sub, prefix in ((A1, "a"), (B1, "b")):
        sact, order = C.restrict(sub)
        p, g = canonical_presentation(sact, 2, names=_named(sact, prefix))
        pres.append(p)
        gen_map.update({k: order[i] for k, i in g.items()})
    model = FiniteModel(C, gen_map)
    inter = A1 & B1
    U = generating_set(C, sorted(inter)) if inter else []
    pairs = union_witnesses(model, pres[0].generators, pres[1].generators, U)
    out = union_presentation(pres[0], pres[1], model, pairs)
    return verify_presentation(out.presentation, C, out.images), out


def check_component(seed: int, max_monoid=6, max_act=12):
    from .constructions import FiniteModel, union_component_presentation
    from .presentations import canonical_presentation, verify_presentation

    rng = random.Random(seed)
    C, A1, B1 = _union_instance(rng, max_monoid, max_act)
    presC, cmap = canonical_presentation(C, 2, names=_named(C, "c"))
    gen_map = dict(cmap)
    presI = None
    inter = A1 & B1
    if inter:
        iact, order = C.restrict(inter)
        presI, imap = canonical_presentation(iact, 2, names=_named(iact, "u"))
        gen_map.update({k: order[i] for k, i in imap.items()})
    model = FiniteModel(C, gen_map)
    out = union_component_presentation(presC, model, lambda v: v in B1, presI)
    aact, order = C.restrict(A1)
    pos = {a: i for i, a in enumerate(order)}
    gm = {k: pos[v] for k, v in out.images.items()}
    return verify_presentation(out.presentation, aact, gm), out


def check_subact(seed: int, max_monoid=6, max_act=12):
    from .constructions import FiniteModel, subact_presentation_general
    from .presentations import verify_presentation

    rng = random.Random(seed)
    m = random_monoid(rng, max_monoid)
    pres, oracle = random_presentation(rng, m, max_act)
    act = oracle.act
    B = random_subact(rng, act)
    model = FiniteModel(act, oracle.gen_map)
    wit = _witness_names(model, pres.generators, act, B, "y")
    out = subact_presentation_general(pres, model, wit)
    bact, order = act.restrict(B)
    pos = {a: i for i, a in enumerate(order)}
    gm = {k: pos[v] for k, v in out.images.items()}
    return verify_presentation(out.presentation, bact, gm) and not out.gaps, out


def check_large(seed: int, max_monoid=6, max_act=12):
    from .constructions import LargeSubactContext, large_subact_presentation
    from .presentations import verify_presentation

    rng = random.Random(seed)
    m = random_monoid(rng, max_monoid)
    pres, oracle = random_presentation(rng, m, max_act)
    act = oracle.act
    B = random_subact(rng, act)
    ctx = LargeSubactContext.from_finite(pres, act, oracle.gen_map, B)
    out = large_subact_presentation(ctx)
    bact, order = act.restrict(B)
    pos = {a: i for i, a in enumerate(order)}
    gm = {k: pos[v] for k, v in out.images.items()}
    return verify_presentation(out.presentation, bact, gm), out


CHECKS = {
    "rees-quotient": check_rees,
    "extension": check_extension,
    "union": check_union,
    "union-component": check_component,
    "subact": check_subact,
    "large-subact": check_large,
}


def run_oracle(seeds: int, max_monoid: int = 6, max_act: int = 12, start: int = 0) -> list:
    """``(construction, seed, ok)`` for every construction and seed."""
    out = []
    for name, check in CHECKS.items():
        for seed in range(start, start + seeds):
            ok, _ = check(seed, max_monoid, max_act)
            out.append((name, seed, bool(ok)))
    return out
