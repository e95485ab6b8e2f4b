"""Act presentations, the relation-sequence prover and Tietze moves."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .acts import (
    ActError,
    FiniteAct,
    FreeActElement,
    act_from_presentation,
    canonical,
    check_generator_name,
    extend_map,
    same_partition,
)
from .monoid import FiniteMonoid, MonoidHandle, show_word, word


class PresentationError(ValueError):
    pass


class TietzeError(PresentationError):
    pass


@dataclass(frozen=True)
class Relation:
    lhs: FreeActElement
    rhs: FreeActElement

    def __iter__(self):
        yield self.lhs
        yield self.rhs

    def flipped(self) -> "Relation":
        return Relation(self.rhs, self.lhs)

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def rel(lhs: FreeActElement, rhs: FreeActElement) -> Relation:
    return Relation(lhs, rhs)


class ActPresentation:
    """``<X | R>`` over a monoid; relation sides keep their monoid parts as words."""

    def __init__(self, monoid: MonoidHandle, generators: Iterable[str], relations: Iterable = ()):
        self.monoid = monoid
        self.generators = tuple(check_generator_name(g) for g in generators)
        if not self.generators:
            raise PresentationError("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"repeated generator in {self.generators}")
        clash = set(self.generators) & set(monoid.alphabet)
        if clash:
            raise PresentationError(f"generators {sorted(clash)} clash with monoid letters")
        gens = set(self.generators)
        out = []
        for r in relations:
            if not isinstance(r, Relation):
                r = Relation(*r)
            for side in r:
                if side.generator not in gens:
                    raise PresentationError(f"relation {r} uses unknown generator {side.generator!r}")
                monoid.check_word(side.word)
            out.append(r)
        self.relations = tuple(out)

    def replace(self, generators=None, relations=None) -> "ActPresentation":
        return ActPresentation(
            self.monoid,
            self.generators if generators is None else generators,
            self.relations if relations is None else relations,
        )

    def canonical(self, e: FreeActElement) -> FreeActElement:
        return canonical(self.monoid, e)

    def symmetric_sides(self) -> list:
        """Pairs ``(u, v)`` of the symmetric closure, in relation order."""
        out = []
        for r in self.relations:
            out.append((r.lhs, r.rhs))
            out.append((r.rhs, r.lhs))
        return out

    def __eq__(self, other):
        return (isinstance(other, ActPresentation) and self.monoid is other.monoid
                and self.generators == other.generators and self.relations == other.relations)

    def __str__(self):
        rels = ", ".join(map(str, self.relations))
        return f"<{' '.join(self.generators)} | {rels}>"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# certificates and verdicts


@dataclass(frozen=True)
class Step:
    relation: int
    orientation: int  # +1 applies lhs -> rhs, -1 applies rhs -> lhs
    multiplier: tuple

    def sides(self, pres: ActPresentation):
        r = pres.relations[self.relation]
        return (r.lhs, r.rhs) if self.orientation > 0 else (r.rhs, r.lhs)


@dataclass(frozen=True)
class RSequence:
    start: FreeActElement
    end: FreeActElement
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    def terms(self, pres: ActPresentation) -> list:
        """Replay the sequence; raises PresentationError on the first bad step."""
        cur = pres.canonical(self.start)
        out = [cur]
        for i, s in enumerate(self.steps):
            if not 0 <= s.relation < len(pres.relations):
                raise PresentationError(f"step {i}: no relation {s.relation}")
            p, q = s.sides(pres)
            if pres.canonical(p.times(s.multiplier)) != cur:
                raise PresentationError(f"step {i}: {p} . {show_word(s.multiplier)} is not {cur}")
            cur = pres.canonical(q.times(s.multiplier))
            out.append(cur)
        if cur != pres.canonical(self.end):
            raise PresentationError(f"sequence ends at {cur}, not {self.end}")
        return out

    def replays(self, pres: ActPresentation) -> bool:
        try:
            self.terms(pres)
        except (PresentationError, ActError, ValueError):
            return False
        return True

    def to_text(self) -> str:
        return "".join(
            f"{s.relation}\t{'+' if s.orientation > 0 else '-'}\t{show_word(s.multiplier)}\n"
            for s in self.steps)

    @classmethod
    def from_text(cls, start, end, text: str) -> "RSequence":
        steps = []
        for line in text.splitlines():
            if not line.strip():
                continue
            idx, sign, w = line.split("\t")
            steps.append(Step(int(idx), 1 if sign == "+" else -1, word(w)))
        return cls(start, end, tuple(steps))


@dataclass(frozen=True)
class Proved:
    certificate: RSequence
    verdict = "proved"


@dataclass(frozen=True)
class Disproved:
    reason: str
    witness: object = None
    verdict = "disproved"


@dataclass(frozen=True)
class Unknown:
    reason: str
    verdict = "unknown"


# ---------------------------------------------------------------------------
# the prover


class _Search:
    def __init__(self, pres, max_word_len):
        self.pres = pres
        self.monoid = pres.monoid
        self.max_word_len = max_word_len
        self.cache = {}
        self.moves = []
        for i, r in enumerate(pres.relations):
            self.moves.append((i, 1, r.lhs, r.rhs))
            self.moves.append((i, -1, r.rhs, r.lhs))

    def multipliers(self, p, m):
        key = (p, m)
        if key not in self.cache:
            self.cache[key] = self.monoid.multipliers(p, m, self.max_word_len)
        return self.cache[key]

    def successors(self, node: FreeActElement):
        """Yield ``(successor, step, complete)`` in tie-break order."""
        M = self.monoid
        for idx, o, p, q in self.moves:
            if p.generator != node.generator:
                continue
            ns, complete = self.multipliers(p.word, node.word)
            if not complete:
                yield None, None, False
            for n in ns:
                yield FreeActElement(q.generator, M.normal_form(q.word + n)), Step(idx, o, n), True


def _path(parents, node):
    steps = []
    while parents[node] is not None:
        prev, step = parents[node]
        steps.append(step)
        node = prev
    return steps[::-1]


class _Bidirectional:
    """Resumable bidirectional breadth-first search between two canonical elements."""

    def __init__(self, search, a, b):
        self.search = search
        self.ends = (a, b)
        self.sides = [
            {"parents": {a: None}, "frontier": [a], "pos": 0, "next": [], "depth": 0,
             "complete": True},
            {"parents": {b: None}, "frontier": [b], "pos": 0, "next": [], "depth": 0,
             "complete": True},
        ]
        self.nodes = 2
        self.current = None

    def exhausted_side(self):
        for i, s in enumerate(self.sides):
            if not s["frontier"] and not s["next"] and s["complete"]:
                return i
        return None

    def run(self, max_steps, node_limit):
        """Expand until a meeting (returns the meeting node), or bounds; None otherwise."""
        sides = self.sides
        while True:
            if self.current is None:
                if self.exhausted_side() is not None:
                    return None
                live = [i for i in (0, 1) if sides[i]["frontier"]]
                if not live or sides[0]["depth"] + sides[1]["depth"] >= max_steps:
                    return None
                self.current = min(live, key=lambda j: (len(sides[j]["frontier"]), j))
            i = self.current
            s, other = sides[i], sides[1 - i]
            while s["pos"] < len(s["frontier"]):
                if self.nodes >= node_limit:
                    return None
                node = s["frontier"][s["pos"]]
                s["pos"] += 1
                for succ, step, complete in self.search.successors(node):
                    if not complete:
                        s["complete"] = False
                        continue
                    if succ in s["parents"]:
                        continue
                    if i == 1:
                        step = Step(step.relation, -step.orientation, step.multiplier)
                    s["parents"][succ] = (node, step)
                    if succ in other["parents"]:
                        return succ
                    s["next"].append(succ)
                    self.nodes += 1
            s["frontier"], s["next"], s["pos"] = s["next"], [], 0
            s["depth"] += 1
            self.current = None

    def certificate(self, meet, w1, w2):
        fwd, back = self.sides[0]["parents"], self.sides[1]["parents"]
        head = _path(fwd, meet)
        # backward parents point toward w2 with steps already reversed
        tail = []
        node = meet
        while back[node] is not None:
            prev, step = back[node]
            tail.append(step)
            node = prev
        return RSequence(w1, w2, tuple(head + tail))


def is_consequence(pres: ActPresentation, w1: FreeActElement, w2: FreeActElement,
                   max_steps: int = 64, max_word_len: int = 12,
                   max_nodes: int = 200_000, model_size: int = 2):
    """Decide whether ``w1 = w2`` follows from the relations, within bounds.

    Returns :class:`Proved` with a replayable certificate, :class:`Disproved`
    when the orbit of one side is finite and fully explored without reaching
    the other (or a small finite act satisfying the relations separates the
    two sides), and :class:`Unknown` otherwise.

    Over infinite monoids a short search runs first, then the model search,
    then the rest of the search budget.
    """
    a, b = pres.canonical(w1), pres.canonical(w2)
    if a == b:
        return Proved(RSequence(w1, w2, ()))
    bfs = _Bidirectional(_Search(pres, max_word_len), a, b)

    def settle(meet):
        if meet is not None:
            return Proved(bfs.certificate(meet, w1, w2))
        i = bfs.exhausted_side()
        if i is not None:
            side = bfs.sides[i]
            return Disproved(
                f"orbit of {bfs.ends[i]} is finite ({len(side['parents'])} elements) "
                f"and does not contain {bfs.ends[1 - i]}")
        return None

    phases = [max_nodes]
    if not pres.monoid.is_finite and model_size >= 2:
        phases = [min(max_nodes, 2000), None, max_nodes]
    for limit in phases:
        if limit is None:
            found = separating_act(pres, a, b, max_size=model_size)
            if found is not None:
                act, _ = found
                return Disproved(
                    f"a {act.size}-element act satisfies every relation and separates "
                    f"{a} from {b}", witness=found)
            continue
        verdict = settle(bfs.run(max_steps, limit))
        if verdict is not None:
            return verdict
    return Unknown(f"no connection within {max_steps} steps / {max_nodes} nodes "
                   f"(multiplier words up to length {max_word_len})")


def separating_act(pres: ActPresentation, w1, w2, max_size: int = 2, budget: int = 300_000):
    """Search small transformation acts satisfying ``pres`` in which w1 != w2.

    Every candidate is checked exactly against the monoid relations, so a hit
    is a proof that ``w1 = w2`` is not a consequence.
    """
    M = pres.monoid
    letters = M.alphabet
    gens = pres.generators
    tried = 0
    for n in range(2, max_size + 1):
        maps = list(itertools.product(range(n), repeat=n))
        for combo in itertools.product(maps, repeat=len(letters)):
            tried += 1
            if tried > budget:
                return None
            transforms = dict(zip(letters, combo))
            if not M.transformation_check(transforms, n):
                continue

            def run(i, w):
                for x in w:
                    i = transforms[x][i]
                return i

            for assign in itertools.product(range(n), repeat=len(gens)):
                g = dict(zip(gens, assign))
                if all(run(g[r.lhs.generator], r.lhs.word) == run(g[r.rhs.generator], r.rhs.word)
                       for r in pres.relations):
                    if run(g[w1.generator], w1.word) != run(g[w2.generator], w2.word):
                        act = FiniteAct(M, transforms, [f"q{i}" for i in range(n)], check=False)
                        return act, g
    return None


# ---------------------------------------------------------------------------
# semantics against finite acts


def violations(pres: ActPresentation, act: FiniteAct, gen_map: dict) -> list:
    out = []
    for r in pres.relations:
        for side in r:
            if side.generator not in gen_map:
                raise PresentationError(f"generator {side.generator!r} has no image")
        lv = act.apply(gen_map[r.lhs.generator], r.lhs.word)
        rv = act.apply(gen_map[r.rhs.generator], r.rhs.word)
        if lv != rv:
            out.append((r, lv, rv))
    return out


def satisfies(pres: ActPresentation, act: FiniteAct, gen_map: dict) -> bool:
    return not violations(pres, act, gen_map)


def verify_presentation(pres: ActPresentation, act: FiniteAct, gen_map: dict) -> bool:
    """Both conditions: the act satisfies R, and every relation it satisfies follows from R.

    The generator images must also generate the act.
    """
    if not satisfies(pres, act, gen_map):
        return False
    oracle = act_from_presentation(pres, act.monoid)
    images = extend_map(act, oracle.generators, gen_map)
    if set(images) != set(act.elements):
        return False
    return same_partition(oracle.projection, images)


def defines_same_act(old: ActPresentation, new: ActPresentation, images: dict) -> bool:
    """Finite check that ``new`` presents the act of ``old``.

    ``images`` sends each generator of ``new`` to an element of F over old's
    generators; the induced map must be well defined, injective and onto.
    """
    M = old.monoid
    o = act_from_presentation(old, M)
    gen_map = {g: o.evaluate(images[g]) for g in new.generators}
    return verify_presentation(new, o.act, gen_map)


# ---------------------------------------------------------------------------
# Tietze transformations


@dataclass(frozen=True)
class AddRelations:
    relations: tuple
    certificates: tuple | None = None


@dataclass(frozen=True)
class RemoveRelations:
    indices: tuple
    certificates: tuple | None = None


@dataclass(frozen=True)
class AddGenerators:
    definitions: tuple  # (name, FreeActElement) pairs


@dataclass(frozen=True)
class RemoveGenerators:
    generators: tuple


T1, T2, T3, T4 = AddRelations, RemoveRelations, AddGenerators, RemoveGenerators


def _certify(pres, relation, cert, max_steps, max_word_len):
    if cert is not None:
        if cert.replays(pres) and pres.canonical(cert.start) == pres.canonical(relation.lhs) \
                and pres.canonical(cert.end) == pres.canonical(relation.rhs):
            return cert
        raise TietzeError(f"certificate for {relation} does not replay")
    v = is_consequence(pres, relation.lhs, relation.rhs, max_steps, max_word_len)
    if isinstance(v, Proved):
        return v.certificate
    raise TietzeError(f"{relation} is not a proved consequence ({v.verdict})")


def tietze_apply(pres: ActPresentation, move, max_steps: int = 64, max_word_len: int = 12,
                 verify: bool = True) -> ActPresentation:
    if isinstance(move, AddRelations):
        rels = [r if isinstance(r, Relation) else Relation(*r) for r in move.relations]
        certs = move.certificates or (None,) * len(rels)
        for r, c in zip(rels, certs):
            _certify(pres, r, c, max_steps, max_word_len)
        out = pres.replace(relations=pres.relations + tuple(rels))
        images = {g: FreeActElement(g) for g in pres.generators}
    elif isinstance(move, RemoveRelations):
        drop = set(move.indices)
        if any(not 0 <= i < len(pres.relations) for i in drop):
            raise TietzeError(f"no relation with index in {sorted(drop)}")
        keep = [r for i, r in enumerate(pres.relations) if i not in drop]
        out = pres.replace(relations=keep)
        removed = [pres.relations[i] for i in sorted(drop)]
        certs = move.certificates or (None,) * len(removed)
        for r, c in zip(removed, certs):
            _certify(out, r, c, max_steps, max_word_len)
        images = {g: FreeActElement(g) for g in pres.generators}
    elif isinstance(move, AddGenerators):
        new_gens = list(pres.generators)
        new_rels = list(pres.relations)
        images = {g: FreeActElement(g) for g in pres.generators}
        for name, w in move.definitions:
            if name in new_gens or name in pres.monoid.alphabet:
                raise TietzeError(f"generator {name!r} is not fresh")
            if w.generator not in pres.generators:
                raise TietzeError(f"definition of {name!r} is not over the old generators")
            new_gens.append(name)
            new_rels.append(Relation(FreeActElement(name), w))
            images[name] = w
        out = ActPresentation(pres.monoid, new_gens, new_rels)
    elif isinstance(move, RemoveGenerators):
        gone = set(move.generators)
        if not gone <= set(pres.generators):
            raise TietzeError(f"unknown generators {sorted(gone - set(pres.generators))}")
        defs = {}
        used = set()
        for i, r in enumerate(pres.relations):
            for x, w in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                if (x.generator in gone and not x.word and x.generator not in defs
                        and w.generator not in gone and i not in used):
                    defs[x.generator] = w
                    used.add(i)
                    break
        missing = gone - set(defs)
        if missing:
            raise TietzeError(f"no relation x = w with w avoiding the removed generators "
                              f"for {sorted(missing)}")

        def subst(e):
            if e.generator in defs:
                d = defs[e.generator]
                return FreeActElement(d.generator, d.word + e.word)
            return e

        keep = [Relation(subst(r.lhs), subst(r.rhs))
                for i, r in enumerate(pres.relations) if i not in used]
        out = ActPresentation(pres.monoid, [g for g in pres.generators if g not in gone], keep)
        images = {g: FreeActElement(g) for g in out.generators}
    else:
        raise TietzeError(f"unknown move {move!r}")
    if verify and isinstance(pres.monoid, FiniteMonoid):
        if not defines_same_act(pres, out, images):
            raise TietzeError("transformed presentation defines a different act")
    return out


# ---------------------------------------------------------------------------
# canonical presentations


def _element_names(act: FiniteAct, monoid) -> list:
    names = list(act.labels)
    try:
        for x in names:
            check_generator_name(x)
        if not set(names) & set(monoid.alphabet):
            return names
    except ActError:
        pass
    return [f"a{i}" for i in act.elements]


def generating_set(act: FiniteAct, among: Iterable[int] | None = None) -> list:
    """A small generating set: greedy in element order, then pruned."""
    among = list(act.elements if among is None else among)
    chosen, covered = [], set()
    for a in among:
        if a not in covered:
            chosen.append(a)
            covered |= act.orbit([a])
    for a in list(chosen):
        rest = [b for b in chosen if b != a]
        if rest and a in act.orbit(rest):
            chosen = rest
    return chosen


def canonical_presentation(act: FiniteAct, style: int, generators: Sequence[int] | None = None,
                           names: Sequence[str] | None = None) -> tuple:
    """One of the three standard presentations of a finite act.

    1: ``<A | a.m = am>`` over all monoid elements (finite monoid);
    2: ``<X | x.m = y.n whenever xm = yn>`` for a generating set X (finite monoid);
    3: ``<A | a.s = as>`` over the monoid letters.

    Returns ``(presentation, gen_map)`` where ``gen_map`` sends generator
    names to element indices.
    """
    M = act.monoid
    names = list(names) if names is not None else _element_names(act, M)
    label = dict(zip(act.elements, names))
    if style in (1, 2) and not isinstance(M, FiniteMonoid):
        raise PresentationError(f"style {style} needs a finite monoid")
    if style == 1:
        rels = [Relation(FreeActElement(label[a], w), FreeActElement(label[act.apply(a, w)]))
                for a in act.elements for w in M.reps]
        return ActPresentation(M, names, rels), {label[a]: a for a in act.elements}
    if style == 3:
        rels = [Relation(FreeActElement(label[a], (s,)), FreeActElement(label[act.action[s][a]]))
                for a in act.elements for s in M.alphabet]
        return ActPresentation(M, names, rels), {label[a]: a for a in act.elements}
    if style != 2:
        raise PresentationError(f"unknown style {style}")
    gens = list(generators) if generators is not None else generating_set(act)
    if act.orbit(gens) != set(act.elements):
        raise PresentationError("style 2 needs a generating set")
    classes = {}
    for x in gens:
        for w in M.reps:
            classes.setdefault(act.apply(x, w), []).append(FreeActElement(label[x], w))
    rels = []
    for c in sorted(classes):
        members = classes[c]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                rels.append(Relation(members[i], members[j]))
    gen_names = [label[x] for x in gens]
    return ActPresentation(M, gen_names, rels), {label[x]: x for x in gens}


def trivial_act_presentation(pres: ActPresentation, zero: str) -> ActPresentation:
    """``<0 | 0.m = 0.n for each relation x.m = y.n>``.

    On a finite monoid the input act must have ``zero`` as a zero, and the
    result is checked to define the one-element act.
    """
    if zero not in pres.generators:
        raise PresentationError(f"{zero!r} is not a generator")
    rels = [Relation(FreeActElement(zero, r.lhs.word), FreeActElement(zero, r.rhs.word))
            for r in pres.relations]
    out = ActPresentation(pres.monoid, [zero], rels)
    if isinstance(pres.monoid, FiniteMonoid):
        src = act_from_presentation(pres)
        z = src.evaluate(FreeActElement(zero))
        if any(row[z] != z for row in src.act.action.values()):
            raise PresentationError(f"generator {zero!r} does not represent a zero")
        if act_from_presentation(out).act.size != 1:
            raise PresentationError("result does not define the trivial act")
    return out
