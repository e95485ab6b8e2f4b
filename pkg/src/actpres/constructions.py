"""Presentations for Rees quotients, extensions, unions, subacts and large subacts.

Each construction works against a *model*: an object that evaluates free
act elements over named generators to values of an ambient act.

* :class:`FiniteModel` -- a finite act with generator images; exact.
* :class:`WordModel` -- a free act over any monoid backend (right ideals
  of a rewriting monoid live here); membership in a finitely generated
  subact is a factorization search and may come back undecided.

Constructions return a :class:`Construction`: the presentation, a
provenance tag per relation, the choices made, and any gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .acts import FiniteAct, FreeActElement
from .monoid import (
    FiniteMonoid,
    FreeMonoid,
    MonoidHandle,
    RewriteRule,
    RewritingMonoid,
    show_word,
    word,
)
from .presentations import ActPresentation, Proved, Relation, is_consequence


class ConstructionError(ValueError):
    def __init__(self, message, culprit=None):
        super().__init__(message)
        self.culprit = culprit


# ---------------------------------------------------------------------------
# models


class FiniteModel:
    is_finite = True

    def __init__(self, act: FiniteAct, gen_map: dict):
        self.act = act
        self.monoid = act.monoid
        self.gen_map = dict(gen_map)

    def extended(self, more: dict) -> "FiniteModel":
        return FiniteModel(self.act, {**self.gen_map, **more})

    def base(self, name):
        try:
            return self.gen_map[name]
        except KeyError:
            raise ConstructionError(f"model has no image for generator {name!r}", name) from None

    def value(self, e: FreeActElement):
        return self.act.apply(self.base(e.generator), e.word)

    def step(self, v, letter):
        return self.act.action[letter][v]

    def words(self, depth=None) -> list:
        return self.monoid.elements()

    def subact(self, values: Iterable) -> Callable:
        members = frozenset(self.act.orbit(list(values)))
        return lambda v: v in members

    def label(self, v) -> str:
        return self.act.labels[v]


class WordModel:
    """Free act over a monoid handle; generator images are elements ``x . w`` of it.

    ``depth`` bounds monoid-word enumeration and multiplier searches.
    """

    is_finite = False

    def __init__(self, monoid: MonoidHandle, gen_map: dict, depth: int = 6):
        self.monoid = monoid
        self.gen_map = {k: (v if isinstance(v, FreeActElement) else FreeActElement(k, word(v)))
                        for k, v in gen_map.items()}
        self.depth = depth

    def extended(self, more: dict) -> "WordModel":
        return WordModel(self.monoid, {**self.gen_map, **more}, self.depth)

    def base(self, name):
        try:
            return self.gen_map[name]
        except KeyError:
            raise ConstructionError(f"model has no image for generator {name!r}", name) from None

    def value(self, e: FreeActElement) -> FreeActElement:
        b = self.base(e.generator)
        return FreeActElement(b.generator, self.monoid.normal_form(b.word + e.word))

    def step(self, v, letter):
        return FreeActElement(v.generator, self.monoid.normal_form(v.word + (letter,)))

    def words(self, depth=None) -> list:
        return self.monoid.elements(self.depth if depth is None else depth)

    def subact(self, values: Iterable) -> Callable:
        values = list(values)
        M = self.monoid
        limit = max(self.depth, 1) * 2

        def member(v):
            undecided = False
            for g in values:
                if g.generator != v.generator:
                    continue
                ns, complete = M.multipliers(g.word, v.word, limit)
                if ns:
                    return True
                if not complete:
                    undecided = True
            return None if undecided else False

        return member

    def factor(self, generators: Sequence[str], target):
        """Shortlex-least ``g . n`` over ``generators`` equal to ``target``, by factorization."""
        best = None
        for i, g in enumerate(generators):
            b = self.base(g)
            if b.generator != target.generator:
                continue
            ns, _ = self.monoid.multipliers(b.word, target.word, max(self.depth, 1) * 2)
            for n in ns:
                key = (len(n), n, i)
                if best is None or key < best[0]:
                    best = (key, FreeActElement(g, n))
        return None if best is None else best[1]

    def label(self, v) -> str:
        return str(v)


def _member(pred, v, what):
    got = pred(v)
    if got is None:
        raise ConstructionError(f"membership of {what} is undecided within bounds", what)
    return got


def find_witness(model, generators: Sequence[str], target, depth=None):
    """Shortlex-least ``g . w`` (word first, then generator order) with value ``target``."""
    for w in model.words(depth):
        for g in generators:
            e = FreeActElement(g, w)
            if model.value(e) == target:
                return e
    return None


def fresh_name(base: str, taken) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "_"
    return name


# ---------------------------------------------------------------------------
# results


@dataclass
class Construction:
    presentation: ActPresentation
    tags: tuple
    choices: dict = field(default_factory=dict)
    images: dict = field(default_factory=dict)
    gaps: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    maps: dict = field(default_factory=dict, repr=False, compare=False)

    def relations_tagged(self, tag: str) -> list:
        return [r for r, t in zip(self.presentation.relations, self.tags) if t == tag]

    def transcript(self) -> str:
        lines = [f"generators\t{' '.join(self.presentation.generators)}"]
        for r, t in zip(self.presentation.relations, self.tags):
            lines.append(f"{t}\t{r}")
        for k, v in self.choices.items():
            lines.append(f"choice\t{k}\t{v}")
        for g in self.gaps:
            lines.append(f"gap\t{g}")
        for n in self.notes:
            lines.append(f"note\t{n}")
        return "\n".join(lines) + "\n"


class _Collector:
    def __init__(self, monoid):
        self.monoid = monoid
        self.rels, self.tags, self.seen = [], [], set()

    def add(self, tag, u, v, keep_trivial=False):
        u = FreeActElement(u.generator, self.monoid.normal_form(u.word))
        v = FreeActElement(v.generator, self.monoid.normal_form(v.word))
        if u == v and not keep_trivial:
            return
        if (u, v) in self.seen or (v, u) in self.seen:
            return
        self.seen.add((u, v))
        self.rels.append(Relation(u, v))
        self.tags.append(tag)


def _sym(relations):
    for r in relations:
        yield r.lhs, r.rhs
        yield r.rhs, r.lhs


def trivial_presentation(monoid: MonoidHandle, zero: str = "0") -> ActPresentation:
    """``<0 | 0.s = 0 (s a monoid letter)>``."""
    return ActPresentation(monoid, [zero], [Relation(FreeActElement(zero, (s,)), FreeActElement(zero))
                                            for s in monoid.alphabet])


# ---------------------------------------------------------------------------
# Rees quotient


def rees_quotient_presentation(presA: ActPresentation, model, in_B: Callable,
                               witnesses: dict, trivial: ActPresentation | None = None,
                               zero: str = "0") -> Construction:
    """Presentation of ``A/B`` on ``(X minus B) + {0}``.

    ``witnesses`` maps a name for each generator ``y`` of ``B`` to ``w_y`` in
    ``F_X``.  ``trivial`` presents the trivial act; its single generator is
    renamed to the fresh zero symbol.
    """
    M = presA.monoid
    X = presA.generators
    zero = fresh_name(zero, set(X) | set(M.alphabet) | set(witnesses))
    for y, w in witnesses.items():
        if w.generator not in X:
            raise ConstructionError(f"witness for {y!r} is not in F_X", y)
        if not _member(in_B, model.value(w), w):
            raise ConstructionError(f"witness {w} for {y!r} does not represent an element of B", y)
    Xout = [x for x in X if not _member(in_B, model.value(FreeActElement(x)), x)]
    keep = set(Xout)
    col = _Collector(M)
    for r in presA.relations:
        if not _member(in_B, model.value(r.lhs), r.lhs):
            col.add("R1", r.lhs, r.rhs)
    zero_el = FreeActElement(zero)
    Rp = list(presA.relations) + [Relation(FreeActElement(y), w) for y, w in witnesses.items()]
    for u, v in _sym(Rp):
        if u.generator in keep and _member(in_B, model.value(u), u):
            col.add("R2", u, zero_el)
    if trivial is None:
        trivial = trivial_presentation(M, zero)
    (z0,) = trivial.generators
    for r in trivial.relations:
        col.add("S", FreeActElement(zero, r.lhs.word), FreeActElement(zero, r.rhs.word),
                keep_trivial=True)
    pres = ActPresentation(M, Xout + [zero], col.rels)
    images = {x: model.value(FreeActElement(x)) for x in Xout}
    images[zero] = "zero"
    return Construction(pres, tuple(col.tags), {f"w_{y}": str(w) for y, w in witnesses.items()},
                        images)


def subact_witnesses(model, generators: Sequence[str], values: dict) -> dict:
    """Shortlex-least witnesses ``name -> w`` in F over ``generators`` for each value."""
    out = {}
    for name, v in values.items():
        w = find_witness(model, generators, v)
        if w is None:
            raise ConstructionError(f"no witness found for {name!r}", name)
        out[name] = w
    return out


# ---------------------------------------------------------------------------
# extension


def extension_presentation(presB: ActPresentation, presQ: ActPresentation, model,
                           in_B: Callable, zero: str | None = None,
                           alpha: dict | None = None, z: FreeActElement | None = None) -> Construction:
    """Presentation of ``A`` from presentations of ``B`` and ``A/B``.

    ``model`` evaluates the generators of both presentations in ``A``
    (except the zero of ``presQ``, named by ``zero``).  ``alpha`` may fix
    witnesses ``alpha_w`` in F_X for zero-representing words ``w``.
    """
    M = presB.monoid
    X = presB.generators
    Yp = [y for y in presQ.generators if y != zero]
    if set(X) & set(Yp):
        raise ConstructionError(f"generator names overlap: {sorted(set(X) & set(Yp))}")
    for y in Yp:
        if _member(in_B, model.value(FreeActElement(y)), y):
            raise ConstructionError(f"generator {y!r} of the quotient represents 0", y)
    alpha = dict(alpha or {})
    choices = {}

    def alpha_of(w):
        if w in alpha:
            a = alpha[w]
            if a.generator not in X or model.value(a) != model.value(w):
                raise ConstructionError(f"alpha for {w} is not a valid witness", w)
            return a
        a = find_witness(model, X, model.value(w))
        if a is None:
            raise ConstructionError(f"missing alpha for {w}", w)
        alpha[w] = a
        return a

    yset = set(Yp)
    zero_words = []
    for u, v in _sym(presQ.relations):
        if u.generator in yset and _member(in_B, model.value(u), u):
            u = FreeActElement(u.generator, M.normal_form(u.word))
            if u not in zero_words:
                zero_words.append(u)
    if z is None:
        for w in model.words():
            for y in Yp:
                e = FreeActElement(y, w)
                if _member(in_B, model.value(e), e):
                    z = e
                    break
            if z is not None:
                break
        if z is None and zero_words:
            z = zero_words[0]
    elif z.generator not in yset or not _member(in_B, model.value(z), z):
        raise ConstructionError(f"z = {z} does not represent 0 in the quotient", z)
    col = _Collector(M)
    for r in presB.relations:
        col.add("R", r.lhs, r.rhs)
    for r in presQ.relations:
        if r.lhs.generator != zero and not _member(in_B, model.value(r.lhs), r.lhs):
            col.add("S1", r.lhs, r.rhs)
    for u in zero_words:
        col.add("S2", u, alpha_of(u))
    if z is not None:
        col.add("S2", z, alpha_of(z), keep_trivial=True)
        choices["z"] = str(z)
    for w, a in alpha.items():
        choices[f"alpha[{w}]"] = str(a)
    pres = ActPresentation(M, list(X) + Yp, col.rels)
    images = {g: model.value(FreeActElement(g)) for g in pres.generators}
    return Construction(pres, tuple(col.tags), choices, images)


# ---------------------------------------------------------------------------
# unions


def union_witnesses(model, X: Sequence[str], Y: Sequence[str], values: Iterable) -> list:
    out = []
    for v in values:
        a, b = find_witness(model, X, v), find_witness(model, Y, v)
        if a is None or b is None:
            raise ConstructionError(f"no witness pair for {model.label(v)}", v)
        out.append((a, b))
    return out


def union_presentation(presA: ActPresentation, presB: ActPresentation, model=None,
                       pairs: Sequence[tuple] = ()) -> Construction:
    """``<X, Y | R, S, T>`` with ``T = {rho_X(u) = rho_Y(u)}`` from ``pairs``."""
    M = presA.monoid
    X, Y = presA.generators, presB.generators
    if set(X) & set(Y):
        raise ConstructionError(f"generator names overlap: {sorted(set(X) & set(Y))}")
    col = _Collector(M)
    for r in presA.relations:
        col.add("R", r.lhs, r.rhs)
    for r in presB.relations:
        col.add("S", r.lhs, r.rhs)
    choices = {}
    for i, (a, b) in enumerate(pairs):
        if a.generator not in X or b.generator not in Y:
            raise ConstructionError(f"witness pair {a}, {b} is not in F_X x F_Y", (a, b))
        if model is not None and model.value(a) != model.value(b):
            raise ConstructionError(f"invalid witness: {a} and {b} differ", (a, b))
        col.add("T", a, b, keep_trivial=True)
        choices[f"rho[{i}]"] = f"{a} ~ {b}"
    pres = ActPresentation(M, list(X) + list(Y), col.rels)
    images = {g: model.value(FreeActElement(g)) for g in pres.generators} if model else {}
    return Construction(pres, tuple(col.tags), choices, images)


def union_component_presentation(presC: ActPresentation, model, in_B: Callable,
                                 presI: ActPresentation | None = None,
                                 w: dict | None = None, rho: dict | None = None) -> Construction:
    """Presentation of ``A`` from one of ``C = A u B`` and one of ``A n B``.

    Generators are ``Y = Z minus B`` followed by the generators ``U`` of
    ``presI`` (whose images must be in ``model``).
    """
    M = presC.monoid
    Z = presC.generators
    Y = [g for g in Z if not _member(in_B, model.value(FreeActElement(g)), g)]
    Yp = [g for g in Z if g not in Y]
    U = list(presI.generators) if presI is not None else []
    if set(U) & set(Y):
        raise ConstructionError(f"generator names overlap: {sorted(set(U) & set(Y))}")
    w = dict(w or {})
    rho = dict(rho or {})
    yset, ypset = set(Y), set(Yp)
    col = _Collector(M)
    for r in presC.relations:
        if r.lhs.generator in yset and r.rhs.generator in yset:
            col.add("R1", r.lhs, r.rhs)
    for u in U:
        wu = w.get(u) or find_witness(model, Z, model.value(FreeActElement(u)))
        if wu is None or model.value(wu) != model.value(FreeActElement(u)):
            raise ConstructionError(f"no valid w_u for {u!r}", u)
        w[u] = wu
        if wu.generator in yset:
            col.add("R2", FreeActElement(u), wu, keep_trivial=True)
    for a, b in _sym(presC.relations):
        if a.generator in yset and b.generator in ypset:
            key = FreeActElement(a.generator, M.normal_form(a.word))
            r = rho.get(key) or find_witness(model, U, model.value(a))
            if r is None or model.value(r) != model.value(a):
                raise ConstructionError(f"no valid rho_U for {a}", a)
            rho[key] = r
            col.add("R3", a, r, keep_trivial=True)
    if presI is not None:
        for r in presI.relations:
            col.add("S", r.lhs, r.rhs)
    pres = ActPresentation(M, Y + U, col.rels)
    choices = {f"w[{u}]": str(v) for u, v in w.items()}
    choices.update({f"rho[{k}]": str(v) for k, v in rho.items()})
    images = {g: model.value(FreeActElement(g)) for g in pres.generators}
    return Construction(pres, tuple(col.tags), choices, images)


def intersection_generators(presC: ActPresentation, X: Iterable[str]) -> list:
    """Sides ``u`` in F_X of relations whose other side lies over the remaining generators."""
    X = set(X)
    M = presC.monoid
    out = []
    for u, v in _sym(presC.relations):
        if u.generator in X and v.generator not in X:
            e = FreeActElement(u.generator, M.normal_form(u.word))
            if e not in out:
                out.append(e)
    return out


# ---------------------------------------------------------------------------
# subacts


class _Rewriter:
    """The rewriting map: ``w`` in L(X, B) to a shortlex-least ``y . n`` equal to it."""

    def __init__(self, model, witnesses: dict, depth):
        self.model = model
        self.Y = list(witnesses)
        self.wy = witnesses
        self.depth = depth
        self.cache = {}
        self.sub = model.extended({y: model.value(w) for y, w in witnesses.items()})

    def __call__(self, e: FreeActElement):
        target = self.model.value(e)
        if target not in self.cache:
            if hasattr(self.sub, "factor"):
                self.cache[target] = self.sub.factor(self.Y, target)
            else:
                self.cache[target] = find_witness(self.sub, self.Y, target, self.depth)
        return self.cache[target]


def subact_presentation_general(presA: ActPresentation, model, witnesses: dict,
                                depth: int | None = None) -> Construction:
    """Presentation of ``B = <Y>`` on ``Y`` (relation sets R1, R2, R3).

    Over a finite model the monoid is enumerated completely; otherwise every
    family is streamed over monoid words of length at most ``depth`` and
    failed searches are recorded as gaps.
    """
    M = presA.monoid
    X = presA.generators
    for y, w in witnesses.items():
        if w.generator not in X:
            raise ConstructionError(f"witness for {y!r} is not in F_X", y)
    in_B = model.subact([model.value(w) for w in witnesses.values()])
    phi = _Rewriter(model, witnesses, depth)
    words = model.words(depth)
    gaps = []
    col = _Collector(M)

    def member(e):
        got = in_B(model.value(e))
        if got is None:
            gaps.append(f"membership undecided for {e}")
        return bool(got)

    def image(e):
        got = phi(e)
        if got is None:
            gaps.append(f"no rewriting found for {e}")
        return got

    for y, w in witnesses.items():
        got = image(w)
        if got is not None:
            col.add("R1", FreeActElement(y), got)
    L = [FreeActElement(x, m) for m in words for x in X]
    L = [e for e in L if member(e)]
    for e in L:
        we = image(e)
        if we is None:
            continue
        for m in words:
            lhs = image(e.times(m))
            if lhs is not None:
                col.add("R2", lhs, we.times(m))
    for r in presA.relations:
        for m in words:
            um, vm = r.lhs.times(m), r.rhs.times(m)
            if member(um):
                a, b = image(um), image(vm)
                if a is not None and b is not None:
                    col.add("R3", a, b)
    pres = ActPresentation(M, list(witnesses), col.rels)
    images = {y: model.value(w) for y, w in witnesses.items()}
    out = Construction(pres, tuple(col.tags), {f"w_{y}": str(w) for y, w in witnesses.items()},
                       images, gaps=sorted(set(gaps)))
    if not model.is_finite:
        out.notes.append(f"streamed over monoid words of length <= {depth or model.depth}")
    return out


@dataclass
class SimplificationReport:
    ok: bool
    holds: list
    proofs: list
    failures: list


def simplify_subact(construction: Construction, model, witnesses: dict, candidate: Sequence,
                    max_steps: int = 16, max_word_len: int = 8) -> SimplificationReport:
    """Accept ``candidate`` relations in place of the streamed presentation.

    Each candidate relation must hold in ``B`` and each streamed relation
    must be a bounded consequence of the candidate set.
    """
    pres = construction.presentation
    cand = ActPresentation(pres.monoid, pres.generators, candidate)
    sub = model.extended({y: model.value(w) for y, w in witnesses.items()})
    holds, proofs, failures = [], [], []
    for r in cand.relations:
        ok = sub.value(r.lhs) == sub.value(r.rhs)
        holds.append((r, ok))
        if not ok:
            failures.append(f"{r} does not hold in the subact")
    for r in pres.relations:
        v = is_consequence(cand, r.lhs, r.rhs, max_steps=max_steps, max_word_len=max_word_len)
        proofs.append((r, v))
        if not isinstance(v, Proved):
            failures.append(f"{r}: {v.verdict}")
    return SimplificationReport(not failures, holds, proofs, failures)


# ---------------------------------------------------------------------------
# large subacts


def monoid_relations(monoid: MonoidHandle, schema_bound: int | None = None) -> list:
    """A finite defining relation list ``P`` for the monoid, as word pairs."""
    if isinstance(monoid, FiniteMonoid):
        return monoid.cayley_relations()
    if isinstance(monoid, FreeMonoid):
        return []
    if isinstance(monoid, RewritingMonoid):
        sys = monoid.system
        bound = schema_bound if schema_bound is not None else sys.schema_bound
        if sys.schemas and bound is None:
            raise ConstructionError(
                "monoid has an infinite rule family and no declared instantiation bound; "
                "a finite presentation is required", sys.schemas[0])
        return [(r.lhs, r.rhs) for r in sys.instantiated(bound or 0)]
    raise ConstructionError(f"cannot extract relations from {monoid!r}")


class LargeSubactContext:
    """Data for a subact ``B`` of ``A`` with finite complement.

    ``step(v, z)`` acts on ambient values by a monoid letter; ``complement``
    lists the values of ``A minus B``; ``gen_values`` gives the value of each
    generator of ``presA``.
    """

    def __init__(self, presA: ActPresentation, step: Callable, complement: Sequence,
                 gen_values: dict, relations: Sequence | None = None,
                 schema_bound: int | None = None, label: Callable = str):
        self.presA = presA
        self.monoid = presA.monoid
        self.step = step
        self.complement = list(complement)
        self._cset = set(self.complement)
        self.gen_values = dict(gen_values)
        self.schema_bound = schema_bound
        self._relations = relations
        self.label = label
        for a in self.complement:
            for s in self.monoid.alphabet:
                step(a, s)  # totality of the complement table

    @property
    def P(self) -> list:
        if self._relations is None:
            self._relations = monoid_relations(self.monoid, self.schema_bound)
        return self._relations

    @classmethod
    def from_finite(cls, presA, act: FiniteAct, gen_map: dict, members: Iterable[int]):
        members = set(members)
        comp = [a for a in act.elements if a not in members]
        return cls(presA, lambda v, s: act.action[s][v], comp, gen_map,
                   label=lambda v: act.labels[v])

    @classmethod
    def right_ideal(cls, monoid: MonoidHandle, complement: Iterable, generator: str = "x",
                    schema_bound: int | None = None):
        """``A = M`` as the free cyclic act ``<x | >``; ``B`` is ``M`` minus ``complement``."""
        pres = ActPresentation(monoid, [generator], [])
        comp = [monoid.normal_form(word(w)) for w in complement]
        return cls(pres, lambda v, s: monoid.normal_form(v + (s,)), comp, {generator: ()},
                   schema_bound=schema_bound, label=show_word)

    def in_B(self, v) -> bool:
        return v not in self._cset

    def value(self, e: FreeActElement):
        v = self.gen_values[e.generator]
        for s in e.word:
            v = self.step(v, s)
        return v

    def boundary(self) -> list:
        """S: values ``a z`` in B with ``a`` in the complement and ``z`` a letter."""
        out = []
        for a in self.complement:
            for s in self.monoid.alphabet:
                b = self.step(a, s)
                if self.in_B(b) and b not in out:
                    out.append(b)
        return out


@dataclass
class LargeGenerators:
    names: list
    values: dict  # name -> ambient value
    from_X: list
    from_S: list

    def name_of(self, v):
        for n in self.names:
            if self.values[n] == v:
                return n
        raise KeyError(v)


def large_subact_generators(ctx: LargeSubactContext, prefix: str = "y") -> LargeGenerators:
    X = ctx.presA.generators
    XB = [x for x in X if ctx.in_B(ctx.gen_values[x])]
    values = {x: ctx.gen_values[x] for x in XB}
    names = list(XB)
    from_S = []
    taken = set(X) | set(ctx.monoid.alphabet)
    i = 0
    for b in ctx.boundary():
        if b in values.values():
            from_S.append(next(n for n in names if values[n] == b))
            continue
        while f"{prefix}{i}" in taken:
            i += 1
        n = f"{prefix}{i}"
        taken.add(n)
        names.append(n)
        values[n] = b
        from_S.append(n)
    return LargeGenerators(names, values, XB, from_S)


def large_subact_presentation(ctx: LargeSubactContext, prefix: str = "y") -> Construction:
    """Finite presentation ``<Y | S1, S2>`` of a large subact.

    ``theta`` walks ``x . w`` letter by letter until it first lands in
    ``B``; ``phi(x . m)`` is ``theta(x . w_m)`` for the canonical word
    ``w_m``; S2 relates boundary elements acted on by suffixes of the
    defining relations of the monoid.
    """
    M = ctx.monoid
    gens = large_subact_generators(ctx, prefix)
    P = ctx.P
    transcript = []

    def theta(e: FreeActElement):
        v = ctx.gen_values[e.generator]
        if ctx.in_B(v):
            return FreeActElement(e.generator, M.normal_form(e.word))
        for s, z in enumerate(e.word):
            v = ctx.step(v, z)
            if ctx.in_B(v):
                return FreeActElement(gens.name_of(v), M.normal_form(e.word[s + 1:]))
        return None

    def phi(e):
        out = theta(FreeActElement(e.generator, M.normal_form(e.word)))
        transcript.append(f"phi({e}) = {out}")
        return out

    col = _Collector(M)
    for r in ctx.presA.relations:
        if ctx.in_B(ctx.value(r.lhs)):
            col.add("S1", phi(r.lhs), phi(r.rhs))
    S = [gens.name_of(b) for b in ctx.boundary()]
    S = list(dict.fromkeys(S))

    def suffixes(w):
        return [w[i:] for i in range(len(w) + 1)]

    for p, q in P:
        for p_, q_ in ((p, q), (q, p)):
            for w in suffixes(p_):
                for zz in suffixes(q_):
                    for b in S:
                        bw = _act(ctx, gens.values[b], w)
                        for c in S:
                            if bw == _act(ctx, gens.values[c], zz):
                                col.add("S2", FreeActElement(b, w), FreeActElement(c, zz))
    pres = ActPresentation(M, gens.names, col.rels)
    notes = []
    if isinstance(M, RewritingMonoid) and M.system.schemas:
        notes.append(f"monoid relations instantiated up to i = {ctx.schema_bound or M.system.schema_bound}")
    choices = {f"S[{n}]": ctx.label(gens.values[n]) for n in gens.from_S}
    return Construction(pres, tuple(col.tags), choices, dict(gens.values), notes=notes + transcript,
                        maps={"theta": theta, "phi": phi})


def _act(ctx, v, w):
    for s in w:
        v = ctx.step(v, s)
    return v
