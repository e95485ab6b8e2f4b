"""Free acts, explicit finite acts, congruences and Rees quotients.

This is the exact layer: everything here is computed by exhaustive
enumeration over finite tables and is used as the oracle for the
presentation machinery.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .monoid import FiniteMonoid, MonoidError, MonoidHandle, check_letter, show_word, word


class ActError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FreeActElement:
    """``x . w``: an act generator paired with a monoid word."""

    generator: str
    word: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "word", word(self.word))

    def times(self, w) -> "FreeActElement":
        return FreeActElement(self.generator, self.word + word(w))

    def __str__(self):
        if not self.word:
            return self.generator
        return f"{self.generator} . {show_word(self.word)}"


def el(text: str) -> FreeActElement:
    """Parse ``"x . a b"`` or ``"x"`` into a free act element."""
    if "." in text:
        g, _, w = text.partition(".")
        return FreeActElement(g.strip(), word(w))
    return FreeActElement(text.strip(), ())


def free_action(monoid: MonoidHandle, e: FreeActElement, m) -> FreeActElement:
    """``(x, m) n = (x, mn)`` with the monoid part kept canonical."""
    return FreeActElement(e.generator, monoid.multiply(e.word, m))


def canonical(monoid: MonoidHandle, e: FreeActElement) -> FreeActElement:
    return FreeActElement(e.generator, monoid.normal_form(monoid.check_word(e.word)))


# ---------------------------------------------------------------------------
# union-find


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a: int) -> int:
        root = a
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        return True


# ---------------------------------------------------------------------------
# finite acts


class FiniteAct:
    """Finite right act given by one transformation per monoid letter.

    ``action[letter][i]`` is the image of element ``i`` under the letter.  For
    a finite monoid the table is checked against the monoid's relations; for a
    rewriting monoid against its rules (schemas exactly, via periodicity).
    """

    def __init__(self, monoid: MonoidHandle, action: dict, labels=None, check=True):
        self.monoid = monoid
        n = None
        act = {}
        for x in monoid.alphabet:
            if x not in action:
                raise ActError(f"no action given for letter {x!r}")
            row = tuple(int(i) for i in action[x])
            if n is None:
                n = len(row)
            elif len(row) != n:
                raise ActError("action rows have different lengths")
            act[x] = row
        if n is None:
            n = len(labels) if labels is not None else 1
        if n == 0:
            raise ActError("acts are non-empty")
        for row in act.values():
            if any(not 0 <= j < n for j in row):
                raise ActError("action entry out of range")
        self.size = n
        self.action = act
        self.labels = tuple(labels) if labels is not None else tuple(f"a{i}" for i in range(n))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise ActError("labels must be distinct, one per element")
        if check and not monoid.transformation_check(act, n):
            raise ActError("action table is not compatible with the monoid relations")

    @property
    def elements(self) -> range:
        return range(self.size)

    def apply(self, i: int, w) -> int:
        for x in word(w):
            try:
                i = self.action[x][i]
            except KeyError:
                raise ActError(f"letter {x!r} does not act") from None
        return i

    def apply_index(self, i: int, m: int) -> int:
        """Action of the finite-monoid element with index ``m``."""
        return self._full[i][m]

    @property
    def _full(self):
        try:
            return self.__full
        except AttributeError:
            reps = self.monoid.reps
            self.__full = tuple(tuple(self.apply(i, w) for w in reps) for i in range(self.size))
            return self.__full

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ActError(f"no element labelled {label!r}") from None

    def is_closed(self, members: Iterable[int]) -> bool:
        members = set(members)
        return all(row[b] in members for row in self.action.values() for b in members)

    def orbit(self, seeds: Iterable[int]) -> set:
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            a = queue.popleft()
            for row in self.action.values():
                b = row[a]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen

    def fixed_points(self) -> list:
        return [a for a in self.elements if all(row[a] == a for row in self.action.values())]

    def restrict(self, members: Iterable[int], labels=None) -> tuple:
        """The subact on ``members`` as its own act, plus the inclusion map."""
        members = sorted(set(members))
        if not self.is_closed(members):
            raise ActError("subset is not closed under the action")
        pos = {a: i for i, a in enumerate(members)}
        action = {x: [pos[row[a]] for a in members] for x, row in self.action.items()}
        if labels is None:
            labels = [self.labels[a] for a in members]
        return FiniteAct(self.monoid, action, labels, check=False), members

    def __repr__(self):
        return f"FiniteAct(size={self.size}, letters={self.monoid.alphabet})"


@dataclass(frozen=True)
class Subact:
    parent: FiniteAct
    members: frozenset

    def __post_init__(self):
        if not self.members:
            raise ActError("acts are non-empty")
        if not self.parent.is_closed(self.members):
            raise ActError("subset is not closed under the action")

    def __contains__(self, a):
        return a in self.members

    def __len__(self):
        return len(self.members)

    def as_act(self):
        return self.parent.restrict(self.members)


def subact_generated(act: FiniteAct, seeds: Iterable[int]) -> Subact:
    seeds = list(seeds)
    if not seeds:
        raise ActError("cannot generate a subact from the empty set")
    return Subact(act, frozenset(act.orbit(seeds)))


class ActCongruence:
    """A partition of a finite act's elements; class ids are least members."""

    def __init__(self, parent: FiniteAct, classes: Iterable[int]):
        self.parent = parent
        self.cls = tuple(classes)

    @classmethod
    def from_union_find(cls, parent, uf: UnionFind):
        roots = [uf.find(a) for a in parent.elements]
        least = {}
        for a, r in enumerate(roots):
            least.setdefault(r, a)
        return cls(parent, (least[r] for r in roots))

    def related(self, a: int, b: int) -> bool:
        return self.cls[a] == self.cls[b]

    def classes(self) -> list:
        out = {}
        for a, c in enumerate(self.cls):
            out.setdefault(c, []).append(a)
        return list(out.values())

    def is_congruence(self) -> bool:
        for row in self.parent.action.values():
            for a in self.parent.elements:
                if self.cls[row[a]] != self.cls[row[self.cls[a]]]:
                    return False
        return True

    def quotient(self) -> tuple:
        """Quotient act and the projection (list indexed by element)."""
        reps = sorted(set(self.cls))
        pos = {c: i for i, c in enumerate(reps)}
        proj = [pos[c] for c in self.cls]
        action = {x: [proj[row[c]] for c in reps] for x, row in self.parent.action.items()}
        labels = [self.parent.labels[c] for c in reps]
        return FiniteAct(self.parent.monoid, action, labels, check=False), proj

    def __eq__(self, other):
        return isinstance(other, ActCongruence) and self.cls == other.cls

    def __hash__(self):
        return hash(self.cls)

    def __len__(self):
        return len(set(self.cls))

    def __repr__(self):
        return f"ActCongruence({self.classes()})"


def congruence_closure(act: FiniteAct, seed: Iterable[tuple]) -> ActCongruence:
    """Smallest congruence containing ``seed``."""
    uf = UnionFind(act.size)
    rows = list(act.action.values())
    work = deque()
    for a, b in seed:
        if uf.union(a, b):
            work.append((a, b))
    while work:
        a, b = work.popleft()
        for row in rows:
            c, d = row[a], row[b]
            if uf.union(c, d):
                work.append((c, d))
    return ActCongruence.from_union_find(act, uf)


def rees_congruence(act: FiniteAct, sub: Subact) -> ActCongruence:
    least = min(sub.members)
    return ActCongruence(act, (least if a in sub.members else a for a in act.elements))


@dataclass(frozen=True)
class ReesQuotient:
    result: FiniteAct
    zero: int
    projection: tuple


def rees_quotient(act: FiniteAct, sub: Subact) -> ReesQuotient:
    if sub.parent is not act:
        raise ActError("subact belongs to a different act")
    rho = rees_congruence(act, sub)
    quo, proj = rho.quotient()
    zero = proj[min(sub.members)]
    labels = list(quo.labels)
    labels[zero] = "0" if "0" not in labels else labels[zero]
    quo = FiniteAct(quo.monoid, quo.action, labels, check=False)
    return ReesQuotient(quo, zero, tuple(proj))


@dataclass(frozen=True)
class Homomorphism:
    domain: FiniteAct
    codomain: FiniteAct
    mapping: tuple

    def __post_init__(self):
        for x, row in self.domain.action.items():
            crow = self.codomain.action[x]
            for a in self.domain.elements:
                if self.mapping[row[a]] != crow[self.mapping[a]]:
                    raise ActError(f"map does not commute with letter {x!r} at {a}")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def is_injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    def is_surjective(self):
        return set(self.mapping) == set(self.codomain.elements)


def kernel_congruence(f: Homomorphism) -> ActCongruence:
    first = {}
    cls = []
    for a in f.domain.elements:
        cls.append(first.setdefault(f.mapping[a], a))
    k = ActCongruence(f.domain, cls)
    assert k.is_congruence()
    return k


# ---------------------------------------------------------------------------
# free acts and presented acts (finite monoid oracle)


def free_act(monoid: FiniteMonoid, generators) -> tuple:
    """``F_X`` materialized: the act and the index of ``(x, m)`` as ``x_pos * |M| + m``."""
    gens = tuple(generators)
    if not gens:
        raise ActError("acts are non-empty: no generators")
    n = monoid.size
    action = {}
    for z, zi in monoid.letters.items():
        row = monoid.table
        action[z] = [g * n + row[m][zi] for g in range(len(gens)) for m in range(n)]
    labels = [f"{g}.{m}" for g in gens for m in range(n)]
    return FiniteAct(monoid, action, labels, check=False), gens


@dataclass
class PresentedAct:
    """Oracle for ``F_X / <R>``: the quotient act plus the natural map from F_X."""

    act: FiniteAct
    generators: tuple
    free: FiniteAct
    projection: tuple
    congruence: ActCongruence

    @property
    def monoid(self):
        return self.act.monoid

    def free_index(self, e: FreeActElement) -> int:
        try:
            g = self.generators.index(e.generator)
        except ValueError:
            raise ActError(f"unknown generator {e.generator!r}") from None
        return g * self.monoid.size + self.monoid.evaluate(e.word)

    def evaluate(self, e: FreeActElement) -> int:
        return self.projection[self.free_index(e)]

    @property
    def gen_map(self) -> dict:
        return {x: self.evaluate(FreeActElement(x)) for x in self.generators}

    def free_elements(self):
        reps = self.monoid.reps
        return [FreeActElement(x, w) for x in self.generators for w in reps]


def act_from_presentation(pres, monoid: FiniteMonoid | None = None) -> PresentedAct:
    """Materialize the act defined by a presentation over a finite monoid."""
    monoid = monoid or pres.monoid
    if not isinstance(monoid, FiniteMonoid):
        raise ActError("the oracle needs a finite monoid")
    free, gens = free_act(monoid, pres.generators)
    known = set(gens)
    seed = []
    n = monoid.size
    for rel in pres.relations:
        pair = []
        for side in rel:
            if side.generator not in known:
                raise ActError(f"relation {rel} uses unknown generator {side.generator!r}")
            pair.append(gens.index(side.generator) * n + monoid.evaluate(side.word))
        seed.append(tuple(pair))
    cong = congruence_closure(free, seed)
    quo, proj = cong.quotient()
    labels = unique_labels(_free_labels(monoid, gens, cong))
    quo = FiniteAct(monoid, quo.action, labels, check=False)
    return PresentedAct(quo, gens, free, tuple(proj), cong)


def _free_labels(monoid, gens, cong):
    n = monoid.size
    for c in sorted(set(cong.cls)):
        w = monoid.reps[c % n]
        yield gens[c // n] + ("_" + "_".join(w) if w else "")


def unique_labels(cands, prefix="p") -> list:
    cands = list(cands)
    if len(set(cands)) == len(cands):
        try:
            for c in cands:
                check_letter(c)
            return cands
        except MonoidError:
            pass
    return [f"{prefix}{i}" for i in range(len(cands))]


def extend_map(act: FiniteAct, gens: tuple, gen_map: dict) -> list:
    """Images of every ``(x, m)`` of F_X (free-act index order) under ``x -> gen_map[x]``."""
    m = act.monoid
    out = []
    for x in gens:
        try:
            a = gen_map[x]
        except KeyError:
            raise ActError(f"generator {x!r} has no image") from None
        out.extend(act.apply_index(a, i) for i in range(m.size))
    return out


def same_partition(p: Iterable, q: Iterable) -> bool:
    """True when two labellings of the same index set induce the same partition."""
    fwd, back = {}, {}
    for a, b in zip(p, q):
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return False
    return True


class RelationViolation(ActError):
    def __init__(self, relation, lhs_value, rhs_value):
        self.relation = relation
        self.lhs_value = lhs_value
        self.rhs_value = rhs_value
        super().__init__(f"relation {relation} fails: {lhs_value} != {rhs_value}")


def induced_homomorphism(pres, target: FiniteAct, gen_map: dict) -> Homomorphism:
    """Homomorphism from the act presented by ``pres`` to ``target`` extending ``gen_map``."""
    for rel in pres.relations:
        lv = target.apply(gen_map[rel.lhs.generator], rel.lhs.word)
        rv = target.apply(gen_map[rel.rhs.generator], rel.rhs.word)
        if lv != rv:
            raise RelationViolation(rel, target.labels[lv], target.labels[rv])
    oracle = act_from_presentation(pres, target.monoid)
    images = extend_map(target, oracle.generators, gen_map)
    mapping = [None] * oracle.act.size
    for i, c in enumerate(oracle.projection):
        mapping[c] = images[i]
    return Homomorphism(oracle.act, target, tuple(mapping))


def check_generator_name(name: str) -> str:
    try:
        return check_letter(name)
    except MonoidError as exc:
        raise ActError(str(exc).replace("letter", "generator")) from None
