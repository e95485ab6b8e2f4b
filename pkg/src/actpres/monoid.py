"""Words, rewriting systems and monoid backends.

A monoid is handled through one of three backends that share a small
interface (``normal_form``, ``equal``, ``multiply``, ``elements``,
``multipliers``):

* :class:`FreeMonoid` -- words with no relations;
* :class:`RewritingMonoid` -- a length-reducing rewriting system made of
  plain rules and one-letter parametric schemas;
* :class:`FiniteMonoid` -- an explicit multiplication table with a list of
  generating letters.

Elements are always exposed as canonical words (normal forms, or for a
finite monoid the shortlex-least word over its letters), so presentations
can store monoid parts as words regardless of the backend.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[str, ...]

RESERVED = (".", "^", "(", ")", "->", "=", ";", "#", "[", "]", ",")


class MonoidError(ValueError):
    pass


def check_letter(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise MonoidError(f"letter must be a non-empty string, got {name!r}")
    if name == "1" or any(ch.isspace() for ch in name):
        raise MonoidError(f"invalid letter {name!r}")
    for bad in RESERVED:
        if bad in name:
            raise MonoidError(f"letter {name!r} contains reserved {bad!r}")
    return name


def make_alphabet(letters: Iterable[str]) -> tuple:
    if isinstance(letters, str):
        letters = letters.split()
    letters = tuple(check_letter(x) for x in letters)
    if len(set(letters)) != len(letters):
        raise MonoidError(f"repeated letter in alphabet {letters}")
    return letters


def word(text) -> Word:
    """Coerce ``"a b a"``, ``"1"``, ``""`` or an iterable of letters to a word."""
    if isinstance(text, tuple):
        return text
    if isinstance(text, str):
        toks = text.split()
        if toks == ["1"]:
            return ()
        return tuple(toks)
    return tuple(text)


def show_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


def shortlex_key(w: Sequence[str], order: dict) -> tuple:
    return (len(w), tuple(order[x] for x in w))


def all_words(alphabet: Sequence[str], max_len: int) -> Iterator[Word]:
    """All words of length <= max_len in shortlex order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


# ---------------------------------------------------------------------------
# rules and schemas


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", word(self.lhs))
        object.__setattr__(self, "rhs", word(self.rhs))
        if not self.lhs:
            raise MonoidError("rule with empty left-hand side")

    @property
    def length_reducing(self) -> bool:
        return len(self.lhs) > len(self.rhs)

    def __str__(self):
        return f"{show_word(self.lhs)} -> {show_word(self.rhs)}"


@dataclass(frozen=True)
class Exponent:
    """Exponent map ``i -> i + c`` (affine) or ``i -> c`` (constant)."""

    affine: bool
    c: int

    def __call__(self, i: int) -> int:
        return i + self.c if self.affine else self.c

    def show(self) -> str:
        if not self.affine:
            return str(self.c)
        if self.c == 0:
            return "i"
        return f"(i{self.c:+d})"


@dataclass(frozen=True)
class RuleSchema:
    """The family ``u x^i v -> p y^e(i) q`` for all ``i >= k``.

    When the right-hand side has no pumped letter, ``rhs_letter`` is None and
    the whole right-hand side is ``rhs_prefix``.
    """

    prefix: Word
    letter: str
    k: int
    suffix: Word
    rhs_prefix: Word
    rhs_letter: str | None = None
    exponent: Exponent = Exponent(False, 0)
    rhs_suffix: Word = ()

    def __post_init__(self):
        for name in ("prefix", "suffix", "rhs_prefix", "rhs_suffix"):
            object.__setattr__(self, name, word(getattr(self, name)))
        if self.k < 1:
            raise MonoidError(f"schema bound must be >= 1, got {self.k}")
        if self.rhs_letter is None and self.exponent != Exponent(False, 0):
            raise MonoidError("exponent given without a pumped right-hand letter")

    def lhs(self, i: int) -> Word:
        return self.prefix + (self.letter,) * i + self.suffix

    def rhs(self, i: int) -> Word:
        if self.rhs_letter is None:
            return self.rhs_prefix
        return self.rhs_prefix + (self.rhs_letter,) * self.exponent(i) + self.rhs_suffix

    def instance(self, i: int) -> RewriteRule:
        if i < self.k:
            raise MonoidError(f"schema instance {i} below bound {self.k}")
        return RewriteRule(self.lhs(i), self.rhs(i))

    def instances(self, upto: int) -> list:
        return [self.instance(i) for i in range(self.k, upto + 1)]

    def termination_violation(self) -> str | None:
        """Symbolic check of ``|u| + i + |v| > |rhs(i)|`` and ``e(i) >= 0``."""
        fixed = len(self.prefix) + len(self.suffix)
        rfixed = len(self.rhs_prefix) + len(self.rhs_suffix)
        e = self.exponent if self.rhs_letter is not None else Exponent(False, 0)
        if e(self.k) < 0:
            return f"negative exponent at i={self.k}"
        if e.affine:
            # difference is constant in i
            if fixed <= rfixed + e.c:
                return "right-hand side grows with the left for every i"
        elif fixed + self.k <= rfixed + e.c:
            return f"not length-reducing at i={self.k}"
        return None

    def match_at(self, w: Word, pos: int) -> int | None:
        """Exponent of the match starting at ``pos`` (maximal run), or None."""
        u, x, v = self.prefix, self.letter, self.suffix
        n = len(u)
        if w[pos:pos + n] != u:
            return None
        start = pos + n
        run = 0
        while start + run < len(w) and w[start + run] == x:
            run += 1
        for i in range(run, self.k - 1, -1):
            end = start + i
            if w[end:end + len(v)] == v:
                return i
        return None

    def __str__(self):
        lhs = list(self.prefix) + [f"{self.letter}^i"] + list(self.suffix)
        rhs = list(self.rhs_prefix)
        if self.rhs_letter is not None:
            rhs.append(f"{self.rhs_letter}^{self.exponent.show()}")
            rhs += list(self.rhs_suffix)
        return f"{' '.join(lhs)} -> {show_word(rhs)} (i >= {self.k})"


@dataclass(frozen=True)
class Report:
    ok: bool
    culprit: object = None
    detail: str = ""
    status: str = ""

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# backends


class MonoidHandle:
    """Common interface; subclasses override what they can do better."""

    alphabet: tuple = ()
    is_finite = False

    def check_word(self, w) -> Word:
        w = word(w)
        letters = self._letter_set
        for x in w:
            if x not in letters:
                raise MonoidError(f"letter {x!r} not in alphabet {self.alphabet}")
        return w

    @functools.cached_property
    def _letter_set(self):
        return frozenset(self.alphabet)

    @functools.cached_property
    def letter_order(self) -> dict:
        return {x: i for i, x in enumerate(self.alphabet)}

    def shortlex(self, w) -> tuple:
        return shortlex_key(w, self.letter_order)

    def normal_form(self, w) -> Word:
        raise NotImplementedError

    def equal(self, u, v) -> bool:
        return self.normal_form(self.check_word(u)) == self.normal_form(self.check_word(v))

    def multiply(self, a, b):
        return self.normal_form(self.check_word(word(a) + word(b)))

    def elements(self, max_len: int) -> list:
        raise NotImplementedError

    def multipliers(self, p, m, max_len: int = 12) -> tuple:
        """All ``n`` (canonical) with ``p n = m`` found, and whether that list is complete."""
        raise NotImplementedError

    def transformation_check(self, transforms: dict, n: int) -> bool:
        """True when the letter transformations of an n-set satisfy the monoid relations."""
        raise NotImplementedError


class FreeMonoid(MonoidHandle):
    def __init__(self, alphabet):
        self.alphabet = make_alphabet(alphabet)

    def normal_form(self, w) -> Word:
        return word(w)

    def elements(self, max_len):
        return list(all_words(self.alphabet, max_len))

    def multipliers(self, p, m, max_len=12):
        p, m = word(p), word(m)
        if m[:len(p)] == p:
            return [m[len(p):]], True
        return [], True

    def transformation_check(self, transforms, n):
        return True

    def __repr__(self):
        return f"FreeMonoid({' '.join(self.alphabet)})"


class RewritingSystem:
    """Ordered list of rules and schemas over an alphabet.

    Declaration order matters: at a given position the earliest-declared rule
    that matches is applied.
    """

    def __init__(self, alphabet, rules=(), confluence_status="unchecked", schema_bound=None):
        self.alphabet = make_alphabet(alphabet)
        self.rules = tuple(rules)
        letters = set(self.alphabet)
        for r in self.rules:
            if isinstance(r, RewriteRule):
                used = r.lhs + r.rhs
            elif isinstance(r, RuleSchema):
                used = r.prefix + r.suffix + r.rhs_prefix + r.rhs_suffix + (r.letter,)
                if r.rhs_letter is not None:
                    used += (r.rhs_letter,)
            else:
                raise MonoidError(f"not a rule: {r!r}")
            for x in used:
                if x not in letters:
                    raise MonoidError(f"rule {r} uses letter {x!r} outside the alphabet")
        bad = check_termination(self)
        if not bad:
            raise MonoidError(f"rule {bad.culprit} is not length-reducing: {bad.detail}")
        self.confluence_status = confluence_status
        self.schema_bound = schema_bound
        self._nf = functools.lru_cache(maxsize=1 << 16)(self._normal_form)

    @property
    def plain_rules(self):
        return tuple(r for r in self.rules if isinstance(r, RewriteRule))

    @property
    def schemas(self):
        return tuple(r for r in self.rules if isinstance(r, RuleSchema))

    def instantiated(self, bound: int) -> list:
        out = []
        for r in self.rules:
            if isinstance(r, RuleSchema):
                out.extend(r.instances(max(bound, r.k)))
            else:
                out.append(r)
        return out

    def first_match(self, w: Word, start: int = 0):
        """Leftmost match at or after ``start`` as ``(pos, length, rhs)``."""
        for pos in range(start, len(w)):
            for r in self.rules:
                if isinstance(r, RewriteRule):
                    if w[pos:pos + len(r.lhs)] == r.lhs:
                        return pos, len(r.lhs), r.rhs
                else:
                    i = r.match_at(w, pos)
                    if i is not None:
                        return pos, len(r.lhs(i)), r.rhs(i)
        return None

    def is_irreducible(self, w) -> bool:
        return self.first_match(word(w)) is None

    def _normal_form(self, w: Word) -> Word:
        while True:
            hit = self.first_match(w)
            if hit is None:
                return w
            pos, n, rhs = hit
            w = w[:pos] + rhs + w[pos + n:]

    def normal_form(self, w) -> Word:
        return self._nf(word(w))

    def rewrites(self, w: Word) -> Iterator[Word]:
        """Every one-step rewrite of ``w`` (any rule, any position, any schema exponent)."""
        for pos in range(len(w)):
            for r in self.rules:
                if isinstance(r, RewriteRule):
                    if w[pos:pos + len(r.lhs)] == r.lhs:
                        yield w[:pos] + r.rhs + w[pos + len(r.lhs):]
                else:
                    u, x, v = r.prefix, r.letter, r.suffix
                    if w[pos:pos + len(u)] != u:
                        continue
                    start = pos + len(u)
                    run = 0
                    while start + run < len(w) and w[start + run] == x:
                        run += 1
                    for i in range(r.k, run + 1):
                        end = start + i
                        if w[end:end + len(v)] == v:
                            yield w[:pos] + r.rhs(i) + w[end + len(v):]

    def __repr__(self):
        return f"RewritingSystem({'; '.join(map(str, self.rules))})"


def check_termination(sys: RewritingSystem) -> Report:
    for r in sys.rules:
        if isinstance(r, RewriteRule):
            if not r.length_reducing:
                return Report(False, r, "length does not decrease")
        else:
            why = r.termination_violation()
            if why:
                return Report(False, r, why)
    return Report(True)


def critical_pairs(rules: Sequence[RewriteRule]) -> Iterator[tuple]:
    """Overlap and inclusion ambiguities ``(word, reduct1, reduct2)``."""
    for r1 in rules:
        for r2 in rules:
            l1, l2 = r1.lhs, r2.lhs
            # suffix of l1 overlapping a prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    yield w, r1.rhs + l2[k:], l1[:-k] + r2.rhs
            # l2 strictly inside l1
            if r1 is not r2 and len(l2) <= len(l1):
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] == l2:
                        yield l1, r1.rhs, l1[:pos] + r2.rhs + l1[pos + len(l2):]


def check_local_confluence(sys: RewritingSystem, schema_bound: int = 8) -> Report:
    """Bounded certificate: critical pairs among schema instances up to ``schema_bound``."""
    term = check_termination(sys)
    if not term:
        return term
    rules = sys.instantiated(schema_bound)
    seen = set()
    for w, x, y in critical_pairs(rules):
        key = (w, x, y)
        if key in seen:
            continue
        seen.add(key)
        if sys.normal_form(x) != sys.normal_form(y):
            return Report(False, (w, x, y),
                          f"{show_word(w)}: {show_word(sys.normal_form(x))} != "
                          f"{show_word(sys.normal_form(y))}",
                          status=f"checked({schema_bound})")
    return Report(True, status=f"checked({schema_bound})")


class RewritingMonoid(MonoidHandle):
    """Monoid whose elements are the irreducible words of a rewriting system."""

    def __init__(self, system: RewritingSystem, ancestor_budget: int = 4000):
        self.system = system
        self.alphabet = system.alphabet
        self.ancestor_budget = ancestor_budget
        self._stable = {}

    def normal_form(self, w) -> Word:
        return self.system.normal_form(word(w))

    def elements(self, max_len):
        out = [()]
        frontier = [()]
        sys = self.system
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for x in self.alphabet:
                    v = w + (x,)
                    if sys.is_irreducible(v):
                        nxt.append(v)
            out.extend(nxt)
            frontier = nxt
        return out

    def stable_prefix(self, p: Word) -> bool:
        """True when every word ``p n`` rewrites only to words beginning with ``p``.

        Holds when ``p`` is irreducible and every rule whose left side starts
        with a suffix ``s`` of ``p`` and runs past it has a right side starting
        with ``s``.
        """
        p = word(p)
        if p in self._stable:
            return self._stable[p]
        ok = self.system.is_irreducible(p)
        if ok:
            rules = []
            for r in self.system.rules:
                if isinstance(r, RewriteRule):
                    rules.append(r)
                else:
                    top = r.k + len(p) + len(r.prefix) + len(r.rhs_prefix) + 2
                    rules.extend(r.instances(top))
            for r in rules:
                for k in range(1, len(p) + 1):
                    s = p[-k:]
                    if len(r.lhs) > k and r.lhs[:k] == s and r.rhs[:k] != s:
                        ok = False
                        break
                if not ok:
                    break
        self._stable[p] = ok
        return ok

    def ancestors(self, m: Word, max_len: int) -> tuple:
        """Words of length <= max_len that rewrite to ``m``; second item False if truncated."""
        seen = {m}
        queue = deque([m])
        complete = True

        def expansions(w):
            nonlocal complete
            for pos in range(len(w) + 1):
                for r in self.system.rules:
                    if isinstance(r, RewriteRule):
                        if w[pos:pos + len(r.rhs)] == r.rhs:
                            yield w[:pos] + r.lhs + w[pos + len(r.rhs):]
                        continue
                    i = r.k
                    while True:
                        rhs = r.rhs(i)
                        if pos + len(rhs) > len(w):
                            if r.rhs_letter is not None and r.exponent.affine:
                                break
                        if w[pos:pos + len(rhs)] != rhs:
                            if r.rhs_letter is not None and r.exponent.affine:
                                i += 1
                                continue
                            break
                        v = w[:pos] + r.lhs(i) + w[pos + len(rhs):]
                        if len(v) > max_len:
                            complete = False
                            break
                        yield v
                        i += 1

        while queue:
            w = queue.popleft()
            for v in expansions(w):
                if len(v) > max_len:
                    complete = False
                    continue
                if v not in seen:
                    if len(seen) >= self.ancestor_budget:
                        return seen, False
                    seen.add(v)
                    queue.append(v)
        return seen, complete

    def multipliers(self, p, m, max_len=12):
        p = self.normal_form(p)
        m = self.normal_form(m)
        if not p:
            return [m], True
        literal = [m[len(p):]] if m[:len(p)] == p else []
        if not literal and self.stable_prefix(p):
            return [], True
        anc, complete = self.ancestors(m, len(p) + max_len)
        found = set(literal)
        for v in anc:
            if v[:len(p)] == p:
                found.add(self.normal_form(v[len(p):]))
        return sorted(found, key=self.shortlex), complete

    def transformation_check(self, transforms, n):
        def run(w):
            f = list(range(n))
            for x in w:
                t = transforms[x]
                f = [t[i] for i in f]
            return tuple(f)

        def compose(f, g):
            return tuple(g[i] for i in f)

        for r in self.system.rules:
            if isinstance(r, RewriteRule):
                if run(r.lhs) != run(r.rhs):
                    return False
                continue
            # powers of a transformation are eventually periodic; walk i until
            # the pair (x^i, y^e(i)) repeats
            u, v = run(r.prefix), run(r.suffix)
            p, q = run(r.rhs_prefix), run(r.rhs_suffix)
            tx = transforms[r.letter]
            ty = transforms[r.rhs_letter] if r.rhs_letter is not None else tuple(range(n))
            xi = run((r.letter,) * r.k)
            e0 = r.exponent(r.k) if r.rhs_letter is not None else 0
            yi = run(((r.rhs_letter,) * e0) if r.rhs_letter is not None else ())
            step_y = r.exponent.affine and r.rhs_letter is not None
            seen = set()
            while (xi, yi) not in seen:
                seen.add((xi, yi))
                if compose(compose(u, xi), v) != compose(compose(p, yi), q):
                    return False
                xi = compose(xi, tx)
                if step_y:
                    yi = compose(yi, ty)
        return True

    def __repr__(self):
        return f"RewritingMonoid({self.system!r})"


class FiniteMonoid(MonoidHandle):
    """Multiplication table with identity and named generating letters.

    ``letters`` maps each letter to an element index; the letters must
    generate the monoid.  Associativity and the identity laws are checked
    exhaustively on construction.
    """

    is_finite = True

    def __init__(self, table, identity: int = 0, letters: dict | None = None, labels=None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = self.size = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise MonoidError("multiplication table must be square and non-empty")
        for row in self.table:
            for x in row:
                if not 0 <= x < n:
                    raise MonoidError(f"table entry {x} out of range")
        self.identity = identity
        rn = range(n)
        t = self.table
        for a in rn:
            if t[identity][a] != a or t[a][identity] != a:
                raise MonoidError(f"{identity} is not a two-sided identity")
        for a in rn:
            ta = t[a]
            for b in rn:
                tab = t[ta[b]]
                tb = t[b]
                for c in rn:
                    if tab[c] != ta[tb[c]]:
                        raise MonoidError(f"table not associative at ({a}, {b}, {c})")
        self.labels = tuple(labels) if labels is not None else tuple(
            "1" if i == identity else f"m{i}" for i in rn)
        if letters is None:
            letters = {self.labels[i]: i for i in rn if i != identity}
        self.letters = dict(letters)
        self.alphabet = make_alphabet(self.letters)
        self.reps = self._representatives()

    def _representatives(self):
        reps = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for x in self.alphabet:
                b = self.table[a][self.letters[x]]
                if b not in reps:
                    reps[b] = reps[a] + (x,)
                    queue.append(b)
        if len(reps) != self.size:
            raise MonoidError("letters do not generate the monoid")
        return tuple(reps[i] for i in range(self.size))

    @functools.cached_property
    def index_of_rep(self) -> dict:
        return {w: i for i, w in enumerate(self.reps)}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def evaluate(self, w) -> int:
        a = self.identity
        for x in word(w):
            try:
                a = self.table[a][self.letters[x]]
            except KeyError:
                raise MonoidError(f"letter {x!r} not in alphabet {self.alphabet}") from None
        return a

    def normal_form(self, w) -> Word:
        return self.reps[self.evaluate(w)]

    def multiply(self, a, b):
        if isinstance(a, int) and isinstance(b, int):
            return self.table[a][b]
        return super().multiply(a, b)

    def elements(self, max_len=None):
        return sorted(self.reps, key=self.shortlex)

    def multipliers(self, p, m, max_len=12):
        a, b = self.evaluate(p), self.evaluate(m)
        out = [self.reps[n] for n in range(self.size) if self.table[a][n] == b]
        return sorted(out, key=self.shortlex), True

    def transformation_check(self, transforms, n):
        def run(w):
            f = list(range(n))
            for x in w:
                t = transforms[x]
                f = [t[i] for i in f]
            return tuple(f)

        for w in self.reps:
            fw = run(w)
            for z in self.alphabet:
                if run(self.reps[self.evaluate(w + (z,))]) != tuple(transforms[z][i] for i in fw):
                    return False
        return True

    def cayley_relations(self) -> list:
        """Pairs ``(w_m z, w_mz)``: a finite presentation of the monoid over its letters."""
        out = []
        for w in self.reps:
            for z in self.alphabet:
                lhs = w + (z,)
                rhs = self.normal_form(lhs)
                if lhs != rhs:
                    out.append((lhs, rhs))
        return out

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, letters={self.alphabet})"


def monoid_from_transformations(gens: dict, degree: int) -> FiniteMonoid:
    """Monoid of transformations of ``range(degree)`` generated by ``gens`` (name -> tuple)."""
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        f = queue.popleft()
        for g in gens.values():
            h = tuple(g[i] for i in f)  # first f then g (right action)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                queue.append(h)
    table = [[index[tuple(g[i] for i in f)] for g in elems] for f in elems]
    letters = {name: index[tuple(g)] for name, g in gens.items()}
    return FiniteMonoid(table, 0, letters)


# ---------------------------------------------------------------------------
# module-level operations


def normal_form(sys, w) -> Word:
    if isinstance(sys, RewritingSystem):
        return sys.normal_form(word(w))
    return sys.normal_form(w)


def word_equal(m: MonoidHandle, u, v) -> bool:
    return m.equal(u, v)


def multiply(m: MonoidHandle, a, b):
    return m.multiply(a, b)


def enumerate_elements(m: MonoidHandle, max_len: int) -> list:
    return m.elements(max_len)


def handle_for(sys_or_handle) -> MonoidHandle:
    if isinstance(sys_or_handle, MonoidHandle):
        return sys_or_handle
    if isinstance(sys_or_handle, RewritingSystem):
        if not sys_or_handle.rules:
            return FreeMonoid(sys_or_handle.alphabet)
        return RewritingMonoid(sys_or_handle)
    raise TypeError(f"not a monoid: {sys_or_handle!r}")
