"""Line-oriented input format.

A document is a sequence of sections::

    [monoid]
    letters = a b c
    rule: a a -> a
    schema: a b^i a -> a b a (i >= 2)
    schema-bound = 8

    [act-presentation A]
    generators = x
    relation: x . a = x
    relation: x . b^i a = x . b a (2 <= i <= 5)

Tokens are separated by whitespace, ``#`` starts a comment, and the token
``1`` is the empty word.  Finite monoids use ``kind = finite`` with
``elements``, ``identity`` and one ``row:`` per element, or
``kind = transformations`` with ``degree`` and ``gen:`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .acts import ActError, FiniteAct, FreeActElement
from .monoid import (
    Exponent,
    FiniteMonoid,
    FreeMonoid,
    MonoidError,
    RewriteRule,
    RewritingMonoid,
    RewritingSystem,
    RuleSchema,
    check_letter,
    monoid_from_transformations,
    show_word,
)
from .presentations import ActPresentation, PresentationError, Relation


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str, expected=()):
        self.line, self.col, self.message = line, col, message
        self.expected = tuple(expected)
        text = f"line {line}, column {col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


SECTIONS = ("monoid", "act", "act-presentation", "subact", "choices")


# ---------------------------------------------------------------------------
# document model


@dataclass
class MonoidSpec:
    kind: str = "rewriting"
    letters: tuple = ()
    rules: tuple = ()
    schema_bound: int | None = None
    confluence: str | None = None
    elements: tuple = ()
    identity: str | None = None
    rows: tuple = ()  # one tuple of labels per element
    degree: int | None = None
    gens: tuple = ()  # (letter, images) pairs

    def build(self):
        if self.kind == "finite":
            idx = {e: i for i, e in enumerate(self.elements)}
            table = [[idx[x] for x in row] for row in self.rows]
            letters = {x: idx[x] for x in self.letters}
            return FiniteMonoid(table, idx[self.identity], letters, labels=self.elements)
        if self.kind == "transformations":
            return monoid_from_transformations(dict(self.gens), self.degree)
        status = self.confluence or "unchecked"
        sys = RewritingSystem(self.letters, self.rules, status, self.schema_bound)
        if not self.rules:
            return FreeMonoid(self.letters)
        return RewritingMonoid(sys)


@dataclass
class ActSpec:
    name: str
    elements: tuple
    action: tuple  # (element, letter, image) triples

    def build(self, monoid) -> FiniteAct:
        idx = {e: i for i, e in enumerate(self.elements)}
        rows = {x: [None] * len(self.elements) for x in monoid.alphabet}
        for e, x, f in self.action:
            rows[x][idx[e]] = idx[f]
        for x, row in rows.items():
            if None in row:
                missing = self.elements[row.index(None)]
                raise ActError(f"act {self.name or ''}: no action of {x!r} on {missing!r}")
        return FiniteAct(monoid, rows, self.elements)


@dataclass(frozen=True)
class Template:
    """Free act element whose word may contain ``x^i``, ``x^(i+c)`` or ``x^n`` items."""

    generator: str
    items: tuple  # letters, or (letter, Exponent)

    def instance(self, i: int | None) -> FreeActElement:
        w = []
        for it in self.items:
            if isinstance(it, tuple):
                x, e = it
                if e.affine and i is None:
                    raise ValueError("exponent i outside a family")
                n = e(i) if e.affine else e.c
                if n < 0:
                    raise ValueError(f"negative exponent for {x!r} at i = {i}")
                w.extend([x] * n)
            else:
                w.append(it)
        return FreeActElement(self.generator, tuple(w))

    @property
    def is_family(self) -> bool:
        return any(isinstance(it, tuple) and it[1].affine for it in self.items)

    def __str__(self):
        if not self.items:
            return self.generator
        parts = []
        for it in self.items:
            parts.append(f"{it[0]}^{it[1].show()}" if isinstance(it, tuple) else it)
        return f"{self.generator} . {' '.join(parts)}"


@dataclass(frozen=True)
class Family:
    lhs: Template
    rhs: Template
    lo: int
    hi: int

    def expand(self) -> list:
        return [Relation(self.lhs.instance(i), self.rhs.instance(i)) for i in range(self.lo, self.hi + 1)]

    def __str__(self):
        return f"{self.lhs} = {self.rhs} ({self.lo} <= i <= {self.hi})"


@dataclass
class PresentationSpec:
    name: str
    generators: tuple = ()
    relations: tuple = ()  # Relation or Family
    embed: tuple = ()  # (generator, target text)

    def expanded(self) -> list:
        out = []
        for r in self.relations:
            out.extend(r.expand() if isinstance(r, Family) else [r])
        return out

    def build(self, monoid) -> ActPresentation:
        return ActPresentation(monoid, self.generators, self.expanded())


@dataclass
class SubactSpec:
    name: str
    of: str | None = None
    witnesses: tuple = ()  # (name, FreeActElement)
    elements: tuple = ()
    complement: tuple = ()  # words


@dataclass
class Document:
    monoid: MonoidSpec | None = None
    acts: dict = field(default_factory=dict)
    presentations: dict = field(default_factory=dict)
    subacts: dict = field(default_factory=dict)
    choices: dict = field(default_factory=dict)

    _built: object = field(default=None, repr=False, compare=False)

    def monoid_handle(self):
        if self.monoid is None:
            raise ParseError(1, 1, "document has no [monoid] section")
        if self._built is None:
            self._built = self.monoid.build()
        return self._built

    def act(self, name: str = ""):
        spec = self.acts.get(name) or (next(iter(self.acts.values())) if self.acts and not name else None)
        if spec is None:
            raise KeyError(f"no act named {name!r}")
        return spec.build(self.monoid_handle())

    def presentation(self, name: str | None = None) -> ActPresentation:
        spec = self._pick(self.presentations, name, "act-presentation")
        return spec.build(self.monoid_handle())

    def presentation_spec(self, name: str | None = None) -> PresentationSpec:
        return self._pick(self.presentations, name, "act-presentation")

    def subact(self, name: str | None = None) -> SubactSpec:
        return self._pick(self.subacts, name, "subact")

    @staticmethod
    def _pick(table, name, what):
        if name is None:
            if len(table) != 1:
                raise KeyError(f"expected exactly one [{what}] section, found {len(table)}")
            return next(iter(table.values()))
        try:
            return table[name]
        except KeyError:
            raise KeyError(f"no [{what}] section named {name!r}") from None


# ---------------------------------------------------------------------------
# lexing helpers


_EXP = re.compile(r"^(?P<x>[^\s^]+)\^(?:(?P<n>\d+)|i|\(i(?P<c>[+-]\d+)\))$")
_COND = re.compile(r"\(\s*(?:(?P<lo>-?\d+)\s*<=\s*i\s*<=\s*(?P<hi>-?\d+)|i\s*>=\s*(?P<k>-?\d+))\s*\)\s*$")


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text

    def error(self, col: int, message: str, expected=()):
        return ParseError(self.number, col, message, expected)

    def tokens(self, start: int, end: int | None = None) -> list:
        """``(token, column)`` pairs of ``text[start:end]`` (columns are 1-based)."""
        end = len(self.text) if end is None else end
        return [(m.group(), start + m.start() + 1) for m in re.finditer(r"\S+", self.text[start:end])]


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


def _letter(line, tok, col, letters=None):
    try:
        check_letter(tok)
    except MonoidError as exc:
        raise line.error(col, str(exc), ("letter",)) from None
    if letters is not None and tok not in letters:
        raise line.error(col, f"unknown letter {tok!r}", tuple(letters))
    return tok


def _items(line, toks, letters, allow_exp=True, allow_family=True):
    """Word items from tokens; ``1`` alone is the empty word."""
    if len(toks) == 1 and toks[0][0] == "1":
        return ()
    out = []
    for tok, col in toks:
        if tok == "1":
            raise line.error(col, "'1' must stand alone", ("letter",))
        m = _EXP.match(tok)
        if "^" in tok:
            if not m or not allow_exp:
                raise line.error(col, f"bad exponent in {tok!r}", ("x^i", "x^(i-1)", "x^3"))
            x = _letter(line, m.group("x"), col, letters)
            if m.group("n") is not None:
                out.append((x, Exponent(False, int(m.group("n")))))
            else:
                if not allow_family:
                    raise line.error(col, "exponent i outside a family", ("letter",))
                c = int(m.group("c")) if m.group("c") else 0
                out.append((x, Exponent(True, c)))
        else:
            out.append(_letter(line, tok, col, letters))
    return tuple(out)


def _plain(line, items, col):
    w = []
    for it in items:
        if isinstance(it, tuple):
            x, e = it
            if e.affine:
                raise line.error(col, "exponent i outside a family", ("letter",))
            w.extend([x] * e.c)
        else:
            w.append(it)
    return tuple(w)


def _split_condition(line, start):
    """Split an optional trailing ``(lo <= i <= hi)`` / ``(i >= k)``."""
    m = _COND.search(line.text, start)
    if not m:
        return len(line.text), None
    if m.group("k") is not None:
        return m.start(), ("ge", int(m.group("k")))
    return m.start(), ("range", int(m.group("lo")), int(m.group("hi")))


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.lines = [_Line(i + 1, _strip_comment(t).rstrip()) for i, t in enumerate(text.splitlines())]
        self.doc = Document()
        self.section = None
        self.obj = None

    def parse(self) -> Document:
        for line in self.lines:
            if not line.text.strip():
                continue
            try:
                self.line(line)
            except ParseError:
                raise
            except (MonoidError, ActError, PresentationError, ValueError, KeyError) as exc:
                raise line.error(1, str(exc)) from None
        self.finish(self.lines[-1] if self.lines else _Line(1, ""))
        return self.doc

    def line(self, line):
        text = line.text
        lead = len(text) - len(text.lstrip())
        body = text.strip()
        if body.startswith("["):
            return self.header(line, lead)
        if self.section is None:
            raise line.error(lead + 1, "content before any section", tuple(f"[{s}]" for s in SECTIONS))
        m = re.match(r"([A-Za-z][\w-]*)\s*(=|:)", body)
        if not m:
            raise line.error(lead + 1, "expected a key", ("key = value", "directive:"))
        key, sep = m.group(1), m.group(2)
        start = lead + m.end()
        getattr(self, "s_" + self.section.replace("-", "_"))(line, key, sep, start, lead + 1)

    def header(self, line, lead):
        self.finish(line)
        m = re.fullmatch(r"\s*\[\s*([a-z-]+)(?:\s+(\S+))?\s*\]\s*", line.text)
        if not m:
            raise line.error(lead + 1, "malformed section header", tuple(f"[{s}]" for s in SECTIONS))
        kind, name = m.group(1), m.group(2)
        if kind not in SECTIONS:
            raise line.error(lead + 2, f"unknown section {kind!r}", SECTIONS)
        if kind in ("act-presentation", "subact") and name is None:
            raise line.error(lead + 2, f"[{kind}] needs a name", ("name",))
        if kind in ("monoid", "choices") and name is not None:
            raise line.error(m.start(2) + 1, f"[{kind}] takes no name", ("]",))
        self.section = kind
        if kind == "monoid":
            if self.doc.monoid is not None:
                raise line.error(lead + 1, "only one [monoid] section is allowed")
            self.obj = self.doc.monoid = MonoidSpec()
            self._mono = {"rules": [], "rows": {}, "gens": []}
        elif kind == "act":
            name = name or ""
            if name in self.doc.acts:
                raise line.error(lead + 1, f"duplicate act {name!r}")
            self.obj = ActSpec(name, (), ())
            self._act = []
            self.doc.acts[name] = self.obj
        elif kind == "act-presentation":
            if name in self.doc.presentations:
                raise line.error(lead + 1, f"duplicate presentation {name!r}")
            self.obj = PresentationSpec(name)
            self._rels, self._embed = [], []
            self.doc.presentations[name] = self.obj
        elif kind == "subact":
            if name in self.doc.subacts:
                raise line.error(lead + 1, f"duplicate subact {name!r}")
            self.obj = SubactSpec(name)
            self._wit = []
            self.doc.subacts[name] = self.obj
        else:
            self.obj = self.doc.choices

    def finish(self, line):
        """Close the open section, checking what can be checked locally."""
        if self.section == "monoid":
            spec = self.obj
            spec.rules = tuple(self._mono["rules"])
            if spec.kind == "finite":
                missing = [e for e in spec.elements if e not in self._mono["rows"]]
                if missing:
                    raise line.error(1, f"no row for element {missing[0]!r}", ("row:",))
                spec.rows = tuple(self._mono["rows"][e] for e in spec.elements)
                if spec.identity is None:
                    raise line.error(1, "finite monoid needs an identity", ("identity =",))
            if spec.kind == "transformations":
                spec.gens = tuple(self._mono["gens"])
                spec.letters = tuple(x for x, _ in spec.gens)
                if spec.degree is None:
                    raise line.error(1, "transformation monoid needs a degree", ("degree =",))
            self.doc._built = None
            try:
                self.doc.monoid_handle()
            except (MonoidError, ValueError, KeyError) as exc:
                raise line.error(1, f"invalid monoid: {exc}") from None
        elif self.section == "act":
            self.obj.action = tuple(self._act)
        elif self.section == "act-presentation":
            self.obj.relations = tuple(self._rels)
            self.obj.embed = tuple(self._embed)
        elif self.section == "subact":
            self.obj.witnesses = tuple(self._wit)
        self.section = None

    # -- sections ---------------------------------------------------------

    def _letters(self):
        spec = self.doc.monoid
        if spec is None:
            return None
        return set(spec.letters)

    def _need(self, line, sep, want, col):
        if sep != want:
            raise line.error(col, "wrong separator", (want,))

    def s_monoid(self, line, key, sep, start, col):
        spec = self.obj
        toks = line.tokens(start)
        if key == "letters":
            self._need(line, sep, "=", col)
            spec.letters = tuple(_letter(line, t, c) for t, c in toks)
        elif key == "kind":
            self._need(line, sep, "=", col)
            if len(toks) != 1 or toks[0][0] not in ("rewriting", "finite", "transformations"):
                raise line.error(col, "bad monoid kind", ("rewriting", "finite", "transformations"))
            spec.kind = toks[0][0]
        elif key == "rule":
            self._need(line, sep, ":", col)
            spec.kind == "rewriting" or self._kind_error(line, col)
            lhs, rhs = self._arrow(line, toks)
            self._mono["rules"].append(RewriteRule(
                _plain(line, _items(line, lhs, self._letters(), allow_family=False), col),
                _plain(line, _items(line, rhs, self._letters(), allow_family=False), col)))
        elif key == "schema":
            self._need(line, sep, ":", col)
            spec.kind == "rewriting" or self._kind_error(line, col)
            self._mono["rules"].append(self._schema(line, start))
        elif key == "schema-bound":
            self._need(line, sep, "=", col)
            spec.schema_bound = self._int(line, toks)
        elif key == "confluence":
            self._need(line, sep, "=", col)
            if len(toks) != 1 or not re.fullmatch(r"asserted|unchecked|checked\(\d+\)", toks[0][0]):
                raise line.error(col, "bad confluence status", ("asserted", "checked(N)", "unchecked"))
            spec.confluence = toks[0][0]
        elif key == "elements":
            self._need(line, sep, "=", col)
            spec.elements = tuple(t for t, _ in toks)
            if len(set(spec.elements)) != len(spec.elements) or not spec.elements:
                raise line.error(col, "elements must be distinct and non-empty")
        elif key == "identity":
            self._need(line, sep, "=", col)
            if len(toks) != 1 or toks[0][0] not in spec.elements:
                raise line.error(col, "identity must be one declared element", spec.elements)
            spec.identity = toks[0][0]
        elif key == "row":
            self._need(line, sep, ":", col)
            eq = [i for i, (t, _) in enumerate(toks) if t == "="]
            if len(eq) != 1 or eq[0] != 1:
                raise line.error(col, "row syntax is 'row: e = p1 p2 ...'", ("=",))
            e = toks[0][0]
            vals = tuple(t for t, _ in toks[2:])
            for t, c in [toks[0]] + toks[2:]:
                if t not in spec.elements:
                    raise line.error(c, f"unknown element {t!r}", spec.elements)
            if len(vals) != len(spec.elements):
                raise line.error(col, f"row needs {len(spec.elements)} entries")
            self._mono["rows"][e] = vals
        elif key == "degree":
            self._need(line, sep, "=", col)
            spec.degree = self._int(line, toks)
            if spec.degree < 1:
                raise line.error(col, "degree must be positive")
        elif key == "gen":
            self._need(line, sep, ":", col)
            if len(toks) < 3 or toks[1][0] != "=":
                raise line.error(col, "gen syntax is 'gen: s = i0 i1 ...'", ("=",))
            x = _letter(line, *toks[0])
            try:
                imgs = tuple(int(t) for t, _ in toks[2:])
            except ValueError:
                raise line.error(toks[2][1], "images must be integers") from None
            if spec.degree is None or len(imgs) != spec.degree or any(not 0 <= i < spec.degree for i in imgs):
                raise line.error(col, "images must list the degree's points in range")
            self._mono["gens"].append((x, imgs))
        else:
            raise line.error(col, f"unknown key {key!r}",
                             ("letters", "kind", "rule:", "schema:", "schema-bound", "confluence",
                              "elements", "identity", "row:", "degree", "gen:"))

    def _kind_error(self, line, col):
        raise line.error(col, "rules need kind = rewriting")

    def _int(self, line, toks):
        if len(toks) != 1 or not re.fullmatch(r"\d+", toks[0][0]):
            raise line.error(toks[0][1] if toks else 1, "expected an integer", ("integer",))
        return int(toks[0][0])

    def _arrow(self, line, toks):
        idx = [i for i, (t, _) in enumerate(toks) if t == "->"]
        if len(idx) != 1:
            raise line.error(toks[0][1] if toks else 1, "expected exactly one '->'", ("->",))
        lhs, rhs = toks[:idx[0]], toks[idx[0] + 1:]
        if not lhs or not rhs:
            raise line.error(toks[idx[0]][1], "both sides of a rule are required", ("word", "1"))
        return lhs, rhs

    def _schema(self, line, start):
        end, cond = _split_condition(line, start)
        if cond is None or cond[0] != "ge":
            raise line.error(len(line.text) + 1, "schema needs a bound '(i >= k)'", ("(i >= k)",))
        lhs, rhs = self._arrow(line, line.tokens(start, end))
        letters = self._letters()
        li = _items(line, lhs, letters)
        ri = _items(line, rhs, letters)
        pumped = [k for k, it in enumerate(li) if isinstance(it, tuple)]
        if len(pumped) != 1 or li[pumped[0]][1] != Exponent(True, 0):
            raise line.error(lhs[0][1], "left side needs exactly one 'x^i'", ("x^i",))
        p = pumped[0]
        rp = [k for k, it in enumerate(ri) if isinstance(it, tuple)]
        if len(rp) > 1:
            raise line.error(rhs[0][1], "right side may pump at most one letter", ("y^i", "y^(i+c)"))
        if any(isinstance(it, tuple) for k, it in enumerate(li) if k != p):
            raise line.error(lhs[0][1], "left side needs exactly one 'x^i'")
        kwargs = {}
        if rp:
            q = rp[0]
            kwargs = dict(rhs_prefix=ri[:q], rhs_letter=ri[q][0], exponent=ri[q][1], rhs_suffix=ri[q + 1:])
        else:
            kwargs = dict(rhs_prefix=ri)
        return RuleSchema(li[:p], li[p][0], cond[1], li[p + 1:], **kwargs)

    def _element(self, line, toks, gens, letters, family=False):
        if not toks:
            raise line.error(len(line.text) + 1, "expected an element", ("generator",))
        g, c = toks[0]
        if gens is not None and g not in gens:
            raise line.error(c, f"unknown generator {g!r}", tuple(gens))
        if len(toks) == 1:
            return Template(g, ())
        if toks[1][0] != ".":
            raise line.error(toks[1][1], "expected '.' after the generator", (".",))
        if len(toks) == 2:
            raise line.error(toks[1][1] + 1, "expected a word after '.'", ("word", "1"))
        return Template(g, _items(line, toks[2:], letters, allow_family=family))

    def _equation(self, line, start, gens, family_ok=True):
        end, cond = _split_condition(line, start)
        toks = line.tokens(start, end)
        idx = [i for i, (t, _) in enumerate(toks) if t == "="]
        if len(idx) != 1:
            raise line.error(toks[0][1] if toks else start + 1, "expected exactly one '='", ("=",))
        letters = self._letters()
        lhs = self._element(line, toks[:idx[0]], gens, letters, family=True)
        rhs = self._element(line, toks[idx[0] + 1:], gens, letters, family=True)
        if cond is None:
            if lhs.is_family or rhs.is_family:
                raise line.error(len(line.text) + 1, "family needs a range", ("(lo <= i <= hi)",))
            return Relation(lhs.instance(None), rhs.instance(None))
        if cond[0] != "range" or not family_ok:
            raise line.error(end + 1, "relation families need '(lo <= i <= hi)'", ("(lo <= i <= hi)",))
        if cond[1] > cond[2]:
            raise line.error(end + 1, "empty range")
        fam = Family(lhs, rhs, cond[1], cond[2])
        fam.expand()
        return fam

    def s_act(self, line, key, sep, start, col):
        spec = self.obj
        toks = line.tokens(start)
        if key == "elements":
            self._need(line, sep, "=", col)
            spec.elements = tuple(t for t, _ in toks)
            if not spec.elements or len(set(spec.elements)) != len(spec.elements):
                raise line.error(col, "elements must be distinct and non-empty")
        elif key == "action":
            self._need(line, sep, ":", col)
            if len(toks) != 5 or toks[1][0] != "." or toks[3][0] != "=":
                raise line.error(col, "action syntax is 'action: p . s = q'", (".", "="))
            (e, ce), (x, cx), (f, cf) = toks[0], toks[2], toks[4]
            for t, c in ((e, ce), (f, cf)):
                if t not in spec.elements:
                    raise line.error(c, f"unknown element {t!r}", spec.elements)
            _letter(line, x, cx, self._letters())
            self._act.append((e, x, f))
        else:
            raise line.error(col, f"unknown key {key!r}", ("elements", "action:"))

    def s_act_presentation(self, line, key, sep, start, col):
        spec = self.obj
        toks = line.tokens(start)
        if key == "generators":
            self._need(line, sep, "=", col)
            gens = []
            for t, c in toks:
                _letter(line, t, c)
                if self.doc.monoid and t in self.doc.monoid.letters:
                    raise line.error(c, f"generator {t!r} clashes with a monoid letter")
                gens.append(t)
            if not gens or len(set(gens)) != len(gens):
                raise line.error(col, "generators must be distinct and non-empty", ("generator",))
            spec.generators = tuple(gens)
        elif key == "relation":
            self._need(line, sep, ":", col)
            if not spec.generators:
                raise line.error(col, "declare generators before relations", ("generators =",))
            self._rels.append(self._equation(line, start, set(spec.generators)))
        elif key == "embed":
            self._need(line, sep, ":", col)
            if len(toks) < 3 or toks[1][0] != "=":
                raise line.error(col, "embed syntax is 'embed: x = target'", ("=",))
            if toks[0][0] not in spec.generators:
                raise line.error(toks[0][1], f"unknown generator {toks[0][0]!r}", spec.generators)
            self._embed.append((toks[0][0], " ".join(t for t, _ in toks[2:])))
        else:
            raise line.error(col, f"unknown key {key!r}", ("generators", "relation:", "embed:"))

    def s_subact(self, line, key, sep, start, col):
        spec = self.obj
        toks = line.tokens(start)
        if key == "of":
            self._need(line, sep, "=", col)
            if len(toks) != 1:
                raise line.error(col, "expected a presentation name", ("name",))
            spec.of = toks[0][0]
        elif key == "witness":
            self._need(line, sep, ":", col)
            if len(toks) < 3 or toks[1][0] != "=":
                raise line.error(col, "witness syntax is 'witness: y = x . w'", ("=",))
            name = _letter(line, *toks[0])
            t = self._element(line, toks[2:], None, self._letters())
            self._wit.append((name, t.instance(None)))
        elif key == "elements":
            self._need(line, sep, "=", col)
            spec.elements = tuple(t for t, _ in toks)
        elif key == "complement":
            self._need(line, sep, "=", col)
            words, cur = [], []
            for t, c in toks + [(";", 0)]:
                if t == ";":
                    if not cur:
                        raise line.error(c or col, "empty complement word", ("word", "1"))
                    words.append(_plain(line, _items(line, cur, self._letters(), allow_family=False), col))
                    cur = []
                else:
                    cur.append((t, c))
            spec.complement = tuple(words)
        else:
            raise line.error(col, f"unknown key {key!r}", ("of", "witness:", "elements", "complement"))

    def s_choices(self, line, key, sep, start, col):
        if key != "choice" or sep != ":":
            raise line.error(col, f"unknown key {key!r}", ("choice:",))
        toks = line.tokens(start)
        if len(toks) < 3 or toks[1][0] != "=":
            raise line.error(col, "choice syntax is 'choice: name = value'", ("=",))
        self.doc.choices[toks[0][0]] = " ".join(t for t, _ in toks[2:])


def parse(text: str) -> Document:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# serializer


def _rule_text(r) -> str:
    return f"schema: {r}" if isinstance(r, RuleSchema) else f"rule: {r}"


def serialize(doc: Document) -> str:
    out = []
    m = doc.monoid
    if m is not None:
        out.append("[monoid]")
        if m.kind != "rewriting":
            out.append(f"kind = {m.kind}")
        if m.kind == "finite":
            out.append(f"elements = {' '.join(m.elements)}")
            out.append(f"identity = {m.identity}")
            out.append(f"letters = {' '.join(m.letters)}")
            for e, row in zip(m.elements, m.rows):
                out.append(f"row: {e} = {' '.join(row)}")
        elif m.kind == "transformations":
            out.append(f"degree = {m.degree}")
            for x, imgs in m.gens:
                out.append(f"gen: {x} = {' '.join(map(str, imgs))}")
        else:
            out.append(f"letters = {' '.join(m.letters)}")
            out.extend(_rule_text(r) for r in m.rules)
            if m.schema_bound is not None:
                out.append(f"schema-bound = {m.schema_bound}")
            if m.confluence is not None:
                out.append(f"confluence = {m.confluence}")
        out.append("")
    for name, a in doc.acts.items():
        out.append(f"[act {name}]" if name else "[act]")
        out.append(f"elements = {' '.join(a.elements)}")
        out.extend(f"action: {e} . {x} = {f}" for e, x, f in a.action)
        out.append("")
    for name, p in doc.presentations.items():
        out.append(f"[act-presentation {name}]")
        out.append(f"generators = {' '.join(p.generators)}")
        out.extend(f"relation: {r}" for r in p.relations)
        out.extend(f"embed: {g} = {t}" for g, t in p.embed)
        out.append("")
    for name, s in doc.subacts.items():
        out.append(f"[subact {name}]")
        if s.of is not None:
            out.append(f"of = {s.of}")
        out.extend(f"witness: {n} = {w}" for n, w in s.witnesses)
        if s.elements:
            out.append(f"elements = {' '.join(s.elements)}")
        if s.complement:
            out.append(f"complement = {' ; '.join(show_word(w) for w in s.complement)}")
        out.append("")
    if doc.choices:
        out.append("[choices]")
        out.extend(f"choice: {k} = {v}" for k, v in doc.choices.items())
        out.append("")
    return "\n".join(out)


def presentation_text(pres: ActPresentation, name: str = "P") -> str:
    lines = [f"[act-presentation {name}]", f"generators = {' '.join(pres.generators)}"]
    lines.extend(f"relation: {r}" for r in pres.relations)
    return "\n".join(lines) + "\n"


def parse_element(text: str, monoid=None) -> FreeActElement:
    """CLI element syntax ``x . a b`` (or ``x``); ``1`` is the empty word."""
    line = _Line(1, text)
    toks = line.tokens(0)
    p = _Parser("")
    if monoid is not None:
        p.doc.monoid = MonoidSpec(letters=tuple(monoid.alphabet))
    t = p._element(line, toks, None, p._letters())
    return t.instance(None)
