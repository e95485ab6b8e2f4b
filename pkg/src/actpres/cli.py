"""Command line interface.

Results go to stdout as ``KEY<TAB>VALUE`` lines, diagnostics to stderr.
Exit codes: 0 proved / true, 1 disproved / false, 2 unknown, 3 error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .acts import ActError, FreeActElement, act_from_presentation
from .constructions import (
    ConstructionError,
    FiniteModel,
    LargeSubactContext,
    WordModel,
    extension_presentation,
    large_subact_presentation,
    rees_quotient_presentation,
    subact_presentation_general,
    subact_witnesses,
    union_component_presentation,
    union_presentation,
    union_witnesses,
)
from .monoid import FiniteMonoid, MonoidError, show_word, word
from .presentations import (
    AddGenerators,
    AddRelations,
    PresentationError,
    Proved,
    Disproved,
    Relation,
    RemoveGenerators,
    RemoveRelations,
    generating_set,
    is_consequence,
    tietze_apply,
    verify_presentation,
    violations,
)
from .textfmt import Document, ParseError, parse, parse_element, presentation_text

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def out(key, value=""):
    print(f"{key}\t{value}")


def diag(msg):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# loading


def load(paths) -> Document:
    """Parse and merge documents; at most one distinct monoid across them."""
    merged = Document()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        try:
            doc = parse(text)
        except ParseError as exc:
            raise CliError(f"{path}: {exc}") from None
        if doc.monoid is not None:
            if merged.monoid is not None and merged.monoid != doc.monoid:
                raise CliError(f"{path}: declares a different monoid")
            merged.monoid = doc.monoid
        for table in ("acts", "presentations", "subacts"):
            mine, theirs = getattr(merged, table), getattr(doc, table)
            for k, v in theirs.items():
                if k in mine:
                    raise CliError(f"{path}: duplicate section {k!r}")
                mine[k] = v
        merged.choices.update(doc.choices)
    if merged.monoid is None:
        raise CliError("no [monoid] section in the input")
    return merged


def _word(text, monoid):
    try:
        w = word(text)
        monoid.check_word(w)
    except MonoidError as exc:
        raise CliError(str(exc)) from None
    return w


def _element(text, monoid):
    try:
        return parse_element(text, monoid)
    except ParseError as exc:
        raise CliError(f"bad element {text!r}: {exc.message}") from None


def _ambient(doc, primary: str, others=()):
    """A model holding the generators of ``primary`` and of ``others``."""
    M = doc.monoid_handle()
    pres = doc.presentation(primary)
    specs = [doc.presentation_spec(primary)] + [doc.presentation_spec(o) for o in others]
    embeds = {g: t for s in specs for g, t in s.embed}
    if doc.acts:
        act = doc.act()
        gen_map = {}
        for s in specs:
            for g in s.generators:
                if g not in embeds:
                    raise CliError(f"generator {g!r} has no embed: line into the act")
                if embeds[g] not in act.labels:
                    raise CliError(f"embed target {embeds[g]!r} is not an act element")
                gen_map[g] = act.labels.index(embeds[g])
        return FiniteModel(act, gen_map)
    if isinstance(M, FiniteMonoid):
        oracle = act_from_presentation(pres)
        model = FiniteModel(oracle.act, oracle.gen_map)
        extra = {}
        for s in specs[1:]:
            for g in s.generators:
                if g not in embeds:
                    raise CliError(f"generator {g!r} needs an embed: line over {primary}'s generators")
                extra[g] = model.value(_element(embeds[g], M))
        return model.extended(extra)
    gen_map = {}
    for s in specs:
        for g in s.generators:
            gen_map[g] = _element(embeds[g], M) if g in embeds else FreeActElement(g)
    model = WordModel(M, gen_map)
    for s in specs:
        for r in s.expanded():
            if model.value(r.lhs) != model.value(r.rhs):
                raise CliError(f"relation {r} does not hold in the free-act model; add embed: lines")
    return model


# ---------------------------------------------------------------------------
# subcommands


def cmd_nf(args):
    M = load([args.file]).monoid_handle()
    out("nf", show_word(M.normal_form(_word(args.word, M))))
    return EXIT_TRUE


def cmd_eq(args):
    M = load([args.file]).monoid_handle()
    same = M.equal(_word(args.w1, M), _word(args.w2, M))
    out("equal", "true" if same else "false")
    return EXIT_TRUE if same else EXIT_FALSE


def cmd_consequence(args):
    doc = load([args.file])
    pres = doc.presentation(args.presentation)
    M = pres.monoid
    lhs, rhs = _element(args.lhs, M), _element(args.rhs, M)
    v = is_consequence(pres, lhs, rhs, max_steps=args.max_steps, max_word_len=args.max_word_len)
    out("verdict", v.verdict)
    if isinstance(v, Proved):
        out("steps", len(v.certificate))
        text = v.certificate.to_text()
        if text:
            print(text.rstrip("\n"))
        return EXIT_TRUE
    out("reason", v.reason)
    return EXIT_FALSE if isinstance(v, Disproved) else EXIT_UNKNOWN


def _witness_map(doc, sub_name, model, generators):
    spec = doc.subact(sub_name)
    if spec.witnesses:
        return {n: w for n, w in spec.witnesses}
    if spec.elements and isinstance(model, FiniteModel):
        labels = model.act.labels
        vals = {}
        for i, e in enumerate(spec.elements):
            if e not in labels:
                raise CliError(f"subact element {e!r} is not an act element")
            vals[f"y{i}"] = labels.index(e)
        return subact_witnesses(model, generators, vals)
    raise CliError(f"[subact {spec.name}] needs witness: lines")


def _construct(kind, doc, depth):
    M = doc.monoid_handle()
    ch = doc.choices
    if kind == "rees-quotient":
        presA = doc.presentation("A")
        model = _ambient(doc, "A")
        wit = _witness_map(doc, "B", model, presA.generators)
        in_B = model.subact([model.value(w) for w in wit.values()])
        return rees_quotient_presentation(presA, model, in_B, wit, zero=ch.get("zero", "0"))
    if kind == "extension":
        presB, presQ = doc.presentation("B"), doc.presentation("Q")
        zero = ch.get("zero")
        spec = doc.presentation_spec("Q")
        if zero is not None:
            spec = type(spec)(spec.name, tuple(g for g in spec.generators if g != zero),
                              spec.relations, spec.embed)
            doc.presentations["Q'"] = spec
        model = _ambient(doc, "B", ["Q'" if zero is not None else "Q"])
        in_B = model.subact([model.value(FreeActElement(g)) for g in presB.generators])
        return extension_presentation(presB, presQ, model, in_B, zero=zero)
    if kind == "union":
        presA, presB = doc.presentation("A"), doc.presentation("B")
        model = _ambient(doc, "A", ["B"])
        keys = sorted(k for k in ch if k.startswith("pair"))
        if keys:
            pairs = []
            for k in keys:
                left, sep, right = ch[k].partition("~")
                if not sep:
                    raise CliError(f"choice {k} must read 'lhs ~ rhs'")
                pairs.append((_element(left.strip(), M), _element(right.strip(), M)))
        elif isinstance(model, FiniteModel):
            A = model.act.orbit([model.value(FreeActElement(g)) for g in presA.generators])
            B = model.act.orbit([model.value(FreeActElement(g)) for g in presB.generators])
            U = generating_set(model.act, sorted(set(A) & set(B)))
            pairs = union_witnesses(model, presA.generators, presB.generators, U)
        else:
            raise CliError("union over an infinite monoid needs pair choices")
        return union_presentation(presA, presB, model, pairs)
    if kind == "union-component":
        presC = doc.presentation("C")
        presI = doc.presentation("I") if "I" in doc.presentations else None
        model = _ambient(doc, "C", ["I"] if presI is not None else [])
        wit = _witness_map(doc, "B", model, presC.generators)
        in_B = model.subact([model.value(w) for w in wit.values()])
        return union_component_presentation(presC, model, in_B, presI)
    if kind == "subact":
        presA = doc.presentation("A")
        model = _ambient(doc, "A")
        if depth is not None and isinstance(model, WordModel):
            model.depth = depth
        wit = _witness_map(doc, "B", model, presA.generators)
        return subact_presentation_general(presA, model, wit, depth=depth)
    if kind == "large-subact":
        presA = doc.presentation("A")
        spec = doc.subact("B")
        bound = doc.monoid.schema_bound
        x = presA.generators[0]
        if isinstance(M, FiniteMonoid):
            model = _ambient(doc, "A")
            comp = {model.value(FreeActElement(x, w)) for w in spec.complement}
            members = [a for a in model.act.elements if a not in comp]
            ctx = LargeSubactContext.from_finite(presA, model.act, model.gen_map, members)
        else:
            if presA.relations or len(presA.generators) != 1:
                raise CliError("large-subact over an infinite monoid needs A = <x | > (a right ideal)")
            ctx = LargeSubactContext.right_ideal(M, spec.complement, x, schema_bound=bound)
        return large_subact_presentation(ctx)
    raise CliError(f"unknown construction {kind!r}")


def cmd_construct(args):
    doc = load(args.files)
    con = _construct(args.kind, doc, args.depth)
    print(con.transcript().rstrip("\n"))
    for g in con.gaps:
        diag(f"gap: {g}")
    return EXIT_UNKNOWN if con.gaps else EXIT_TRUE


def parse_moves(text, monoid):
    moves = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise CliError(f"moves line {n}: expected 'kind: ...'")
        key, rest = key.strip(), rest.strip()
        try:
            if key == "add":
                lhs, _, rhs = rest.partition("=")
                moves.append(AddRelations([Relation(_element(lhs.strip(), monoid),
                                                    _element(rhs.strip(), monoid))]))
            elif key == "remove":
                moves.append(RemoveRelations([int(t) for t in rest.split()]))
            elif key == "add-generator":
                name, _, w = rest.partition("=")
                moves.append(AddGenerators([(name.strip(), _element(w.strip(), monoid))]))
            elif key == "remove-generator":
                moves.append(RemoveGenerators(rest.split()))
            else:
                raise CliError(f"moves line {n}: unknown move {key!r}")
        except ValueError as exc:
            raise CliError(f"moves line {n}: {exc}") from None
    return moves


def cmd_tietze(args):
    doc = load([args.file])
    pres = doc.presentation(args.presentation)
    with open(args.moves, encoding="utf-8") as fh:
        moves = parse_moves(fh.read(), pres.monoid)
    for i, mv in enumerate(moves):
        pres = tietze_apply(pres, mv, max_steps=args.max_steps, max_word_len=args.max_word_len)
        out("move", f"{i}\t{type(mv).__name__}\tok")
    print(presentation_text(pres, args.presentation or "P").rstrip("\n"))
    return EXIT_TRUE


def cmd_verify(args):
    doc = load([args.pres, args.act])
    name = args.presentation
    pres = doc.presentation(name)
    model = _ambient(doc, doc.presentation_spec(name).name)
    if not isinstance(model, FiniteModel):
        raise CliError("verify needs a finite monoid")
    bad = violations(pres, model.act, model.gen_map)
    ok = verify_presentation(pres, model.act, model.gen_map)
    for r in bad:
        diag(f"violated: {r}")
    out("verify", "true" if ok else "false")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_corpus(args):
    from . import corpus

    if args.action == "show":
        if args.case not in corpus.CASES:
            raise CliError(f"unknown case {args.case!r}; known: {', '.join(corpus.CASES)}")
        print(corpus.CASES[args.case].document.rstrip("\n"))
        return EXIT_TRUE
    if args.action == "list":
        for c in corpus.CASES.values():
            out(c.id, c.title)
        return EXIT_TRUE
    if args.case and args.case not in corpus.CASES:
        raise CliError(f"unknown case {args.case!r}; known: {', '.join(corpus.CASES)}")
    failed = 0
    for cid, secs, checks in corpus.run(args.case):
        for c in checks:
            print(f"{cid}\t{c.line()}")
            failed += not c.ok
        diag(f"{cid}: {len(checks)} checks in {secs:.2f}s")
    out("failed", failed)
    return EXIT_TRUE if not failed else EXIT_FALSE


def cmd_fuzz(args):
    from .fuzz import CHECKS

    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(10 ** 6)
    out("seed", seed)
    names = [args.construction] if args.construction else list(CHECKS)
    failed = 0
    t0 = time.perf_counter()
    for name in names:
        ok_count = 0
        for s in range(seed, seed + args.seeds):
            try:
                ok, _ = CHECKS[name](s, args.max_monoid, args.max_act)
            except (ConstructionError, ActError, MonoidError, PresentationError) as exc:
                ok = False
                diag(f"{name} seed {s}: {exc}")
            if not ok:
                failed += 1
                out("mismatch", f"{name}\t{s}")
            ok_count += bool(ok)
        out(name, f"{ok_count}/{args.seeds}")
    diag(f"fuzz-oracle finished in {time.perf_counter() - t0:.1f}s")
    out("failed", failed)
    return EXIT_TRUE if not failed else EXIT_FALSE


# ---------------------------------------------------------------------------


KINDS = ("rees-quotient", "extension", "union", "union-component", "subact", "large-subact")


def build_parser():
    p = _Parser(prog="actpres", description="Presentations of monoid acts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("nf", help="normal form of a monoid word")
    s.add_argument("file")
    s.add_argument("word", help="space separated letters; 1 is the empty word")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("eq", help="equality of two monoid words")
    s.add_argument("file")
    s.add_argument("w1")
    s.add_argument("w2")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("consequence", help="decide whether lhs = rhs follows from a presentation")
    s.add_argument("file")
    s.add_argument("lhs", help="element such as 'x . a b'")
    s.add_argument("rhs")
    s.add_argument("--presentation", "-p", default=None)
    s.add_argument("--max-steps", type=int, default=64)
    s.add_argument("--max-word-len", type=int, default=12)
    s.set_defaults(func=cmd_consequence)

    s = sub.add_parser("construct", help="run one of the presentation constructions")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("files", nargs="+")
    s.add_argument("--depth", type=int, default=None)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("tietze", help="apply a file of Tietze moves")
    s.add_argument("file")
    s.add_argument("moves")
    s.add_argument("--presentation", "-p", default=None)
    s.add_argument("--max-steps", type=int, default=64)
    s.add_argument("--max-word-len", type=int, default=12)
    s.set_defaults(func=cmd_tietze)

    s = sub.add_parser("verify", help="check a presentation against a finite act")
    s.add_argument("pres")
    s.add_argument("act")
    s.add_argument("--presentation", "-p", default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", help="run the shipped worked examples")
    s.add_argument("action", choices=("run", "list", "show"))
    s.add_argument("case", nargs="?")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("fuzz-oracle", help="random constructions checked against the finite oracle")
    s.add_argument("--seeds", type=int, default=20)
    s.add_argument("--seed", type=int, default=0, help="first seed (default 0)")
    s.add_argument("--max-monoid", type=int, default=6)
    s.add_argument("--max-act", type=int, default=12)
    s.add_argument("--construction", choices=KINDS, default=None)
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, ParseError, ConstructionError, PresentationError, ActError, MonoidError,
            KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        diag(f"error: {msg}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
