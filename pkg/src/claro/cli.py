"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error.  Every subcommand
accepts ``--format json``; the JSON payloads are identical to the HTTP
service's responses.  The CLARO_TEMPLATES environment variable (or
``--templates``) points at an alternative template file.
"""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
from typing import List, Optional

from . import jsonio
from .authoring import (BindingError, SuggestMode, instantiate, lint,
                        render_user_friendly, suggest)
from .chunking import chunk
from .dsl import (TemplateParseError, load_shipped_templates,
                  load_templates_from_path, serialize_template)
from .evaluation import (Validity, classify_validity, evaluate, load_bezerra_comparison,
                         load_claro_comparison, load_fixture, load_ren_comparison,
                         mine_corpus, parse_fixture)
from .matching import fragment_analysis, fragment_templates, match_text
from .storage import (CompetencyQuestion, CQDocument, Instantiation, StorageError,
                      load_document_checked, now_timestamp, save_document,
                      validate_document)
from .templates import TemplateSet, structural_stats, validate_set

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="claro", description="CQ template toolkit")
    parser.add_argument("--templates", help="template file (default: bundled set; "
                                            "env CLARO_TEMPLATES overrides)")
    parser.add_argument("--format", choices=["text", "json", "csv"], default="text")

    # the same flags are accepted after the subcommand; SUPPRESS keeps a
    # pre-subcommand value from being clobbered by the subparser default
    common = _Parser(add_help=False)
    common.add_argument("--templates", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["text", "json", "csv"],
                        default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("templates", help="inspect the template set", parents=[common])
    t.add_argument("action", choices=["validate", "list", "stats", "fragments"])

    c = sub.add_parser("chunk", help="chunk a question into entity/predicate chunks",
                       parents=[common])
    c.add_argument("text")

    m = sub.add_parser("match", help="match a question against the templates",
                       parents=[common])
    m.add_argument("text")
    m.add_argument("--exact-only", action="store_true")

    s = sub.add_parser("suggest", help="autocomplete templates for a partial question",
                       parents=[common])
    s.add_argument("prefix")
    s.add_argument("--contains", action="store_true",
                   help="also return templates that merely contain the input")

    li = sub.add_parser("lint", help="check a question for authoring problems",
                        parents=[common])
    li.add_argument("text")

    i = sub.add_parser("instantiate", help="fill a template's slots", parents=[common])
    i.add_argument("ref", help="template reference, e.g. 81 or 22a")
    i.add_argument("--bind", action="append", default=[], metavar="SLOT=PHRASE",
                   help="slot binding; repeat for split predicates (PC1=does PC1=eat)")

    cov = sub.add_parser("coverage", help="score a template set over a fixture",
                         parents=[common])
    cov.add_argument("fixture", help="setA|setB|setC|combined or a fixture file path")
    cov.add_argument("--set", dest="template_set", default="claro",
                     choices=["claro", "ren", "bezerra"])
    cov.add_argument("--gold", action="store_true", default=True,
                     help="use the gold chunkings (default)")
    cov.add_argument("--chunker", dest="gold", action="store_false",
                     help="use the rule-based chunker instead of gold chunkings")
    cov.add_argument("--no-rewording", action="store_true")

    mi = sub.add_parser("mine", help="mine repeated patterns from a gold-chunked corpus",
                        parents=[common])
    mi.add_argument("corpus", help="'bundled' or a fixture file path")

    d = sub.add_parser("doc", help="manage .cqd.xml question documents")
    dsub = d.add_subparsers(dest="doc_action", required=True)
    dn = dsub.add_parser("new", parents=[common])
    dn.add_argument("path")
    dn.add_argument("--title", required=True)
    da = dsub.add_parser("add", parents=[common])
    da.add_argument("path")
    da.add_argument("text")
    da.add_argument("--template", help="template reference to record")
    da.add_argument("--bind", action="append", default=[], metavar="SLOT=PHRASE")
    dl = dsub.add_parser("list", parents=[common])
    dl.add_argument("path")
    dr = dsub.add_parser("remove", parents=[common])
    dr.add_argument("path")
    dr.add_argument("index", type=int, help="zero-based question index")
    dsv = dsub.add_parser("save", parents=[common])
    dsv.add_argument("path")
    dld = dsub.add_parser("load", parents=[common])
    dld.add_argument("path")

    srv = sub.add_parser("serve", help="run the HTTP JSON API", parents=[common])
    srv.add_argument("--port", type=int, default=8642)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--documents-dir", default="documents")

    return parser


def _load_templates(args) -> TemplateSet:
    path = args.templates or os.environ.get("CLARO_TEMPLATES")
    if path:
        return load_templates_from_path(path)
    return load_shipped_templates()


class UsageError(Exception):
    pass


def _parse_bindings(pairs: List[str]) -> dict:
    bindings: dict = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"bad --bind value {pair!r}, expected SLOT=PHRASE")
        slot, phrase = pair.split("=", 1)
        slot = slot.strip()
        if slot in bindings:
            existing = bindings[slot]
            bindings[slot] = (existing if isinstance(existing, list) else [existing]) + [phrase]
        else:
            bindings[slot] = phrase
    return bindings


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _data_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return DATA_ERROR


def _emit(args, payload, text_lines, csv_rows=None) -> int:
    if args.format == "json":
        sys.stdout.write(jsonio.dumps(payload))
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError("csv output is only available for 'coverage'")
        writer = csv.writer(sys.stdout)
        for row in csv_rows:
            writer.writerow(row)
    else:
        for line in text_lines:
            print(line)
    return 0


def cmd_templates(args) -> int:
    ts = _load_templates(args)
    if args.action == "validate":
        problems = validate_set(ts)
        payload = {"ok": not problems, "violations": [str(p) for p in problems],
                   "baseCount": len(ts.base_templates()),
                   "variantCount": len(ts.variant_templates())}
        lines = ([f"ok: {len(ts.base_templates())} base templates, "
                  f"{len(ts.variant_templates())} variants"] if not problems
                 else [str(p) for p in problems])
        code = _emit(args, payload, lines)
        return code if not problems else DATA_ERROR
    if args.action == "list":
        return _emit(args, jsonio.template_set_dict(ts),
                     [f"{serialize_template(t)}" for t in ts])
    if args.action == "stats":
        st = structural_stats(ts)
        payload = {
            "baseCount": st.base_count, "variantCount": st.variant_count,
            "maxEcVars": st.max_ec_vars, "maxPcVars": st.max_pc_vars,
            "maxTotalVars": st.max_total_vars,
            "maxSlotOccurrences": st.max_slot_occurrences,
            "maxPcParts": st.max_pc_parts,
            "templatesWithEc": st.templates_with_ec,
        }
        lines = [f"{st.base_count} base + {st.variant_count} variants",
                 f"max EC vars {st.max_ec_vars}, max PC vars {st.max_pc_vars}, "
                 f"max vars {st.max_total_vars}",
                 f"max slot occurrences {st.max_slot_occurrences}, "
                 f"max PC parts {st.max_pc_parts}",
                 f"templates with an EC: {st.templates_with_ec}/{len(ts)}"]
        return _emit(args, payload, lines)
    pairs = fragment_analysis(ts.base_templates())
    frags = fragment_templates(ts.base_templates())
    payload = {
        "fragmentCount": len(frags),
        "pairs": [{"fragment": a.ref, "container": b.ref} for a, b in pairs],
    }
    lines = [f"{a.ref} is a fragment of {b.ref}" for a, b in pairs]
    lines.append(f"{len(frags)} distinct fragment templates")
    return _emit(args, payload, lines)


def cmd_chunk(args) -> int:
    candidates = chunk(args.text)
    payload = [jsonio.chunking_dict(c) for c in candidates]
    lines = [f"{c.rank}: {c.pattern()}" for c in candidates]
    return _emit(args, payload, lines or ["no candidates"])


def cmd_match(args) -> int:
    ts = _load_templates(args)
    results = match_text(args.text, ts, allow_normalized=not args.exact_only)
    payload = [jsonio.match_dict(m) for m in results]
    lines = []
    for m in results:
        binds = ", ".join(f"{k}={' / '.join(v)}" for k, v in m.bindings)
        lines.append(f"template {m.ref} ({m.exactness.value}) {binds}")
    return _emit(args, payload, lines or ["no match"])


def cmd_suggest(args) -> int:
    ts = _load_templates(args)
    mode = SuggestMode.CONTAINS if args.contains else SuggestMode.STARTS_WITH
    suggestions = suggest(args.prefix, mode, ts)
    payload = [jsonio.suggestion_dict(s) for s in suggestions]
    lines = [f"{s.ref}: {s.display}" for s in suggestions]
    return _emit(args, payload, lines or ["no suggestions"])


def cmd_lint(args) -> int:
    findings = lint(args.text)
    payload = [jsonio.lint_dict(f) for f in findings]
    lines = []
    for f in findings:
        lines.append(f"{f.kind.value}: {f.message}")
        for r in f.rewrites:
            lines.append(f"  suggestion: {r}")
    return _emit(args, payload, lines or ["no findings"])


def cmd_instantiate(args) -> int:
    ts = _load_templates(args)
    t = ts.by_ref(args.ref)
    if t is None:
        return _data_error(f"unknown template {args.ref}")
    try:
        text = instantiate(t, _parse_bindings(args.bind))
    except BindingError as e:
        return _data_error(str(e))
    return _emit(args, {"template": t.ref, "text": text}, [text])


_FIXTURES = {"seta": "set_a.txt", "setb": "set_b.txt", "setc": "set_c.txt"}


def _load_named_fixture(name: str):
    key = name.lower().replace("_", "").replace("-", "")
    if key in _FIXTURES:
        return load_fixture(_FIXTURES[key])
    if key == "combined":
        return (load_fixture("set_a.txt") + load_fixture("set_b.txt")
                + load_fixture("set_c.txt"))
    with open(name, encoding="utf-8") as fh:
        return parse_fixture(fh.read())


def cmd_coverage(args) -> int:
    loaders = {"claro": load_claro_comparison, "ren": load_ren_comparison,
               "bezerra": load_bezerra_comparison}
    comparison = loaders[args.template_set]()
    usable = TemplateSet(comparison.name, comparison.templates.version,
                         [t for t in comparison.templates
                          if t.ref not in comparison.non_question_refs])
    try:
        fixture = _load_named_fixture(args.fixture)
    except (OSError, ValueError) as e:
        return _data_error(str(e))
    report = evaluate(fixture, usable, use_gold=args.gold,
                      allow_rewording=not args.no_rewording,
                      set_name=args.fixture)
    payload = jsonio.report_dict(report)
    lines = [f"{report.matched}/{report.valid} valid matched ({report.percent_int}%)"]
    csv_rows = [["id", "outcome", "template"]]
    for r in report.results:
        suffix = f" -> {r.template_ref}" if r.template_ref else ""
        lines.append(f"  {r.id}: {r.outcome.value}{suffix}")
        csv_rows.append([r.id, r.outcome.value, r.template_ref or ""])
    csv_rows.append(["total", report.total, ""])
    csv_rows.append(["valid", report.valid, ""])
    csv_rows.append(["matched", report.matched, f"{report.percent_int}%"])
    return _emit(args, payload, lines, csv_rows)


def cmd_mine(args) -> int:
    try:
        fixture = (load_fixture("corpus_234.txt") if args.corpus == "bundled"
                   else _load_named_fixture(args.corpus))
    except (OSError, ValueError) as e:
        return _data_error(str(e))
    patterns = mine_corpus(fixture)
    return _emit(args, {"count": len(patterns), "patterns": patterns},
                 patterns + [f"{len(patterns)} patterns"])


def _read_doc(path: str, ts: TemplateSet):
    with open(path, encoding="utf-8") as fh:
        return load_document_checked(fh.read(), ts)


def cmd_doc(args) -> int:
    ts = _load_templates(args)
    try:
        if args.doc_action == "new":
            doc = CQDocument(title=args.title)
            with open(args.path, "w", encoding="utf-8") as fh:
                fh.write(save_document(doc))
            return _emit(args, jsonio.document_dict(doc), [f"created {args.path}"])
        if args.doc_action == "add":
            doc, _ = _read_doc(args.path, ts)
            instantiations = ()
            if args.template:
                t = ts.by_ref(args.template)
                if t is None:
                    return _data_error(f"unknown template {args.template}")
                bindings = _parse_bindings(args.bind)
                text = instantiate(t, bindings)
                if text != args.text:
                    return _data_error(
                        f"bindings produce {text!r}, not the given text")
                instantiations = (Instantiation(
                    t.id, t.variant,
                    tuple((s, tuple(v) if isinstance(v, list) else (v,))
                          for s, v in bindings.items())),)
            stamp = now_timestamp()
            doc.questions.append(CompetencyQuestion(
                text=args.text, instantiations=instantiations,
                created=stamp, modified=stamp))
            with open(args.path, "w", encoding="utf-8") as fh:
                fh.write(save_document(doc))
            return _emit(args, jsonio.document_dict(doc),
                         [f"added question {len(doc.questions) - 1}"])
        if args.doc_action == "list":
            doc, warnings = _read_doc(args.path, ts)
            lines = [f"{i}: {q.text}" for i, q in enumerate(doc.questions)]
            lines += [f"warning: {w}" for w in warnings]
            return _emit(args, jsonio.document_dict(doc), lines or ["empty document"])
        if args.doc_action == "remove":
            doc, _ = _read_doc(args.path, ts)
            if not 0 <= args.index < len(doc.questions):
                return _data_error(f"no question {args.index}")
            del doc.questions[args.index]
            with open(args.path, "w", encoding="utf-8") as fh:
                fh.write(save_document(doc))
            return _emit(args, jsonio.document_dict(doc),
                         [f"removed question {args.index}"])
        if args.doc_action == "save":
            doc, warnings = _read_doc(args.path, ts)
            problems = validate_document(doc, ts)
            with open(args.path, "w", encoding="utf-8") as fh:
                fh.write(save_document(doc))
            lines = [f"saved {args.path}"] + [f"warning: {w}" for w in warnings + problems]
            return _emit(args, jsonio.document_dict(doc), lines)
        doc, warnings = _read_doc(args.path, ts)
        payload = jsonio.document_dict(doc)
        payload["warnings"] = warnings
        lines = [f"{doc.title}: {len(doc.questions)} question(s)"]
        lines += [f"warning: {w}" for w in warnings]
        return _emit(args, payload, lines)
    except FileNotFoundError as e:
        return _data_error(str(e))
    except (StorageError, BindingError) as e:
        return _data_error(str(e))


def cmd_serve(args) -> int:
    from .service import run_server
    run_server(host=args.host, port=args.port, documents_dir=args.documents_dir,
               templates=_load_templates(args))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    handlers = {
        "templates": cmd_templates,
        "chunk": cmd_chunk,
        "match": cmd_match,
        "suggest": cmd_suggest,
        "lint": cmd_lint,
        "instantiate": cmd_instantiate,
        "coverage": cmd_coverage,
        "mine": cmd_mine,
        "doc": cmd_doc,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except UsageError as e:
        return _usage(str(e))
    except TemplateParseError as e:
        return _data_error(str(e))
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
