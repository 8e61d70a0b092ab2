"""teanet command line: extract, graph, metrics, compare, emotions, validate, merge.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import analytics, benchmark, conllu, extract, graph, lexicons, stats

log = logging.getLogger("teanet")

USAGE_ERROR = 1
DATA_ERROR = 2
ROLE_NAMES = ("AGENT", "EVENT", "TARGET")
DATA_ERRORS = (
    conllu.ParseError,
    conllu.ConfigError,
    lexicons.LoadError,
    extract.TableError,
    ValueError,
    UnicodeDecodeError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- arguments


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before and after the subcommand; only the
    # top-level copy carries real defaults so a later value is never clobbered
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--schema", choices=sorted(conllu.SCHEMAS), default=d("clear"), help="dependency label schema")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for document-level extraction")
    p.add_argument("--seed", type=int, default=d(0), help="seed for baseline sampling")
    return p


def _filter_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--agent")
    p.add_argument("--event", help="head lemma or full event phrase")
    p.add_argument("--target")
    p.add_argument("--voice", choices=("any", "active", "passive"), default="any")
    p.add_argument("--exclude-approx", action="store_true", help="drop agentless-passive triples")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="teanet", parents=[_global_flags(True)], description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_global_flags(False)]

    p = sub.add_parser("extract", parents=common, help="CoNLL-U to SVO table")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--extractor", choices=("tea", "baseline"), default="tea")
    p.add_argument("--schema-file", type=Path, help="extra raw<TAB>canonical label mappings")
    p.add_argument("--hypergraph", type=Path, help="also write one JSON line per triple here")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("graph", parents=common, help="SVO table to tripartite network export")
    p.add_argument("--svo", required=True, type=Path)
    p.add_argument("--format", choices=("json", "graphml", "edgelist"), default="json")
    p.add_argument("--valence", type=Path, help="valence TSV (default: bundled VADER)")
    p.add_argument("--synonyms", type=Path)
    p.add_argument("--event-key", choices=("head", "phrase"), default="head")
    _filter_flags(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("metrics", parents=common, help="node or edge metrics of one SVO table")
    p.add_argument("--svo", required=True, type=Path)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--role", type=str.upper, choices=ROLE_NAMES)
    which.add_argument("--relation", type=str.upper, choices=analytics.RELATIONS)
    p.add_argument("--subcorpus", default="", help="label written in the subcorpus column")
    p.add_argument("--event-key", choices=("head", "phrase"), default="head")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("compare", parents=common, help="compare two SVO tables")
    p.add_argument("--a", required=True, type=Path)
    p.add_argument("--b", required=True, type=Path)
    p.add_argument("--anchor", required=True, help="role:lemma, e.g. agent:i")
    p.add_argument("--relation", type=str.upper, choices=analytics.RELATIONS, default="AGENT_EVENT")
    p.add_argument("--event-key", choices=("head", "phrase"), default="head")
    p.add_argument("--norms", type=Path, help="scalar norms TSV for a rank-sum comparison")
    p.add_argument("--norm-role", type=str.upper, choices=ROLE_NAMES, default="EVENT")
    p.add_argument("--norm-mode", choices=("split", "mean"), default="split")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("emotions", parents=common, help="emotion z-scores of role fillers")
    p.add_argument("--svo", required=True, type=Path)
    p.add_argument("--lexicon", required=True, type=Path, help="emotion association TSV")
    p.add_argument("--roles", default="AGENT,EVENT,TARGET", help="comma-separated roles to pool")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--event-key", choices=("head", "phrase"), default="head")
    _filter_flags(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("validate", parents=common, help="score an extractor against gold triples")
    p.add_argument("--conllu", type=Path, help="gold parses (default: bundled benchmark)")
    p.add_argument("--gold", type=Path, help="gold TSV (default: bundled benchmark)")
    p.add_argument("--extractor", choices=("tea", "baseline"), default="tea")
    p.add_argument("--event-key", choices=("head", "phrase"), default="phrase")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("merge", parents=common, help="concatenate SVO tables with renumbered ids")
    p.add_argument("--inputs", required=True, nargs="+", type=Path)
    p.add_argument("--out", type=Path)
    return top


def _check_paths(args: argparse.Namespace) -> None:
    inputs = []
    for name in ("input", "schema_file", "svo", "valence", "synonyms", "a", "b", "norms", "lexicon", "conllu", "gold"):
        value = getattr(args, name, None)
        if value is not None:
            inputs.append(value)
    inputs.extend(getattr(args, "inputs", None) or [])
    for path in inputs:
        if not path.is_file():
            raise UsageError(f"input file not found: {path}")
    for name in ("out", "hypergraph"):
        path = getattr(args, name, None)
        if path is not None and not path.resolve().parent.is_dir():
            raise UsageError(f"output directory does not exist: {path.parent}")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")


# ---------------------------------------------------------------- helpers


def _emit(data: str | bytes, out: Path | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)


def _read_svo(path: Path) -> list[extract.SvoRecord]:
    return extract.read_svo_csv(path.read_text(encoding="utf-8"))


def _load_corpus(path: Path, args) -> conllu.Corpus:
    schema = conllu.get_schema(args.schema)
    if getattr(args, "schema_file", None) is not None:
        schema = conllu.load_schema_mapping(args.schema_file, base=args.schema)
    return conllu.apply_schema(conllu.read_conllu(path), schema)


def _filtered(records, args):
    return graph.filter_records(
        records, args.agent, args.event, args.target, voice=args.voice, exclude_approx=args.exclude_approx
    )


def _num(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- commands


def cmd_extract(args) -> None:
    corpus = _load_corpus(args.input, args)
    run = extract.extract_baseline if args.extractor == "baseline" else extract.extract_svos
    records = run(corpus, jobs=args.jobs)
    log.info("%d triples from %d sentences", len(records), len(corpus))
    if args.hypergraph is not None:
        args.hypergraph.write_bytes(graph.export_hypergraph(records))
    _emit(extract.write_svo_csv(records), args.out)


def cmd_graph(args) -> None:
    records = _filtered(_read_svo(args.svo), args)
    valence = lexicons.load_valence(args.valence) if args.valence else lexicons.default_valence()
    synonyms = lexicons.load_synonyms(args.synonyms) if args.synonyms else None
    g = graph.build_graph(records, valence, synonyms, event_key=args.event_key, provenance=(str(args.svo),))
    _emit(graph.export_graph(g, args.format), args.out)


def cmd_metrics(args) -> None:
    records = _read_svo(args.svo)
    if args.role:
        rows = analytics.relative_degree(analytics.node_metrics(records, args.role, event_key=args.event_key))
        cols = ("label", "role", "K", "F", "RI", "K_star")
        table = [(r.label, r.role, r.K, r.F, _num(r.RI), _num(r.K_star)) for r in rows]
    else:
        rows = analytics.normalized_edge_weights(records, args.relation, args.subcorpus, args.event_key)
        cols = ("source", "target", "relation", "subcorpus", "F", "NW")
        table = [(e.source, e.target, e.relation, e.subcorpus, e.F, _num(e.NW)) for e in rows]
    if args.format == "json":
        _emit(_dumps([dict(zip(cols, row)) for row in table]), args.out)
    else:
        lines = ["\t".join(cols)] + ["\t".join(str(v) for v in row) for row in table]
        _emit("\n".join(lines) + "\n", args.out)


def _parse_anchor(text: str) -> tuple[str, str]:
    role, sep, lemma = text.partition(":")
    if not sep or not lemma or role.upper() not in ("AGENT", "EVENT"):
        raise UsageError(f"--anchor must look like agent:LEMMA or event:LEMMA, got {text!r}")
    return role.upper(), lemma.lower()


def cmd_compare(args) -> None:
    anchor = _parse_anchor(args.anchor)
    a, b = _read_svo(args.a), _read_svo(args.b)
    corr = analytics.kendall_tau_shared(a, b, anchor, event_key=args.event_key)
    nw_a = analytics.normalized_edge_weights(a, args.relation, "a", args.event_key)
    nw_b = analytics.normalized_edge_weights(b, args.relation, "b", args.event_key)
    prom = analytics.prominence(nw_a, nw_b)

    rank = None
    if args.norms is not None:
        norms = lexicons.load_norms(args.norms)
        ja = analytics.join_norms(analytics.role_labels(a, args.norm_role, args.event_key), norms, args.norm_mode)
        jb = analytics.join_norms(analytics.role_labels(b, args.norm_role, args.event_key), norms, args.norm_mode)
        if not ja.items or not jb.items:
            raise ValueError("no norm scores found for one of the tables")
        res = stats.rank_sum_test(ja.scores, jb.scores)
        rank = {
            "role": args.norm_role,
            "mode": args.norm_mode,
            "norms": norms.name,
            "n_a": len(ja.items),
            "n_b": len(jb.items),
            "omitted_a": ja.omitted,
            "omitted_b": jb.omitted,
            "U": res.U,
            "p": res.p,
            "method": res.method,
        }

    if args.format == "json":
        doc = {
            "anchor": {"role": anchor[0], "lemma": anchor[1]},
            "kendall": {"tau": corr.tau if corr.defined else None, "p": corr.p if corr.defined else None,
                        "n_shared": corr.n_shared, "defined": corr.defined},
            "prominence": [
                {"source": p.source, "target": p.target, "relation": p.relation, "P": p.P, "NW_a": p.NW_a, "NW_b": p.NW_b}
                for p in prom
            ],
        }
        if rank is not None:
            doc["rank_sum"] = rank
        _emit(_dumps(doc), args.out)
        return

    lines = [f"anchor\t{anchor[0]}:{anchor[1]}"]
    if corr.defined:
        lines += [f"tau\t{corr.tau!r}", f"p\t{corr.p!r}"]
    else:
        lines += ["tau\tundefined", "p\tundefined"]
    lines.append(f"n_shared\t{corr.n_shared}")
    if rank is not None:
        lines += [f"rank_sum_{k}\t{v}" for k, v in rank.items()]
    lines += ["", "source\ttarget\trelation\tP\tNW_a\tNW_b"]
    lines += [f"{p.source}\t{p.target}\t{p.relation}\t{p.P!r}\t{p.NW_a!r}\t{p.NW_b!r}" for p in prom]
    _emit("\n".join(lines) + "\n", args.out)


def _role_words(records, roles: Sequence[str], event_key: str) -> list[str]:
    # every filled slot contributes its words, repeats included
    words = []
    for r in records:
        for role in roles:
            if role == "AGENT":
                label = r.agent
            elif role == "TARGET":
                label = r.target
            else:
                label = graph.event_of(r, event_key)
            if label != extract.NONE:
                words.extend(label.split())
    return words


def cmd_emotions(args) -> None:
    roles = [x.strip().upper() for x in args.roles.split(",") if x.strip()]
    bad = [r for r in roles if r not in ROLE_NAMES]
    if bad or not roles:
        raise UsageError(f"--roles takes a comma list of {','.join(ROLE_NAMES)}")
    if args.samples < 100:
        raise UsageError("--samples must be at least 100")
    lex = lexicons.load_emotions(args.lexicon)
    records = _filtered(_read_svo(args.svo), args)
    words = _role_words(records, roles, args.event_key)
    profile = analytics.emotion_zscores(words, lex, samples=args.samples, seed=args.seed)
    doc = profile.to_dict()
    doc["roles"] = roles
    _emit(_dumps(doc), args.out)


def cmd_validate(args) -> None:
    conllu_path = args.conllu or benchmark.bundled("benchmark.conllu")
    gold_path = args.gold or benchmark.bundled("benchmark_gold.tsv")
    corpus = _load_corpus(conllu_path, args)
    gold = benchmark.load_gold(gold_path)

    if args.extractor == "baseline":
        records = extract.extract_baseline(corpus, jobs=args.jobs)
        voice = {}
        for r in records:
            voice[r.sent_id] = voice.get(r.sent_id, 0) or r.is_passive
    else:
        records = extract.extract_svos(corpus, jobs=args.jobs)
        voice = benchmark.sentence_voice(corpus)
    missing = [g.sent_id for g in gold if g.sent_id not in voice]
    if missing:
        raise ValueError(f"gold sentence ids missing from the corpus: {missing[:5]}")

    roles = benchmark.evaluate_roles(records, gold, event_key=args.event_key)
    passive = benchmark.evaluate_passive(
        {g.sent_id: voice[g.sent_id] for g in gold}, {g.sent_id: g.is_passive for g in gold}
    )
    if args.format == "json":
        _emit(benchmark.report_json(roles, passive, args.extractor), args.out)
    else:
        text = benchmark.format_role_table(roles, args.extractor) + "\n" + benchmark.format_passive_table(passive)
        _emit(text, args.out)


def cmd_merge(args) -> None:
    tables = [_read_svo(p) for p in args.inputs]
    _emit(extract.write_svo_csv(analytics.merge_svo_tables(tables)), args.out)


COMMANDS = {
    "extract": cmd_extract,
    "graph": cmd_graph,
    "metrics": cmd_metrics,
    "compare": cmd_compare,
    "emotions": cmd_emotions,
    "validate": cmd_validate,
    "merge": cmd_merge,
}


def run(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="teanet: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        _check_paths(args)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except DATA_ERRORS as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
