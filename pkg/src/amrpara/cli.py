"""Command-line interface.

Subcommands are pure pipes: data goes to stdout, diagnostics to stderr,
and omitting a path means standard input/output.  Exit codes: 0 success,
1 usage error, 2 data error, 3 adapter error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .adapters import AdapterError, HttpAdapter, MockAdapter, ProcessAdapter, serve_mock
from .ctree import parse_bracketed
from .graph import AmrError
from .metrics import corpus_report, format_report, score_pair
from .parser import iter_blocks
from .pipeline import PROFILES, PipelineConfig, load_records, records_from_lines, run_pipeline
from .refocus import FocusVariant, linearize, refocus, variants

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ADAPTER = 3


def _read(path) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def cmd_refocus(args) -> int:
    text = _read(args.input)
    out = _open_out(args.output)
    status = EXIT_OK
    try:
        for block in iter_blocks(text):
            try:
                graph = block.graph
            except AmrError as e:
                print(f"error: {e}", file=sys.stderr)
                status = EXIT_DATA
                continue
            try:
                if args.focus:
                    refocused = refocus(graph, args.focus)
                    produced = [FocusVariant(args.focus, refocused, linearize(refocused, indent=args.indent))]
                else:
                    produced = variants(graph, args.foci, args.seed)
            except AmrError as e:
                print(f"error: {e}", file=sys.stderr)
                status = EXIT_DATA
                continue
            for v in produced:
                for line in block.metadata:
                    out.write(line + "\n")
                out.write(f"# ::focus {v.focus}\n")
                out.write(v.linearized + "\n\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def _read_lines(path):
    return [line for line in _read(path).splitlines() if line.strip()]


def cmd_metrics(args) -> int:
    if args.pairs:
        rows = []
        for i, line in enumerate(_read_lines(args.pairs), start=1):
            parts = line.split("\t")
            if len(parts) != 2:
                print(f"error: line {i} of pairs input is not source<TAB>paraphrase", file=sys.stderr)
                return EXIT_DATA
            rows.append(parts)
        sources = [r[0] for r in rows]
        paraphrases = [r[1] for r in rows]
    else:
        sources = _read_lines(args.sources)
        paraphrases = _read_lines(args.paraphrases)
    if len(sources) != len(paraphrases):
        print(f"error: {len(sources)} sources vs {len(paraphrases)} paraphrases", file=sys.stderr)
        return EXIT_DATA

    def load_trees(path):
        if not path:
            return [None] * len(sources)
        trees = [parse_bracketed(line) for line in _read_lines(path)]
        if len(trees) != len(sources):
            raise ValueError(f"{len(trees)} parses vs {len(sources)} sentences")
        return trees

    def load_embeddings(path):
        if not path:
            return [None] * len(sources)
        vecs = [[float(x) for x in line.split()] for line in _read_lines(path)]
        if len(vecs) != len(sources):
            raise ValueError(f"{len(vecs)} embeddings vs {len(sources)} sentences")
        return vecs

    try:
        src_trees = load_trees(args.source_parses)
        par_trees = load_trees(args.paraphrase_parses)
        src_embs = load_embeddings(args.source_embeddings)
        par_embs = load_embeddings(args.paraphrase_embeddings)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA

    out = _open_out(args.output)
    try:
        from .pipeline import ParaphraseRecord

        records = []
        for i, (src, para) in enumerate(zip(sources, paraphrases)):
            scores = score_pair(src, para, src_trees[i], par_trees[i], src_embs[i], par_embs[i])
            records.append(ParaphraseRecord(f"p{i:05d}", src, "", "", para, 1.0, scores))
            out.write(json.dumps({"source": src, "paraphrase": para, **scores.as_dict()}) + "\n")
        report = corpus_report(records)
        print(format_report(report, x100=args.x100), file=sys.stderr if out is sys.stdout else sys.stdout)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _build_adapters(args) -> dict:
    adapters = {}
    if args.mock:
        mock = MockAdapter()
        return {k: mock for k in ("text_to_amr", "amr_to_text", "perplexity", "embed")}
    specs = {
        "text_to_amr": args.parser_adapter,
        "amr_to_text": args.generator_adapter,
        "perplexity": args.scorer_adapter,
        "embed": args.embedder_adapter,
    }
    for kind, spec in specs.items():
        if not spec:
            continue
        if spec.startswith("http://") or spec.startswith("https://"):
            adapters[kind] = HttpAdapter(spec)
        else:
            adapters[kind] = ProcessAdapter(spec.split())
    return adapters


def _load_config_file(path) -> dict:
    values = {}
    for line in _read_lines(path):
        if line.lstrip().startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line is not key = value: {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def cmd_pipeline(args) -> int:
    threshold = PROFILES[args.profile] if args.profile else None
    overrides = {}
    if args.config:
        try:
            raw = _load_config_file(args.config)
        except (OSError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        for key, cast in (("foci", int), ("seed", int), ("threshold", float), ("batch_size", int)):
            if key in raw:
                overrides[key] = cast(raw[key])
    if args.threshold is not None:
        threshold = args.threshold
    if threshold is not None:
        overrides["threshold"] = threshold
    overrides.setdefault("foci", args.foci)
    overrides.setdefault("seed", args.seed)
    config = PipelineConfig(input_path=args.input, output_dir=args.output, **overrides)

    adapters = _build_adapters(args)
    missing = [k for k in ("text_to_amr", "amr_to_text", "perplexity") if k not in adapters]
    if missing:
        print(f"error: missing adapters: {', '.join(missing)} (use --mock or --*-adapter)", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = run_pipeline(config, adapters)
    except AdapterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ADAPTER
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    print(json.dumps(result.manifest["counts"], sort_keys=True), file=sys.stderr)
    if config.output_dir is None:
        for r in result.records:
            sys.stdout.write(json.dumps(r.as_dict()) + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        if args.input and args.input != "-":
            records = load_records(args.input)
        else:
            records = records_from_lines(sys.stdin.read().splitlines())
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    report = corpus_report(records)
    print(format_report(report, x100=args.x100))
    return EXIT_OK


def cmd_mock_adapter(args) -> int:
    serve_mock()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amrpara", description="AMR re-rooting paraphrase toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refocus", help="re-root PENMAN graphs and emit linearized variants")
    p.add_argument("--input", "-i", help="PENMAN file (default stdin)")
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.add_argument("--foci", type=int, default=8, help="variants per graph (default 8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--focus", help="force a specific focus variable")
    p.add_argument("--indent", type=int, default=4)
    p.set_defaults(func=cmd_refocus)

    p = sub.add_parser("metrics", help="score paraphrase pairs and print a diversity report")
    p.add_argument("--pairs", help="TSV file: source<TAB>paraphrase per line (default stdin)", default=None)
    p.add_argument("--sources", help="source sentences, one per line")
    p.add_argument("--paraphrases", help="paraphrase sentences, one per line")
    p.add_argument("--source-parses", help="bracketed parses for sources, one per line")
    p.add_argument("--paraphrase-parses", help="bracketed parses for paraphrases, one per line")
    p.add_argument("--source-embeddings", help="whitespace-separated vectors for sources")
    p.add_argument("--paraphrase-embeddings", help="whitespace-separated vectors for paraphrases")
    p.add_argument("--output", "-o", help="per-pair scores JSONL (default stdout)")
    p.add_argument("--x100", action="store_true", help="display similarity/lexical scores scaled by 100")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("pipeline", help="run the full corpus construction pipeline")
    p.add_argument("--input", "-i", help="source sentences, one per line (default stdin)")
    p.add_argument("--output", "-o", help="output directory (default: records to stdout)")
    p.add_argument("--profile", choices=sorted(PROFILES), help="threshold preset")
    p.add_argument("--threshold", type=float, help="explicit perplexity threshold")
    p.add_argument("--foci", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--mock", action="store_true", help="use deterministic in-process mock adapters")
    p.add_argument("--parser-adapter", help="text_to_amr adapter: command line or http(s) URL")
    p.add_argument("--generator-adapter", help="amr_to_text adapter")
    p.add_argument("--scorer-adapter", help="perplexity adapter")
    p.add_argument("--embedder-adapter", help="embedding adapter")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("stats", help="summarize a dataset JSONL file")
    p.add_argument("--input", "-i", help="dataset JSONL (default stdin)")
    p.add_argument("--x100", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("mock-adapter", help="serve the deterministic mock over stdio")
    p.set_defaults(func=cmd_mock_adapter)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
