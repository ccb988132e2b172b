"""Command-line entry point: mine, extract, reason, evaluate, serve.

Machine-readable JSON goes to stdout (or --out); human-readable summaries
go to stderr. Exit codes: 0 success, 1 usage error, 2 data error,
3 numerical error.
"""

from __future__ import annotations

import json
import sys

import click

from .collective import reason_collective
from .errors import (FormatError, InvalidQuery, IoError, KgError, NoPath,
                     SingularSystem, UnknownEntity, UnknownPredicate)
from .kernel import KernelConfig
from .mining import (compute_predicate_stats, load_model, mine, model_to_json,
                     save_model)
from .pairwise import ReasoningParams, reason_pair
from .ppr import NibbleParams
from .segments import (ExtractionConfig, extract_edge_segment,
                       extract_node_segment, extract_subgraph_segment,
                       segment_to_json)
from .store import KnowledgeGraph, LoadConfig, QueryGraph, load_tsv

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text)


def _load_graph(path: str | None, strict: bool, lowercase: bool, demo: bool) -> KnowledgeGraph:
    if demo:
        from .fixtures import build_canvas_graph
        return build_canvas_graph()
    if not path:
        _fail(EXIT_USAGE, "--graph is required (or use --demo)")
    try:
        return load_tsv(path, LoadConfig(strict=strict, lowercase_labels=lowercase))
    except (IoError, FormatError) as exc:
        _fail(EXIT_DATA, str(exc))


def _load_sim_model(path: str | None, graph: KnowledgeGraph, demo: bool):
    if demo and not path:
        from .fixtures import demo_model
        return demo_model()
    if path:
        try:
            return load_model(path)
        except (OSError, ValueError, KeyError) as exc:
            _fail(EXIT_DATA, f"cannot load model: {exc}")
    click.echo("no model given; mining the graph first", err=True)
    return mine(graph)


def _reason_params(key_fraction, same_thing, threshold, type_predicate,
                   k, bidirectional, decay) -> ReasoningParams:
    return ReasoningParams(
        key_fraction=key_fraction,
        same_thing_threshold=same_thing,
        transfer_threshold=threshold,
        type_predicate=type_predicate,
        segment_k=k,
        transfer_k=k,
        segment_bidirectional=bidirectional,
        transfer_bidirectional=True,
        kernel=KernelConfig(decay=decay),
    )


graph_options = [
    click.option("--graph", "graph_path", type=click.Path(), help="triple corpus TSV"),
    click.option("--strict", is_flag=True, help="abort on malformed lines"),
    click.option("--lowercase-labels", is_flag=True, help="normalize labels to lowercase"),
    click.option("--demo", is_flag=True, help="use the bundled demo dataset"),
]
model_option = click.option("--model", "model_path", type=click.Path(),
                            help="mined or pinned similarity model JSON")
out_option = click.option("--out", type=click.Path(), help="write JSON here instead of stdout")


def add_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@click.group()
def main():
    """Knowledge-graph comparative reasoning toolkit."""


@main.command()
@add_options(graph_options)
@click.option("--out", type=click.Path(), required=True, help="model JSON output path")
def mine_cmd(graph_path, strict, lowercase_labels, demo, out):
    """Compute entropy weights and the predicate similarity model."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = mine(graph)
    save_model(model, out)
    degenerate = ", ".join(model.degenerate) or "none"
    click.echo(f"mined {graph.predicate_count} predicates "
               f"({len(model.degenerate)} degenerate: {degenerate})", err=True)


main.add_command(mine_cmd, name="mine")


@main.group()
def ks():
    """Knowledge segment extraction."""


@ks.command("node")
@add_options(graph_options)
@out_option
@click.option("--seed", required=True)
@click.option("--alpha", default=0.15, show_default=True)
@click.option("--epsilon", default=1e-5, show_default=True)
@click.option("--max-size", default=50, show_default=True)
def ks_node(graph_path, strict, lowercase_labels, demo, out, seed, alpha, epsilon, max_size):
    """Local-cluster segment around a seed entity."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    try:
        stats = compute_predicate_stats(graph)
        segment = extract_node_segment(graph, stats, seed,
                                       NibbleParams(alpha, epsilon, max_size))
    except UnknownEntity as exc:
        _fail(EXIT_DATA, str(exc))
    _emit({"segment": segment_to_json(graph, segment)}, out)
    click.echo(f"segment: {segment.size} nodes, {len(segment.edges)} edges", err=True)


@ks.command("edge")
@add_options(graph_options)
@model_option
@out_option
@click.option("--subject", required=True)
@click.option("--predicate", required=True)
@click.option("--object", "object_", required=True)
@click.option("-k", default=5, show_default=True)
@click.option("--bidirectional", is_flag=True)
def ks_edge(graph_path, strict, lowercase_labels, demo, model_path, out,
            subject, predicate, object_, k, bidirectional):
    """Connection subgraph between a clue's subject and object."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    try:
        segment, paths = extract_edge_segment(
            graph, model, (subject, predicate, object_),
            ExtractionConfig(k=k, bidirectional=bidirectional))
    except (UnknownEntity, UnknownPredicate, NoPath) as exc:
        _fail(EXIT_DATA, str(exc))
    _emit({"segment": segment_to_json(graph, segment, paths)}, out)
    click.echo(f"{len(paths.paths)} paths, best cost {paths.costs[0]:.4f}", err=True)


@ks.command("subgraph")
@add_options(graph_options)
@model_option
@out_option
@click.option("--query", "query_json", required=True,
              help='query graph as JSON triples: [["s","p","o"], ...]')
@click.option("-k", default=5, show_default=True)
@click.option("--bidirectional", is_flag=True)
def ks_subgraph(graph_path, strict, lowercase_labels, demo, model_path, out,
                query_json, k, bidirectional):
    """Per-edge segments for a query graph, merged."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    try:
        query = QueryGraph.from_triples([tuple(t) for t in json.loads(query_json)])
        result = extract_subgraph_segment(graph, model, query,
                                          ExtractionConfig(k=k, bidirectional=bidirectional))
    except (json.JSONDecodeError, ValueError) as exc:
        _fail(EXIT_USAGE, f"bad --query: {exc}")
    except (UnknownEntity, UnknownPredicate) as exc:
        _fail(EXIT_DATA, str(exc))
    _emit({
        "segments": {str(i): segment_to_json(graph, seg, result.paths.get(i))
                     for i, seg in result.segments.items()},
        "merged": segment_to_json(graph, result.merged),
        "failures": {str(i): msg for i, msg in result.failures.items()},
    }, out)
    click.echo(f"{len(result.segments)} segments, {len(result.failures)} failures", err=True)


@main.group()
def reason():
    """Comparative reasoning over clues."""


reason_options = [
    click.option("--key-fraction", default=0.5, show_default=True),
    click.option("--same-thing-threshold", default=0.6, show_default=True),
    click.option("--transfer-threshold", default=0.700, show_default=True),
    click.option("--type-predicate", default="isTypeOf", show_default=True),
    click.option("-k", default=5, show_default=True),
    click.option("--bidirectional", is_flag=True),
    click.option("--decay", type=float, default=None, help="kernel decay (default: auto)"),
]


@reason.command("pair")
@add_options(graph_options)
@model_option
@out_option
@add_options(reason_options)
@click.option("--t1", "t1_json", required=True, help='first clue: ["s","p","o"]')
@click.option("--t2", "t2_json", required=True, help='second clue: ["s","p","o"]')
def reason_pair_cmd(graph_path, strict, lowercase_labels, demo, model_path, out,
                    key_fraction, same_thing_threshold, transfer_threshold,
                    type_predicate, k, bidirectional, decay, t1_json, t2_json):
    """Classify a clue pair and decide commonality/inconsistency."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    try:
        t1 = tuple(json.loads(t1_json))
        t2 = tuple(json.loads(t2_json))
        if len(t1) != 3 or len(t2) != 3:
            raise ValueError("clues must have exactly three fields")
    except (json.JSONDecodeError, ValueError) as exc:
        _fail(EXIT_USAGE, f"bad clue: {exc}")
    params = _reason_params(key_fraction, same_thing_threshold, transfer_threshold,
                            type_predicate, k, bidirectional, decay)
    try:
        verdict = reason_pair(graph, model, t1, t2, params)
    except (UnknownEntity, UnknownPredicate, NoPath) as exc:
        _fail(EXIT_DATA, str(exc))
    except SingularSystem as exc:
        _fail(EXIT_NUMERIC, str(exc))
    _emit({"verdict": verdict.to_json(graph)}, out)
    state = {True: "consistent", False: "inconsistent", None: "not-applicable"}[verdict.consistent]
    click.echo(f"case {verdict.case}; same thing: {verdict.same_thing}; {state}", err=True)


@reason.command("collective")
@add_options(graph_options)
@model_option
@out_option
@add_options(reason_options)
@click.option("--query", "query_json", required=True,
              help='query graph as JSON triples: [["s","p","o"], ...]')
def reason_collective_cmd(graph_path, strict, lowercase_labels, demo, model_path, out,
                          key_fraction, same_thing_threshold, transfer_threshold,
                          type_predicate, k, bidirectional, decay, query_json):
    """Collective inconsistency over a whole query graph."""
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    try:
        query = QueryGraph.from_triples([tuple(t) for t in json.loads(query_json)])
    except (json.JSONDecodeError, ValueError) as exc:
        _fail(EXIT_USAGE, f"bad --query: {exc}")
    params = _reason_params(key_fraction, same_thing_threshold, transfer_threshold,
                            type_predicate, k, bidirectional, decay)
    try:
        verdict = reason_collective(graph, model, query, params)
    except InvalidQuery as exc:
        _fail(EXIT_USAGE, str(exc))
    except (UnknownEntity, UnknownPredicate, NoPath) as exc:
        _fail(EXIT_DATA, str(exc))
    except SingularSystem as exc:
        _fail(EXIT_NUMERIC, str(exc))
    _emit({"verdict": verdict.to_json(graph)}, out)
    click.echo(f"inconsistent: {verdict.inconsistent} "
               f"({len(verdict.pairs_checked)} pairs examined)", err=True)


@main.command("eval")
@add_options(graph_options)
@model_option
@out_option
@add_options(reason_options)
@click.option("--queries", "queries_path", type=click.Path(), required=True,
              help="JSONL: {queries: [[s,p,o],...], label: consistent|inconsistent, category}")
@click.option("--workers", default=4, show_default=True,
              help="parallel verdicts (the loaded snapshot is read-only)")
def eval_cmd(graph_path, strict, lowercase_labels, demo, model_path, out,
             key_fraction, same_thing_threshold, transfer_threshold,
             type_predicate, k, bidirectional, decay, queries_path, workers):
    """Accuracy (correct/total) of the verdicts over a labeled query file."""
    from concurrent.futures import ThreadPoolExecutor

    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    params = _reason_params(key_fraction, same_thing_threshold, transfer_threshold,
                            type_predicate, k, bidirectional, decay)
    try:
        with open(queries_path, encoding="utf-8") as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_DATA, f"cannot read queries: {exc}")

    def judge(numbered):
        lineno, item = numbered
        triples = [tuple(t) for t in item["queries"]]
        expected_inconsistent = item["label"] == "inconsistent"
        category = item.get("category", "default")
        try:
            if len(triples) == 2:
                verdict = reason_pair(graph, model, triples[0], triples[1], params)
                predicted = verdict.consistent is False
            else:
                query = QueryGraph.from_triples(triples)
                predicted = reason_collective(graph, model, query, params).inconsistent
            correct = predicted == expected_inconsistent
            error = None
        except KgError as exc:
            predicted, correct, error = None, False, str(exc)
        return {"line": lineno, "category": category, "label": item["label"],
                "predictedInconsistent": predicted, "correct": correct,
                "error": error}

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(judge, enumerate(lines, start=1)))
    per_category: dict[str, list[int]] = {}
    for row in rows:
        per_category.setdefault(row["category"], []).append(int(row["correct"]))
    summary = {
        cat: {"correct": sum(vals), "total": len(vals),
              "accuracy": sum(vals) / len(vals)}
        for cat, vals in sorted(per_category.items())
    }
    total = sum(len(v) for v in per_category.values())
    correct_total = sum(sum(v) for v in per_category.values())
    _emit({"perCategory": summary, "overall": {
        "correct": correct_total, "total": total,
        "accuracy": correct_total / total if total else 0.0}, "rows": rows}, out)
    for cat, s in summary.items():
        click.echo(f"{cat}: {s['correct']}/{s['total']} = {s['accuracy']:.3f}", err=True)


@main.command()
@add_options(graph_options)
@model_option
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--cache-size", default=1024, show_default=True)
@click.option("--export-openapi", "export_path", type=click.Path(),
              help="write the OpenAPI document to this path and exit")
def serve(graph_path, strict, lowercase_labels, demo, model_path, port, host,
          cache_size, export_path):
    """Serve the HTTP/JSON reasoning API."""
    from .service import create_app
    graph = _load_graph(graph_path, strict, lowercase_labels, demo)
    model = _load_sim_model(model_path, graph, demo)
    app = create_app(graph, model, cache_size)
    if export_path:
        with open(export_path, "w", encoding="utf-8") as fh:
            json.dump(app.openapi(), fh, indent=2, sort_keys=True)
        click.echo(f"wrote {export_path}", err=True)
        return
    import uvicorn
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
