"""Operator command line: ingestion, indexing, querying, workflows, evaluation, serving."""
from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path
from typing import Any

import click

from .agents import RequestKind, WorkflowRequest
from .config import EngineConfig, load_config
from .corpus import Sector, SubCorpus, read_interchange
from .demo import demo_records, demo_testset, write_corpus, write_testset
from .errors import (
    BackendUnavailable,
    CarbonGovError,
    RemoteUnavailable,
    SchemaViolation,
)
from .corpus import CorpusStore
from .evaluation import (
    ExpertReview,
    ReviewStore,
    TestQuery,
    load_testset,
    record_expert_review,
    render_review_table,
    render_table,
)
from .index import MetadataFilter, RetrievalConfig, VectorCache, VectorIndex
from .runtime import Engine, build_embedder

BACKEND_ERRORS = (BackendUnavailable, RemoteUnavailable, SchemaViolation)


def fail(exc: CarbonGovError) -> None:
    """Print the error and exit 2 for backend failures, 1 for everything else."""
    click.echo(f"error: {exc}", err=True)
    sys.exit(2 if isinstance(exc, BACKEND_ERRORS) else 1)


def build_filter(city, year_from, year_to, sector, sub_corpus) -> MetadataFilter:
    if (year_from is None) != (year_to is None):
        raise click.UsageError("--year-from and --year-to must be given together")
    try:
        sectors = frozenset({Sector(sector)}) if sector else None
        subs = frozenset(SubCorpus(s) for s in sub_corpus) if sub_corpus else None
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    return MetadataFilter(
        city=city,
        year_range=(year_from, year_to) if year_from is not None else None,
        sectors=sectors,
        sub_corpora=subs,
    )


@click.group()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Engine configuration file (JSON).")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--offline", is_flag=True,
              help="Force the deterministic embedder and template backend.")
@click.option("--demo", is_flag=True,
              help="Run against the bundled demonstration corpus in memory (implies --offline).")
@click.pass_context
def cli(ctx, config_path, as_json, offline, demo):
    """Evidence-grounded planning support for urban carbon governance."""
    ctx.ensure_object(dict)
    ctx.obj.update(config_path=config_path, as_json=as_json, offline=offline, demo=demo)


def load_cfg(ctx) -> EngineConfig:
    cfg = load_config(ctx.obj["config_path"]) if ctx.obj["config_path"] else EngineConfig()
    if ctx.obj["offline"] or ctx.obj["demo"]:
        cfg = dataclasses.replace(
            cfg,
            embedder=dataclasses.replace(cfg.embedder, kind="reference", endpoint=None, model=None),
            generator=dataclasses.replace(cfg.generator, kind="template", endpoint=None, model=None),
        )
    return cfg


def load_engine(ctx) -> Engine:
    cfg = load_cfg(ctx)
    if ctx.obj["demo"]:
        return Engine.demo(cfg)
    return Engine.from_config(cfg)


def emit(ctx, payload: dict[str, Any], human: str) -> None:
    if ctx.obj["as_json"]:
        click.echo(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        click.echo(human)


def describe_flags(flags: list[dict[str, Any]]) -> list[str]:
    lines = []
    for f in flags:
        ids = ", ".join(f.get("involved_chunk_ids", []))
        lines.append(f"  ! {f['kind']}: {f['message']}" + (f" ({ids})" if ids else ""))
    return lines


def render_answer(body: dict[str, Any]) -> str:
    lines = [body["answer_text"], ""]
    if body["evidence"]:
        lines.append("Evidence:")
        for e in body["evidence"]:
            md = e["metadata"]
            where = "/".join(str(x) for x in (md.get("city"), md.get("year"), md.get("sector")) if x)
            lines.append(f"  {e['similarity']:.4f}  {e['chunk_id']}  [{where or '-'}]")
    if body["key_numbers"]:
        lines.append("Key numbers:")
        for kn in body["key_numbers"]:
            lines.append(
                f"  {kn['value']:g} {kn['unit']}  {kn['indicator']}  <- {kn['source_chunk_id']}")
    lines.extend(describe_flags(body["flags"]))
    return "\n".join(lines)


@cli.command()
@click.argument("sources", nargs=-1, type=click.Path(path_type=Path))
@click.option("--bundled", is_flag=True, help="Also ingest the bundled demonstration records.")
@click.pass_context
def ingest(ctx, sources, bundled):
    """Ingest document records (JSONL files) into the corpus and index."""
    if not sources and not bundled:
        raise click.UsageError("nothing to ingest: pass record files or --bundled")
    try:
        engine = load_engine(ctx)
        records: list[dict[str, Any]] = []
        for path in sources:
            records.extend(read_interchange(path))
        if bundled:
            records.extend(demo_records())
        ndocs, nchunks, warnings = engine.ingest(records)
    except CarbonGovError as e:
        fail(e)
    for w in warnings:
        click.echo(f"warning: {w}", err=True)
    emit(ctx, {"documents": ndocs, "chunks": nchunks, "warnings": warnings},
         f"ingested {ndocs} documents ({nchunks} chunks)")


@cli.group()
def index():
    """Build and query the vector index."""


@index.command("build")
@click.option("--corpus", "corpus_dir", type=click.Path(path_type=Path), default=None,
              help="Corpus directory (defaults to the configured one).")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Snapshot destination (defaults to the configured index path).")
@click.pass_context
def index_build(ctx, corpus_dir, out_path):
    """Embed every chunk of a corpus and persist the index snapshot."""
    try:
        cfg = load_cfg(ctx)
        if corpus_dir is not None:
            cfg = dataclasses.replace(cfg, corpus_dir=corpus_dir)
        if out_path is not None:
            cfg = dataclasses.replace(cfg, index_path=out_path)
        if cfg.corpus_dir is None or cfg.index_path is None:
            raise click.UsageError("index build needs --corpus and --out (or a config with both)")
        store = CorpusStore.load(cfg.corpus_dir)
        cache = VectorCache(cfg.cache_path) if cfg.cache_path else None
        idx = VectorIndex(build_embedder(cfg), cache=cache, path=cfg.index_path)
        n = idx.upsert_texts((c.chunk_id, c.text, c.metadata) for c in store.iter_chunks())
        written = idx.persist()
    except CarbonGovError as e:
        fail(e)
    emit(ctx, {"chunks": n, "snapshot": str(written)},
         f"indexed {n} chunks -> {written}")


@index.command("query")
@click.option("--idx", "idx_path", type=click.Path(path_type=Path), default=None,
              help="Index snapshot (defaults to the configured index path).")
@click.option("--q", "query_text", required=True, help="Query text.")
@click.option("--k", default=5, show_default=True, help="Results to return.")
@click.option("--city", default=None)
@click.option("--year-from", type=int, default=None)
@click.option("--year-to", type=int, default=None)
@click.option("--sector", default=None)
@click.option("--sub-corpus", multiple=True)
@click.pass_context
def index_query(ctx, idx_path, query_text, k, city, year_from, year_to, sector, sub_corpus):
    """Rank indexed chunks against a query."""
    flt = build_filter(city, year_from, year_to, sector, sub_corpus)
    try:
        cfg = load_cfg(ctx)
        path = idx_path or cfg.index_path
        if path is None:
            raise click.UsageError("index query needs --idx (or a config with index_path)")
        idx = VectorIndex.load(path, build_embedder(cfg))
        hits = idx.search_top_k(query_text, RetrievalConfig(k=k), flt)
    except CarbonGovError as e:
        fail(e)
    rows = []
    for hit in hits:
        md = idx.entry(hit.chunk_id).metadata
        rows.append({"chunk_id": hit.chunk_id, "similarity": hit.similarity, "city": md.city,
                     "year": md.year, "sector": md.sector.value if md.sector else None})
    human = "\n".join(
        f"{r['similarity']:.6f}  {r['chunk_id']}  "
        f"[{'/'.join(str(x) for x in (r['city'], r['year'], r['sector']) if x) or '-'}]"
        for r in rows) or "no results"
    emit(ctx, {"hits": rows}, human)


@cli.command()
@click.option("--q", "question", required=True, help="The factual question to answer.")
@click.option("--k", type=int, default=None, help="Evidence chunks to retrieve.")
@click.option("--city", default=None)
@click.option("--year-from", type=int, default=None)
@click.option("--year-to", type=int, default=None)
@click.option("--sector", default=None)
@click.option("--sub-corpus", multiple=True)
@click.option("--no-retrieval", is_flag=True, help="Answer from the backend alone (control).")
@click.pass_context
def qa(ctx, question, k, city, year_from, year_to, sector, sub_corpus, no_retrieval):
    """Answer a factual question with cited evidence."""
    flt = build_filter(city, year_from, year_to, sector, sub_corpus)
    try:
        engine = load_engine(ctx)
        answer = engine.qa(question, k=k, flt=flt, use_retrieval=not no_retrieval)
    except CarbonGovError as e:
        fail(e)
    body = answer.to_dict()
    emit(ctx, body, render_answer(body))


def run_city_workflow(ctx, kind: RequestKind, city: str) -> dict[str, Any]:
    try:
        engine = load_engine(ctx)
        result = engine.workflow(WorkflowRequest(kind=kind, city=city))
    except CarbonGovError as e:
        fail(e)
    return result.to_dict()


@cli.command()
@click.option("--city", required=True)
@click.pass_context
def assess(ctx, city):
    """Diagnose a city's emission status from the corpus."""
    result = run_city_workflow(ctx, RequestKind.Assess, city)
    diag = result["outputs"]["Assessment"]
    lines = [f"Assessment for {diag['city']}"]
    if diag["total_emissions"]:
        te = diag["total_emissions"]
        lines.append(f"  total emissions: {te['value']:g} {te['unit']} ({te['year']})")
    for name, ss in sorted(diag["sector_shares"].items(), key=lambda kv: -kv[1]["share"]):
        bar = "#" * round(ss["share"] * 40)
        lines.append(f"  {name:<12} {ss['share']*100:5.1f}% {bar}")
    lines.append(f"  trend: {diag['trend_stage']}"
                 + (f", span {diag['time_span'][0]}-{diag['time_span'][1]}" if diag["time_span"] else ""))
    lines.append(f"  peaking: {diag['peaking_status']}")
    lines.extend(describe_flags(diag["flags"]))
    emit(ctx, result, "\n".join(lines))


@cli.command()
@click.option("--city", required=True)
@click.pass_context
def plan(ctx, city):
    """Generate a five-section governance plan for a city."""
    result = run_city_workflow(ctx, RequestKind.Plan, city)
    gp = result["outputs"]["Planning"]
    lines = [f"Governance plan for {gp['city']}", "Goals:"]
    lines.extend(f"  - {g['text']}" for g in gp["goals"])
    for section, recs in gp["sections"].items():
        lines.append(f"{section}:")
        if not recs:
            lines.append("  (no evidence-supported measures)")
        for r in recs:
            ids = ", ".join(r["chunk_ids"])
            lines.append(f"  - {r['text']} [{ids}]")
    lines.extend(describe_flags(gp["flags"]))
    emit(ctx, result, "\n".join(lines))


@cli.command()
@click.option("--city", required=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Also write the full result as JSON.")
@click.pass_context
def report(ctx, city, out_path):
    """Produce the consolidated governance report for a city."""
    result = run_city_workflow(ctx, RequestKind.Report, city)
    doc = result["outputs"]["Report"]
    lines = [doc["title"], "=" * len(doc["title"])]
    for section in doc["sections"]:
        lines.append("")
        lines.append(f"## {section['heading']}")
        lines.extend(section["paragraphs"])
    if out_path is not None:
        out_path.write_text(json.dumps(result, ensure_ascii=False, indent=2), encoding="utf-8")
        lines.append(f"\nwrote {out_path}")
    emit(ctx, result, "\n".join(lines))


@cli.group("eval")
def eval_group():
    """Factual-retrieval scoring and expert reviews."""


@eval_group.command("run")
@click.option("--testset", "testset_path", type=click.Path(path_type=Path), default=None,
              help="Query set (JSONL); defaults to the bundled ten queries.")
@click.option("--idx", "idx_path", type=click.Path(path_type=Path), default=None,
              help="Index snapshot to evaluate against (defaults to the configured one).")
@click.option("--no-rag", is_flag=True, help="Disable retrieval (control condition).")
@click.option("--setting", default=None, help="Label for the report row.")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Write the aggregate report as JSON.")
@click.pass_context
def eval_run(ctx, testset_path, idx_path, no_rag, setting, out_path):
    """Score the query set and print the aggregate table."""
    try:
        cfg = load_cfg(ctx)
        if idx_path is not None:
            cfg = dataclasses.replace(cfg, index_path=idx_path)
        engine = Engine.demo(cfg) if ctx.obj["demo"] else Engine.from_config(cfg)
        queries = (load_testset(testset_path) if testset_path
                   else [TestQuery.from_dict(r) for r in demo_testset()])
        agg = engine.eval_suite(queries, rag_enabled=not no_rag, setting=setting)
    except CarbonGovError as e:
        fail(e)
    payload = agg.to_dict()
    if out_path is not None:
        out_path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    human = render_table([agg])
    if agg.failures:
        human += "\n" + "\n".join(f"failed {qid}: {msg}" for qid, msg in agg.failures)
    emit(ctx, payload, human)


def review_store(ctx, store_path: Path | None) -> ReviewStore:
    if store_path is None:
        cfg = load_cfg(ctx)
        base = cfg.artifacts_dir or Path(".")
        store_path = base / "reviews.jsonl"
    return ReviewStore(store_path)


@eval_group.group("review")
def review_group():
    """Record and inspect expert rubric scores."""


@review_group.command("add")
@click.option("--artifact", "artifact_id", required=True, help="Artifact being reviewed.")
@click.option("--reviewer", required=True)
@click.option("--relevance", type=int, required=True)
@click.option("--coverage", type=int, required=True)
@click.option("--coherence", type=int, required=True)
@click.option("--grounding", type=int, required=True)
@click.option("--note", "notes", multiple=True, metavar="METRIC=TEXT",
              help="Attach a note to one metric; repeatable.")
@click.option("--store", "store_path", type=click.Path(path_type=Path), default=None,
              help="Review file (defaults to reviews.jsonl under the artifacts directory).")
@click.pass_context
def review_add(ctx, artifact_id, reviewer, relevance, coverage, coherence, grounding,
               notes, store_path):
    """Append one expert review."""
    note_map = {}
    for item in notes:
        metric, _, text = item.partition("=")
        note_map[metric] = text
    try:
        review = ExpertReview(
            artifact_id=artifact_id,
            reviewer=reviewer,
            scores={"Relevance": relevance, "Coverage": coverage,
                    "Coherence": coherence, "Grounding": grounding},
            notes=note_map,
        )
        review_id = record_expert_review(review, review_store(ctx, store_path))
    except CarbonGovError as e:
        fail(e)
    emit(ctx, {**review.to_dict(), "review_id": review_id},
         f"recorded review {review_id} for {artifact_id}")


@review_group.command("show")
@click.option("--artifact", "artifact_id", required=True)
@click.option("--store", "store_path", type=click.Path(path_type=Path), default=None)
@click.pass_context
def review_show(ctx, artifact_id, store_path):
    """Print all reviews recorded for an artifact."""
    try:
        store = review_store(ctx, store_path)
    except CarbonGovError as e:
        fail(e)
    reviews = store.for_artifact(artifact_id)
    emit(ctx, {"reviews": [r.to_dict() for r in reviews]},
         render_review_table(store, artifact_id))


@cli.command()
@click.option("--bind", "bind_addr", default=None, metavar="HOST:PORT",
              help="Listen address (defaults to the configured one).")
@click.pass_context
def serve(ctx, bind_addr):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    try:
        cfg = load_cfg(ctx)
        if bind_addr is not None:
            cfg = dataclasses.replace(
                cfg, server=dataclasses.replace(cfg.server, bind_addr=bind_addr))
        engine = Engine.demo(cfg) if ctx.obj["demo"] else Engine.from_config(cfg)
        app = create_app(engine)
        host, port = cfg.server.host, cfg.server.port
    except CarbonGovError as e:
        fail(e)
    click.echo(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="info")


@cli.command("write-demo")
@click.option("--corpus-dir", type=click.Path(path_type=Path), required=True,
              help="Directory to receive the demonstration record files.")
@click.option("--testset", "testset_path", type=click.Path(path_type=Path), default=None,
              help="Also write the ten-query evaluation set here.")
@click.pass_context
def write_demo(ctx, corpus_dir, testset_path):
    """Write the bundled demonstration records to disk for inspection or re-ingestion."""
    try:
        records_path = write_corpus(corpus_dir)
        paths = {"records": str(records_path)}
        if testset_path is not None:
            paths["testset"] = str(write_testset(testset_path))
    except CarbonGovError as e:
        fail(e)
    emit(ctx, paths, "\n".join(f"wrote {p}" for p in paths.values()))


def main() -> None:
    cli(prog_name="carbongov")


if __name__ == "__main__":
    main()
