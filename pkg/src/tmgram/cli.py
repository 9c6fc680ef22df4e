"""Command-line client for the translation memory.

Most subcommands open the store in process via --db; query, suggest,
commit, stats, import, and export can instead talk to a running service
with --server URL. Exit codes: 0 on success, 1 with a diagnostic on stderr,
2 on usage errors (argparse).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import ApiConfig, Engine
from .errors import TmError
from .evaluation import evaluate, generate_corpus, make_testsets
from .index import MatchResult
from .ngrams import DEFAULT_MULTIPLIER, DEFAULT_ORDER
from .phrases import SuggestReport

__all__ = ["main", "build_parser"]


def _engine_parent(require_db: bool = True) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--db", required=require_db, help="local store file")
    parent.add_argument("--global-db", help="shared read-mostly store file")
    parent.add_argument("--order", type=int, default=DEFAULT_ORDER,
                        help="gram window size (default 3)")
    parent.add_argument("--k", type=float, default=DEFAULT_MULTIPLIER,
                        help="similarity multiplier (default 3)")
    parent.add_argument("--lexicon", help="part-of-speech lexicon file")
    parent.add_argument("--rules", help="sentence segmentation rules file")
    parent.add_argument("--format", choices=("text", "structured"),
                        default="text", help="output format")
    return parent


def _server_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--server", help="base URL of a running service")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tm", description="translation memory engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    engine_p = _engine_parent()
    # Dual-mode commands can run against a server instead, so --db is
    # checked in main() only when no --server is given.
    dual_p = _engine_parent(require_db=False)
    server_p = _server_parent()

    p = sub.add_parser("query", parents=[dual_p, server_p],
                       help="rank stored sentences against a query")
    p.add_argument("text")
    p.add_argument("--limit", type=int, default=5)

    p = sub.add_parser("suggest", parents=[dual_p, server_p],
                       help="sentence and phrase suggestions for a query")
    p.add_argument("text")
    p.add_argument("--limit", type=int, default=5)

    p = sub.add_parser("commit", parents=[dual_p, server_p],
                       help="store a confirmed translation pair")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--scope", choices=("local", "global"), default="local")

    p = sub.add_parser("import", parents=[dual_p, server_p],
                       help="import a TMX file")
    p.add_argument("file")
    p.add_argument("--scope", choices=("local", "global"), default="local")

    p = sub.add_parser("export", parents=[dual_p, server_p],
                       help="export the store as TMX")
    p.add_argument("--scope", choices=("local", "global", "all"), default="all")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    sub.add_parser("stats", parents=[dual_p, server_p],
                   help="unit counts and engine parameters")

    p = sub.add_parser("serve", parents=[engine_p],
                       help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--cors", action="append", default=[],
                   help="allowed CORS origin (repeatable)")

    p = sub.add_parser("eval", parents=[engine_p],
                       help="evaluate a TSV test set against the store")
    p.add_argument("--testset", required=True)
    p.add_argument("--audit", help="write a per-line JSONL trace here")
    p.add_argument("--name", help="report name (default: file stem)")

    p = sub.add_parser("make-testsets", parents=[engine_p],
                       help="derive setA/setB/setC and a train store")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--sizes", default="200,200,200",
                   help="comma-separated set sizes (default 200,200,200)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen-corpus", parents=[engine_p],
                       help="write a synthetic bilingual corpus store")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vocab-size", type=int, default=1200)

    return parser


def _config(args: argparse.Namespace) -> ApiConfig:
    return ApiConfig(
        local_store=args.db,
        global_store=args.global_db,
        order=args.order,
        k=args.k,
        lexicon_path=args.lexicon,
        rules_path=args.rules,
        host=getattr(args, "host", "127.0.0.1"),
        port=getattr(args, "port", 8077),
        cors_origins=tuple(getattr(args, "cors", ()) or ()),
    )


def _result_dict(m: MatchResult) -> dict:
    return {
        "rank": m.rank,
        "score": m.score.value,
        "kind": m.kind,
        "source": m.unit.source.raw,
        "target": m.unit.target.raw,
        "unit_id": m.unit.id,
    }


def _suggest_dict(report: SuggestReport) -> dict:
    return {
        "sentence_matches": [_result_dict(m) for m in report.sentence_matches],
        "phrase_matches": [
            {
                "phrase": g.phrase,
                "span": list(g.span),
                "char_start": g.char_start,
                "char_end": g.char_end,
                "suggestions": [
                    {
                        "rank": s.rank,
                        "score": s.score.value,
                        "source": s.unit.source.raw,
                        "target": s.target_text,
                        "unit_id": s.unit.id,
                    }
                    for s in g.suggestions
                ],
            }
            for g in report.phrase_matches
        ],
    }


def _emit(data: dict | list, fmt: str, text_lines: list[str]) -> None:
    if fmt == "structured":
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        for line in text_lines:
            print(line)


def _result_lines(results: list[dict]) -> list[str]:
    lines = []
    for r in results:
        lines.append(
            f"{r['rank']}. [{r['kind']}] {r['score']:.3f}  "
            f"{r['source']}  =>  {r['target']}"
        )
    return lines or ["no matches"]


def _suggest_lines(data: dict) -> list[str]:
    lines = ["sentence matches:"]
    if data["sentence_matches"]:
        lines.extend("  " + l for l in _result_lines(data["sentence_matches"]))
    else:
        lines.append("  none")
    lines.append("phrase matches:")
    if data["phrase_matches"]:
        for g in data["phrase_matches"]:
            span = g["span"]
            lines.append(f'  "{g["phrase"]}" [{span[0]}..{span[1]}]')
            for s in g["suggestions"]:
                lines.append(
                    f"    {s['rank']}. {s['score']:.3f}  "
                    f"{s['source']}  =>  {s['target']}"
                )
    else:
        lines.append("  none")
    return lines


# -- server-backed commands --------------------------------------------------


def _client(base: str):
    import httpx

    return httpx.Client(base_url=base.rstrip("/"), timeout=30.0)


def _remote(args: argparse.Namespace) -> int:
    import httpx

    try:
        return _remote_inner(args)
    except httpx.HTTPStatusError as exc:
        raise TmError(
            f"server returned {exc.response.status_code}: {exc.response.text}"
        ) from exc
    except httpx.HTTPError as exc:
        raise TmError(f"cannot reach {args.server}: {exc}") from exc


def _remote_inner(args: argparse.Namespace) -> int:
    with _client(args.server) as client:
        if args.command == "query":
            resp = client.post(
                "/api/query", json={"text": args.text, "limit": args.limit}
            )
            resp.raise_for_status()
            data = resp.json()
            _emit(data, args.format, _result_lines(data["results"]))
        elif args.command == "suggest":
            resp = client.post(
                "/api/suggest", json={"text": args.text, "limit": args.limit}
            )
            resp.raise_for_status()
            data = resp.json()
            _emit(data, args.format, _suggest_lines(data))
        elif args.command == "commit":
            resp = client.post(
                "/api/commit",
                json={
                    "source": args.source,
                    "target": args.target,
                    "scope": args.scope,
                },
            )
            resp.raise_for_status()
            data = resp.json()
            verb = "committed" if data["created"] else "already stored"
            _emit(data, args.format, [f"{verb} {data['unit_id']}"])
        elif args.command == "stats":
            resp = client.get("/api/stats")
            resp.raise_for_status()
            data = resp.json()
            _emit(data, args.format, _stats_lines(data))
        elif args.command == "import":
            payload = Path(args.file).read_bytes()
            resp = client.post(
                "/api/import",
                params={"scope": args.scope},
                content=payload,
                headers={"content-type": "application/xml"},
            )
            resp.raise_for_status()
            data = resp.json()
            _emit(data, args.format, [_import_line(data)])
        elif args.command == "export":
            resp = client.get("/api/export", params={"scope": args.scope})
            resp.raise_for_status()
            _write_export(resp.content, args.output)
        else:
            raise TmError(f"{args.command} cannot run against --server")
    return 0


def _stats_lines(data: dict) -> list[str]:
    return [
        f"units: {data['units']} (local {data['local_units']}, "
        f"global {data['global_units']})",
        f"order: {data['order']}  k: {data['k']}",
    ]


def _import_line(data: dict) -> str:
    return (
        f"added {data['added']}, skipped {data['skipped']} duplicates, "
        f"{data['malformed']} malformed"
    )


def _write_export(data: bytes, output: str | None) -> None:
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


# -- local commands ------------------------------------------------------------


def _run_local(args: argparse.Namespace) -> int:
    command = args.command
    if command == "gen-corpus":
        generate_corpus(
            args.db, count=args.count, seed=args.seed, vocab_size=args.vocab_size
        )
        print(f"wrote {args.count} units to {args.db}")
        return 0
    if command == "make-testsets":
        sizes = tuple(int(s) for s in args.sizes.split(","))
        if len(sizes) != 3:
            raise TmError(f"--sizes needs three numbers, got {args.sizes!r}")
        bundle = make_testsets(args.db, args.out, sizes=sizes, seed=args.seed)
        print(f"setA: {bundle.set_a}")
        print(f"setB: {bundle.set_b}")
        print(f"setC: {bundle.set_c}")
        print(f"train store: {bundle.train_store}")
        return 0
    if command == "serve":
        from .service import run_server

        run_server(_config(args))
        return 0

    read_only = command in ("query", "suggest", "stats", "export", "eval")
    with Engine(_config(args), read_only=read_only) as engine:
        if command == "query":
            matches = engine.query(args.text, limit=args.limit)
            data = {
                "results": [_result_dict(m) for m in matches],
                "k": engine.config.k,
                "order": engine.config.order,
            }
            _emit(data, args.format, _result_lines(data["results"]))
        elif command == "suggest":
            report = engine.suggest(args.text, limit=args.limit)
            data = _suggest_dict(report)
            data["k"] = engine.config.k
            data["order"] = engine.config.order
            _emit(data, args.format, _suggest_lines(data))
        elif command == "commit":
            unit, created = engine.commit(
                args.source, args.target, scope=args.scope
            )
            verb = "committed" if created else "already stored"
            data = {"unit_id": unit.id, "created": created}
            _emit(data, args.format, [f"{verb} {unit.id}"])
        elif command == "import":
            payload = Path(args.file).read_bytes()
            summary = engine.import_tmx(payload, scope=args.scope)
            data = {
                "added": summary.added,
                "skipped": summary.skipped,
                "malformed": summary.malformed,
            }
            _emit(data, args.format, [_import_line(data)])
        elif command == "export":
            _write_export(engine.export_tmx(scope=args.scope), args.output)
        elif command == "stats":
            s = engine.stats()
            data = {
                "units": s.units,
                "local_units": s.local_units,
                "global_units": s.global_units,
                "order": s.order,
                "k": s.k,
            }
            _emit(data, args.format, _stats_lines(data))
        elif command == "eval":
            report = evaluate(
                engine, args.testset, name=args.name, audit_path=args.audit
            )
            data = {
                "name": report.name,
                "count": report.count,
                "malformed": report.malformed,
                "exact_rate": report.exact_rate,
                "coverage_rate": report.coverage_rate,
                "best_accuracy": report.best_accuracy,
                "mean_latency_ms": report.mean_latency_ms,
                "p95_latency_ms": report.p95_latency_ms,
            }
            _emit(
                data,
                args.format,
                [
                    f"set: {report.name}  lines: {report.count} "
                    f"(malformed {report.malformed})",
                    f"exact-match rate:   {report.exact_rate:.3f}",
                    f"coverage rate:      {report.coverage_rate:.3f}",
                    f"best accuracy:      {report.best_accuracy:.3f}",
                    f"mean latency (ms):  {report.mean_latency_ms:.2f}",
                    f"p95 latency (ms):   {report.p95_latency_ms:.2f}",
                ],
            )
        else:
            raise TmError(f"unknown command {command!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "server", None) is None and getattr(args, "db", None) is None:
        parser.error(f"{args.command} needs --db or --server")
    try:
        if getattr(args, "server", None):
            return _remote(args)
        return _run_local(args)
    except (TmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
