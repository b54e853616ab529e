"""Command line entry points: serve, ingest <dump>, rebuild-index."""

from __future__ import annotations

import argparse
import sys

from .config import ServiceConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scireader")
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--data-dir", help="override the data directory")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)

    ingest = sub.add_parser("ingest", help="ingest a scholar-record/v1 dump")
    ingest.add_argument("dump", help="path to a JSON-lines dump, or '-' for stdin")

    sub.add_parser("rebuild-index", help="rebuild the search index from stored records")
    return parser


def load_config(args) -> ServiceConfig:
    config = ServiceConfig.load(args.config)
    if args.data_dir:
        config.data_dir = args.data_dir
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args)

    if args.command == "serve":
        import uvicorn

        from .app import create_app

        if args.host:
            config.host = args.host
        if args.port:
            config.port = args.port
        uvicorn.run(create_app(config), host=config.host, port=config.port)
        return 0

    from ..scholar import ScholarStore

    store = ScholarStore(f"{config.data_dir}/scholar")
    if args.command == "ingest":
        if args.dump == "-":
            lines = sys.stdin.readlines()
        else:
            with open(args.dump, encoding="utf-8") as fh:
                lines = fh.readlines()
        report = store.ingest(lines)
        print(
            "accepted %d, deduplicated %d, rejected %d"
            % (report.accepted, report.deduplicated, len(report.rejected))
        )
        for line_no, reason in report.rejected:
            print("  line %d: %s" % (line_no, reason), file=sys.stderr)
        return 0 if not report.rejected else 1

    if args.command == "rebuild-index":
        snap = store.rebuild_index()
        print("indexed %d records" % snap.doc_count)
        return 0
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
