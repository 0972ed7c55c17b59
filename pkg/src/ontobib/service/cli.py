"""Administrative command line: ingestion, maintenance, and `serve`.

The CLI is a thin client over the portal facade; each command maps to one
portal operation, persists its result under the data directory, and exits
nonzero on failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ontobib.service.config import PortalConfig
from ontobib.service.state import Portal


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontobib",
        description="Ontology-driven bibliographic search portal",
    )
    parser.add_argument("--config", type=Path, default=None, help="path to config JSON")
    parser.add_argument("--data-dir", type=Path, default=None,
                        help="data directory (overrides config and ONTOBIB_DATA_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-ccs", help="load the CCS flat-text taxonomy")
    p.add_argument("file", type=Path, nargs="?", default=None)

    p = sub.add_parser("ingest-descriptors", help="attach the implicit-descriptor list")
    p.add_argument("file", type=Path, nargs="?", default=None)

    for name, help_text in (("ingest-corpus", "parse, classify and store a bibliography"),
                            ("update-corpus", "apply an incremental bibliography update")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", type=Path)
        p.add_argument("--format", choices=("bibtex", "dblp"), default="bibtex")

    p = sub.add_parser("translate", help="bootstrap machine translations for node labels")
    p.add_argument("--language", default="fr")
    p.add_argument("--glossary", type=Path, default=None)

    p = sub.add_parser("reclassify-orphans", help="promote clusters of provisional records")
    p.add_argument("--min-cluster", type=int, default=None)
    p.add_argument("--min-shared", type=int, default=None)

    sub.add_parser("rebuild-snapshot", help="rewrite the ontology and corpus snapshot files")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)

    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = PortalConfig.load(args.config)
    if args.data_dir is not None:
        config.data_dir = args.data_dir

    try:
        portal = Portal(config)
        if args.command == "ingest-ccs":
            path = args.file or config.ccs_path
            if path is None:
                raise ValueError("no CCS file given (argument or config ccs_path)")
            count = portal.ingest_ccs(path)
            print(f"ingested {count} ontology nodes from {path}")
        elif args.command == "ingest-descriptors":
            path = args.file or config.descriptors_path
            if path is None:
                raise ValueError("no descriptor file given (argument or config descriptors_path)")
            count = portal.ingest_descriptors(path)
            print(f"attached {count} descriptors from {path}")
        elif args.command in ("ingest-corpus", "update-corpus"):
            count, warnings = portal.ingest_corpus(args.file, args.format)
            for warning in warnings:
                print(f"warning: {warning}", file=sys.stderr)
            print(f"stored {count} records from {args.file}")
        elif args.command == "translate":
            result = portal.translate(args.language, args.glossary)
            print(f"translated {len(result.translations)} labels "
                  f"({len(result.failures)} fell back to English)")
        elif args.command == "reclassify-orphans":
            moved = portal.reclassify(args.min_cluster, args.min_shared)
            print(f"promoted {moved} provisional records")
        elif args.command == "rebuild-snapshot":
            portal.rebuild_snapshot()
            print(f"snapshots rewritten under {config.data_dir}")
        elif args.command == "serve":
            import uvicorn
            from ontobib.service.app import create_app
            port = args.port if args.port is not None else config.port
            uvicorn.run(create_app(portal), host=args.host, port=port)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
