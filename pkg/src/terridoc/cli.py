"""Command-line pipeline: build, export, stats, serve.

Exit codes: 0 success, 1 input validation failure, 2 environment or
I/O failure. All behavior is controlled by flags; no environment
variables are consulted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from functools import partial
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from mimetypes import guess_type
from pathlib import Path

from .errors import TerridocError, ValidationError
from .exports import export_dot, export_json, export_turtle, import_json
from .gazetteer import load_gazetteer
from .graph import enrich, extract_corpus_terms, graph_stats
from .notices import head_term, parse_notices
from .ontology import DEFAULT_NEAR_KM, Ontology, Report, build_ontology
from .patterns import default_lexicon, extract_from_notices, link_qualifiers, load_lexicon
from .thesaurus import load_thesaurus, normalize_label

logger = logging.getLogger(__name__)

LINK_POLICIES = ("existing", "create")


@dataclass(frozen=True)
class PipelineConfig:
    notices_path: Path
    thesaurus_path: Path
    gazetteer_path: Path
    out_dir: Path
    lexicon_dir: Path | None = None
    spatial_relations: bool = False
    near_km: float = DEFAULT_NEAR_KM
    link_policy: str = "existing"


def run_build(config: PipelineConfig) -> dict:
    """Run the full pipeline and write the four output files.

    Returns the report document. Raises TerridocError for invalid
    inputs and lets OSError escape for environment failures.
    """
    if config.near_km <= 0:
        raise ValidationError("near-km must be positive")
    if config.link_policy not in LINK_POLICIES:
        raise ValidationError(f"unknown link policy {config.link_policy!r}")
    for path in (config.notices_path, config.thesaurus_path, config.gazetteer_path):
        if not path.is_file():
            raise ValidationError(f"input file not found: {path}")
    if config.lexicon_dir is not None and not config.lexicon_dir.is_dir():
        raise ValidationError(f"lexicon directory not found: {config.lexicon_dir}")

    notices = parse_notices(config.notices_path.read_text(encoding="utf-8"))
    thesaurus = load_thesaurus(config.thesaurus_path.read_text(encoding="utf-8"))
    gazetteer = load_gazetteer(config.gazetteer_path.read_text(encoding="utf-8"))
    lexicon = (
        load_lexicon(config.lexicon_dir)
        if config.lexicon_dir is not None
        else default_lexicon()
    )

    graph = enrich(extract_corpus_terms(notices), thesaurus)
    candidates = extract_from_notices(notices, lexicon)
    linked = link_qualifiers(candidates, graph)
    ontology, report = build_ontology(
        graph,
        gazetteer,
        linked,
        link_policy=config.link_policy,
        spatial_relations=config.spatial_relations,
        near_km=config.near_km,
    )

    report_doc = _report_document(notices, graph, ontology, candidates, report)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    _write(config.out_dir / "terridoc.json", export_json(ontology))
    _write(config.out_dir / "ontology.ttl", export_turtle(ontology))
    _write(config.out_dir / "graph.dot", export_dot(ontology))
    _write(
        config.out_dir / "report.json",
        json.dumps(report_doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
    )
    return report_doc


def _write(path: Path, content: str) -> None:
    path.write_text(content, encoding="utf-8", newline="\n")


def _report_document(notices, graph, ontology: Ontology, candidates, report: Report) -> dict:
    graph_section = graph_stats(graph)
    graph_section["head_terms"] = sorted(
        {head_term(h) for notice in notices for h in notice.headings},
        key=normalize_label,
    )
    edge_counts: dict[str, int] = {}
    for edge in ontology.edges:
        edge_counts[edge.type] = edge_counts.get(edge.type, 0) + 1
    return {
        "notices": len(notices),
        "graph": graph_section,
        "ontology": {
            "concepts": len(ontology.concepts),
            "instances": len(ontology.instances),
            "edges": dict(sorted(edge_counts.items())),
        },
        "text": {
            "candidates": len(candidates),
            "text_links": report.text_links,
            "dropped_candidates": report.dropped_candidates,
            "unlinked_qualifiers": report.unlinked_qualifiers,
        },
        "spatial": {
            "ambiguous": report.ambiguous,
            "dropped_edges": report.dropped_edges,
        },
    }


def _cmd_build(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        notices_path=Path(args.notices),
        thesaurus_path=Path(args.thesaurus),
        gazetteer_path=Path(args.gazetteer),
        out_dir=Path(args.out_dir),
        lexicon_dir=Path(args.lexicon_dir) if args.lexicon_dir else None,
        spatial_relations=args.spatial_relations,
        near_km=args.near_km,
        link_policy=args.link_policy,
    )
    report = run_build(config)
    ontology = report["ontology"]
    print(
        f"wrote {config.out_dir}/terridoc.json: "
        f"{ontology['concepts']} concepts, {ontology['instances']} instances, "
        f"{sum(ontology['edges'].values())} edges"
    )
    return 0


def _load_graph_file(path: Path) -> Ontology:
    if not path.is_file():
        raise ValidationError(f"graph file not found: {path}")
    return import_json(path.read_text(encoding="utf-8"))


def _cmd_export(args: argparse.Namespace) -> int:
    ontology = _load_graph_file(Path(args.graph))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write(out_dir / "ontology.ttl", export_turtle(ontology))
    _write(out_dir / "graph.dot", export_dot(ontology))
    print(f"wrote {out_dir}/ontology.ttl and {out_dir}/graph.dot")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    ontology = _load_graph_file(Path(args.graph))
    edge_counts: dict[str, int] = {}
    for edge in ontology.edges:
        edge_counts[edge.type] = edge_counts.get(edge.type, 0) + 1
    stats = {
        "concepts": len(ontology.concepts),
        "temporal": sum(1 for c in ontology.concepts.values() if c.temporal),
        "instances": len(ontology.instances),
        "edges": dict(sorted(edge_counts.items())),
    }
    print(json.dumps(stats, ensure_ascii=False, indent=2, sort_keys=True))
    return 0


class _NavigatorHandler(BaseHTTPRequestHandler):
    graph_path: Path
    ui_dir: Path | None

    def __init__(self, *args, graph_path: Path, ui_dir: Path | None, **kwargs):
        self.graph_path = graph_path
        self.ui_dir = ui_dir
        super().__init__(*args, **kwargs)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        if path == "/health":
            self._send(200, "application/json", b'{"status": "ok"}\n')
        elif path == "/graph.json":
            try:
                payload = self.graph_path.read_bytes()
            except OSError:
                self._send(404, "text/plain; charset=utf-8", b"graph file missing\n")
                return
            self._send(200, "application/json", payload)
        else:
            self._send_static(path)

    def _send_static(self, path: str) -> None:
        if self.ui_dir is None:
            self._send(404, "text/plain; charset=utf-8", b"not found\n")
            return
        relative = path.lstrip("/") or "index.html"
        base = self.ui_dir.resolve()
        target = (base / relative).resolve()
        if base not in target.parents and target != base:
            self._send(404, "text/plain; charset=utf-8", b"not found\n")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send(404, "text/plain; charset=utf-8", b"not found\n")
            return
        content_type = guess_type(target.name)[0] or "application/octet-stream"
        self._send(200, content_type, target.read_bytes())

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, format: str, *args) -> None:
        logger.debug("serve: " + format, *args)


def build_server(
    graph_path: Path,
    ui_dir: Path | None,
    port: int,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Bind the navigator server; raises OSError when the port is taken."""
    if not graph_path.is_file():
        raise ValidationError(f"graph file not found: {graph_path}")
    if ui_dir is not None and not ui_dir.is_dir():
        raise ValidationError(f"ui directory not found: {ui_dir}")
    handler = partial(_NavigatorHandler, graph_path=graph_path, ui_dir=ui_dir)
    return ThreadingHTTPServer((host, port), handler)


def _cmd_serve(args: argparse.Namespace) -> int:
    server = build_server(
        graph_path=Path(args.graph),
        ui_dir=Path(args.ui_dir) if args.ui_dir else None,
        port=args.port,
        host=args.host,
    )
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (ctrl-c to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terridoc",
        description="Build and explore a territory ontology from catalog notices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="run the full pipeline")
    build.add_argument("--notices", required=True, help="NOTICES XML file")
    build.add_argument("--thesaurus", required=True, help="thesaurus JSON Lines file")
    build.add_argument("--gazetteer", required=True, help="gazetteer CSV file")
    build.add_argument("--out-dir", required=True, help="output directory")
    build.add_argument("--lexicon-dir", help="directory with det.txt, prep.txt, cc.txt")
    build.add_argument(
        "--spatial-relations",
        action="store_true",
        help="derive within/near relations from gazetteer geometry",
    )
    build.add_argument(
        "--near-km",
        type=float,
        default=DEFAULT_NEAR_KM,
        help=f"proximity threshold in km (default {DEFAULT_NEAR_KM:g})",
    )
    build.add_argument(
        "--link-policy",
        choices=LINK_POLICIES,
        default="existing",
        help="what to do with qualifiers that match no graph node",
    )
    build.set_defaults(func=_cmd_build)

    export = sub.add_parser("export", help="re-serialize an existing graph document")
    export.add_argument("--graph", required=True, help="terridoc.json file")
    export.add_argument("--out-dir", required=True, help="output directory")
    export.set_defaults(func=_cmd_export)

    stats = sub.add_parser("stats", help="print summary counts of a graph document")
    stats.add_argument("--graph", required=True, help="terridoc.json file")
    stats.set_defaults(func=_cmd_stats)

    serve = sub.add_parser("serve", help="serve the graph and the navigator UI")
    serve.add_argument("--graph", required=True, help="terridoc.json file")
    serve.add_argument("--ui-dir", help="static UI directory")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TerridocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
