"""Command-line interface.

One executable, one subcommand per pipeline stage::

    locnorm build-gazetteer            # validate a gazetteer, print stats
    locnorm extract-sequences ...      # corpus → co-occurrence sequences
    locnorm train-embeddings ...       # sequences → geographic embeddings
    locnorm build-roi ...              # sequences → knowledge base
    locnorm normalize ...              # text / JSONL batch → division paths
    locnorm evaluate ...               # predictions vs gold → P / R / F1
    locnorm bench ...                  # throughput measurement
    locnorm serve                      # HTTP service
    locnorm emit-cluster-data ...      # synthetic clustering demo
    locnorm make-fixtures ...          # build the bundled demo artifacts

Global flags (``--gazetteer``, ``--embeddings``, ``--roi-store``,
``--config``, ``--seed``, ``--workers``) come before the subcommand.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .config import Config, load_config
from .embeddings import TrainConfig, kmeans_clusters, load_embeddings, save_embeddings, train
from .fixtures import (
    build_all,
    default_gazetteer_path,
    default_lexicon_path,
    make_cluster_sequences,
)
from .gazetteer import AdPath, GazetteerError, load_gazetteer
from .pipeline import (
    Artifacts,
    bench,
    evaluate,
    load_artifacts,
    load_corpus,
    normalize_batch,
    normalize_document,
)
from .roi import RoiThresholds, build_roi, save_roi
from .sequences import LexiconRecognizer, extract_sequences, load_geo_lexicon, load_sequences, save_sequences
from .server import serve
from .textscan import Document


def _print_json(obj: object) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def _config_from_args(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


def _artifacts_from_args(args: argparse.Namespace) -> Artifacts:
    return load_artifacts(
        args.gazetteer or default_gazetteer_path(),
        embeddings_path=args.embeddings,
        roi_path=args.roi_store,
    )


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_build_gazetteer(args: argparse.Namespace, cfg: Config) -> int:
    path = args.input or args.gazetteer or default_gazetteer_path()
    gaz = load_gazetteer(path)
    by_level: dict[str, int] = {"1": 0, "2": 0, "3": 0}
    for rec in gaz:
        by_level[str(rec.level)] += 1
    _print_json(
        {
            "path": str(path),
            "records": len(gaz),
            "by_level": by_level,
            "surfaces": len(gaz.surfaces()),
            "valid": True,
        }
    )
    return 0


def _cmd_extract_sequences(args: argparse.Namespace, cfg: Config) -> int:
    gaz = load_gazetteer(args.gazetteer or default_gazetteer_path())
    lexicon = load_geo_lexicon(args.lexicon or default_lexicon_path())
    corpus = load_corpus(args.corpus)
    seqs = extract_sequences(
        corpus,
        gaz,
        LexiconRecognizer(lexicon),
        min_len=args.min_len if args.min_len is not None else cfg.min_sequence_len,
        window=args.window if args.window is not None else cfg.window_sentences,
        delimiters=cfg.sentence_delimiters,
    )
    save_sequences(seqs, args.out)
    _print_json({"documents": len(corpus), "sequences": len(seqs), "out": args.out})
    return 0


def _train_config(args: argparse.Namespace, cfg: Config) -> TrainConfig:
    return TrainConfig(
        dim=args.dim if args.dim is not None else cfg.embedding_dim,
        window=args.window if args.window is not None else cfg.embedding_window,
        epochs=args.epochs if args.epochs is not None else cfg.embedding_epochs,
        learning_rate=(
            args.learning_rate
            if args.learning_rate is not None
            else cfg.embedding_learning_rate
        ),
        seed=cfg.seed,
        softmax_mode=args.softmax_mode or cfg.embedding_softmax_mode,
        negative_k=cfg.embedding_negative_k,
    )


def _cmd_train_embeddings(args: argparse.Namespace, cfg: Config) -> int:
    seqs = load_sequences(args.sequences)
    table = train(seqs, _train_config(args, cfg))
    save_embeddings(table, args.out)
    _print_json(
        {
            "vocabulary": len(table.vocab),
            "dim": table.dim,
            "epochs": len(table.epoch_objectives),
            "final_objective": table.epoch_objectives[-1] if table.epoch_objectives else None,
            "out": args.out,
        }
    )
    return 0


def _cmd_build_roi(args: argparse.Namespace, cfg: Config) -> int:
    gaz = load_gazetteer(args.gazetteer or default_gazetteer_path())
    seqs = load_sequences(args.sequences)
    store = build_roi(
        seqs,
        gaz,
        RoiThresholds(
            validity_min_score=cfg.roi_validity_min_score,
            entropy_cutoff=cfg.roi_entropy_cutoff,
            magnitude_ratio=cfg.roi_magnitude_ratio,
            top_k=cfg.roi_top_k,
        ),
    )
    save_roi(store, args.out)
    _print_json({"entries": len(store), "stats": store.meta.get("stats", {}), "out": args.out})
    return 0


def _cmd_normalize(args: argparse.Namespace, cfg: Config) -> int:
    artifacts = _artifacts_from_args(args)
    if args.text is not None:
        result = normalize_document(Document("stdin", args.text), artifacts, cfg)
        _print_json({"doc_id": "stdin", **result.to_dict(include_timings=True)})
        return 0

    docs = load_corpus(args.batch)
    results = normalize_batch(docs, artifacts, cfg, workers=cfg.workers)
    lines = [
        json.dumps(
            {"doc_id": doc.doc_id, **res.to_dict(include_timings=False)},
            ensure_ascii=False,
        )
        for doc, res in zip(docs, results)
    ]
    payload = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
        _print_json({"documents": len(docs), "out": args.out})
    else:
        sys.stdout.write(payload)
    return 0


def _load_gold(path: str) -> dict[str, AdPath]:
    gold: dict[str, AdPath] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            row = json.loads(line)
            levels = row.get("path")
            if not isinstance(levels, list) or len(levels) != 3:
                raise ValueError(f"{path}:{line_no}: 'path' must be a 3-item list")
            gold[row["doc_id"]] = AdPath(tuple(levels), (None, None, None))
    return gold


def _load_results(path: str) -> dict[str, AdPath]:
    results: dict[str, AdPath] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            row = json.loads(line)
            final = row.get("final", {})
            levels = final.get("levels")
            if not isinstance(levels, list) or len(levels) != 3:
                raise ValueError(f"{path}:{line_no}: missing final.levels")
            codes = final.get("codes") or [None, None, None]
            results[row["doc_id"]] = AdPath(tuple(levels), tuple(codes))
    return results


def _cmd_evaluate(args: argparse.Namespace, cfg: Config) -> int:
    report = evaluate(_load_results(args.results), _load_gold(args.gold))
    _print_json(
        {
            "precision": report.precision,
            "recall": report.recall,
            "f1": report.f1,
            "documents": len(report.records),
        }
    )
    return 0


def _cmd_bench(args: argparse.Namespace, cfg: Config) -> int:
    artifacts = _artifacts_from_args(args)
    docs = load_corpus(args.corpus)
    report = bench(
        docs, artifacts, cfg, workers=cfg.workers, warmup=args.warmup
    )
    _print_json(report.to_dict())
    return 0


def _cmd_serve(args: argparse.Namespace, cfg: Config) -> int:
    overrides = {}
    if args.host:
        overrides["host"] = args.host
    if args.port is not None:
        overrides["port"] = args.port
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    artifacts = _artifacts_from_args(args)
    print(f"listening on http://{cfg.host}:{cfg.port}", file=sys.stderr)
    serve(artifacts, cfg)
    return 0


def _cmd_emit_cluster_data(args: argparse.Namespace, cfg: Config) -> int:
    sequences, labels = make_cluster_sequences(
        provinces=args.provinces,
        divisions=args.divisions,
        per_province=args.per_province,
        seed=cfg.seed,
    )
    table = train(
        sequences,
        TrainConfig(
            dim=args.dim if args.dim is not None else 16,
            window=cfg.embedding_window,
            epochs=args.epochs if args.epochs is not None else 10,
            seed=cfg.seed,
        ),
    )
    clusters = kmeans_clusters(table, sorted(labels), k=args.provinces, seed=cfg.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        for token in sorted(labels):
            fh.write(
                json.dumps(
                    {
                        "token": token,
                        "province": labels[token],
                        "cluster": clusters[token],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )

    # purity: majority true label per cluster, averaged over tokens
    groups: dict[int, list[int]] = {}
    for token, cl in clusters.items():
        groups.setdefault(cl, []).append(labels[token])
    majority = sum(max(members.count(v) for v in set(members)) for members in groups.values())
    _print_json(
        {
            "tokens": len(labels),
            "clusters": args.provinces,
            "purity": majority / len(labels),
            "out": args.out,
        }
    )
    return 0


def _cmd_make_fixtures(args: argparse.Namespace, cfg: Config) -> int:
    paths = build_all(args.out)
    _print_json({name: str(p) for name, p in sorted(paths.items())})
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locnorm",
        description="Normalize free-form Chinese text to administrative-division paths.",
    )
    parser.add_argument("--gazetteer", help="gazetteer JSONL (default: bundled)")
    parser.add_argument("--embeddings", help="embedding table file")
    parser.add_argument("--roi-store", help="knowledge-base JSONL")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, help="override config seed")
    parser.add_argument("--workers", type=int, help="override config workers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-gazetteer", help="validate a gazetteer and print stats")
    p.add_argument("--input", help="gazetteer JSONL to check (default: --gazetteer)")
    p.set_defaults(func=_cmd_build_gazetteer)

    p = sub.add_parser("extract-sequences", help="mine co-occurrence sequences from a corpus")
    p.add_argument("--corpus", required=True, help="corpus JSONL ({doc_id, text})")
    p.add_argument("--out", required=True)
    p.add_argument("--lexicon", help="location-term lexicon (default: bundled)")
    p.add_argument("--min-len", type=int, help="minimum items per sequence")
    p.add_argument("--window", type=int, help="sentences kept on each side of an anchor")
    p.set_defaults(func=_cmd_extract_sequences)

    p = sub.add_parser("train-embeddings", help="train geographic embeddings")
    p.add_argument("--sequences", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--learning-rate", type=float)
    p.add_argument("--softmax-mode", choices=("full", "negative_sampling"))
    p.set_defaults(func=_cmd_train_embeddings)

    p = sub.add_parser("build-roi", help="mine the region-of-interest knowledge base")
    p.add_argument("--sequences", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_roi)

    p = sub.add_parser("normalize", help="normalize one text or a JSONL batch")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="a single text; result JSON goes to stdout")
    group.add_argument("--batch", help="corpus JSONL; one result line per input line")
    p.add_argument("--out", help="batch output file (default: stdout)")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("evaluate", help="score predictions against gold paths")
    p.add_argument("--results", required=True, help="batch output JSONL")
    p.add_argument("--gold", required=True, help="gold JSONL ({doc_id, path})")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("bench", help="measure end-to-end throughput")
    p.add_argument("--corpus", required=True)
    p.add_argument("--warmup", type=int, default=32)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("emit-cluster-data", help="synthetic embedding-clustering demo")
    p.add_argument("--out", required=True)
    p.add_argument("--provinces", type=int, default=4)
    p.add_argument("--divisions", type=int, default=10)
    p.add_argument("--per-province", type=int, default=40)
    p.add_argument("--dim", type=int)
    p.add_argument("--epochs", type=int)
    p.set_defaults(func=_cmd_emit_cluster_data)

    p = sub.add_parser("make-fixtures", help="build the bundled demo corpus and artifacts")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_make_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return args.func(args, cfg)
    except (ValueError, OSError, GazetteerError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
