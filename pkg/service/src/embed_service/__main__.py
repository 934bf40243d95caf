"""Entry point: ``serve`` runs the HTTP service, ``export`` writes a
JSONL embedding store.

Environment: MODEL_NAME (checkpoint, or ``hashing:<dim>`` for the
deterministic offline encoder), MAX_BATCH (default 64), PORT (default
8230, serve mode).
"""

from __future__ import annotations

import argparse
import os
import sys

from .encoders import DEFAULT_MODEL_NAME, create_encoder


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cbjsumm-embed-service", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("PORT", 8230)))

    p_export = sub.add_parser("export", help="embed a sentence file to JSONL")
    p_export.add_argument("--input", required=True, help="text file, one sentence per line")
    p_export.add_argument("--output", required=True, help="JSONL store to write")
    p_export.add_argument("--batch", type=int, default=None, help="encode batch size")

    args = parser.parse_args(argv)
    model_name = os.environ.get("MODEL_NAME", DEFAULT_MODEL_NAME)
    max_batch = int(os.environ.get("MAX_BATCH", 64))
    encoder = create_encoder(model_name)

    if args.command == "serve":
        import uvicorn

        from .app import create_app

        uvicorn.run(create_app(encoder, max_batch=max_batch), host=args.host, port=args.port)
        return 0

    from .export import export_embeddings, read_sentences

    sentences = read_sentences(args.input)
    if not sentences:
        print(f"error: {args.input} contains no sentences", file=sys.stderr)
        return 1
    count = export_embeddings(encoder, sentences, args.output, batch_size=args.batch or max_batch)
    print(f"wrote {count} vectors (dim {encoder.dim}) to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
