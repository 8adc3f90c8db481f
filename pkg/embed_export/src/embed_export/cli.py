"""Command line entry point for the embedding exporter."""

from __future__ import annotations

import argparse
import sys

from .export import MODEL_REGISTRY, ExportJob, export_embeddings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="embed-export",
                             description="Export language model embeddings "
                                         "for normalized log messages")
    subs = parser.add_subparsers(dest="command", required=True)
    sub = subs.add_parser("export")
    sub.add_argument("--input", required=True)
    sub.add_argument("--model", required=True, choices=sorted(MODEL_REGISTRY))
    sub.add_argument("--out", required=True)
    sub.add_argument("--dim", type=int, default=768)
    sub.add_argument("--batch-size", type=int, dest="batch_size", default=16)
    sub.add_argument("--revision")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        job = ExportJob(input_path=args.input, model=args.model,
                        out_path=args.out, dim=args.dim,
                        batch_size=args.batch_size, revision=args.revision)
        manifest = export_embeddings(job)
        print(f"wrote {args.out} ({manifest['count']} embeddings, "
              f"dim {manifest['dim']})")
        return EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        from neurallog.core import DataError

        if isinstance(exc, ValueError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if isinstance(exc, (DataError, OSError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
