"""The ``sg`` command line: run scripts, poke around, serve sessions."""

import argparse
import os
import sys

from .beamstack import pretty
from .script import ParseError, ScriptRuntimeError, evaluate, parse


def _beam_lines(values, digits):
    if not values:
        return ["(no beams)"]
    shown = (pretty(v) for v in values)
    if digits is not None:
        shown = (round(v, digits) for v in shown)
    return [f"Beam of intensity {v}" for v in shown]


def _run(path: str, digits, out) -> int:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = evaluate(parse(text, name=path))
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 1
    except ScriptRuntimeError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 2
    for step in report.steps:
        out.write(f"> {step.command}\n")
        for line in _beam_lines(step.intensities, digits):
            out.write(line + "\n")
    return 0


def _serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("SG_PORT", "8000"))
    app = create_app(ttl=args.ttl, snapshot_path=args.snapshot)
    uvicorn.run(app, host=args.host, port=port)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sg",
        description="Stern-Gerlach beam laboratory for spin-1/2 particles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a script file, printing each step")
    run_p.add_argument("file", help="script file to run")
    run_p.add_argument(
        "--round", dest="digits", type=int, default=None, metavar="N",
        help="round displayed intensities to N decimal places",
    )

    sub.add_parser("repl", help="interactive session on stdin/stdout")

    serve_p = sub.add_parser("serve", help="HTTP session service")
    serve_p.add_argument(
        "--port", type=int, default=None,
        help="listen port (default: SG_PORT or 8000)",
    )
    serve_p.add_argument(
        "--host", default="127.0.0.1",
        help="bind address (default: loopback only)",
    )
    serve_p.add_argument(
        "--ttl", type=float, default=24 * 3600.0, metavar="SECONDS",
        help="drop sessions idle longer than this (default: 24h)",
    )
    serve_p.add_argument(
        "--snapshot", default=None, metavar="PATH",
        help="save sessions here on shutdown and reload them on start",
    )

    args = parser.parse_args(argv)
    if args.command == "run":
        return _run(args.file, args.digits, sys.stdout)
    if args.command == "repl":
        from . import repl

        return repl.run()
    return _serve(args)


if __name__ == "__main__":
    raise SystemExit(main())
