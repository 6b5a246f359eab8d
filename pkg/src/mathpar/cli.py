"""Command line front end: file runner, interactive REPL, and the HTTP
server launcher.

`mathpar run script.mp` executes the whole file as one section; the REPL
executes each blank-line-terminated group as a section against one
persistent environment.
"""

import argparse
import os
import sys

from . import astnodes as A
from . import parser
from .errors import MathparError
from .session import Environment, apply_space_decl, execute_section


def build_arg_parser():
    top = argparse.ArgumentParser(prog="mathpar",
                                  description="Mathpar (ATeX) kernel")
    sub = top.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a script file as one section")
    run.add_argument("file")
    _shared_flags(run)

    repl = sub.add_parser("repl", help="interactive session")
    _shared_flags(repl)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int,
                       default=int(os.environ.get("MATHPAR_PORT", "8080")))
    return top


def _shared_flags(p):
    p.add_argument("--latex", action="store_true",
                   help="print LaTeX instead of Mathpar text")
    p.add_argument("--space", metavar="NAME[VARS]",
                   help="initial space, e.g. 'Q[x,y]'")
    p.add_argument("--floatpos", type=int, metavar="N",
                   help="display decimals for approximate scalars")


def _prepare_environment(args):
    env = Environment()
    if args.space:
        program = parser.parse_source(f"SPACE = {args.space};")
        decl = program.statements[0]
        if not isinstance(decl, A.SpaceDecl):
            raise MathparError(f"not a space declaration: {args.space}")
        apply_space_decl(env, decl)
    if args.floatpos is not None:
        apply_space_decl(env, A.ConfigDecl("FLOATPOS", args.floatpos))
    return env


def _emit(result, latex):
    for out in result.outputs:
        text = out.latex if latex else out.mathpar
        if out.label:
            print(f"{out.label} = {text}")
        else:
            print(text)
    for diag in result.diagnostics:
        print(f"{diag.line}:{diag.column}: {diag.severity}: {diag.message}",
              file=sys.stderr)


def cmd_run(args):
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            source = fh.read()
    except OSError as e:
        print(f"cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    try:
        env = _prepare_environment(args)
    except MathparError as e:
        print(f"bad flags: {e.message}", file=sys.stderr)
        return 2
    result = execute_section(env, source)
    _emit(result, args.latex)
    return 0 if result.ok else 1


def cmd_repl(args):
    try:
        env = _prepare_environment(args)
    except MathparError as e:
        print(f"bad flags: {e.message}", file=sys.stderr)
        return 2
    print(f"mathpar repl, space {env.space.name}; "
          "finish a section with a blank line, Ctrl-D exits")
    buffer = []
    while True:
        try:
            line = input("... " if buffer else ">>> ")
        except EOFError:
            print()
            break
        except KeyboardInterrupt:
            print()
            buffer = []
            continue
        if line.strip():
            buffer.append(line)
            continue
        if not buffer:
            continue
        section = "\n".join(buffer)
        buffer = []
        result = execute_section(env, section)
        _emit(result, args.latex)
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "repl":
        return cmd_repl(args)
    return cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
