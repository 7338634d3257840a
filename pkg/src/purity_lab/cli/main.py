"""Entry point for ``purity-lab``.

Exit codes: 0 success, 1 a checked property failed (or a soundness alarm),
2 bad input, 3 budget or precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..errors import (
    BudgetExceeded,
    InputError,
    PrecisionError,
    PurityLabError,
    SoundnessAlarm,
    ValidationFailure,
)
from .commands import COMMANDS, Context
from .session import parse_session


def _parser() -> argparse.ArgumentParser:
    usage = "\n".join(f"  {name} {u}" for name, (_, _, u) in COMMANDS.items())
    ap = argparse.ArgumentParser(
        prog="purity-lab",
        description="Exact computations with pp-formulas, lattices over orders and Ziegler spectra.",
        epilog="commands:\n" + usage + "\n\nThe session is read from --session FILE, "
        "or from a leading argument naming an existing file, or from stdin.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--json", action="store_true", help="print a JSON object instead of text")
    ap.add_argument("--session", "-s", help="session file ('-' for stdin)")
    ap.add_argument("command", choices=sorted(COMMANDS), metavar="command")
    ap.add_argument("args", nargs=argparse.REMAINDER)
    return ap


def _loader(path: str | None):
    def load():
        if path is None or path == "-":
            if sys.stdin is None or sys.stdin.isatty():
                raise InputError("no session: pass --session FILE or pipe one on stdin")
            text = sys.stdin.read()
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InputError(f"cannot read session {path}: {e.strerror}") from None
        return parse_session(text)

    return load


def _exit_code(e: PurityLabError) -> int:
    if isinstance(e, (BudgetExceeded, PrecisionError)):
        return 3
    if isinstance(e, InputError):
        return 2
    if isinstance(e, (SoundnessAlarm, ValidationFailure)):
        return 1
    return 1


def main(argv: list[str] | None = None) -> int:
    ns = _parser().parse_args(argv)
    args, path = list(ns.args), ns.session
    if path is None and args and (args[0] == "-" or os.path.isfile(args[0])):
        path = args.pop(0)
    handler = COMMANDS[ns.command][0]
    try:
        res = handler(Context(args, _loader(path)))
    except PurityLabError as e:
        code = _exit_code(e)
        if ns.json:
            print(json.dumps({"ok": False, "error": type(e).__name__, "message": str(e)}))
        else:
            print(f"error ({type(e).__name__}): {e}", file=sys.stderr)
        return code
    if ns.json:
        print(json.dumps({"ok": res.ok, "text": res.text, "data": res.data}, default=str))
    else:
        print(res.text)
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
