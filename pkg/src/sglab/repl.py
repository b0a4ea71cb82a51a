"""Interactive beam-lab session: script lines plus undo/reset/quit."""

import sys

from .beamstack import BeamStackError, empty_stack
from .script import ParseError, apply_command, parse_command

PROMPT = "sg> "

HELP = """\
script commands:
  beam random | split AXIS | filter AXIS SIGN | recombine AXIS
  bfield AXIS ANGLE | drop | flip | show
  AXIS is x, y, z or (theta, phi); angles take pi, e.g. bfield x pi/2
session commands:
  undo    revert the last command
  reset   start over with no beams
  help    this text
  quit    leave
"""


def _show(stack, out) -> None:
    out.write(f"{stack}\n" if stack.beam_count else "(no beams)\n")


def run(stdin=None, stdout=None) -> int:
    """Read commands line by line until quit or end of input."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    interactive = getattr(stdin, "isatty", lambda: False)()
    if interactive:
        stdout.write("spin-1/2 beam lab; 'help' lists commands, 'quit' leaves\n")
    stack = empty_stack()
    undo: list = []
    while True:
        if interactive:
            stdout.write(PROMPT)
            stdout.flush()
        try:
            line = stdin.readline()
        except KeyboardInterrupt:
            break
        if not line:
            break
        word = line.strip().lower()
        if word in ("quit", "exit"):
            break
        if word == "help":
            stdout.write(HELP)
            continue
        if word == "undo":
            if undo:
                stack = undo.pop()
                _show(stack, stdout)
            else:
                stdout.write("nothing to undo\n")
            continue
        if word == "reset":
            undo.append(stack)
            stack = empty_stack()
            _show(stack, stdout)
            continue
        try:
            cmd = parse_command(line)
        except ParseError as exc:
            stdout.write(f"error: column {exc.column}: {exc.message}\n")
            continue
        if cmd is None:
            continue
        try:
            new = apply_command(stack, cmd)
        except BeamStackError as exc:
            stdout.write(f"error: {exc}\n")
            continue
        if new is not stack:
            undo.append(stack)
            stack = new
        _show(stack, stdout)
    return 0
