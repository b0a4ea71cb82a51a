"""The experiment script language: parse, render, run.

A script is a line-oriented recipe for driving the beam lab, one
command per line, ``#`` starting a comment, keywords case-insensitive:

    beam random            push a fresh unpolarized beam
    split AXIS             analyzer on the top beam
    filter AXIS SIGN       keep one spin component of the top beam
    recombine AXIS         merge the top two beams
    bfield AXIS NUMBER     precess the top beam by NUMBER radians
    drop                   block the top beam
    flip                   swap the top two beams
    show                   report the stack unchanged

    AXIS   := x | y | z | "(" NUMBER "," NUMBER ")"   (theta, phi)
    SIGN   := + | -
    NUMBER := FACTOR (("*" | "/") FACTOR)*
    FACTOR := FLOAT | [+-]? pi

Parsing yields an :class:`ExperimentScript` of :class:`Command` values
or a :class:`ParseError` locating the offense by 1-based line and
column.  :func:`render` writes a script back to canonical text that
parses to the same commands.  :func:`evaluate` runs a script from an
empty stack and reports every intermediate intensity list.
"""

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .beamstack import (
    BeamStack,
    BeamStackError,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    apply_bfield,
    drop_beam,
    empty_stack,
    filter_minus,
    filter_plus,
    flip_beams,
    intensities,
    push_random,
    recombine,
    split,
)

__all__ = [
    "Command", "ExperimentScript", "Step", "RunReport",
    "ParseError", "CommandError", "ScriptRuntimeError",
    "parse", "parse_command", "render", "render_command",
    "evaluate", "apply_command", "direction",
    "command_from_dict", "command_to_dict",
]

KINDS = ("source", "split", "filter", "recombine", "bfield", "drop", "flip", "show")

_AXIS_KINDS = ("split", "filter", "recombine", "bfield")
_NAMED_AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}
_CONSUMING = ("split", "filter", "recombine", "bfield", "drop", "flip")


class ParseError(Exception):
    """Script text that does not parse, located by 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class CommandError(ValueError):
    """A command value whose fields do not fit its kind."""


class ScriptRuntimeError(Exception):
    """A parsed command that the current stack cannot honor."""

    def __init__(self, message: str, line: int, code: str):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line
        self.code = code


@dataclass(frozen=True)
class Command:
    """One device in a script.

    ``kind`` is one of :data:`KINDS`.  Commands that take an axis carry
    either a named ``axis`` ("x", "y", "z") or an explicit spherical
    direction in ``theta``/``phi``; filters carry ``sign`` and fields
    carry ``omega``.  ``line`` records where the command was parsed and
    never takes part in equality.
    """

    kind: str
    axis: str | None = None
    theta: float | None = None
    phi: float | None = None
    sign: str | None = None
    omega: float | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExperimentScript:
    """A parsed script: an optional name and the command sequence."""

    commands: tuple[Command, ...]
    name: str | None = None


@dataclass(frozen=True)
class Step:
    """One executed command and the beam intensities right after it."""

    command: str
    intensities: tuple[float, ...]


@dataclass(frozen=True)
class RunReport:
    """The full trace of a script run."""

    steps: tuple[Step, ...]

    @property
    def final(self) -> tuple[float, ...]:
        return self.steps[-1].intensities if self.steps else ()


def _validate(cmd: Command) -> None:
    if cmd.kind not in KINDS:
        raise CommandError(f"unknown command kind {cmd.kind!r}")
    named = cmd.axis is not None
    explicit = cmd.theta is not None or cmd.phi is not None
    if cmd.kind in _AXIS_KINDS:
        if named and explicit:
            raise CommandError(f"{cmd.kind} takes a named axis or theta/phi, not both")
        if named:
            if cmd.axis not in _NAMED_AXES:
                raise CommandError(f"unknown axis {cmd.axis!r}")
        elif not (_is_number(cmd.theta) and _is_number(cmd.phi)):
            raise CommandError(f"{cmd.kind} needs an axis")
    elif named or explicit:
        raise CommandError(f"{cmd.kind} takes no axis")
    if cmd.kind == "filter":
        if cmd.sign not in ("+", "-"):
            raise CommandError("filter needs a sign, + or -")
    elif cmd.sign is not None:
        raise CommandError(f"{cmd.kind} takes no sign")
    if cmd.kind == "bfield":
        if not _is_number(cmd.omega):
            raise CommandError("bfield needs an angle")
    elif cmd.omega is not None:
        raise CommandError(f"{cmd.kind} takes no angle")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def direction(cmd: Command) -> tuple[float, float]:
    """The (theta, phi) direction of an axis-bearing command."""
    if cmd.axis is not None:
        return _NAMED_AXES[cmd.axis]
    return (float(cmd.theta), float(cmd.phi))


_FIELDS = ("kind", "axis", "theta", "phi", "sign", "omega")


def command_from_dict(data) -> Command:
    """Build a validated :class:`Command` from a JSON-style dict."""
    if not isinstance(data, dict):
        raise CommandError("a command must be an object")
    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise CommandError(f"unknown command field(s): {', '.join(unknown)}")
    kind = data.get("kind")
    if not isinstance(kind, str):
        raise CommandError("a command needs a string 'kind'")
    axis = data.get("axis")
    sign = data.get("sign")
    if axis is not None:
        if not isinstance(axis, str):
            raise CommandError("'axis' must be a string")
        axis = axis.lower()
    if sign is not None:
        if not isinstance(sign, str):
            raise CommandError("'sign' must be + or -")
        sign = {"plus": "+", "minus": "-"}.get(sign.lower(), sign)
    numbers = {}
    for key in ("theta", "phi", "omega"):
        value = data.get(key)
        if value is None:
            numbers[key] = None
        elif _is_number(value):
            numbers[key] = float(value)
        else:
            raise CommandError(f"'{key}' must be a finite number")
    cmd = Command(kind=kind.lower(), axis=axis, sign=sign, **numbers)
    _validate(cmd)
    return cmd


def command_to_dict(cmd: Command) -> dict:
    """The JSON-style dict form of a command, omitting unused fields."""
    out = {"kind": cmd.kind}
    for key in ("axis", "theta", "phi", "sign", "omega"):
        value = getattr(cmd, key)
        if value is not None:
            out[key] = value
    return out


class _Token(NamedTuple):
    text: str
    column: int


_TOKEN = re.compile(r"[(),*/]|[^\s(),*/]+")


class _LineParser:
    """Recursive-descent parser over one script line's tokens."""

    def __init__(self, text: str, line_no: int):
        self.line_no = line_no
        self.end_column = len(text) + 1
        self.tokens = [
            _Token(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)
        ]
        self.pos = 0

    def error(self, message: str, column: int | None = None) -> ParseError:
        if column is None:
            column = (
                self.tokens[self.pos].column
                if self.pos < len(self.tokens)
                else self.end_column
            )
        return ParseError(message, self.line_no, column)

    def take(self, what: str) -> _Token:
        if self.pos >= len(self.tokens):
            raise self.error(f"expected {what}, got end of line")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def take_text(self, text: str) -> None:
        tok = self.take(f"'{text}'")
        if tok.text != text:
            raise self.error(f"expected '{text}', got {tok.text!r}", tok.column)

    def peek(self) -> str | None:
        return self.tokens[self.pos].text if self.pos < len(self.tokens) else None

    def command(self) -> Command:
        tok = self.take("a command")
        word = tok.text.lower()
        line = self.line_no
        if word == "beam":
            kind_tok = self.take("'random'")
            if kind_tok.text.lower() != "random":
                raise self.error(
                    f"expected 'random' after 'beam', got {kind_tok.text!r}",
                    kind_tok.column,
                )
            cmd = Command("source", line=line)
        elif word == "split":
            cmd = Command("split", **self.axis(), line=line)
        elif word == "filter":
            fields = self.axis()
            sign_tok = self.take("a sign, + or -")
            if sign_tok.text not in ("+", "-"):
                raise self.error(
                    f"expected + or -, got {sign_tok.text!r}", sign_tok.column
                )
            cmd = Command("filter", sign=sign_tok.text, **fields, line=line)
        elif word == "recombine":
            cmd = Command("recombine", **self.axis(), line=line)
        elif word == "bfield":
            fields = self.axis()
            cmd = Command("bfield", omega=self.number(), **fields, line=line)
        elif word in ("drop", "flip", "show"):
            cmd = Command(word, line=line)
        else:
            raise self.error(f"unknown command {tok.text!r}", tok.column)
        if self.pos < len(self.tokens):
            raise self.error(f"unexpected token {self.tokens[self.pos].text!r}")
        return cmd

    def axis(self) -> dict:
        tok = self.take("an axis")
        word = tok.text.lower()
        if word in _NAMED_AXES:
            return {"axis": word}
        if tok.text == "(":
            theta = self.number()
            self.take_text(",")
            phi = self.number()
            self.take_text(")")
            return {"theta": theta, "phi": phi}
        raise self.error(
            f"expected an axis: x, y, z or (theta, phi), got {tok.text!r}", tok.column
        )

    def number(self) -> float:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take("an operator")
            rhs_tok = self.tokens[self.pos] if self.pos < len(self.tokens) else None
            rhs = self.factor()
            if op.text == "*":
                value *= rhs
            elif rhs == 0.0:
                raise self.error("division by zero", rhs_tok.column)
            else:
                value /= rhs
        return value

    def factor(self) -> float:
        tok = self.take("a number")
        word = tok.text.lower()
        if word == "pi" or word == "+pi":
            return math.pi
        if word == "-pi":
            return -math.pi
        try:
            return float(tok.text)
        except ValueError:
            raise self.error(f"expected a number, got {tok.text!r}", tok.column) from None


def parse_command(text: str, line_no: int = 1) -> Command | None:
    """Parse a single line; None when it holds only blanks or a comment."""
    bare = text.split("#", 1)[0]
    if not bare.strip():
        return None
    return _LineParser(bare, line_no).command()


def parse(text: str, name: str | None = None) -> ExperimentScript:
    """Parse a whole script, enforcing that beams exist before use."""
    commands = []
    seen_source = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        cmd = parse_command(line, line_no)
        if cmd is None:
            continue
        if cmd.kind == "source":
            seen_source = True
        elif cmd.kind in _CONSUMING and not seen_source:
            raise ParseError(
                f"'{render_command(cmd)}' needs a beam, but no 'beam random'"
                " comes before it",
                line_no,
                1,
            )
        commands.append(cmd)
    return ExperimentScript(tuple(commands), name=name)


def _axis_text(cmd: Command) -> str:
    if cmd.axis is not None:
        return cmd.axis
    return f"({cmd.theta!r}, {cmd.phi!r})"


def render_command(cmd: Command) -> str:
    """Canonical text for one command; reparsing gives back an equal command."""
    _validate(cmd)
    if cmd.kind == "source":
        return "beam random"
    if cmd.kind == "split":
        return f"split {_axis_text(cmd)}"
    if cmd.kind == "filter":
        return f"filter {_axis_text(cmd)} {cmd.sign}"
    if cmd.kind == "recombine":
        return f"recombine {_axis_text(cmd)}"
    if cmd.kind == "bfield":
        return f"bfield {_axis_text(cmd)} {cmd.omega!r}"
    return cmd.kind


def render(script: ExperimentScript) -> str:
    """The canonical text of a script, one command per line."""
    return "".join(render_command(cmd) + "\n" for cmd in script.commands)


def apply_command(stack: BeamStack, cmd: Command) -> BeamStack:
    """Run one command against a stack, returning the new stack."""
    kind = cmd.kind
    if kind == "source":
        return push_random(stack)
    if kind == "show":
        return stack
    if kind == "drop":
        return drop_beam(stack)
    if kind == "flip":
        return flip_beams(stack)
    theta, phi = direction(cmd)
    if kind == "split":
        return split(theta, phi, stack)
    if kind == "recombine":
        return recombine(theta, phi, stack)
    if kind == "bfield":
        return apply_bfield(theta, phi, cmd.omega, stack)
    if kind == "filter":
        if cmd.sign == "+":
            return filter_plus(theta, phi, stack)
        return filter_minus(theta, phi, stack)
    raise CommandError(f"unknown command kind {kind!r}")


def evaluate(script: ExperimentScript) -> RunReport:
    """Run a script from an empty stack, tracing intensities step by step."""
    stack = empty_stack()
    steps = []
    for cmd in script.commands:
        try:
            stack = apply_command(stack, cmd)
        except BeamStackError as exc:
            raise ScriptRuntimeError(str(exc), line=cmd.line, code=exc.code) from exc
        steps.append(Step(render_command(cmd), tuple(intensities(stack))))
    return RunReport(tuple(steps))
