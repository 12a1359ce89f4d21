"""Compile draw/animate atoms from an answer set into per-frame drawing scripts.

The output of a compilation is a FrameScript: for each frame, an ordered
list of shape commands with their style attributes already resolved. The
emitter turns a FrameScript into an HTML fragment holding a canvas element
and a script that replays the frames at 60 frames per second.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ast_nodes import CommandTerm, IntegerConstant, SymbolicConstant
from .commands import COMMANDS, INT, KEYWORD, SHAPE_COMMANDS, SYMBOL
from .errors import (
    Diagnostic,
    DisplayValidationError,
    MultipleAnswerSetsError,
    NoAnswerSetsError,
    sort_diagnostics,
)
from .grounding import DEFAULT_GROUND_CAP, ground
from .parser import parse
from .solver import AnswerSet, answer_sets
from .sortcheck import check_sorts

CANVAS_SIZE = (500, 500)

# How each style command maps onto canvas pen attributes.
_STYLE_ATTRS = {
    "linewidth": lambda args: (("lineWidth", args[0].value),),
    "textfont": lambda args: (("font", f"{args[0].value}px {args[1].name}"),),
    "linecap": lambda args: (("lineCap", args[0].name),),
    "textalign": lambda args: (("textAlign", args[0].name),),
    "line_color": lambda args: (("strokeStyle", args[0].name),),
    "textcolor": lambda args: (("fillStyle", args[0].name),),
}


@dataclass(frozen=True)
class DisplayAtom:
    """One draw or animate atom; frame is None for draw (drawn in every frame)."""

    command: CommandTerm
    frame: int | None = None
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ResolvedShape:
    """A shape command with its resolved style, ready for emission."""

    cmd: str
    style: tuple[tuple[str, int | str], ...]
    args: tuple[int | str, ...]


@dataclass(frozen=True)
class FrameScript:
    frame_count: int
    frames: tuple[tuple[ResolvedShape, ...], ...]


@dataclass(frozen=True)
class RenderedDocument:
    text: str


def extract_display_atoms(answer_set: AnswerSet) -> list[DisplayAtom]:
    """Pull every positive draw/1 and animate/2 literal out of the answer set."""
    atoms = []
    for literal in answer_set.sorted_literals():
        if literal.negated:
            continue
        atom = literal.atom
        if atom.name == "draw" and len(atom.args) == 1 and isinstance(atom.args[0], CommandTerm):
            atoms.append(DisplayAtom(atom.args[0], None, literal.pos))
        elif (
            atom.name == "animate"
            and len(atom.args) == 2
            and isinstance(atom.args[0], CommandTerm)
            and isinstance(atom.args[1], IntegerConstant)
        ):
            atoms.append(DisplayAtom(atom.args[0], atom.args[1].value, literal.pos))
    return atoms


def validate_display_atoms(atoms: list[DisplayAtom]) -> list[Diagnostic]:
    """Structural validation of extracted atoms; an empty list means valid."""
    diagnostics: list[Diagnostic] = []

    def bad(code: str, atom: DisplayAtom, message: str) -> None:
        diagnostics.append(Diagnostic(code, atom.pos[0], atom.pos[1], message))

    for atom in atoms:
        command = atom.command
        signature = COMMANDS.get(command.functor)
        if signature is None:
            bad("UnknownCommand", atom, f"unknown drawing command {command.functor}")
            continue
        expected = 1 + len(signature.params)
        if len(command.args) != expected:
            bad(
                "BadCommandArity",
                atom,
                f"{command.functor} takes {expected} arguments, got {len(command.args)}",
            )
            continue
        if atom.frame is not None and atom.frame < 0:
            bad("NegativeFrame", atom, f"frame index {atom.frame} is negative")
        if not isinstance(command.args[0], SymbolicConstant):
            bad(
                "BadStyleName",
                atom,
                f"the style name of {command.functor} must be a symbolic constant",
            )
        for index, (kind, arg) in enumerate(zip(signature.params, command.args[1:]), start=2):
            if kind == INT:
                if not isinstance(arg, IntegerConstant):
                    bad(
                        "NonIntegerGeometry",
                        atom,
                        f"argument {index} of {command.functor} must be an integer, got {arg}",
                    )
                elif signature.kind == "style" and arg.value < 1:
                    bad(
                        "InvalidStyleValue",
                        atom,
                        f"argument {index} of {command.functor} must be positive, got {arg}",
                    )
            elif kind == SYMBOL:
                if not isinstance(arg, SymbolicConstant):
                    bad(
                        "InvalidStyleValue",
                        atom,
                        f"argument {index} of {command.functor} must be a symbolic constant,"
                        f" got {arg}",
                    )
            elif kind == KEYWORD:
                if not isinstance(arg, SymbolicConstant) or arg.name not in signature.keywords:
                    allowed = ", ".join(signature.keywords)
                    bad(
                        "UnknownKeyword",
                        atom,
                        f"argument {index} of {command.functor} must be one of {allowed}",
                    )
    return sort_diagnostics(diagnostics)


def compile_frames(atoms: list[DisplayAtom]) -> FrameScript:
    """Assemble per-frame shape lists with resolved styles.

    Styles resolve per frame and style name: all style commands active in the
    frame apply in canonical order (command name, then printed form), last
    write per attribute winning. Draw atoms are active in every frame.
    """
    animate_frames = [atom.frame for atom in atoms if atom.frame is not None]
    frame_count = 1 + max(animate_frames) if animate_frames else 1

    style_atoms = [a for a in atoms if COMMANDS[a.command.functor].kind == "style"]
    shape_atoms = [a for a in atoms if COMMANDS[a.command.functor].kind == "shape"]

    frames = []
    for frame in range(frame_count):
        active_styles = [
            a.command for a in style_atoms if a.frame is None or a.frame == frame
        ]
        active_styles.sort(key=lambda c: (c.functor, str(c)))
        resolved: dict[str, dict[str, int | str]] = {}
        for command in active_styles:
            style_name = command.args[0].name
            attrs = resolved.setdefault(style_name, {})
            attrs.update(_STYLE_ATTRS[command.functor](command.args[1:]))
        shapes = []
        for atom in shape_atoms:
            if atom.frame is not None and atom.frame != frame:
                continue
            command = atom.command
            style = resolved.get(command.args[0].name, {})
            shapes.append(
                ResolvedShape(
                    command.functor,
                    tuple(sorted(style.items())),
                    _shape_args(command),
                )
            )
        frames.append(tuple(shapes))
    return FrameScript(frame_count, tuple(frames))


def frame_script_to_dict(script: FrameScript) -> dict:
    return {
        "version": 1,
        "frames": [
            [{"cmd": s.cmd, "style": dict(s.style), "args": list(s.args)} for s in frame]
            for frame in script.frames
        ],
    }


def frame_script_json(script: FrameScript) -> str:
    return json.dumps(frame_script_to_dict(script), separators=(",", ":"))


def emit_html(script: FrameScript, canvas_size: tuple[int, int] = CANVAS_SIZE) -> RenderedDocument:
    """Emit the canvas element plus a script replaying the frames at 60 fps."""
    width, height = canvas_size
    lines = [
        f'<canvas id="myCanvas" width="{width}" height="{height}"> </canvas>',
        "<script>",
        'var canvas = document.getElementById("myCanvas");',
        'var ctx = canvas.getContext("2d");',
        "var frames = [",
    ]
    for frame in script.frames:
        lines.append("function(ctx) {")
        for shape in frame:
            lines.extend(_shape_statements(shape))
        lines.append("},")
    lines += [
        "];",
        "var start = null;",
        "function step(now) {",
        "if (start === null) start = now;",
        "var frame = Math.floor((now - start) / 1000 * 60);",
        "if (frame >= frames.length) return;",
        "ctx.clearRect(0, 0, canvas.width, canvas.height);",
        "frames[frame](ctx);",
        "window.requestAnimationFrame(step);",
        "}",
        "window.requestAnimationFrame(step);",
        "</script>",
    ]
    return RenderedDocument("\n".join(lines) + "\n")


def compile_program(answer_set: AnswerSet) -> FrameScript:
    """Extract, validate, and compile the display atoms of one answer set."""
    atoms = extract_display_atoms(answer_set)
    diagnostics = validate_display_atoms(atoms)
    if diagnostics:
        raise DisplayValidationError(diagnostics)
    return compile_frames(atoms)


def compile_source(
    source: str,
    ground_cap: int | None = DEFAULT_GROUND_CAP,
    budget: int | None = None,
) -> tuple[FrameScript, RenderedDocument]:
    """Full pipeline behind the execute action: parse, check, ground, solve, compile.

    Requires the program to have exactly one answer set.
    """
    checked = check_sorts(parse(source))
    result = answer_sets(ground(checked, ground_cap), budget=budget)
    if not result.answer_sets:
        raise NoAnswerSetsError("the program has no answer sets")
    if len(result.answer_sets) > 1:
        raise MultipleAnswerSetsError(len(result.answer_sets), result.truncated)
    script = compile_program(result.answer_sets[0])
    return script, emit_html(script)


def execute(program_source: str) -> RenderedDocument:
    """Parse, check, ground, solve, and render a single-answer-set program."""
    return compile_source(program_source)[1]


def _shape_args(command: CommandTerm) -> tuple[int | str, ...]:
    signature = SHAPE_COMMANDS[command.functor]
    args: list[int | str] = []
    for kind, arg in zip(signature.params, command.args[1:]):
        if kind == INT:
            args.append(arg.value)
        else:
            args.append(str(arg))
    return tuple(args)


def _js_value(value: int | str) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    return str(value)


def _shape_statements(shape: ResolvedShape) -> list[str]:
    out = [f"ctx.{attr}={_js_value(value)};" for attr, value in shape.style]
    args = shape.args
    if shape.cmd == "draw_line":
        out += [
            "ctx.beginPath();",
            f"ctx.moveTo({args[0]},{args[1]});",
            f"ctx.lineTo({args[2]},{args[3]});",
            "ctx.stroke();",
        ]
    elif shape.cmd == "draw_quad_curve":
        out += [
            "ctx.beginPath();",
            f"ctx.moveTo({args[0]},{args[1]});",
            f"ctx.quadraticCurveTo({args[2]},{args[3]},{args[4]},{args[5]});",
            "ctx.stroke();",
        ]
    elif shape.cmd == "draw_bezier_curve":
        out += [
            "ctx.beginPath();",
            f"ctx.moveTo({args[0]},{args[1]});",
            f"ctx.bezierCurveTo({args[2]},{args[3]},{args[4]},{args[5]},{args[6]},{args[7]});",
            "ctx.stroke();",
        ]
    elif shape.cmd == "draw_arc_curve":
        out += [
            "ctx.beginPath();",
            f"ctx.arc({args[0]},{args[1]},{args[2]},"
            f"{args[3]}*Math.PI/180,{args[4]}*Math.PI/180,false);",
            "ctx.stroke();",
        ]
    else:  # draw_text
        out.append(f"ctx.fillText({json.dumps(args[0])},{args[1]},{args[2]});")
    return out
