"""The fixed vocabulary of style and shape commands for draw/animate atoms."""

from __future__ import annotations

from dataclasses import dataclass

# Parameter kinds. The first argument of every command is the style name and
# is not listed in the signature params.
INT = "int"          # integer-valued once ground
SYMBOL = "symbol"    # symbolic constant (color name, font family)
KEYWORD = "keyword"  # symbolic constant from a fixed keyword set
TEXT = "text"        # any ground term, rendered as text

LINE_CAPS = ("butt", "round", "square")
TEXT_ALIGNS = ("start", "end", "left", "right", "center")


@dataclass(frozen=True)
class CommandSignature:
    name: str
    kind: str  # "style" or "shape"
    params: tuple[str, ...]
    keywords: tuple[str, ...] = ()


def _style(name: str, *params: str, keywords: tuple[str, ...] = ()) -> CommandSignature:
    return CommandSignature(name, "style", params, keywords)


def _shape(name: str, *params: str) -> CommandSignature:
    return CommandSignature(name, "shape", params)


STYLE_COMMANDS = {
    sig.name: sig
    for sig in (
        _style("linewidth", INT),
        _style("textfont", INT, SYMBOL),
        _style("linecap", KEYWORD, keywords=LINE_CAPS),
        _style("textalign", KEYWORD, keywords=TEXT_ALIGNS),
        _style("line_color", SYMBOL),
        _style("textcolor", SYMBOL),
    )
}

SHAPE_COMMANDS = {
    sig.name: sig
    for sig in (
        _shape("draw_line", INT, INT, INT, INT),
        _shape("draw_quad_curve", INT, INT, INT, INT, INT, INT),
        _shape("draw_bezier_curve", INT, INT, INT, INT, INT, INT, INT, INT),
        _shape("draw_arc_curve", INT, INT, INT, INT, INT),
        _shape("draw_text", TEXT, INT, INT),
    )
}

COMMANDS = {**STYLE_COMMANDS, **SHAPE_COMMANDS}
