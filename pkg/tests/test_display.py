"""Display compilation: extraction, validation, frame assembly, HTML emission."""

import json

import pytest

from sparclab.ast_nodes import (
    Atom,
    CommandTerm,
    IntegerConstant,
    Literal,
    SymbolicConstant,
)
from sparclab.display import (
    CANVAS_SIZE,
    DisplayAtom,
    compile_frames,
    compile_source,
    emit_html,
    execute,
    extract_display_atoms,
    frame_script_json,
    frame_script_to_dict,
    validate_display_atoms,
)
from sparclab.errors import (
    DisplayValidationError,
    MultipleAnswerSetsError,
    NoAnswerSetsError,
)
from sparclab.solver import AnswerSet

from corpus import MAP_COLORING, MOVING_BOX, NO_ANSWER_SETS, RED_LINE


def _sym(name):
    return SymbolicConstant(name)


def _int(value):
    return IntegerConstant(value)


def _cmd(functor, style, *args):
    terms = [_sym(style)]
    for arg in args:
        terms.append(_int(arg) if isinstance(arg, int) else _sym(arg))
    return CommandTerm(functor, tuple(terms))


def _atom(functor, style, *args, frame=None):
    return DisplayAtom(_cmd(functor, style, *args), frame)


def _lit(name, *args, negated=False):
    return Literal(negated, Atom(name, tuple(args)))


def test_extraction_order_and_filtering():
    draw = _lit("draw", _cmd("draw_line", "s", 0, 0, 2, 2))
    animate = _lit("animate", _cmd("line_color", "s", "red"), _int(3))
    negated = _lit("draw", _cmd("draw_line", "s", 9, 9, 9, 9), negated=True)
    other = _lit("styled", _sym("s"))
    answer_set = AnswerSet(frozenset([draw, animate, negated, other]))
    atoms = extract_display_atoms(answer_set)
    assert [(a.command.functor, a.frame) for a in atoms] == [
        ("line_color", 3),
        ("draw_line", None),
    ]


def test_validation_accepts_well_formed():
    atoms = [
        _atom("line_color", "s", "red"),
        _atom("draw_line", "s", 0, 0, 2, 2),
        _atom("linecap", "s", "round", frame=0),
        _atom("draw_text", "s", "hello", 10, 20),
    ]
    assert validate_display_atoms(atoms) == []


@pytest.mark.parametrize(
    "atom, code",
    [
        (_atom("draw_circle", "s", 1, 2, 3), "UnknownCommand"),
        (DisplayAtom(CommandTerm("draw_line", (_sym("s"), _int(0), _int(0), _int(2)))), "BadCommandArity"),
        (_atom("draw_line", "s", 0, 0, 2, 2, frame=-1), "NegativeFrame"),
        (DisplayAtom(CommandTerm("line_color", (_int(7), _sym("red")))), "BadStyleName"),
        (_atom("draw_line", "s", 0, "zero", 2, 2), "NonIntegerGeometry"),
        (_atom("linewidth", "s", 0), "InvalidStyleValue"),
        (_atom("line_color", "s", 5), "InvalidStyleValue"),
        (_atom("linecap", "s", "diamond"), "UnknownKeyword"),
        (_atom("textalign", "s", 12), "UnknownKeyword"),
    ],
)
def test_validation_codes(atom, code):
    diagnostics = validate_display_atoms([atom])
    assert [d.code for d in diagnostics] == [code]


def test_draw_is_active_in_every_frame():
    atoms = [
        _atom("draw_line", "s", 0, 0, 2, 2),
        _atom("draw_line", "s", 5, 5, 6, 6, frame=2),
    ]
    script = compile_frames(atoms)
    assert script.frame_count == 3
    assert [len(frame) for frame in script.frames] == [1, 1, 2]
    assert script.frames[2][1].args == (5, 5, 6, 6)


def test_no_animate_atoms_make_one_frame():
    script = compile_frames([_atom("draw_line", "s", 0, 0, 2, 2)])
    assert script.frame_count == 1


def test_style_applies_by_name():
    atoms = [
        _atom("line_color", "a", "red"),
        _atom("draw_line", "a", 0, 0, 1, 1),
        _atom("draw_line", "b", 2, 2, 3, 3),
    ]
    (frame,) = compile_frames(atoms).frames
    assert frame[0].style == (("strokeStyle", "red"),)
    assert frame[1].style == ()


def test_style_attributes_merge_and_last_write_wins():
    atoms = [
        _atom("line_color", "s", "blue"),
        _atom("line_color", "s", "red"),
        _atom("linewidth", "s", 4),
        _atom("draw_line", "s", 0, 0, 1, 1),
    ]
    (frame,) = compile_frames(atoms).frames
    assert frame[0].style == (("lineWidth", 4), ("strokeStyle", "red"))


def test_frame_local_styles():
    atoms = [
        _atom("line_color", "s", "red", frame=1),
        _atom("draw_line", "s", 0, 0, 1, 1),
    ]
    script = compile_frames(atoms)
    assert script.frame_count == 2
    assert script.frames[0][0].style == ()
    assert script.frames[1][0].style == (("strokeStyle", "red"),)


def test_moving_box_frames():
    script, _ = compile_source(MOVING_BOX)
    assert script.frame_count == 200
    frame = script.frames[5]
    assert len(frame) == 4
    assert {shape.args for shape in frame} == {
        (6, 70, 16, 70),
        (6, 70, 6, 60),
        (6, 60, 16, 60),
        (16, 60, 16, 70),
    }
    assert all(shape.style == (("strokeStyle", "red"),) for shape in frame)
    last = script.frames[199]
    assert {shape.args for shape in last} == {
        (200, 70, 210, 70),
        (200, 70, 200, 60),
        (200, 60, 210, 60),
        (210, 60, 210, 70),
    }


def test_script_serialization():
    script = compile_frames(
        [_atom("line_color", "s", "red"), _atom("draw_line", "s", 0, 0, 2, 2)]
    )
    data = frame_script_to_dict(script)
    assert data == {
        "version": 1,
        "frames": [
            [{"cmd": "draw_line", "style": {"strokeStyle": "red"}, "args": [0, 0, 2, 2]}]
        ],
    }
    text = frame_script_json(script)
    assert json.loads(text) == data
    assert ": " not in text and ", " not in text


def test_emitted_document_shape():
    script, document = compile_source(RED_LINE)
    text = document.text
    width, height = CANVAS_SIZE
    assert f'<canvas id="myCanvas" width="{width}" height="{height}"> </canvas>' in text
    assert 'ctx.strokeStyle="red";' in text
    assert text.index('ctx.strokeStyle="red";') < text.index("ctx.stroke();")
    assert "ctx.moveTo(0,0);" in text
    assert "ctx.lineTo(2,2);" in text
    assert "Math.floor((now - start) / 1000 * 60)" in text
    assert text.count("window.requestAnimationFrame(step);") == 2
    assert text.count("function(ctx) {") == script.frame_count == 1


def test_emission_covers_every_shape_kind():
    atoms = [
        _atom("textfont", "s", 12, "serif"),
        _atom("draw_quad_curve", "s", 0, 0, 1, 2, 3, 4),
        _atom("draw_bezier_curve", "s", 0, 0, 1, 2, 3, 4, 5, 6),
        _atom("draw_arc_curve", "s", 10, 20, 5, 0, 90),
        _atom("draw_text", "s", "hello", 40, 50),
    ]
    text = emit_html(compile_frames(atoms)).text
    assert "ctx.quadraticCurveTo(1,2,3,4);" in text
    assert "ctx.bezierCurveTo(1,2,3,4,5,6);" in text
    assert "ctx.arc(10,20,5,0*Math.PI/180,90*Math.PI/180,false);" in text
    assert 'ctx.fillText("hello",40,50);' in text
    assert 'ctx.font="12px serif";' in text


def test_frame_functions_match_frame_count():
    script, document = compile_source(MOVING_BOX)
    assert document.text.count("function(ctx) {") == 200


def test_execute_requires_unique_answer_set():
    with pytest.raises(MultipleAnswerSetsError) as info:
        execute(MAP_COLORING)
    assert info.value.count == 6
    with pytest.raises(NoAnswerSetsError):
        execute(NO_ANSWER_SETS)


def test_dynamic_validation_failures_surface():
    bad_width = (
        "sorts\n#style = {sty}.\npredicates\nstyled(#style).\nrules\n"
        "styled(sty).\ndraw(linewidth(sty, 0)).\n"
    )
    with pytest.raises(DisplayValidationError) as info:
        execute(bad_width)
    assert [d.code for d in info.value.diagnostics] == ["InvalidStyleValue"]

    negative_frame = (
        "sorts\n#style = {sty}.\npredicates\nstyled(#style).\nrules\n"
        "styled(sty).\nanimate(draw_line(sty, 0, 0, 1, 1), 0 - 1).\n"
    )
    with pytest.raises(DisplayValidationError) as info:
        execute(negative_frame)
    assert [d.code for d in info.value.diagnostics] == ["NegativeFrame"]
