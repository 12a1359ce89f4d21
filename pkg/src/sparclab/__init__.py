"""SPARC toolkit: parse, sort-check, ground, solve, query, and animate.

The HTTP service lives in `sparclab.server` and the command-line driver in
`sparclab.cli`; neither is imported here so the core stays import-light.
"""

from .display import (
    DisplayAtom,
    FrameScript,
    RenderedDocument,
    ResolvedShape,
    compile_frames,
    compile_program,
    compile_source,
    emit_html,
    execute,
    extract_display_atoms,
    frame_script_json,
    frame_script_to_dict,
    validate_display_atoms,
)
from .grounding import (
    DEFAULT_GROUND_CAP,
    GroundProgram,
    GroundRule,
    ground,
    render_ground_program,
    sort_domain,
)
from .parser import parse, parse_query_literals
from .queries import (
    Query,
    QueryResult,
    answer_ground_query,
    answer_open_query,
    parse_query,
    render_query_result,
    run_query,
)
from .solver import (
    AnswerSet,
    SolveResult,
    answer_sets,
    brute_force_answer_sets,
    is_stable_model,
    reduct,
    render_answer_sets,
)
from .sortcheck import CheckedProgram, check_query_literals, check_sorts, diagnose
from .workspace import WorkspaceStore

__version__ = "0.1.0"

__all__ = [
    "AnswerSet",
    "CheckedProgram",
    "DEFAULT_GROUND_CAP",
    "DisplayAtom",
    "FrameScript",
    "GroundProgram",
    "GroundRule",
    "Query",
    "QueryResult",
    "RenderedDocument",
    "ResolvedShape",
    "SolveResult",
    "WorkspaceStore",
    "answer_ground_query",
    "answer_open_query",
    "answer_sets",
    "brute_force_answer_sets",
    "check_query_literals",
    "check_sorts",
    "compile_frames",
    "compile_program",
    "compile_source",
    "diagnose",
    "emit_html",
    "execute",
    "extract_display_atoms",
    "frame_script_json",
    "frame_script_to_dict",
    "ground",
    "is_stable_model",
    "parse",
    "parse_query",
    "parse_query_literals",
    "reduct",
    "render_answer_sets",
    "render_ground_program",
    "render_query_result",
    "run_query",
    "sort_domain",
    "validate_display_atoms",
]
