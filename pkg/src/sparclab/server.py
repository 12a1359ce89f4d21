"""HTTP facade over parsing, solving, display compilation, and the workspace.

Every handler is a thin adapter: it parses the request body, calls the
corresponding module, and serializes the result. Responses that carry
solver or query output include a `text` field whose bytes match what the
command-line tools print for the same input.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, Header, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .display import compile_source, frame_script_to_dict
from .errors import (
    BadCredentialsError,
    DisplayValidationError,
    DuplicateUserError,
    LexError,
    MultipleAnswerSetsError,
    NameConflictError,
    NoAnswerSetsError,
    NotFoundError,
    NotOwnerError,
    ParseError,
    SortCheckError,
    SparcError,
)
from .grounding import DEFAULT_GROUND_CAP, ground
from .parser import parse
from .queries import parse_query, render_query_result, run_query
from .solver import answer_sets, render_answer_sets
from .sortcheck import check_sorts
from .workspace import ROOT, FileRecord, TreeNode, UserRecord, WorkspaceStore


class UserBody(BaseModel):
    username: str
    password: str


class QueryBody(BaseModel):
    program: str
    query: str


class SolveBody(BaseModel):
    program: str
    limit: int | None = None


class ExecuteBody(BaseModel):
    program: str


class FolderBody(BaseModel):
    name: str
    parent: str = ROOT


class FileBody(BaseModel):
    name: str
    folder: str = ROOT
    content: str = ""


class ContentBody(BaseModel):
    content: str


class RenameBody(BaseModel):
    name: str


def create_app(
    data_root: str,
    ground_cap: int | None = DEFAULT_GROUND_CAP,
    budget: int | None = None,
    max_models: int | None = None,
) -> FastAPI:
    app = FastAPI(title="sparclab", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = WorkspaceStore(data_root)
    app.state.store = store

    def require_user(authorization: str = Header(default="")) -> UserRecord:
        token = authorization.removeprefix("Bearer ").strip()
        user = store.session_user(token) if token else None
        if user is None:
            raise BadCredentialsError("missing or expired session token")
        return user

    @app.exception_handler(SparcError)
    async def on_sparc_error(_, exc: SparcError) -> JSONResponse:
        return _error_response(exc)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    # -- accounts ----------------------------------------------------------

    @app.post("/api/users", status_code=201)
    def create_user(body: UserBody) -> dict:
        record = store.create_user(body.username, body.password)
        return {"user_id": record.user_id, "username": record.username}

    @app.post("/api/session")
    def login(body: UserBody) -> dict:
        token = store.authenticate(body.username, body.password)
        return {"token": token, "username": body.username}

    @app.delete("/api/session")
    def logout(authorization: str = Header(default="")) -> dict:
        store.logout(authorization.removeprefix("Bearer ").strip())
        return {"ok": True}

    # -- language services (anonymous use allowed) --------------------------

    @app.post("/api/query")
    def query(body: QueryBody) -> dict:
        checked = check_sorts(parse(body.program))
        result = answer_sets(ground(checked, ground_cap), budget=budget)
        outcome = run_query(checked, result.answer_sets, parse_query(body.query))
        payload = {
            "verdict": outcome.verdict,
            "substitutions": None,
            "text": render_query_result(outcome),
        }
        if outcome.substitutions is not None:
            payload["substitutions"] = [
                {name: str(term) for name, term in sub.items()}
                for sub in outcome.substitutions
            ]
        return payload

    @app.post("/api/answersets")
    def solve(body: SolveBody) -> dict:
        checked = check_sorts(parse(body.program))
        limit = body.limit if body.limit is not None else max_models
        result = answer_sets(ground(checked, ground_cap), limit=limit, budget=budget)
        return {
            "answer_sets": [
                [str(lit) for lit in s.sorted_literals()] for s in result.answer_sets
            ],
            "truncated": result.truncated,
            "text": render_answer_sets(result),
        }

    @app.post("/api/execute")
    def execute(body: ExecuteBody) -> dict:
        script, document = compile_source(body.program, ground_cap, budget)
        return {"script": frame_script_to_dict(script), "document": document.text}

    # -- workspace ----------------------------------------------------------

    @app.get("/api/tree")
    def tree(user: UserRecord = Depends(require_user)) -> dict:
        return _tree_json(store.list_tree(user.user_id))

    @app.post("/api/folders", status_code=201)
    def create_folder(body: FolderBody, user: UserRecord = Depends(require_user)) -> dict:
        record = store.create_folder(user.user_id, body.parent, body.name)
        return {
            "folder_id": record.folder_id,
            "name": record.name,
            "parent": record.parent,
            "url": record.folder_url,
        }

    @app.patch("/api/folders/{folder_id}")
    def rename_folder(
        folder_id: str, body: RenameBody, user: UserRecord = Depends(require_user)
    ) -> dict:
        store.rename(user.user_id, folder_id, body.name)
        return {"ok": True}

    @app.delete("/api/folders/{folder_id}")
    def delete_folder(folder_id: str, user: UserRecord = Depends(require_user)) -> dict:
        store.delete(user.user_id, folder_id)
        return {"ok": True}

    @app.post("/api/files", status_code=201)
    def create_file(body: FileBody, user: UserRecord = Depends(require_user)) -> dict:
        record = store.create_file(user.user_id, body.folder, body.name, body.content)
        return _file_json(record)

    @app.get("/api/files/{file_id}")
    def read_file(file_id: str, user: UserRecord = Depends(require_user)) -> dict:
        record = store.get_file(user.user_id, file_id)
        payload = _file_json(record)
        payload["content"] = store.load_file(user.user_id, file_id)
        return payload

    @app.put("/api/files/{file_id}")
    def save_file(
        file_id: str, body: ContentBody, user: UserRecord = Depends(require_user)
    ) -> dict:
        return _file_json(store.save_file(user.user_id, file_id, body.content))

    @app.patch("/api/files/{file_id}")
    def rename_file(
        file_id: str, body: RenameBody, user: UserRecord = Depends(require_user)
    ) -> dict:
        store.rename(user.user_id, file_id, body.name)
        return _file_json(store.get_file(user.user_id, file_id))

    @app.delete("/api/files/{file_id}")
    def delete_file(file_id: str, user: UserRecord = Depends(require_user)) -> dict:
        store.delete(user.user_id, file_id)
        return {"ok": True}

    @app.post("/api/files/{file_id}/share")
    def share_file(file_id: str, user: UserRecord = Depends(require_user)) -> dict:
        return {"url": store.share_file(user.user_id, file_id)}

    @app.get("/share/{token}")
    def resolve_share(token: str) -> Response:
        return PlainTextResponse(store.resolve_share(token))

    return app


def serve(
    port: int = 8080,
    data_root: str = "sparclab-data",
    ground_cap: int | None = DEFAULT_GROUND_CAP,
    budget: int | None = None,
    max_models: int | None = None,
    host: str = "127.0.0.1",
) -> None:
    import uvicorn

    app = create_app(data_root, ground_cap, budget, max_models)
    uvicorn.run(app, host=host, port=port, log_level="warning")


def _status_for(exc: SparcError) -> int:
    if isinstance(exc, BadCredentialsError):
        return 401
    if isinstance(exc, (NotFoundError, NotOwnerError)):
        # NotOwner is reported as 404 so one user cannot probe another's ids.
        return 404
    if isinstance(exc, (NameConflictError, DuplicateUserError, MultipleAnswerSetsError)):
        return 409
    if isinstance(exc, NoAnswerSetsError):
        return 422
    return 400


def _error_response(exc: SparcError) -> JSONResponse:
    if isinstance(exc, NotOwnerError):
        # Present the same body as a missing id; see _status_for.
        error: dict = {"code": NotFoundError.code, "message": "no such entry"}
        return JSONResponse(status_code=404, content={"error": error})
    error = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, (SortCheckError, DisplayValidationError)):
        error["diagnostics"] = [d.to_record() for d in exc.diagnostics]
    elif isinstance(exc, (LexError, ParseError)):
        error["diagnostics"] = [exc.to_diagnostic().to_record()]
    if isinstance(exc, MultipleAnswerSetsError):
        error["count"] = exc.count
    return JSONResponse(status_code=_status_for(exc), content={"error": error})


def _file_json(record: FileRecord) -> dict:
    return {
        "file_id": record.file_id,
        "name": record.name,
        "folder": record.folder,
        "url": record.file_url,
        "shared": record.share_token is not None,
        "updated_at": record.updated_at,
    }


def _tree_json(node: TreeNode) -> dict:
    folder = None
    if node.folder is not None:
        folder = {
            "folder_id": node.folder.folder_id,
            "name": node.folder.name,
            "parent": node.folder.parent,
            "url": node.folder.folder_url,
        }
    return {
        "folder": folder,
        "folders": [_tree_json(sub) for sub in node.folders],
        "files": [_file_json(record) for record in node.files],
    }
