"""Persistent multi-user workspace of folders and program files.

Metadata (users, sessions, folders, file records, share tokens) lives in an
embedded sqlite database; file contents live as plain files under the data
root, one per file record. All operations go through a single store object
and are serialized by a lock, so concurrent callers are safe.
"""

from __future__ import annotations

import hashlib
import io
import secrets
import sqlite3
import threading
import time
import zipfile
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    BadCredentialsError,
    DuplicateUserError,
    InvalidNameError,
    NameConflictError,
    NotFoundError,
    NotOwnerError,
)

# Parent marker for top-level entries. Using the empty string rather than
# NULL keeps the (owner, parent, name) UNIQUE constraint effective: sqlite
# treats NULLs as pairwise distinct.
ROOT = ""

SESSION_TTL = 7 * 24 * 3600
_PBKDF2_ITERATIONS = 120_000
_NAME_LIMIT = 128

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    user_id TEXT PRIMARY KEY,
    username TEXT NOT NULL UNIQUE,
    password_digest TEXT NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token TEXT PRIMARY KEY,
    user_id TEXT NOT NULL,
    expires_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS folders (
    folder_id TEXT PRIMARY KEY,
    owner TEXT NOT NULL,
    parent TEXT NOT NULL,
    name TEXT NOT NULL,
    UNIQUE (owner, parent, name)
);
CREATE TABLE IF NOT EXISTS files (
    file_id TEXT PRIMARY KEY,
    owner TEXT NOT NULL,
    folder TEXT NOT NULL,
    name TEXT NOT NULL,
    share_token TEXT,
    updated_at REAL NOT NULL,
    UNIQUE (owner, folder, name)
);
"""


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    username: str
    created_at: float


@dataclass(frozen=True)
class FolderRecord:
    folder_id: str
    owner: str
    parent: str
    name: str
    folder_url: str


@dataclass(frozen=True)
class FileRecord:
    file_id: str
    owner: str
    folder: str
    name: str
    file_url: str
    content_ref: str
    share_token: str | None
    updated_at: float


@dataclass(frozen=True)
class TreeNode:
    """One folder level of a user's tree; the top level has folder None."""

    folder: FolderRecord | None
    folders: tuple["TreeNode", ...]
    files: tuple[FileRecord, ...]


class WorkspaceStore:
    def __init__(self, data_root: str | Path):
        self._root = Path(data_root)
        self._content_dir = self._root / "files"
        self._content_dir.mkdir(parents=True, exist_ok=True)
        self._db = sqlite3.connect(self._root / "workspace.db", check_same_thread=False)
        self._db.executescript(_SCHEMA)
        self._db.commit()
        self._lock = threading.RLock()

    def close(self) -> None:
        with self._lock:
            self._db.close()

    # -- users and sessions ------------------------------------------------

    def create_user(self, username: str, password: str) -> UserRecord:
        _check_name(username)
        with self._lock:
            user_id = _new_id()
            now = time.time()
            try:
                self._db.execute(
                    "INSERT INTO users VALUES (?, ?, ?, ?)",
                    (user_id, username, _digest(password), now),
                )
            except sqlite3.IntegrityError:
                raise DuplicateUserError(f"username {username!r} is taken") from None
            self._db.commit()
            return UserRecord(user_id, username, now)

    def authenticate(self, username: str, password: str) -> str:
        with self._lock:
            row = self._db.execute(
                "SELECT user_id, password_digest FROM users WHERE username = ?",
                (username,),
            ).fetchone()
            if row is None or not _verify(password, row[1]):
                raise BadCredentialsError("unknown username or wrong password")
            token = secrets.token_urlsafe(24)
            self._db.execute(
                "INSERT INTO sessions VALUES (?, ?, ?)",
                (token, row[0], time.time() + SESSION_TTL),
            )
            self._db.execute("DELETE FROM sessions WHERE expires_at < ?", (time.time(),))
            self._db.commit()
            return token

    def session_user(self, token: str) -> UserRecord | None:
        with self._lock:
            row = self._db.execute(
                "SELECT u.user_id, u.username, u.created_at"
                " FROM sessions s JOIN users u ON u.user_id = s.user_id"
                " WHERE s.token = ? AND s.expires_at >= ?",
                (token, time.time()),
            ).fetchone()
            return UserRecord(*row) if row else None

    def logout(self, token: str) -> None:
        with self._lock:
            self._db.execute("DELETE FROM sessions WHERE token = ?", (token,))
            self._db.commit()

    # -- folders and files -------------------------------------------------

    def create_folder(self, owner: str, parent: str, name: str) -> FolderRecord:
        _check_name(name)
        with self._lock:
            if parent != ROOT:
                self._folder_row(owner, parent)
            folder_id = _new_id()
            try:
                self._db.execute(
                    "INSERT INTO folders VALUES (?, ?, ?, ?)",
                    (folder_id, owner, parent, name),
                )
            except sqlite3.IntegrityError:
                raise NameConflictError(f"a folder named {name!r} already exists here") from None
            self._db.commit()
            return self._folder_record(folder_id, owner, parent, name)

    def create_file(self, owner: str, folder: str, name: str, content: str) -> FileRecord:
        _check_name(name)
        with self._lock:
            if folder != ROOT:
                self._folder_row(owner, folder)
            if self._file_name_taken(owner, folder, name):
                raise NameConflictError(f"a file named {name!r} already exists here")
            file_id = _new_id()
            path = self._content_path(file_id)
            path.write_text(content, encoding="utf-8")
            self._db.execute(
                "INSERT INTO files VALUES (?, ?, ?, ?, NULL, ?)",
                (file_id, owner, folder, name, time.time()),
            )
            self._db.commit()
            return self.get_file(owner, file_id)

    def save_file(self, owner: str, file_id: str, content: str) -> FileRecord:
        with self._lock:
            self._file_row(owner, file_id)
            self._content_path(file_id).write_text(content, encoding="utf-8")
            self._db.execute(
                "UPDATE files SET updated_at = ? WHERE file_id = ?",
                (time.time(), file_id),
            )
            self._db.commit()
            return self.get_file(owner, file_id)

    def load_file(self, owner: str, file_id: str) -> str:
        with self._lock:
            self._file_row(owner, file_id)
            return self._content_path(file_id).read_text(encoding="utf-8")

    def get_file(self, owner: str, file_id: str) -> FileRecord:
        with self._lock:
            row = self._file_row(owner, file_id)
            return self._file_record(*row)

    def rename(self, owner: str, entry_id: str, new_name: str) -> None:
        _check_name(new_name)
        with self._lock:
            folder = self._db.execute(
                "SELECT owner, parent FROM folders WHERE folder_id = ?", (entry_id,)
            ).fetchone()
            if folder is not None:
                self._require_owner(folder[0], owner)
                try:
                    self._db.execute(
                        "UPDATE folders SET name = ? WHERE folder_id = ?",
                        (new_name, entry_id),
                    )
                except sqlite3.IntegrityError:
                    raise NameConflictError(
                        f"a folder named {new_name!r} already exists here"
                    ) from None
                self._db.commit()
                return
            row = self._file_row(owner, entry_id)
            try:
                self._db.execute(
                    "UPDATE files SET name = ?, updated_at = ? WHERE file_id = ?",
                    (new_name, time.time(), entry_id),
                )
            except sqlite3.IntegrityError:
                raise NameConflictError(f"a file named {new_name!r} already exists here") from None
            self._db.commit()

    def delete(self, owner: str, entry_id: str) -> None:
        with self._lock:
            folder = self._db.execute(
                "SELECT owner FROM folders WHERE folder_id = ?", (entry_id,)
            ).fetchone()
            if folder is not None:
                self._require_owner(folder[0], owner)
                self._delete_folder(entry_id)
                self._db.commit()
                return
            self._file_row(owner, entry_id)
            self._delete_file(entry_id)
            self._db.commit()

    def list_tree(self, owner: str) -> TreeNode:
        with self._lock:
            folders = self._db.execute(
                "SELECT folder_id, owner, parent, name FROM folders WHERE owner = ?",
                (owner,),
            ).fetchall()
            files = self._db.execute(
                "SELECT file_id, owner, folder, name, share_token, updated_at"
                " FROM files WHERE owner = ?",
                (owner,),
            ).fetchall()
        children: dict[str, list] = {}
        for row in folders:
            children.setdefault(row[2], []).append(row)
        members: dict[str, list] = {}
        for row in files:
            members.setdefault(row[2], []).append(row)

        def build(folder_id: str, record: FolderRecord | None, prefix: str) -> TreeNode:
            subnodes = []
            for row in sorted(children.get(folder_id, ()), key=lambda r: r[3]):
                url = f"{prefix}{row[3]}"
                sub = FolderRecord(row[0], row[1], row[2], row[3], url)
                subnodes.append(build(row[0], sub, f"{url}/"))
            file_records = tuple(
                FileRecord(
                    row[0],
                    row[1],
                    row[2],
                    row[3],
                    f"{prefix}{row[3]}",
                    str(self._content_path(row[0])),
                    row[4],
                    row[5],
                )
                for row in sorted(members.get(folder_id, ()), key=lambda r: r[3])
            )
            return TreeNode(record, tuple(subnodes), file_records)

        return build(ROOT, None, "/")

    # -- sharing -------------------------------------------------------------

    def share_file(self, owner: str, file_id: str) -> str:
        with self._lock:
            row = self._file_row(owner, file_id)
            token = row[4]
            if token is None:
                token = secrets.token_urlsafe(18)
                self._db.execute(
                    "UPDATE files SET share_token = ? WHERE file_id = ?",
                    (token, file_id),
                )
                self._db.commit()
            return f"/share/{token}"

    def resolve_share(self, token: str) -> str:
        with self._lock:
            row = self._db.execute(
                "SELECT file_id FROM files WHERE share_token = ?", (token,)
            ).fetchone()
            if row is None:
                raise NotFoundError("no such share link")
            return self._content_path(row[0]).read_text(encoding="utf-8")

    # -- maintenance ---------------------------------------------------------

    def audit(self) -> list[str]:
        """Check metadata/filesystem coherence; returns problems, empty when clean."""
        problems = []
        with self._lock:
            ids = {row[0] for row in self._db.execute("SELECT file_id FROM files")}
            for file_id in sorted(ids):
                if not self._content_path(file_id).exists():
                    problems.append(f"missing content for file {file_id}")
            on_disk = {p.name for p in self._content_dir.iterdir() if p.is_file()}
            for name in sorted(on_disk - ids):
                problems.append(f"orphan content file {name}")
        return problems

    def export_zip(self, owner: str) -> bytes:
        """Pack the user's whole tree into a zip archive, paths from the root."""
        buffer = io.BytesIO()
        with self._lock, zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:

            def walk(node: TreeNode, prefix: str) -> None:
                for sub in node.folders:
                    path = f"{prefix}{sub.folder.name}/"
                    archive.writestr(path, "")
                    walk(sub, path)
                for record in node.files:
                    archive.writestr(
                        f"{prefix}{record.name}",
                        self._content_path(record.file_id).read_text(encoding="utf-8"),
                    )

            walk(self.list_tree(owner), "")
        return buffer.getvalue()

    def import_zip(self, owner: str, data: bytes) -> None:
        """Unpack an archive into the user's tree; files overwrite, folders merge."""
        with self._lock, zipfile.ZipFile(io.BytesIO(data)) as archive:
            for info in archive.infolist():
                parts = [p for p in info.filename.split("/") if p]
                if not parts:
                    continue
                if info.is_dir():
                    self._ensure_folder_path(owner, parts)
                    continue
                folder = self._ensure_folder_path(owner, parts[:-1])
                name = parts[-1]
                content = archive.read(info).decode("utf-8")
                existing = self._db.execute(
                    "SELECT file_id FROM files WHERE owner = ? AND folder = ? AND name = ?",
                    (owner, folder, name),
                ).fetchone()
                if existing:
                    self.save_file(owner, existing[0], content)
                else:
                    self.create_file(owner, folder, name, content)

    # -- internals -----------------------------------------------------------

    def _content_path(self, file_id: str) -> Path:
        return self._content_dir / file_id

    def _require_owner(self, record_owner: str, caller: str) -> None:
        if record_owner != caller:
            raise NotOwnerError("entry belongs to another user")

    def _folder_row(self, owner: str, folder_id: str) -> tuple:
        row = self._db.execute(
            "SELECT folder_id, owner, parent, name FROM folders WHERE folder_id = ?",
            (folder_id,),
        ).fetchone()
        if row is None:
            raise NotFoundError("no such folder")
        self._require_owner(row[1], owner)
        return row

    def _file_row(self, owner: str, file_id: str) -> tuple:
        row = self._db.execute(
            "SELECT file_id, owner, folder, name, share_token, updated_at"
            " FROM files WHERE file_id = ?",
            (file_id,),
        ).fetchone()
        if row is None:
            raise NotFoundError("no such file")
        self._require_owner(row[1], owner)
        return row

    def _file_name_taken(self, owner: str, folder: str, name: str) -> bool:
        return (
            self._db.execute(
                "SELECT 1 FROM files WHERE owner = ? AND folder = ? AND name = ?",
                (owner, folder, name),
            ).fetchone()
            is not None
        )

    def _folder_record(self, folder_id: str, owner: str, parent: str, name: str) -> FolderRecord:
        return FolderRecord(folder_id, owner, parent, name, self._folder_url(parent, name))

    def _folder_url(self, parent: str, name: str) -> str:
        parts = [name]
        while parent != ROOT:
            row = self._db.execute(
                "SELECT parent, name FROM folders WHERE folder_id = ?", (parent,)
            ).fetchone()
            parts.append(row[1])
            parent = row[0]
        return "/" + "/".join(reversed(parts))

    def _file_record(self, file_id, owner, folder, name, share_token, updated_at) -> FileRecord:
        if folder == ROOT:
            url = f"/{name}"
        else:
            row = self._db.execute(
                "SELECT parent, name FROM folders WHERE folder_id = ?", (folder,)
            ).fetchone()
            url = f"{self._folder_url(row[0], row[1])}/{name}"
        return FileRecord(
            file_id,
            owner,
            folder,
            name,
            url,
            str(self._content_path(file_id)),
            share_token,
            updated_at,
        )

    def _delete_folder(self, folder_id: str) -> None:
        for (sub,) in self._db.execute(
            "SELECT folder_id FROM folders WHERE parent = ?", (folder_id,)
        ).fetchall():
            self._delete_folder(sub)
        for (file_id,) in self._db.execute(
            "SELECT file_id FROM files WHERE folder = ?", (folder_id,)
        ).fetchall():
            self._delete_file(file_id)
        self._db.execute("DELETE FROM folders WHERE folder_id = ?", (folder_id,))

    def _delete_file(self, file_id: str) -> None:
        self._db.execute("DELETE FROM files WHERE file_id = ?", (file_id,))
        self._content_path(file_id).unlink(missing_ok=True)

    def _ensure_folder_path(self, owner: str, parts: list[str]) -> str:
        parent = ROOT
        for name in parts:
            row = self._db.execute(
                "SELECT folder_id FROM folders WHERE owner = ? AND parent = ? AND name = ?",
                (owner, parent, name),
            ).fetchone()
            if row:
                parent = row[0]
            else:
                parent = self.create_folder(owner, parent, name).folder_id
        return parent


def _new_id() -> str:
    return secrets.token_hex(8)


def _digest(password: str) -> str:
    salt = secrets.token_bytes(16)
    raw = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, _PBKDF2_ITERATIONS)
    return f"pbkdf2${_PBKDF2_ITERATIONS}${salt.hex()}${raw.hex()}"


def _verify(password: str, digest: str) -> bool:
    _, iterations, salt_hex, want = digest.split("$")
    raw = hashlib.pbkdf2_hmac(
        "sha256", password.encode(), bytes.fromhex(salt_hex), int(iterations)
    )
    return secrets.compare_digest(raw.hex(), want)


def _check_name(name: str) -> None:
    if not name or len(name) > _NAME_LIMIT:
        raise InvalidNameError("names must be 1 to 128 characters")
    if "/" in name or any(ord(c) < 32 for c in name):
        raise InvalidNameError("names cannot contain '/' or control characters")
