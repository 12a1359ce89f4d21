"""Workspace store: users, sessions, tree CRUD, sharing, durability."""

import time
import zipfile
from io import BytesIO

import pytest

from sparclab.errors import (
    BadCredentialsError,
    DuplicateUserError,
    InvalidNameError,
    NameConflictError,
    NotFoundError,
    NotOwnerError,
)
from sparclab.workspace import ROOT, WorkspaceStore


@pytest.fixture
def store(tmp_path):
    s = WorkspaceStore(tmp_path / "data")
    yield s
    s.close()


@pytest.fixture
def alice(store):
    return store.create_user("alice", "wonderland")


@pytest.fixture
def bob(store):
    return store.create_user("bob", "builder")


def test_user_round_trip(store, alice):
    token = store.authenticate("alice", "wonderland")
    user = store.session_user(token)
    assert user is not None and user.username == "alice"
    assert user.user_id == alice.user_id


def test_wrong_password_rejected(store, alice):
    with pytest.raises(BadCredentialsError):
        store.authenticate("alice", "wrong")
    with pytest.raises(BadCredentialsError):
        store.authenticate("nobody", "wonderland")


def test_duplicate_username_rejected(store, alice):
    with pytest.raises(DuplicateUserError):
        store.create_user("alice", "other")


def test_password_never_stored_in_clear(store, tmp_path, alice):
    row = store._db.execute("SELECT password_digest FROM users").fetchone()
    assert "wonderland" not in row[0]
    assert row[0].startswith("pbkdf2$")


def test_logout_invalidates_session(store, alice):
    token = store.authenticate("alice", "wonderland")
    store.logout(token)
    assert store.session_user(token) is None


def test_expired_session_rejected(store, alice):
    token = store.authenticate("alice", "wonderland")
    store._db.execute("UPDATE sessions SET expires_at = ?", (time.time() - 1,))
    store._db.commit()
    assert store.session_user(token) is None


@pytest.mark.parametrize("name", ["", "a/b", "x\x00y", "a" * 129])
def test_invalid_names_rejected(store, alice, name):
    with pytest.raises(InvalidNameError):
        store.create_folder(alice.user_id, ROOT, name)
    with pytest.raises(InvalidNameError):
        store.create_file(alice.user_id, ROOT, name, "")
    with pytest.raises(InvalidNameError):
        store.create_user(name, "pw")


def test_long_but_legal_name_accepted(store, alice):
    record = store.create_folder(alice.user_id, ROOT, "a" * 128)
    assert record.name == "a" * 128


def test_file_round_trip(store, alice):
    folder = store.create_folder(alice.user_id, ROOT, "hw1")
    record = store.create_file(alice.user_id, folder.folder_id, "maps.sp", "rules\np.")
    assert store.load_file(alice.user_id, record.file_id) == "rules\np."
    assert record.file_url == "/hw1/maps.sp"
    assert folder.folder_url == "/hw1"


def test_save_overwrites_and_bumps_timestamp(store, alice):
    record = store.create_file(alice.user_id, ROOT, "a.sp", "old")
    time.sleep(0.01)
    updated = store.save_file(alice.user_id, record.file_id, "new")
    assert store.load_file(alice.user_id, record.file_id) == "new"
    assert updated.updated_at > record.updated_at


def test_name_conflicts(store, alice):
    store.create_folder(alice.user_id, ROOT, "hw1")
    with pytest.raises(NameConflictError):
        store.create_folder(alice.user_id, ROOT, "hw1")
    store.create_file(alice.user_id, ROOT, "a.sp", "")
    with pytest.raises(NameConflictError):
        store.create_file(alice.user_id, ROOT, "a.sp", "")


def test_same_name_in_distinct_folders(store, alice):
    left = store.create_folder(alice.user_id, ROOT, "left")
    right = store.create_folder(alice.user_id, ROOT, "right")
    store.create_file(alice.user_id, left.folder_id, "a.sp", "1")
    record = store.create_file(alice.user_id, right.folder_id, "a.sp", "2")
    assert record.file_url == "/right/a.sp"


def test_rename_to_sibling_name_conflicts(store, alice):
    store.create_file(alice.user_id, ROOT, "a.sp", "")
    second = store.create_file(alice.user_id, ROOT, "b.sp", "")
    with pytest.raises(NameConflictError):
        store.rename(alice.user_id, second.file_id, "a.sp")


def test_rename_updates_urls(store, alice):
    folder = store.create_folder(alice.user_id, ROOT, "hw1")
    record = store.create_file(alice.user_id, folder.folder_id, "maps.sp", "x")
    store.rename(alice.user_id, folder.folder_id, "week1")
    tree = store.list_tree(alice.user_id)
    (child,) = tree.folders
    assert child.folder.folder_url == "/week1"
    (listed,) = child.files
    assert listed.file_id == record.file_id
    assert listed.file_url == "/week1/maps.sp"


def test_subtree_delete(store, alice):
    folder = store.create_folder(alice.user_id, ROOT, "hw1")
    store.create_file(alice.user_id, folder.folder_id, "a.sp", "1")
    store.create_file(alice.user_id, folder.folder_id, "b.sp", "2")
    store.delete(alice.user_id, folder.folder_id)
    tree = store.list_tree(alice.user_id)
    assert tree.folders == () and tree.files == ()
    assert store.audit() == []


def test_tree_structure_and_ordering(store, alice):
    store.create_folder(alice.user_id, ROOT, "zeta")
    first = store.create_folder(alice.user_id, ROOT, "alpha")
    store.create_folder(alice.user_id, first.folder_id, "inner")
    store.create_file(alice.user_id, ROOT, "top.sp", "")
    tree = store.list_tree(alice.user_id)
    assert tree.folder is None
    assert [node.folder.name for node in tree.folders] == ["alpha", "zeta"]
    assert [f.name for f in tree.files] == ["top.sp"]
    assert [node.folder.name for node in tree.folders[0].folders] == ["inner"]


def test_cross_user_isolation(store, alice, bob):
    record = store.create_file(alice.user_id, ROOT, "secret.sp", "mine")
    with pytest.raises(NotOwnerError):
        store.load_file(bob.user_id, record.file_id)
    with pytest.raises(NotOwnerError):
        store.delete(bob.user_id, record.file_id)
    with pytest.raises(NotFoundError):
        store.load_file(bob.user_id, "no-such-id")
    assert store.list_tree(bob.user_id).files == ()
    store.create_file(bob.user_id, ROOT, "secret.sp", "his")
    assert store.load_file(alice.user_id, record.file_id) == "mine"


def test_share_round_trip(store, alice):
    record = store.create_file(alice.user_id, ROOT, "a.sp", "content")
    url = store.share_file(alice.user_id, record.file_id)
    assert url.startswith("/share/")
    token = url.split("/share/", 1)[1]
    assert len(token) >= 22  # at least 128 bits of url-safe entropy
    assert store.resolve_share(token) == "content"
    assert store.share_file(alice.user_id, record.file_id) == url


def test_share_reflects_saves_and_revokes_on_delete(store, alice):
    record = store.create_file(alice.user_id, ROOT, "a.sp", "v1")
    token = store.share_file(alice.user_id, record.file_id).split("/share/", 1)[1]
    store.save_file(alice.user_id, record.file_id, "v2")
    assert store.resolve_share(token) == "v2"
    store.delete(alice.user_id, record.file_id)
    with pytest.raises(NotFoundError):
        store.resolve_share(token)


def test_unknown_share_token(store):
    with pytest.raises(NotFoundError):
        store.resolve_share("nope")


def test_durability_across_reopen(tmp_path):
    store = WorkspaceStore(tmp_path / "data")
    user = store.create_user("alice", "pw")
    folder = store.create_folder(user.user_id, ROOT, "hw1")
    record = store.create_file(user.user_id, folder.folder_id, "maps.sp", "body")
    url = store.share_file(user.user_id, record.file_id)
    store.close()

    reopened = WorkspaceStore(tmp_path / "data")
    try:
        assert reopened.load_file(user.user_id, record.file_id) == "body"
        token = url.split("/share/", 1)[1]
        assert reopened.resolve_share(token) == "body"
        assert reopened.authenticate("alice", "pw")
        tree = reopened.list_tree(user.user_id)
        assert [node.folder.name for node in tree.folders] == ["hw1"]
    finally:
        reopened.close()


def test_audit_finds_incoherence(store, tmp_path, alice):
    record = store.create_file(alice.user_id, ROOT, "a.sp", "x")
    assert store.audit() == []
    store._content_path(record.file_id).unlink()
    problems = store.audit()
    assert len(problems) == 1 and record.file_id in problems[0]
    (store._content_path("orphan-id")).write_text("stray")
    assert any("orphan-id" in p for p in store.audit())


def test_zip_round_trip(store, alice, bob):
    folder = store.create_folder(alice.user_id, ROOT, "hw1")
    store.create_file(alice.user_id, folder.folder_id, "maps.sp", "program text")
    store.create_file(alice.user_id, ROOT, "notes.sp", "top level")
    data = store.export_zip(alice.user_id)

    names = set(zipfile.ZipFile(BytesIO(data)).namelist())
    assert names == {"hw1/", "hw1/maps.sp", "notes.sp"}

    store.import_zip(bob.user_id, data)
    tree = store.list_tree(bob.user_id)
    assert [node.folder.name for node in tree.folders] == ["hw1"]
    (imported,) = tree.folders[0].files
    assert store.load_file(bob.user_id, imported.file_id) == "program text"


def test_import_overwrites_existing_files(store, alice, bob):
    store.create_file(alice.user_id, ROOT, "a.sp", "new")
    data = store.export_zip(alice.user_id)
    existing = store.create_file(bob.user_id, ROOT, "a.sp", "old")
    store.import_zip(bob.user_id, data)
    assert store.load_file(bob.user_id, existing.file_id) == "new"
