"""History-rewriting unit tests: tree conversion, graph isomorphism,
ref handling, and conversion statistics."""

from __future__ import annotations

import os
import subprocess

import pytest

from methodgit import (
    ConversionConfig,
    ObjectStore,
    RenderConfig,
    RepositoryError,
    RepoWriter,
    TreeEntry,
    convert_source,
    rewrite_history,
)

from conftest import (
    AUTHOR,
    ENGINEER_JAVA,
    GETTER_PATH_NEW,
    GETTER_PATH_OLD,
    PERSON_JAVA,
    SETTER_PATH_NEW,
    SETTER_PATH_OLD,
    build_linear_repo,
    requires_git,
    write_tree_dict,
)


def flatten(store: ObjectStore, tree_oid: str, prefix: str = "") -> dict[str, str]:
    out: dict[str, str] = {}
    for entry in store.read_tree(tree_oid):
        name = entry.name.decode()
        if entry.is_tree:
            out.update(flatten(store, entry.oid, prefix + name + "/"))
        else:
            out[prefix + name] = entry.oid
    return out


def head_files(path: str) -> dict[str, str]:
    store = ObjectStore(path)
    head = store.resolve_ref("HEAD")
    files = flatten(store, store.read_commit(head).tree)
    store.close()
    return files


def test_convert_source_names_person():
    files = convert_source(PERSON_JAVA, ConversionConfig())
    assert [name for name, _ in files] == [GETTER_PATH_OLD, SETTER_PATH_OLD]


def test_convert_source_emits_fields_on_request():
    files = convert_source(PERSON_JAVA, ConversionConfig(emit_fields=True))
    assert [name for name, _ in files] == [
        GETTER_PATH_OLD,
        SETTER_PATH_OLD,
        "Person#private_int_length.fjava",
    ]


def test_convert_source_deduplicates_names():
    src = """
    class D {
      void f() { int a = 1; }
      void f() { int b = 2; }
    }
    """
    files = convert_source(src, ConversionConfig())
    assert len(files) == 1
    assert b"a" in files[0][1]
    assert b"b" not in files[0][1]


def test_person_conversion_head_tree(person_repo, tmp_path):
    dst = str(tmp_path / "out.git")
    stats = rewrite_history(person_repo, dst)
    assert stats.commits_processed == 2
    assert stats.files_emitted == 4
    assert stats.files_skipped == 0
    assert sorted(head_files(dst)) == [GETTER_PATH_NEW, SETTER_PATH_NEW]


def test_graph_isomorphism_and_metadata(person_repo, tmp_path):
    dst = str(tmp_path / "out.git")
    rewrite_history(person_repo, dst)
    src_store = ObjectStore(person_repo)
    dst_store = ObjectStore(dst)
    pairs = []
    with open(os.path.join(dst, "commit-map.tsv"), encoding="utf-8") as f:
        for line in f:
            old, new = line.rstrip("\n").split("\t")
            pairs.append((old, new))
    assert len(pairs) == 2
    mapping = dict(pairs)
    for old, new in pairs:
        old_rec = src_store.read_commit(old)
        new_rec = dst_store.read_commit(new)
        assert new_rec.message == old_rec.message
        assert new_rec.author == old_rec.author
        assert new_rec.committer == old_rec.committer
        assert new_rec.parents == [mapping[p] for p in old_rec.parents]
    assert dst_store.head_target() == ("ref", "refs/heads/master")
    src_store.close()
    dst_store.close()


def test_merge_topology_preserved(tmp_path):
    src = str(tmp_path / "src.git")
    writer = RepoWriter(src)
    writer.init_bare()

    def commit(files, parents, n):
        stamp = AUTHOR % (1700000000 + n * 60)
        return writer.write_commit(
            tree=write_tree_dict(writer, files),
            parents=parents,
            author=stamp,
            committer=stamp,
            message=b"c%d\n" % n,
        )

    base = commit({"A.java": b"class A { void f() {} }"}, [], 0)
    left = commit({"A.java": b"class A { void f() { go(); } }"}, [base], 1)
    right = commit(
        {"A.java": b"class A { void f() {} }", "B.java": b"class B { void g() {} }"},
        [base],
        2,
    )
    merge = commit(
        {
            "A.java": b"class A { void f() { go(); } }",
            "B.java": b"class B { void g() {} }",
        },
        [left, right],
        3,
    )
    writer.write_refs({"refs/heads/master": merge})
    writer.set_head("refs/heads/master")

    dst = str(tmp_path / "dst.git")
    stats = rewrite_history(src, dst)
    assert stats.commits_processed == 4
    dst_store = ObjectStore(dst)
    new_merge = dst_store.resolve_ref("HEAD")
    record = dst_store.read_commit(new_merge)
    assert len(record.parents) == 2
    grandparents = {
        p
        for parent in record.parents
        for p in dst_store.read_commit(parent).parents
    }
    assert len(grandparents) == 1
    dst_store.close()


def test_non_java_files_pass_through(tmp_path):
    src = str(tmp_path / "src.git")
    build_linear_repo(
        src,
        [
            {
                "Person.java": PERSON_JAVA.encode(),
                "docs/readme.md": b"# hi\n",
                "data.bin": bytes(range(256)),
            }
        ],
    )
    dst = str(tmp_path / "dst.git")
    rewrite_history(src, dst)
    files = head_files(dst)
    assert "docs/readme.md" in files
    assert "data.bin" in files
    assert "Person.java" not in files


def test_keep_java_retains_original(person_repo, tmp_path):
    dst = str(tmp_path / "dst.git")
    rewrite_history(
        person_repo, dst, ConversionConfig(keep_original_java=True)
    )
    files = head_files(dst)
    assert "Engineer.java" in files
    assert GETTER_PATH_NEW in files


def test_undecodable_java_is_skipped_and_kept(tmp_path):
    src = str(tmp_path / "src.git")
    bogus = b"\xff\xfe\x00broken"
    build_linear_repo(
        src, [{"Bad.java": bogus, "Good.java": b"class Good { void f() {} }"}]
    )
    dst = str(tmp_path / "dst.git")
    stats = rewrite_history(src, dst)
    assert stats.files_skipped == 1
    assert stats.files_emitted == 1
    files = head_files(dst)
    assert "Bad.java" in files
    store = ObjectStore(dst)
    assert store.read(files["Bad.java"])[1] == bogus
    store.close()


def test_unparseable_java_is_skipped_and_kept(tmp_path):
    src = str(tmp_path / "src.git")
    build_linear_repo(src, [{"Broken.java": b"class Broken { void f() { "}])
    dst = str(tmp_path / "dst.git")
    stats = rewrite_history(src, dst)
    assert stats.files_skipped == 1
    assert "Broken.java" in head_files(dst)


def test_gitlink_entries_are_preserved(tmp_path):
    src = str(tmp_path / "src.git")
    writer = RepoWriter(src)
    writer.init_bare()
    tree = writer.write_tree(
        [
            TreeEntry(b"160000", b"vendored", "a" * 40),
            TreeEntry(b"100644", b"x.txt", writer.write_blob(b"x\n")),
        ]
    )
    stamp = AUTHOR % 1700000000
    cid = writer.write_commit(
        tree=tree, parents=[], author=stamp, committer=stamp, message=b"c\n"
    )
    writer.write_refs({"refs/heads/master": cid})
    dst = str(tmp_path / "dst.git")
    rewrite_history(src, dst)
    store = ObjectStore(dst)
    head = store.resolve_ref("HEAD")
    entries = {
        e.name: e for e in store.read_tree(store.read_commit(head).tree)
    }
    assert entries[b"vendored"].mode == b"160000"
    assert entries[b"vendored"].oid == "a" * 40
    store.close()


def test_ref_subset_selection(tmp_path):
    src = str(tmp_path / "src.git")
    writer = RepoWriter(src)
    writer.init_bare()

    def commit(files, parents, n):
        stamp = AUTHOR % (1700000000 + n * 60)
        return writer.write_commit(
            tree=write_tree_dict(writer, files),
            parents=parents,
            author=stamp,
            committer=stamp,
            message=b"c%d\n" % n,
        )

    main_tip = commit({"A.java": b"class A { void f() {} }"}, [], 0)
    side_tip = commit({"B.java": b"class B { void g() {} }"}, [main_tip], 1)
    writer.write_refs(
        {"refs/heads/master": main_tip, "refs/heads/side": side_tip}
    )
    writer.set_head("refs/heads/master")

    dst = str(tmp_path / "dst.git")
    stats = rewrite_history(src, dst, ref_names=["refs/heads/master"])
    assert stats.commits_processed == 1
    store = ObjectStore(dst)
    assert sorted(store.refs()) == ["refs/heads/master"]
    store.close()


def test_head_falls_back_to_first_branch(tmp_path):
    src = str(tmp_path / "src.git")
    writer = RepoWriter(src)
    writer.init_bare()
    stamp = AUTHOR % 1700000000
    cid = writer.write_commit(
        tree=write_tree_dict(writer, {"A.java": b"class A { void f() {} }"}),
        parents=[],
        author=stamp,
        committer=stamp,
        message=b"c\n",
    )
    writer.write_refs({"refs/heads/trunk": cid})
    writer.set_head("refs/heads/gone")
    dst = str(tmp_path / "dst.git")
    rewrite_history(src, dst)
    store = ObjectStore(dst)
    assert store.head_target() == ("ref", "refs/heads/trunk")
    store.close()


def test_empty_source_rejected(tmp_path):
    src = str(tmp_path / "src.git")
    writer = RepoWriter(src)
    writer.init_bare()
    with pytest.raises(RepositoryError):
        rewrite_history(src, str(tmp_path / "dst.git"))


def test_conversion_is_deterministic(tmp_path):
    src = str(tmp_path / "src.git")
    build_linear_repo(
        src,
        [
            {"Person.java": PERSON_JAVA.encode(), "note.txt": b"n\n"},
            {"Engineer.java": ENGINEER_JAVA.encode(), "note.txt": b"n\n"},
        ],
    )

    def convert_to(name: str) -> dict[str, bytes]:
        dst = str(tmp_path / name)
        rewrite_history(src, dst)
        out = {}
        objects = os.path.join(dst, "objects")
        for root, _dirs, files in os.walk(objects):
            for fname in files:
                full = os.path.join(root, fname)
                rel = os.path.relpath(full, dst)
                with open(full, "rb") as f:
                    out[rel] = f.read()
        with open(os.path.join(dst, "packed-refs"), "rb") as f:
            out["packed-refs"] = f.read()
        return out

    assert convert_to("one.git") == convert_to("two.git")


def test_plain_mode_emits_source_lines(person_repo, tmp_path):
    from methodgit import LineFormat

    dst = str(tmp_path / "dst.git")
    rewrite_history(
        person_repo,
        dst,
        ConversionConfig(render=RenderConfig(line_format=LineFormat.PLAIN)),
    )
    files = head_files(dst)
    store = ObjectStore(dst)
    content = store.read(files[GETTER_PATH_NEW])[1]
    store.close()
    assert content == b"  public int getHeight() {\n    return height;\n  }\n"


def test_rename_limit_policy_applies(tmp_path):
    from methodgit import NamePolicy

    long_name = "m" + "x" * 300
    src = str(tmp_path / "src.git")
    build_linear_repo(
        src,
        [{"A.java": f"class A {{ void {long_name}() {{}} }}".encode()}],
    )
    dst = str(tmp_path / "dst.git")
    rewrite_history(
        src,
        dst,
        ConversionConfig(name_policy=NamePolicy(max_file_name_bytes=80)),
    )
    (path,) = head_files(dst)
    assert len(path.encode("utf-8")) <= 80
    assert path.endswith(".mjava")


@requires_git
def test_converted_repo_passes_fsck(person_repo, tmp_path):
    dst = str(tmp_path / "dst.git")
    rewrite_history(person_repo, dst)
    result = subprocess.run(
        ["git", "fsck", "--strict"], cwd=dst, capture_output=True, text=True
    )
    assert result.returncode == 0, result.stderr


@requires_git
def test_git_follow_agrees_on_fixture(person_repo, tmp_path):
    dst = str(tmp_path / "dst.git")
    rewrite_history(person_repo, dst)

    def subjects(threshold: str) -> list[str]:
        return subprocess.run(
            [
                "git", "log", "--follow", "--format=%s",
                f"-M{threshold}", "--", GETTER_PATH_NEW,
            ],
            cwd=dst,
            capture_output=True,
            text=True,
            check=True,
        ).stdout.splitlines()

    # At 60% git itself crosses the rename, reaching both commits.
    assert subjects("60%") == ["commit 1", "commit 0"]