"""Rewriting a Java repository into its method-per-file equivalent.

The destination is a bare repository with an isomorphic commit graph:
one commit per source commit, same parent structure, same author,
committer, message, and encoding.  Signatures are not carried over.
"""

from __future__ import annotations

import heapq
import os
import time
from dataclasses import dataclass, field
from typing import Callable

from .emit import RenderConfig, render
from .errors import RepositoryError
from .extract import extract
from .gitstore import ObjectStore, RepoWriter, TreeEntry
from .naming import NamePolicy, field_file_name, method_file_name

_FILE_MODES = (b"100644", b"100755")


@dataclass(frozen=True)
class ConversionConfig:
    render: RenderConfig = RenderConfig()
    emit_fields: bool = False
    keep_original_java: bool = False
    pass_through_non_java: bool = True
    name_policy: NamePolicy = NamePolicy()


@dataclass
class ConversionStats:
    commits_processed: int = 0
    files_emitted: int = 0
    files_skipped: int = 0
    wall_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "commits_processed": self.commits_processed,
            "files_emitted": self.files_emitted,
            "files_skipped": self.files_skipped,
            "wall_seconds": round(self.wall_seconds, 3),
        }


def convert_source(source: str, config: ConversionConfig) -> list[tuple[str, bytes]]:
    """All (file name, content) pairs for one Java source text.

    Duplicate names keep the first occurrence.  Raises LexError or
    ParseError when the source cannot be processed.
    """
    methods, fields = extract(source)
    out: list[tuple[str, bytes]] = []
    seen: set[str] = set()
    for m in methods:
        name = method_file_name(m, config.name_policy)
        if name in seen:
            continue
        seen.add(name)
        out.append((name, render(m, config.render)))
    if config.emit_fields:
        for f in fields:
            name = field_file_name(f, config.name_policy)
            if name in seen:
                continue
            seen.add(name)
            out.append((name, render(f, config.render)))
    return out


def convert_blob(content: bytes, config: ConversionConfig) -> list[tuple[str, bytes]] | None:
    """Convert one .java blob; None when it cannot be processed."""
    if content.startswith(b"\xef\xbb\xbf"):
        content = content[3:]
    try:
        source = content.decode("utf-8")
    except UnicodeDecodeError:
        return None
    try:
        return convert_source(source, config)
    except Exception:
        return None


@dataclass
class _Caches:
    trees: dict[str, str] = field(default_factory=dict)
    blobs: dict[str, list[tuple[bytes, str]] | None] = field(default_factory=dict)


class _TreeConverter:
    def __init__(
        self,
        store: ObjectStore,
        writer: RepoWriter,
        config: ConversionConfig,
        stats: ConversionStats,
    ):
        self.store = store
        self.writer = writer
        self.config = config
        self.stats = stats
        self.caches = _Caches()

    def _convert_java_blob(self, oid: str) -> list[tuple[bytes, str]] | None:
        cached = self.caches.blobs.get(oid, False)
        if cached is not False:
            return cached
        _, content = self.store.read(oid)
        files = convert_blob(content, self.config)
        if files is None:
            self.stats.files_skipped += 1
            result = None
        else:
            result = [
                (name.encode("utf-8"), self.writer.write_blob(data))
                for name, data in files
            ]
            self.stats.files_emitted += len(result)
        self.caches.blobs[oid] = result
        return result

    def _copy_blob(self, oid: str) -> str:
        _, content = self.store.read(oid)
        return self.writer.write_blob(content)

    def convert_tree(self, tree_oid: str) -> str:
        cached = self.caches.trees.get(tree_oid)
        if cached is not None:
            return cached
        entries = self.store.read_tree(tree_oid)
        out: list[TreeEntry] = []
        seen_names: set[bytes] = set()

        def add(entry: TreeEntry) -> None:
            if entry.name in seen_names:
                return
            seen_names.add(entry.name)
            out.append(entry)

        for entry in entries:
            if entry.is_tree:
                add(TreeEntry(entry.mode, entry.name, self.convert_tree(entry.oid)))
                continue
            if entry.mode == b"160000":
                add(entry)
                continue
            is_java = entry.mode in _FILE_MODES and entry.name.endswith(b".java")
            if is_java:
                files = self._convert_java_blob(entry.oid)
                if files is not None:
                    if self.config.keep_original_java:
                        add(TreeEntry(entry.mode, entry.name, self._copy_blob(entry.oid)))
                    for name, blob_oid in files:
                        add(TreeEntry(b"100644", name, blob_oid))
                    continue
                add(TreeEntry(entry.mode, entry.name, self._copy_blob(entry.oid)))
                continue
            if self.config.pass_through_non_java:
                add(TreeEntry(entry.mode, entry.name, self._copy_blob(entry.oid)))
        new_oid = self.writer.write_tree(out)
        self.caches.trees[tree_oid] = new_oid
        return new_oid


def _select_refs(store: ObjectStore, ref_names: list[str] | None) -> dict[str, str]:
    """Full ref name -> commit id (annotated tags peeled)."""
    all_refs = store.refs()
    selected: dict[str, str] = {}
    if ref_names is None:
        for name, oid in all_refs.items():
            if name.startswith("refs/heads/") or name.startswith("refs/tags/"):
                selected[name] = oid
    else:
        for name in ref_names:
            full = None
            for cand in (name, f"refs/heads/{name}", f"refs/tags/{name}"):
                if cand in all_refs:
                    full = cand
                    break
            if full is None:
                raise RepositoryError(f"ref not found: {name}")
            selected[full] = all_refs[full]
    return {name: store.peel_to_commit(oid) for name, oid in selected.items()}


def _topo_order(store: ObjectStore, tips: list[str]) -> list[str]:
    """All ancestors of tips, parents before children, ties broken by
    (commit time, id)."""
    commits: dict[str, list[str]] = {}
    stack = list(dict.fromkeys(tips))
    while stack:
        oid = stack.pop()
        if oid in commits:
            continue
        record = store.read_commit(oid)
        commits[oid] = record.parents
        for parent in record.parents:
            if parent not in commits:
                stack.append(parent)

    children: dict[str, list[str]] = {oid: [] for oid in commits}
    pending: dict[str, int] = {}
    for oid, parents in commits.items():
        pending[oid] = len(parents)
        for parent in parents:
            children[parent].append(oid)

    ready = [
        (store.read_commit(oid).commit_time, oid)
        for oid, count in pending.items()
        if count == 0
    ]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        _, oid = heapq.heappop(ready)
        order.append(oid)
        for child in children[oid]:
            pending[child] -= 1
            if pending[child] == 0:
                heapq.heappush(ready, (store.read_commit(child).commit_time, child))
    if len(order) != len(commits):
        raise RepositoryError("commit graph contains a cycle")
    return order


def rewrite_history(
    src_path: str,
    dst_path: str,
    config: ConversionConfig | None = None,
    ref_names: list[str] | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> ConversionStats:
    """Rewrite the repository at src_path into a bare repository at dst_path.

    Writes a commit-map.tsv file (source id TAB destination id, in
    processing order) at the top of the destination repository.
    """
    start = time.monotonic()
    config = config or ConversionConfig()
    store = ObjectStore(src_path)
    writer = RepoWriter(dst_path)
    writer.init_bare()
    stats = ConversionStats()

    refs = _select_refs(store, ref_names)
    if not refs:
        raise RepositoryError(f"no branches or tags to convert in {src_path}")
    order = _topo_order(store, list(refs.values()))

    converter = _TreeConverter(store, writer, config, stats)
    commit_map: dict[str, str] = {}
    map_lines: list[str] = []
    for i, oid in enumerate(order):
        record = store.read_commit(oid)
        new_tree = converter.convert_tree(record.tree)
        new_id = writer.write_commit(
            tree=new_tree,
            parents=[commit_map[p] for p in record.parents],
            author=record.author,
            committer=record.committer,
            message=record.message,
            encoding=record.encoding,
        )
        commit_map[oid] = new_id
        map_lines.append(f"{oid}\t{new_id}")
        if progress is not None and (i + 1) % 100 == 0:
            progress(i + 1, len(order))
    stats.commits_processed = len(order)

    new_refs = {name: commit_map[oid] for name, oid in refs.items()}
    writer.write_refs(new_refs)

    head_ref = None
    kind, target = store.head_target()
    if kind == "ref" and target in new_refs:
        head_ref = target
    else:
        branches = sorted(n for n in new_refs if n.startswith("refs/heads/"))
        if branches:
            head_ref = branches[0]
    if head_ref is not None:
        writer.set_head(head_ref)

    with open(os.path.join(writer.path, "commit-map.tsv"), "w", encoding="utf-8") as f:
        for line in map_lines:
            f.write(line + "\n")

    store.close()
    stats.wall_seconds = time.monotonic() - start
    return stats
