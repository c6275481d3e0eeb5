"""Content-similarity tracking of files across a repository's history.

The walk runs newest to oldest.  When the tracked path disappears from the
parent, every file the commit deleted (and, with copy detection, every file
it retained) is scored against the tracked content, and the best candidate
at or above the threshold continues the chain as a rename or copy.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from hashlib import blake2b

from .errors import TrackError
from .gitstore import ObjectStore

_CHUNK = 64
_FILE_MODES = (b"100644", b"100755")


class PathNotFound(TrackError):
    pass


class AmbiguousStart(TrackError):
    pass


class Metric(enum.Enum):
    GIT_BYTES = "git-bytes"
    LINES = "lines"


@dataclass(frozen=True)
class SimilarityScore:
    """An unreduced similarity ratio in [0, 1]."""

    numerator: int
    denominator: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class Fingerprint:
    chunks: Counter
    total_bytes: int
    line_hashes: Counter
    line_count: int


def _hash(data: bytes) -> int:
    return int.from_bytes(blake2b(data, digest_size=8).digest(), "big")


def fingerprint(content: bytes) -> Fingerprint:
    """Chunk and line multisets of the content.

    Lines are split on LF with terminators kept; lines longer than 64 bytes
    contribute 64-byte chunks instead of one whole-line chunk.
    """
    parts = content.split(b"\n")
    lines = [part + b"\n" for part in parts[:-1]]
    if parts[-1]:
        lines.append(parts[-1])
    chunks: Counter = Counter()
    line_hashes: Counter = Counter()
    for line in lines:
        line_hashes[_hash(line)] += 1
        if len(line) <= _CHUNK:
            chunks[(_hash(line), len(line))] += 1
        else:
            for i in range(0, len(line), _CHUNK):
                piece = line[i : i + _CHUNK]
                chunks[(_hash(piece), len(piece))] += 1
    return Fingerprint(
        chunks=chunks,
        total_bytes=len(content),
        line_hashes=line_hashes,
        line_count=len(lines),
    )


def similarity(a: Fingerprint, b: Fingerprint, metric: Metric) -> SimilarityScore:
    """Similarity of two fingerprints; identical empty contents score 1/1."""
    if metric is Metric.GIT_BYTES:
        if a.total_bytes == 0 and b.total_bytes == 0:
            return SimilarityScore(1, 1)
        common = a.chunks & b.chunks
        num = sum(length * count for (_h, length), count in common.items())
        return SimilarityScore(num, max(a.total_bytes, b.total_bytes))
    if a.line_count == 0 and b.line_count == 0:
        return SimilarityScore(1, 1)
    common = a.line_hashes & b.line_hashes
    return SimilarityScore(sum(common.values()), max(a.line_count, b.line_count))


@dataclass(frozen=True)
class TrackerConfig:
    threshold: int = 60
    detect_copies: bool = False
    metric: Metric = Metric.GIT_BYTES

    def __post_init__(self) -> None:
        if not 1 <= self.threshold <= 100:
            raise TrackError(f"threshold must be in 1..100, got {self.threshold}")


class StepKind(enum.Enum):
    ADD = "ADD"
    MODIFY = "MODIFY"
    RENAME = "RENAME"
    COPY = "COPY"


@dataclass(frozen=True)
class TrackStep:
    commit_id: str
    kind: StepKind
    old_path: str | None
    new_path: str
    score: SimilarityScore | None


@dataclass
class FollowCaches:
    """Shared lookup state, reusable across follow() calls on one store."""

    trees: dict = field(default_factory=dict)
    fingerprints: dict = field(default_factory=dict)
    commits: dict = field(default_factory=dict)
    disappearance: dict = field(default_factory=dict)


@dataclass(frozen=True)
class _Winner:
    score: SimilarityScore
    old_path: str
    kind: StepKind
    blob: str


def _read_commit(store: ObjectStore, oid: str, caches: FollowCaches):
    record = caches.commits.get(oid)
    if record is None:
        record = store.read_commit(oid)
        caches.commits[oid] = record
    return record


def _flatten(store: ObjectStore, tree_oid: str, caches: FollowCaches) -> dict[str, str]:
    """path -> blob id for every regular file under the tree."""
    cached = caches.trees.get(tree_oid)
    if cached is not None:
        return cached
    flat: dict[str, str] = {}
    for entry in store.read_tree(tree_oid):
        name = entry.name.decode("utf-8", errors="surrogateescape")
        if entry.is_tree:
            for sub_path, sub_oid in _flatten(store, entry.oid, caches).items():
                flat[f"{name}/{sub_path}"] = sub_oid
        elif entry.mode in _FILE_MODES:
            flat[name] = entry.oid
    caches.trees[tree_oid] = flat
    return flat


def _blob_fingerprint(store: ObjectStore, oid: str, caches: FollowCaches) -> Fingerprint:
    fp = caches.fingerprints.get(oid)
    if fp is None:
        _, content = store.read(oid)
        fp = fingerprint(content)
        caches.fingerprints[oid] = fp
    return fp


def _resolve_start(
    store: ObjectStore, path: str, ref: str | None, caches: FollowCaches
) -> str:
    if ref is not None:
        oid = store.resolve_ref(ref)
        if oid is None:
            raise TrackError(f"ref not found: {ref}")
        commit_id = store.peel_to_commit(oid)
        flat = _flatten(store, _read_commit(store, commit_id, caches).tree, caches)
        if path not in flat:
            raise PathNotFound(f"path {path} not found at {ref}")
        return commit_id
    heads = {
        name: oid
        for name, oid in store.refs().items()
        if name.startswith("refs/heads/")
    }
    containing: dict[str, list[str]] = {}
    for name in sorted(heads):
        commit_id = store.peel_to_commit(heads[name])
        flat = _flatten(store, _read_commit(store, commit_id, caches).tree, caches)
        if path in flat:
            containing.setdefault(commit_id, []).append(name)
    if not containing:
        raise PathNotFound(f"path {path} not found on any branch")
    if len(containing) > 1:
        names = sorted(n for branch in containing.values() for n in branch)
        raise AmbiguousStart(
            f"path {path} exists on multiple branch tips: {', '.join(names)}; "
            "pass a ref to choose one"
        )
    return next(iter(containing))


def _disappearance(
    store: ObjectStore,
    commit_id: str,
    tree_oid: str,
    parent_tree_oid: str,
    blob_oid: str,
    config: TrackerConfig,
    caches: FollowCaches,
) -> _Winner | None:
    """Best rename/copy candidate for the blob that appeared at commit_id,
    scored against the first parent's files.  Threshold is applied by the
    caller so results can be shared across thresholds."""
    key = (commit_id, blob_oid, config.detect_copies, config.metric)
    if key in caches.disappearance:
        return caches.disappearance[key]
    cur_flat = _flatten(store, tree_oid, caches)
    parent_flat = _flatten(store, parent_tree_oid, caches)
    target = _blob_fingerprint(store, blob_oid, caches)
    best: _Winner | None = None
    best_value: Fraction | None = None
    for old_path in sorted(parent_flat):
        old_oid = parent_flat[old_path]
        deleted = old_path not in cur_flat
        if not deleted and not config.detect_copies:
            continue
        score = similarity(
            _blob_fingerprint(store, old_oid, caches), target, config.metric
        )
        value = score.as_fraction()
        if best_value is None or value > best_value:
            best_value = value
            best = _Winner(
                score=score,
                old_path=old_path,
                kind=StepKind.RENAME if deleted else StepKind.COPY,
                blob=old_oid,
            )
    caches.disappearance[key] = best
    return best


def follow(
    store: ObjectStore,
    path: str,
    config: TrackerConfig,
    ref: str | None = None,
    caches: FollowCaches | None = None,
) -> list[TrackStep]:
    """Track a path backwards from the start commit to its introduction.

    Steps are returned newest first.  The walk prefers the first parent and
    falls back to later parents only when the path is absent; the last step
    is always an ADD.
    """
    caches = caches if caches is not None else FollowCaches()
    commit_id = _resolve_start(store, path, ref, caches)
    cur_path = path
    record = _read_commit(store, commit_id, caches)
    blob = _flatten(store, record.tree, caches)[cur_path]
    steps: list[TrackStep] = []
    while True:
        record = _read_commit(store, commit_id, caches)
        chosen = None
        for parent in record.parents:
            parent_record = _read_commit(store, parent, caches)
            parent_flat = _flatten(store, parent_record.tree, caches)
            if cur_path in parent_flat:
                chosen = (parent, parent_flat[cur_path])
                break
        if chosen is not None:
            parent, parent_blob = chosen
            if parent_blob != blob:
                steps.append(
                    TrackStep(commit_id, StepKind.MODIFY, cur_path, cur_path, None)
                )
                blob = parent_blob
            commit_id = parent
            continue
        if record.parents:
            first_parent = _read_commit(store, record.parents[0], caches)
            winner = _disappearance(
                store, commit_id, record.tree, first_parent.tree, blob, config, caches
            )
            if (
                winner is not None
                and winner.score.as_fraction() >= Fraction(config.threshold, 100)
            ):
                steps.append(
                    TrackStep(commit_id, winner.kind, winner.old_path, cur_path, winner.score)
                )
                cur_path = winner.old_path
                blob = winner.blob
                commit_id = record.parents[0]
                continue
        steps.append(TrackStep(commit_id, StepKind.ADD, None, cur_path, None))
        return steps


def count_renames(steps: list[TrackStep]) -> int:
    return sum(1 for s in steps if s.kind in (StepKind.RENAME, StepKind.COPY))


def steps_to_tsv(steps: list[TrackStep]) -> str:
    lines = ["commit\tkind\toldPath\tnewPath\tscore"]
    for s in steps:
        lines.append(
            "\t".join(
                (
                    s.commit_id,
                    s.kind.value,
                    s.old_path or "",
                    s.new_path,
                    str(s.score) if s.score is not None else "",
                )
            )
        )
    return "\n".join(lines) + "\n"


def steps_to_json(steps: list[TrackStep]) -> list[dict]:
    return [
        {
            "commit": s.commit_id,
            "kind": s.kind.value,
            "oldPath": s.old_path,
            "newPath": s.new_path,
            "score": str(s.score) if s.score is not None else None,
        }
        for s in steps
    ]
