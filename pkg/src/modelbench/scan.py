"""Scan stage: file discovery, boundary filters, and exact-hash deduplication.

Every file seen falls into exactly one bucket (candidate, excluded,
unreadable, too_large, or duplicate), so the summary totals always add up
to the number of files seen.  Symbolic links are not followed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .artifacts import DATASET_INFO, compute_model_id, write_artifact
from .errors import DatasetPathMissing
from .globs import matches_any
from .profile import BenchmarkProfile, ScanConfig


@dataclass
class AccessibilityResult:
    kept: list[str] = field(default_factory=list)
    unreadable: list[str] = field(default_factory=list)
    too_large: list[str] = field(default_factory=list)


@dataclass
class DedupResult:
    candidates: list[str] = field(default_factory=list)
    duplicate_groups: list[dict] = field(default_factory=list)
    unreadable: list[str] = field(default_factory=list)


def discover_files(config: ScanConfig, *, base_dir: str | Path = ".") -> list[str]:
    """Recursively list files matching the include/exclude rules, sorted."""
    root = _dataset_root(config, base_dir)
    kept, _, _ = _walk(root, config)
    return kept


def _dataset_root(config: ScanConfig, base_dir: str | Path) -> Path:
    p = Path(config.dataset_path)
    root = p if p.is_absolute() else Path(base_dir) / p
    if not root.is_dir():
        raise DatasetPathMissing(f"dataset path not found or not a directory: {root}")
    return root


def _walk(root: Path, config: ScanConfig) -> tuple[list[str], list[str], dict[str, int]]:
    """Return (kept, excluded, extension_counts) over all files seen."""
    kept: list[str] = []
    excluded: list[str] = []
    extension_counts: dict[str, int] = {}
    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        dirnames.sort()
        for name in sorted(filenames):
            full = Path(dirpath) / name
            if full.is_symlink():
                continue
            rel = full.relative_to(root).as_posix()
            ext = full.suffix
            extension_counts[ext] = extension_counts.get(ext, 0) + 1
            if matches_any(config.include, rel) and not matches_any(config.exclude, rel):
                kept.append(rel)
            else:
                excluded.append(rel)
    kept.sort()
    excluded.sort()
    return kept, excluded, extension_counts


def filter_accessibility(root: Path, paths: list[str], size_limit_mb: float | None) -> AccessibilityResult:
    """Classify unreadable and over-limit files; failures never raise."""
    result = AccessibilityResult()
    limit_bytes = None if size_limit_mb is None else size_limit_mb * 1024 * 1024
    for rel in paths:
        full = root / rel
        try:
            size = full.stat().st_size
        except OSError:
            result.unreadable.append(rel)
            continue
        if limit_bytes is not None and size > limit_bytes:
            result.too_large.append(rel)
            continue
        try:
            with open(full, "rb") as fh:
                fh.read(1)
        except OSError:
            result.unreadable.append(rel)
            continue
        result.kept.append(rel)
    return result


def dedup_by_hash(root: Path, paths: list[str]) -> DedupResult:
    """Group files by content hash; keep the lexicographically smallest path per group."""
    result = DedupResult()
    by_hash: dict[str, list[str]] = {}
    for rel in paths:
        try:
            content = (root / rel).read_bytes()
        except OSError:
            result.unreadable.append(rel)
            continue
        by_hash.setdefault(compute_model_id(content), []).append(rel)
    for digest in sorted(by_hash, key=lambda h: min(by_hash[h])):
        group = sorted(by_hash[digest])
        result.candidates.append(group[0])
        if len(group) > 1:
            result.duplicate_groups.append({"hash": digest, "paths": group, "representative": group[0]})
    result.candidates.sort()
    return result


def run_scan(profile: BenchmarkProfile, output_path: Path | None = None) -> dict:
    """Execute the scan stage and persist dataset_info.json."""
    config = profile.scan
    root = _dataset_root(config, profile.base_dir)
    kept, excluded, extension_counts = _walk(root, config)
    access = filter_accessibility(root, kept, config.size_limit_mb)
    dedup = dedup_by_hash(root, access.kept)
    unreadable = sorted(access.unreadable + dedup.unreadable)
    duplicate_files = sum(len(g["paths"]) - 1 for g in dedup.duplicate_groups)
    files_seen = len(kept) + len(excluded)

    info = {
        "dataset_root": str(root.resolve()),
        "scan_params": config.to_json_dict(),
        "totals": {
            "files_seen": files_seen,
            "candidates": len(dedup.candidates),
            "unreadable": len(unreadable),
            "too_large": len(access.too_large),
            "excluded": len(excluded),
            "duplicate_files": duplicate_files,
            "duplicate_groups": len(dedup.duplicate_groups),
        },
        "extension_counts": extension_counts,
        "candidates": dedup.candidates,
        "duplicate_groups": dedup.duplicate_groups,
    }

    out = output_path if output_path is not None else profile.resolved_output_path()
    write_artifact(info, Path(out) / DATASET_INFO)
    return info
