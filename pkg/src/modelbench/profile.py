"""Benchmark profile: the single configuration artifact of a run.

The schema is strict: unknown keys are rejected at every level except the
extensible ``report`` map, so a profile fully determines a run and silent
typos in measure toggles cannot skew results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .errors import DecodeError, SchemaViolation
from .globs import compile_pattern


@dataclass(frozen=True)
class TokenizerConfig:
    split_camel_case: bool = True
    split_punctuation: bool = True
    trim_whitespace: bool = True
    keep_numbers: bool = True
    lowercase: bool = True

    def to_json_dict(self) -> dict:
        return {
            "split_camel_case": self.split_camel_case,
            "split_punctuation": self.split_punctuation,
            "trim_whitespace": self.trim_whitespace,
            "keep_numbers": self.keep_numbers,
            "lowercase": self.lowercase,
        }


@dataclass(frozen=True)
class ScanConfig:
    dataset_path: str
    include: tuple[str, ...]
    exclude: tuple[str, ...] = ()
    size_limit_mb: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "dataset_path": self.dataset_path,
            "include": list(self.include),
            "exclude": list(self.exclude),
            "size_limit_mb": self.size_limit_mb,
        }


@dataclass(frozen=True)
class ParseConfig:
    parser_language: str
    normalize_types: bool = False
    timeout_s: float = 30.0

    def to_json_dict(self) -> dict:
        return {
            "parser_language": self.parser_language,
            "normalize_types": self.normalize_types,
            "timeout_s": self.timeout_s,
        }


@dataclass(frozen=True)
class ParseMeasureGroup:
    enabled: bool = True
    enable_d1_m1: bool = True
    enable_d1_m2: bool = True
    enable_d1_m3: bool = True
    enable_d1_m4: bool = True
    enable_d1_m5: bool = True

    def to_json_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "enable_d1_m1": self.enable_d1_m1,
            "enable_d1_m2": self.enable_d1_m2,
            "enable_d1_m3": self.enable_d1_m3,
            "enable_d1_m4": self.enable_d1_m4,
            "enable_d1_m5": self.enable_d1_m5,
        }


@dataclass(frozen=True)
class LexicalMeasureGroup:
    enabled: bool = True
    include_nodes: bool = True
    include_edges: bool = False
    label_attributes: tuple[str, ...] = ("name",)
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    enable_d2_m1: bool = True
    enable_d2_m2: bool = True
    enable_d2_m3: bool = True
    enable_d2_m4: bool = True
    enable_d2_m5: bool = True

    def to_json_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "include_nodes": self.include_nodes,
            "include_edges": self.include_edges,
            "label_attributes": list(self.label_attributes),
            "tokenizer": self.tokenizer.to_json_dict(),
            "enable_d2_m1": self.enable_d2_m1,
            "enable_d2_m2": self.enable_d2_m2,
            "enable_d2_m3": self.enable_d2_m3,
            "enable_d2_m4": self.enable_d2_m4,
            "enable_d2_m5": self.enable_d2_m5,
        }


@dataclass(frozen=True)
class ConstructMeasureGroup:
    enabled: bool = True
    catalog_path: str | None = None
    enable_d3_m1: bool = True
    enable_d3_m2: bool = True

    def to_json_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "catalog_path": self.catalog_path,
            "enable_d3_m1": self.enable_d3_m1,
            "enable_d3_m2": self.enable_d3_m2,
        }


@dataclass(frozen=True)
class SizeMeasureGroup:
    enabled: bool = True
    enable_d4_m1: bool = True
    enable_d4_m2: bool = True
    enable_d4_m3: bool = True
    enable_d4_m4: bool = True

    def to_json_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "enable_d4_m1": self.enable_d4_m1,
            "enable_d4_m2": self.enable_d4_m2,
            "enable_d4_m3": self.enable_d4_m3,
            "enable_d4_m4": self.enable_d4_m4,
        }


@dataclass(frozen=True)
class MeasureConfig:
    parse: ParseMeasureGroup = field(default_factory=ParseMeasureGroup)
    lexical: LexicalMeasureGroup = field(default_factory=LexicalMeasureGroup)
    constructs: ConstructMeasureGroup = field(default_factory=ConstructMeasureGroup)
    size: SizeMeasureGroup = field(default_factory=SizeMeasureGroup)

    def to_json_dict(self) -> dict:
        return {
            "parse": self.parse.to_json_dict(),
            "lexical": self.lexical.to_json_dict(),
            "constructs": self.constructs.to_json_dict(),
            "size": self.size.to_json_dict(),
        }


@dataclass(frozen=True)
class BenchmarkProfile:
    name: str
    output_path: str
    scan: ScanConfig
    parse: ParseConfig
    version: str = "1.0"
    measure: MeasureConfig = field(default_factory=MeasureConfig)
    report: dict = field(default_factory=dict)
    # Directory relative paths resolve against (the profile file's parent);
    # not part of profile identity and never serialized.
    base_dir: str = field(default=".", compare=False)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "version": self.version,
            "output_path": self.output_path,
            "scan": self.scan.to_json_dict(),
            "parse": self.parse.to_json_dict(),
            "measure": self.measure.to_json_dict(),
            "report": dict(self.report),
        }

    def resolve(self, path_value: str) -> Path:
        """Resolve a configured path against the profile's directory."""
        p = Path(path_value)
        return p if p.is_absolute() else Path(self.base_dir) / p

    def resolved_output_path(self) -> Path:
        return self.resolve(self.output_path)

    def with_output_path(self, output_path: str) -> "BenchmarkProfile":
        return replace(self, output_path=output_path)


# --- strict schema validation -------------------------------------------------

_BOOL_KEYS_TOKENIZER = (
    "split_camel_case",
    "split_punctuation",
    "trim_whitespace",
    "keep_numbers",
    "lowercase",
)


def _fail(path: str, message: str) -> None:
    raise SchemaViolation(path, message)


def _check_keys(obj: dict, allowed: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            _fail(f"{path}.{key}" if path else key, "unknown key")


def _get_bool(obj: dict, key: str, default: bool, path: str) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        _fail(f"{path}.{key}", "expected a boolean")
    return value


def _get_str(obj: dict, key: str, path: str, *, required: bool, default: str | None = None) -> str | None:
    if key not in obj:
        if required:
            _fail(f"{path}.{key}" if path else key, "required key is missing")
        return default
    value = obj[key]
    if not isinstance(value, str):
        _fail(f"{path}.{key}" if path else key, "expected a string")
    return value


def _parse_tokenizer(obj: Any, path: str) -> TokenizerConfig:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    _check_keys(obj, set(_BOOL_KEYS_TOKENIZER), path)
    return TokenizerConfig(**{k: _get_bool(obj, k, True, path) for k in _BOOL_KEYS_TOKENIZER})


def _parse_scan(obj: Any, path: str) -> ScanConfig:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    _check_keys(obj, {"dataset_path", "include", "exclude", "size_limit_mb"}, path)
    dataset_path = _get_str(obj, "dataset_path", path, required=True)
    if not dataset_path:
        _fail(f"{path}.dataset_path", "must be non-empty")

    def _patterns(key: str, required: bool) -> tuple[str, ...]:
        if key not in obj:
            if required:
                _fail(f"{path}.{key}", "required key is missing")
            return ()
        value = obj[key]
        if not isinstance(value, list) or not all(isinstance(p, str) for p in value):
            _fail(f"{path}.{key}", "expected a list of glob strings")
        for p in value:
            compile_pattern(p)  # InvalidGlob on malformed patterns
        return tuple(value)

    include = _patterns("include", required=True)
    if not include:
        _fail(f"{path}.include", "at least one include pattern is required")
    exclude = _patterns("exclude", required=False)

    size_limit = obj.get("size_limit_mb")
    if size_limit is not None:
        if isinstance(size_limit, bool) or not isinstance(size_limit, (int, float)) or size_limit <= 0:
            _fail(f"{path}.size_limit_mb", "expected a positive number")
    return ScanConfig(dataset_path=dataset_path, include=include, exclude=exclude, size_limit_mb=size_limit)


def _parse_parse(obj: Any, path: str) -> ParseConfig:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    _check_keys(obj, {"parser_language", "normalize_types", "timeout_s"}, path)
    parser_language = _get_str(obj, "parser_language", path, required=True)
    if not parser_language:
        _fail(f"{path}.parser_language", "must be non-empty")
    timeout_s = obj.get("timeout_s", 30.0)
    if isinstance(timeout_s, bool) or not isinstance(timeout_s, (int, float)) or timeout_s <= 0:
        _fail(f"{path}.timeout_s", "expected a positive number")
    return ParseConfig(
        parser_language=parser_language,
        normalize_types=_get_bool(obj, "normalize_types", False, path),
        timeout_s=float(timeout_s),
    )


def _parse_measure(obj: Any, path: str) -> MeasureConfig:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    _check_keys(obj, {"parse", "lexical", "constructs", "size"}, path)

    def group(key: str, allowed: set[str]) -> dict:
        sub = obj.get(key, {})
        if not isinstance(sub, dict):
            _fail(f"{path}.{key}", "expected an object")
        _check_keys(sub, allowed, f"{path}.{key}")
        return sub

    p = group("parse", {"enabled"} | {f"enable_d1_m{i}" for i in range(1, 6)})
    parse_group = ParseMeasureGroup(
        enabled=_get_bool(p, "enabled", True, f"{path}.parse"),
        **{
            f"enable_d1_m{i}": _get_bool(p, f"enable_d1_m{i}", True, f"{path}.parse")
            for i in range(1, 6)
        },
    )

    lx = group(
        "lexical",
        {"enabled", "include_nodes", "include_edges", "label_attributes", "tokenizer"}
        | {f"enable_d2_m{i}" for i in range(1, 6)},
    )
    label_attributes: tuple[str, ...] = ("name",)
    if "label_attributes" in lx:
        value = lx["label_attributes"]
        if not isinstance(value, list) or not value or not all(isinstance(a, str) and a for a in value):
            _fail(f"{path}.lexical.label_attributes", "expected a non-empty list of attribute names")
        label_attributes = tuple(value)
    tokenizer = TokenizerConfig()
    if "tokenizer" in lx:
        tokenizer = _parse_tokenizer(lx["tokenizer"], f"{path}.lexical.tokenizer")
    lexical_group = LexicalMeasureGroup(
        enabled=_get_bool(lx, "enabled", True, f"{path}.lexical"),
        include_nodes=_get_bool(lx, "include_nodes", True, f"{path}.lexical"),
        include_edges=_get_bool(lx, "include_edges", False, f"{path}.lexical"),
        label_attributes=label_attributes,
        tokenizer=tokenizer,
        **{
            f"enable_d2_m{i}": _get_bool(lx, f"enable_d2_m{i}", True, f"{path}.lexical")
            for i in range(1, 6)
        },
    )

    c = group("constructs", {"enabled", "catalog_path", "enable_d3_m1", "enable_d3_m2"})
    catalog_path = c.get("catalog_path")
    if catalog_path is not None and (not isinstance(catalog_path, str) or not catalog_path):
        _fail(f"{path}.constructs.catalog_path", "expected a non-empty path string")
    construct_group = ConstructMeasureGroup(
        enabled=_get_bool(c, "enabled", True, f"{path}.constructs"),
        catalog_path=catalog_path,
        enable_d3_m1=_get_bool(c, "enable_d3_m1", True, f"{path}.constructs"),
        enable_d3_m2=_get_bool(c, "enable_d3_m2", True, f"{path}.constructs"),
    )

    s = group("size", {"enabled"} | {f"enable_d4_m{i}" for i in range(1, 5)})
    size_group = SizeMeasureGroup(
        enabled=_get_bool(s, "enabled", True, f"{path}.size"),
        **{
            f"enable_d4_m{i}": _get_bool(s, f"enable_d4_m{i}", True, f"{path}.size")
            for i in range(1, 5)
        },
    )

    return MeasureConfig(parse=parse_group, lexical=lexical_group, constructs=construct_group, size=size_group)


def validate_profile_dict(data: Any, base_dir: str | Path = ".") -> BenchmarkProfile:
    """Validate a decoded profile document and apply documented defaults."""
    if not isinstance(data, dict):
        _fail("", "profile must be a JSON object")
    _check_keys(data, {"name", "version", "output_path", "scan", "parse", "measure", "report"}, "")

    name = _get_str(data, "name", "", required=True)
    if not name:
        _fail("name", "must be non-empty")
    version = _get_str(data, "version", "", required=False, default="1.0")
    output_path = _get_str(data, "output_path", "", required=True)
    if not output_path:
        _fail("output_path", "must be non-empty")

    if "scan" not in data:
        _fail("scan", "required key is missing")
    if "parse" not in data:
        _fail("parse", "required key is missing")

    report = data.get("report", {})
    if not isinstance(report, dict):
        _fail("report", "expected an object")

    return BenchmarkProfile(
        name=name,
        version=version,
        output_path=output_path,
        scan=_parse_scan(data["scan"], "scan"),
        parse=_parse_parse(data["parse"], "parse"),
        measure=_parse_measure(data.get("measure", {}), "measure"),
        report=dict(report),
        base_dir=str(base_dir),
    )


def load_profile(path: str | Path) -> BenchmarkProfile:
    """Load and validate a benchmark profile file."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"profile not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DecodeError(str(path), exc.msg, line=exc.lineno, column=exc.colno) from exc
    return validate_profile_dict(data, base_dir=path.parent)


def write_profile(profile: BenchmarkProfile, path: str | Path) -> None:
    from .artifacts import write_artifact

    write_artifact(profile.to_json_dict(), path)
