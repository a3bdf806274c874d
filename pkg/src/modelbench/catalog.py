"""Construct catalogs: language-specific lists of matchable constructs.

A catalog maps IR node/edge types (optionally refined by data equality
predicates) to logical language constructs, driving the construct-coverage
dimension.  Catalogs ship as JSON resources with the exact shape
``{"language": ..., "constructs": [{id, kind, match_type,
match_data_equals, meta}, ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import DecodeError, MissingCatalog, SchemaViolation
from .ir import IREdge, IRNode

NODE_TYPE = "node_type"
EDGE_TYPE = "edge_type"

# Built-in catalog resources keyed by parser language.
BUILTIN_CATALOGS = {
    "ArchiMate": "archimate.json",
    "Ecore": "ecore.json",
}


@dataclass(frozen=True)
class ConstructDef:
    id: str
    kind: str  # node_type | edge_type
    match_type: str
    match_data_equals: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def group(self) -> str:
        return self.meta.get("group", "")

    def matches(self, element: IRNode | IREdge) -> bool:
        kind = NODE_TYPE if isinstance(element, IRNode) else EDGE_TYPE
        if kind != self.kind or element.type != self.match_type:
            return False
        return all(element.data.get(k) == v for k, v in self.match_data_equals.items())

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "match_type": self.match_type,
            "match_data_equals": dict(self.match_data_equals),
            "meta": dict(self.meta),
        }


@dataclass(frozen=True)
class ConstructCatalog:
    language: str
    constructs: tuple[ConstructDef, ...]

    def __post_init__(self) -> None:
        ids = [c.id for c in self.constructs]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate construct ids in {self.language} catalog")

    @property
    def size(self) -> int:
        return len(self.constructs)

    def node_constructs(self) -> tuple[ConstructDef, ...]:
        return tuple(c for c in self.constructs if c.kind == NODE_TYPE)

    def edge_constructs(self) -> tuple[ConstructDef, ...]:
        return tuple(c for c in self.constructs if c.kind == EDGE_TYPE)

    def match_element(self, element: IRNode | IREdge) -> list[ConstructDef]:
        """All constructs an element matches (refinements may overlap)."""
        return [c for c in self.constructs if c.matches(element)]

    def to_json_dict(self) -> dict:
        return {"language": self.language, "constructs": [c.to_json_dict() for c in self.constructs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConstructCatalog":
        if not isinstance(data, dict):
            raise SchemaViolation("", "catalog must be a JSON object")
        for key in ("language", "constructs"):
            if key not in data:
                raise SchemaViolation(key, "required key is missing")
        constructs = []
        for i, raw in enumerate(data["constructs"]):
            for key in ("id", "kind", "match_type"):
                if key not in raw:
                    raise SchemaViolation(f"constructs[{i}].{key}", "required key is missing")
            if raw["kind"] not in (NODE_TYPE, EDGE_TYPE):
                raise SchemaViolation(f"constructs[{i}].kind", "expected node_type or edge_type")
            meta = raw.get("meta", {})
            if "group" not in meta:
                raise SchemaViolation(f"constructs[{i}].meta.group", "required key is missing")
            constructs.append(
                ConstructDef(
                    id=raw["id"],
                    kind=raw["kind"],
                    match_type=raw["match_type"],
                    match_data_equals=dict(raw.get("match_data_equals", {})),
                    meta=dict(meta),
                )
            )
        return cls(language=data["language"], constructs=tuple(constructs))


def load_catalog_file(path: str | Path) -> ConstructCatalog:
    path = Path(path)
    if not path.is_file():
        raise MissingCatalog(f"construct catalog not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DecodeError(str(path), exc.msg, line=exc.lineno, column=exc.colno) from exc
    return ConstructCatalog.from_json_dict(data)


def load_builtin_catalog(language: str) -> ConstructCatalog:
    """Load the catalog resource shipped for a parser language."""
    resource = BUILTIN_CATALOGS.get(language)
    if resource is None:
        raise MissingCatalog(f"no built-in construct catalog for language {language!r}")
    text = resources.files("modelbench.resources.catalogs").joinpath(resource).read_text(encoding="utf-8")
    return ConstructCatalog.from_json_dict(json.loads(text))
