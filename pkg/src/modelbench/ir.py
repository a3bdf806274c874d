"""Typed-graph intermediate representation shared by all language parsers.

All types are immutable after construction; codec helpers are pure, so
instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Scalar = str | int | float | bool

SUCCESS = "success"
PARTIAL = "partial"
FAILURE = "failure"
PARSE_STATUSES = (SUCCESS, PARTIAL, FAILURE)

UNRESOLVED_REFERENCE = "UNRESOLVED_REFERENCE"
DUPLICATE_ID = "DUPLICATE_ID"
MISSING_EDGE_ENDPOINT = "MISSING_EDGE_ENDPOINT"
COMPATIBILITY_ADAPTATION = "COMPATIBILITY_ADAPTATION"
UNSUPPORTED_GENERIC_REFERENCE = "UNSUPPORTED_GENERIC_REFERENCE"
DIAGNOSTIC_TYPES = (
    UNRESOLVED_REFERENCE,
    DUPLICATE_ID,
    MISSING_EDGE_ENDPOINT,
    COMPATIBILITY_ADAPTATION,
    UNSUPPORTED_GENERIC_REFERENCE,
)


@dataclass(frozen=True)
class Diagnostic:
    """A parser warning; ``led_to_skip`` means the element is absent from the IR."""

    type: str
    message: str
    element_id: str | None = None
    led_to_skip: bool = False

    def to_json_dict(self) -> dict:
        return {
            "type": self.type,
            "message": self.message,
            "element_id": self.element_id,
            "led_to_skip": self.led_to_skip,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Diagnostic":
        return cls(
            type=data["type"],
            message=data["message"],
            element_id=data.get("element_id"),
            led_to_skip=bool(data.get("led_to_skip", False)),
        )


@dataclass(frozen=True)
class IRNode:
    id: str
    type: str
    name: str | None = None
    data: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"id": self.id, "type": self.type, "name": self.name, "data": dict(self.data)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "IRNode":
        return cls(id=data["id"], type=data["type"], name=data.get("name"), data=dict(data.get("data", {})))


@dataclass(frozen=True)
class IREdge:
    id: str
    type: str
    source: str
    target: str
    name: str | None = None
    is_containment: bool = False
    data: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "type": self.type,
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "is_containment": self.is_containment,
            "data": dict(self.data),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "IREdge":
        return cls(
            id=data["id"],
            type=data["type"],
            source=data["source"],
            target=data["target"],
            name=data.get("name"),
            is_containment=bool(data.get("is_containment", False)),
            data=dict(data.get("data", {})),
        )


@dataclass(frozen=True)
class IRGraph:
    id: str
    source_path: str
    language: str
    attributes: dict = field(default_factory=dict)
    nodes: tuple[IRNode, ...] = ()
    edges: tuple[IREdge, ...] = ()

    def validate(self) -> None:
        node_ids = [n.id for n in self.nodes]
        if len(node_ids) != len(set(node_ids)):
            raise ValueError(f"{self.source_path}: duplicate node ids in IR")
        edge_ids = [e.id for e in self.edges]
        if len(edge_ids) != len(set(edge_ids)):
            raise ValueError(f"{self.source_path}: duplicate edge ids in IR")
        known = set(node_ids)
        for edge in self.edges:
            if edge.source not in known or edge.target not in known:
                raise ValueError(f"{self.source_path}: edge {edge.id} references a missing node")
        for node in self.nodes:
            if not node.type:
                raise ValueError(f"{self.source_path}: node {node.id} has an empty type")

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "source_path": self.source_path,
            "language": self.language,
            "attributes": dict(self.attributes),
            "nodes": [n.to_json_dict() for n in self.nodes],
            "edges": [e.to_json_dict() for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "IRGraph":
        return cls(
            id=data["id"],
            source_path=data["source_path"],
            language=data["language"],
            attributes=dict(data.get("attributes", {})),
            nodes=tuple(IRNode.from_json_dict(n) for n in data.get("nodes", [])),
            edges=tuple(IREdge.from_json_dict(e) for e in data.get("edges", [])),
        )


@dataclass(frozen=True)
class ParseRecord:
    """Per-model parse outcome; the evidence unit behind dimension D1."""

    model_id: str
    source_path: str
    status: str
    warnings: tuple[Diagnostic, ...] = ()
    n_loaded: int = 0
    n_skipped: int = 0
    parse_time_ms: float = 0.0
    source_bytes: int = 0
    ir_bytes: int | None = None
    error_msg: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "source_path": self.source_path,
            "status": self.status,
            "warnings": [w.to_json_dict() for w in self.warnings],
            "n_loaded": self.n_loaded,
            "n_skipped": self.n_skipped,
            "parse_time_ms": self.parse_time_ms,
            "source_bytes": self.source_bytes,
            "ir_bytes": self.ir_bytes,
            "error_msg": self.error_msg,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ParseRecord":
        return cls(
            model_id=data["model_id"],
            source_path=data["source_path"],
            status=data["status"],
            warnings=tuple(Diagnostic.from_json_dict(w) for w in data.get("warnings", [])),
            n_loaded=int(data.get("n_loaded", 0)),
            n_skipped=int(data.get("n_skipped", 0)),
            parse_time_ms=float(data.get("parse_time_ms", 0.0)),
            source_bytes=int(data.get("source_bytes", 0)),
            ir_bytes=data.get("ir_bytes"),
            error_msg=data.get("error_msg"),
        )
