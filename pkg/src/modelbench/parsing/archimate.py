"""Parser for ArchiMate models in the Archi tool XML storage format (*.archimate).

The file is read in a single pass: non-relationship, non-diagram elements
become IR nodes, relationship elements become IR edges, diagram/view
content (layout, coordinates, styling) is omitted.  Composition and
Aggregation are the only containment relationships.

Endpoint handling mirrors real-world Archi exports:
  - a relationship whose endpoint is another relationship is retained with
    its original endpoints (UNRESOLVED_REFERENCE warning); the referenced
    relationship is additionally materialized as a proxy node so the IR
    stays endpoint-valid;
  - an endpoint with no match at all drops the edge (MISSING_EDGE_ENDPOINT);
  - duplicate xml ids keep the first occurrence (DUPLICATE_ID).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from dataclasses import dataclass, field

from ..artifacts import compute_model_id
from ..ir import (
    COMPATIBILITY_ADAPTATION,
    DUPLICATE_ID,
    MISSING_EDGE_ENDPOINT,
    UNRESOLVED_REFERENCE,
    Diagnostic,
    IREdge,
    IRGraph,
    IRNode,
)
from .base import ParseFailure, ParseProduct, local_name, strip_prefix

LANGUAGE = "ArchiMate"

_XSI_TYPE = "{http://www.w3.org/2001/XMLSchema-instance}type"

CONTAINMENT_EDGE_TYPES = ("Composition", "Aggregation")

# Element types that carry diagram/view content only.
_DIAGRAM_TYPES = {"ArchimateDiagramModel", "SketchModel", "CanvasModel"}

# Legacy / tool spellings mapped to canonical ArchiMate 3.x names.  Off by
# default: variants are preserved to surface standardization issues, the
# profile flag parse.normalize_types opts in.
_NORMALIZATION = {
    "Realisation": "Realization",
    "Specialisation": "Specialization",
    "UsedBy": "Serving",
}

_STRUCTURAL_ATTRS = {"id", "name", "source", "target", _XSI_TYPE}


@dataclass(frozen=True)
class ArchiElementRef:
    """One <element> as collected from the XML, before IR classification."""

    xml_id: str
    xsi_type: str  # namespace prefix already stripped
    name: str | None
    folder_kind: str

    @property
    def is_relationship(self) -> bool:
        return self.xsi_type.endswith("Relationship")

    @property
    def is_diagram(self) -> bool:
        return self.folder_kind == "diagrams" or self.xsi_type in _DIAGRAM_TYPES


@dataclass
class _Relationship:
    ref: ArchiElementRef
    type: str
    source: str | None
    target: str | None
    data: dict = field(default_factory=dict)


def _normalize(type_name: str, enabled: bool) -> str:
    if not enabled:
        return type_name
    if type_name in _NORMALIZATION:
        return _NORMALIZATION[type_name]
    if type_name.startswith("Infrastructure"):
        return "Technology" + type_name[len("Infrastructure"):]
    return type_name


def _element_data(el: ET.Element, xsi_type: str) -> dict:
    data: dict = {}
    for child in el:
        if local_name(child.tag) == "documentation":
            text = (child.text or "").strip()
            if text:
                data["documentation"] = text
    if xsi_type == "Junction":
        data["junction_kind"] = el.get("type") or "and"
    for key, value in el.attrib.items():
        if key in _STRUCTURAL_ATTRS or (xsi_type == "Junction" and key == "type"):
            continue
        if "}" not in key:
            data[key] = value
    return data


def parse_archimate(content: bytes, source_path: str, *, normalize_types: bool = False) -> ParseProduct:
    try:
        root = ET.fromstring(content)
    except ET.ParseError as exc:
        raise ParseFailure(f"XML syntax error: {exc}") from exc

    ns = root.tag[1:].split("}", 1)[0] if root.tag.startswith("{") else ""
    if local_name(root.tag) != "model" or "archimate" not in ns.lower():
        raise ParseFailure(f"unsupported root element {root.tag!r}; expected an Archi model")

    diagnostics: list[Diagnostic] = []
    nodes: list[IRNode] = []
    node_index: dict[str, IRNode] = {}
    relationships: list[_Relationship] = []
    rel_index: dict[str, _Relationship] = {}
    seen_ids: set[str] = set()
    anon_counter = 0

    def collect(el: ET.Element, folder_kind: str) -> None:
        for child in el:
            tag = local_name(child.tag)
            if tag == "folder":
                collect(child, child.get("type") or folder_kind)
            elif tag == "element":
                handle_element(child, folder_kind)

    def element_ref(el: ET.Element, folder_kind: str) -> ArchiElementRef | None:
        nonlocal anon_counter
        raw_type = el.get(_XSI_TYPE)
        if not raw_type:
            diagnostics.append(
                Diagnostic(
                    COMPATIBILITY_ADAPTATION,
                    "element without xsi:type skipped",
                    element_id=el.get("id"),
                    led_to_skip=True,
                )
            )
            return None
        xml_id = el.get("id")
        if xml_id is None:
            xml_id = f"__anon_{anon_counter}"
            anon_counter += 1
        return ArchiElementRef(
            xml_id=xml_id,
            xsi_type=strip_prefix(raw_type),
            name=el.get("name"),
            folder_kind=folder_kind,
        )

    def handle_element(el: ET.Element, folder_kind: str) -> None:
        ref = element_ref(el, folder_kind)
        if ref is None or ref.is_diagram:
            return  # diagram content is omitted from the IR, not a warning
        if ref.xml_id in seen_ids:
            diagnostics.append(
                Diagnostic(
                    DUPLICATE_ID,
                    f"duplicate id {ref.xml_id!r}; first occurrence wins",
                    element_id=ref.xml_id,
                    led_to_skip=True,
                )
            )
            return
        seen_ids.add(ref.xml_id)
        if ref.is_relationship:
            rel = _Relationship(
                ref=ref,
                type=_normalize(ref.xsi_type[: -len("Relationship")], normalize_types),
                source=el.get("source"),
                target=el.get("target"),
                data=_element_data(el, ref.xsi_type),
            )
            relationships.append(rel)
            rel_index[ref.xml_id] = rel
        else:
            node = IRNode(
                id=ref.xml_id,
                type=_normalize(ref.xsi_type, normalize_types),
                name=ref.name,
                data=_element_data(el, ref.xsi_type),
            )
            nodes.append(node)
            node_index[ref.xml_id] = node

    collect(root, "")

    # resolve relationship endpoints; proxy-materialize relationships that
    # are themselves used as endpoints
    proxied: set[str] = set()
    edges: list[IREdge] = []

    def materialize_proxy(rel_id: str) -> None:
        if rel_id in proxied:
            return
        rel = rel_index[rel_id]
        nodes.append(IRNode(id=rel_id, type=rel.type, name=rel.ref.name, data={"proxy_for_edge": rel_id}))
        proxied.add(rel_id)

    for rel in relationships:
        rel_id = rel.ref.xml_id
        endpoints = (rel.source, rel.target)
        missing = [ep for ep in endpoints if ep is None or (ep not in node_index and ep not in rel_index)]
        if missing:
            diagnostics.append(
                Diagnostic(
                    MISSING_EDGE_ENDPOINT,
                    f"relationship {rel_id!r} references missing endpoint {missing[0]!r}; edge skipped",
                    element_id=rel_id,
                    led_to_skip=True,
                )
            )
            continue
        for ep in endpoints:
            if ep in rel_index and ep not in node_index:
                diagnostics.append(
                    Diagnostic(
                        UNRESOLVED_REFERENCE,
                        f"relationship {rel_id!r} uses relationship {ep!r} as endpoint; retained",
                        element_id=rel_id,
                        led_to_skip=False,
                    )
                )
                materialize_proxy(ep)
        edges.append(
            IREdge(
                id=rel_id,
                type=rel.type,
                name=rel.ref.name,
                source=rel.source,
                target=rel.target,
                is_containment=rel.type in CONTAINMENT_EDGE_TYPES,
                data=rel.data,
            )
        )

    attributes: dict = {}
    for key in ("name", "id", "version"):
        value = root.get(key)
        if value:
            attributes[key] = value
    for child in root:
        if local_name(child.tag) == "purpose":
            text = (child.text or "").strip()
            if text:
                attributes["purpose"] = text

    graph = IRGraph(
        id=compute_model_id(content),
        source_path=source_path,
        language=LANGUAGE,
        attributes=attributes,
        nodes=tuple(nodes),
        edges=tuple(edges),
    )
    graph.validate()
    return ParseProduct(graph=graph, diagnostics=tuple(diagnostics))
