"""Parser for Ecore metamodels (*.ecore XMI).

The XMI is parsed directly in one pass.  Packages, classifiers, features,
operations, parameters, enum literals, and annotations become IR nodes;
implicit structure is materialized as explicit edges:

  Contains_Package / Contains_Classifier / Contains_Feature /
  Contains_Operation / Contains_Parameter / Contains_Literal /
  Contains_Annotation   structural containment (is_containment=true)
  Containment           EReference with containment="true" (is_containment=true)
  Reference             non-containment EReference
  Generalization        eSuperTypes links
  Typed                 feature/parameter/return typing (data.role)
  Throws                EOperation eExceptions

Node ids are EMF-style URI fragments ("//Book/title"); references into the
Ecore standard library (EString and friends) materialize one builtin node
per distinct type.  Cardinality and collection modifiers are copied into
data with Ecore defaults applied, plus the derived flags ``required``
(lowerBound >= 1) and ``many`` (upperBound == -1 or > 1) that construct
catalogs match on.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..artifacts import compute_model_id
from ..ir import (
    COMPATIBILITY_ADAPTATION,
    DUPLICATE_ID,
    MISSING_EDGE_ENDPOINT,
    UNRESOLVED_REFERENCE,
    UNSUPPORTED_GENERIC_REFERENCE,
    Diagnostic,
    IREdge,
    IRGraph,
    IRNode,
)
from .base import ParseFailure, ParseProduct, local_name, strip_prefix

LANGUAGE = "Ecore"

_ECORE_NS = "http://www.eclipse.org/emf/2002/Ecore"
_XSI_TYPE = "{http://www.w3.org/2001/XMLSchema-instance}type"
_XMI_ID = "{http://www.omg.org/XMI}id"

# Ecore stdlib classifiers that resolve to builtin nodes instead of warnings.
_BUILTIN_ECLASSES = {"EObject", "EClass", "EClassifier", "EStructuralFeature", "EPackage", "EModelElement"}

CONTAINS_EDGE_TYPES = (
    "Contains_Package",
    "Contains_Classifier",
    "Contains_Feature",
    "Contains_Operation",
    "Contains_Parameter",
    "Contains_Literal",
    "Contains_Annotation",
)


def _bool_attr(el: ET.Element, name: str, default: bool) -> bool:
    value = el.get(name)
    if value is None:
        return default
    return value == "true"


def _int_attr(el: ET.Element, name: str, default: int) -> int:
    value = el.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _modifier_data(el: ET.Element) -> dict:
    """Cardinality/collection modifiers with Ecore defaults materialized."""
    lower = _int_attr(el, "lowerBound", 0)
    upper = _int_attr(el, "upperBound", 1)
    return {
        "lowerBound": lower,
        "upperBound": upper,
        "ordered": _bool_attr(el, "ordered", True),
        "unique": _bool_attr(el, "unique", True),
        "required": lower >= 1,
        "many": upper == -1 or upper > 1,
    }


def _has_type_arguments(el: ET.Element) -> bool:
    return any(local_name(child.tag) in ("eTypeArguments", "eBounds") for child in el)


class _PendingEdge:
    __slots__ = ("etype", "source_id", "ref", "role", "edge_id", "edge_name", "data", "containment")

    def __init__(self, etype: str, source_id: str, ref: str, role: str | None,
                 edge_id: str | None, edge_name: str | None, data: dict, containment: bool):
        self.etype = etype
        self.source_id = source_id
        self.ref = ref
        self.role = role
        self.edge_id = edge_id
        self.edge_name = edge_name
        self.data = data
        self.containment = containment


class _Builder:
    def __init__(self, content: bytes, source_path: str):
        self.content = content
        self.source_path = source_path
        self.nodes: list[IRNode] = []
        self.edges: list[IREdge] = []
        self.diagnostics: list[Diagnostic] = []
        self.fragments: dict[str, str] = {}  # fragment or xmi:id -> node id
        self.node_ids: set[str] = set()
        self.edge_ids: set[str] = set()
        self.builtins: dict[str, str] = {}  # builtin name -> node id
        self.attributes: dict = {}
        self.annotation_counts: dict[str, int] = {}
        # deferred cross-element links resolved after all nodes exist
        self.pending_refs: list[_PendingEdge] = []

    def warn(self, dtype: str, message: str, element_id: str | None, skipped: bool) -> None:
        self.diagnostics.append(Diagnostic(dtype, message, element_id=element_id, led_to_skip=skipped))

    def add_node(self, node_id: str, node_type: str, name: str | None, data: dict) -> bool:
        if node_id in self.node_ids:
            self.warn(DUPLICATE_ID, f"duplicate id {node_id!r}; first occurrence wins", node_id, True)
            return False
        self.node_ids.add(node_id)
        self.nodes.append(IRNode(id=node_id, type=node_type, name=name, data=data))
        self.fragments.setdefault(node_id, node_id)
        return True

    def register_alias(self, alias: str, node_id: str) -> None:
        if alias in self.fragments and self.fragments[alias] != node_id:
            self.warn(DUPLICATE_ID, f"duplicate xmi:id {alias!r}", node_id, False)
            return
        self.fragments[alias] = node_id

    def add_edge(self, edge_id: str, etype: str, source: str, target: str,
                 name: str | None = None, data: dict | None = None, containment: bool = False) -> None:
        if edge_id in self.edge_ids:
            self.warn(DUPLICATE_ID, f"duplicate edge id {edge_id!r}; edge skipped", edge_id, True)
            return
        self.edge_ids.add(edge_id)
        self.edges.append(
            IREdge(
                id=edge_id,
                type=etype,
                name=name,
                source=source,
                target=target,
                is_containment=containment,
                data=data or {},
            )
        )

    # --- reference resolution ------------------------------------------------

    def builtin_node(self, name: str) -> str:
        node_id = self.builtins.get(name)
        if node_id is None:
            node_id = f"ecore:{name}"
            node_type = "EClass" if name in _BUILTIN_ECLASSES else "EDataType"
            self.add_node(node_id, node_type, name, {"builtin": True})
            self.builtins[name] = node_id
        return node_id

    def resolve_ref(self, ref: str) -> tuple[str, str | None]:
        """Classify a URI reference: ('local', node_id) | ('builtin', node_id) | ('external'|'dangling', None)."""
        ref = ref.strip()
        if ref.startswith("#"):
            fragment = ref[1:]
            node_id = self.fragments.get(fragment)
            return ("local", node_id) if node_id else ("dangling", None)
        if ref.startswith(_ECORE_NS + "#"):
            name = ref.rsplit("/", 1)[-1]
            return ("builtin", self.builtin_node(name))
        return ("external", None)

    def defer_edge(self, etype: str, source_id: str, ref: str, *, role: str | None = None,
                   edge_id: str | None = None, edge_name: str | None = None,
                   data: dict | None = None, containment: bool = False) -> None:
        self.pending_refs.append(_PendingEdge(etype, source_id, ref, role, edge_id, edge_name, data or {}, containment))

    def flush_pending(self) -> None:
        for p in self.pending_refs:
            kind, target = self.resolve_ref(p.ref)
            if kind == "external":
                self.warn(
                    UNRESOLVED_REFERENCE,
                    f"cross-file reference {p.ref!r} from {p.source_id!r} could not be resolved; edge skipped",
                    p.source_id,
                    True,
                )
                continue
            if kind == "dangling" or target is None:
                self.warn(
                    MISSING_EDGE_ENDPOINT,
                    f"dangling reference {p.ref!r} from {p.source_id!r}; edge skipped",
                    p.source_id,
                    True,
                )
                continue
            payload = dict(p.data)
            if p.role is not None:
                payload["role"] = p.role
            edge_id = p.edge_id if p.edge_id is not None else f"{p.source_id}~{p.etype}~{target}"
            self.add_edge(edge_id, p.etype, p.source_id, target,
                          name=p.edge_name, data=payload, containment=p.containment)


def _child_href(el: ET.Element, tag: str) -> list[str]:
    refs = []
    for child in el:
        if local_name(child.tag) == tag:
            href = child.get("href")
            if href:
                refs.append(href)
    return refs


def _etype_refs(el: ET.Element) -> list[str]:
    """References carried by an eType attribute or child element."""
    refs: list[str] = []
    attr = el.get("eType")
    if attr:
        tokens = attr.split()
        # "prefix:Metaclass URI" pairs keep only the URI
        refs.append(tokens[-1])
    refs.extend(_child_href(el, "eType"))
    return refs


def parse_ecore(content: bytes, source_path: str, *, normalize_types: bool = False) -> ParseProduct:
    del normalize_types  # ArchiMate-only flag; accepted for interface uniformity
    try:
        root = ET.fromstring(content)
    except ET.ParseError as exc:
        raise ParseFailure(f"XMI syntax error: {exc}") from exc

    tag = local_name(root.tag)
    packages: list[ET.Element]
    if tag == "EPackage":
        packages = [root]
    elif tag == "XMI":
        packages = [child for child in root if local_name(child.tag) == "EPackage"]
        if not packages:
            raise ParseFailure("no EPackage root found in XMI document")
    else:
        raise ParseFailure(f"unsupported root element {root.tag!r}; expected an Ecore EPackage")

    b = _Builder(content, source_path)
    for index, pkg in enumerate(packages):
        fragment = "/" if index == 0 else f"/{index}"
        _build_package(b, pkg, fragment, parent_id=None)

    b.flush_pending()

    first = packages[0]
    for key in ("name", "nsURI", "nsPrefix"):
        value = first.get(key)
        if value:
            b.attributes[key] = value

    graph = IRGraph(
        id=compute_model_id(content),
        source_path=source_path,
        language=LANGUAGE,
        attributes=b.attributes,
        nodes=tuple(b.nodes),
        edges=tuple(b.edges),
    )
    graph.validate()
    return ParseProduct(graph=graph, diagnostics=tuple(b.diagnostics))


def _child_fragment(parent_fragment: str, name: str) -> str:
    return f"//{name}" if parent_fragment == "/" else f"{parent_fragment}/{name}"


def _build_package(b: _Builder, pkg: ET.Element, fragment: str, parent_id: str | None) -> None:
    name = pkg.get("name")
    if not b.add_node(fragment, "EPackage", name, {}):
        return
    _register_xmi_id(b, pkg, fragment)
    if parent_id is not None:
        b.add_edge(f"{parent_id}~Contains_Package~{fragment}", "Contains_Package", parent_id, fragment, containment=True)

    for child in pkg:
        tag = local_name(child.tag)
        if tag == "eClassifiers":
            _build_classifier(b, child, fragment)
        elif tag == "eSubpackages":
            sub_fragment = _child_fragment(fragment, child.get("name") or "")
            _build_package(b, child, sub_fragment, parent_id=fragment)
        elif tag == "eAnnotations":
            _build_annotation(b, child, fragment)


def _register_xmi_id(b: _Builder, el: ET.Element, node_id: str) -> None:
    xmi_id = el.get(_XMI_ID)
    if xmi_id:
        b.register_alias(xmi_id, node_id)


def _build_classifier(b: _Builder, el: ET.Element, pkg_id: str) -> None:
    raw_type = el.get(_XSI_TYPE)
    if not raw_type:
        b.warn(COMPATIBILITY_ADAPTATION, "classifier without xsi:type skipped", el.get("name"), True)
        return
    kind = strip_prefix(raw_type)
    name = el.get("name") or ""
    fragment = _child_fragment(pkg_id, name)

    if kind == "EClass":
        data = {
            "abstract": _bool_attr(el, "abstract", False),
            "interface": _bool_attr(el, "interface", False),
        }
        if not b.add_node(fragment, "EClass", name, data):
            return
        _register_xmi_id(b, el, fragment)
        b.add_edge(f"{pkg_id}~Contains_Classifier~{fragment}", "Contains_Classifier", pkg_id, fragment, containment=True)
        _build_class_members(b, el, fragment)
    elif kind == "EEnum":
        if not b.add_node(fragment, "EEnum", name, {}):
            return
        _register_xmi_id(b, el, fragment)
        b.add_edge(f"{pkg_id}~Contains_Classifier~{fragment}", "Contains_Classifier", pkg_id, fragment, containment=True)
        for child in el:
            tag = local_name(child.tag)
            if tag == "eLiterals":
                lit_name = child.get("name") or ""
                lit_id = _child_fragment(fragment, lit_name)
                lit_data: dict = {}
                if child.get("value") is not None:
                    lit_data["value"] = _int_attr(child, "value", 0)
                if b.add_node(lit_id, "EEnumLiteral", lit_name, lit_data):
                    _register_xmi_id(b, child, lit_id)
                    b.add_edge(f"{fragment}~Contains_Literal~{lit_id}", "Contains_Literal", fragment, lit_id, containment=True)
            elif tag == "eAnnotations":
                _build_annotation(b, child, fragment)
    elif kind == "EDataType":
        if not b.add_node(fragment, "EDataType", name, {}):
            return
        _register_xmi_id(b, el, fragment)
        b.add_edge(f"{pkg_id}~Contains_Classifier~{fragment}", "Contains_Classifier", pkg_id, fragment, containment=True)
        for child in el:
            if local_name(child.tag) == "eAnnotations":
                _build_annotation(b, child, fragment)
    else:
        b.warn(COMPATIBILITY_ADAPTATION, f"unsupported classifier kind {kind!r} skipped", name or None, True)


def _build_class_members(b: _Builder, el: ET.Element, class_id: str) -> None:
    # eSuperTypes attribute: space-separated refs
    supertypes = el.get("eSuperTypes")
    if supertypes:
        for ref in supertypes.split():
            b.defer_edge("Generalization", class_id, ref)
    for href in _child_href(el, "eSuperTypes"):
        b.defer_edge("Generalization", class_id, href)

    for child in el:
        tag = local_name(child.tag)
        if tag == "eGenericSuperTypes":
            if _has_type_arguments(child):
                b.warn(
                    UNSUPPORTED_GENERIC_REFERENCE,
                    f"generic supertype of {class_id!r} is not supported; element skipped",
                    class_id,
                    True,
                )
            else:
                ref = child.get("eClassifier") or next(iter(_child_href(child, "eClassifier")), None)
                if ref:
                    b.defer_edge("Generalization", class_id, ref)
        elif tag == "eStructuralFeatures":
            _build_feature(b, child, class_id)
        elif tag == "eOperations":
            _build_operation(b, child, class_id)
        elif tag == "eAnnotations":
            _build_annotation(b, child, class_id)


def _generic_type_ref(el: ET.Element) -> tuple[str | None, bool]:
    """(type ref, uses_unsupported_generics) from an eGenericType child, if any."""
    for child in el:
        if local_name(child.tag) == "eGenericType":
            if _has_type_arguments(child):
                return None, True
            ref = child.get("eClassifier")
            if not ref:
                hrefs = _child_href(child, "eClassifier")
                ref = hrefs[0] if hrefs else None
            return ref, False
    return None, False


def _build_feature(b: _Builder, el: ET.Element, class_id: str) -> None:
    raw_type = el.get(_XSI_TYPE)
    if not raw_type:
        b.warn(COMPATIBILITY_ADAPTATION, "feature without xsi:type skipped", el.get("name"), True)
        return
    kind = strip_prefix(raw_type)
    name = el.get("name") or ""
    feature_id = _child_fragment(class_id, name)

    generic_ref, generic_unsupported = _generic_type_ref(el)
    if generic_unsupported:
        b.warn(
            UNSUPPORTED_GENERIC_REFERENCE,
            f"feature {feature_id!r} uses generic type arguments; element skipped",
            feature_id,
            True,
        )
        return
    type_refs = _etype_refs(el)
    if generic_ref:
        type_refs.append(generic_ref)

    if kind == "EAttribute":
        data = _modifier_data(el)
        data["id"] = _bool_attr(el, "iD", False)
        if not b.add_node(feature_id, "EAttribute", name, data):
            return
        _register_xmi_id(b, el, feature_id)
        b.add_edge(f"{class_id}~Contains_Feature~{feature_id}", "Contains_Feature", class_id, feature_id, containment=True)
        if type_refs:
            b.defer_edge("Typed", feature_id, type_refs[0], role="attribute")
    elif kind == "EReference":
        if el.get("eKeys") is not None:
            b.warn(
                COMPATIBILITY_ADAPTATION,
                f"eKeys on reference {feature_id!r} is not supported; attribute dropped",
                feature_id,
                False,
            )
        if not type_refs:
            b.warn(
                MISSING_EDGE_ENDPOINT,
                f"reference {feature_id!r} has no resolvable type; edge skipped",
                feature_id,
                True,
            )
            return
        containment = _bool_attr(el, "containment", False)
        data = _modifier_data(el)
        data["containment"] = containment
        opposite = el.get("eOpposite")
        if opposite:
            data["eOpposite"] = opposite
        etype = "Containment" if containment else "Reference"
        b.defer_edge(etype, class_id, type_refs[0], edge_id=feature_id, edge_name=name, data=data, containment=containment)
    else:
        b.warn(COMPATIBILITY_ADAPTATION, f"unsupported feature kind {kind!r} skipped", name or None, True)


def _build_operation(b: _Builder, el: ET.Element, class_id: str) -> None:
    name = el.get("name") or ""
    op_id = _child_fragment(class_id, name)
    if not b.add_node(op_id, "EOperation", name, _modifier_data(el)):
        return
    _register_xmi_id(b, el, op_id)
    b.add_edge(f"{class_id}~Contains_Operation~{op_id}", "Contains_Operation", class_id, op_id, containment=True)

    type_refs = _etype_refs(el)
    generic_ref, generic_unsupported = _generic_type_ref(el)
    if generic_unsupported:
        b.warn(
            UNSUPPORTED_GENERIC_REFERENCE,
            f"operation {op_id!r} uses generic type arguments; return type skipped",
            op_id,
            True,
        )
    elif generic_ref:
        type_refs.append(generic_ref)
    if type_refs:
        b.defer_edge("Typed", op_id, type_refs[0], role="return")

    exceptions = el.get("eExceptions")
    if exceptions:
        for ref in exceptions.split():
            b.defer_edge("Throws", op_id, ref)
    for href in _child_href(el, "eExceptions"):
        b.defer_edge("Throws", op_id, href)

    for child in el:
        tag = local_name(child.tag)
        if tag == "eParameters":
            param_name = child.get("name") or ""
            param_id = _child_fragment(op_id, param_name)
            if b.add_node(param_id, "EParameter", param_name, _modifier_data(child)):
                _register_xmi_id(b, child, param_id)
                b.add_edge(f"{op_id}~Contains_Parameter~{param_id}", "Contains_Parameter", op_id, param_id, containment=True)
                param_refs = _etype_refs(child)
                p_generic, p_unsupported = _generic_type_ref(child)
                if p_unsupported:
                    b.warn(
                        UNSUPPORTED_GENERIC_REFERENCE,
                        f"parameter {param_id!r} uses generic type arguments; typing skipped",
                        param_id,
                        True,
                    )
                elif p_generic:
                    param_refs.append(p_generic)
                if param_refs:
                    b.defer_edge("Typed", param_id, param_refs[0], role="parameter")
        elif tag == "eAnnotations":
            _build_annotation(b, child, op_id)


def _build_annotation(b: _Builder, el: ET.Element, parent_id: str) -> None:
    index = b.annotation_counts.get(parent_id, 0)
    b.annotation_counts[parent_id] = index + 1
    ann_id = f"{parent_id}/@eAnnotations.{index}"
    data: dict = {}
    source = el.get("source")
    if source:
        data["source"] = source
    if b.add_node(ann_id, "EAnnotation", None, data):
        _register_xmi_id(b, el, ann_id)
        b.add_edge(f"{parent_id}~Contains_Annotation~{ann_id}", "Contains_Annotation", parent_id, ann_id, containment=True)
