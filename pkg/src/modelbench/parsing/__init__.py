"""Parser registry, parse-status classification, and the parse stage runner.

A crash or hang in one parser invocation is caught and recorded as a
per-model failure; the run itself never aborts on a bad input file.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeoutError
from pathlib import Path

from ..artifacts import IR_DIR, IR_INFO, compute_model_id, dumps_canonical, ir_file_name, write_artifact
from ..errors import UnknownParser
from ..ir import FAILURE, PARTIAL, SUCCESS, Diagnostic, ParseRecord
from ..profile import BenchmarkProfile
from .archimate import parse_archimate
from .base import ParseFailure, ParseProduct, ParserDescriptor
from .ecore import parse_ecore

REGISTRY: dict[str, ParserDescriptor] = {}

_STATUS_TOTAL_KEY = {SUCCESS: "n_success", PARTIAL: "n_partial", FAILURE: "n_failed"}


def register_parser(descriptor: ParserDescriptor) -> None:
    if descriptor.key in REGISTRY:
        raise ValueError(f"parser key already registered: {descriptor.key}")
    REGISTRY[descriptor.key] = descriptor


register_parser(ParserDescriptor(key="ArchiMate-Archi", language="ArchiMate",
                                 accepted_extensions=(".archimate",), parse=parse_archimate))
register_parser(ParserDescriptor(key="Ecore", language="Ecore",
                                 accepted_extensions=(".ecore",), parse=parse_ecore))


def available_parsers() -> list[str]:
    return sorted(REGISTRY)


def select_parser(key: str) -> ParserDescriptor:
    descriptor = REGISTRY.get(key)
    if descriptor is None:
        raise UnknownParser(f"unknown parser {key!r}; available: {', '.join(available_parsers())}")
    return descriptor


def classify_status(warnings: tuple[Diagnostic, ...] | list[Diagnostic], n_skipped: int, ir_built: bool) -> str:
    if not ir_built:
        return FAILURE
    if not warnings and n_skipped == 0:
        return SUCCESS
    return PARTIAL


class _TimeoutPool:
    """Runs parser calls off-thread; a timed-out worker is abandoned, not joined."""

    def __init__(self) -> None:
        self._executor = ThreadPoolExecutor(max_workers=1)

    def run(self, fn, *args, timeout_s: float, **kwargs):
        future = self._executor.submit(fn, *args, **kwargs)
        try:
            return future.result(timeout=timeout_s)
        except FutureTimeoutError:
            future.cancel()
            self._executor.shutdown(wait=False)
            self._executor = ThreadPoolExecutor(max_workers=1)
            raise

    def close(self) -> None:
        self._executor.shutdown(wait=False)


def _missing_file_id(relative_path: str) -> str:
    # candidates that vanished between scan and parse still need a stable index key
    return compute_model_id(f"missing:{relative_path}".encode("utf-8"))


def run_parse(profile: BenchmarkProfile, dataset_info: dict, output_path: Path | None = None) -> dict:
    """Parse every scan candidate into the IR and persist ir_info.json plus ir/<id>.json files."""
    descriptor = select_parser(profile.parse.parser_language)
    out = Path(output_path) if output_path is not None else profile.resolved_output_path()
    ir_dir = out / IR_DIR
    dataset_root = Path(dataset_info["dataset_root"])

    index: dict[str, dict] = {}
    totals = {
        "n_models": 0,
        "n_success": 0,
        "n_partial": 0,
        "n_failed": 0,
        "elements_loaded": 0,
        "elements_skipped": 0,
        "warnings_total": 0,
        "warnings_by_type": {},
    }

    pool = _TimeoutPool()
    try:
        for rel in dataset_info["candidates"]:
            record = _parse_one(descriptor, dataset_root, rel, ir_dir, profile, pool)
            if record.model_id in index:
                # scan dedup guarantees distinct contents; a collision means the
                # tree changed mid-run, so keep totals consistent with the index
                continue
            index[record.model_id] = record.to_json_dict()
            totals["n_models"] += 1
            totals[_STATUS_TOTAL_KEY[record.status]] += 1
            totals["elements_loaded"] += record.n_loaded
            totals["elements_skipped"] += record.n_skipped
            totals["warnings_total"] += len(record.warnings)
            for warning in record.warnings:
                by_type = totals["warnings_by_type"]
                by_type[warning.type] = by_type.get(warning.type, 0) + 1
    finally:
        pool.close()

    ir_info = {"totals": totals, "index": index}
    write_artifact(ir_info, out / IR_INFO)
    return ir_info


def _parse_one(descriptor: ParserDescriptor, dataset_root: Path, rel: str, ir_dir: Path,
               profile: BenchmarkProfile, pool: _TimeoutPool) -> ParseRecord:
    full = dataset_root / rel
    try:
        content = full.read_bytes()
    except OSError:
        return ParseRecord(
            model_id=_missing_file_id(rel),
            source_path=rel,
            status=FAILURE,
            error_msg="file missing",
        )

    model_id = compute_model_id(content)
    start = time.perf_counter()
    product: ParseProduct | None = None
    error_msg: str | None = None
    try:
        product = pool.run(descriptor.parse, content, rel,
                           normalize_types=profile.parse.normalize_types,
                           timeout_s=profile.parse.timeout_s)
    except FutureTimeoutError:
        error_msg = f"timeout after {profile.parse.timeout_s:g}s"
    except ParseFailure as exc:
        error_msg = str(exc)
    except Exception as exc:  # parser crash: recorded, never propagated
        error_msg = f"parser crash: {exc!r}"
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    if product is None:
        return ParseRecord(
            model_id=model_id,
            source_path=rel,
            status=FAILURE,
            parse_time_ms=elapsed_ms,
            source_bytes=len(content),
            error_msg=error_msg or "parse failed",
        )

    status = classify_status(product.diagnostics, product.n_skipped, ir_built=True)
    payload = dumps_canonical(product.graph.to_json_dict())
    ir_path = ir_dir / ir_file_name(model_id)
    ir_path.parent.mkdir(parents=True, exist_ok=True)
    tmp = ir_path.with_name(ir_path.name + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    tmp.replace(ir_path)

    return ParseRecord(
        model_id=model_id,
        source_path=rel,
        status=status,
        warnings=product.diagnostics,
        n_loaded=product.n_loaded,
        n_skipped=product.n_skipped,
        parse_time_ms=elapsed_ms,
        source_bytes=len(content),
        ir_bytes=len(payload.encode("utf-8")),
    )
