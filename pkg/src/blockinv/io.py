"""JSON matrix documents.

A document looks like::

    {
      "ring": "quaternion-rational",
      "partition": [1, 2],
      "col_partition": [2, 1],          # optional, defaults to "partition"
      "blocks": {"1,1": [[[0, 1, 0, 1], ["1/2", 0, 0, 0]]], ...},
      "meta": {...}                     # optional, ignored on input
    }

Block keys are 1-based ``"j,k"`` pairs; omitted blocks are zero. Each entry is
a quaternion literal ``[a, b, c, d]``. In the rational ring components are
integers or ``"p/q"`` strings; in the float ring they are JSON numbers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .block import PartitionedMatrix
from .errors import ParseError, ShapeError
from .matrix import Mat
from .ring import DEFAULT_TOLERANCE, Quaternion, QuaternionRing, rational

RING_TAGS = ("quaternion-rational", "quaternion-float")
_KEY_RE = re.compile(r"\s*(\d+)\s*,\s*(\d+)\s*")


@dataclass
class MatrixDocument:
    ring_tag: str
    partition: tuple[int, ...]
    col_partition: tuple[int, ...]
    blocks: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def ring(self) -> QuaternionRing:
        return ring_for_tag(self.ring_tag, self.tolerance)

    def to_partitioned(self) -> PartitionedMatrix:
        grid = [
            [self.blocks.get((j, k)) for k in range(1, len(self.col_partition) + 1)]
            for j in range(1, len(self.partition) + 1)
        ]
        return PartitionedMatrix.from_blocks(grid, self.partition, self.col_partition, self.ring)


def ring_for_tag(tag: str, tolerance: float = DEFAULT_TOLERANCE) -> QuaternionRing:
    if tag == "quaternion-rational":
        return QuaternionRing(exact=True)
    if tag == "quaternion-float":
        return QuaternionRing(exact=False, tolerance=tolerance)
    raise ParseError(f"unknown ring tag {tag!r}; expected one of {list(RING_TAGS)}", field="ring")


def tag_for_ring(ring: QuaternionRing) -> str:
    return "quaternion-rational" if ring.exact else "quaternion-float"


def _parse_component(value, exact: bool, where: str):
    if isinstance(value, bool):
        raise ParseError(f"{where}: booleans are not numbers", field=where)
    if exact:
        if isinstance(value, float):
            raise ParseError(f"{where}: float {value!r} in a quaternion-rational document", field=where)
        if isinstance(value, (int, str)):
            try:
                return rational(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"{where}: {exc}", field=where) from exc
    else:
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            raise ParseError(f"{where}: string {value!r} in a quaternion-float document", field=where)
    raise ParseError(f"{where}: expected a number, got {type(value).__name__}", field=where)


def parse_quaternion(value, exact: bool = True, where: str = "value") -> Quaternion:
    if not isinstance(value, list) or len(value) != 4:
        raise ParseError(f"{where}: quaternion literal must be a 4-element array", field=where)
    return Quaternion(*(_parse_component(x, exact, f"{where}[{i}]") for i, x in enumerate(value)))


def _parse_sizes(value, name: str) -> tuple[int, ...]:
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(s, int) and not isinstance(s, bool) and s >= 1 for s in value)
    ):
        raise ParseError(f"{name} must be a non-empty list of positive integers", field=name)
    return tuple(value)


def parse_document(text: str, tolerance: float = DEFAULT_TOLERANCE) -> MatrixDocument:
    """Parse and validate a document.

    Block shapes and key ranges are checked here. Structural checks such as
    triangularity are left to the consumer.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(obj) - {"ring", "partition", "col_partition", "blocks", "meta"}
    if unknown:
        raise ParseError(f"unknown top-level fields {sorted(unknown)}", field=sorted(unknown)[0])
    for name in ("ring", "partition", "blocks"):
        if name not in obj:
            raise ParseError(f"missing field {name!r}", field=name)
    tag = obj["ring"]
    ring = ring_for_tag(tag, tolerance)
    rows = _parse_sizes(obj["partition"], "partition")
    cols = _parse_sizes(obj["col_partition"], "col_partition") if "col_partition" in obj else rows
    if not isinstance(obj["blocks"], dict):
        raise ParseError("blocks must be an object keyed by 'j,k'", field="blocks")

    blocks = {}
    for key, raw in obj["blocks"].items():
        m = _KEY_RE.fullmatch(key)
        if m is None:
            raise ShapeError(f"block key {key!r} is not of the form 'j,k'", key=key)
        j, k = int(m.group(1)), int(m.group(2))
        if not (1 <= j <= len(rows) and 1 <= k <= len(cols)):
            raise ShapeError(f"block key {key!r} outside the {len(rows)}x{len(cols)} block grid", key=key)
        if (j, k) in blocks:
            raise ShapeError(f"block {key!r} given twice", key=key)
        shape = (rows[j - 1], cols[k - 1])
        if not isinstance(raw, list) or len(raw) != shape[0] or any(
            not isinstance(r, list) or len(r) != shape[1] for r in raw
        ):
            raise ShapeError(f"block {key!r} must be a {shape[0]}x{shape[1]} nested array", key=key)
        entries = [
            [parse_quaternion(x, ring.exact, f"blocks[{key!r}][{a}][{b}]") for b, x in enumerate(r)]
            for a, r in enumerate(raw)
        ]
        blocks[(j, k)] = Mat(ring, entries)
    meta = obj.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError("meta must be an object", field="meta")
    return MatrixDocument(tag, rows, cols, blocks, meta, tolerance)


def read_document(path, tolerance: float = DEFAULT_TOLERANCE) -> MatrixDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), tolerance)


def _component_literal(x):
    if isinstance(x, float):
        return x
    x = rational(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def quaternion_literal(q: Quaternion) -> list:
    return [_component_literal(x) for x in q.components]


def block_literal(m: Mat) -> list:
    return [[quaternion_literal(q) for q in row] for row in m.rows]


def document_from_partitioned(p: PartitionedMatrix, include=None, meta: dict | None = None) -> dict:
    """JSON-ready dict for ``p``. ``include(j, k)`` selects which blocks are written (default: all)."""
    blocks = {}
    for j in range(1, p.n_rows + 1):
        for k in range(1, p.n_cols + 1):
            if include is None or include(j, k):
                blocks[f"{j},{k}"] = block_literal(p.block(j, k))
    doc = {"ring": tag_for_ring(p.ring), "partition": list(p.row_partition.sizes)}
    if p.col_partition != p.row_partition:
        doc["col_partition"] = list(p.col_partition.sizes)
    doc["blocks"] = blocks
    if meta:
        doc["meta"] = meta
    return doc


def document_from_mat(m: Mat, meta: dict | None = None) -> dict:
    """A single-block document holding ``m``."""
    return document_from_partitioned(PartitionedMatrix(m, [m.nrows], [m.ncols]), meta=meta)


def serialize_document(doc: MatrixDocument | dict, indent: int | None = 2) -> str:
    if isinstance(doc, MatrixDocument):
        p = doc.to_partitioned()
        keys = set(doc.blocks)
        doc = document_from_partitioned(p, include=lambda j, k: (j, k) in keys, meta=doc.meta or None)
    return json.dumps(doc, indent=indent)


def canonical_json(value) -> str:
    """Byte-stable form used for comparisons: sorted keys, no whitespace."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


_LEAF_ARRAY_RE = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dumps_pretty(value) -> str:
    """Indented JSON with scalar-only arrays (quaternions, partitions) kept on one line."""
    text = json.dumps(value, indent=2)
    return _LEAF_ARRAY_RE.sub(lambda m: "[" + ", ".join(p.strip() for p in m.group(1).split(",")) + "]", text)
