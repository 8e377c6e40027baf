"""Persistence: flag bitmaps, CSV exports, and resumable-run manifests.

Bitmap file layout (all header integers little-endian, fixed width):

    offset  size  field
    0       4     magic  b"ZKBM"
    4       2     format version (currently 1)
    6       2     flag kind tag (1 zumkeller, 2 practical, 3 prime, 4 square)
    8       8     limit L
    16      ceil(L/8)  payload, LSB-first: bit (i-1) of the stream is the
                       flag of integer i
    -8      8     checksum: first 8 bytes of SHA-256 over everything above

Version mismatch, truncation and checksum failure raise distinct errors.
CSV exports are single-column, header ``n``, newline-terminated, UTF-8.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    BitmapChecksumError,
    BitmapFormatError,
    BitmapTruncatedError,
    BitmapVersionError,
    DomainError,
)

BITMAP_MAGIC = b"ZKBM"
BITMAP_VERSION = 1
_HEADER = struct.Struct("<4sHHQ")

FLAG_KIND_TAGS = {"zumkeller": 1, "practical": 2, "prime": 3, "square": 4}
_TAG_NAMES = {v: k for k, v in FLAG_KIND_TAGS.items()}


@dataclass(frozen=True)
class BitmapFile:
    """In-memory form of a flag bitmap: flags[i] for 1 <= i <= limit."""

    limit: int
    kind: str
    flags: np.ndarray  # bool, length limit + 1, index 0 unused

    @classmethod
    def from_flags(cls, kind: str, flags: np.ndarray) -> "BitmapFile":
        if kind not in FLAG_KIND_TAGS:
            raise DomainError(f"unknown flag kind {kind!r}")
        clean = np.asarray(flags, dtype=bool).copy()
        clean[0] = False
        return cls(len(clean) - 1, kind, clean)


def _checksum(blob: bytes) -> bytes:
    return hashlib.sha256(blob).digest()[:8]


def save_bitmap(bitmap: BitmapFile, path) -> None:
    payload = np.packbits(bitmap.flags[1:], bitorder="little").tobytes()
    head = _HEADER.pack(
        BITMAP_MAGIC, BITMAP_VERSION, FLAG_KIND_TAGS[bitmap.kind], bitmap.limit
    )
    blob = head + payload
    Path(path).write_bytes(blob + _checksum(blob))


def load_bitmap(path) -> BitmapFile:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size + 8:
        raise BitmapTruncatedError(f"{path}: shorter than a header")
    magic, version, tag, limit = _HEADER.unpack_from(raw)
    if magic != BITMAP_MAGIC:
        raise BitmapFormatError(f"{path}: bad magic {magic!r}")
    if version != BITMAP_VERSION:
        raise BitmapVersionError(f"{path}: version {version}, expected {BITMAP_VERSION}")
    if tag not in _TAG_NAMES:
        raise BitmapFormatError(f"{path}: unknown flag kind tag {tag}")
    n_payload = (limit + 7) // 8
    expected = _HEADER.size + n_payload + 8
    if len(raw) < expected:
        raise BitmapTruncatedError(f"{path}: {len(raw)} bytes, expected {expected}")
    if len(raw) > expected:
        raise BitmapFormatError(f"{path}: trailing garbage beyond {expected} bytes")
    body, trailer = raw[:-8], raw[-8:]
    if _checksum(body) != trailer:
        raise BitmapChecksumError(f"{path}: checksum mismatch")
    bits = np.unpackbits(
        np.frombuffer(raw, dtype=np.uint8, count=n_payload, offset=_HEADER.size),
        count=limit,
        bitorder="little",
    ).astype(bool)
    flags = np.zeros(limit + 1, dtype=bool)
    flags[1:] = bits
    return BitmapFile(limit, _TAG_NAMES[tag], flags)


def export_csv(values: Iterable[int], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("n\n")
        for v in values:
            fh.write(f"{v}\n")


def import_csv(path) -> list[int]:
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().strip()
        if header != "n":
            raise DomainError(f"{path}: expected header 'n', got {header!r}")
        return [int(line) for line in fh if line.strip()]


def export_witness_csv(reports, path) -> None:
    """Witness rows: n,a,b,category_a,category_b (non-representables skipped)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("n,a,b,category_a,category_b\n")
        for r in reports:
            if r.witness is None:
                continue
            a, b = r.witness
            fh.write(f"{r.n},{a},{b},zumkeller,{r.pair_type.second_category}\n")


@dataclass
class RunManifest:
    """Checkpoint state for a chunked pair-sum scan."""

    limit: int
    pair_type: str
    chunk_size: int
    completed: dict[int, list[int]] = field(default_factory=dict)
    aggregates: dict | None = None


def save_manifest(manifest: RunManifest, path) -> None:
    doc = {
        "limit": manifest.limit,
        "pair_type": manifest.pair_type,
        "chunk_size": manifest.chunk_size,
        "completed": {str(k): v for k, v in manifest.completed.items()},
        "aggregates": manifest.aggregates,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_manifest(path) -> RunManifest:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunManifest(
        limit=doc["limit"],
        pair_type=doc["pair_type"],
        chunk_size=doc["chunk_size"],
        completed={int(k): list(v) for k, v in doc["completed"].items()},
        aggregates=doc["aggregates"],
    )
