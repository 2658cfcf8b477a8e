"""Append-only result catalog: one JSON object per line, exact numbers
only, deduplicated by a content hash that ignores timestamps."""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

TOOL_VERSION = "0.1.0"

KINDS = ("lpoly", "rank-record", "census", "ideal-report")


def content_hash(kind: str, payload: str, provenance: dict) -> str:
    hashed = {k: v for k, v in provenance.items() if k != "timestamp"}
    blob = json.dumps({"kind": kind, "payload": payload, "provenance": hashed},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class CatalogEntry:
    kind: str
    payload: str
    provenance: dict
    hash: str

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "payload": self.payload,
                           "provenance": self.provenance, "hash": self.hash},
                          sort_keys=True, separators=(",", ":"))


def make_entry(kind: str, payload: str, provenance: dict) -> CatalogEntry:
    provenance = dict(provenance)
    provenance.setdefault("tool_version", TOOL_VERSION)
    provenance.setdefault("timestamp",
                          datetime.now(timezone.utc).isoformat())
    return CatalogEntry(kind, payload, provenance,
                        content_hash(kind, payload, provenance))


def append_entry(path, kind: str, payload: str, provenance: dict) -> CatalogEntry:
    entry = make_entry(kind, payload, provenance)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(entry.to_json() + "\n")
    return entry


def read_entries(path):
    """Yield (entry dict or None, line number); None marks a corrupt line."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict) or "kind" not in obj \
                        or "payload" not in obj:
                    raise ValueError("not a catalog entry")
                yield obj, lineno
            except (json.JSONDecodeError, ValueError):
                yield None, lineno


def report(path, query: dict = None, out=None):
    """Filtered, deterministically sorted CSV table of catalog entries.

    Query keys are matched against the entry kind and provenance fields.
    Duplicate entries (same content hash) collapse to one row; corrupt
    lines are skipped with a warning.  Returns the number of skipped lines.
    """
    query = dict(query or {})
    out = out if out is not None else sys.stdout
    rows = []
    skipped = 0
    for obj, lineno in read_entries(path):
        if obj is None:
            skipped += 1
            print(f"warning: skipping corrupt catalog line {lineno}",
                  file=sys.stderr)
            continue
        prov = obj.get("provenance", {})
        want_kind = query.get("kind")
        if want_kind and obj["kind"] != want_kind:
            continue
        match = True
        for key, val in query.items():
            if key == "kind":
                continue
            if str(prov.get(key, "")) != str(val):
                match = False
                break
        if match:
            rows.append(obj)
    seen = set()
    unique = []
    for obj in rows:
        h = obj.get("hash") or content_hash(obj["kind"], obj["payload"],
                                            obj.get("provenance", {}))
        if h in seen:
            continue
        seen.add(h)
        unique.append((obj, h))

    def sort_key(item):
        obj, _ = item
        prov = obj.get("provenance", {})
        return (str(prov.get("m", "")), str(prov.get("i", "")),
                str(prov.get("twist", "")), obj["kind"], item[1])

    unique.sort(key=sort_key)
    print("kind,q,m,i,twist,hash,payload", file=out)
    for obj, h in unique:
        prov = obj.get("provenance", {})
        payload = obj["payload"].replace('"', '""')
        print(','.join([obj["kind"], str(prov.get("q", "")),
                        str(prov.get("m", "")), str(prov.get("i", "")),
                        str(prov.get("twist", "")), h, f'"{payload}"']),
              file=out)
    return skipped
