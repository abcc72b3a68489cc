"""File naming conventions and on-disk corpus formats.

Layout pages:        <FILE_ID>_page<NR>.json
Recognition output:  <FILE_ID>_page<NR>.json   (mirrors the layout name)
Tuple sets:          <FILE_ID>_page<NR>_table<IDX>.json

FILE_ID may itself contain underscores; names parse from the right.
All JSON is written with sorted keys and a trailing newline so repeated
runs produce byte-identical files.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import LayoutError
from .interpret import TupleSet, tuple_set_from_dict, tuple_set_to_dict
from .model import (
    RecognizedTable,
    recognized_table_from_dict,
    recognized_table_to_dict,
)

_LAYOUT_RE = re.compile(r"^(?P<fid>.+)_page(?P<page>\d+)\.json$")
_TUPLE_RE = re.compile(r"^(?P<fid>.+)_page(?P<page>\d+)_table(?P<idx>\d+)\.json$")
_TUPLE_BARE_RE = re.compile(r"^(?P<fid>.+)_(?P<page>\d+)_(?P<idx>\d+)\.json$")


def format_layout_name(file_id: str, page_nr: int) -> str:
    return f"{file_id}_page{page_nr:02d}.json"


def parse_layout_name(name: str) -> tuple[str, int] | None:
    m = _LAYOUT_RE.match(name)
    if not m:
        return None
    return m.group("fid"), int(m.group("page"))


def format_tuple_name(file_id: str, page_nr: int, table_idx: int) -> str:
    return f"{file_id}_page{page_nr:02d}_table{table_idx}.json"


def parse_tuple_name(name: str) -> tuple[str, int, int] | None:
    m = _TUPLE_RE.match(name) or _TUPLE_BARE_RE.match(name)
    if not m:
        return None
    return m.group("fid"), int(m.group("page")), int(m.group("idx"))


def dump_json(path: Path, obj: object) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_json(path: Path) -> object:
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class PageTables:
    """One page's recognized (or ground-truth) tables."""

    file_id: str
    page_nr: int
    tables: list[RecognizedTable] = field(default_factory=list)
    orientation: str = "standard"
    diagnostics: list[str] = field(default_factory=list)
    # parallel to tables; fixture ground truth marks tables a
    # label-requiring configuration is expected to skip
    expected_missed: list[bool] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.expected_missed:
            self.expected_missed = [False] * len(self.tables)


def page_tables_to_dict(doc: PageTables) -> dict:
    tables = []
    for t, missed in zip(doc.tables, doc.expected_missed):
        entry = recognized_table_to_dict(t)
        if missed:
            entry["expected_missed"] = True
        tables.append(entry)
    return {
        "file_id": doc.file_id,
        "page_nr": doc.page_nr,
        "orientation": doc.orientation,
        "tables": tables,
        "diagnostics": list(doc.diagnostics),
    }


def page_tables_from_dict(d: dict) -> PageTables:
    if not isinstance(d, dict):
        raise LayoutError("page tables JSON must be an object")
    try:
        raw_tables = d.get("tables", [])
        tables = [recognized_table_from_dict(t) for t in raw_tables]
        missed = [bool(t.get("expected_missed", False)) for t in raw_tables]
        return PageTables(
            file_id=str(d["file_id"]),
            page_nr=int(d["page_nr"]),
            tables=tables,
            orientation=str(d.get("orientation", "standard")),
            diagnostics=[str(x) for x in d.get("diagnostics", [])],
            expected_missed=missed,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LayoutError):
            raise
        raise LayoutError(f"bad page tables entry: {exc}") from exc


def write_tuple_set(out_dir: Path, ts: TupleSet) -> Path:
    path = out_dir / format_tuple_name(ts.file_id, ts.page_nr, ts.table_idx)
    dump_json(path, tuple_set_to_dict(ts))
    return path


def read_tuple_set(path: Path) -> TupleSet:
    return tuple_set_from_dict(read_json(path))
