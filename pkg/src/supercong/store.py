"""Append-only line store of checker outcomes plus CSV/text export.

One record per line: tab-separated ``key=value`` fields, values percent-escaped.
When a key appears more than once the last line wins.  Lines that do not parse
are skipped with a warning and reported through ``Store.quarantined``.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional
from urllib.parse import quote, unquote

from . import __version__
from .padic import Valuation, format_rational
from .report import KEY_PARAMS, CongruenceReport

log = logging.getLogger(__name__)

ENV_VAR = "SUPERCONG_STORE"
DEFAULT_PATH = "supercong_store.txt"

COLUMNS = (
    "checker", "kind", "lambda", "p", "m", "s", "r", "variant",
    "claimed_exponent", "observed_valuation", "status", "skipped_reason", "version",
)

_REQUIRED = ("checker", "kind", "claimed_exponent", "observed_valuation", "status", "version")
_SAFE = "/-+.>:,"


def default_path() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_PATH)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def record_from_report(report: CongruenceReport, version: str = __version__) -> dict:
    rec = {"checker": report.checker, "kind": report.kind}
    for k in KEY_PARAMS:
        if k in report.params:
            rec[k] = _fmt(report.params[k])
    rec["claimed_exponent"] = "exact" if report.claimed_exponent is None else str(report.claimed_exponent)
    rec["observed_valuation"] = str(report.observed)
    rec["status"] = report.status
    rec["skipped_reason"] = report.skipped_reason or ""
    rec["version"] = version
    return rec


def record_key(rec: dict) -> tuple:
    return (rec["checker"],) + tuple(f"{k}={rec[k]}" for k in KEY_PARAMS if rec.get(k, "") != "")


def encode(rec: dict) -> str:
    return "\t".join(f"{k}={quote(str(v), safe=_SAFE)}" for k, v in rec.items())


def decode(line: str) -> dict:
    rec = {}
    for field in line.rstrip("\n").split("\t"):
        k, sep, v = field.partition("=")
        if not sep or not k:
            raise ValueError(f"malformed field {field!r}")
        rec[k] = unquote(v)
    missing = [k for k in _REQUIRED if k not in rec]
    if missing:
        raise ValueError(f"missing fields {missing}")
    Valuation.parse(rec["observed_valuation"])
    return rec


def _sort_key(rec: dict):
    def part(k):
        v = rec.get(k, "")
        try:
            return (0, Fraction(v), "")
        except (ValueError, ZeroDivisionError):
            return (1, 0, v)

    return (rec["checker"],) + tuple(part(k) for k in KEY_PARAMS)


class Store:
    def __init__(self, path: Optional[os.PathLike] = None):
        self.path = Path(path) if path is not None else default_path()
        self.quarantined: list[tuple[int, str]] = []
        self._records: dict[tuple, dict] = {}
        self._load()

    def _load(self):
        self._records.clear()
        self.quarantined.clear()
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = decode(line)
                except ValueError as e:
                    log.warning("%s:%d: quarantined corrupt line (%s)", self.path, lineno, e)
                    self.quarantined.append((lineno, line.rstrip("\n")))
                    continue
                self._records[record_key(rec)] = rec

    def __len__(self) -> int:
        return len(self._records)

    def get(self, key: tuple) -> Optional[dict]:
        return self._records.get(key)

    def has_current(self, rec: dict) -> bool:
        old = self._records.get(record_key(rec))
        return old is not None and old.get("version") == rec["version"]

    def put(self, rec: dict, force: bool = False) -> bool:
        """Append ``rec`` unless an identical-version record exists; returns True if written."""
        if self.has_current(rec) and not force:
            return False
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(encode(rec) + "\n")
        self._records[record_key(rec)] = rec
        return True

    def put_report(self, report: CongruenceReport, force: bool = False) -> bool:
        return self.put(record_from_report(report), force)

    def query(self, **filters) -> list[dict]:
        """Records whose fields equal every given filter, in a fixed order."""
        want = {k: _fmt(v) for k, v in filters.items() if v is not None}
        out = [r for r in self._records.values() if all(r.get(k) == v for k, v in want.items())]
        return sorted(out, key=_sort_key)


def export_csv(records: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for rec in records:
        w.writerow({c: rec.get(c, "") for c in COLUMNS})
    return buf.getvalue()


def export_text(records: Iterable[dict]) -> str:
    rows = [[rec.get(c, "") for c in COLUMNS] for rec in records]
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(COLUMNS)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(COLUMNS, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def iter_records(path: os.PathLike) -> Iterator[dict]:
    yield from Store(path).query()
