"""On-disk cache of Kazhdan-Lusztig and canonical-basis tables.

Files live under ``<dir>/v<version>/`` and are named after the graph and
the table kind.  Bumping the package version invalidates every entry.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
from pathlib import Path

from . import __version__
from .hecke import KLTable
from .laurent import LaurentPoly

log = logging.getLogger(__name__)


def _slug(label: str) -> str:
    if re.fullmatch(r"[A-Za-z0-9:]+", label):
        return label.replace(":", "_")
    return "graph-" + hashlib.sha256(label.encode()).hexdigest()[:16]


class TableCache:
    def __init__(self, directory: str | Path):
        self.root = Path(directory) / f"v{__version__}"

    def path(self, label: str, kind: str) -> Path:
        return self.root / f"{_slug(label)}__{kind}.json"

    def load(self, label: str, kind: str) -> dict | None:
        p = self.path(label, kind)
        if not p.is_file():
            return None
        try:
            data = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            log.warning("ignoring unreadable cache file %s", p)
            return None
        if data.get("version") != __version__ or data.get("graph") != label:
            return None
        return data

    def store(self, label: str, kind: str, payload: dict) -> None:
        p = self.path(label, kind)
        p.parent.mkdir(parents=True, exist_ok=True)
        data = dict(payload, version=__version__, graph=label, kind=kind)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True))
        tmp.replace(p)

    # -- table-specific helpers ------------------------------------------

    def kl_table(self, hecke) -> KLTable:
        label = hecke.group.graph.label
        data = self.load(label, "kl")
        if data is not None:
            table = KLTable.from_json(hecke.group, data)
            hecke.set_kl_table(table)
            return table
        table = hecke.kl_table()
        self.store(label, "kl", table.to_json())
        return table

    def ic_table(self, tl) -> dict:
        g = tl.group
        label = g.graph.label
        data = self.load(label, "ic")
        if data is not None:
            table = {g.element(w): {g.element(y): LaurentPoly.from_json(c) for y, c in row.items()}
                     for w, row in data["table"].items()}
            tl.set_ic_table(table)
            return table
        table = tl.ic_table()
        rows = {g.name(w): {g.name(y): table[w][y].to_json() for y in sorted(table[w])}
                for w in sorted(table)}
        self.store(label, "ic", {"table": rows})
        return table

    def attach(self, ctx) -> None:
        """Load (or compute and store) both tables for a context."""
        self.kl_table(ctx.hecke)
        self.ic_table(ctx.tl)
