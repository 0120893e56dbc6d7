"""Command-line interface.

    hecketl group  --graph A2 --list
    hecketl kl     --graph B2 [--element "s1 s2"]
    hecketl tl     --graph B3 [--basis c] [--structure]
    hecketl verify projection lattice --graph B3
    hecketl scan   positivity --graph B2

``verify`` exits 0 when every requested check passes, 1 when one fails (the
Bruhat-least counterexample is printed) and 2 on a configuration error.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .cache import TableCache
from .checks import CHECKS, AlgebraContext, build_context, run_check
from .coxeter import GraphError, GroupTooLarge

log = logging.getLogger("hecketl")

VERIFY_TARGETS = tuple(CHECKS)
COMMANDS = ("group", "kl", "tl", "verify", "scan")


class ConfigError(click.UsageError):
    exit_code = 2


@dataclass
class RunConfig:
    graph: str
    command: str
    targets: tuple[str, ...] = ()
    out: str = "table"
    cache: Path | None = None
    jobs: int = 1
    max_order: int = 100_000
    timing: bool = True
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        if self.max_order < 1:
            raise ConfigError("--max-order must be positive")
        if self.out not in ("json", "table"):
            raise ConfigError("--out must be json or table")
        if self.command in ("verify", "scan"):
            if not self.targets:
                raise ConfigError(f"{self.command} needs at least one target")
            bad = [t for t in self.targets if t not in CHECKS]
            if bad:
                raise ConfigError(f"unknown target {bad[0]!r}; choose from {', '.join(CHECKS)}")


def _context(cfg: RunConfig, tables: bool) -> AlgebraContext:
    try:
        cache = TableCache(cfg.cache) if (cfg.cache and tables) else None
        return build_context(cfg.graph, max_order=cfg.max_order, cache=cache)
    except (GraphError, GroupTooLarge) as exc:
        raise ConfigError(str(exc)) from None


def _emit(cfg: RunConfig, payload, lines: list[str]) -> None:
    if cfg.out == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def run(cfg: RunConfig) -> int:
    cfg.validate()
    handler = {"group": _run_group, "kl": _run_kl, "tl": _run_tl,
               "verify": _run_checks, "scan": _run_checks}[cfg.command]
    return handler(cfg)


def _run_group(cfg: RunConfig) -> int:
    ctx = _context(cfg, tables=False)
    g = ctx.group
    summary = {"graph": ctx.graph.label, "order": g.size, "fc_count": len(g.fc_elements),
               "longest_length": g.length[g.longest]}
    lines = [f"graph {ctx.graph.label}: |W| = {g.size}, |W_c| = {len(g.fc_elements)}, "
             f"longest length {g.length[g.longest]}"]
    if cfg.extra.get("list"):
        rows = []
        for w in range(g.size):
            rows.append({"id": w, "word": g.name(w), "length": g.length[w], "fc": g.fc[w],
                         "right_descents": sorted(s + 1 for s in g.right_descents(w))})
        summary["elements"] = rows
        lines = [f"{'id':>5}  {'length':>6}  {'fc':>2}  word"]
        lines += [f"{r['id']:>5}  {r['length']:>6}  {'y' if r['fc'] else 'n':>2}  {r['word']}"
                  for r in rows]
    _emit(cfg, summary, lines)
    return 0


def _run_kl(cfg: RunConfig) -> int:
    ctx = _context(cfg, tables=True)
    g, h = ctx.group, ctx.hecke
    element = cfg.extra.get("element")
    if element:
        try:
            w = g.element(element)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        ws = [w]
    else:
        ws = list(range(g.size))
    lines = []
    rows = {}
    for w in ws:
        col = h.kl_column(w)
        rows[g.name(w)] = {g.name(x): col[x].to_json() for x in sorted(col)}
        for x in sorted(col):
            lines.append(f"{g.name(w):<32} {g.name(x):<32} {col[x]}")
    _emit(cfg, {"graph": ctx.graph.label, "p_tilde": rows}, lines)
    return 0


def _run_tl(cfg: RunConfig) -> int:
    ctx = _context(cfg, tables=True)
    g, tl = ctx.group, ctx.tl
    kind = cfg.extra.get("basis", "c")
    if cfg.extra.get("structure"):
        table = tl.structure_constants(kind)
        payload = {f"{g.name(x)} * {g.name(y)}": {g.name(z): c.to_json() for z, c in sorted(col.items())}
                   for (x, y), col in sorted(table.items())}
        lines = [f"{kind}[{g.name(x)}] * {kind}[{g.name(y)}] = "
                 + (" + ".join(f"({c}){kind}[{g.name(z)}]" for z, c in sorted(col.items())) or "0")
                 for (x, y), col in sorted(table.items())]
    else:
        table = tl.basis_table(kind)
        payload = {g.name(w): {g.name(y): table[w][y].to_json() for y in sorted(table[w])}
                   for w in sorted(table)}
        lines = [f"{kind}[{g.name(w)}] = "
                 + " + ".join(f"({table[w][y]})v^-l*t[{g.name(y)}]" for y in sorted(table[w]))
                 for w in sorted(table)]
    _emit(cfg, {"graph": ctx.graph.label, "basis": kind,
                "structure" if cfg.extra.get("structure") else "table": payload}, lines)
    return 0


def _run_checks(cfg: RunConfig) -> int:
    ctx = _context(cfg, tables=True)
    reports = []
    for target in cfg.targets:
        try:
            reports.append(run_check(target, ctx, jobs=cfg.jobs))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    payload = [r.to_json(timing=cfg.timing) for r in reports]
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        msg = r.details.get("message", "")
        timing = f"  {r.elapsed_ms} ms" if cfg.timing else ""
        lines.append(f"{r.check:<22} {r.graph:<8} {status}  scanned={r.scanned}  "
                     f"failures={len(r.failures)}  worst={r.worst}{timing}"
                     + (f"  ({msg})" if msg else ""))
        if r.failures:
            lines.append("  counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    _emit(cfg, payload[0] if len(payload) == 1 else payload, lines)
    if cfg.command == "scan":
        return 0
    return 0 if all(r.passed for r in reports) else 1


# -- click wiring ---------------------------------------------------------------

def _common(f):
    f = click.option("--graph", "graph", required=True,
                     help="Named type (A4, B3, D4, I2:7) or JSON bond list / file.")(f)
    f = click.option("--out", type=click.Choice(["json", "table"]), default="table",
                     show_default=True)(f)
    f = click.option("--cache", type=click.Path(file_okay=False, path_type=Path),
                     default=None, help="Directory for cached KL / canonical tables.")(f)
    f = click.option("--jobs", type=int, default=1, show_default=True)(f)
    f = click.option("--max-order", type=int, default=100_000, show_default=True)(f)
    return f


def _invoke(command: str, targets=(), timing=True, **kw) -> None:
    common = {k: kw.pop(k) for k in ("graph", "out", "cache", "jobs", "max_order")}
    cfg = RunConfig(command=command, targets=tuple(targets), timing=timing, extra=kw, **common)
    sys.exit(run(cfg))


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def main(verbose: bool) -> None:
    """Kazhdan-Lusztig and canonical bases of Hecke / Temperley-Lieb algebras."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING)


@main.command()
@_common
@click.option("--list", "list_", is_flag=True, help="List every element.")
def group(list_, **kw):
    """Enumerate the Coxeter group."""
    _invoke("group", list=list_, **kw)


@main.command()
@_common
@click.option("--element", default=None, help='Only this column, e.g. "s1 s2 s1".')
def kl(element, **kw):
    """Kazhdan-Lusztig coefficients p~(x, w)."""
    _invoke("kl", element=element, **kw)


@main.command()
@_common
@click.option("--basis", type=click.Choice(["t", "b", "c"]), default="c", show_default=True)
@click.option("--structure", is_flag=True, help="Print structure constants instead.")
def tl(basis, structure, **kw):
    """Bases and structure constants of the Temperley-Lieb quotient."""
    _invoke("tl", basis=basis, structure=structure, **kw)


@main.command()
@click.argument("targets", nargs=-1)
@_common
@click.option("--no-timing", is_flag=True, help="Omit wall times (byte-stable output).")
def verify(targets, no_timing, **kw):
    """Run checks; exit 1 if any fails."""
    _invoke("verify", targets, timing=not no_timing, **kw)


@main.command()
@click.argument("targets", nargs=-1)
@_common
@click.option("--no-timing", is_flag=True, help="Omit wall times (byte-stable output).")
def scan(targets, no_timing, **kw):
    """Run checks as a report; always exit 0 unless misconfigured."""
    _invoke("scan", targets, timing=not no_timing, **kw)


if __name__ == "__main__":
    main()
