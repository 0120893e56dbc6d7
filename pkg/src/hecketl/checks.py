"""Machine checks of the projection property and its supporting lemmas.

Every check returns a :class:`CheckReport`.  Failures are listed in
``(length, ShortLex)`` order, so the first one is Bruhat-minimal among the
failures.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .canonical import express_in_basis
from .coxeter import CoxeterGraph, GroupTable, enumerate_group, parse_graph
from .hecke import HeckeAlgebra
from .laurent import LaurentPoly, ONE
from .temperley_lieb import BProduct, TLAlgebra

__all__ = ["AlgebraContext", "CheckReport", "CHECKS", "run_check", "build_context"]


@dataclass
class AlgebraContext:
    spec: str
    graph: CoxeterGraph
    group: GroupTable
    hecke: HeckeAlgebra
    tl: TLAlgebra

    def name(self, w: int) -> str:
        return self.group.name(w)


def build_context(spec: str, max_order: int = 100_000, cache=None) -> AlgebraContext:
    graph = parse_graph(spec)
    group = enumerate_group(graph, cap=max_order)
    hecke = HeckeAlgebra(group)
    tl = TLAlgebra(hecke)
    ctx = AlgebraContext(spec, graph, group, hecke, tl)
    if cache is not None:
        cache.attach(ctx)
    return ctx


@dataclass
class CheckReport:
    check: str
    graph: str
    scanned: int
    failures: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0
    worst: object = None
    details: dict = field(default_factory=dict)
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = not self.failures

    @property
    def counterexample(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_json(self, timing: bool = True) -> dict:
        out = {"check": self.check, "graph": self.graph, "scanned": self.scanned,
               "failures": self.failures, "passed": self.passed, "worst": self.worst}
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


# -- parallel fan-out ---------------------------------------------------------

_WORKER_STATE: tuple | None = None


def _worker(item):
    fn, ctx = _WORKER_STATE
    return fn(ctx, item)


def fan_out(fn: Callable, ctx: AlgebraContext, items: Iterable, jobs: int = 1) -> list:
    """``[fn(ctx, item) for item in items]``, over ``jobs`` forked workers.

    All tables in ``ctx`` must be built beforehand; workers only read them.
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2 or "fork" not in multiprocessing.get_all_start_methods():
        return [fn(ctx, it) for it in items]
    global _WORKER_STATE
    _WORKER_STATE = (fn, ctx)
    try:
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            return pool.map(_worker, items, chunksize=max(1, len(items) // (4 * jobs)))
    finally:
        _WORKER_STATE = None


def _poly(p: LaurentPoly) -> str:
    return str(p)


def _diff(a: dict, b: dict, ctx: AlgebraContext) -> dict:
    keys = sorted(set(a) | set(b))
    zero = LaurentPoly()
    return {ctx.name(k): [_poly(a.get(k, zero)), _poly(b.get(k, zero))]
            for k in keys if a.get(k, zero) != b.get(k, zero)}


# -- individual checks ----------------------------------------------------------

def _projection_one(ctx: AlgebraContext, w: int):
    tl = ctx.tl
    image = tl.theta(ctx.hecke.kl_basis(w))
    canon = tl.c_basis(w)
    if image != canon:
        return {"w": ctx.name(w), "theta(C'_w) vs c_w": _diff(image.coords, canon.coords, ctx)}
    return None


def check_projection(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """theta(C'_w) = c_w for every fully commutative w."""
    ctx.tl.ic_table()
    ctx.hecke.kl_columns(ctx.tl.basis)
    ctx.tl.precompute_theta()
    fails = [f for f in fan_out(_projection_one, ctx, ctx.tl.basis, jobs) if f]
    return CheckReport("projection", ctx.graph.label, len(ctx.tl.basis), fails,
                       details={"message": f"{len(ctx.tl.basis)} elements checked"})


def _lattice_one(ctx: AlgebraContext, w: int):
    g, tl = ctx.group, ctx.tl
    length = g.length
    worst = None
    bad = {}
    # theta(v^-l(w) T_w) on the basis v^-l(x) t_x
    for x, a in tl.theta_basis(w).items():
        c = a.shift(length[x] - length[w])
        worst = c.degree if worst is None else max(worst, c.degree)
        if not c.in_A_minus():
            bad[ctx.name(x)] = _poly(c)
    # theta(C'_w), same basis
    kl_bad = {}
    for x, c in tl.to_standard(tl.theta(ctx.hecke.kl_basis(w))).items():
        worst = max(worst, c.degree)
        if not c.in_A_minus():
            kl_bad[ctx.name(x)] = _poly(c)
    fail = None
    if bad or kl_bad:
        fail = {"w": ctx.name(w)}
        if bad:
            fail["theta(v^-l(w) T_w)"] = bad
        if kl_bad:
            fail["theta(C'_w)"] = kl_bad
    return fail, worst


def check_lattice(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """theta(v^-l(w) T_w) and theta(C'_w) lie in the lattice L for every w."""
    ctx.tl.precompute_theta()
    ctx.hecke.kl_table(with_inverse=False)
    results = fan_out(_lattice_one, ctx, range(ctx.group.size), jobs)
    fails = [f for f, _ in results if f]
    worst = max(wst for _, wst in results)
    return CheckReport("lattice", ctx.graph.label, ctx.group.size, fails, worst=worst,
                       details={"max_exponent": worst})


def check_kernel(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """ker(theta) is spanned by the C'_w it contains."""
    rep = ctx.tl.kernel_basis_check()
    details = {
        "kl_kernel": [ctx.name(w) for w in rep.kl_kernel],
        "group_order": rep.group_order,
        "tl_dimension": rep.tl_dimension,
        "rank_theta": rep.rank_theta,
        "dim_kernel": rep.dim_kernel,
        "rank_ideal": rep.rank_ideal,
        "ideal_in_kernel": rep.ideal_in_kernel,
        "kl_in_ideal": rep.kl_in_ideal,
        "hypothesis_holds": rep.hypothesis_holds,
    }
    fails = [] if rep.hypothesis_holds else [{"kernel": details}]
    return CheckReport("kernel", ctx.graph.label, ctx.group.size, fails,
                       worst=rep.dim_kernel - len(rep.kl_kernel), details=details)


def _positivity_one(ctx: AlgebraContext, x: int):
    tl = ctx.tl
    out = []
    lowest = 0
    for y in tl.basis:
        prod = tl._mul_coords(tl.c_basis(x).coords, tl.c_basis(y).coords)
        coords = _express(tl, prod)
        for z, c in coords.items():
            low = min(c.coeffs.values())
            lowest = min(lowest, low)
            if low < 0:
                out.append({"x": ctx.name(x), "y": ctx.name(y), "z": ctx.name(z),
                            "coefficient": _poly(c)})
    return out, lowest


def _express(tl: TLAlgebra, prod):
    return express_in_basis(tl.to_standard(prod), tl.ic_table(), tl.basis)


def check_positivity(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """Structure constants of the canonical basis lie in N[v, v^-1]."""
    tl = ctx.tl
    tl.ic_table()
    tl.precompute_theta()
    basis = tl.basis
    for x in basis:
        for y in basis:
            tl.basis_product(x, y)
    results = fan_out(_positivity_one, ctx, basis, jobs)
    fails = [f for part, _ in results for f in part]
    lowest = min(low for _, low in results)
    n = len(basis)
    return CheckReport("positivity", ctx.graph.label, n * n, fails, worst=lowest,
                       details={"negative_coefficients": len(fails),
                                "message": f"{len(fails)} negative coefficients"})


def _require_ab(ctx: AlgebraContext, name: str):
    if ctx.graph.family() is None:
        raise ValueError(f"check {name!r} needs a graph of type A or B")


def _lemma_213_one(ctx: AlgebraContext, w: int):
    g, tl = ctx.group, ctx.tl
    fails = []
    worst = 0
    for s in range(g.rank):
        a, m, x = tl.b_product_reduce(g.words[w] + (s,))
        worst = max(worst, m)
        problems = []
        if m > 1:
            problems.append(f"m = {m} > 1")
        if not g.length[g.right[x][s]] < g.length[x]:
            problems.append("l(w's) > l(w')")
        if a < 1:
            problems.append(f"a = {a}")
        blocked = any(g.length[g.right[w][t]] < g.length[w]
                      for t in range(g.rank) if t != s and not g.graph.commute(s, t))
        if blocked and m != 0:
            problems.append("m != 0 although a non-commuting right descent exists")
        value = tl.b_product_value(BProduct(a, m, x))
        if tl.b_monomial(w) * tl.b_gen(s) != value:
            problems.append("rewriting disagrees with t-basis product")
        if problems:
            fails.append({"w": ctx.name(w), "s": f"s{s + 1}", "a": a, "m": m,
                          "w'": ctx.name(x), "problems": problems})
    return fails, worst


def check_lemma_2_1_3(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """b_w b_s = a q_c^m b_w' with m <= 1, w's < w', and m = 0 when blocked."""
    _require_ab(ctx, "lemma-2-1-3")
    tl = ctx.tl
    for w in tl.basis:
        tl.b_monomial(w)
    results = fan_out(_lemma_213_one, ctx, tl.basis, jobs)
    fails = [f for part, _ in results for f in part]
    worst = max(wst for _, wst in results)
    return CheckReport("lemma-2-1-3", ctx.graph.label, len(tl.basis) * ctx.group.rank,
                       fails, worst=worst, details={"max_m": worst})


def _deletion_one(ctx: AlgebraContext, w: int):
    """All subsequences of the normal form of w, by depth-first search."""
    g, tl = ctx.group, ctx.tl
    word = g.normal_form(w)
    n = len(word)
    fails = []
    worst = None
    count = 0
    stack = [(0, 0, 1, 0, 0)]  # (position, k, a, m, x)
    while stack:
        i, k, a, m, x = stack.pop()
        if i == n:
            count += 1
            slack = (n - k) - m
            worst = slack if worst is None else min(worst, slack)
            if m > n - k or a < 1 or not g.fc[x] or not g.bruhat_leq(x, w):
                fails.append({"w": ctx.name(w), "k": k, "m": m, "x": ctx.name(x)})
            continue
        stack.append((i + 1, k, a, m, x))
        a2, m2, y = tl._b_times_gen(x, word[i])
        stack.append((i + 1, k + 1, a * a2, m + m2, y))
    return fails, worst, count


def check_deletion(ctx: AlgebraContext, jobs: int = 1, max_length: int = 12) -> CheckReport:
    """Every subsequence of the normal form reduces with m <= n - k."""
    _require_ab(ctx, "deletion")
    g = ctx.group
    items = [w for w in range(g.size) if g.length[w] <= max_length]
    results = fan_out(_deletion_one, ctx, items, jobs)
    fails = [f for part, _, _ in results for f in part]
    slack = min(s for _, s, _ in results)
    subsequences = sum(c for _, _, c in results)
    return CheckReport("deletion", ctx.graph.label, len(items), fails, worst=slack,
                       details={"subsequences": subsequences, "min_slack": slack,
                                "max_length": max_length})


def check_monomial_vs_canonical(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """c_w = b_w for simply-laced graphs; some c_w != b_w otherwise."""
    tl = ctx.tl
    tl.ic_table()
    differ = [w for w in tl.basis if tl.c_basis(w) != tl.b_monomial(w)]
    simply_laced = all(m <= 3 for _, _, m in ctx.graph.edges)
    details = {"simply_laced": simply_laced,
               "differing": [ctx.name(w) for w in differ],
               "expected": "c_w = b_w for all w" if simply_laced else "some c_w != b_w"}
    if simply_laced:
        fails = [{"w": ctx.name(w),
                  "c_w vs b_w": _diff(tl.c_basis(w).coords, tl.b_monomial(w).coords, ctx)}
                 for w in differ]
    else:
        fails = [] if differ else [{"reason": "canonical basis equals monomial basis"}]
        if differ:
            w = differ[0]
            details["witness"] = {"w": ctx.name(w),
                                  "c_w vs b_w": _diff(tl.c_basis(w).coords,
                                                      tl.b_monomial(w).coords, ctx)}
    return CheckReport("monomial-vs-canonical", ctx.graph.label, len(tl.basis), fails,
                       worst=len(differ), details=details)


def _engine_side(ctx: AlgebraContext, side: str, table, bar, element, indices, order2):
    fails = []
    for w in indices:
        col = table[w]
        if col.get(w) != ONE:
            fails.append({"side": side, "w": ctx.name(w), "problem": "diagonal != 1"})
        for y, c in col.items():
            if y != w and not (ctx.group.bruhat_leq(y, w) and c.in_v_inv_A_minus()):
                fails.append({"side": side, "w": ctx.name(w), "y": ctx.name(y),
                              "problem": "off-diagonal coefficient", "value": _poly(c)})
        e = element(w)
        if bar(e) != e:
            fails.append({"side": side, "w": ctx.name(w), "problem": "not bar-invariant"})
        if order2[w] != col:
            fails.append({"side": side, "w": ctx.name(w),
                          "problem": "depends on the linear extension"})
    return fails


def alternative_order(group: GroupTable, indices, seed: int = 0) -> list[int]:
    """Another linear extension of Bruhat order: random shuffle within each length."""
    rng = random.Random(seed)
    keyed = [(group.length[w], rng.random(), w) for w in indices]
    return [w for _, _, w in sorted(keyed)]


def check_engine(ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    """Bar invariance, unitriangularity and order independence on both sides."""
    g, h, tl = ctx.group, ctx.hecke, ctx.tl
    kl = h.kl_table(with_inverse=False)
    kl2 = h.kl_table(order=alternative_order(g, range(g.size)), with_inverse=False).p_tilde
    fails = _engine_side(ctx, "hecke", kl.p_tilde, h.bar, h.kl_basis, range(g.size), kl2)
    ic = tl.ic_table()
    ic2 = tl.ic_table(order=alternative_order(g, tl.basis))
    fails += _engine_side(ctx, "tl", ic, tl.bar, tl.c_basis, tl.basis, ic2)
    return CheckReport("engine", ctx.graph.label, g.size + len(tl.basis), fails)


def check_b_rewriting(ctx: AlgebraContext, jobs: int = 1, samples: int = 1000,
                      max_length: int = 10, seed: int = 0) -> CheckReport:
    """Rewriting in the b-generators agrees with multiplication through theta."""
    tl = ctx.tl
    rng = random.Random(seed)
    words = [tuple(rng.randrange(ctx.group.rank) for _ in range(rng.randint(0, max_length)))
             for _ in range(samples)]
    fails = []
    for word in words:
        prod = tl.b_product_reduce(word)
        if tl.b_word(word) != tl.b_product_value(prod):
            fails.append({"word": " ".join(f"s{s + 1}" for s in word) or "e",
                          "a": prod.a, "m": prod.m, "x": ctx.name(prod.x)})
    return CheckReport("b-rewriting", ctx.graph.label, samples, fails)


CHECKS: dict[str, Callable[..., CheckReport]] = {
    "projection": check_projection,
    "lattice": check_lattice,
    "kernel": check_kernel,
    "positivity": check_positivity,
    "lemma-2-1-3": check_lemma_2_1_3,
    "deletion": check_deletion,
    "monomial-vs-canonical": check_monomial_vs_canonical,
    "engine": check_engine,
    "b-rewriting": check_b_rewriting,
}


def run_check(name: str, ctx: AlgebraContext, jobs: int = 1) -> CheckReport:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    start = time.perf_counter()
    report = CHECKS[name](ctx, jobs=jobs)
    report.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return report
