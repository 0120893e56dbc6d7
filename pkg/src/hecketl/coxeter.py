"""Finite Coxeter groups from their graphs.

Groups are enumerated breadth-first by length.  Equality of elements is
decided combinatorially: two reduced words name the same element iff they are
connected by braid moves, and a word is reduced iff no word in its braid class
has two equal adjacent letters.  Every element is identified by its
ShortLex-least reduced word and by its position in the list of elements sorted
by ``(length, canonical word)``.

Generators are 0-based integers.  Printed words use 1-based names ``s1 s2 ...``.
For type B the generator ``0`` is the special node: ``m(0, 1) = 4``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "CoxeterGraph", "GroupElement", "GroupTable", "ParseResult",
    "GraphError", "GroupTooLarge",
    "parse_graph", "enumerate_group", "braid_class", "format_word",
]

Word = tuple[int, ...]


class GraphError(ValueError):
    """Malformed or unsupported Coxeter graph description."""


class GroupTooLarge(RuntimeError):
    """Enumeration exceeded the element cap."""


@dataclass(frozen=True)
class CoxeterGraph:
    rank: int
    bonds: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise GraphError("rank must be positive")
        if len(self.bonds) != n or any(len(row) != n for row in self.bonds):
            raise GraphError("bond matrix must be rank x rank")
        for i in range(n):
            if self.bonds[i][i] != 1:
                raise GraphError(f"diagonal entry m({i},{i}) must be 1")
            for j in range(i + 1, n):
                if self.bonds[i][j] != self.bonds[j][i]:
                    raise GraphError(f"bond matrix not symmetric at ({i},{j})")
                if self.bonds[i][j] < 2:
                    raise GraphError(f"off-diagonal bond m({i},{j}) must be >= 2")

    def m(self, s: int, t: int) -> int:
        return self.bonds[s][t]

    def commute(self, s: int, t: int) -> bool:
        return self.bonds[s][t] <= 2

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        """Pairs with ``m >= 3`` (adjacent nodes of the graph)."""
        return [(i, j, self.bonds[i][j]) for i, j in combinations(range(self.rank), 2)
                if self.bonds[i][j] >= 3]

    def family(self) -> tuple[str, int] | None:
        """``("A", n)`` or ``("B", n)`` if the numbering matches that type."""
        n = self.rank
        path = all(self.bonds[i][j] == (3 if j == i + 1 else 2)
                   for i in range(n) for j in range(i + 1, n) if (i, j) != (0, 1))
        if not path:
            return None
        if n == 1:
            return ("A", 1)
        if self.bonds[0][1] == 3:
            return ("A", n)
        if self.bonds[0][1] == 4:
            return ("B", n)
        return None

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "bonds": [[i, j, m] for i, j, m in self.edges]}

    @property
    def label(self) -> str:
        return self.name or json.dumps(self.to_json(), separators=(",", ":"))


def _from_edges(rank: int, edges: Sequence[tuple[int, int, int]], name: str | None) -> CoxeterGraph:
    b = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for i, j, m in edges:
        b[i][j] = m
        b[j][i] = m
    return CoxeterGraph(rank, tuple(map(tuple, b)), name)


def _named(kind: str, n: int, name: str) -> CoxeterGraph:
    path = [(i, i + 1, 3) for i in range(n - 1)]
    if kind == "A" and n >= 1:
        return _from_edges(n, path, name)
    if kind == "B" and n >= 2:
        return _from_edges(n, [(0, 1, 4)] + path[1:], name)
    if kind == "D" and n >= 4:
        return _from_edges(n, path[:-1] + [(n - 3, n - 1, 3)], name)
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4
        edges = [(0, 2, 3), (1, 3, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
        return _from_edges(n, edges, name)
    if kind == "F" and n == 4:
        return _from_edges(4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)], name)
    if kind == "H" and n in (3, 4):
        return _from_edges(n, [(0, 1, 5)] + path[1:], name)
    raise GraphError(f"unknown Coxeter type {name!r}")


_NAMED = re.compile(r"^([ABDEFH])(\d+)$")
_DIHEDRAL = re.compile(r"^I2[:(]?(\d+)\)?$")


def parse_graph(spec: str) -> CoxeterGraph:
    """Parse a named type (``A4``, ``B3``, ``D5``, ``I2:7``) or a JSON bond list.

    The JSON form is ``{"rank": n, "bonds": [[i, j, m], ...]}`` with 0-based
    indices; omitted pairs have ``m = 2``.  A path to a ``.json`` file holding
    that object is also accepted.
    """
    text = spec.strip()
    if text.endswith(".json") and Path(text).is_file():
        text = Path(text).read_text()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from None
        return graph_from_json(data)
    upper = text.upper()
    if m := _DIHEDRAL.match(upper):
        order = int(m.group(1))
        if order < 2:
            raise GraphError("dihedral bond order must be >= 2")
        return _from_edges(2, [(0, 1, order)], f"I2:{order}")
    if m := _NAMED.match(upper):
        return _named(m.group(1), int(m.group(2)), upper)
    raise GraphError(f"cannot parse Coxeter graph {spec!r}")


def graph_from_json(data: dict) -> CoxeterGraph:
    try:
        rank = int(data["rank"])
        raw = data.get("bonds", [])
    except (KeyError, TypeError, ValueError):
        raise GraphError("graph JSON needs an integer 'rank'") from None
    if rank < 1:
        raise GraphError("rank must be positive")
    b = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    seen: dict[tuple[int, int], int] = {}
    for entry in raw:
        try:
            i, j, m = entry
        except (TypeError, ValueError):
            raise GraphError(f"bond entry {entry!r} is not [i, j, m]") from None
        if m is None or isinstance(m, str) or m == 0 or m == float("inf"):
            raise GraphError(f"infinite bond between {i} and {j} is not supported")
        i, j, m = int(i), int(j), int(m)
        if not (0 <= i < rank and 0 <= j < rank):
            raise GraphError(f"bond ({i},{j}) out of range for rank {rank}")
        if i == j:
            if m != 1:
                raise GraphError(f"diagonal entry m({i},{i}) must be 1")
            continue
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != m:
            raise GraphError(f"bond matrix not symmetric at {key}")
        seen[key] = m
        b[i][j] = m
        b[j][i] = m
    return CoxeterGraph(rank, tuple(map(tuple, b)))


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{i + 1}" for i in word) if word else "e"


# -- braid moves ------------------------------------------------------------

def _alternating(word: Word, i: int, m: int) -> bool:
    a, b = word[i], word[i + 1]
    return all(word[i + k] == (a if k % 2 == 0 else b) for k in range(m))


def braid_neighbours(word: Word, graph: CoxeterGraph) -> Iterator[Word]:
    """Words obtained from ``word`` by one braid move (commutations included)."""
    n = len(word)
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a == b:
            continue
        m = graph.bonds[a][b]
        if i + m <= n and _alternating(word, i, m):
            repl = tuple(b if k % 2 == 0 else a for k in range(m))
            yield word[:i] + repl + word[i + m:]


def braid_class(word: Sequence[int], graph: CoxeterGraph) -> set[Word]:
    """All words reachable from ``word`` by braid moves."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for u in braid_neighbours(w, graph):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def _has_long_braid(word: Word, graph: CoxeterGraph) -> bool:
    n = len(word)
    for i in range(n - 2):
        a, b = word[i], word[i + 1]
        if a != b:
            m = graph.bonds[a][b]
            if m >= 3 and i + m <= n and _alternating(word, i, m):
                return True
    return False


# -- group table ------------------------------------------------------------

class GroupElement(NamedTuple):
    id: int
    canonical_word: Word
    length: int


@dataclass(frozen=True)
class ParseResult:
    """Factorisation of a fully commutative ``w`` against a letter ``s``.

    ``case`` is 1 for ``w = w1 s w2 s' w3`` and 2 for
    ``w = w1 s' w2 s w3 s' w4``.  ``positions`` are indices into ``word`` of
    the marked letters, left to right.
    """
    case: int
    s: int
    s_prime: int
    word: Word
    positions: tuple[int, ...]

    @property
    def pieces(self) -> tuple[Word, ...]:
        cuts = (-1,) + self.positions + (len(self.word),)
        return tuple(self.word[cuts[k] + 1:cuts[k + 1]] for k in range(len(cuts) - 1))


@dataclass(eq=False)
class GroupTable:
    """Complete multiplication data for a finite Coxeter group.

    Elements are the integers ``0 .. size-1`` sorted by
    ``(length, ShortLex canonical word)``; ``0`` is the identity.
    """
    graph: CoxeterGraph
    words: list[Word]
    right: list[tuple[int, ...]]
    fc: list[bool]
    left: list[tuple[int, ...]] = field(default_factory=list)
    inverse: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.words)}
        self.length = [len(w) for w in self.words]
        r = self.graph.rank
        if not self.inverse:
            self.inverse = [self.element(reversed(w)) for w in self.words]
        if not self.left:
            inv = self.inverse
            self.left = [tuple(inv[self.right[inv[w]][s]] for s in range(r))
                         for w in range(len(self.words))]
        self._rw_cache: dict[int, frozenset[Word]] = {}

    # -- basic access ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.words)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def rank(self) -> int:
        return self.graph.rank

    @property
    def identity(self) -> int:
        return 0

    @property
    def longest(self) -> int:
        return len(self.words) - 1

    @property
    def elements(self) -> list[GroupElement]:
        return [GroupElement(i, w, len(w)) for i, w in enumerate(self.words)]

    def gen(self, s: int) -> int:
        return self.right[0][s]

    def name(self, w: int) -> str:
        return format_word(self.words[w])

    def element(self, word: Sequence[int] | str) -> int:
        """Evaluate an arbitrary (not necessarily reduced) word."""
        if isinstance(word, str):
            word = _parse_word(word, self.rank)
        x = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"letter {s} out of range for rank {self.rank}")
            x = self.right[x][s]
        return x

    def mul(self, x: int, y: int) -> int:
        for s in self.words[y]:
            x = self.right[x][s]
        return x

    def right_mul(self, w: int, s: int) -> int:
        return self.right[w][s]

    def left_mul(self, w: int, s: int) -> int:
        return self.left[w][s]

    def right_descents(self, w: int) -> set[int]:
        lw = self.length[w]
        return {s for s in range(self.rank) if self.length[self.right[w][s]] < lw}

    def left_descents(self, w: int) -> set[int]:
        lw = self.length[w]
        return {s for s in range(self.rank) if self.length[self.left[w][s]] < lw}

    def content(self, w: int) -> frozenset[int]:
        return frozenset(self.words[w])

    def is_fully_commutative(self, w: int) -> bool:
        return self.fc[w]

    is_fc = is_fully_commutative

    @cached_property
    def fc_elements(self) -> list[int]:
        return [w for w in range(self.size) if self.fc[w]]

    def reduced_words(self, w: int) -> frozenset[Word]:
        words = self._rw_cache.get(w)
        if words is None:
            words = frozenset(braid_class(self.words[w], self.graph))
            self._rw_cache[w] = words
        return words

    def parabolic(self, s: int, t: int) -> list[int]:
        """Elements of the rank-2 parabolic subgroup generated by ``s, t``."""
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in (s, t):
                y = self.right[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def longest_in(self, s: int, t: int) -> Word:
        m = self.graph.m(s, t)
        return tuple(s if k % 2 == 0 else t for k in range(m))

    # -- Bruhat order ----------------------------------------------------

    @cached_property
    def reflections(self) -> list[int]:
        refl = set()
        for u in range(self.size):
            for s in range(self.rank):
                refl.add(self.mul(self.right[u][s], self.inverse[u]))
        return sorted(refl)

    @cached_property
    def _below(self) -> list[int]:
        # bitset of the lower Bruhat interval of each element, built by
        # closing the covering relation w > wt with l(wt) = l(w) - 1
        below = [0] * self.size
        refl = self.reflections
        for w in range(self.size):
            bits = 1 << w
            lw = self.length[w]
            for t in refl:
                u = self.mul(w, t)
                if self.length[u] == lw - 1:
                    bits |= below[u]
            below[w] = bits
        return below

    def bruhat_leq(self, x: int, w: int) -> bool:
        return bool(self._below[w] >> x & 1)

    def bruhat_interval(self, w: int) -> list[int]:
        bits = self._below[w]
        return [x for x in range(w + 1) if bits >> x & 1]

    # -- word combinatorics ----------------------------------------------

    def find_braid_factor(self, w: int) -> tuple[Word, int, int, int] | None:
        """A reduced word of ``w`` containing ``s s' s ...`` (length ``m(s,s') >= 3``).

        Returns ``(word, position, s, s')`` or ``None`` when ``w`` is fully
        commutative.
        """
        graph = self.graph
        start = self.words[w]
        seen = {start}
        queue = deque([start])
        while queue:
            word = queue.popleft()
            n = len(word)
            for i in range(n - 2):
                a, b = word[i], word[i + 1]
                if a != b:
                    m = graph.bonds[a][b]
                    if m >= 3 and i + m <= n and _alternating(word, i, m):
                        return word, i, a, b
            for u in braid_neighbours(word, graph):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return None

    def normal_form(self, w: int) -> Word:
        """Reduced word for ``w`` from the coset tower ``W^(1) W^(2) ... W^(r)``.

        Only defined for graphs numbered as type A or B.  The factor
        ``w_i`` is the minimal-length representative of ``W(X_{i-1}) w_i``
        where ``X_{i-1}`` uses the first ``i - 1`` generators.
        """
        fam = self.graph.family()
        if fam is None:
            raise GraphError("normal form is only defined for types A and B")
        factors = self.coset_factors(w)
        return tuple(s for f in factors for s in self.words[f])

    def coset_factors(self, w: int) -> list[int]:
        if self.graph.family() is None:
            raise GraphError("coset tower is only defined for types A and B")
        factors = []
        x = w
        for i in range(self.rank, 0, -1):
            # strip left descents among the first i-1 generators
            rep = x
            changed = True
            while changed:
                changed = False
                for j in range(i - 1):
                    y = self.left[rep][j]
                    if self.length[y] < self.length[rep]:
                        rep = y
                        changed = True
                        break
            factors.append(rep)
            x = self.mul(x, self.inverse[rep])
        if x != 0:
            raise AssertionError("coset decomposition did not terminate at e")
        return factors[::-1]

    def coset_representatives(self, r: int) -> list[int]:
        """``W^(r)``: elements of the first-``r`` parabolic with no left descent among the first ``r-1``."""
        gens = set(range(r))
        out = []
        for w in range(self.size):
            if set(self.words[w]) <= gens and not any(
                    self.length[self.left[w][j]] < self.length[w] for j in range(r - 1)):
                out.append(w)
        return out

    def parse_noncommutative(self, w: int, s: int, word: Sequence[int] | None = None) -> ParseResult:
        """Locate ``s'`` and the factorisation of a reduced word of ``w``.

        ``w`` must be fully commutative with ``ws`` not.  By default the
        canonical word is parsed; any other reduced word may be supplied.
        """
        if not self.fc[w] or self.fc[self.right[w][s]]:
            raise ValueError("need w fully commutative and ws not fully commutative")
        word = tuple(self.words[w] if word is None else word)
        if self.element(word) != w or len(word) != self.length[w]:
            raise ValueError("supplied word is not a reduced word for w")
        g = self.graph
        j = max((k for k, t in enumerate(word) if not g.commute(s, t)), default=None)
        if j is None:
            raise ValueError("no letter of w fails to commute with s")
        sp = word[j]
        m = g.m(s, sp)
        i = max((k for k in range(j) if word[k] == s), default=None)
        if i is None:
            raise ValueError("parse failed: no occurrence of s before s'")
        if m == 3:
            res = ParseResult(1, s, sp, word, (i, j))
        elif m == 4:
            k = max((k for k in range(i) if word[k] == sp), default=None)
            if k is None:
                raise ValueError("parse failed: no occurrence of s' before s")
            res = ParseResult(2, s, sp, word, (k, i, j))
        else:
            raise ValueError(f"bond order {m} is outside the parse lemma")
        if not _parse_conditions_hold(res, g):
            raise ValueError("parse failed: commutation conditions violated")
        return res


def _parse_conditions_hold(res: ParseResult, g: CoxeterGraph) -> bool:
    s, sp = res.s, res.s_prime
    if res.case == 1:
        _, w2, w3 = res.pieces
        return all(g.commute(s, t) for t in w2 + w3)
    _, w2, w3, w4 = res.pieces
    return (all(g.commute(s, t) for t in w3 + w4)
            and all(g.commute(sp, t) for t in w2 + w3))


def _parse_word(text: str, rank: int) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return ()
    letters = re.findall(r"s?(\d+)", text)
    word = tuple(int(x) - 1 for x in letters)
    if any(not 0 <= s < rank for s in word):
        raise ValueError(f"word {text!r} uses a generator outside 1..{rank}")
    return word


def enumerate_group(graph: CoxeterGraph, cap: int = 100_000) -> GroupTable:
    """Enumerate ``W(graph)`` breadth-first by length.

    Only three length levels of braid classes are held at a time.  Raises
    :class:`GroupTooLarge` once more than ``cap`` elements have been found.
    """
    r = graph.rank
    # level data: list of (canonical word, braid class)
    prev_index: dict[Word, int] = {}
    cur_index: dict[Word, int] = {(): 0}
    cur_level = [0]
    canon: list[Word] = [()]
    classes: dict[int, frozenset[Word]] = {0: frozenset({()})}
    right: list[list[int]] = [[-1] * r]
    fc: list[bool] = [True]
    while cur_level:
        next_index: dict[Word, int] = {}
        next_level: list[int] = []
        for w in cur_level:
            cw = canon[w]
            cls = classes[w]
            for s in range(r):
                cand = cw + (s,)
                if cand in next_index:
                    right[w][s] = next_index[cand]
                    continue
                desc = next((u for u in cls if u and u[-1] == s), None)
                if desc is not None:
                    right[w][s] = prev_index[desc[:-1]]
                    continue
                new_cls = braid_class(cand, graph)
                nid = len(canon)
                if nid >= cap:
                    raise GroupTooLarge(f"group has more than {cap} elements")
                canon.append(min(new_cls))
                classes[nid] = frozenset(new_cls)
                right.append([-1] * r)
                fc.append(not any(_has_long_braid(u, graph) for u in new_cls))
                for u in new_cls:
                    next_index[u] = nid
                next_level.append(nid)
                right[w][s] = nid
        for w in cur_level:
            del classes[w]
        prev_index, cur_index, cur_level = cur_index, next_index, next_level
    order = sorted(range(len(canon)), key=lambda i: (len(canon[i]), canon[i]))
    pos = {old: new for new, old in enumerate(order)}
    words = [canon[i] for i in order]
    new_right = [tuple(pos[x] for x in right[i]) for i in order]
    new_fc = [fc[i] for i in order]
    return GroupTable(graph, words, new_right, new_fc)
