"""Ordered Bratteli diagrams as immutable graded multigraphs.

A diagram is a sequence of levels; level 0 holds the single root vertex.
Every vertex at level n >= 1 carries an ordered in-edge list, each entry
being the index of the edge's source vertex at level n - 1.  The 1-based
position of an entry in that list is the edge's *ordinal*; parallel
edges are simply repeated entries.  An optional repeat declaration makes
the level structure eventually periodic, which is how infinite diagrams
are represented here.

All ordering in this package derives from a single comparison rule:
paths into a common vertex are compared ordinal-by-ordinal starting at
the deepest edge and moving up toward the root, the first disagreement
deciding.  Telescoping, tower ranking and the successor machinery in
``vershik`` all share this rule.

Levels and vertices are 0-indexed; ordinals and tower ranks are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


@dataclass(frozen=True)
class RepeatSpec:
    """Levels repeat with the given period from ``from_level`` onward."""

    from_level: int
    period: int


class Level:
    """One level of a diagram: an ordered in-edge list per vertex.

    ``in_edges[v]`` lists the source vertex indices (at the previous
    level) of the in-edges of vertex ``v``; the entry at position j is
    the edge with ordinal j + 1.  The root level has a single vertex
    with an empty list.
    """

    __slots__ = ("in_edges",)

    def __init__(self, in_edges: Iterable[Iterable[int]]):
        self.in_edges = tuple(tuple(int(s) for s in lst) for lst in in_edges)
        if not self.in_edges:
            raise ValueError("a level needs at least one vertex")

    @property
    def vertex_count(self) -> int:
        return len(self.in_edges)

    def in_list(self, vertex: int) -> tuple[int, ...]:
        return self.in_edges[vertex]

    def _data(self):
        return self.in_edges

    def __eq__(self, other):
        return isinstance(other, Level) and self._data() == other._data()

    def __hash__(self):
        return hash(self._data())

    def __repr__(self):
        return f"Level({list(map(list, self.in_edges))!r})"


ROOT_LEVEL = Level([()])


class OrderedDiagram:
    """An ordered Bratteli diagram, immutable and hashable.

    ``levels`` is the stored finite part.  With a ``repeat`` declaration
    the diagram extends to infinitely many levels: level n resolves to
    ``from_level + (n - from_level) % period`` for n past the stored
    range (the repeating block itself must be stored in full).
    """

    __slots__ = ("levels", "repeat")

    def __init__(self, levels: Iterable, repeat: Optional[RepeatSpec | tuple] = None):
        self.levels = tuple(
            lv if isinstance(lv, Level) else Level(lv) for lv in levels
        )
        if not self.levels:
            raise ValueError("a diagram needs at least the root level")
        if repeat is not None and not isinstance(repeat, RepeatSpec):
            repeat = RepeatSpec(*repeat)
        self.repeat = repeat
        if repeat is not None:
            if repeat.from_level < 1 or repeat.period < 1:
                raise ValueError("repeat needs from_level >= 1 and period >= 1")
            if repeat.from_level + repeat.period - 1 > self.last_level:
                raise ValueError("repeating block extends past the stored levels")

    @property
    def last_level(self) -> int:
        return len(self.levels) - 1

    @property
    def is_repeating(self) -> bool:
        return self.repeat is not None

    def level_index(self, n: int) -> int:
        """Resolve level ``n`` to a stored index, following the repeat."""
        if n < 0:
            raise ValueError(f"level {n} is negative")
        if n <= self.last_level:
            return n
        if self.repeat is None:
            raise ValueError(f"level {n} is beyond the stored levels")
        f, p = self.repeat.from_level, self.repeat.period
        return f + (n - f) % p

    def level_at(self, n: int) -> Level:
        return self.levels[self.level_index(n)]

    def vertex_count(self, n: int) -> int:
        return self.level_at(n).vertex_count

    def in_list(self, n: int, vertex: int) -> tuple[int, ...]:
        lvl = self.level_at(n)
        if not 0 <= vertex < lvl.vertex_count:
            raise ValueError(f"vertex {vertex} out of range at level {n}")
        return lvl.in_edges[vertex]

    def in_degree(self, n: int, vertex: int) -> int:
        return len(self.in_list(n, vertex))

    def incidence(self, n: int) -> tuple[tuple[int, ...], ...]:
        """Incidence matrix of level ``n``: rows are level-n vertices,
        columns level-(n-1) vertices, entries edge multiplicities."""
        lvl = self.level_at(n)
        cols = self.vertex_count(n - 1)
        rows = []
        for v in range(lvl.vertex_count):
            row = [0] * cols
            for u in lvl.in_edges[v]:
                if 0 <= u < cols:
                    row[u] += 1
            rows.append(tuple(row))
        return tuple(rows)

    def finite_prefix(self, n: int) -> "OrderedDiagram":
        """Materialize levels 0..n as a finite diagram (repeat dropped)."""
        return OrderedDiagram([self.level_at(t) for t in range(n + 1)])

    def _data(self):
        return (self.levels, self.repeat)

    def __eq__(self, other):
        return isinstance(other, OrderedDiagram) and self._data() == other._data()

    def __hash__(self):
        return hash(self._data())

    def __repr__(self):
        tail = f", repeat={self.repeat!r}" if self.repeat else ""
        return f"OrderedDiagram({len(self.levels)} levels{tail})"


class FinitePath:
    """A root-to-vertex path, recorded as its range vertex plus the
    ordinal of the edge chosen at each level 1..n.

    The ordinal at level t indexes the in-edge list of the level-t
    vertex the path passes through; the traversed vertex sequence is
    recovered by walking down from ``(level, vertex)``.
    """

    __slots__ = ("level", "vertex", "ordinals")

    def __init__(self, level: int, vertex: int, ordinals: Iterable[int]):
        self.level = int(level)
        self.vertex = int(vertex)
        self.ordinals = tuple(int(o) for o in ordinals)
        if len(self.ordinals) != self.level:
            raise ValueError("a path needs exactly one ordinal per level 1..n")

    @classmethod
    def root(cls) -> "FinitePath":
        return cls(0, 0, ())

    def vertices(self, diagram: OrderedDiagram) -> tuple[int, ...]:
        """The vertex indices the path traverses, from level 0 to n.

        Raises ValueError if the path is not well-formed in ``diagram``.
        """
        verts = [0] * (self.level + 1)
        verts[self.level] = self.vertex
        if not 0 <= self.vertex < diagram.vertex_count(self.level):
            raise ValueError(
                f"vertex {self.vertex} out of range at level {self.level}"
            )
        for t in range(self.level, 0, -1):
            lst = diagram.in_list(t, verts[t])
            o = self.ordinals[t - 1]
            if not 1 <= o <= len(lst):
                raise ValueError(f"ordinal {o} out of range at level {t}")
            verts[t - 1] = lst[o - 1]
        return tuple(verts)

    def truncated(self, diagram: OrderedDiagram, k: int) -> "FinitePath":
        """The level-k truncation (the path's first k edges)."""
        if not 0 <= k <= self.level:
            raise ValueError(f"cannot truncate a level-{self.level} path to {k}")
        if k == self.level:
            return self
        return FinitePath(k, self.vertices(diagram)[k], self.ordinals[:k])

    def is_minimal(self) -> bool:
        return all(o == 1 for o in self.ordinals)

    def is_maximal(self, diagram: OrderedDiagram) -> bool:
        verts = self.vertices(diagram)
        return all(
            self.ordinals[t - 1] == diagram.in_degree(t, verts[t])
            for t in range(1, self.level + 1)
        )

    def _data(self):
        return (self.level, self.vertex, self.ordinals)

    def __eq__(self, other):
        return isinstance(other, FinitePath) and self._data() == other._data()

    def __hash__(self):
        return hash(self._data())

    def __repr__(self):
        return f"FinitePath(level={self.level}, vertex={self.vertex}, ordinals={self.ordinals})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation plus a few derived facts."""

    ok: bool
    rank: int
    has_ers: bool
    simple_up_to: int
    issues: tuple[str, ...]


def _heights(diagram: OrderedDiagram, level: int) -> list[list[int]]:
    """Per-level path counts: row n, entry v = number of root-to-(n, v) paths."""
    rows = [[1]]
    for n in range(1, level + 1):
        prev = rows[-1]
        lvl = diagram.level_at(n)
        rows.append(
            [sum(prev[u] for u in lvl.in_edges[v]) for v in range(lvl.vertex_count)]
        )
    return rows


def count_paths(diagram: OrderedDiagram, level: int, vertex: int) -> int:
    """Number of root-to-vertex paths (the height of the vertex's tower).

    Equals the (vertex, root) entry of the product of the incidence
    matrices up to ``level``.
    """
    if level < 0:
        raise ValueError(f"level {level} is negative")
    if not 0 <= vertex < diagram.vertex_count(level):
        raise ValueError(f"vertex {vertex} out of range at level {level}")
    return _heights(diagram, level)[level][vertex]


def path_rank(diagram: OrderedDiagram, path: FinitePath) -> int:
    """1-based position of ``path`` among all paths into its range
    vertex, under the deepest-edge-most-significant order."""
    verts = path.vertices(diagram)
    rows = _heights(diagram, path.level)
    rank = 1
    for t in range(1, path.level + 1):
        lst = diagram.in_list(t, verts[t])
        prev = rows[t - 1]
        rank += sum(prev[lst[j]] for j in range(path.ordinals[t - 1] - 1))
    return rank


def path_unrank(
    diagram: OrderedDiagram, level: int, vertex: int, position: int
) -> FinitePath:
    """Two-sided inverse of :func:`path_rank` on the tower of (level, vertex)."""
    total = count_paths(diagram, level, vertex)
    if not 1 <= position <= total:
        raise ValueError(f"position {position} out of range 1..{total}")
    rows = _heights(diagram, level)
    ordinals = [0] * level
    v = vertex
    pos = position
    for t in range(level, 0, -1):
        lst = diagram.in_list(t, v)
        prev = rows[t - 1]
        for j, u in enumerate(lst):
            h = prev[u]
            if pos <= h:
                ordinals[t - 1] = j + 1
                v = u
                break
            pos -= h
    return FinitePath(level, vertex, ordinals)


def iter_tower(
    diagram: OrderedDiagram, level: int, vertex: int
) -> Iterator[FinitePath]:
    """All paths into (level, vertex), yielded in rank order."""
    if not 0 <= vertex < diagram.vertex_count(level):
        raise ValueError(f"vertex {vertex} out of range at level {level}")

    def rec(n: int, v: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for j, u in enumerate(diagram.in_list(n, v), start=1):
            for stem in rec(n - 1, u):
                yield stem + (j,)

    for tup in rec(level, vertex):
        yield FinitePath(level, vertex, tup)


def telescope(diagram: OrderedDiagram, cut_levels: Sequence[int]) -> OrderedDiagram:
    """Collapse the diagram to the given cut levels.

    The new level t holds the vertices of old level ``cut_levels[t]``;
    its in-edges are the composite paths from the previous cut, listed
    in the induced order (deepest original edge most significant), so
    the new incidence matrix is the product of the old ones.  Cuts may
    run past the stored levels of a repeating diagram; the result is
    always a finite diagram.
    """
    cuts = [int(c) for c in cut_levels]
    if not cuts or cuts[0] != 0:
        raise ValueError("cut levels must start at 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut levels must be strictly increasing")
    for c in cuts:
        diagram.level_index(c)  # raises if unavailable

    new_levels = [ROOT_LEVEL]
    for lo, hi in zip(cuts, cuts[1:]):
        memo: dict[tuple[int, int], tuple[int, ...]] = {}

        def sources(b: int, v: int, lo=lo) -> tuple[int, ...]:
            # Source vertices (at level lo) of the composite paths into
            # (b, v), in induced order: iterate the deepest edge in
            # ordinal order, recursing on the remaining upper part.
            if b == lo:
                return (v,)
            got = memo.get((b, v))
            if got is None:
                parts: list[int] = []
                for u in diagram.in_list(b, v):
                    parts.extend(sources(b - 1, u))
                got = memo[(b, v)] = tuple(parts)
            return got

        lvl = diagram.level_at(hi)
        new_levels.append(Level(tuple(sources(hi, v) for v in range(lvl.vertex_count))))
    return OrderedDiagram(new_levels)


def _mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [
        [sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def _all_positive(m) -> bool:
    return all(e > 0 for row in m for e in row)


def _simple_up_to(diagram: OrderedDiagram, budget: int) -> int:
    """Deepest level reached by a greedy chain of cuts whose composite
    incidence matrices are entrywise positive."""
    reached = 0
    k = 0
    while k < budget:
        prod = None
        found = None
        for l in range(k + 1, budget + 1):
            m = [list(row) for row in diagram.incidence(l)]
            prod = m if prod is None else _mat_mul(m, prod)
            if _all_positive(prod):
                found = l
                break
        if found is None:
            break
        reached = k = found
    return reached


def validate_and_profile(
    diagram: OrderedDiagram, *, simplicity_budget: Optional[int] = None
) -> ValidationReport:
    """Check every structural invariant and report derived facts.

    Violations are reported, not raised.  ``rank`` is the maximum
    vertex count over levels >= 1, ``has_ers`` says whether every level
    has constant in-degrees (equal row sums), and ``simple_up_to`` is
    the deepest level for which a telescoping with entrywise-positive
    incidence matrices was exhibited (0 when none was found).
    """
    issues: list[str] = []
    if diagram.vertex_count(0) != 1:
        issues.append("level 0 must have exactly one vertex")
    if diagram.levels[0].in_edges and diagram.levels[0].in_edges[0]:
        issues.append("level 0, vertex 0: root must not have in-edges")

    last = diagram.last_level
    for n in range(1, last + 1):
        lvl = diagram.levels[n]
        prev_count = diagram.vertex_count(n - 1)
        for v in range(lvl.vertex_count):
            lst = lvl.in_edges[v]
            if not lst:
                issues.append(f"level {n}, vertex {v}: vertex without in-edges")
            for o, u in enumerate(lst, start=1):
                if not 0 <= u < prev_count:
                    issues.append(
                        f"level {n}, vertex {v}, ordinal {o}: "
                        f"edge source {u} out of range"
                    )

    # Every vertex must feed at least one edge of the next level; for a
    # repeating diagram the last stored level wraps into the block.
    s_last = last if diagram.is_repeating else last - 1
    for n in range(0, s_last + 1):
        try:
            nxt = diagram.level_at(n + 1)
        except ValueError:
            break
        used = {u for lst in nxt.in_edges for u in lst}
        for v in range(diagram.vertex_count(n)):
            if v not in used:
                issues.append(f"level {n}, vertex {v}: vertex is never a source")

    rep = diagram.repeat
    if rep is not None:
        f, p = rep.from_level, rep.period
        for t in range(f, last + 1):
            if diagram.levels[t] != diagram.levels[f + (t - f) % p]:
                issues.append(f"level {t}: repeat declaration inconsistent")
        block_first = diagram.levels[f]
        wrap_count = diagram.levels[f + p - 1].vertex_count
        for v in range(block_first.vertex_count):
            for o, u in enumerate(block_first.in_edges[v], start=1):
                if not 0 <= u < wrap_count:
                    issues.append(
                        f"level {f}, vertex {v}, ordinal {o}: repeating block "
                        f"does not wrap (source {u} invalid at block end)"
                    )

    rank = max(
        (diagram.levels[n].vertex_count for n in range(1, last + 1)), default=0
    )
    has_ers = all(
        len({len(lst) for lst in diagram.levels[n].in_edges}) == 1
        for n in range(1, last + 1)
    )

    if simplicity_budget is None:
        if diagram.is_repeating:
            f, p = diagram.repeat.from_level, diagram.repeat.period
            simplicity_budget = f + p * (max(1, (rank - 1) ** 2) + 1)
        else:
            simplicity_budget = last
    structural = not issues
    simple_up_to = _simple_up_to(diagram, simplicity_budget) if structural else 0

    return ValidationReport(
        ok=structural,
        rank=rank,
        has_ers=has_ers,
        simple_up_to=simple_up_to,
        issues=tuple(issues),
    )
