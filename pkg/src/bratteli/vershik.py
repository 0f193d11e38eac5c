"""The lexicographic successor map and windowed orbit computations.

A tower (the set of paths into one vertex) is swept in rank order by
the successor map: find the shallowest non-maximal edge, bump its
ordinal, and refill everything below with the minimal path into the new
source.  Points of the infinite path space are approximated by a base
path plus a tail: nothing (sweeps confined to the base tower), an
explicit list of deeper edges, or an eventually periodic pattern (only
meaningful on repeating diagrams, but then the orbit budget is
unbounded).

Rolling over the top of the known region is an explicit outcome, not a
wrap: ``successor_path`` returns ``None`` on the maximal path of a
tower, and ``step_point`` raises :class:`TailExhausted` (or
:class:`ExtremePointError` when an eventually periodic tail proves the
point is the unique extreme path).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Union

from .diagram import FinitePath, OrderedDiagram


class TailExhausted(Exception):
    """A sweep rolled past every edge the point specifies."""


class ExtremePointError(Exception):
    """The point is the all-minimal or all-maximal path; its image under
    the step is not determined by finite data."""


@dataclass(frozen=True)
class ExplicitTail:
    """Known continuation edges, one (vertex, ordinal) per level past the base."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            tuple((int(v), int(o)) for v, o in self.entries),
        )


@dataclass(frozen=True)
class RepeatingTail:
    """Eventually periodic continuation: ``prefix`` entries, then
    ``cycle`` repeated forever.  Stored in canonical form (primitive
    cycle, shortest prefix) so equal tails compare equal."""

    prefix: tuple[tuple[int, int], ...]
    cycle: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prefix = tuple((int(v), int(o)) for v, o in self.prefix)
        cycle = tuple((int(v), int(o)) for v, o in self.cycle)
        if not cycle:
            raise ValueError("repeating tail needs a nonempty cycle")
        for d in range(1, len(cycle) + 1):
            if len(cycle) % d == 0 and cycle == cycle[:d] * (len(cycle) // d):
                cycle = cycle[:d]
                break
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)


Tail = Union[None, ExplicitTail, RepeatingTail]


class PointApprox:
    """A point of the path space known to finite precision.

    ``base`` fixes the first N edges; ``tail`` extends the knowledge
    (see module docstring).  Immutable; stepping returns new values.
    """

    __slots__ = ("base", "tail")

    def __init__(self, base: FinitePath, tail: Tail = None):
        if not isinstance(base, FinitePath):
            raise TypeError("base must be a FinitePath")
        self.base = base
        self.tail = tail

    @property
    def known_depth(self) -> Optional[int]:
        """Deepest specified level; None means unbounded."""
        if self.tail is None:
            return self.base.level
        if isinstance(self.tail, ExplicitTail):
            return self.base.level + len(self.tail.entries)
        return None

    def tail_entry(self, i: int) -> tuple[int, int]:
        """(vertex, ordinal) of tail level ``base.level + i`` (i >= 1)."""
        if self.tail is None:
            raise TailExhausted(f"point specifies no tail (level {self.base.level + i})")
        if isinstance(self.tail, ExplicitTail):
            if i > len(self.tail.entries):
                raise TailExhausted(
                    f"tail ends at level {self.base.level + len(self.tail.entries)}"
                )
            return self.tail.entries[i - 1]
        s = len(self.tail.prefix)
        if i <= s:
            return self.tail.prefix[i - 1]
        return self.tail.cycle[(i - s - 1) % len(self.tail.cycle)]

    def level_view(self, diagram: OrderedDiagram, depth: int) -> list[tuple[int, int]]:
        """(vertex, ordinal) per level 1..depth, validated against the diagram."""
        verts = self.base.vertices(diagram)
        view = [
            (verts[t], self.base.ordinals[t - 1])
            for t in range(1, min(depth, self.base.level) + 1)
        ]
        prev = verts[-1]
        for i in range(1, depth - self.base.level + 1):
            v, o = self.tail_entry(i)
            level = self.base.level + i
            lst = diagram.in_list(level, v)
            if not 1 <= o <= len(lst):
                raise ValueError(f"tail ordinal {o} out of range at level {level}")
            if lst[o - 1] != prev:
                raise ValueError(
                    f"tail edge at level {level} does not continue the path"
                )
            view.append((v, o))
            prev = v
        return view

    def path_to(self, diagram: OrderedDiagram, level: int) -> FinitePath:
        """Materialize the point as a path down to ``level``."""
        if level <= self.base.level:
            return self.base.truncated(diagram, level)
        view = self.level_view(diagram, level)
        return FinitePath(level, view[-1][0], tuple(o for _, o in view))

    def truncated(self, diagram: OrderedDiagram, k: int) -> FinitePath:
        return self.path_to(diagram, k)

    def _data(self):
        return (self.base, self.tail)

    def __eq__(self, other):
        return isinstance(other, PointApprox) and self._data() == other._data()

    def __hash__(self):
        return hash(self._data())

    def __repr__(self):
        return f"PointApprox(base={self.base!r}, tail={self.tail!r})"


def extreme_path(
    diagram: OrderedDiagram, level: int, vertex: int, which: str = "min"
) -> FinitePath:
    """The unique all-minimal (or all-maximal) path into (level, vertex)."""
    if which not in ("min", "max"):
        raise ValueError("which must be 'min' or 'max'")
    if not 0 <= vertex < diagram.vertex_count(level):
        raise ValueError(f"vertex {vertex} out of range at level {level}")
    ordinals = [0] * level
    v = vertex
    for t in range(level, 0, -1):
        lst = diagram.in_list(t, v)
        o = 1 if which == "min" else len(lst)
        ordinals[t - 1] = o
        v = lst[o - 1]
    return FinitePath(level, vertex, ordinals)


def successor_path(diagram: OrderedDiagram, path: FinitePath) -> Optional[FinitePath]:
    """Next path of the tower in rank order; None when ``path`` is maximal."""
    verts = path.vertices(diagram)
    for t in range(1, path.level + 1):
        lst = diagram.in_list(t, verts[t])
        o = path.ordinals[t - 1]
        if o < len(lst):
            refill = extreme_path(diagram, t - 1, lst[o], "min")
            return FinitePath(
                path.level,
                path.vertex,
                refill.ordinals + (o + 1,) + path.ordinals[t:],
            )
    return None


def predecessor_path(diagram: OrderedDiagram, path: FinitePath) -> Optional[FinitePath]:
    """Inverse of :func:`successor_path`; None on the minimal path."""
    verts = path.vertices(diagram)
    for t in range(1, path.level + 1):
        o = path.ordinals[t - 1]
        if o > 1:
            lst = diagram.in_list(t, verts[t])
            refill = extreme_path(diagram, t - 1, lst[o - 2], "max")
            return FinitePath(
                path.level,
                path.vertex,
                refill.ordinals + (o - 1,) + path.ordinals[t:],
            )
    return None


def _scan_bound(diagram: OrderedDiagram, x: PointApprox) -> int:
    """Levels that decide whether any specified edge is non-extreme."""
    if x.tail is None:
        return x.base.level
    if isinstance(x.tail, ExplicitTail):
        return x.base.level + len(x.tail.entries)
    c = len(x.tail.cycle)
    p = diagram.repeat.period if diagram.is_repeating else 1
    span = c * p // gcd(c, p)
    return x.base.level + len(x.tail.prefix) + span


def step_point(
    diagram: OrderedDiagram, x: PointApprox, direction: str = "fwd"
) -> PointApprox:
    """One application of the successor map (or its inverse) to a point.

    The result is cofinal with ``x``: every edge strictly above the
    incremented level is unchanged.  Raises :class:`TailExhausted` when
    the sweep rolls past the specified edges, or
    :class:`ExtremePointError` when a repeating tail shows the point is
    the unique extreme path of its kind.
    """
    if direction not in ("fwd", "back"):
        raise ValueError("direction must be 'fwd' or 'back'")
    fwd = direction == "fwd"
    bound = _scan_bound(diagram, x)
    view = x.level_view(diagram, bound)

    k = None
    for t in range(1, bound + 1):
        v, o = view[t - 1]
        limit = diagram.in_degree(t, v) if fwd else 1
        if (o < limit) if fwd else (o > limit):
            k = t
            break
    if k is None:
        if isinstance(x.tail, RepeatingTail):
            raise ExtremePointError(
                f"point is the {'maximal' if fwd else 'minimal'} path"
            )
        raise TailExhausted("sweep rolled past every specified edge")

    vk, ok = view[k - 1]
    new_o = ok + 1 if fwd else ok - 1
    new_src = diagram.in_list(k, vk)[new_o - 1]
    refill = extreme_path(diagram, k - 1, new_src, "min" if fwd else "max")
    refill_verts = refill.vertices(diagram)

    n = x.base.level
    if k <= n:
        base = FinitePath(
            n,
            x.base.vertex,
            refill.ordinals + (new_o,) + x.base.ordinals[k:],
        )
        return PointApprox(base, x.tail)

    base = FinitePath(n, refill_verts[n], refill.ordinals[:n])
    new_entries = tuple(
        (refill_verts[t], refill.ordinals[t - 1]) for t in range(n + 1, k)
    ) + ((vk, new_o),)
    j = k - n
    if isinstance(x.tail, ExplicitTail):
        tail: Tail = ExplicitTail(new_entries + x.tail.entries[j:])
    else:
        s = len(x.tail.prefix)
        if j <= s:
            tail = RepeatingTail(new_entries + x.tail.prefix[j:], x.tail.cycle)
        else:
            c = len(x.tail.cycle)
            phi = (j - s) % c
            tail = RepeatingTail(new_entries, x.tail.cycle[phi:] + x.tail.cycle[:phi])
    return PointApprox(base, tail)


def orbit_window(
    diagram: OrderedDiagram,
    x: PointApprox,
    k: int,
    window: tuple[int, int],
) -> list[FinitePath]:
    """Level-k truncations of the point's iterates over ``window``.

    The entry for offset m is the truncation of the m-th image of ``x``
    (negative offsets use the inverse map); offset 0 is ``x`` itself.
    """
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError("window must satisfy lo <= hi")
    if k > x.base.level:
        raise ValueError(
            f"truncation level {k} exceeds the point's base level {x.base.level}"
        )
    readings: dict[int, FinitePath] = {}
    if lo <= 0 <= hi:
        readings[0] = x.truncated(diagram, k)
    cur = x
    for m in range(1, hi + 1):
        cur = step_point(diagram, cur, "fwd")
        if m >= lo:
            readings[m] = cur.truncated(diagram, k)
    cur = x
    for m in range(-1, lo - 1, -1):
        cur = step_point(diagram, cur, "back")
        if m <= hi:
            readings[m] = cur.truncated(diagram, k)
    return [readings[m] for m in range(lo, hi + 1)]


def supported_window(diagram: OrderedDiagram, x: PointApprox) -> tuple[Optional[int], Optional[int]]:
    """Offsets the point can certainly sweep: in-tower slack at the
    known depth, or unbounded (None, None) for repeating tails."""
    depth = x.known_depth
    if depth is None:
        return (None, None)
    from .diagram import count_paths, path_rank

    p = x.path_to(diagram, depth)
    r = path_rank(diagram, p)
    h = count_paths(diagram, depth, p.vertex)
    return (-(r - 1), h - r)


def path_distance(diagram: OrderedDiagram, a, b) -> float:
    """1/n where n is the first level at which the two paths or points
    take different edges; 0.0 when the known parts coincide.

    Test utility; not used by the algorithms.
    """

    def edges(obj):
        if isinstance(obj, PointApprox):
            depth = obj.known_depth
            depth = obj.base.level if depth is None else depth
            return obj.level_view(diagram, depth)
        verts = obj.vertices(diagram)
        return [(verts[t], obj.ordinals[t - 1]) for t in range(1, obj.level + 1)]

    ea, eb = edges(a), edges(b)
    for t in range(1, min(len(ea), len(eb)) + 1):
        if ea[t - 1] != eb[t - 1]:
            return 1.0 / t
    return 0.0


# -- proper ordering and extreme threads --------------------------------------

@dataclass(frozen=True)
class ProperOrderingReport:
    """Counts of infinite all-minimal / all-maximal paths.

    ``verdict`` is "yes"/"no" for repeating diagrams (where the counts
    are exact) and "unknown" for finite ones, where the counts are the
    upper bounds visible at the deepest stored level.
    """

    verdict: str
    min_count: int
    max_count: int
    checked_level: Optional[int]

    @property
    def is_proper(self) -> bool:
        return self.verdict == "yes"


def _extreme_sources(diagram: OrderedDiagram, level: int, which: str) -> list[int]:
    lvl = diagram.level_at(level)
    if which == "min":
        return [lst[0] for lst in lvl.in_edges]
    return [lst[-1] for lst in lvl.in_edges]


def extremes_share_source(diagram: OrderedDiagram, level: int, which: str) -> bool:
    """Do all minimal (or maximal) edges at ``level`` have one source?"""
    return len(set(_extreme_sources(diagram, level, which))) == 1


def _one_period_map(diagram: OrderedDiagram, which: str) -> list[int]:
    """Composite extreme-source map across one repeating block, read as
    an endofunction on the block-end vertex set."""
    f, p = diagram.repeat.from_level, diagram.repeat.period
    anchor = f + p - 1
    count = diagram.vertex_count(anchor)
    if diagram.vertex_count(f - 1) != count:
        raise ValueError("repeating block does not wrap consistently")
    out = []
    for w in range(count):
        v = w
        for level in range(anchor, f - 1, -1):
            v = _extreme_sources(diagram, level, which)[v]
        out.append(v)
    return out


def _eventual_image(mapping: list[int]) -> set[int]:
    img = set(range(len(mapping)))
    nxt = {mapping[v] for v in img}
    while nxt != img:
        img = nxt
        nxt = {mapping[v] for v in img}
    return img


class ExtremeThread:
    """One infinite all-minimal or all-maximal path of a repeating
    diagram, anchored by its vertex at the first block end."""

    def __init__(self, diagram: OrderedDiagram, which: str, anchor_vertex: int):
        self.diagram = diagram
        self.which = which
        self.anchor = diagram.repeat.from_level + diagram.repeat.period - 1
        g = _one_period_map(diagram, which)
        core = _eventual_image(g)
        if anchor_vertex not in core:
            raise ValueError(f"vertex {anchor_vertex} carries no infinite {which} path")
        inverse = {g[v]: v for v in core}
        cycle = [anchor_vertex]
        while True:
            nxt = inverse[cycle[-1]]
            if nxt == anchor_vertex:
                break
            cycle.append(nxt)
        self._block_cycle = tuple(cycle)

    @property
    def level_period(self) -> int:
        return self.diagram.repeat.period * len(self._block_cycle)

    def vertex_at(self, level: int) -> int:
        d = self.diagram
        p = d.repeat.period
        if level >= self.anchor:
            steps = -(-(level - self.anchor) // p)  # ceil
        else:
            steps = 0
        v = self._block_cycle[steps % len(self._block_cycle)]
        for t in range(self.anchor + steps * p, level, -1):
            v = _extreme_sources(d, t, self.which)[v]
        return v

    def tail_from(self, level: int) -> RepeatingTail:
        """The thread's continuation as an eventually periodic tail."""
        d = self.diagram
        f = d.repeat.from_level
        q = self.level_period

        def entry(t):
            v = self.vertex_at(t)
            o = 1 if self.which == "min" else d.in_degree(t, v)
            return (v, o)

        cycle_start = max(level + 1, f)
        prefix = tuple(entry(t) for t in range(level + 1, cycle_start))
        cycle = tuple(entry(t) for t in range(cycle_start, cycle_start + q))
        return RepeatingTail(prefix, cycle)

    def point_at(self, level: int) -> PointApprox:
        base = extreme_path(self.diagram, level, self.vertex_at(level), self.which)
        return PointApprox(base, self.tail_from(level))


def extreme_threads(diagram: OrderedDiagram, which: str) -> tuple[ExtremeThread, ...]:
    """All infinite all-minimal (or all-maximal) paths, one per element
    of the eventual image of the composed extreme-source maps."""
    if not diagram.is_repeating:
        raise ValueError("extreme threads are defined for repeating diagrams")
    core = sorted(_eventual_image(_one_period_map(diagram, which)))
    return tuple(ExtremeThread(diagram, which, v) for v in core)


def is_properly_ordered(diagram: OrderedDiagram) -> ProperOrderingReport:
    """Count the infinite extreme paths.

    For a repeating diagram the count of all-minimal paths equals the
    size of the eventual image of the minimal-source maps composed
    across one period (likewise maximal); the verdict is "yes" exactly
    when both counts are 1.  Finite diagrams get "unknown" with the
    upper bounds observable at the last stored level.
    """
    if diagram.is_repeating:
        cmin = len(_eventual_image(_one_period_map(diagram, "min")))
        cmax = len(_eventual_image(_one_period_map(diagram, "max")))
        verdict = "yes" if cmin == 1 and cmax == 1 else "no"
        return ProperOrderingReport(verdict, cmin, cmax, None)

    last = diagram.last_level
    counts = []
    for which in ("min", "max"):
        img = set(range(diagram.vertex_count(last)))
        for level in range(last, 1, -1):
            srcs = _extreme_sources(diagram, level, which)
            img = {srcs[v] for v in img}
        counts.append(len(img))
    return ProperOrderingReport("unknown", counts[0], counts[1], last)
