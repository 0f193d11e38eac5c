"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's ranking code: paths
are enumerated by plain DFS and sorted with an explicit key that reads
ordinals from the deepest edge upward.
"""

import random

from bratteli.diagram import FinitePath, OrderedDiagram


# -- reference diagrams ------------------------------------------------------

def dyadic(levels=4, repeating=False):
    """One vertex per level, two parallel edges at every level."""
    lv = [[()]] + [[(0, 0)] for _ in range(levels)]
    return OrderedDiagram(lv, repeat=(1, 1) if repeating else None)


def rank1(edge_counts, repeating=False):
    """Single tower per level with the given in-degrees."""
    lv = [[()]] + [[tuple([0] * c)] for c in edge_counts]
    rep = None
    if repeating:
        if len(set(edge_counts)) != 1:
            raise ValueError("repeating rank-1 fixture needs constant counts")
        rep = (1, 1)
    return OrderedDiagram(lv, repeat=rep)


def fibonacci(repeating=True, extra_levels=0):
    """Stationary two-vertex diagram: A draws from (A, B), B from (A,)."""
    lv = [[()], [(0,), (0,)]] + [[(0, 1), (0,)] for _ in range(1 + extra_levels)]
    return OrderedDiagram(lv, repeat=(2, 1) if repeating else None)


def two_tower_periodic():
    """Finite rank-2 diagram whose level-2 tower reads (a, b) * 4.

    Level 1 has vertices a-side (0) and b-side (1), one root edge each;
    level 2 has one vertex with eight in-edges alternating 0, 1.
    """
    return OrderedDiagram([[()], [(0,), (0,)], [(0, 1, 0, 1, 0, 1, 0, 1)]])


def alternating_towers(letters, block_repeats, top_fanout=3):
    """Rank-``letters`` diagram whose deep towers all read the periodic
    word 0 1 .. letters-1 repeated.

    Level 1 has one vertex per letter (one root edge each); level 2 has
    ``letters`` identical vertices whose in-lists cycle through the
    letters ``block_repeats`` times; level 3 is one vertex drawing from
    every level-2 vertex ``top_fanout`` times.
    """
    base = tuple(range(letters)) * block_repeats
    lv = [
        [()],
        [(0,)] * letters,
        [base] * letters,
        [tuple(range(letters)) * top_fanout],
    ]
    return OrderedDiagram(lv)


def fig_two_vertex_example():
    """Two level-1 vertices a, b; one level-2 vertex with eight in-edges
    alternating a, b (tower word abababab, co-ranging gap 4)."""
    return two_tower_periodic()


# -- independent oracles -----------------------------------------------------

def brute_paths(diagram, level, vertex):
    """Every root-to-(level, vertex) path, by DFS, in no particular order."""
    out = []

    def walk(n, v, acc):
        if n == 0:
            out.append(FinitePath(level, vertex, acc[::-1]))
            return
        for j, u in enumerate(diagram.in_list(n, v), start=1):
            walk(n - 1, u, acc + [j])

    walk(level, vertex, [])
    return out


def brute_sorted(diagram, level, vertex):
    """Tower in rank order, certified by an explicit sort: compare
    ordinal tuples reversed, so the deepest edge is most significant."""
    return sorted(
        brute_paths(diagram, level, vertex),
        key=lambda p: tuple(reversed(p.ordinals)),
    )


def substitution_word(rules, seed, length):
    """Iterate a substitution until the word is at least ``length`` long."""
    word = [seed]
    while len(word) < length:
        word = [s for c in word for s in rules[c]]
        if word[: len(word)] == [seed] and len(word) == 1:
            raise ValueError("substitution does not grow")
    return word[:length]


def factors(word, length):
    return {tuple(word[i : i + length]) for i in range(len(word) - length + 1)}


# -- random diagram generator ------------------------------------------------

def random_diagram(rng: random.Random, max_levels=4, max_vertices=4, max_degree=4):
    """A seeded valid ordered diagram of modest size.

    Every vertex gets 1..max_degree in-edges; afterwards each previous-
    level vertex missing from the sources is patched into a random list
    so the diagram stays valid.
    """
    levels = [[()]]
    n_levels = rng.randint(1, max_levels)
    prev_count = 1
    for _ in range(n_levels):
        count = rng.randint(1, max_vertices)
        lists = [
            [rng.randrange(prev_count) for _ in range(rng.randint(1, max_degree))]
            for _ in range(count)
        ]
        used = {u for lst in lists for u in lst}
        for missing in range(prev_count):
            if missing not in used:
                target = rng.randrange(count)
                lists[target].insert(
                    rng.randint(0, len(lists[target])), missing
                )
        levels.append([tuple(lst) for lst in lists])
        prev_count = count
    return OrderedDiagram(levels)


def random_cuts(rng: random.Random, last_level):
    """A strictly increasing cut set starting at 0."""
    pool = list(range(1, last_level + 1))
    take = rng.randint(1, len(pool))
    return [0] + sorted(rng.sample(pool, take))
