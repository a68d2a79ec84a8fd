"""Bisected vertex levelings of plane graphs.

A leveling stacks the vertices of a connected plane graph on distinct
heights so that every edge crosses each intermediate height line exactly
once.  Planarity then forces, at each vertex, the descending edge ends
and the ascending ones into two contiguous runs of its rotation, which is
the "bisected" property.  The search works with an explicit frontier: the
left-to-right order of edges crossing the line above the strips built so
far.  Reading conventions are fixed by the plane geometry: descending
ends taken counterclockwise meet the line left to right, ascending ends
do so clockwise.

Monogons cannot appear in a leveling (a self-loop crosses no line), so
they are stripped into reattachment records first and drawn back inside
their vertex's strip later.
"""

from dataclasses import dataclass

from .errors import (
    DisconnectedError,
    LevelingNotFound,
    TricrossError,
    UnsupportedDiagramError,
)

__all__ = [
    "PlaneGraph",
    "MonogonRecord",
    "Strip",
    "Leveling",
    "strip_monogons",
    "bisect_level",
    "rotate_leveling",
    "classify_strips",
    "StripTag",
    "check_leveling",
]


class PlaneGraph:
    """Vertices carrying counterclockwise slot rotations, edges on slots.

    Slot labels are arbitrary integers; only their cyclic order matters.
    Self-loops are refused: strip them into monogon records first.
    """

    __slots__ = ("rotations", "edges", "mate")

    def __init__(self, rotations, edges):
        self.rotations = {v: tuple(r) for v, r in rotations.items()}
        self.edges = sorted(tuple(sorted(e)) for e in edges)
        self.mate = {}
        for a, b in self.edges:
            if a[0] == b[0]:
                raise TricrossError(f"self-loop {a}-{b}; strip monogons first")
            for end in (a, b):
                if end in self.mate:
                    raise TricrossError(f"end {end} used twice")
            self.mate[a] = b
            self.mate[b] = a
        for v, rot in self.rotations.items():
            if len(set(rot)) != len(rot):
                raise TricrossError(f"rotation at {v} repeats a slot")
            for s in rot:
                if (v, s) not in self.mate:
                    raise TricrossError(f"slot ({v},{s}) not matched by any edge")
        for end in self.mate:
            v, s = end
            if v not in self.rotations or s not in self.rotations[v]:
                raise TricrossError(f"edge end {end} outside the rotations")

    def degree(self, v):
        return len(self.rotations[v])

    def edge_at(self, v, slot):
        end = (v, slot)
        return tuple(sorted((end, self.mate[end])))

    def is_connected(self):
        if not self.rotations:
            return True
        seen = set()
        stack = [next(iter(self.rotations))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for s in self.rotations[v]:
                stack.append(self.mate[(v, s)][0])
        return len(seen) == len(self.rotations)


@dataclass(frozen=True)
class MonogonRecord:
    """A stripped self-loop: where it sat and the depths of its strands."""

    vertex: object
    slots: tuple
    depths: tuple


@dataclass(frozen=True)
class Strip:
    """One horizontal band of the leveling, owning one vertex.

    `down` and `up` list the edges running from the bottom line to the
    vertex and from the vertex to the top line, left to right.  `through`
    lists the edges passing straight through, left to right; `split` of
    them run left of the vertex.  `monogons` are the loops to be redrawn
    beside the vertex.
    """

    vertex: object
    down: tuple
    up: tuple
    through: tuple
    split: int
    monogons: tuple = ()

    def below(self):
        """Edges crossing the strip's bottom line, left to right."""
        return self.through[: self.split] + self.down + self.through[self.split :]

    def above(self):
        return self.through[: self.split] + self.up + self.through[self.split :]


@dataclass(frozen=True)
class Leveling:
    """Vertex order (bottom strip first) plus the per-strip arc layout."""

    order: tuple
    strips: tuple
    records: tuple = ()


def strip_monogons(d):
    """Split a diagram into its loop-free plane graph and monogon records.

    Slot labels survive, so the original edge set is exactly the graph's
    edges plus one self-edge per record.  The graph must come out
    connected and free of cut vertices, which is what normalization
    guarantees; anything else is refused here rather than failing deeper
    in the leveling search.
    """
    records = []
    rotations = {}
    edges = []
    for cid, x in d.crossings.items():
        loops = set()
        for s in range(2 * x.order):
            m = d.mate[(cid, s)]
            if m[0] == cid:
                loops.add(s)
                if m[1] > s:
                    records.append(
                        MonogonRecord(
                            cid, (s, m[1]), (x.depth_at(s), x.depth_at(m[1]))
                        )
                    )
        rotations[cid] = tuple(s for s in range(2 * x.order) if s not in loops)
    for e in d.edges:
        if e[0][0] != e[1][0]:
            edges.append(e)
    graph = PlaneGraph(rotations, edges)
    if not graph.is_connected():
        raise DisconnectedError("monogon stripping needs a connected diagram")
    for v in _cut_vertices(graph):
        raise UnsupportedDiagramError(
            f"crossing {v} is a residual cut vertex; normalize the diagram first"
        )
    return graph, tuple(records)


def _cut_vertices(graph):
    """Vertices whose removal disconnects the rest, smallest first."""
    vids = sorted(graph.rotations)
    out = []
    for v in vids:
        rest = [u for u in vids if u != v]
        if len(rest) < 2:
            continue
        seen = set()
        stack = [rest[0]]
        while stack:
            u = stack.pop()
            if u in seen or u == v:
                continue
            seen.add(u)
            for s in graph.rotations[u]:
                stack.append(graph.mate[(u, s)][0])
        if len(seen) != len(rest):
            out.append(v)
    return out


def _down_run(graph, v, down_set):
    """The descending run of v's rotation, counterclockwise, or None.

    Returns (down slots ccw, up slots ccw) when the descending ends form
    one contiguous cyclic run; the caller reads heads left-to-right by
    reversing the ascending half.
    """
    rot = graph.rotations[v]
    m = len(rot)
    flags = [graph.edge_at(v, s) in down_set for s in rot]
    p = sum(flags)
    if p == 0 or p == m:
        return None
    starts = [
        i for i in range(m) if flags[i] and not flags[i - 1]
    ]
    if len(starts) != 1:
        return None
    i0 = starts[0]
    down = tuple(rot[(i0 + i) % m] for i in range(p))
    up = tuple(rot[(i0 + p + i) % m] for i in range(m - p))
    return down, up


def _placements(graph, v, frontier, first, last):
    """Frontier rewrites that realize placing v next, in search order."""
    down_set = {e for e in frontier if v in (e[0][0], e[1][0])}
    rot = graph.rotations[v]
    m = len(rot)

    if first:
        # Nothing below: any cut of the rotation can face the top line.
        for cut in range(m):
            heads = tuple(
                graph.edge_at(v, rot[(cut - i) % m]) for i in range(m)
            )
            strip = Strip(v, (), heads, (), 0)
            yield list(heads), strip
        return

    positions = [i for i, e in enumerate(frontier) if e in down_set]
    p = len(positions)
    if p == 0 or positions != list(range(positions[0], positions[0] + p)):
        return
    i0 = positions[0]
    block = tuple(frontier[i0 : i0 + p])

    if last:
        if p != m or p != len(frontier):
            return
        for align in range(m):
            reading = tuple(
                graph.edge_at(v, rot[(align + i) % m]) for i in range(m)
            )
            if reading == block:
                strip = Strip(v, block, (), (), 0)
                yield [], strip
                return
        return

    runs = _down_run(graph, v, down_set)
    if runs is None:
        return
    down_slots, up_slots = runs
    if tuple(graph.edge_at(v, s) for s in down_slots) != block:
        return
    heads = tuple(graph.edge_at(v, s) for s in reversed(up_slots))
    through = tuple(frontier[:i0]) + tuple(frontier[i0 + p :])
    strip = Strip(v, block, heads, through, i0)
    yield list(frontier[:i0]) + list(heads) + list(frontier[i0 + p :]), strip


def bisect_level(graph, records=()):
    """Search for a bisected vertex leveling; first one in lex order wins.

    Candidate vertices are tried smallest id first at every depth, and the
    bottom vertex tries its rotation cuts in slot order, so the result is
    deterministic.  Vertices with no edges cannot be leveled (their strip
    would touch no line) and are refused; for normalized connected
    triple-crossing projections the search always succeeds.
    """
    vids = sorted(graph.rotations)
    if not vids:
        raise UnsupportedDiagramError("nothing to level in an empty graph")
    for v in vids:
        if graph.degree(v) == 0:
            raise UnsupportedDiagramError(
                f"vertex {v} has no edges left after stripping monogons"
            )
    if not graph.is_connected():
        raise DisconnectedError("leveling needs a connected graph")

    by_vertex = {}
    for r in records:
        by_vertex.setdefault(r.vertex, []).append(r)
    for v in by_vertex:
        if v not in graph.rotations:
            raise TricrossError(f"monogon record for unknown vertex {v}")

    n = len(vids)
    placed = set()
    order = []
    strips = []

    def extend(frontier):
        k = len(order)
        if k == n:
            return not frontier
        for v in vids:
            if v in placed:
                continue
            incident = [graph.edge_at(v, s) for s in graph.rotations[v]]
            in_front = sum(1 for e in set(incident) if e in set(frontier))
            if k > 0 and in_front == 0:
                continue  # prefix below would be disconnected
            if k < n - 1 and in_front == len(set(incident)):
                continue  # nothing would run upward: suffix disconnects
            for new_frontier, strip in _placements(
                graph, v, frontier, first=(k == 0), last=(k == n - 1)
            ):
                mono = tuple(by_vertex.get(v, ()))
                strips.append(
                    Strip(
                        strip.vertex,
                        strip.down,
                        strip.up,
                        strip.through,
                        strip.split,
                        mono,
                    )
                )
                order.append(v)
                placed.add(v)
                if extend(new_frontier):
                    return True
                placed.discard(v)
                order.pop()
                strips.pop()
        return False

    if not extend([]):
        raise LevelingNotFound(f"{n} vertices, {len(graph.edges)} edges")
    return Leveling(tuple(order), tuple(strips), tuple(records))


def rotate_leveling(leveling):
    """The same leveling drawn after turning the plane half a turn.

    Heights reverse, left and right swap, so strips run in opposite order
    with descending and ascending arcs exchanged and each list read
    backwards.  Rotation preserves orientation of the plane, hence the
    result is again a valid leveling of the same graph, unlike a mirror
    image.
    """
    strips = tuple(
        Strip(
            s.vertex,
            tuple(reversed(s.up)),
            tuple(reversed(s.down)),
            tuple(reversed(s.through)),
            len(s.through) - s.split,
            s.monogons,
        )
        for s in reversed(leveling.strips)
    )
    return Leveling(tuple(reversed(leveling.order)), strips, leveling.records)


@dataclass(frozen=True)
class StripTag:
    p: int
    q: int
    monogon: bool


def classify_strips(leveling):
    """Tags (p, q, monogon flag) for a leveled triple-crossing projection.

    Every strip must spend its six slot ends as p descending arcs, q
    ascending ones, and at most one stripped monogon; anything else falls
    outside the strip catalog.
    """
    tags = []
    for i, strip in enumerate(leveling.strips):
        p = len(strip.down)
        q = len(strip.up)
        m = len(strip.monogons)
        if p + q + 2 * m != 6 or m > 1:
            raise UnsupportedDiagramError(
                f"strip {i + 1} at vertex {strip.vertex} has {p} down, "
                f"{q} up, {m} monogons: outside the strip catalog"
            )
        first, last = i == 0, i == len(leveling.strips) - 1
        if (p == 0) != first or (q == 0) != last:
            raise UnsupportedDiagramError(
                f"strip {i + 1} at vertex {strip.vertex} is T_{p}^{q}, "
                "only the bottom strip may lack descending arcs and only "
                "the top strip ascending ones"
            )
        tags.append(StripTag(p, q, m == 1))
    return tuple(tags)


def check_leveling(graph, leveling):
    """Replay the frontier and verify every stored strip; raises on defects.

    This is the mechanical statement of the leveling conditions: each edge
    crosses each line once (frontier bookkeeping), each vertex's rotation
    is bisected with the fixed reading directions, and both the prefix and
    suffix below and above every line stay connected (equivalently, only
    the bottom strip lacks descending arcs and only the top ascending
    ones).
    """
    if sorted(leveling.order) != sorted(graph.rotations):
        raise TricrossError("leveling order is not a permutation of the vertices")
    n = len(leveling.order)
    frontier = []
    for i, (v, strip) in enumerate(zip(leveling.order, leveling.strips)):
        if strip.vertex != v:
            raise TricrossError(f"strip {i + 1} does not belong to {v}")
        p = len(strip.down)
        i0 = strip.split
        if not 0 <= i0 <= len(strip.through):
            raise TricrossError(f"strip {i + 1} split out of range")
        if tuple(frontier[i0 : i0 + p]) != strip.down:
            raise TricrossError(f"strip {i + 1} descending block mismatch")
        rest = tuple(frontier[:i0]) + tuple(frontier[i0 + p :])
        if rest != strip.through:
            raise TricrossError(f"strip {i + 1} pass-through mismatch")
        if (p == 0) != (i == 0):
            raise TricrossError(f"strip {i + 1} descending arcs break bisection")
        if (len(strip.up) == 0) != (i == n - 1):
            raise TricrossError(f"strip {i + 1} ascending arcs break bisection")
        _check_rotation_reading(graph, v, strip, first=(i == 0), last=(i == n - 1))
        frontier = list(frontier[:i0]) + list(strip.up) + list(frontier[i0 + p :])
    if frontier:
        raise TricrossError("edges left over above the top strip")


def _check_rotation_reading(graph, v, strip, first, last):
    rot = graph.rotations[v]
    m = len(rot)
    if len(strip.down) + len(strip.up) != m:
        raise TricrossError(f"strip at {v} does not spend every edge end")
    if first or last:
        seq = strip.up if first else strip.down
        for align in range(m):
            if first:
                reading = tuple(
                    graph.edge_at(v, rot[(align - i) % m]) for i in range(m)
                )
            else:
                reading = tuple(
                    graph.edge_at(v, rot[(align + i) % m]) for i in range(m)
                )
            if reading == seq:
                return
        raise TricrossError(f"extremal strip at {v} does not read its rotation")
    down_set = set(strip.down)
    runs = _down_run(graph, v, down_set)
    if runs is None:
        raise TricrossError(f"rotation at {v} is not bisected")
    down_slots, up_slots = runs
    if tuple(graph.edge_at(v, s) for s in down_slots) != strip.down:
        raise TricrossError(f"descending run at {v} reads wrong")
    if tuple(graph.edge_at(v, s) for s in reversed(up_slots)) != strip.up:
        raise TricrossError(f"ascending run at {v} reads wrong")
