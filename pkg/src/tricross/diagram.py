"""Multi-crossing link diagrams as combinatorial rotation systems.

A diagram is a set of crossings, each of order n with 2n half-edge slots
numbered counterclockwise, plus a perfect matching on the slots (the
edges) and a count of crossingless circle components.  The strand through
slot k leaves through slot k+n, and carries a depth level (1 = top).
Everything downstream (faces, orientations, decomposition into double
crossings, excision surgery) is a pure function of this data.
"""

import re
from dataclasses import dataclass

from .errors import (
    DiagramParseError,
    DisconnectedError,
    NonPlanarError,
    TricrossError,
    UnsupportedDiagramError,
)

# An "end" is a (crossing id, slot) pair; edges are 2-sets of ends.


@dataclass(frozen=True)
class Crossing:
    order: int
    levels: tuple  # levels[k] = depth of the strand through slots k and k+order

    def __post_init__(self):
        if self.order < 2:
            raise TricrossError(f"crossing order must be >= 2, got {self.order}")
        if sorted(self.levels) != list(range(1, self.order + 1)):
            raise TricrossError(
                f"levels {self.levels} are not a bijection onto 1..{self.order}"
            )

    def strand_of(self, slot):
        return slot % self.order

    def depth_at(self, slot):
        return self.levels[slot % self.order]


class MultiCrossingDiagram:
    """Immutable-by-convention rotation system with leveled crossings."""

    __slots__ = ("crossings", "edges", "free_loops", "mate")

    def __init__(self, crossings, edges, free_loops=0, validate=True):
        self.crossings = dict(crossings)
        self.edges = [tuple(sorted(e)) for e in edges]
        self.edges.sort()
        self.free_loops = free_loops
        self.mate = {}
        for a, b in self.edges:
            self.mate[a] = b
            self.mate[b] = a
        if validate:
            self.validate()

    # -- validation ---------------------------------------------------

    def validate(self):
        if self.free_loops < 0:
            raise TricrossError("free_loops must be nonnegative")
        seen = set()
        for a, b in self.edges:
            for end in (a, b):
                cid, slot = end
                if cid not in self.crossings:
                    raise TricrossError(f"edge endpoint {end}: unknown crossing")
                if not 0 <= slot < 2 * self.crossings[cid].order:
                    raise TricrossError(f"edge endpoint {end}: slot out of range")
                if end in seen:
                    raise TricrossError(f"endpoint {end} used twice")
                seen.add(end)
        for cid, x in self.crossings.items():
            for slot in range(2 * x.order):
                if (cid, slot) not in seen:
                    raise TricrossError(f"slot ({cid},{slot}) not matched by any edge")
        self._check_genus()

    def _check_genus(self):
        # V - E + F = 2 must hold on each connected component of the
        # crossing graph; free loops are spheres of their own.
        walks = self._trace_faces()
        for comp in self.crossing_components():
            v = len(comp)
            e = sum(1 for a, _b in self.edges if a[0] in comp)
            f = sum(1 for w in walks if w and w[0][0] in comp)
            euler = v - e + f
            if euler != 2:
                raise NonPlanarError((2 - euler) // 2)

    # -- basic topology ----------------------------------------------

    def rotate(self, end):
        cid, slot = end
        return (cid, (slot + 1) % (2 * self.crossings[cid].order))

    def through(self, end):
        """The other slot of the same strand at the same crossing."""
        cid, slot = end
        n = self.crossings[cid].order
        return (cid, (slot + n) % (2 * n))

    def all_ends(self):
        for cid, x in self.crossings.items():
            for slot in range(2 * x.order):
                yield (cid, slot)

    def crossing_components(self):
        """Connected components of the crossing graph (free loops excluded)."""
        comps = []
        unseen = set(self.crossings)
        for seed in self.crossings:
            if seed not in unseen:
                continue
            unseen.discard(seed)
            start = seed
            comp = {start}
            stack = [start]
            while stack:
                cid = stack.pop()
                for slot in range(2 * self.crossings[cid].order):
                    nb = self.mate[(cid, slot)][0]
                    if nb in unseen:
                        unseen.discard(nb)
                        comp.add(nb)
                        stack.append(nb)
            comps.append(comp)
        return comps

    def is_connected(self):
        ncomp = len(self.crossing_components())
        if self.crossings:
            return ncomp == 1 and self.free_loops == 0
        return self.free_loops <= 1

    def _trace_faces(self):
        """Orbits of dart -> rotate(mate(dart)), darts named by leaving end.

        Walk order is fixed (sorted start darts) so downstream choices
        that depend on it are reproducible across processes.
        """
        walks = []
        unseen = set(self.all_ends())
        for start in sorted(self.all_ends()):
            if start not in unseen:
                continue
            walk = []
            e = start
            while e in unseen:
                unseen.discard(e)
                walk.append(e)
                e = self.rotate(self.mate[e])
            walks.append(walk)
        return walks

    def faces(self):
        """Face boundary walks, one per face; free loops add two empty walks.

        Each walk lists the darts (by leaving end) bounding the face.
        Separate connected components are traced on their own sphere, so
        their outer faces are not merged.
        """
        walks = self._trace_faces()
        for _ in range(self.free_loops):
            walks.append([])
            walks.append([])
        if self.free_loops and not self.crossings:
            # k disjoint circles alone: 2 faces for the first, 1 more each
            walks = walks[: self.free_loops + 1]
        return walks

    def strand_orbits(self):
        """Directed strand walks: orbit of e -> through(mate(e)).

        Every link component contributes exactly two orbits, one per
        traversal direction.  Start darts are taken in sorted order so
        orientation choices built on these walks are reproducible.
        """
        orbits = []
        unseen = set(self.all_ends())
        for start in sorted(self.all_ends()):
            if start not in unseen:
                continue
            orbit = []
            e = start
            while e in unseen:
                unseen.discard(e)
                orbit.append(e)
                e = self.through(self.mate[e])
            orbits.append(orbit)
        return orbits

    def components(self):
        return len(self.strand_orbits()) // 2 + self.free_loops

    # -- serialization ------------------------------------------------

    def serialize(self):
        lines = []
        for cid, x in self.crossings.items():
            lv = ",".join(str(d) for d in x.levels)
            lines.append(f"crossing {cid} order={x.order} levels={lv}")
        for a, b in self.edges:
            lines.append(f"edge ({a[0]},{a[1]}) ({b[0]},{b[1]})")
        if self.free_loops:
            lines.append(f"loops {self.free_loops}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"<MultiCrossingDiagram {len(self.crossings)} crossings, "
            f"{len(self.edges)} edges, {self.free_loops} loops>"
        )


# -- parsing ---------------------------------------------------------

_CROSSING_RE = re.compile(
    r"^crossing\s+(\S+)\s+order\s*=\s*(\d+)\s+levels\s*=\s*([\d,\s]+)$"
)
_EDGE_RE = re.compile(
    r"^edge\s*\(\s*([^\s(),]+)\s*,\s*(\d+)\s*\)\s*\(\s*([^\s(),]+)\s*,\s*(\d+)\s*\)$"
)
_LOOPS_RE = re.compile(r"^loops\s+(\d+)$")


def parse_diagram(text):
    """Parse the line-oriented diagram format.

    `crossing <id> order=<n> levels=<l0,...>`, `edge (<cid>,<slot>)
    (<cid>,<slot>)`, `loops <k>`; '#' starts a comment.  All structural
    invariants including the genus-0 check run before returning.
    """
    crossings = {}
    edges = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CROSSING_RE.match(line)
        if m:
            cid, order, levels = m.group(1), int(m.group(2)), m.group(3)
            if cid in crossings:
                raise DiagramParseError(f"duplicate crossing id {cid!r}", lineno)
            try:
                lv = tuple(int(t) for t in levels.replace(" ", "").split(","))
                crossings[cid] = Crossing(order, lv)
            except (ValueError, TricrossError) as exc:
                raise DiagramParseError(str(exc), lineno) from None
            continue
        m = _EDGE_RE.match(line)
        if m:
            a = (m.group(1), int(m.group(2)))
            b = (m.group(3), int(m.group(4)))
            edges.append((a, b))
            continue
        m = _LOOPS_RE.match(line)
        if m:
            loops += int(m.group(1))
            continue
        raise DiagramParseError(f"unrecognized line: {line!r}", lineno)
    try:
        return MultiCrossingDiagram(crossings, edges, loops)
    except NonPlanarError:
        raise
    except TricrossError as exc:
        raise DiagramParseError(str(exc)) from None


def render_diagram(d):
    """Inverse of parse_diagram up to crossing ids becoming strings.

    Crossings sort by id string, edges by endpoint, so equal diagrams
    render identically.
    """
    lines = []
    for cid in sorted(d.crossings, key=str):
        x = d.crossings[cid]
        lv = ",".join(str(k) for k in x.levels)
        lines.append(f"crossing {cid} order={x.order} levels={lv}")
    pairs = [
        tuple(sorted(e, key=lambda end: (str(end[0]), end[1])))
        for e in d.edges
    ]
    pairs.sort(key=lambda e: (str(e[0][0]), e[0][1], str(e[1][0]), e[1][1]))
    for (a, sa), (b, sb) in pairs:
        lines.append(f"edge ({a},{sa}) ({b},{sb})")
    if d.free_loops:
        lines.append(f"loops {d.free_loops}")
    return "\n".join(lines) + "\n"


# -- orientations ----------------------------------------------------


class OrientedDiagram:
    """A diagram plus a direction bit per end (True = outbound)."""

    __slots__ = ("diagram", "direction", "natural")

    def __init__(self, diagram, direction, natural=False, validate=True):
        self.diagram = diagram
        self.direction = dict(direction)
        self.natural = natural
        if validate:
            self.validate()

    def validate(self):
        d = self.diagram
        for a, b in d.edges:
            if self.direction.get(a) == self.direction.get(b):
                raise TricrossError(f"edge {a}-{b} lacks one tail and one head")
        for cid, x in d.crossings.items():
            for k in range(x.order):
                u, w = (cid, k), (cid, k + x.order)
                if self.direction[u] == self.direction[w]:
                    raise TricrossError(
                        f"strand {k} at {cid} does not flow through the crossing"
                    )
        if self.natural:
            for cid in d.crossings:
                if not self.alternates_at(cid):
                    raise TricrossError(f"orientation not alternating at {cid}")

    def alternates_at(self, cid):
        n = self.diagram.crossings[cid].order
        dirs = [self.direction[(cid, s)] for s in range(2 * n)]
        return all(dirs[s] != dirs[(s + 1) % (2 * n)] for s in range(2 * n))

    def out_slot(self, cid, strand):
        """The slot where the given strand leaves the crossing."""
        n = self.diagram.crossings[cid].order
        for slot in (strand, strand + n):
            if self.direction[(cid, slot)]:
                return slot
        raise KeyError((cid, strand))

    def sign(self, cid):
        """Crossing sign of an order-2 crossing.

        Positive exactly when the understrand's outgoing direction is the
        overstrand's outgoing direction rotated a quarter turn
        counterclockwise.
        """
        x = self.diagram.crossings[cid]
        if x.order != 2:
            raise TricrossError(f"sign is defined for order-2 crossings, not {cid}")
        over = 0 if x.levels[0] == 1 else 1
        under = 1 - over
        diff = (self.out_slot(cid, under) - self.out_slot(cid, over)) % 4
        if diff == 1:
            return 1
        if diff == 3:
            return -1
        raise TricrossError(f"inconsistent flow at {cid}")

    def writhe(self):
        return sum(
            self.sign(cid)
            for cid, x in self.diagram.crossings.items()
            if x.order == 2
        )


def orient(d):
    """Any consistent orientation: walk each component once, push forward."""
    direction = {}
    for orbit in d.strand_orbits():
        if orbit[0] in direction:
            continue
        for e in orbit:
            direction[e] = True
            direction[d.mate[e]] = False
    return OrientedDiagram(d, direction, natural=False)


def _checkerboard(d):
    """Two-color the faces; returns (color per face index, face of each dart).

    Works on any connected even-degree sphere map.  The face holding the
    smallest dart plays the role of the unbounded region and is white (0).
    """
    walks = d._trace_faces()
    face_of = {}
    for i, walk in enumerate(walks):
        for e in walk:
            face_of[e] = i
    adj = [set() for _ in walks]
    for a, b in d.edges:
        fa, fb = face_of[a], face_of[b]
        adj[fa].add(fb)
        adj[fb].add(fa)
    outer = face_of[min(face_of)]
    color = {outer: 0}
    queue = [outer]
    while queue:
        f = queue.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f]:
                raise TricrossError("checkerboard coloring failed")
    if len(color) != len(walks):
        raise TricrossError("checkerboard coloring failed to reach every face")
    return color, face_of


def natural_orientation(d):
    """Orient so directions alternate in/out around every crossing.

    Checkerboard-color the faces with the canonical outer face white,
    then direct every edge along its dart that borders a black region.
    Strand flow then works out exactly when all crossing orders are odd;
    even-order crossings force slots k and k+n to point the same way.
    """
    if not d.is_connected():
        raise DisconnectedError("natural orientation needs a connected diagram")
    if not d.crossings:
        # the lone circle, oriented counterclockwise around its black disk
        return OrientedDiagram(d, {}, natural=True, validate=False)
    for cid, x in d.crossings.items():
        if x.order % 2 == 0:
            raise UnsupportedDiagramError(
                f"natural orientation undefined with even-order crossing {cid}"
            )
    color, face_of = _checkerboard(d)
    direction = {e: color[face_of[e]] == 1 for e in d.all_ends()}
    return OrientedDiagram(d, direction, natural=True)


# -- surgery ---------------------------------------------------------


def excise(d, pairings, validate=True):
    """Delete crossings, reconnecting strands through them by slot pairs.

    `pairings` maps crossing id -> list of (slot, slot) pairs covering all
    its slots; each pair is a wire the strand follows through the deleted
    vertex.  Chains of edge+wire segments merge into single edges; chains
    that close up entirely inside the deleted set become free loops.
    """
    gone = set(pairings)
    wire = {}
    for cid, pairs in pairings.items():
        need = set(range(2 * d.crossings[cid].order))
        for s, t in pairs:
            wire[(cid, s)] = (cid, t)
            wire[(cid, t)] = (cid, s)
            need.discard(s)
            need.discard(t)
        if need:
            raise TricrossError(f"pairings at {cid} leave slots {sorted(need)} open")

    new_edges = []
    loops = d.free_loops
    used = set()

    def chase(end):
        # follow edge, then wires+edges while inside the deleted set
        cur = d.mate[end]
        used.add(end)
        used.add(cur)
        while cur[0] in gone:
            cur = wire[cur]
            used.add(cur)
            cur = d.mate[cur]
            used.add(cur)
        return cur

    for a, b in d.edges:
        if a in used or b in used:
            continue
        if a[0] not in gone and b[0] not in gone:
            new_edges.append((a, b))
            used.add(a)
            used.add(b)
        elif a[0] not in gone:
            new_edges.append((a, chase(a)))
        elif b[0] not in gone:
            new_edges.append((b, chase(b)))
    # anything untouched now lies on closed chains inside the deleted set
    for cid in gone:
        for slot in range(2 * d.crossings[cid].order):
            end = (cid, slot)
            if end in used:
                continue
            cur = end
            while cur not in used:
                used.add(cur)
                nxt = d.mate[cur]
                used.add(nxt)
                cur = wire[nxt]
            loops += 1
    keep = {cid: x for cid, x in d.crossings.items() if cid not in gone}
    return MultiCrossingDiagram(keep, new_edges, loops, validate=validate)


# -- double-crossing decomposition -----------------------------------

# Slot tables for replacing one triple crossing by a triangle of doubles.
# Entry ("x01", 2) means: that slot wires internally to crossing x01 slot 2;
# integer k means: that slot inherits the edge from original slot k.
# Perturbation "A" pushes the triangle to one side of the triple point,
# "B" to the other; both are planar and isotopic rearrangements.
_PERTURBATIONS = {
    "A": {
        "01": [0, 1, ("02", 0), ("12", 0)],
        "02": [("01", 2), 2, 3, ("12", 1)],
        "12": [("01", 3), ("02", 3), 4, 5],
    },
    "B": {
        "02": [0, ("12", 3), ("01", 0), 5],
        "01": [("02", 2), ("12", 2), 3, 4],
        "12": [1, 2, ("01", 1), ("02", 1)],
    },
}
# which original strands meet at each new crossing: "ij" crosses strand i
# over-or-under strand j, with strand i occupying the new slots 0 and 2
_STRANDS_AT = {"01": (0, 1), "02": (0, 2), "12": (1, 2)}


def decompose_triple(d, perturbation="A"):
    """Replace every order-3 crossing by three order-2 crossings.

    Depth comparisons at the triple point decide over/under at the three
    new crossings, so the link type is unchanged.  Diagrams already made
    of double crossings come back as-is.
    """
    table = _PERTURBATIONS[perturbation]
    if all(x.order == 2 for x in d.crossings.values()):
        return d
    for cid, x in d.crossings.items():
        if x.order > 3:
            raise UnsupportedDiagramError(
                f"cannot decompose crossing {cid} of order {x.order}"
            )

    crossings = {}
    relocate = {}  # original end -> end on a new crossing
    extra_edges = []
    for cid, x in d.crossings.items():
        if x.order == 2:
            crossings[cid] = x
            continue
        for tag, slots in table.items():
            ncid = f"{cid}.{tag}"
            i, j = _STRANDS_AT[tag]
            levels = (1, 2) if x.levels[i] < x.levels[j] else (2, 1)
            crossings[ncid] = Crossing(2, levels)
            for slot, spec in enumerate(slots):
                if isinstance(spec, int):
                    relocate[(cid, spec)] = (ncid, slot)
        seen = set()
        for tag, slots in table.items():
            for slot, spec in enumerate(slots):
                if isinstance(spec, tuple):
                    other_tag, other_slot = spec
                    key = frozenset({(tag, slot), (other_tag, other_slot)})
                    if key in seen:
                        continue
                    seen.add(key)
                    extra_edges.append(
                        ((f"{cid}.{tag}", slot), (f"{cid}.{other_tag}", other_slot))
                    )

    edges = [
        (relocate.get(a, a), relocate.get(b, b)) for a, b in d.edges
    ] + extra_edges
    return MultiCrossingDiagram(crossings, edges, d.free_loops)


def mirror(d):
    """Reverse the rotation at every crossing (reflect the projection)."""
    crossings = {}
    for cid, x in d.crossings.items():
        levels = tuple(x.levels[x.order - 1 - k] for k in range(x.order))
        crossings[cid] = Crossing(x.order, levels)

    def flip(end):
        cid, slot = end
        return (cid, 2 * d.crossings[cid].order - 1 - slot)

    edges = [(flip(a), flip(b)) for a, b in d.edges]
    return MultiCrossingDiagram(crossings, edges, d.free_loops)
