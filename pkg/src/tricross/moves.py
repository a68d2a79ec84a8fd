"""Reductions that prepare a triple-crossing diagram for leveling.

Two local shapes block the strip construction: cut vertices of the
underlying 6-valent projection, and monogons whose two strands sit at
adjacent depths.  Both are removable without changing the link, and no
removal ever raises the crossing count.  `normalize_diagram` drives the
individual moves to a fixpoint, splitting the diagram into connected
pieces whenever an elimination reveals a split link.
"""

import warnings
from dataclasses import dataclass

from .diagram import MultiCrossingDiagram, excise
from .errors import (
    DisconnectedError,
    StaleReportError,
    TricrossError,
    UnsupportedDiagramError,
)

__all__ = [
    "CutVertexReport",
    "NormalizationReport",
    "find_cut_vertices",
    "eliminate_cut_vertex",
    "normalize_monogons",
    "normalize_diagram",
]


def _require_all_triple(d):
    for cid, x in d.crossings.items():
        if x.order != 3:
            raise UnsupportedDiagramError(
                f"reduction moves are defined for all-triple diagrams; "
                f"crossing {cid} has order {x.order}"
            )


@dataclass(frozen=True)
class CutVertexReport:
    """One cut vertex of the projection.

    `components` lists the crossing sets its deletion separates, each
    sorted, ordered by smallest member.  `profile` counts the edge ends
    the vertex sends into each component, ascending: (2, 2, 2) or (2, 4)
    on a sphere.
    """

    vertex: object
    components: tuple
    profile: tuple


def _components_without(d, v):
    rest = [c for c in d.crossings if c != v]
    unseen = set(rest)
    comps = []
    for seed in rest:
        if seed not in unseen:
            continue
        unseen.discard(seed)
        comp = {seed}
        stack = [seed]
        while stack:
            cid = stack.pop()
            for slot in range(2 * d.crossings[cid].order):
                nb = d.mate[(cid, slot)][0]
                if nb != v and nb in unseen:
                    unseen.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(comp)
    return comps


def find_cut_vertices(d):
    """Reports for every vertex whose deletion disconnects the projection.

    Needs a connected all-triple diagram.  Each closed component of the
    link crosses the boundary of a separated part evenly, so on a sphere
    the only profiles are (2, 2, 2) and (2, 4); a vertex that is cut while
    carrying a monogon would split as (2, 2), and no reduction is defined
    for that shape, so it is refused.
    """
    _require_all_triple(d)
    if not d.is_connected():
        raise DisconnectedError("cut-vertex search needs a connected diagram")
    reports = []
    for v in d.crossings:
        comps = _components_without(d, v)
        if len(comps) < 2:
            continue
        where = {}
        for i, comp in enumerate(comps):
            for cid in comp:
                where[cid] = i
        counts = [0] * len(comps)
        for slot in range(6):
            other = d.mate[(v, slot)][0]
            if other != v:
                counts[where[other]] += 1
        profile = tuple(sorted(counts))
        if profile == (2, 2):
            raise UnsupportedDiagramError(
                f"cut vertex {v} carries a monogon; no elimination is defined"
            )
        if profile not in ((2, 2, 2), (2, 4)):
            raise TricrossError(f"cut vertex {v} has edge profile {profile}")
        parts = tuple(sorted(tuple(sorted(c)) for c in comps))
        reports.append(CutVertexReport(v, parts, profile))
    return reports


def eliminate_cut_vertex(d, report):
    """Apply the crossing-count-nonincreasing rewrite at one cut vertex.

    The report must describe `d` as it stands now; one taken before some
    other rewrite is rejected rather than trusted.
    """
    for fresh in find_cut_vertices(d):
        if fresh.vertex == report.vertex:
            if fresh != report:
                break
            return _apply_cut_elimination(d, report)
    raise StaleReportError(
        f"report for vertex {report.vertex!r} does not match the diagram"
    )


def _apply_cut_elimination(d, report):
    v = report.vertex
    if report.profile == (2, 2, 2):
        # Each strand of v runs between two of the three parts, so the
        # vertex is a triple connect-sum point; wiring all three strands
        # straight through dissolves it.
        return excise(d, {v: [(0, 3), (1, 4), (2, 5)]})

    comps = [set(c) for c in report.components]
    legs = {i: [] for i in range(len(comps))}
    for slot in range(6):
        other = d.mate[(v, slot)][0]
        for i, comp in enumerate(comps):
            if other in comp:
                legs[i].append(slot)
    (two,) = [slots for slots in legs.values() if len(slots) == 2]

    # Genus 0 forces the two-edge part onto cyclically adjacent slots.
    a, b = sorted(two)
    if b == a + 1:
        k = a
    elif (a, b) == (0, 5):
        k = 5
    else:
        raise TricrossError(f"two-edge part at {v} occupies slots {two}")

    k1 = (k + 1) % 6
    k3 = (k + 3) % 6
    a_end = d.mate[(v, k)]
    b_end = d.mate[(v, k1)]
    z_end = d.mate[(v, k3)]
    # Slide the small part along the strand through slot k to the far side
    # of the vertex: its legs detach, z hands its slot to the returning
    # leg, and the vacated slots close into a monogon for a later pass.
    drop = {
        tuple(sorted(((v, k), a_end))),
        tuple(sorted(((v, k1), b_end))),
        tuple(sorted(((v, k3), z_end))),
    }
    edges = [e for e in d.edges if e not in drop]
    edges += [(z_end, a_end), (b_end, (v, k3)), ((v, k), (v, k1))]
    return MultiCrossingDiagram(d.crossings, edges, d.free_loops)


def _monogon_scan(d):
    """Crossings whose monogon slides off, plus warnings for kept shapes.

    A monogon joining strands at adjacent depths slides over or under the
    third strand, and the whole crossing dissolves with it.  A depth-(1,3)
    monogon is pinned by the middle strand.  A monogon returning on its
    own strand has no third strand to clear and is left alone, as is the
    clasp formed by two pinned monogons on the same strand pair.
    """
    undo = []
    notes = []
    for cid, x in d.crossings.items():
        pairs = []
        for s in range(6):
            m = d.mate[(cid, s)]
            if m[0] == cid and m[1] > s:
                pairs.append((s, m[1]))
        if not pairs:
            continue
        removable = False
        pinned = 0
        selfed = 0
        for s, t in pairs:
            if t - s == 3:
                selfed += 1
            elif {x.depth_at(s), x.depth_at(t)} == {1, 3}:
                pinned += 1
            else:
                removable = True
        if removable:
            undo.append(cid)
            continue
        if selfed:
            notes.append(
                f"crossing {cid}: monogon returns on its own strand; left in place"
            )
        if pinned > 1:
            notes.append(
                f"crossing {cid}: two depth-(1,3) monogons form a clasp; left in place"
            )
    return undo, notes


def normalize_monogons(d):
    """Undo every monogon whose strands sit at adjacent depths.

    Undoing excises the whole crossing, wiring each strand straight
    through; loops that close up entirely become free circles.  Repeats
    until no removable monogon is left, since rewiring can close new
    ones.  Kept shapes (pinned clasps, own-strand returns) are reported
    through `warnings`.  Returns (diagram, crossings undone).
    """
    _require_all_triple(d)
    out = d
    undone = 0
    while True:
        undo, notes = _monogon_scan(out)
        if not undo:
            for msg in notes:
                warnings.warn(msg, stacklevel=2)
            return out, undone
        out = excise(out, {cid: [(0, 3), (1, 4), (2, 5)] for cid in undo})
        undone += len(undo)


@dataclass(frozen=True)
class NormalizationReport:
    reduced: bool  # did the crossing count drop
    eliminated_cut_vertices: int
    undone_monogons: int
    warnings: tuple


def normalize_diagram(d):
    """Drive the reductions to a fixpoint; returns (diagram, report).

    Per connected piece, in order: eliminate (2,2,2) cut vertices, then
    (2,4) ones, then undo removable monogons, looping because each move
    can expose work for the others.  A (2,2,2) elimination may split the
    projection; pieces are then normalized independently and reassembled
    as a disjoint union.  Every pass either drops the crossing count or
    keeps it while dropping the cut-vertex count, so this terminates.

    The exception: a cut vertex carrying a monogon has no elimination.
    If undoing monogons clears it the loop proceeds; otherwise the shape
    is refused, matching `find_cut_vertices`.
    """
    _require_all_triple(d)
    loops = d.free_loops
    cuts = 0
    undone = 0
    notes = []
    finished = []
    stack = _split(d)
    cap = (len(d.crossings) + 2) ** 2 + len(d.crossings)
    while stack:
        g = stack.pop()
        while True:
            cap -= 1
            if cap < 0:
                raise TricrossError("normalization failed to reach a fixpoint")
            if g.free_loops:
                loops += g.free_loops
                g = MultiCrossingDiagram(g.crossings, g.edges, 0, validate=False)
            if not g.crossings:
                g = None
                break
            if len(g.crossing_components()) > 1:
                stack.extend(_split(g))
                g = None
                break
            try:
                reports = find_cut_vertices(g)
            except UnsupportedDiagramError:
                reports = None  # monogon at a cut vertex; try undoing it first
            if reports:
                pick = next(
                    (r for r in reports if r.profile == (2, 2, 2)), None
                ) or next(r for r in reports if r.profile == (2, 4))
                g = _apply_cut_elimination(g, pick)
                cuts += 1
                continue
            undo, batch_notes = _monogon_scan(g)
            if undo:
                g = excise(g, {cid: [(0, 3), (1, 4), (2, 5)] for cid in undo})
                undone += len(undo)
                continue
            if reports is None:
                raise UnsupportedDiagramError(
                    "a pinned monogon sits at a cut vertex; no elimination is defined"
                )
            notes.extend(batch_notes)
            break
        if g is not None:
            finished.append(g)

    crossings = {}
    edges = []
    for g in finished:
        crossings.update(g.crossings)
        edges.extend(g.edges)
    out = MultiCrossingDiagram(crossings, edges, loops)
    report = NormalizationReport(
        reduced=len(out.crossings) < len(d.crossings),
        eliminated_cut_vertices=cuts,
        undone_monogons=undone,
        warnings=tuple(notes),
    )
    return out, report


def _split(d):
    """Connected pieces of the crossing graph as standalone diagrams."""
    pieces = []
    for comp in d.crossing_components():
        crossings = {c: x for c, x in d.crossings.items() if c in comp}
        edges = [e for e in d.edges if e[0][0] in comp]
        pieces.append(MultiCrossingDiagram(crossings, edges, 0, validate=False))
    return pieces
