"""Flattening leveled triple-crossing projections into braid words.

A leveling confines each crossing to its own horizontal strip.  Every
strip is drawn here with horizontal and vertical line segments only, so
that strands meet exactly where a horizontal bar passes a vertical
riser, and pass-through arcs run as straight columns between strips.
Left-directed bars are then removed by the switch move: the strand
leaves the picture along an external ray on the right, wraps around the
back of the sphere, and re-enters from the left, which costs one braid
strand per switch.  Reading the surviving crossings left to right gives
a braid word whose closure is the original link.

Per-strip drawings come from a small exhaustive search over column
orders, bar heights and strand shapes.  The canonical (unsolved) strip
pictures fix the segment census used for the strand-count bound: two
non-vertical segments per interior strip, three for the bottom and top
strips, and at most half of the total ever points left once the picture
is turned the right way up.
"""

import itertools
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction

from .braid import BraidWord
from .diagram import natural_orientation
from .errors import (
    DisconnectedError,
    TricrossError,
    UnsupportedDiagramError,
)
from .leveling import (
    bisect_level,
    check_leveling,
    classify_strips,
    rotate_leveling,
    strip_monogons,
)
from .moves import normalize_diagram

__all__ = [
    "StripSegment",
    "RayRecord",
    "StripDiagram",
    "to_strip_diagram",
    "orient_and_balance",
    "resolve_strips",
    "emit_braid",
    "braidify",
]


@dataclass(frozen=True)
class StripSegment:
    """One non-vertical segment of a strip's canonical picture.

    `strand` indexes the strip's strands, `part` separates the two bars
    of a strand drawn with a turn.  `direction` stays None until the
    diagram is oriented.
    """

    strip: int
    strand: int
    part: int
    slope: str
    direction: str = None


@dataclass(frozen=True)
class RayRecord:
    """One switch: the external level used and where the strand leaves
    and re-enters the picture."""

    level: int
    strip: int
    x_exit: Fraction
    x_enter: Fraction


@dataclass(frozen=True, eq=False)
class StripDiagram:
    """A leveled projection drawn in strips, staged toward a braid.

    `segments` is the canonical census (directions filled in once
    oriented); `rays` appear after resolution.  The geometric plan is
    internal.
    """

    diagram: object
    leveling: object
    tags: tuple
    segments: tuple
    strips: tuple
    orientation: object = None
    rotated: bool = False
    lefts: int = None
    rights: int = None
    rays: tuple = ()
    plan: object = None

    def marks(self):
        """Per strip: its crossing and the strand levels met there."""
        return tuple(
            (s["vertex"], self.diagram.crossings[s["vertex"]].levels)
            for s in self.strips
        )


# -- canonical strip pictures ----------------------------------------


def _strip_strands(d, strip, tag):
    """Strand records for one strip: kinds, boundary ends, depths."""
    v = strip.vertex
    x = d.crossings[v]
    side_of = {}
    for i, e in enumerate(strip.down):
        side_of[_slot_at(v, e)] = ("f", i)
    for j, e in enumerate(strip.up):
        side_of[_slot_at(v, e)] = ("h", j)

    if not tag.monogon:
        recs = []
        for sid in range(3):
            slots = (sid, sid + 3)
            recs.append(
                {
                    "sid": sid,
                    "kind": "plain",
                    "slots": slots,
                    "ends": tuple(side_of[s] for s in slots),
                    "depths": (x.depth_at(sid), x.depth_at(sid)),
                }
            )
        return recs, side_of

    (record,) = strip.monogons
    l0, l1 = record.slots
    if (l1 - l0) % 6 not in (1, 5):
        raise UnsupportedDiagramError(
            f"monogon at {v} spans slots {record.slots}; crossing {v} "
            "encloses part of the diagram and the input is not normalized"
        )
    if set(record.depths) != {1, 3}:
        raise UnsupportedDiagramError(
            f"monogon at {v} has depths {record.depths}; only loops pinned "
            "to the top and bottom strands can be drawn inside a strip"
        )
    arms = ((l0 + 3) % 6, (l1 + 3) % 6)
    mid = next(
        s for s in range(3) if s not in {a % 3 for a in (l0, l1)}
    )
    snake = {
        "sid": 0,
        "kind": "snake",
        "slots": arms,
        "ends": tuple(side_of[a] for a in arms),
        "depths": record.depths,
    }
    middle = {
        "sid": 1,
        "kind": "middle",
        "slots": (mid, mid + 3),
        "ends": tuple(side_of[s] for s in (mid, mid + 3)),
        "depths": (x.depth_at(mid), x.depth_at(mid)),
    }
    if x.depth_at(mid) != 2:
        raise UnsupportedDiagramError(
            f"monogon at {v} does not leave the middle strand at depth 2"
        )
    return [snake, middle], side_of


def _slot_at(v, edge):
    for end in edge:
        if end[0] == v:
            return end[1]
    raise TricrossError(f"edge {edge} does not touch {v}")


def _role_offset(side_of, recs):
    """Rotation offset putting the south arm below and the north above.

    Slots are read as germ directions counterclockwise from east; an
    offset qualifies when it sends the downward germ to a descending arc
    and the upward germ to an ascending one.  For interior strips of a
    bisected leveling one always exists.  Among qualifying offsets,
    prefer one that stands the mid-level strand upright: the strand left
    to run westward then lies on top or underneath, and its switch
    clears the other two the same way.
    """
    valid = []
    for rho in range(6):
        south = side_of[(rho + 5) % 6]
        north = side_of[(rho + 2) % 6]
        if south[0] == "f" and north[0] == "h":
            valid.append(rho)
    if not valid:
        raise TricrossError("no rotation offset aligns the vertical strand")
    for rho in valid:
        upright = next(r for r in recs if r["sid"] == (rho + 2) % 3)
        if upright["depths"][0] == 2:
            return rho
    return valid[0]


def _canonical_segments(k1, tag, recs, side_of):
    """The strip's non-vertical segments before any resolution."""
    segs = []
    extremal = tag.p == 0 or tag.q == 0
    if not tag.monogon:
        if extremal:
            for rec in recs:
                segs.append(StripSegment(k1, rec["sid"], 0, "horizontal"))
            return segs, None
        rho = _role_offset(side_of, recs)
        segs.append(StripSegment(k1, rho % 3, 0, "horizontal"))
        segs.append(StripSegment(k1, (rho + 1) % 3, 0, "diagonal"))
        return segs, rho

    snake, middle = recs
    m_mixed = middle["ends"][0][0] != middle["ends"][1][0]
    if m_mixed or extremal:
        segs.append(StripSegment(k1, snake["sid"], 0, "horizontal"))
        segs.append(StripSegment(k1, snake["sid"], 1, "horizontal"))
    else:
        segs.append(StripSegment(k1, snake["sid"], 0, "horizontal"))
    if not m_mixed:
        segs.append(StripSegment(k1, middle["sid"], 0, "horizontal"))
    return segs, None


def to_strip_diagram(d, lv):
    """Lay a leveled projection out as strips with a segment census.

    Every interior strip contributes two non-vertical segments and the
    two extremal strips three each, so a diagram with c crossings yields
    2c + 2 in total.
    """
    graph, records = strip_monogons(d)
    key = lambda r: (str(r.vertex), r.slots)
    if sorted(records, key=key) != sorted(lv.records, key=key):
        raise TricrossError("leveling records do not match the diagram")
    check_leveling(graph, lv)
    tags = classify_strips(lv)

    strips = []
    segments = []
    for k, (strip, tag) in enumerate(zip(lv.strips, tags)):
        recs, side_of = _strip_strands(d, strip, tag)
        segs, rho = _canonical_segments(k + 1, tag, recs, side_of)
        expected = 3 if (tag.p == 0 or tag.q == 0) else 2
        if len(segs) != expected:
            raise TricrossError(
                f"strip {k + 1} drew {len(segs)} non-vertical segments, "
                f"expected {expected}"
            )
        segments.extend(segs)
        strips.append(
            {
                "vertex": strip.vertex,
                "tag": tag,
                "strands": recs,
                "rho": rho,
                "layout": strip,
            }
        )
    if len(segments) != 2 * len(lv.order) + 2:
        raise TricrossError("segment census is off; leveling is malformed")
    return StripDiagram(
        diagram=d,
        leveling=lv,
        tags=tags,
        segments=tuple(segments),
        strips=tuple(strips),
    )


# -- orientation and balance -----------------------------------------


def _entry_first(rec, od, v):
    """Reorder a strand record so its flow enters at ends[0]."""
    s0, s1 = rec["slots"]
    d0, d1 = od.direction[(v, s0)], od.direction[(v, s1)]
    if d0 == d1:
        raise TricrossError(f"flow does not pass through strand at {v}")
    if d0:
        rec = dict(
            rec,
            slots=(s1, s0),
            ends=(rec["ends"][1], rec["ends"][0]),
            depths=(rec["depths"][1], rec["depths"][0]),
        )
    return rec


def _segment_direction(seg, info, parts, od):
    """Canonical direction of a census segment under the orientation."""
    v = info["vertex"]
    rec = next(r for r in info["strands"] if r["sid"] == seg.strand)
    if rec["kind"] == "snake" and parts == 2:
        (s0, i0), (s1, i1) = rec["ends"]
        if s0 == s1:
            # extremal strip: a snake straddling the middle turns inside
            # the middle's cap, the kink soaks up the reversal, and both
            # bars run the same way; otherwise it runs out and back
            mid = next(
                r for r in info["strands"] if r["sid"] != seg.strand
            )
            m_lo, m_hi = sorted(i for _, i in mid["ends"])
            lo, hi = sorted((i0, i1))
            if lo < m_lo < m_hi < hi:
                rec = _entry_first(rec, od, v)
                i_in, i_out = rec["ends"][0][1], rec["ends"][1][1]
                return "right" if i_out > i_in else "left"
        # drawn with a turn: one bar out, one bar back
        return "right" if seg.part == 0 else "left"
    if info["rho"] is not None:
        # interior plain strip: directions read off the germ roles
        rho = info["rho"]
        slot = rho if seg.slope == "horizontal" else (rho + 1) % 6
        return "right" if od.direction[(v, slot)] else "left"
    rec = _entry_first(rec, od, v)
    (s0, i0), (s1, i1) = rec["ends"]
    if s0 != s1:
        return "right" if s1 == "h" else "left"
    return "right" if i1 > i0 else "left"


def orient_and_balance(sd, od):
    """Direct every census segment; turn the picture over if more point
    left than right.

    The orientation must alternate in and out around every crossing.
    Turning the plane half a turn swaps left for right, so afterwards at
    most half of the 2c + 2 segments are left-directed.
    """
    if od.diagram.edges != sd.diagram.edges or set(
        od.diagram.crossings
    ) != set(sd.diagram.crossings):
        raise TricrossError("orientation belongs to a different diagram")
    for cid in sd.diagram.crossings:
        if not od.alternates_at(cid):
            raise TricrossError(
                f"orientation does not alternate around {cid}; "
                "use the natural orientation"
            )

    def directed(s):
        parts = {}
        for g in s.segments:
            parts[(g.strip, g.strand)] = parts.get((g.strip, g.strand), 0) + 1
        segs = []
        for seg in s.segments:
            info = s.strips[seg.strip - 1]
            segs.append(
                StripSegment(
                    seg.strip,
                    seg.strand,
                    seg.part,
                    seg.slope,
                    _segment_direction(
                        seg, info, parts[(seg.strip, seg.strand)], od
                    ),
                )
            )
        return tuple(segs)

    segs = directed(sd)
    lefts = sum(1 for g in segs if g.direction == "left")
    rights = len(segs) - lefts
    rotated = False
    if lefts > rights:
        sd = to_strip_diagram(sd.diagram, rotate_leveling(sd.leveling))
        segs = directed(sd)
        lefts = sum(1 for g in segs if g.direction == "left")
        rights = len(segs) - lefts
        rotated = True
        if lefts > rights:
            raise TricrossError(
                "still more left than right segments after turning"
            )
    return StripDiagram(
        diagram=sd.diagram,
        leveling=sd.leveling,
        tags=sd.tags,
        segments=segs,
        strips=sd.strips,
        orientation=od,
        rotated=rotated,
        lefts=lefts,
        rights=rights,
    )


# -- per-strip montage search ----------------------------------------

# Shapes a strand may take: a through strand runs boundary to boundary
# with at most one bar ("vert" drops the bar entirely), arcs turn once,
# and a snake may spend a second bar on an extra turn ("hook") so each
# of its arms can cross the middle strand separately.


def _shape_options(rec):
    if not rec["census"]:
        # no non-vertical segment on record for this strand, so it must
        # run straight through
        return ("vert",)
    mixed = rec["ends"][0][0] != rec["ends"][1][0]
    if rec["kind"] == "snake":
        return ("hook", "bar" if mixed else "arc")
    if mixed:
        return ("bar", "vert")
    return ("arc",)


def _merges(feet, heads):
    out = []

    def rec(i, j, acc):
        if i == len(feet) and j == len(heads):
            out.append(tuple(acc))
            return
        if i < len(feet):
            rec(i + 1, j, acc + [feet[i]])
        if j < len(heads):
            rec(i, j + 1, acc + [heads[j]])

    rec(0, 0, [])
    return out


def _pins_ordered(order, pins):
    pos = {tok: i for i, tok in enumerate(order)}
    for j, i in pins.items():
        anchor = pos[("f", i)]
        for tok in order:
            if tok[0] == "h":
                if tok[1] < j and pos[tok] > anchor:
                    return False
                if tok[1] > j and pos[tok] < anchor:
                    return False
    return True


def _symbolic_pieces(rec, shape, ranks, track, nbars):
    """Traversal-ordered pieces with rank coordinates."""
    sid = rec["sid"]
    (s0, i0), (s1, i1) = rec["ends"]
    x0, x1 = (s0, i0), (s1, i1)
    b0 = -1 if s0 == "f" else nbars
    b1 = -1 if s1 == "f" else nbars
    if shape == "vert":
        return [{"form": "riser", "x": x0, "y0": b0, "y1": b1}]
    if shape in ("bar", "arc"):
        t = track[(sid, 0)]
        return [
            {"form": "riser", "x": x0, "y0": b0, "y1": t},
            {"form": "bar", "key": (sid, 0), "x0": x0, "x1": x1, "y": t},
            {"form": "riser", "x": x1, "y0": t, "y1": b1},
        ]
    ta, tb = track[(sid, 0)], track[(sid, 1)]
    turn = ("t", sid)
    return [
        {"form": "riser", "x": x0, "y0": b0, "y1": ta},
        {"form": "bar", "key": (sid, 0), "x0": x0, "x1": turn, "y": ta},
        {"form": "riser", "x": turn, "y0": ta, "y1": tb},
        {"form": "bar", "key": (sid, 1), "x0": turn, "x1": x1, "y": tb},
        {"form": "riser", "x": x1, "y0": tb, "y1": b1},
    ]


def _evaluate(recs, shapes, ranks, track, nbars):
    """Crossing pattern of one candidate montage, or None if invalid."""
    strands = {}
    bars = []
    risers = []
    for rec, shape in zip(recs, shapes):
        pieces = _symbolic_pieces(rec, shape, ranks, track, nbars)
        strands[rec["sid"]] = pieces
        for idx, pc in enumerate(pieces):
            if pc["form"] == "bar":
                lo, hi = sorted((ranks[pc["x0"]], ranks[pc["x1"]]))
                bars.append((pc, lo, hi, rec["sid"], idx))
            else:
                lo, hi = sorted((pc["y0"], pc["y1"]))
                risers.append((pc, lo, hi, rec["sid"], idx))

    crossings = []
    for bpc, bxlo, bxhi, bsid, bidx in bars:
        for rpc, rylo, ryhi, rsid, ridx in risers:
            rx = ranks[rpc["x"]]
            if bxlo < rx < bxhi and rylo < bpc["y"] < ryhi:
                if bsid == rsid:
                    return None
                crossings.append((bpc, bsid, bidx, rsid, ridx))

    snake = next((r for r in recs if r["kind"] == "snake"), None)
    if snake is None:
        pair_count = {}
        for _, bsid, _, rsid, _ in crossings:
            pair_count[frozenset((bsid, rsid))] = (
                pair_count.get(frozenset((bsid, rsid)), 0) + 1
            )
        if len(recs) == 3:
            pairs = [
                frozenset(p) for p in itertools.combinations(range(3), 2)
            ]
            if any(pair_count.get(p, 0) != 1 for p in pairs):
                return None
    else:
        if len(crossings) != 2:
            return None
        snake_pieces = sorted(
            (bidx if bsid == snake["sid"] else ridx)
            for _, bsid, bidx, rsid, ridx in crossings
        )
        if snake_pieces[0] == snake_pieces[1]:
            return None
        cut = snake_pieces[0]

    def depth_of(rec_sid, piece_idx):
        rec = next(r for r in recs if r["sid"] == rec_sid)
        if rec["kind"] == "snake":
            return rec["depths"][0] if piece_idx <= cut else rec["depths"][1]
        return rec["depths"][0]

    lefts = {}
    for rec, shape in zip(recs, shapes):
        west = 0
        for idx, pc in enumerate(strands[rec["sid"]]):
            if pc["form"] != "bar":
                continue
            if ranks[pc["x1"]] >= ranks[pc["x0"]]:
                continue
            west += 1
            overs = set()
            for bpc, bsid, bidx, rsid, ridx in crossings:
                if bpc is pc:
                    overs.add(
                        depth_of(bsid, bidx) < depth_of(rsid, ridx)
                    )
            if len(overs) > 1:
                return None
            discipline = "over" if overs != {False} else "under"
            lefts[pc["key"]] = discipline
        # the switch budget: one westward bar per left-directed segment
        if west > sum(1 for t in rec["census"] if t == "left"):
            return None

    return {
        "score": len(lefts),
        "lefts": lefts,
        "cut": None if snake is None else cut,
    }


def _solve_strip(recs, p, q):
    """Search the shape family for a montage with the fewest switches."""
    best = None
    sids = [r["sid"] for r in recs]
    for shapes in itertools.product(*[_shape_options(r) for r in recs]):
        pins = {}
        for rec, shape in zip(recs, shapes):
            if shape == "vert":
                ends = dict(rec["ends"])
                pins[ends["h"]] = ends["f"]
        pinned_heads = sorted(pins)
        if [pins[j] for j in pinned_heads] != sorted(
            pins[j] for j in pinned_heads
        ):
            continue
        feet = [("f", i) for i in range(p)]
        heads = [("h", j) for j in range(q) if j not in pins]
        turns = [
            rec["sid"]
            for rec, shape in zip(recs, shapes)
            if shape == "hook"
        ]
        bars = []
        for rec, shape in zip(recs, shapes):
            if shape == "vert":
                continue
            bars.append((rec["sid"], 0))
            if shape == "hook":
                bars.append((rec["sid"], 1))
        for base in _merges(feet, heads):
            if pins and not _pins_ordered(base, pins):
                continue
            arrangements = [base]
            for sid in turns:
                arrangements = [
                    a[:i] + (("t", sid),) + a[i:]
                    for a in arrangements
                    for i in range(len(a) + 1)
                ]
            for order in arrangements:
                ranks = {tok: i for i, tok in enumerate(order)}
                for j, i in pins.items():
                    ranks[("h", j)] = ranks[("f", i)]
                for perm in itertools.permutations(range(len(bars))):
                    track = dict(zip(bars, perm))
                    cand = _evaluate(recs, shapes, ranks, track, len(bars))
                    if cand is None:
                        continue
                    if best is None or cand["score"] < best["score"]:
                        best = dict(
                            cand,
                            order=order,
                            pins=dict(pins),
                            shapes=dict(zip(sids, shapes)),
                            track=track,
                            nbars=len(bars),
                        )
    return best


# -- resolution ------------------------------------------------------


class _Columns:
    """Distinct x coordinates, allocated between existing ones."""

    def __init__(self):
        self.xs = []

    def _taken(self, x):
        i = bisect_left(self.xs, x)
        return i < len(self.xs) and self.xs[i] == x

    def fresh(self, lo, hi):
        if lo is not None and hi is not None:
            x = (lo + hi) / 2
            while self._taken(x):
                x = (lo + x) / 2
        elif lo is not None:
            x = lo + 1
            while self._taken(x):
                x += 1
        elif hi is not None:
            x = hi - 1
            while self._taken(x):
                x -= 1
        else:
            x = Fraction(0)
            while self._taken(x):
                x += 1
        insort(self.xs, x)
        return x

    def beside(self, x, side):
        i = bisect_left(self.xs, x)
        if side == "east":
            hi = self.xs[i + 1] if i + 1 < len(self.xs) else None
            return self.fresh(x, hi)
        lo = self.xs[i - 1] if i > 0 else None
        return self.fresh(lo, x)


class _Piece:
    __slots__ = ("kind", "x0", "y0", "x1", "y1", "z", "key")

    def __init__(self, kind, x0, y0, x1, y1, z, key=None):
        self.kind = kind  # "bar" | "riser" | "ray" | "pass"
        self.x0, self.y0 = x0, y0
        self.x1, self.y1 = x1, y1
        self.z = z  # ("base", strip, depth) | ("over", Y) | ("under", Y)
        self.key = key  # (strip, sid, part) for montage bars


def _concrete_pieces(rec, shape, xs, ys, cut, band, strip_no):
    """Instantiate a strand's montage with real coordinates."""
    y_bot, y_top = band
    (s0, i0), (s1, i1) = rec["ends"]
    xa = xs[(s0, i0)]
    xb = xs[(s1, i1)]
    ba = y_bot if s0 == "f" else y_top
    bb = y_bot if s1 == "f" else y_top

    def depth(piece_idx):
        if rec["kind"] == "snake":
            return rec["depths"][0] if piece_idx <= cut else rec["depths"][1]
        return rec["depths"][0]

    def z(piece_idx):
        return ("base", strip_no, depth(piece_idx))

    if shape == "vert":
        return [_Piece("riser", xa, ba, xa, bb, z(0))]
    if shape in ("bar", "arc"):
        t = ys[rec["track"][(rec["sid"], 0)]]
        return [
            _Piece("riser", xa, ba, xa, t, z(0)),
            _Piece(
                "bar", xa, t, xb, t, z(1), key=(strip_no, rec["sid"], 0)
            ),
            _Piece("riser", xb, t, xb, bb, z(2)),
        ]
    ta = ys[rec["track"][(rec["sid"], 0)]]
    tb = ys[rec["track"][(rec["sid"], 1)]]
    xt = xs[("t", rec["sid"])]
    return [
        _Piece("riser", xa, ba, xa, ta, z(0)),
        _Piece("bar", xa, ta, xt, ta, z(1), key=(strip_no, rec["sid"], 0)),
        _Piece("riser", xt, ta, xt, tb, z(2)),
        _Piece("bar", xt, tb, xb, tb, z(3), key=(strip_no, rec["sid"], 1)),
        _Piece("riser", xb, tb, xb, bb, z(4)),
    ]


def resolve_strips(sd):
    """Draw every strip flat, apply the switch moves, cut into strands.

    The number of external rays never exceeds the left-directed census
    count, which the balance step capped at c + 1.
    """
    if sd.orientation is None:
        raise TricrossError("orient the strip diagram before resolving")
    od = sd.orientation
    lv = sd.leveling
    n = len(lv.order)
    cols = _Columns()
    xmap = {}  # edge -> column
    registry = {}  # (strip_no, sid) -> strand record
    end_map = {}  # (vertex, slot) -> (strip_no, sid)

    census = {}
    for seg in sd.segments:
        census.setdefault((seg.strip, seg.strand), []).append(seg.direction)

    frontier = []
    for k, (strip, info) in enumerate(zip(lv.strips, sd.strips)):
        strip_no = k + 1
        p, q = len(strip.down), len(strip.up)
        i0 = strip.split
        lo = xmap[frontier[i0 - 1]] if i0 > 0 else None
        below = frontier[i0 : i0 + p]
        hi = (
            xmap[frontier[i0 + p]]
            if i0 + p < len(frontier)
            else None
        )
        if tuple(below) != strip.down:
            raise TricrossError(f"frontier mismatch under strip {strip_no}")

        recs = [
            _entry_first(dict(r), od, strip.vertex)
            for r in info["strands"]
        ]
        for rec in recs:
            rec["census"] = tuple(
                census.get((strip_no, rec["sid"]), ())
            )
        sol = _solve_strip(recs, p, q)
        if sol is None:
            tag = info["tag"]
            raise UnsupportedDiagramError(
                f"no flat drawing found for strip {strip_no} "
                f"(T_{tag.p}^{tag.q}"
                + (" with a monogon)" if tag.monogon else ")")
            )

        feet_x = [xmap[e] for e in strip.down]
        if feet_x != sorted(set(feet_x)):
            raise TricrossError(f"columns cross under strip {strip_no}")
        xs = {("f", i): x for i, x in enumerate(feet_x)}
        cur = lo
        order = sol["order"]
        for idx, tok in enumerate(order):
            if tok[0] == "f":
                cur = xs[tok]
                continue
            nxt = hi
            for later in order[idx + 1 :]:
                if later[0] == "f":
                    nxt = xs[later]
                    break
            x = cols.fresh(cur, nxt)
            xs[tok] = x
            cur = x
        for j, i in sol["pins"].items():
            xs[("h", j)] = xs[("f", i)]
        for j, e in enumerate(strip.up):
            xmap[e] = xs[("h", j)]

        nbars = sol["nbars"]
        band = (Fraction(k), Fraction(k + 1))
        ys = {
            r: Fraction(k) + Fraction(r + 1, nbars + 1)
            for r in range(nbars)
        }
        for rec in recs:
            rec["track"] = sol["track"]
            pieces = _concrete_pieces(
                rec,
                sol["shapes"][rec["sid"]],
                xs,
                ys,
                sol["cut"],
                band,
                strip_no,
            )
            ends = rec["ends"]
            entry_edge = (strip.down, strip.up)[ends[0][0] == "h"][
                ends[0][1]
            ]
            exit_edge = (strip.down, strip.up)[ends[1][0] == "h"][
                ends[1][1]
            ]
            registry[(strip_no, rec["sid"])] = {
                "pieces": pieces,
                "entry_edge": entry_edge,
                "exit_edge": exit_edge,
                "exit_side": ends[1][0],
                "vertex": strip.vertex,
                "disciplines": {
                    (strip_no, sid, part): disc
                    for (sid, part), disc in sol["lefts"].items()
                },
            }
            for slot in rec["slots"]:
                end_map[(strip.vertex, slot)] = (strip_no, rec["sid"])
        frontier = (
            list(frontier[:i0]) + list(strip.up) + list(frontier[i0 + p :])
        )
    if frontier:
        raise TricrossError("columns left over above the top strip")

    strip_of = {v: k + 1 for k, v in enumerate(lv.order)}
    disciplines = {}
    for entry in registry.values():
        disciplines.update(entry["disciplines"])

    # closed paths: montage strands joined by their columns
    paths = []
    seen = set()
    for start in sorted(registry):
        if start in seen:
            continue
        pieces = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            entry = registry[cur]
            pieces.extend(entry["pieces"])
            e = entry["exit_edge"]
            v = entry["vertex"]
            here = next(end for end in e if end[0] == v)
            other = e[0] if e[1] == here else e[1]
            x = xmap[e]
            if entry["exit_side"] == "h":
                y0 = Fraction(strip_of[v])
                y1 = Fraction(strip_of[other[0]] - 1)
            else:
                y0 = Fraction(strip_of[v] - 1)
                y1 = Fraction(strip_of[other[0]])
            if y0 != y1:
                pieces.append(_Piece("pass", x, y0, x, y1, ("base", None, None)))
            cur = end_map[other]
        paths.append(pieces)

    # switch every left-directed bar
    switches = []
    for pi, pieces in enumerate(paths):
        for idx, pc in enumerate(pieces):
            if pc.kind == "bar" and pc.x1 < pc.x0:
                switches.append((pc.key, pi, idx, pc))
    switches.sort(key=lambda s: (s[0][0], s[3].y0, min(s[3].x0, s[3].x1)))
    if sd.lefts is not None and len(switches) > sd.lefts:
        raise TricrossError(
            f"{len(switches)} switches exceed the {sd.lefts} "
            "left-directed segments of the census"
        )

    over_count = 0
    under_count = 0
    levels = {}
    for key, pi, idx, pc in switches:
        disc = disciplines[key]
        if disc == "over":
            over_count += 1
            levels[(pi, idx)] = Fraction(n + over_count)
        else:
            under_count += 1
            levels[(pi, idx)] = Fraction(-under_count)

    west = Fraction(-(10**9))
    east = Fraction(10**9)
    strands = []
    for pi, pieces in enumerate(paths):
        cut_idxs = sorted(idx for key, p2, idx, pc in switches if p2 == pi)
        if not cut_idxs:
            raise TricrossError(
                "a component kept every bar right-directed; "
                "closed strands cannot enter a braid"
            )
        for a, idx in enumerate(cut_idxs):
            nxt = cut_idxs[(a + 1) % len(cut_idxs)]
            bar_in = pieces[idx]
            bar_out = pieces[nxt]
            y_in = levels[(pi, idx)]
            y_out = levels[(pi, nxt)]
            fam_in = "over" if y_in > 0 else "under"
            fam_out = "over" if y_out > 0 else "under"
            xb = bar_in.x1
            xa = bar_out.x0
            xb2 = cols.beside(xb, "west")
            xa2 = cols.beside(xa, "east")
            prelude = [
                _Piece("ray", west, y_in, xb2, y_in, (fam_in, y_in)),
                _Piece("riser", xb2, y_in, xb2, bar_in.y0, (fam_in, y_in)),
                _Piece("bar", xb2, bar_in.y0, xb, bar_in.y0, bar_in.z),
            ]
            coda = [
                _Piece("bar", xa, bar_out.y0, xa2, bar_out.y0, bar_out.z),
                _Piece("riser", xa2, bar_out.y0, xa2, y_out, (fam_out, y_out)),
                _Piece("ray", xa2, y_out, east, y_out, (fam_out, y_out)),
            ]
            if nxt > idx:
                middle = pieces[idx + 1 : nxt]
            else:
                middle = pieces[idx + 1 :] + pieces[:nxt]
            strands.append(
                {
                    "pieces": prelude + middle + coda,
                    "west": y_in,
                    "east": y_out,
                }
            )

    # ray records: pair each switch's exit with its own re-entry
    by_level = {}
    for st in strands:
        by_level.setdefault(st["west"], {})["enter"] = st["pieces"][0].x1
        by_level.setdefault(st["east"], {})["exit"] = st["pieces"][-1].x0
    rays = tuple(
        RayRecord(
            level=int(y),
            strip=next(
                s[3].key[0]
                for s in switches
                if levels[(s[1], s[2])] == y
            ),
            x_exit=ends["exit"],
            x_enter=ends["enter"],
        )
        for y, ends in sorted(by_level.items())
    )

    for st in strands:
        xcur = west
        for pc in st["pieces"]:
            if pc.x0 < xcur or pc.x1 < pc.x0:
                raise TricrossError("strand runs back west; layout defect")
            xcur = pc.x1

    return StripDiagram(
        diagram=sd.diagram,
        leveling=sd.leveling,
        tags=sd.tags,
        segments=sd.segments,
        strips=sd.strips,
        orientation=sd.orientation,
        rotated=sd.rotated,
        lefts=sd.lefts,
        rights=sd.rights,
        rays=rays,
        plan={"strands": strands, "closed": paths, "n_strips": n},
    )


# -- reading the braid -----------------------------------------------


def _beats(z1, z2):
    """Does a piece with z-data z1 pass over one with z2 where they cross?

    Switched strands are re-routed one at a time, and each new detour
    slides in beneath the sheets its family has already claimed.  So
    when two detours of one family meet, the earlier switch, the ray
    nearer the strips, passes over.
    """
    c1, c2 = z1[0], z2[0]
    if c1 == "base" and c2 == "base":
        if z1[1] != z2[1] or z1[2] == z2[2] or z1[2] is None:
            raise TricrossError("crossing between unrelated strips")
        return z1[2] < z2[2]
    if c1 == "over":
        return c2 != "over" or z1[1] < z2[1]
    if c1 == "under":
        return c2 == "under" and z1[1] > z2[1]
    return c2 == "under"


def emit_braid(sd):
    """Sweep the resolved picture west to east and spell out the word."""
    if sd.plan is None:
        raise TricrossError("resolve the strip diagram before emitting")
    strands = sd.plan["strands"]

    bars = []
    risers = []
    for si, st in enumerate(strands):
        for ip, pc in enumerate(st["pieces"]):
            if pc.y0 == pc.y1 and pc.x0 != pc.x1:
                bars.append((pc, si))
            elif pc.x0 == pc.x1 and pc.y0 != pc.y1:
                risers.append((pc, si, ip))

    events = {}
    owner = {}
    for rpc, rsi, rip in risers:
        ylo, yhi = sorted((rpc.y0, rpc.y1))
        for bpc, bsi in bars:
            xlo, xhi = sorted((bpc.x0, bpc.x1))
            if xlo < rpc.x0 < xhi and ylo < bpc.y0 < yhi:
                if bsi == rsi:
                    raise TricrossError("strand crosses itself; layout defect")
                if rpc.kind == "pass":
                    raise TricrossError("column crossed; layout defect")
                if owner.setdefault(rpc.x0, rsi) != rsi:
                    raise TricrossError(
                        "two strands share a column; layout defect"
                    )
                events.setdefault((rpc.x0, rip, rsi), []).append(
                    (bpc, bsi, rpc)
                )

    order = sorted(
        range(len(strands)), key=lambda si: strands[si]["west"]
    )
    pos = {si: i for i, si in enumerate(order)}

    letters = []
    for (x, rip, rsi), hits in sorted(events.items()):
        rpc = hits[0][2]
        ascending = rpc.y1 > rpc.y0
        hits.sort(key=lambda h: h[0].y0, reverse=not ascending)
        for bpc, bsi, _ in hits:
            pm, pb = pos[rsi], pos[bsi]
            if abs(pm - pb) != 1:
                raise TricrossError("non-adjacent strands cross; sweep defect")
            mover_over = _beats(rpc.z, bpc.z)
            climber_over = mover_over if ascending else not mover_over
            # Flattened picture flows east with position 1 at the bottom;
            # rotating it into the vertical word convention sends the
            # position-climbing strand to the descending one.
            i = min(pm, pb) + 1
            letters.append(-i if climber_over else i)
            order[pm], order[pb] = order[pb], order[pm]
            pos[rsi], pos[bsi] = pb, pm

    finish = sorted(
        range(len(strands)), key=lambda si: strands[si]["east"]
    )
    if order != finish:
        raise TricrossError("strands end out of order; sweep defect")
    return BraidWord(len(strands), tuple(letters))


# -- the whole pipeline ----------------------------------------------


def braidify(d):
    """Normalize, level, flatten and switch a projection into a braid.

    The word uses at most c + 1 strands for c surviving crossings, and
    its closure is the same link.  Projections that normalization has to
    leave irregular (overlapping loop pairs, loops on one strand) and
    split diagrams are refused.
    """
    normalized, report = normalize_diagram(d)
    if report.warnings:
        raise UnsupportedDiagramError(
            "normalization left irregular structure: "
            + "; ".join(report.warnings)
        )
    if not normalized.crossings:
        if normalized.free_loops == 1:
            return BraidWord(1, ())
        if normalized.free_loops == 0:
            raise TricrossError("empty diagram has no braid")
        raise DisconnectedError(
            f"{normalized.free_loops} split circles cannot close one braid"
        )
    if normalized.free_loops or len(normalized.crossing_components()) > 1:
        raise DisconnectedError("split after normalization")

    graph, records = strip_monogons(normalized)
    lv = bisect_level(graph, records)
    sd = to_strip_diagram(normalized, lv)
    od = natural_orientation(normalized)
    sd = orient_and_balance(sd, od)
    sd = resolve_strips(sd)
    word = emit_braid(sd)
    c = len(normalized.crossings)
    if word.strands > c + 1:
        raise TricrossError(
            f"{word.strands} strands exceed the bound {c + 1}"
        )
    return word
