"""HOMFLY polynomials by descending-diagram skein resolution.

Convention: v^-1 P(L+) - v P(L-) = z P(L0) with P(unknot) = 1, so a
positive crossing resolves as P+ = v^2 P- + v z P0 and a negative one as
P- = v^-2 P+ - v^-1 z P0.  Walking the components from canonical
basepoints, the first crossing first met on its understrand gets
resolved; diagrams with no such crossing are unlinks worth
delta^(components-1).
"""

import sys
import warnings

from .diagram import MultiCrossingDiagram, OrientedDiagram, excise
from .errors import (
    DisconnectedError,
    NodeBudgetExceeded,
    TricrossError,
    UnsupportedDiagramError,
)
from .polynomials import DELTA, LaurentPoly2, v_span

DEFAULT_NODE_BUDGET = 10**7
# canonical keys cost quadratic work per node; past this crossing count
# only the cheap exact-labeling key is used
CANON_SIZE_LIMIT = 12

_V2 = LaurentPoly2.monomial(1, 2, 0)
_VZ = LaurentPoly2.monomial(1, 1, 1)
_VM2 = LaurentPoly2.monomial(1, -2, 0)
_MVM1Z = LaurentPoly2.monomial(-1, -1, 1)


def _delta_power(k):
    return DELTA**k


def _oriented(crossings, edges, loops, direction):
    d = MultiCrossingDiagram(crossings, edges, loops, validate=False)
    keep = {e: direction[e] for e in d.all_ends()}
    return OrientedDiagram(d, keep, validate=False)


def switch_crossing(od, cid):
    """Flip over/under at one order-2 crossing."""
    x = od.diagram.crossings[cid]
    crossings = dict(od.diagram.crossings)
    crossings[cid] = type(x)(2, (x.levels[1], x.levels[0]))
    return _oriented(crossings, od.diagram.edges, od.diagram.free_loops, od.direction)


def smooth_crossing(od, cid):
    """Oriented smoothing: reconnect each inbound slot to the outgoing
    slot next to it, the only reconnection that avoids a new crossing."""
    d = od.diagram
    for s in range(4):
        if not od.direction[(cid, s)] and not od.direction[(cid, (s + 1) % 4)]:
            pairs = [(s, (s + 3) % 4), ((s + 1) % 4, (s + 2) % 4)]
            d2 = excise(d, {cid: pairs}, validate=False)
            keep = {e: od.direction[e] for e in d2.all_ends()}
            return OrientedDiagram(d2, keep, validate=False)
    raise TricrossError(f"no adjacent inbound slot pair at {cid}")


def _excise_oriented(od, pairings):
    d2 = excise(od.diagram, pairings, validate=False)
    keep = {e: od.direction[e] for e in d2.all_ends()}
    return OrientedDiagram(d2, keep, validate=False)


def _preprocess(od):
    """Peel kinks and pull-apart bigons until none remain.

    Both moves are ambient isotopies, so no prefactor accrues; freed
    circles pile up in free_loops for the caller to factor out.
    """
    while True:
        d = od.diagram
        kink = next(
            (a[0] for a, b in d.edges if a[0] == b[0] and d.crossings[a[0]].order == 2),
            None,
        )
        if kink is not None:
            od = _excise_oriented(od, {kink: [(0, 2), (1, 3)]})
            continue
        done = True
        for walk in d._trace_faces():
            if len(walk) != 2:
                continue
            e1, e2 = walk
            c1, c2 = e1[0], e2[0]
            if c1 == c2:
                continue
            # strand through e1 must be on the same level at both crossings
            p = d.mate[e1]
            if d.crossings[c1].depth_at(e1[1]) == d.crossings[c2].depth_at(p[1]):
                through = [(0, 2), (1, 3)]
                od = _excise_oriented(od, {c1: through, c2: through})
                done = False
                break
        if done:
            return od


def _directed_orbits(od):
    d = od.diagram
    orbits = []
    seen = set()
    for e0 in sorted(e for e in d.all_ends() if od.direction[e]):
        if e0 in seen:
            continue
        orbit = []
        e = e0
        while e not in seen:
            seen.add(e)
            orbit.append(e)
            e = d.through(d.mate[e])
        orbits.append(orbit)
    return orbits


def _first_bad(od, heuristic):
    """(first crossing reached understrand-first, component count)."""
    orbits = _directed_orbits(od)
    if heuristic == "Z":
        rotated = []
        for orbit in reversed(orbits):
            i = orbit.index(max(orbit))
            rotated.append(orbit[i:] + orbit[:i])
        orbits = rotated
    d = od.diagram
    visited = set()
    for orbit in orbits:
        for e in orbit:
            arrive = d.mate[e]
            cid = arrive[0]
            if cid in visited:
                continue
            visited.add(cid)
            if d.crossings[cid].depth_at(arrive[1]) != 1:
                return cid, len(orbits)
    return None, len(orbits)


def _exact_key(od):
    d = od.diagram
    return (
        tuple(sorted((cid, x.levels) for cid, x in d.crossings.items())),
        tuple(d.edges),
        d.free_loops,
        tuple(sorted(od.direction.items())),
    )


def canonical_key(od):
    """Serialization invariant under crossing relabeling and slot rotation.

    Minimizes a breadth-first code over all start darts, per connected
    component; components sort into a bag.  Quadratic in diagram size.
    """
    d = od.diagram
    comp_codes = []
    for comp in d.crossing_components():
        ends = [e for e in d.all_ends() if e[0] in comp]
        best = None
        for start in ends:
            code = _bfs_code(od, start)
            if best is None or code < best:
                best = code
        comp_codes.append(best)
    return (tuple(sorted(comp_codes)), d.free_loops)


def _bfs_code(od, start):
    d = od.diagram
    label = {start[0]: (0, start[1])}
    order = [start[0]]
    head = 0
    while head < len(order):
        cid = order[head]
        head += 1
        _idx, off = label[cid]
        n2 = 2 * d.crossings[cid].order
        for j in range(n2):
            nb = d.mate[(cid, (off + j) % n2)][0]
            if nb not in label:
                label[nb] = (len(order), d.mate[(cid, (off + j) % n2)][1])
                order.append(nb)
    code = []
    for cid in order:
        _idx, off = label[cid]
        x = d.crossings[cid]
        n, n2 = x.order, 2 * x.order
        levels = tuple(x.levels[(off + k) % n] for k in range(n))
        dirs = tuple(od.direction[(cid, (off + j) % n2)] for j in range(n2))
        nbrs = []
        for j in range(n2):
            m = d.mate[(cid, (off + j) % n2)]
            midx, moff = label[m[0]]
            m_n2 = 2 * d.crossings[m[0]].order
            nbrs.append((midx, (m[1] - moff) % m_n2))
        code.append((n, levels, dirs, tuple(nbrs)))
    return tuple(code)


class _Skein:
    def __init__(self, heuristic, budget):
        self.heuristic = heuristic
        self.budget = budget
        self.nodes = 0
        self.memo = {}

    def evaluate(self, od):
        self.nodes += 1
        if self.nodes > self.budget:
            raise NodeBudgetExceeded(self.budget)
        od = _preprocess(od)
        d = od.diagram
        prefactor = None
        if d.free_loops:
            if not d.crossings:
                return _delta_power(d.free_loops - 1)
            prefactor = _delta_power(d.free_loops)
            od = _oriented(d.crossings, d.edges, 0, od.direction)
            d = od.diagram
        if not d.crossings:
            raise TricrossError("empty diagram has no HOMFLY polynomial")

        comps = d.crossing_components()
        if len(comps) > 1:
            result = _delta_power(len(comps) - 1)
            for comp in comps:
                sub = self._restrict(od, comp)
                result = result * self.evaluate(sub)
            return result if prefactor is None else prefactor * result

        key = _exact_key(od)
        value = self.memo.get(key)
        canon = None
        if value is None and len(d.crossings) <= CANON_SIZE_LIMIT:
            canon = canonical_key(od)
            value = self.memo.get(canon)
        if value is None:
            value = self._resolve(od)
            self.memo[key] = value
            if canon is not None:
                self.memo[canon] = value
        return value if prefactor is None else prefactor * value

    def _restrict(self, od, comp):
        d = od.diagram
        crossings = {cid: d.crossings[cid] for cid in comp}
        edges = [e for e in d.edges if e[0][0] in comp]
        return _oriented(crossings, edges, 0, od.direction)

    def _resolve(self, od):
        bad, ncomp = _first_bad(od, self.heuristic)
        if bad is None:
            return _delta_power(ncomp - 1)
        switched = self.evaluate(switch_crossing(od, bad))
        smoothed = self.evaluate(smooth_crossing(od, bad))
        if od.sign(bad) > 0:
            return _V2 * switched + _VZ * smoothed
        return _VM2 * switched + _MVM1Z * smoothed


def homfly(od, heuristic="A", node_budget=None):
    """Full HOMFLY polynomial of an oriented double-crossing diagram."""
    for cid, x in od.diagram.crossings.items():
        if x.order != 2:
            raise UnsupportedDiagramError(
                f"skein resolution needs order-2 crossings; {cid} has order {x.order}"
            )
    if not od.diagram.crossings and not od.diagram.free_loops:
        raise TricrossError("empty diagram has no HOMFLY polynomial")
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    depth_room = 20 * (len(od.diagram.crossings) + 10) ** 2
    if sys.getrecursionlimit() < depth_room:
        sys.setrecursionlimit(depth_room)
    return _Skein(heuristic, budget).evaluate(od)


def mfw_lower_bound(p):
    """Braid index is at least v-span/2 + 1."""
    s = v_span(p)
    if s % 2:
        warnings.warn(f"odd v-span {s}; flooring the bound", stacklevel=2)
    return s // 2 + 1


def theorem1_upper_bound(d):
    """Braid index is at most the normalized triple-crossing count plus one.

    Normalization can reveal a split link even though the input diagram is
    connected; braid index adds over split pieces, so each piece of the
    normalized projection contributes its crossing count plus one, and
    each bare circle contributes one strand.
    """
    if not d.is_connected():
        raise DisconnectedError("upper bound needs a non-split diagram")
    for cid, x in d.crossings.items():
        if x.order != 3:
            raise UnsupportedDiagramError(
                f"triple-crossing count needs an all-triple diagram; "
                f"{cid} has order {x.order}"
            )
    from .moves import normalize_diagram

    norm, _report = normalize_diagram(d)
    pieces = norm.crossing_components()
    return sum(len(p) + 1 for p in pieces) + norm.free_loops
