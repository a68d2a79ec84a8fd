"""An infinite knot family whose braid index meets the crossing bound.

Each member is a horizontal chain of 2n+2 triple crossings closed into a
knot: n+1 two-crossing motifs whose depth patterns read top-bottom-middle
then bottom-top-middle along the chain.  Its HOMFLY v-span grows as
4n+4, so the span lower bound on the double-crossing braid index reaches
(4n+4)/2 + 1 = 2n+3, while the strip construction gives at most
(2n+2)+1 = 2n+3 strands.  Both bounds are computed here: the lower one
by a linear recurrence on span classes of the six tangle closures that
arise when the chain is resolved motif by motif, the upper one by
counting crossings.

The recurrence state tracks, for a chain of i motifs, the classes of the
four plain two-strand closures (high/low on each side) and of the two
partial-motif closures (one and two crossings deep).  Two of the plain
closures are constant in i: capping the right end high lets both
crossings of the last motif slide off the loop, one over and one under.
"""

from dataclasses import dataclass

from .diagram import Crossing, MultiCrossingDiagram
from .errors import TricrossError
from .polynomials import SpanClassPoly, v_span

# depth patterns of the two crossings of one motif: levels[k] is the
# depth of the strand entering east slot k
MOTIF_LEVELS = ((3, 1, 2), (1, 3, 2))

TANGLE_NAMES = ("highhigh", "highlow", "lowhigh", "lowlow", "bmt", "tbmbtm")

# constant classes: the removable-pair closures
LOWLOW = SpanClassPoly((-5, -1))
LOWHIGH = SpanClassPoly((-4, 0))

_V = SpanClassPoly((1,))
_VINV = SpanClassPoly((-1,))
_V2 = SpanClassPoly((2,))
_V3 = SpanClassPoly((3,))
_ONE_PLUS_V2 = SpanClassPoly((0, 2))
_V_PLUS_V3 = SpanClassPoly((1, 3))
_V2_PLUS_V4 = SpanClassPoly((2, 4))


@dataclass(frozen=True)
class FamilyState:
    """Span classes of the six tangle closures at chain length ``index``."""

    index: int
    highhigh: SpanClassPoly
    highlow: SpanClassPoly
    lowhigh: SpanClassPoly
    lowlow: SpanClassPoly
    bmt: SpanClassPoly
    tbmbtm: SpanClassPoly

    def __post_init__(self):
        if self.index < 1:
            raise TricrossError("family index starts at 1")
        for name in TANGLE_NAMES:
            if getattr(self, name).is_zero():
                raise TricrossError(f"span class {name} is empty")

    def classes(self):
        return {name: getattr(self, name) for name in TANGLE_NAMES}


@dataclass(frozen=True)
class VerificationReport:
    """Both braid-index bounds for one family member, and their agreement."""

    n: int
    span: int
    mfw_lower: int
    upper: int
    bounds_equal: bool
    recurrence_matches_closed_form: bool


def initial_state():
    """State of the single-motif chain, checked by direct skein runs."""
    return FamilyState(
        index=1,
        highhigh=SpanClassPoly((-1, 1)),
        highlow=SpanClassPoly((0,)),
        lowhigh=LOWHIGH,
        lowlow=LOWLOW,
        bmt=SpanClassPoly((-5, -1)),
        tbmbtm=SpanClassPoly((-4, 4)),
    )


def recurrence_step(s):
    """Classes after appending one motif to the chain.

    Resolving the two new crossings expresses each closure of the longer
    chain in the closures of the shorter one; positive-multiplicity span
    arithmetic keeps the extremes exact.  The partial-motif steps consume
    the already-updated one-crossing and high-high classes.
    """
    highhigh = _V_PLUS_V3 * s.lowhigh + _V2_PLUS_V4 * s.highhigh
    highlow = _V_PLUS_V3 * s.lowlow + _V2_PLUS_V4 * s.highlow
    bmt = (
        _V * s.lowhigh
        + _VINV * s.tbmbtm
        + _ONE_PLUS_V2 * s.lowlow
        + _V3 * s.highlow
        + _V2 * s.bmt
    )
    tbmbtm = _V * s.lowlow + _V3 * bmt + _V3 * highhigh + _V2 * s.tbmbtm
    return FamilyState(
        index=s.index + 1,
        highhigh=highhigh,
        highlow=highlow,
        lowhigh=s.lowhigh,
        lowlow=s.lowlow,
        bmt=bmt,
        tbmbtm=tbmbtm,
    )


def closed_form(n, name):
    """Two-term representative of a tangle class at chain length n.

    Only the extremes are meaningful; the recurrence piles up interior
    terms that the closed forms drop.
    """
    if n < 1:
        raise TricrossError("family index starts at 1")
    if name == "highhigh":
        return SpanClassPoly((-3, 4 * n - 3) if n >= 2 else (-1, 1))
    if name == "highlow":
        return SpanClassPoly((-4, 4 * n - 4) if n >= 2 else (0,))
    if name == "lowhigh":
        return LOWHIGH
    if name == "lowlow":
        return LOWLOW
    if name == "bmt":
        return SpanClassPoly((-5, 4 * n - 5))
    if name == "tbmbtm":
        return SpanClassPoly((-4, 4 * n))
    raise TricrossError(f"unknown tangle name {name!r}")


def state_at(n):
    """Recurrence state at chain length n, iterated from the base."""
    s = initial_state()
    while s.index < n:
        s = recurrence_step(s)
    return s


def verify_theorem(n):
    """Check that both braid-index bounds meet at 2n+3.

    Raises when the iterated recurrence and the closed forms disagree on
    any class's extremes; that cannot happen unless one of them was
    transcribed wrong.
    """
    s = state_at(n)
    agree = all(
        getattr(s, name).extremes() == closed_form(n, name).extremes()
        for name in TANGLE_NAMES
    )
    if not agree:
        raise TricrossError(
            f"recurrence and closed forms disagree at index {n}"
        )
    span = v_span(s.tbmbtm)
    mfw = span // 2 + 1
    upper = (2 * n + 2) + 1
    if span != 4 * n + 4 or mfw != upper:
        raise TricrossError(
            f"bounds fail to meet at index {n}: span {span}, "
            f"lower {mfw}, upper {upper}"
        )
    return VerificationReport(
        n=n,
        span=span,
        mfw_lower=mfw,
        upper=upper,
        bounds_equal=True,
        recurrence_matches_closed_form=True,
    )


def build_family_diagram(n):
    """The n-th family knot as a triple-crossing rotation system.

    2n+2 crossings sit in a row, joined by three parallel arcs each to
    the next; depth patterns alternate between the two motif halves.  The
    closure caps middle and bottom on the west end, middle and top on the
    east end, and runs the remaining strand around the outside.  One
    component, and the span of its HOMFLY polynomial is 4n+4.
    """
    if n < 1:
        raise TricrossError("family index starts at 1")
    m = 2 * n + 2
    crossings = {}
    edges = []
    for c in range(m):
        crossings[c] = Crossing(3, MOTIF_LEVELS[c % 2])
        if c + 1 < m:
            edges += [
                ((c, 0), (c + 1, 3)),
                ((c, 1), (c + 1, 2)),
                ((c, 5), (c + 1, 4)),
            ]
    edges += [
        ((0, 2), (m - 1, 5)),
        ((0, 3), (0, 4)),
        ((m - 1, 0), (m - 1, 1)),
    ]
    return MultiCrossingDiagram(crossings, edges)
