"""Small-diagram builders shared by the test suite.

Random sampling is rejection-based: draw a perfect matching on the slot
ends, a leveling per crossing, and keep the result only if it validates
(planar rotation system) and meets the connectivity requirement.
Exhaustive enumerations cover every one- and two-crossing diagram.
"""

import itertools

from tricross.diagram import Crossing, MultiCrossingDiagram, orient, decompose_triple
from tricross.errors import TricrossError
from tricross.homfly import homfly

LEVELINGS = tuple(itertools.permutations((1, 2, 3)))


def perfect_matchings(ends):
    if not ends:
        yield []
        return
    first, rest = ends[0], ends[1:]
    for i, other in enumerate(rest):
        for tail in perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


def try_build(n_crossings, edges, levels_by_cid):
    crossings = {
        cid: Crossing(3, levels_by_cid[cid]) for cid in range(n_crossings)
    }
    try:
        return MultiCrossingDiagram(crossings, edges)
    except TricrossError:
        return None


def all_triple_diagrams(n_crossings, connected=True):
    """Every valid all-triple diagram on crossings 0..n-1, all levelings."""
    ends = [(c, s) for c in range(n_crossings) for s in range(6)]
    out = []
    for matching in perfect_matchings(ends):
        shape = try_build(
            n_crossings, matching, {c: (1, 2, 3) for c in range(n_crossings)}
        )
        if shape is None:
            continue
        if connected and not shape.is_connected():
            continue
        for combo in itertools.product(LEVELINGS, repeat=n_crossings):
            out.append(
                MultiCrossingDiagram(
                    {c: Crossing(3, combo[c]) for c in range(n_crossings)},
                    matching,
                    validate=False,
                )
            )
    return out


def random_triple_diagram(rng, n_crossings, connected=True, max_tries=200000):
    # acceptance is ~1/2000 at four crossings, so the budget leaves
    # exhaustion odds negligible even across hundreds of draws
    ends = [(c, s) for c in range(n_crossings) for s in range(6)]
    for _ in range(max_tries):
        pool = ends[:]
        rng.shuffle(pool)
        edges = [(pool[2 * i], pool[2 * i + 1]) for i in range(len(pool) // 2)]
        levels = {c: LEVELINGS[rng.randrange(6)] for c in range(n_crossings)}
        d = try_build(n_crossings, edges, levels)
        if d is None:
            continue
        if connected and not d.is_connected():
            continue
        return d
    raise RuntimeError(f"no valid diagram found in {max_tries} tries")


def stack3():
    """Three triple crossings wired as a closed braid-like cycle."""
    return MultiCrossingDiagram(
        {c: Crossing(3, (1, 2, 3)) for c in range(3)},
        [((c, s), ((c + 1) % 3, 5 - s)) for c in range(3) for s in range(3)],
    )


def insert_triple(rng, d, levels=None):
    """Splice a fresh triple crossing across three edges of one face.

    Cutting three distinct edges bordering a common face and routing all
    six loose ends to a new vertex inside it keeps the rotation system
    planar and connected, adds no monogon, and creates no cut vertex, so
    the result is normalized whenever the input was.
    """
    walks = [w for w in d._trace_faces() if len({_edge_of(d, e) for e in w}) >= 3]
    if not walks:
        raise ValueError("no face borders three distinct edges")
    walk = walks[rng.randrange(len(walks))]
    while True:
        picks = sorted(rng.sample(range(len(walk)), 3))
        darts = [walk[i] for i in picks]
        if len({_edge_of(d, e) for e in darts}) == 3:
            break
    vid = max(d.crossings) + 1
    shift = rng.randrange(6)
    # walk order runs clockwise around the face, the new vertex's
    # rotation counterclockwise, so attachments read in reverse:
    # per cut edge the far side comes first, then the near side
    stubs = []
    for dart in reversed(darts):
        stubs.append(d.mate[dart])
        stubs.append(dart)
    cut = {_edge_of(d, e) for e in darts}
    edges = [e for e in d.edges if e not in cut]
    edges += [(stub, (vid, (shift + i) % 6)) for i, stub in enumerate(stubs)]
    crossings = dict(d.crossings)
    crossings[vid] = Crossing(3, levels or LEVELINGS[rng.randrange(6)])
    return MultiCrossingDiagram(crossings, edges, d.free_loops)


def _edge_of(d, end):
    return tuple(sorted((end, d.mate[end])))


def grow_normalized(rng, n_crossings):
    """A random normalized connected diagram with the given crossing count.

    Grown by repeated face splices from a three-crossing stack, so the
    result needs no normalization pass; sizes below three are not covered.
    """
    if n_crossings < 3:
        raise ValueError("grown diagrams start at three crossings")
    d = stack3()
    while len(d.crossings) < n_crossings:
        d = insert_triple(rng, d)
    return d


def surviving_pieces(rng, n_crossings, count, max_attempts=400):
    """Normalized, warning-free pieces that kept some crossings.

    Random draws mostly dissolve into unknots or trip a clasp warning, so
    this keeps sampling until `count` usable pieces showed up (or the
    attempt budget ran out).  Each piece is connected and normalized.
    """
    import warnings

    from tricross.errors import UnsupportedDiagramError
    from tricross.moves import _split, normalize_diagram

    out = []
    for _ in range(max_attempts):
        if len(out) >= count:
            break
        try:
            d = random_triple_diagram(rng, n_crossings)
        except RuntimeError:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                norm, report = normalize_diagram(d)
            except UnsupportedDiagramError:
                continue
        if report.warnings:
            continue
        for piece in _split(norm):
            if piece.crossings:
                out.append(piece)
    return out


def homfly_orientation_set(d):
    """HOMFLY values of a diagram over component orientations.

    Decomposes triple crossings first.  The first component's direction is
    fixed; reversing everything at once never changes the polynomial, so
    the remaining 2^(k-1) choices make the set complete.  Two diagrams of
    the same link, however their components ended up directed, share at
    least the full set; equality of sets is the invariance check used on
    multi-component fixtures, and for knots it is plain equality.
    """
    from tricross.diagram import OrientedDiagram

    d2 = decompose_triple(d)
    base = orient(d2)
    comps = []
    seen = set()
    for orbit in d2.strand_orbits():
        ends = frozenset(orbit) | frozenset(d2.mate[e] for e in orbit)
        if ends in seen:
            continue
        seen.add(ends)
        comps.append(ends)
    values = set()
    for mask in range(2 ** max(0, len(comps) - 1)):
        direction = dict(base.direction)
        for i, ends in enumerate(comps[1:]):
            if mask >> i & 1:
                for e in ends:
                    direction[e] = not direction[e]
        values.add(homfly(OrientedDiagram(d2, direction)))
    return frozenset(values)
