import random

import pytest

from tricross.diagram import Crossing, MultiCrossingDiagram, parse_diagram
from tricross.errors import (
    DisconnectedError,
    LevelingNotFound,
    TricrossError,
    UnsupportedDiagramError,
)
from tricross.leveling import (
    rotate_leveling,
    Leveling,
    PlaneGraph,
    Strip,
    StripTag,
    bisect_level,
    check_leveling,
    classify_strips,
    strip_monogons,
)
from tricross.moves import _split, normalize_diagram

from diagen import all_triple_diagrams, grow_normalized, surviving_pieces

from test_diagram import TREFOIL_DOUBLES


def build(crossings, edges):
    cr = {cid: Crossing(len(lv), lv) for cid, lv in crossings.items()}
    return MultiCrossingDiagram(cr, edges)


def dipole():
    """Two vertices joined by three edges, rotations reversed: planar."""
    return PlaneGraph(
        {"a": (0, 1, 2), "b": (0, 1, 2)},
        [
            (("a", 0), ("b", 0)),
            (("a", 1), ("b", 2)),
            (("a", 2), ("b", 1)),
        ],
    )


E1 = (("a", 0), ("b", 0))
E2 = (("a", 1), ("b", 2))
E3 = (("a", 2), ("b", 1))


def pinned_pair():
    """Two crossings, one pinned monogon each, four connecting edges."""
    return build(
        {"v": (1, 3, 2), "u": (2, 1, 3)},
        [
            (("v", 0), ("v", 1)),
            (("v", 2), ("u", 3)),
            (("v", 3), ("u", 2)),
            (("v", 4), ("u", 1)),
            (("v", 5), ("u", 0)),
            (("u", 4), ("u", 5)),
        ],
    )


def six_dipole():
    """Two triple crossings joined by six nested edges."""
    return build(
        {"u": (1, 2, 3), "v": (1, 2, 3)},
        [(("v", i), ("u", 5 - i)) for i in range(6)],
    )


class TestPlaneGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(TricrossError, match="strip monogons first"):
            PlaneGraph({"a": (0, 1)}, [(("a", 0), ("a", 1))])

    def test_rejects_unmatched_slot(self):
        with pytest.raises(TricrossError, match="not matched"):
            PlaneGraph(
                {"a": (0, 1), "b": (0,)},
                [(("a", 0), ("b", 0))],
            )

    def test_rejects_double_use(self):
        with pytest.raises(TricrossError, match="used twice"):
            PlaneGraph(
                {"a": (0, 1), "b": (0, 1)},
                [(("a", 0), ("b", 0)), (("a", 0), ("b", 1))],
            )

    def test_connectivity(self):
        g = dipole()
        assert g.is_connected()
        g2 = PlaneGraph(
            {"a": (0,), "b": (0,), "c": (0,), "d": (0,)},
            [(("a", 0), ("b", 0)), (("c", 0), ("d", 0))],
        )
        assert not g2.is_connected()


class TestStripMonogons:
    def test_round_trip_identity(self):
        d = pinned_pair()
        g, records = strip_monogons(d)
        loops = [
            tuple(sorted(((r.vertex, r.slots[0]), (r.vertex, r.slots[1]))))
            for r in records
        ]
        assert sorted(g.edges + loops) == d.edges

    def test_records_carry_depths(self):
        _, records = strip_monogons(pinned_pair())
        assert len(records) == 2
        by_vertex = {r.vertex: r for r in records}
        assert by_vertex["v"].slots == (0, 1)
        assert by_vertex["v"].depths == (1, 3)
        assert by_vertex["u"].slots == (4, 5)
        assert by_vertex["u"].depths == (1, 3)

    def test_rotation_skips_loop_slots(self):
        g, _ = strip_monogons(pinned_pair())
        assert g.rotations["v"] == (2, 3, 4, 5)
        assert g.rotations["u"] == (0, 1, 2, 3)

    def test_no_monogons_is_identity(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        g, records = strip_monogons(d)
        assert records == ()
        assert sorted(g.edges) == d.edges

    def test_refuses_residual_cut_vertex(self):
        from test_moves import two_four_cut

        with pytest.raises(UnsupportedDiagramError, match="cut vertex"):
            strip_monogons(two_four_cut())

    def test_refuses_disconnected_diagram(self):
        d = build(
            {"a": (1, 2, 3), "b": (1, 2, 3)},
            [(("a", 2 * s), ("a", 2 * s + 1)) for s in range(3)]
            + [(("b", 2 * s), ("b", 2 * s + 1)) for s in range(3)],
        )
        with pytest.raises(DisconnectedError):
            strip_monogons(d)


class TestBisectLevel:
    def test_dipole_golden(self):
        lv = bisect_level(dipole())
        assert lv.order == ("a", "b")
        assert lv.strips[0].down == ()
        assert lv.strips[0].up == (E1, E3, E2)
        assert lv.strips[1].down == (E1, E3, E2)
        assert lv.strips[1].up == ()
        check_leveling(dipole(), lv)

    def test_mirrored_rotations_do_not_level(self):
        # same rotation on both sides embeds on the torus, not the sphere
        g = PlaneGraph(
            {"a": (0, 1, 2), "b": (0, 1, 2)},
            [(("a", i), ("b", i)) for i in range(3)],
        )
        with pytest.raises(LevelingNotFound):
            bisect_level(g)

    def test_trefoil_graph(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        g, _ = strip_monogons(d)
        lv = bisect_level(g)
        assert lv.order == ("x1", "x3", "x2")
        check_leveling(g, lv)
        assert [len(s.down) for s in lv.strips] == [0, 2, 4]
        assert [len(s.up) for s in lv.strips] == [4, 2, 0]

    def test_six_dipole(self):
        d = six_dipole()
        g, records = strip_monogons(d)
        lv = bisect_level(g, records)
        check_leveling(g, lv)
        assert classify_strips(lv) == (
            StripTag(0, 6, False),
            StripTag(6, 0, False),
        )

    def test_pinned_pair_levels_with_records(self):
        d = pinned_pair()
        g, records = strip_monogons(d)
        lv = bisect_level(g, records)
        check_leveling(g, lv)
        assert lv.order == ("u", "v")
        for strip in lv.strips:
            assert len(strip.monogons) == 1
            assert strip.monogons[0].vertex == strip.vertex
        assert classify_strips(lv) == (
            StripTag(0, 4, True),
            StripTag(4, 0, True),
        )

    def test_deterministic(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        g, _ = strip_monogons(d)
        assert bisect_level(g) == bisect_level(g)

    def test_refuses_bare_vertex(self):
        g, records = strip_monogons(
            build(
                {"0": (1, 3, 2)},
                [(("0", 0), ("0", 1)), (("0", 2), ("0", 3)), (("0", 4), ("0", 5))],
            )
        )
        with pytest.raises(UnsupportedDiagramError, match="no edges left"):
            bisect_level(g, records)

    def test_refuses_disconnected(self):
        g = PlaneGraph(
            {"a": (0,), "b": (0,), "c": (0,), "d": (0,)},
            [(("a", 0), ("b", 0)), (("c", 0), ("d", 0))],
        )
        with pytest.raises(DisconnectedError):
            bisect_level(g)

    def test_rejects_record_for_unknown_vertex(self):
        from tricross.leveling import MonogonRecord

        with pytest.raises(TricrossError, match="unknown vertex"):
            bisect_level(dipole(), (MonogonRecord("z", (0, 1), (1, 2)),))


class TestClassify:
    def test_trefoil_graph_is_outside_catalog(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        g, _ = strip_monogons(d)
        lv = bisect_level(g)
        with pytest.raises(UnsupportedDiagramError, match="catalog"):
            classify_strips(lv)

    def test_interior_tags_on_three_crossings(self):
        # braid-like stack of three triple crossings
        d = build(
            {"a": (1, 2, 3), "b": (1, 2, 3), "c": (1, 2, 3)},
            [
                (("a", 0), ("b", 5)),
                (("a", 1), ("b", 4)),
                (("a", 2), ("b", 3)),
                (("b", 0), ("c", 5)),
                (("b", 1), ("c", 4)),
                (("b", 2), ("c", 3)),
                (("c", 0), ("a", 5)),
                (("c", 1), ("a", 4)),
                (("c", 2), ("a", 3)),
            ],
        )
        g, records = strip_monogons(d)
        lv = bisect_level(g, records)
        check_leveling(g, lv)
        tags = classify_strips(lv)
        assert tags[0].p == 0 and tags[-1].q == 0
        for t in tags[1:-1]:
            assert t.p >= 1 and t.q >= 1 and t.p + t.q == 6

    def test_checker_catches_tampering(self):
        lv = bisect_level(dipole())
        bad = Leveling(
            lv.order,
            (
                lv.strips[0],
                Strip("b", (E1, E2, E3), (), (), 0),
            ),
            lv.records,
        )
        with pytest.raises(TricrossError):
            check_leveling(dipole(), bad)


class TestRotateLeveling:
    def test_rotated_levelings_stay_valid(self):
        for graph in (dipole(), strip_monogons(six_dipole())[0]):
            lv = bisect_level(graph)
            rot = rotate_leveling(lv)
            check_leveling(graph, rot)
            assert rotate_leveling(rot) == lv

    def test_rotation_swaps_extremal_monogon_strips(self):
        g, records = strip_monogons(pinned_pair())
        lv = bisect_level(g, records)
        rot = rotate_leveling(lv)
        check_leveling(g, rot)
        assert rot.order == tuple(reversed(lv.order))
        tags = classify_strips(rot)
        assert [(t.p, t.q) for t in tags] == [(0, 4), (4, 0)]

    def test_rotation_on_grown_diagrams(self):
        rng = random.Random(424)
        for _ in range(6):
            d = grow_normalized(rng, 5)
            g, records = strip_monogons(d)
            lv = bisect_level(g, records)
            rot = rotate_leveling(lv)
            check_leveling(g, rot)
            classify_strips(rot)
            assert rotate_leveling(rot) == lv


def leveled_pieces(d):
    """Normalize, split, and level every crossing piece; None when warned."""
    out, report = normalize_diagram(d)
    if report.warnings:
        return None
    results = []
    for piece in _split(out):
        if not piece.crossings:
            continue
        g, records = strip_monogons(piece)
        lv = bisect_level(g, records)
        check_leveling(g, lv)
        classify_strips(lv)
        results.append((g, lv))
    return results


class TestNormalizedAlwaysLevels:
    def test_every_two_crossing_diagram(self):
        import warnings as w

        leveled = 0
        for d in all_triple_diagrams(2):
            with w.catch_warnings():
                w.simplefilter("ignore")
                try:
                    pieces = leveled_pieces(d)
                except UnsupportedDiagramError:
                    continue
            if pieces:
                leveled += len(pieces)
        assert leveled > 50

    @pytest.mark.parametrize("seed", [7, 1203, 88])
    def test_grown_diagrams_always_level(self, seed):
        rng = random.Random(seed)
        for _ in range(10):
            d = grow_normalized(rng, rng.choice([3, 4, 5, 6]))
            g, records = strip_monogons(d)
            lv = bisect_level(g, records)
            check_leveling(g, lv)
            tags = classify_strips(lv)
            assert len(tags) == len(d.crossings)

    def test_random_survivor_pieces_level(self):
        rng = random.Random(60901)
        pieces = surviving_pieces(rng, 3, count=8)
        assert pieces
        for piece in pieces:
            g, records = strip_monogons(piece)
            lv = bisect_level(g, records)
            check_leveling(g, lv)
            classify_strips(lv)
