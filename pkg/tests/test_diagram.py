import pytest

from tricross.diagram import (
    Crossing,
    MultiCrossingDiagram,
    decompose_triple,
    excise,
    mirror,
    natural_orientation,
    orient,
    parse_diagram,
)
from tricross.errors import (
    DiagramParseError,
    DisconnectedError,
    NonPlanarError,
    TricrossError,
    UnsupportedDiagramError,
)

ONE_TRIPLE = """
# one order-3 crossing; strand pairing is slot k with k+3
crossing 0 order=3 levels=1,2,3
edge (0,0) (0,1)
edge (0,2) (0,5)
edge (0,3) (0,4)
"""

# trefoil as a closed 3-letter braid on two strands
TREFOIL_DOUBLES = """
crossing x1 order=2 levels=1,2
crossing x2 order=2 levels=1,2
crossing x3 order=2 levels=1,2
edge (x1,0) (x2,3)
edge (x1,1) (x2,2)
edge (x2,0) (x3,3)
edge (x2,1) (x3,2)
edge (x3,0) (x1,3)
edge (x3,1) (x1,2)
"""

# one order-3 crossing whose three edges are all monogons
TRIPLE_ONE_VERTEX_KNOT = """
crossing 0 order=3 levels=1,2,3
edge (0,0) (0,1)
edge (0,2) (0,3)
edge (0,4) (0,5)
"""


class TestParsing:
    def test_one_triple_example(self):
        d = parse_diagram(ONE_TRIPLE)
        assert len(d.crossings) == 1
        assert d.crossings["0"].order == 3
        assert len(d.edges) == 3

    def test_round_trip(self):
        for text in (ONE_TRIPLE, TREFOIL_DOUBLES, TRIPLE_ONE_VERTEX_KNOT):
            d = parse_diagram(text)
            again = parse_diagram(d.serialize())
            assert again.serialize() == d.serialize()

    def test_loops_only(self):
        d = parse_diagram("loops 1\n")
        assert d.free_loops == 1 and not d.crossings

    def test_whitespace_and_comments(self):
        d = parse_diagram(
            "crossing a order = 3 levels = 1 , 2 , 3  # hi\n"
            "edge ( a , 0 ) ( a , 1 )\n"
            "edge (a,2) (a,5)\n"
            "edge (a,3) (a,4)\n"
        )
        assert d.crossings["a"].levels == (1, 2, 3)

    def test_syntax_error_carries_line(self):
        with pytest.raises(DiagramParseError, match="line 2"):
            parse_diagram("loops 1\nwat\n")

    def test_duplicate_id(self):
        with pytest.raises(DiagramParseError, match="duplicate"):
            parse_diagram(
                "crossing a order=2 levels=1,2\ncrossing a order=2 levels=1,2\n"
            )

    def test_level_non_bijection(self):
        with pytest.raises(DiagramParseError, match="bijection"):
            parse_diagram("crossing a order=3 levels=1,1,3\n")

    def test_unknown_crossing_in_edge(self):
        with pytest.raises(DiagramParseError, match="unknown crossing"):
            parse_diagram("crossing a order=2 levels=1,2\nedge (a,0) (b,1)\n")

    def test_slot_reuse(self):
        with pytest.raises(DiagramParseError, match="twice"):
            parse_diagram(
                "crossing a order=2 levels=1,2\n"
                "edge (a,0) (a,1)\nedge (a,0) (a,2)\n"
            )

    def test_unmatched_slot(self):
        with pytest.raises(DiagramParseError, match="not matched"):
            parse_diagram("crossing a order=2 levels=1,2\nedge (a,0) (a,1)\n")

    def test_nonplanar_reports_genus(self):
        # antipodal matching on one triple crossing forces genus 1
        with pytest.raises(NonPlanarError) as exc:
            parse_diagram(
                "crossing 0 order=3 levels=1,2,3\n"
                "edge (0,0) (0,3)\nedge (0,1) (0,4)\nedge (0,2) (0,5)\n"
            )
        assert exc.value.genus == 1


class TestTopology:
    def test_one_triple_faces_and_components(self):
        d = parse_diagram(ONE_TRIPLE)
        assert len(d.faces()) == 4
        assert d.components() == 2

    def test_loop_faces_and_components(self):
        d = parse_diagram("loops 1\n")
        assert len(d.faces()) == 2
        assert d.components() == 1
        assert parse_diagram("loops 2\n").components() == 2

    def test_trefoil_faces(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        assert len(d.faces()) == 5
        assert d.components() == 1

    def test_one_vertex_knot(self):
        d = parse_diagram(TRIPLE_ONE_VERTEX_KNOT)
        assert len(d.faces()) == 4
        assert d.components() == 1

    def test_connectivity(self):
        assert parse_diagram(ONE_TRIPLE).is_connected()
        assert parse_diagram("loops 1\n").is_connected()
        assert not parse_diagram("loops 2\n").is_connected()
        assert not parse_diagram(ONE_TRIPLE + "loops 1\n").is_connected()

    def test_every_dart_on_one_face_and_one_strand_orbit(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        darts = sorted(d.all_ends())
        from_faces = sorted(e for walk in d._trace_faces() for e in walk)
        from_strands = sorted(e for orbit in d.strand_orbits() for e in orbit)
        assert from_faces == darts
        assert from_strands == darts


class TestOrientations:
    def test_orient_flows_everywhere(self):
        for text in (ONE_TRIPLE, TREFOIL_DOUBLES, TRIPLE_ONE_VERTEX_KNOT):
            od = orient(parse_diagram(text))
            od.validate()

    def test_natural_alternates(self):
        for text in (ONE_TRIPLE, TRIPLE_ONE_VERTEX_KNOT):
            od = natural_orientation(parse_diagram(text))
            assert all(od.alternates_at(cid) for cid in od.diagram.crossings)

    def test_natural_loop(self):
        od = natural_orientation(parse_diagram("loops 1\n"))
        assert od.natural

    def test_natural_rejects_disconnected(self):
        with pytest.raises(DisconnectedError):
            natural_orientation(parse_diagram("loops 2\n"))
        with pytest.raises(DisconnectedError):
            natural_orientation(parse_diagram(ONE_TRIPLE + "loops 1\n"))

    def test_natural_rejects_even_orders(self):
        with pytest.raises(UnsupportedDiagramError):
            natural_orientation(parse_diagram(TREFOIL_DOUBLES))

    def test_signs_are_well_defined(self):
        od = orient(parse_diagram(TREFOIL_DOUBLES))
        signs = {od.sign(cid) for cid in od.diagram.crossings}
        # all three braid letters agree in sign, whichever way the walk went
        assert len(signs) == 1


class TestDecompose:
    def test_doubles_unchanged(self):
        d = parse_diagram(TREFOIL_DOUBLES)
        assert decompose_triple(d) is d

    @pytest.mark.parametrize("which", ["A", "B"])
    def test_one_triple(self, which):
        d = parse_diagram(ONE_TRIPLE)
        out = decompose_triple(d, perturbation=which)
        assert all(x.order == 2 for x in out.crossings.values())
        assert len(out.crossings) == 3
        assert out.components() == d.components()

    @pytest.mark.parametrize("which", ["A", "B"])
    def test_monogon_vertex(self, which):
        d = parse_diagram(TRIPLE_ONE_VERTEX_KNOT)
        out = decompose_triple(d, perturbation=which)
        assert len(out.crossings) == 3
        assert out.components() == 1

    def test_overunder_respects_depth_order(self):
        d = parse_diagram(ONE_TRIPLE)
        out = decompose_triple(d)
        # depth 1 beats 2 beats 3: strand order 0 > 1 > 2 everywhere
        assert out.crossings["0.01"].levels == (1, 2)
        assert out.crossings["0.02"].levels == (1, 2)
        assert out.crossings["0.12"].levels == (1, 2)
        d2 = parse_diagram(ONE_TRIPLE.replace("levels=1,2,3", "levels=3,1,2"))
        out2 = decompose_triple(d2)
        assert out2.crossings["0.01"].levels == (2, 1)
        assert out2.crossings["0.02"].levels == (2, 1)
        assert out2.crossings["0.12"].levels == (1, 2)

    def test_rejects_high_order(self):
        d = MultiCrossingDiagram(
            {"q": Crossing(4, (1, 2, 3, 4))},
            [(("q", 0), ("q", 1)), (("q", 2), ("q", 7)), (("q", 3), ("q", 4)),
             (("q", 5), ("q", 6))],
        )
        with pytest.raises(UnsupportedDiagramError):
            decompose_triple(d)


class TestMirror:
    def test_involution(self):
        for text in (ONE_TRIPLE, TREFOIL_DOUBLES, TRIPLE_ONE_VERTEX_KNOT):
            d = parse_diagram(text)
            assert mirror(mirror(d)).serialize() == d.serialize()

    def test_loop_fixed(self):
        d = parse_diagram("loops 1\n")
        assert mirror(d).serialize() == d.serialize()

    def test_valid_and_same_shape(self):
        d = parse_diagram(ONE_TRIPLE)
        m = mirror(d)
        assert m.components() == d.components()
        assert len(m.faces()) == len(d.faces())


class TestExcise:
    def test_kink_off_a_strand(self):
        # monogon on x2 of a 2-crossing chain: untwisting keeps the circle
        d = parse_diagram(
            "crossing x1 order=2 levels=1,2\n"
            "crossing x2 order=2 levels=1,2\n"
            "edge (x2,0) (x2,1)\n"
            "edge (x2,2) (x1,0)\n"
            "edge (x2,3) (x1,1)\n"
            "edge (x1,2) (x1,3)\n"
        )
        out = excise(d, {"x2": [(0, 2), (1, 3)]})
        assert set(out.crossings) == {"x1"}
        assert out.free_loops == 0
        assert out.components() == 1

    def test_isolated_kink_becomes_loop(self):
        d = parse_diagram(
            "crossing k order=2 levels=1,2\nedge (k,0) (k,1)\nedge (k,2) (k,3)\n"
        )
        out = excise(d, {"k": [(0, 2), (1, 3)]})
        assert not out.crossings
        assert out.free_loops == 1

    def test_open_pairing_rejected(self):
        d = parse_diagram(
            "crossing k order=2 levels=1,2\nedge (k,0) (k,1)\nedge (k,2) (k,3)\n"
        )
        with pytest.raises(TricrossError, match="open"):
            excise(d, {"k": [(0, 2)]})
