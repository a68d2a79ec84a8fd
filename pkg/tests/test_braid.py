import pytest

from tricross.braid import BraidWord, braid_closure, destabilize, free_reduce_cyclic
from tricross.errors import TricrossError


class TestWord:
    def test_render_parse_round_trip(self):
        w = BraidWord(3, (1, -2, 1, -2))
        assert BraidWord.parse(3, w.render()) == w
        assert BraidWord.parse(4, "(empty)") == BraidWord(4, ())

    def test_writhe(self):
        assert BraidWord(3, (1, -2, 1, -2)).writhe() == 0
        assert BraidWord(2, (1, 1, 1)).writhe() == 3

    def test_validation(self):
        with pytest.raises(TricrossError):
            BraidWord(2, (0,))
        with pytest.raises(TricrossError):
            BraidWord(2, (2,))
        with pytest.raises(TricrossError):
            BraidWord(0, ())


class TestReduction:
    def test_free_reduce_inner(self):
        w = BraidWord(3, (1, 2, -2, -1, 1))
        assert free_reduce_cyclic(w).letters == (1,)

    def test_free_reduce_wraparound(self):
        w = BraidWord(3, (-2, 1, 1, 2))
        assert free_reduce_cyclic(w).letters == (1, 1)

    def test_destabilize_top(self):
        w = destabilize(BraidWord(3, (1, 1, 1, 2)))
        assert w.strands == 2 and w.letters == (1, 1, 1)

    def test_destabilize_bottom_shifts(self):
        w = destabilize(BraidWord(3, (2, 2, 2, 1)))
        assert w.strands == 2 and w.letters == (1, 1, 1)

    def test_destabilize_chain(self):
        # unknot presented on 3 strands
        w = destabilize(BraidWord(3, (1, 2)))
        assert w.strands == 1 and w.letters == ()

    def test_destabilize_leaves_genuine_words(self):
        w = destabilize(BraidWord(2, (1, 1, 1)))
        assert w == BraidWord(2, (1, 1, 1))


class TestClosure:
    def test_closure_is_valid_and_oriented(self):
        od = braid_closure(BraidWord(3, (1, -2, 1, -2)))
        od.diagram.validate()
        od.validate()
        assert len(od.diagram.crossings) == 4

    def test_closure_components(self):
        assert braid_closure(BraidWord(2, (1, 1))).diagram.components() == 2
        assert braid_closure(BraidWord(2, (1, 1, 1))).diagram.components() == 1

    def test_untouched_strands_become_loops(self):
        od = braid_closure(BraidWord(4, (1,)))
        assert od.diagram.free_loops == 2
        assert od.diagram.components() == 3

    def test_empty_word(self):
        od = braid_closure(BraidWord(3, ()))
        assert not od.diagram.crossings
        assert od.diagram.free_loops == 3

    def test_signs_match_letters(self):
        od = braid_closure(BraidWord(2, (1, -1)))
        assert od.sign("b0") == 1
        assert od.sign("b1") == -1
