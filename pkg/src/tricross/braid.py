"""Braid words and their closures.

A braid word on k strands is a sequence of nonzero integers: letter +i
crosses strand positions i and i+1 with the ascending strand on top,
letter -i with it underneath (1 <= i <= k-1).  Closures become oriented
double-crossing diagrams; Markov moves shrink words without changing the
closure's link type.
"""

from dataclasses import dataclass

from .diagram import Crossing, MultiCrossingDiagram, OrientedDiagram
from .errors import TricrossError

# crossing slots, counterclockwise: 0 = top-right, 1 = top-left,
# 2 = bottom-left, 3 = bottom-right; the ascending strand runs 2 -> 0


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise TricrossError("a braid needs at least one strand")
        for a in self.letters:
            if a == 0 or abs(a) > self.strands - 1:
                raise TricrossError(f"letter {a} out of range for {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def writhe(self):
        return sum(1 if a > 0 else -1 for a in self.letters)

    def render(self):
        if not self.letters:
            return "(empty)"
        return " ".join(str(a) for a in self.letters)

    @classmethod
    def parse(cls, strands, text):
        if text.strip() in ("", "(empty)"):
            return cls(strands, ())
        return cls(strands, tuple(int(t) for t in text.split()))


def free_reduce_cyclic(word):
    """Cancel adjacent inverse letters, treating the word as cyclic."""
    out = []
    for a in word.letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    while len(out) >= 2 and out[0] == -out[-1]:
        out.pop()
        out.pop(0)
    return BraidWord(word.strands, tuple(out))


def destabilize(word):
    """Shrink the word by Markov destabilization, to a fixpoint.

    When the top index (strands-1) or the bottom index (1) appears exactly
    once, that letter can be removed and the braid loses a strand; the
    closure keeps its link type.  Free cyclic reduction runs in between.
    """
    w = free_reduce_cyclic(word)
    while True:
        k = w.strands
        top = [a for a in w.letters if abs(a) == k - 1]
        if k >= 2 and len(top) == 1:
            letters = tuple(a for a in w.letters if abs(a) != k - 1)
            w = free_reduce_cyclic(BraidWord(k - 1, letters))
            continue
        bottom = [a for a in w.letters if abs(a) == 1]
        if k >= 2 and len(bottom) == 1:
            shifted = tuple(
                (abs(a) - 1) * (1 if a > 0 else -1)
                for a in w.letters
                if abs(a) != 1
            )
            w = free_reduce_cyclic(BraidWord(k - 1, shifted))
            continue
        return w


def braid_closure(word):
    """Close a braid into an oriented diagram; the flow runs up the braid.

    Strand positions the word never touches close into free loops.
    """
    first_bottom = {}
    open_end = {}
    edges = []
    crossings = {}
    direction = {}
    for j, a in enumerate(word.letters):
        i = abs(a)
        cid = f"b{j}"
        crossings[cid] = Crossing(2, (1, 2) if a > 0 else (2, 1))
        for pos, slot in ((i, 2), (i + 1, 3)):
            end = (cid, slot)
            if pos in open_end:
                edges.append((open_end.pop(pos), end))
            else:
                first_bottom[pos] = end
        open_end[i] = (cid, 1)
        open_end[i + 1] = (cid, 0)
        direction[(cid, 0)] = True
        direction[(cid, 1)] = True
        direction[(cid, 2)] = False
        direction[(cid, 3)] = False
    loops = 0
    for pos in range(1, word.strands + 1):
        if pos in open_end:
            edges.append((open_end[pos], first_bottom[pos]))
        else:
            loops += 1
    d = MultiCrossingDiagram(crossings, edges, loops)
    return OrientedDiagram(d, direction)
