"""Braid index bounds for triple-crossing link diagrams.

The pipeline: normalize a triple-crossing diagram, level its vertices into
a bisected order, lay the strands out in strips, resolve every strip into
double crossings, and read off a braid word whose closure is the original
link.  The strand count of that braid certifies an upper bound on the
double-crossing braid index; HOMFLY span machinery certifies matching
lower bounds for an infinite knot family.
"""

__version__ = "0.1.0"
