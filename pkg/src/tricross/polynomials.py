"""Exact sparse polynomial arithmetic for link invariants.

Two representations live here.  LaurentPoly2 is an honest element of
Z[v,v^-1,z,z^-1] and carries full HOMFLY values.  SpanClassPoly forgets
signs and powers of z, keeping only a multiset of v-exponents; every sum
it ever participates in has positive multiplicities, so no cancellation
can occur and the extreme exponents are trustworthy.
"""

from .errors import ZeroPolynomialError


class LaurentPoly2:
    """Two-variable Laurent polynomial with integer coefficients.

    Stored sparsely as {(v_exp, z_exp): coeff} with zero coefficients
    dropped.  Instances are treated as immutable; all operations return
    new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = self.terms.get(key, 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, coeff, v_exp=0, z_exp=0):
        return cls({(v_exp, z_exp): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = LaurentPoly2.one()
        for _ in range(k):
            out = out * self
        return out

    def multiply_by_monomial(self, v_exp, z_exp):
        # cheap shift, no convolution
        return LaurentPoly2(
            {(a + v_exp, b + z_exp): c for (a, b), c in self.terms.items()}
        )

    def v_exponents(self):
        return {a for (a, _b) in self.terms}

    def render(self):
        """Canonical text form, byte-stable across runs.

        Terms sort by (v-exp, z-exp).  Every factor is explicit except
        that a pure constant term prints as its bare coefficient, so the
        unit polynomial renders as `1`.
        """
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            if a == 0 and b == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*v^{a}*z^{b}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"LaurentPoly2({self.terms!r})"


# delta multiplies in one disjoint trivial component: (v^-1 - v) / z
DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})


class SpanClassPoly:
    """Multiset of v-exponents with arbitrary-precision multiplicities.

    The family recurrences only ever add and multiply these with positive
    multiplicities, so the multiset extremes track the true v-span without
    needing signs or z-powers.  Multiplicities grow exponentially in the
    family index; Python ints absorb that.
    """

    __slots__ = ("mult",)

    def __init__(self, exponents=None):
        self.mult = {}
        if isinstance(exponents, dict):
            for e, m in exponents.items():
                if m < 0:
                    raise ValueError("multiplicities must be nonnegative")
                if m:
                    self.mult[e] = self.mult.get(e, 0) + m
        elif exponents is not None:
            for e in exponents:
                self.mult[e] = self.mult.get(e, 0) + 1

    @classmethod
    def one(cls):
        return cls({0: 1})

    def is_zero(self):
        return not self.mult

    def __eq__(self, other):
        if not isinstance(other, SpanClassPoly):
            return NotImplemented
        return self.mult == other.mult

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def extremes(self):
        if not self.mult:
            raise ZeroPolynomialError("empty span class has no extremes")
        return min(self.mult), max(self.mult)

    def shift(self, k):
        return SpanClassPoly({e + k: m for e, m in self.mult.items()})

    def __add__(self, other):
        out = dict(self.mult)
        for e, m in other.mult.items():
            out[e] = out.get(e, 0) + m
        return SpanClassPoly(out)

    def __mul__(self, other):
        out = {}
        for e1, m1 in self.mult.items():
            for e2, m2 in other.mult.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + m1 * m2
        return SpanClassPoly(out)

    def render(self):
        if not self.mult:
            return "0"
        parts = []
        for e in sorted(self.mult):
            m = self.mult[e]
            head = f"{m}*" if m != 1 else ""
            parts.append(f"{head}v^{{{e}}}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"SpanClassPoly({self.mult!r})"


def span_add(p, q):
    """Multiset union of two span classes."""
    return p + q


def span_scale(p, k):
    """Shift every exponent by k (multiplication by v^k)."""
    return p.shift(k)


def span_mul_ring(p, r):
    """Multiply by a fixed positive-coefficient multiplier such as (v + v^3).

    `r` is itself a SpanClassPoly, e.g. SpanClassPoly([1, 3]).
    """
    return p * r


def v_span(p):
    """max v-exponent minus min v-exponent; undefined for zero."""
    if isinstance(p, SpanClassPoly):
        lo, hi = p.extremes()
        return hi - lo
    if p.is_zero():
        raise ZeroPolynomialError("v-span of the zero polynomial is undefined")
    exps = p.v_exponents()
    return max(exps) - min(exps)


def project_to_span_class(p):
    """Forget signs and z-powers of a full Laurent polynomial.

    Each surviving (v-exp, z-exp) term contributes its v-exponent once,
    so the multiplicity of e counts distinct z-terms at v^e.  Spans of p
    and its projection agree by construction.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot project the zero polynomial")
    out = {}
    for (a, _b) in p.terms:
        out[a] = out.get(a, 0) + 1
    return SpanClassPoly(out)
