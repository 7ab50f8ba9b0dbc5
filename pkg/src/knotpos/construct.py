"""Programmatic diagram builders: braids, twist regions, rational tangles.

These construct validated diagrams for the bundled knot table, the test
corpus, and the random families used by the acceptance suite. Everything
returns ordinary ``Diagram`` values and goes through the same planarity
checks as the codecs.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import Crossing, Diagram, assemble, reorient


def braid_closure(word, strands) -> Diagram:
    """Closure of a braid word: integers ±i stand for sigma_i^(+-1).

    Strands run parallel; the closure arcs join level ``len(word)`` back to
    level 0. Strands untouched by any letter close into circles.
    """
    m = len(word)
    n = strands

    def aid(pos, lvl):
        return pos + (lvl % max(m, 1)) * n

    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    raw = []
    for lvl, g in enumerate(word):
        i = abs(g)
        if not (1 <= i < n):
            raise ValueError("generator %d out of range" % g)
        a_in, b_in = aid(i, lvl), aid(i + 1, lvl)
        a_out, b_out = aid(i, lvl + 1), aid(i + 1, lvl + 1)
        if g > 0:
            raw.append(Crossing((b_in, b_out, a_out, a_in), 1))
        else:
            raw.append(Crossing((a_in, b_in, b_out, a_out), -1))
        for pos in range(1, n + 1):
            if pos not in (i, i + 1):
                ra, rb = find(aid(pos, lvl)), find(aid(pos, lvl + 1))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    crossings = [Crossing(tuple(find(a) for a in x.arcs), x.sign) for x in raw]
    touched = {abs(g) for g in word} | {abs(g) + 1 for g in word}
    circles = sum(1 for pos in range(1, n + 1) if pos not in touched)
    return assemble(crossings, circles)


def torus_link(p, q=2) -> Diagram:
    """The (q, p)-torus link as the closure of (s1 ... s_{q-1})^p."""
    if q < 2:
        raise ValueError("q >= 2")
    word = list(range(1, q)) * p
    return braid_closure(word, q)


class Tangle:
    """A 2-string tangle under construction, for rational/Montesinos knots.

    Tracked as neutral crossing quads (under strand on the 0/2 slot axis)
    plus the four open arc ends NW, NE, SW, SE; orientations are assigned
    only on closure.
    """

    def __init__(self, quads, nw, ne, sw, se, next_arc):
        self.quads = list(quads)
        self.nw, self.ne, self.sw, self.se = nw, ne, sw, se
        self.next_arc = next_arc

    @classmethod
    def zero(cls):
        """The 0-tangle: two horizontal strands NW-NE and SW-SE."""
        return cls([], 1, 1, 2, 2, 3)

    def fresh(self):
        a = self.next_arc
        self.next_arc += 1
        return a

    def twist_right(self, n, hand=1):
        """Add |n| crossings twisting the NE/SE ends around each other.

        ``hand=+1`` puts the strand from the southeast under at each new
        crossing; ``hand=-1`` the one from the northeast.
        """
        for _ in range(abs(n)):
            t1, t2 = self.fresh(), self.fresh()
            if hand > 0:
                self.quads.append((self.se, t2, t1, self.ne))
            else:
                self.quads.append((t2, t1, self.ne, self.se))
            self.ne, self.se = t1, t2
        return self

    def twist_bottom(self, n, hand=1):
        """Add |n| crossings twisting the SW/SE ends around each other."""
        for _ in range(abs(n)):
            t1, t2 = self.fresh(), self.fresh()
            if hand > 0:
                self.quads.append((t2, self.se, self.sw, t1))
            else:
                self.quads.append((self.se, self.sw, t1, t2))
            self.sw, self.se = t1, t2
        return self

    def closure_numerator(self) -> Diagram:
        """Join NW-NE and SW-SE; orientations rederived from scratch."""
        parent = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        circles = 0
        for x, y in ((self.nw, self.ne), (self.sw, self.se)):
            rx, ry = find(x), find(y)
            if rx == ry:
                circles += 1
            else:
                parent[max(rx, ry)] = min(rx, ry)
        if not self.quads:
            return Diagram((), circles, ())
        out = [tuple(find(a) for a in q) for q in self.quads]
        return reorient(out, circles)


def rational_knot(fraction_terms) -> Diagram:
    """2-bridge link from a positive continued fraction [a1, a2, ..., ak].

    Builds the standard alternating 4-plat: a1 horizontal twists, a2
    vertical, alternating; the numerator closure realizes the 2-bridge
    link b(p, q) with p/q = ak + 1/(a_{k-1} + 1/(...)). All terms must be
    positive for the alternating form.
    """
    terms = list(fraction_terms)
    if not terms or any(a <= 0 for a in terms):
        raise ValueError("need positive continued-fraction terms")
    if len(terms) % 2 == 0:
        # same fraction numerator, odd expansion: [..., a] = [..., a-1, 1]
        if terms[-1] > 1:
            terms = terms[:-1] + [terms[-1] - 1, 1]
        else:
            terms = terms[:-2] + [terms[-2] + 1]
    t = Tangle.zero()
    horizontal = True
    for a in terms:
        if horizontal:
            t.twist_right(a, hand=1)
        else:
            t.twist_bottom(a, hand=-1)
        horizontal = not horizontal
    return t.closure_numerator()


def continued_fraction_value(terms) -> Fraction:
    """p/q of [a1, ..., ak] evaluated as ak + 1/(a_{k-1} + ...)."""
    val = Fraction(terms[0])
    for a in terms[1:]:
        val = Fraction(a) + 1 / val
    return val


def band_terms(frac: Fraction):
    """Twist terms realizing a Montesinos band of the given fraction.

    Bands compose as F -> 1/(1/F + a) for a vertical term and F -> F + b
    for a horizontal one (terms alternate starting vertical), so e.g.
    1/p = [p] and 2/3 = [1, 1, 1].
    """
    f = Fraction(frac)
    if f <= 0:
        raise ValueError("band fraction must be positive")
    peeled = []
    while True:
        if f.numerator == 1:
            peeled.append(("v", f.denominator))
            break
        if f >= 1:
            b = f.numerator // f.denominator
            if f == b:
                b -= 1
            peeled.append(("h", b))
            f = f - b
        else:
            inv = 1 / f
            a = inv.numerator // inv.denominator
            peeled.append(("v", a))
            f = 1 / (inv - a)
    ops = list(reversed(peeled))
    terms = []
    want = "v"
    for kind, val in ops:
        if kind != want:
            raise ValueError("no alternating expansion for %s" % frac)
        terms.append(val)
        want = "h" if want == "v" else "v"
    return terms


def montesinos(*band_terms) -> Diagram:
    """Montesinos link from rational bands.

    Each argument is a twist term list, alternating vertical then
    horizontal within the band: the band fraction composes as
    F -> 1/(1/F + a) (vertical term a) and F -> F + b (horizontal b), so
    ``montesinos([p], [q], [r])`` is the pretzel P(p, q, r) = M(1/p, 1/q,
    1/r) and ``montesinos([1,1,1], [1,1,1], [2])`` realizes
    M(2/3, 2/3, 1/2). Negative terms twist with the opposite hand.
    """
    if not band_terms:
        raise ValueError("need at least one band")
    quads = []
    counter = [1]

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    tops = []
    bottoms = []
    for terms in band_terms:
        a, b = fresh(), fresh()
        t = Tangle([], a, a, b, b, counter[0])
        horizontal = True
        for a in terms:
            if a == 0:
                raise ValueError("zero twist term")
            if horizontal:
                t.twist_right(abs(a), hand=1 if a > 0 else -1)
            else:
                t.twist_bottom(abs(a), hand=-1 if a > 0 else 1)
            horizontal = not horizontal
        counter[0] = t.next_arc
        # rotate a quarter turn: the tangle's west side becomes the top
        tops.append((t.ne, t.se))
        bottoms.append((t.nw, t.sw))
        quads.extend(t.quads)

    renames = {}
    for i in range(len(band_terms)):
        renames[tops[i][1]] = tops[(i + 1) % len(band_terms)][0]
        renames[bottoms[i][1]] = bottoms[(i + 1) % len(band_terms)][0]

    def rn(a):
        seen = set()
        while a in renames and a not in seen:
            seen.add(a)
            a = renames[a]
        return a

    out = [tuple(rn(a) for a in q) for q in quads]
    return reorient(out, 0)


def pretzel(*twists) -> Diagram:
    """The pretzel link P(p1, ..., pk): vertical twist bands side by side.

    Each band of p > 0 crossings twists one way, p < 0 the other; bands
    are joined left to right and closed around.
    """
    if not twists or any(p == 0 for p in twists):
        raise ValueError("pretzel parameters must be nonzero")
    quads = []
    nxt = [1]

    def fresh():
        nxt[0] += 1
        return nxt[0] - 1

    tops = []
    bottoms = []
    for p in twists:
        top_l, top_r = fresh(), fresh()
        a, b = top_l, top_r
        for _ in range(abs(p)):
            c, d = fresh(), fresh()
            if p > 0:
                quads.append((b, d, c, a))
            else:
                quads.append((a, b, d, c))
            a, b = c, d
        tops.append((top_l, top_r))
        bottoms.append((a, b))

    renames = {}
    for i in range(len(twists)):
        tr = tops[i][1]
        tl_next = tops[(i + 1) % len(twists)][0]
        renames[tr] = tl_next
        br = bottoms[i][1]
        bl_next = bottoms[(i + 1) % len(twists)][0]
        renames[br] = bl_next

    def rn(a):
        seen = set()
        while a in renames and a not in seen:
            seen.add(a)
            a = renames[a]
        return a

    out = [tuple(rn(a) for a in q) for q in quads]
    return reorient(out, 0)
