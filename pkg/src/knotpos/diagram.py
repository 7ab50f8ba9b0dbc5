"""Oriented link diagrams as crossing/arc incidence structures.

Conventions
-----------
A crossing stores its four incident arc ends counterclockwise as slots
``(S, E, N, W)`` with slot 0 the incoming under-strand (PD convention
``X[a,b,c,d]``). The under-strand runs slot 0 -> slot 2. The crossing sign
is ``+1`` when the over-strand runs slot 3 -> slot 1 (west to east under a
northbound under-strand), ``-1`` otherwise. Signs are always derived from
orientation, never user-supplied.

Arcs are positive integer labels; every arc occurs in exactly two slots
(its tail at an out-slot, its head at an in-slot). Crossingless circle
components are stored as a count, not as fake crossings.

Planarity of the combinatorial map is verified on every construction:
each connected 4-valent piece must satisfy ``V - E + F = 2``.

Diagram values are immutable after construction; every operation returns a
new diagram, so values are safe to share across threads.
"""

from __future__ import annotations

import re
from itertools import permutations

from .errors import (
    ArcLabelNotTwice,
    BasepointOffComponent,
    InconsistentOrientation,
    InvalidAlignment,
    MalformedSyntax,
    NegativeCrossing,
    NonPlanar,
    NonRealizable,
    NoSuchCrossing,
    NotInnermost,
    NotOutermost,
    NoValidSite,
    UnpairedCrossing,
)

_PARTNER_SLOT = {0: 2, 2: 0, 1: 3, 3: 1}


class Crossing:
    """One crossing: four arc labels in ccw slot order plus a derived sign."""

    __slots__ = ("arcs", "sign")

    def __init__(self, arcs, sign):
        self.arcs = tuple(arcs)
        self.sign = sign

    @property
    def over_in_slot(self):
        return 3 if self.sign > 0 else 1

    @property
    def over_out_slot(self):
        return 1 if self.sign > 0 else 3

    def in_slots(self):
        return (0, self.over_in_slot)

    def role(self, slot):
        return "U" if slot in (0, 2) else "O"

    def __repr__(self):
        return "X[%s]%s" % (",".join(map(str, self.arcs)),
                            "+" if self.sign > 0 else "-")


class GaussDiagram:
    """Signed arrows on based circles, in walk-along order.

    ``circles[i]`` is the number of arrow endpoints on circle ``i`` (zero
    for a crossingless circle); endpoint positions are numbered
    consecutively, circle by circle, in walk-along order. Each arrow is
    ``(tail, head, sign)``: tail at the over-passage o(c), head at the
    under-passage u(c).
    """

    __slots__ = ("circles", "arrows", "_starts")

    def __init__(self, circles, arrows):
        self.circles = tuple(circles)
        self.arrows = tuple(arrows)
        starts = []
        acc = 0
        for n in self.circles:
            starts.append(acc)
            acc += n
        self._starts = tuple(starts)
        seen = set()
        for o, u, _ in self.arrows:
            if o in seen or u in seen or o == u:
                raise ValueError("arrow endpoints must be pairwise distinct")
            seen.add(o)
            seen.add(u)

    def circle_of(self, position):
        for i in range(len(self.circles) - 1, -1, -1):
            if position >= self._starts[i]:
                if position < self._starts[i] + self.circles[i]:
                    return i
                break
        raise ValueError("position %d out of range" % position)

    def degree(self):
        return len(self.arrows)

    def __repr__(self):
        return "GaussDiagram(circles=%r, arrows=%r)" % (self.circles, self.arrows)


def linking_number(g: GaussDiagram, i: int, j: int) -> int:
    """Linking number of circles ``i < j`` read off the Gauss diagram.

    Counts the signed arrows pointing from circle ``j`` to circle ``i``; by
    the symmetry of the linking-number formula the opposite arrow direction
    gives the same value.
    """
    total = 0
    for o, u, sign in g.arrows:
        if g.circle_of(o) == j and g.circle_of(u) == i:
            total += sign
    return total


class Diagram:
    """Immutable oriented link diagram.

    ``components`` lists the crossing-traversing components as tuples of
    arc labels in strand order, each starting at its basepoint arc.
    ``circles`` counts crossingless unknotted components; they sort after
    all crossing-bearing components.
    """

    __slots__ = ("crossings", "circles", "components", "_cache")

    def __init__(self, crossings, circles, components):
        object.__setattr__(self, "crossings", tuple(crossings))
        object.__setattr__(self, "circles", circles)
        object.__setattr__(self, "components", tuple(tuple(c) for c in components))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    # -- counts ------------------------------------------------------------

    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def c_plus(self):
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def c_minus(self):
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self):
        return sum(x.sign for x in self.crossings)

    @property
    def n_components(self):
        return len(self.components) + self.circles

    @property
    def basepoints(self):
        return tuple(comp[0] for comp in self.components)

    def all_arcs(self):
        return sorted(self.arc_slots())

    # -- incidence ---------------------------------------------------------

    def arc_slots(self):
        """arc -> list of (crossing index, slot) where it occurs."""
        if "arc_slots" not in self._cache:
            occ = {}
            for ci, x in enumerate(self.crossings):
                for k, a in enumerate(x.arcs):
                    occ.setdefault(a, []).append((ci, k))
            self._cache["arc_slots"] = occ
        return self._cache["arc_slots"]

    def _ends(self):
        if "ends" not in self._cache:
            ends = {}
            for arc, occs in self.arc_slots().items():
                tail = head = None
                for ci, k in occs:
                    if k in self.crossings[ci].in_slots():
                        head = (ci, k)
                    else:
                        tail = (ci, k)
                ends[arc] = (tail, head)
            self._cache["ends"] = ends
        return self._cache["ends"]

    def arc_head(self, arc):
        """(crossing index, slot) where the arc enters a crossing."""
        return self._ends()[arc][1]

    def arc_tail(self, arc):
        return self._ends()[arc][0]

    def next_arc(self, arc):
        """Successor arc along the strand orientation."""
        ci, slot = self.arc_head(arc)
        x = self.crossings[ci]
        out = 2 if slot == 0 else x.over_out_slot
        return x.arcs[out]

    def component_of_arc(self, arc):
        if "comp_of" not in self._cache:
            m = {}
            for i, comp in enumerate(self.components):
                for a in comp:
                    m[a] = i
            self._cache["comp_of"] = m
        return self._cache["comp_of"][arc]

    # -- faces and planarity -----------------------------------------------

    def faces(self):
        """Faces as tuples of corners ``(crossing index, k)``.

        Corner ``(ci, k)`` is the quadrant between slots ``k`` and ``k+1``;
        the successor of a corner follows the arc at slot ``k+1`` to its
        other end ``(Y, m)`` and continues in corner ``(Y, m)``.
        """
        if "faces" not in self._cache:
            other = {}
            for occs in self.arc_slots().values():
                e1, e2 = occs
                other[e1] = e2
                other[e2] = e1
            faces = []
            seen = set()
            for ci in range(len(self.crossings)):
                for k in range(4):
                    if (ci, k) in seen:
                        continue
                    face = []
                    cur = (ci, k)
                    while cur not in seen:
                        seen.add(cur)
                        face.append(cur)
                        x, s = cur
                        cur = other[(x, (s + 1) % 4)]
                    faces.append(tuple(face))
            self._cache["faces"] = faces
        return self._cache["faces"]

    def corner_face(self):
        if "corner_face" not in self._cache:
            cf = {}
            for fi, face in enumerate(self.faces()):
                for corner in face:
                    cf[corner] = fi
            self._cache["corner_face"] = cf
        return self._cache["corner_face"]

    def face_arcs(self, face):
        """The wall arcs of a face, parallel to its corner list."""
        return tuple(self.crossings[ci].arcs[(k + 1) % 4] for ci, k in face)

    def connected_pieces(self):
        """Partition of crossing indices into connected 4-valent pieces."""
        if "pieces" not in self._cache:
            n = len(self.crossings)
            parent = list(range(n))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for occs in self.arc_slots().values():
                cis = [ci for ci, _ in occs]
                r = find(cis[0])
                for ci in cis[1:]:
                    parent[find(ci)] = find(r)
            groups = {}
            for ci in range(n):
                groups.setdefault(find(ci), []).append(ci)
            self._cache["pieces"] = list(groups.values())
        return self._cache["pieces"]

    def is_connected(self):
        if self.circles:
            return self.circles == 1 and not self.crossings
        if not self.crossings:
            return False
        return len(self.connected_pieces()) == 1

    # -- walking -------------------------------------------------------------

    def walk_component(self, start_arc):
        """Arcs of the component containing ``start_arc`` in strand order."""
        out = [start_arc]
        a = self.next_arc(start_arc)
        while a != start_arc:
            out.append(a)
            a = self.next_arc(a)
        return out

    def passages(self, order=None, basepoints=None):
        """Walk-along passages ``(position, crossing index, role)``.

        Components are walked in ``order`` (default stored order) from the
        given basepoint arcs; an arc's passage happens at its head crossing.
        """
        return list(self.iter_passages(order, basepoints))

    def iter_passages(self, order=None, basepoints=None):
        if order is None:
            order = range(len(self.components))
        pos = 0
        for comp_index in order:
            comp = self.components[comp_index]
            start = comp[0] if basepoints is None else basepoints[comp_index]
            if start not in comp:
                raise BasepointOffComponent(
                    "arc %r not on component %d" % (start, comp_index))
            i = comp.index(start)
            for a in comp[i:] + comp[:i]:
                ci, slot = self.arc_head(a)
                yield (pos, ci, "U" if slot == 0 else "O")
                pos += 1

    # -- serialization ---------------------------------------------------------

    def pd_text(self):
        body = ",".join("X[%s]" % ",".join(map(str, x.arcs))
                        for x in self.crossings)
        text = "PD[%s]" % body
        if self.circles:
            text += "+O%d" % self.circles
        return text

    def gauss_text(self):
        parts = []
        numbering = {}
        for comp in self.components:
            tokens = []
            for a in comp:
                ci, slot = self.arc_head(a)
                if ci not in numbering:
                    numbering[ci] = len(numbering) + 1
                tokens.append("%s%d%s" % ("U" if slot == 0 else "O",
                                          numbering[ci],
                                          "+" if self.crossings[ci].sign > 0 else "-"))
            parts.append("".join(tokens))
        parts.extend([""] * self.circles)
        return ";".join(parts)

    def __repr__(self):
        return "Diagram(%s)" % self.pd_text()


# -- construction ----------------------------------------------------------


def assemble(crossings, circles=0, order_key=None, basepoint_of=None,
             planarity_error=NonPlanar):
    """Validate crossing data and build a Diagram.

    ``order_key(frozenset_of_arcs)`` fixes the component order (default:
    smallest arc label) and ``basepoint_of(frozenset_of_arcs)`` picks each
    component's basepoint arc (default: smallest arc).
    """
    crossings = [x if isinstance(x, Crossing) else Crossing(*x) for x in crossings]
    probe = Diagram(crossings, 0, ())
    occ = probe.arc_slots()
    for arc, occs in occ.items():
        if len(occs) != 2:
            raise ArcLabelNotTwice("arc %r occurs %d times" % (arc, len(occs)))
        heads = sum(1 for ci, k in occs if k in crossings[ci].in_slots())
        if heads != 1:
            raise InconsistentOrientation("arc %r has %d heads" % (arc, heads))

    for piece in probe.connected_pieces():
        piece_set = set(piece)
        v = len(piece)
        e = len({a for ci in piece for a in crossings[ci].arcs})
        f = sum(1 for face in probe.faces() if face[0][0] in piece_set)
        if v - e + f != 2:
            raise planarity_error("V-E+F = %d on a connected piece" % (v - e + f))

    comps = []
    seen = set()
    for arc in occ:
        if arc in seen:
            continue
        comp = probe.walk_component(arc)
        seen.update(comp)
        comps.append(comp)

    key = order_key or (lambda arcs: min(arcs))
    base = basepoint_of or (lambda arcs: min(arcs))
    ordered = []
    for comp in comps:
        arcs = frozenset(comp)
        b = base(arcs)
        i = comp.index(b)
        ordered.append((key(arcs), tuple(comp[i:] + comp[:i])))
    ordered.sort(key=lambda t: t[0])
    return Diagram(crossings, circles, [c for _, c in ordered])


def _orient_free_cycle(cycle_arcs):
    """Pick the direction of an undirected arc cycle by ascending labels."""
    fwd = tuple(cycle_arcs)
    rev = tuple(reversed(cycle_arcs))

    def ascents(seq):
        return sum(1 for i in range(len(seq))
                   if seq[(i + 1) % len(seq)] > seq[i])

    af, ar = ascents(fwd), ascents(rev)
    if af != ar:
        return fwd if af > ar else rev
    nf = fwd[(fwd.index(min(fwd)) + 1) % len(fwd)]
    nr = rev[(rev.index(min(rev)) + 1) % len(rev)]
    return fwd if nf <= nr else rev


def parse_pd(text: str) -> Diagram:
    """Parse a PD code ``PD[X[i,j,k,l],...]`` with optional ``+Ok`` suffix.

    Crossing signs are derived by orientation propagation (slot 0 is the
    incoming under-strand). Components passing over at every crossing carry
    no under-slot data; their direction is fixed by ascending arc labels.
    """
    s = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"PD\[(.*?)\](?:\+O(\d+))?", s, re.DOTALL)
    if not m:
        raise MalformedSyntax("not a PD expression: %r" % text)
    body, circ = m.group(1), int(m.group(2) or 0)
    quads = []
    pos = 0
    while pos < len(body):
        xm = re.match(r"X\[(\d+),(\d+),(\d+),(\d+)\]", body[pos:])
        if not xm:
            raise MalformedSyntax("bad crossing at %r" % body[pos:pos + 20])
        quads.append(tuple(int(g) for g in xm.groups()))
        pos += xm.end()
        if pos < len(body):
            if body[pos] != ",":
                raise MalformedSyntax("expected ',' at %r" % body[pos:])
            pos += 1

    occ = {}
    for ci, q in enumerate(quads):
        for k, a in enumerate(q):
            occ.setdefault(a, []).append((ci, k))
    for a, ends in occ.items():
        if len(ends) != 2:
            raise ArcLabelNotTwice("arc %r occurs %d times" % (a, len(ends)))

    head = {}
    for ci in range(len(quads)):
        head[(ci, 0)] = True
        head[(ci, 2)] = False
    _propagate_heads(quads, occ, head)
    crossings = _crossings_from_heads(quads, head)
    return assemble(crossings, circ, planarity_error=NonPlanar)


def _propagate_heads(quads, occ, head):
    """Complete a head/tail assignment for every slot of ``quads``.

    ``head[end]`` is True when the arc enters its crossing at that slot.
    Constraints: the two ends of an arc differ, and the two over-slots
    (1, 3) of a crossing differ; an under pair (0, 2) differs likewise when
    unseeded. Strand cycles not reached by any seed are directed by
    ascending arc labels.
    """

    def neighbors(end):
        ci, k = end
        out = [(ci, _PARTNER_SLOT[k])]
        e1, e2 = occ[quads[ci][k]]
        out.append(e2 if e1 == end else e1)
        return out

    pending = list(head)
    while pending:
        e = pending.pop()
        for nb in neighbors(e):
            want = not head[e]
            if nb in head:
                if head[nb] != want:
                    raise InconsistentOrientation(
                        "conflicting orientation near arc %r"
                        % quads[nb[0]][nb[1]])
            else:
                head[nb] = want
                pending.append(nb)

    free = [(ci, k) for ci in range(len(quads)) for k in range(4)
            if (ci, k) not in head]
    while free:
        start = free[0]
        cycle_ends = []
        cur = start
        while True:
            ci, k = cur
            partner = (ci, _PARTNER_SLOT[k])
            cycle_ends.extend([cur, partner])
            e1, e2 = occ[quads[ci][_PARTNER_SLOT[k]]]
            cur = e2 if e1 == partner else e1
            if cur == start:
                break
        arcs_cycle = tuple(quads[ci][k] for ci, k in cycle_ends[1::2])
        forward = _orient_free_cycle(arcs_cycle) == arcs_cycle
        for idx, e in enumerate(cycle_ends):
            head[e] = (idx % 2 == 1) if forward else (idx % 2 == 0)
        free = [e for e in free if e not in head]


def _crossings_from_heads(quads, head):
    """Build signed crossings from neutral quads plus a head assignment.

    The under axis of each quad is slots (0, 2); the tuple is rotated by
    two when the under strand enters at slot 2, so slot 0 stays the
    incoming under-strand.
    """
    crossings = []
    for ci, q in enumerate(quads):
        if head[(ci, 1)] == head[(ci, 3)] or head[(ci, 0)] == head[(ci, 2)]:
            raise InconsistentOrientation("strand through crossing %d" % ci)
        if head[(ci, 0)]:
            slots = q
            over_in_at_3 = head[(ci, 3)]
        else:
            slots = (q[2], q[3], q[0], q[1])
            over_in_at_3 = head[(ci, 1)]
        crossings.append(Crossing(slots, 1 if over_in_at_3 else -1))
    return crossings


def reorient(neutral_quads, circles=0, order_key=None, basepoint_of=None):
    """Assemble a diagram from neutral quads (under axis at slots 0/2).

    Orientations are rederived from scratch: components touching no seed
    are directed by ascending arc labels. Used after disoriented
    smoothings, where the old orientation cannot survive.
    """
    occ = {}
    for ci, q in enumerate(neutral_quads):
        for k, a in enumerate(q):
            occ.setdefault(a, []).append((ci, k))
    for a, ends in occ.items():
        if len(ends) != 2:
            raise ArcLabelNotTwice("arc %r occurs %d times" % (a, len(ends)))
    head = {}
    _propagate_heads(neutral_quads, occ, head)
    crossings = _crossings_from_heads(neutral_quads, head)
    return assemble(crossings, circles, order_key=order_key,
                    basepoint_of=basepoint_of)


def parse_gauss(text: str) -> Diagram:
    """Parse a signed Gauss code, e.g. ``O1+U2+O3+U1+O2+U3+``.

    Components are separated by ``;``; an empty component is a crossingless
    circle. Realizability as a planar diagram is verified; a code forcing a
    positive-genus map raises ``NonRealizable``.
    """
    s = re.sub(r"\s+", "", text)
    segments = s.split(";") if s else [""]
    token_re = re.compile(r"([OU])(\d+)([+-])")
    comp_tokens = []
    circles = 0
    for seg in segments:
        if not seg:
            circles += 1
            continue
        toks = []
        pos = 0
        while pos < len(seg):
            m = token_re.match(seg, pos)
            if not m:
                raise MalformedSyntax("bad token at %r" % seg[pos:pos + 8])
            toks.append((m.group(1), int(m.group(2)),
                         1 if m.group(3) == "+" else -1))
            pos = m.end()
        comp_tokens.append(toks)

    byid = {}
    for toks in comp_tokens:
        for role, cid, sign in toks:
            byid.setdefault(cid, []).append((role, sign))
    for cid, vis in byid.items():
        roles = sorted(r for r, _ in vis)
        if len(vis) != 2 or roles != ["O", "U"]:
            raise UnpairedCrossing("crossing %d has passages %r"
                                   % (cid, [r for r, _ in vis]))
        if vis[0][1] != vis[1][1]:
            raise MalformedSyntax("crossing %d has inconsistent signs" % cid)

    slot_of = {}
    arc = 0
    for toks in comp_tokens:
        first_arc = arc + 1
        n = len(toks)
        for i, (role, cid, _) in enumerate(toks):
            arc_in = first_arc + i
            arc_out = first_arc + (i + 1) % n
            slot_of.setdefault(cid, {})[role] = (arc_in, arc_out)
        arc += n

    crossings = []
    for cid in sorted(slot_of):
        sign = byid[cid][0][1]
        u_in, u_out = slot_of[cid]["U"]
        o_in, o_out = slot_of[cid]["O"]
        if sign > 0:
            slots = (u_in, o_out, u_out, o_in)
        else:
            slots = (u_in, o_in, u_out, o_out)
        crossings.append(Crossing(slots, sign))

    return assemble(crossings, circles, planarity_error=NonRealizable)


def to_gauss_diagram(d: Diagram, order=None, basepoints=None) -> GaussDiagram:
    """Extract the Gauss diagram in walk-along order."""
    if order is None:
        order = tuple(range(len(d.components)))
    over_pos, under_pos = {}, {}
    for pos, ci, role in d.iter_passages(order, basepoints):
        (over_pos if role == "O" else under_pos)[ci] = pos
    arrows = [(over_pos[ci], under_pos[ci], d.crossings[ci].sign)
              for ci in sorted(over_pos)]
    lengths = [len(d.components[i]) for i in order]
    lengths.extend([0] * d.circles)
    return GaussDiagram(lengths, arrows)


# -- canonical keys -----------------------------------------------------------


def canonical_key(d: Diagram) -> bytes:
    """Deterministic key, invariant under arc relabeling and basepoints.

    The lexicographically minimal signed extended Gauss sequence over all
    component orders and basepoint choices, prefixed with the component and
    circle counts. It detects identical diagrams, not isotopic ones.
    """
    if "key" in d._cache:
        return d._cache["key"]
    best = None
    for order in permutations(range(len(d.components))):
        for basepoints in _basepoint_choices(d, order):
            best = _min_walk(d, order, basepoints, best)
    prefix = "%d:%d|" % (d.n_components, d.circles)
    seq = best or ()
    key = (prefix + ",".join("%s%d%s" % t for t in seq)).encode()
    d._cache["key"] = key
    return key


def _basepoint_choices(d, order):
    comps = [d.components[i] for i in order]
    if not comps:
        yield None
        return

    def rec(i):
        if i == len(comps):
            yield ()
            return
        for a in comps[i]:
            for rest in rec(i + 1):
                yield (a,) + rest

    for choice in rec(0):
        basepoints = [None] * len(d.components)
        for oi, comp_index in enumerate(order):
            basepoints[comp_index] = choice[oi]
        yield basepoints


def _min_walk(d, order, basepoints, best):
    seq = []
    tied = best is not None
    numbering = {}
    for pos, ci, role in d.iter_passages(order, basepoints):
        if ci not in numbering:
            numbering[ci] = len(numbering)
        tok = (role, numbering[ci], "+" if d.crossings[ci].sign > 0 else "-")
        seq.append(tok)
        if tied:
            ref = best[len(seq) - 1]
            if tok > ref:
                return best
            if tok < ref:
                tied = False
    seq = tuple(seq)
    return seq if best is None or seq < best else best


# -- splicing helper ------------------------------------------------------------


def _splice_crossings(crossings, pairs, drop):
    """Drop crossings and glue arc label pairs.

    Returns ``(kept crossings, closed circle count, root map)``. A circle
    closes exactly when a pair unites two already-identified labels.
    """
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    closed = 0
    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx == ry:
            closed += 1
        else:
            parent[max(rx, ry)] = min(rx, ry)

    kept = [Crossing(tuple(find(q) for q in x.arcs), x.sign)
            for i, x in enumerate(crossings) if i not in drop]
    return kept, closed, find


# -- elementary edits ---------------------------------------------------------


def crossing_change(d: Diagram, ci: int) -> Diagram:
    """Flip over/under (and hence the sign) at one crossing."""
    if not (0 <= ci < len(d.crossings)):
        raise NoSuchCrossing(ci)
    out = []
    for i, x in enumerate(d.crossings):
        out.append(_flipped(x) if i == ci else x)
    return assemble(out, d.circles)


def _flipped(x):
    a = x.arcs
    if x.sign > 0:
        return Crossing((a[3], a[0], a[1], a[2]), -1)
    return Crossing((a[1], a[2], a[3], a[0]), 1)


def mirror(d: Diagram) -> Diagram:
    """Mirror image: every crossing flipped, writhe negated."""
    return assemble([_flipped(x) for x in d.crossings], d.circles)


def smooth(d: Diagram, ci: int, order_key=None, basepoint_of=None) -> Diagram:
    """Oriented smoothing at a crossing.

    A self-crossing splits its component; a crossing of two components
    merges them. Component ordering defaults to smallest arc label.
    """
    kept, circles, _ = smooth_tracked(d, ci)
    return assemble(kept, circles, order_key=order_key,
                    basepoint_of=basepoint_of)


def smooth_tracked(d: Diagram, ci: int):
    """Smoothing internals: ``(kept crossings, total circles, arc root map)``.

    The root map sends old arc labels to their surviving representative so
    callers can track basepoints through the splice.
    """
    if not (0 <= ci < len(d.crossings)):
        raise NoSuchCrossing(ci)
    x = d.crossings[ci]
    a = x.arcs
    pairs = [(a[0], a[x.over_out_slot]), (a[x.over_in_slot], a[2])]
    kept, closed, find = _splice_crossings(d.crossings, pairs, {ci})
    return kept, d.circles + closed, find


def smooth_disoriented(d: Diagram, ci: int, order_key=None,
                       basepoint_of=None) -> Diagram:
    """The orientation-incompatible smoothing at a crossing.

    Joins the strand ends the other planar way, so the old orientation dies;
    the result is reoriented from scratch (ascending labels on freed
    components). Only regular-isotopy invariants of unoriented diagrams,
    like the Dubrovnik polynomial, should consume this.
    """
    if not (0 <= ci < len(d.crossings)):
        raise NoSuchCrossing(ci)
    x = d.crossings[ci]
    a = x.arcs
    pairs = [(a[0], a[x.over_in_slot]), (a[x.over_out_slot], a[2])]
    kept, closed, find = _splice_crossings(d.crossings, pairs, {ci})
    quads = [k.arcs for k in kept]
    return reorient(quads, d.circles + closed, order_key=order_key,
                    basepoint_of=basepoint_of)


def bt_twist(d: Diagram, ci: int) -> Diagram:
    """Replace a positive crossing by three successive positive crossings.

    Inserts a full twist: the crossing count grows by 2 and the Seifert
    circle count by 1, preserving the diagram's canonical Euler
    characteristic and genus.
    """
    if not (0 <= ci < len(d.crossings)):
        raise NoSuchCrossing(ci)
    x = d.crossings[ci]
    if x.sign <= 0:
        raise NegativeCrossing("bt twist needs a positive crossing")
    a, b, c, e = x.arcs
    p1, q1, p2, q2 = _fresh_labels(d, 4)
    out = [y for i, y in enumerate(d.crossings) if i != ci]
    # sigma_1^3 tangle: each under-out feeds the next over-in and vice versa
    out.append(Crossing((a, p1, q1, e), 1))
    out.append(Crossing((p1, q2, p2, q1), 1))
    out.append(Crossing((q2, b, c, p2), 1))
    return assemble(out, d.circles)


def connected_sum(d1: Diagram, k1: int, d2: Diagram, k2: int) -> Diagram:
    """Connected sum along component ``k1`` of ``d1`` and ``k2`` of ``d2``.

    The cut happens at each component's basepoint arc; circle components
    act as unknot factors. Component indices count crossing-bearing
    components first, then circles.
    """
    n1, n2 = len(d1.components), len(d2.components)
    if not (0 <= k1 < n1 + d1.circles):
        raise NoSuchCrossing("no component %d" % k1)
    if not (0 <= k2 < n2 + d2.circles):
        raise NoSuchCrossing("no component %d" % k2)
    if k1 >= n1 and k2 >= n2:
        # unknot # unknot
        return assemble(_disjoint_crossings(d1, d2),
                        d1.circles + d2.circles - 1)
    if k2 >= n2:
        return assemble(_disjoint_crossings(d1, d2),
                        d1.circles + d2.circles - 1)
    if k1 >= n1:
        return assemble(_disjoint_crossings(d1, d2),
                        d1.circles + d2.circles - 1)

    offset = max(a for x in d1.crossings for a in x.arcs)
    merged = list(d1.crossings)
    merged.extend(Crossing(tuple(a + offset for a in x.arcs), x.sign)
                  for x in d2.crossings)
    arc1 = d1.components[k1][0]
    arc2 = d2.components[k2][0] + offset
    fresh = max(a for x in merged for a in x.arcs) + 1
    h1, h2 = fresh, fresh + 1

    out = []
    for x in merged:
        arcs = list(x.arcs)
        for k in range(4):
            if arcs[k] == arc1 and k in x.in_slots():
                arcs[k] = h1
            elif arcs[k] == arc2 and k in x.in_slots():
                arcs[k] = h2
        out.append(Crossing(tuple(arcs), x.sign))
    # tail(arc1) -> head(arc2): rename h2 -> arc1; tail(arc2) -> head(arc1)
    final = [Crossing(tuple(arc1 if q == h2 else (arc2 if q == h1 else q)
                            for q in x.arcs), x.sign) for x in out]
    return assemble(final, d1.circles + d2.circles)


def _disjoint_crossings(d1, d2):
    offset = max((a for x in d1.crossings for a in x.arcs), default=0)
    merged = list(d1.crossings)
    merged.extend(Crossing(tuple(a + offset for a in x.arcs), x.sign)
                  for x in d2.crossings)
    return merged


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Split union of two diagrams (drawn side by side)."""
    return assemble(_disjoint_crossings(d1, d2), d1.circles + d2.circles)


def murasugi_sum(d1: Diagram, s1_index: int, d2: Diagram, s2_index: int,
                 alignment) -> Diagram:
    """Diagram Murasugi sum (star product) along Seifert circles.

    ``s1_index`` names an innermost Seifert circle of ``d1``, ``s2_index``
    an outermost one of ``d2`` (indices into ``seifert_data(d).circles``).
    ``alignment`` is a 0/1 sequence giving the cyclic interleaving of the
    two circles' crossing attachments (0 consumes the next ``d1`` site, 1
    the next ``d2`` site), both consumed in stored cyclic order. The
    operation is not unique, hence the explicit argument. The identified
    circle becomes separating and the Seifert graph of the result is the
    one-point join of the two Seifert graphs.
    """
    from . import seifert as _seifert

    sd1 = _seifert.seifert_data(d1)
    sd2 = _seifert.seifert_data(d2)
    if not (0 <= s1_index < len(sd1.circles)) or not _seifert.is_innermost(
            sd1, s1_index):
        raise NotInnermost(s1_index)
    if not (0 <= s2_index < len(sd2.circles)) or not _seifert.is_outermost(
            sd2, s2_index):
        raise NotOutermost(s2_index)
    sites1 = sd1.circle_passages[s1_index]
    sites2 = sd2.circle_passages[s2_index]
    alignment = tuple(alignment)
    if (sorted(alignment) != sorted([0] * len(sites1) + [1] * len(sites2))
            or not alignment):
        raise InvalidAlignment("alignment must interleave %d and %d sites"
                               % (len(sites1), len(sites2)))

    offset = max((a for x in d1.crossings for a in x.arcs), default=0)
    cross = [Crossing(x.arcs, x.sign) for x in d1.crossings]
    cross.extend(Crossing(tuple(a + offset for a in x.arcs), x.sign)
                 for x in d2.crossings)

    merged_sites = []
    i1 = i2 = 0
    for t in alignment:
        if t == 0:
            ci, sin, sout = sites1[i1]
            i1 += 1
            merged_sites.append((ci, sin, sout))
        else:
            ci, sin, sout = sites2[i2]
            i2 += 1
            merged_sites.append((ci + len(d1.crossings), sin, sout))

    top = max(a for x in cross for a in x.arcs)
    arcs_out = [list(x.arcs) for x in cross]
    n = len(merged_sites)
    for idx, (ci, sin, sout) in enumerate(merged_sites):
        new_arc = top + 1 + idx
        arcs_out[ci][sout] = new_arc
        nci, nsin, _ = merged_sites[(idx + 1) % n]
        arcs_out[nci][nsin] = new_arc
    rebuilt = [Crossing(tuple(arcs), x.sign)
               for arcs, x in zip(arcs_out, cross)]
    return assemble(rebuilt, d1.circles + d2.circles)


# -- Reidemeister moves --------------------------------------------------------


def _fresh_labels(d, n):
    top = max((a for x in d.crossings for a in x.arcs), default=0)
    return [top + 1 + i for i in range(n)]


def reduce_diagram(d: Diagram, order_key=None, basepoint_of=None):
    """Remove all R1 kinks and R2 bigons; returns ``(diagram, curl_signs)``.

    ``curl_signs`` lists the signs of removed kinks (regular-isotopy
    bookkeeping for the Dubrovnik engine). R2 pairs are writhe-neutral and
    need no bookkeeping. Ambient-isotopy invariants may ignore the curls.
    """
    curls = []
    cur = d
    while True:
        step = _reduce_once(cur, order_key, basepoint_of)
        if step is None:
            return cur, curls
        cur, curl = step
        if curl is not None:
            curls.append(curl)


def _reduce_once(d, order_key, basepoint_of):
    # R1: loop arc occupying two adjacent slots of one crossing
    for ci, x in enumerate(d.crossings):
        a = x.arcs
        for k in range(4):
            if a[k] != a[(k + 1) % 4]:
                continue
            o1, o2 = a[(k + 2) % 4], a[(k + 3) % 4]
            kept, closed, _ = _splice_crossings(d.crossings, [(o1, o2)], {ci})
            return (assemble(kept, d.circles + closed, order_key=order_key,
                             basepoint_of=basepoint_of), x.sign)
    # R2: bigon face whose one wall strand is over at both crossings
    for face in d.faces():
        if len(face) != 2:
            continue
        (x1, k1), (x2, k2) = face
        if x1 == x2:
            continue
        c1, c2 = d.crossings[x1], d.crossings[x2]
        p = c1.arcs[(k1 + 1) % 4]
        q = c2.arcs[(k2 + 1) % 4]
        if p == q:
            continue

        def roles(x, arc):
            return {x.role(k) for k in range(4) if x.arcs[k] == arc}

        if not ((roles(c1, p) == {"O"} and roles(c2, p) == {"O"}
                 and roles(c1, q) == {"U"} and roles(c2, q) == {"U"})
                or (roles(c1, p) == {"U"} and roles(c2, p) == {"U"}
                    and roles(c1, q) == {"O"} and roles(c2, q) == {"O"})):
            continue

        def strand_other(x, arc):
            for k in range(4):
                if x.arcs[k] == arc:
                    return x.arcs[_PARTNER_SLOT[k]]
            raise KeyError(arc)

        pairs = [(strand_other(c1, p), strand_other(c2, p)),
                 (strand_other(c1, q), strand_other(c2, q))]
        kept, closed, _ = _splice_crossings(d.crossings, pairs, {x1, x2})
        return (assemble(kept, d.circles + closed, order_key=order_key,
                         basepoint_of=basepoint_of), None)
    return None


def _kink_crossing(a, n1, n2, sign, over_first):
    """Kink crossing splitting arc ``a`` into ``a -> loop n2 -> n1``."""
    if sign > 0:
        if over_first:
            return Crossing((n2, n2, n1, a), 1)
        return Crossing((a, n1, n2, n2), 1)
    if over_first:
        return Crossing((n2, a, n1, n2), -1)
    return Crossing((a, n2, n2, n1), -1)


def perturb_reidemeister(d: Diagram, move: str, seed: int) -> Diagram:
    """Apply one Reidemeister move at a deterministically seeded site.

    The result represents the same link. R1 inserts a kink on an arc, R2
    pushes one arc of a face across another, R3 slides a strand over a
    valid triangle; ``NoValidSite`` is raised when the move cannot apply.
    """
    import random

    move_code = {"R1": 1, "R2": 2, "R3": 3}.get(move, 0)
    rng = random.Random(seed * 1000003 + move_code * 101 + d.n_crossings)
    if move == "R1":
        return _r1_insert(d, rng)
    if move == "R2":
        return _r2_insert(d, rng)
    if move == "R3":
        sites = _r3_sites(d)
        if not sites:
            raise NoValidSite("no R3 triangle")
        return _r3_apply(d, sites[rng.randrange(len(sites))])
    raise ValueError("move must be R1, R2 or R3")


def _r1_insert(d, rng):
    sign = rng.choice([1, -1])
    over_first = rng.random() < 0.5
    if not d.crossings:
        if d.circles < 1:
            raise NoValidSite("empty diagram")
        big, loop = 1, 2
        kink = _kink_crossing(big, big, loop, sign, over_first)
        return assemble([kink], d.circles - 1)
    arcs = d.all_arcs()
    a = arcs[rng.randrange(len(arcs))]
    n1, n2 = _fresh_labels(d, 2)
    out = []
    for x in d.crossings:
        slots = list(x.arcs)
        for k in range(4):
            if slots[k] == a and k in x.in_slots():
                slots[k] = n1
        out.append(Crossing(tuple(slots), x.sign))
    out.append(_kink_crossing(a, n1, n2, sign, over_first))
    return assemble(out, d.circles)


def _r2_insert(d, rng):
    sites = []
    for face in d.faces():
        arcs = d.face_arcs(face)
        for i in range(len(arcs)):
            for j in range(len(arcs)):
                if i != j and arcs[i] != arcs[j]:
                    sites.append((arcs[i], arcs[j]))
    if not sites:
        if d.circles >= 2:
            a1, a2, b1, b2 = _fresh_labels(d, 4)
            x1 = Crossing((b1, a2, b2, a1), 1)
            x2 = Crossing((b2, a2, b1, a1), -1)
            return assemble(list(d.crossings) + [x1, x2], d.circles - 2)
        raise NoValidSite("no face with two distinct arcs")
    p, q = sites[rng.randrange(len(sites))]
    for variant in ("A", "B", "C", "D"):
        try:
            return _r2_push(d, p, q, variant)
        except NonPlanar:
            continue
    raise NoValidSite("R2 push failed on all sides")


def _r2_push(d, p, q, variant):
    """Push arc ``p`` over arc ``q``; they must bound a common face."""
    n = _fresh_labels(d, 4)
    p2, q2, m_p, m_q = n
    out = []
    for x in d.crossings:
        slots = list(x.arcs)
        for k in range(4):
            if slots[k] == p and k in x.in_slots():
                slots[k] = p2
            elif slots[k] == q and k in x.in_slots():
                slots[k] = q2
        out.append(Crossing(tuple(slots), x.sign))
    if variant == "A":      # p meets the q-first crossing first, signs (+,-)
        x1 = Crossing((q, m_p, m_q, p), 1)
        x2 = Crossing((m_q, m_p, q2, p2), -1)
    elif variant == "B":    # signs (-,+)
        x1 = Crossing((q, p, m_q, m_p), -1)
        x2 = Crossing((m_q, p2, q2, m_p), 1)
    elif variant == "C":    # p runs against q, signs (-,+)
        x1 = Crossing((q, m_p, m_q, p2), -1)
        x2 = Crossing((m_q, m_p, q2, p), 1)
    else:                   # signs (+,-)
        x1 = Crossing((q, p2, m_q, m_p), 1)
        x2 = Crossing((m_q, p, q2, m_p), -1)
    out.extend([x1, x2])
    return assemble(out, d.circles)


def _r3_sites(d):
    sites = []
    for face in d.faces():
        if len(face) != 3:
            continue
        cis = [ci for ci, _ in face]
        if len(set(cis)) != 3:
            continue
        arcs = d.face_arcs(face)
        if len(set(arcs)) != 3:
            continue
        over_counts = []
        for a in arcs:
            cnt = 0
            for ci in cis:
                x = d.crossings[ci]
                for k in range(4):
                    if x.arcs[k] == a and x.role(k) == "O":
                        cnt += 1
            over_counts.append(cnt)
        if sorted(over_counts) == [0, 1, 2]:
            sites.append(face)
    return sites


def _r3_apply(d, face):
    """Triangle flip: along each of the three strands, the two triangle
    crossings swap their order."""
    arcs = d.face_arcs(face)
    out = [list(x.arcs) for x in d.crossings]
    signs = [x.sign for x in d.crossings]

    for e in arcs:
        tail_end = d.arc_tail(e)
        head_end = d.arc_head(e)
        p_ci, p_slot = tail_end      # e leaves P here
        q_ci, q_slot = head_end      # e enters Q here
        x_p, x_q = d.crossings[p_ci], d.crossings[q_ci]
        p_in_slot = _PARTNER_SLOT[p_slot]
        q_out_slot = _PARTNER_SLOT[q_slot]
        u = x_p.arcs[p_in_slot]      # strand arc entering P
        w = x_q.arcs[q_out_slot]     # strand arc leaving Q
        # after the flip the strand runs u -> Q -> e(reversed) -> P -> w
        out[p_ci][p_in_slot] = e
        out[p_ci][p_slot] = w
        out[q_ci][q_slot] = u
        out[q_ci][q_out_slot] = e

    rebuilt = [Crossing(tuple(a), s) for a, s in zip(out, signs)]
    return assemble(rebuilt, d.circles)
