"""Seifert algorithm outputs and checkerboard data for a diagram.

Computes the Seifert circles with their planar nesting, the signed Seifert
graph, canonical Euler characteristic / genus / self-linking number,
crossing goodness, checkerboard colorings with the crossing types a/b and
I/II, and the Goeritz matrix of either checkerboard surface together with
its Gordon-Litherland correction term.

The smoothed diagram's complementary regions form a tree (nodes regions,
edges Seifert circles) rooted at the outer region; circle containment is
the ancestor relation in that tree and the canonical surface stacks disks
at height = nesting depth.
"""

from __future__ import annotations

from .errors import DisconnectedDiagram, TooFewRegions
from . import diagram as dg

# which opposite corner pair merges when the crossing is smoothed
_MERGED_CORNERS = {1: (1, 3), -1: (0, 2)}


class SeifertData:
    """Seifert circles, nesting and the signed Seifert graph of a diagram.

    ``circles[i]`` is the cyclic arc list of circle ``i`` (crossing-bearing
    circles only; crossingless components are counted in ``s`` but carry no
    structure). ``edges[ci] = (i, j)`` names the circles joined by crossing
    ``ci``; the edge sign is the crossing sign. ``depth[i]`` is the number
    of circles strictly containing circle ``i`` within its connected piece,
    and ``orientation[i]`` is ``+1`` for a counterclockwise planar circle.
    """

    def __init__(self, d):
        self.diagram = d
        self._build()

    def _build(self):
        d = self.diagram
        circles = []
        passages = []
        circle_of_arc = {}
        seen = set()
        for arc in d.all_arcs():
            if arc in seen:
                continue
            idx = len(circles)
            cyc_arcs, cyc_pass = [], []
            a = arc
            while True:
                cyc_arcs.append(a)
                circle_of_arc[a] = idx
                ci, slot = d.arc_head(a)
                x = d.crossings[ci]
                out = x.over_out_slot if slot == 0 else 2
                cyc_pass.append((ci, slot, out))
                a = x.arcs[out]
                if a == arc:
                    break
                seen.add(a)
            seen.add(arc)
            circles.append(tuple(cyc_arcs))
            passages.append(tuple(cyc_pass))
        self.circles = tuple(circles)
        self.circle_passages = tuple(passages)
        self.circle_of_arc = circle_of_arc

        self.s = len(circles) + d.circles
        self.chi = self.s - d.n_crossings
        self.sl = -self.s + d.writhe
        if d.is_connected():
            self.genus = (-self.chi - d.n_components + 2) // 2
        else:
            self.genus = None

        self.edges = tuple(
            (circle_of_arc[x.arcs[0]],
             circle_of_arc[x.arcs[x.over_in_slot]])
            for x in d.crossings)

        self._build_regions()

    # -- smoothed regions and the nesting tree ---------------------------

    def _build_regions(self):
        d = self.diagram
        cf = d.corner_face()
        nfaces = len(d.faces())
        parent = list(range(nfaces))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for ci, x in enumerate(d.crossings):
            k1, k2 = _MERGED_CORNERS[x.sign]
            f1, f2 = find(cf[(ci, k1)]), find(cf[(ci, k2)])
            if f1 != f2:
                parent[f2] = f1

        self.region_of_face = {fi: find(fi) for fi in range(nfaces)}

        # left/right region of each circle: at every passage one side wraps
        # the cut corner, the other faces the crossing's merged region
        left = [None] * len(self.circles)
        right = [None] * len(self.circles)
        for idx, cyc in enumerate(self.circle_passages):
            for ci, sin, _ in cyc:
                x = d.crossings[ci]
                merged = self.region_of_face[cf[(ci, _MERGED_CORNERS[x.sign][0])]]
                if x.sign > 0:
                    if sin == 0:
                        lf, rf = merged, self.region_of_face[cf[(ci, 0)]]
                    else:
                        lf, rf = self.region_of_face[cf[(ci, 2)]], merged
                else:
                    if sin == 0:
                        lf, rf = self.region_of_face[cf[(ci, 3)]], merged
                    else:
                        lf, rf = merged, self.region_of_face[cf[(ci, 1)]]
                assert left[idx] in (None, lf), "inconsistent circle side"
                assert right[idx] in (None, rf), "inconsistent circle side"
                left[idx] = lf
                right[idx] = rf
        self.circle_left = tuple(left)
        self.circle_right = tuple(right)

        # outer face per connected piece: most corners, ties by smallest corner
        outer_regions = {}
        faces = d.faces()
        for pi, piece in enumerate(d.connected_pieces()):
            piece_set = set(piece)
            cands = [fi for fi, face in enumerate(faces)
                     if face[0][0] in piece_set]
            best = max(cands, key=lambda fi: (len(faces[fi]),
                                              [(-c, -k) for c, k in faces[fi]]))
            for ci in piece:
                outer_regions[ci] = self.region_of_face[best]
        self._outer_region_of_crossing = outer_regions

        # region tree per piece: BFS from the outer region over circle edges
        adj = {}
        for idx in range(len(self.circles)):
            adj.setdefault(left[idx], []).append((idx, right[idx]))
            adj.setdefault(right[idx], []).append((idx, left[idx]))
        region_depth = {}
        parent_region = [None] * len(self.circles)
        child_region = [None] * len(self.circles)
        depth = [0] * len(self.circles)
        for root in set(outer_regions.values()):
            if root in region_depth:
                continue
            region_depth[root] = 0
            queue = [root]
            while queue:
                r = queue.pop(0)
                for cidx, other in adj.get(r, ()):
                    if parent_region[cidx] is not None:
                        continue
                    parent_region[cidx] = r
                    child_region[cidx] = other
                    depth[cidx] = region_depth[r]
                    if other not in region_depth:
                        region_depth[other] = region_depth[r] + 1
                        queue.append(other)
        self.parent_region = tuple(parent_region)
        self.child_region = tuple(child_region)
        self.depth = tuple(depth)
        self.region_depth = region_depth
        self.orientation = tuple(
            1 if left[i] == child_region[i] else -1
            for i in range(len(self.circles)))

    # -- derived queries ---------------------------------------------------

    def contains(self, i, j):
        """True when circle ``i`` strictly contains circle ``j``."""
        if i == j:
            return False
        r = self.parent_region[j]
        while r is not None:
            hit = [k for k in range(len(self.circles))
                   if self.child_region[k] == r]
            if not hit:
                return False
            k = hit[0]
            if k == i:
                return True
            r = self.parent_region[k]
        return False

    def merged_region_at(self, ci):
        x = self.diagram.crossings[ci]
        corner = (ci, _MERGED_CORNERS[x.sign][0])
        return self.region_of_face[self.diagram.corner_face()[corner]]

    def crossing_kind(self, ci):
        """``('sibling', i, j)`` or ``('nested', parent circle, child)``."""
        i, j = self.edges[ci]
        m = self.merged_region_at(ci)
        if m == self.parent_region[i] and m == self.parent_region[j]:
            return ("sibling", i, j)
        if m == self.child_region[i] and m == self.parent_region[j]:
            return ("nested", i, j)
        if m == self.child_region[j] and m == self.parent_region[i]:
            return ("nested", j, i)
        raise AssertionError("crossing %d joins non-adjacent circles" % ci)


def seifert_data(d) -> SeifertData:
    """Seifert circles, nesting, graph, chi, genus and self-linking number."""
    return SeifertData(d)


def is_innermost(sd: SeifertData, i: int) -> bool:
    """No other Seifert circle inside circle ``i``."""
    c = sd.child_region[i]
    return all(c not in (sd.parent_region[j], sd.child_region[j])
               for j in range(len(sd.circles)) if j != i)


def is_outermost(sd: SeifertData, i: int) -> bool:
    """Every other Seifert circle lies inside circle ``i``."""
    if sd.diagram.circles:
        return False
    if len(sd.diagram.connected_pieces()) > 1:
        return False
    p = sd.parent_region[i]
    if sd.region_depth.get(p, -1) != 0:
        return False
    return all(p not in (sd.parent_region[j], sd.child_region[j])
               for j in range(len(sd.circles)) if j != i)


def is_braided(sd: SeifertData) -> bool:
    """True when the Seifert circles are totally nested (a braid closure).

    Equivalently, the smoothed-region tree is a path, so the circles can be
    ordered as strands of a closed braid.
    """
    if sd.diagram.circles or not sd.circles:
        return False
    degree = {}
    for i in range(len(sd.circles)):
        for r in (sd.circle_left[i], sd.circle_right[i]):
            degree[r] = degree.get(r, 0) + 1
    if len(degree) != len(sd.circles) + 1:
        return False
    ends = [r for r, k in degree.items() if k == 1]
    return len(ends) == 2 and all(k <= 2 for k in degree.values())


def braid_levels(sd: SeifertData):
    """Strand levels of a braided diagram: circle index -> level 0..n-1.

    Level 0 is the circle adjacent to the path end whose circle carries the
    smallest arc label; crossings at level l join circles l and l+1.
    """
    n = len(sd.circles)
    adj = {}
    for i in range(n):
        adj.setdefault(sd.circle_left[i], []).append((i, sd.circle_right[i]))
        adj.setdefault(sd.circle_right[i], []).append((i, sd.circle_left[i]))
    ends = sorted(r for r, nb in adj.items() if len(nb) == 1)
    start = min(ends, key=lambda r: min(
        min(sd.circles[i]) for i, _ in adj[r]))
    level = {}
    region = start
    prev_circle = None
    lvl = 0
    while True:
        step = [(i, other) for i, other in adj[region] if i != prev_circle]
        if not step:
            break
        i, region = step[0]
        level[i] = lvl
        prev_circle = i
        lvl += 1
    return level


def braid_form(d, max_moves=None):
    """Convert a connected diagram to a braided one by Vogel moves.

    Repeatedly performs an R2 push across a face carrying two coherently
    oriented wall arcs of distinct Seifert circles; the link is unchanged.
    Returns the braided diagram (the input itself when already braided).
    """
    from .errors import KnotError
    from .diagram import _r2_push

    cur = d
    sd = seifert_data(cur)
    if is_braided(sd) or not cur.crossings:
        return cur
    fuel = max_moves if max_moves is not None else 4 * sd.s * sd.s + 60
    while fuel > 0:
        fuel -= 1
        sd = seifert_data(cur)
        if is_braided(sd):
            return cur
        move = _vogel_site(cur, sd)
        if move is None:
            raise KnotError("no Vogel move found on a non-braided diagram")
        p, q = move
        for variant in ("A", "B", "C", "D"):
            try:
                nxt = _r2_push(cur, p, q, variant)
            except Exception:
                continue
            cur = nxt
            break
        else:
            raise KnotError("Vogel push failed")
    raise KnotError("Vogel iteration did not terminate")


def _vogel_site(d, sd):
    """A pair of coherently oriented face walls on distinct Seifert circles."""
    for face in d.faces():
        walls = []
        for ci, k in face:
            arc = d.crossings[ci].arcs[(k + 1) % 4]
            coherent = d.arc_tail(arc) == (ci, (k + 1) % 4)
            walls.append((arc, coherent, sd.circle_of_arc[arc]))
        for i in range(len(walls)):
            for j in range(len(walls)):
                if i == j:
                    continue
                a1, c1, s1 = walls[i]
                a2, c2, s2 = walls[j]
                if s1 != s2 and c1 == c2 and a1 != a2:
                    return (a1, a2)
    return None


def classify_crossings(sd: SeifertData):
    """Goodness of each crossing plus the Seifert-equivalence classes.

    A negative crossing is good exactly when it is a singular negative edge
    of the Seifert graph; positive crossings are reported good vacuously.
    Classes partition crossings by the (unordered) circle pair they join.
    """
    classes = {}
    for ci, (i, j) in enumerate(sd.edges):
        classes.setdefault(frozenset((i, j)), []).append(ci)
    good = {}
    for ci, (i, j) in enumerate(sd.edges):
        singular = len(classes[frozenset((i, j))]) == 1
        if sd.diagram.crossings[ci].sign < 0:
            good[ci] = singular
        else:
            good[ci] = True
    return good, {k: tuple(v) for k, v in classes.items()}


class Checkerboard:
    """Checkerboard coloring with per-crossing types a/b and I/II.

    The unbounded face is colored white. Type a means the upper-right and
    lower-left quadrants seen along the horizontal over-strand are black;
    type I means the two orientation-cut (Seifert circle) quadrants are
    black. A positive crossing is always of type Ib or IIa, a negative one
    of type Ia or IIb.
    """

    def __init__(self, d):
        if not d.is_connected() or not d.crossings:
            raise DisconnectedDiagram("checkerboard needs a connected diagram "
                                      "with at least one crossing")
        self.diagram = d
        faces = d.faces()
        cf = d.corner_face()

        outer = max(range(len(faces)),
                    key=lambda fi: (len(faces[fi]),
                                    [(-c, -k) for c, k in faces[fi]]))
        color = {outer: "white"}
        queue = [outer]
        adj = {}
        for occs in d.arc_slots().values():
            for ci, k in occs:
                f1, f2 = cf[(ci, (k - 1) % 4)], cf[(ci, k)]
                adj.setdefault(f1, set()).add(f2)
                adj.setdefault(f2, set()).add(f1)
        while queue:
            f = queue.pop()
            for g in adj.get(f, ()):
                opp = "black" if color[f] == "white" else "white"
                if g in color:
                    assert color[g] == opp, "diagram is not checkerboard"
                else:
                    color[g] = opp
                    queue.append(g)
        self.face_color = color
        self.outer_face = outer

        self.type_ab = {}
        self.type_12 = {}
        for ci, x in enumerate(d.crossings):
            a_black = color[cf[(ci, 1)]] == "black"
            self.type_ab[ci] = "a" if a_black else "b"
            seif_corner = (ci, 0) if x.sign > 0 else (ci, 1)
            self.type_12[ci] = "I" if color[cf[seif_corner]] == "black" else "II"

        self.c_Ia = self._count("I", "a")
        self.c_Ib = self._count("I", "b")
        self.c_IIa = self._count("II", "a")
        self.c_IIb = self._count("II", "b")

        # region types: (alpha, beta) = counts of type a / type b corners
        self.region_type = {}
        for fi, face in enumerate(faces):
            alpha = sum(1 for ci, _ in face if self.type_ab[ci] == "a")
            beta = sum(1 for ci, _ in face if self.type_ab[ci] == "b")
            self.region_type[fi] = (alpha, beta)

    def _count(self, t12, tab):
        return sum(1 for ci in self.type_12
                   if self.type_12[ci] == t12 and self.type_ab[ci] == tab)

    def regions(self, color):
        return sorted(f for f, c in self.face_color.items() if c == color)


def checkerboard(d) -> Checkerboard:
    """Checkerboard coloring of a connected diagram; unbounded face white."""
    return Checkerboard(d)


class GoeritzForm:
    """Gordon-Litherland form of one checkerboard surface.

    For ``surface='black'`` the form lives on the white-region curves: the
    diagonal entry of a region of type (alpha, beta) is alpha - beta and
    the off-diagonal entry is minus the eta-sum over shared corner
    crossings, with eta(a) = +1 and eta(b) = -1. On the white surface the
    pairing of black-region curves flips sign (beta - alpha on the
    diagonal), so eta flips. One region is deleted to obtain a basis (the
    unbounded one when it has the basis color). The ``correction`` field
    is half the Gordon-Litherland e-term of the surface.
    """

    def __init__(self, cb, surface="black", allow_small=False):
        basis_color = "white" if surface == "black" else "black"
        regions = cb.regions(basis_color)
        if len(regions) < 2 and not allow_small:
            raise TooFewRegions("need at least 2 %s regions" % basis_color)
        drop = cb.outer_face if cb.face_color[cb.outer_face] == basis_color \
            else regions[0]
        basis = [r for r in regions if r != drop]
        index = {r: i for i, r in enumerate(basis)}
        n = len(basis)
        m = [[0] * n for _ in range(n)]

        d = cb.diagram
        cf = d.corner_face()
        eta = {"a": 1, "b": -1} if surface == "black" else {"a": -1, "b": 1}
        for ci, x in enumerate(d.crossings):
            e = eta[cb.type_ab[ci]]
            corners = [cf[(ci, k)] for k in range(4)
                       if cb.face_color[cf[(ci, k)]] == basis_color]
            for f in corners:
                if f in index:
                    m[index[f]][index[f]] += e
            pair = sorted(set(corners))
            if len(pair) == 2:
                f1, f2 = pair
                if f1 in index and f2 in index:
                    m[index[f1]][index[f2]] -= e
                    m[index[f2]][index[f1]] -= e

        self.surface = surface
        self.basis = tuple(basis)
        self.matrix = tuple(tuple(row) for row in m)
        if surface == "black":
            self.correction = cb.c_IIb - cb.c_IIa
        else:
            self.correction = cb.c_Ia - cb.c_Ib


def goeritz(cb: Checkerboard, surface="black") -> GoeritzForm:
    """Goeritz/Gordon-Litherland form of the chosen checkerboard surface."""
    return GoeritzForm(cb, surface)
