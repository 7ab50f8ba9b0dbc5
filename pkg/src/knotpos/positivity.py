"""Positivity certification and the standard skein machinery.

Certifies the diagram classes positive, almost positive (type I/II),
(good/weakly) successively k-almost positive and weakly positive, computes
negative overarcs and the lexicographic complexity (c(D), c(D) - l(D)),
detects height-splitness, builds linking graphs with exact spanning-tree
counts, and produces the standard skein triple and standard unknotting
sequence of a weakly successively almost positive diagram.
"""

from __future__ import annotations

from itertools import permutations

from .errors import (
    NoPositiveCrossing,
    NotWeaklyPositive,
    NotWSAP,
    TooManyComponents,
)
from . import diagram as dg
from . import seifert as sf


class Overarc:
    """A maximal over-segment: every crossing it traverses is an overpass.

    ``crossings`` lists the crossing indices passed over, in walk order;
    ``start_arc`` is the arc on which the segment begins (just after the
    delimiting underpass); ``cyclic`` marks a component with no underpass
    at all, whose whole traversal is one circular overarc.
    """

    __slots__ = ("component", "start_arc", "crossings", "cyclic")

    def __init__(self, component, start_arc, crossings, cyclic):
        self.component = component
        self.start_arc = start_arc
        self.crossings = tuple(crossings)
        self.cyclic = cyclic

    def __repr__(self):
        return "Overarc(comp=%d, start=%r, over=%r%s)" % (
            self.component, self.start_arc, self.crossings,
            ", cyclic" if self.cyclic else "")


def overarcs(d):
    """All maximal overarcs of the diagram, in walk-along order."""
    out = []
    for comp_index, comp in enumerate(d.components):
        roles = []
        for a in comp:
            ci, slot = d.arc_head(a)
            roles.append((a, ci, "U" if slot == 0 else "O"))
        if all(r == "O" for _, _, r in roles):
            out.append(Overarc(comp_index, comp[0],
                               [ci for _, ci, _ in roles], True))
            continue
        n = len(roles)
        starts = [k for k in range(n) if roles[k][2] == "U"]
        for s in starts:
            run = []
            k = (s + 1) % n
            while roles[k][2] == "O":
                run.append(roles[k][1])
                k = (k + 1) % n
            start_arc = comp[(s + 1) % n]
            out.append(Overarc(comp_index, start_arc, run, False))
    return out


class PositivityClass:
    """Result of classify: the strongest class plus its witness data."""

    __slots__ = ("tag", "k", "overarc", "length", "wp_witness")

    def __init__(self, tag, k, overarc=None, length=0, wp_witness=None):
        self.tag = tag
        self.k = k
        self.overarc = overarc
        self.length = length
        self.wp_witness = wp_witness

    def certifies_wsap(self):
        return self.tag in ("Positive", "AlmostPositiveI", "AlmostPositiveII",
                            "GoodSAP", "SAP", "WSAP")

    def __repr__(self):
        return "PositivityClass(%s, k=%d, l=%d)" % (self.tag, self.k,
                                                    self.length)


def _consecutive(arc_crossings, negatives, cyclic):
    idx = [i for i, ci in enumerate(arc_crossings) if ci in negatives]
    if not idx:
        return True
    if not cyclic:
        return idx[-1] - idx[0] == len(idx) - 1
    n = len(arc_crossings)
    gaps = sorted(idx)
    # cyclically consecutive: some rotation makes them a block
    runs = [(gaps[(i + 1) % len(gaps)] - gaps[i]) % n for i in range(len(gaps))]
    return sum(1 for r in runs if r != 1) <= 1


def classify(d) -> PositivityClass:
    """Strongest positivity class of the diagram, with witness.

    Positive when no crossing is negative; weakly successively k-almost
    positive when every negative crossing lies as an overpass on one
    overarc (successively when they sit consecutively along it, good when
    additionally every negative crossing joins its Seifert circle pair
    alone, almost positive when k = 1, with the type decided by goodness);
    weakly positive when some ordering and basepoints meet every negative
    crossing at its overpass first; otherwise None.
    """
    negatives = {ci for ci, x in enumerate(d.crossings) if x.sign < 0}
    if not negatives:
        arcs = overarcs(d)
        best = max(arcs, key=lambda a: len(a.crossings), default=None)
        return PositivityClass("Positive", 0, best,
                               0 if best is None else 0)
    k = len(negatives)
    candidates = [a for a in overarcs(d) if negatives <= set(a.crossings)]
    if candidates:
        witness = max(candidates, key=lambda a: len(a.crossings))
        length = len(witness.crossings)
        sap_arcs = [a for a in candidates
                    if _consecutive(a.crossings, negatives, a.cyclic)]
        if sap_arcs:
            good_map, _ = sf.classify_crossings(sf.seifert_data(d))
            all_good = all(good_map[ci] for ci in negatives)
            if k == 1:
                tag = "AlmostPositiveI" if all_good else "AlmostPositiveII"
            elif all_good:
                tag = "GoodSAP"
            else:
                tag = "SAP"
            sap_wit = max(sap_arcs, key=lambda a: len(a.crossings))
            return PositivityClass(tag, k, sap_wit, len(sap_wit.crossings))
        return PositivityClass("WSAP", k, witness, length)
    wp = is_weakly_positive(d)
    if wp is not None:
        return PositivityClass("WeaklyPositiveOnly", k, wp_witness=wp)
    return PositivityClass("None", k)


def is_weakly_positive(d, max_components=8):
    """Search for an ordering and basepoints meeting every negative
    crossing first at its overpass.

    Returns ``(component order, basepoints)`` or None; the search spans
    all component orders and basepoint gaps and is guarded by
    ``max_components``.
    """
    if d.n_components > max_components:
        raise TooManyComponents(d.n_components)
    ncomp = len(d.components)
    negatives = {ci for ci, x in enumerate(d.crossings) if x.sign < 0}
    if not negatives:
        order = tuple(range(ncomp))
        return (order, d.basepoints)
    for order in permutations(range(ncomp)):
        for basepoints in dg._basepoint_choices(d, order):
            first = {}
            ok = True
            for _, ci, role in d.iter_passages(order, basepoints):
                if ci not in first:
                    first[ci] = role
                    if ci in negatives and role == "U":
                        ok = False
                        break
            if ok:
                return (order, tuple(basepoints))
    return None


def height_split(d, max_components=16):
    """A bipartition (S, T) of components with S lying entirely above T.

    Returns index sets (crossingless circles count as components, after
    the crossing-bearing ones) or None; knots always return None.
    """
    m = d.n_components
    if m > max_components:
        raise TooManyComponents(m)
    if m < 2:
        return None
    ncomp = len(d.components)
    inter = {}
    for ci, x in enumerate(d.crossings):
        cu = d.component_of_arc(x.arcs[0])
        co = d.component_of_arc(x.arcs[x.over_in_slot])
        if cu != co:
            inter.setdefault(frozenset((cu, co)), []).append((co, cu))
    comps = list(range(m))
    for bits in range(1, 2 ** m - 1):
        s = frozenset(i for i in comps if (bits >> i) & 1)
        t = frozenset(comps) - s
        ok = True
        for pair, crossings in inter.items():
            a, b = tuple(pair)
            if (a in s) == (b in s):
                continue
            for co, cu in crossings:
                if not (co in s and cu in t):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return (s, t)
    return None


class LinkingGraph:
    """Components as vertices; edges weighted by pairwise linking numbers.

    The multigraph expansion (lk parallel edges) exists only when every
    pairwise linking number is nonnegative; its spanning trees are counted
    exactly by the matrix-tree theorem.
    """

    def __init__(self, d):
        self.n = d.n_components
        g = dg.to_gauss_diagram(d)
        self.lk = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                v = dg.linking_number(g, i, j)
                if v:
                    self.lk[(i, j)] = v

    @property
    def all_nonnegative(self):
        return all(v >= 0 for v in self.lk.values())

    def edges(self):
        return sorted((i, j, v) for (i, j), v in self.lk.items())

    def is_connected(self):
        if self.n <= 1:
            return True
        seen = {0}
        queue = [0]
        while queue:
            u = queue.pop()
            for (i, j), v in self.lk.items():
                if v == 0:
                    continue
                for a, b in ((i, j), (j, i)):
                    if a == u and b not in seen:
                        seen.add(b)
                        queue.append(b)
        return len(seen) == self.n

    def spanning_tree_count(self) -> int:
        """Number of spanning trees of the multigraph expansion, exactly."""
        from .signature import int_det

        if not self.all_nonnegative:
            raise ValueError("multigraph expansion needs nonnegative "
                             "linking numbers")
        n = self.n
        if n == 0:
            return 0
        if n == 1:
            return 1
        lap = [[0] * n for _ in range(n)]
        for (i, j), v in self.lk.items():
            lap[i][j] -= v
            lap[j][i] -= v
            lap[i][i] += v
            lap[j][j] += v
        minor = [row[1:] for row in lap[1:]]
        return int_det(minor)


def linking_graph(d) -> LinkingGraph:
    """Weighted linking graph of the diagram's components."""
    return LinkingGraph(d)


def is_split_weakly_positive(d) -> bool:
    """Splitness decision for a weakly positive diagram.

    Valid only under a weakly-positive certificate: the link is split
    exactly when the linking graph is disconnected, equivalently when the
    multigraph expansion has no spanning tree.
    """
    cls = classify(d)
    if not cls.certifies_wsap() and cls.tag != "WeaklyPositiveOnly":
        raise NotWeaklyPositive(cls.tag)
    return not LinkingGraph(d).is_connected()


class Complexity(tuple):
    """Lexicographic pair (c(D), c(D) - l(D))."""

    def __new__(cls, c, ell):
        return super().__new__(cls, (c, c - ell))


def complexity(d, cls=None) -> Complexity:
    """Complexity of a w.s.a.p.-certified diagram (positive: l = 0)."""
    if cls is None:
        cls = classify(d)
    if not cls.certifies_wsap():
        raise NotWSAP(cls.tag)
    ell = cls.length if cls.k else 0
    return Complexity(d.n_crossings, ell)


def _ordered_structure(d, cls):
    """Component order and basepoints for the standard skein walk.

    The witness component comes first with its basepoint just before the
    start of the negative overarc; a positive diagram keeps the serialized
    order and basepoints.
    """
    ncomp = len(d.components)
    if cls.k == 0 or cls.overarc is None:
        return tuple(range(ncomp)), d.basepoints
    w = cls.overarc
    order = (w.component,) + tuple(i for i in range(ncomp)
                                   if i != w.component)
    basepoints = list(d.basepoints)
    basepoints[w.component] = w.start_arc
    return order, tuple(basepoints)


def standard_skein_triple(d, end="head"):
    """The standard skein triple (c, D0, D-) of a w.s.a.p. diagram.

    ``c`` is the first positive crossing passed at its underpass when
    walking from the basepoint near the start of the negative overarc
    (``end='tail'`` walks backward instead, the variant extending the
    overarc backwards). ``D0`` is the smoothing with the based-ordering
    bookkeeping (a merge inherits the walk basepoint; a split keeps it on
    the first part and bases the second near c) and ``D-`` the crossing
    change; both certify w.s.a.p. with strictly smaller complexity.
    """
    cls = classify(d)
    if not cls.certifies_wsap():
        raise NotWSAP(cls.tag)
    order, basepoints = _ordered_structure(d, cls)
    walk = list(d.iter_passages(order, basepoints))
    if end == "tail":
        walk = list(reversed(walk))
    ci = None
    seen = set()
    for _, c, role in walk:
        if role == "U" and d.crossings[c].sign > 0:
            ci = c
            break
        seen.add(c)
    if ci is None:
        raise NoPositiveCrossing("no positive underpass: terminal diagram")

    d0 = _smooth_based(d, ci, order, basepoints)
    dminus = _rebuild_like(dg.crossing_change(d, ci), d, order, basepoints)
    return ci, d0, dminus


def _rebuild_like(new, old, order, basepoints):
    """Reorder a diagram with unchanged arcs to match a walk structure."""
    arcs_to_pos = {}
    for pos, comp_index in enumerate(order):
        arcs_to_pos[frozenset(old.components[comp_index])] = (
            pos, basepoints[comp_index])

    def order_key(arcs):
        hit = arcs_to_pos.get(frozenset(arcs))
        return (hit[0], 0) if hit else (len(order), min(arcs))

    def base_of(arcs):
        hit = arcs_to_pos.get(frozenset(arcs))
        if hit and hit[1] in arcs:
            return hit[1]
        return min(arcs)

    return dg.assemble(new.crossings, new.circles, order_key=order_key,
                       basepoint_of=base_of)


def _smooth_based(d, ci, order, basepoints):
    """Oriented smoothing with the standard-triple component bookkeeping."""
    x = d.crossings[ci]
    comp_u = d.component_of_arc(x.arcs[0])
    comp_o = d.component_of_arc(x.arcs[x.over_in_slot])
    kept, circles, find = dg.smooth_tracked(d, ci)
    walk_rank = {comp_index: pos for pos, comp_index in enumerate(order)}

    old_roots = {}
    for comp_index in range(len(d.components)):
        bp = find(basepoints[comp_index])
        old_roots[comp_index] = bp

    splice_roots = (find(x.arcs[0]), find(x.arcs[x.over_in_slot]))

    def order_key(arcs):
        hits = sorted(walk_rank[i] for i, r in old_roots.items() if r in arcs)
        if hits:
            return (hits[0], 0)
        # split-off part without any old basepoint: just after its sibling
        if comp_u == comp_o and any(r in arcs for r in splice_roots):
            return (walk_rank.get(comp_u, 0), 1)
        return (len(order) + 1, min(arcs))

    def base_of(arcs):
        hits = sorted((walk_rank[i], r) for i, r in old_roots.items()
                      if r in arcs)
        if hits:
            return hits[0][1]
        for r in splice_roots:
            if r in arcs:
                return r
        return min(arcs)

    return dg.assemble(kept, circles, order_key=order_key, basepoint_of=base_of)


def _is_hopf_sum(d):
    """Hopf-sum / unknot terminal test: nabla equals z^(components - 1).

    For w.s.a.p. links this characterizes connected sums of positive Hopf
    links exactly, so it detects the terminal of a standard sequence.
    """
    from .polynomials import conway
    from .laurent import LaurentPoly1

    want = LaurentPoly1({2 * (d.n_components - 1): 1}, "z")
    return conway(d) == want


def standard_unknotting_sequence(d, with_terminal=False):
    """Iterated positive-to-negative changes via standard skein triples.

    Follows ``d <- reduce(D-)`` until the current diagram is a Hopf-sum /
    unknot terminal (nabla = z^(#L-1)) or no positive underpass remains;
    returns the steps as ``(diagram, changed crossing)`` pairs, plus the
    terminal diagram when ``with_terminal`` is set. The unknot's sequence
    is empty.
    """
    steps = []
    cur, _ = dg.reduce_diagram(d)
    fuel = (d.n_crossings + 2) ** 2 + 10
    while fuel:
        fuel -= 1
        if _is_hopf_sum(cur):
            break
        try:
            ci, _, dminus = standard_skein_triple(cur)
        except NoPositiveCrossing:
            break
        steps.append((cur, ci))
        cur, _ = dg.reduce_diagram(dminus)
    else:
        raise AssertionError("unknotting sequence did not terminate")
    return (steps, cur) if with_terminal else steps


def terminal_diagram(d):
    """The diagram left after the full standard unknotting sequence."""
    _, terminal = standard_unknotting_sequence(d, with_terminal=True)
    return terminal
