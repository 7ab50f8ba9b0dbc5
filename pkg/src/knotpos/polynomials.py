"""Memoized skein-resolution engines for the classical link polynomials.

Computes the Conway polynomial (its own z-only recursion), the HOMFLY
polynomial in (v, z) with skein relation v^-1 P(+) - v P(-) = z P(0), the
Jones polynomial both by substitution V(t) = P(t, t^(1/2) - t^(-1/2)) and
by an independent Kauffman bracket state sum, the Alexander polynomial
Delta(t) = nabla(t^(1/2) - t^(-1/2)), and the Dubrovnik polynomial
D = a^(-w) Lambda by the unoriented four-term skein.

Strategy: walk the diagram from its basepoints; at the first crossing met
at its underpass, branch into (switch, smooth). Descending terminals are
unlinks valued by component count (and writhe, for Lambda). Free R1/R2
simplification runs after every smoothing, with curl bookkeeping for the
regular-isotopy engine. Results are memoized on canonical diagram keys, so
values are pure functions of keys and safe to share across threads.
"""

from __future__ import annotations

from .errors import ResourceLimit
from .laurent import LaurentPoly1, LaurentPoly2
from . import diagram as dg

DEFAULT_BUDGET = 10 ** 7

_Z = LaurentPoly1({2: 1}, "z")
_HOMFLY_DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1}, ("v", "z"))
_LAMBDA_DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1, (0, 0): 1}, ("a", "z"))


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise ResourceLimit("skein node budget exhausted")


def first_underpass(d):
    """First crossing whose first visit along the walk is an underpass.

    Returns its crossing index, or None when the diagram is descending.
    """
    seen = set()
    for _, ci, role in d.iter_passages():
        if ci in seen:
            continue
        seen.add(ci)
        if role == "U":
            return ci
    return None


# -- Conway ---------------------------------------------------------------


def conway(d, budget=DEFAULT_BUDGET, memo=None):
    """Conway polynomial nabla in z; 1 on the unknot, 0 on split links."""
    if memo is None:
        memo = {}
    return _conway(d, memo, _Budget(budget))


def _conway(d, memo, budget):
    n = d.n_components
    if d.n_crossings == 0:
        return LaurentPoly1.one("z") if n == 1 else LaurentPoly1.zero("z")
    if d.circles:
        return LaurentPoly1.zero("z")
    key = dg.canonical_key(d)
    if key in memo:
        return memo[key]
    budget.spend()
    ci = first_underpass(d)
    if ci is None:
        val = LaurentPoly1.one("z") if n == 1 else LaurentPoly1.zero("z")
    else:
        sign = d.crossings[ci].sign
        sw, _ = dg.reduce_diagram(dg.crossing_change(d, ci))
        sm, _ = dg.reduce_diagram(dg.smooth(d, ci))
        if sign > 0:
            val = _conway(sw, memo, budget) + _Z * _conway(sm, memo, budget)
        else:
            val = _conway(sw, memo, budget) - _Z * _conway(sm, memo, budget)
    memo[key] = val
    return val


# -- HOMFLY ---------------------------------------------------------------


def homfly(d, budget=DEFAULT_BUDGET, memo=None):
    """HOMFLY polynomial P(v, z); v^-1 P(+) - v P(-) = z P(0), P(unknot)=1."""
    if memo is None:
        memo = {}
    return _homfly(d, memo, _Budget(budget))


def _homfly(d, memo, budget):
    if d.n_crossings == 0:
        return _HOMFLY_DELTA ** (d.n_components - 1)
    if d.circles:
        bare = dg.Diagram(d.crossings, 0, d.components)
        return _HOMFLY_DELTA ** d.circles * _homfly(bare, memo, budget)
    key = dg.canonical_key(d)
    if key in memo:
        return memo[key]
    budget.spend()
    ci = first_underpass(d)
    if ci is None:
        val = _HOMFLY_DELTA ** (d.n_components - 1)
    else:
        sign = d.crossings[ci].sign
        sw, _ = dg.reduce_diagram(dg.crossing_change(d, ci))
        sm, _ = dg.reduce_diagram(dg.smooth(d, ci))
        psw = _homfly(sw, memo, budget)
        psm = _homfly(sm, memo, budget)
        if sign > 0:
            # P(+) = v^2 P(-) + v z P(0)
            val = (LaurentPoly2.monomial(1, 2, 0) * psw
                   + LaurentPoly2.monomial(1, 1, 1) * psm)
        else:
            # P(-) = v^-2 P(+) - v^-1 z P(0)
            val = (LaurentPoly2.monomial(1, -2, 0) * psw
                   - LaurentPoly2.monomial(1, -1, 1) * psm)
    memo[key] = val
    return val


# -- Jones ----------------------------------------------------------------

_T_HALF_DIFF = LaurentPoly1({1: 1, -1: -1}, "t")    # t^(1/2) - t^(-1/2)


def jones_from_homfly(p: LaurentPoly2) -> LaurentPoly1:
    """V(t) = P(t, t^(1/2) - t^(-1/2)), exact in half-integer exponents."""
    return p.substitute_w(_T_HALF_DIFF)


def jones_bracket(d, budget=DEFAULT_BUDGET) -> LaurentPoly1:
    """Jones polynomial via the Kauffman bracket state sum.

    Independent of the skein engine: sums all 2^c states, counts circles,
    and applies the writhe normalization (-A)^(-3w) with A = t^(-1/4).
    """
    c = d.n_crossings
    if 2 ** c > max(budget, 1):
        raise ResourceLimit("bracket state sum needs 2^%d states" % c)

    arc_at = [x.arcs for x in d.crossings]
    delta = LaurentPoly1({4: -1, -4: -1}, "A")
    total = LaurentPoly1.zero("A")
    for state in range(2 ** c):
        parent = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                return 0
            return 1

        loops = 0
        a_count = 0
        for ci in range(c):
            s, e, n, w = arc_at[ci]
            if (state >> ci) & 1 == 0:
                a_count += 1
                loops += union(s, e)
                loops += union(n, w)
            else:
                loops += union(s, w)
                loops += union(e, n)
        roots = {find(a) for quad in arc_at for a in quad}
        circles = len(roots) + d.circles
        term = LaurentPoly1({2 * (2 * a_count - c): 1}, "A") * delta ** (
            circles - 1)
        total = total + term

    w = d.writhe
    norm = LaurentPoly1({-6 * w: (-1) ** (w % 2)}, "A")
    bracket = norm * total
    out = {}
    for two_e, coef in bracket.coeffs.items():
        e = two_e // 2
        if e % 2:
            raise AssertionError("bracket exponent not divisible by 2")
        out[-e // 2] = coef
    return LaurentPoly1(out, "t")


# -- Alexander -------------------------------------------------------------


def alexander_from_conway(n: LaurentPoly1) -> LaurentPoly1:
    """Delta(t) = nabla(t^(1/2) - t^(-1/2)), exact substitution."""
    return n.substitute(_T_HALF_DIFF)


# -- Dubrovnik -------------------------------------------------------------


def dubrovnik(d, budget=DEFAULT_BUDGET, memo=None) -> LaurentPoly2:
    """Dubrovnik polynomial D(a, z) = a^(-w) Lambda(a, z).

    Lambda is the regular-isotopy invariant with the unoriented skein
    Lambda(+) - Lambda(-) = z (Lambda(0) - Lambda(inf)), curl relations
    Lambda(curl+-) = a^(+-1) Lambda, and Lambda(unknot) = 1. The a-power
    orientation is pinned by the positive-link equality between the top
    HOMFLY z-row at v^(1-chi) and the Dubrovnik row at a^(1-chi).
    """
    if memo is None:
        memo = {}
    lam = _lambda(d, memo, _Budget(budget))
    w = d.writhe
    return LaurentPoly2.monomial(1, w, 0, ("a", "z")) * lam


def _a_pow(k):
    return LaurentPoly2.monomial(1, k, 0, ("a", "z"))


def _lambda(d, memo, budget):
    if d.n_crossings == 0:
        return _LAMBDA_DELTA ** (d.n_components - 1)
    key = dg.canonical_key(d)
    if key in memo:
        return memo[key]
    budget.spend()
    ci = first_underpass(d)
    if ci is None:
        val = _a_pow(-d.writhe) * _LAMBDA_DELTA ** (d.n_components - 1)
    else:
        sign = d.crossings[ci].sign
        sw, curls1 = dg.reduce_diagram(dg.crossing_change(d, ci))
        s0, curls2 = dg.reduce_diagram(dg.smooth(d, ci))
        sinf, curls3 = dg.reduce_diagram(dg.smooth_disoriented(d, ci))
        z = LaurentPoly2.monomial(1, 0, 1, ("a", "z"))
        t_sw = _a_pow(-sum(curls1)) * _lambda(sw, memo, budget)
        t_s0 = _a_pow(-sum(curls2)) * _lambda(s0, memo, budget)
        t_sinf = _a_pow(-sum(curls3)) * _lambda(sinf, memo, budget)
        if sign > 0:
            val = t_sw + z * (t_s0 - t_sinf)
        else:
            val = t_sw - z * (t_s0 - t_sinf)
    memo[key] = val
    return val


# -- coefficient accessors --------------------------------------------------


def a_coef(nabla: LaurentPoly1, i: int) -> int:
    """Coefficient a_i of z^i in the Conway polynomial."""
    return nabla.coef(i)


def c_coef(p: LaurentPoly2, i: int, j: int) -> int:
    """HOMFLY coefficient c_{i,j} of v^i z^j."""
    return p.coef(i, j)


def z_row(p: LaurentPoly2, n: int) -> LaurentPoly1:
    """p_n: the coefficient of z^n as a polynomial in the first variable."""
    return p.row(n)


def mcf(nabla: LaurentPoly1) -> int:
    """Leading Conway coefficient (0 for the zero polynomial)."""
    return nabla.leading_coef()


# -- cross-checks -----------------------------------------------------------

_V_INV_MINUS_V = LaurentPoly1({-2: 1, 2: -1}, "v")


def homfly_unit_check(p: LaurentPoly2) -> bool:
    """P(v, v^-1 - v) = 1, exactly."""
    return p.substitute_w(_V_INV_MINUS_V) == LaurentPoly1.one("v")


def conway_from_homfly(p: LaurentPoly2) -> LaurentPoly1:
    """nabla(z) = P(1, z); negative z-powers must cancel."""
    out = p.specialize_u(1)
    if out.min_deg() < 0:
        raise AssertionError("P(1, z) kept negative powers")
    return LaurentPoly1(dict(out.coeffs), "z")
