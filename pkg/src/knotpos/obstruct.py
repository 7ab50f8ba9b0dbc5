"""The obstruction battery for (weakly successively almost) positive links.

Given an invariant profile (computed polynomials and signature, plus
whatever externally supplied table data is available), every necessary
condition a w.s.a.p. / s.a.p. / (almost) positive link must satisfy is
evaluated as a three-valued test: Fail refutes membership in the target
class, Pass is consistency, and Inconclusive means a needed external
datum is missing. Removing an external field can only turn Fail or Pass
into Inconclusive, never flip one into the other.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb

from .errors import NotFlaggedSharp, VanishingDeterminant
from .laurent import LaurentPoly1
from . import diagram as dg
from . import polynomials as poly
from . import positivity as pos
from . import signature as sig

PASS, FAIL, INCONCLUSIVE = "Pass", "Fail", "Inconclusive"

_EXTERNAL_FIELDS = ("genus", "g4", "chi_link", "fibered", "prime",
                    "unknotting", "u_plus", "sp", "u_comp",
                    "d_plus_trefoil", "tau", "bennequin_sharp",
                    "nontrivial", "split")


class InvariantProfile:
    """Computed plus externally supplied invariants of one link.

    Computed fields come from a chosen diagram; external values are echoed
    verbatim into reports and never recomputed. ``known`` accepts the keys
    genus, g4, chi_link, fibered, prime, unknotting, u_plus, sp, u_comp,
    d_plus_trefoil, tau, bennequin_sharp, nontrivial and split.
    """

    def __init__(self, name, m, nabla, homfly, jones, sigma, det,
                 chi_diagram=None, c_minus=None, pos_tag=None,
                 known=None, diagram=None):
        self.name = name
        self.m = m
        self.nabla = nabla
        self.homfly = homfly
        self.jones = jones
        self.sigma = sigma
        self.det = det
        self.chi_diagram = chi_diagram
        self.c_minus = c_minus
        self.pos_tag = pos_tag
        self.known = dict(known or {})
        self.diagram = diagram
        for key in self.known:
            if key not in _EXTERNAL_FIELDS:
                raise ValueError("unknown external field %r" % key)

    @classmethod
    def from_diagram(cls, name, d, known=None, budget=poly.DEFAULT_BUDGET):
        from . import seifert as sf

        nabla = poly.conway(d, budget)
        p = poly.homfly(d, budget)
        v = poly.jones_from_homfly(p)
        sigma = sig.signature(d)
        det = sig.determinant(d)
        sd = sf.seifert_data(d)
        tag = pos.classify(d).tag
        return cls(name, d.n_components, nabla, p, v, sigma, det,
                   chi_diagram=sd.chi, c_minus=d.c_minus, pos_tag=tag,
                   known=known, diagram=d)

    # -- derived helpers ---------------------------------------------------

    def a(self, i):
        return self.nabla.coef(i)

    def chi_link(self):
        """External chi(L), via the genus when supplied instead."""
        if "chi_link" in self.known:
            return self.known["chi_link"]
        if "genus" in self.known:
            return 2 - self.m - 2 * self.known["genus"]
        return None

    def nonsplit(self):
        """True / False / None; nabla != 0 certifies non-splitness."""
        if self.m == 1:
            return True
        if "split" in self.known:
            return not self.known["split"]
        if self.nabla:
            return True
        return None

    def nontrivial(self):
        """For knots: certainly nontrivial when some polynomial is not 1."""
        if "nontrivial" in self.known:
            return self.known["nontrivial"]
        if self.m > 1:
            return True
        if self.nabla != LaurentPoly1.one("z") or \
                self.jones != LaurentPoly1.one("t"):
            return True
        return None

    def g4_floor(self):
        """A sound lower bound for g4: max of sigma- and tau-based bounds."""
        bound = max(0, -(-(self.sigma - self.m + 1) // 2))
        if "tau" in self.known:
            bound = max(bound, self.known["tau"])
        if "g4" in self.known:
            bound = max(bound, self.known["g4"])
        return bound

    def sharp(self):
        if self.known.get("bennequin_sharp"):
            return True
        return self.pos_tag in ("Positive", "AlmostPositiveI",
                                "AlmostPositiveII")


class TestRecord:
    __slots__ = ("test_id", "citation", "outcome", "lhs", "rhs", "reason")

    def __init__(self, test_id, citation, outcome, lhs="", rhs="", reason=""):
        self.test_id = test_id
        self.citation = citation
        self.outcome = outcome
        self.lhs = str(lhs)
        self.rhs = str(rhs)
        self.reason = reason

    def as_dict(self):
        return {"test_id": self.test_id, "citation": self.citation,
                "outcome": self.outcome, "lhs": self.lhs, "rhs": self.rhs,
                "reason": self.reason}

    def __repr__(self):
        return "TestRecord(%s: %s)" % (self.test_id, self.outcome)


class ObstructionReport:
    """All test records for one profile plus the aggregate verdict."""

    def __init__(self, name, target, records):
        self.name = name
        self.target = target
        self.records = tuple(records)
        self.verdict = ("NotWSAP" if any(r.outcome == FAIL for r in records)
                        else "ConsistentWithWSAP")

    def as_dict(self):
        return {"name": self.name, "target": self.target,
                "verdict": self.verdict,
                "tests": [r.as_dict() for r in self.records]}

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)

    def csv_rows(self):
        """Flat rows: name, test_id, citation, outcome, lhs, rhs, reason."""
        return [(self.name, r.test_id, r.citation, r.outcome, r.lhs, r.rhs,
                 r.reason) for r in self.records]

    def failed(self, test_id=None):
        bad = [r for r in self.records if r.outcome == FAIL]
        if test_id is not None:
            bad = [r for r in bad if r.test_id == test_id]
        return bad


# -- Conway tests ---------------------------------------------------------


def conway_tests(p: InvariantProfile):
    """Necessary conditions on the Conway polynomial of w.s.a.p. links."""
    out = []
    ns = p.nonsplit()
    if ns is not True:
        why = "split link" if ns is False else "splitness unknown"
        out.append(TestRecord("conway.strictly-positive",
                              "strict positivity of Conway coefficients",
                              INCONCLUSIVE, reason=why))
        return out

    lo = p.m - 1
    hi = int(p.nabla.max_deg())
    coeffs = [p.a(i) for i in range(lo, hi + 1, 2)] or [0]
    ok = all(c > 0 for c in coeffs)
    out.append(TestRecord(
        "conway.strictly-positive",
        "strict positivity of Conway coefficients",
        PASS if ok else FAIL,
        lhs=[p.a(i) for i in range(lo, hi + 1, 2)], rhs="> 0 each",
        reason="" if ok else "some coefficient a_%d+2i is not positive" % lo))

    ell = p.g4_floor()
    bad = [(i, p.a(lo + 2 * i), comb(ell, i))
           for i in range((hi - lo) // 2 + 1)
           if p.a(lo + 2 * i) < comb(ell, i)]
    out.append(TestRecord(
        "conway.binomial",
        "Conway coefficients dominate binomials of the 4-genus",
        PASS if not bad else FAIL,
        lhs=bad or "all above", rhs="a_{%d+2i} >= C(%d, i)" % (lo, ell),
        reason="" if not bad else "coefficient below binomial floor"))

    if p.chi_diagram is not None:
        ok = p.nabla.max_deg() <= 1 - p.chi_diagram
        out.append(TestRecord(
            "conway.diagram-degree",
            "Conway degree at most one minus diagram Euler characteristic",
            PASS if ok else FAIL, lhs=p.nabla.max_deg(),
            rhs="<= %d" % (1 - p.chi_diagram)))

    chi = p.chi_link()
    if chi is None:
        out.append(TestRecord("conway.maxdeg",
                              "Conway degree equals one minus chi",
                              INCONCLUSIVE, reason="chi(L) not supplied"))
    else:
        ok = p.nabla.max_deg() == 1 - chi
        out.append(TestRecord(
            "conway.maxdeg", "Conway degree equals one minus chi",
            PASS if ok else FAIL, lhs=p.nabla.max_deg(), rhs=1 - chi,
            reason="" if ok else "degree deficit refutes w.s.a.p."))

    fib = p.known.get("fibered")
    if fib is None:
        out.append(TestRecord("conway.monic-fibered",
                              "monic Conway exactly for fibered links",
                              INCONCLUSIVE, reason="fiberedness not supplied"))
    else:
        top = p.a(1 - chi) if chi is not None else None
        if fib:
            monic = (top == 1) if chi is not None else \
                (poly.mcf(p.nabla) == 1)
            out.append(TestRecord(
                "conway.monic-fibered",
                "monic Conway exactly for fibered links",
                PASS if monic else FAIL,
                lhs=top if chi is not None else poly.mcf(p.nabla), rhs=1,
                reason="" if monic else "fibered but Conway is not monic"))
        else:
            if chi is None:
                out.append(TestRecord(
                    "conway.monic-fibered",
                    "monic Conway exactly for fibered links", INCONCLUSIVE,
                    reason="needs chi(L) to locate the top coefficient"))
            else:
                ok = top != 1
                out.append(TestRecord(
                    "conway.monic-fibered",
                    "monic Conway exactly for fibered links",
                    PASS if ok else FAIL, lhs=top, rhs="!= 1",
                    reason="" if ok else "monic Conway but not fibered"))

    if p.m == 1:
        a2 = p.a(2)
        if a2 == 1:
            is_trefoil_nabla = p.nabla == LaurentPoly1({0: 1, 4: 1}, "z")
            out.append(TestRecord(
                "conway.trefoil-char",
                "a_2 = 1 forces the positive trefoil",
                PASS if is_trefoil_nabla else FAIL,
                lhs=p.nabla.text(), rhs="1 + z^2",
                reason="" if is_trefoil_nabla else
                "a_2 = 1 but Conway differs from the trefoil's"))

    inner_one = [j for j in range(lo + 2, hi, 2) if p.a(j) == 1]
    out.append(TestRecord(
        "conway.intermediate-one",
        "no intermediate Conway coefficient equals one",
        PASS if not inner_one else FAIL,
        lhs=inner_one or "none", rhs="a_j = 1 only at the top degree",
        reason="" if not inner_one else
        "a_%d = 1 below the top degree" % inner_one[0]))

    if p.m == 1:
        val = p.nabla.eval_int(1)
        floor = 2 ** p.g4_floor()
        ok = val >= floor
        out.append(TestRecord(
            "conway.value-at-one",
            "Conway at 1 dominates 2 to the 4-genus",
            PASS if ok else FAIL, lhs=val, rhs=">= %d" % floor,
            reason="" if ok else "sum of coefficients too small"))

    if p.m >= 2:
        if p.known.get("prime") is None:
            out.append(TestRecord(
                "conway.lowest-prime",
                "lowest coefficient at least the component count for "
                "prime links", INCONCLUSIVE, reason="primeness not supplied"))
        elif p.known["prime"] and p.nabla != LaurentPoly1({2: 1}, "z"):
            ok = p.a(p.m - 1) >= p.m
            out.append(TestRecord(
                "conway.lowest-prime",
                "lowest coefficient at least the component count for "
                "prime links",
                PASS if ok else FAIL, lhs=p.a(p.m - 1), rhs=">= %d" % p.m,
                reason="" if ok else "lowest Conway coefficient too small"))
    return out


# -- HOMFLY tests -----------------------------------------------------------


def homfly_tests(p: InvariantProfile):
    """Necessary conditions on the HOMFLY polynomial of w.s.a.p. links."""
    out = []
    P = p.homfly
    if P is None:
        return [TestRecord("homfly.family",
                           "HOMFLY conditions need the polynomial",
                           INCONCLUSIVE, reason="HOMFLY not available")]
    viol = sorted((i, j) for (i, j), c in P.coeffs.items() if i < j)
    out.append(TestRecord(
        "homfly.triangular", "no HOMFLY terms with v-degree below z-degree",
        PASS if not viol else FAIL, lhs=viol or "none", rhs="c_{i,j}=0 for i<j",
        reason="" if not viol else "term with v-degree below z-degree"))

    diag = {j: P.coef(j, j) for j in set(j for _, j in P.coeffs)}
    bad = sorted(j for j, c in diag.items() if c < 0)
    out.append(TestRecord(
        "homfly.diag-nonneg", "diagonal HOMFLY coefficients are nonnegative",
        PASS if not bad else FAIL,
        lhs={j: diag[j] for j in bad} or "all >= 0", rhs="c_{j,j} >= 0",
        reason="" if not bad else "negative diagonal coefficient"))

    total = sum(P.coef(j, j) for j in set(j for _, j in P.coeffs))
    out.append(TestRecord(
        "homfly.diag-sum", "diagonal HOMFLY coefficients sum to one",
        PASS if total == 1 else FAIL, lhs=total, rhs=1))

    ns = p.nonsplit()
    chi = p.chi_link()
    toprow = 1 - chi if chi is not None else P.max_deg_w()
    if ns is True:
        row = [c for (i, j), c in P.coeffs.items() if j == toprow]
        bad = [c for c in row if c < 0]
        out.append(TestRecord(
            "homfly.toprow-nonneg",
            "top z-row of HOMFLY is nonnegative for non-split links",
            PASS if not bad else FAIL, lhs=sorted(row), rhs=">= 0 each",
            reason="" if not bad else "negative entry in the top z-row"))
    else:
        out.append(TestRecord(
            "homfly.toprow-nonneg",
            "top z-row of HOMFLY is nonnegative for non-split links",
            INCONCLUSIVE, reason="splitness unknown or split"))

    fib = p.known.get("fibered")
    if fib is None:
        out.append(TestRecord(
            "homfly.toprow-fibered",
            "fibered exactly when the top z-row is a single unit",
            INCONCLUSIVE, reason="fiberedness not supplied"))
    else:
        row = {i: c for (i, j), c in P.coeffs.items() if j == toprow}
        single_unit = list(row.values()) == [1]
        ok = single_unit if fib else not single_unit
        out.append(TestRecord(
            "homfly.toprow-fibered",
            "fibered exactly when the top z-row is a single unit",
            PASS if ok else FAIL, lhs=row, rhs="single coefficient 1" if fib
            else "not a single unit",
            reason="" if ok else "top-row shape contradicts fiberedness"))

    if chi is None:
        out.append(TestRecord(
            "homfly.maxdeg-z", "z-degree of HOMFLY equals one minus chi",
            INCONCLUSIVE, reason="chi(L) not supplied"))
    else:
        ok = P.max_deg_w() == 1 - chi
        out.append(TestRecord(
            "homfly.maxdeg-z", "z-degree of HOMFLY equals one minus chi",
            PASS if ok else FAIL, lhs=P.max_deg_w(), rhs=1 - chi))

    if ns is True:
        ok = P.min_deg_u() >= p.m - 1
        out.append(TestRecord(
            "homfly.mindeg-v", "v-degree floor of the HOMFLY polynomial",
            PASS if ok else FAIL, lhs=P.min_deg_u(), rhs=">= %d" % (p.m - 1),
            reason="" if ok else "v-degree too small"))
    else:
        out.append(TestRecord(
            "homfly.mindeg-v", "v-degree floor of the HOMFLY polynomial",
            INCONCLUSIVE, reason="splitness unknown or split"))
    if p.m == 1:
        nt = p.nontrivial()
        if nt is True:
            ok = P.min_deg_u() >= 2
            out.append(TestRecord(
                "homfly.mindeg-v-knot",
                "v-degree at least two for nontrivial knots",
                PASS if ok else FAIL, lhs=P.min_deg_u(), rhs=">= 2",
                reason="" if ok else "v-degree below two"))
        else:
            out.append(TestRecord(
                "homfly.mindeg-v-knot",
                "v-degree at least two for nontrivial knots",
                INCONCLUSIVE, reason="nontriviality unknown"))
    return out


# -- Jones tests -------------------------------------------------------------


def jones_tests(p: InvariantProfile):
    """Necessary conditions on the Jones polynomial of w.s.a.p. links."""
    out = []
    V = p.jones
    if V is None or p.homfly is None:
        return [TestRecord("jones.family",
                           "Jones conditions need the polynomial",
                           INCONCLUSIVE, reason="Jones not available")]
    if V:
        lowest = V.coeffs[min(V.coeffs)]
        want = (-1) ** ((p.m - 1) % 2)
        ok = (lowest > 0) == (want > 0)
        out.append(TestRecord(
            "jones.lowest-sign",
            "sign of the lowest Jones coefficient alternates with "
            "components",
            PASS if ok else FAIL, lhs=lowest, rhs="sign %+d" % want,
            reason="" if ok else "lowest Jones coefficient has wrong sign"))

    two_min_v = 2 * V.min_deg()
    ok = (Fraction(p.homfly.min_deg_u()) <= two_min_v
          <= Fraction(p.homfly.max_deg_w()))
    out.append(TestRecord(
        "jones.degree-window",
        "twice the minimal Jones degree sits between the HOMFLY degrees",
        PASS if ok else FAIL,
        lhs="%s <= %s <= %s" % (p.homfly.min_deg_u(), two_min_v,
                                p.homfly.max_deg_w()),
        rhs="min deg_v P <= 2 min deg_t V <= max deg_z P",
        reason="" if ok else "Jones degree outside the HOMFLY window"))

    nt = p.nontrivial()
    ns = p.nonsplit()
    if nt is True and ns is True:
        floor = Fraction(1) if p.m == 1 else Fraction(p.m - 1, 2)
        ok = V.min_deg() >= floor
        out.append(TestRecord(
            "jones.mindeg",
            "minimal Jones degree floor for nontrivial non-split links",
            PASS if ok else FAIL, lhs=V.min_deg(), rhs=">= %s" % floor,
            reason="" if ok else "minimal Jones degree too small"))
    else:
        out.append(TestRecord(
            "jones.mindeg",
            "minimal Jones degree floor for nontrivial non-split links",
            INCONCLUSIVE, reason="nontriviality or splitness unknown"))
    return out


# -- signature tests ----------------------------------------------------------


def signature_tests(p: InvariantProfile):
    """Signature positivity and Conway-window conditions."""
    out = []
    if p.m == 1:
        nt = p.nontrivial()
        if nt is True:
            ok = p.sigma > 0
            out.append(TestRecord(
                "signature.positive",
                "nontrivial w.s.a.p. knots have strictly positive signature",
                PASS if ok else FAIL, lhs=p.sigma, rhs="> 0",
                reason="" if ok else "signature is not positive"))
        else:
            out.append(TestRecord(
                "signature.positive",
                "nontrivial w.s.a.p. knots have strictly positive signature",
                INCONCLUSIVE, reason="nontriviality unknown"))
    ns = p.nonsplit()
    if ns is True:
        ok = (p.m - 1 <= p.sigma <= p.nabla.max_deg())
        out.append(TestRecord(
            "signature.window",
            "signature between components minus one and the Conway degree",
            PASS if ok else FAIL,
            lhs=p.sigma, rhs="%d <= sigma <= %s" % (p.m - 1,
                                                    p.nabla.max_deg()),
            reason="" if ok else "signature outside the Conway window"))
        if p.a(p.m - 1) == 1 and p.sigma == p.m - 1:
            want = LaurentPoly1({2 * (p.m - 1): 1}, "z")
            ok = p.nabla == want
            out.append(TestRecord(
                "signature.hopf-sum",
                "unit lowest coefficient with minimal signature forces a "
                "Hopf-link sum",
                PASS if ok else FAIL, lhs=p.nabla.text(),
                rhs="z^%d" % (p.m - 1),
                reason="" if ok else "Conway contradicts the Hopf-sum shape"))
    else:
        out.append(TestRecord(
            "signature.window",
            "signature between components minus one and the Conway degree",
            INCONCLUSIVE, reason="splitness unknown or split"))

    try:
        verdict = sig.nabla_sigma_consistency(p.nabla, p.sigma, p.m)
        out.append(TestRecord(
            "signature.congruence",
            "signature parity and mod-4 congruence against Conway at 2i",
            PASS if verdict == "Consistent" else FAIL,
            lhs=p.sigma, rhs="parity/mod-4 compatible with nabla(2i)",
            reason="" if verdict == "Consistent" else
            "signature congruence violated"))
    except VanishingDeterminant:
        out.append(TestRecord(
            "signature.congruence",
            "signature parity and mod-4 congruence against Conway at 2i",
            INCONCLUSIVE, reason="nabla(2i) vanishes"))

    if p.diagram is not None and p.pos_tag not in (None, "None"):
        sm = None
        try:
            sm = sig.seifert_matrix(p.diagram)
        except Exception:
            pass
        if sm is not None:
            spots = [(2, 1), (4, 1), (3, 1), (5, 1), (8, 1)]
            vals = {"%d/%d" % (n, k): sig.levine_tristram(sm, n, k)
                    for n, k in spots}
            bad = {k: v for k, v in vals.items() if v < 0}
            out.append(TestRecord(
                "signature.levine-tristram",
                "Levine-Tristram signatures of weakly positive links are "
                "nonnegative",
                PASS if not bad else FAIL, lhs=vals, rhs=">= 0 each",
                reason="" if not bad else "negative Levine-Tristram value"))
    return out


# -- unknotting tests -----------------------------------------------------------


def unknotting_tests(p: InvariantProfile):
    """Unknotting-number and Gordian-distance conditions."""
    out = []
    a2 = p.a(2)
    if p.m == 1:
        u = p.known.get("unknotting")
        up = p.known.get("u_plus")
        if u is None and up is None:
            out.append(TestRecord(
                "unknotting.u-le-a2",
                "unknotting number at most the second Conway coefficient",
                INCONCLUSIVE, reason="u and u+ not supplied"))
        else:
            pieces = []
            ok = True
            if u is not None:
                pieces.append("u=%d" % u)
                ok = ok and u <= a2
            if up is not None:
                pieces.append("u+=%d" % up)
                ok = ok and up <= a2
            if u is not None and up is not None:
                ok = ok and u <= up
            out.append(TestRecord(
                "unknotting.u-le-a2",
                "unknotting number at most the second Conway coefficient",
                PASS if ok else FAIL, lhs=", ".join(pieces),
                rhs="<= a_2 = %d" % a2,
                reason="" if ok else "unknotting data exceeds a_2"))

        dplus = p.known.get("d_plus_trefoil")
        if dplus is None:
            out.append(TestRecord(
                "unknotting.trefoil-distance",
                "positive Gordian distance to the trefoil at most a_2 - 1",
                INCONCLUSIVE, reason="d+(K, trefoil) not supplied"))
        else:
            ok = dplus <= a2 - 1
            out.append(TestRecord(
                "unknotting.trefoil-distance",
                "positive Gordian distance to the trefoil at most a_2 - 1",
                PASS if ok else FAIL, lhs=dplus, rhs="<= %d" % (a2 - 1),
                reason="" if ok else "trefoil distance exceeds a_2 - 1"))

        if u is not None and p.sigma == 2 and u == a2:
            ok = p.det <= 4 * a2 - 1
            reason = "" if ok else "determinant exceeds 4 a_2 - 1"
            if ok and p.det == 4 * a2 - 1 and "genus" in p.known:
                ok = p.known["genus"] == 1
                reason = "" if ok else "determinant equality forces genus one"
            out.append(TestRecord(
                "unknotting.det-bound",
                "determinant bound when the unknotting number attains a_2 "
                "at signature two",
                PASS if ok else FAIL, lhs=p.det, rhs="<= %d" % (4 * a2 - 1),
                reason=reason))
    else:
        ns = p.nonsplit()
        if ns is not True:
            out.append(TestRecord(
                "unknotting.link-bounds",
                "splitting and componentwise unknotting bounds",
                INCONCLUSIVE, reason="splitness unknown or split"))
            return out
        have = False
        ok = True
        pieces = []
        if "sp" in p.known:
            have = True
            pieces.append("sp=%d" % p.known["sp"])
            ok = ok and p.known["sp"] <= p.m - 2 + p.a(p.m - 1)
        if "u_comp" in p.known:
            have = True
            pieces.append("u_comp=%d" % p.known["u_comp"])
            ok = ok and p.known["u_comp"] <= p.a(p.m + 1)
        if "unknotting" in p.known:
            have = True
            pieces.append("u=%d" % p.known["unknotting"])
            ok = ok and p.known["unknotting"] <= (
                p.m - 2 + p.a(p.m - 1) + p.a(p.m + 1))
        if have:
            out.append(TestRecord(
                "unknotting.link-bounds",
                "splitting and componentwise unknotting bounds",
                PASS if ok else FAIL, lhs=", ".join(pieces),
                rhs="sp <= m-2+a_{m-1}; u_comp <= a_{m+1}; u <= sum",
                reason="" if ok else "link unknotting data out of range"))
        else:
            out.append(TestRecord(
                "unknotting.link-bounds",
                "splitting and componentwise unknotting bounds",
                INCONCLUSIVE, reason="no link unknotting data supplied"))
    return out


def composite_torsion_floor(dets):
    """Unknotting floor for a connected sum from summand determinants.

    With delta = gcd of the determinants, a nontrivial common torsion
    forces at least n crossing changes for n summands; returns (delta, n).
    """
    from math import gcd
    from functools import reduce

    delta = reduce(gcd, dets)
    return delta, len(dets)


# -- Bennequin-sharp tests ------------------------------------------------------


def bennequin_sharp_tests(p: InvariantProfile, dubrovnik=None):
    """Sharpened polynomial conditions under Bennequin sharpness."""
    if not p.sharp():
        raise NotFlaggedSharp(p.name)
    out = []
    P = p.homfly
    V = p.jones
    if P is None or V is None:
        return [TestRecord("sharp.family",
                           "sharpened conditions need the polynomials",
                           INCONCLUSIVE, reason="HOMFLY/Jones not available")]
    chi = p.chi_link()
    j0 = 1 - chi if chi is not None else P.max_deg_w()

    g = p.known.get("genus")
    if g is None:
        out.append(TestRecord(
            "sharp.binomial", "Conway coefficients dominate genus binomials",
            INCONCLUSIVE, reason="genus not supplied"))
    else:
        lo = p.m - 1
        hi = int(p.nabla.max_deg())
        bad = [(i, p.a(lo + 2 * i), comb(g, i))
               for i in range((hi - lo) // 2 + 1)
               if p.a(lo + 2 * i) < comb(g, i)]
        out.append(TestRecord(
            "sharp.binomial", "Conway coefficients dominate genus binomials",
            PASS if not bad else FAIL, lhs=bad or "all above",
            rhs="a_{%d+2i} >= C(%d, i)" % (lo, g),
            reason="" if not bad else "coefficient below genus binomial"))

    ok = (Fraction(P.min_deg_u()) == 2 * V.min_deg()
          == Fraction(P.max_deg_w()))
    if chi is not None:
        ok = ok and P.max_deg_w() == 1 - chi
    out.append(TestRecord(
        "sharp.degrees",
        "v-degree, twice the Jones degree, and z-degree all coincide",
        PASS if ok else FAIL,
        lhs="%s, %s, %s" % (P.min_deg_u(), 2 * V.min_deg(), P.max_deg_w()),
        rhs="all equal" + ("" if chi is None else " to %d" % (1 - chi)),
        reason="" if ok else "degree chain broken"))

    diag = {j: P.coef(j, j) for j in set(j for _, j in P.coeffs)}
    ok = all(c == 0 for j, c in diag.items() if j != j0) and \
        P.coef(j0, j0) == 1
    out.append(TestRecord(
        "sharp.diagonal", "single unit diagonal coefficient at the top",
        PASS if ok else FAIL, lhs=diag, rhs="c_{%d,%d} = 1, others 0"
        % (j0, j0), reason="" if ok else "diagonal coefficients misplaced"))

    ns = p.nonsplit()
    if ns is True:
        sub = P.coef(j0, j0 - 2)
        ok = sub <= j0
        fib = p.known.get("fibered")
        reason = "" if ok else "subleading coefficient too large"
        if ok and fib:
            ok = sub == j0
            reason = "" if ok else "fibered needs the subleading equality"
        out.append(TestRecord(
            "sharp.subleading",
            "subleading coefficient bounded by one minus chi",
            PASS if ok else FAIL, lhs=sub, rhs="<= %d%s"
            % (j0, " with equality (fibered)" if fib else ""),
            reason=reason))

        # V's doubled-exponent keys: t^(j0/2) is key j0
        want_low = (-1) ** ((p.m - 1) % 2)
        c_low = V.coeffs.get(j0, 0)
        c_next = V.coeffs.get(j0 + 2, 0)
        sub = P.coef(j0, j0 - 2)
        ok = (c_low == want_low and c_next == want_low * (sub - j0))
        out.append(TestRecord(
            "sharp.jones-leading",
            "two lowest Jones coefficients fixed by the subleading "
            "HOMFLY entry",
            PASS if ok else FAIL,
            lhs=(c_low, c_next),
            rhs=(want_low, want_low * (sub - j0)),
            reason="" if ok else "leading Jones terms mismatch"))

    present = {i for (i, j) in P.coeffs if j == j0}
    gapfree = all(k in present for k in range(min(present), max(present) + 1, 2)) \
        if present else True
    out.append(TestRecord(
        "sharp.gap-free",
        "top z-row has no internal gaps (informational)",
        PASS if gapfree else INCONCLUSIVE,
        lhs=sorted(present), rhs="consecutive even steps",
        reason="" if gapfree else "gap observed; reported informationally"))

    if dubrovnik is not None:
        if p.pos_tag == "AlmostPositiveII":
            ok = dubrovnik.min_deg_u() == P.max_deg_w()
            out.append(TestRecord(
                "sharp.dubrovnik-row",
                "minimal Dubrovnik a-degree equals the top HOMFLY z-degree",
                PASS if ok else FAIL, lhs=dubrovnik.min_deg_u(),
                rhs=P.max_deg_w(),
                reason="" if ok else "Dubrovnik row mismatch"))
        else:
            ok = dubrovnik.min_deg_u() == P.max_deg_w()
            out.append(TestRecord(
                "sharp.dubrovnik-row",
                "minimal Dubrovnik a-degree equals the top HOMFLY z-degree",
                PASS if ok else INCONCLUSIVE,
                lhs=dubrovnik.min_deg_u(), rhs=P.max_deg_w(),
                reason="informational outside the almost-positive type II "
                "case"))
    return out


# -- battery ---------------------------------------------------------------


TARGETS = ("wsap", "sap", "positive", "almost_positive")


def run_battery(p: InvariantProfile, target="wsap",
                dubrovnik=None) -> ObstructionReport:
    """All applicable test families for the chosen target class.

    Every family that obstructs w.s.a.p. also obstructs the smaller
    classes, so any Fail under target wsap persists under target positive.
    """
    if target not in TARGETS:
        raise ValueError("target must be one of %s" % (TARGETS,))
    records = []
    records.extend(conway_tests(p))
    records.extend(homfly_tests(p))
    records.extend(jones_tests(p))
    records.extend(signature_tests(p))
    records.extend(unknotting_tests(p))
    if target == "almost_positive":
        if p.homfly is None:
            records.append(TestRecord(
                "homfly.ap-degree",
                "minimal v-degree equals maximal z-degree for almost "
                "positive links", INCONCLUSIVE,
                reason="HOMFLY not available"))
        else:
            ok = p.homfly.min_deg_u() == p.homfly.max_deg_w()
            records.append(TestRecord(
                "homfly.ap-degree",
                "minimal v-degree equals maximal z-degree for almost "
                "positive links",
                PASS if ok else FAIL, lhs=p.homfly.min_deg_u(),
                rhs=p.homfly.max_deg_w(),
                reason="" if ok else "degree equality fails"))
    if target in ("positive", "almost_positive"):
        if p.sharp():
            records.extend(bennequin_sharp_tests(p, dubrovnik))
        else:
            records.append(TestRecord(
                "sharp.family",
                "sharpened conditions need a Bennequin-sharp certificate",
                INCONCLUSIVE, reason="not flagged Bennequin-sharp"))
    return ObstructionReport(p.name, target, records)
