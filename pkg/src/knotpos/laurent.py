"""Sparse Laurent polynomials with arbitrary-precision integer coefficients.

One- and two-variable flavours. Half-integer exponents (needed for the Jones
polynomial of links) are stored exactly as doubled integers, so all arithmetic
stays in ``int``.
"""

from __future__ import annotations

from fractions import Fraction


def _fmt_coef_var(coef, varpart, first):
    if varpart == "":
        body = str(abs(coef))
    elif abs(coef) == 1:
        body = varpart
    else:
        body = "%d*%s" % (abs(coef), varpart)
    if first:
        return body if coef > 0 else "-" + body
    return (" + " if coef > 0 else " - ") + body


def _fmt_power(var, two_e):
    if two_e == 0:
        return ""
    if two_e % 2 == 0:
        e = two_e // 2
        return var if e == 1 else "%s^%d" % (var, e)
    return "%s^(%d/2)" % (var, two_e)


class LaurentPoly1:
    """One-variable sparse Laurent polynomial.

    Exponents are stored doubled (``two_e``) so that half-integer powers are
    exact; ordinary polynomials only ever hold even keys. Instances are
    immutable in spirit: no method mutates ``self``.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=None, var="z"):
        cc = {}
        if coeffs:
            for two_e, c in coeffs.items():
                if c != 0:
                    cc[two_e] = c
        self.coeffs = cc
        self.var = var

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, var="z"):
        return cls({}, var)

    @classmethod
    def one(cls, var="z"):
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, coef, exp, var="z", half=False):
        """``coef * var**exp``; with ``half=True``, ``exp`` counts half-units."""
        two_e = exp if half else 2 * exp
        return cls({two_e: coef}, var)

    @classmethod
    def from_int_exponents(cls, d, var="z"):
        return cls({2 * e: c for e, c in d.items()}, var)

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly1):
            return other
        if isinstance(other, int):
            return LaurentPoly1({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly1(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly1({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly1(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: use divexact")
        result = LaurentPoly1.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1({0: other}, self.var)
        if not isinstance(other, LaurentPoly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- accessors ---------------------------------------------------------

    def coef(self, exp, half=False):
        """Coefficient of ``var**exp``; missing terms give 0."""
        two_e = exp if half else 2 * exp
        return self.coeffs.get(two_e, 0)

    def min_deg(self):
        """Minimal exponent as a Fraction (0 for the zero polynomial)."""
        if not self.coeffs:
            return Fraction(0)
        return Fraction(min(self.coeffs), 2)

    def max_deg(self):
        if not self.coeffs:
            return Fraction(0)
        return Fraction(max(self.coeffs), 2)

    def leading_coef(self):
        """Coefficient of the maximal-degree term (0 for zero polynomial)."""
        if not self.coeffs:
            return 0
        return self.coeffs[max(self.coeffs)]

    def is_integral(self):
        return all(e % 2 == 0 for e in self.coeffs)

    # -- evaluations -------------------------------------------------------

    def eval_int(self, x):
        """Evaluate at an integer; requires integral nonnegative exponents."""
        total = 0
        for two_e, c in self.coeffs.items():
            if two_e % 2 or two_e < 0:
                raise ValueError("eval_int needs nonnegative integer exponents")
            total += c * x ** (two_e // 2)
        return total

    def eval_gaussian(self, re, im):
        """Evaluate at the Gaussian integer ``re + im*sqrt(-1)`` exactly.

        Requires integral nonnegative exponents; returns an ``(re, im)`` pair.
        """
        tre, tim = 0, 0
        for two_e, c in self.coeffs.items():
            if two_e % 2 or two_e < 0:
                raise ValueError("gaussian eval needs nonnegative integer exponents")
            pr, pi = 1, 0
            for _ in range(two_e // 2):
                pr, pi = pr * re - pi * im, pr * im + pi * re
            tre += c * pr
            tim += c * pi
        return tre, tim

    def substitute(self, value):
        """Substitute another LaurentPoly1 for the variable.

        Exponents must be nonnegative integers (true for Conway polynomials).
        """
        result = LaurentPoly1.zero(value.var)
        for two_e, c in sorted(self.coeffs.items()):
            if two_e % 2 or two_e < 0:
                raise ValueError("substitute needs nonnegative integer exponents")
            result = result + c * value ** (two_e // 2)
        return result

    def shifted(self, two_offset):
        return LaurentPoly1(
            {e + two_offset: c for e, c in self.coeffs.items()}, self.var
        )

    def divexact(self, other):
        """Exact Laurent division; raises ``ValueError`` on a remainder."""
        if not other.coeffs:
            raise ZeroDivisionError
        if not self.coeffs:
            return LaurentPoly1.zero(self.var)
        num = dict(self.coeffs)
        den = other.coeffs
        dmax = max(den)
        dlead = den[dmax]
        out = {}
        while num:
            nmax = max(num)
            c, rem = divmod(num[nmax], dlead)
            if rem:
                raise ValueError("inexact Laurent division")
            e = nmax - dmax
            out[e] = c
            for de, dc in den.items():
                k = de + e
                v = num.get(k, 0) - c * dc
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        return LaurentPoly1(out, self.var)

    # -- serialization -------------------------------------------------------

    def text(self):
        """Canonical text form, terms in increasing exponent order."""
        if not self.coeffs:
            return "0"
        parts = []
        for two_e in sorted(self.coeffs):
            parts.append(
                _fmt_coef_var(self.coeffs[two_e], _fmt_power(self.var, two_e),
                              first=not parts)
            )
        return "".join(parts)

    def __repr__(self):
        return "LaurentPoly1(%s)" % self.text()


_TERM_RE = None


def _split_terms(text):
    import re

    text = text.strip()
    if text == "0":
        return []
    sign = "+"
    if text.startswith("-"):
        sign = "-"
        text = text[1:].lstrip()
    parts = re.split(r" ([+-]) ", text)
    out = [(sign, parts[0].strip())]
    for k in range(1, len(parts) - 1, 2):
        out.append((parts[k], parts[k + 1].strip()))
    return out


def _parse_monomial(body, var):
    import re

    m = re.fullmatch(
        r"(?:(\d+)\*?)?(?:%s(?:\^\(?(-?\d+)(?:/2)?\)?)?)?" % re.escape(var),
        body)
    if not m or (m.group(1) is None and var not in body and body != ""):
        if re.fullmatch(r"\d+", body):
            return int(body), 0
        raise ValueError("bad term %r" % body)
    coef = int(m.group(1)) if m.group(1) else 1
    if var not in body:
        return coef, 0
    if m.group(2) is None:
        return coef, 2
    two_e = int(m.group(2))
    if "/2" not in body:
        two_e *= 2
    return coef, two_e


def parse_poly1(text, var):
    """Parse the canonical one-variable serialization back into a polynomial."""
    out = {}
    for sign, body in _split_terms(text):
        coef, two_e = _parse_monomial(body, var)
        if sign == "-":
            coef = -coef
        out[two_e] = out.get(two_e, 0) + coef
    return LaurentPoly1(out, var)


def parse_poly2(text, vars=("v", "z")):
    """Parse the canonical two-variable serialization."""
    import re

    u, w = vars
    out = {}
    for sign, body in _split_terms(text):
        m = re.fullmatch(
            r"(?:(\d+)\*?)?"
            r"(?:%s(?:\^(-?\d+))?)?\*?"
            r"(?:%s(?:\^(-?\d+))?)?" % (re.escape(u), re.escape(w)), body)
        if not m:
            raise ValueError("bad term %r" % body)
        coef = int(m.group(1)) if m.group(1) else 1
        i = 0
        if u in body:
            i = int(m.group(2)) if m.group(2) else 1
        j = 0
        if w in body:
            j = int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            coef = -coef
        key = (i, j)
        out[key] = out.get(key, 0) + coef
    return LaurentPoly2(out, vars)


class LaurentPoly2:
    """Two-variable sparse Laurent polynomial ``sum c[i,j] * u**i * w**j``.

    Used for the HOMFLY polynomial in (v, z) and the Dubrovnik polynomial in
    (a, z). Exponents are plain integers, possibly negative in either slot.
    """

    __slots__ = ("coeffs", "vars")

    def __init__(self, coeffs=None, vars=("v", "z")):
        cc = {}
        if coeffs:
            for key, c in coeffs.items():
                if c != 0:
                    cc[key] = c
        self.coeffs = cc
        self.vars = vars

    @classmethod
    def zero(cls, vars=("v", "z")):
        return cls({}, vars)

    @classmethod
    def one(cls, vars=("v", "z")):
        return cls({(0, 0): 1}, vars)

    @classmethod
    def monomial(cls, coef, i, j, vars=("v", "z")):
        return cls({(i, j): coef}, vars)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2({(0, 0): other}, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self.coeffs.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers not supported")
        result = LaurentPoly2.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other}, self.vars)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- accessors ---------------------------------------------------------

    def coef(self, i, j):
        """``c_{i,j}``, the coefficient of ``u**i * w**j``."""
        return self.coeffs.get((i, j), 0)

    def row(self, j):
        """Coefficient of ``w**j`` as a one-variable polynomial in ``u``."""
        out = {}
        for (i, jj), c in self.coeffs.items():
            if jj == j:
                out[2 * i] = c
        return LaurentPoly1(out, self.vars[0])

    def min_deg_u(self):
        if not self.coeffs:
            return 0
        return min(i for i, _ in self.coeffs)

    def max_deg_u(self):
        if not self.coeffs:
            return 0
        return max(i for i, _ in self.coeffs)

    def min_deg_w(self):
        if not self.coeffs:
            return 0
        return min(j for _, j in self.coeffs)

    def max_deg_w(self):
        if not self.coeffs:
            return 0
        return max(j for _, j in self.coeffs)

    def specialize_u(self, value):
        """Substitute the integer ``value`` for the first variable."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if i < 0:
                if value in (1, -1):
                    term = c * value ** (-i)
                else:
                    raise ValueError("negative power at non-unit value")
            else:
                term = c * value ** i
            out[2 * j] = out.get(2 * j, 0) + term
        return LaurentPoly1(out, self.vars[1])

    def substitute_w(self, value_num, shift_den=None):
        """Substitute a LaurentPoly1 for the second variable.

        Negative powers of the second variable are handled by clearing them
        with ``shift_den`` (a LaurentPoly1 equal to the substituted value):
        the whole expression is multiplied by ``shift_den**m``, substituted,
        then divided back exactly.
        """
        m = max(0, -self.min_deg_w())
        var = value_num.var
        total = LaurentPoly1.zero(var)
        for (i, j), c in self.coeffs.items():
            term = LaurentPoly1.monomial(c, 2 * i, var, half=True)
            term = term * value_num ** (j + m)
            total = total + term
        if m:
            total = total.divexact((shift_den or value_num) ** m)
        return total

    # -- serialization -------------------------------------------------------

    def text(self):
        """Canonical text, terms sorted by (second exponent, first exponent)."""
        if not self.coeffs:
            return "0"
        u, w = self.vars

        def fmt_uw(i, j):
            pu = "" if i == 0 else (u if i == 1 else "%s^%d" % (u, i))
            pw = "" if j == 0 else (w if j == 1 else "%s^%d" % (w, j))
            if pu and pw:
                return pu + "*" + pw
            return pu or pw

        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[1], k[0])):
            parts.append(
                _fmt_coef_var(self.coeffs[(i, j)], fmt_uw(i, j), first=not parts)
            )
        return "".join(parts)

    def __repr__(self):
        return "LaurentPoly2(%s)" % self.text()
