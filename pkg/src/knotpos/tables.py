"""Knot table ingestion and the bundled mini-table.

Table files are JSON lines, one entry per line::

    {"name": "3_1", "pd": "PD[...]", "known": {"genus": 1, ...}}

Exactly one of ``pd`` / ``gauss`` must be present. Known invariants are
user-supplied from standard tables and echoed, never recomputed; the
loader cross-checks the supplied signature and determinant against its
own computations and reports mismatches instead of trusting either side.

The bundled table carries the prime knots through 8 crossings plus the
named example knots, with diagrams generated from rational, pretzel,
Montesinos and braid constructions and validated by determinant and
signature cross-checks (see ``_data/knots.jsonl``).
"""

from __future__ import annotations

import json
import os

from .errors import MalformedSyntax
from . import diagram as dg


class TableEntry:
    """One table row: a name, a diagram code, and known invariants."""

    __slots__ = ("name", "pd", "gauss", "known")

    def __init__(self, name, pd=None, gauss=None, known=None):
        if (pd is None) == (gauss is None):
            raise MalformedSyntax("exactly one of pd/gauss per entry")
        self.name = name
        self.pd = pd
        self.gauss = gauss
        self.known = dict(known or {})

    def diagram(self) -> dg.Diagram:
        if self.pd is not None:
            return dg.parse_pd(self.pd)
        return dg.parse_gauss(self.gauss)

    def validate(self):
        """Cross-check supplied signature/determinant; returns mismatches."""
        from . import signature as sig

        d = self.diagram()
        issues = []
        if "signature" in self.known:
            got = sig.signature(d)
            if got != self.known["signature"]:
                issues.append("signature: computed %d, table says %r"
                              % (got, self.known["signature"]))
        if "determinant" in self.known:
            got = sig.determinant(d)
            if got != self.known["determinant"]:
                issues.append("determinant: computed %d, table says %r"
                              % (got, self.known["determinant"]))
        return issues

    def profile(self, budget=None):
        from .obstruct import InvariantProfile
        from .polynomials import DEFAULT_BUDGET

        known = {k: v for k, v in self.known.items()
                 if k not in ("signature", "determinant")}
        return InvariantProfile.from_diagram(
            self.name, self.diagram(), known=known,
            budget=budget or DEFAULT_BUDGET)

    def as_dict(self):
        out = {"name": self.name}
        if self.pd is not None:
            out["pd"] = self.pd
        if self.gauss is not None:
            out["gauss"] = self.gauss
        if self.known:
            out["known"] = self.known
        return out


def parse_entry(line: str) -> TableEntry:
    obj = json.loads(line)
    return TableEntry(obj["name"], pd=obj.get("pd"), gauss=obj.get("gauss"),
                      known=obj.get("known"))


def load_table(path) -> list:
    """Load a JSONL table; per-line failures are collected, not fatal."""
    entries = []
    errors = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                entries.append(parse_entry(line))
            except Exception as exc:
                errors.append((lineno, str(exc)))
    return entries, errors


_BUNDLED = os.path.join(os.path.dirname(__file__), "_data", "knots.jsonl")


def bundled_table():
    """The bundled mini-table (prime knots through 8 crossings + named)."""
    entries, errors = load_table(_BUNDLED)
    if errors:
        raise AssertionError("bundled table is corrupt: %r" % errors)
    return entries
