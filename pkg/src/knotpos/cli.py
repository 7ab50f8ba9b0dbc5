"""knotpos command line: invariants, classify, obstruct, skein-tree.

Exit codes: 0 success, 1 input error, 2 resource limit, 3 internal
invariant violation. Table runs preserve input order regardless of the
worker count, and the cache file stores canonical text serializations of
polynomial values keyed by canonical diagram key and engine version, so
warm and cold runs are bit-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import KnotError, ResourceLimit
from . import diagram as dg
from . import polynomials as poly
from . import positivity as pos
from . import seifert as sf
from . import signature as sig
from . import tables
from .laurent import parse_poly1, parse_poly2
from .obstruct import InvariantProfile, run_battery

CSV_COLUMNS = ("name", "test_id", "citation", "outcome", "lhs", "rhs",
               "reason")


def _diagram_from_flags(args):
    if getattr(args, "pd", None):
        return dg.parse_pd(args.pd)
    if getattr(args, "gauss", None):
        return dg.parse_gauss(args.gauss)
    raise KnotError("need --pd or --gauss")


class Cache:
    """JSONL cache of canonical polynomial serializations."""

    def __init__(self, path):
        self.path = path
        self.data = {}
        self.dirty = False
        if path:
            try:
                with open(path) as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        rec = json.loads(line)
                        if rec.get("version") != __version__:
                            continue
                        self.data[(rec["key"], rec["invariant"])] = rec["value"]
            except FileNotFoundError:
                pass

    def get(self, key, invariant):
        return self.data.get((key, invariant))

    def put(self, key, invariant, value):
        if self.data.get((key, invariant)) != value:
            self.data[(key, invariant)] = value
            self.dirty = True

    def save(self):
        if not self.path or not self.dirty:
            return
        with open(self.path, "w") as fh:
            for (key, invariant), value in sorted(self.data.items()):
                fh.write(json.dumps({"key": key, "invariant": invariant,
                                     "value": value,
                                     "version": __version__}) + "\n")


def _cached_poly(cache, d, invariant, compute, parse):
    key = dg.canonical_key(d).decode()
    if cache is not None:
        hit = cache.get(key, invariant)
        if hit is not None:
            return parse(hit)
    value = compute()
    if cache is not None:
        cache.put(key, invariant, value.text())
    return value


def cmd_invariants(args):
    d = _diagram_from_flags(args)
    budget = args.budget
    cache = Cache(args.cache) if args.cache else None
    out = []
    everything = args.all or not any(
        (args.conway, args.homfly, args.jones, args.alexander,
         args.dubrovnik, args.signature, args.determinant, args.seifert,
         args.bounds, args.omega))

    nabla = None
    if args.conway or args.alexander or everything:
        nabla = _cached_poly(cache, d, "conway",
                             lambda: poly.conway(d, budget),
                             lambda t: parse_poly1(t, "z"))
    P = None
    if args.homfly or args.jones or everything:
        P = _cached_poly(cache, d, "homfly",
                         lambda: poly.homfly(d, budget),
                         lambda t: parse_poly2(t, ("v", "z")))
    if args.conway or everything:
        out.append(("conway", nabla.text()))
    if args.homfly or everything:
        out.append(("homfly", P.text()))
    if args.jones or everything:
        out.append(("jones", poly.jones_from_homfly(P).text()))
    if args.alexander or everything:
        out.append(("alexander", poly.alexander_from_conway(nabla).text()))
    if args.dubrovnik or everything:
        out.append(("dubrovnik",
                    _cached_poly(cache, d, "dubrovnik",
                                 lambda: poly.dubrovnik(d, budget),
                                 lambda t: parse_poly2(t, ("a", "z"))).text()))
    if args.signature or everything:
        out.append(("signature", str(sig.signature(d))))
    if args.determinant or everything:
        out.append(("determinant", str(sig.determinant(d))))
    if args.seifert or everything:
        sd = sf.seifert_data(d)
        out.append(("seifert", "s=%d chi=%d genus=%s sl=%d"
                    % (sd.s, sd.chi, sd.genus, sd.sl)))
    if args.bounds or everything:
        try:
            b = sig.signature_lower_bound(d, "general")
            out.append(("signature-bound", str(b.value)))
        except KnotError as exc:
            out.append(("signature-bound", "unavailable: %s" % exc))
    if args.omega:
        sm = sig.seifert_matrix(d)
        for spec_txt in args.omega.split(","):
            n, k = (int(x) for x in spec_txt.split("/"))
            out.append(("sigma_omega(%d/%d)" % (n, k),
                        str(sig.levine_tristram(sm, n, k))))
    for name, value in out:
        print("%s: %s" % (name, value) if len(out) > 1 else value)
    if cache is not None:
        cache.save()
    return 0


def cmd_classify(args):
    d = _diagram_from_flags(args)
    cls = pos.classify(d)
    if cls.tag == "WeaklyPositiveOnly" and cls.wp_witness:
        order, basepoints = cls.wp_witness
        print("WeaklyPositiveOnly (order=%s basepoints=%s)"
              % (list(order), list(basepoints)))
    elif cls.k and cls.overarc is not None:
        print("%s (k=%d, overarc length %d starting at arc %s)"
              % (cls.tag, cls.k, cls.length, cls.overarc.start_arc))
    else:
        print(cls.tag)
    return 0


def _entry_report(entry, target, budget, cache):
    issues = entry.validate()
    d = entry.diagram()
    known = {k: v for k, v in entry.known.items()
             if k not in ("signature", "determinant")}
    nabla = _cached_poly(cache, d, "conway",
                         lambda: poly.conway(d, budget),
                         lambda t: parse_poly1(t, "z"))
    P = _cached_poly(cache, d, "homfly",
                     lambda: poly.homfly(d, budget),
                     lambda t: parse_poly2(t, ("v", "z")))
    sd = sf.seifert_data(d)
    profile = InvariantProfile(
        entry.name, d.n_components, nabla, P, poly.jones_from_homfly(P),
        sig.signature(d), sig.determinant(d), chi_diagram=sd.chi,
        c_minus=d.c_minus, pos_tag=pos.classify(d).tag, known=known,
        diagram=d)
    report = run_battery(profile, target)
    return report, issues


def cmd_obstruct(args):
    if args.table:
        entries, errors = tables.load_table(args.table)
    else:
        entries, errors = tables.bundled_table(), []
    cache = Cache(args.cache) if args.cache else None
    target = args.target.replace("-", "_")

    def work(entry):
        try:
            return _entry_report(entry, target, args.budget, cache)
        except ResourceLimit:
            raise
        except KnotError as exc:
            return ("entry-error", "%s: %s" % (entry.name, exc))

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(work, entries))
    else:
        results = [work(e) for e in entries]

    reports = []
    inline_errors = ["line %d: %s" % (lineno, msg) for lineno, msg in errors]
    for res in results:
        if isinstance(res, tuple) and res and res[0] == "entry-error":
            inline_errors.append(res[1])
            continue
        report, issues = res
        inline_errors.extend("%s: table mismatch: %s" % (report.name, i)
                             for i in issues)
        reports.append(report)

    not_wsap = sum(1 for r in reports if r.verdict == "NotWSAP")
    summary = "entries=%d NotWSAP=%d ConsistentWithWSAP=%d" % (
        len(reports), not_wsap, len(reports) - not_wsap)

    if args.format == "json":
        payload = {"reports": [r.as_dict() for r in reports],
                   "errors": inline_errors, "summary": summary}
        text = json.dumps(payload, sort_keys=True, indent=None)
    else:
        rows = [",".join(CSV_COLUMNS)]
        for r in reports:
            for row in r.csv_rows():
                rows.append(",".join('"%s"' % str(x).replace('"', "'")
                                     for x in row))
        rows.append("# " + summary)
        rows.extend("# error: " + e for e in inline_errors)
        text = "\n".join(rows)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for err in inline_errors:
        print("warning: %s" % err, file=sys.stderr)
    if cache is not None:
        cache.save()
    return 0


def cmd_skein_tree(args):
    d = _diagram_from_flags(args)
    cls = pos.classify(d)
    if not cls.certifies_wsap():
        raise KnotError("diagram does not certify w.s.a.p. (%s)" % cls.tag)
    print("class: %s (k=%d)  complexity: %s"
          % (cls.tag, cls.k, tuple(pos.complexity(d, cls))))
    steps, terminal = pos.standard_unknotting_sequence(d, with_terminal=True)
    for i, (diagram, ci) in enumerate(steps):
        c = pos.classify(diagram)
        _, d0, dminus = pos.standard_skein_triple(diagram)
        print("step %d: change crossing %d  complexity %s -> D0 %s, D- %s"
              % (i + 1, ci, tuple(pos.complexity(diagram, c)),
                 d0.pd_text(), dminus.pd_text()))
    print("terminal: %s  (components=%d, conway=%s)"
          % (terminal.pd_text(), terminal.n_components,
             poly.conway(terminal).text()))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotpos",
        description="link diagram invariants, positivity classes, and "
                    "obstruction batteries")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--pd", help="PD code, e.g. PD[X[1,4,2,5],...]")
        p.add_argument("--gauss", help="signed Gauss code, e.g. O1+U2+...")

    p_inv = sub.add_parser("invariants", help="print invariants")
    add_input(p_inv)
    for flag in ("conway", "homfly", "jones", "alexander", "dubrovnik",
                 "signature", "determinant", "seifert", "bounds", "all"):
        p_inv.add_argument("--" + flag, action="store_true")
    p_inv.add_argument("--omega", help="Levine-Tristram list, e.g. 2/1,6/1")
    p_inv.add_argument("--budget", type=int, default=poly.DEFAULT_BUDGET)
    p_inv.add_argument("--cache")
    p_inv.add_argument("--jobs", type=int, default=1)
    p_inv.set_defaults(func=cmd_invariants)

    p_cls = sub.add_parser("classify", help="positivity class of a diagram")
    add_input(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_obs = sub.add_parser("obstruct", help="run the obstruction battery")
    p_obs.add_argument("--table", help="JSONL table path (default: bundled)")
    p_obs.add_argument("--target", default="wsap",
                       choices=["wsap", "sap", "positive", "almost-positive",
                                "almost_positive"])
    p_obs.add_argument("--out")
    p_obs.add_argument("--format", default="csv", choices=["json", "csv"])
    p_obs.add_argument("--jobs", type=int, default=1)
    p_obs.add_argument("--cache")
    p_obs.add_argument("--budget", type=int, default=poly.DEFAULT_BUDGET)
    p_obs.set_defaults(func=cmd_obstruct)

    p_sk = sub.add_parser("skein-tree",
                          help="standard skein triples and unknotting "
                               "sequence")
    add_input(p_sk)
    p_sk.set_defaults(func=cmd_skein_tree)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return 2
    except KnotError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 1
    except AssertionError as exc:
        print("internal invariant violation: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
