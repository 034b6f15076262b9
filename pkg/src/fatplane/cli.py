"""Command line front end.

Every verb prints ``key: value`` lines (or one JSON object with ``--json``).
Exit status: 0 on success, 2 when a predicate verb answers no (not
contained, a failed check, a golden mismatch), 1 on bad input.
"""

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import arrangements as arr
from . import fatpoints as fp
from . import fixtures as fx
from . import nslattice as ns
from . import unexpected as ux
from .exactfield import FieldError
from .polyring import PolyError

VERBS = ["hilbert", "alpha", "waldschmidt", "containment", "satdeg", "resurgence",
         "chudnovsky", "arrangement-stats", "hconst", "dualize", "zariski",
         "waldschmidt-zariski", "splitting-type", "unexpected", "generate", "repro"]

# (verb, fixture basename) pairs that take minutes to hours
SLOW = {
    ("containment", "klein.pts"), ("satdeg", "klein.pts"), ("resurgence", "klein.pts"),
    ("splitting-type", "wiman-dual.pts"), ("unexpected", "wiman-dual.pts"),
}


class UsageError(Exception):
    pass


class GoldenMismatch(Exception):
    pass


class Report:
    def __init__(self):
        self.items = []
        self.status = 0
        self._multi = set()
        self.raw = None

    def add(self, key, value):
        self.items.append((key, value))

    def get(self, key):
        for k, v in self.items:
            if k == key:
                return v
        raise KeyError(key)

    def render(self, as_json=False, approx=False):
        if self.raw is not None and not as_json:
            return self.raw.rstrip("\n")
        if as_json:
            obj = {}
            for k, v in self.items:
                if k in obj:
                    # repeated keys (line:, point:) collect into a list
                    if not isinstance(obj[k], list) or k not in self._multi:
                        obj[k] = [obj[k]]
                        self._multi.add(k)
                    obj[k].append(_jsonable(v))
                    continue
                obj[k] = _jsonable(v)
                if approx and isinstance(v, Fraction):
                    obj[k + "_approx"] = float(v)
            return json.dumps(obj, sort_keys=False)
        out = []
        for k, v in self.items:
            out.append("%s: %s" % (k, fmt(v)))
            if approx and isinstance(v, Fraction) and v.denominator != 1:
                out.append("%s_approx: %.6f (approximate, not authoritative)" % (k, float(v)))
        return "\n".join(out)


def fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(fmt(x) for x in v) if v else "-"
    if v is None:
        return "-"
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


def checksum(path):
    with open(fx.resolve(path), "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _echo(rep, args, paths, field=None):
    if field is not None:
        rep.add("field", field.spec.text)
    rep.add("seed", args.seed)
    for p in paths:
        rep.add("checksum[%s]" % os.path.basename(p), checksum(p))


def _gate(args, fixture):
    if (args.verb, os.path.basename(fixture)) in SLOW and args.tier != "extended":
        raise UsageError("%s on %s is in the extended tier; pass --tier extended"
                         % (args.verb, fixture))


def _scheme(args):
    _gate(args, args.scheme)
    Z = fx.load_points(args.scheme)
    return Z


def _certs(args, Z):
    out = []
    for path in args.cert or []:
        lines, weights, support = fx.parse_certificate(fx.read_text(path), Z)
        out.append(fp.nef_line_certificate(Z, lines, weights, support))
    return out


# --- verbs --------------------------------------------------------------------------

def cmd_hilbert(args):
    Z = _scheme(args)
    W = Z.scaled(args.m) if args.m > 1 else Z
    rep = Report()
    _echo(rep, args, [args.scheme], Z.field)
    rep.add("points", len(Z))
    rep.add("m", args.m)
    rep.add("degree", W.degree)
    tmax = args.tmax if args.tmax is not None else fp.regularity(W)
    for t in range(args.tmin, tmax + 1):
        rep.add("dim[%d]" % t, fp.ideal_dim(W, t))
    rep.add("alpha", fp.alpha(W))
    rep.add("reg", fp.regularity(W))
    return rep


def cmd_alpha(args):
    Z = _scheme(args)
    rep = Report()
    _echo(rep, args, [args.scheme], Z.field)
    rep.add("m", args.m)
    rep.add("alpha", fp.alpha_symbolic(Z, args.m))
    if args.m == 1:
        rep.add("omega", fp.omega(Z))
    return rep


def cmd_waldschmidt(args):
    Z = _scheme(args)
    wb = fp.waldschmidt_bounds(Z, args.mmax, _certs(args, Z))
    rep = Report()
    _echo(rep, args, [args.scheme] + list(args.cert or []), Z.field)
    for m, a in wb.table:
        rep.add("alpha[%d]" % m, a)
    rep.add("upper", wb.upper)
    rep.add("lower", wb.lower)
    rep.add("certificates_used", len(wb.certificates))
    rep.add("exact", wb.exact)
    return rep


def cmd_containment(args):
    Z = _scheme(args)
    v = fp.containment(Z, args.m, args.r)
    rep = Report()
    _echo(rep, args, [args.scheme], Z.field)
    rep.add("m", args.m)
    rep.add("r", args.r)
    rep.add("verdict", v.summary())
    rep.add("contained", v.contained)
    rep.add("witness_degree", v.witness_degree)
    rep.add("degrees_checked", "%d..%d" % v.degrees_checked)
    rep.add("reason", v.reason)
    rep.status = 0 if v.contained else 2
    return rep


def cmd_satdeg(args):
    Z = _scheme(args)
    rep = Report()
    _echo(rep, args, [args.scheme], Z.field)
    rep.add("r", args.r)
    rep.add("satdeg", fp.satdeg(Z, args.r))
    return rep


def _pairs(text):
    if not text:
        return None
    out = []
    for tok in text.split():
        m, r = tok.split(",")
        out.append((int(m), int(r)))
    return out


def cmd_resurgence(args):
    Z = _scheme(args)
    rr = fp.resurgence_bounds(Z, args.mmax, _pairs(args.pairs), _certs(args, Z))
    rep = Report()
    _echo(rep, args, [args.scheme] + list(args.cert or []), Z.field)
    rep.add("alpha", rr.alpha)
    rep.add("omega", rr.omega)
    rep.add("reg", rr.reg)
    rep.add("waldschmidt_lower", rr.waldschmidt.lower)
    rep.add("waldschmidt_upper", rr.waldschmidt.upper)
    rep.add("rho_lower", rr.rho_lower)
    rep.add("rho_upper", rr.rho_upper)
    rep.add("rhohat_lower", rr.rhohat_lower)
    rep.add("rhohat_upper", rr.rhohat_upper)
    rep.add("failures", ["(%d,%d)@%d" % f for f in rr.failures])
    for k, v in rr.labels.items():
        rep.add("why[%s]" % k, v)
    return rep


def cmd_chudnovsky(args):
    Z = _scheme(args)
    rep = Report()
    _echo(rep, args, [args.scheme] + list(args.cert or []), Z.field)
    rep.add("alpha", fp.alpha(Z))
    rep.add("verdict", fp.chudnovsky_check(Z, args.mmax, _certs(args, Z)))
    return rep


def _arrangement(args):
    if args.arrangement:
        return arr.parse_arrangement_fixture(fx.read_text(args.arrangement)), [args.arrangement]
    if not args.kind:
        raise UsageError("give --arrangement FILE or --kind")
    params = [int(x) for x in (args.n,) if x is not None]
    return arr.generate(args.kind, *params, seed=args.seed), []


def cmd_arrangement_stats(args):
    A, paths = _arrangement(args)
    inc = A.incidence()
    dg = arr.diagnostics(A)
    rep = Report()
    _echo(rep, args, paths, A.field)
    rep.add("lines", inc.d)
    rep.add("crossings", inc.s)
    for k, v in inc.vector():
        rep.add("t[%d]" % k, v)
    rep.add("pairs_identity", dg["pairs_identity"])
    rep.add("square_identity", dg["square_identity"])
    rep.add("de_bruijn_erdos", dg["de_bruijn_erdos"] if dg["de_bruijn_erdos"] is not None
            else "not applicable (concurrent)")
    rep.add("melchior_slack", dg["melchior_slack"])
    rep.add("melchior", ("holds" if dg["melchior_holds"] else "FAILS")
            if dg["melchior_applicable"] else "not applicable (real realizability not declared)")
    rep.add("hirzebruch_slack", dg["hirzebruch_slack"])
    rep.add("hirzebruch", ("holds" if dg["hirzebruch_holds"] else "fails")
            if dg["hirzebruch_applicable"] else "not applicable")
    for prof, count in arr.per_line_profile(A):
        rep.add("per_line[%s]" % ",".join("t%d=%d" % kv for kv in prof), count)
    if not (dg["pairs_identity"] and dg["square_identity"]):
        rep.status = 2
    return rep


def cmd_hconst(args):
    A, paths = _arrangement(args)
    T = arr.singular_points(A)
    rep = Report()
    _echo(rep, args, paths, A.field)
    rep.add("degree", A.degree)
    rep.add("singular_points", len(T))
    rep.add("H(C,T)", arr.h_constant(A, T))
    if A.is_reduced():
        h = arr.h_constant_min(A)
        rep.add("H(C)", h.value)
        rep.add("attained", h.attained)
        rep.add("minimizing_subset_size", len(h.subset))
    return rep


def cmd_dualize(args):
    rep = Report()
    if args.points:
        Z = fx.load_points(args.points)
        A = arr.dualize(Z.support)
        _echo(rep, args, [args.points], Z.field)
        for ell in A.lines:
            rep.add("line", " ".join(A.field.to_text(v).replace(" ", "") for v in ell.c))
        return rep
    A, paths = _arrangement(args)
    _echo(rep, args, paths, A.field)
    for p in arr.dual_points(A):
        rep.add("point", p.to_text())
    return rep


def _system_and_divisor(args):
    C, named = ns.parse_system_fixture(fx.read_text(args.system))
    text = args.divisor
    if text in named:
        return C, named[text]
    try:
        return C, C.coeffs(text)
    except ns.LatticeError:
        return C, ns.class_coefficients(C, text)


def cmd_zariski(args):
    C, D = _system_and_divisor(args)
    Z = ns.zariski_decompose(C, D)
    chk = ns.check_decomposition(C, D, Z)
    rep = Report()
    _echo(rep, args, [args.system])
    rep.add("relative_to", "declared curves (%d)" % len(C))
    rep.add("D", C.text(D))
    rep.add("P", C.text(Z.P))
    rep.add("N", C.text(Z.N))
    if C.curves:
        rep.add("P_class", Z.P_class())
        rep.add("N_class", Z.N_class())
    rep.add("denominator", Z.denominator)
    if Z.support:
        rep.add("denominator_bound", ns.denominator_bound(C, Z.support))
    for k, v in chk.items():
        rep.add("check[%s]" % k, v)
    if not all(chk.values()):
        rep.status = 2
    return rep


def cmd_waldschmidt_zariski(args):
    C, D = _system_and_divisor(args)
    rep = Report()
    _echo(rep, args, [args.system])
    rep.add("relative_to", "declared curves (%d)" % len(C))
    try:
        val, Z = ns.waldschmidt_zariski(C, D)
    except ns.PatternMismatch as exc:
        rep.add("waldschmidt", "no conclusion")
        rep.add("reason", str(exc))
        rep.status = 2
        return rep
    rep.add("P_class", Z.P_class())
    rep.add("N_class", Z.N_class())
    rep.add("waldschmidt", val)
    return rep


def cmd_splitting_type(args):
    _gate(args, args.points)
    Z = fx.load_points(args.points)
    st = ux.splitting_type(Z, samples=args.samples, seed=args.seed)
    rep = Report()
    _echo(rep, args, [args.points], Z.field)
    rep.add("a", st.a)
    rep.add("b", st.b)
    rep.add("splitting_type", "(%d,%d)" % (st.a, st.b))
    rep.add("samples", st.line_samples)
    rep.add("per_sample", ["%s" % ("-" if a is None else a) for _, a in st.per_sample])
    rep.add("consistent", st.consistent)
    return rep


def cmd_unexpected(args):
    _gate(args, args.points)
    Z = fx.load_points(args.points)
    rep = Report()
    _echo(rep, args, [args.points], Z.field)
    try:
        r = ux.detect_unexpected(Z, verify=args.verify, samples=args.samples, seed=args.seed)
    except ux.VerificationMismatch as exc:
        rep.add("verification", "MISMATCH")
        rep.add("reason", str(exc))
        rep.status = 2
        return rep
    rep.add("splitting_type", "(%d,%d)" % (r.a, r.b))
    rep.add("t_Z", r.t_Z)
    rep.add("reg", r.reg)
    rep.add("degrees", r.degrees)
    for t, vdim, exp, act, p in r.checks:
        rep.add("check[%d]" % t, "dim I(Z)=%d expected=%d actual=%d at %s" % (vdim, exp, act, p))
    if args.verify:
        rep.add("verification", "ok")
    return rep


def cmd_generate(args):
    """Prints a fixture that the other verbs read back."""
    params = [x for x in (args.n,) if x is not None]
    A = arr.generate(args.kind, *params, seed=args.seed)
    if args.as_ == "arrangement":
        text = A.to_fixture()
    elif args.as_ == "dual-points":
        text = fp.FatPointScheme(A.field, arr.dual_points(A)).to_fixture()
    else:
        text = arr.singular_scheme(A, min_mult=args.min_mult).to_fixture()
    rep = Report()
    rep.raw = "# generated: kind %s, n %s, seed %d\n%s" % (args.kind, args.n, args.seed, text)
    rep.add("fixture", text)
    return rep


# --- reproduction index ----------------------------------------------------------------

REPRO = [
    # id, description, argv, golden {key: text}, tier
    ("fermat2-waldschmidt", "seven Fermat points for n = 2: alpha-hat = 15/6",
     ["waldschmidt", "--scheme", "fermat2.pts", "--mmax", "6", "--cert", "fermat2.cert"],
     {"alpha[6]": "15", "upper": "5/2", "lower": "5/2"}, "default"),
    ("fermat3-containment", "twelve Fermat points for n = 3: I(3Z) not in I^2",
     ["containment", "--scheme", "fermat3.pts", "--m", "3", "--r", "2"],
     {"contained": "no", "witness_degree": "9"}, "default"),
    ("fermat3-resurgence", "rho-hat = 4/3 and rho >= 3/2 for the n = 3 Fermat points",
     ["resurgence", "--scheme", "fermat3.pts", "--mmax", "3", "--cert", "fermat3.cert"],
     {"rhohat_lower": "4/3", "rhohat_upper": "4/3", "rho_lower": "3/2"}, "default"),
    ("char3-containment", "twelve points over F_3: I(3Z) not in I^2",
     ["containment", "--scheme", "char3.pts", "--m", "3", "--r", "2"],
     {"contained": "no"}, "default"),
    ("satdeg-5pts", "near-pencil on five points: satdeg(I^5) = 18",
     ["satdeg", "--scheme", "nearpencil4.pts", "--r", "5"], {"satdeg": "18"}, "default"),
    ("nearpencil-zariski", "near-pencil n = 4: P = 4L-3E0-E, N = 7L-4E0-4E",
     ["zariski", "--system", "nearpencil4.sys", "--divisor", "F"],
     {"P_class": "4L - 3E0 - E1 - E2 - E3 - E4",
      "N_class": "7L - 4E0 - 4E1 - 4E2 - 4E3 - 4E4"}, "default"),
    ("nearpencil-waldschmidt", "near-pencil n = 4: alpha-hat = 7/4",
     ["waldschmidt-zariski", "--system", "nearpencil4.sys", "--divisor", "F"],
     {"waldschmidt": "7/4"}, "default"),
    ("star6-waldschmidt", "six general lines: alpha-hat = 3",
     ["waldschmidt-zariski", "--system", "star6.sys", "--divisor", "F"],
     {"waldschmidt": "3"}, "default"),
    ("fiveline-waldschmidt", "triple point and seven double points: alpha-hat = 7/3",
     ["waldschmidt-zariski", "--system", "fiveline.sys", "--divisor", "F"],
     {"waldschmidt": "7/3"}, "default"),
    ("klein-incidence", "Klein arrangement: t4 = 21, t3 = 28",
     ["arrangement-stats", "--arrangement", "klein.arr"],
     {"t[4]": "21", "t[3]": "28", "hirzebruch_slack": "0"}, "default"),
    ("wiman-incidence", "Wiman arrangement: t5 = 36, t4 = 45, t3 = 120",
     ["arrangement-stats", "--arrangement", "wiman.arr"],
     {"t[5]": "36", "t[4]": "45", "t[3]": "120", "hirzebruch_slack": "9"}, "default"),
    ("hconst-f3", "all lines over F_3: H = -3",
     ["hconst", "--kind", "finite_field", "--n", "3"], {"H(C,T)": "-3", "H(C)": "-3"}, "default"),
    ("hconst-wiman", "Wiman arrangement: H = -225/67",
     ["hconst", "--arrangement", "wiman.arr"], {"H(C,T)": "-225/67"}, "default"),
    ("m2-splitting", "dual of the n = 5 Fermat lines: splitting type (6,8)",
     ["splitting-type", "--points", "fermat5-dual.pts"], {"splitting_type": "(6,8)"}, "default"),
    ("m2-unexpected", "dual of the n = 5 Fermat lines: unexpected curve in degree 7",
     ["unexpected", "--points", "fermat5-dual.pts", "--verify"],
     {"degrees": "7", "verification": "ok"}, "default"),
    ("b3-unexpected", "B3 points: splitting type (3,5), unexpected quartic",
     ["unexpected", "--points", "b3.pts", "--verify"],
     {"splitting_type": "(3,5)", "degrees": "4", "verification": "ok"}, "default"),
    ("fermat6-splitting", "dual of the n = 6 Fermat lines: splitting type (7,10)",
     ["splitting-type", "--points", "fermat6-dual.pts"], {"splitting_type": "(7,10)"}, "default"),
    ("klein-splitting", "dual of the Klein lines: splitting type (9,11)",
     ["splitting-type", "--points", "klein-dual.pts"], {"splitting_type": "(9,11)"}, "default"),
    ("klein-containment", "49 Klein points: I(3Z) not in I^2",
     ["containment", "--scheme", "klein.pts", "--m", "3", "--r", "2", "--tier", "extended"],
     {"contained": "no"}, "extended"),
    ("wiman-splitting", "dual of the Wiman lines: splitting type (19,25)",
     ["splitting-type", "--points", "wiman-dual.pts", "--tier", "extended"],
     {"splitting_type": "(19,25)"}, "extended"),
]


def repro_ids():
    return [r[0] for r in REPRO]


def run_repro(rid):
    """Run one index entry; returns (ok, report, mismatches)."""
    for ident, _, argv, golden, _ in REPRO:
        if ident == rid:
            break
    else:
        raise UsageError("unknown reproduction id %r (see repro --list)" % rid)
    rep = build_report(argv)
    bad = []
    for k, want in golden.items():
        try:
            got = fmt(rep.get(k))
        except KeyError:
            got = "<missing>"
        if got != want:
            bad.append((k, want, got))
    return not bad, rep, bad


def cmd_repro(args):
    rep = Report()
    if args.list or not (args.ids or args.all):
        for ident, desc, argv, _, tier in REPRO:
            rep.add(ident, "%s [%s] : fatplane %s" % (desc, tier, " ".join(argv)))
        return rep
    ids = args.ids or [r[0] for r in REPRO if r[4] == "default" or args.tier == "extended"]
    for rid in ids:
        tier = next((r[4] for r in REPRO if r[0] == rid), None)
        if tier == "extended" and args.tier != "extended":
            raise UsageError("%s is in the extended tier; pass --tier extended" % rid)
        ok, _, bad = run_repro(rid)
        if ok:
            rep.add(rid, "ok")
        else:
            rep.add(rid, "MISMATCH " + "; ".join("%s: want %s got %s" % b for b in bad))
            rep.status = 2
    return rep


# --- argument parsing ---------------------------------------------------------------------

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object instead of key: value lines")
    common.add_argument("--approx", action="store_true", help="add decimal renderings (not authoritative)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tier", choices=["default", "extended"], default="default")

    p = argparse.ArgumentParser(prog="fatplane", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    def verb(name, helptext):
        return sub.add_parser(name, parents=[common], help=helptext)

    def scheme(q, extra=True):
        q.add_argument("--scheme", required=True, help="points fixture (path or shipped name)")

    q = verb("hilbert", "dimensions of [I(mZ)]_t")
    scheme(q)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--tmin", type=int, default=0)
    q.add_argument("--tmax", type=int)

    q = verb("alpha", "least degree in I(mZ)")
    scheme(q)
    q.add_argument("--m", type=int, default=1)

    for name, helptext in (("waldschmidt", "bounds on the Waldschmidt constant"),
                           ("resurgence", "certified resurgence intervals"),
                           ("chudnovsky", "certified check of (alpha+1)/2 <= alpha-hat")):
        q = verb(name, helptext)
        scheme(q)
        q.add_argument("--mmax", type=int, default=3)
        q.add_argument("--cert", action="append", help="nef line certificate file")
        if name == "resurgence":
            q.add_argument("--pairs", help="containment pairs to test, e.g. '3,2 5,3'")

    q = verb("containment", "is I(mZ) inside I(Z)^r")
    scheme(q)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--r", type=int, required=True)

    q = verb("satdeg", "saturation degree of I(Z)^r")
    scheme(q)
    q.add_argument("--r", type=int, required=True)

    for name, helptext in (("arrangement-stats", "t_k vector and counting checks"),
                           ("hconst", "H-constants of a line arrangement"),
                           ("dualize", "dual points of lines or dual lines of points")):
        q = verb(name, helptext)
        q.add_argument("--arrangement", help="arrangement fixture")
        q.add_argument("--kind", help="generated arrangement kind")
        q.add_argument("--n", type=int, help="size parameter for --kind")
        if name == "dualize":
            q.add_argument("--points", help="points fixture")

    for name, helptext in (("zariski", "Zariski decomposition relative to declared curves"),
                           ("waldschmidt-zariski", "alpha-hat from the negative part")):
        q = verb(name, helptext)
        q.add_argument("--system", required=True, help="curve system fixture")
        q.add_argument("--divisor", required=True,
                       help="a named divisor of the fixture, a combination of curves, or a class")

    for name, helptext in (("splitting-type", "splitting type of the dual line product"),
                           ("unexpected", "unexpected curves via the splitting type")):
        q = verb(name, helptext)
        q.add_argument("--points", required=True)
        q.add_argument("--samples", type=int, default=5)
        if name == "unexpected":
            q.add_argument("--verify", action="store_true")

    q = verb("generate", "write a generated arrangement or its points as a fixture")
    q.add_argument("--kind", required=True,
                   help="fermat, finite_field, klein, wiman, general, concurrent, near_pencil")
    q.add_argument("--n", type=int)
    q.add_argument("--as", dest="as_", choices=["arrangement", "points", "dual-points"],
                   default="arrangement")
    q.add_argument("--min-mult", type=int, default=2)

    q = verb("repro", "rerun worked values against stored golden values")
    q.add_argument("ids", nargs="*")
    q.add_argument("--list", action="store_true")
    q.add_argument("--all", action="store_true")
    return p


HANDLERS = {
    "hilbert": cmd_hilbert, "alpha": cmd_alpha, "waldschmidt": cmd_waldschmidt,
    "containment": cmd_containment, "satdeg": cmd_satdeg, "resurgence": cmd_resurgence,
    "chudnovsky": cmd_chudnovsky, "arrangement-stats": cmd_arrangement_stats,
    "hconst": cmd_hconst, "dualize": cmd_dualize, "zariski": cmd_zariski,
    "waldschmidt-zariski": cmd_waldschmidt_zariski, "splitting-type": cmd_splitting_type,
    "unexpected": cmd_unexpected, "generate": cmd_generate, "repro": cmd_repro,
}


def build_report(argv):
    args = make_parser().parse_args(argv)
    return HANDLERS[args.verb](args)


INPUT_ERRORS = (UsageError, fp.BadFixture, FileNotFoundError, FieldError, PolyError,
                ns.LatticeError, arr.ArrangementError, fp.FatPointError, ux.UnexpectedError,
                ValueError)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        rep = HANDLERS[args.verb](args)
    except INPUT_ERRORS as exc:
        sys.stderr.write("fatplane %s: %s: %s\n" % (args.verb, type(exc).__name__, exc))
        return 1
    sys.stdout.write(rep.render(args.json, args.approx) + "\n")
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
