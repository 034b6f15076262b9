"""Line arrangements in the projective plane.

Crossing points and the t_k vector, the classical counting identities and
inequalities, duality with point sets, H-constants, and the fat point
schemes supported on the singular points.
"""

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from math import comb

from .exactfield import FieldElem, FieldError, field_make, root_of_unity
from .fatpoints import BadFixture, FatPointScheme, read_fixture_lines
from .polyring import HomogeneousForm, PolyError, ProjPoint, cross, parse_form


class ArrangementError(ValueError):
    pass


class UnsupportedField(ArrangementError):
    pass


class EmptySubset(ArrangementError):
    pass


class NoSuchPoints(ArrangementError):
    pass


class LineArrangement:
    """Distinct lines L_1, ..., L_d with positive multiplicities."""

    def __init__(self, field, lines, mults=None, name=None, realizable_over=None):
        self.field = field_make(field)
        F = self.field
        forms = []
        for ell in lines:
            if not isinstance(ell, HomogeneousForm):
                ell = HomogeneousForm(F, 1, [F.coerce(v) for v in ell])
            if ell.field is not F or ell.degree != 1:
                raise ArrangementError("%s is not a linear form over %s" % (ell, F.spec.text))
            if ell.is_zero():
                raise ArrangementError("the zero form is not a line")
            forms.append(ell)
        if len(forms) < 2:
            raise ArrangementError("an arrangement needs at least two lines")
        duals = [ProjPoint(F, ell.c) for ell in forms]
        if len(set(duals)) != len(duals):
            dup = [p for p, k in Counter(duals).items() if k > 1][0]
            raise ArrangementError("proportional lines with coefficients %s" % dup)
        self.lines = tuple(forms)
        self.mults = tuple(int(m) for m in mults) if mults is not None else (1,) * len(forms)
        if len(self.mults) != len(forms) or min(self.mults) < 1:
            raise ArrangementError("need one positive multiplicity per line")
        self.name = name
        self.realizable_over = realizable_over
        self._incidence = None

    def __len__(self):
        return len(self.lines)

    def __repr__(self):
        return "LineArrangement(%s%d lines over %s)" % (
            self.name + ", " if self.name else "", len(self.lines), self.field.spec.text)

    @property
    def degree(self):
        return sum(self.mults)

    def is_reduced(self):
        return all(m == 1 for m in self.mults)

    def reduced(self):
        return LineArrangement(self.field, self.lines, name=self.name,
                               realizable_over=self.realizable_over)

    def product(self):
        """The form prod L_i^(m_i)."""
        F = self.field
        out = HomogeneousForm.constant(F, 1)
        for ell, m in zip(self.lines, self.mults):
            for _ in range(m):
                out = out * ell
        return out

    def lines_through(self, p):
        isz = self.field.is_zero
        return [i for i, ell in enumerate(self.lines) if isz(ell.eval_raw(p.raw))]

    def incidence(self):
        if self._incidence is None:
            self._incidence = incidence(self)
        return self._incidence

    def to_fixture(self):
        out = ["field: %s" % self.field.spec.text]
        if self.name:
            out.append("name: %s" % self.name)
        if self.realizable_over:
            out.append("realizable_over: %s" % self.realizable_over)
        F = self.field
        for ell, m in zip(self.lines, self.mults):
            row = "line: " + " ".join(F.to_text(v).replace(" ", "") for v in ell.c)
            if m != 1:
                row += " mult %d" % m
            out.append(row)
        return "\n".join(out) + "\n"


@dataclass
class IncidenceData:
    crossings: list            # (ProjPoint, k, line indices)
    tk: dict
    s: int
    d: int
    per_line: list = dc_field(default_factory=list)   # Counter k -> count, one per line

    def t(self, k):
        return self.tk.get(k, 0)

    def vector(self):
        return tuple((k, self.tk[k]) for k in sorted(self.tk, reverse=True))


def incidence(A):
    """All crossing points, found by pairwise cross products."""
    F = A.field
    on = {}
    for i, j in itertools.combinations(range(len(A.lines)), 2):
        p = ProjPoint(F, cross(F, A.lines[i].c, A.lines[j].c))
        s = on.get(p)
        if s is None:
            on[p] = {i, j}
        else:
            s.add(i)
            s.add(j)
    crossings = [(p, len(s), tuple(sorted(s))) for p, s in on.items()]
    crossings.sort(key=lambda c: (-c[1], c[2]))
    tk = Counter(k for _, k, _ in crossings)
    per_line = [Counter() for _ in A.lines]
    for _, k, idx in crossings:
        for i in idx:
            per_line[i][k] += 1
    return IncidenceData(crossings, dict(tk), len(crossings), len(A.lines), per_line)


# --- generators ----------------------------------------------------------------

def _data_text(name):
    return resources.files("fatplane").joinpath("data", name).read_text()


def field_elements(F):
    """Every element of a finite field, as raw values."""
    F = field_make(F)
    p = F.characteristic
    if not p:
        raise UnsupportedField("%s is infinite" % F.spec.text)
    base = getattr(F, "base", None)
    if base is None:
        return list(range(p))
    return [tuple(c) for c in itertools.product(range(p), repeat=F.k)]


def finite_field(q):
    """F_q for q = p or q = p^2 (enough for the fixtures)."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise UnsupportedField("%d is not a prime power" % q)
    if e == 1:
        return field_make("F%d" % p)
    if e == 2:
        # x^2 - c with c a non-square, or x^2 + x + 1 in characteristic 2
        if p == 2:
            return field_make("F2[b]/(b^2+b+1)")
        squares = {x * x % p for x in range(p)}
        c = next(c for c in range(1, p) if c not in squares)
        return field_make("F%d[b]/(b^2-%d)" % (p, c))
    raise UnsupportedField("F_%d is not available" % q)


def all_lines(F):
    """Every line of the plane over a finite field."""
    els = field_elements(F)
    one, zero = F.one, F.zero
    out = []
    for a in els:
        for b in els:
            out.append((a, b, one))
    for a in els:
        out.append((a, one, zero))
    out.append((one, zero, zero))
    return out


def fermat(n):
    """The 3n lines of (x^n - y^n)(x^n - z^n)(y^n - z^n)."""
    F, w = root_of_unity(n)
    one, zero = F.one, F.zero
    lines = []
    for k in range(n):
        c = F.neg((w ** k).raw)
        lines.append((one, c, zero))
        lines.append((one, zero, c))
        lines.append((zero, one, c))
    return LineArrangement(F, lines, name="fermat(%d)" % n)


def concurrent(d, field="Q"):
    F = field_make(field)
    return LineArrangement(F, [(F.one, F.from_int(-k), F.zero) for k in range(d)],
                           name="concurrent(%d)" % d)


def near_pencil(n, field="Q"):
    """n lines through (0:0:1) and the line z = 0."""
    F = field_make(field)
    lines = [(F.one, F.from_int(-k), F.zero) for k in range(n)]
    lines.append((F.zero, F.zero, F.one))
    return LineArrangement(F, lines, name="near_pencil(%d)" % n)


def general(d, seed=0, field="Q", bound=20):
    """d seeded random lines with only double points."""
    F = field_make(field)
    rng = random.Random(seed)
    while True:
        lines = []
        duals = set()
        while len(lines) < d:
            v = [rng.randint(-bound, bound) for _ in range(3)]
            if not any(v):
                continue
            raw = [F.from_int(x) for x in v]
            if all(F.is_zero(x) for x in raw):
                continue
            p = ProjPoint(F, raw)
            if p not in duals:
                duals.add(p)
                lines.append(raw)
        A = LineArrangement(F, lines, name="general(%d)" % d)
        if max(A.incidence().tk, default=2) == 2:
            return A


def load_arrangement(name):
    """A shipped data file, e.g. ``klein`` or ``wiman``."""
    return parse_arrangement_fixture(_data_text(name + ".arr"), name=name)


def generate(kind, *params, seed=0):
    kind = kind.replace("-", "_")
    if kind == "fermat":
        return fermat(*params)
    if kind == "finite_field":
        q = params[0]
        F = finite_field(q)
        return LineArrangement(F, all_lines(F), name="finite_field(%d)" % q)
    if kind in ("klein", "wiman"):
        return load_arrangement(kind)
    if kind == "general":
        return general(params[0], seed, *params[1:])
    if kind == "concurrent":
        return concurrent(*params)
    if kind == "near_pencil":
        return near_pencil(*params)
    raise ArrangementError("unknown arrangement kind %r" % kind)


# --- fixtures ------------------------------------------------------------------

def _split_mult(val, n):
    toks = val.split()
    if len(toks) >= 2 and toks[-2] == "mult":
        try:
            return " ".join(toks[:-2]), int(toks[-1])
        except ValueError:
            raise BadFixture("line %d: bad multiplicity" % n)
    return val, 1


def parse_arrangement_fixture(text, name=None):
    """Read ``field:`` then ``line: a b c [mult m]`` rows.

    Also accepted: ``form: <linear form> [mult m]``, ``define: A = <expr>``
    (a named field constant usable in later rows), ``name:`` and
    ``realizable_over:``."""
    F = None
    names = {}
    lines, mults = [], []
    real = None
    for key, val, n in read_fixture_lines(text):
        try:
            if key == "field":
                F = field_make(val)
                continue
            if key == "name":
                name = val
                continue
            if key == "realizable_over":
                real = val
                continue
            if F is None:
                raise BadFixture("line %d: %s before field header" % (n, key))
            if key == "define":
                sym, _, expr = val.partition("=")
                c = parse_form(expr, F, names)
                if c.degree != 0:
                    raise BadFixture("line %d: %s is not a constant" % (n, sym.strip()))
                names[sym.strip()] = FieldElem(F, c.c[0])
            elif key == "line":
                body, m = _split_mult(val, n)
                toks = body.split()
                if len(toks) != 3:
                    raise BadFixture("line %d: a line needs three coefficients" % n)
                lines.append(HomogeneousForm(F, 1, [F.parse(t) for t in toks]))
                mults.append(m)
            elif key == "form":
                body, m = _split_mult(val, n)
                ell = parse_form(body, F, names)
                if ell.degree != 1:
                    raise BadFixture("line %d: %s is not linear" % (n, body))
                lines.append(ell)
                mults.append(m)
            else:
                raise BadFixture("line %d: unknown key %r" % (n, key))
        except (FieldError, PolyError, ArithmeticError) as exc:
            raise BadFixture("line %d: %s" % (n, exc))
    if F is None:
        raise BadFixture("missing field header")
    try:
        return LineArrangement(F, lines, mults, name=name, realizable_over=real)
    except ArrangementError as exc:
        raise BadFixture(str(exc))


# --- counting ------------------------------------------------------------------

def diagnostics(A):
    """Counting identities and the Melchior / Hirzebruch slacks."""
    inc = A.incidence()
    d, t = inc.d, inc.t
    ks = inc.tk
    rep = {"d": d, "s": inc.s, "tk": dict(sorted(ks.items()))}
    rep["pairs_identity"] = comb(d, 2) == sum(v * comb(k, 2) for k, v in ks.items())
    rep["square_identity"] = d * d - sum(v * k * k for k, v in ks.items()) == \
        d - sum(v * k for k, v in ks.items())
    concurrent = t(d) > 0
    rep["concurrent"] = concurrent
    rep["de_bruijn_erdos"] = None if concurrent else inc.s >= d
    mel = t(2) - 3 - sum(v * (k - 3) for k, v in ks.items() if k > 2)
    rep["melchior_slack"] = mel
    # lines over Q are real; other fields need an explicit declaration
    rep["melchior_applicable"] = ((A.realizable_over or "").upper() == "R"
                                  or A.field.spec.text == "Q")
    rep["melchior_holds"] = mel >= 0 if rep["melchior_applicable"] else None
    hz = Fraction(t(2)) + Fraction(3, 4) * t(3) - d - sum(v * (k - 4) for k, v in ks.items() if k >= 5)
    rep["hirzebruch_slack"] = hz
    rep["hirzebruch_applicable"] = d >= 3 and t(d) == 0 and t(d - 1) == 0
    rep["hirzebruch_holds"] = hz >= 0 if rep["hirzebruch_applicable"] else None
    return rep


def per_line_profile(A):
    """Distinct per-line crossing counts {k: count} with how many lines share each."""
    prof = Counter(tuple(sorted(c.items(), reverse=True)) for c in A.incidence().per_line)
    return sorted(prof.items(), key=lambda kv: (-kv[1], kv[0]))


# --- duality -------------------------------------------------------------------

def dualize(points):
    points = list(points)
    if not points:
        raise ArrangementError("no points")
    return LineArrangement(points[0].field, [p.raw for p in points])


def dual_points(A):
    return [ProjPoint(A.field, ell.c) for ell in A.lines]


# --- H-constants ---------------------------------------------------------------

def mult_of_curve(A, p):
    """Multiplicity at p of C = sum m_i L_i."""
    return sum(A.mults[i] for i in A.lines_through(p))


def h_constant(A, S):
    S = list(S)
    if not S:
        raise EmptySubset("H-constant needs a nonempty subset")
    d = A.degree
    m = max(A.mults)
    return Fraction(d * d - sum(mult_of_curve(A, p) ** 2 for p in S), m * m * len(S))


def singular_points(A):
    return [p for p, k, _ in A.incidence().crossings]


@dataclass
class HConstantReport:
    value: Fraction
    subset: list
    attained: bool
    upper_bound_only: bool = False
    full: Fraction = None


def h_constant_min(A):
    """H(C) for a reduced arrangement, searched over subsets of the
    singular points T.

    For a fixed size k the minimum of H(C, S) over |S| = k is reached by
    the k points of highest multiplicity, so the search over all subsets
    is a scan over prefixes of T sorted by multiplicity."""
    if not A.is_reduced():
        raise ArrangementError("h_constant_min expects a reduced arrangement")
    T = singular_points(A)
    full = h_constant(A, T)
    if full >= -1:
        return HConstantReport(Fraction(-1), [], False, full=full)
    if full >= -4:
        return HConstantReport(full, T, True, full=full)
    d = A.degree
    ranked = sorted(T, key=lambda p: -len(A.lines_through(p)))
    best, best_k, acc = None, 0, 0
    for k, p in enumerate(ranked, 1):
        acc += len(A.lines_through(p)) ** 2
        h = Fraction(d * d - acc, k)
        if best is None or h < best:
            best, best_k = h, k
    return HConstantReport(best, ranked[:best_k], True, full=full)


# --- schemes -------------------------------------------------------------------

def singular_scheme(A, min_mult=2, weights=None):
    """Crossing points on at least ``min_mult`` lines, the point on k lines
    carrying multiplicity weights[k] (default 1)."""
    if min_mult < 2:
        raise ArrangementError("min_mult must be at least 2")
    weights = weights or {}
    pts = [(p, weights.get(k, 1)) for p, k, _ in A.incidence().crossings if k >= min_mult]
    if not pts:
        raise NoSuchPoints("no crossing point lies on %d or more lines" % min_mult)
    return FatPointScheme(A.field, pts)

