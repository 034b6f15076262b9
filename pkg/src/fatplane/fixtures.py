"""Named point configurations and curve systems used throughout the tests,
demos and the command line, plus lookup of the shipped data files."""

import itertools
import os
from fractions import Fraction
from importlib import resources

from . import arrangements as arr
from .exactfield import field_make
from .fatpoints import FatPointScheme, parse_points_fixture, points_scheme
from .nslattice import CurveSystem, near_pencil_system, parse_class, star_system
from .polyring import ProjPoint, parse_form

B3_POINTS = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1),
             (0, 1, 1), (1, 0, 1), (1, 1, 0), (-1, 1, 0), (1, 1, 2)]

# the seven lines through the B3 points, labelled A to G
B3_LINES = {"A": "x+y-z", "B": "z", "C": "x-y", "D": "y", "E": "y-z", "F": "x-z", "G": "x"}


def fermat2_points():
    """The three coordinate vertices and the four points (+-1 : +-1 : 1)."""
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts += [(a, b, 1) for a in (1, -1) for b in (1, -1)]
    return points_scheme("Q", pts)


def fermat_points(n):
    """Triple points of the Fermat arrangement (for n >= 3 these are all
    its crossings: n^2 + 3 of them)."""
    return arr.singular_scheme(arr.fermat(n), min_mult=3)


def fermat_dual_points(n):
    A = arr.fermat(n)
    return FatPointScheme(A.field, arr.dual_points(A))


def char3_points():
    """The 12 points of the plane over F_3 other than (0:0:1)."""
    F = field_make("F3")
    p0 = ProjPoint(F, (0, 0, 1))
    pts = []
    for v in itertools.product(range(3), repeat=3):
        if any(v):
            p = ProjPoint(F, v)
            if p != p0 and p not in pts:
                pts.append(p)
    return FatPointScheme(F, pts)


def char3_form():
    """The product of the nine lines ax + by + z, none through (0:0:1)."""
    F = field_make("F3")
    out = None
    for a in range(3):
        for b in range(3):
            ell = parse_form("%d*x + %d*y + z" % (a, b), F)
            out = ell if out is None else out * ell
    return out


def b3_points():
    return points_scheme("Q", B3_POINTS)


def near_pencil_points(n):
    """n collinear points on z = 0 and the point (0:0:1)."""
    return FatPointScheme("Q", arr.dual_points(arr.near_pencil(n)))


def star_points(d, seed=0):
    """The C(d, 2) crossings of d seeded general lines."""
    return arr.singular_scheme(arr.general(d, seed=seed))


def six_lines_system():
    """Six general lines blown up at their 15 crossings, plus a general
    line L: the setting for D_k = kL - E_1 - ... - E_15."""
    return star_system(6)


def five_line_system():
    """Three lines A1, A2, A3 through p1 and two more lines B1, B2 meeting
    at p8; A_i meets B1 at p_(1+i) and B2 at p_(4+i).  Curves: the five
    proper transforms and E1, E8."""
    names = tuple("E%d" % i for i in range(1, 9))
    curves, labels = [], []
    for i in range(1, 4):
        curves.append(parse_class("L - E1 - E%d - E%d" % (1 + i, 4 + i), names=names))
        labels.append("A%d" % i)
    curves.append(parse_class("L - E2 - E3 - E4 - E8", names=names))
    labels.append("B1")
    curves.append(parse_class("L - E5 - E6 - E7 - E8", names=names))
    labels.append("B2")
    for nm in ("E1", "E8"):
        curves.append(parse_class(nm, names=names))
        labels.append(nm)
    return CurveSystem(curves, labels)


def near_pencil_divisor(n):
    """(3n-1)L - (2n-1)E0 - (n+1)(E1 + ... + En) over near_pencil_system(n)."""
    return [2] * n + [n - 1, 1] + [0] * n


def star_divisor(d):
    """2(H1 + ... + Hd) + (d-2)L over star_system(d)."""
    return [2] * d + [d - 2]


# --- data files ------------------------------------------------------------------

def data_dir():
    return resources.files("fatplane").joinpath("data")


def resolve(path):
    """A fixture path, falling back to the shipped data directory."""
    if os.path.exists(path):
        return path
    cand = data_dir().joinpath(path)
    if cand.is_file():
        return str(cand)
    raise FileNotFoundError("no fixture %r (looked in the working directory and %s)"
                            % (path, data_dir()))


def read_text(path):
    with open(resolve(path)) as fh:
        return fh.read()


def load_points(path):
    return parse_points_fixture(read_text(path))


def builtin_points():
    """name -> builder for the shipped point fixtures."""
    return {
        "fermat2.pts": fermat2_points,
        "fermat3.pts": lambda: fermat_points(3),
        "fermat5-dual.pts": lambda: fermat_dual_points(5),
        "fermat6-dual.pts": lambda: fermat_dual_points(6),
        "char3.pts": char3_points,
        "b3.pts": b3_points,
        "nearpencil4.pts": lambda: near_pencil_points(4),
        "star4.pts": lambda: star_points(4),
        "star6.pts": lambda: star_points(6),
        "klein.pts": lambda: arr.singular_scheme(arr.load_arrangement("klein")),
        "klein-dual.pts": lambda: _dual_of("klein"),
        "wiman-dual.pts": lambda: _dual_of("wiman"),
    }


def _dual_of(name):
    A = arr.load_arrangement(name)
    return FatPointScheme(A.field, arr.dual_points(A))


def builtin_systems():
    from .nslattice import system_fixture
    out = {}
    n = 4
    out["nearpencil4.sys"] = system_fixture(near_pencil_system(n), {"F": near_pencil_divisor(n)})
    for d in (4, 6):
        out["star%d.sys" % d] = system_fixture(star_system(d), {"F": star_divisor(d)})
    S = six_lines_system()
    out["sixlines.sys"] = system_fixture(S, {"D%d" % k: [Fraction(1, 2)] * 6 + [k - 3]
                                             for k in range(3, 8)})
    C = five_line_system()
    out["fiveline.sys"] = system_fixture(C, {
        "F": C.coeffs("2*A1 + 2*A2 + 2*A3 + 2*B1 + 2*B2 + 2*E1 + E8"),
        "Fliteral": C.coeffs("2*A1 + 2*A2 + 2*A3 + 2*B1 + 2*B2 + 2*E1"),
    })
    return out



# --- nef certificates --------------------------------------------------------------

def parse_certificate(text, Z):
    """Lines for ``nef_line_certificate``::

        form: x - y weight 1
        support: 1 1 1          # optional; default every point of Z

    The field is the one of Z; its generator may appear by name."""
    from .fatpoints import BadFixture, read_fixture_lines
    F = Z.field
    lines, weights, support = [], [], []
    for key, val, n in read_fixture_lines(text):
        try:
            if key == "form":
                toks = val.split()
                w = 1
                if len(toks) >= 2 and toks[-2] == "weight":
                    w = int(toks[-1])
                    val = " ".join(toks[:-2])
                lines.append(parse_form(val, F))
                weights.append(w)
            elif key == "support":
                support.append(ProjPoint(F, [F.parse(t) for t in val.split()]))
            elif key == "field":
                if field_make(val) is not F:
                    raise BadFixture("line %d: certificate field %s differs from %s"
                                     % (n, val, F.spec.text))
            else:
                raise BadFixture("line %d: unknown key %r" % (n, key))
        except BadFixture:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise BadFixture("line %d: %s" % (n, exc))
    return lines, weights, (support or None)


def certificate_text(Z, lines, weights, support=None):
    rows = ["field: %s" % Z.field.spec.text]
    for ell, w in zip(lines, weights):
        rows.append("form: %s weight %d" % (ell.to_text().replace(" ", ""), w))
    for p in support or []:
        rows.append("support: %s" % p.to_text())
    return "\n".join(rows) + "\n"


def builtin_certificates():
    Z3 = fermat_points(3)
    F = Z3.field
    lines3 = [parse_form(t, F) for t in ("x - y", "x - w*y", "x + (w+1)*y")]
    supp = [p for p, _ in Z3.points if not any(F.is_zero(v) for v in p.raw)]
    Z2 = fermat2_points()
    lines2 = [parse_form(t, Z2.field) for t in ("x - y", "x + y", "z")]
    return {
        "fermat3.cert": certificate_text(Z3, lines3, [1, 1, 1], supp),
        "fermat2.cert": certificate_text(Z2, lines2, [1, 1, 2]),
    }
