"""The Neron-Severi lattice of the plane blown up at s points.

Classes are written in the basis L, E_1, ..., E_s with L^2 = 1,
E_i^2 = -1 and all mixed products 0.  Nefness is only ever tested against
a declared list of curves, so every "nef" below means nef relative to the
curves the caller supplied.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from ._expr import ExpressionError, evaluate
from .exactfield import field_make
from .exactlinalg import gram_schmidt, inverse, is_negative_definite


class LatticeError(ValueError):
    pass


class SizeMismatch(LatticeError):
    pass


class NotNegativeDefinite(LatticeError):
    pass


class NotNonnegative(LatticeError):
    pass


class PatternMismatch(LatticeError):
    pass


class TooManyCurves(LatticeError):
    pass


QQ = field_make("Q")


class DivisorClass:
    """d L + e_1 E_1 + ... + e_s E_s.

    ``coords`` are the coefficients on the basis, so the usual
    dL - m_1 E_1 - ... has coords (d, -m_1, ...).  ``names`` labels the
    exceptional curves (default E1..Es)."""

    __slots__ = ("coords", "names")

    def __init__(self, coords, names=None):
        self.coords = tuple(Fraction(c) for c in coords)
        if names is None:
            names = default_names(len(self.coords) - 1)
        self.names = tuple(names)
        if len(self.names) != len(self.coords) - 1:
            raise SizeMismatch("%d labels for %d exceptional curves"
                               % (len(self.names), len(self.coords) - 1))

    @property
    def s(self):
        return len(self.coords) - 1

    @property
    def d(self):
        return self.coords[0]

    @property
    def m(self):
        """Multiplicities m_i, so the class is dL - sum m_i E_i."""
        return tuple(-c for c in self.coords[1:])

    @classmethod
    def line(cls, s, names=None):
        return cls((1,) + (0,) * s, names)

    @classmethod
    def exceptional(cls, s, i, names=None):
        """E_i, with i a 0-based position."""
        c = [0] * (s + 1)
        c[i + 1] = 1
        return cls(c, names)

    @classmethod
    def from_mults(cls, d, mults, names=None):
        return cls([d] + [-m for m in mults], names)

    def _same(self, other):
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a DivisorClass")
        if len(other.coords) != len(self.coords):
            raise SizeMismatch("classes on blow-ups at %d and %d points" % (self.s, other.s))

    def __add__(self, other):
        if other == 0:
            return self
        self._same(other)
        return DivisorClass([a + b for a, b in zip(self.coords, other.coords)], self.names)

    __radd__ = __add__

    def __neg__(self):
        return DivisorClass([-a for a in self.coords], self.names)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, DivisorClass):
            return pairing(self, c)
        c = Fraction(c)
        return DivisorClass([a * c for a in self.coords], self.names)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not any(self.coords)
        return isinstance(other, DivisorClass) and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def square(self):
        return pairing(self, self)

    def to_text(self):
        return class_text(self)

    def __str__(self):
        return class_text(self)

    def __repr__(self):
        return "DivisorClass(%s)" % class_text(self)


def default_names(s):
    return tuple("E%d" % (i + 1) for i in range(s))


def _coef_text(c, sym, first):
    if c == 0:
        return ""
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    body = sym if a == 1 else "%s%s" % (a, sym) if a.denominator == 1 else "(%s)%s" % (a, sym)
    return ("%s %s" % (sign, body) if not first else sign + body)


def class_text(D):
    parts = []
    for c, sym in zip(D.coords, ("L",) + D.names):
        t = _coef_text(c, sym, not parts)
        if t:
            parts.append(t)
    return " ".join(parts) if parts else "0"


def pairing(D1, D2):
    D1._same(D2)
    a, b = D1.coords, D2.coords
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


_NUMSYM = re.compile(r"(\d|\))\s*([A-Za-z_(])")


def parse_class(text, s=None, names=None, extra=None):
    """Read text such as ``10L - 4E1 - 4E2 - 3E8`` or ``2*A1 + D/2``.

    ``names`` lists the exceptional labels (default E1..Es); ``extra``
    binds further names (curve classes) usable in the expression."""
    if names is None:
        if s is None:
            raise LatticeError("give s or the exceptional names")
        names = default_names(s)
    names = tuple(names)
    s = len(names)
    env = {"L": DivisorClass.line(s, names)}
    for i, nm in enumerate(names):
        env[nm] = DivisorClass.exceptional(s, i, names)
    env.update(extra or {})
    expr = _NUMSYM.sub(r"\1*\2", text)
    try:
        out = evaluate(expr, env, Fraction)
    except ExpressionError as exc:
        raise LatticeError(str(exc)) from exc
    if isinstance(out, Fraction) and out == 0:
        return DivisorClass((0,) * (s + 1), names)
    if not isinstance(out, DivisorClass):
        raise LatticeError("%r is not a divisor class" % text)
    return out


def canonical_class(s, names=None):
    return DivisorClass([-3] + [1] * s, names)


def riemann_roch(F):
    """(F^2 - K.F)/2 + 1 with K = -3L + E_1 + ... + E_s."""
    K = canonical_class(F.s, F.names)
    return (pairing(F, F) - pairing(K, F)) / 2 + 1


def riemann_roch_count(t, mults):
    """C(t+2, 2) - sum C(m_i + 1, 2), the same number written with binomials."""
    return comb(t + 2, 2) - sum(comb(m + 1, 2) for m in mults)


def nef_relative(D, curves):
    return all(pairing(D, C) >= 0 for C in curves)


# --- curve systems -------------------------------------------------------------

class CurveSystem:
    """Prime curves C_1, ..., C_r given by their classes (and labels),
    optionally with an explicit Gram matrix that overrides the lattice."""

    def __init__(self, curves, labels=None, gram=None):
        self.curves = list(curves)
        n = len(self.curves) if self.curves else len(gram or ())
        if labels is None:
            labels = ["C%d" % (i + 1) for i in range(n)]
        self.labels = list(labels)
        if len(self.labels) != n:
            raise SizeMismatch("one label per curve")
        if gram is not None:
            gram = [[Fraction(x) for x in row] for row in gram]
            r = len(gram)
            if any(len(row) != r for row in gram) or (self.curves and r != len(self.curves)):
                raise SizeMismatch("Gram matrix must be square with one row per curve")
            if any(gram[i][j] != gram[j][i] for i in range(r) for j in range(i)):
                raise LatticeError("Gram matrix is not symmetric")
        self._gram = gram

    def __len__(self):
        if self.curves:
            return len(self.curves)
        return len(self._gram) if self._gram is not None else 0

    @property
    def explicit(self):
        return self._gram is not None

    def gram(self, idx=None):
        idx = list(range(len(self))) if idx is None else list(idx)
        if self._gram is not None:
            return [[self._gram[i][j] for j in idx] for i in idx]
        return [[pairing(self.curves[i], self.curves[j]) for j in idx] for i in idx]

    def pair_with(self, coeffs, k):
        """(sum_i coeffs[i] C_i) . C_k"""
        if self._gram is not None:
            return sum((c * self._gram[i][k] for i, c in enumerate(coeffs) if c), Fraction(0))
        return pairing(self.combine(coeffs), self.curves[k])

    def pair(self, a, b):
        return sum((x * self.pair_with(a, k) for k, x in enumerate(b) if x), Fraction(0))

    def combine(self, coeffs):
        if not self.curves:
            raise LatticeError("this system only has a Gram matrix")
        out = 0
        for c, C in zip(coeffs, self.curves):
            if c:
                out = out + C * c
        if isinstance(out, int):
            return self.curves[0] * 0
        return out

    def coeffs(self, text):
        """Parse ``2*A1 + 2*A2 + E0`` into a coefficient list over the curves."""
        r = len(self)
        env = {}
        for i, nm in enumerate(self.labels):
            v = [Fraction(0)] * r
            v[i] = Fraction(1)
            env[nm] = _Vec(v)
        try:
            out = evaluate(_NUMSYM.sub(r"\1*\2", text), env, Fraction)
        except ExpressionError as exc:
            raise LatticeError(str(exc)) from exc
        if not isinstance(out, _Vec):
            raise LatticeError("%r is not a combination of the curves" % text)
        return list(out.v)

    def text(self, coeffs):
        parts = []
        for c, nm in zip(coeffs, self.labels):
            if not c:
                continue
            a = abs(c)
            body = nm if a == 1 else "%s*%s" % (a, nm)
            if parts:
                parts.append(("- " if c < 0 else "+ ") + body)
            else:
                parts.append(("-" if c < 0 else "") + body)
        return " ".join(parts) if parts else "0"


class _Vec:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = tuple(v)

    def __add__(self, o):
        if isinstance(o, _Vec):
            return _Vec(a + b for a, b in zip(self.v, o.v))
        if o == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _Vec(-a for a in self.v)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, c):
        if isinstance(c, _Vec):
            return NotImplemented
        return _Vec(a * c for a in self.v)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return _Vec(a / Fraction(c) for a in self.v)


def proper_transforms(A, points=None, names=None, with_exceptional=False):
    """The curve system of an arrangement's lines on the blow-up at
    ``points`` (default: all crossing points): L_i - sum of E_p over the
    chosen points p on L_i.  With ``with_exceptional`` the curves E_p are
    appended."""
    if points is None:
        points = [p for p, _, _ in A.incidence().crossings]
    points = list(points)
    s = len(points)
    names = tuple(names) if names else default_names(s)
    curves, labels = [], []
    F = A.field
    for i, ell in enumerate(A.lines):
        c = [1] + [0] * s
        for j, p in enumerate(points):
            if F.is_zero(ell.eval_raw(p.raw)):
                c[j + 1] = -1
        curves.append(DivisorClass(c, names))
        labels.append("H%d" % (i + 1))
    if with_exceptional:
        for j in range(s):
            curves.append(DivisorClass.exceptional(s, j, names))
            labels.append(names[j])
    return CurveSystem(curves, labels)


def is_negdef_system(C):
    """Whether the Gram matrix of the system is negative definite.

    On an s-point blow-up the lattice has signature (1, s), so more than s
    curves can never be negative definite; asking raises TooManyCurves."""
    if not C.explicit and C.curves and len(C.curves) > C.curves[0].s:
        raise TooManyCurves("%d curves on a blow-up at %d points are linearly dependent"
                            " in a way no negative definite system allows"
                            % (len(C.curves), C.curves[0].s))
    return is_negative_definite(C.gram()) if len(C) else True


def dual_basis(C, idx=None):
    """Rows N_i' = sum_j a_ij N_j with N_i'.N_j = 0 for j != i and a_ii = 1,
    so that N_i'.N_i = (N_i')^2.  Returns (rows, squares)."""
    G = C.gram(idx) if isinstance(C, CurveSystem) else [[Fraction(x) for x in r] for r in C]
    if not is_negative_definite(G):
        raise NotNegativeDefinite("the system is not negative definite")
    Ginv = inverse(QQ, G)
    rows, squares = [], []
    for i, row in enumerate(Ginv):
        rows.append([x / row[i] for x in row])
        squares.append(1 / row[i])
    return rows, squares


def denominator_bound(C, idx=None):
    G = C.gram(idx)
    out = 1
    for i in range(len(G)):
        if G[i][i] >= 0:
            raise LatticeError("curve %s has nonnegative self-intersection" % C.labels[i])
        out *= -G[i][i]
    return int(out)


# --- Zariski decomposition -----------------------------------------------------

@dataclass
class ZariskiDecomposition:
    system: CurveSystem
    P: list
    N: list
    denominator: int
    steps: list

    @property
    def support(self):
        return [i for i, c in enumerate(self.N) if c]

    def P_class(self):
        return self.system.combine(self.P)

    def N_class(self):
        return self.system.combine(self.N)

    def summary(self):
        S = self.system
        return "P = %s ; N = %s" % (S.text(self.P), S.text(self.N))


def _denominator(values):
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def zariski_decompose(C, D):
    """Zariski decomposition of D = sum D_i C_i (D_i >= 0) relative to the
    curves of C.

    Start from P = 0, N = D.  While the support of N is not negative
    definite, the Gram-Schmidt pass finds a nonnegative combination S of
    support curves with S^2 >= 0; S meets every declared curve
    nonnegatively, and the largest multiple c S with c S <= N moves to P.
    Once the support is negative definite, each support curve N_k with
    P.N_k > 0 trades t N_k' (its dual-basis element) from N to P, t as
    large as keeps N >= 0 and P.N_k >= 0.  Each pass either shrinks the
    support or zeroes one of the P.N_k."""
    r = len(C)
    D = [Fraction(x) for x in (C.coeffs(D) if isinstance(D, str) else D)]
    if len(D) != r:
        raise SizeMismatch("need one coefficient per curve")
    if any(x < 0 for x in D):
        raise NotNonnegative("coefficients must be nonnegative")
    P = [Fraction(0)] * r
    N = list(D)
    steps = []
    while True:
        supp = [i for i in range(r) if N[i]]
        if not supp:
            break
        G = C.gram(supp)
        coeffs, squares, fail = gram_schmidt(G)
        if fail is not None:
            S = [Fraction(0)] * r
            for a, i in zip(coeffs[fail], supp):
                S[i] = a
            c = min(N[i] / S[i] for i in supp if S[i] > 0)
            for i in supp:
                P[i] += c * S[i]
                N[i] -= c * S[i]
            steps.append(("nef", c, S))
            continue
        rows, sq = dual_basis(G)
        moved = False
        for kk, k in enumerate(supp):
            pk = C.pair_with(P, k)
            if pk <= 0:
                continue
            a = rows[kk]
            t = pk / abs(sq[kk])
            for jj, j in enumerate(supp):
                if a[jj] > 0:
                    t = min(t, N[j] / a[jj])
            for jj, j in enumerate(supp):
                P[j] += t * a[jj]
                N[j] -= t * a[jj]
            steps.append(("transfer", t, k))
            moved = True
            break
        if not moved:
            break
    for i in range(r):
        if N[i] < 0 or P[i] < 0:
            raise LatticeError("negative coefficient %s" % C.labels[i])  # pragma: no cover
    return ZariskiDecomposition(C, P, N, _denominator(P + N), steps)


def check_decomposition(C, D, Z):
    """The defining properties, as a dict of booleans."""
    D = [Fraction(x) for x in D]
    supp = Z.support
    out = {
        "sum": all(p + n == d for p, n, d in zip(Z.P, Z.N, D)),
        "nonnegative": all(x >= 0 for x in Z.P + Z.N),
        "P_nef": all(C.pair_with(Z.P, k) >= 0 for k in range(len(C))),
        "P_orthogonal": all(C.pair_with(Z.P, k) == 0 for k in supp),
        "N_negdef": (not supp) or is_negative_definite(C.gram(supp)),
    }
    out["PN_zero"] = C.pair(Z.P, Z.N) == 0
    return out


def waldschmidt_zariski(C, F, pattern=None):
    """alpha-hat = a/b when the negative part of F is aL - b(E_i, i in
    pattern) with P != 0 (default pattern: every exceptional curve)."""
    Z = zariski_decompose(C, F)
    if not any(Z.P):
        raise PatternMismatch("positive part is zero")
    Ncl = Z.N_class()
    s = Ncl.s
    pattern = set(range(s)) if pattern is None else set(pattern)
    a = Ncl.d
    ms = Ncl.m
    b = {ms[i] for i in pattern}
    if len(b) != 1 or any(ms[i] for i in range(s) if i not in pattern):
        raise PatternMismatch("N = %s is not of the form aL - b(sum E_i)" % Ncl)
    b = b.pop()
    if a <= 0 or b <= 0:
        raise PatternMismatch("N = %s has a nonpositive coefficient" % Ncl)
    return a / b, Z


# --- standard systems ----------------------------------------------------------

def near_pencil_system(n):
    """n collinear points p_1..p_n plus p_0 off their line: the lines
    A_i = L - E0 - Ei, the line H = L - E1 - ... - En, and E0..En."""
    names = tuple("E%d" % i for i in range(n + 1))
    s = n + 1
    curves, labels = [], []
    for i in range(1, n + 1):
        curves.append(parse_class("L - E0 - E%d" % i, names=names))
        labels.append("A%d" % i)
    curves.append(DivisorClass([1, 0] + [-1] * n, names))
    labels.append("H")
    for i in range(s):
        curves.append(DivisorClass.exceptional(s, i, names))
        labels.append(names[i])
    return CurveSystem(curves, labels)


def star_system(d):
    """d general lines blown up at their C(d,2) crossings, with a general
    line L as the last curve."""
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    s = len(pairs)
    curves, labels = [], []
    for i in range(d):
        c = [1] + [-1 if i in pr else 0 for pr in pairs]
        curves.append(DivisorClass(c))
        labels.append("H%d" % (i + 1))
    curves.append(DivisorClass.line(s))
    labels.append("L")
    return CurveSystem(curves, labels)


# --- fixtures ------------------------------------------------------------------

def parse_system_fixture(text):
    """Curve systems as text::

        exceptional: E0 E1 E2        # labels (or  points: 3  for E1..E3)
        curve: A1 = L - E0 - E1
        gram: -2 1                   # optional rows, one per curve
        divisor: F = 2*A1 + E0       # named combinations of the curves

    Returns (system, {name: coefficient list})."""
    from .fatpoints import BadFixture, read_fixture_lines
    names = None
    curves, labels, gram, divs = [], [], [], []
    for key, val, n in read_fixture_lines(text):
        try:
            if key == "exceptional":
                names = tuple(val.split())
            elif key == "points":
                names = default_names(int(val))
            elif key == "curve":
                lab, _, expr = val.partition("=")
                if names is None:
                    raise BadFixture("line %d: curve before the exceptional labels" % n)
                curves.append(parse_class(expr, names=names))
                labels.append(lab.strip())
            elif key == "label":
                labels.append(val.strip())
            elif key == "gram":
                gram.append([Fraction(x) for x in val.split()])
            elif key == "divisor":
                lab, _, expr = val.partition("=")
                divs.append((lab.strip(), expr.strip(), n))
            else:
                raise BadFixture("line %d: unknown key %r" % (n, key))
        except BadFixture:
            raise
        except (LatticeError, ValueError) as exc:
            raise BadFixture("line %d: %s" % (n, exc))
    try:
        C = CurveSystem(curves, labels, gram or None)
    except LatticeError as exc:
        raise BadFixture(str(exc))
    out = {}
    for lab, expr, n in divs:
        try:
            out[lab] = C.coeffs(expr)
        except LatticeError as exc:
            raise BadFixture("line %d: %s" % (n, exc))
    return C, out


def system_fixture(C, divisors=None):
    rows = []
    if C.curves:
        rows.append("exceptional: " + " ".join(C.curves[0].names))
        for lab, cl in zip(C.labels, C.curves):
            rows.append("curve: %s = %s" % (lab, cl))
    else:
        for lab in C.labels:
            rows.append("label: %s" % lab)
    if C.explicit:
        for r in C.gram():
            rows.append("gram: " + " ".join(str(x) for x in r))
    for lab, v in (divisors or {}).items():
        rows.append("divisor: %s = %s" % (lab, C.text(v)))
    return "\n".join(rows) + "\n"


def class_coefficients(C, D):
    """Coefficients c with sum c_i C_i = D (D a class or class text), when
    the curve classes determine them; raises if not unique or negative."""
    from .exactlinalg import NoSolution, kernel_basis, solve
    if isinstance(D, str):
        D = parse_class(D, names=C.curves[0].names)
    cols = [c.coords for c in C.curves]
    A = [[cols[j][i] for j in range(len(cols))] for i in range(len(D.coords))]
    if kernel_basis(A, QQ):
        raise LatticeError("the curve classes are dependent; give D as a combination of curves")
    try:
        x = solve(A, list(D.coords), QQ)
    except NoSolution:
        raise LatticeError("%s is not a combination of the curves" % D)
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        raise NotNonnegative("%s needs negative coefficients" % D)
    return x
