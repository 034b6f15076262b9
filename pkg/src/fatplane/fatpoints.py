"""Fat point schemes Z = m_1 p_1 + ... + m_s p_s in the projective plane.

Graded pieces of I(Z), of the symbolic powers I(mZ) and of the ordinary
powers I(Z)^r, together with the numerical invariants built from them:
alpha, regularity, omega, satdeg, containment verdicts, Waldschmidt and
resurgence bounds.  Everything is exact.
"""

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .exactfield import FieldElem, RationalField, field_make
from .exactlinalg import Echelon, ExactMatrix, kernel_basis
from .polyring import (HomogeneousForm, ProjPoint, local_rows, monomials, mul_rows,
                       ncoeffs, parse_form)


class FatPointError(ValueError):
    pass


class BadFixture(FatPointError):
    pass


class PreconditionViolated(FatPointError):
    pass


class NonStabilizing(FatPointError):
    pass


class FatPointScheme:
    """Distinct points with positive multiplicities."""

    def __init__(self, field, points):
        self.field = field_make(field)
        pts = []
        seen = set()
        for item in points:
            if isinstance(item, ProjPoint):
                p, m = item, 1
            else:
                p, m = item
                if not isinstance(p, ProjPoint):
                    p = ProjPoint(self.field, p)
            if p.field is not self.field:
                raise FatPointError("point %s is not over %s" % (p, self.field.spec.text))
            if m < 1:
                raise FatPointError("multiplicities must be positive")
            if p in seen:
                raise FatPointError("repeated point %s" % p)
            seen.add(p)
            pts.append((p, int(m)))
        self.points = tuple(pts)
        self.degree = sum(comb(m + 1, 2) for _, m in pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, FatPointScheme) and other.field is self.field and \
            set(other.points) == set(self.points)

    def __hash__(self):
        return hash(frozenset((p.raw, m) for p, m in self.points))

    def __repr__(self):
        return "FatPointScheme(%d points, deg %d, over %s)" % (len(self.points), self.degree,
                                                               self.field.spec.text)

    @property
    def support(self):
        return [p for p, _ in self.points]

    @property
    def multiplicities(self):
        return [m for _, m in self.points]

    def is_reduced(self):
        return all(m == 1 for _, m in self.points)

    def scaled(self, k):
        return FatPointScheme(self.field, [(p, k * m) for p, m in self.points])

    def reduced(self):
        return FatPointScheme(self.field, [(p, 1) for p, _ in self.points])

    def __add__(self, other):
        if other.field is not self.field:
            raise FatPointError("schemes over different fields")
        mult = {}
        order = []
        for p, m in list(self.points) + list(other.points):
            if p not in mult:
                order.append(p)
                mult[p] = 0
            mult[p] += m
        return FatPointScheme(self.field, [(p, mult[p]) for p in order])

    def to_fixture(self):
        lines = ["field: %s" % self.field.spec.text]
        for p, m in self.points:
            lines.append("point: %s mult %d" % (p.to_text(), m))
        return "\n".join(lines) + "\n"


def read_fixture_lines(text):
    """Split a fixture into (key, value) pairs, skipping comments."""
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise BadFixture("line %d: expected 'key: value', got %r" % (n, raw))
        k, v = line.split(":", 1)
        out.append((k.strip().lower(), v.strip(), n))
    return out


def parse_points_fixture(text):
    """Read the ``field:`` / ``point: x y z mult m`` format."""
    items = read_fixture_lines(text)
    field = None
    pts = []
    for key, val, n in items:
        if key == "field":
            field = field_make(val)
        elif key == "point":
            if field is None:
                raise BadFixture("line %d: point before field header" % n)
            toks = val.split()
            m = 1
            if "mult" in toks:
                i = toks.index("mult")
                try:
                    m = int(toks[i + 1])
                except (IndexError, ValueError):
                    raise BadFixture("line %d: bad multiplicity" % n)
                toks = toks[:i]
            if len(toks) != 3:
                raise BadFixture("line %d: a point needs three coordinates" % n)
            try:
                pts.append((ProjPoint(field, [field.parse(t) for t in toks]), m))
            except (ValueError, ArithmeticError) as exc:
                raise BadFixture("line %d: %s" % (n, exc))
    if field is None:
        raise BadFixture("missing field header")
    if not pts:
        raise BadFixture("no points")
    try:
        return FatPointScheme(field, pts)
    except FatPointError as exc:
        raise BadFixture(str(exc))


# --- graded pieces -----------------------------------------------------------

class GradedSubspace:
    """A subspace of the degree-t forms, stored as canonical reduced
    echelon rows."""

    def __init__(self, field, degree, basis):
        self.field = field_make(field)
        self.degree = degree
        self.basis = [list(r) for r in basis]
        self._ech = None

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def forms(self):
        return [HomogeneousForm(self.field, self.degree, r) for r in self.basis]

    def echelon(self):
        if self._ech is None:
            e = Echelon(self.field, ncoeffs(self.degree))
            for r in self.basis:
                e.add(r)
            self._ech = e
        return self._ech

    def contains(self, f):
        row = f.c if isinstance(f, HomogeneousForm) else f
        if isinstance(f, HomogeneousForm) and f.degree != self.degree:
            return f.is_zero()
        return self.echelon().contains(row)

    def __le__(self, other):
        return all(other.contains(r) for r in self.basis)

    def __eq__(self, other):
        return isinstance(other, GradedSubspace) and self.degree == other.degree and \
            self.basis == other.basis

    def __repr__(self):
        return "GradedSubspace(degree %d, dim %d)" % (self.degree, self.dim)


def conditions_matrix(Z, t):
    """The sum of C(m_i+1, 2) linear conditions for a degree-t form to lie
    in I(Z).  For multiplicity m at p: move p to the origin of its chart
    and ask all coefficients of total degree < m to vanish."""
    rows = []
    for p, m in Z.points:
        rows.extend(local_rows(Z.field, p, t, [(i, s - i) for s in range(m) for i in range(s + 1)]))
    return ExactMatrix.raw(Z.field, rows, ncoeffs(t))


@lru_cache(maxsize=4096)
def ideal_piece(Z, t):
    """[I(Z)]_t."""
    if t < 0:
        return GradedSubspace(Z.field, 0, [])
    A = conditions_matrix(Z, t)
    if A.nrows == 0:
        F = Z.field
        basis = [[F.one if i == j else F.zero for j in range(ncoeffs(t))] for i in range(ncoeffs(t))]
        return GradedSubspace(F, t, basis)
    return GradedSubspace(Z.field, t, kernel_basis(A))


def ideal_dim(Z, t):
    return ideal_piece(Z, t).dim


def virtual_dim(Z, t):
    return comb(t + 2, 2) - Z.degree


def alpha(Z):
    """Least t with [I(Z)]_t != 0.

    The dimension is nondecreasing in t (multiply by a linear form), so the
    least such t is located by bisection between 0 and the first t with
    C(t+2, 2) > deg Z, where a nonzero form must exist."""
    if not Z.points:
        raise FatPointError("alpha of the empty scheme")
    hi = 0
    while comb(hi + 2, 2) <= Z.degree:
        hi += 1
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if ideal_dim(Z, mid) > 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def alpha_symbolic(Z, m):
    return alpha(Z.scaled(m))


@lru_cache(maxsize=1024)
def regularity(Z):
    """1 + least t with dim [I(Z)]_t = C(t+2, 2) - deg Z."""
    t = 0
    while comb(t + 2, 2) < Z.degree:
        t += 1
    while ideal_dim(Z, t) != virtual_dim(Z, t):
        t += 1
    return t + 1


def linear_multiples(Z, t):
    """Echelon of [R]_1 * [I(Z)]_(t-1) inside degree t."""
    F = Z.field
    e = Echelon(F, ncoeffs(t))
    if t >= 1:
        lin = [[F.one, F.zero, F.zero], [F.zero, F.one, F.zero], [F.zero, F.zero, F.one]]
        for b in ideal_piece(Z, t - 1).basis:
            for ell in lin:
                e.add(mul_rows(ell, 1, b, t - 1, F))
    return e


def new_generator_count(Z, t):
    """dim [I]_t - dim [R]_1 [I]_(t-1): the number of minimal generators
    of degree t."""
    return ideal_dim(Z, t) - linear_multiples(Z, t).rank


def omega(Z):
    """Largest degree of a minimal homogeneous generator.  Generators live
    in degrees <= reg(I) (Dubreil), which caps the search."""
    reg = regularity(Z)
    a = alpha(Z)
    for t in range(reg, a - 1, -1):
        if new_generator_count(Z, t) > 0:
            return t
    return a


@lru_cache(maxsize=256)
def generators(Z):
    """Minimal generators degree by degree: {t: rows}, for alpha <= t <= omega.

    In degree t they complete a basis of [R]_1 [I]_(t-1) to one of [I]_t;
    over Q the rows are primitive integer vectors."""
    out = {}
    for t in range(alpha(Z), omega(Z) + 1):
        e = linear_multiples(Z, t)
        rows = []
        for b in ideal_piece(Z, t).basis:
            if e.add(b):
                rows.append(_internal_row(Z.field, b))
        if rows:
            out[t] = rows
    return out


def _internal_row(field, row):
    if isinstance(field, RationalField):
        from .exactlinalg import rational_row_to_ints
        return rational_row_to_ints(row)
    return list(row)


def _echelon_rows(e):
    """The stored rows of an Echelon, in a form accepted by mul_rows."""
    out = []
    for c in e.pivots:
        r = e.rows[c]
        out.append(r[0] if isinstance(r, tuple) else r)
    return out


_POWER_CACHE = {}


def _power_echelon(Z, r, d):
    """Echelon of [I(Z)^r]_d and whether it equals [I(rZ)]_d.

    I(Z) is generated by generators(Z), so [I^r]_d is spanned by g * h with
    g a generator of degree a and h in [I^(r-1)]_(d-a).  Products are added
    until the rank reaches dim [I(rZ)]_d, at which point the two pieces
    coincide (ordinary powers sit inside symbolic ones)."""
    key = (Z, r, d)
    if key in _POWER_CACHE:
        return _POWER_CACHE[key]
    F = Z.field
    sym = ideal_piece(Z.scaled(r), d)
    if r == 1:
        res = (sym.echelon(), True)
        _POWER_CACHE[key] = res
        return res
    e = Echelon(F, ncoeffs(d))
    target = sym.dim
    mulfield = None if isinstance(F, RationalField) else F
    a0 = alpha(Z)
    if target:
        for a, gens in sorted(generators(Z).items()):
            if d - a < (r - 1) * a0:
                continue
            sub, _ = _power_echelon(Z, r - 1, d - a)
            hrows = _echelon_rows(sub)
            for g in gens:
                for h in hrows:
                    e.add(mul_rows(g, a, h, d - a, mulfield))
                    if e.rank == target:
                        break
                if e.rank == target:
                    break
            if e.rank == target:
                break
    res = (e, e.rank == target)
    _POWER_CACHE[key] = res
    return res


def clear_caches():
    _POWER_CACHE.clear()
    ideal_piece.cache_clear()
    regularity.cache_clear()
    generators.cache_clear()


def power_piece(Z, r, d):
    """[I(Z)^r]_d as a canonical GradedSubspace."""
    if r < 1:
        raise PreconditionViolated("r must be at least 1")
    e, equal = _power_echelon(Z, r, d)
    if equal:
        return ideal_piece(Z.scaled(r), d)
    return GradedSubspace(Z.field, d, e.rref())


def power_dim(Z, r, d):
    return _power_echelon(Z, r, d)[0].rank


def satdeg(Z, r):
    """Least t with [I^r]_j = [I^(r)]_j for all j >= t.

    Agreement holds from r*reg(I) on (r reg(I) >= reg(I^r) >= satdeg(I^r)),
    so degrees are compared from r*reg(I) downward; the first disagreement
    met is the last one overall."""
    if r < 1:
        raise PreconditionViolated("r must be at least 1")
    top = r * regularity(Z)
    low = alpha(Z.scaled(r))
    for d in range(top, low - 1, -1):
        if not _power_echelon(Z, r, d)[1]:
            return d + 1
    return 0


@dataclass
class ContainmentVerdict:
    contained: bool
    m: int
    r: int
    witness_degree: int = None
    witness_form: HomogeneousForm = None
    degrees_checked: tuple = ()
    reason: str = ""

    def summary(self):
        if self.contained:
            return "CONTAINED"
        return "NOT CONTAINED, witness degree %d" % self.witness_degree


def containment(Z, m, r):
    """Decide whether I(mZ) is contained in I(Z)^r.

    For m < r the alpha comparison settles it: alpha(I(mZ)) <= m alpha(I)
    < r alpha(I) = alpha(I^r).  For m >= r only degrees below r*reg(I) need
    checking, since from there on [I^r]_d = [I(rZ)]_d contains [I(mZ)]_d."""
    if m < 1 or r < 1:
        raise PreconditionViolated("m and r must be positive")
    if m < r:
        a = alpha_symbolic(Z, m)
        w = ideal_piece(Z.scaled(m), a).forms()[0]
        return ContainmentVerdict(False, m, r, a, w, (a, a),
                                  "alpha(I(mZ)) = %d < %d = alpha(I^r)" % (a, r * alpha(Z)))
    start = alpha_symbolic(Z, m)
    stop = r * regularity(Z) - 1
    mZ = Z.scaled(m)
    for d in range(start, stop + 1):
        e, equal = _power_echelon(Z, r, d)
        if equal:
            continue
        for row in ideal_piece(mZ, d).basis:
            if not e.contains(row):
                return ContainmentVerdict(False, m, r, d, HomogeneousForm(Z.field, d, row),
                                          (start, d), "element of [I(mZ)]_%d outside [I^r]_%d" % (d, d))
    return ContainmentVerdict(True, m, r, None, None, (start, stop),
                              "all degrees below r*reg checked")


def in_power(Z, r, f):
    """Is the form f in I(Z)^r?"""
    if f.is_zero():
        return True
    return _power_echelon(Z, r, f.degree)[0].contains(f.c)


def hh_containment(Z, r):
    """Check I(2rZ) in M^r I(Z)^r degree by degree (M = (x, y, z)).

    [M^r I^r]_d is spanned by degree-r monomials times [I^r]_(d-r).  Degrees
    run from alpha(I(2rZ)) up to the point where [M^r I^r]_d = [I^r]_d,
    which holds once d - r >= r*omega(I)."""
    F = Z.field
    start = alpha_symbolic(Z, 2 * r)
    stop = max(r * regularity(Z), r + r * omega(Z))
    big = Z.scaled(2 * r)
    mulfield = None if isinstance(F, RationalField) else F
    for d in range(start, stop + 1):
        sub, _ = _power_echelon(Z, r, d - r)
        e = Echelon(F, ncoeffs(d))
        for mono in monomials(r):
            mrow = [0] * ncoeffs(r) if mulfield is None else [F.zero] * ncoeffs(r)
            mrow[monomials(r).index(mono)] = 1 if mulfield is None else F.one
            for h in _echelon_rows(sub):
                e.add(mul_rows(mrow, r, h, d - r, mulfield))
        for row in ideal_piece(big, d).basis:
            if not e.contains(row):
                return ContainmentVerdict(False, 2 * r, r, d, HomogeneousForm(F, d, row), (start, d),
                                          "outside M^r I^r")
    return ContainmentVerdict(True, 2 * r, r, None, None, (start, stop), "checked")


# --- Waldschmidt and resurgence ----------------------------------------------

@dataclass
class NefCertificate:
    """A nef divisor H = sum w_j (proper transform of line j) on the blow-up
    of a subset of the points, giving alpha-hat >= bound."""
    bound: Fraction
    valid: bool
    a: int
    b: dict
    detail: str = ""


def nef_line_certificate(Z, lines, weights=None, support=None):
    """Lower bound for alpha-hat(I(Z)) from a nef combination of lines.

    Blow up the points listed in ``support`` (default: all of Z).  With
    H = sum_j w_j (L - sum of E_p over support points p on line j), so
    H = aL - sum b_p E_p, nefness is checked on every line with w_j > 0
    (H is effective, so meeting its own components nonnegatively suffices).
    A curve of degree t with multiplicity >= m m_p at each p then meets H
    nonnegatively, giving t >= m * sum m_p b_p / a."""
    F = Z.field
    if weights is None:
        weights = [1] * len(lines)
    support = list(support) if support is not None else Z.support
    mult = dict((p, m) for p, m in Z.points)
    for p in support:
        if p not in mult:
            raise FatPointError("support point %s is not in Z" % p)
    on = []
    for ell in lines:
        on.append(frozenset(i for i, p in enumerate(support) if F.is_zero(ell.eval_raw(p.raw))))
    a = sum(weights)
    b = {i: sum(w for w, s in zip(weights, on) if i in s) for i in range(len(support))}
    valid = True
    for j, (w, s) in enumerate(zip(weights, on)):
        if w <= 0:
            continue
        # H . line_j = a - sum_{p in line_j} b_p
        if a - sum(b[i] for i in s) < 0:
            valid = False
    bound = Fraction(sum(mult[support[i]] * b[i] for i in b), a)
    return NefCertificate(bound, valid, a, b, "H = %dL - sum b_p E_p" % a)


@dataclass
class WaldschmidtBounds:
    lower: Fraction
    upper: Fraction
    table: list
    certificates: list = dc_field(default_factory=list)

    @property
    def exact(self):
        return self.lower == self.upper


def waldschmidt_bounds(Z, m_max, certificates=()):
    """lower = max alpha(I(mZ))/(m+1), upper = min alpha(I(mZ))/m over
    m <= m_max.  The lower bound also uses the largest multiplicity and
    any valid nef certificates."""
    if m_max < 1:
        raise PreconditionViolated("m_max must be at least 1")
    table = [(m, alpha_symbolic(Z, m)) for m in range(1, m_max + 1)]
    lower = max(Fraction(a, m + 1) for m, a in table)
    # a form vanishing to order m*k at one point has degree at least m*k
    lower = max(lower, Fraction(max(Z.multiplicities)))
    upper = min(Fraction(a, m) for m, a in table)
    used = []
    for c in certificates:
        if c.valid and c.bound > lower:
            lower = c.bound
            used.append(c)
    if lower > upper:
        raise AssertionError("lower bound %s exceeds upper bound %s" % (lower, upper))
    return WaldschmidtBounds(lower, upper, table, used)


@dataclass
class ResurgenceReport:
    alpha: int
    omega: int
    reg: int
    waldschmidt: WaldschmidtBounds
    rho_lower: Fraction
    rho_upper: Fraction
    rhohat_lower: Fraction
    rhohat_upper: Fraction
    failures: list
    labels: dict


def resurgence_bounds(Z, m_max, pairs=None, certificates=()):
    """Certified intervals for rho(I) and rho-hat(I).

    ``pairs`` lists (m, r) to test for containment failures (default: all
    r < m < 2r with r <= 2 and m <= m_max)."""
    wb = waldschmidt_bounds(Z, m_max, certificates)
    a, w, reg = alpha(Z), omega(Z), regularity(Z)
    if pairs is None:
        pairs = [(m, r) for r in (2,) for m in range(r + 1, 2 * r) if m <= max(m_max, 3)]
    failures = []
    for m, r in pairs:
        v = containment(Z, m, r)
        if not v.contained:
            failures.append((m, r, v.witness_degree))
    rl = Fraction(a) / wb.upper
    label_rl = "alpha/alpha-hat upper"
    for m, r, _ in failures:
        if Fraction(m, r) > rl:
            rl = Fraction(m, r)
            label_rl = "containment failure (m, r) = (%d, %d)" % (m, r)
    labels = {
        "rho_lower": label_rl,
        "rho_upper": "reg/alpha-hat lower",
        "rhohat_lower": "alpha/alpha-hat upper",
        "rhohat_upper": "omega/alpha-hat lower",
    }
    return ResurgenceReport(a, w, reg, wb, rl, Fraction(reg) / wb.lower,
                            Fraction(a) / wb.upper, Fraction(w) / wb.lower, failures, labels)


def chudnovsky_check(Z, m_max, certificates=()):
    """'CertifiedHolds' when (alpha + 1)/2 <= certified lower bound for
    alpha-hat, else 'Undetermined'."""
    wb = waldschmidt_bounds(Z, m_max, certificates)
    if Fraction(alpha(Z) + 1, 2) <= wb.lower:
        return "CertifiedHolds"
    return "Undetermined"


# --- intersection multiplicity -------------------------------------------------

def _quotient_dim(F, G, p, m, t):
    field = F.field
    n = ncoeffs(t)
    e = Echelon(field, n)
    for row in ideal_piece(FatPointScheme(field, [(p, m)]), t).basis:
        e.add(row)
    for H in (F, G):
        if t >= H.degree:
            k = t - H.degree
            for i in range(ncoeffs(k)):
                mono = [field.zero] * ncoeffs(k)
                mono[i] = field.one
                e.add(mul_rows(mono, k, H.c, H.degree, field))
                if e.full():
                    return 0
    return n - e.rank


def _local_length(F, G, p, m):
    # dim [R/J]_t is eventually constant; stop after three equal values past m
    t = m
    vals = []
    cap = m + F.degree + G.degree + 12
    while t <= cap:
        vals.append(_quotient_dim(F, G, p, m, t))
        if len(vals) >= 3 and vals[-1] == vals[-2] == vals[-3] and t >= m + max(F.degree, G.degree):
            return vals[-1]
        t += 1
    raise NonStabilizing("dim [R/J]_t did not settle")


def intersection_multiplicity(F, G, p):
    """I_p(F, G) as dim [R/J]_t for t >> 0 with J = I(p)^m + (F, G) and
    m = deg F deg G.  A common component through p shows up as a value that
    still moves when m is raised by one."""
    if F.is_zero() or G.is_zero():
        raise PreconditionViolated("forms must be nonzero")
    m = F.degree * G.degree
    v = _local_length(F, G, p, m)
    if _local_length(F, G, p, m + 1) != v:
        raise NonStabilizing("F and G share a component through %s" % p)
    return v


# --- SHGH-type predictors -------------------------------------------------------

def shgh_expected(s, m, t):
    return max(0, comb(t + 2, 2) - s * comb(m + 1, 2))


def shgh_expected_scheme(Z, t):
    return max(0, virtual_dim(Z, t))


def shgh_least_m(s):
    """Least m with C(m(k+1)+2, 2) > s C(m+1, 2), k = sqrt(s), for a
    perfect square s > 36."""
    k = isqrt(s)
    if k * k != s or s <= 36:
        raise PreconditionViolated("s must be a perfect square larger than 36")
    m = 1
    while comb(m * (k + 1) + 2, 2) <= s * comb(m + 1, 2):
        m += 1
    return m


def pell_least_m(s, t, r):
    """Least m >= 1 with m^2 - (s r - 3 t) m + 2 > 0, beyond the root
    interval of that quadratic, for a Pell solution t^2 - s r^2 = 1."""
    k = isqrt(s)
    if t * t - s * r * r != 1 or s <= 49 or k * k == s:
        raise PreconditionViolated("need t^2 - s r^2 = 1 with s > 49 not a square")
    c = s * r - 3 * t
    # the quadratic is negative between its roots; find the first m past them
    m = max(1, c // 2)
    while m * m - c * m + 2 <= 0:
        m += 1
    return m


# --- generic configurations ----------------------------------------------------

def random_points(field, n, seed=0, bound=50):
    """Seeded pairwise distinct random points with integer coordinates."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = random_point(field, rng, bound)
        if p not in out:
            out.append(p)
    return out


def random_point(field, rng, bound=50):
    field = field_make(field)
    while True:
        v = [rng.randint(-bound, bound) for _ in range(3)]
        if any(v):
            return ProjPoint(field, [field.from_int(x) for x in v])


def points_scheme(field, coords, mult=1):
    field = field_make(field)
    return FatPointScheme(field, [(ProjPoint(field, c), mult) for c in coords])


def form_from_text(text, Z):
    return parse_form(text, Z.field)
