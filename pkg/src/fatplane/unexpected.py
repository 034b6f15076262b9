"""Splitting types of dual line arrangements and unexpected curves.

For a reduced point set Z let F be the product of the lines dual to the
points.  Restricting the syzygies of (F_x, F_y, F_z) to a general line
gives two degrees a <= b with a + b = deg F - 1.  Together with t_Z they
decide in which degrees t a curve through Z with a point of
multiplicity t - 1 at a general point exists although a naive count says
it should not.
"""

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from .exactlinalg import Echelon, ExactMatrix, kernel_basis
from .fatpoints import FatPointScheme, ideal_dim, ideal_piece, random_point, regularity
from .polyring import (BinaryForm, CharDividesDegree, HomogeneousForm, ProjPoint, binary_gcd,
                       cross, gens, jacobian, mul_rows, ncoeffs)


class UnexpectedError(ValueError):
    pass


class CommonFactorOnLine(UnexpectedError):
    pass


class VerificationMismatch(UnexpectedError):
    pass


class DimensionNotOne(UnexpectedError):
    pass


class IdentityFailed(UnexpectedError):
    pass


def dual_lines(Z):
    """Linear forms whose coefficient vectors are the points of Z."""
    pts = Z.support if isinstance(Z, FatPointScheme) else list(Z)
    return [HomogeneousForm(pts[0].field, 1, p.raw) for p in pts]


def dual_product(Z):
    lines = dual_lines(Z)
    out = lines[0]
    for ell in lines[1:]:
        out = out * ell
    return out


# --- syzygies ------------------------------------------------------------------

def jacobian_syzygies(F, e):
    """Basis of the triples (s0, s1, s2) of degree-e forms with
    s0 F_x + s1 F_y + s2 F_z = 0."""
    grad = jacobian(F)
    field = F.field
    if e < 0:
        return []
    n = ncoeffs(e)
    dd = F.degree - 1
    cols = []
    for g in grad:
        for mu in range(n):
            unit = [field.zero] * n
            unit[mu] = field.one
            cols.append(mul_rows(unit, e, g.c, dd, field))
    target = ncoeffs(e + dd)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(target)]
    out = []
    for v in kernel_basis(ExactMatrix.raw(field, rows, 3 * n)):
        out.append(tuple(HomogeneousForm(field, e, v[k * n:(k + 1) * n]) for k in range(3)))
    return out


def minimal_syzygy(F, start=0):
    """A nonzero Jacobian syzygy of least degree, with that degree."""
    for e in range(start, F.degree):
        basis = jacobian_syzygies(F, e)
        if basis:
            return e, basis[0]
    raise UnexpectedError("no syzygy below the Koszul degree")  # pragma: no cover


def restricted_gradient(lines, P0, P1):
    """(F_x, F_y, F_z) restricted to the line through P0, P1, for F the
    product of ``lines``; by the product rule, one factor at a time."""
    field = P0.field
    lam = [BinaryForm(field, 1, (_dot(field, ell.c, P0.raw), _dot(field, ell.c, P1.raw)))
           for ell in lines]
    d = len(lam)
    # prefix and suffix products give prod_{k != j} lambda_k
    one = BinaryForm(field, 0, (field.one,))
    pre = [one]
    for f in lam:
        pre.append(pre[-1] * f)
    suf = [one]
    for f in reversed(lam):
        suf.append(suf[-1] * f)
    suf.reverse()
    out = []
    for r in range(3):
        acc = [field.zero] * d
        for j, ell in enumerate(lines):
            a = ell.c[r]
            if field.is_zero(a):
                continue
            prod = pre[j] * suf[j + 1]
            for i, x in enumerate(prod.c):
                if not field.is_zero(x):
                    acc[i] = field.add(acc[i], field.mul(a, x))
        out.append(BinaryForm(field, d - 1, acc))
    return out


def _dot(field, u, v):
    s = field.zero
    for a, b in zip(u, v):
        s = field.add(s, field.mul(a, b))
    return s


def binary_syzygy_dim(g, e):
    """dim of {(u0, u1, u2) of degree e : sum u_i g_i = 0}."""
    field = g[0].field
    if e < 0:
        return 0
    d = g[0].degree
    ech = Echelon(field, e + d + 1)
    for gi in g:
        for j in range(e + 1):
            row = [field.zero] * j + list(gi.c) + [field.zero] * (e - j)
            ech.add(row)
    return 3 * (e + 1) - ech.rank


@dataclass
class SplittingType:
    a: int
    b: int
    line_samples: int
    per_sample: list = dc_field(default_factory=list)   # (seed, a or None)
    consistent: bool = True

    def __iter__(self):
        return iter((self.a, self.b))


def splitting_type(Z, samples=5, seed=0, bound=50):
    """(a, b) from ``samples`` seeded random lines; a is the largest of the
    per-line values (special lines can only lower it)."""
    lines = dual_lines(Z)
    field = lines[0].field
    d = len(lines)
    p = field.characteristic
    if p and d % p == 0:
        raise CharDividesDegree("characteristic %d divides degree %d" % (p, d))
    rng = random.Random(seed)
    per = []
    for k in range(samples):
        P0 = random_point(field, rng, bound)
        P1 = random_point(field, rng, bound)
        if P0 == P1:
            per.append((k, None))
            continue
        g = restricted_gradient(lines, P0, P1)
        if all(x.is_zero() for x in g):
            per.append((k, None))
            continue
        if binary_gcd(g).degree > 0:
            per.append((k, None))
            continue
        a = next(e for e in range(d) if binary_syzygy_dim(g, e) > 0)
        b = d - 1 - a
        if binary_syzygy_dim(g, b) != b - a + 2:
            per.append((k, None))
            continue
        per.append((k, a))
    good = [a for _, a in per if a is not None]
    if not good:
        raise CommonFactorOnLine("every sampled line met a common factor of the restricted gradient")
    a = max(good)
    return SplittingType(a, d - 1 - a, samples, per, len(set(good)) == 1)


# --- unexpected curves ---------------------------------------------------------

def t_Z(Z):
    """Least j with dim [I(Z)]_(j+1) > C(j+1, 2)."""
    j = 0
    while ideal_dim(Z, j + 1) <= comb(j + 1, 2):
        j += 1
    return j


def expected_dim(Z, t):
    return max(0, ideal_dim(Z, t) - comb(t, 2))


def _with_fat_point(Z, p, m):
    return Z + FatPointScheme(Z.field, [(p, m)])


def _general_point(Z, rng, tries=20):
    supp = set(Z.support)
    for _ in range(tries):
        p = random_point(Z.field, rng)
        if p not in supp:
            return p
    raise UnexpectedError("could not draw a point off Z")  # pragma: no cover


@dataclass
class UnexpectedReport:
    a: int
    b: int
    t_Z: int
    reg: int
    degrees: list
    checks: list = dc_field(default_factory=list)   # (t, dim [I(Z)]_t, expected, actual, point)
    splitting: SplittingType = None
    seed: int = 0


def detect_unexpected(Z, verify=False, samples=5, seed=0, retries=5):
    """Unexpected degrees are a < t < b when a < t_Z and none otherwise.

    With ``verify`` every degree t from a to b is checked directly at a
    seeded random point p, comparing dim [I((t-1)p + Z)]_t with the
    expected max(0, dim [I(Z)]_t - C(t, 2)).  Inside the range it must be
    larger, and equal to t - a, the count the splitting type predicts
    (so 1 at t = a + 1).  Outside the range it must equal the expected
    value.  A failing point is replaced by a fresh one up to ``retries``
    times before VerificationMismatch is raised."""
    if not Z.is_reduced():
        raise UnexpectedError("Z must be reduced")
    st = splitting_type(Z, samples=samples, seed=seed)
    a, b = st.a, st.b
    tz = t_Z(Z)
    reg = regularity(Z)
    degrees = list(range(a + 1, b)) if a < tz else []
    rep = UnexpectedReport(a, b, tz, reg, degrees, splitting=st, seed=seed)
    if verify:
        rng = random.Random(seed)
        for t in range(max(a, 2), b + 1):
            vdim = ideal_dim(Z, t)
            exp = max(0, vdim - comb(t, 2))
            want = t - a if t in degrees else exp
            for _ in range(retries):
                p = _general_point(Z, rng)
                act = ideal_dim(_with_fat_point(Z, p, t - 1), t)
                if act == want and (act > exp) == (t in degrees):
                    break
            else:
                raise VerificationMismatch(
                    "degree %d: dim [I(%dp+Z)]_%d = %d at %s, expected count %d, splitting predicts %d"
                    % (t, t - 1, t, act, p, exp, want))
            rep.checks.append((t, vdim, exp, act, p))
    return rep


def unexpected_curve(Z, t, p):
    """The curve of degree t through Z with multiplicity t - 1 at p,
    scaled so its first nonzero coefficient is 1."""
    if p in set(Z.support):
        raise UnexpectedError("p lies on Z")
    W = ideal_piece(_with_fat_point(Z, p, t - 1), t)
    if W.dim != 1:
        raise DimensionNotOne("dim [I(%dp+Z)]_%d = %d" % (t - 1, t, W.dim))
    f = W.forms()[0]
    F = f.field
    lead = next(x for x in f.c if not F.is_zero(x))
    inv = F.inv(lead)
    return HomogeneousForm(F, t, [F.mul(x, inv) for x in f.c])


# --- the dual map --------------------------------------------------------------

def cross_forms(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _eval3(forms, p):
    return tuple(f.eval_raw(p.raw) for f in forms)


@dataclass
class DualMapReport:
    euler: bool
    identity: bool
    literal_identity: bool
    line_checks: int = 0
    fixed_point_checks: int = 0
    failures: list = dc_field(default_factory=list)


def dual_map_checks(F, s, lines=None, samples=3, seed=0):
    """Checks around f = (x, y, z) x s for a Jacobian syzygy s of F.

    Exact identities: Euler (x F_x + y F_y + z F_z = deg(F) F) and
    grad(F) x f = -deg(F) F s.  The variant with (x, y, z) in place of
    grad(F) is evaluated and reported too.  When the linear factors of F
    are given, f(p) is compared with the dual point of the line at sampled
    points p of each line, and every point with s(p) proportional to p
    among the crossings and the coordinate points is checked to lie on F."""
    field = F.field
    X = gens(field)
    grad = jacobian(F)
    d = F.degree
    sigma = sum((s_i * g for s_i, g in zip(s, grad)), HomogeneousForm.zero(field, s[0].degree + d - 1))
    if not sigma.is_zero():
        raise IdentityFailed("s is not a syzygy of the gradient")
    f = cross_forms(X, s)
    euler = (X[0] * grad[0] + X[1] * grad[1] + X[2] * grad[2]) == F * d
    rhs = tuple(F * s_i * (-d) for s_i in s)
    identity = cross_forms(grad, f) == rhs
    literal = cross_forms(X, f) == rhs
    rep = DualMapReport(euler, identity, literal)
    if not euler:
        rep.failures.append("Euler identity")
    if not identity:
        rep.failures.append("grad(F) x f = -deg(F) F s")
    if lines:
        rng = random.Random(seed)
        for ell in lines:
            got = 0
            for _ in range(20 * samples):
                if got >= samples:
                    break
                p = _point_on_line(ell, rng)
                if any(field.is_zero(m.eval_raw(p.raw)) for m in lines if m is not ell):
                    continue
                fp = _eval3(f, p)
                if all(field.is_zero(x) for x in fp):
                    continue
                if any(not field.is_zero(x) for x in cross(field, fp, ell.c)):
                    rep.failures.append("f(%s) is not the dual of %s" % (p, ell))
                rep.line_checks += 1
                got += 1
        cands = set()
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                cands.add(ProjPoint(field, cross(field, lines[i].c, lines[j].c)))
        for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
            cands.add(ProjPoint(field, c))
        for p in cands:
            sp = _eval3(s, p)
            if all(field.is_zero(x) for x in sp):
                continue
            if all(field.is_zero(x) for x in cross(field, sp, p.raw)):
                rep.fixed_point_checks += 1
                if not field.is_zero(F.eval_raw(p.raw)):
                    rep.failures.append("s fixes %s but F(p) != 0" % p)
    return rep


def _point_on_line(ell, rng, bound=30):
    field = ell.field
    while True:
        q = random_point(field, rng, bound)
        r = random_point(field, rng, bound)
        # the line through q, r meets ell at ell(r) q - ell(q) r
        lq, lr = ell.eval_raw(q.raw), ell.eval_raw(r.raw)
        v = [field.sub(field.mul(lr, a), field.mul(lq, b)) for a, b in zip(q.raw, r.raw)]
        if any(not field.is_zero(x) for x in v):
            return ProjPoint(field, v)
