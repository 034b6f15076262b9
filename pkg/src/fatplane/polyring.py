"""Dense homogeneous forms in x, y, z (and binary forms in s, t).

Monomials of degree d are ordered graded-lexicographically with x > y > z::

    x^d, x^(d-1) y, x^(d-1) z, x^(d-2) y^2, ..., z^d

so the monomial x^i y^j z^k sits at position e(e+1)/2 + k with e = j + k.
Coefficient rows produced anywhere in the package use this order.
"""

from functools import lru_cache
from math import comb

from . import exactfield
from ._expr import ExpressionError, evaluate
from .exactfield import FieldElem, FieldMismatch, field_make


class PolyError(ValueError):
    pass


class ZeroForm(PolyError):
    pass


class SingularMatrix(PolyError):
    pass


class CharDividesDegree(PolyError):
    pass


class CoincidentPoints(PolyError):
    pass


def ncoeffs(d):
    return (d + 1) * (d + 2) // 2


@lru_cache(maxsize=None)
def monomials(d):
    """Exponent triples of degree d in the package's monomial order."""
    return tuple((d - e, e - k, k) for e in range(d + 1) for k in range(e + 1))


def mono_index(i, j, k):
    e = j + k
    return e * (e + 1) // 2 + k


def mul_rows(a, da, b, db, field=None):
    """Product of two coefficient rows of degrees da, db.

    With ``field=None`` the entries are combined with the ordinary ``+`` and
    ``*`` operators (used for integer rows over Q)."""
    out_len = ncoeffs(da + db)
    ma, mb = monomials(da), monomials(db)
    tb = [(mb[q][1] + mb[q][2], mb[q][2], y) for q, y in enumerate(b) if y]
    if field is None:
        out = [0] * out_len
        for p, x in enumerate(a):
            if not x:
                continue
            _, j1, k1 = ma[p]
            e1 = j1 + k1
            for e2, k2, y in tb:
                e = e1 + e2
                idx = e * (e + 1) // 2 + k1 + k2
                out[idx] += x * y
        return out
    zero, add, mul, isz = field.zero, field.add, field.mul, field.is_zero
    out = [zero] * out_len
    tb = [t for t in tb if not isz(t[2])]
    for p, x in enumerate(a):
        if isz(x):
            continue
        _, j1, k1 = ma[p]
        e1 = j1 + k1
        for e2, k2, y in tb:
            e = e1 + e2
            idx = e * (e + 1) // 2 + k1 + k2
            out[idx] = add(out[idx], mul(x, y))
    return out


class HomogeneousForm:
    """A homogeneous form of fixed degree over an exact field.

    ``c`` holds raw field values in the package monomial order; ``coeffs``
    exposes them as FieldElems."""

    __slots__ = ("field", "degree", "c")

    def __init__(self, field, degree, coeffs):
        field = field_make(field)
        coeffs = tuple(coeffs)
        if len(coeffs) != ncoeffs(degree):
            raise PolyError("degree %d form needs %d coefficients, got %d"
                            % (degree, ncoeffs(degree), len(coeffs)))
        self.field = field
        self.degree = degree
        self.c = coeffs

    @classmethod
    def zero(cls, field, d):
        field = field_make(field)
        return cls(field, d, (field.zero,) * ncoeffs(d))

    @classmethod
    def constant(cls, field, value):
        field = field_make(field)
        return cls(field, 0, (field.coerce(value),))

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        field = field_make(field)
        d = sum(exps)
        c = [field.zero] * ncoeffs(d)
        c[mono_index(*exps)] = field.coerce(coeff)
        return cls(field, d, c)

    @classmethod
    def from_terms(cls, field, d, terms):
        """``terms`` maps exponent triples to coefficients."""
        field = field_make(field)
        c = [field.zero] * ncoeffs(d)
        for exps, v in terms.items():
            if sum(exps) != d:
                raise PolyError("monomial %r is not of degree %d" % (exps, d))
            c[mono_index(*exps)] = field.add(c[mono_index(*exps)], field.coerce(v))
        return cls(field, d, c)

    @classmethod
    def linear(cls, field, a, b, c):
        field = field_make(field)
        return cls(field, 1, (field.coerce(a), field.coerce(b), field.coerce(c)))

    @classmethod
    def parse(cls, text, field):
        return parse_form(text, field)

    @property
    def coeffs(self):
        return [FieldElem(self.field, x) for x in self.c]

    def is_zero(self):
        isz = self.field.is_zero
        return all(isz(x) for x in self.c)

    def __bool__(self):
        return not self.is_zero()

    def terms(self):
        """Nonzero (exponents, raw coefficient) pairs in monomial order."""
        isz = self.field.is_zero
        return [(m, x) for m, x in zip(monomials(self.degree), self.c) if not isz(x)]

    def _check(self, other):
        if other.field is not self.field:
            raise FieldMismatch("forms over %s and %s" % (self.field, other.field))

    def _lift(self, other):
        if isinstance(other, HomogeneousForm):
            self._check(other)
            return other
        try:
            return HomogeneousForm(self.field, 0, (self.field.coerce(other),))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() and self.degree != o.degree:
            return o
        if o.is_zero() and self.degree != o.degree:
            return self
        if o.degree != self.degree:
            raise PolyError("adding forms of degrees %d and %d" % (self.degree, o.degree))
        add = self.field.add
        return HomogeneousForm(self.field, self.degree, [add(x, y) for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return HomogeneousForm(self.field, self.degree, [neg(x) for x in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.degree == 0:
            s = o.c[0]
            mul = self.field.mul
            return HomogeneousForm(self.field, self.degree, [mul(x, s) for x in self.c])
        return HomogeneousForm(self.field, self.degree + o.degree,
                               mul_rows(self.c, self.degree, o.c, o.degree, self.field))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None or o.degree != 0:
            raise PolyError("forms can only be divided by scalars")
        inv = self.field.inv(o.c[0])
        return self * FieldElem(self.field, inv)

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power of a form")
        r = HomogeneousForm(self.field, 0, (self.field.one,))
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if other.field is not self.field:
            return False
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return self.c == other.c

    def __hash__(self):
        return hash((self.degree, self.c))

    def __call__(self, *pt):
        if len(pt) == 1 and isinstance(pt[0], ProjPoint):
            return poly_eval(self, pt[0])
        return FieldElem(self.field, self.eval_raw([self.field.coerce(v) for v in pt]))

    def eval_raw(self, v):
        F = self.field
        add, mul, power = F.add, F.mul, F.power
        d = self.degree
        px = [power(v[0], i) for i in range(d + 1)]
        py = [power(v[1], i) for i in range(d + 1)]
        pz = [power(v[2], i) for i in range(d + 1)]
        s = F.zero
        for (i, j, k), x in zip(monomials(d), self.c):
            if not F.is_zero(x):
                s = add(s, mul(x, mul(px[i], mul(py[j], pz[k]))))
        return s

    def derivative(self, var):
        """Partial derivative in x (0), y (1) or z (2)."""
        F = self.field
        d = self.degree
        if d == 0:
            return HomogeneousForm.zero(F, 0)
        out = [F.zero] * ncoeffs(d - 1)
        for exps, x in self.terms():
            e = exps[var]
            if e:
                new = list(exps)
                new[var] -= 1
                out[mono_index(*new)] = F.add(out[mono_index(*new)], F.mul(x, F.from_int(e)))
        return HomogeneousForm(F, d - 1, out)

    def to_text(self):
        return _terms_text(self.field, [(_mono_text(m), x) for m, x in self.terms()])

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return "HomogeneousForm(%s, deg %d, over %s)" % (self.to_text(), self.degree, self.field.spec.text)


def _mono_text(exps, names="xyz"):
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append("%s^%d" % (n, e))
    return "*".join(parts)


def _terms_text(field, terms):
    if not terms:
        return "0"
    out = []
    for mono, x in terms:
        s = field.to_text(x)
        compound = (" + " in s) or (" - " in s)
        neg = s.startswith("-") and not compound
        if neg:
            s = s[1:]
        if compound:
            s = "(%s)" % s
        if not mono:
            body = s
        elif s == "1":
            body = mono
        else:
            body = "%s*%s" % (s, mono)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def gens(field):
    field = field_make(field)
    one, zero = field.one, field.zero
    return (HomogeneousForm(field, 1, (one, zero, zero)),
            HomogeneousForm(field, 1, (zero, one, zero)),
            HomogeneousForm(field, 1, (zero, zero, one)))


def parse_form(text, field, extra=None):
    """Read a homogeneous form such as ``(x^5-y^5)*(x^5-z^5)*(y^5-z^5)``.

    The extension generator of the field (if any) may appear by name, as may
    any names in ``extra`` (mapping to forms or field elements)."""
    field = field_make(field)
    x, y, z = gens(field)
    names = {"x": x, "y": y, "z": z}
    var = getattr(field, "var", None)
    if var:
        if var in names:
            raise PolyError("field generator %r clashes with a coordinate name" % var)
        names[var] = HomogeneousForm(field, 0, (field.gen,))
    for k, v in (extra or {}).items():
        if isinstance(v, FieldElem):
            v = HomogeneousForm(field, 0, (v.raw,))
        names[k] = v
    try:
        return evaluate(text, names, lambda n: HomogeneousForm(field, 0, (field.from_int(n),)))
    except ExpressionError as exc:
        raise PolyError(str(exc)) from exc


class BinaryForm:
    """Binary form in s, t; ``c[i]`` is the coefficient of s^(d-i) t^i."""

    __slots__ = ("field", "degree", "c")

    def __init__(self, field, degree, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != degree + 1:
            raise PolyError("binary form of degree %d needs %d coefficients" % (degree, degree + 1))
        self.field = field_make(field)
        self.degree = degree
        self.c = coeffs

    @property
    def coeffs(self):
        return [FieldElem(self.field, x) for x in self.c]

    def is_zero(self):
        return all(self.field.is_zero(x) for x in self.c)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            v = self.field.coerce(other)
            return BinaryForm(self.field, self.degree, [self.field.mul(x, v) for x in self.c])
        F = self.field
        out = [F.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.c):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.c):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(F, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.degree != self.degree:
            raise PolyError("adding binary forms of different degrees")
        return BinaryForm(self.field, self.degree, [self.field.add(a, b) for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return BinaryForm(self.field, self.degree, [self.field.neg(a) for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return other.field is self.field and self.c == other.c

    def __hash__(self):
        return hash((self.degree, self.c))

    def __call__(self, s, t):
        F = self.field
        s, t = F.coerce(s), F.coerce(t)
        d = self.degree
        acc = F.zero
        for i, a in enumerate(self.c):
            acc = F.add(acc, F.mul(a, F.mul(F.power(s, d - i), F.power(t, i))))
        return FieldElem(F, acc)

    def to_text(self):
        d = self.degree
        terms = [(_mono_text((d - i, i), "st"), a) for i, a in enumerate(self.c)
                 if not self.field.is_zero(a)]
        return _terms_text(self.field, terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return "BinaryForm(%s)" % self.to_text()


def binary_gcd(forms):
    """Monic gcd of binary forms (as a BinaryForm); the zero forms are
    ignored."""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ZeroForm("gcd of zero forms")
    F = forms[0].field
    spow = tpow = None
    g = None
    for f in forms:
        # f = s^a t^b h with h(1, 0) and h(0, 1) nonzero
        c = list(f.c)
        a = 0
        while F.is_zero(c[-1]):
            c.pop()
            a += 1
        b = 0
        while F.is_zero(c[0]):
            c.pop(0)
            b += 1
        # h(s, 1) with the coefficient of s^k at index k
        u = list(reversed(c))
        spow = a if spow is None else min(spow, a)
        tpow = b if tpow is None else min(tpow, b)
        g = u if g is None else _ugcd(F, g, u)
    inv = F.inv(g[-1])
    g = [F.mul(x, inv) for x in g]
    coeffs = [F.zero] * tpow + list(reversed(g)) + [F.zero] * spow
    return BinaryForm(F, len(coeffs) - 1, coeffs)


def _ugcd(F, a, b):
    while not (len(b) == 1 and F.is_zero(b[0])):
        _, r = exactfield._upoly_divmod(F, a, b)
        a, b = b, r
    return a


class ProjPoint:
    """A point of the projective plane, normalized so its last nonzero
    coordinate is 1."""

    __slots__ = ("field", "raw")

    def __init__(self, field, coords):
        field = field_make(field)
        raw = [field.coerce(v) for v in coords]
        if len(raw) != 3:
            raise PolyError("a plane point needs three coordinates")
        k = max((i for i in range(3) if not field.is_zero(raw[i])), default=None)
        if k is None:
            raise PolyError("(0:0:0) is not a point")
        if raw[k] != field.one:
            inv = field.inv(raw[k])
            raw = [field.mul(v, inv) for v in raw]
        self.field = field
        self.raw = tuple(raw)

    @property
    def coords(self):
        return tuple(FieldElem(self.field, v) for v in self.raw)

    @property
    def chart(self):
        """Index of the last nonzero coordinate (where it equals 1)."""
        return max(i for i in range(3) if not self.field.is_zero(self.raw[i]))

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and other.field is self.field and other.raw == self.raw

    def __hash__(self):
        return hash(self.raw)

    def __str__(self):
        return "(%s)" % " : ".join(self.field.to_text(v) for v in self.raw)

    def __repr__(self):
        return "ProjPoint%s" % self

    def to_text(self):
        return " ".join(_atom(self.field.to_text(v)) for v in self.raw)


def _atom(s):
    return s.replace(" ", "")


def cross(field, u, v):
    """Cross product of raw coordinate triples."""
    m, s = field.mul, field.sub
    return (s(m(u[1], v[2]), m(u[2], v[1])),
            s(m(u[2], v[0]), m(u[0], v[2])),
            s(m(u[0], v[1]), m(u[1], v[0])))


def poly_eval(F, p):
    if p.field is not F.field:
        raise FieldMismatch("form over %s, point over %s" % (F.field, p.field))
    return FieldElem(F.field, F.eval_raw(p.raw))


def local_rows(field, p, t, orders):
    """Linear functionals on degree-t coefficient rows giving the
    coefficients of u^i v^j in F after moving p to the origin of its affine
    chart (u, v = the other two coordinates).

    ``orders`` is a list of (i, j).  Entries are C(eu, i) C(ev, j) a^(eu-i)
    b^(ev-j); this is the Hasse-derivative form of the coordinate change,
    valid in every characteristic."""
    k = p.chart
    others = [i for i in range(3) if i != k]
    a, b = p.raw[others[0]], p.raw[others[1]]
    pa = [field.power(a, n) for n in range(t + 1)]
    pb = [field.power(b, n) for n in range(t + 1)]
    fi = field.from_int
    mul, zero = field.mul, field.zero
    mons = monomials(t)
    rows = []
    for i, j in orders:
        row = []
        for m in mons:
            eu, ev = m[others[0]], m[others[1]]
            if eu < i or ev < j:
                row.append(zero)
                continue
            cu = comb(eu, i) * comb(ev, j)
            v = mul(pa[eu - i], pb[ev - j])
            row.append(mul(fi(cu), v) if cu != 1 else v)
        rows.append(row)
    return rows


def mult_at(F, p):
    """Multiplicity of the curve F = 0 at p."""
    if F.is_zero():
        raise ZeroForm("multiplicity of the zero form")
    if p.field is not F.field:
        raise FieldMismatch("form and point over different fields")
    field = F.field
    for m in range(F.degree + 1):
        rows = local_rows(field, p, F.degree, [(i, m - i) for i in range(m + 1)])
        for r in rows:
            s = field.zero
            for x, y in zip(r, F.c):
                if not field.is_zero(x) and not field.is_zero(y):
                    s = field.add(s, field.mul(x, y))
            if not field.is_zero(s):
                return m
    raise AssertionError("nonzero form with vanishing expansion")  # pragma: no cover


def _det3(field, M):
    m, s, a = field.mul, field.sub, field.add
    t0 = m(M[0][0], s(m(M[1][1], M[2][2]), m(M[1][2], M[2][1])))
    t1 = m(M[0][1], s(m(M[1][0], M[2][2]), m(M[1][2], M[2][0])))
    t2 = m(M[0][2], s(m(M[1][0], M[2][1]), m(M[1][1], M[2][0])))
    return a(s(t0, t1), t2)


def coordinate_change(F, M):
    """F composed with the matrix M: (F o M)(v) = F(M v)."""
    field = F.field
    M = [[field.coerce(v) for v in row] for row in M]
    if field.is_zero(_det3(field, M)):
        raise SingularMatrix("coordinate change must be invertible")
    lin = [HomogeneousForm(field, 1, tuple(M[r])) for r in range(3)]
    powers = [[HomogeneousForm(field, 0, (field.one,))] for _ in range(3)]
    for r in range(3):
        for _ in range(F.degree):
            powers[r].append(powers[r][-1] * lin[r])
    out = HomogeneousForm.zero(field, F.degree)
    for (i, j, k), x in F.terms():
        term = powers[0][i] * powers[1][j] * powers[2][k]
        out = out + term * FieldElem(field, x)
    return out


def matrix_apply(field, M, p):
    """M times the point p (a ProjPoint)."""
    M = [[field.coerce(v) for v in row] for row in M]
    v = [field.zero] * 3
    for r in range(3):
        for c in range(3):
            v[r] = field.add(v[r], field.mul(M[r][c], p.raw[c]))
    return ProjPoint(field, v)


def matrix_inverse3(field, M):
    M = [[field.coerce(v) for v in row] for row in M]
    det = _det3(field, M)
    if field.is_zero(det):
        raise SingularMatrix("matrix is singular")
    inv = field.inv(det)
    m, s = field.mul, field.sub
    cof = [[None] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            rr = [i for i in range(3) if i != r]
            cc = [i for i in range(3) if i != c]
            minor = s(m(M[rr[0]][cc[0]], M[rr[1]][cc[1]]), m(M[rr[0]][cc[1]], M[rr[1]][cc[0]]))
            if (r + c) % 2:
                minor = field.neg(minor)
            cof[c][r] = m(minor, inv)
    return cof


def jacobian(F):
    p = F.field.characteristic
    if p and F.degree % p == 0:
        raise CharDividesDegree("characteristic %d divides degree %d" % (p, F.degree))
    return F.derivative(0), F.derivative(1), F.derivative(2)


def restrict_to_line(F, P0, P1):
    """Substitute (s, t) -> s*P0 + t*P1 into F."""
    if P0 == P1:
        raise CoincidentPoints("the line needs two distinct points")
    field = F.field
    lin = [BinaryForm(field, 1, (P0.raw[r], P1.raw[r])) for r in range(3)]
    one = BinaryForm(field, 0, (field.one,))
    powers = [[one] for _ in range(3)]
    for r in range(3):
        for _ in range(F.degree):
            powers[r].append(powers[r][-1] * lin[r])
    acc = [field.zero] * (F.degree + 1)
    for (i, j, k), x in F.terms():
        term = powers[0][i] * powers[1][j] * powers[2][k]
        for n, y in enumerate(term.c):
            if not field.is_zero(y):
                acc[n] = field.add(acc[n], field.mul(x, y))
    return BinaryForm(field, F.degree, acc)


def restrict_linear_product(lines, P0, P1):
    """Restriction of a product of linear forms to the line through P0, P1,
    computed factor by factor."""
    field = P0.field
    acc = BinaryForm(field, 0, (field.one,))
    for ell in lines:
        acc = acc * BinaryForm(field, 1, (_dot(field, ell.c, P0.raw), _dot(field, ell.c, P1.raw)))
    return acc


def _dot(field, u, v):
    s = field.zero
    for a, b in zip(u, v):
        s = field.add(s, field.mul(a, b))
    return s
