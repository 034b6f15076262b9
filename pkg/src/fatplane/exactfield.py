"""Exact scalar fields: the rationals, prime fields and simple extensions.

A field handle does arithmetic on *raw* values so that the inner loops of the
linear algebra never allocate wrapper objects:

* ``Q``            raw values are :class:`fractions.Fraction`
* ``F<p>``         raw values are ints in ``[0, p)``
* ``K[a]/(f)``     raw values are tuples of base raw values, low degree first

:class:`FieldElem` wraps a raw value together with its handle and is what the
public API hands out.

Text syntax for field specs: ``Q``, ``F7``, ``Q[a]/(a^4-a^2+4)``,
``F3[b]/(b^2+1)``.
"""

import random as _random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._expr import ExpressionError, evaluate


class FieldError(ValueError):
    pass


class NonPrimeModulus(FieldError):
    pass


class NonMonicMinimalPolynomial(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class NonInvertible(ArithmeticError):
    """Raised when a nonzero element has no inverse, which means the
    extension polynomial was reducible."""


def is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``p = 0`` for the rationals.  ``minpoly`` lists the coefficients of the
    monic extension polynomial from the constant term up, as base values
    (Fractions over Q, ints over F_p)."""

    p: int = 0
    var: str = None
    minpoly: tuple = None

    @property
    def text(self):
        base = "Q" if self.p == 0 else "F%d" % self.p
        if self.minpoly is None:
            return base
        return "%s[%s]/(%s)" % (base, self.var, _upoly_text(self.minpoly, self.var))

    def __str__(self):
        return self.text


_SPEC_RE = re.compile(r"^\s*(Q|F\s*<?\s*(\d+)\s*>?)\s*(?:\[\s*([A-Za-z_]\w*)\s*\]\s*/\s*\((.*)\))?\s*$")


def parse_field_spec(text):
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldError("cannot read field spec %r" % text)
    p = int(m.group(2)) if m.group(2) else 0
    if p and not is_prime(p):
        raise NonPrimeModulus("%d is not prime" % p)
    var, poly = m.group(3), m.group(4)
    if var is None:
        return FieldSpec(p)
    base = field_make(FieldSpec(p))
    x = _UPoly(base, (base.zero, base.one))
    try:
        f = evaluate(poly, {var: x}, lambda n: _UPoly(base, (base.from_int(n),)))
    except ExpressionError as exc:
        raise FieldError(str(exc)) from exc
    if not isinstance(f, _UPoly):
        raise FieldError("minimal polynomial %r is constant" % poly)
    return FieldSpec(p, var, tuple(f.c))


def field_make(spec):
    """Return the (cached) field handle for a FieldSpec or spec text."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        spec = parse_field_spec(spec)
    return _field_make(spec)


@lru_cache(maxsize=None)
def _field_make(spec):
    if spec.p and not is_prime(spec.p):
        raise NonPrimeModulus("%d is not prime" % spec.p)
    base = QQ_FIELD if spec.p == 0 else PrimeField(spec.p)
    if spec.minpoly is None:
        return base
    return ExtensionField(base, spec.var, spec.minpoly)


class Field:
    """Common interface.  Subclasses implement the raw operations."""

    spec = None
    degree = 1

    def __call__(self, value):
        return FieldElem(self, self.coerce(value))

    def __repr__(self):
        return "Field(%s)" % self.spec.text

    @property
    def characteristic(self):
        return self.spec.p

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def eq(self, a, b):
        return a == b

    def elem(self, raw):
        return FieldElem(self, raw)

    def parse(self, text):
        names = {}
        if getattr(self, "var", None):
            names[self.var] = self.elem(self.gen)
        try:
            v = evaluate(text, names, lambda n: self.elem(self.from_int(n)))
        except ExpressionError as exc:
            raise FieldError(str(exc)) from exc
        return v.raw

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise FieldMismatch("element of %s used in %s" % (value.field, self))
            return value.raw
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError("cannot coerce %r into %s" % (value, self))


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec(0)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by 0")
        return a / b

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def from_base(self, b):
        return b

    def to_text(self, a):
        return str(a)

    def random(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


class PrimeField(Field):
    def __init__(self, p):
        if not is_prime(p):
            raise NonPrimeModulus("%d is not prime" % p)
        self.p = p
        self.spec = FieldSpec(p)
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of 0 in F%d" % self.p)
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        if q.denominator % self.p == 0:
            raise DivisionByZero("denominator of %s vanishes in F%d" % (q, self.p))
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def from_base(self, b):
        return b

    def to_text(self, a):
        return str(a)

    def random(self, rng, bound=None):
        return rng.randrange(self.p)


QQ_FIELD = RationalField()


class ExtensionField(Field):
    """K[var]/(f) for a monic f over K = Q or F_p with nonzero constant term."""

    def __init__(self, base, var, minpoly):
        f = tuple(base.coerce(c) if not isinstance(c, (tuple,)) else c for c in minpoly)
        if len(f) < 3:
            raise FieldError("extension polynomial must have degree at least 2")
        if f[-1] != base.one:
            raise NonMonicMinimalPolynomial("leading coefficient must be 1")
        if base.is_zero(f[0]):
            raise FieldError("extension polynomial has zero constant term")
        self.base = base
        self.var = var
        self.f = f
        self.k = len(f) - 1
        self.degree = self.k
        self.spec = FieldSpec(base.spec.p, var, f)
        z = base.zero
        self.zero = (z,) * self.k
        self.one = (base.one,) + (z,) * (self.k - 1)
        self.gen = (z, base.one) + (z,) * (self.k - 2)
        self._negf = tuple(base.neg(c) for c in f[:-1])

    def add(self, a, b):
        ad = self.base.add
        return tuple(ad(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sb = self.base.sub
        return tuple(sb(x, y) for x, y in zip(a, b))

    def neg(self, a):
        ng = self.base.neg
        return tuple(ng(x) for x in a)

    def mul(self, a, b):
        base = self.base
        k = self.k
        ad, ml, zero = base.add, base.mul, base.zero
        c = [zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    c[i + j] = ad(c[i + j], ml(x, y))
        negf = self._negf
        for i in range(2 * k - 2, k - 1, -1):
            t = c[i]
            if t != zero:
                s = i - k
                for j in range(k):
                    c[s + j] = ad(c[s + j], ml(t, negf[j]))
        return tuple(c[:k])

    def scale(self, a, b):
        """Multiply by a base-field value."""
        ml = self.base.mul
        return tuple(ml(x, b) for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of 0")
        base = self.base
        g, s = _upoly_xgcd(base, _trim(base, list(a)), list(self.f))
        if len(g) != 1:
            raise NonInvertible(
                "%s is a zero divisor: the polynomial %s is reducible"
                % (self.to_text(a), _upoly_text(self.f, self.var)))
        c = base.inv(g[0])
        s = [base.mul(x, c) for x in s] + [base.zero] * self.k
        return tuple(s[: self.k])

    def is_zero(self, a):
        z = self.base.zero
        return all(x == z for x in a)

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero[1:]

    def from_fraction(self, q):
        return (self.base.from_fraction(q),) + self.zero[1:]

    def from_base(self, b):
        return (b,) + self.zero[1:]

    def to_text(self, a):
        return _upoly_text(a, self.var, monic_lead=False)

    def random(self, rng, bound=10):
        return tuple(self.base.random(rng, bound) for _ in range(self.k))

    def coerce(self, value):
        if isinstance(value, tuple) and len(value) == self.k:
            return tuple(self.base.coerce(v) for v in value)
        return Field.coerce(self, value)


class FieldElem:
    """An immutable element of a field handle."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    @property
    def coords(self):
        if isinstance(self.field, ExtensionField):
            return list(self.raw)
        return [self.raw]

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldMismatch("%s vs %s" % (self.field, other.field))
            return other.raw
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field.div(o, self.raw))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n):
        return FieldElem(self.field, self.field.power(self.raw, n))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.raw))

    def is_zero(self):
        return self.field.is_zero(self.raw)

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return other.field is self.field and other.raw == self.raw
        try:
            o = self.field.coerce(other)
        except (TypeError, FieldError, ZeroDivisionError):
            return NotImplemented
        return self.raw == o

    def __hash__(self):
        return hash((self.field.spec, self.raw))

    def __str__(self):
        return self.field.to_text(self.raw)

    def __repr__(self):
        return "%s in %s" % (self.field.to_text(self.raw), self.field.spec.text)


def field_inv(x):
    return x.inverse()


def random_element(field, rng=None, seed=None, bound=10):
    """Seeded random element; pass either a ``random.Random`` or a seed."""
    if rng is None:
        rng = _random.Random(seed)
    return FieldElem(field, field.random(rng, bound))


# --- univariate helpers over a base field -------------------------------

class _UPoly:
    """Throwaway univariate polynomial used while parsing minimal
    polynomials."""

    def __init__(self, base, c):
        self.base = base
        self.c = _trim(base, list(c))

    def _lift(self, o):
        if isinstance(o, _UPoly):
            return o
        return _UPoly(self.base, (self.base.coerce(o),))

    def __add__(self, o):
        o = self._lift(o)
        n = max(len(self.c), len(o.c))
        a = self.c + [self.base.zero] * (n - len(self.c))
        b = o.c + [self.base.zero] * (n - len(o.c))
        return _UPoly(self.base, [self.base.add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return _UPoly(self.base, [self.base.neg(x) for x in self.c])

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return _UPoly(self.base, _upoly_mul(self.base, self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if len(o.c) != 1:
            raise FieldError("can only divide a polynomial by a constant")
        inv = self.base.inv(o.c[0])
        return _UPoly(self.base, [self.base.mul(x, inv) for x in self.c])

    def __pow__(self, n):
        r = _UPoly(self.base, (self.base.one,))
        for _ in range(n):
            r = r * self
        return r


def _trim(base, c):
    while len(c) > 1 and base.is_zero(c[-1]):
        c.pop()
    if not c:
        c = [base.zero]
    return c


def _upoly_mul(base, a, b):
    c = [base.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            c[i + j] = base.add(c[i + j], base.mul(x, y))
    return _trim(base, c)


def _upoly_divmod(base, a, b):
    a = list(a)
    inv = base.inv(b[-1])
    q = [base.zero] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and not (len(a) == 1 and base.is_zero(a[0])):
        t = base.mul(a[-1], inv)
        s = len(a) - len(b)
        q[s] = t
        for j, y in enumerate(b):
            a[s + j] = base.sub(a[s + j], base.mul(t, y))
        a.pop()
        a = _trim(base, a)
        if len(a) < len(b):
            break
    return _trim(base, q), _trim(base, a)


def _upoly_xgcd(base, a, f):
    """Return (g, s) with g = gcd(a, f) and s*a = g mod f."""
    r0, r1 = list(f), list(a)
    s0, s1 = [base.zero], [base.one]
    while not (len(r1) == 1 and base.is_zero(r1[0])):
        q, r = _upoly_divmod(base, r0, r1)
        r0, r1 = r1, r
        qs = _upoly_mul(base, q, s1)
        n = max(len(s0), len(qs))
        s0p = s0 + [base.zero] * (n - len(s0))
        qsp = qs + [base.zero] * (n - len(qs))
        s0, s1 = s1, _trim(base, [base.sub(x, y) for x, y in zip(s0p, qsp)])
    return r0, s0


def _upoly_text(c, var, monic_lead=True):
    terms = []
    for i in range(len(c) - 1, -1, -1):
        x = c[i]
        if x == 0:
            continue
        s = str(x)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if i == 0:
            body = s
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            body = mono if s == "1" else "%s*%s" % (s, mono)
        terms.append(("-" if neg else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += " %s %s" % (sign, body)
    return out


def cyclotomic_poly(n):
    """Integer coefficients (constant term first) of the n-th cyclotomic
    polynomial."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for s in range(len(a) - len(b), -1, -1):
        t = a[s + len(b) - 1] // b[-1]
        q[s] = t
        for j, y in enumerate(b):
            a[s + j] -= t * y
    assert not any(a), "inexact cyclotomic division"
    return q


def root_of_unity(n, base="Q", var="w"):
    """A field containing a primitive n-th root of unity together with such
    a root (as a FieldElem).

    Over Q this is Q[w]/(Phi_n) (plain Q for n <= 2).  Over F_p it needs
    n | p - 1; other cases raise FieldError."""
    bspec = parse_field_spec(base) if isinstance(base, str) else base
    if bspec.minpoly is not None:
        raise FieldError("root_of_unity expects a prime field or Q as base")
    if bspec.p == 0:
        if n == 1:
            return QQ_FIELD, QQ_FIELD(1)
        if n == 2:
            return QQ_FIELD, QQ_FIELD(-1)
        K = field_make(FieldSpec(0, var, tuple(Fraction(c) for c in cyclotomic_poly(n))))
        return K, K.elem(K.gen)
    p = bspec.p
    if (p - 1) % n:
        raise FieldError("F%d has no primitive %d-th root of unity" % (p, n))
    K = field_make(bspec)
    for g in range(1, p):
        w = pow(g, (p - 1) // n, p)
        if all(pow(w, n // q, p) != 1 for q in _prime_factors(n)):
            return K, K(w)
    raise FieldError("no primitive root found")  # pragma: no cover


def _prime_factors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


QQ = QQ_FIELD
