"""Exact dense linear algebra over the fields of :mod:`fatplane.exactfield`.

The workhorse is :class:`Echelon`, an incrementally grown row space kept in
semi-echelon form (distinct pivots, each row zero to the left of its pivot).
Three back ends share the interface:

* over Q rows are kept as primitive integer vectors and reduced
  fraction-free (cross-multiplication followed by removal of the content);
* over F_p rows are ints mod p with monic pivots;
* over extensions rows hold raw field values with monic pivots.

Canonical output is always the reduced row echelon form, pivot = first
nonzero entry, pivot value 1.
"""

from bisect import insort
from fractions import Fraction
from math import gcd, lcm

from .exactfield import FieldElem, PrimeField, RationalField, field_make


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotSymmetric(LinalgError):
    pass


class NotRationalField(LinalgError):
    pass


class NoSolution(LinalgError):
    pass


class ExactMatrix:
    """A rectangular grid of raw values over one field."""

    def __init__(self, field, rows, ncols=None):
        self.field = field_make(field)
        co = self.field.coerce
        self.rows = [[co(v) for v in r] for r in rows]
        if ncols is None:
            if not self.rows:
                raise LinalgError("empty matrix needs an explicit column count")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("rows of unequal length")
        self.nrows = len(self.rows)
        self.ncols = ncols

    @classmethod
    def raw(cls, field, rows, ncols):
        """Wrap already-raw rows without coercion."""
        m = cls.__new__(cls)
        m.field = field_make(field)
        m.rows = [list(r) for r in rows]
        m.nrows = len(m.rows)
        m.ncols = ncols
        return m

    def __getitem__(self, ij):
        i, j = ij
        return FieldElem(self.field, self.rows[i][j])

    def transpose(self):
        return ExactMatrix.raw(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [],
                               self.nrows)

    def __repr__(self):
        return "ExactMatrix(%dx%d over %s)" % (self.nrows, self.ncols, self.field.spec.text)


def _as_matrix(A, field=None):
    if isinstance(A, ExactMatrix):
        return A
    if field is None:
        raise LinalgError("a field is needed for a plain list of rows")
    rows = list(A)
    return ExactMatrix(field, rows, len(rows[0]) if rows else 0)


# --- incremental echelon forms ---------------------------------------------

class Echelon:
    """Row space grown one vector at a time.

    ``add`` returns True when the vector was independent of what is already
    there; ``contains`` tests membership without changing anything."""

    def __new__(cls, field, ncols):
        field = field_make(field)
        if cls is Echelon:
            if isinstance(field, RationalField):
                cls = _QEchelon
            elif isinstance(field, PrimeField):
                cls = _FpEchelon
            else:
                cls = _GenericEchelon
        return object.__new__(cls)

    def __init__(self, field, ncols):
        self.field = field_make(field)
        self.ncols = ncols
        self.pivots = []
        self.rows = {}

    @property
    def rank(self):
        return len(self.pivots)

    def __len__(self):
        return len(self.pivots)

    def full(self):
        return len(self.pivots) == self.ncols

    def add(self, row):
        v = self._reduce(self._import(row))
        c = self._lead(v)
        if c is None:
            return False
        self.rows[c] = self._normalize(v, c)
        insort(self.pivots, c)
        return True

    def extend(self, rows, stop_at=None):
        """Add many rows; stop early once the rank reaches ``stop_at``."""
        for r in rows:
            if stop_at is not None and len(self.pivots) >= stop_at:
                break
            self.add(r)
        return self

    def contains(self, row):
        return self._lead(self._reduce(self._import(row))) is None

    def _lead(self, v):
        for i, x in enumerate(v):
            if x:
                return i
        return None

    def rref(self):
        """Canonical reduced echelon basis as raw rows (pivot entries 1)."""
        raise NotImplementedError

    def copy(self):
        e = object.__new__(type(self))
        e.field = self.field
        e.ncols = self.ncols
        e.pivots = list(self.pivots)
        e.rows = dict(self.rows)
        return e


def _primitive(v):
    g = gcd(*v)
    if g > 1:
        v = [x // g for x in v]
    return v


def rational_row_to_ints(row):
    """Scale a row of Fractions/ints to a primitive integer row."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        v = [int(x) for x in row]
    else:
        v = [int(x * den) for x in row]
    return _primitive(v)


class _QEchelon(Echelon):
    """Rows are primitive integer vectors whose pivot entry is positive."""

    def _import(self, row):
        if len(row) != self.ncols:
            raise DimensionMismatch("row of length %d, expected %d" % (len(row), self.ncols))
        return rational_row_to_ints(row)

    def _reduce(self, v):
        rows = self.rows
        for c in self.pivots:
            vc = v[c]
            if vc:
                b = rows[c]
                bc = b[c]
                g = gcd(bc, vc)
                f1, f2 = bc // g, vc // g
                v = [f1 * x - f2 * y for x, y in zip(v, b)]
                v = _primitive(v)
        return v

    def _normalize(self, v, c):
        if v[c] < 0:
            v = [-x for x in v]
        return _primitive(v)

    def integer_rows(self):
        return [self.rows[c] for c in self.pivots]

    def rref(self):
        rows, pivots = _q_back_substitute(self.rows, self.pivots)
        out = []
        for r, c in zip(rows, pivots):
            p = r[c]
            out.append([Fraction(x, p) for x in r])
        return out


def _q_back_substitute(rows, pivots):
    """Fully reduce integer semi-echelon rows (still integral)."""
    red = {c: rows[c] for c in pivots}
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        b = red[c]
        bc = b[c]
        for c2 in pivots[:idx]:
            r = red[c2]
            x = r[c]
            if x:
                g = gcd(bc, x)
                f1, f2 = bc // g, x // g
                r = [f1 * u - f2 * w for u, w in zip(r, b)]
                r = _primitive(r)
                if r[c2] < 0:
                    r = [-u for u in r]
                red[c2] = r
    return [red[c] for c in pivots], list(pivots)


class _FpEchelon(Echelon):
    def _import(self, row):
        if len(row) != self.ncols:
            raise DimensionMismatch("row of length %d, expected %d" % (len(row), self.ncols))
        p = self.field.p
        return [x % p for x in row]

    def _reduce(self, v):
        p = self.field.p
        rows = self.rows
        for c in self.pivots:
            f = v[c]
            if f:
                b = rows[c]
                v[c:] = [(x - f * y) % p for x, y in zip(v[c:], b[c:])]
        return v

    def _normalize(self, v, c):
        p = self.field.p
        inv = pow(v[c], -1, p)
        return [x * inv % p for x in v]

    def rref(self):
        p = self.field.p
        red = {c: list(self.rows[c]) for c in self.pivots}
        piv = self.pivots
        for idx in range(len(piv) - 1, -1, -1):
            c = piv[idx]
            b = red[c]
            for c2 in piv[:idx]:
                r = red[c2]
                f = r[c]
                if f:
                    r[c:] = [(x - f * y) % p for x, y in zip(r[c:], b[c:])]
        return [red[c] for c in piv]


class _GenericEchelon(Echelon):
    def _import(self, row):
        if len(row) != self.ncols:
            raise DimensionMismatch("row of length %d, expected %d" % (len(row), self.ncols))
        return list(row)

    def _lead(self, v):
        isz = self.field.is_zero
        for i, x in enumerate(v):
            if not isz(x):
                return i
        return None

    def _reduce(self, v):
        F = self.field
        isz, sub, mul = F.is_zero, F.sub, F.mul
        rows = self.rows
        for c in self.pivots:
            f = v[c]
            if not isz(f):
                for j, y in rows[c][1]:
                    v[j] = sub(v[j], mul(f, y))
        return v

    def _normalize(self, v, c):
        F = self.field
        inv = F.inv(v[c])
        v = [F.mul(x, inv) for x in v]
        v[c] = F.one
        nz = [(j, x) for j, x in enumerate(v) if j >= c and not F.is_zero(x)]
        return (v, nz)

    def add(self, row):
        return Echelon.add(self, row)

    def rref(self):
        F = self.field
        isz, sub, mul = F.is_zero, F.sub, F.mul
        red = {c: list(self.rows[c][0]) for c in self.pivots}
        piv = self.pivots
        for idx in range(len(piv) - 1, -1, -1):
            c = piv[idx]
            b = red[c]
            nz = [(j, y) for j, y in enumerate(b) if j >= c and not isz(y)]
            for c2 in piv[:idx]:
                r = red[c2]
                f = r[c]
                if not isz(f):
                    for j, y in nz:
                        r[j] = sub(r[j], mul(f, y))
        return [red[c] for c in piv]

    def copy(self):
        e = Echelon.copy(self)
        return e


# --- matrix-level operations -------------------------------------------------

def echelon_of(A):
    A = _as_matrix(A)
    e = Echelon(A.field, A.ncols)
    for r in A.rows:
        e.add(r)
    return e


def rref(A, field=None):
    """(canonical reduced rows, pivot columns) of A."""
    A = _as_matrix(A, field)
    e = echelon_of(A)
    return e.rref(), list(e.pivots)


def rank(A, field=None):
    return echelon_of(_as_matrix(A, field)).rank


def kernel_basis(A, field=None):
    """Basis of {v : A v = 0} in canonical reduced echelon form.

    Eliminating with the columns in reverse order makes the usual
    free-variable basis come out already reduced: each vector has its
    leading 1 at its own free column and zeros at all other free columns."""
    A = _as_matrix(A, field)
    F = A.field
    n = A.ncols
    e = Echelon(F, n)
    for r in A.rows:
        e.add(r[::-1])
    red = e.rref()
    # pivots in reversed coordinates -> original columns
    piv_rows = {n - 1 - c: r[::-1] for c, r in zip(e.pivots, red)}
    free = [j for j in range(n) if j not in piv_rows]
    out = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for pc, r in piv_rows.items():
            x = r[f]
            if not F.is_zero(x):
                v[pc] = F.neg(x)
        out.append(v)
    return out


def solve(A, b, field=None):
    """One solution x of A x = b (free variables set to 0)."""
    A = _as_matrix(A, field)
    F = A.field
    if len(b) != A.nrows:
        raise DimensionMismatch("right-hand side has wrong length")
    b = [F.coerce(x) for x in b]
    aug = ExactMatrix.raw(F, [list(r) + [bi] for r, bi in zip(A.rows, b)], A.ncols + 1)
    red, piv = rref(aug)
    if A.ncols in piv:
        raise NoSolution("inconsistent system")
    x = [F.zero] * A.ncols
    for r, c in zip(red, piv):
        x[c] = r[A.ncols]
    return x


def subspace_leq(U, V, field):
    """True iff every row of U lies in the row space of V."""
    field = field_make(field)
    U, V = list(U), list(V)
    n = len((U or V or [[]])[0])
    if any(len(r) != n for r in U + V):
        raise DimensionMismatch("rows of different lengths")
    e = Echelon(field, n)
    for r in V:
        e.add(r)
    return all(e.contains(r) for r in U)


def matmul_vec(field, A, v):
    F = field_make(field)
    out = []
    for r in A:
        s = F.zero
        for x, y in zip(r, v):
            s = F.add(s, F.mul(x, y))
        out.append(s)
    return out


def determinant(field, A):
    """Determinant by elimination (raw values)."""
    F = field_make(field)
    M = [list(r) for r in A]
    n = len(M)
    det = F.one
    for c in range(n):
        p = next((r for r in range(c, n) if not F.is_zero(M[r][c])), None)
        if p is None:
            return F.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            f = F.mul(M[r][c], inv)
            if not F.is_zero(f):
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def inverse(field, A):
    F = field_make(field)
    n = len(A)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    red, piv = rref(ExactMatrix.raw(F, aug, 2 * n))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise LinalgError("matrix is singular")
    return [r[n:] for r in red[:n]]


def _rational_symmetric(G):
    G = [[Fraction(x) if not isinstance(x, FieldElem) else Fraction(x.raw) for x in r] for r in G]
    n = len(G)
    if any(len(r) != n for r in G):
        raise NotSymmetric("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise NotSymmetric("entry (%d,%d) differs from (%d,%d)" % (i, j, j, i))
    return G


def gram_schmidt(G):
    """Orthogonalize without normalizing, as long as the squares stay
    negative.

    Returns ``(coeffs, squares, fail)``: ``coeffs[i]`` expresses N_i* in the
    original basis, ``squares[i] = (N_i*)^2``, and ``fail`` is the first
    index with (N_i*)^2 >= 0 (None if there is none).  Coefficients are
    c_ij = (N_i . N_j*) / |(N_j*)^2|, which are nonnegative whenever the
    off-diagonal entries of G are."""
    if isinstance(G, ExactMatrix):
        if not isinstance(G.field, RationalField):
            raise NotRationalField("negative definiteness is tested over Q")
        G = G.rows
    G = _rational_symmetric(G)
    n = len(G)
    coeffs, squares = [], []

    def pair_with(vec, i):
        # vec . N_i
        return sum((a * G[k][i] for k, a in enumerate(vec) if a), Fraction(0))

    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        for j in range(i):
            c = pair_with(coeffs[j], i) / abs(squares[j])
            if c:
                v = [a + c * b for a, b in zip(v, coeffs[j])]
        sq = pair_with(v, i)
        coeffs.append(v)
        squares.append(sq)
        if sq >= 0:
            return coeffs, squares, i
    return coeffs, squares, None


def is_negative_definite(G):
    """True iff v^T G v < 0 for every nonzero rational v."""
    return gram_schmidt(G)[2] is None


def leading_minors(G):
    G = _rational_symmetric(G)
    return [determinant(field_make("Q"), [r[:k] for r in G[:k]]) for k in range(1, len(G) + 1)]
