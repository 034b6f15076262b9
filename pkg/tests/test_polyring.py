import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fatplane.exactfield import field_make
from fatplane.fatpoints import intersection_multiplicity
from fatplane.polyring import (CharDividesDegree, CoincidentPoints, HomogeneousForm, ProjPoint,
                               SingularMatrix, binary_gcd, coordinate_change, cross, jacobian,
                               matrix_apply, matrix_inverse3, monomials, mult_at, ncoeffs,
                               parse_form, restrict_linear_product, restrict_to_line)

Q = field_make("Q")
X, Y, Z = sympy.symbols("x y z")


def to_sympy(F):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** i * Y ** j * Z ** k
               for (i, j, k), c in F.terms())


def forms(maxdeg=3):
    return st.integers(0, maxdeg).flatmap(
        lambda d: st.lists(st.integers(-3, 3), min_size=ncoeffs(d), max_size=ncoeffs(d)).map(
            lambda cs: HomogeneousForm(Q, d, cs)))


def test_monomial_order():
    assert ncoeffs(3) == 10 == len(monomials(3))
    assert list(monomials(1)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


@settings(max_examples=60, deadline=None)
@given(forms(), forms())
def test_product_matches_sympy(F, G):
    assert sympy.expand(to_sympy(F * G) - to_sympy(F) * to_sympy(G)) == 0


def test_parse_and_text_round_trip():
    F = parse_form("(x - z)^2*y + 3/2*x*y*z", Q)
    assert F.degree == 3
    assert parse_form(F.to_text(), Q) == F


def test_mult_at_examples():
    F = parse_form("(x-z)^2*y", Q)
    # both x - z and y vanish at (1:0:1)
    assert mult_at(F, ProjPoint(Q, (1, 0, 1))) == 3
    assert mult_at(F, ProjPoint(Q, (1, 1, 1))) == 2
    assert mult_at(F, ProjPoint(Q, (0, 1, 0))) == 2
    assert mult_at(F, ProjPoint(Q, (1, 2, 0))) == 0
    cusp = parse_form("y^2*z - x^3", Q)
    assert mult_at(cusp, ProjPoint(Q, (0, 0, 1))) == 2


def test_mult_at_in_characteristic_p():
    F3 = field_make("F3")
    # x^3 - y^3 z^0 ... (x - y)^3 in characteristic 3 is x^3 - y^3
    F = parse_form("x^3 - y^3", F3)
    assert mult_at(F, ProjPoint(F3, (1, 1, 1))) == 3


def _invertible(rng):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(M).det() != 0:
            return M


def test_mult_at_invariant_under_coordinate_change():
    rng = random.Random(7)
    F = parse_form("(x-z)^2*y*(x+y-2*z)", Q)
    pts = [ProjPoint(Q, v) for v in [(1, 0, 1), (1, 1, 1), (2, 0, 1), (0, 1, 0), (3, -1, 1)]]
    for _ in range(10):
        M = _invertible(rng)
        G = coordinate_change(F, M)
        Minv = matrix_inverse3(Q, M)
        for p in pts:
            # G(v) = F(M v), so G has at M^-1 p the multiplicity F has at p
            assert mult_at(G, matrix_apply(Q, Minv, p)) == mult_at(F, p)


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        coordinate_change(parse_form("x", Q), [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


def test_jacobian_char_divides_degree():
    F3 = field_make("F3")
    with pytest.raises(CharDividesDegree):
        jacobian(parse_form("x^3 + y^3 + z^3", F3))


def test_restrictions_agree():
    K = field_make("Q[w]/(w^2+w+1)")
    lines = [parse_form(t, K) for t in ("x - y", "x - w*y", "y + 2*x - 3*z")]
    P0, P1 = ProjPoint(K, (1, 2, 3)), ProjPoint(K, (0, 1, 5))
    prod = lines[0] * lines[1] * lines[2]
    assert restrict_to_line(prod, P0, P1) == restrict_linear_product(lines, P0, P1)
    with pytest.raises(CoincidentPoints):
        restrict_to_line(prod, P0, P0)


def test_binary_gcd():
    from fatplane.polyring import BinaryForm
    s_minus_t = BinaryForm(Q, 1, (1, -1))
    t = BinaryForm(Q, 1, (0, 1))
    s = BinaryForm(Q, 1, (1, 0))
    g = binary_gcd([s_minus_t * s_minus_t * t, s_minus_t * t * t])
    assert g == s_minus_t * t
    assert binary_gcd([s * s * t, s * t * s_minus_t]) == s * t
    assert binary_gcd([s * s_minus_t, t]).degree == 0


def test_cross_is_line_through_points():
    p, q = (1, 2, 3), (4, 5, 6)
    c = cross(Q, tuple(map(Q.coerce, p)), tuple(map(Q.coerce, q)))
    assert sum(a * b for a, b in zip(c, p)) == 0 and sum(a * b for a, b in zip(c, q)) == 0


def test_intersection_multiplicity_examples():
    cusp = parse_form("y^2*z - x^3", Q)
    o = ProjPoint(Q, (0, 0, 1))
    assert intersection_multiplicity(cusp, parse_form("y", Q), o) == 3
    assert intersection_multiplicity(cusp, parse_form("x", Q), o) == 2
    assert intersection_multiplicity(parse_form("y*z - x^2", Q), parse_form("y", Q), o) == 2


def _random_line(F, rng):
    while True:
        c = [rng.randrange(F.spec.p) for _ in range(3)]
        if any(c):
            return HomogeneousForm(F, 1, [F.from_int(v) for v in c])


def test_bezout_over_prime_field():
    """Products of lines meet only in rational points, so summing the
    local intersection numbers over the pairwise crossings recovers
    deg F * deg G."""
    F = field_make("F101")
    rng = random.Random(11)
    done = 0
    while done < 20:
        fl = [_random_line(F, rng) for _ in range(rng.randint(1, 2))]
        gl = [_random_line(F, rng) for _ in range(rng.randint(1, 2))]
        if rng.random() < 0.3:
            fl.append(fl[0])  # a double line
        pf = {ProjPoint(F, l.c) for l in fl}
        if any(ProjPoint(F, l.c) in pf for l in gl):
            continue  # common component
        A = fl[0]
        for l in fl[1:]:
            A = A * l
        B = gl[0]
        for l in gl[1:]:
            B = B * l
        pts = {ProjPoint(F, cross(F, a.c, b.c)) for a in fl for b in gl}
        total = sum(intersection_multiplicity(A, B, p) for p in pts)
        assert total == A.degree * B.degree
        done += 1
