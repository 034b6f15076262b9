import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fatplane import fatpoints as fp
from fatplane.exactfield import field_make
from fatplane.exactlinalg import rank
from fatplane.fixtures import b3_points, char3_form, char3_points, fermat2_points, fermat_points
from fatplane.fixtures import near_pencil_points, star_points
from fatplane.polyring import ProjPoint, monomials, parse_form

Q = field_make("Q")
X, Y, Z_ = sympy.symbols("x y z")


def sympy_ideal_dim(Z, t):
    """dim [I(Z)]_t from vanishing of all partial derivatives of order < m
    (valid over Q), via sympy's rank."""
    mons = [X ** i * Y ** j * Z_ ** k for i, j, k in monomials(t)]
    rows = []
    for p, m in Z.points:
        vals = {X: sympy.Rational(p.raw[0]), Y: sympy.Rational(p.raw[1]), Z_: sympy.Rational(p.raw[2])}
        for order in range(m):
            for i in range(order + 1):
                for j in range(order - i + 1):
                    k = order - i - j
                    rows.append([sympy.diff(mo, X, i, Y, j, Z_, k).subs(vals) for mo in mons])
    if not rows:
        return len(mons)
    return len(mons) - sympy.Matrix(rows).rank()


point_lists = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3)),
                       min_size=1, max_size=5, unique=True)


def _scheme(raw, mults):
    pts = []
    for v in raw:
        p = ProjPoint(Q, v)
        if p not in [q for q, _ in pts]:
            pts.append((p, mults[len(pts) % len(mults)]))
    return fp.FatPointScheme(Q, pts)


@settings(max_examples=25, deadline=None)
@given(point_lists, st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 5))
def test_ideal_dim_matches_derivative_oracle(raw, mults, t):
    Z = _scheme(raw, mults)
    d = fp.ideal_dim(Z, t)
    assert d == sympy_ideal_dim(Z, t)
    assert d >= max(0, comb(t + 2, 2) - Z.degree)


@settings(max_examples=15, deadline=None)
@given(point_lists, st.integers(1, 3), st.integers(1, 3))
def test_alpha_subadditive(raw, m, n):
    Z = _scheme(raw, [1])
    assert fp.alpha_symbolic(Z, m + n) <= fp.alpha_symbolic(Z, m) + fp.alpha_symbolic(Z, n)


@pytest.mark.parametrize("Z", [fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
                               near_pencil_points(4), b3_points()],
                         ids=["vertices", "nearpencil4", "b3"])
def test_ordinary_power_inside_symbolic(Z):
    for r in (2, 3):
        for d in range(fp.alpha(Z) * r, r * fp.regularity(Z) + 1):
            assert fp.power_piece(Z, r, d) <= fp.ideal_piece(Z.scaled(r), d)


def test_conditions_matrix_small():
    p = fp.points_scheme("Q", [(1, 2, 3)])
    A = fp.conditions_matrix(p, 1)
    assert A.nrows == 1
    dbl = fp.points_scheme("Q", [(1, 2, 3)], mult=2)
    assert fp.conditions_matrix(dbl, 2).nrows == 3
    assert fp.ideal_dim(dbl, 2) == 3
    # conics through four collinear points contain their line
    np4 = near_pencil_points(4)
    assert fp.ideal_dim(np4, 2) == 2
    A = fp.conditions_matrix(np4, 2)
    assert A.nrows == 5 and rank(A) == 4


def test_known_dimensions():
    assert fp.ideal_dim(char3_points(), 4) == 3
    assert fp.ideal_dim(b3_points().scaled(2), 5) == 0


def test_alpha_omega_reg():
    one = fp.points_scheme("Q", [(1, 2, 3)])
    assert fp.regularity(one) == 1 and fp.omega(one) == 1
    two = fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0)])
    assert fp.regularity(two) == 2
    np4 = near_pencil_points(4)
    assert fp.regularity(np4) >= fp.omega(np4)
    Z3 = fermat_points(3)
    assert fp.alpha(Z3) == 4 and fp.omega(Z3) == 4
    S6 = star_points(6)
    assert fp.alpha(S6) == 5 and fp.alpha_symbolic(S6, 2) == 6


def test_generators_of_fermat5_dual():
    from fatplane.fixtures import fermat_dual_points
    Z = fermat_dual_points(5)
    assert len(Z) == 15
    gens = fp.generators(Z)
    assert sorted((d, len(r)) for d, r in gens.items()) == [(3, 1), (5, 1)]
    assert fp.omega(Z) == 5


def test_power_piece_vertices():
    V = fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert fp.power_piece(V, 1, 3) == fp.ideal_piece(V, 3)
    assert fp.power_dim(V, 2, 3) == 0
    assert fp.ideal_dim(V.scaled(2), 3) == 1  # xyz
    assert fp.satdeg(V, 2) == 4


def test_fermat_product_not_in_square():
    Z3 = fermat_points(3)
    F = parse_form("(x^3-y^3)*(x^3-z^3)*(y^3-z^3)", Z3.field)
    assert fp.ideal_piece(Z3.scaled(3), 9).contains(F)
    assert not fp.in_power(Z3, 2, F)


def test_char3_witness():
    Z = char3_points()
    F = char3_form()
    assert fp.ideal_piece(Z.scaled(3), 9).contains(F)
    assert not fp.in_power(Z, 2, F)
    p0 = ProjPoint(Z.field, (0, 0, 1))
    assert not F(p0).is_zero()
    # every element of [I^2]_9 vanishes at (0:0:1)
    assert all(g(p0).is_zero() for g in fp.power_piece(Z, 2, 9).forms())


def test_containment_verdicts():
    Z = fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    v = fp.containment(Z, 1, 2)
    assert not v.contained and v.witness_degree == fp.alpha(Z)
    for r in (1, 2):
        assert fp.containment(Z, 2 * r, r).contained
    w = fp.containment(fermat_points(3), 3, 2)
    assert not w.contained and w.witness_degree == 9
    assert w.witness_form is not None
    assert fp.ideal_piece(fermat_points(3).scaled(3), 9).contains(w.witness_form)
    assert not fp.in_power(fermat_points(3), 2, w.witness_form)


def test_hh_containment_generic():
    Z = fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)])
    assert fp.hh_containment(Z, 1).contained


def test_satdeg_near_pencil():
    assert fp.satdeg(near_pencil_points(4), 5) == 18


def test_single_point_powers():
    one = fp.points_scheme("Q", [(0, 0, 1)])
    assert fp.satdeg(one, 3) == 0
    rr = fp.resurgence_bounds(one, 2)
    assert rr.rho_lower == 1 and rr.rho_upper == 1
    assert fp.chudnovsky_check(one, 2) == "CertifiedHolds"


def test_waldschmidt_bounds():
    wb = fp.waldschmidt_bounds(fermat2_points(), 6)
    assert dict(wb.table)[6] == 15
    assert wb.upper == Fraction(5, 2) and wb.lower >= Fraction(15, 7)
    assert fp.waldschmidt_bounds(star_points(6), 2).upper == 3
    assert fp.waldschmidt_bounds(near_pencil_points(4), 4).upper == Fraction(7, 4)
    with pytest.raises(fp.PreconditionViolated):
        fp.waldschmidt_bounds(fermat2_points(), 0)


def test_nef_certificate_fermat2():
    Z = fermat2_points()
    lines = [parse_form(t, Q) for t in ("x - y", "x + y", "z")]
    cert = fp.nef_line_certificate(Z, lines, [1, 1, 2])
    assert cert.valid and cert.bound == Fraction(5, 2)
    # dropping the weight on z breaks nefness on the line z = 0
    bad = fp.nef_line_certificate(Z, lines, [3, 3, 1])
    assert not bad.valid


def test_chudnovsky():
    assert fp.chudnovsky_check(fermat2_points(), 6) == "CertifiedHolds"
    two = fp.points_scheme("Q", [(1, 0, 0), (0, 1, 0)])
    assert fp.chudnovsky_check(two, 1) == "CertifiedHolds"


def test_star_resurgence_lower():
    rr = fp.resurgence_bounds(star_points(6), 2, pairs=[])
    assert rr.rho_lower >= Fraction(5, 3)
    assert rr.rho_lower <= rr.rho_upper and rr.rhohat_lower <= rr.rhohat_upper


def test_predictors():
    assert fp.shgh_expected(10, 1, 3) == 0
    assert fp.shgh_least_m(49) == 2
    assert fp.pell_least_m(50, 99, 14) == 403
    with pytest.raises(fp.PreconditionViolated):
        fp.shgh_least_m(36)
    with pytest.raises(fp.PreconditionViolated):
        fp.pell_least_m(50, 99, 13)


def test_shgh_generic_points():
    # ten random points: expected dimensions hold for small m
    Z = fp.FatPointScheme(Q, fp.random_points(Q, 10, seed=5))
    for m in (1, 2):
        for t in range(0, 3 * m + 3):
            assert fp.ideal_dim(Z.scaled(m), t) == fp.shgh_expected(10, m, t)


def test_intersection_multiplicity_transverse():
    o = ProjPoint(Q, (0, 0, 1))
    assert fp.intersection_multiplicity(parse_form("x", Q), parse_form("y", Q), o) == 1
    with pytest.raises(fp.NonStabilizing):
        fp.intersection_multiplicity(parse_form("x*y", Q), parse_form("x*(x+y)", Q), o)


def test_scheme_validation_and_fixture_round_trip():
    with pytest.raises(fp.FatPointError):
        fp.points_scheme("Q", [(1, 0, 0), (2, 0, 0)])
    Z = fp.FatPointScheme(Q, [((1, 2, 3), 2), ((0, 1, 0), 1)])
    assert fp.parse_points_fixture(Z.to_fixture()) == Z
    with pytest.raises(fp.BadFixture):
        fp.parse_points_fixture("point: 1 2 3\n")
    with pytest.raises(fp.BadFixture):
        fp.parse_points_fixture("field: Q\npoint: 1 2\n")
