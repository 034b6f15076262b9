"""Unexpected curves from the splitting type of the dual arrangement.

For a point set Z, take the lines dual to its points and restrict the
gradient of their product to a general line.  The two degrees (a, b) of
the syzygy bundle there decide whether some degree-t curve through Z can
have a point of multiplicity t - 1 at a general point p, even though the
naive count says it should not exist.
"""

from fatplane import fatpoints as fp
from fatplane import fixtures as fx
from fatplane import unexpected as ux
from fatplane.polyring import mult_at, parse_form

B = fx.b3_points()
st = ux.splitting_type(B)
print("B3, nine points: splitting type (%d, %d)" % (st.a, st.b))
print("  t_Z =", ux.t_Z(B))
rep = ux.detect_unexpected(B, verify=True)
print("  unexpected degrees:", rep.degrees)

# Pick a random point off the seven lines of the configuration.
lines = [parse_form(t, B.field) for t in fx.B3_LINES.values()]
p = next(q for q in fp.random_points(B.field, 20, seed=3)
         if all(not B.field.is_zero(ell.eval_raw(q.raw)) for ell in lines))
C = ux.unexpected_curve(B, 4, p)
print("  at p =", p.to_text())
print("  quartic:", C.to_text())
print("  multiplicity at p:", mult_at(C, p))

# The dual points of the Fermat arrangement with n = 5: 3n = 15 points over Q(zeta_5).
Z5 = fx.fermat_dual_points(5)
rep5 = ux.detect_unexpected(Z5, verify=True)
print()
print("Fermat n=5 dual: splitting type (%d, %d), unexpected degrees %s" % (rep5.a, rep5.b, rep5.degrees))
