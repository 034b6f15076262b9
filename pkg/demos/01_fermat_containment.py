"""Fermat configurations: when the third symbolic power escapes the square.

Run with ``python3 demos/01_fermat_containment.py``.
"""

from fractions import Fraction

from fatplane import fatpoints as fp
from fatplane import fixtures as fx

# Seven rational points: the coordinate vertices and (+-1 : +-1 : 1).
Z = fx.fermat2_points()
print("Fermat n=2:", len(Z.support), "points")
for m in (1, 2, 3, 4, 6):
    a = fp.alpha_symbolic(Z, m)
    print("  alpha(I(%dZ)) = %2d   ratio %s" % (m, a, Fraction(a, m)))
wb = fp.waldschmidt_bounds(Z, 6)
print("  Waldschmidt constant lies in [%s, %s]" % (wb.lower, wb.upper))

# Twelve triple points of xyz(x^3 - y^3)(y^3 - z^3)(z^3 - x^3), over Q(w), w^2 + w + 1 = 0.
Z3 = fx.fermat_points(3)
print()
print("Fermat n=3:", len(Z3.support), "points over", Z3.field.spec.text)
print("  alpha =", fp.alpha(Z3), " omega =", fp.omega(Z3))
for t in (8, 9):
    print("  dim [I(3Z)]_%d = %d" % (t, fp.ideal_dim(Z3.scaled(3), t)))

v = fp.containment(Z3, 3, 2)
print("  I^(3) inside I^2?", "yes" if v.contained else "no, first failure in degree %d" % v.witness_degree)

# Three lines through the nine points off the coordinate triangle give a nef class;
# it pins the asymptotic resurgence from above.
lines, weights, support = fx.parse_certificate(fx.read_text("fermat3.cert"), Z3)
cert = fp.nef_line_certificate(Z3, lines, weights, support)
rr = fp.resurgence_bounds(Z3, 3, certificates=[cert])
print("  asymptotic resurgence in [%s, %s]" % (rr.rhohat_lower, rr.rhohat_upper))
print("  resurgence at least", rr.rho_lower)
