"""Zariski decompositions on blow-ups of the plane.

The Waldschmidt constant of a configuration can be read off from where a
ray of divisors stops being effective.  With a declared set of curves
the decomposition is pure lattice arithmetic.
"""

from fractions import Fraction

from fatplane import fatpoints as fp
from fatplane import fixtures as fx
from fatplane import nslattice as ns

# Near-pencil: four points on z = 0 plus (0:0:1).
C = ns.near_pencil_system(4)
D = fx.near_pencil_divisor(4)
Z = ns.zariski_decompose(C, D)
print("near-pencil, D =", ns.class_text(C.combine(D)))
print("  P =", ns.class_text(Z.P_class()))
print("  N =", ns.class_text(Z.N_class()))
print("  reached after %d reduction steps" % len(Z.steps))
value, _ = ns.waldschmidt_zariski(C, D)
print("  Waldschmidt constant", value)
print("  saturation degree of I^5:", fp.satdeg(fx.near_pencil_points(4), 5))

# Star configurations: crossings of d general lines.
for d in (4, 6):
    value, _ = ns.waldschmidt_zariski(ns.star_system(d), fx.star_divisor(d))
    print("star of %d lines: Waldschmidt constant %s" % (d, value))

# Six general lines again, now along the family D_k: the denominator of
# the positive part stays bounded while the support of N changes.
S = fx.six_lines_system()
for k in range(3, 8):
    Dk = [Fraction(1, 2)] * 6 + [k - 3]
    Zk = ns.zariski_decompose(S, Dk)
    print("D_%d: N supported on %d curves, denominator %d" % (k, len(Zk.support), Zk.denominator))
