"""Incidence counts and H-constants of some classical line arrangements."""

from fatplane import arrangements as arr


def show(name, A):
    inc = A.incidence()
    tv = "  ".join("t%d=%d" % kv for kv in inc.vector())
    H = arr.h_constant(A, arr.singular_points(A))
    print("%-16s %3d lines  %s   H = %s" % (name, len(A), tv, H))


for n in (1, 2, 3, 5):
    show("Fermat n=%d" % n, arr.fermat(n))
for q in (2, 3, 4):
    show("plane over F_%d" % q, arr.generate("finite_field", q))
show("Klein", arr.load_arrangement("klein"))
show("Wiman", arr.load_arrangement("wiman"))

# The combinatorial identity sum_k C(k,2) t_k = C(d,2) holds for any arrangement.
A = arr.generate("general", 7, seed=1)
inc = A.incidence()
lhs = sum(k * (k - 1) // 2 * t for k, t in inc.vector())
print("general 7 lines: pairs counted via t_k", lhs, "= C(7,2)", 7 * 6 // 2)
