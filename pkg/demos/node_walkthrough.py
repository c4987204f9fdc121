"""Walk through the node's Auslander order: simples, twists, the flop.

Run with ``python3 demos/node_walkthrough.py``.
"""

from flopcat.complexes import ext_table, isomorphic, shift
from flopcat.sod_twist import cotwist_table, dual_twist, flop, standard_objects, twist

o = standard_objects(12)
print(o.table)

# The simples at the branch vertices come with their length-two resolutions.
print(o.E_x)
print(o.E_y)

# Both are exceptional, and they see each other only in degree 2.
for a, b in [("E_x", "E_x"), ("E_x", "E_y"), ("E_y", "E_x")]:
    et = ext_table(o.named()[a], o.named()[b])
    print(f"Ext({a}, {b}) = {et.totals()}")

grid = cotwist_table(o)
print("cotwist:", [[t.totals() for t in row] for row in grid])

# The twist and its inverse undo each other.
for name in ("P_X", "P_x", "E_x"):
    G = o.named()[name]
    back = twist(dual_twist(G, o), o)
    print(f"T T^-1 {name} ~ {name}:", isomorphic(back, G).holds)

# F_x is the cone of the degree-2 class, and it is 3-spherical.
print(o.F_x, ext_table(o.F_x, o.F_x).totals())

# The flop sends F_x to F_y[1]; doing it twice gives F_x[2].
phi = flop(o.F_x, "x-to-y", o)
print("flop(F_x) ~ F_y[1]:", isomorphic(phi, shift(o.F_y, 1), max_shift=2).holds)
print("flop^2(F_x) ~ F_x[2]:", isomorphic(flop(phi, "y-to-x", o), shift(o.F_x, 2), max_shift=3).holds)
