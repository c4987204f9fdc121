"""A nodal curve with normalization the affine line, glued at two points.

Run with ``python3 demos/general_nodal_curve.py [q1 q2]``.
"""

import sys
from fractions import Fraction

from flopcat.algebra_tables import CurveData
from flopcat.complexes import ext_table
from flopcat.nodal_general import nodal_objects, split_node_crosscheck, verify_general_node

q1, q2 = (Fraction(a) for a in sys.argv[1:3]) if len(sys.argv) > 2 else (1, -1)
curve = CurveData(q1, q2, 14)
o = nodal_objects(curve)
t = o["table"]

# End(P_X) is C + gC[t]: nothing in t-degree 1.
print("End(P_X) per t-degree:", [t.graded_dims("X", "X").get(k, 0) for k in range(6)])
print("g =", curve.g)
print(o["E_1"])

for a, b in [("E_1", "E_1"), ("E_1", "E_2"), ("F_1", "F_1")]:
    print(f"Ext({a}, {b}) = {ext_table(o[a], o[b]).totals()}")

report = verify_general_node(curve)
for c in report.children:
    print(f"  {c.status:<5} {c.name}")
print(report.name, report.status)
print(split_node_crosscheck(14).status, "against the three-vertex node")
