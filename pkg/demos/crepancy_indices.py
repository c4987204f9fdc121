"""Weak, fair and strong crepancy for the presets, with the index of crepancy.

Run with ``python3 demos/crepancy_indices.py``.
"""

from flopcat.serre_crepancy import crepancy_classify

rows = [crepancy_classify("big-node"), crepancy_classify("small-node")]
rows += [crepancy_classify("kronecker", d=d) for d in range(4)]

print(f"{'resolution':<16} {'weak':>5} {'fair':>5} {'index':>5} {'strong':>6}")
for v in rows:
    index = "-" if v.index is None else v.index
    print(f"{v.preset:<16} {v.weak!s:>5} {v.fair!s:>5} {index!s:>5} {v.strong!s:>6}")

# The evidence is a list of reports; the Serre checks inside carry their tables.
small = rows[1]
for rep in small.evidence:
    print(rep.name, rep.status, rep.witness or "")
