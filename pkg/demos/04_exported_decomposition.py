"""Print the exported tree decomposition of a small wheel.

Each line is ``id parentId bag=(...) edges=(...)``; every graph edge is
listed at exactly one node, the shallowest one whose bag covers it.

Run: python3 demos/04_exported_decomposition.py
"""

from dyntw.engine import DynEngine
from dyntw.oracle import exact_treewidth
from dyntw.treedecomp import build_full, validate_export

n = 7
e = DynEngine(n, 3)
for i in range(1, n):
    e.add_edge(0, i)
    e.add_edge(i, i % (n - 1) + 1)
td = build_full(e)
print(td.serialize())
print(f"\ntw = {exact_treewidth(e.graph)}, width = {td.width()}, bound 9tw+8 = {9 * exact_treewidth(e.graph) + 8}")
print("valid:", validate_export(e.graph, td).ok)
print("\nsuperbranch decomposition (id depth kind parent |L| adhesion):")
print(e.d.dump())
