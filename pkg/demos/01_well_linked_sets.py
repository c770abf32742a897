"""Which edge sets of a small graph are well-linked, and how they split.

Run: python3 demos/01_well_linked_sets.py
"""

from dyntw.hypergraph import Graph, support_hypergraph
from dyntw.oracle import is_well_linked_brute
from dyntw.welllinked import partition_into_well_linked, test_well_linked

path = support_hypergraph(Graph(range(4), [(0, 1), (1, 2), (2, 3)]))
h = path.hypergraph
ends = {path.edge_ids[(0, 1)], path.edge_ids[(2, 3)]}
print("support hypergraph of P4:", h)
print(f"the two end edges {sorted(ends)} have boundary {sorted(h.boundary(ends))}")

w = test_well_linked(h, ends)
print(f"witness: {sorted(w.c1)} | {sorted(w.c2)} with boundaries {w.lam1}, {w.lam2} < {w.lam_a}")
print("brute force agrees:", not is_well_linked_brute(h, ends))

grid = Graph(range(6), [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
su = support_hypergraph(grid)
graph_edges = set(su.edge_ids.values())
parts = partition_into_well_linked(su.hypergraph, graph_edges)
print(f"\n2x3 grid: its {len(graph_edges)} edge hyperedges (boundary "
      f"{sorted(su.hypergraph.boundary(graph_edges))}) fall into {len(parts)} well-linked parts")
for p in parts:
    print("  ", sorted(p), "boundary", sorted(su.hypergraph.boundary(p)))
