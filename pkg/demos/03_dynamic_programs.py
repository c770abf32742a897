"""Maintain independent set, 3-colorability and domination under updates.

Every update rebuilds only a prefix of the exported tree decomposition, and
the automata recompute states on that prefix alone.

Run: python3 demos/03_dynamic_programs.py
"""

import random

from dyntw.automata import by_name, prds_init, prds_update
from dyntw.engine import DynEngine
from dyntw.oracle import color_brute, domset_brute, exact_treewidth, mis_brute
from dyntw.treedecomp import GlueState

rng = random.Random(7)
n = 10
e = DynEngine(n, 2)
gs = GlueState(e)
runs = {name: prds_init(gs.td, by_name(name)) for name in ("mis", "color3", "domset")}

print(f"{'op':>8} {'tw':>3} {'width':>5} {'|P|':>4} {'|P`|':>4} {'mis':>4} {'3col':>5} {'dom':>4}  brute")
for _ in range(25):
    u, v = rng.sample(range(n), 2)
    if e.graph.has_edge(u, v):
        seq, op = e.delete_edge(u, v), f"- {u} {v}"
    else:
        e.graph.add_edge(u, v)
        too_wide = exact_treewidth(e.graph) > 2
        e.graph.remove_edge(u, v)
        if too_wide:
            continue
        seq, op = e.add_edge(u, v), f"+ {u} {v}"
    desc = gs.update(seq)
    for r in runs.values():
        prds_update(r, desc)
    g = e.graph
    got = (runs["mis"].root_answer(), runs["color3"].root_answer(), runs["domset"].root_answer())
    want = (mis_brute(g), color_brute(g, 3), domset_brute(g))
    print(f"{op:>8} {exact_treewidth(g):3d} {gs.td.width():5d} {len(desc.p):4d} {len(desc.new_nodes):4d} "
          f"{got[0]:4d} {str(got[1]):>5} {got[2]:4d}  {'ok' if got == want else 'MISMATCH'}")
print(f"\nexported decomposition: {len(gs.td.nodes)} nodes, width {gs.td.width()}, depth {gs.td.depth()}")
