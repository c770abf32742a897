"""Watch the engine keep a growing path shallow.

Inserting the edges of a path one at a time is the worst case for a naive
decomposition: every new edge hangs below the previous one.  The engine
rotates the endpoints up, inserts, and rebalances; the potential drops by
at least one per balancing step, which pays for the work.

Run: python3 demos/02_balancing_a_path.py [n]
"""

import math
import sys

from dyntw import constants
from dyntw.engine import DynEngine

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3000
e = DynEngine(n, 1, degree_cap=5, balance_dist=8, instrument=True)
print(f"n={n}, degree cap {e.params.degree_cap}, balance distance {e.params.balance_dist}")
print(f"{'edges':>7} {'height':>6} {'bound':>7} {'Phi':>10} {'mean size_T':>12}")
window = []
for i in range(n - 1):
    e.add_edge(i, i + 1)
    window.append(e.ledger.ops[-1].size_t)
    if (i + 1) % (n // 10) == 0:
        bound = constants.depth_bound(e.params.balance_dist, 1 + n + i + 1)
        print(f"{i + 1:7d} {e.height():6d} {bound:7.0f} {e.d.phi():10.1f} {sum(window) / len(window):12.1f}")
        window = []

drops = [ev.phi_before - ev.phi_after for ev in e.balance_events]
print(f"\n{len(drops)} balancing steps; smallest potential drop {min(drops):.2f}")
rot = [ev.phi_before - ev.phi_after for ev in e.rotate_events]
print(f"{len(rot)} rotation steps; smallest phi(X) drop {min(rot):.3f}")
print(f"landings away from depth 2: {len(e.landing_failures)}")
print(f"log2 n = {math.log2(n):.1f}; final height {e.height()}")
