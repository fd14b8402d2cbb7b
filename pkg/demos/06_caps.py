"""
Searching for caps
==================

Caps are found by seeded backtracking. In PG(5,3) the search runs over
orbits of a Singer subgroup of order 7, which finds a 56-cap at once, and
any two 56-caps found this way are matched by a linear map.
"""
import time

import numpy as np

from srgfam import caps
from srgfam.exactlinalg import f3_rank

for d, target in ((3, 4), (4, 10)):
    stats = {}
    K = caps.cap_search(d, target, seed=0, stats=stats)
    print(f"PG({d - 1},3): {target}-cap found after {stats['nodes']} nodes")

t = time.perf_counter()
K = caps.cap_search(6, 56, seed=0, orbit=7)
print(f"56-cap in {time.perf_counter() - t:.2f}s, maximal: {caps.is_cap(K).details['maximal']}")
print("sections:", dict(caps.hyperplane_profile(K)))

# scramble it by a random element of GL(6,3) and recover the map
rng = np.random.default_rng(1)
while True:
    M = rng.integers(0, 3, (6, 6))
    if f3_rank(M) == 6:
        break
stats = {}
g = caps.cap_equiv(K, K.transform(M), stats=stats)
print("witness:\n", g, "\nnodes:", stats["nodes"])
