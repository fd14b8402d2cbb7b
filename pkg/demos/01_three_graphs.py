"""
The three family graphs
=======================

Build L(3,3), the Brouwer-Haemers graph and the Games graph and check
that each one is strongly regular with the expected parameters.
"""
import time

import numpy as np

from srgfam import caps, family
from srgfam.graphcore import spectrum, verify_srg

# n = 1, 2, 4 are the only members that exist
for n in (1, 2, 4):
    p = family.family_params(n)
    s = spectrum(p)
    print(f"n={n}: {p.astuple()}  eigenvalues {s.r}, {s.s}  multiplicities {s.f}, {s.g}")

# the Games graph needs a 56-cap; the package ships one
cap = caps.reference_cap()
graphs = {"L33": family.build_l33(),
          "Brouwer-Haemers": family.build_brouwer_haemers(),
          "Games": family.build_games(cap)}

for (name, G), n in zip(graphs.items(), (1, 2, 4)):
    t = time.perf_counter()
    rep = verify_srg(G, family.family_params(n))
    print(f"{name:16s} v={G.v:4d} edges={rep.details['edges']:6d} srg={rep.passed} "
          f"({time.perf_counter() - t:.2f}s)")

# the same identity by hand for the smallest one
A = graphs["L33"].matrix.astype(int)
print(A @ A + A - 2 * np.eye(9, dtype=int))   # every entry is mu = 2
