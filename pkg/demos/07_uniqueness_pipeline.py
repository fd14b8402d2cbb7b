"""
From an anonymous graph to the Games graph
==========================================

Take the Games graph, hide it behind a random relabeling, and recover the
full structure: involutions, coordinates, the cap, and a linear map onto
the reference cap.
"""
import numpy as np

from srgfam import caps, dioph, family, involution, linearize
from srgfam.graphcore import SrgParams, verify_srg

G = family.build_games(caps.reference_cap()).relabel(np.random.default_rng(7).permutation(729))
print(verify_srg(G, SrgParams(729, 112, 1, 20)).passed)

S = involution.all_sigmas(G)
print(involution.verify_lemma3(G, S, mode="sampled", samples=20000, seed=0).passed)

C = linearize.coordinatize(G, S, 0)
K = caps.extract_cap(G, C)
print("cap of size", len(K), caps.is_cap(K).passed)

g = caps.cap_equiv(K, caps.reference_cap())
print("equivalent to the reference cap via\n", g)

# the bounded arithmetic side: only n = 1, 2, 4 make v a power of 3
print([(s.n, s.m) for s in dioph.scan(10**5)])
