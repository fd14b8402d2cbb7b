"""
Involutions from neighbourhoods
===============================

Every vertex v of a family graph carries an automorphism sigma_v of order
two. It fixes v, swaps the matched pairs inside N(v), and is forced on the
rest of the graph by the neighbourhood traces.
"""
import numpy as np

from srgfam import family, involution
from srgfam.graphcore import neighborhood_matching

G = family.build_brouwer_haemers()

# N(0) splits into ten edges
print("matching at 0:", neighborhood_matching(G, 0).pairs)

s0 = involution.sigma(G, 0)
print("sigma_0 =", s0.serialize()[:60], "...")

# stack all 81 of them; S[v, x] = sigma_v(x)
S = involution.all_sigmas(G)
print("symmetric:", bool((S == S.T).all()))

# a product of two distinct involutions is fixed-point-free of order 3
h = S[0][S[7]]
print("fixed points of sigma_0 sigma_7:", int(np.count_nonzero(h == np.arange(81))))
print("order 3:", bool((h[h[h]] == np.arange(81)).all()))

for rep in (involution.verify_lemma2(G, S), involution.verify_lemma3(G, S), involution.triangle_check(G, S)):
    print(rep.check, rep.passed)
