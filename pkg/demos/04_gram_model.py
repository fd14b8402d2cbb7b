"""
The two-valued Gram model
=========================

Unit vectors with inner product p on edges and q on non-edges. The vectors
never appear; everything is read off exact rational Gram matrices.
"""
from srgfam import euclid, family
from srgfam.exactlinalg import psd_rank

G = family.build_brouwer_haemers()
c = euclid.rep_constants(2)
print("p =", c.p, " q =", c.q, " alpha, beta, gamma =", c.alpha, c.beta, c.gamma)

# the whole model lives in a 20-dimensional space
print("PSD rank of the full Gram matrix:", psd_rank(euclid.gram_of_subset(G, 2, range(81))))
print("rank on N(0):", euclid.gram_rank_of_neighborhood(G, 2, 0))

rep = euclid.two_design_check(G, 2)
print("sum", rep.details["sum_of_gram"], " second moment", rep.details["second_moment"])

# x_u is a fixed combination of x_v, the A-set and the B-set
for u in (30, 50, 80):
    if not G.adjacent(0, u):
        print("residual at", u, "=", euclid.relation_residual(G, 2, 0, u))
