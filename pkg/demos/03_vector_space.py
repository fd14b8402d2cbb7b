"""
A vector space hiding in the vertex set
=======================================

Choosing a vertex v0 as zero, u + v = sigma_v0(sigma_u(v)) turns the vertices
into F_3^m. In those coordinates the neighbours of zero form a cap, and the
graph is the Cayley graph of that cap.
"""
from srgfam import caps, family, involution, linearize

G = family.build_l33()
S = involution.all_sigmas(G)

print("addition table of L33 based at vertex 4:")
print(linearize.addition_table(S, 4))

C = linearize.coordinatize(G, S, 4)
for x in range(9):
    print(x, C.coords[x])

G = family.build_brouwer_haemers()
S = involution.all_sigmas(G)
C = linearize.coordinatize(G, S, 0)
print("BH dimension:", C.m)
print(linearize.group_axioms_check(G, S, 0).passed, linearize.check_sigma_linear(G, S, C).passed)

K = caps.extract_cap(G, C)
print(caps.format_cap(K))
print("sections:", dict(caps.hyperplane_profile(K)))

# rebuild the graph from the cap and compare after relabeling
H = caps.cayley_from_cap(K)
print("same graph:", G.relabel(C.codes) == H)
