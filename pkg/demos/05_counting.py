"""
Counting intersections
======================

For a non-neighbour u of v_inf, count the non-neighbours w by how much
their traces A(w) meet A(u). Three counting identities pin the top of the
histogram once the bottom is known.
"""
from srgfam import euclid, family

G = family.build_brouwer_haemers()
prof = euclid.profile_measure(G, 2, 0, 21)
print("measured m:", prof.m)
print("identities:", prof.checks.details["moments"], "==", prof.checks.details["closed_form"])

# solve the linear system from m_0 alone
print("solved:", euclid.profile_solve(2, prof.m[:1]).top)

# the inequality that forces m_0 = 1 in the extremal case
for n in range(2, 9):
    rep = euclid.lemma1_check(n)
    print(n, rep.passed, rep.details["tuples"], rep.details["equality_cases"])

# the final quadratic form has negative determinant for every n tried
print([str(euclid.quadform(n).det) for n in range(1, 6)])
