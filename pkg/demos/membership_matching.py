"""
Deciding membership with bipartite matchings
============================================

Primes of w sit on the left, exceptional slots on the right.  w belongs to
the set when the primes outside the rest set and all the slots can both
be matched.
"""

from skolem import presburger as pb
from skolem import semilinear as sl
from skolem import skolemian as sk
from skolem.matching import LEFT, RIGHT, has_matching_covering
from skolem.membership import membership_graph, valuation_profile

v1, v2 = pb.var(1), pb.var(2)
profile = valuation_profile((12, 30))
print(profile.entries)

# one prime divides the first coordinate only; all others divide both or neither
only_first = sl.SemilinearSet(2, pb.conj(pb.ge(v1 - 1), pb.eq(v2)))
same = sl.SemilinearSet(2, pb.eq(v1 - v2))
S = sk.make_def([only_first], same)

for w in ((4, 1), (12, 30), (20, 5), (1, 1)):
    g, outside = membership_graph(S, valuation_profile(w))
    ok = has_matching_covering(g, LEFT, outside) and has_matching_covering(g, RIGHT, range(S.n))
    print(w, sorted(g.edges), outside, ok)
