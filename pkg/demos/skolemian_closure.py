"""
Skolemian sets and their closure operations
===========================================

``Def(a1, ..., an ; a)`` collects the tuples whose valuation vectors hit
``ai`` at n distinct primes and ``a`` everywhere else.
"""

from skolem import presburger as pb
from skolem import semilinear as sl
from skolem import skolemian as sk
from skolem.membership import member_semi, member_skolemian

v = pb.var(1)
once = sl.SemilinearSet(1, pb.eq(v - 1))
zero_or_two = sl.SemilinearSet(1, pb.disj(pb.eq(v), pb.eq(v - 2)))

# one prime to the first power, every other prime squared or absent
S = sk.make_def([once], zero_or_two)
print(S)
print([w for w in range(1, 80) if member_skolemian(S, (w,))])

# the complement is a finite union again
C = sk.complement_skolemian(S)
print(len(C), "disjuncts in the complement")
print(all(member_semi(C, (w,)) != member_skolemian(S, (w,)) for w in range(1, 500)))

# intersections enumerate how the exceptional primes can coincide
T = sk.make_def([], sl.add_zero(sl.SemilinearSet(1, pb.le(v - 1))))
both = sk.intersect_skolemian(S, T)
print(both)
print([w for w in range(1, 80) if member_semi(both, (w,))])

# serialization is plain JSON
print(sk.to_json(both))
