"""
Eliminating a quantifier from a linear formula
==============================================

Exponent vectors live in N, so ``exists v1`` ranges over the naturals.
"""

from skolem import presburger as pb

v1, v2 = pb.var(1), pb.var(2)

# "v2 is twice something": the witness disappears, a parity test remains
doubled = pb.eq(v1 + v1 - v2)
print(pb.render(pb.eliminate_exists(doubled, 1)))

# over the integers v1 = v2 - 5 always works; over N it needs v2 >= 5
shifted = pb.eq(v1 - v2 + 5)
print(pb.render(pb.eliminate_exists(shifted, 1)))

# closed sentences are decided by eliminating innermost-out
print(pb.decide_sentence([("forall", 1), ("exists", 2)], pb.eq(v2.scale(2) - v1)))
print(pb.decide_sentence([("exists", 1)], pb.conj(pb.dvd(2, v1), pb.le(v1 - 3))))

# rendered text reads back to the same formula
f = pb.conj(pb.dvd(3, v1 + v2), pb.neg(pb.eq(v1 - 2)))
text = pb.render(f)
print(text, pb.parse_formula(text) == f)
