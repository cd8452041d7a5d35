"""
Semilinear sets of exponent vectors
===================================
"""

from skolem import semilinear as sl

diag = sl.atom_linear(2, {1: 1}, {2: 1})
print(diag, (3, 3) in diag, (3, 4) in diag)

# projecting {2 v1 = v2} onto v2 leaves the even numbers
evens = sl.project_away(sl.atom_linear(2, {1: 2}, {2: 1}), 1)
print(evens, [v for v in range(12) if (v,) in evens])

# boolean operations are pointwise
odd = ~evens
print(odd, sl.is_empty(evens & odd), sl.is_full(evens | odd))

# the zero vector matters: slots of a skolemian set must avoid it
print(sl.contains_zero(evens), sl.contains_zero(sl.remove_zero(evens)))
