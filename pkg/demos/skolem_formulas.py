"""
Formulas over multiplication
============================

Every formula of ``<N+; *, =>`` compiles to a finite union of skolemian
sets; sentences compile to true or false.
"""

from skolem import battery
from skolem import skolemian as sk
from skolem.frontend import compile_formula, decide, eval_ground, parse

print(decide(parse("exists x . forall y . x*y = y")))
print(decide(parse("forall x . exists y . y*y = x")))

prime = parse(battery.PREDICATES["prime"][1])
print(sk.render_semi(compile_formula(prime)))
print([n for n in range(1, 60) if eval_ground(prime, {"x": n})])

# divisibility: the quotient z is projected away
div = compile_formula(parse("exists z . x*z = y"))
print(sk.render_semi(div))

# the same formula with its coordinates swapped
print(sk.render_semi(compile_formula(parse("exists z . x*z = y"), ("y", "x"))))

squarefree = parse(battery.PREDICATES["squarefree"][1])
print([n for n in range(1, 40) if eval_ground(squarefree, {"x": n})])
