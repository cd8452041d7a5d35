import itertools
import random

import pytest

from skolem import battery
from skolem import skolemian as sk
from skolem.errors import DomainError, ParseError
from skolem.frontend import (And, Atom, Exists, Forall, Implies, Not, Or, Product, compile_formula, decide,
                             eval_ground, free_variables, parse, to_text)
from skolem.membership import member_semi
from skolem.oracle import bounded_eval


def atom(lhs, rhs):
    return Atom(Product(tuple(lhs)), Product(tuple(rhs)))


def test_parse_examples():
    assert parse("x = y") == atom("x", "y")
    assert parse("exists z . x * z = y") == Exists("z", atom("xz", "y"))
    f = parse("forall y . x * y = y")
    assert f == Forall("y", atom("xy", "y"))
    assert all(bounded_eval(f, {"x": x}, 20) == (x == 1) for x in range(1, 21))


def test_parse_precedence_and_sugar():
    assert parse("a = b | c = d & e = f") == Or(atom("a", "b"), And(atom("c", "d"), atom("e", "f")))
    assert parse("a = b -> c = d -> e = f") == Implies(atom("a", "b"), Implies(atom("c", "d"), atom("e", "f")))
    assert parse("forall x y . x = y") == Forall("x", Forall("y", atom("x", "y")))
    assert parse("!(x = y)") == parse("! x = y") == Not(atom("x", "y"))
    assert parse("x = y # trailing comment\n") == atom("x", "y")


def test_products_are_multisets():
    assert parse("x*y*x = z") == parse("x*x*y = z")


def test_round_trip_through_text():
    for s in battery.SENTENCES:
        f = s.formula
        assert parse(to_text(f)) == f
    for _, text in battery.PREDICATES.values():
        assert parse(to_text(parse(text))) == parse(text)


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse("x = y &\n  & z = w")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(ParseError) as e:
        parse("exists . x = y")
    assert (e.value.line, e.value.column) == (1, 8)
    with pytest.raises(ParseError):
        parse("x = $")


def test_free_variables_order():
    assert free_variables(parse("y*x = z & exists y . y = w")) == ("x", "y", "z", "w")


def test_compile_examples():
    eq = compile_formula(parse("x = y"), ("x", "y"))
    assert sk.render_semi(eq) == "Def({ v1,v2 | v1 - v2 = 0 })"
    mul = compile_formula(parse("x * y = z"), ("x", "y", "z"))
    assert sk.render_semi(mul) == "Def({ v1,v2,v3 | v1 + v2 - v3 = 0 })"
    assert compile_formula(parse("!(x = x)"), ("x",)) == sk.empty_semi(1)


def test_compile_order_permutation():
    f = parse("exists z . x * z = y")
    xy = compile_formula(f, ("x", "y"))
    yx = compile_formula(f, ("y", "x"))
    for a, b in itertools.product(range(1, 25), repeat=2):
        assert member_semi(xy, (a, b)) == member_semi(yx, (b, a)) == (b % a == 0)


def test_compile_order_extra_and_missing():
    wide = compile_formula(parse("x = y"), ("x", "q", "y"))
    assert member_semi(wide, (3, 7, 3)) and not member_semi(wide, (3, 7, 4))
    with pytest.raises(ValueError):
        compile_formula(parse("x = y"), ("x",))


def test_decide_examples():
    assert decide(parse("exists x . forall y . x * y = y")) is True
    assert decide(parse("forall x . exists y . y * y = x")) is False
    assert decide(parse("forall x . forall y . x * y = y * x")) is True
    with pytest.raises(ValueError):
        decide(parse("x = y"))


def test_shadowing_uses_innermost_binding():
    # the inner x is a fresh variable, so this says: some y has a square root
    assert decide(parse("exists x . exists x . exists y . x*x = y"))
    assert decide(parse("exists x . (x*x = x & exists x . !(x*x = x))"))


def test_eval_ground_examples():
    div = parse("exists z . x * z = y")
    assert eval_ground(div, {"x": 6, "y": 42})
    prime = battery.PREDICATES["prime"][1]
    assert eval_ground(parse(prime), {"x": 7}) and not eval_ground(parse(prime), {"x": 12})
    assert eval_ground(parse("x = x"), {"x": 5})


def test_eval_ground_errors():
    with pytest.raises(DomainError):
        eval_ground(parse("x = x"), {"x": 0})
    with pytest.raises(ValueError):
        eval_ground(parse("x = y"), {"x": 1})


def test_predicates_small_grid():
    for name, (params, text) in battery.PREDICATES.items():
        f = parse(text)
        top = 40 if len(params) == 1 else 12
        for point in itertools.product(range(1, top + 1), repeat=len(params)):
            assert eval_ground(f, dict(zip(params, point))) == battery.REFERENCE[name](*point), (name, point)


def _random_qf(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        lhs = tuple(rng.choice(names) for _ in range(rng.randint(1, 2)))
        rhs = tuple(rng.choice(names) for _ in range(rng.randint(1, 2)))
        return Atom(Product(lhs), Product(rhs))
    kind = rng.choice((And, Or, Implies, Not))
    if kind is Not:
        return Not(_random_qf(rng, names, depth - 1))
    return kind(_random_qf(rng, names, depth - 1), _random_qf(rng, names, depth - 1))


def test_random_guarded_formulas_match_bounded_evaluation():
    # the bound variable always divides y, so quantifying over 1..max(args) is exact
    rng = random.Random(21)
    for _ in range(25):
        body = _random_qf(rng, ("x", "y", "z"), 2)
        guard = parse("exists a . z*a = y")
        f = Exists("z", And(guard, body)) if rng.random() < 0.5 else Forall("z", Implies(guard, body))
        for x, y in itertools.product(range(1, 9), repeat=2):
            env = {k: v for k, v in (("x", x), ("y", y)) if k in free_variables(f)}
            assert eval_ground(f, env) == bounded_eval(f, env, max(x, y)), to_text(f)
