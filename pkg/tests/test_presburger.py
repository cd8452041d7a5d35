import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from skolem import presburger as pb
from skolem.config import limits
from skolem.errors import DimensionError, ParseError, ResourceLimitError
from skolem.presburger import FALSE, TRUE, LinearTerm, var

from generators import qe_agrees, random_formula, witness_bound

v1, v2, v3 = var(1), var(2), var(3)


def test_eval_examples():
    assert pb.eval_formula(pb.eq(v1 - v2), (3, 3))
    assert pb.eval_formula(pb.dvd(2, v1 + 1), (3,))
    assert pb.eval_formula(pb.eq(v1 + v2 - v3), (2, 1, 3))
    assert not pb.eval_formula(pb.eq(v1 + v2 - v3), (2, 1, 4))


def test_eval_ignores_extra_coordinates_and_rejects_short_points():
    assert pb.eval_formula(pb.le(v1 - 2), (1, 99, 99))
    with pytest.raises(DimensionError):
        pb.eval_formula(pb.eq(v1 - v3), (1, 2))


class TestCanonicalAtoms:
    def test_equality_divides_out_gcd(self):
        assert pb.eq(v1.scale(2) - v2.scale(4) + 6) == pb.eq(v1 - v2.scale(2) + 3)
        assert pb.eq(v1.scale(2) + 1) is FALSE

    def test_equality_sign(self):
        assert pb.eq(-v1 + v2) == pb.eq(v1 - v2)

    def test_inequality_rounds_constant(self):
        # 2*v1 + 3 <= 0  <=>  v1 <= -2
        assert pb.le(v1.scale(2) + 3) == pb.le(v1 + 2)

    def test_divisibility_reduction(self):
        assert pb.dvd(4, v1.scale(2) + 2) == pb.dvd(2, v1 + 1)
        assert pb.dvd(4, v1.scale(2) + 1) is FALSE
        assert pb.dvd(1, v1) is TRUE
        assert pb.dvd(3, v1.scale(4) + 5) == pb.dvd(3, v1 + 2)
        # 5 | 2*v1 + 1  <=>  5 | v1 + 3
        assert pb.dvd(5, v1.scale(2) + 1) == pb.dvd(5, v1 + 3)

    def test_closed_atoms_fold(self):
        assert pb.eq(LinearTerm((), 0)) is TRUE
        assert pb.le(LinearTerm((), 1)) is FALSE
        assert pb.dvd(3, LinearTerm((), 9)) is TRUE

    def test_negated_inequality_stays_an_atom(self):
        f = pb.neg(pb.le(v1 - 3))
        assert isinstance(f, pb.Atom) and f == pb.le(-v1 + 4)

    def test_not_only_wraps_eq_or_dvd(self):
        with pytest.raises(TypeError):
            pb.Not(pb.le(v1))


class TestConnectives:
    def test_interval_merge(self):
        assert pb.conj(pb.ge(v1 - 3), pb.le(v1 - 3)) == pb.eq(v1 - 3)
        assert pb.conj(pb.ge(v1 - 4), pb.le(v1 - 3)) is FALSE
        assert pb.conj(pb.le(v1 - 3), pb.le(v1 - 5)) == pb.le(v1 - 3)

    def test_holes_tighten_bounds(self):
        f = pb.conj(pb.ge(v1 - 3), pb.le(v1 - 4), pb.ne(v1 - 3))
        assert f == pb.eq(v1 - 4)

    def test_disjunction_covering_everything(self):
        assert pb.disj(pb.le(v1 - 3), pb.ge(v1 - 4)) is TRUE
        assert pb.disj(pb.eq(v1), pb.ne(v1)) is TRUE

    def test_conflicting_residues(self):
        assert pb.conj(pb.dvd(3, v1 + 1), pb.dvd(3, v1 + 2)) is FALSE

    def test_absorption(self):
        a, b = pb.eq(v1 - 1), pb.eq(v2 - 2)
        assert pb.conj(a, pb.disj(a, b)) == a
        assert pb.disj(a, pb.conj(a, b)) == a

    def test_simplify_propagates_context(self):
        f = pb.conj(pb.le(v1 - 2), pb.disj(pb.le(v1 - 5), pb.eq(v2 - 7)))
        assert pb.simplify(f) == pb.le(v1 - 2)

    def test_naturals_drop_trivial_guards(self):
        assert pb.simplify(pb.conj(pb.ge(v1), pb.dvd(2, v1)), naturals=True) == pb.dvd(2, v1)


def test_eliminate_doubling():
    g = pb.eliminate_exists(pb.eq(v1 + v1 - v2), 1)
    assert 1 not in g.variables
    evens = [n for n in range(65) if pb.eval_formula(g, (0, n))]
    assert evens == list(range(0, 65, 2))
    witnessed = [n for n in range(65) if any(2 * k == n for k in range(65))]
    assert evens == witnessed


def test_eliminate_identity_and_false():
    assert pb.eliminate_exists(pb.eq(v1 - v2), 1) is TRUE
    assert pb.eliminate_exists(FALSE, 1) is FALSE


def test_eliminate_respects_naturals():
    # over the integers v1 = v2 - 5 always has a solution, over N only when v2 >= 5
    g = pb.eliminate_exists(pb.eq(v1 - v2 + 5), 1)
    assert [n for n in range(10) if pb.eval_formula(g, (0, n))] == [5, 6, 7, 8, 9]


def test_decide_examples():
    assert pb.decide_sentence([("exists", 1)], pb.eq(v1 + 1)) is False
    assert pb.decide_sentence([("exists", 1)], pb.conj(pb.dvd(2, v1), pb.le(v1 - 3))) is True
    assert pb.decide_sentence([("forall", 1), ("exists", 2)], pb.eq(v2 - v1)) is True
    assert pb.decide_sentence([("forall", 1), ("exists", 2)], pb.eq(v2.scale(2) - v1)) is False


def test_decide_requires_closed_matrix():
    with pytest.raises(DimensionError):
        pb.decide_sentence([("exists", 1)], pb.eq(v1 - v2))


def test_size_cap_is_reported():
    f = pb.conj(*(pb.dvd(m, v1 + v2 + k) for m, k in ((7, 1), (11, 2), (13, 3))),
                pb.le(v1 - v2.scale(3)), pb.le(v2 - v1.scale(5) - 1))
    pb.eliminate_exists.cache_clear()
    with limits(max_formula_nodes=50):
        with pytest.raises(ResourceLimitError):
            pb.eliminate_exists(f, 1)
    pb.eliminate_exists.cache_clear()


def test_witness_bound_is_sufficient_on_a_hard_case():
    # witnesses only at v1 = 3*v2 + 7 with v2 up to 30: derived bound must cover 97
    f = pb.eq(v1 - v2.scale(3) - 7)
    assert witness_bound(f, 1, 30) >= 97
    assert qe_agrees(f, 1, 2)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), nvars=st.integers(1, 3))
def test_qe_soundness_random(seed, nvars):
    rng = random.Random(seed)
    f = random_formula(rng, nvars, atoms=rng.randint(1, 4))
    for x in range(1, nvars + 1):
        assert qe_agrees(f, x, nvars, coord_max=12), (pb.render(f), x)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_decide_matches_bounded_model_checking(seed):
    rng = random.Random(seed)
    f = random_formula(rng, 2, atoms=rng.randint(1, 3), max_coeff=2, max_modulus=3, max_const=4)
    for q1, q2 in itertools.product(("exists", "forall"), repeat=2):
        got = pb.decide_sentence([(q1, 1), (q2, 2)], f)
        outer = range(0, 121)

        def inner(a):
            g = pb.substitute(f, 1, LinearTerm((), a))
            bound = max(60, witness_bound(g, 2, 0))
            vals = (pb.eval_formula(g, (0, b)) for b in range(bound + 1))
            return any(vals) if q2 == "exists" else all(vals)

        vals = (inner(a) for a in outer)
        expected = any(vals) if q1 == "exists" else all(vals)
        assert got == expected, (q1, q2, pb.render(f))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), nvars=st.integers(1, 4))
def test_render_parse_round_trip(seed, nvars):
    f = random_formula(random.Random(seed), nvars, atoms=4)
    assert pb.parse_formula(pb.render(f)) == f


def test_parse_accepts_general_sides_and_reports_errors():
    assert pb.parse_formula("2*v1 + 3 = v2") == pb.eq(v1.scale(2) + 3 - v2)
    assert pb.parse_formula("true & !(3 | v1)") == pb.neg(pb.dvd(3, v1))
    with pytest.raises(ParseError):
        pb.parse_formula("v1 +")
    with pytest.raises(ParseError):
        pb.parse_formula("v1 = 0 )")


def test_eval_array_matches_pointwise():
    import numpy as np

    rng = random.Random(5)
    for _ in range(30):
        f = random_formula(rng, 2, atoms=3)
        a = np.arange(8).reshape(8, 1)
        b = np.arange(8).reshape(1, 8)
        arr = np.broadcast_to(pb.eval_array(f, [a, b]), (8, 8))
        for i, j in itertools.product(range(8), repeat=2):
            assert arr[i, j] == pb.eval_formula(f, (i, j))
