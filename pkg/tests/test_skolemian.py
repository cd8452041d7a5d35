import itertools
import json
import random

import pytest

from skolem import presburger as pb
from skolem import semilinear as sl
from skolem import skolemian as sk
from skolem.errors import DimensionError, InvariantError
from skolem.membership import member_semi, member_skolemian

from generators import random_semiskolemian, random_skolemian

V = pb.var(1)


def one_dim(f):
    return sl.SemilinearSet(1, f)


ONE = one_dim(pb.eq(V - 1))
ZERO = one_dim(pb.eq(V))
ZERO_OR_TWO = one_dim(pb.disj(pb.eq(V), pb.eq(V - 2)))
S = sk.make_def([ONE], ZERO_OR_TWO)


def points(dim, top):
    return itertools.product(range(1, top + 1), repeat=dim)


def same_members(a, b, dim, top):
    return all(member_semi(a, w) == member_semi(b, w) for w in points(dim, top))


def test_make_def_examples():
    u = sk.make_def([], sl.full(1))
    assert all(member_skolemian(u, (w,)) for w in range(1, 50))
    assert sk.make_def([ONE], ZERO_OR_TWO).n == 1
    with pytest.raises(InvariantError):
        sk.make_def([sl.full(1)], sl.full(1))
    with pytest.raises(InvariantError):
        sk.make_def([], ONE)
    with pytest.raises(DimensionError):
        sk.make_def([sl.remove_zero(sl.full(2))], sl.full(1))


def test_slot_order_is_canonical():
    a = sl.remove_zero(sl.SemilinearSet(1, pb.dvd(2, V)))
    assert sk.make_def([ONE, a], ZERO) == sk.make_def([a, ONE], ZERO)


def test_correct_sets():
    assert sorted(sk.correct_sets(1, 1)) == [((1, 0), (0, 1)), ((1, 1),)]
    assert list(sk.correct_sets(0, 0)) == [()]
    for n, m in itertools.product(range(4), repeat=2):
        got = list(sk.correct_sets(n, m))
        assert len(got) == len(set(got)) == sk._count_correct_sets(n, m)
        for pairs in got:
            assert (0, 0) not in pairs
            assert sorted(i for i, _ in pairs if i) == list(range(1, n + 1))
            assert sorted(j for _, j in pairs if j) == list(range(1, m + 1))


def test_intersection_examples():
    t = sk.make_def([], ZERO_OR_TWO)
    both = sk.intersect_skolemian(S, t)
    for w in range(1, 61):
        assert member_semi(both, (w,)) == (member_skolemian(S, (w,)) and member_skolemian(t, (w,)))
    plain = sk.intersect_skolemian(sk.make_def([], ZERO_OR_TWO), sk.make_def([], sl.full(1)))
    assert len(plain) == 1 and plain.disjuncts[0].n == 0


def test_complement_examples():
    alpha = sl.add_zero(one_dim(pb.dvd(3, V)))
    c = sk.complement_skolemian(sk.make_def([], alpha))
    expected = sk.from_skolemian(sk.make_def([sl.complement(alpha)], sl.full(1)))
    assert same_members(c, expected, 1, 200)
    cs = sk.complement_skolemian(S)
    assert all(member_semi(cs, (w,)) != member_skolemian(S, (w,)) for w in range(1, 201))
    c1 = sk.complement_skolemian(sk.make_def([sl.remove_zero(sl.full(1))], ZERO))
    assert member_semi(c1, (1,))


def test_projection_examples():
    diag = sk.make_def([], sl.atom_linear(2, {1: 1}, {2: 1}))
    p = sk.project_skolemian(diag, 2)
    assert p.dim == 1 and all(member_semi(p, (w,)) for w in range(1, 60))

    second = sl.SemilinearSet(2, pb.conj(pb.eq(pb.var(1)), pb.eq(pb.var(2) - 1)))
    rest = sl.add_zero(sl.SemilinearSet(2, pb.dvd(2, pb.var(1))))
    q = sk.project_skolemian(sk.make_def([second], rest), 2)
    assert [d.n for d in q] == [0]
    assert q == sk.from_skolemian(sk.make_def([], sl.project_away(rest, 2)))

    assert sk.project_skolemian(sk.make_def([sl.empty(1)], sl.full(1)), 1) == sk.empty_semi(0)


def test_decide_dim_zero():
    assert sk.decide_dim_zero(sk.make_def([], sl.TOP))
    assert sk.decide_dim_zero(sk.make_def([sl.TOP, sl.TOP], sl.TOP))
    assert not sk.decide_dim_zero(sk.make_def([sl.BOT], sl.TOP))
    with pytest.raises(DimensionError):
        sk.decide_dim_zero(S)


def test_semi_identities():
    full = sk.complement_semi(sk.empty_semi(1))
    assert full == sk.full_semi(1)
    a = sk.from_skolemian(S)
    assert sk.union_semi(a, sk.empty_semi(1)) == a
    assert sk.complement_semi(sk.full_semi(2)) == sk.empty_semi(2)
    with pytest.raises(DimensionError):
        sk.union_semi(a, sk.empty_semi(2))


def test_intersect_semi_pointwise():
    rng = random.Random(8)
    for _ in range(4):
        a = random_semiskolemian(rng, 2, 2, max_n=1)
        b = random_semiskolemian(rng, 2, 2, max_n=1)
        both = sk.intersect_semi(a, b)
        for w in points(2, 50):
            assert member_semi(both, w) == (member_semi(a, w) and member_semi(b, w))


def test_operations_preserve_invariants():
    rng = random.Random(9)
    for _ in range(40):
        dim = rng.randint(1, 2)
        s, t = random_skolemian(rng, dim, rng.randint(0, 2)), random_skolemian(rng, dim, rng.randint(0, 2))
        results = [sk.complement_skolemian(s), sk.intersect_skolemian(s, t)]
        if dim == 2:
            results.append(sk.project_skolemian(s, rng.randint(1, 2)))
        for r in results:
            for d in r:
                assert sl.contains_zero(d.rest)
                assert not any(sl.contains_zero(a) for a in d.exceptional)
                assert not any(sl.is_empty(a) for a in d.exceptional)


def test_double_complement():
    rng = random.Random(10)
    for _ in range(15):
        dim = rng.randint(1, 2)
        s = sk.from_skolemian(random_skolemian(rng, dim, rng.randint(0, 1)))
        cc = sk.complement_semi(sk.complement_semi(s))
        assert same_members(s, cc, dim, 30 if dim == 1 else 12)


def test_render():
    assert sk.render_skolemian(S) == "Def({ v1 | v1 - 1 = 0 } ; { v1 | " + pb.render(ZERO_OR_TWO.formula) + " })"
    assert sk.render_skolemian(sk.universe(1)) == "Def({ v1 | true })"
    assert sk.render_semi(sk.empty_semi(1)) == "EMPTY"
    assert sk.render_semi(sk.empty_semi(0)) == "BOT"


def test_json_round_trip():
    rng = random.Random(12)
    for _ in range(30):
        dim = rng.randint(1, 2)
        a = random_semiskolemian(rng, dim, 3)
        text = json.dumps(sk.to_json(a))
        b = sk.from_json(text)
        assert b == a
        assert set(json.loads(text)) == {"dim", "disjuncts"}
