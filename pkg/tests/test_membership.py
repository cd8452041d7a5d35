import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from skolem import presburger as pb
from skolem import semilinear as sl
from skolem import skolemian as sk
from skolem.errors import DimensionError, DomainError
from skolem.membership import factorize, member_semi, member_skolemian, valuation_profile
from skolem.oracle import skolemian_oracle_member

from generators import random_skolemian

V = pb.var(1)
ONE = sl.SemilinearSet(1, pb.eq(V - 1))
ZERO_OR_TWO = sl.SemilinearSet(1, pb.disj(pb.eq(V), pb.eq(V - 2)))
S = sk.make_def([ONE], ZERO_OR_TWO)


def test_valuation_profile_examples():
    assert valuation_profile((12, 30)).entries == ((2, (2, 1)), (3, (1, 1)), (5, (0, 1)))
    assert valuation_profile((1, 1)).entries == ()
    assert valuation_profile((7,)).entries == ((7, (1,)),)


def test_profile_reconstructs():
    rng = random.Random(2)
    for _ in range(200):
        w = tuple(rng.randint(1, 10 ** 6) for _ in range(rng.randint(1, 3)))
        assert valuation_profile(w).reconstruct() == w


def test_factorize_large_prime_and_square():
    assert factorize(2 ** 31 - 1) == ((2 ** 31 - 1, 1),)
    assert factorize(9973 ** 2) == ((9973, 2),)


def test_domain_errors():
    for bad in ((0,), (-3,), (2 ** 63,), (1.5,), (True,)):
        with pytest.raises(DomainError):
            valuation_profile(bad)


def test_member_examples():
    assert member_skolemian(S, (12,))
    assert not member_skolemian(S, (8,))
    assert not member_skolemian(S, (1,))


def test_member_semi_examples():
    assert not member_semi(sk.empty_semi(1), (5,))
    u = sk.union_semi(sk.from_skolemian(S), sk.complement_skolemian(S))
    assert all(member_semi(u, (w,)) for w in range(1, 101))
    single = sk.from_skolemian(S)
    assert all(member_semi(single, (w,)) == member_skolemian(S, (w,)) for w in range(1, 101))


def test_member_checks_dimension_and_domain():
    with pytest.raises(DimensionError):
        member_skolemian(S, (2, 3))
    with pytest.raises(DomainError):
        member_semi(sk.empty_semi(1), (0,))


def test_membership_agrees_with_oracle():
    rng = random.Random(4)
    for _ in range(150):
        dim = rng.randint(1, 2)
        s = random_skolemian(rng, dim, rng.randint(0, 3))
        for _ in range(4):
            w = tuple(rng.randint(1, 3000) for _ in range(dim))
            assert member_skolemian(s, w) == skolemian_oracle_member(s, w)


def _swap_primes(w, p, q):
    out = []
    for x in w:
        a = b = 0
        while x % p == 0:
            x //= p
            a += 1
        while x % q == 0:
            x //= q
            b += 1
        out.append(x * p ** b * q ** a)
    return tuple(out)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_membership_invariant_under_prime_permutation(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    s = random_skolemian(rng, dim, rng.randint(0, 2))
    w = tuple(rng.randint(1, 500) for _ in range(dim))
    p, q = rng.sample((2, 3, 5, 7, 11, 13), 2)
    assert member_skolemian(s, w) == member_skolemian(s, _swap_primes(w, p, q))


def test_dimension_zero():
    assert member_skolemian(sk.make_def([], sl.TOP), ())
    assert not member_skolemian(sk.make_def([sl.BOT], sl.TOP), ())
