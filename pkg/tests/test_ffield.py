"""Finite field context tests: canonical construction, axioms, orders."""

import random

import pytest

from padicext.arith import divisors, euler_phi
from padicext.errors import CapacityError, DomainError
from padicext.ffield import FieldCtx, make_field

GRID = [(2, 2), (2, 3), (2, 6), (3, 1), (3, 2), (3, 4), (5, 2), (5, 3),
        (7, 2), (11, 2), (13, 2)]


def test_canonical_moduli():
    assert make_field(2, 2).modulus == (1, 1, 1)      # x^2+x+1
    assert make_field(3, 1).modulus == (0, 1)         # prime field convention
    assert make_field(2, 3).modulus == (1, 1, 0, 1)   # x^3+x+1


def test_generator_of_f9_has_order_eight():
    ctx = make_field(3, 2)
    g = ctx.generator
    assert ctx.element_order(g) == 8
    assert ctx.pow(g, 4) == ctx.neg(1)  # g^4 = -1 != 1


def test_prime_order_group_every_element_generates():
    ctx = make_field(2, 3)
    for x in range(2, ctx.order):
        assert ctx.element_order(x) == 7
    assert ctx.element_order(1) == 1


def test_min_subfield_degree():
    ctx = make_field(2, 6)
    x = ctx.root_of_unity(3)  # order 3 divides 2^2-1 but not 2-1
    assert ctx.element_order(x) == 3
    assert ctx.min_subfield_degree(x) == 2
    assert ctx.min_subfield_degree(1) == 1
    g = make_field(3, 2).generator
    assert make_field(3, 2).min_subfield_degree(g) == 2
    with pytest.raises(DomainError):
        ctx.min_subfield_degree(0)


def test_field_axioms_sampled():
    rng = random.Random(0)
    for p, m in GRID:
        ctx = make_field(p, m)
        for _ in range(120):
            x, y, z = (rng.randrange(ctx.order) for _ in range(3))
            assert ctx.add(x, y) == ctx.add(y, x)
            assert ctx.mul(x, y) == ctx.mul(y, x)
            assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y),
                                                        ctx.mul(x, z))
            assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
            assert ctx.add(x, ctx.neg(x)) == 0
            if x:
                assert ctx.mul(x, ctx.inv(x)) == 1


def test_frobenius_is_a_field_automorphism():
    rng = random.Random(1)
    for p, m in GRID:
        ctx = make_field(p, m)
        for _ in range(60):
            x, y = rng.randrange(ctx.order), rng.randrange(ctx.order)
            assert ctx.frob(ctx.add(x, y)) == ctx.add(ctx.frob(x), ctx.frob(y))
            assert ctx.frob(ctx.mul(x, y)) == ctx.mul(ctx.frob(x), ctx.frob(y))
        x = rng.randrange(ctx.order)
        t = x
        for _ in range(m):
            t = ctx.frob(t)
        assert t == x


def test_order_census_exhaustive_small_fields():
    # number of elements of each order c | p^m - 1 equals phi(c)
    for p, m in [(2, m) for m in range(1, 15)] + \
                [(3, m) for m in range(1, 9)] + \
                [(5, m) for m in range(1, 6)] + \
                [(7, m) for m in range(1, 5)] + \
                [(11, m) for m in range(1, 4)] + [(13, m) for m in range(1, 4)]:
        if p ** m > 1 << 14:
            continue
        ctx = make_field(p, m)
        counts: dict[int, int] = {}
        for x in range(1, ctx.order):
            o = ctx.element_order(x)
            counts[o] = counts.get(o, 0) + 1
        for c in divisors(ctx.mult_order):
            assert counts.get(c, 0) == euler_phi(c), (p, m, c)


def test_construction_is_bit_identical():
    a = FieldCtx(3, 4, ceiling=1 << 32)
    b = FieldCtx(3, 4, ceiling=1 << 32)
    assert a.modulus == b.modulus
    assert a.generator == b.generator
    assert a.order_factorization == b.order_factorization


def test_capacity_ceiling():
    with pytest.raises(CapacityError):
        make_field(2, 42)  # default ceiling 2^32
    big = make_field(2, 42, ceiling=1 << 52)
    assert big.element_order(big.root_of_unity(7)) == 7


def test_element_order_of_zero_rejected():
    ctx = make_field(2, 3)
    with pytest.raises(DomainError):
        ctx.element_order(0)
