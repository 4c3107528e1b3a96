"""Field-level properties of the exact scalar types."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from crnf.exactfield import (
    ExactFieldError,
    GaussRational,
    RadicalPolicyError,
    RadicalScalar,
    gauss,
    gaussian_unit_root,
    rational_root,
    try_real_root,
)


def rand_gauss(rng: random.Random) -> GaussRational:
    num = lambda: Fraction(rng.randint(-30, 30), rng.randint(1, 12))
    return GaussRational(num(), num())


def test_basic_products():
    assert gauss(1, 1) * gauss(1, -1) == gauss(2)
    u = gauss(Fraction(3, 5), Fraction(4, 5))
    assert u.conj() * u == gauss(1)
    assert (gauss(0, Fraction(1, 6)) - gauss(0, Fraction(1, 6))).is_zero()


def test_division_by_zero():
    with pytest.raises(ExactFieldError):
        gauss(1) / gauss(0)


@pytest.mark.parametrize("seed", range(40))
def test_field_axioms(seed):
    rng = random.Random(1000 + seed)
    a, b, c = (rand_gauss(rng) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == gauss(0)
    if not a.is_zero():
        assert a * a.inverse() == gauss(1)
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a
    assert a.norm2() == (a * a.conj()).re
    assert (a * a.conj()).im == 0


@pytest.mark.parametrize("seed", range(20))
def test_serialization_round_trip(seed):
    rng = random.Random(2000 + seed)
    a = rand_gauss(rng)
    assert GaussRational.from_json(a.to_json()) == a


def test_rational_roots():
    assert try_real_root(Fraction(8), 3) == Fraction(2)
    assert try_real_root(Fraction(9, 4), 2) == Fraction(3, 2)
    assert rational_root(Fraction(10), 2) is None
    with pytest.raises(ExactFieldError):
        try_real_root(Fraction(-4), 2)


def test_radical_generation_and_reduction():
    r = try_real_root(Fraction(2), 2)
    assert isinstance(r, RadicalScalar)
    assert r.k == 2 and r.q == 2
    assert r * r == RadicalScalar.constant(2, Fraction(2), gauss(2))
    # minimal index: fourth root of 4 is sqrt(2)
    r4 = try_real_root(Fraction(4), 4)
    assert isinstance(r4, RadicalScalar) and r4.k == 2 and r4.q == 2


def test_radical_power_reduces_to_radicand():
    for x, k in ((Fraction(2), 2), (Fraction(5), 3), (Fraction(7, 3), 2)):
        r = try_real_root(x, k)
        assert isinstance(r, RadicalScalar)
        p = r**k
        assert p.is_constant() and p.constant_part() == GaussRational(x)


@pytest.mark.parametrize("seed", range(25))
def test_radical_field_axioms(seed):
    rng = random.Random(3000 + seed)
    k = rng.choice((2, 3))
    q = Fraction(rng.choice((2, 3, 5, 6)))

    def rand_rad():
        return RadicalScalar(k, q, [rand_gauss(rng) for _ in range(k)])

    a, b, c = rand_rad(), rand_rad(), rand_rad()
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == RadicalScalar.constant(k, q, gauss(1))
    assert (a * b).conj() == a.conj() * b.conj()


def test_radical_mixing_rejected():
    r2 = try_real_root(Fraction(2), 2)
    r3 = try_real_root(Fraction(3), 2)
    with pytest.raises(RadicalPolicyError):
        _ = r2 + r3


def test_unit_roots():
    base = gauss(2, 1) / gauss(2, -1)
    u = base * base
    w = gaussian_unit_root(u, 2)
    assert w is not None and w * w == u and w.norm2() == 1
    # cube roots through torsion: i = (-i)^3
    w3 = gaussian_unit_root(gauss(0, 1), 3)
    assert w3 == gauss(0, -1)
    # a primitive unit has no square root in Q(i)
    v = gauss(Fraction(2, 5), Fraction(1, 5)) / gauss(Fraction(2, 5), Fraction(-1, 5))
    assert v.norm2() == 1
    assert gaussian_unit_root(v, 2) is None
    # but a cube of it comes back exactly
    assert gaussian_unit_root(v**3, 3) == v


@pytest.mark.parametrize("seed", range(15))
def test_unit_root_round_trip(seed):
    rng = random.Random(4000 + seed)
    zs = [gauss(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(3)]
    u = gauss(1)
    for z in zs:
        u = u * (z / z.conj())
    u = u * gauss(0, 1) ** rng.randint(0, 3)
    n = rng.choice((2, 3, 4))
    w = gaussian_unit_root(u**n, n)
    assert w is not None
    assert w**n == u**n
