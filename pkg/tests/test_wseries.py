"""Series arithmetic, differentiation, composition, and formal inversion."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from crnf.exactfield import GaussRational, gauss
from crnf.wseries import (
    SeriesMap5,
    SingularMapError,
    TruncatedSeries,
    compose,
    mono_degree,
    mono_weight,
    reverse_map,
    substitute,
)

Z, ZB, U1, U2, U3 = range(5)


def S(pairs, trunc=8):
    return TruncatedSeries.from_terms(pairs, trunc)


def rand_series(rng: random.Random, trunc: int, nterms: int, min_deg=0) -> TruncatedSeries:
    pairs = []
    for _ in range(nterms):
        while True:
            m = tuple(rng.randint(0, 2) for _ in range(5))
            d = mono_degree(m)
            if min_deg <= d <= trunc:
                break
        c = GaussRational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
        )
        pairs.append((m, c))
    return S(pairs, trunc)


def rand_unit_map(rng: random.Random, trunc: int) -> SeriesMap5:
    images = []
    for i in range(5):
        base = TruncatedSeries.variable(i, trunc)
        pert = rand_series(rng, trunc, 3, min_deg=2)
        images.append(base + pert)
    return SeriesMap5(images, trunc)


def test_single_products():
    z = TruncatedSeries.variable(Z, 8)
    zb = TruncatedSeries.variable(ZB, 8)
    p = z * zb
    assert p.coefficient((1, 1, 0, 0, 0)) == gauss(1)
    assert len(p.terms) == 1
    q = (z * zb) * (z * zb)
    assert q.coefficient((2, 2, 0, 0, 0)) == gauss(1)


def test_truncation_in_products():
    z = TruncatedSeries.variable(Z, 3)
    p = z * z * z
    assert not p.is_zero()
    assert (p * z).is_zero()


def test_weighted_degree():
    assert mono_weight((1, 1, 0, 0, 0)) == 2
    assert mono_weight((0, 0, 1, 0, 0)) == 2
    assert mono_weight((0, 0, 0, 1, 1)) == 6
    assert mono_degree((0, 0, 0, 1, 1)) == 2


def test_derivatives():
    s = S([((2, 1, 0, 0, 0), 1)])
    dz = s.partial_derive(Z)
    assert dz.coefficient((1, 1, 0, 0, 0)) == gauss(2)
    s2 = S([((2, 1, 1, 0, 0), 1)])
    du = s2.partial_derive(U1)
    assert du.coefficient((2, 1, 0, 0, 0)) == gauss(1)


@pytest.mark.parametrize("seed", range(30))
def test_mixed_partials_commute(seed):
    rng = random.Random(100 + seed)
    s = rand_series(rng, 6, 8)
    a = s.partial_derive(Z).partial_derive(ZB)
    b = s.partial_derive(ZB).partial_derive(Z)
    assert a == b


@pytest.mark.parametrize("seed", range(30))
def test_leibniz_rule(seed):
    rng = random.Random(200 + seed)
    a = rand_series(rng, 6, 6)
    b = rand_series(rng, 6, 6)
    left = (a * b).partial_derive(Z)
    right = a.partial_derive(Z) * b.truncate(5) + a.truncate(5) * b.partial_derive(Z)
    assert left == right


@pytest.mark.parametrize("seed", range(20))
def test_truncation_consistency(seed):
    rng = random.Random(300 + seed)
    a = rand_series(rng, 8, 6)
    b = rand_series(rng, 8, 6)
    low = (a.truncate(5)) * (b.truncate(5))
    high = (a * b).truncate(5)
    assert low == high


def test_substitute_identity_and_scaling():
    s = S([((1, 1, 0, 0, 0), 1)])
    ident = SeriesMap5.identity(8)
    assert substitute(s, ident) == s
    two = SeriesMap5(
        [
            TruncatedSeries.variable(Z, 8).scalar_mul(2),
            TruncatedSeries.variable(ZB, 8).scalar_mul(2),
            TruncatedSeries.variable(U1, 8),
            TruncatedSeries.variable(U2, 8),
            TruncatedSeries.variable(U3, 8),
        ],
        8,
    )
    assert substitute(s, two).coefficient((1, 1, 0, 0, 0)) == gauss(4)


def test_reverse_map_trivial():
    ident = SeriesMap5.identity(6)
    assert all(
        a == b for a, b in zip(reverse_map(ident).images, ident.images)
    )
    two = SeriesMap5(
        [TruncatedSeries.variable(Z, 6).scalar_mul(2)]
        + [TruncatedSeries.variable(i, 6) for i in range(1, 5)],
        6,
    )
    inv = reverse_map(two)
    assert inv.images[0].coefficient((1, 0, 0, 0, 0)) == gauss(Fraction(1, 2))


def test_singular_map_rejected():
    zero_row = SeriesMap5(
        [TruncatedSeries.zero(6)] + [TruncatedSeries.variable(i, 6) for i in range(1, 5)],
        6,
    )
    with pytest.raises(SingularMapError):
        reverse_map(zero_row)


@pytest.mark.parametrize("seed", range(12))
def test_reverse_map_round_trip(seed):
    rng = random.Random(400 + seed)
    m = rand_unit_map(rng, 6)
    inv = reverse_map(m)
    ident = SeriesMap5.identity(6)
    back = compose(m, inv)
    for got, want in zip(back.images, ident.images):
        assert got == want
    back2 = compose(inv, m)
    for got, want in zip(back2.images, ident.images):
        assert got == want


@pytest.mark.parametrize("seed", range(12))
def test_substitute_round_trip(seed):
    rng = random.Random(500 + seed)
    m = rand_unit_map(rng, 6)
    inv = reverse_map(m)
    s = rand_series(rng, 6, 6)
    assert substitute(substitute(s, m), inv) == s


def test_conj_involution():
    s = S([((2, 1, 0, 0, 0), gauss(0, 1))])
    c = s.conj_involution()
    assert c.coefficient((1, 2, 0, 0, 0)) == gauss(0, -1)
    assert c.conj_involution() == s
    real = S([((1, 1, 0, 0, 0), 1)])
    assert real.is_real()
    model3 = S([((2, 1, 0, 0, 0), gauss(0, 1)), ((1, 2, 0, 0, 0), gauss(0, -1))])
    assert model3.is_real()


@pytest.mark.parametrize("seed", range(20))
def test_conj_is_ring_hom(seed):
    rng = random.Random(600 + seed)
    a = rand_series(rng, 6, 6)
    b = rand_series(rng, 6, 6)
    assert (a * b).conj_involution() == a.conj_involution() * b.conj_involution()
    assert (a + b).conj_involution() == a.conj_involution() + b.conj_involution()


def test_serialization_round_trip():
    rng = random.Random(7)
    s = rand_series(rng, 6, 10)
    assert TruncatedSeries.from_json(s.to_json(), 6) == s
    payload = s.to_json()
    keys = [tuple(e["m"]) for e in payload]
    assert keys == sorted(keys, key=lambda m: (mono_degree(m), m))
