"""Holomorphic maps of C^4 and the graph-transform action on defining triples."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import rand_invertible_biholo, rand_manifold
from crnf.biholo import (
    Biholomorphism,
    DegenerateActionError,
    HoloPoly,
    act_on_manifold,
    compose,
    identity_map,
    invert,
)
from crnf.exactfield import gauss
from crnf.manifold import CONVENTION_HALF, CONVENTION_UNIT, cubic_model, validate
from crnf.wseries import SingularMapError


def holo(pairs, trunc=6):
    return HoloPoly.from_terms(pairs, trunc)


def diag_map(a, b1, b2, b3, trunc=6):
    return Biholomorphism(
        holo([((1, 0, 0, 0), a)], trunc),
        [
            holo([((0, 1, 0, 0), b1)], trunc),
            holo([((0, 0, 1, 0), b2)], trunc),
            holo([((0, 0, 0, 1), b3)], trunc),
        ],
        trunc,
    )


def test_identity_action():
    m = cubic_model(6, CONVENTION_HALF)
    assert act_on_manifold(identity_map(6), m) == m
    rng = random.Random(1)
    m2 = rand_manifold(rng, 6)
    assert act_on_manifold(identity_map(6), m2) == m2


def test_weighted_dilation_fixes_model():
    g = diag_map(2, 4, 8, 8)
    for conv in (CONVENTION_UNIT, CONVENTION_HALF):
        m = cubic_model(6, conv)
        assert act_on_manifold(g, m) == m


def test_quarter_rotation_fixes_unit_model():
    g = Biholomorphism(
        holo([((1, 0, 0, 0), gauss(0, 1))]),
        [
            holo([((0, 1, 0, 0), 1)]),
            holo([((0, 0, 0, 1), 1)]),
            holo([((0, 0, 1, 0), -1)]),
        ],
        6,
    )
    m = cubic_model(6, CONVENTION_UNIT)
    assert act_on_manifold(g, m) == m


def test_quarter_rotation_fixes_half_model():
    g = Biholomorphism(
        holo([((1, 0, 0, 0), gauss(0, 1))]),
        [
            holo([((0, 1, 0, 0), 1)]),
            holo([((0, 0, 0, 1), -1)]),
            holo([((0, 0, 1, 0), 1)]),
        ],
        6,
    )
    m = cubic_model(6, CONVENTION_HALF)
    assert act_on_manifold(g, m) == m


def test_compose_with_identity():
    rng = random.Random(2)
    g = rand_invertible_biholo(rng, 6)
    assert compose(g, identity_map(6)) == g
    assert compose(identity_map(6), g) == g


def test_invert_leading_term():
    g = diag_map(2, 1, 1, 1)
    ginv = invert(g)
    assert ginv.z.coefficient((1, 0, 0, 0)) == gauss(Fraction(1, 2))


def test_singular_linear_part_rejected():
    with pytest.raises(SingularMapError):
        Biholomorphism(
            holo([]),
            [holo([((0, 1, 0, 0), 1)]), holo([((0, 0, 1, 0), 1)]), holo([((0, 0, 0, 1), 1)])],
            6,
        )


def test_constant_term_rejected():
    with pytest.raises(ValueError):
        Biholomorphism(
            holo([((0, 0, 0, 0), 1), ((1, 0, 0, 0), 1)]),
            [holo([((0, 1, 0, 0), 1)]), holo([((0, 0, 1, 0), 1)]), holo([((0, 0, 0, 1), 1)])],
            6,
        )


def test_degree_cap_enforced():
    with pytest.raises(ValueError):
        HoloPoly.from_terms([((7, 0, 0, 0), 1)], 6)


def test_degenerate_action_detected():
    g = Biholomorphism(
        holo([((0, 1, 0, 0), 1)]),
        [holo([((1, 0, 0, 0), 1)]), holo([((0, 0, 1, 0), 1)]), holo([((0, 0, 0, 1), 1)])],
        6,
    )
    with pytest.raises(DegenerateActionError):
        act_on_manifold(g, cubic_model(6, CONVENTION_HALF))


@pytest.mark.parametrize("seed", range(10))
def test_compose_invert_group_laws(seed):
    rng = random.Random(1100 + seed)
    g = rand_invertible_biholo(rng, 5)
    ginv = invert(g)
    assert compose(g, ginv) == identity_map(5)
    assert compose(ginv, g) == identity_map(5)


@pytest.mark.parametrize("seed", range(8))
def test_action_round_trip(seed):
    rng = random.Random(1200 + seed)
    m = rand_manifold(rng, 5)
    for _ in range(10):
        g = rand_invertible_biholo(rng, 5)
        try:
            moved = act_on_manifold(g, m)
        except DegenerateActionError:
            continue
        back = act_on_manifold(invert(g), moved)
        assert back == m
        return
    raise AssertionError("no invertible action found")


@pytest.mark.parametrize("seed", range(6))
def test_action_is_homomorphism(seed):
    rng = random.Random(1300 + seed)
    m = rand_manifold(rng, 5)
    for _ in range(10):
        g = rand_invertible_biholo(rng, 5)
        h = rand_invertible_biholo(rng, 5)
        try:
            lhs = act_on_manifold(compose(g, h), m)
            rhs = act_on_manifold(g, act_on_manifold(h, m))
        except DegenerateActionError:
            continue
        assert lhs == rhs
        return
    raise AssertionError("no invertible pair found")


def test_action_preserves_reality():
    rng = random.Random(9)
    m = rand_manifold(rng, 5)
    g = diag_map(2, 4, 8, 8, trunc=5)
    out = act_on_manifold(g, m)
    for s in out.phi:
        assert s.is_real()


def test_biholo_json_round_trip():
    rng = random.Random(10)
    g = rand_invertible_biholo(rng, 6)
    assert Biholomorphism.from_json(g.to_json()) == g
