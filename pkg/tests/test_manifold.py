"""Defining-triple validation, lifted coefficients, pluriharmonic removal."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import rand_manifold
from crnf.exactfield import gauss
from crnf.manifold import (
    CONVENTION_HALF,
    CONVENTION_UNIT,
    CRManifold,
    LiftedCoefficientId,
    TruncationBoundError,
    canonicalize_convention,
    cubic_model,
    detect_convention,
    extract_coefficient,
    pluriharmonic_ids,
    remove_pluriharmonic,
    validate,
    vid,
)
from crnf.wseries import TruncatedSeries


def test_cubic_model_is_valid():
    for conv in (CONVENTION_UNIT, CONVENTION_HALF):
        rep = validate(cubic_model(6, conv))
        assert rep.ok, rep.issues
        assert rep.convention == conv


def test_reality_violation_detected():
    m = cubic_model(6, CONVENTION_UNIT)
    phi1 = m.phi[0] + TruncatedSeries.from_terms([((2, 0, 0, 0, 0), 1)], 6)
    rep = validate(CRManifold((phi1, m.phi[1], m.phi[2]), 6))
    assert not rep.ok
    assert any("not real" in s for s in rep.issues)


def test_missing_cubic_leading_terms_detected():
    zzb = TruncatedSeries.from_terms([((1, 1, 0, 0, 0), 1)], 6)
    zero = TruncatedSeries.zero(6)
    rep = validate(CRManifold((zzb, zero, zero), 6))
    assert not rep.ok


def test_low_weight_garbage_detected():
    m = cubic_model(6, CONVENTION_UNIT)
    phi2 = m.phi[1] + TruncatedSeries.from_terms([((1, 1, 0, 0, 0), 1)], 6)
    rep = validate(CRManifold((m.phi[0], phi2, m.phi[2]), 6))
    assert not rep.ok


def test_extract_leading_coefficients():
    m = cubic_model(6, CONVENTION_UNIT)
    assert extract_coefficient(m, vid(1, 1, 1)) == gauss(1)
    assert extract_coefficient(m, vid(3, 3, 1)) == gauss(0)


def test_extract_branch_seed_value():
    m = cubic_model(8, CONVENTION_HALF)
    extra = TruncatedSeries.from_terms(
        [((3, 1, 0, 0, 0), Fraction(1, 6)), ((1, 3, 0, 0, 0), Fraction(1, 6))], 8
    )
    m2 = CRManifold((m.phi[0], m.phi[1], m.phi[2] + extra), 8)
    assert extract_coefficient(m2, vid(3, 3, 1)) == gauss(1)


def test_extract_factorials():
    m = cubic_model(6, CONVENTION_HALF)
    phi1 = m.phi[0] + TruncatedSeries.from_terms([((2, 2, 1, 0, 0), Fraction(1, 4))], 6)
    m2 = CRManifold((phi1, m.phi[1], m.phi[2]), 6)
    assert extract_coefficient(m2, vid(1, 2, 2, 1)) == gauss(1)


def test_extract_beyond_trunc_raises():
    m = cubic_model(4, CONVENTION_HALF)
    with pytest.raises(TruncationBoundError):
        extract_coefficient(m, vid(1, 3, 3))


@pytest.mark.parametrize("seed", range(15))
def test_extract_conjugation_symmetry(seed):
    rng = random.Random(900 + seed)
    m = rand_manifold(rng, 6)
    for _ in range(20):
        cid = LiftedCoefficientId(
            rng.randint(1, 3),
            (
                rng.randint(0, 2),
                rng.randint(0, 2),
                rng.randint(0, 1),
                rng.randint(0, 1),
                rng.randint(0, 1),
            ),
        )
        if cid.total_degree() > 6:
            continue
        a = extract_coefficient(m, cid)
        b = extract_coefficient(m, cid.conj())
        assert a == b.conj()


def test_convention_detection_and_canonicalization():
    unit = cubic_model(6, CONVENTION_UNIT)
    half = cubic_model(6, CONVENTION_HALF)
    assert detect_convention(unit) == CONVENTION_UNIT
    assert detect_convention(half) == CONVENTION_HALF
    assert canonicalize_convention(unit) == half
    assert canonicalize_convention(half) is half


@pytest.mark.parametrize("seed", range(10))
def test_canonicalization_keeps_validity(seed):
    rng = random.Random(950 + seed)
    m = rand_manifold(rng, 6, CONVENTION_UNIT)
    out = canonicalize_convention(m)
    rep = validate(out)
    assert rep.ok, rep.issues
    assert rep.convention == CONVENTION_HALF


def test_remove_pluriharmonic_simple():
    m = cubic_model(6, CONVENTION_UNIT)
    cubic_re = TruncatedSeries.from_terms(
        [((3, 0, 0, 0, 0), Fraction(1, 2)), ((0, 3, 0, 0, 0), Fraction(1, 2))], 6
    )
    m2 = CRManifold((m.phi[0] + cubic_re, m.phi[1], m.phi[2]), 6)
    out = remove_pluriharmonic(m2)
    assert extract_coefficient(out, vid(1, 3, 0)) == gauss(0)
    assert validate(out).ok


def test_remove_pluriharmonic_fixes_model():
    m = cubic_model(6, CONVENTION_HALF)
    assert remove_pluriharmonic(m) == m


@pytest.mark.parametrize("seed", range(8))
def test_remove_pluriharmonic_scan(seed):
    rng = random.Random(1000 + seed)
    m = rand_manifold(rng, 6)
    holo = []
    for k in (1, 2, 3):
        mono = (rng.randint(1, 2), 0, rng.randint(0, 1), 0, 0)
        from crnf.wseries import mono_degree, mono_weight, mono_conj

        if mono_degree(mono) < 2 or mono_degree(mono) > 6:
            continue
        if mono_weight(mono) < (3 if k == 1 else 4):
            continue
        from helpers import rand_gauss

        c = rand_gauss(rng)
        holo.append((k, mono, c))
    phi = list(m.phi)
    for k, mono, c in holo:
        from crnf.wseries import mono_conj

        phi[k - 1] = phi[k - 1] + TruncatedSeries.from_terms(
            [(mono, c), (mono_conj(mono), c.conj())], 6
        )
    m2 = CRManifold(phi, 6)
    if not validate(m2).ok:
        return
    out = remove_pluriharmonic(m2)
    assert validate(out).ok
    for cid in pluriharmonic_ids(6):
        assert extract_coefficient(out, cid) == gauss(0), cid.label()


def test_manifold_json_round_trip():
    rng = random.Random(3)
    m = rand_manifold(rng, 6)
    assert CRManifold.from_json(m.to_json()) == m
