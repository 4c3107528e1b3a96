"""Shared random generators for the test suite.  Deterministic via seeded rng."""
from __future__ import annotations

import random
from fractions import Fraction

from crnf.exactfield import GaussRational, gauss
from crnf.manifold import CONVENTION_HALF, CRManifold, cubic_model
from crnf.biholo import Biholomorphism, HoloPoly
from crnf.wseries import TruncatedSeries, mono_conj, mono_degree, mono_weight


def rand_gauss(rng: random.Random, span: int = 6) -> GaussRational:
    return GaussRational(
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
    )


def rand_manifold(
    rng: random.Random,
    trunc: int,
    convention: str = CONVENTION_HALF,
    nextra: int = 6,
) -> CRManifold:
    """Cubic model plus random real perturbations of admissible weighted order."""
    m = cubic_model(trunc, convention)
    phi = list(m.phi)
    for k in range(3):
        min_w = 3 if k == 0 else 4
        extra = []
        for _ in range(nextra):
            for _attempt in range(200):
                mono = (
                    rng.randint(0, 3),
                    rng.randint(0, 3),
                    rng.randint(0, 2),
                    rng.randint(0, 1),
                    rng.randint(0, 1),
                )
                if mono_weight(mono) >= min_w and 2 <= mono_degree(mono) <= trunc:
                    break
            else:
                continue
            c = rand_gauss(rng)
            if mono == mono_conj(mono):
                c = GaussRational(c.re)
                extra.append((mono, c))
            else:
                extra.append((mono, c))
                extra.append((mono_conj(mono), c.conj()))
        phi[k] = phi[k] + TruncatedSeries.from_terms(extra, trunc)
    return CRManifold(phi, trunc)


def rand_invertible_biholo(rng: random.Random, trunc: int, nextra: int = 4) -> Biholomorphism:
    """Random invertible map whose graph action on elementary manifolds is defined.

    The linear part keeps z -> a z and an invertible real w-block so the
    induced real reparametrization stays invertible.
    """
    while True:
        a = rand_gauss(rng, 3)
        if not a.is_zero():
            break
    z_terms = [((1, 0, 0, 0), a)]
    w_terms = [[] for _ in range(3)]
    while True:
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if det != 0:
            break
    for i in range(3):
        for j in range(3):
            if rows[i][j] != 0:
                mono = [0, 0, 0, 0]
                mono[1 + j] = 1
                w_terms[i].append((tuple(mono), gauss(rows[i][j])))
    for _ in range(nextra):
        comp = rng.randint(0, 3)
        for _attempt in range(50):
            mono = (
                rng.randint(0, 2),
                rng.randint(0, 1),
                rng.randint(0, 1),
                rng.randint(0, 1),
            )
            d = sum(mono)
            if 2 <= d <= trunc:
                break
        else:
            continue
        c = rand_gauss(rng, 3)
        if comp == 0:
            z_terms.append((mono, c))
        else:
            w_terms[comp - 1].append((mono, c))
    return Biholomorphism(
        HoloPoly.from_terms(z_terms, trunc),
        [HoloPoly.from_terms(ts, trunc) for ts in w_terms],
        trunc,
    )
