"""Defining triples v^k = Phi^k(z, zbar, u) for the 5-dimensional models in C^4.

A manifold is stored through three real truncated series in elementary form:
Phi^1 opens with z*zbar and Phi^2, Phi^3 open with the cubic terms, in one of
two accepted scalings ("unit": z^2 zbar + z zbar^2 and i(z^2 zbar - z zbar^2);
"half": the same divided by 2, with the opposite sign on the third component).
The half scaling is canonical internally; every normalized output uses it.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from .exactfield import GR_ZERO, GaussRational, gauss
from .wseries import (
    Mono,
    SeriesMap5,
    TruncatedSeries,
    mono_conj,
    mono_degree,
    mono_weight,
    substitute,
)

CONVENTION_UNIT = "unit"
CONVENTION_HALF = "half"

# leading cubic data per convention: raw coefficients of z^2 zbar in (Phi^2, Phi^3)
_LEAD = {
    CONVENTION_UNIT: (gauss(1), gauss(0, 1)),
    CONVENTION_HALF: (gauss(Fraction(1, 2)), gauss(0, Fraction(-1, 2))),
}


class TruncationBoundError(ValueError):
    """Requested coefficient lies beyond the series truncation."""


class LiftedCoefficientId:
    """Identifies V^alpha at index (j, k, l1, l2, l3): Z^j Zbar^k U^l."""

    __slots__ = ("alpha", "index")

    def __init__(self, alpha: int, index):
        if alpha not in (1, 2, 3):
            raise ValueError("alpha must be 1, 2 or 3")
        index = tuple(int(e) for e in index)
        if len(index) != 5 or any(e < 0 for e in index):
            raise ValueError("index must be five nonnegative exponents")
        self.alpha = alpha
        self.index = index

    def conj(self) -> "LiftedCoefficientId":
        return LiftedCoefficientId(self.alpha, mono_conj(self.index))

    def total_degree(self) -> int:
        return mono_degree(self.index)

    def weight(self) -> int:
        return mono_weight(self.index)

    def is_diag(self) -> bool:
        """Indices with j = k carry real coefficients on real manifolds."""
        return self.index[0] == self.index[1]

    def label(self) -> str:
        j, k, l1, l2, l3 = self.index
        bits = []
        for sym, e in (("Z", j), ("Zb", k), ("U1", l1), ("U2", l2), ("U3", l3)):
            if e == 1:
                bits.append(sym)
            elif e > 1:
                bits.append(f"{sym}{e}")
        return f"V{self.alpha}_" + "".join(bits)

    def to_json(self):
        return {"alpha": self.alpha, "index": list(self.index)}

    @classmethod
    def from_json(cls, obj) -> "LiftedCoefficientId":
        return cls(obj["alpha"], obj["index"])

    def __eq__(self, other):
        if not isinstance(other, LiftedCoefficientId):
            return NotImplemented
        return self.alpha == other.alpha and self.index == other.index

    def __hash__(self):
        return hash((self.alpha, self.index))

    def __repr__(self):
        return self.label()


def vid(alpha: int, j: int, k: int, l1: int = 0, l2: int = 0, l3: int = 0) -> LiftedCoefficientId:
    return LiftedCoefficientId(alpha, (j, k, l1, l2, l3))


class CRManifold:
    __slots__ = ("phi", "trunc")

    def __init__(self, phi, trunc: int):
        phi = tuple(phi)
        if len(phi) != 3:
            raise ValueError("need exactly three defining series")
        self.phi = tuple(s.truncate(trunc) for s in phi)
        self.trunc = trunc

    def to_json(self):
        return {
            "trunc": self.trunc,
            "v1": self.phi[0].to_json(),
            "v2": self.phi[1].to_json(),
            "v3": self.phi[2].to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "CRManifold":
        trunc = int(obj["trunc"])
        phi = tuple(
            TruncatedSeries.from_json(obj[key], trunc) for key in ("v1", "v2", "v3")
        )
        return cls(phi, trunc)

    def __eq__(self, other):
        if not isinstance(other, CRManifold):
            return NotImplemented
        return self.trunc == other.trunc and self.phi == other.phi

    def __hash__(self):
        return hash((self.trunc, self.phi))

    def __repr__(self):
        return f"<CRManifold trunc={self.trunc}>"


class ValidationReport:
    __slots__ = ("ok", "convention", "issues", "trunc")

    def __init__(self, ok: bool, convention, issues, trunc: int):
        self.ok = ok
        self.convention = convention
        self.issues = list(issues)
        self.trunc = trunc

    def to_json(self):
        return {
            "ok": self.ok,
            "convention": self.convention,
            "issues": self.issues,
            "trunc": self.trunc,
        }

    def __repr__(self):
        state = "ok" if self.ok else "invalid"
        return f"<ValidationReport {state} convention={self.convention}>"


def _mono(j, k, l1=0, l2=0, l3=0) -> Mono:
    return (j, k, l1, l2, l3)


def cubic_model(trunc: int, convention: str = CONVENTION_HALF) -> CRManifold:
    """The totally nondegenerate cubic model in the requested scaling."""
    c2, c3 = _LEAD[convention]
    phi1 = TruncatedSeries.from_terms([(_mono(1, 1), gauss(1))], trunc)
    phi2 = TruncatedSeries.from_terms(
        [(_mono(2, 1), c2), (_mono(1, 2), c2.conj())], trunc
    )
    phi3 = TruncatedSeries.from_terms(
        [(_mono(2, 1), c3), (_mono(1, 2), c3.conj())], trunc
    )
    return CRManifold((phi1, phi2, phi3), trunc)


def detect_convention(m: CRManifold):
    """Return "unit" or "half" from the leading cubic coefficients, else None."""
    lead2 = m.phi[1].coefficient(_mono(2, 1))
    lead3 = m.phi[2].coefficient(_mono(2, 1))
    for name, (c2, c3) in _LEAD.items():
        if lead2 == c2 and lead3 == c3:
            return name
    return None


def validate(m: CRManifold) -> ValidationReport:
    issues = []
    for k, s in enumerate(m.phi, start=1):
        if not s.is_real():
            issues.append(f"component {k}: not real under z <-> zbar conjugation")
    convention = detect_convention(m)
    if convention is None:
        issues.append(
            "leading cubic coefficients match neither accepted scaling"
        )
    else:
        zzb = TruncatedSeries.from_terms([(_mono(1, 1), gauss(1))], m.trunc)
        rem1 = m.phi[0] - zzb
        bad1 = [mn for mn in rem1.terms if mono_weight(mn) < 3]
        if bad1:
            issues.append("component 1: terms of weighted order < 3 beyond z*zbar")
        model = cubic_model(m.trunc, convention)
        for k in (2, 3):
            rem = m.phi[k - 1] - model.phi[k - 1]
            bad = [mn for mn in rem.terms if mono_weight(mn) < 4]
            if bad:
                issues.append(
                    f"component {k}: terms of weighted order < 4 beyond the cubic part"
                )
    return ValidationReport(not issues, convention, issues, m.trunc)


def canonicalize_convention(m: CRManifold) -> CRManifold:
    """Rescale to the half convention: W^2 -> W^2/2, W^3 -> -W^3/2.

    On defining series this reads Phi'^k(z, zbar, u) with u2 -> 2 u2 and
    u3 -> -2 u3 substituted, then the same factors on the values.
    """
    convention = detect_convention(m)
    if convention == CONVENTION_HALF:
        return m
    if convention != CONVENTION_UNIT:
        raise ValueError("manifold is in neither accepted scaling")
    t = m.trunc
    sub = SeriesMap5(
        [
            TruncatedSeries.variable(0, t),
            TruncatedSeries.variable(1, t),
            TruncatedSeries.variable(2, t),
            TruncatedSeries.variable(3, t).scalar_mul(2),
            TruncatedSeries.variable(4, t).scalar_mul(-2),
        ],
        t,
    )
    phi1 = substitute(m.phi[0], sub)
    phi2 = substitute(m.phi[1], sub).scalar_mul(Fraction(1, 2))
    phi3 = substitute(m.phi[2], sub).scalar_mul(Fraction(-1, 2))
    return CRManifold((phi1, phi2, phi3), t)


def extract_coefficient(m: CRManifold, cid: LiftedCoefficientId):
    """j! k! l! times the raw coefficient: the lifted normal-form coefficient."""
    if cid.total_degree() > m.trunc:
        raise TruncationBoundError(
            f"index {cid.label()} has degree {cid.total_degree()} > trunc {m.trunc}"
        )
    raw = m.phi[cid.alpha - 1].coefficient(cid.index)
    fact = 1
    for e in cid.index:
        fact *= factorial(e)
    if isinstance(raw, GaussRational):
        return raw * gauss(fact)
    return raw * fact


def pluriharmonic_ids(trunc: int) -> Iterable[LiftedCoefficientId]:
    """All V^k_{Z^j U^l} ids with j >= 1 up to the degree bound."""
    out = []
    for alpha in (1, 2, 3):
        for j in range(1, trunc + 1):
            for l1 in range(0, trunc + 1 - j):
                for l2 in range(0, trunc + 1 - j - l1):
                    for l3 in range(0, trunc + 1 - j - l1 - l2):
                        out.append(LiftedCoefficientId(alpha, (j, 0, l1, l2, l3)))
    return out


def remove_pluriharmonic(m: CRManifold) -> CRManifold:
    """Kill every V^k_{Z^j U^l} (j >= 1) by holomorphic shifts W^k -> W^k - 2i h^k.

    Works degree by degree: the shift at degree n cancels the degree-n
    holomorphic terms exactly and perturbs only higher degrees.
    """
    from .biholo import Biholomorphism, HoloPoly, act_on_manifold, identity_map

    cur = m
    t = m.trunc
    for n in range(2, t + 1):
        corrections = {1: [], 2: [], 3: []}
        found = False
        for k in (1, 2, 3):
            for mono, c in cur.phi[k - 1].terms.items():
                j, kk, l1, l2, l3 = mono
                if kk == 0 and j >= 1 and mono_degree(mono) == n:
                    corrections[k].append(((j, l1, l2, l3), c))
                    found = True
        if not found:
            continue
        g = identity_map(t)
        w_images = list(g.w)
        for k in (1, 2, 3):
            if corrections[k]:
                shift = HoloPoly.from_terms(
                    [(mono, gauss(0, -2) * c) for mono, c in corrections[k]], t
                )
                w_images[k - 1] = w_images[k - 1] + shift
        g = Biholomorphism(g.z, w_images, t)
        cur = act_on_manifold(g, cur)
    return cur
