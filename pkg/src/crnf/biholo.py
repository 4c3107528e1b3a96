"""Origin-preserving truncated holomorphic maps of C^4 acting on defining triples.

Holomorphy is structural: polynomials live in (z, w1, w2, w3) only, so the
determining constraints d/dzbar = 0 hold by construction.  The action on a
manifold is a graph transform: substitute w = u + i*Phi, build the real
5-variable reparametrization (z, zbar, u) -> (Z, Zbar, Re W), invert it
formally, and read Im W^k through the inverse.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactfield import GR_ONE, GaussRational, gauss
from .manifold import CRManifold
from .wseries import (
    SeriesMap5,
    SingularMapError,
    TruncatedSeries,
    reverse_map,
    substitute,
)

HVAR_NAMES = ("z", "w1", "w2", "w3")

HMono = tuple  # (a, l1, l2, l3)


class DegenerateActionError(ValueError):
    """The induced real reparametrization is not invertible."""


def _coerce(c):
    if isinstance(c, (int, Fraction)):
        return GaussRational(c)
    return c


def _hdeg(m: HMono) -> int:
    return m[0] + m[1] + m[2] + m[3]


class HoloPoly:
    """Truncated polynomial in (z, w1, w2, w3); degrees beyond trunc are rejected."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: dict | None, trunc: int, normalized: bool = False):
        if terms is None:
            terms = {}
        if not normalized:
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if _hdeg(m) > trunc:
                    raise ValueError(
                        f"monomial degree {_hdeg(m)} exceeds the cap {trunc}"
                    )
                c = _coerce(c)
                if c.is_zero():
                    continue
                clean[m] = c
            terms = clean
        self.terms = terms
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc: int) -> "HoloPoly":
        return cls({}, trunc, normalized=True)

    @classmethod
    def variable(cls, idx: int, trunc: int) -> "HoloPoly":
        m = [0, 0, 0, 0]
        m[idx] = 1
        return cls({tuple(m): GR_ONE}, trunc, normalized=True)

    @classmethod
    def from_terms(cls, pairs: Iterable, trunc: int) -> "HoloPoly":
        d: dict = {}
        for m, c in pairs:
            m = tuple(m)
            c = _coerce(c)
            prev = d.get(m)
            d[m] = c if prev is None else prev + c
        return cls(d, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: HMono) -> GaussRational:
        from .exactfield import GR_ZERO

        return self.terms.get(tuple(m), GR_ZERO)

    def __add__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = {m: c for m, c in self.terms.items() if _hdeg(m) <= trunc}
        for m, c in other.terms.items():
            if _hdeg(m) > trunc:
                continue
            v = out.get(m)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(m, None)
            else:
                out[m] = v
        return HoloPoly(out, trunc, normalized=True)

    def __neg__(self):
        return HoloPoly({m: -c for m, c in self.terms.items()}, self.trunc, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, c) -> "HoloPoly":
        c = _coerce(c)
        if c.is_zero():
            return HoloPoly.zero(self.trunc)
        return HoloPoly(
            {m: v * c for m, v in self.terms.items()}, self.trunc, normalized=True
        )

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda kv: (_hdeg(kv[0]), kv[0]))
        return [{"m": list(m), "c": c.to_json()} for m, c in items]

    @classmethod
    def from_json(cls, arr, trunc: int) -> "HoloPoly":
        return cls({tuple(e["m"]): GaussRational.from_json(e["c"]) for e in arr}, trunc)

    def __eq__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (_hdeg(kv[0]), kv[0]))[:8]:
            mono = "*".join(
                f"{HVAR_NAMES[i]}^{e}" if e > 1 else HVAR_NAMES[i]
                for i, e in enumerate(m)
                if e
            )
            bits.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return "<holo " + (" + ".join(bits) or "0") + ">"


def _embed(p: HoloPoly, trunc: int) -> TruncatedSeries:
    """View a holomorphic polynomial in the 5-variable series ring.

    Slot layout (z, zbar, u1, u2, u3) carries (z, -, w1, w2, w3); the zbar
    slot stays unused, which is exactly the structural holomorphy.
    """
    return TruncatedSeries(
        {(m[0], 0, m[1], m[2], m[3]): c for m, c in p.terms.items()},
        trunc,
        normalized=True,
    )


def _extract(s: TruncatedSeries, trunc: int) -> HoloPoly:
    terms = {}
    for m, c in s.terms.items():
        if m[1] != 0:
            raise ValueError("series is not holomorphic in the embedded sense")
        terms[(m[0], m[2], m[3], m[4])] = c
    return HoloPoly(terms, trunc, normalized=True)


class Biholomorphism:
    __slots__ = ("z", "w", "trunc")

    def __init__(self, z_image: HoloPoly, w_images, trunc: int):
        w_images = tuple(w_images)
        if len(w_images) != 3:
            raise ValueError("need three target W components")
        comps = (z_image,) + w_images
        for p in comps:
            if (0, 0, 0, 0) in p.terms:
                raise ValueError("components must have zero constant term")
        lin = [
            [p.coefficient(tuple(1 if i == j else 0 for i in range(4))) for j in range(4)]
            for p in comps
        ]
        if not _invertible4(lin):
            raise SingularMapError("linear part of the map is singular")
        self.z = HoloPoly(z_image.terms, trunc, normalized=False)
        self.w = tuple(HoloPoly(p.terms, trunc, normalized=False) for p in w_images)
        self.trunc = trunc

    def components(self):
        return (self.z,) + self.w

    def linear_part(self):
        return [
            [p.coefficient(tuple(1 if i == j else 0 for i in range(4))) for j in range(4)]
            for p in self.components()
        ]

    def to_json(self):
        return {
            "trunc": self.trunc,
            "vars": list(HVAR_NAMES),
            "Z": self.z.to_json(),
            "W1": self.w[0].to_json(),
            "W2": self.w[1].to_json(),
            "W3": self.w[2].to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "Biholomorphism":
        if obj.get("vars") != list(HVAR_NAMES):
            raise ValueError("unexpected variable tagging for a holomorphic map")
        trunc = int(obj["trunc"])
        z = HoloPoly.from_json(obj["Z"], trunc)
        w = tuple(HoloPoly.from_json(obj[k], trunc) for k in ("W1", "W2", "W3"))
        return cls(z, w, trunc)

    def __eq__(self, other):
        if not isinstance(other, Biholomorphism):
            return NotImplemented
        return self.z == other.z and self.w == other.w

    def __repr__(self):
        return f"<Biholomorphism trunc={self.trunc}>"


def _invertible4(mat) -> bool:
    m = [row[:] for row in mat]
    for col in range(4):
        piv = next((r for r in range(col, 4) if not m[r][col].is_zero()), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        for r in range(col + 1, 4):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return True


def identity_map(trunc: int) -> Biholomorphism:
    return Biholomorphism(
        HoloPoly.variable(0, trunc),
        [HoloPoly.variable(i, trunc) for i in (1, 2, 3)],
        trunc,
    )


def _embedded_map(g: Biholomorphism, trunc: int) -> SeriesMap5:
    imgs = [
        _embed(g.z, trunc),
        TruncatedSeries.variable(1, trunc),
        _embed(g.w[0], trunc),
        _embed(g.w[1], trunc),
        _embed(g.w[2], trunc),
    ]
    return SeriesMap5(imgs, trunc)


def compose(g: Biholomorphism, h: Biholomorphism) -> Biholomorphism:
    """(g after h): apply h first."""
    trunc = min(g.trunc, h.trunc)
    inner = _embedded_map(h, trunc)
    comps = [substitute(_embed(p, trunc), inner) for p in g.components()]
    return Biholomorphism(
        _extract(comps[0], trunc), [_extract(c, trunc) for c in comps[1:]], trunc
    )


def invert(g: Biholomorphism) -> Biholomorphism:
    trunc = g.trunc
    reverse = reverse_map(_embedded_map(g, trunc))
    comps = [reverse.images[i] for i in (0, 2, 3, 4)]
    return Biholomorphism(
        _extract(comps[0], trunc), [_extract(c, trunc) for c in comps[1:]], trunc
    )


def graph_substitution(m: CRManifold, trunc: int) -> SeriesMap5:
    """The substitution z -> z, zbar -> zbar, w_j -> u_j + i Phi^j."""
    imgs = [
        TruncatedSeries.variable(0, trunc),
        TruncatedSeries.variable(1, trunc),
    ]
    for j in range(3):
        imgs.append(
            TruncatedSeries.variable(2 + j, trunc)
            + m.phi[j].truncate(trunc).scalar_mul(gauss(0, 1))
        )
    return SeriesMap5(imgs, trunc)


def act_on_manifold(g: Biholomorphism, m: CRManifold) -> CRManifold:
    trunc = min(g.trunc, m.trunc)
    graph = graph_substitution(m, trunc)
    z_on_graph = substitute(_embed(g.z, trunc), graph)
    w_on_graph = [substitute(_embed(p, trunc), graph) for p in g.w]
    half = gauss(Fraction(1, 2))
    mhalf_i = gauss(0, Fraction(-1, 2))
    re_w = [(s + s.conj_involution()).scalar_mul(half) for s in w_on_graph]
    im_w = [(s - s.conj_involution()).scalar_mul(mhalf_i) for s in w_on_graph]
    frame = SeriesMap5(
        [z_on_graph, z_on_graph.conj_involution()] + re_w, trunc
    )
    try:
        inv = reverse_map(frame)
    except SingularMapError as exc:
        raise DegenerateActionError(str(exc)) from exc
    phi_new = tuple(substitute(s, inv) for s in im_w)
    return CRManifold(phi_new, trunc)
