"""Sparse truncated power series in (z, zbar, u1, u2, u3) with exact coefficients.

Monomials are 5-tuples of exponents; truncation is by total degree (the jet
order the normalization proceeds by).  The weighted degree, with weights
(1, 1, 2, 3, 3), is exposed read-only for validating elementary-form
remainders.  Coefficients are GaussRational by default but any ring with
+, *, unary -, .is_zero() and .conj() works (RadicalScalar, Poly).
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from .exactfield import GR_ONE, GaussRational

VAR_NAMES = ("z", "zbar", "u1", "u2", "u3")
WEIGHTS = (1, 1, 2, 3, 3)

Mono = tuple  # (j, k, l1, l2, l3)

MONO_ZERO: Mono = (0, 0, 0, 0, 0)


def mono_degree(m: Mono) -> int:
    return m[0] + m[1] + m[2] + m[3] + m[4]


def mono_weight(m: Mono) -> int:
    return m[0] + m[1] + 2 * m[2] + 3 * m[3] + 3 * m[4]


def mono_conj(m: Mono) -> Mono:
    return (m[1], m[0], m[2], m[3], m[4])


def mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4])


def mono_factorial(m: Mono) -> int:
    return (
        factorial(m[0]) * factorial(m[1]) * factorial(m[2]) * factorial(m[3]) * factorial(m[4])
    )


def mono_key(m: Mono):
    """Graded lexicographic sort key."""
    return (mono_degree(m), m)


def _coerce(c):
    if isinstance(c, (int, Fraction)):
        return GaussRational(c)
    return c


class SingularMapError(ValueError):
    """A formal map with singular linear part cannot be inverted."""


class TruncatedSeries:
    __slots__ = ("terms", "trunc")

    def __init__(self, terms: dict | None, trunc: int, normalized: bool = False):
        if terms is None:
            terms = {}
        if not normalized:
            clean = {}
            for m, c in terms.items():
                if mono_degree(m) > trunc:
                    continue
                c = _coerce(c)
                if c.is_zero():
                    continue
                clean[m] = c
            terms = clean
        self.terms = terms
        self.trunc = trunc

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, trunc: int) -> "TruncatedSeries":
        return cls({}, trunc, normalized=True)

    @classmethod
    def monomial(cls, m: Mono, c, trunc: int) -> "TruncatedSeries":
        return cls({tuple(m): c}, trunc)

    @classmethod
    def variable(cls, idx: int, trunc: int) -> "TruncatedSeries":
        m = [0, 0, 0, 0, 0]
        m[idx] = 1
        return cls({tuple(m): GR_ONE}, trunc)

    @classmethod
    def from_terms(cls, pairs: Iterable, trunc: int) -> "TruncatedSeries":
        d: dict = {}
        for m, c in pairs:
            m = tuple(m)
            c = _coerce(c)
            prev = d.get(m)
            d[m] = c if prev is None else prev + c
        return cls(d, trunc)

    # ------------------------------------------------------------------
    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Mono):
        """Raw coefficient; exact zero for absent monomials."""
        from .exactfield import GR_ZERO

        return self.terms.get(tuple(m), GR_ZERO)

    def support_degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    def min_weight(self) -> int | None:
        """Smallest weighted degree present, None for the zero series."""
        if not self.terms:
            return None
        return min(mono_weight(m) for m in self.terms)

    def homogeneous_part(self, degree: int) -> "TruncatedSeries":
        return TruncatedSeries(
            {m: c for m, c in self.terms.items() if mono_degree(m) == degree},
            self.trunc,
            normalized=True,
        )

    def up_to_degree(self, degree: int) -> "TruncatedSeries":
        return TruncatedSeries(
            {m: c for m, c in self.terms.items() if mono_degree(m) <= degree},
            self.trunc,
            normalized=True,
        )

    def truncate(self, new_trunc: int) -> "TruncatedSeries":
        if new_trunc >= self.trunc:
            return TruncatedSeries(self.terms, new_trunc, normalized=True)
        return TruncatedSeries(
            {m: c for m, c in self.terms.items() if mono_degree(m) <= new_trunc},
            new_trunc,
            normalized=True,
        )

    def with_trunc(self, new_trunc: int) -> "TruncatedSeries":
        """Re-declare the bound without dropping terms.

        Only sound when the caller can prove the higher-degree content is
        determined, e.g. a derivative about to be multiplied by a series
        with no constant term.
        """
        return TruncatedSeries(
            {m: c for m, c in self.terms.items() if mono_degree(m) <= new_trunc},
            new_trunc,
            normalized=True,
        )

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.terms) if self.trunc == trunc else {
            m: c for m, c in self.terms.items() if mono_degree(m) <= trunc
        }
        for m, c in other.terms.items():
            if mono_degree(m) > trunc:
                continue
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return TruncatedSeries(out, trunc, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TruncatedSeries({m: -c for m, c in self.terms.items()}, self.trunc, normalized=True)

    def scalar_mul(self, c) -> "TruncatedSeries":
        c = _coerce(c)
        if c.is_zero():
            return TruncatedSeries.zero(self.trunc)
        out = {}
        for m, v in self.terms.items():
            v = v * c
            if not v.is_zero():
                out[m] = v
        return TruncatedSeries(out, self.trunc, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scalar_mul(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        if not self.terms or not other.terms:
            return TruncatedSeries.zero(trunc)
        # bucket by degree so that pairs beyond the truncation are never formed
        buckets_a: dict = {}
        for m, c in self.terms.items():
            buckets_a.setdefault(mono_degree(m), []).append((m, c))
        buckets_b: dict = {}
        for m, c in other.terms.items():
            buckets_b.setdefault(mono_degree(m), []).append((m, c))
        out: dict = {}
        get = out.get
        for da, items_a in buckets_a.items():
            for db, items_b in buckets_b.items():
                if da + db > trunc:
                    continue
                for ma, ca in items_a:
                    for mb, cb in items_b:
                        m = (
                            ma[0] + mb[0],
                            ma[1] + mb[1],
                            ma[2] + mb[2],
                            ma[3] + mb[3],
                            ma[4] + mb[4],
                        )
                        c = ca * cb
                        v = get(m)
                        out[m] = c if v is None else v + c
        return TruncatedSeries(
            {m: c for m, c in out.items() if not c.is_zero()}, trunc, normalized=True
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ------------------------------------------------------------------

    def partial_derive(self, idx: int) -> "TruncatedSeries":
        out: dict = {}
        for m, c in self.terms.items():
            e = m[idx]
            if e == 0:
                continue
            mm = list(m)
            mm[idx] = e - 1
            out[tuple(mm)] = c * e
        return TruncatedSeries(out, self.trunc - 1, normalized=True)

    def conj_involution(self) -> "TruncatedSeries":
        out = {}
        for m, c in self.terms.items():
            out[mono_conj(m)] = c.conj()
        return TruncatedSeries(out, self.trunc, normalized=True)

    def is_real(self) -> bool:
        return self == self.conj_involution()

    def map_coefficients(self, f: Callable) -> "TruncatedSeries":
        out = {}
        for m, c in self.terms.items():
            v = f(c)
            v = _coerce(v)
            if not v.is_zero():
                out[m] = v
        return TruncatedSeries(out, self.trunc, normalized=True)

    # ------------------------------------------------------------------
    # serialization

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))
        return [{"m": list(m), "c": c.to_json()} for m, c in items]

    @classmethod
    def from_json(cls, arr, trunc: int) -> "TruncatedSeries":
        terms = {}
        for entry in arr:
            m = tuple(entry["m"])
            c = GaussRational.from_json(entry["c"])
            terms[m] = c
        return cls(terms, trunc)

    def __repr__(self):
        if not self.terms:
            return "<series 0>"
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))[:12]:
            mono = "*".join(
                f"{VAR_NAMES[i]}^{e}" if e > 1 else VAR_NAMES[i]
                for i, e in enumerate(m)
                if e
            )
            bits.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        more = "" if len(self.terms) <= 12 else f" ... ({len(self.terms)} terms)"
        return "<series " + " + ".join(bits) + more + ">"


class SeriesMap5:
    """A formal change of the five source variables: images with no constants."""

    __slots__ = ("images", "trunc")

    def __init__(self, images, trunc: int):
        images = tuple(images)
        if len(images) != 5:
            raise ValueError("SeriesMap5 needs exactly five component series")
        for s in images:
            if MONO_ZERO in s.terms:
                raise ValueError("map components must have zero constant term")
        self.images = tuple(s.truncate(trunc) for s in images)
        self.trunc = trunc

    @classmethod
    def identity(cls, trunc: int) -> "SeriesMap5":
        return cls([TruncatedSeries.variable(i, trunc) for i in range(5)], trunc)

    def linear_part(self):
        """5x5 GaussRational matrix L[i][j] = coefficient of var_j in image_i."""
        rows = []
        for s in self.images:
            row = []
            for j in range(5):
                m = [0, 0, 0, 0, 0]
                m[j] = 1
                row.append(s.coefficient(tuple(m)))
            rows.append(row)
        return rows

    def __repr__(self):
        return f"<SeriesMap5 trunc={self.trunc}>"


def substitute(s: TruncatedSeries, m: SeriesMap5) -> TruncatedSeries:
    """Exact composition s(m(x)) truncated to min(s.trunc, m.trunc)."""
    trunc = min(s.trunc, m.trunc)
    cache: dict = {MONO_ZERO: None}  # None marks the constant-1 product
    images = [img.truncate(trunc) for img in m.images]

    def power_product(mono: Mono) -> TruncatedSeries | None:
        hit = cache.get(mono, "miss")
        if hit != "miss":
            return hit
        idx = next(i for i in range(4, -1, -1) if mono[i] > 0)
        parent = list(mono)
        parent[idx] -= 1
        base = power_product(tuple(parent))
        img = images[idx]
        val = img if base is None else base * img
        cache[mono] = val
        return val

    acc = TruncatedSeries.zero(trunc)
    const = s.terms.get(MONO_ZERO)
    if const is not None:
        acc = acc + TruncatedSeries.monomial(MONO_ZERO, const, trunc)
    for mono, c in sorted(s.terms.items(), key=lambda kv: mono_key(kv[0])):
        if mono == MONO_ZERO:
            continue
        if mono_degree(mono) > trunc:
            continue
        pp = power_product(mono)
        acc = acc + pp.scalar_mul(c)
    return acc


def compose(m_outer: SeriesMap5, m_inner: SeriesMap5) -> SeriesMap5:
    """(m_outer after m_inner)(x) = m_outer(m_inner(x))."""
    trunc = min(m_outer.trunc, m_inner.trunc)
    return SeriesMap5([substitute(s, m_inner) for s in m_outer.images], trunc)


def _invert_linear(L):
    """Invert a 5x5 GaussRational matrix; raises SingularMapError when singular."""
    n = 5
    aug = [[L[i][j] for j in range(n)] + [GaussRational(1 if k == i else 0) for k in range(n)] for i, _ in enumerate(L)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise SingularMapError("singular linear part")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def reverse_map(m: SeriesMap5) -> SeriesMap5:
    """Formal inverse: m(reverse_map(m)) = id = reverse_map(m)(m) up to trunc."""
    trunc = m.trunc
    L = m.linear_part()
    Linv = _invert_linear(L)

    def apply_linear(mat, series_list):
        out = []
        for i in range(5):
            acc = TruncatedSeries.zero(trunc)
            for j in range(5):
                if not mat[i][j].is_zero():
                    acc = acc + series_list[j].scalar_mul(mat[i][j])
            out.append(acc)
        return out

    ident = [TruncatedSeries.variable(i, trunc) for i in range(5)]
    # higher-order part H = m - L
    H = []
    for i in range(5):
        lin = TruncatedSeries.zero(trunc)
        for j in range(5):
            if not L[i][j].is_zero():
                lin = lin + ident[j].scalar_mul(L[i][j])
        H.append(m.images[i] - lin)
    g = apply_linear(Linv, ident)  # correct through degree 1
    if all(h.is_zero() for h in H):
        return SeriesMap5(g, trunc)
    for d in range(2, trunc + 1):
        gmap = SeriesMap5([s.truncate(d) for s in g], d)
        corr = [substitute(h.truncate(d), gmap) for h in H]
        g = [
            a.truncate(trunc) + b.truncate(trunc)
            for a, b in zip(
                apply_linear(Linv, ident), apply_linear(Linv, [-c for c in corr])
            )
        ]
    return SeriesMap5(g, trunc)
