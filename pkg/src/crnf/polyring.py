"""Sparse multivariate polynomials over Q(i) in arbitrary hashable symbols.

Monomials are canonically sorted tuples of (symbol, exponent) pairs; symbols
only need to be hashable and mutually orderable.  This carries both the
normalizer's undetermined real transformation parameters and the symbolic
engine's polynomials in lifted invariants.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactfield import GR_ONE, GR_ZERO, GaussRational

_MONO_ONE: tuple = ()


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items()))


def _coerce_scalar(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    return None


class Poly:
    """Immutable-by-convention sparse polynomial with GaussRational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def const(cls, c) -> "Poly":
        c = _coerce_scalar(c)
        if c is None:
            raise TypeError("Poly.const expects a scalar")
        if c.is_zero():
            return cls({})
        return cls({_MONO_ONE: c})

    @classmethod
    def var(cls, sym, coeff=GR_ONE) -> "Poly":
        coeff = _coerce_scalar(coeff)
        if coeff.is_zero():
            return cls({})
        return cls({((sym, 1),): coeff})

    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _MONO_ONE in self.terms)

    def const_part(self) -> GaussRational:
        return self.terms.get(_MONO_ONE, GR_ZERO)

    def symbols(self) -> set:
        out: set = set()
        for m in self.terms:
            for s, _ in m:
                out.add(s)
        return out

    def max_degree_in(self, sym) -> int:
        best = 0
        for m in self.terms:
            for s, e in m:
                if s == sym and e > best:
                    best = e
        return best

    def total_degree(self) -> int:
        best = 0
        for m in self.terms:
            d = sum(e for _, e in m)
            if d > best:
                best = d
        return best

    # ------------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return Poly.const(c)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly.zero()
        if other.is_const():
            c0 = other.const_part()
            return Poly({m: c * c0 for m, c in self.terms.items()})
        if self.is_const():
            c0 = self.const_part()
            return Poly({m: c0 * c for m, c in other.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                v = out.get(m)
                if v is None:
                    out[m] = c
                else:
                    v = v + c
                    if v.is_zero():
                        del out[m]
                    else:
                        out[m] = v
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self * c.inverse()

    def __pow__(self, n: int):
        out = Poly.const(GR_ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ------------------------------------------------------------------

    def conj(self, sym_conj=None) -> "Poly":
        """Coefficient conjugation, with an optional symbol involution."""
        out: dict = {}
        for m, c in self.terms.items():
            if sym_conj is not None:
                m = tuple(sorted((sym_conj(s), e) for s, e in m))
            v = out.get(m)
            cc = c.conj()
            if v is None:
                out[m] = cc
            else:
                v = v + cc
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return Poly(out)

    def substitute(self, values: dict) -> "Poly":
        """Replace symbols by Poly/scalar values; untouched symbols remain."""
        out = Poly.zero()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for s, e in m:
                v = values.get(s)
                if v is None:
                    term = term * Poly({((s, e),): GR_ONE})
                else:
                    if not isinstance(v, Poly):
                        v = Poly.const(v)
                    term = term * v**e
            out = out + term
        return out

    def coefficient_of_linear(self, sym):
        """(a, b) with self == a*sym + b, requiring degree(sym) <= 1 in self."""
        a: dict = {}
        b: dict = {}
        for m, c in self.terms.items():
            hit = False
            rest = []
            for s, e in m:
                if s == sym:
                    if e > 1:
                        raise ValueError(f"symbol {sym!r} appears with degree {e}")
                    hit = True
                else:
                    rest.append((s, e))
            if hit:
                a[tuple(rest)] = c
            else:
                b[m] = c
        return Poly(a), Poly(b)

    def evaluate(self, values: dict) -> GaussRational:
        """Full evaluation; every symbol must be assigned a scalar."""
        acc = GR_ZERO
        for m, c in self.terms.items():
            for s, e in m:
                v = values[s]
                v = _coerce_scalar(v) or v
                c = c * v**e
            acc = acc + c
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(f"{s}" + (f"^{e}" if e > 1 else "") for s, e in m)
            bits.append(f"{c!r}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def poly_sum(ps: Iterable[Poly]) -> Poly:
    acc = Poly.zero()
    for p in ps:
        acc = acc + p
    return acc
