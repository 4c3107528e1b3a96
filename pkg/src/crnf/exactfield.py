"""Exact scalar arithmetic: Gaussian rationals and one optional real radical.

Every coefficient in this package lives in Q(i), or, after a scale
normalization that required a root extraction, in Q(i, r) for a single real
radical r with r**k equal to a positive rational.  All operations are exact;
there is no floating-point fallback anywhere in the decision path.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

RationalLike = Union[int, Fraction]


class ExactFieldError(ArithmeticError):
    """Division by zero or other impossible exact-field operation."""


class RadicalPolicyError(ExactFieldError):
    """A computation would need more than the single supported real radical."""


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def fraction_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


class GaussRational:
    """An element (a + b*i)/d of Q(i), stored as one reduced integer triple.

    Invariants: d >= 1 and gcd(a, b, d) = 1, so equality is triple equality
    and every operation pays for one gcd reduction instead of one per
    Fraction component.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        re = _as_fraction(re)
        im = _as_fraction(im)
        d1 = re.denominator
        d2 = im.denominator
        d = d1 * d2 // gcd(d1, d2)
        # lcm of reduced denominators: the triple is already reduced
        self.a = re.numerator * (d // d1)
        self.b = im.numerator * (d // d2)
        self.d = d

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> "GaussRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        out = object.__new__(cls)
        out.a = a
        out.b = b
        out.d = d
        return out

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussRational":
        """Skip reduction; callers must pass an already reduced triple."""
        out = object.__new__(cls)
        out.a = a
        out.b = b
        out.d = d
        return out

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    # ------------------------------------------------------------------
    # constructors / conversions

    @classmethod
    def from_json(cls, obj) -> "GaussRational":
        if isinstance(obj, str):
            return cls(fraction_from_str(obj))
        if isinstance(obj, int):
            return cls(obj)
        return cls(fraction_from_str(obj.get("re", "0")), fraction_from_str(obj.get("im", "0")))

    def to_json(self):
        if self.b == 0:
            return fraction_to_str(self.re)
        return {"re": fraction_to_str(self.re), "im": fraction_to_str(self.im)}

    # ------------------------------------------------------------------
    # predicates

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_real(self) -> bool:
        return self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.d == other.d:
            return GaussRational._make(self.a + other.a, self.b + other.b, self.d)
        return GaussRational._make(
            self.a * other.d + other.a * self.d,
            self.b * other.d + other.b * self.d,
            self.d * other.d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.d == other.d:
            return GaussRational._make(self.a - other.a, self.b - other.b, self.d)
        return GaussRational._make(
            self.a * other.d - other.a * self.d,
            self.b * other.d - other.b * self.d,
            self.d * other.d,
        )

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussRational._raw(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return GaussRational._make(self.a * other.a, 0, self.d * other.d)
        return GaussRational._make(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.a * other.a + other.b * other.b
        if n == 0:
            raise ExactFieldError("division by zero in Q(i)")
        return GaussRational._make(
            other.d * (self.a * other.a + self.b * other.b),
            other.d * (self.b * other.a - self.a * other.b),
            self.d * n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GR_ONE / self) ** (-k)
        out = GR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "GaussRational":
        return GaussRational._raw(self.a, -self.b, self.d)

    def real_part(self) -> "GaussRational":
        return GaussRational._make(self.a, 0, self.d)

    def imag_part(self) -> "GaussRational":
        """Im as an element of the field (without the i factor)."""
        return GaussRational._make(self.b, 0, self.d)

    def inverse(self) -> "GaussRational":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ExactFieldError("division by zero in Q(i)")
        return GaussRational._make(self.d * self.a, -self.d * self.b, n)

    def norm2(self) -> Fraction:
        """|x|^2 as an exact rational."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    # ------------------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.re, self.im))

    def __repr__(self):
        if self.b == 0:
            return fraction_to_str(self.re)
        if self.a == 0:
            return f"{fraction_to_str(self.im)}*i"
        sign = "+" if self.b > 0 else "-"
        return f"({fraction_to_str(self.re)}{sign}{fraction_to_str(abs(self.im))}*i)"


def _coerce(x) -> "GaussRational":
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, int):
        return GaussRational._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return GaussRational._raw(x.numerator, 0, x.denominator)
    return NotImplemented


GR_ZERO = GaussRational(0)
GR_ONE = GaussRational(1)
GR_I = GaussRational(0, 1)


def gauss(re: RationalLike = 0, im: RationalLike = 0) -> GaussRational:
    return GaussRational(re, im)


# ----------------------------------------------------------------------
# integer helpers


def _inth_root(n: int, k: int):
    """Exact floor-free integer k-th root: returns r with r**k == n, else None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = _inth_root(-n, k)
        return None if r is None else -r
    if n in (0, 1) or k == 1:
        return n
    hi = 1
    while hi**k < n:
        hi <<= 1
    lo = hi >> 1
    while lo <= hi:
        mid = (lo + hi) // 2
        m = mid**k
        if m == n:
            return mid
        if m < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_root(x: Fraction, k: int):
    """Exact rational k-th root of x (positive root for even k), else None."""
    x = _as_fraction(x)
    num = _inth_root(x.numerator, k)
    if num is None:
        return None
    den = _inth_root(x.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def factorint(n: int) -> dict:
    """Prime factorization by trial division plus Pollard rho for stragglers."""
    if n < 0:
        n = -n
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        _factor_large(n, out)
    return out


def _factor_large(n: int, out: dict) -> None:
    if n == 1:
        return
    if _is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


# ----------------------------------------------------------------------
# the single-radical extension


class RadicalScalar:
    """Element of Q(i, r) where r is a fixed positive real with r**k rational.

    Stored as a polynomial in r of degree < k with GaussRational coefficients,
    reduced via r**k = q.  Only one (k, q) pair may be in play per run; mixing
    incompatible radicals raises RadicalPolicyError.
    """

    __slots__ = ("k", "q", "coeffs")

    def __init__(self, k: int, q: Fraction, coeffs):
        if k < 2:
            raise ValueError("radical index must be >= 2")
        self.k = k
        self.q = _as_fraction(q)
        cs = list(coeffs)
        if len(cs) != k:
            raise ValueError("payload length must equal the radical index")
        self.coeffs = tuple(c if isinstance(c, GaussRational) else GaussRational(c) for c in cs)

    # ------------------------------------------------------------------

    @classmethod
    def generator(cls, k: int, q: Fraction) -> "RadicalScalar":
        coeffs = [GR_ZERO] * k
        coeffs[1] = GR_ONE
        return cls(k, q, coeffs)

    @classmethod
    def constant(cls, k: int, q: Fraction, c) -> "RadicalScalar":
        coeffs = [GR_ZERO] * k
        coeffs[0] = c if isinstance(c, GaussRational) else GaussRational(c)
        return cls(k, q, coeffs)

    def _lift(self, other) -> "RadicalScalar":
        if isinstance(other, RadicalScalar):
            if other.k != self.k or other.q != self.q:
                raise RadicalPolicyError(
                    f"incompatible radicals: r^{self.k}={self.q} vs r^{other.k}={other.q}"
                )
            return other
        g = _coerce(other)
        if g is NotImplemented:
            return NotImplemented
        return RadicalScalar.constant(self.k, self.q, g)

    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def constant_part(self) -> GaussRational:
        return self.coeffs[0]

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RadicalScalar(self.k, self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RadicalScalar(self.k, self.q, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return RadicalScalar(self.k, self.q, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        k = self.k
        acc = [GR_ZERO] * k
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                d = i + j
                term = a * b
                if d >= k:
                    d -= k
                    term = term * self.q
                acc[d] = acc[d] + term
        return RadicalScalar(self.k, self.q, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "RadicalScalar":
        """Exact inverse via Gaussian elimination on the multiplication matrix."""
        k = self.k
        if self.is_zero():
            raise ExactFieldError("division by zero in Q(i, r)")
        # columns: coefficients of self * r^j reduced mod r^k = q
        cols = []
        for j in range(k):
            col = [GR_ZERO] * k
            for i, a in enumerate(self.coeffs):
                d = i + j
                term = a
                if d >= k:
                    d -= k
                    term = term * self.q
                col[d] = col[d] + term
            cols.append(col)
        # solve sum_j y_j * cols[j] = e0
        rows = [[cols[j][i] for j in range(k)] for i in range(k)]
        rhs = [GR_ONE] + [GR_ZERO] * (k - 1)
        y = _solve_gauss(rows, rhs)
        if y is None:
            raise RadicalPolicyError("zero divisor encountered in the radical extension")
        return RadicalScalar(self.k, self.q, y)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RadicalScalar.constant(self.k, self.q, GR_ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "RadicalScalar":
        return RadicalScalar(self.k, self.q, [a.conj() for a in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = RadicalScalar.constant(self.k, self.q, other)
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        return self.k == other.k and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.k, self.q, self.coeffs))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(repr(c))
            elif i == 1:
                parts.append(f"{c!r}*r")
            else:
                parts.append(f"{c!r}*r^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"<{body} | r^{self.k}={self.q}>"

    def to_json(self):
        return {
            "radical": {"k": self.k, "q": fraction_to_str(self.q)},
            "coeffs": [c.to_json() for c in self.coeffs],
        }


def _solve_gauss(rows, rhs):
    """Solve a square GaussRational system in place; None when singular."""
    n = len(rows)
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        rhs[col] = rhs[col] * inv
        for r in range(n):
            if r == col:
                continue
            f = rows[r][col]
            if f.is_zero():
                continue
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
            rhs[r] = rhs[r] - f * rhs[col]
    return rhs


def try_real_root(x: Fraction, k: int):
    """Exact positive k-th root of a positive rational.

    Returns a Fraction when the root is rational, otherwise a RadicalScalar
    generator for the smallest radical index m dividing k such that
    x = y**(k/m) with rational y (so the returned relation is r**m = y).
    """
    x = _as_fraction(x)
    if x <= 0:
        raise ExactFieldError("real root only defined for positive rationals")
    if k < 1:
        raise ExactFieldError("root index must be positive")
    for m in sorted(d for d in range(1, k + 1) if k % d == 0):
        y = rational_root(x, k // m)
        if y is None:
            continue
        if m == 1:
            return y
        return RadicalScalar.generator(m, y)
    raise AssertionError("unreachable: m == k always yields y = x")


# ----------------------------------------------------------------------
# exact roots of unit-modulus Gaussian rationals


def _gauss_int_divmod(a, b):
    """Rounded division in Z[i]; a, b are (re, im) integer pairs."""
    br, bi = b
    n = br * br + bi * bi
    ar, ai = a
    qr_num = ar * br + ai * bi
    qi_num = ai * br - ar * bi
    qr = (2 * qr_num + n) // (2 * n)
    qi = (2 * qi_num + n) // (2 * n)
    rr = ar - (qr * br - qi * bi)
    ri = ai - (qr * bi + qi * br)
    return (qr, qi), (rr, ri)


def _gauss_int_gcd(a, b):
    while b != (0, 0):
        _, r = _gauss_int_divmod(a, b)
        a, b = b, r
    return a


def _first_quadrant(z):
    """Unit-normalize a nonzero Gaussian integer into re > 0, im >= 0.

    Returns ((r, i), t) with (r, i) = i**t * z.
    """
    r, i = z
    t = 0
    while not (r > 0 and i >= 0):
        r, i = -i, r
        t += 1
        if t == 4:
            raise AssertionError("zero has no first-quadrant form")
    return (r, i), t


def _gaussian_prime_above(p: int):
    """A Gaussian prime dividing the split rational prime p (p % 4 == 1)."""
    # find x with x^2 = -1 mod p, then gcd(p, x + i)
    a = 2
    while True:
        x = pow(a, (p - 1) // 4, p)
        if x * x % p == p - 1:
            break
        a += 1
    g = _gauss_int_gcd((p, 0), (x, 1))
    g, _ = _first_quadrant(g)
    return g


def _factor_gauss_int(z):
    """Factor a nonzero Gaussian integer: unit power of i and prime powers.

    Returns (t, {prime: exponent}) with primes unit-normalized into the first
    quadrant, z = i**t * prod(prime**exp).
    """
    factors: dict = {}
    n = z[0] * z[0] + z[1] * z[1]
    for p, e in sorted(factorint(n).items()):
        if p == 2:
            pi = (1, 1)
            for _ in range(e):
                q, r = _gauss_int_divmod(z, pi)
                assert r == (0, 0)
                z = q
                factors[pi] = factors.get(pi, 0) + 1
        elif p % 4 == 3:
            assert e % 2 == 0
            for _ in range(e // 2):
                q, r = _gauss_int_divmod(z, (p, 0))
                assert r == (0, 0)
                z = q
                factors[(p, 0)] = factors.get((p, 0), 0) + 1
        else:
            pi = _gaussian_prime_above(p)
            pib, _ = _first_quadrant((pi[0], -pi[1]))
            for cand in (pi, pib):
                while True:
                    q, r = _gauss_int_divmod(z, cand)
                    if r != (0, 0):
                        break
                    z = q
                    factors[cand] = factors.get(cand, 0) + 1
    (zr, zi) = z
    assert abs(zr) + abs(zi) == 1, "factorization must exhaust the integer"
    if (zr, zi) == (1, 0):
        t_total = 0
    elif (zr, zi) == (0, 1):
        t_total = 1
    elif (zr, zi) == (-1, 0):
        t_total = 2
    else:
        t_total = 3
    return t_total, factors


def gaussian_unit_root(u: GaussRational, n: int):
    """Exact n-th root in Q(i) of a unit-modulus Gaussian rational, else None.

    Writes u = i^t * prod (pi/conj(pi))^e over first-quadrant split primes;
    a root exists iff every e is divisible by n and gcd(n, 4) divides t
    (adjusting t by multiples of n modulo 4).
    """
    if n == 1:
        return u
    if u.norm2() != 1:
        raise ExactFieldError("unit root requires |u| = 1")
    # clear denominators: u = P / d with P in Z[i], d a positive integer
    d = (u.re.denominator * u.im.denominator) // gcd(u.re.denominator, u.im.denominator)
    P = (int(u.re * d), int(u.im * d))
    t, fac = _factor_gauss_int(P)
    dfac = factorint(d)
    # organize into conjugate pairs; inert/ramified parts must cancel with d
    exps: dict = {}
    for pi, e in fac.items():
        if pi[1] == 0 or pi == (1, 1):
            continue
        pib = (pi[0], -pi[1])
        pibq, tb = _first_quadrant(pib)
        if pibq in exps or pi in exps:
            continue
        e2 = fac.get(pibq, 0)
        # p = N(pi); denominator contributes -dfac[p] to each of pi, pib
        p = pi[0] * pi[0] + pi[1] * pi[1]
        dd = dfac.get(p, 0)
        a_exp = e - dd
        b_exp = e2 - dd
        # u's pi-content: (pi)^a_exp (pib)^b_exp with a_exp + b_exp == 0
        if a_exp + b_exp != 0:
            raise AssertionError("not unit modulus after all")
        # account for the unit picked up writing pib in first-quadrant form
        t = (t + tb * e2) % 4
        exps[pi] = a_exp
    # the 1+i and inert contents must cancel against d; they leave units behind
    e2i = fac.get((1, 1), 0)
    d2 = dfac.get(2, 0)
    if e2i != 2 * d2:
        raise AssertionError("ramified content does not cancel")
    # 2 = -i * (1+i)^2, hence (1+i)^(2*d2) / 2^d2 = i^d2
    t = (t + d2) % 4
    for p, e in dfac.items():
        if p == 2 or p % 4 == 1:
            continue
        # inert prime: numerator had it with exponent e (as (p,0)^e)
        if fac.get((p, 0), 0) != e:
            raise AssertionError("inert content does not cancel")
    # now u = i^t * prod pi^a * conj(pi)^{-a}
    for pi, a in exps.items():
        if a % n != 0:
            return None
    g = __import__("math").gcd(n, 4)
    if t % g != 0:
        return None
    # solve s*n = t (mod 4)
    s = next(s for s in range(4) if (s * n) % 4 == t % 4)
    root = GR_I**s
    for pi, a in exps.items():
        f = a // n
        num = GaussRational(pi[0], pi[1])
        ratio = num / num.conj()
        root = root * (ratio**f)
    return root


def scalar_is_zero(x) -> bool:
    """Zero test across the scalar kinds used in series coefficients."""
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def scalar_conj(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()
