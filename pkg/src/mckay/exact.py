"""Exact scalars and polynomials: rationals, cyclotomic numbers, multivariate
polynomials and rational functions in the Tate class L.

Rationals are :class:`fractions.Fraction`. Everything else is implemented
here so that zero-testing stays canonical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "CyclotomicNumber"]


class ArithmeticError_(ArithmeticError):
    """Raised when an exact computation meets an impossible value."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials with monic ``b``."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a):
        raise ArithmeticError_("inexact polynomial division")
    return q


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        p = _int_poly_divexact(p, list(cyclotomic_polynomial(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds x^k mod Phi_m for 0 <= k < max(m, 2*phi(m))."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    if d:
        cur[0] = 1
    for _ in range(max(m, 2 * d)):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1] if d else 0
        cur = [0] + cur[:-1] if d else []
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


# ---------------------------------------------------------------------------
# cyclotomic field


class CyclotomicNumber:
    """Element of Q(zeta_m) in the power basis modulo Phi_m.

    Stored as integer numerators over one positive common denominator so that
    the common case (algebraic integers) runs on plain ints.
    """

    __slots__ = ("m", "_num", "_den", "_hash")

    def __init__(self, m: int, coefficients: Iterable = (), _raw=None):
        self.m = m
        if _raw is not None:
            num, den = _raw
        else:
            fr = [Fraction(c) for c in coefficients]
            deg = euler_phi(m)
            if len(fr) > deg:
                table = _reduction_table(m)
                if len(fr) > len(table):
                    raise ValueError("too many coefficients for conductor")
                acc = [Fraction(0)] * deg
                for k, c in enumerate(fr):
                    if c:
                        for j, t in enumerate(table[k]):
                            if t:
                                acc[j] += c * t
                fr = acc
            fr = fr + [Fraction(0)] * (deg - len(fr))
            den = lcm(*(c.denominator for c in fr)) if fr else 1
            num = [int(c * den) for c in fr]
        g = reduce(gcd, num, den)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    # construction helpers
    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicNumber":
        """zeta_m ** k with zeta_m = exp(2 pi i / m)."""
        table = _reduction_table(m)
        return cls(m, _raw=(list(table[k % m]), 1))

    @classmethod
    def from_rational(cls, m: int, q) -> "CyclotomicNumber":
        q = Fraction(q)
        d = euler_phi(m)
        return cls(m, _raw=([q.numerator] + [0] * (d - 1), q.denominator))

    @classmethod
    def _from_ints(cls, m: int, num: list[int], den: int) -> "CyclotomicNumber":
        return cls(m, _raw=(num, den))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.m, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        if d1 == d2:
            num = [a + b for a, b in zip(self._num, o._num)]
            return CyclotomicNumber._from_ints(self.m, num, d1)
        num = [a * d2 + b * d1 for a, b in zip(self._num, o._num)]
        return CyclotomicNumber._from_ints(self.m, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._from_ints(self.m, [-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber._from_ints(
                self.m, [a * q.numerator for a in self._num], self._den * q.denominator
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._num, o._num
        d = len(a)
        prod = [0] * (2 * d - 1) if d else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:d]
        if len(prod) > d:
            table = _reduction_table(self.m)
            for k in range(d, len(prod)):
                c = prod[k]
                if c:
                    row = table[k]
                    for j in range(d):
                        if row[j]:
                            res[j] += c * row[j]
        return CyclotomicNumber._from_ints(self.m, res, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        a = [Fraction(c, self._den) for c in self._num]
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        s, _, g = _poly_xgcd(_trim(a), phi)
        # g is a nonzero constant because Phi_m is irreducible
        inv = [c / g[0] for c in s]
        return CyclotomicNumber(self.m, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.m == other.m and self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_rational())
            else:
                self._hash = hash((self.m, self._num, self._den))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ArithmeticError_(f"{self} is not rational")
        return Fraction(self._num[0] if self._num else 0, self._den)

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta -> zeta^-1."""
        m = self.m
        table = _reduction_table(m)
        acc = [0] * len(self._num)
        for i, c in enumerate(self._num):
            if c:
                row = table[(-i) % m]
                for j in range(len(acc)):
                    if row[j]:
                        acc[j] += c * row[j]
        return CyclotomicNumber._from_ints(m, acc, self._den)

    def embed(self, big_m: int) -> "CyclotomicNumber":
        """Image in Q(zeta_M) for a multiple M of the conductor."""
        if big_m % self.m:
            raise ValueError(f"{big_m} is not a multiple of {self.m}")
        step = big_m // self.m
        table = _reduction_table(big_m)
        acc = [0] * euler_phi(big_m)
        for i, c in enumerate(self._num):
            if c:
                row = table[(i * step) % big_m]
                for j in range(len(acc)):
                    if row[j]:
                        acc[j] += c * row[j]
        return CyclotomicNumber._from_ints(big_m, acc, self._den)

    def __repr__(self):
        return f"CyclotomicNumber({self.m}, {self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            terms.append(_format_term(c, mono))
        return _join_terms(terms)


def _format_term(c: Fraction, mono: str) -> tuple[bool, str]:
    neg = c < 0
    a = -c if neg else c
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return neg, body


def _join_terms(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# univariate polynomials over Q (tuples of Fractions, low degree first)

Poly = tuple  # tuple[Fraction, ...], trimmed


def poly(coeffs: Iterable) -> Poly:
    return tuple(_trim([Fraction(c) for c in coeffs]))


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return tuple(_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]))


def poly_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(_trim(out))


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            f = c / lead
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] -= f * b[j]
    return tuple(_trim(q)), tuple(_trim(r[:db] if db else []))


def poly_monic(a: Poly) -> Poly:
    return tuple(c / a[-1] for c in a) if a else a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def _poly_xgcd(a: list, b: list):
    """Return s, t, g with s*a + t*b = g."""
    r0, r1 = tuple(_trim(list(a))), tuple(_trim(list(b)))
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(s0, poly_neg(poly_mul(q, s1)))
        t0, t1 = t1, poly_add(t0, poly_neg(poly_mul(q, t1)))
    return list(s0), list(t0), list(r0)


def poly_eval(a: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# rational functions in L


class MotiveExpr:
    """Reduced rational function num(L)/den(L) over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable = (), den: Iterable = (1,)):
        n, d = poly(num), poly(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(n, d) if n else d
        if n:
            n = poly_divmod(n, g)[0]
            d = poly_divmod(d, g)[0]
        else:
            d = (Fraction(1),)
        lead = d[-1]
        self.num = tuple(c / lead for c in n)
        self.den = tuple(c / lead for c in d)

    # constructors
    @classmethod
    def L(cls, k: int = 1) -> "MotiveExpr":
        if k >= 0:
            return cls([0] * k + [1])
        return cls([1], [0] * (-k) + [1])

    @classmethod
    def const(cls, c) -> "MotiveExpr":
        return cls([c])

    def _co(self, other):
        if isinstance(other, MotiveExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return MotiveExpr([other])
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return MotiveExpr(poly_add(self.num, o.num), self.den)
        return MotiveExpr(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return MotiveExpr(poly_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return MotiveExpr(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero motive")
        return MotiveExpr(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return MotiveExpr.const(1) / (self ** (-k))
        out = MotiveExpr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_laurent_polynomial(self) -> bool:
        """Denominator is a power of L."""
        return all(c == 0 for c in self.den[:-1])

    def __repr__(self):
        return f"MotiveExpr({self})"

    def __str__(self):
        return motive_to_text(self)


def _poly_text(p: Poly) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else ("L" if k == 1 else f"L^{k}")
        terms.append(_format_term(c, mono))
    return _join_terms(terms)


def motive_to_text(x: MotiveExpr) -> str:
    """Canonical text form, e.g. ``L^3 + 3*L^2 + 3*L``."""
    if x.is_polynomial():
        return _poly_text(x.num)
    if x.is_laurent_polynomial():
        shift = len(x.den) - 1
        terms = []
        for k in range(len(x.num) - 1, -1, -1):
            c = x.num[k]
            if not c:
                continue
            e = k - shift
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            terms.append(_format_term(c, mono))
        return _join_terms(terms)
    return f"({_poly_text(x.num)}) / ({_poly_text(x.den)})"


def motive_eval_at_one(x: MotiveExpr) -> Fraction:
    """Limit of ``x`` as L -> 1 (Euler specialization)."""
    num, den = list(x.num), list(x.den)
    root = (Fraction(-1), Fraction(1))
    while num and den and poly_eval(tuple(num), 1) == 0 and poly_eval(tuple(den), 1) == 0:
        num = list(poly_divmod(tuple(num), root)[0])
        den = list(poly_divmod(tuple(den), root)[0])
    d1 = poly_eval(tuple(den), 1)
    if d1 == 0:
        raise ArithmeticError_(f"pole at L = 1 in {x}")
    return poly_eval(tuple(num), 1) / d1


def motive_eval(x: MotiveExpr, value) -> Fraction:
    d = poly_eval(x.den, Fraction(value))
    if d == 0:
        raise ZeroDivisionError(f"pole at L = {value}")
    return poly_eval(x.num, Fraction(value)) / d


def lefschetz_series(x: MotiveExpr, depth: int) -> tuple[int, list[Fraction]]:
    """Expand ``x`` as a Laurent series in 1/L.

    Returns ``(top, coeffs)`` with ``x = sum_i coeffs[i] * L^(top - i)``,
    ``i = 0..depth``. The zero expression has ``top = 0``.
    """
    if not x.num:
        return 0, [Fraction(0)] * (depth + 1)
    dn, dd = len(x.num) - 1, len(x.den) - 1
    # in t = 1/L: num = L^dn * N(t), den = L^dd * D(t), D(0) = lead(den) != 0
    nt = list(reversed(x.num))
    dt = list(reversed(x.den))
    out = []
    rem = nt + [Fraction(0)] * (depth + 1)
    for i in range(depth + 1):
        c = rem[i] / dt[0]
        out.append(c)
        if c:
            for j in range(1, len(dt)):
                if i + j < len(rem):
                    rem[i + j] -= c * dt[j]
    return dn - dd, out


# ---------------------------------------------------------------------------
# multiplicities of eigenvalues from traces of powers


def cyclo_dft_multiplicities(traces: Sequence[CyclotomicNumber], r: int) -> list[int]:
    """Eigenvalue multiplicities of a matrix g with g^r = 1.

    ``traces[k]`` is the trace of g^k. Entry j of the result is the
    multiplicity of exp(2 pi i j / r).
    """
    if len(traces) != r:
        raise ValueError(f"need {r} traces, got {len(traces)}")
    m = next((t.m for t in traces if isinstance(t, CyclotomicNumber)), r)
    if m % r:
        big = lcm(m, r)
        traces = [t.embed(big) if isinstance(t, CyclotomicNumber) else t for t in traces]
        m = big
    step = m // r
    out = []
    for j in range(r):
        acc = CyclotomicNumber.from_rational(m, 0)
        for k, t in enumerate(traces):
            acc = acc + CyclotomicNumber.zeta(m, (-j * k * step) % m) * t
        acc = acc / r
        if not acc.is_rational() or acc.to_rational().denominator != 1 or acc.to_rational() < 0:
            raise ArithmeticError_(
                f"eigenvalue multiplicity {acc} is not a nonnegative integer; g^{r} != 1?"
            )
        out.append(int(acc.to_rational()))
    return out


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial over Q or Q(zeta_m) in named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.variables = tuple(variables)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.variables) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        e = tuple(1 if v == name else 0 for v in variables)
        if sum(e) != 1:
            raise KeyError(name)
        return cls(variables, {e: Fraction(1)})

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MultiPoly":
        if isinstance(c, int):
            c = Fraction(c)
        return cls(variables, {(0,) * len(variables): c})

    def _co(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return MultiPoly.const(self.variables, other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                t[e] = t[e] + v if e in t else v
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of polynomial")
        out = MultiPoly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            c = self.terms[e]
            if isinstance(c, CyclotomicNumber) and not c.is_rational():
                parts.append((False, f"({c})" + (f"*{mono}" if mono else "")))
            else:
                c = c.to_rational() if isinstance(c, CyclotomicNumber) else Fraction(c)
                parts.append(_format_term(c, mono))
        return _join_terms(parts)


def poly_substitute(p: MultiPoly, bindings: Mapping[str, MultiPoly]) -> MultiPoly:
    """Compose ``p`` with the substitution ``var -> bindings[var]``."""
    missing = [v for v in p.variables if v not in bindings]
    if missing:
        raise KeyError(f"unbound variables: {missing}")
    targets = {b.variables for b in bindings.values()}
    if len(targets) != 1:
        raise ValueError("bindings must share one variable list")
    tvars = targets.pop()
    result = MultiPoly(tvars)
    powers: dict[tuple[str, int], MultiPoly] = {}
    for e, c in p.terms.items():
        term = MultiPoly.const(tvars, c)
        for v, k in zip(p.variables, e):
            if k:
                key = (v, k)
                if key not in powers:
                    powers[key] = bindings[v] ** k
                term = term * powers[key]
        result = result + term
    return result
