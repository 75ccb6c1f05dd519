"""Exact arithmetic: rationals, the field Q(i, sqrt(2)), and Laurent polynomials in t.

Every coefficient appearing in the tensor constructions and certificates lives in
Q(i, sqrt(2)), represented as a fixed 4-dimensional Q-algebra with basis
(1, i, sqrt2, i*sqrt2).  Deformation parameters are Laurent polynomials in a single
variable t; rational functions never appear because every denominator that shows up
is a power of t and is cleared by the caller.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, NegativeOrder

# Arbitrary-precision rationals.  Fraction already keeps the canonical form the
# rest of the package relies on: positive denominator, coprime, zero as 0/1.
Rational = Fraction

_RationalLike = (int, Fraction)


def _as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


class FieldElem:
    """Element r + c*i + s*sqrt2 + cs*i*sqrt2 of Q(i, sqrt2), all coordinates rational."""

    __slots__ = ("r", "c", "s", "cs")

    def __init__(self, r=0, c=0, s=0, cs=0):
        object.__setattr__(self, "r", _as_rational(r))
        object.__setattr__(self, "c", _as_rational(c))
        object.__setattr__(self, "s", _as_rational(s))
        object.__setattr__(self, "cs", _as_rational(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rational(cls, x) -> FieldElem:
        return cls(_as_rational(x))

    @classmethod
    def coerce(cls, x) -> FieldElem:
        if isinstance(x, FieldElem):
            return x
        return cls.from_rational(x)

    # -- structure ---------------------------------------------------------
    def coords(self):
        return (self.r, self.c, self.s, self.cs)

    def is_rational(self) -> bool:
        return not (self.c or self.s or self.cs)

    def __bool__(self) -> bool:
        return bool(self.r or self.c or self.s or self.cs)

    def __eq__(self, other) -> bool:
        if isinstance(other, _RationalLike):
            other = FieldElem.from_rational(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    # -- ring operations ----------------------------------------------------
    def __add__(self, other) -> FieldElem:
        if isinstance(other, _RationalLike):
            other = FieldElem.from_rational(other)
        elif not isinstance(other, FieldElem):
            return NotImplemented
        return FieldElem(self.r + other.r, self.c + other.c,
                         self.s + other.s, self.cs + other.cs)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.r, -self.c, -self.s, -self.cs)

    def __sub__(self, other) -> FieldElem:
        if isinstance(other, _RationalLike):
            other = FieldElem.from_rational(other)
        elif not isinstance(other, FieldElem):
            return NotImplemented
        return FieldElem(self.r - other.r, self.c - other.c,
                         self.s - other.s, self.cs - other.cs)

    def __rsub__(self, other) -> FieldElem:
        return (-self) + other

    def __mul__(self, other) -> FieldElem:
        if isinstance(other, _RationalLike):
            q = _as_rational(other)
            return FieldElem(self.r * q, self.c * q, self.s * q, self.cs * q)
        if not isinstance(other, FieldElem):
            return NotImplemented
        r1, c1, s1, cs1 = self.coords()
        r2, c2, s2, cs2 = other.coords()
        # multiplication table of (1, i, sqrt2, i*sqrt2)
        return FieldElem(
            r1 * r2 - c1 * c2 + 2 * (s1 * s2 - cs1 * cs2),
            r1 * c2 + c1 * r2 + 2 * (s1 * cs2 + cs1 * s2),
            r1 * s2 + s1 * r2 - c1 * cs2 - cs1 * c2,
            r1 * cs2 + cs1 * r2 + c1 * s2 + s1 * c2,
        )

    __rmul__ = __mul__

    def conj_i(self) -> FieldElem:
        """Complex conjugation i -> -i."""
        return FieldElem(self.r, -self.c, self.s, -self.cs)

    def conj_sqrt2(self) -> FieldElem:
        """Galois conjugation sqrt2 -> -sqrt2."""
        return FieldElem(self.r, self.c, -self.s, -self.cs)

    def norm(self) -> Fraction:
        """Product of all four Galois conjugates; a rational number."""
        z = self * self.conj_i()
        w = z * z.conj_sqrt2()
        assert w.is_rational()
        return w.r

    def inverse(self) -> FieldElem:
        if not self:
            raise DivisionByZero("inverse of zero")
        # z * conj_i(z) * conj_sqrt2(z * conj_i(z)) equals norm(z), a rational
        num = self.conj_i() * (self * self.conj_i()).conj_sqrt2()
        return num * (Fraction(1) / self.norm())

    def __truediv__(self, other) -> FieldElem:
        if isinstance(other, _RationalLike):
            q = _as_rational(other)
            if q == 0:
                raise DivisionByZero("division by zero rational")
            return self * (Fraction(1) / q)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> FieldElem:
        return FieldElem.coerce(other) / self

    def __pow__(self, n: int) -> FieldElem:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __float__(self) -> float:
        s2 = 2 ** 0.5
        if self.c or self.cs:
            raise ValueError("element is not real")
        return float(self.r) + float(self.s) * s2

    # -- text form -----------------------------------------------------------
    def __repr__(self):
        return f"FieldElem({self.r!r}, {self.c!r}, {self.s!r}, {self.cs!r})"

    def __str__(self):
        return field_to_str(self)


ZERO = FieldElem(0)
ONE = FieldElem(1)
I_UNIT = FieldElem(0, 1)
SQRT2 = FieldElem(0, 0, 1)


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Dispatch add/sub/mul/div on field elements; div requires b != 0."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("field division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable t
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite map exponent -> nonzero FieldElem; the ring Q(i,sqrt2)[t, 1/t]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, v in coeffs.items():
                v = FieldElem.coerce(v)
                if v:
                    clean[int(e)] = v
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def const(cls, v) -> LaurentPoly:
        return cls({0: FieldElem.coerce(v)})

    @classmethod
    def t_power(cls, e: int, coeff=1) -> LaurentPoly:
        return cls({e: FieldElem.coerce(coeff)})

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.coeffs)

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, FieldElem)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- ring operations -------------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction, FieldElem)):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = out.get(e)
            w = v if w is None else w + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -v for e, v in self.coeffs.items()})

    def __sub__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction, FieldElem)):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction, FieldElem)):
            w = FieldElem.coerce(other)
            return LaurentPoly({e: v * w for e, v in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, FieldElem] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = e1 + e2
                p = v1 * v2
                w = out.get(e)
                w = p if w is None else w + p
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, e: int) -> LaurentPoly:
        """Multiply by t**e."""
        return LaurentPoly({k + e: v for k, v in self.coeffs.items()})

    def coeff(self, e: int) -> FieldElem:
        return self.coeffs.get(e, ZERO)

    def limit(self) -> FieldElem:
        """Value of lim_{t->0}; requires no surviving negative exponents."""
        if self.coeffs and min(self.coeffs) < 0:
            raise NegativeOrder(min(self.coeffs))
        return self.coeffs.get(0, ZERO)

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        terms = " + ".join(f"({v})*t^{e}" for e, v in sorted(self.coeffs.items()))
        return f"LaurentPoly({terms})"


def laurent_scale(p: LaurentPoly, e: int) -> LaurentPoly:
    """Shift every exponent of p by e (multiplication by t**e)."""
    return p.shift(e)


def laurent_limit(p: LaurentPoly) -> FieldElem:
    """lim_{t->0} p; raises NegativeOrder when the limit diverges."""
    return p.limit()


# ---------------------------------------------------------------------------
# text serialization, bit-exact round trips
# ---------------------------------------------------------------------------

def rational_to_str(q) -> str:
    q = _as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def field_to_str(x: FieldElem) -> str:
    return "({},{},{},{})".format(*(rational_to_str(v) for v in x.coords()))


def field_from_str(s: str) -> FieldElem:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad field element {s!r}")
    parts = s[1:-1].split(",")
    if len(parts) != 4:
        raise ValueError(f"bad field element {s!r}")
    return FieldElem(*(rational_from_str(p) for p in parts))


def laurent_to_json(p: LaurentPoly) -> dict:
    return {str(e): field_to_str(v) for e, v in sorted(p.coeffs.items())}


def laurent_from_json(d: dict) -> LaurentPoly:
    return LaurentPoly({int(e): field_from_str(v) for e, v in d.items()})
