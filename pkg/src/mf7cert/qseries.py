"""Truncated q-series with exact coefficients.

A :class:`QSeries` stores coefficients ``c_low .. c_{prec-1}`` where
``prec`` is the absolute precision: every exponent ``>= prec`` is unknown.
Coefficients come from a ring descriptor (see :class:`exactalg.Ring`);
besides the scalar rings this module adds :data:`VL` (Laurent
polynomials in v) and :data:`QV` (the rational function field Q(v)).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from sympy import QQ as _SYMPY_QQ
from sympy.polys.fields import field as _sympy_field

from .exactalg import QQ, NotAUnitError, Ring, parse_scalar, _ring_by_name


class PrecisionError(ArithmeticError):
    """Result precision would drop below 1."""


# ---------------------------------------------------------------------------
# Laurent polynomials in v


class VLaurent:
    """Sparse Laurent polynomial in v with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = {int(e): Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, e: int, c=1) -> "VLaurent":
        return cls({e: c})

    @staticmethod
    def _coerce(other):
        if isinstance(other, VLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return VLaurent({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return VLaurent(t)

    __radd__ = __add__

    def __neg__(self):
        return VLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return VLaurent(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = VLaurent({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "VLaurent":
        if not self.is_unit():
            raise NotAUnitError(f"{self} is not a unit among Laurent polynomials")
        (e, c), = self.terms.items()
        return VLaurent({-e: 1 / c})

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def at_one(self) -> Fraction:
        """Specialise v = 1."""
        return sum(self.terms.values(), Fraction(0))

    def to_field(self):
        """Image in Q(v)."""
        out = QV.zero
        for e, c in self.terms.items():
            out += QV(c) * (V_FIELD_GEN**e)
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"VLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "" if e == 0 else "v" if e == 1 else f"v^{e}" if e > 0 else f"v^({e})"
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


class _VLaurentRing(Ring):
    name = "VL"

    def __call__(self, x):
        if isinstance(x, VLaurent):
            return x
        if isinstance(x, (int, Fraction)):
            return VLaurent({0: x})
        raise ValueError(f"cannot coerce {x!r} into Laurent polynomials")

    def is_unit(self, x):
        return x.is_unit()

    def inv(self, x):
        return x.inverse()


VL = _VLaurentRing()

# Q(v) is taken from sympy's sparse rational function fields.
_QV_FIELD, V_FIELD_GEN = _sympy_field("v", _SYMPY_QQ)


class _RationalFunctionField(Ring):
    name = "QV"

    def __call__(self, x):
        if isinstance(x, VLaurent):
            return x.to_field()
        if isinstance(x, Fraction):
            return _QV_FIELD(_SYMPY_QQ(x.numerator, x.denominator))
        if isinstance(x, int):
            return _QV_FIELD(x)
        if getattr(x, "field", None) == _QV_FIELD:
            return x
        raise ValueError(f"cannot coerce {x!r} into Q(v)")

    @property
    def zero(self):
        return _QV_FIELD.zero

    @property
    def one(self):
        return _QV_FIELD.one

    def is_unit(self, x):
        return bool(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero in Q(v)")
        return 1 / x

    def is_field(self):
        return True

    def to_str(self, x):
        return str(x).replace("**", "^")


QV = _RationalFunctionField()


def qv_from_str(text: str):
    return _QV_FIELD.from_expr(__import__("sympy").sympify(text.replace("^", "**")))


def _needs_parens(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return any(ch in body for ch in "+-/") and not body.replace("/", "").isdigit()


# ---------------------------------------------------------------------------
# truncated series


class QSeries:
    """Truncated Laurent series ``sum c_i q^i + O(q^prec)``."""

    __slots__ = ("ring", "low", "prec", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence, low: int = 0, prec: int | None = None):
        coeffs = [ring(c) for c in coeffs]
        if prec is None:
            prec = low + len(coeffs)
        coeffs = coeffs[: max(0, prec - low)]
        # strip leading zeros so ``low`` carries a nonzero coefficient
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        coeffs = coeffs[i:]
        low += i
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            low = prec
        self.ring = ring
        self.low = low
        self.prec = prec
        self.coeffs = coeffs

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_dict(cls, ring: Ring, terms: Mapping[int, object], prec: int) -> "QSeries":
        terms = {e: c for e, c in terms.items() if e < prec and c}
        if not terms:
            return cls(ring, [], prec, prec)
        low = min(terms)
        coeffs = [ring.zero] * (max(terms) - low + 1)
        for e, c in terms.items():
            coeffs[e - low] = ring(c)
        return cls(ring, coeffs, low, prec)

    @classmethod
    def zero(cls, ring: Ring, prec: int) -> "QSeries":
        return cls(ring, [], prec, prec)

    @classmethod
    def one(cls, ring: Ring, prec: int) -> "QSeries":
        return cls.constant(ring, 1, prec)

    @classmethod
    def constant(cls, ring: Ring, c, prec: int) -> "QSeries":
        return cls(ring, [ring(c)], 0, prec)

    @classmethod
    def q(cls, ring: Ring, prec: int, power: int = 1) -> "QSeries":
        return cls.from_dict(ring, {power: ring.one}, prec)

    def one_like(self) -> "QSeries":
        return QSeries.one(self.ring, self.prec)

    # -- access -----------------------------------------------------------

    def __getitem__(self, n: int):
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} is beyond precision O(q^{self.prec})")
        if n < self.low or n >= self.low + len(self.coeffs):
            return self.ring.zero
        return self.coeffs[n - self.low]

    coefficient = __getitem__

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        return self.low

    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.ring, self.coeffs, self.low, min(prec, self.prec))

    def is_power_series(self) -> bool:
        return self.low >= 0

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, QSeries):
            if other.ring is not self.ring and other.ring.name != self.ring.name:
                other = other.change_ring(self.ring)
            return other
        try:
            c = self.ring(other)
        except (ValueError, TypeError):
            return None
        return QSeries(self.ring, [c], 0, max(self.prec, 1))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        terms: dict = {}
        for s in (self, o):
            for e, c in s.items():
                if e < prec:
                    terms[e] = terms[e] + c if e in terms else c
        return QSeries.from_dict(self.ring, terms, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.ring, [-c for c in self.coeffs], self.low, self.prec)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            try:
                c = self.ring(other)
            except (ValueError, TypeError):
                return NotImplemented
            return QSeries(self.ring, [x * c for x in self.coeffs], self.low, self.prec)
        o = self._lift(other)
        prec = min(self.low + o.prec, o.low + self.prec)
        if self.is_zero() or o.is_zero():
            return QSeries.zero(self.ring, prec)
        low = self.low + o.low
        n = prec - low
        if n <= 0:
            return QSeries.zero(self.ring, prec)
        out = [None] * n
        a, b = self.coeffs, o.coeffs
        for i, x in enumerate(a[:n]):
            if not x:
                continue
            for j, y in enumerate(b[: n - i]):
                if y:
                    t = x * y
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = self.ring.zero
        return QSeries(self.ring, [zero if c is None else c for c in out], low, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            return QSeries.one(self.ring, self.prec)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero series")
        lead = self.coeffs[0]
        if not self.ring.is_unit(lead):
            raise NotAUnitError(f"leading coefficient {lead} is not a unit")
        rel = self.prec - self.low  # relative precision
        if rel < 1:
            raise PrecisionError("no significant terms to invert")
        inv0 = self.ring.inv(lead)
        a = self.coeffs + [self.ring.zero] * max(0, rel - len(self.coeffs))
        b = [inv0]
        for m in range(1, rel):
            s = self.ring.zero
            for i in range(1, m + 1):
                if a[i]:
                    s = s + a[i] * b[m - i]
            b.append(-(s * inv0))
        return QSeries(self.ring, b, -self.low, -self.low + rel)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        c = self.ring(other)
        return self * self.ring.inv(c)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o * self.invert()

    def compose_scale(self, n: int) -> "QSeries":
        """Substitute q -> q^n (n >= 1)."""
        if n < 1:
            raise ValueError("scale factor must be positive")
        terms = {e * n: c for e, c in self.items()}
        return QSeries.from_dict(self.ring, terms, self.prec * n)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries(self.ring, self.coeffs, self.low + k, self.prec + k)

    def map_coefficients(self, fn: Callable, ring: Ring | None = None) -> "QSeries":
        ring = ring or self.ring
        return QSeries(ring, [fn(c) for c in self.coeffs], self.low, self.prec)

    def change_ring(self, ring: Ring) -> "QSeries":
        return QSeries(ring, [ring(c) for c in self.coeffs], self.low, self.prec)

    # -- comparison -------------------------------------------------------

    def agrees_with(self, other: "QSeries", prec: int | None = None) -> bool:
        """Coefficientwise agreement below ``prec`` (default: common precision)."""
        o = self._lift(other)
        bound = min(self.prec, o.prec)
        if prec is not None:
            if prec > bound:
                raise PrecisionError(f"cannot compare to O(q^{prec}); only O(q^{bound}) known")
            bound = prec
        lo = min(self.low, o.low)
        return all(self[e] == o[e] for e in range(lo, bound))

    def first_difference(self, other: "QSeries"):
        o = self._lift(other)
        bound = min(self.prec, o.prec)
        for e in range(min(self.low, o.low), bound):
            if self[e] != o[e]:
                return e, self[e], o[e]
        return None

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QSeries) else other
        if o is None:
            return False
        return self.agrees_with(o)

    __hash__ = None

    # -- output -----------------------------------------------------------

    def __str__(self):
        parts = []
        for e, c in self.items():
            cs = self.ring.to_str(c)
            neg = cs.startswith("-") and not _needs_parens(cs)
            if neg:
                cs = cs[1:]
            if _needs_parens(cs):
                cs = f"({cs})"
            mono = "" if e == 0 else "q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        big_o = f"O(q^{self.prec})"
        if not parts:
            return big_o
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return f"{out} + {big_o}"

    def __repr__(self):
        return f"QSeries[{self.ring.name}]({self})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "low": self.low,
            "prec": self.prec,
            "coeffs": [self.ring.to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        ring = _series_ring(data.get("ring", "QQ"))
        if ring is QV:
            coeffs = [qv_from_str(s) for s in data["coeffs"]]
        elif ring is VL:
            raise ValueError("Laurent-coefficient series are not deserialisable")
        else:
            coeffs = [parse_scalar(s, ring) for s in data["coeffs"]]
        return cls(ring, coeffs, data["low"], data["prec"])


def _series_ring(name: str) -> Ring:
    if name == "VL":
        return VL
    if name == "QV":
        return QV
    return _ring_by_name(name)


# ---------------------------------------------------------------------------
# divisor sums


def sigma(k: int, m: int) -> int:
    """Sum of d^k over positive divisors d of m."""
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            total += d**k
            e = m // d
            if e != d:
                total += e**k
        d += 1
    return total


def divisor_series(k: int, n: int, prec: int) -> QSeries:
    """s_k(q^n) = sum_{m >= 1} sigma_k(m) q^(n m) modulo q^prec."""
    if prec < 1:
        raise PrecisionError("precision must be at least 1")
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    terms = {n * m: sigma(k, m) for m in range(1, (prec - 1) // n + 1)}
    return QSeries.from_dict(QQ, terms, prec)


def geometric(prec: int, ring: Ring = QQ) -> QSeries:
    """1/(1-q)."""
    return QSeries(ring, [1] * prec, 0, prec)


def eta_product_delta(n: int, prec: int) -> QSeries:
    """q * prod_{m>=1} (1-q^m)^24, then q -> q^n."""
    base_prec = -(-prec // n)  # enough terms before scaling
    f = QSeries.one(QQ, base_prec)
    for m in range(1, base_prec):
        factor = QSeries.from_dict(QQ, {0: 1, m: -1}, base_prec)
        f = f * factor
    f = f**24
    return f.shift(1).truncate(base_prec).compose_scale(n).truncate(prec)
