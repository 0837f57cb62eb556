"""Exact coefficient rings and sparse graded multivariate polynomials.

Five scalar rings are provided as singleton descriptors:

    ZZ     Python ``int``
    QQ     ``fractions.Fraction``
    GF3    :class:`GF3Elem`
    LOC3   :class:`Loc3` (rationals with denominator prime to 3)
    QZ6    :class:`CycQ6` (the field Q(zeta6), zeta6^2 = zeta6 - 1)

Polynomials live in a :class:`PolyRing` which fixes the generator names,
their weights, the coefficient ring and optionally the relation
``sigma2 = z1*z2 + z2*z3 + z3*z1``.  Elements of a ring carrying that
relation are kept in normal form for lex order z1 > z2 > z3, i.e. no
monomial is divisible by z1*z2.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class NotLocalError(ArithmeticError):
    """A 3-local computation produced a denominator divisible by 3."""


class NotAUnitError(ArithmeticError):
    """Inversion of a non-unit."""


# ---------------------------------------------------------------------------
# scalar element types


class GF3Elem:
    __slots__ = ("v",)

    def __init__(self, v: int = 0):
        self.v = v % 3

    def _coerce(self, other):
        if isinstance(other, GF3Elem):
            return other
        if isinstance(other, int):
            return GF3Elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF3Elem(self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF3Elem(self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF3Elem(o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF3Elem(self.v * o.v)

    __rmul__ = __mul__

    def __neg__(self):
        return GF3Elem(-self.v)

    def inverse(self) -> "GF3Elem":
        if self.v == 0:
            raise ZeroDivisionError("0 is not invertible in GF(3)")
        return GF3Elem(self.v)  # 1*1 = 2*2 = 1

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GF3Elem(pow(self.v, n, 3))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o.v

    def __hash__(self):
        return hash(("GF3", self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF3({self.v})"

    def __str__(self):
        return str(self.v)


class Loc3:
    """A rational number whose reduced denominator is prime to 3."""

    __slots__ = ("q",)

    def __init__(self, value=0, den: int = 1):
        q = Fraction(value, den) if den != 1 else Fraction(value)
        if q.denominator % 3 == 0:
            raise NotLocalError(f"{q} is not 3-local")
        self.q = q

    @staticmethod
    def _val(other):
        if isinstance(other, Loc3):
            return other.q
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Loc3(self.q + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Loc3(self.q - o)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Loc3(o - self.q)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Loc3(self.q * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Loc3(-self.q)

    def is_unit(self) -> bool:
        return self.q.numerator % 3 != 0

    def inverse(self) -> "Loc3":
        if not self.is_unit():
            raise NotAUnitError(f"{self.q} is not a unit in Z_(3)")
        return Loc3(1 / self.q)

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Loc3(self.q / o)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Loc3(self.q**n)

    def __eq__(self, other):
        o = self._val(other)
        return o is not None and self.q == o

    def __hash__(self):
        return hash(self.q)

    def __bool__(self):
        return self.q != 0

    def __repr__(self):
        return f"Loc3({self.q})"

    def __str__(self):
        return str(self.q)


class CycQ6:
    """a + b*zeta6 with a, b rational and zeta6^2 = zeta6 - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, CycQ6):
            return other
        if isinstance(other, (int, Fraction)):
            return CycQ6(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycQ6(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycQ6(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else CycQ6(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd (z - 1)
        bd = self.b * o.b
        return CycQ6(self.a * o.a - bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def __neg__(self):
        return CycQ6(-self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def conjugate(self) -> "CycQ6":
        # zeta6 -> zeta6^5 = 1 - zeta6
        return CycQ6(self.a + self.b, -self.b)

    def inverse(self) -> "CycQ6":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 is not invertible in Q(zeta6)")
        c = self.conjugate()
        return CycQ6(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CycQ6(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"CycQ6({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        zeta = "zeta6" if self.b == 1 else "-zeta6" if self.b == -1 else f"{self.b}*zeta6"
        if not self.a:
            return zeta
        sign = "" if zeta.startswith("-") else "+"
        return f"{self.a}{sign}{zeta}"


ZETA6 = CycQ6(0, 1)


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Descriptor for one of the exact scalar rings."""

    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_field(self) -> bool:
        return False

    def to_str(self, x) -> str:
        return str(x)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_ring_by_name, (self.name,))


class _IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if isinstance(x, Loc3) and x.q.denominator == 1:
            return x.q.numerator
        if isinstance(x, CycQ6) and x.b == 0 and x.a.denominator == 1:
            return x.a.numerator
        raise ValueError(f"cannot coerce {x!r} into ZZ")

    def is_unit(self, x):
        return x in (1, -1)

    def inv(self, x):
        if x not in (1, -1):
            raise NotAUnitError(f"{x} is not a unit in ZZ")
        return x


class _RationalField(Ring):
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Loc3):
            return x.q
        if isinstance(x, CycQ6) and x.b == 0:
            return x.a
        if isinstance(x, Rational):
            return Fraction(x.numerator, x.denominator)
        raise ValueError(f"cannot coerce {x!r} into QQ")

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(x)

    def is_field(self):
        return True


class _GF3Field(Ring):
    name = "GF3"

    def __call__(self, x):
        if isinstance(x, GF3Elem):
            return x
        if isinstance(x, int):
            return GF3Elem(x)
        if isinstance(x, Loc3):
            x = x.q
        if isinstance(x, Fraction):
            if x.denominator % 3 == 0:
                raise NotLocalError(f"{x} has no reduction mod 3")
            return GF3Elem(x.numerator) * GF3Elem(x.denominator).inverse()
        raise ValueError(f"cannot coerce {x!r} into GF3")

    def is_unit(self, x):
        return bool(x)

    def inv(self, x):
        return x.inverse()

    def is_field(self):
        return True


class _Loc3Ring(Ring):
    name = "LOC3"

    def __call__(self, x):
        if isinstance(x, Loc3):
            return x
        if isinstance(x, (int, Fraction)):
            return Loc3(x)
        if isinstance(x, CycQ6) and x.b == 0:
            return Loc3(x.a)
        raise ValueError(f"cannot coerce {x!r} into LOC3")

    def is_unit(self, x):
        return x.is_unit()

    def inv(self, x):
        return x.inverse()


class _CycQ6Field(Ring):
    name = "QZ6"

    def __call__(self, x):
        if isinstance(x, CycQ6):
            return x
        if isinstance(x, Loc3):
            return CycQ6(x.q)
        if isinstance(x, (int, Fraction)):
            return CycQ6(x)
        raise ValueError(f"cannot coerce {x!r} into Q(zeta6)")

    def is_unit(self, x):
        return bool(x)

    def inv(self, x):
        return x.inverse()

    def is_field(self):
        return True


ZZ = _IntegerRing()
QQ = _RationalField()
GF3 = _GF3Field()
LOC3 = _Loc3Ring()
QZ6 = _CycQ6Field()

SCALAR_RINGS = {r.name: r for r in (ZZ, QQ, GF3, LOC3, QZ6)}


def _ring_by_name(name: str) -> Ring:
    return SCALAR_RINGS[name]


def parse_scalar(text: str, ring: Ring):
    """Inverse of ``str`` for the scalar types (used by JSON round trips)."""
    text = text.strip()
    if ring is QZ6 and "zeta6" in text:
        head, _, _ = text.partition("zeta6")
        head = head.rstrip("*")
        # split "a+b" / "a-b" at the last sign that is not leading
        idx = max(head.rfind("+", 1), head.rfind("-", 1))
        if idx <= 0:
            a, b = "0", head
        else:
            a, b = head[:idx], head[idx:]
        b = b.lstrip("+")
        b = {"": "1", "-": "-1"}.get(b, b)
        return CycQ6(Fraction(a), Fraction(b))
    return ring(Fraction(text))


# ---------------------------------------------------------------------------
# polynomials


SIGMA2 = "sigma2"


@lru_cache(maxsize=None)
def _sigma2_rewrite(a: int, b: int) -> tuple:
    """Normal form of z1^a z2^b as ((a', b', extra z3 power), coeff) pairs."""
    if a == 0 or b == 0:
        return (((a, b, 0), 1),)
    acc: dict = defaultdict(int)
    # z1^a z2^b = -z1^(a-1) z2^b z3 - z1^a z2^(b-1) z3
    for (a1, b1, c1), co in _sigma2_rewrite(a - 1, b):
        acc[(a1, b1, c1 + 1)] -= co
    for (a1, b1, c1), co in _sigma2_rewrite(a, b - 1):
        acc[(a1, b1, c1 + 1)] -= co
    return tuple((k, v) for k, v in acc.items() if v)


class PolyRing:
    """A graded polynomial ring: generator names, weights, coefficient ring.

    ``relation="sigma2"`` turns the ring into the quotient by
    z1*z2 + z2*z3 + z3*z1; the generators z1, z2, z3 must be present.
    """

    __slots__ = ("gens", "weights", "coef", "relation", "_index", "_zidx", "_key")

    def __init__(
        self,
        gens: Sequence[str],
        weights: Sequence[int] | None = None,
        coef: Ring = QQ,
        relation: str | None = None,
    ):
        self.gens = tuple(gens)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.gens)
        if len(self.weights) != len(self.gens):
            raise ValueError("one weight per generator")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("generator names must be distinct")
        self.coef = coef
        self.relation = relation
        self._index = {g: i for i, g in enumerate(self.gens)}
        if relation == SIGMA2:
            try:
                self._zidx = (self._index["z1"], self._index["z2"], self._index["z3"])
            except KeyError:
                raise ValueError("the sigma2 relation needs generators z1, z2, z3") from None
        elif relation is not None:
            raise ValueError(f"unknown relation {relation!r}")
        else:
            self._zidx = None
        self._key = (self.gens, self.weights, coef.name, relation)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rel = f"/({self.relation})" if self.relation else ""
        gens = ",".join(f"{g}:{w}" for g, w in zip(self.gens, self.weights))
        return f"{self.coef.name}[{gens}]{rel}"

    def __reduce__(self):
        return (PolyRing, (self.gens, self.weights, self.coef, self.relation))

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        return self._index[name]

    def with_coef(self, coef: Ring) -> "PolyRing":
        return PolyRing(self.gens, self.weights, coef, self.relation)

    def with_relation(self, relation: str | None) -> "PolyRing":
        return PolyRing(self.gens, self.weights, self.coef, relation)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {}, _normal=True)

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = self.coef(c)
        if not c:
            return self.zero()
        return MultiPoly(self, {(0,) * self.ngens: c}, _normal=True)

    def gen(self, name: str) -> "MultiPoly":
        e = [0] * self.ngens
        e[self._index[name]] = 1
        return MultiPoly(self, {tuple(e): self.coef.one})

    def gens_dict(self) -> dict:
        return {g: self.gen(g) for g in self.gens}

    def monomial(self, exps: Sequence[int], c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exps): self.coef(c)})

    def __call__(self, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            if x.ring == self:
                return x
            raise RingMismatchError(f"{x.ring!r} is not {self!r}")
        return self.const(x)

    def mono_weight(self, e: Sequence[int]) -> int:
        return sum(w * k for w, k in zip(self.weights, e))

    def monomials_of_degree(self, d: int) -> list:
        """All exponent vectors of weighted degree ``d`` (normal forms only
        when the ring carries the sigma2 relation), in a fixed order."""
        out: list = []

        def rec(i, remaining, acc):
            if i == self.ngens:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            w = self.weights[i]
            for k in range(remaining // w, -1, -1):
                acc.append(k)
                rec(i + 1, remaining - k * w, acc)
                acc.pop()

        if d >= 0:
            rec(0, d, [])
        if self._zidx is not None:
            i1, i2, _ = self._zidx
            out = [e for e in out if e[i1] == 0 or e[i2] == 0]
        return out

    # -- internal normalisation ------------------------------------------

    def _normalize(self, terms: Mapping) -> dict:
        if self._zidx is None:
            return {e: c for e, c in terms.items() if c}
        i1, i2, i3 = self._zidx
        acc: dict = {}
        for e, c in terms.items():
            if not c:
                continue
            if e[i1] == 0 or e[i2] == 0:
                acc[e] = acc[e] + c if e in acc else c
                continue
            for (a, b, dc), k in _sigma2_rewrite(e[i1], e[i2]):
                f = list(e)
                f[i1], f[i2], f[i3] = a, b, e[i3] + dc
                f = tuple(f)
                v = c * k
                acc[f] = acc[f] + v if f in acc else v
        return {e: c for e, c in acc.items() if c}


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None, _normal: bool = False):
        self.ring = ring
        terms = dict(terms or {})
        if not _normal:
            n = ring.ngens
            for e in terms:
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} generators")
            coerce = ring.coef
            terms = ring._normalize({e: coerce(c) for e, c in terms.items()})
        self.terms = terms
        self._hash = None

    # -- coercion helpers -------------------------------------------------

    def _other(self, other):
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        try:
            return self.ring.const(other)
        except (ValueError, TypeError):
            return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            if e in t:
                s = t[e] + c
                if s:
                    t[e] = s
                else:
                    del t[e]
            else:
                t[e] = c
        return MultiPoly(self.ring, t, _normal=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()}, _normal=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.ring.zero()
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in acc:
                    acc[e] = acc[e] + v
                else:
                    acc[e] = v
        if self.ring._zidx is None:
            return MultiPoly(self.ring, {e: c for e, c in acc.items() if c}, _normal=True)
        return MultiPoly(self.ring, self.ring._normalize(acc), _normal=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = self.ring.coef(c)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: v * c for e, v in self.terms.items()}, _normal=True)

    def __truediv__(self, other):
        """Division by a scalar unit of the coefficient ring."""
        if isinstance(other, MultiPoly):
            if other.is_constant() and other.terms:
                other = other.constant_coeff()
            else:
                raise NotAUnitError("only division by scalars is supported")
        c = self.ring.coef(other)
        if not self.ring.coef.is_unit(c):
            raise NotAUnitError(f"{other} is not a unit in {self.ring.coef.name}")
        return self.scale(self.ring.coef.inv(c))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        o = self._other(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.ngens, self.ring.coef.zero)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.coef.zero)

    def degrees(self) -> set:
        return {self.ring.mono_weight(e) for e in self.terms}

    def degree(self) -> int:
        """Maximal weighted degree (-1 for zero)."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def used_gens(self) -> set:
        return {g for i, g in enumerate(self.ring.gens) if any(e[i] for e in self.terms)}

    def homogeneous_part(self, d: int) -> "MultiPoly":
        w = self.ring.mono_weight
        return MultiPoly(self.ring, {e: c for e, c in self.terms.items() if w(e) == d}, _normal=True)

    def sorted_terms(self) -> list:
        w = self.ring.mono_weight
        return sorted(self.terms.items(), key=lambda ec: (-w(ec[0]), tuple(-k for k in ec[0])))

    def coefficients_by(self, names: Sequence[str]) -> dict:
        """Split into {exponents of ``names``: polynomial in the other gens}."""
        idx = [self.ring.index(n) for n in names]
        out: dict = defaultdict(dict)
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            out[key][rest] = c
        return {k: MultiPoly(self.ring, v, _normal=True) for k, v in out.items()}

    # -- ring maps --------------------------------------------------------

    def evaluate(self, images: Mapping | Sequence, one=None):
        """Substitute ``images`` (by name or by position) for the generators.

        The images may be anything closed under ``+`` and ``*`` with
        scalars (polynomials in another ring, q-series, numbers); ``one``
        is the unit of the target and defaults to the first image's ring.
        """
        if isinstance(images, Mapping):
            imgs = [images[g] if g in images else None for g in self.ring.gens]
        else:
            imgs = list(images)
        if one is None:
            sample = next((x for x in imgs if x is not None), None)
            one = _unit_like(sample)
        powers: list = [dict() for _ in imgs]

        def power(i, k):
            if k == 0:
                return one
            cache = powers[i]
            if k not in cache:
                if imgs[i] is None:
                    raise KeyError(f"no image for generator {self.ring.gens[i]}")
                cache[k] = imgs[i] if k == 1 else power(i, k - 1) * imgs[i]
            return cache[k]

        total = one * 0
        for e, c in self.sorted_terms():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            if term is None:
                term = one
            total = total + term * c if not _is_one(c) else total + term
        return total

    def change_ring(self, ring: PolyRing, rename: Mapping[str, str] | None = None) -> "MultiPoly":
        """Move into ``ring`` by generator name (coefficients are coerced)."""
        rename = rename or {}
        pos = []
        for i, g in enumerate(self.ring.gens):
            target = rename.get(g, g)
            if target in ring._index:
                pos.append(ring._index[target])
            else:
                pos.append(None)
        terms: dict = {}
        for e, c in self.terms.items():
            f = [0] * ring.ngens
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingMismatchError(f"generator {self.ring.gens[i]} missing in {ring!r}")
                    f[pos[i]] += k
            f = tuple(f)
            v = ring.coef(c)
            terms[f] = terms[f] + v if f in terms else v
        return MultiPoly(ring, terms)

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> "MultiPoly":
        ring = ring or self.ring
        return MultiPoly(ring, {e: fn(c) for e, c in self.terms.items()})

    # -- printing ---------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.ring!r}, {format_poly(self)!r})"


def _is_one(c) -> bool:
    try:
        return c == 1
    except Exception:  # pragma: no cover - defensive
        return False


def _unit_like(x):
    if isinstance(x, MultiPoly):
        return x.ring.one()
    if hasattr(x, "one_like"):
        return x.one_like()
    return 1


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            (g if k == 1 else f"{g}^{k}") for g, k in zip(p.ring.gens, e) if k
        )
        cs = p.ring.coef.to_str(c)
        neg = cs.startswith("-") and "zeta6" not in cs[1:]
        if isinstance(c, CycQ6) and c.b != 0 and c.a != 0:
            cs, neg = f"({cs})", False
        elif neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# the ring of level-7 modular forms


MF7 = PolyRing(("z1", "z2", "z3"), (1, 1, 1), QQ, relation=SIGMA2)
FREE_Z = PolyRing(("z1", "z2", "z3"), (1, 1, 1), QQ)


def nf_sigma2(p: MultiPoly) -> MultiPoly:
    """Normal form of ``p`` modulo z1*z2 + z2*z3 + z3*z1.

    ``p`` must only involve z1, z2, z3; the result lives in the quotient
    ring with the same coefficients.
    """
    foreign = p.used_gens() - {"z1", "z2", "z3"}
    if foreign:
        raise ValueError(f"foreign generators present: {sorted(foreign)}")
    if p.ring.relation == SIGMA2:
        return p
    target = PolyRing(("z1", "z2", "z3"), (1, 1, 1), p.ring.coef, relation=SIGMA2)
    return p.change_ring(target)


def mf7_rank(k: int) -> int:
    """Number of sigma2-normal monomials of degree ``k``."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return len(MF7.monomials_of_degree(k))


def mf7_gens(ring: PolyRing = MF7):
    """(z1, z2, z3, sigma1, sigma3, p) in ``ring``."""
    z1, z2, z3 = ring.gen("z1"), ring.gen("z2"), ring.gen("z3")
    return z1, z2, z3, z1 + z2 + z3, z1 * z2 * z3, z1**2 * z2 + z2**2 * z3 + z3**2 * z1


def iter_exponents(n: int, bound: int) -> Iterable[tuple]:
    return itertools.product(range(bound + 1), repeat=n)
