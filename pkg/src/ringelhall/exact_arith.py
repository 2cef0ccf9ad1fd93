"""Exact univariate arithmetic over the rationals.

Three value types, all immutable:

* ``LaurentPoly``: sparse map exponent -> rational, exponents of either sign.
* ``IntPoly``: a ``LaurentPoly`` whose exponents are all non-negative.
* ``RationalFunc``: reduced quotient ``num/den``.

The indeterminate carries no name; printing takes the variable as an argument,
so the same value serves as an element of Q(t), Q(v) or Q(T).

Normal form of a ``RationalFunc``: ``den`` is a monic polynomial with nonzero
constant term, ``num`` is a Laurent polynomial, and ``gcd(num, den) = 1``.
Powers of the indeterminate therefore always live in the numerator, so Laurent
polynomials are exactly the elements with ``den == 1`` and arithmetic on them
never calls gcd.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

MINUS_INFINITY = float("-inf")
"""Degree of the zero polynomial."""


def _coerce(c) -> int | Fraction:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return _coerce(Fraction(c))
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _tidy(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


def format_rational(c) -> str:
    """Render a rational coefficient as ``"num/den"``."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Mapping | Iterable | int | Fraction | None = None):
        c: dict[int, int | Fraction] = {}
        if terms is None:
            pass
        elif _is_scalar(terms):
            if terms:
                c[0] = _coerce(terms)
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, a in items:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise TypeError("exponents must be integers")
                a = _coerce(a)
                if a:
                    s = c.get(e, 0) + a
                    if s:
                        c[e] = _tidy(s)
                    else:
                        c.pop(e, None)
        self._check(c)
        self._c = c
        self._hash = None

    def _check(self, c):
        pass

    @staticmethod
    def _make(c: dict) -> "LaurentPoly":
        """Wrap an already-clean dict, picking ``IntPoly`` when possible."""
        cls = IntPoly if all(e >= 0 for e in c) else LaurentPoly
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    # --- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        coeff = _coerce(coeff)
        return LaurentPoly._make({exp: coeff} if coeff else {})

    @classmethod
    def constant(cls, coeff) -> "LaurentPoly":
        return cls.monomial(0, coeff)

    # --- inspection ---------------------------------------------------
    def items(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._c.items())

    def coeff(self, e: int):
        return self._c.get(e, 0)

    def __getitem__(self, e: int):
        return self._c.get(e, 0)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self):
        return max(self._c) if self._c else MINUS_INFINITY

    @property
    def low_degree(self):
        return min(self._c) if self._c else float("inf")

    @property
    def leading_coeff(self):
        return self._c[max(self._c)] if self._c else 0

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._c.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self._c.values())

    # --- arithmetic ---------------------------------------------------
    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_scalar(other):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o._c:
            return self
        if not self._c:
            return o
        c = dict(self._c)
        for e, a in o._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = _tidy(s)
            else:
                del c[e]
        return LaurentPoly._make(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            other = _coerce(other)
            if not other:
                return LaurentPoly._make({})
            return LaurentPoly._make({e: _tidy(a * other) for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._c) < len(other._c):
            small, big = self._c, other._c
        else:
            small, big = other._c, self._c
        c: dict[int, int | Fraction] = {}
        for e1, a1 in small.items():
            for e2, a2 in big.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._make({e: _tidy(a) for e, a in c.items() if a})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return self * inv
        if isinstance(other, LaurentPoly):
            return RationalFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return RationalFunc(LaurentPoly.constant(other), self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("negative powers only for monomials")
            (e, a), = self._c.items()
            return LaurentPoly._make({e * k: _tidy(Fraction(a) ** k)})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x**k."""
        if k == 0:
            return self
        return LaurentPoly._make({e + k: a for e, a in self._c.items()})

    # --- comparisons --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if _is_scalar(other):
            return self.is_constant() and self._c.get(0, 0) == other
        if isinstance(other, RationalFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._c.get(0, 0))
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # --- evaluation and substitution ----------------------------------
    def __call__(self, x):
        x = _coerce(x)
        total = Fraction(0)
        for e, a in self._c.items():
            if e < 0 and x == 0:
                raise ZeroDivisionError("evaluation of a negative power at zero")
            total += a * Fraction(x) ** e
        return _tidy(total)

    def substitute(self, exponent: int, coeff=1) -> "LaurentPoly":
        """Return self(coeff * y**exponent) as a Laurent polynomial in y."""
        coeff = _coerce(coeff)
        if coeff == 0:
            raise ValueError("substituted monomial must be nonzero")
        c: dict[int, int | Fraction] = {}
        for e, a in self._c.items():
            k = e * exponent
            val = a * (Fraction(coeff) ** e if coeff != 1 else 1)
            c[k] = c.get(k, 0) + val
        return LaurentPoly._make({e: _tidy(a) for e, a in c.items() if a})

    def bar(self) -> "LaurentPoly":
        """x -> 1/x."""
        return LaurentPoly._make({-e: a for e, a in self._c.items()})

    def deflate(self, k: int) -> "LaurentPoly":
        """Rewrite a Laurent polynomial in x**k as one in x."""
        if any(e % k for e in self._c):
            raise ValueError(f"not a Laurent polynomial in x^{k}")
        return LaurentPoly._make({e // k: a for e, a in self._c.items()})

    def inflate(self, k: int) -> "LaurentPoly":
        """x -> x**k."""
        return LaurentPoly._make({e * k: a for e, a in self._c.items()})

    def truncate_below(self, bound: int) -> "LaurentPoly":
        """Keep only terms with exponent < bound."""
        return LaurentPoly._make({e: a for e, a in self._c.items() if e < bound})

    # --- presentation -------------------------------------------------
    def to_str(self, var: str = "t", descending: bool = False) -> str:
        if not self._c:
            return "0"
        out = []
        for e, a in sorted(self._c.items(), reverse=descending):
            neg = a < 0
            mag = -a if neg else a
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if mag == 1:
                    body = mono
                elif isinstance(mag, int):
                    body = f"{mag}{mono}"
                else:
                    body = f"({mag}){mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"{type(self).__name__}({dict(sorted(self._c.items()))!r})"

    def to_json(self) -> list:
        return [[e, format_rational(a)] for e, a in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return LaurentPoly._make({}) + LaurentPoly((int(e), Fraction(a)) for e, a in data)

    # --- dense helpers for division -----------------------------------
    def _dense(self) -> list:
        if not self._c:
            return []
        d = [0] * (max(self._c) + 1)
        for e, a in self._c.items():
            d[e] = a
        return d


class IntPoly(LaurentPoly):
    """Polynomial with rational coefficients and non-negative exponents."""

    __slots__ = ()

    def _check(self, c):
        if any(e < 0 for e in c):
            raise ValueError("IntPoly exponents must be non-negative")

    @classmethod
    def from_dense(cls, coeffs) -> "IntPoly":
        return IntPoly({e: a for e, a in enumerate(coeffs) if a})

    def __divmod__(self, other):
        if _is_scalar(other):
            other = IntPoly.constant(other)
        if not isinstance(other, LaurentPoly) or not other.is_polynomial():
            return NotImplemented
        q, r = _dense_divmod(self._dense(), other._dense())
        return IntPoly.from_dense(q), IntPoly.from_dense(r)

    def __floordiv__(self, other):
        res = divmod(self, other)
        return res if res is NotImplemented else res[0]

    def __mod__(self, other):
        res = divmod(self, other)
        return res if res is NotImplemented else res[1]

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division left a remainder")
        return q

    def gcd(self, other: "IntPoly") -> "IntPoly":
        """Monic gcd; gcd(0, 0) = 0."""
        g = _dense_gcd(self._dense(), other._dense())
        return IntPoly.from_dense(g)


def _dense_divmod(a: list, b: list):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] / lb
        if coef:
            q[i - db] = coef
            for j in range(db + 1):
                a[i - db + j] -= coef * b[j]
    r = a[:db]
    while r and not r[-1]:
        r.pop()
    return [_tidy(x) for x in q], [_tidy(x) for x in r]


def _to_primitive_ints(p: list) -> list:
    den = 1
    for x in p:
        if isinstance(x, Fraction):
            den = den * x.denominator // igcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    cont = 0
    for x in ints:
        cont = igcd(cont, x)
    if cont > 1:
        ints = [x // cont for x in ints]
    if ints and ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _pseudo_rem(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        coef = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[shift + j] -= coef * b[j]
        while a and not a[-1]:
            a.pop()
    return a


def _dense_gcd(a: list, b: list) -> list:
    while a and not a[-1]:
        a = a[:-1]
    while b and not b[-1]:
        b = b[:-1]
    if not a and not b:
        return []
    a = _to_primitive_ints(a) if a else []
    b = _to_primitive_ints(b) if b else []
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, (_to_primitive_ints(r) if r else [])
    lead = a[-1]
    return [_tidy(Fraction(x, lead)) for x in a]


_ONE = IntPoly({0: 1})


class RationalFunc:
    """Reduced quotient of polynomials in one indeterminate."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if isinstance(num, RationalFunc) or isinstance(den, RationalFunc):
            raise TypeError("use arithmetic to combine RationalFunc values")
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: IntPoly) -> "RationalFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "RationalFunc":
        if isinstance(x, RationalFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls._raw(x, _ONE)
        if _is_scalar(x):
            return cls._raw(LaurentPoly.constant(x), _ONE)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunc")

    @classmethod
    def variable(cls) -> "RationalFunc":
        return cls._raw(LaurentPoly.monomial(1), _ONE)

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "RationalFunc":
        return cls._raw(LaurentPoly.monomial(exp, coeff), _ONE)

    # --- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def is_polynomial(self) -> bool:
        return self.is_laurent() and self.num.is_polynomial()

    def is_constant(self) -> bool:
        return self.is_laurent() and self.num.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def as_poly(self) -> IntPoly:
        lp = self.as_laurent()
        if not lp.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return IntPoly._make(dict(lp._c))

    def constant_value(self):
        return self.as_laurent().constant_value()

    def numerator_poly(self) -> IntPoly:
        """Numerator after clearing negative powers into the denominator."""
        low = self.num.low_degree
        k = -low if self.num and low < 0 else 0
        return IntPoly._make(dict(self.num.shift(k)._c))

    def denominator_poly(self) -> IntPoly:
        low = self.num.low_degree
        k = -low if self.num and low < 0 else 0
        return IntPoly._make(dict(self.den.shift(k)._c))

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den == _ONE:
                return RationalFunc._raw(self.num + o.num, _ONE)
            return _build(self.num + o.num, self.den)
        return _build(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return RationalFunc._raw(LaurentPoly._make({}), _ONE)
            return RationalFunc._raw(self.num * other, self.den)
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return RationalFunc._raw(LaurentPoly._make({}), _ONE)
        if self.den == _ONE and o.den == _ONE:
            return RationalFunc._raw(self.num * o.num, _ONE)
        return _build(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        if self.num.is_monomial():
            (e, a), = self.num._c.items()
            return RationalFunc._raw(self.den.shift(-e) * (Fraction(1) / a), _ONE)
        return _build(self.den, self.num)

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunc._raw(self.num * (Fraction(1) / Fraction(other)), self.den)
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.den == _ONE:
            return RationalFunc._raw(self.num ** k, _ONE)
        # numerator and denominator stay coprime under powers
        return RationalFunc._raw(self.num ** k, IntPoly._make(dict((self.den ** k)._c)))

    # --- comparisons --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            return self.den == _ONE and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.den == _ONE:
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # --- evaluation and substitution ----------------------------------
    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"evaluation at a pole x = {x}")
        return _tidy(Fraction(self.num(x)) / d)

    def substitute(self, exponent: int, coeff=1) -> "RationalFunc":
        """Return self(coeff * y**exponent) as a rational function of y."""
        n = self.num.substitute(exponent, coeff)
        if self.den == _ONE:
            return RationalFunc._raw(n, _ONE)
        return _build(n, self.den.substitute(exponent, coeff))

    def bar(self) -> "RationalFunc":
        """x -> 1/x."""
        return self.substitute(-1)

    def deflate(self, k: int) -> "RationalFunc":
        """Rewrite a function of x**k as a function of x."""
        return RationalFunc._raw(self.num.deflate(k), IntPoly._make(dict(self.den.deflate(k)._c)))

    # --- presentation -------------------------------------------------
    def to_str(self, var: str = "t", descending: bool = False) -> str:
        if self.den == _ONE:
            return self.num.to_str(var, descending)
        num, den = self.num, self.den
        if den.coeff(0) < 0:
            num, den = -num, -den
        n = num.to_str(var, descending)
        if len(num) > 1:
            n = f"({n})"
        return f"{n}/({den.to_str(var, descending)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunc({self.to_str()!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunc":
        if isinstance(data, (int, str)):
            return cls.coerce(_coerce(data))
        if isinstance(data, list):
            return cls.coerce(LaurentPoly.from_json(data))
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data.get("den", [[0, "1/1"]])))


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if _is_scalar(x):
        return LaurentPoly.constant(x)
    if isinstance(x, RationalFunc):
        return x
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _build(num: LaurentPoly, den: LaurentPoly) -> RationalFunc:
    n, d = _normalize(num, den)
    return RationalFunc._raw(n, d)


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return LaurentPoly._make({}), _ONE
    k = den.low_degree
    if k:
        den = den.shift(-k)
        num = num.shift(-k)
    if den.is_constant():
        c = den.constant_value()
        if c != 1:
            num = num * (Fraction(1) / Fraction(c))
        return num, _ONE
    m = num.low_degree
    npoly = num.shift(-m)
    g = _dense_gcd(npoly._dense(), den._dense())
    dd = den._dense()
    nd = npoly._dense()
    if len(g) > 1:
        nd, r1 = _dense_divmod(nd, g)
        dd, r2 = _dense_divmod(dd, g)
        assert not r1 and not r2
    lead = Fraction(dd[-1])
    if lead != 1:
        nd = [x / lead for x in nd]
        dd = [x / lead for x in dd]
    n_out = LaurentPoly._make({e + m: _tidy(a) for e, a in enumerate(nd) if a})
    d_out = IntPoly._make({e: _tidy(a) for e, a in enumerate(dd) if a})
    return n_out, d_out


def rf(x) -> RationalFunc:
    """Coerce a scalar or polynomial into a ``RationalFunc``."""
    return RationalFunc.coerce(x)


# --- q-series helpers -------------------------------------------------

@lru_cache(maxsize=None)
def phi(n: int) -> IntPoly:
    """phi_n(t) = (1-t)(1-t^2)...(1-t^n)."""
    if n < 0:
        raise ValueError("phi needs n >= 0")
    if n == 0:
        return IntPoly({0: 1})
    prev = phi(n - 1)
    return prev * IntPoly({0: 1, n: -1})


@lru_cache(maxsize=None)
def gauss_binomial(r: int, a: int) -> IntPoly:
    """Gaussian binomial phi_r / (phi_a phi_{r-a}), by exact division."""
    if a < 0 or r < 0:
        raise ValueError("gauss_binomial needs non-negative arguments")
    if a > r:
        raise ValueError(f"gauss_binomial({r}, {a}): a exceeds r")
    den = phi(a) * phi(r - a)
    q, rem = divmod(phi(r), den)
    if rem:
        raise ArithmeticError("Gaussian binomial division left a remainder")
    return q


def gauss_binomial_or_zero(r: int, a: int) -> IntPoly:
    """Gaussian binomial, extended by zero outside 0 <= a <= r."""
    if a < 0 or a > r:
        return IntPoly()
    return gauss_binomial(r, a)
