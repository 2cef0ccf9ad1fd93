"""The Hopf algebra of symmetric functions over Q(t).

Elements are ``SymFunc`` values: a basis tag plus a sparse map from
partitions to coefficients in Q(t).  The power sums ``p`` are the internal
basis, where multiplication is concatenation of partitions and both pairings
are diagonal:

    <p_lam, p_mu>   = delta z_lam
    <p_lam, p_mu>_t = delta z_lam(t),  z_lam(t) = z_lam / prod_i (1 - t^{lam_i})

Supported bases:

=======  ==================================================================
``p``    power sums
``e``    elementary, via Newton's identity n e_n = sum (-1)^{a-1} p_a e_{n-a}
``h``    complete homogeneous, n h_n = sum p_a h_{n-a}
``m``    monomial, read off the expansion in ``deg`` variables
``s``    Schur, by both Jacobi-Trudi determinants (checked equal)
``HL``   Hall-Littlewood P_lam(t), by orthogonalising against e_{mu'}
``c``    cyclic c_n(t), n c_n = sum (1 - t^a) p_a c_{n-a}
``Sdual`` dual Schur S_lam(t) = det c_{lam_i - i + j}(t)
=======  ==================================================================
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import comb

from . import linalg
from .errors import BoundExceeded
from .exact_arith import IntPoly, LaurentPoly, RationalFunc, rf
from .partitions import (
    Partition,
    b_t,
    dominance_lt,
    enumerate_partitions,
    z_t,
)

BASES = ("p", "e", "h", "m", "s", "HL", "c", "Sdual")
DEG_CAP = 12

_ZERO = rf(0)
_ONE = rf(1)
_T = RationalFunc.variable()


def set_degree_cap(cap: int) -> None:
    global DEG_CAP
    DEG_CAP = cap


def _check_degree(d: int) -> None:
    if d > DEG_CAP:
        raise BoundExceeded(f"degree {d} exceeds the configured cap {DEG_CAP}", item=d)


def _add_into(acc: dict, key, coeff) -> None:
    if not coeff:
        return
    s = acc.get(key)
    s = coeff if s is None else s + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _scalar(c) -> RationalFunc:
    if isinstance(c, RationalFunc):
        return c
    return rf(c)


# --- sparse p-expansions ---------------------------------------------
# A "p-dict" maps Partition -> coefficient and represents sum c_rho p_rho.

def _pd_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for r1, c1 in a.items():
        for r2, c2 in b.items():
            _add_into(out, Partition(tuple(r1) + tuple(r2)), c1 * c2)
    return out


def _pd_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, c in b.items():
        _add_into(out, k, c * scale)
    return out


# --- generating-function transform -------------------------------------

def genfn_transform(ys, one=None):
    """Solve n x_n = sum_{a=1}^n y_a x_{n-a} with x_0 = 1.

    ``ys[a]`` is y_a for a >= 1 (``ys[0]`` is ignored).  Works for any ring
    elements supporting ``+``, ``*`` and division by an integer.  Returns the
    list x_0, ..., x_N with N = len(ys) - 1.
    """
    xs = [_ONE if one is None else one]
    for n in range(1, len(ys)):
        acc = None
        for a in range(1, n + 1):
            term = ys[a] * xs[n - a]
            acc = term if acc is None else acc + term
        xs.append(acc / n)
    return xs


def genfn_inverse(xs):
    """Inverse of :func:`genfn_transform`; requires x_0 = 1.

    Returns y_0, ..., y_N with y_0 = 0 as a placeholder.
    """
    if xs[0] != 1:
        raise ValueError("the logarithmic direction needs x_0 = 1")
    ys = [xs[0] * 0]
    for n in range(1, len(xs)):
        acc = xs[n] * n
        for a in range(1, n):
            acc = acc - ys[a] * xs[n - a]
        ys.append(acc)
    return ys


# --- multiplicative bases: generators in p ------------------------------

def _generator_ys(basis: str, d: int) -> list:
    ys = [None]
    for a in range(1, d + 1):
        pa = {Partition((a,)): _ONE}
        if basis == "e":
            coeff = _ONE if a % 2 else -_ONE
        elif basis == "h":
            coeff = _ONE
        elif basis == "c":
            coeff = 1 - _T ** a
        else:
            raise ValueError(basis)
        ys.append(_PD({k: coeff * v for k, v in pa.items()}))
    return ys


class _PD:
    """Minimal ring wrapper around a p-dict, used by the Newton recursions."""

    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d

    def __add__(self, o):
        return _PD(_pd_add(self.d, o.d))

    def __mul__(self, o):
        return _PD(_pd_mul(self.d, o.d))

    def __truediv__(self, n):
        inv = Fraction(1, n)
        return _PD({k: v * inv for k, v in self.d.items()})


@lru_cache(maxsize=None)
def _generators(basis: str, d: int) -> tuple:
    """p-expansions of the generators b_0, ..., b_d of a multiplicative basis."""
    xs = genfn_transform(_generator_ys(basis, d), one=_PD({Partition(): _ONE}))
    return tuple(x.d for x in xs)


def _multiplicative_to_p(basis: str, lam: Partition) -> dict:
    gens = _generators(basis, lam.weight)
    out = {Partition(): _ONE}
    for part in lam:
        out = _pd_mul(out, gens[part])
    return out


# --- monomial expansions ----------------------------------------------

def _monomial_coefficient(rho: Partition, alpha: tuple) -> int:
    """Coefficient of X^alpha in p_rho (number of ways to distribute parts)."""
    parts = tuple(rho)

    @lru_cache(maxsize=None)
    def count(i: int, remaining: tuple) -> int:
        if i == len(parts):
            return 1 if not any(remaining) else 0
        r = parts[i]
        total = 0
        for j, x in enumerate(remaining):
            if x >= r:
                nxt = remaining[:j] + (x - r,) + remaining[j + 1:]
                total += count(i + 1, nxt)
        return total

    return count(0, tuple(alpha))


@lru_cache(maxsize=None)
def _p_to_m_matrix(d: int) -> dict:
    """rho -> {lam: coefficient of m_lam in p_rho}, by orbit collection."""
    parts = enumerate_partitions(d)
    out = {}
    for rho in parts:
        row = {}
        for lam in parts:
            c = _monomial_coefficient(rho, tuple(lam) + (0,) * (d - len(lam)))
            if c:
                row[lam] = rf(c)
        out[rho] = row
    return out


@lru_cache(maxsize=None)
def _m_to_p_matrix(d: int) -> dict:
    parts = enumerate_partitions(d)
    fwd = _p_to_m_matrix(d)
    # columns: p_rho = sum_lam A[lam][rho] m_lam  ->  m = A^{-1} p
    a = [[Fraction(fwd[rho].get(lam, _ZERO).constant_value()) for rho in parts] for lam in parts]
    inv = linalg.invert(a, one=Fraction(1), zero=Fraction(0))
    out = {}
    for i, lam in enumerate(parts):
        out[lam] = {rho: rf(inv[j][i]) for j, rho in enumerate(parts) if inv[j][i]}
    return out


# --- determinants in commuting generators ---------------------------------

def _jt_determinant(lam: Partition) -> dict:
    """det(g_{lam_i - i + j}) expanded in monomials g_mu; returns {mu: int}."""
    k = len(lam)
    if k == 0:
        return {Partition(): 1}

    def entry(i, j):
        idx = lam[i] - i + j
        if idx < 0:
            return None
        return Partition((idx,)) if idx else Partition()

    memo: dict = {}

    def det(i: int, cols: tuple) -> dict:
        if i == k:
            return {Partition(): 1}
        key = (i, cols)
        if key in memo:
            return memo[key]
        out: dict = {}
        for pos, j in enumerate(cols):
            e = entry(i, j)
            if e is None:
                continue
            sign = -1 if pos % 2 else 1
            sub = det(i + 1, cols[:pos] + cols[pos + 1:])
            for mono, c in sub.items():
                _add_into(out, Partition(tuple(e) + tuple(mono)), sign * c)
        memo[key] = out
        return out

    return det(0, tuple(range(k)))


@lru_cache(maxsize=None)
def _schur_to_p(lam: Partition) -> dict:
    via_h = _pd_from_basis_monomials("h", _jt_determinant(lam))
    via_e = _pd_from_basis_monomials("e", _jt_determinant(lam.conjugate))
    if via_h != via_e:
        raise ArithmeticError(f"Jacobi-Trudi determinants disagree for {lam}")
    return via_h


@lru_cache(maxsize=None)
def _sdual_to_p(lam: Partition) -> dict:
    return _pd_from_basis_monomials("c", _jt_determinant(lam))


def _pd_from_basis_monomials(basis: str, coeffs: dict) -> dict:
    out: dict = {}
    for mu, c in coeffs.items():
        for rho, v in _multiplicative_to_p(basis, mu).items():
            _add_into(out, rho, v * c)
    return out


# --- pairings on p-dicts ----------------------------------------------

def _pd_pair(a: dict, b: dict, deformed: bool) -> RationalFunc:
    total = _ZERO
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    for rho, c in small.items():
        d = big.get(rho)
        if d:
            z = z_t(rho) if deformed else rf(rho.z)
            total = total + c * d * z
    return total


# --- Hall-Littlewood functions ------------------------------------------

@lru_cache(maxsize=None)
def _e_gram(d: int) -> dict:
    """<e_{mu'}, e_{nu'}>_t for |mu| = |nu| = d, keyed by (mu, nu)."""
    parts = enumerate_partitions(d)
    vecs = {mu: _multiplicative_to_p("e", mu.conjugate) for mu in parts}
    out = {}
    for i, mu in enumerate(parts):
        for nu in parts[i:]:
            val = _pd_pair(vecs[mu], vecs[nu], True)
            out[(mu, nu)] = out[(nu, mu)] = val
    return out


@lru_cache(maxsize=None)
def _hl_in_e(d: int) -> dict:
    """lam -> {mu: beta_{lam,mu}(t)} with P_lam = sum_mu beta e_{mu'}, beta_{lam,lam} = 1."""
    parts = enumerate_partitions(d)
    gram = _e_gram(d)
    out = {}
    for lam in parts:
        lower = [mu for mu in parts if dominance_lt(mu, lam)]
        coeffs = {lam: _ONE}
        if lower:
            mat = [[gram[(nu, mu)] for nu in lower] for mu in lower]
            rhs = [[-gram[(lam, mu)]] for mu in lower]
            sol = linalg.solve(mat, rhs, one=_ONE)
            for nu, row in zip(lower, sol):
                if row[0]:
                    coeffs[nu] = row[0]
        for nu, beta in coeffs.items():
            if not (beta.is_polynomial() and beta.num.is_integral()):
                raise ArithmeticError(f"beta_{lam},{nu} = {beta} is not in Z[t]")
        norm = sum((beta * gram[(nu, lam)] for nu, beta in coeffs.items()), _ZERO)
        if norm * rf(b_t(lam)) != 1:
            raise ArithmeticError(f"<P_{lam}, P_{lam}>_t = {norm} is not 1/b_lam(t)")
        out[lam] = coeffs
    return out


def hl_gram_schmidt(d: int, key) -> dict:
    """Classical Gram-Schmidt of {e_{lam'}} in the total order ``key``.

    Used only as a cross-check: when ``key`` refines dominance the result must
    agree with the dominance-lower construction of :func:`hall_littlewood`.
    Returns lam -> p-dict of P_lam.
    """
    parts = sorted(enumerate_partitions(d), key=key)
    done: list[tuple[Partition, dict, RationalFunc]] = []
    out = {}
    for lam in parts:
        vec = _multiplicative_to_p("e", lam.conjugate)
        cur = dict(vec)
        for kappa, pk, nk in done:
            coef = _pd_pair(vec, pk, True) / nk
            if coef:
                cur = _pd_add(cur, pk, -coef)
        done.append((lam, cur, _pd_pair(cur, cur, True)))
        out[lam] = cur
    return out


# --- per-degree transition data -------------------------------------------

def _to_p(basis: str, d: int) -> dict:
    """lam -> p-dict of the basis element indexed by lam (|lam| = d)."""
    _check_degree(d)
    return _to_p_cached(basis, d)


def _from_p(basis: str, d: int) -> dict:
    """rho -> {lam: coefficient of b_lam in p_rho}."""
    _check_degree(d)
    return _from_p_cached(basis, d)


@lru_cache(maxsize=None)
def _to_p_cached(basis: str, d: int) -> dict:
    parts = enumerate_partitions(d)
    if basis == "p":
        return {lam: {lam: _ONE} for lam in parts}
    if basis in ("e", "h", "c"):
        return {lam: _multiplicative_to_p(basis, lam) for lam in parts}
    if basis == "m":
        return _m_to_p_matrix(d)
    if basis == "s":
        return {lam: _schur_to_p(lam) for lam in parts}
    if basis == "Sdual":
        return {lam: _sdual_to_p(lam) for lam in parts}
    if basis == "HL":
        e = _to_p("e", d)
        out = {}
        for lam, coeffs in _hl_in_e(d).items():
            acc: dict = {}
            for mu, beta in coeffs.items():
                acc = _pd_add(acc, e[mu.conjugate], beta)
            out[lam] = acc
        return out
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _from_p_cached(basis: str, d: int) -> dict:
    parts = enumerate_partitions(d)
    if basis == "p":
        return {rho: {rho: _ONE} for rho in parts}
    if basis == "m":
        return _p_to_m_matrix(d)
    if basis in ("e", "h"):
        fwd = _to_p(basis, d)
        a = [[Fraction(fwd[lam].get(rho, _ZERO).constant_value()) for lam in parts] for rho in parts]
        inv = linalg.invert(a, one=Fraction(1), zero=Fraction(0))
        return {
            rho: {lam: rf(inv[i][j]) for i, lam in enumerate(parts) if inv[i][j]}
            for j, rho in enumerate(parts)
        }
    if basis in ("s", "c", "Sdual"):
        # duality: s self-dual under <,>; c dual to m and S dual to s under <,>_t
        partner = {"s": "s", "c": "m", "Sdual": "s"}[basis]
        deformed = basis != "s"
        vecs = _to_p(partner, d)
        out = {}
        for rho in parts:
            z = z_t(rho) if deformed else rf(rho.z)
            row = {}
            for lam in parts:
                c = vecs[lam].get(rho)
                if c:
                    row[lam] = c * z
            out[rho] = row
        return out
    if basis == "HL":
        to_e = _from_p("e", d)
        hl = _hl_in_e(d)
        out = {}
        for rho in parts:
            f_e = to_e[rho]
            out[rho] = _e_to_hl(f_e, parts, hl)
        return out
    raise ValueError(f"unknown basis {basis!r}")


def _e_to_hl(f_e: dict, parts, hl) -> dict:
    """Triangular solve: e-coefficients (indexed by e_nu) -> P-coefficients."""
    res: dict = {}
    for lam in parts:  # decreasing lex refines dominance, largest first
        a = f_e.get(lam.conjugate, _ZERO)
        for kappa, ak in res.items():
            beta = hl[kappa].get(lam)
            if beta:
                a = a - ak * beta
        if a:
            res[lam] = a
    return res


# --- the element type -------------------------------------------------

class SymFunc:
    """A symmetric function: basis tag plus sparse coefficients in Q(t)."""

    __slots__ = ("basis", "terms")
    __hash__ = None

    def __init__(self, basis: str, terms: Mapping | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        self.basis = basis
        clean: dict = {}
        for lam, c in (terms or {}).items():
            _add_into(clean, Partition(lam), _scalar(c))
        self.terms = clean

    @classmethod
    def _raw(cls, basis, terms):
        obj = object.__new__(cls)
        obj.basis = basis
        obj.terms = terms
        return obj

    @classmethod
    def basis_element(cls, basis: str, lam) -> "SymFunc":
        return cls(basis, {Partition(lam): _ONE})

    @classmethod
    def one(cls) -> "SymFunc":
        return cls("p", {Partition(): _ONE})

    @classmethod
    def zero(cls, basis: str = "p") -> "SymFunc":
        return cls(basis, {})

    # --- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return max((lam.weight for lam in self.terms), default=0)

    def degrees(self) -> set[int]:
        return {lam.weight for lam in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "SymFunc":
        return SymFunc._raw(self.basis, {k: v for k, v in self.terms.items() if k.weight == d})

    def coeff(self, lam) -> RationalFunc:
        return self.terms.get(Partition(lam), _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def to(self, target: str) -> "SymFunc":
        return convert(self, target)

    def specialize(self, t0) -> "SymFunc":
        """Evaluate every coefficient at t = t0 (in the current basis)."""
        return SymFunc(self.basis, {k: rf(v(t0)) for k, v in self.terms.items()})

    def map_coefficients(self, fn) -> "SymFunc":
        return SymFunc(self.basis, {k: fn(v) for k, v in self.terms.items()})

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, (int, Fraction, RationalFunc, LaurentPoly)):
                other = SymFunc.one() * other
            else:
                return NotImplemented
        if other.basis != self.basis:
            other = convert(other, self.basis)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return SymFunc._raw(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw(self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, RationalFunc, LaurentPoly)):
            c = _scalar(other)
            if not c:
                return SymFunc._raw(self.basis, {})
            return SymFunc._raw(self.basis, {k: v * c for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RationalFunc, LaurentPoly)):
            c = _scalar(other)
            return self * (_ONE / c)
        return NotImplemented

    def __pow__(self, k: int):
        out = SymFunc.one()
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalFunc)):
            other = SymFunc.one() * other
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis == other.basis:
            return self.terms == other.terms
        return _p_terms(self) == _p_terms(other)

    # --- presentation -------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, tuple(-x for x in kv[0])))

    def to_str(self, var: str = "t") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for lam, c in self.sorted_terms():
            name = f"{self.basis}{lam}"
            if c == 1:
                pieces.append(name)
            elif c == -1:
                pieces.append(f"-{name}")
            elif c.is_constant() and c.constant_value().denominator == 1:
                pieces.append(f"{c.constant_value()}{name}")
            else:
                pieces.append(f"({c.to_str(var)}){name}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"SymFunc({self.basis!r}, {self.to_str()!r})"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "deg": self.degree,
            "terms": [{"part": list(lam), "coeff": c.to_json()} for lam, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymFunc":
        return cls(
            data["basis"],
            {Partition(tuple(t["part"])): RationalFunc.from_json(t["coeff"]) for t in data["terms"]},
        )


def _p_terms(f: SymFunc) -> dict:
    for d in f.degrees():
        _check_degree(d)
    if f.basis == "p":
        return f.terms
    out: dict = {}
    for lam, c in f.terms.items():
        for rho, v in _to_p(f.basis, lam.weight)[lam].items():
            _add_into(out, rho, c * v)
    return out


def convert(f: SymFunc, target: str) -> SymFunc:
    """Re-express ``f`` in the ``target`` basis."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    pt = _p_terms(f)
    if target == "p":
        return SymFunc._raw("p", pt)
    out: dict = {}
    for rho, c in pt.items():
        for lam, v in _from_p(target, rho.weight)[rho].items():
            _add_into(out, lam, c * v)
    return SymFunc._raw(target, out)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product, returned in the p basis."""
    return SymFunc._raw("p", _pd_mul(_p_terms(f), _p_terms(g)))


def pairing(f: SymFunc, g: SymFunc) -> RationalFunc:
    """<f, g> with <p_lam, p_mu> = delta z_lam."""
    return _pd_pair(_p_terms(f), _p_terms(g), False)


def pairing_t(f: SymFunc, g: SymFunc) -> RationalFunc:
    """<f, g>_t with <p_lam, p_mu>_t = delta z_lam(t)."""
    return _pd_pair(_p_terms(f), _p_terms(g), True)


def antipode(f: SymFunc) -> SymFunc:
    return SymFunc._raw("p", {rho: (-c if len(rho) % 2 else c) for rho, c in _p_terms(f).items()})


def counit(f: SymFunc) -> RationalFunc:
    return f.terms.get(Partition(), _ZERO)


# --- tensors ------------------------------------------------------------

class SymFuncTensor:
    """Sparse element of a k-fold tensor power of the symmetric functions.

    Keys are k-tuples of partitions; ``bases`` tags each tensor factor.
    """

    __slots__ = ("bases", "terms")
    __hash__ = None

    def __init__(self, bases: tuple, terms: Mapping | None = None):
        self.bases = tuple(bases)
        clean: dict = {}
        for key, c in (terms or {}).items():
            _add_into(clean, tuple(Partition(x) for x in key), _scalar(c))
        self.terms = clean

    @property
    def arity(self) -> int:
        return len(self.bases)

    @classmethod
    def pure(cls, *factors: SymFunc) -> "SymFuncTensor":
        terms: dict = {}
        for combo in iproduct(*(f.terms.items() for f in factors)):
            key = tuple(lam for lam, _ in combo)
            c = _ONE
            for _, v in combo:
                c = c * v
            _add_into(terms, key, c)
        return cls(tuple(f.basis for f in factors), terms)

    def to_p(self) -> "SymFuncTensor":
        terms: dict = {}
        for key, c in self.terms.items():
            expansions = [
                _to_p(b, lam.weight)[lam] if b != "p" else {lam: _ONE}
                for b, lam in zip(self.bases, key)
            ]
            for combo in iproduct(*(e.items() for e in expansions)):
                v = c
                for _, x in combo:
                    v = v * x
                _add_into(terms, tuple(r for r, _ in combo), v)
        return SymFuncTensor._raw(("p",) * self.arity, terms)

    def convert(self, *targets: str) -> "SymFuncTensor":
        p = self.to_p()
        terms: dict = {}
        for key, c in p.terms.items():
            expansions = [
                _from_p(b, rho.weight)[rho] if b != "p" else {rho: _ONE}
                for b, rho in zip(targets, key)
            ]
            for combo in iproduct(*(e.items() for e in expansions)):
                v = c
                for _, x in combo:
                    v = v * x
                _add_into(terms, tuple(r for r, _ in combo), v)
        return SymFuncTensor._raw(tuple(targets), terms)

    @classmethod
    def _raw(cls, bases, terms):
        obj = object.__new__(cls)
        obj.bases = bases
        obj.terms = terms
        return obj

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("tensor arity mismatch")
        a, b = self.to_p(), other.to_p()
        out = dict(a.terms)
        for k, v in b.terms.items():
            _add_into(out, k, v)
        return SymFuncTensor._raw(a.bases, out)

    def __neg__(self):
        return SymFuncTensor._raw(self.bases, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymFuncTensor):
            a, b = self.to_p(), other.to_p()
            out: dict = {}
            for k1, c1 in a.terms.items():
                for k2, c2 in b.terms.items():
                    key = tuple(Partition(tuple(x) + tuple(y)) for x, y in zip(k1, k2))
                    _add_into(out, key, c1 * c2)
            return SymFuncTensor._raw(a.bases, out)
        c = _scalar(other)
        return SymFuncTensor._raw(self.bases, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFuncTensor):
            return NotImplemented
        return self.arity == other.arity and self.to_p().terms == other.to_p().terms

    def factor_coproduct(self, position: int) -> "SymFuncTensor":
        """Apply the coproduct to one tensor factor."""
        p = self.to_p()
        out: dict = {}
        for key, c in p.terms.items():
            for (l, r), v in _coproduct_p(key[position]).items():
                _add_into(out, key[:position] + (l, r) + key[position + 1:], c * v)
        return SymFuncTensor._raw(("p",) * (self.arity + 1), out)

    def pair(self, other: "SymFuncTensor", deformed: bool = True) -> RationalFunc:
        """Factorwise pairing <a (x) b, c (x) d> = <a, c><b, d>."""
        a, b = self.to_p(), other.to_p()
        total = _ZERO
        for key, c in a.terms.items():
            d = b.terms.get(key)
            if d:
                z = _ONE
                for rho in key:
                    z = z * (z_t(rho) if deformed else rf(rho.z))
                total = total + c * d * z
        return total

    def __repr__(self):
        return f"SymFuncTensor({self.bases!r}, {len(self.terms)} terms)"


def _coproduct_p(rho: Partition) -> dict:
    """Delta(p_rho) as {(left, right): coefficient}."""
    mults = list(rho.multiplicities.items())
    out: dict = {}
    for ks in iproduct(*(range(m + 1) for _, m in mults)):
        left, right = [], []
        c = 1
        for (r, m), k in zip(mults, ks):
            left += [r] * k
            right += [r] * (m - k)
            c *= comb(m, k)
        out[(Partition(left), Partition(right))] = rf(c)
    return out


def coproduct(f: SymFunc) -> SymFuncTensor:
    out: dict = {}
    for rho, c in _p_terms(f).items():
        for key, v in _coproduct_p(rho).items():
            _add_into(out, key, c * v)
    return SymFuncTensor._raw(("p", "p"), out)


# --- named elements -----------------------------------------------------

def p(*parts) -> SymFunc:
    return SymFunc.basis_element("p", parts)


def e(*parts) -> SymFunc:
    return SymFunc.basis_element("e", parts)


def h(*parts) -> SymFunc:
    return SymFunc.basis_element("h", parts)


def m(*parts) -> SymFunc:
    return SymFunc.basis_element("m", parts)


def schur(lam) -> SymFunc:
    return SymFunc.basis_element("s", lam)


def dual_schur(lam) -> SymFunc:
    return SymFunc.basis_element("Sdual", lam)


def cyclic_c(r: int) -> SymFunc:
    if r < 0:
        raise ValueError("c_r needs r >= 0")
    return SymFunc.basis_element("c", (r,))


def hall_littlewood(lam) -> SymFunc:
    return SymFunc.basis_element("HL", lam)


def hall_littlewood_e_coefficients(lam) -> dict:
    """beta_{lam,mu}(t) with P_lam = sum_mu beta e_{mu'} (mu <= lam)."""
    lam = Partition(lam)
    _check_degree(lam.weight)
    return dict(_hl_in_e(lam.weight)[lam])


def kostka_foulkes(lam, mu) -> IntPoly:
    """K_{lam,mu}(t): coefficient of P_mu(t) in s_lam."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.weight != mu.weight:
        raise ValueError(f"weight mismatch: {lam} vs {mu}")
    coeffs = convert(schur(lam), "HL").terms
    k = coeffs.get(mu, _ZERO)
    if not k.is_polynomial() or not k.num.is_integral():
        raise ArithmeticError(f"K_{lam},{mu} = {k} is not in Z[t]")
    return k.as_poly()


def littlewood_richardson(lam, mu, xi) -> int:
    lam, mu, xi = Partition(lam), Partition(mu), Partition(xi)
    if lam.weight + mu.weight != xi.weight:
        raise ValueError("weight mismatch")
    val = pairing(multiply(schur(lam), schur(mu)), schur(xi))
    c = val.constant_value()
    if not isinstance(c, int) or c < 0:
        raise ArithmeticError(f"LR coefficient {c} is not a non-negative integer")
    return c


def expand_in_monomials(f: SymFunc, N: int) -> dict:
    """Image of f in Q(t)[X_1..X_N]: {exponent tuple: coefficient}."""
    if f.terms and N < f.degree:
        raise ValueError(f"N = {N} is below the degree {f.degree}; expansion would be lossy")
    out: dict = {}
    for rho, c in _p_terms(f).items():
        poly = {(0,) * N: 1}
        for r in rho:
            nxt: dict = {}
            for expo, a in poly.items():
                for i in range(N):
                    ex = expo[:i] + (expo[i] + r,) + expo[i + 1:]
                    nxt[ex] = nxt.get(ex, 0) + a
            poly = nxt
        for expo, a in poly.items():
            _add_into(out, expo, c * a)
    return out
