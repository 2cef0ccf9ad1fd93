"""The generic Ringel-Hall algebra H_1 of nilpotent k[T]-modules.

Basis u_lam indexed by partitions, coefficients in Q(v) with q = v^2.

Hall polynomials are computed generically in q.  Right multiplication by a
semisimple class u_(1^m) has the closed form

    F_{kappa,(1^m)}^xi = q^{n(xi) - n(kappa) - n(1^m)}
                         prod_i [xi'_i - xi'_{i+1} choose xi'_i - kappa'_i]_{q^-1}

summed over xi with xi / kappa a vertical m-strip.  The column products
E_lam = u_(1^{lam'_1}) u_(1^{lam'_2}) ... are unitriangular over dominance
(E_lam = u_lam + lower), so inverting them expresses any u_mu in products of
semisimples, and u_lam u_mu follows by repeated column multiplication.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import BoundExceeded
from .exact_arith import IntPoly, LaurentPoly, RationalFunc, gauss_binomial, rf
from .partitions import (
    Partition,
    aut_poly,
    b_t,
    dominance_leq,
    enumerate_partitions,
    union_and_sum,
)
from .sparse import SparseElement, add_into
from . import symfunc as sf

DEG_CAP = 12

_ONE_Q = LaurentPoly({0: 1})
_V = RationalFunc.variable()


def set_degree_cap(cap: int) -> None:
    global DEG_CAP
    DEG_CAP = cap


def _check_degree(d: int) -> None:
    if d > DEG_CAP:
        raise BoundExceeded(f"degree {d} exceeds the configured cap {DEG_CAP}", item=d)


def q_to_v(p) -> RationalFunc:
    """Re-express a coefficient in q as one in v (q = v^2)."""
    return rf(p).substitute(2)


def _v_power(k: int) -> RationalFunc:
    return RationalFunc.monomial(k)


# --- generic Hall numbers ------------------------------------------------

def _vertical_strips(kappa: Partition, m: int):
    """Conjugates xi' of all xi with xi / kappa a vertical strip of m boxes."""
    kc = list(kappa.conjugate) + [0]
    out = []

    # xi'_i ranges over [kappa'_i, kappa'_{i-1}]
    def rec2(i, remaining, acc):
        if i == len(kc):
            if remaining == 0:
                out.append(tuple(acc))
            return
        lo = kc[i]
        hi = lo + remaining if i == 0 else min(kc[i - 1], lo + remaining)
        for x in range(lo, hi + 1):
            rec2(i + 1, remaining - (x - lo), acc + [x])

    rec2(0, m, [])
    return out


@lru_cache(maxsize=None)
def _times_column(kappa: Partition, m: int) -> tuple:
    """u_kappa * u_(1^m) as ((xi, F(q)), ...) with F a polynomial in q."""
    kc = list(kappa.conjugate) + [0]
    out = []
    for xic in _vertical_strips(kappa, m):
        xi = Partition(xic).conjugate
        cols = list(xic) + [0]
        coeff = LaurentPoly.monomial(xi.n - kappa.n - comb(m, 2))
        for i in range(len(xic)):
            top = cols[i] - cols[i + 1]
            coeff = coeff * gauss_binomial(top, cols[i] - kc[i]).substitute(-1)
        if not (coeff.is_polynomial() and coeff.is_integral()):
            raise ArithmeticError(f"F^{xi}_{kappa},(1^{m}) = {coeff} is not in Z[q]")
        out.append((xi, coeff))
    return tuple(out)


def _apply_column(elem: dict, m: int) -> dict:
    out: dict = {}
    for kappa, c in elem.items():
        for xi, f in _times_column(kappa, m):
            add_into(out, xi, c * f)
    return out


@lru_cache(maxsize=None)
def _times_columns(kappa: Partition, cols: tuple) -> dict:
    """u_kappa * u_(1^{cols[0]}) * u_(1^{cols[1]}) * ..."""
    if not cols:
        return {kappa: _ONE_Q}
    return _apply_column(_times_columns(kappa, cols[:-1]), cols[-1])


def column_product(lam) -> dict:
    """E_lam = prod_i u_(1^{lam'_i}) expanded in u: {nu: f_lam^nu(q)}."""
    lam = Partition(lam)
    return dict(_times_columns(Partition(), tuple(lam.conjugate)))


@lru_cache(maxsize=None)
def _u_in_columns(lam: Partition) -> dict:
    """u_lam = sum_rho g_{lam,rho}(q) E_rho."""
    f = column_product(lam)
    if f.get(lam) != 1:
        raise ArithmeticError(f"column product of {lam} is not unitriangular")
    out = {lam: _ONE_Q}
    for nu, c in f.items():
        if nu == lam:
            continue
        if not dominance_leq(nu, lam):
            raise ArithmeticError(f"column product of {lam} has term {nu} outside dominance")
        for rho, g in _u_in_columns(nu).items():
            add_into(out, rho, -c * g)
    return out


@lru_cache(maxsize=None)
def _product_table(lam: Partition, mu: Partition) -> dict:
    """{xi: F_{lam,mu}^xi(q)} as polynomials in q, checked against the top-degree law."""
    _check_degree(lam.weight + mu.weight)
    out: dict = {}
    for rho, g in _u_in_columns(mu).items():
        for xi, f in _times_columns(lam, tuple(rho.conjugate)).items():
            add_into(out, xi, g * f)
    _check_table(lam, mu, out)
    return {xi: IntPoly._make(dict(c.items())) for xi, c in out.items()}


def _check_table(lam, mu, table) -> None:
    lr = sf.convert(sf.schur(lam) * sf.schur(mu), "s").terms
    union, total = union_and_sum(lam, mu)
    for xi, c in table.items():
        if not (c.is_polynomial() and c.is_integral()):
            raise ArithmeticError(f"F^{xi}_{lam},{mu} = {c} is not in Z[q]")
        if not (dominance_leq(union, xi) and dominance_leq(xi, total)):
            raise ArithmeticError(f"F^{xi}_{lam},{mu} nonzero outside the support bound")
        top = xi.n - lam.n - mu.n
        if c.degree > top:
            raise ArithmeticError(f"deg F^{xi}_{lam},{mu} exceeds n(xi)-n(lam)-n(mu)")
    for xi, c in lr.items():
        got = table.get(xi, LaurentPoly())
        if got.coeff(xi.n - lam.n - mu.n) != c:
            raise ArithmeticError(f"top coefficient of F^{xi}_{lam},{mu} is not the LR number {c}")


def hall_polynomial(lam, mu, xi) -> IntPoly:
    """F_{lam,mu}^xi(T): u_lam u_mu = sum_xi F(q) u_xi, quotient lam and submodule mu."""
    lam, mu, xi = Partition(lam), Partition(mu), Partition(xi)
    if lam.weight + mu.weight != xi.weight:
        return IntPoly()
    return _product_table(lam, mu).get(xi, IntPoly())


# --- elements -----------------------------------------------------------

class HallElement1(SparseElement):
    """Element of H_1: sparse sum of c(v) u_lam."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key):
        return Partition(key)

    @classmethod
    def u(cls, lam, coeff=1) -> "HallElement1":
        return cls({Partition(lam): coeff})

    @classmethod
    def one(cls) -> "HallElement1":
        return cls.u(())

    @classmethod
    def zero(cls) -> "HallElement1":
        return cls({})

    def degrees(self) -> set[int]:
        return {lam.weight for lam in self.terms}

    def __mul__(self, other):
        if isinstance(other, HallElement1):
            return multiply(self, other)
        return super().__mul__(other)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True)

    def pbw_coefficients(self) -> dict:
        """Coefficients in the PBW basis u~_lam = v^{2n(lam)} u_lam."""
        return {lam: c * _v_power(-2 * lam.n) for lam, c in self.terms.items()}

    def to_str(self, basis: str = "u") -> str:
        terms = self.pbw_coefficients() if basis == "pbw" else self.terms
        name = "ũ" if basis == "pbw" else "u"
        if not terms:
            return "0"
        pieces = []
        for lam, c in sorted(terms.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True):
            label = f"{name}{lam}"
            if c == 1:
                pieces.append(label)
            elif c == -1:
                pieces.append(f"-{label}")
            else:
                pieces.append(f"({c.to_str('v', descending=True)}){label}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"HallElement1({self.to_str()!r})"

    def to_json(self, basis: str = "u") -> dict:
        terms = self.pbw_coefficients() if basis == "pbw" else self.terms
        return {
            "basis": basis,
            "terms": [
                {"part": list(lam), "coeff": c.to_json()}
                for lam, c in sorted(terms.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HallElement1":
        basis = data.get("basis", "u")
        terms = {}
        for t in data["terms"]:
            lam = Partition(tuple(t["part"]))
            c = RationalFunc.from_json(t["coeff"])
            if basis == "pbw":
                c = c * _v_power(2 * lam.n)
            elif basis != "u":
                raise ValueError(f"unknown basis tag {basis!r}")
            terms[lam] = c
        return cls(terms)


class HallTensor1(SparseElement):
    """Element of H_1 (x) H_1, keyed by (lam, mu)."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key):
        return (Partition(key[0]), Partition(key[1]))

    @classmethod
    def pure(cls, x: HallElement1, y: HallElement1) -> "HallTensor1":
        out: dict = {}
        for a, c in x.terms.items():
            for b, d in y.terms.items():
                add_into(out, (a, b), c * d)
        return cls._raw(out)

    def __mul__(self, other):
        if isinstance(other, HallTensor1):
            out: dict = {}
            for (a, b), c in self.terms.items():
                for (x, y), d in other.terms.items():
                    left = multiply(HallElement1.u(a), HallElement1.u(x))
                    right = multiply(HallElement1.u(b), HallElement1.u(y))
                    cd = c * d
                    for l1, c1 in left.terms.items():
                        for r1, c2 in right.terms.items():
                            add_into(out, (l1, r1), cd * c1 * c2)
            return HallTensor1._raw(out)
        return super().__mul__(other)

    def pair(self, other: "HallTensor1") -> RationalFunc:
        total = rf(0)
        for (a, b), c in self.terms.items():
            d = other.terms.get((a, b))
            if d:
                total = total + c * d * _pair_basis(a) * _pair_basis(b)
        return total

    def apply(self, left_fn, right_fn) -> "HallTensor1":
        """(f (x) g) applied termwise; f and g map a partition to a HallElement1."""
        out: dict = {}
        for (a, b), c in self.terms.items():
            for l1, c1 in left_fn(a).terms.items():
                for r1, c2 in right_fn(b).terms.items():
                    add_into(out, (l1, r1), c * c1 * c2)
        return HallTensor1._raw(out)


# --- structure maps --------------------------------------------------------

def multiply(x: HallElement1, y: HallElement1) -> HallElement1:
    out: dict = {}
    for lam, c in x.terms.items():
        for mu, d in y.terms.items():
            cd = c * d
            for xi, f in _product_table(lam, mu).items():
                add_into(out, xi, cd * q_to_v(f))
    return HallElement1._raw(out)


def _aut_v(lam: Partition) -> RationalFunc:
    return q_to_v(aut_poly(lam))


@lru_cache(maxsize=None)
def _coproduct_basis(xi: Partition) -> dict:
    _check_degree(xi.weight)
    out: dict = {}
    a_xi = _aut_v(xi)
    for a in range(xi.weight + 1):
        for lam in enumerate_partitions(a):
            for mu in enumerate_partitions(xi.weight - a):
                f = _product_table(lam, mu).get(xi)
                if f:
                    out[(lam, mu)] = q_to_v(f) * _aut_v(lam) * _aut_v(mu) / a_xi
    return out


def coproduct(x: HallElement1) -> HallTensor1:
    """Delta(u_xi) = sum F_{lam,mu}^xi a_lam a_mu / a_xi  u_lam (x) u_mu."""
    out: dict = {}
    for xi, c in x.terms.items():
        for key, d in _coproduct_basis(xi).items():
            add_into(out, key, c * d)
    return HallTensor1._raw(out)


def counit(x: HallElement1) -> RationalFunc:
    return x.coeff(())


@lru_cache(maxsize=None)
def _pair_basis(lam: Partition) -> RationalFunc:
    return rf(1) / (_v_power(4 * lam.n) * rf(b_t(lam)).substitute(-2))


def pairing(x: HallElement1, y: HallElement1) -> RationalFunc:
    """<u_lam, u_mu> = delta / (v^{4n(lam)} b_lam(v^-2))."""
    total = rf(0)
    for lam, c in x.terms.items():
        d = y.terms.get(lam)
        if d:
            total = total + c * d * _pair_basis(lam)
    return total


# --- the map from symmetric functions ---------------------------------------

def phi1(f: sf.SymFunc) -> HallElement1:
    """t -> v^-2 and t^{n(lam)} P_lam(t) -> u_lam."""
    out: dict = {}
    for lam, c in sf.convert(f, "HL").terms.items():
        _check_degree(lam.weight)
        add_into(out, lam, c.substitute(-2) * _v_power(2 * lam.n))
    return HallElement1._raw(out)


def phi1_inv(x: HallElement1) -> sf.SymFunc:
    """Inverse of :func:`phi1`; every coefficient must be a function of v^2."""
    t = RationalFunc.variable()
    terms = {}
    for lam, c in x.terms.items():
        try:
            in_t = c.deflate(2).substitute(-1)
        except ValueError as exc:
            raise ValueError(f"coefficient {c} of u{lam} is not a function of v^2") from exc
        terms[lam] = in_t * t**lam.n
    return sf.SymFunc("HL", terms)


def pbw(lam) -> HallElement1:
    """u~_lam = v^{2 n(lam)} u_lam."""
    lam = Partition(lam)
    return HallElement1.u(lam, _v_power(2 * lam.n))


def x_elem(r: int) -> HallElement1:
    """x_r = (1 - v^-2) u_(r), the image of c_r(t)."""
    return HallElement1.u((r,), 1 - _v_power(-2))


def y_elem(r: int) -> HallElement1:
    """y_r = sum_{|lam| = r} (1 - q)...(1 - q^{l(lam)-1}) u_lam, the image of p_r."""
    out = {}
    for lam in enumerate_partitions(r):
        c = rf(1)
        for k in range(1, len(lam)):
            c = c * (1 - _v_power(2 * k))
        out[lam] = c
    return HallElement1(out)


# --- bar involution and canonical bases ------------------------------------

def bar(x: HallElement1) -> HallElement1:
    """The ring involution with v -> 1/v fixing every semisimple u~_(1^r).

    x is rewritten in the bar-fixed basis Phi_1(e_{rho'}) = q^{n(rho)} E_rho,
    its coefficients are conjugated, and the result re-expanded in u.
    """
    in_e: dict = {}
    for lam, c in x.terms.items():
        _check_degree(lam.weight)
        for rho, g in _u_in_columns(lam).items():
            add_into(in_e, rho, c * q_to_v(g) * _v_power(-2 * rho.n))
    out: dict = {}
    for rho, d in in_e.items():
        db = d.bar() * _v_power(2 * rho.n)
        for nu, f in column_product(rho).items():
            add_into(out, nu, db * q_to_v(f))
    return HallElement1._raw(out)


def _negative_part(c: RationalFunc) -> LaurentPoly:
    if not c.is_laurent():
        raise ArithmeticError(f"bar-recursion coefficient {c} is not a Laurent polynomial")
    return LaurentPoly({e: a for e, a in c.as_laurent().items() if e < 0})


@lru_cache(maxsize=None)
def _canonical_by_recursion(d: int) -> dict:
    """lam -> {mu: beta(v)} with b_lam = sum beta u~_mu, via bar invariance."""
    _check_degree(d)
    order = sorted(enumerate_partitions(d))  # increasing lex refines dominance
    result: dict = {}
    for lam in order:
        diff = bar(pbw(lam)) - pbw(lam)
        gamma_pbw = diff.pbw_coefficients()
        # rewrite bar(u~) - u~ in terms of the b's already built (largest first)
        coeffs: dict = {}
        for mu in sorted(result, reverse=True):
            g = gamma_pbw.get(mu)
            if not g:
                continue
            coeffs[mu] = g
            for nu, beta in result[mu].items():
                if nu != mu:
                    add_into(gamma_pbw, nu, -g * beta)
        leftover = {k: v for k, v in gamma_pbw.items() if k not in result and v}
        if leftover:
            raise ArithmeticError(f"bar(u~{lam}) is not unitriangular: {leftover}")
        b = {lam: rf(1)}
        for mu, g in coeffs.items():
            lp = g.as_laurent()
            if lp.coeff(0):
                raise ArithmeticError(f"bar-recursion coefficient {g} has a constant term")
            p = rf(_negative_part(g))
            if p - p.bar() != g:
                raise ArithmeticError(f"bar-recursion coefficient {g} is not bar-antisymmetric")
            if p:
                for nu, beta in result[mu].items():
                    add_into(b, nu, p * beta)
        for mu, beta in b.items():
            if mu == lam:
                continue
            lp = beta.as_laurent()
            if any(e >= 0 or e % 2 for e, _ in lp.items()):
                raise ArithmeticError(f"canonical coefficient {beta} not in v^-2 Z[v^-2]")
        result[lam] = b
    return result


def canonical_basis_by_recursion(lam) -> HallElement1:
    lam = Partition(lam)
    coeffs = _canonical_by_recursion(lam.weight)[lam]
    return HallElement1({mu: c * _v_power(2 * mu.n) for mu, c in coeffs.items()})


def canonical_basis(lam) -> HallElement1:
    """b_lam = Phi_1(s_lam), checked against the bar-invariance recursion."""
    lam = Partition(lam)
    b = phi1(sf.schur(lam))
    other = canonical_basis_by_recursion(lam)
    if b != other:
        raise ArithmeticError(f"canonical basis routes disagree for {lam}")
    return b


def dual_canonical_basis(lam) -> HallElement1:
    """b*_lam = Phi_1(S_lam(t)), checked to be dual to the canonical basis."""
    lam = Partition(lam)
    b = phi1(sf.dual_schur(lam))
    for mu in enumerate_partitions(lam.weight):
        val = pairing(b, phi1(sf.schur(mu)))
        if val != (1 if mu == lam else 0):
            raise ArithmeticError(f"<b*{lam}, b{mu}> = {val}")
    return b


def phi1_tensor(x: sf.SymFuncTensor) -> HallTensor1:
    """Phi_1 (x) Phi_1 on a two-fold tensor of symmetric functions."""
    out: dict = {}
    for (lam, mu), c in x.convert("HL", "HL").terms.items():
        _check_degree(lam.weight + mu.weight)
        add_into(out, (lam, mu), c.substitute(-2) * _v_power(2 * (lam.n + mu.n)))
    return HallTensor1._raw(out)
