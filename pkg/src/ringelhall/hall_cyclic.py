"""The generic Ringel-Hall algebra H_n of the cyclic quiver C_n, with K-classes.

Basis u_lam K_alpha: lam a multipartition, alpha in Z^n / Z delta.  Hall
polynomials are generic in q = v^2.  Right multiplication by a semisimple
class u_S is computed in closed form: a submodule U <= soc M_xi splits
vertex by vertex, and inside the socle at vertex j (one line per part of the
j-th component) choosing d_l of the m_l parts of length l contributes

    prod_l [m_l choose d_l]_q * q^{d_l * sum_{l' > l} (m_{l'} - d_{l'})},

cutting M(j; l) to M(j+1; l-1) for each chosen part.  Radical-layer products
E_lam = u_{L_1} ... u_{L_k} are unitriangular (E_lam = u_lam + terms of
smaller radical weight), so every u_mu is a combination of products of
semisimples and general products follow.  fq_oracle validates the result.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import BoundExceeded
from .exact_arith import IntPoly, LaurentPoly, RationalFunc, gauss_binomial, rf
from .linalg import invert, solve
from .partitions import (
    MultiPartition,
    Partition,
    aut_poly_n,
    hom_dim_n,
    multipartitions_of_dim,
)
from .sparse import SparseElement, add_into, is_scalar
from . import symfunc as sf

DIM_CAPS = {1: 8, 2: 6}
DEFAULT_CAP = 4


def dim_cap(n: int) -> int:
    return DIM_CAPS.get(n, DEFAULT_CAP)


def set_dim_cap(n: int, cap: int) -> None:
    DIM_CAPS[n] = cap


def _check_dim(n: int, d: int, what=None) -> None:
    if d > dim_cap(n):
        raise BoundExceeded(f"total dimension {d} exceeds the cap {dim_cap(n)} for n = {n}"
                            + (f" ({what})" if what is not None else ""), item=what)


def _v_power(k: int) -> RationalFunc:
    return RationalFunc.monomial(k)


def _mp(x) -> MultiPartition:
    return MultiPartition(x)


# --- forms ---------------------------------------------------------------

def euler_form(d, e) -> int:
    """<d, e> = sum_i d_i e_i - sum_i d_i e_{i-1}."""
    d, e = tuple(d), tuple(e)
    if len(d) != len(e):
        raise ValueError(f"rank mismatch: {len(d)} vs {len(e)}")
    n = len(d)
    return sum(d[i] * e[i] for i in range(n)) - sum(d[i] * e[(i - 1) % n] for i in range(n))


def sym_form(d, e) -> int:
    return euler_form(d, e) + euler_form(e, d)


class KClass(tuple):
    """An element of Z^n / Z delta, stored with last coordinate 0."""

    def __new__(cls, vec):
        vec = tuple(int(x) for x in vec)
        if not vec:
            raise ValueError("a K-class needs at least one coordinate")
        last = vec[-1]
        return super().__new__(cls, tuple(x - last for x in vec))

    @classmethod
    def zero(cls, n: int) -> "KClass":
        return cls((0,) * n)

    def __add__(self, other):
        if len(other) != len(self):
            raise ValueError("rank mismatch")
        return KClass(tuple(a + b for a, b in zip(self, other)))

    def __neg__(self):
        return KClass(tuple(-a for a in self))

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self):
        return f"KClass({tuple(self)!r})"


def _dim(lam: MultiPartition) -> tuple[int, ...]:
    return lam.dim_vector


def _semisimple(s) -> MultiPartition:
    return MultiPartition([(1,) * x for x in s])


# --- generic Hall numbers ------------------------------------------------

def _cut_choices(part: Partition):
    """(d_l choices, count polynomial) for every way to cut a socle subspace."""
    mult = sorted(part.multiplicities.items())
    ranges = [range(m + 1) for _, m in mult]
    for ds in itertools.product(*ranges):
        poly = IntPoly({0: 1})
        for k, ((l, m), d) in enumerate(zip(mult, ds)):
            above = sum(mm - dd for (ll, mm), dd in zip(mult[k + 1:], ds[k + 1:]))
            poly = poly * gauss_binomial(m, d) * IntPoly({d * above: 1})
        yield {l: d for (l, _), d in zip(mult, ds) if d}, sum(ds), poly


@lru_cache(maxsize=None)
def _times_semisimple(kappa: MultiPartition, s: tuple) -> dict:
    """u_kappa u_S = sum F^xi_{kappa,S}(q) u_xi (untwisted), S semisimple of dim s."""
    n = kappa.n
    target = tuple(a + b for a, b in zip(_dim(kappa), s))
    out: dict = {}
    for xi in multipartitions_of_dim(target):
        per_vertex = []
        for j in range(n):
            per_vertex.append([c for c in _cut_choices(xi[j]) if c[1] == s[j]])
        for choice in itertools.product(*per_vertex):
            comps = [list(p) for p in xi]
            poly = IntPoly({0: 1})
            for j, (ds, _, f) in enumerate(choice):
                poly = poly * f
                for l, d in ds.items():
                    for _ in range(d):
                        comps[j].remove(l)
                        if l > 1:
                            comps[(j + 1) % n].append(l - 1)
            if MultiPartition(comps) == kappa:
                out[xi] = out.get(xi, IntPoly()) + poly
    return {xi: f for xi, f in out.items() if f}


def _times_layers(elem: dict, layers) -> dict:
    for s in layers:
        nxt: dict = {}
        for kappa, c in elem.items():
            for xi, f in _times_semisimple(kappa, tuple(s)).items():
                add_into(nxt, xi, c * f)
        elem = nxt
    return elem


@lru_cache(maxsize=None)
def layer_product(lam: MultiPartition) -> dict:
    """E_lam = u_{L_1} u_{L_2} ... (untwisted), L_k the k-th radical layer."""
    layers = lam.radical_layers
    if not layers:
        return {lam: IntPoly({0: 1})}
    start = {_semisimple(layers[0]): IntPoly({0: 1})}
    out = _times_layers(start, layers[1:])
    assert out.get(lam) == 1, f"radical-layer product of {lam} is not unitriangular"
    for mu in out:
        assert mu == lam or mu.radical_weight < lam.radical_weight, (lam, mu)
    return out


@lru_cache(maxsize=None)
def _u_in_layers(mu: MultiPartition) -> dict:
    """u_mu = sum_nu c_nu E_nu (inverse of the unitriangular layer products)."""
    out = {mu: IntPoly({0: 1})}
    for nu, c in layer_product(mu).items():
        if nu != mu:
            for rho, d in _u_in_layers(nu).items():
                add_into(out, rho, -c * d)
    return out


@lru_cache(maxsize=None)
def _product_table(lam: MultiPartition, mu: MultiPartition) -> dict:
    """Untwisted u_lam u_mu = sum_xi F^xi_{lam,mu}(q) u_xi."""
    if lam.n != mu.n:
        raise ValueError("rank mismatch")
    _check_dim(lam.n, lam.total_dim + mu.total_dim, (lam, mu))
    out: dict = {}
    for nu, c in _u_in_layers(mu).items():
        for xi, f in _times_layers({lam: IntPoly({0: 1})}, nu.radical_layers).items():
            add_into(out, xi, c * f)
    for xi, f in out.items():
        assert f.is_integral() and f.degree <= hall_degree_bound(lam, mu, xi), (lam, mu, xi, f)
    return out


def guo_bound(lam, mu, xi) -> int:
    """h_xi,xi - h_lam,lam - h_mu,mu."""
    return hom_dim_n(xi, xi) - hom_dim_n(lam, lam) - hom_dim_n(mu, mu)


def hall_degree_bound(lam, mu, xi) -> int:
    """An upper bound for deg F^xi_{lam,mu}.

    For n = 1 this is n(xi) - n(lam) - n(mu), half of guo_bound.  For n >= 2
    Hom is not symmetric and the halved bound fails (F^{(2,1;)}_{(2;),(1;)} = q
    while guo_bound = 1); Riedtmann's formula gives
    deg F <= deg |Ext^1(M,N)_X| + h_X - h_M - h_N - hom(M,N) <= guo_bound - <lam, mu>.
    """
    lam, mu, xi = _mp(lam), _mp(mu), _mp(xi)
    g = guo_bound(lam, mu, xi)
    if lam.n == 1:
        return g // 2
    return g - euler_form(_dim(lam), _dim(mu))


def hall_polynomial_n(lam, mu, xi) -> IntPoly:
    """F^xi_{lam,mu}(T), the generic Hall polynomial over C_n."""
    lam, mu, xi = _mp(lam), _mp(mu), _mp(xi)
    if not lam.n == mu.n == xi.n:
        raise ValueError("rank mismatch")
    if tuple(a + b for a, b in zip(_dim(lam), _dim(mu))) != _dim(xi):
        return IntPoly()
    return IntPoly(dict(_product_table(lam, mu).get(xi, IntPoly()).items()))


def _q(p) -> RationalFunc:
    return rf(p).substitute(2)


@lru_cache(maxsize=None)
def _aut_v(lam: MultiPartition) -> RationalFunc:
    return _q(aut_poly_n(lam))


# --- elements ------------------------------------------------------------

def _normalize(key):
    if isinstance(key, MultiPartition):
        return key, KClass.zero(key.n)
    lam, k = key
    lam = MultiPartition(lam)
    return lam, KClass(k) if k is not None else KClass.zero(lam.n)


def _mpart_json(lam: MultiPartition) -> list:
    return [list(p) if p else [0] for p in lam]


def _mpart_from_json(data) -> MultiPartition:
    return MultiPartition([tuple(x for x in p if x) for p in data])


class HallElementN(SparseElement):
    """Finite sum of c * u_lam K_alpha with c in Q(v)."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms=None):
        super().__init__(terms)
        self.n = n
        for lam, k in self.terms:
            if lam.n != n or len(k) != n:
                raise ValueError(f"rank mismatch: expected {n}")

    _normalize_key = staticmethod(_normalize)

    def _init_extra_from(self, other) -> None:
        self.n = other.n if other is not None else None

    @classmethod
    def _build(cls, n: int, terms: dict) -> "HallElementN":
        obj = cls._raw(terms)
        obj.n = n
        return obj

    @classmethod
    def u(cls, lam, coeff=1, k=None) -> "HallElementN":
        lam = _mp(lam)
        return cls(lam.n, {(lam, None if k is None else KClass(k)): coeff})

    @classmethod
    def K(cls, alpha) -> "HallElementN":
        alpha = KClass(alpha)
        return cls(len(alpha), {(MultiPartition.zero(len(alpha)), alpha): 1})

    @classmethod
    def one(cls, n: int) -> "HallElementN":
        return cls(n, {MultiPartition.zero(n): 1})

    @classmethod
    def zero(cls, n: int) -> "HallElementN":
        return cls(n, {})

    def degrees(self) -> set:
        return {_dim(lam) for lam, _ in self.terms}

    def is_k_free(self) -> bool:
        return all(k.is_zero() for _, k in self.terms)

    def _check_rank(self, other):
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, HallElementN):
            self._check_rank(other)
        return super().__add__(other)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if not isinstance(other, HallElementN):
            return NotImplemented
        return multiply_n(self, other)

    def __pow__(self, k: int):
        out = HallElementN.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HallElementN):
            return self.n == other.n and self.terms == other.terms
        return super().__eq__(other)

    __hash__ = None

    def _sorted(self, terms):
        return sorted(terms.items(), key=lambda kv: (kv[0][0].total_dim, kv[0][0], kv[0][1]), reverse=True)

    def pbw_coefficients(self) -> dict:
        """Coefficients in u~_lam K_alpha = v^{h_lam,lam - |lam|} u_lam K_alpha."""
        return {key: c * _v_power(-_pbw_exponent(key[0])) for key, c in self.terms.items()}

    def to_str(self, basis: str = "u") -> str:
        terms = self.pbw_coefficients() if basis == "pbw" else self.terms
        name = "ũ" if basis == "pbw" else "u"
        if not terms:
            return "0"
        pieces = []
        for (lam, k), c in self._sorted(terms):
            label = f"{name}{lam}" + ("" if k.is_zero() else f"K{tuple(k)}")
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
        return f"HallElementN({self.n}, {self.to_str()!r})"

    def to_json(self, basis: str = "u") -> dict:
        terms = self.pbw_coefficients() if basis == "pbw" else self.terms
        return {
            "n": self.n,
            "basis": basis,
            "terms": [{"mpart": _mpart_json(lam), "k": list(k), "coeff": c.to_json()}
                      for (lam, k), c in self._sorted(terms)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HallElementN":
        basis = data.get("basis", "u")
        if basis not in ("u", "pbw"):
            raise ValueError(f"unknown basis tag {basis!r}")
        n = data["n"]
        terms = {}
        for t in data["terms"]:
            lam = _mpart_from_json(t["mpart"])
            k = KClass(t.get("k") or (0,) * n)
            c = RationalFunc.from_json(t["coeff"])
            if basis == "pbw":
                c = c * _v_power(_pbw_exponent(lam))
            terms[(lam, k)] = c
        return cls(n, terms)


def u(lam, coeff=1, k=None) -> HallElementN:
    return HallElementN.u(lam, coeff, k)


def multiply_n(x: HallElementN, y: HallElementN) -> HallElementN:
    """(u_lam K_a)(u_mu K_b) = v^{<lam,mu> + (a, dim mu)} sum F^xi(v^2) u_xi K_{a+b}."""
    x._check_rank(y)
    out: dict = {}
    for (lam, a), c in x.terms.items():
        for (mu, b), d in y.terms.items():
            e = euler_form(_dim(lam), _dim(mu)) + sym_form(a, _dim(mu))
            cd = c * d * _v_power(e)
            ab = a + b
            if lam.is_zero() or mu.is_zero():
                add_into(out, (lam if mu.is_zero() else mu, ab), cd)
                continue
            for xi, f in _product_table(lam, mu).items():
                add_into(out, (xi, ab), cd * _q(f))
    return HallElementN._build(x.n, out)


# --- tensors, coproduct, pairing ---------------------------------------

class HallTensorN(SparseElement):
    """Element of H_n (x) H_n keyed by ((lam, a), (mu, b))."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms=None):
        super().__init__(terms)
        self.n = n

    def _init_extra_from(self, other) -> None:
        self.n = other.n if other is not None else None

    @classmethod
    def _build(cls, n: int, terms: dict) -> "HallTensorN":
        obj = cls._raw(terms)
        obj.n = n
        return obj

    @staticmethod
    def _normalize_key(key):
        return _normalize(key[0]), _normalize(key[1])

    @classmethod
    def pure(cls, x: HallElementN, y: HallElementN) -> "HallTensorN":
        x._check_rank(y)
        out: dict = {}
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                add_into(out, (k1, k2), c1 * c2)
        return cls._build(x.n, out)

    def __eq__(self, other):
        if isinstance(other, HallTensorN):
            return self.n == other.n and self.terms == other.terms
        return super().__eq__(other)

    __hash__ = None

    def multiply(self, other: "HallTensorN", twisted: bool = False) -> "HallTensorN":
        """Componentwise product; twisted adds v^{([b],[c])} for (a(x)b)(c(x)d)."""
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            ea, eb = HallElementN._build(self.n, {a: rf(1)}), HallElementN._build(self.n, {b: rf(1)})
            for (c, d), c2 in other.terms.items():
                ec, ed = HallElementN._build(self.n, {c: rf(1)}), HallElementN._build(self.n, {d: rf(1)})
                coeff = c1 * c2
                if twisted:
                    coeff = coeff * _v_power(sym_form(_dim(b[0]), _dim(c[0])))
                left, right = ea * ec, eb * ed
                for k1, x1 in left.terms.items():
                    for k2, x2 in right.terms.items():
                        add_into(out, (k1, k2), coeff * x1 * x2)
        return HallTensorN._build(self.n, out)

    def __mul__(self, other):
        if isinstance(other, HallTensorN):
            return self.multiply(other)
        return super().__mul__(other)

    def pair(self, other: "HallTensorN") -> RationalFunc:
        total = rf(0)
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                if a[0] == c[0] and b[0] == d[0]:
                    total = total + c1 * c2 * _pair_basis(a, c) * _pair_basis(b, d)
        return total


@lru_cache(maxsize=None)
def _coproduct_pairs(xi: MultiPartition) -> tuple:
    """All (M, N, F^xi_{M,N}) with F nonzero."""
    _check_dim(xi.n, xi.total_dim, xi)
    d = _dim(xi)
    out = []
    for e in itertools.product(*(range(x + 1) for x in d)):
        rest = tuple(a - b for a, b in zip(d, e))
        for nn in multipartitions_of_dim(e):
            for m in multipartitions_of_dim(rest):
                if m.is_zero() or nn.is_zero():
                    f = IntPoly({0: 1}) if (m if nn.is_zero() else nn) == xi else IntPoly()
                else:
                    f = _product_table(m, nn).get(xi, IntPoly())
                if f:
                    out.append((m, nn, f))
    return tuple(out)


@lru_cache(maxsize=None)
def _coproduct_basis(xi: MultiPartition) -> tuple:
    """Delta(u_xi) as (M, N, coefficient) with u_M K_N (x) u_N."""
    out = []
    for m, nn, f in _coproduct_pairs(xi):
        c = _v_power(euler_form(_dim(m), _dim(nn))) * _q(f) * _aut_v(m) * _aut_v(nn) / _aut_v(xi)
        out.append((m, nn, c))
    return tuple(out)


def coproduct_n(x: HallElementN) -> HallTensorN:
    """Delta(u_X K_a) = sum v^{<M,N>} F a_M a_N / a_X u_M K_{N+a} (x) u_N K_a."""
    out: dict = {}
    for (xi, a), c in x.terms.items():
        for m, nn, coeff in _coproduct_basis(xi):
            add_into(out, ((m, KClass(_dim(nn)) + a), (nn, a)), c * coeff)
    return HallTensorN._build(x.n, out)


def coproduct_reduced_n(x: HallElementN) -> HallTensorN:
    """Green's coproduct without K-classes: sum v^{<M,N>} F a_M a_N / a_X u_M (x) u_N.

    Multiplicative for the twisted tensor product, while coproduct_n is
    multiplicative for the plain one.
    """
    out: dict = {}
    for (xi, a), c in x.terms.items():
        for m, nn, coeff in _coproduct_basis(xi):
            add_into(out, ((m, a), (nn, a)), c * coeff)
    return HallTensorN._build(x.n, out)


def counit_n(x: HallElementN) -> RationalFunc:
    total = rf(0)
    for (lam, _), c in x.terms.items():
        if lam.is_zero():
            total = total + c
    return total


def _pair_basis(a, b) -> RationalFunc:
    (lam, alpha), (mu, beta) = a, b
    if lam != mu:
        return rf(0)
    return _v_power(sym_form(alpha, beta) + 2 * lam.total_dim) / _aut_v(lam)


def pairing_n(x: HallElementN, y: HallElementN) -> RationalFunc:
    """<u_M K_a, u_N K_b> = delta_{M,N} v^{(a,b) + 2 dim M} / a_M."""
    x._check_rank(y)
    total = rf(0)
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            if a[0] == b[0]:
                total = total + c * d * _pair_basis(a, b)
    return total


def e_prime(i: int, x: HallElementN) -> HallElementN:
    """Adjoint of left multiplication by u_i: <e_i'(x), y> = <x, u_i y>."""
    n = x.n
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range 1..{n}")
    s = MultiPartition.simple(i, n)
    ei = _dim(s)
    out: dict = {}
    for (xi, a), c in x.terms.items():
        _check_dim(n, xi.total_dim, xi)
        rest = tuple(p - q for p, q in zip(_dim(xi), ei))
        for nu in multipartitions_of_dim(rest):
            if nu.is_zero():
                f = IntPoly({0: 1}) if xi == s else IntPoly()
            else:
                f = _product_table(s, nu).get(xi, IntPoly())
            if not f:
                continue
            coeff = _v_power(euler_form(ei, _dim(nu))) * _q(f) * _v_power(2 * (xi.total_dim - nu.total_dim)) \
                * _aut_v(nu) / _aut_v(xi)
            add_into(out, (nu, a), c * coeff)
    return HallElementN._build(n, out)


# --- the centre ----------------------------------------------------------

def square_free_socle(r: int, n: int) -> list[MultiPartition]:
    """Multipartitions (m_1, ..., m_n) of dimension vector r delta."""
    out = []
    for ms in itertools.product(range(r * n + 1), repeat=n):
        if sum(ms) != r * n:
            continue
        lam = MultiPartition([(m,) if m else () for m in ms])
        if _dim(lam) == (r,) * n:
            out.append(lam)
    return out


@lru_cache(maxsize=None)
def central_x(r: int, n: int) -> HallElementN:
    """x_r = (-v^-2)^{rn} sum (-1)^{h_lam,lam} a_lam(v^2) u_lam over square-free socles."""
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    if r == 0:
        return HallElementN.one(n)
    pre = _v_power(-2 * r * n) * (-1) ** (r * n)
    terms = {}
    for lam in square_free_socle(r, n):
        terms[lam] = pre * (-1) ** hom_dim_n(lam, lam) * _aut_v(lam)
    return HallElementN(n, terms)


def x_product(lam, n: int) -> HallElementN:
    """x_lam = x_{lam_1} x_{lam_2} ..."""
    out = HallElementN.one(n)
    for r in Partition(lam):
        out = out * central_x(r, n)
    return out


def center_project(x: HallElementN, max_deg: int) -> HallElementN:
    """Orthogonal projection onto span{x_lam : |lam| <= max_deg}."""
    n = x.n
    if not x.is_k_free():
        raise ValueError("projection is defined on the K-free part")
    out = HallElementN.zero(n)
    by_degree: dict = {}
    for (lam, k), c in x.terms.items():
        by_degree.setdefault(_dim(lam), {})[(lam, k)] = c
    for d, terms in by_degree.items():
        r = d[0]
        if d != (r,) * n or r > max_deg:
            continue
        piece = HallElementN._build(n, terms)
        if r == 0:
            out = out + piece
            continue
        basis = [x_product(lam, n) for lam in _partitions(r)]
        gram = [[pairing_n(a, b) for b in basis] for a in basis]
        rhs = [[pairing_n(piece, b)] for b in basis]
        coeffs = solve(gram, rhs, rf(1))
        for b, (c,) in zip(basis, coeffs):
            out = out + b * c
    return out


def _partitions(r: int):
    from .partitions import enumerate_partitions

    return enumerate_partitions(r)


def phi_n(f: sf.SymFunc, n: int) -> HallElementN:
    """Phi_n: t -> v^{-2n}, c_r -> x_r."""
    out = HallElementN.zero(n)
    for lam, c in f.to("c").terms.items():
        out = out + x_product(lam, n) * rf(c).substitute(-2 * n)
    return out


# --- PBW, bar, canonical bases ------------------------------------------

def _pbw_exponent(lam: MultiPartition) -> int:
    return hom_dim_n(lam, lam) - lam.total_dim


def pbw_n(lam) -> HallElementN:
    """u~_lam = v^{h_lam,lam - |lam|} u_lam."""
    lam = _mp(lam)
    return u(lam, _v_power(_pbw_exponent(lam)))


@lru_cache(maxsize=None)
def pbw_layer_product(lam: MultiPartition) -> HallElementN:
    """E~_lam = u~_{L_1} ... u~_{L_k} in the twisted algebra, expanded in u."""
    n = lam.n
    out = HallElementN.one(n)
    for s in lam.radical_layers:
        out = out * pbw_n(_semisimple(s))
    coeffs = out.pbw_coefficients()
    key = (lam, KClass.zero(n))
    if coeffs.get(key) != 1:
        raise AssertionError(f"layer product of {lam} is not unitriangular in the PBW basis")
    return out


@lru_cache(maxsize=None)
def _bar_pbw(lam: MultiPartition) -> HallElementN:
    """bar(u~_lam), from u~_lam = E~_lam - sum_{nu} c_nu u~_nu with E~ bar-invariant."""
    _check_dim(lam.n, lam.total_dim, lam)
    e = pbw_layer_product(lam)
    out = e
    for (nu, _), c in e.pbw_coefficients().items():
        if nu != lam:
            out = out - _bar_pbw(nu) * c.bar()
    return out


def bar_n(x: HallElementN) -> HallElementN:
    """Ring involution with v -> v^-1, K_a -> K_{-a}, fixing semisimple u~."""
    out = HallElementN.zero(x.n)
    for (lam, k), c in x.terms.items():
        b = _bar_pbw(lam) * (c.bar() * _v_power(_pbw_exponent(lam)))
        if not k.is_zero():
            b = b * HallElementN.K(-k)
        out = out + b
    return out


def _negative_part(c: RationalFunc) -> LaurentPoly:
    lp = c.as_laurent()
    return LaurentPoly({e: a for e, a in lp.items() if e < 0})


@lru_cache(maxsize=None)
def _canonical_degree(d: tuple) -> dict:
    """Canonical basis of the K-free piece of degree d, keyed by multipartition."""
    n = len(d)
    _check_dim(n, sum(d), d)
    order = sorted(multipartitions_of_dim(d), key=lambda m: (m.radical_weight, m))
    done: dict = {}
    for lam in order:
        base = pbw_n(lam)
        diff = bar_n(base) - base
        # bar(u~) - u~ = sum a_mu b_mu over earlier mu, peeled off top-down
        corr = HallElementN.zero(n)
        remaining = diff
        for mu in reversed(order[:order.index(lam)]):
            a = remaining.pbw_coefficients().get((mu, KClass.zero(n)))
            if a is None:
                continue
            remaining = remaining - done[mu] * a
            neg = _negative_part(a)
            if neg:
                corr = corr + done[mu] * RationalFunc(neg)
        assert remaining.is_zero(), f"bar image of {lam} leaves the computed span"
        b = base + corr
        assert bar_n(b) == b, f"canonical element for {lam} is not bar-invariant"
        for (mu, _), c in b.pbw_coefficients().items():
            if mu != lam:
                lp = c.as_laurent()
                assert lp.is_integral() and all(e < 0 for e, _ in lp.items()), (lam, mu, c)
        done[lam] = b
    return done


def canonical_basis_n(lam) -> HallElementN:
    lam = _mp(lam)
    return _canonical_degree(_dim(lam))[lam]


@lru_cache(maxsize=None)
def _dual_degree(d: tuple) -> dict:
    n = len(d)
    canon = _canonical_degree(d)
    keys = sorted(canon, key=lambda m: (m.radical_weight, m))
    gram = [[pairing_n(canon[a], canon[b]) for b in keys] for a in keys]
    inv = invert(gram, rf(1), rf(0))
    out = {}
    for i, a in enumerate(keys):
        elem = HallElementN.zero(n)
        for j, b in enumerate(keys):
            if inv[i][j]:
                elem = elem + canon[b] * inv[i][j]
        out[a] = elem
    return out


def dual_canonical_basis_n(lam) -> HallElementN:
    """b*_lam with <b*_lam, b_mu> = delta."""
    lam = _mp(lam)
    return _dual_degree(_dim(lam))[lam]


# --- conjecture report ---------------------------------------------------

def conjecture_report(lam, n: int) -> dict:
    """Evidence for b*_{(lam,...,lam)} = Phi_n(S_lam(t)) and pi(b_{(lam,...,lam)}) = Phi_n(s_lam)."""
    lam = Partition(lam)
    report = {"lambda": list(lam), "n": n}
    try:
        key = MultiPartition([lam] * n)
        b = canonical_basis_n(key)
        dual = dual_canonical_basis_n(key)
        lhs_dual = phi_n(sf.dual_schur(lam), n)
        lhs_proj = phi_n(sf.schur(lam), n)
        proj = center_project(b, lam.weight)
        report["dual_side"] = _compare(dual, lhs_dual)
        report["projection_side"] = _compare(proj, lhs_proj)
    except BoundExceeded as exc:
        report["error"] = str(exc)
    return report


def _compare(x: HallElementN, y: HallElementN):
    diff = x - y
    if diff.is_zero():
        return "equal"
    return {"diff": diff.to_json(), "computed": x.to_json(), "predicted": y.to_json()}
