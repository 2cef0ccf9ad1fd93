"""Named invariant suites, run by ``ringelhall verify``.

Each check is a function that raises AssertionError on failure.  Randomized
checks use fixed seeds so every run is reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import fq_oracle as fq
from . import hall_classical as hc
from . import hall_cyclic as hn
from . import symfunc as sf
from .exact_arith import IntPoly, RationalFunc, gauss_binomial, phi, rf
from .partitions import (
    MultiPartition,
    Partition,
    aut_poly,
    aut_poly_n,
    b_t,
    dominance_leq,
    enumerate_partitions,
    multipartitions_of_size,
    union_and_sum,
)

_T = RationalFunc.variable()
_V = RationalFunc.variable()


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float


def _parts_upto(d: int, start: int = 0):
    return [lam for k in range(start, d + 1) for lam in enumerate_partitions(k)]


def _mparts_upto(n: int, d: int, start: int = 0):
    return [m for k in range(start, d + 1) for m in multipartitions_of_size(n, k)]


def _random_rational(rng) -> RationalFunc:
    num = IntPoly({rng.randint(0, 2): rng.randint(-3, 3), rng.randint(3, 4): rng.randint(-3, 3)})
    den = IntPoly({0: 1, rng.randint(1, 2): rng.choice([-1, 1, 2])})
    return rf(num) / rf(den) * _V ** rng.randint(-2, 2)


# --- exact arithmetic ----------------------------------------------------

def arith_gauss_symmetry():
    for r in range(13):
        for a in range(r + 1):
            assert gauss_binomial(r, a) == gauss_binomial(r, r - a), (r, a)


def arith_gauss_at_one():
    for r in range(13):
        for a in range(r + 1):
            assert gauss_binomial(r, a)(1) == comb(r, a), (r, a)


def arith_field_axioms():
    rng = random.Random(11)
    for _ in range(40):
        a, b, c = (_random_rational(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (1 / a) == 1


def arith_normalization_idempotent():
    rng = random.Random(12)
    for _ in range(40):
        a = _random_rational(rng)
        again = RationalFunc(a.num, a.den)
        assert again == a and again.num == a.num and again.den == a.den


# --- partitions ----------------------------------------------------------

def partitions_conjugate_involution():
    for lam in _parts_upto(12):
        assert lam.conjugate.conjugate == lam


def partitions_dominance_anti_isomorphism():
    for d in range(11):
        parts = enumerate_partitions(d)
        for lam in parts:
            for mu in parts:
                assert dominance_leq(lam, mu) == dominance_leq(mu.conjugate, lam.conjugate), (lam, mu)


def partitions_z_sums():
    for d in range(1, 13):
        parts = enumerate_partitions(d)
        assert sum(Fraction(1, lam.z) for lam in parts) == 1
        assert sum(Fraction((-1) ** len(lam), lam.z) for lam in parts) == (-1 if d == 1 else 0)


def partitions_min_sum():
    for lam in _parts_upto(10):
        assert sum(min(a, b) for a in lam for b in lam) == 2 * lam.n + lam.weight


def partitions_union_conjugate():
    parts = _parts_upto(8)
    for lam in parts:
        for mu in parts:
            if lam.weight + mu.weight <= 8:
                union, _ = union_and_sum(lam, mu)
                k = max(len(lam.conjugate), len(mu.conjugate))
                lc = tuple(lam.conjugate) + (0,) * (k - len(lam.conjugate))
                mc = tuple(mu.conjugate) + (0,) * (k - len(mu.conjugate))
                assert union.conjugate == Partition(a + b for a, b in zip(lc, mc))


def partitions_aut_n1():
    for lam in _parts_upto(8):
        assert aut_poly_n(MultiPartition([lam])) == aut_poly(lam)


# --- symmetric functions -------------------------------------------------

def _random_homogeneous(rng, d, basis):
    return sf.SymFunc(basis, {lam: rng.randint(-2, 2) for lam in enumerate_partitions(d)})


def _one_tensor(f, g):
    return sf.SymFuncTensor.pure(f, g)


def symfunc_hopf_pairing():
    rng = random.Random(21)
    for total in range(7):
        for a in range(total + 1):
            f = _random_homogeneous(rng, total, rng.choice(["s", "e", "h"]))
            g = _random_homogeneous(rng, a, rng.choice(["s", "m", "c"]))
            k = _random_homogeneous(rng, total - a, rng.choice(["p", "HL", "Sdual"]))
            for deformed, pair in ((False, sf.pairing), (True, sf.pairing_t)):
                assert pair(f, g * k) == sf.coproduct(f).pair(_one_tensor(g, k), deformed)
            assert sf.pairing_t(f, sf.SymFunc.one()) == sf.counit(f)


def symfunc_antipode_adjoint():
    rng = random.Random(22)
    for d in range(7):
        f = _random_homogeneous(rng, d, "s")
        g = _random_homogeneous(rng, d, "h")
        assert sf.pairing(sf.antipode(f), g) == sf.pairing(f, sf.antipode(g))


def symfunc_bialgebra():
    rng = random.Random(23)
    for a in range(4):
        for b in range(7 - a):
            f = _random_homogeneous(rng, a, "s")
            g = _random_homogeneous(rng, b, "HL")
            assert sf.coproduct(f * g) == sf.coproduct(f) * sf.coproduct(g)
            d = sf.coproduct(f * g)
            assert d.factor_coproduct(0) == d.factor_coproduct(1)


def symfunc_e_h_relation():
    for n in range(1, 9):
        total = sf.SymFunc.zero()
        for a in range(n + 1):
            total = total + (-1) ** a * (sf.e(a) if a else sf.SymFunc.one()) * (sf.h(n - a) if n - a else sf.SymFunc.one())
        assert sf.convert(total, "p").is_zero(), n


def symfunc_c_relations():
    one = sf.SymFunc.one()

    def cc(a):
        return sf.cyclic_c(a) if a else one

    for n in range(1, 7):
        rhs = sf.SymFunc.zero()
        for a in range(1, n + 1):
            rhs = rhs + _T ** (n - a) * (sf.h(n - a) if n - a else one) * cc(a)
        assert (1 - _T ** n) * sf.h(n) == rhs
        rhs = sf.SymFunc.zero()
        for a in range(1, n + 1):
            rhs = rhs + (-1) ** a * (sf.e(n - a) if n - a else one) * cc(a)
        assert (_T ** n - 1) * sf.e(n) == rhs


def symfunc_norms():
    for n in range(1, 7):
        inv = rf(1) / rf(phi(n))
        assert sf.pairing_t(sf.e(n), sf.e(n)) == inv
        assert sf.pairing_t(sf.h(n), sf.h(n)) == inv
        assert sf.pairing_t(sf.cyclic_c(n), sf.cyclic_c(n)) == 1 - _T


def symfunc_dual_bases():
    for d in range(1, 7):
        parts = enumerate_partitions(d)
        for lam in parts:
            for mu in parts:
                delta = int(lam == mu)
                assert sf.pairing(sf.h(*lam), sf.m(*mu)) == delta
                assert sf.pairing_t(sf.SymFunc.basis_element("c", lam), sf.m(*mu)) == delta


def symfunc_hall_littlewood_expansions():
    tinv = 1 / _T
    for r in range(1, 7):
        h_sum = sf.SymFunc.zero("HL")
        p_sum = sf.SymFunc.zero("HL")
        for lam in enumerate_partitions(r):
            coeff = _T ** lam.n
            h_sum = h_sum + coeff * sf.hall_littlewood(lam)
            prod = rf(1)
            for k in range(1, len(lam)):
                prod = prod * (1 - tinv ** k)
            p_sum = p_sum + prod * coeff * sf.hall_littlewood(lam)
        assert h_sum == sf.h(r)
        assert p_sum == sf.p(r)


def symfunc_m_e_triangular():
    for d in range(1, 7):
        for lam in enumerate_partitions(d):
            in_e = sf.convert(sf.m(*lam), "e").terms
            assert in_e[lam.conjugate] == 1
            for nu, c in in_e.items():
                assert c.is_constant() and Fraction(c.constant_value()).denominator == 1
                if nu != lam.conjugate:
                    assert dominance_leq(nu.conjugate, lam) and nu.conjugate != lam


# --- classical Hall algebra ----------------------------------------------

def _u1(lam, c=1):
    return hc.HallElement1.u(lam, c)


def hall_classical_associative():
    basis = _parts_upto(5)
    for a, b, c in itertools.product(basis, repeat=3):
        if a.weight + b.weight + c.weight <= 5:
            x, y, z = _u1(a), _u1(b), _u1(c)
            assert (x * y) * z == x * (y * z), (a, b, c)


def hall_classical_coassociative():
    for xi in _parts_upto(5):
        d = hc.coproduct(_u1(xi))
        left: dict = {}
        right: dict = {}
        for (a, b), c in d.terms.items():
            for (a1, a2), c1 in hc.coproduct(_u1(a)).terms.items():
                left[(a1, a2, b)] = left.get((a1, a2, b), rf(0)) + c * c1
            for (b1, b2), c2 in hc.coproduct(_u1(b)).terms.items():
                right[(a, b1, b2)] = right.get((a, b1, b2), rf(0)) + c * c2
        assert {k: x for k, x in left.items() if x} == {k: x for k, x in right.items() if x}, xi


def hall_classical_bialgebra():
    basis = _parts_upto(4)
    for a, b in itertools.product(basis, repeat=2):
        if a.weight + b.weight <= 4:
            assert hc.coproduct(_u1(a) * _u1(b)) == hc.coproduct(_u1(a)) * hc.coproduct(_u1(b))


def hall_classical_adjunction():
    for xi in _parts_upto(5):
        for a in range(xi.weight + 1):
            for lam in enumerate_partitions(a):
                for mu in enumerate_partitions(xi.weight - a):
                    lhs = hc.pairing(_u1(xi), _u1(lam) * _u1(mu))
                    rhs = hc.coproduct(_u1(xi)).pair(hc.HallTensor1.pure(_u1(lam), _u1(mu)))
                    assert lhs == rhs


def hall_classical_phi1_hopf():
    rng = random.Random(31)
    for d in range(1, 6):
        for a in range(d + 1):
            f = _random_homogeneous(rng, a, "s")
            g = _random_homogeneous(rng, d - a, "e")
            k = _random_homogeneous(rng, d, "m")
            assert hc.phi1(f * g) == hc.phi1(f) * hc.phi1(g)
            assert hc.phi1_tensor(sf.coproduct(f * g)) == hc.coproduct(hc.phi1(f * g))
            assert hc.pairing(hc.phi1(f * g), hc.phi1(k)) == sf.pairing_t(f * g, k).substitute(-2)


def hall_classical_x_leading_term():
    q = _V * _V
    for lam in _parts_upto(6, 1):
        x = hc.HallElement1.one()
        for r in lam:
            x = x * hc.x_elem(r)
        assert x.coeff(lam) == q ** lam.n * rf(b_t(lam)).substitute(-2)
        for mu in x.terms:
            assert mu == lam or dominance_leq(lam, mu)


def hall_classical_images():
    q = _V * _V
    for r in range(1, 7):
        assert hc.phi1(sf.p(r)) == hc.y_elem(r)
        assert hc.phi1(sf.cyclic_c(r)) == hc.x_elem(r)
    for lam in _parts_upto(6, 1):
        assert hc.phi1(sf.hall_littlewood(lam)) == _u1(lam, q ** lam.n)


def hall_classical_support_and_degree():
    for d in range(1, 8):
        for a in range(d + 1):
            for lam in enumerate_partitions(a):
                for mu in enumerate_partitions(d - a):
                    lo, hi = union_and_sum(lam, mu)
                    lr = sf.convert(sf.schur(lam) * sf.schur(mu), "s")
                    for xi in enumerate_partitions(d):
                        f = hc.hall_polynomial(lam, mu, xi)
                        top = xi.n - lam.n - mu.n
                        assert f.coeff(top) == lr.coeff(xi)
                        if f:
                            assert dominance_leq(lo, xi) and dominance_leq(xi, hi)
                            assert f.degree <= top


def hall_classical_canonical_routes():
    for lam in _parts_upto(6, 1):
        b = hc.canonical_basis(lam)
        assert b == hc.canonical_basis_by_recursion(lam), lam
        for mu, c in b.pbw_coefficients().items():
            if mu != lam:
                assert all(e < 0 and e % 2 == 0 for e, _ in c.as_laurent().items())


def hall_classical_hl_structure():
    for d in range(2, 7):
        for a in range(1, d):
            for lam in enumerate_partitions(a):
                for mu in enumerate_partitions(d - a):
                    prod = sf.convert(sf.hall_littlewood(lam) * sf.hall_littlewood(mu), "HL")
                    for xi in enumerate_partitions(d):
                        f = rf(hc.hall_polynomial(lam, mu, xi)).substitute(-1)
                        assert prod.coeff(xi) == _T ** (xi.n - lam.n - mu.n) * f


# --- F_q oracle ----------------------------------------------------------

def fq_riedtmann():
    for n in (1, 2):
        for q in (2, 3):
            for xi in _mparts_upto(n, 4):
                for (lam, mu), f in fq.submodule_type_counts(xi, q).items():
                    e = fq.count_exact_sequences(lam, mu, xi, q)
                    assert e == f * fq.count_automorphisms(lam, q) * fq.count_automorphisms(mu, q), (lam, mu, xi, q)


def fq_injection_identity():
    for n, q in ((1, 2), (2, 2), (2, 3), (3, 2)):
        for xi in _mparts_upto(n, 3):
            tally = fq.submodule_type_counts(xi, q)
            for nn in _mparts_upto(n, xi.total_dim):
                total = sum(c for (_, sub), c in tally.items() if sub == nn)
                assert total * fq.count_automorphisms(nn, q) == fq.count_injections(nn, xi, q)


def fq_automorphisms():
    for n in (1, 2, 3):
        for q in (2, 3):
            for lam in _mparts_upto(n, 5):
                assert fq.count_automorphisms(lam, q) == aut_poly_n(lam)(q), (lam, q)


def fq_classical_hall_numbers():
    for q in (2, 3):
        for d in range(1, 6):
            for xi in enumerate_partitions(d):
                for a in range(d + 1):
                    for lam in enumerate_partitions(a):
                        for mu in enumerate_partitions(d - a):
                            got = fq.count_hall_number([lam], [mu], [xi], q)
                            assert got == hc.hall_polynomial(lam, mu, xi)(q), (lam, mu, xi, q)


def fq_cyclic_hall_numbers():
    for n, d in ((2, 4), (3, 3)):
        for q in (2, 3):
            for xi in _mparts_upto(n, d):
                for (lam, mu), c in fq.submodule_type_counts(xi, q).items():
                    assert c == hn.hall_polynomial_n(lam, mu, xi)(q), (lam, mu, xi, q)


# --- cyclic Hall algebra -------------------------------------------------

def _un(lam, c=1, k=None):
    return hn.HallElementN.u(lam, c, k)


def _pairs(n, d):
    basis = _mparts_upto(n, d)
    return [(a, b) for a in basis for b in basis if a.total_dim + b.total_dim <= d]


def hall_cyclic_associative():
    for n in (2, 3):
        old = hn.dim_cap(n)
        hn.set_dim_cap(n, max(old, 5))
        try:
            basis = _mparts_upto(n, 3, 1)
            for a, b, c in itertools.product(basis, repeat=3):
                if a.total_dim + b.total_dim + c.total_dim <= 5:
                    x, y, z = _un(a), _un(b), _un(c)
                    assert (x * y) * z == x * (y * z), (a, b, c)
        finally:
            hn.set_dim_cap(n, old)


def hall_cyclic_twisted_bialgebra():
    for a, b in _pairs(2, 4):
        x, y = _un(a), _un(b)
        lhs = hn.coproduct_reduced_n(x * y)
        assert lhs == hn.coproduct_reduced_n(x).multiply(hn.coproduct_reduced_n(y), twisted=True), (a, b)
        assert hn.coproduct_n(x * y) == hn.coproduct_n(x) * hn.coproduct_n(y), (a, b)


def hall_cyclic_adjunction():
    for xi in _mparts_upto(2, 4):
        dz = hn.coproduct_n(_un(xi))
        for a, b in _pairs(2, xi.total_dim):
            if a.total_dim + b.total_dim == xi.total_dim:
                x, y = _un(a), _un(b)
                assert hn.pairing_n(x * y, _un(xi)) == hn.HallTensorN.pure(x, y).pair(dz), (a, b, xi)


def hall_cyclic_centrality():
    for n, r in ((2, 1), (3, 1), (2, 2)):
        x = hn.central_x(r, n)
        for i in range(1, n + 1):
            s = _un(MultiPartition.simple(i, n))
            assert x * s == s * x, (n, r, i)


def hall_cyclic_e_prime_kernel():
    for n in (2, 3):
        for i in range(1, n + 1):
            assert hn.e_prime(i, hn.central_x(1, n)).is_zero(), (n, i)


def hall_cyclic_centre_coproduct():
    for r in (1, 2):
        want = hn.HallTensorN(2)
        for a in range(r + 1):
            want = want + hn.HallTensorN.pure(hn.central_x(a, 2), hn.central_x(r - a, 2))
        assert hn.coproduct_n(hn.central_x(r, 2)) == want


def hall_cyclic_norm():
    for n, r in ((1, 1), (2, 1), (2, 2), (3, 1)):
        x = hn.central_x(r, n)
        assert hn.pairing_n(x, x) == 1 - _V ** (-2 * n), (n, r)


def hall_cyclic_orthogonal_to_u_i_h():
    x = hn.central_x(1, 2)
    for i in (1, 2):
        s = MultiPartition.simple(i, 2)
        other = MultiPartition.simple(3 - i, 2)
        assert hn.pairing_n(x, _un(s) * _un(other)) == 0


def hall_cyclic_leading_term():
    beta = 1 - _V ** -2
    for n in (1, 2, 3):
        for r in (1, 2):
            x = hn.central_x(r, n)
            low = MultiPartition([(r,)] * n)
            assert x.coeff(low) == beta ** n
            assert all(lam == low or lam.radical_weight > low.radical_weight for lam, _ in x.terms)


def hall_cyclic_x_pairs_with_canonical():
    x = hn.central_x(1, 2)
    target = MultiPartition([(1,), (1,)])
    for lam in _mparts_upto(2, 2, 2):
        if lam.dim_vector == (1, 1):
            assert hn.pairing_n(x, hn.canonical_basis_n(lam)) == int(lam == target)


def hall_cyclic_bar():
    for a, b in _pairs(2, 4):
        x, y = _un(a), _un(b)
        assert hn.bar_n(x * y) == hn.bar_n(x) * hn.bar_n(y)
        assert hn.bar_n(hn.bar_n(x)) == x


SUITES = {
    "arith": [arith_gauss_symmetry, arith_gauss_at_one, arith_field_axioms, arith_normalization_idempotent],
    "partitions": [partitions_conjugate_involution, partitions_dominance_anti_isomorphism, partitions_z_sums,
                   partitions_min_sum, partitions_union_conjugate, partitions_aut_n1],
    "symfunc": [symfunc_hopf_pairing, symfunc_antipode_adjoint, symfunc_bialgebra, symfunc_e_h_relation,
                symfunc_c_relations, symfunc_norms, symfunc_dual_bases, symfunc_hall_littlewood_expansions,
                symfunc_m_e_triangular],
    "hall-classical": [hall_classical_associative, hall_classical_coassociative, hall_classical_bialgebra,
                       hall_classical_adjunction, hall_classical_phi1_hopf, hall_classical_x_leading_term,
                       hall_classical_images, hall_classical_support_and_degree, hall_classical_canonical_routes,
                       hall_classical_hl_structure],
    "fq-oracle": [fq_riedtmann, fq_injection_identity, fq_automorphisms, fq_classical_hall_numbers,
                  fq_cyclic_hall_numbers],
    "hall-cyclic": [hall_cyclic_associative, hall_cyclic_twisted_bialgebra, hall_cyclic_adjunction,
                    hall_cyclic_centrality, hall_cyclic_e_prime_kernel, hall_cyclic_centre_coproduct,
                    hall_cyclic_norm, hall_cyclic_orthogonal_to_u_i_h, hall_cyclic_leading_term,
                    hall_cyclic_x_pairs_with_canonical, hall_cyclic_bar],
}


def _name(fn) -> str:
    return fn.__name__.replace("_", "-")


def run_check(suite: str, fn) -> CheckResult:
    start = time.perf_counter()
    try:
        fn()
        passed, detail = True, ""
    except AssertionError as exc:
        passed, detail = False, f"assertion failed: {exc}" if str(exc) else "assertion failed"
    return CheckResult(suite, _name(fn), passed, detail, time.perf_counter() - start)


def run_suites(names=None):
    """Yield a CheckResult per check in the named suites (all when names is None)."""
    names = list(SUITES) if not names else list(names)
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    for name in names:
        for fn in SUITES[name]:
            yield run_check(name, fn)
