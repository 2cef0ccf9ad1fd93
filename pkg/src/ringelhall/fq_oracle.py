"""Brute-force counts over prime fields for nilpotent representations of C_n.

A representation has one vector space F_q^{d_i} per vertex and one matrix per
arrow a_i: i -> i-1 (indices mod n), stored as ``arrows[i-1]`` with shape
d_{i-1} x d_i.  Everything here is exhaustive enumeration; it is the ground
truth the generic Hall algebra code is tested against.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .errors import BoundExceeded
from .exact_arith import IntPoly
from .partitions import MultiPartition, vertex

FIELD_BOUND = 13
DIM_BOUND = 8
AUT_BOUND = 5
CACHE_ENV = "RINGELHALL_CACHE_DIR"
_cache_dir_override: str | None = None


def configure(field_bound: int | None = None, dim_bound: int | None = None,
              aut_bound: int | None = None, cache_dir: str | None = None) -> None:
    """Adjust enumeration bounds and the interpolation cache location."""
    global FIELD_BOUND, DIM_BOUND, AUT_BOUND, _cache_dir_override
    if field_bound is not None:
        FIELD_BOUND = field_bound
    if dim_bound is not None:
        DIM_BOUND = dim_bound
    if aut_bound is not None:
        AUT_BOUND = aut_bound
    if cache_dir is not None:
        _cache_dir_override = cache_dir
    _tally.cache_clear()


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def _check_field(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q > FIELD_BOUND:
        raise BoundExceeded(f"field size {q} exceeds bound {FIELD_BOUND}", item=q)


# --- linear algebra mod p ------------------------------------------------

def rref(rows, q: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of a list of rows; returns (nonzero rows, pivots)."""
    a = [[x % q for x in r] for r in rows]
    width = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(width):
        piv = next((k for k in range(r, len(a)) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], q - 2, q)
        a[r] = [x * inv % q for x in a[r]]
        for k in range(len(a)):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [(x - f * y) % q for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows, q: int) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows, q)[1])


def nullspace(rows, width: int, q: int) -> list[list[int]]:
    """Basis of {x : rows @ x = 0} in F_q^width."""
    red, pivots = rref(rows, q) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * width
        x[f] = 1
        for row, p in zip(red, pivots):
            x[p] = -row[f] % q
        basis.append(x)
    return basis


def matmul(a, b, q: int, inner: int | None = None):
    """Product of an r x k and a k x c matrix given as row lists."""
    if not a:
        return []
    k = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % q for j in range(cols)] for i in range(len(a))]


def identity(d: int) -> list[list[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def _matrix_rank(m, q: int) -> int:
    return rank(m, q) if m and m[0] else 0


# --- representations ---------------------------------------------------

@dataclass(frozen=True)
class FqRep:
    """A representation of C_n over F_q."""

    n: int
    q: int
    dims: tuple[int, ...]
    arrows: tuple

    def __post_init__(self):
        if len(self.dims) != self.n or len(self.arrows) != self.n:
            raise ValueError("need one dimension and one arrow per vertex")
        for i in range(1, self.n + 1):
            m = self.arrows[i - 1]
            rows, cols = self.dims[vertex(i - 1, self.n) - 1], self.dims[i - 1]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"arrow a_{i} must be {rows} x {cols}")

    def dim(self, i: int) -> int:
        return self.dims[vertex(i, self.n) - 1]

    def arrow(self, i: int):
        """Matrix of a_i: i -> i-1."""
        return self.arrows[vertex(i, self.n) - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def path(self, i: int, length: int):
        """Matrix of a_{i+1} a_{i+2} ... a_{i+length}: V_{i+length} -> V_i."""
        m = identity(self.dim(i))
        for k in range(1, length + 1):
            m = matmul(m, self.arrow(i + k), self.q, inner=self.dim(i + k - 1))
            if not m or not m[0]:
                m = zeros(self.dim(i), self.dim(i + k))
        return m

    def direct_sum(self, other: "FqRep") -> "FqRep":
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("rank or field mismatch")
        arrows = []
        for i in range(1, self.n + 1):
            a, b = self.arrow(i), other.arrow(i)
            ca, cb = self.dim(i), other.dim(i)
            rows = [list(r) + [0] * cb for r in a] + [[0] * ca + list(r) for r in b]
            arrows.append(tuple(tuple(r) for r in rows))
        dims = tuple(x + y for x, y in zip(self.dims, other.dims))
        return FqRep(self.n, self.q, dims, tuple(arrows))

    def change_basis(self, mats) -> "FqRep":
        """Conjugate by invertible g_i at each vertex: a_i -> g_{i-1} a_i g_i^{-1}."""
        invs = [_inverse(g, self.q) for g in mats]
        arrows = []
        for i in range(1, self.n + 1):
            t = vertex(i - 1, self.n) - 1
            m = matmul(mats[t], self.arrow(i), self.q, inner=self.dim(i - 1))
            if not m or not m[0]:
                m = zeros(self.dim(i - 1), self.dim(i))
            else:
                m = matmul(m, invs[i - 1], self.q, inner=self.dim(i))
            arrows.append(tuple(tuple(r) for r in m))
        return FqRep(self.n, self.q, self.dims, tuple(arrows))


def _inverse(g, q: int):
    d = len(g)
    red, piv = rref([list(r) + e for r, e in zip(g, identity(d))], q)
    if piv[:d] != list(range(d)):
        raise ValueError("matrix is singular")
    return [r[d:] for r in red]


def _freeze(rows, r: int, c: int):
    if not rows:
        return tuple(tuple([0] * c) for _ in range(r))
    return tuple(tuple(x) for x in rows)


def rep_from_multipartition(lam, q: int) -> FqRep:
    """Block normal form of M_lam over F_q."""
    lam = MultiPartition(lam)
    _check_field(q)
    if lam.total_dim > DIM_BOUND:
        raise BoundExceeded(f"total dimension {lam.total_dim} exceeds bound {DIM_BOUND}", item=lam)
    n = lam.n
    dims = [0] * n
    chains = []
    for (s, m), mult in sorted(lam.indecomposables.items()):
        for _ in range(mult):
            chain = []
            for k in range(m):
                v = vertex(s + k, n) - 1
                chain.append((v, dims[v]))
                dims[v] += 1
            chains.append(chain)
    arrows = [zeros(dims[vertex(i - 1, n) - 1], dims[i - 1]) for i in range(1, n + 1)]
    for chain in chains:
        for k in range(1, len(chain)):
            (src, col), (_, row) = chain[k], chain[k - 1]
            arrows[src][row][col] = 1
    return FqRep(n, q, tuple(dims), tuple(_freeze(a, dims[vertex(i - 1, n) - 1], dims[i - 1])
                                          for i, a in enumerate(arrows, start=1)))


def iso_type(rep: FqRep) -> MultiPartition:
    """Recover the multipartition from the ranks of all path compositions."""
    n, total = rep.n, rep.total_dim
    ranks: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for l in range(total + 2):
            ranks[(i, l)] = _matrix_rank(rep.path(i, l), rep.q) if rep.dim(i) and rep.dim(i + l) else 0
        if ranks[(i, total)]:
            raise ValueError("representation is not nilpotent")

    def g(i, l):
        # indecomposables of length >= l+1 whose top lies at vertex i+l
        i = vertex(i, n)
        return ranks[(i, l)] - ranks[(i, l + 1)]

    counts = {}
    for t in range(1, n + 1):
        for length in range(1, total + 1):
            c = g(t - length + 1, length - 1) - g(t - length, length)
            if c < 0:
                raise ValueError("inconsistent path ranks")
            if c:
                counts[(vertex(t - length + 1, n), length)] = c
    mp = MultiPartition.from_indecomposables(counts, n)
    assert mp.total_dim == total
    return mp


def random_rep(lam, q: int, rng) -> FqRep:
    """M_lam in a random basis."""
    rep = rep_from_multipartition(lam, q)
    mats = [random_invertible(d, q, rng) for d in rep.dims]
    return rep.change_basis(mats)


def random_invertible(d: int, q: int, rng):
    while True:
        g = [[rng.randrange(q) for _ in range(d)] for _ in range(d)]
        if rank(g, q) == d or d == 0:
            return g


# --- subspaces and submodules -------------------------------------------

def subspaces(d: int, k: int, q: int):
    """All k-dimensional subspaces of F_q^d as RREF bases (row lists) with pivots."""
    if k == 0:
        yield [], []
        return
    for pivots in itertools.combinations(range(d), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            yield rows, list(pivots)


def _in_span(w, basis, pivots, q: int) -> bool:
    w = list(w)
    for b, p in zip(basis, pivots):
        f = w[p]
        if f:
            w = [(x - f * y) % q for x, y in zip(w, b)]
    return not any(w)


def _column(m, j):
    return [r[j] for r in m]


def _arrow_invariant(rep: FqRep, i: int, chosen: dict) -> bool:
    """a_i U_i subset U_{i-1}."""
    basis, _ = chosen[vertex(i, rep.n)]
    tbasis, tpiv = chosen[vertex(i - 1, rep.n)]
    a = rep.arrow(i)
    for b in basis:
        w = [sum(x * y for x, y in zip(row, b)) % rep.q for row in a]
        if not _in_span(w, tbasis, tpiv, rep.q):
            return False
    return True


def submodules(rep: FqRep, dim_vector):
    """Arrow-invariant subspace tuples with the given dimension vector.

    Yields dicts vertex -> (RREF basis, pivots).  Vertices are filled in order
    1..n and invariance a_i U_i <= U_{i-1} is checked as soon as both ends exist.
    """
    n, q = rep.n, rep.q
    dim_vector = tuple(dim_vector)
    if any(e < 0 or e > d for e, d in zip(dim_vector, rep.dims)):
        return

    def rec(i, chosen):
        if i > n:
            if _arrow_invariant(rep, 1, chosen):
                yield dict(chosen)
            return
        for sub in subspaces(rep.dim(i), dim_vector[i - 1], q):
            chosen[i] = sub
            if i == 1 or _arrow_invariant(rep, i, chosen):
                yield from rec(i + 1, chosen)
            del chosen[i]

    yield from rec(1, {})


def restrict(rep: FqRep, sub: dict) -> FqRep:
    """The subrepresentation on the chosen subspaces."""
    n, q = rep.n, rep.q
    arrows = []
    for i in range(1, n + 1):
        src, _ = sub[vertex(i, n)]
        _, tpiv = sub[vertex(i - 1, n)]
        a = rep.arrow(i)
        images = [[sum(x * y for x, y in zip(row, b)) % q for row in a] for b in src]
        m = [[images[c][p] for c in range(len(src))] for p in tpiv]
        arrows.append(_freeze(m, len(tpiv), len(src)))
    dims = tuple(len(sub[i][0]) for i in range(1, n + 1))
    return FqRep(n, q, dims, tuple(arrows))


def quotient(rep: FqRep, sub: dict) -> FqRep:
    """The quotient representation, in the basis of non-pivot coordinates."""
    n, q = rep.n, rep.q
    comp = {i: [c for c in range(rep.dim(i)) if c not in sub[i][1]] for i in range(1, n + 1)}
    arrows = []
    for i in range(1, n + 1):
        t = vertex(i - 1, n)
        tbasis, tpiv = sub[t]
        a = rep.arrow(i)
        cols = []
        for j in comp[i]:
            w = _column(a, j)
            for b, p in zip(tbasis, tpiv):
                f = w[p]
                if f:
                    w = [(x - f * y) % q for x, y in zip(w, b)]
            cols.append([w[k] for k in comp[t]])
        m = [[cols[c][r] for c in range(len(cols))] for r in range(len(comp[t]))]
        arrows.append(_freeze(m, len(comp[t]), len(comp[i])))
    dims = tuple(len(comp[i]) for i in range(1, n + 1))
    return FqRep(n, q, dims, tuple(arrows))


@lru_cache(maxsize=None)
def _tally(xi: MultiPartition, q: int, dim_vector: tuple) -> Counter:
    """Counter of (quotient type, sub type) over submodules of M_xi."""
    rep = rep_from_multipartition(xi, q)
    out: Counter = Counter()
    for sub in submodules(rep, dim_vector):
        out[(iso_type(quotient(rep, sub)), iso_type(restrict(rep, sub)))] += 1
    return out


def count_hall_number(lam, mu, xi, q: int) -> int:
    """|{U <= M_xi : U ~ M_mu, M_xi/U ~ M_lam}| over F_q."""
    lam, mu, xi = MultiPartition(lam), MultiPartition(mu), MultiPartition(xi)
    if not lam.n == mu.n == xi.n:
        raise ValueError("rank mismatch")
    _check_field(q)
    if xi.total_dim > DIM_BOUND:
        raise BoundExceeded(f"total dimension {xi.total_dim} exceeds bound {DIM_BOUND}",
                            item=(lam, mu, xi))
    if tuple(a + b for a, b in zip(lam.dim_vector, mu.dim_vector)) != xi.dim_vector:
        return 0
    return _tally(xi, q, mu.dim_vector)[(lam, mu)]


def submodule_type_counts(xi, q: int) -> Counter:
    """Counter of (quotient type, sub type) over all submodules of M_xi."""
    xi = MultiPartition(xi)
    out: Counter = Counter()
    for e in itertools.product(*(range(d + 1) for d in xi.dim_vector)):
        out.update(_tally(xi, q, e))
    return out


# --- homomorphisms ------------------------------------------------------

def hom_basis(a: FqRep, b: FqRep) -> list[tuple]:
    """Basis of Hom(a, b): tuples of matrices f_i (d_i(b) x d_i(a)) commuting with arrows."""
    if (a.n, a.q) != (b.n, b.q):
        raise ValueError("rank or field mismatch")
    n, q = a.n, a.q
    offsets, width = [], 0
    for i in range(1, n + 1):
        offsets.append(width)
        width += b.dim(i) * a.dim(i)

    def var(i, r, c):
        i = vertex(i, n)
        return offsets[i - 1] + r * a.dim(i) + c

    eqs = []
    for i in range(1, n + 1):
        # b.a_i f_i = f_{i-1} a.a_i, entry (r, c): r in V_{i-1}(b), c in V_i(a)
        ab, aa = b.arrow(i), a.arrow(i)
        for r in range(b.dim(i - 1)):
            for c in range(a.dim(i)):
                row = [0] * width
                for k in range(b.dim(i)):
                    if ab[r][k]:
                        row[var(i, k, c)] += ab[r][k]
                for k in range(a.dim(i - 1)):
                    if aa[k][c]:
                        row[var(i - 1, r, k)] -= aa[k][c]
                eqs.append([x % q for x in row])
    out = []
    for x in nullspace(eqs, width, q):
        maps = []
        for i in range(1, n + 1):
            o, rows, cols = offsets[i - 1], b.dim(i), a.dim(i)
            maps.append(tuple(tuple(x[o + r * cols + c] for c in range(cols)) for r in range(rows)))
        out.append(tuple(maps))
    return out


def _combinations(basis: list[tuple], q: int):
    if not basis:
        yield None
        return
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        yield tuple(
            tuple(tuple(sum(c * f[i][r][k] for c, f in zip(coeffs, basis)) % q
                        for k in range(len(basis[0][i][r])))
                  for r in range(len(basis[0][i])))
            for i in range(len(basis[0])))


def _all_homs(a: FqRep, b: FqRep):
    basis = hom_basis(a, b)
    if not basis:
        yield tuple(tuple(tuple([0] * a.dims[i]) for _ in range(b.dims[i])) for i in range(a.n))
        return
    yield from _combinations(basis, a.q)


def _injective(f, src: FqRep) -> bool:
    return all(_matrix_rank(f[i], src.q) == src.dims[i] for i in range(src.n) if src.dims[i])


def _surjective(f, tgt: FqRep) -> bool:
    return all(_matrix_rank(f[i], tgt.q) == tgt.dims[i] for i in range(tgt.n) if tgt.dims[i])


def count_injections(mu, xi, q: int) -> int:
    """|Inj(M_mu, M_xi)| by enumerating Hom."""
    a, b = rep_from_multipartition(mu, q), rep_from_multipartition(xi, q)
    return sum(1 for f in _all_homs(a, b) if _injective(f, a))


def _graded_subspaces(dims: tuple, q: int):
    """All graded subspaces as per-vertex (RREF rows, dimension)."""
    per_vertex = [[(rows, k) for k in range(d + 1) for rows, _ in subspaces(d, k, q)] for d in dims]
    return itertools.product(*per_vertex)


def _moebius(ks, q: int) -> int:
    out = 1
    for k in ks:
        out *= (-1) ** k * q ** (k * (k - 1) // 2)
    return out


def count_injective(basis: list[tuple], src_dims: tuple, q: int) -> int:
    """#{f in span(basis) : f injective at every vertex}.

    Moebius inversion over graded subspaces W of the source:
    #injective = sum_W mu(0, W) #{f : f(W) = 0}, mu(0, W) = prod (-1)^k q^{k(k-1)/2}.
    """
    total = 0
    for choice in _graded_subspaces(src_dims, q):
        eqs = []
        for i, (rows, _) in enumerate(choice):
            for w in rows:
                for r in range(len(basis[0][i]) if basis else 0):
                    eqs.append([sum(f[i][r][c] * w[c] for c in range(src_dims[i])) % q for f in basis])
        free = len(basis) - (rank(eqs, q) if eqs else 0)
        total += _moebius([k for _, k in choice], q) * q**free
    return total


def count_surjective(basis: list[tuple], src_dims: tuple, tgt_dims: tuple, q: int) -> int:
    """#{g in span(basis) : g surjective at every vertex}.

    Moebius inversion over graded subspaces W of the target:
    #surjective = sum_W mu(W, V) #{g : im g <= W}, mu(W, V) by codimension.
    """
    total = 0
    for choice in _graded_subspaces(tgt_dims, q):
        eqs = []
        for i, (rows, k) in enumerate(choice):
            if k == tgt_dims[i]:
                continue
            annihilator = nullspace(rows, tgt_dims[i], q) if rows else identity(tgt_dims[i])
            for a in annihilator:
                for c in range(src_dims[i]):
                    eqs.append([sum(a[r] * g[i][r][c] for r in range(tgt_dims[i])) % q for g in basis])
        free = len(basis) - (rank(eqs, q) if eqs else 0)
        total += _moebius([d - k for d, (_, k) in zip(tgt_dims, choice)], q) * q**free
    return total


def count_automorphisms(lam, q: int) -> int:
    """|Aut M_lam|: injective endomorphisms, counted by Moebius inversion."""
    lam = MultiPartition(lam)
    _check_field(q)
    if lam.total_dim > AUT_BOUND:
        raise BoundExceeded(f"total dimension {lam.total_dim} exceeds automorphism bound {AUT_BOUND}",
                            item=lam)
    rep = rep_from_multipartition(lam, q)
    total = count_injective(hom_basis(rep, rep), rep.dims, q)
    assert total > 0
    return total


def _killing_subspace(outer, basis: list[tuple], q: int, outer_first: bool) -> list[tuple]:
    """Basis of {h in span(basis) : h o outer = 0} (outer_first) or {outer o h = 0}."""
    if not basis:
        return []
    eqs = []
    for i in range(len(outer)):
        o = outer[i]
        rows_h = len(basis[0][i])
        cols_h = len(basis[0][i][0]) if rows_h else 0
        if outer_first:
            # (h o outer)[r][c] = sum_k h[r][k] outer[k][c]
            cols_o = len(o[0]) if o else 0
            for r in range(rows_h):
                for c in range(cols_o):
                    eqs.append([sum(h[i][r][k] * o[k][c] for k in range(cols_h)) % q for h in basis])
        else:
            # (outer o h)[r][c] = sum_k outer[r][k] h[k][c]
            for r in range(len(o)):
                for c in range(cols_h):
                    eqs.append([sum(o[r][k] * h[i][k][c] for k in range(rows_h)) % q for h in basis])
    kernel = nullspace(eqs, len(basis), q) if eqs else identity(len(basis))
    return [tuple(tuple(tuple(sum(cf * h[i][r][c] for cf, h in zip(vec, basis)) % q
                              for c in range(len(basis[0][i][r])))
                        for r in range(len(basis[0][i])))
                  for i in range(len(outer)))
            for vec in kernel]


def count_exact_sequences(lam, mu, xi, q: int) -> int:
    """E = #{(f, g) : 0 -> M_mu -f-> M_xi -g-> M_lam -> 0 exact}.

    The smaller of Hom(M_mu, M_xi) and Hom(M_xi, M_lam) is enumerated; for each
    injective f (resp. surjective g) the maps on the other side composing to
    zero are counted by Moebius inversion.  Matching dimension vectors make
    exactness in the middle automatic.
    """
    lam, mu, xi = MultiPartition(lam), MultiPartition(mu), MultiPartition(xi)
    if tuple(a + b for a, b in zip(lam.dim_vector, mu.dim_vector)) != xi.dim_vector:
        return 0
    m, nn, x = (rep_from_multipartition(t, q) for t in (lam, mu, xi))
    f_basis, g_basis = hom_basis(nn, x), hom_basis(x, m)
    total = 0
    if len(f_basis) <= len(g_basis):
        for f in _all_homs(nn, x):
            if _injective(f, nn):
                inner = _killing_subspace(f, g_basis, q, outer_first=True)
                total += count_surjective(inner, x.dims, m.dims, q) if inner else int(m.total_dim == 0)
    else:
        for g in _all_homs(x, m):
            if _surjective(g, m):
                inner = _killing_subspace(g, f_basis, q, outer_first=False)
                total += count_injective(inner, nn.dims, q) if inner else int(nn.total_dim == 0)
    return total


# --- interpolation ------------------------------------------------------

def primes_from(start: int = 2):
    p = start
    while True:
        if is_prime(p):
            yield p
        p += 1


def _lagrange(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial."""
    coeffs = [Fraction(0)] * len(points)
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = 1
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xm * basis[k + 1]
            denom *= xj - xm
        for k, b in enumerate(basis):
            coeffs[k] += yj * b / denom
    return coeffs


def degree_bound(lam, mu, xi) -> int:
    """Number of sample points minus one used for interpolation.

    floor(guo / 2) for n = 1; guo - <lam, mu> for n >= 2, where the halved
    bound is false (see hall_cyclic.hall_degree_bound).
    """
    from .hall_cyclic import hall_degree_bound

    return max(hall_degree_bound(lam, mu, xi), 0)


def _cache_dir() -> Path:
    d = _cache_dir_override or os.environ.get(CACHE_ENV)
    return Path(d) if d else Path.home() / ".cache" / "ringelhall"


def _cache_file() -> Path:
    return _cache_dir() / "hall_polynomials.json"


def _cache_key(lam, mu, xi) -> str:
    return json.dumps([lam.n, lam.to_json(), mu.to_json(), xi.to_json()], separators=(",", ":"))


def load_cache() -> dict:
    path = _cache_file()
    if not path.exists():
        return {}
    with path.open() as fh:
        return json.load(fh)


def _store(key: str, poly: IntPoly) -> None:
    data = load_cache()
    data[key] = poly.to_json()
    path = _cache_file()
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh, sort_keys=True, indent=0)
    os.replace(tmp, path)


def interpolate_hall_polynomial_n(lam, mu, xi, use_cache: bool = True) -> IntPoly:
    """The Hall polynomial F^xi_{lam,mu}(T) by interpolation over primes."""
    lam, mu, xi = MultiPartition(lam), MultiPartition(mu), MultiPartition(xi)
    if not lam.n == mu.n == xi.n:
        raise ValueError("rank mismatch")
    if tuple(a + b for a, b in zip(lam.dim_vector, mu.dim_vector)) != xi.dim_vector:
        return IntPoly()
    if xi.total_dim > DIM_BOUND:
        raise BoundExceeded(f"total dimension {xi.total_dim} exceeds bound {DIM_BOUND}",
                            item=(lam, mu, xi))
    key = _cache_key(lam, mu, xi)
    if use_cache:
        cached = load_cache().get(key)
        if cached is not None:
            return IntPoly.from_json(cached)
    deg = degree_bound(lam, mu, xi)
    gen = primes_from()
    primes = [next(gen) for _ in range(deg + 2)]
    if primes[-1] > FIELD_BOUND:
        raise BoundExceeded(
            f"interpolating F^{xi}_{lam},{mu} needs primes up to {primes[-1]} > field bound {FIELD_BOUND}",
            item=(lam, mu, xi))
    sample, held_out = primes[:-1], primes[-1]
    coeffs = _lagrange([(p, count_hall_number(lam, mu, xi, p)) for p in sample])
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError(f"non-integral interpolant for F^{xi}_{lam},{mu}: {coeffs}")
    poly = IntPoly({k: int(c) for k, c in enumerate(coeffs)})
    observed = count_hall_number(lam, mu, xi, held_out)
    if poly(held_out) != observed:
        raise ArithmeticError(
            f"held-out check failed for F^{xi}_{lam},{mu} at q={held_out}: {poly(held_out)} != {observed}")
    if use_cache:
        _store(key, poly)
    return poly


def warm_cache(n: int, max_dim: int) -> int:
    """Interpolate and cache every Hall polynomial with total dimension <= max_dim."""
    from .partitions import multipartitions_of_size

    done = 0
    for d in range(1, max_dim + 1):
        for xi in multipartitions_of_size(n, d):
            for (lam, mu) in submodule_type_counts(xi, 2):
                interpolate_hall_polynomial_n(lam, mu, xi)
                done += 1
    return done
