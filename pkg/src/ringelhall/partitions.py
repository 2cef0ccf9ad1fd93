"""Partitions, multipartitions and the statistics attached to them.

A ``MultiPartition`` of rank n indexes an isomorphism class of nilpotent
representations of the cyclic quiver with vertices 1..n and arrows
a_i: i -> i-1.  Component i (1-based) lists the lengths of the indecomposable
summands M(i; l), whose socle is the simple at vertex i; M(i; l) occupies the
vertices i, i+1, ..., i+l-1 (mod n), with its top at i+l-1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial

from .errors import BoundExceeded
from .exact_arith import IntPoly, LaurentPoly, RationalFunc, phi

PARTITION_BOUND = 30


class Partition(tuple):
    """A partition, stored as its weakly decreasing tuple of positive parts.

    The constructor accepts any iterable of non-negative integers; zeros are
    dropped and the parts sorted, since a partition is a multiset of parts.
    """

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        if isinstance(parts, int):
            parts = (parts,)
        ps = []
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int):
                raise TypeError(f"partition parts must be integers, got {p!r}")
            if p < 0:
                raise ValueError(f"negative part {p}")
            if p:
                ps.append(p)
        ps.sort(reverse=True)
        return super().__new__(cls, ps)

    @cached_property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self).items()))

    def m(self, r: int) -> int:
        return self.multiplicities.get(r, 0)

    @cached_property
    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p >= i) for i in range(1, self[0] + 1))

    @cached_property
    def n(self) -> int:
        return sum(i * p for i, p in enumerate(self))

    @cached_property
    def z(self) -> int:
        out = 1
        for r, m in self.multiplicities.items():
            out *= factorial(m) * r ** m
        return out

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def to_json(self) -> list:
        return list(self)


def conjugate(lam) -> Partition:
    return Partition(lam).conjugate


def dominance_leq(lam, mu) -> bool:
    """True iff lam <= mu in dominance order; the weights must agree."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.weight != mu.weight:
        raise ValueError(f"dominance compares equal weights only: {lam} vs {mu}")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def dominance_lt(lam, mu) -> bool:
    return Partition(lam) != Partition(mu) and dominance_leq(lam, mu)


@dataclass(frozen=True)
class PartitionStats:
    n_stat: int
    z_stat: int
    z_t: RationalFunc
    b_t: IntPoly
    length: int
    weight: int
    multiplicities: dict


def z_t(lam) -> RationalFunc:
    """z_lambda(t) = z_lambda / prod_i (1 - t^{lambda_i})."""
    lam = Partition(lam)
    den = IntPoly({0: 1})
    for p in lam:
        den = den * IntPoly({0: 1, p: -1})
    return RationalFunc(lam.z, den)


@lru_cache(maxsize=None)
def b_t(lam) -> IntPoly:
    """b_lambda(t) = prod_r phi_{m_r}(t)."""
    out = IntPoly({0: 1})
    for m in Partition(lam).multiplicities.values():
        out = out * phi(m)
    return out


def stats(lam) -> PartitionStats:
    lam = Partition(lam)
    return PartitionStats(
        n_stat=lam.n,
        z_stat=lam.z,
        z_t=z_t(lam),
        b_t=b_t(lam),
        length=len(lam),
        weight=lam.weight,
        multiplicities=dict(lam.multiplicities),
    )


def hom_dim(lam, mu) -> int:
    """d(lam, mu) = sum_{i,j} min(lam_i, mu_j)."""
    return sum(min(a, b) for a in Partition(lam) for b in Partition(mu))


@lru_cache(maxsize=None)
def aut_poly(lam) -> IntPoly:
    """a_lambda(T) = T^{2n(lambda)+|lambda|} b_lambda(T^{-1})."""
    lam = Partition(lam)
    out = b_t(lam).substitute(-1).shift(2 * lam.n + lam.weight)
    assert out.is_polynomial() and out.leading_coeff == 1
    return IntPoly(dict(out.items()))


def union_and_sum(lam, mu) -> tuple[Partition, Partition]:
    lam, mu = Partition(lam), Partition(mu)
    union = Partition(tuple(lam) + tuple(mu))
    k = max(len(lam), len(mu))
    total = Partition(
        (lam[i] if i < len(lam) else 0) + (mu[i] if i < len(mu) else 0) for i in range(k)
    )
    a, b = lam.conjugate, mu.conjugate
    k = max(len(a), len(b))
    assert union.conjugate == Partition(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(k)
    )
    return union, total


@lru_cache(maxsize=None)
def _partitions(d: int, cap: int) -> tuple:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, cap), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate(d: int) -> tuple:
    return tuple(Partition(p) for p in _partitions(d, d))


def enumerate_partitions(d: int, bound: int | None = None) -> list[Partition]:
    """All partitions of d in decreasing lexicographic order."""
    bound = PARTITION_BOUND if bound is None else bound
    if d < 0:
        raise ValueError("weight must be non-negative")
    if d > bound:
        raise BoundExceeded(f"partition weight {d} exceeds bound {bound}", item=d)
    return list(_enumerate(d))


# --- cyclic quiver ----------------------------------------------------

def vertex(i: int, n: int) -> int:
    """Reduce an integer to a vertex label in 1..n."""
    return (i - 1) % n + 1


def indec_dim_vector(i: int, l: int, n: int) -> tuple[int, ...]:
    """Dimension vector of M(i; l)."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range 1..{n}")
    if l < 1:
        raise ValueError("length must be positive")
    d = [0] * n
    for k in range(l):
        d[(i - 1 + k) % n] += 1
    return tuple(d)


class MultiPartition(tuple):
    """An n-tuple of partitions; component i (1-based) lists lengths of M(i; l)."""

    def __new__(cls, components):
        if isinstance(components, MultiPartition):
            return components
        comps = tuple(Partition(c) for c in components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        return super().__new__(cls, comps)

    @property
    def n(self) -> int:
        return len(self)

    def component(self, i: int) -> Partition:
        if not 1 <= i <= len(self):
            raise IndexError(f"vertex {i} out of range 1..{len(self)}")
        return self[i - 1]

    @cached_property
    def indecomposables(self) -> dict[tuple[int, int], int]:
        """Multiplicity of each M(i; l), keyed by (i, l)."""
        out: dict[tuple[int, int], int] = {}
        for i, lam in enumerate(self, start=1):
            for l, m in lam.multiplicities.items():
                out[(i, l)] = m
        return out

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        d = [0] * len(self)
        for (i, l), m in self.indecomposables.items():
            for k in range(l):
                d[(i - 1 + k) % len(self)] += m
        return tuple(d)

    @property
    def total_dim(self) -> int:
        return sum(p.weight for p in self)

    @property
    def size(self) -> int:
        return self.total_dim

    def is_zero(self) -> bool:
        return all(not p for p in self)

    def union(self, other: "MultiPartition") -> "MultiPartition":
        if len(other) != len(self):
            raise ValueError("rank mismatch")
        return MultiPartition(Partition(tuple(a) + tuple(b)) for a, b in zip(self, other))

    @classmethod
    def zero(cls, n: int) -> "MultiPartition":
        return cls(((),) * n)

    @classmethod
    def simple(cls, i: int, n: int) -> "MultiPartition":
        return cls.indecomposable(i, 1, n)

    @classmethod
    def indecomposable(cls, i: int, l: int, n: int) -> "MultiPartition":
        comps = [()] * n
        comps[i - 1] = (l,)
        return cls(comps)

    @classmethod
    def from_indecomposables(cls, counts, n: int) -> "MultiPartition":
        comps: list[list[int]] = [[] for _ in range(n)]
        for (i, l), m in dict(counts).items():
            comps[i - 1].extend([l] * m)
        return cls(comps)

    @cached_property
    def radical_layers(self) -> tuple[tuple[int, ...], ...]:
        """Dimension vectors of rad^{k-1}M / rad^k M, k = 1 (top) upwards."""
        n = len(self)
        depth = max((l for (_, l) in self.indecomposables), default=0)
        layers = [[0] * n for _ in range(depth)]
        for (i, l), m in self.indecomposables.items():
            top = i + l - 1
            for k in range(1, l + 1):
                layers[k - 1][(top - k) % n] += m
        return tuple(tuple(x) for x in layers)

    @cached_property
    def radical_weight(self) -> int:
        """sum_{k>=1} dim rad^k M; strictly decreases under proper degeneration."""
        return sum(max(l - k, 0) * m for (_, l), m in self.indecomposables.items()
                   for k in range(1, l))

    def __str__(self):
        return "(" + ";".join(",".join(map(str, p)) for p in self) + ")"

    def __repr__(self):
        return f"MultiPartition({tuple(tuple(p) for p in self)!r})"

    def to_json(self) -> list:
        return [list(p) for p in self]


def _mp(x, n: int | None = None) -> MultiPartition:
    mp = MultiPartition(x)
    if n is not None and mp.n != n:
        raise ValueError(f"rank mismatch: expected {n}, got {mp.n}")
    return mp


def _guo_count(i: int, l: int, j: int, m: int, n: int) -> int:
    return sum(1 for r in range(max(0, l - m), l) if (r - (j - i)) % n == 0)


def hom_dim_n(lam, mu) -> int:
    """dim Hom(M_lam, M_mu) over the cyclic quiver."""
    lam, mu = MultiPartition(lam), MultiPartition(mu)
    if lam.n != mu.n:
        raise ValueError(f"rank mismatch: {lam.n} vs {mu.n}")
    n = lam.n
    total = 0
    for (i, l), a in lam.indecomposables.items():
        for (j, m), b in mu.indecomposables.items():
            total += a * b * _guo_count(i, l, j, m, n)
    return total


@lru_cache(maxsize=None)
def aut_poly_n(lam) -> IntPoly:
    """a_lam(T) = T^{h_{lam,lam}} prod_{(i;l)} phi_{m_(i;l)}(T^{-1})."""
    lam = MultiPartition(lam)
    out = LaurentPoly.monomial(hom_dim_n(lam, lam))
    for m in lam.indecomposables.values():
        out = out * phi(m).substitute(-1)
    assert out.is_polynomial() and out.leading_coeff == 1
    return IntPoly(dict(out.items()))


def periodicity(lam) -> str:
    """'completely_periodic', 'aperiodic' or 'neither'."""
    lam = MultiPartition(lam)
    if all(p == lam[0] for p in lam):
        return "completely_periodic"
    sizes = {r for p in lam for r in p}
    if all(any(p.m(r) == 0 for p in lam) for r in sizes):
        return "aperiodic"
    return "neither"


@lru_cache(maxsize=None)
def _indec_types(n: int, max_len: int) -> tuple:
    return tuple((i, l) for l in range(1, max_len + 1) for i in range(1, n + 1))


@lru_cache(maxsize=None)
def multipartitions_of_dim(dvec: tuple[int, ...]) -> tuple[MultiPartition, ...]:
    """All multipartitions with the given dimension vector, in a fixed order."""
    dvec = tuple(dvec)
    n = len(dvec)
    if any(x < 0 for x in dvec):
        return ()
    types = _indec_types(n, sum(dvec))
    vecs = [indec_dim_vector(i, l, n) for i, l in types]
    found = []

    def rec(idx, remaining, chosen):
        if not any(remaining):
            found.append(MultiPartition.from_indecomposables(Counter(chosen), n))
            return
        if idx == len(types):
            return
        vec = vecs[idx]
        rec(idx + 1, remaining, chosen)
        k = 0
        rem = remaining
        while True:
            rem = tuple(a - b for a, b in zip(rem, vec))
            if min(rem) < 0:
                break
            k += 1
            rec(idx + 1, rem, chosen + [types[idx]] * k)

    rec(0, dvec, [])
    found = sorted(set(found), key=lambda mp: tuple(tuple(p) for p in mp), reverse=True)
    return tuple(found)


def multipartitions_of_size(n: int, d: int) -> list[MultiPartition]:
    """All rank-n multipartitions of total dimension d."""
    out: list[MultiPartition] = []

    def rec(i, remaining, acc):
        if i == n - 1:
            for p in enumerate_partitions(remaining):
                out.append(MultiPartition(acc + [p]))
            return
        for w in range(remaining + 1):
            for p in enumerate_partitions(w):
                rec(i + 1, remaining - w, acc + [p])

    rec(0, d, [])
    return out
