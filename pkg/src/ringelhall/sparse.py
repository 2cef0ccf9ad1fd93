"""Sparse linear combinations with coefficients in Q(v)."""

from __future__ import annotations

from collections.abc import Mapping

from .exact_arith import LaurentPoly, RationalFunc, rf

_SCALARS = (int, RationalFunc, LaurentPoly)


def add_into(acc: dict, key, coeff) -> None:
    if not coeff:
        return
    s = acc.get(key)
    s = coeff if s is None else s + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def is_scalar(x) -> bool:
    from fractions import Fraction

    return isinstance(x, _SCALARS + (Fraction,))


class SparseElement:
    """Immutable map key -> nonzero coefficient, with vector-space operations.

    Subclasses set ``_normalize_key`` and may override ``__mul__`` for a ring
    product; scalar multiplication is handled here.
    """

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        for key, c in (terms or {}).items():
            add_into(clean, self._normalize_key(key), rf(c))
        self.terms = clean

    @staticmethod
    def _normalize_key(key):
        return key

    @classmethod
    def _raw(cls, terms: dict):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._init_extra_from(None)
        return obj

    def _init_extra_from(self, other) -> None:
        """Hook for subclasses carrying extra fields (e.g. the rank)."""

    def _like(self, terms: dict):
        obj = object.__new__(type(self))
        obj.terms = terms
        obj._init_extra_from(self)
        return obj

    def coeff(self, key) -> RationalFunc:
        return self.terms.get(self._normalize_key(key), rf(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        if not isinstance(other, SparseElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_into(out, k, c)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparseElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = rf(c)
        if not c:
            return self._like({})
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(rf(1) / rf(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, SparseElement):
            return type(self) is type(other) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def map_coefficients(self, fn):
        out: dict = {}
        for k, c in self.terms.items():
            add_into(out, k, fn(c))
        return self._like(out)
