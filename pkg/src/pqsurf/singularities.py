"""Cyclic quotient singularities 1/n(1,a) and baskets of them.

All invariants are exact ``Fraction`` values.  Types are stored in normal
form: ``1/n(1,a)`` and ``1/n(1,a')`` with ``a a' = 1 mod n`` describe the
same singularity, and the smaller of ``a, a'`` is kept.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistencyError, ValidationError
from .permgroup import FiniteGroup, double_coset_orbits, subgroup_generated


def hj_expansion(n: int, a: int) -> tuple[int, ...]:
    """Hirzebruch-Jung continued fraction of ``n/a``.

    Returns ``(b_1, ..., b_l)`` with every ``b_i >= 2`` and
    ``n/a = b_1 - 1/(b_2 - 1/(... - 1/b_l))``.
    """
    if n < 2 or not 1 <= a < n:
        raise ValidationError(f"need 1 <= a < n with n >= 2, got n={n}, a={a}")
    if math.gcd(n, a) != 1:
        raise ValidationError(f"gcd({n}, {a}) != 1")
    out = []
    num, den = n, a
    while den:
        b = -(-num // den)
        out.append(b)
        num, den = den, b * den - num
    return tuple(out)


def hj_evaluate(bs: Iterable[int]) -> Fraction:
    """Evaluate ``b_1 - 1/(b_2 - ...)`` exactly."""
    bs = list(bs)
    value = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        value = b - 1 / value
    return value


@dataclass(frozen=True, order=True)
class CyclicQuotientType:
    """The singularity type 1/n(1,a) in normal form ``a <= a^-1 mod n``."""

    n: int
    a: int

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError(f"basket types need n >= 2, got {self.n}")
        if not 1 <= self.a < self.n or math.gcd(self.n, self.a) != 1:
            raise ValidationError(f"invalid weight a={self.a} for n={self.n}")
        if self.a > pow(self.a, -1, self.n):
            raise ValidationError(f"1/{self.n}(1,{self.a}) is not in normal form")

    @property
    def inverse_weight(self) -> int:
        return pow(self.a, -1, self.n)

    @property
    def hj(self) -> tuple[int, ...]:
        return hj_expansion(self.n, self.a)

    @property
    def is_canonical(self) -> bool:
        """A_{n-1} types 1/n(1, n-1) are exactly the canonical ones."""
        return self.a == self.n - 1

    @property
    def label(self) -> str:
        if self.is_canonical:
            return f"A{self.n - 1}"
        return f"1/{self.n}(1,{self.a})"

    def __str__(self) -> str:
        return self.label


def normalize_type(n: int, a: int) -> CyclicQuotientType:
    a %= n
    if n < 2 or math.gcd(n, a) != 1:
        raise ValidationError(f"gcd({a}, {n}) != 1")
    return CyclicQuotientType(n, min(a, pow(a, -1, n)))


@dataclass(frozen=True)
class ExceptionalChain:
    self_intersections: tuple[int, ...]
    discrepancies: tuple[Fraction, ...]

    def intersection_matrix(self) -> list[list[int]]:
        ell = len(self.self_intersections)
        return [[self.self_intersections[i] if i == j else (1 if abs(i - j) == 1 else 0)
                 for j in range(ell)] for i in range(ell)]


def solve_tridiagonal(lower, diag, upper, rhs) -> list[Fraction]:
    """Thomas algorithm over the rationals.

    ``lower[i]`` multiplies ``x[i-1]`` and ``upper[i]`` multiplies ``x[i+1]``
    in row ``i``; ``lower[0]`` and ``upper[-1]`` are ignored.
    """
    ell = len(diag)
    c = [Fraction(0)] * ell
    d = [Fraction(0)] * ell
    for i in range(ell):
        pivot = Fraction(diag[i]) - (lower[i] * c[i - 1] if i else 0)
        if pivot == 0:
            raise InconsistencyError("singular tridiagonal system")
        c[i] = Fraction(upper[i]) / pivot if i < ell - 1 else Fraction(0)
        d[i] = (Fraction(rhs[i]) - (lower[i] * d[i - 1] if i else 0)) / pivot
    x = [Fraction(0)] * ell
    for i in reversed(range(ell)):
        x[i] = d[i] - (c[i] * x[i + 1] if i < ell - 1 else 0)
    return x


def chain_data(t: CyclicQuotientType) -> ExceptionalChain:
    """Self-intersections and discrepancies of the minimal resolution.

    The discrepancies solve ``sum_j a_j (E_j . E_i) = b_i - 2``, i.e.
    adjunction ``K . E_i = b_i - 2`` with ``K = pi^* K_Y + sum a_j E_j``.
    """
    bs = t.hj
    ell = len(bs)
    disc = solve_tridiagonal([1] * ell, [-b for b in bs], [1] * ell, [b - 2 for b in bs])
    return ExceptionalChain(tuple(-b for b in bs), tuple(disc))


def k_invariant(t: CyclicQuotientType) -> Fraction:
    return -2 + Fraction(2 + t.a + t.inverse_weight, t.n) + sum(b - 2 for b in t.hj)


def e_invariant(t: CyclicQuotientType) -> Fraction:
    return len(t.hj) + 1 - Fraction(1, t.n)


def B_invariant(t: CyclicQuotientType) -> Fraction:
    return 2 * e_invariant(t) + k_invariant(t)


def D_invariant(t: CyclicQuotientType) -> Fraction:
    return Fraction(3 * sum(b - 2 for b in t.hj) + 2)


class Basket:
    """A multiset of singularity types (all with ``n >= 2``)."""

    def __init__(self, items: Mapping[CyclicQuotientType, int] | Iterable[CyclicQuotientType] = ()):
        counts = Counter(items)
        for t, m in counts.items():
            if not isinstance(t, CyclicQuotientType) or m < 0:
                raise ValidationError(f"bad basket entry {t!r}: {m}")
        self._counts = {t: m for t, m in sorted(counts.items()) if m}

    @classmethod
    def parse(cls, entries: Iterable[tuple[int, int, int]]) -> "Basket":
        """From ``(multiplicity, n, a)`` triples; weights are normalized."""
        counts: Counter = Counter()
        for mult, n, a in entries:
            counts[normalize_type(n, a)] += mult
        return cls(counts)

    def items(self):
        return self._counts.items()

    def __iter__(self):
        return iter(self._counts)

    def __getitem__(self, t: CyclicQuotientType) -> int:
        return self._counts.get(t, 0)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, Basket) and self._counts == other._counts

    def __hash__(self) -> int:
        return hash(tuple(self._counts.items()))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{m} x {t}" for t, m in self._counts.items()) + "}"

    __repr__ = __str__

    def as_list(self) -> list[dict]:
        return [{"n": t.n, "a": t.a, "multiplicity": m, "label": t.label}
                for t, m in self._counts.items()]


@dataclass(frozen=True)
class BasketInvariants:
    k: Fraction
    e: Fraction
    B: Fraction
    D: Fraction


def basket_invariants(basket: Basket) -> BasketInvariants:
    k = sum((m * k_invariant(t) for t, m in basket.items()), Fraction(0))
    e = sum((m * e_invariant(t) for t, m in basket.items()), Fraction(0))
    D = sum((m * D_invariant(t) for t, m in basket.items()), Fraction(0))
    return BasketInvariants(k, e, 2 * e + k, D)


def local_type(G: FiniteGroup, g: int, h: int, r: int) -> tuple[int, int]:
    """``(n, a)`` at the point over ``(<g>, <h> r)`` before normalization.

    With ``t = r^-1`` the stabilizer is ``<g> ∩ t<h>t^-1``; ``gamma`` is the
    least positive exponent with ``g^gamma`` in it, ``g^gamma = t h^delta t^-1``,
    ``n = ord(g)/gamma`` and ``a = ord(g) delta / (ord(h) gamma)``.  ``n == 1``
    means the point is smooth.
    """
    t = G.inv(r)
    ti = r
    conj_powers = {}
    x = 0
    ord_h = G.element_order(h)
    for delta in range(1, ord_h + 1):
        x = G.mul(x, h)
        conj_powers.setdefault(G.mul(G.mul(t, x), ti), delta)
    ord_g = G.element_order(g)
    y = 0
    for gamma in range(1, ord_g + 1):
        y = G.mul(y, g)
        if y in conj_powers:
            delta = conj_powers[y]
            break
    n = ord_g // gamma
    if n == 1:
        return 1, 0
    a, rem = divmod(ord_g * delta, ord_h * gamma)
    if rem or math.gcd(a, n) != 1:
        raise InconsistencyError(f"bad local type n={n}, a={ord_g * delta}/{ord_h * gamma}")
    return n, a


@dataclass(frozen=True)
class BasketResult:
    basket: Basket
    singular_points: int
    smooth_orbits: int


def basket_from_elements(G: FiniteGroup, elems1, elems2) -> BasketResult:
    """Basket of ``(C1 x C2)/G`` from the branch elements of both covers.

    Only the elements' conjugacy classes matter, so the inputs need not be
    spherical systems.
    """
    elems1 = [G.idx(g) for g in elems1]
    elems2 = [G.idx(h) for h in elems2]
    cyclic: dict[int, object] = {}

    def cyc(i):
        if i not in cyclic:
            cyclic[i] = subgroup_generated(G, [i])
        return cyclic[i]

    counts: Counter = Counter()
    smooth = 0
    for g in elems1:
        for h in elems2:
            for orbit in double_coset_orbits(G, cyc(g), cyc(h)):
                n, a = local_type(G, g, h, orbit.rep)
                if n == 1:
                    smooth += 1
                else:
                    counts[normalize_type(n, a)] += 1
    basket = Basket(counts)
    return BasketResult(basket, len(basket), smooth)


def compute_basket(sys1, sys2) -> BasketResult:
    """Basket of the product-quotient surface defined by two systems."""
    if sys1.group is not sys2.group:
        raise ValidationError("systems must share the same group")
    return basket_from_elements(sys1.group, sys1.elements, sys2.elements)
