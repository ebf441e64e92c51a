"""Numerical invariants of the minimal resolution X of (C1 x C2)/G."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .covers import SphericalSystem, genus_of_cover, induced_quotient_monodromy
from .errors import InconsistencyError, ValidationError
from .permgroup import Subgroup
from .singularities import Basket, basket_from_elements, basket_invariants

GENERAL_TYPE_CAVEAT = ("positivity of (K-E)^2 is computed; that X is of general type "
                       "is assumed, not checked")


def _integral(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise InconsistencyError(f"{name} = {value} is not an integer")
    return int(value)


def _check_genera(g1: int, g2: int, order: int):
    if g1 < 2 or g2 < 2:
        raise ValidationError(f"curve genera must be at least 2, got {g1}, {g2}")
    if order < 1:
        raise ValidationError("group order must be positive")


def chern_numbers(g1: int, g2: int, order: int, basket: Basket) -> tuple[int, int]:
    """``(K^2, c_2)`` of the minimal resolution.

    ``K^2 = 8(g1-1)(g2-1)/|G| - k(B)`` and ``c_2 = 4(g1-1)(g2-1)/|G| + e(B)``.
    """
    _check_genera(g1, g2, order)
    inv = basket_invariants(basket)
    base = Fraction((g1 - 1) * (g2 - 1), order)
    return _integral(8 * base - inv.k, "K^2"), _integral(4 * base + inv.e, "c2")


def k_minus_e_squared(g1: int, g2: int, order: int, basket: Basket) -> tuple[int, bool]:
    """``(K - E)^2`` where ``E`` is the reduced exceptional divisor, and
    whether it is positive."""
    _check_genera(g1, g2, order)
    inv = basket_invariants(basket)
    value = _integral(8 * Fraction((g1 - 1) * (g2 - 1), order) - inv.k - inv.D, "(K-E)^2")
    return value, value > 0


@dataclass(frozen=True)
class HodgeDiamond:
    q: int
    pg: int
    h11: int

    def rows(self) -> list[list[int]]:
        return [[1], [self.q, self.q], [self.pg, self.h11, self.pg], [self.q, self.q], [1]]

    def __str__(self) -> str:
        rows = [" ".join(str(x) for x in r) for r in self.rows()]
        width = max(len(r) for r in rows)
        return "\n".join(r.center(width).rstrip() for r in rows)


def hodge_diamond(KX2: int, c2: int, q: int) -> HodgeDiamond:
    """Diamond from Noether's formula; raises on any violation."""
    if (KX2 + c2) % 12:
        raise InconsistencyError(f"Noether fails: K^2 + c2 = {KX2 + c2} is not divisible by 12")
    chi = (KX2 + c2) // 12
    pg = chi - 1 + q
    h11 = c2 - 2 + 4 * q - 2 * pg
    if min(q, pg, h11) < 0:
        raise InconsistencyError(f"negative Hodge number: q={q}, pg={pg}, h11={h11}")
    return HodgeDiamond(q, pg, h11)


@dataclass(frozen=True)
class SurfaceInvariants:
    g1: int
    g2: int
    group_order: int
    basket: Basket
    KX2: int
    c2: int
    chi: int
    q: int
    pg: int
    h11: int
    KminusE2: int
    singular_points: int
    pi1: str = "not checked"

    @property
    def criterion(self) -> bool:
        """``(K - E)^2 > 0``; meaningful only under the general-type assumption."""
        return self.KminusE2 > 0

    @property
    def diamond(self) -> HodgeDiamond:
        return HodgeDiamond(self.q, self.pg, self.h11)

    def numerics(self) -> tuple[int, int, int, int, int]:
        """``(K^2, c_2, p_g, h^{1,1}, (K-E)^2)``."""
        return self.KX2, self.c2, self.pg, self.h11, self.KminusE2

    def to_dict(self) -> dict:
        return {
            "g1": self.g1, "g2": self.g2, "group_order": self.group_order,
            "basket": self.basket.as_list(),
            "singular_points": self.singular_points,
            "K2": self.KX2, "c2": self.c2, "chi": self.chi,
            "q": self.q, "pg": self.pg, "h11": self.h11,
            "KminusE2": self.KminusE2,
            "criterion_positive": self.criterion,
            "caveat": GENERAL_TYPE_CAVEAT,
            "pi1": self.pi1,
        }


def surface_invariants(g1: int, g2: int, order: int, basket: Basket, q: int = 0,
                       pi1: str = "not checked") -> SurfaceInvariants:
    KX2, c2 = chern_numbers(g1, g2, order, basket)
    kme, _ = k_minus_e_squared(g1, g2, order, basket)
    d = hodge_diamond(KX2, c2, q)
    return SurfaceInvariants(g1, g2, order, basket, KX2, c2, (KX2 + c2) // 12, q, d.pg, d.h11,
                             kme, len(basket), pi1)


def surface_from_systems(sys1: SphericalSystem, sys2: SphericalSystem) -> SurfaceInvariants:
    """Invariants for two spherical systems of the same group (so ``q = 0``)."""
    if sys1.group is not sys2.group:
        raise ValidationError("systems must share the same group")
    G = sys1.group
    basket = basket_from_elements(G, sys1.elements, sys2.elements).basket
    return surface_invariants(genus_of_cover(sys1), genus_of_cover(sys2), G.order, basket)


def surface_from_subgroup(sys1: SphericalSystem, sys2: SphericalSystem, H: Subgroup) -> SurfaceInvariants:
    """Invariants of the resolution of ``(C1 x C2)/H`` where ``C_i`` is the
    cover of ``sys_i`` and ``H`` acts through its inclusion.

    Branch data of ``C_i -> C_i/H`` come from the induced monodromy; only
    their class multisets matter for the basket.  ``q`` is the sum of the
    quotient genera.
    """
    cov1 = induced_quotient_monodromy(sys1, H)
    cov2 = induced_quotient_monodromy(sys2, H)
    basket = basket_from_elements(H, cov1.class_reps(), cov2.class_reps()).basket
    return surface_invariants(cov1.total_genus, cov2.total_genus, H.order, basket,
                              cov1.quotient_genus + cov2.quotient_genus)


@dataclass
class TwistReport:
    matrix: list[list[SurfaceInvariants]]

    @property
    def entries(self) -> list[SurfaceInvariants]:
        return [x for row in self.matrix for x in row]

    @property
    def min_k_minus_e2(self) -> int:
        return min(x.KminusE2 for x in self.entries)

    @property
    def all_positive(self) -> bool:
        return all(x.criterion for x in self.entries)

    @property
    def constant(self) -> bool:
        """Whether every entry has the same numerics as every other."""
        return len({x.numerics() for x in self.entries}) == 1

    def distinct(self) -> list[tuple[tuple[int, ...], Basket, int]]:
        """``(numerics, basket, count)`` for each distinct outcome."""
        seen: dict = {}
        for x in self.entries:
            key = (x.numerics(), x.basket)
            seen[key] = seen.get(key, 0) + 1
        return [(k[0], k[1], n) for k, n in sorted(seen.items(), key=lambda kv: kv[0][0])]


def twist_report(systems1: Sequence[SphericalSystem], systems2: Sequence[SphericalSystem],
                 H: Subgroup | None = None, threads: int = 1) -> TwistReport:
    """Invariants for every ordered pair ``(s, t)`` of systems.

    With ``H`` the pair is read through the subgroup as in
    :func:`surface_from_subgroup`; otherwise the group of the systems acts.
    Entries are independent of ``threads``.
    """
    if not systems1 or not systems2:
        raise ValidationError("system lists must be nonempty")
    pairs = [(s, t) for s in systems1 for t in systems2]

    def one(pair):
        s, t = pair
        return surface_from_subgroup(s, t, H) if H is not None else surface_from_systems(s, t)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flat = list(pool.map(one, pairs))
    else:
        flat = [one(p) for p in pairs]
    n = len(systems2)
    return TwistReport([flat[k:k + n] for k in range(0, len(flat), n)])
