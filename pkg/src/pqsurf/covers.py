"""Spherical generator systems and the branched covers of P^1 they define."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InconsistencyError, ResourceCapError, ValidationError
from .permgroup import CosetSpace, FiniteGroup, Permutation, Subgroup

DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class SphericalSystem:
    """Elements ``g_1, ..., g_r`` (as indices into ``group``) that generate
    the group and multiply to the identity."""

    group: FiniteGroup
    elements: tuple[int, ...]

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(self.group.element_order(g) for g in self.elements)

    @property
    def perms(self) -> list[Permutation]:
        return [self.group.elements[g] for g in self.elements]

    @property
    def classes(self) -> tuple[int, ...]:
        return tuple(self.group.class_of(g) for g in self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def validate_system(group: FiniteGroup, elements: Sequence) -> SphericalSystem:
    """Check product-one, generation and nontriviality of every entry."""
    if not elements:
        raise ValidationError("a spherical system needs at least one element")
    idx = tuple(group.idx(g) for g in elements)
    for k, g in enumerate(idx):
        if g == 0:
            raise ValidationError(f"element {k} is the identity")
    if group.product(idx) != 0:
        raise ValidationError("product of the elements is not the identity")
    if not group.generates(idx):
        raise ValidationError("elements generate a proper subgroup")
    return SphericalSystem(group, idx)


def riemann_hurwitz_genus(order: int, signature: Sequence[int], base_genus: int = 0) -> int:
    """Genus of a Galois cover of degree ``order`` over a curve of genus
    ``base_genus`` with branching orders ``signature``."""
    two_g_minus_2 = order * (2 * base_genus - 2 + sum(1 - Fraction(1, m) for m in signature))
    if two_g_minus_2.denominator != 1 or two_g_minus_2 % 2:
        raise InconsistencyError(f"Riemann-Hurwitz gives non-integral 2g-2 = {two_g_minus_2}")
    g = int(two_g_minus_2) // 2 + 1
    if g < 0:
        raise InconsistencyError(f"negative genus {g}")
    return g


def genus_of_cover(sys: SphericalSystem) -> int:
    return riemann_hurwitz_genus(sys.group.order, sys.signature)


@dataclass(frozen=True)
class BranchDatum:
    class_index: int  # conjugacy class in the subgroup
    rep: Permutation
    order: int
    count: int


@dataclass(frozen=True)
class CoverDescription:
    """The cover ``C -> C/H`` induced by a system and a subgroup ``H``."""

    subgroup: Subgroup
    total_genus: int
    quotient_genus: int
    # class index in H of each branch point, grouped by the original branch
    # point and then by the cycle order on G/H
    branch_classes: tuple[int, ...]

    @property
    def branch_data(self) -> list[BranchDatum]:
        H = self.subgroup
        counts = Counter(self.branch_classes)
        return [BranchDatum(c, H.elements[H.classes[c].rep], H.classes[c].order, counts[c])
                for c in sorted(counts)]

    def class_reps(self) -> list[int]:
        """One representative per branch point, sorted by class, suitable
        as input for :func:`enumerate_systems` over ``H``."""
        H = self.subgroup
        return [H.classes[c].rep for c in sorted(self.branch_classes)]


def induced_quotient_monodromy(sys: SphericalSystem, H: Subgroup) -> CoverDescription:
    """Branching of ``C -> C/H`` read off from the action on ``G/H``.

    Each cycle of ``g_i`` on the right cosets ``H r`` has some length ``l``;
    ``r g_i^l r^-1`` lies in ``H`` and its ``H``-class is the local monodromy
    of ``C -> C/H`` at the corresponding point.
    """
    G = sys.group
    space = CosetSpace(G, H)
    ramification = 0
    branch = []
    for g in sys.elements:
        perm = space.permutation(g)
        seen = [False] * space.index
        for c in range(space.index):
            if seen[c]:
                continue
            length = 0
            d = c
            while not seen[d]:
                seen[d] = True
                d = perm.images[d]
                length += 1
            ramification += length - 1
            if length < G.element_order(g):
                r = space.reps[c]
                local = G.mul(G.mul(r, G.power(g, length)), G.inv(r))
                if not H.contains_index(local):
                    raise InconsistencyError("cycle stabilizer escaped the subgroup")
                branch.append(H.class_of(H.local(local)))
    two_g_minus_2 = -2 * space.index + ramification
    if two_g_minus_2 % 2:
        raise InconsistencyError("odd ramification total")
    total = genus_of_cover(sys)
    quotient = two_g_minus_2 // 2 + 1
    # Riemann-Hurwitz for C -> C/H must agree with the total genus
    signature = [H.classes[c].order for c in branch]
    if riemann_hurwitz_genus(H.order, signature, quotient) != total:
        raise InconsistencyError("induced branch data inconsistent with the total genus")
    return CoverDescription(H, total, quotient, tuple(branch))


def quotient_genus_table(sys: SphericalSystem, subgroups) -> list[tuple[str, int]]:
    """Genus of ``C/H`` for each ``(label, H)`` pair (or bare subgroup)."""
    out = []
    for item in subgroups:
        label, H = item if isinstance(item, tuple) else (f"order {item.order}", item)
        out.append((label, induced_quotient_monodromy(sys, H).quotient_genus))
    return out


def hurwitz_move(sys: SphericalSystem, i: int, inverse: bool = False) -> SphericalSystem:
    """Braid move at positions ``i, i+1`` (0-based).

    Forward: ``(g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)``;
    inverse: ``(x, y) -> (y, y^-1 x y)``.
    """
    if not 0 <= i < len(sys.elements) - 1:
        raise ValidationError(f"move index {i} out of range for {len(sys.elements)} elements")
    G = sys.group
    els = list(sys.elements)
    x, y = els[i], els[i + 1]
    if inverse:
        els[i], els[i + 1] = y, G.conj(x, G.inv(y))
    else:
        els[i], els[i + 1] = G.conj(y, x), x
    return SphericalSystem(G, tuple(els))


def conjugate_system(sys: SphericalSystem, x: int) -> SphericalSystem:
    G = sys.group
    return SphericalSystem(G, tuple(G.conj(g, x) for g in sys.elements))


def canonical_form(sys: SphericalSystem, conjugators: Sequence[int] | None = None) -> tuple[int, ...]:
    """Lexicographically least index tuple over simultaneous conjugation."""
    G = sys.group
    xs = range(G.order) if conjugators is None else conjugators
    return min(tuple(G.conj(g, x) for g in sys.elements) for x in xs)


def enumerate_systems(group: FiniteGroup, class_reps: Sequence, node_cap: int = DEFAULT_NODE_CAP,
                      limit: int | None = None) -> list[SphericalSystem]:
    """All spherical systems whose ``k``-th element lies in the class of
    ``class_reps[k]``, up to simultaneous conjugation.

    The first element is pinned to its class representative, which leaves
    the centralizer of that representative as residual conjugation
    freedom; members are deduplicated by their least image under it.
    Output is sorted by that canonical tuple.  With ``limit``, the search
    stops once that many systems are found.
    """
    G = group
    if not class_reps:
        raise ValidationError("class list must be nonempty")
    classes = [G.class_of(G.idx(c)) for c in class_reps]
    if any(G.classes[c].order == 1 for c in classes):
        raise ValidationError("the identity class cannot carry a branch point")
    first = G.classes[classes[0]].rep
    cent = G.centralizer(first)
    choices = [G.classes[c].members for c in classes[1:-1]]
    last_class = classes[-1]
    r = len(classes)
    found: dict[tuple, None] = {}
    nodes = 0

    def finish(prefix_elems, prefix_prod):
        last = G.inv(prefix_prod)
        if G.class_of(last) != last_class:
            return
        elems = prefix_elems + (last,)
        if not G.generates(elems):
            return
        key = min(tuple(G.conj(g, x) for g in elems) for x in cent)
        found.setdefault(key)

    if r == 1:
        return []

    def descend(depth, elems, prod):
        nonlocal nodes
        if limit is not None and len(found) >= limit:
            return
        nodes += 1
        if nodes > node_cap:
            raise ResourceCapError(f"system enumeration exceeded {node_cap} nodes")
        if depth == len(choices):
            finish(elems, prod)
            return
        for g in choices[depth]:
            descend(depth + 1, elems + (g,), G.mul(prod, g))

    descend(0, (first,), first)
    keys = sorted(found)
    if limit is not None:
        keys = keys[:limit]
    return [SphericalSystem(G, k) for k in keys]


def enumerate_systems_by_orders(group: FiniteGroup, orders: Sequence[int], **kwargs) -> list[SphericalSystem]:
    """Systems over every choice of classes with the given element orders."""
    per_position = [[c.rep for c in group.classes if c.order == m] for m in orders]
    out = []
    for reps in itertools.product(*per_position):
        out.extend(enumerate_systems(group, list(reps), **kwargs))
    return out


def apply_automorphism(sys: SphericalSystem, phi) -> SphericalSystem:
    """Image of a system under ``phi``, a map on Permutations that restricts
    to an automorphism of the group (checked on the system only)."""
    G = sys.group
    return SphericalSystem(G, tuple(G.idx(phi(G.elements[g])) for g in sys.elements))


def automorphism_orbits(systems: Sequence[SphericalSystem], automorphisms) -> list[list[int]]:
    """Partition ``systems`` (given up to simultaneous conjugation) into
    orbits under the group generated by ``automorphisms`` and inner ones.

    Returns lists of positions into ``systems``, each sorted, ordered by
    their first member.
    """
    keys = [canonical_form(s) for s in systems]
    pos = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(systems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, s in enumerate(systems):
        for phi in automorphisms:
            j = pos.get(canonical_form(apply_automorphism(s, phi)))
            if j is None:
                raise ValidationError("automorphism maps a system outside the given list")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(systems)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())
