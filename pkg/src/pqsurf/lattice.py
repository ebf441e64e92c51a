"""Subgroups generated by at most two elements, up to conjugacy."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .permgroup import FiniteGroup, Subgroup, closure_size, subgroup_generated


def _order_histogram(H: FiniteGroup) -> Counter:
    return Counter(H.element_order(i) for i in range(H.order))


def _is_cyclic(H: FiniteGroup) -> bool:
    return any(H.element_order(i) == H.order for i in range(H.order))


def _normal_cyclic_with_cyclic_complement(H: FiniteGroup) -> tuple[int, int] | None:
    """``(m, k)`` with a normal cyclic subgroup of order ``m`` meeting a
    cyclic subgroup of order ``k = |H|/m`` trivially; largest ``m`` first."""
    best = None
    for x in range(H.order):
        m = H.element_order(x)
        if m == H.order or H.order % m or (best and best[0] >= m):
            continue
        cyc = set(H.cyclic_subgroup(x))
        if any(H.conj(x, y) not in cyc for y in H.generator_indices):
            continue
        k = H.order // m
        for y in range(H.order):
            if H.element_order(y) == k and not (set(H.cyclic_subgroup(y)) & cyc) - {0}:
                best = (m, k)
                break
    return best


def identify(H: FiniteGroup) -> str:
    """A short isomorphism-type label for the small groups met here
    (cyclic, elementary abelian, dihedral, A4, metacyclic)."""
    if getattr(H, "name", None):
        return H.name
    n = H.order
    if n == 1:
        return "C1"
    if _is_cyclic(H):
        return f"C{n}"
    hist = _order_histogram(H)
    if H.is_abelian():
        if set(hist) == {1, 2}:
            return f"C2^{n.bit_length() - 1}"
        return f"abelian of order {n}"
    if n % 2 == 0 and hist[n // 2] >= 1:
        # a cyclic subgroup of index 2 whose complement consists of involutions
        for x in range(n):
            if H.element_order(x) == n // 2:
                cyc = set(H.cyclic_subgroup(x))
                if all(H.element_order(y) == 2 for y in range(n) if y not in cyc):
                    return "S3" if n == 6 else f"D{n // 2}"
                break
    if n == 12 and hist == Counter({1: 1, 2: 3, 3: 8}):
        return "A4"
    split = _normal_cyclic_with_cyclic_complement(H)
    if split:
        return f"C{split[0]}:C{split[1]}"
    return f"group of order {n}"


@dataclass
class SubgroupClass:
    label: str
    order: int
    conjugates: int
    rep: Subgroup


def subgroup_classes(G: FiniteGroup) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups generated by at most two elements.

    Pairs ``(g, h)`` run over class representatives ``g`` and
    representatives ``h`` of the orbits of the centralizer of ``g`` acting
    on ``G`` by conjugation; that covers every pair up to simultaneous
    conjugation.  Output is sorted by (order, label, first-found).
    """
    seen: set[frozenset] = set()
    found: list[SubgroupClass] = []

    def consider(gens):
        if closure_size(G, gens, stop_above=G.order // 2) == G.order:
            key = frozenset(range(G.order))
            if key not in seen:
                seen.add(key)
                found.append(SubgroupClass(identify(G), G.order, 1, subgroup_generated(G, gens)))
            return
        H = subgroup_generated(G, gens)
        if H.key in seen:
            return
        conjugates = {frozenset(G.conj(h, x) for h in H.parent_indices) for x in range(G.order)}
        seen.update(conjugates)
        found.append(SubgroupClass(identify(H), H.order, len(conjugates), H))

    consider([])
    for cls in G.classes[1:]:
        g = cls.rep
        cent = G.centralizer(g)
        orbit_done = [False] * G.order
        for h in range(G.order):
            if orbit_done[h]:
                continue
            for x in cent:
                orbit_done[G.conj(h, x)] = True
            consider([g, h])
    order = sorted(range(len(found)), key=lambda k: (found[k].order, found[k].label, k))
    return [found[k] for k in order]
