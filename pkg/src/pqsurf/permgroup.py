"""Finite permutation groups with fully materialized element lists.

Conventions used throughout the package:

* points are 0-based;
* ``g * h`` means "apply ``g``, then ``h``", i.e. ``(g*h)[i] == h[g[i]]``;
* conjugation ``conj(g, x)`` is the product ``x * g * x**-1``.

Every group is small enough (the groups of interest have order at most a
few thousand) that elements are enumerated once and addressed by integer
index.  Index 0 is always the identity and the remaining indices follow the
breadth-first closure order, so every derived table is deterministic.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceCapError, ValidationError

DEFAULT_ORDER_CAP = 10**6
# groups up to this order get a precomputed multiplication table
TABLE_LIMIT = 2048


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(3, (0, 1, 2))``."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if a in seen or not 0 <= a < degree:
                    raise ValidationError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls._raw(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValidationError("degree mismatch in product")
        o = other.images
        return Permutation._raw(tuple(o[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    @property
    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def element_order(g: Permutation) -> int:
    """Least ``k >= 1`` with ``g**k`` the identity."""
    return g.order


@dataclass(frozen=True)
class ConjugacyClass:
    rep: int  # element index of the chosen representative
    members: tuple[int, ...]
    order: int  # common element order

    @property
    def size(self) -> int:
        return len(self.members)


class FiniteGroup:
    """A permutation group given by its complete element list.

    Build instances with :func:`group_from_generators`; the constructor
    assumes its input is already closed.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = list(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if not self.elements or not self.elements[0].is_identity():
            raise ValidationError("element list must start with the identity")
        self._table: list[list[int]] | None = None
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None
        self._classes: list[ConjugacyClass] | None = None
        self._class_of: list[int] | None = None

    # -- element addressing -------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self.index

    def idx(self, g) -> int:
        """Index of ``g``, which may be a Permutation or already an index."""
        if isinstance(g, (int, np.integer)):
            if not 0 <= g < len(self.elements):
                raise ValidationError(f"element index {g} out of range")
            return int(g)
        try:
            return self.index[g]
        except KeyError:
            raise ValidationError(f"{g!r} is not an element of the group") from None

    def perm(self, i: int) -> Permutation:
        return self.elements[i]

    @property
    def generator_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    # -- arithmetic on indices ----------------------------------------------

    def _build_table(self) -> None:
        n, d = len(self.elements), self.degree
        if d == 0:
            self._table = [[0]]
            return
        E = np.array([p.images for p in self.elements], dtype=np.int64)
        table = np.empty((n, n), dtype=np.int64)
        if d <= 15:
            w = np.array([d**k for k in range(d)], dtype=np.int64)
            codes = E @ w
            order = np.argsort(codes)
            sorted_codes = codes[order]
            for b in range(n):
                comp = E[b][E] @ w  # row a holds the code of a*b
                table[:, b] = order[np.searchsorted(sorted_codes, comp)]
        else:
            for b in range(n):
                comp = E[b][E]
                table[:, b] = [self.index[Permutation._raw(tuple(r))] for r in comp.tolist()]
        self._table = table.tolist()

    def mul(self, i: int, j: int) -> int:
        if self._table is None and len(self.elements) <= TABLE_LIMIT:
            self._build_table()
        if self._table is not None:
            return self._table[i][j]
        return self.index[self.elements[i] * self.elements[j]]

    def inv(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index[g.inverse()] for g in self.elements]
        return self._inv[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        k %= self.element_order(i)
        result = 0
        for _ in range(k):
            result = self.mul(result, i)
        return result

    def conj(self, i: int, x: int) -> int:
        """``x * g_i * x**-1``."""
        return self.mul(self.mul(x, i), self.inv(x))

    def product(self, indices: Iterable[int]) -> int:
        result = 0
        for i in indices:
            result = self.mul(result, i)
        return result

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [g.order for g in self.elements]
        return self._orders[i]

    def cyclic_subgroup(self, i: int) -> list[int]:
        """Powers ``g^0, g^1, ...`` of element ``i`` in order."""
        out = [0]
        x = i
        while x != 0:
            out.append(x)
            x = self.mul(x, i)
        return out

    # -- conjugacy -----------------------------------------------------------

    def _compute_classes(self) -> None:
        gens = self.generator_indices
        gens_inv = [self.inv(y) for y in gens]
        class_of = [-1] * self.order
        raw = []
        for start in range(self.order):
            if class_of[start] != -1:
                continue
            members = [start]
            class_of[start] = -2
            queue = deque([start])
            while queue:
                c = queue.popleft()
                for y, yi in zip(gens, gens_inv):
                    d = self.mul(self.mul(y, c), yi)
                    if class_of[d] == -1:
                        class_of[d] = -2
                        members.append(d)
                        queue.append(d)
            rep = min(members, key=lambda m: self.elements[m].images)
            for m in members:
                class_of[m] = len(raw)
            raw.append(ConjugacyClass(rep, tuple(sorted(members)), self.element_order(start)))
        order = sorted(range(len(raw)), key=lambda k: (raw[k].order, raw[k].size,
                                                      self.elements[raw[k].rep].images))
        relabel = {old: new for new, old in enumerate(order)}
        self._classes = [raw[k] for k in order]
        self._class_of = [relabel[c] for c in class_of]

    @property
    def classes(self) -> list[ConjugacyClass]:
        """Conjugacy classes sorted by (element order, size, representative)."""
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self, i: int) -> int:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of[i]

    def centralizer(self, i: int) -> list[int]:
        return [x for x in range(self.order) if self.mul(x, i) == self.mul(i, x)]

    def conjugator(self, i: int, j: int) -> int | None:
        """Some ``x`` with ``x g_i x^-1 = g_j``, or None.  Breadth-first over
        conjugation by the generators, so the witness is deterministic."""
        gens = self.generator_indices
        seen = {i: 0}
        queue = deque([i])
        while queue:
            c = queue.popleft()
            if c == j:
                return seen[c]
            x = seen[c]
            for y in gens:
                d = self.conj(c, y)
                if d not in seen:
                    seen[d] = self.mul(y, x)
                    queue.append(d)
        return None

    def generates(self, indices: Iterable[int]) -> bool:
        """Whether the given elements generate the whole group."""
        return closure_size(self, list(indices), stop_above=self.order // 2) == self.order

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} of order {self.order} on {self.degree} points>"


class Subgroup(FiniteGroup):
    """A subgroup of ``parent``; also a group in its own right.

    Its own indices are local; ``parent_indices[k]`` is the index in the
    parent of the local element ``k``.
    """

    def __init__(self, parent: FiniteGroup, generators, elements, parent_indices):
        super().__init__(parent.degree, generators, elements)
        self.parent = parent
        self.parent_indices = list(parent_indices)
        self._parent_set = frozenset(self.parent_indices)

    def contains_index(self, parent_index: int) -> bool:
        return parent_index in self._parent_set

    @property
    def key(self) -> frozenset:
        """Hashable identity of the subgroup inside its parent."""
        return self._parent_set

    def local(self, parent_index: int) -> int:
        return self.index[self.parent.elements[parent_index]]


def closure_size(G: FiniteGroup, gens: list[int], stop_above: int | None = None) -> int:
    """Order of the subgroup generated by ``gens``; stops early once the
    count exceeds ``stop_above`` and then reports the full group order."""
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in gens:
            z = G.mul(x, y)
            if z not in seen:
                seen.add(z)
                if stop_above is not None and len(seen) > stop_above:
                    return G.order
                queue.append(z)
    return len(seen)


def _closure(gens: Sequence[Permutation], degree: int, cap: int) -> list[Permutation]:
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                if len(elements) >= cap:
                    raise ResourceCapError(f"group order exceeds cap {cap}")
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return elements


def group_from_generators(degree: int, gens: Sequence, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close ``gens`` (Permutations or image sequences) under multiplication."""
    perms = []
    for g in gens:
        p = g if isinstance(g, Permutation) else Permutation(g)
        if p.degree != degree:
            raise ValidationError(f"generator {p!r} has degree {p.degree}, expected {degree}")
        perms.append(p)
    return FiniteGroup(degree, perms, _closure(perms, degree, cap))


def subgroup_generated(G: FiniteGroup, gens: Sequence) -> Subgroup:
    """The subgroup of ``G`` generated by ``gens`` (Permutations or indices)."""
    idx = [G.idx(g) for g in gens]
    members = [0]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in idx:
            z = G.mul(x, y)
            if z not in seen:
                seen.add(z)
                members.append(z)
                queue.append(z)
    return Subgroup(G, [G.elements[i] for i in idx], [G.elements[i] for i in members], members)


def are_conjugate(G: FiniteGroup, g, h) -> tuple[bool, Permutation | None]:
    """Whether ``g`` and ``h`` are conjugate in ``G``, with a witness ``x``
    satisfying ``x * g * x**-1 == h``."""
    i, j = G.idx(g), G.idx(h)
    if G.element_order(i) != G.element_order(j) or G.class_of(i) != G.class_of(j):
        return False, None
    x = G.conjugator(i, j)
    assert x is not None and G.conj(i, x) == j
    return True, G.elements[x]


class CosetSpace:
    """Right cosets ``H x`` of ``H`` in ``G`` with the right action of ``G``.

    ``reps[c]`` is the first element (in ``G``'s order) of coset ``c`` and
    ``coset_of[i]`` the coset containing element ``i``.
    """

    def __init__(self, G: FiniteGroup, H: Subgroup):
        if H.parent is not G:
            raise ValidationError("subgroup does not belong to this group")
        self.parent = G
        self.subgroup = H
        coset_of = [-1] * G.order
        reps = []
        for x in range(G.order):
            if coset_of[x] != -1:
                continue
            c = len(reps)
            reps.append(x)
            for h in H.parent_indices:
                coset_of[G.mul(h, x)] = c
        self.reps = reps
        self.coset_of = coset_of
        self._table: list[list[int]] | None = None

    @property
    def index(self) -> int:
        return len(self.reps)

    def act(self, g: int, c: int) -> int:
        """Image of coset ``c`` under element index ``g``."""
        return self.coset_of[self.parent.mul(self.reps[c], g)]

    def permutation(self, g: int) -> Permutation:
        return Permutation._raw(tuple(self.act(g, c) for c in range(self.index)))

    @property
    def table(self) -> list[list[int]]:
        """``table[g][c]`` is the image of coset ``c`` under element ``g``."""
        if self._table is None:
            self._table = [[self.act(g, c) for c in range(self.index)]
                           for g in range(self.parent.order)]
        return self._table


def coset_action(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    return CosetSpace(G, H)


@dataclass(frozen=True)
class DoubleCosetOrbit:
    rep: int  # r such that the orbit contains (A, B r)
    size: int  # orbit size inside (G/A) x (G/B)


def double_coset_orbits(G: FiniteGroup, A: Subgroup, B: Subgroup) -> list[DoubleCosetOrbit]:
    """Orbits of the diagonal right action of ``G`` on ``(G/A) x (G/B)``.

    Every orbit meets the slice over the trivial coset ``A`` in an
    ``A``-orbit on ``G/B``, so orbits are enumerated there and each is
    reported by a representative pair ``(A, B r)``.
    """
    space = CosetSpace(G, B)
    index_a = G.order // A.order
    a_gens = [A.parent_indices[A.index[g]] for g in A.generators]
    seen = [False] * space.index
    out = []
    for c in range(space.index):
        if seen[c]:
            continue
        seen[c] = True
        orbit = [c]
        queue = deque([c])
        while queue:
            d = queue.popleft()
            for a in a_gens:
                e = space.act(a, d)
                if not seen[e]:
                    seen[e] = True
                    orbit.append(e)
                    queue.append(e)
        out.append(DoubleCosetOrbit(space.reps[c], index_a * len(orbit)))
    return out
