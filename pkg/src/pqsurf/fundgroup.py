"""Finitely presented groups and good-presentation certificates.

Words are tuples of nonzero ints: ``k`` is the generator ``a_k`` (1-based)
and ``-k`` its inverse.  A word evaluates left to right with the package's
product convention, so ``(1, 2)`` is ``a_1 * a_2``.

A good presentation for a spherical system ``(g_1, ..., g_r)`` of ``G`` is a
presentation ``G = <a_1..a_s | R>`` with

1. every ``a_k`` equal to some ``g_i``;
2. every ``g_i = h_i a_j^l h_i^-1``;
3. every relator conjugate (in the free group) to either
   (a) ``a_i^e1 h a_j^e2 h^-1`` for some word ``h``, or
   (b) ``prod_i h~_i a_j(i)^l_i h~_i^-1`` with words ``h~_i`` for the ``h_i``.

Its existence shows that the orbifold fundamental group of the diagonal
quotient is normally generated by torsion, hence the surface is simply
connected.  The search here is bounded and only ever reports success with a
witness that :func:`verify_witness` re-checks from scratch.

Relators may be matched to a shape only up to changing exponents of a
generator ``a`` by multiples of ``m`` where ``a^m`` is itself a relator;
such a change does not alter the normal closure of the relators, so the
shape word can replace the relator in the presentation.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .covers import SphericalSystem, hurwitz_move
from .errors import PQSurfError, ResourceCapError, ValidationError
from .permgroup import FiniteGroup

Word = tuple[int, ...]

DEFAULT_COSET_CAP = 200_000


# -- words --------------------------------------------------------------------

def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValidationError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def word_inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def word_power(word: Sequence[int], e: int) -> Word:
    if e < 0:
        word, e = word_inverse(word), -e
    return tuple(word) * e


def letter_power(k: int, e: int) -> Word:
    return (k if e > 0 else -k,) * abs(e)


def concat(*words: Sequence[int]) -> Word:
    return free_reduce(itertools.chain.from_iterable(words))


def evaluate(word: Sequence[int], group: FiniteGroup, images: Sequence[int]) -> int:
    """Element index of ``word`` with ``a_k -> images[k-1]``."""
    inv = [group.inv(g) for g in images]
    x = 0
    for letter in word:
        x = group.mul(x, images[letter - 1] if letter > 0 else inv[-letter - 1])
    return x


def format_word(word: Sequence[int], names: Sequence[str] | None = None) -> str:
    if not word:
        return "1"
    parts = []
    for k, e in syllables(word):
        name = names[k - 1] if names else f"a{k}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


def syllables(word: Sequence[int]) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for x in word:
        k, s = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == k:
            out[-1][1] += s
        else:
            out.append([k, s])
    return [(k, e) for k, e in out if e]


def normal_syllables(word: Sequence[int], moduli: dict[int, int]) -> tuple[tuple[int, int], ...]:
    """Cyclic syllable form with exponents of ``a_k`` reduced into
    ``(-m/2, m/2]`` for ``m = moduli[k]`` where a modulus is known; empty
    syllables are dropped and neighbours merged until stable."""
    sy = [list(s) for s in syllables(free_reduce(word))]
    changed = True
    while changed:
        changed = False
        for s in sy:
            m = moduli.get(s[0])
            if m:
                e = s[1] % m
                if 2 * e > m:
                    e -= m
                if e != s[1]:
                    s[1] = e
                    changed = True
        merged: list[list[int]] = []
        for k, e in sy:
            if e == 0:
                changed = True
                continue
            if merged and merged[-1][0] == k:
                merged[-1][1] += e
                changed = True
            else:
                merged.append([k, e])
        while len(merged) >= 2 and merged[0][0] == merged[-1][0]:
            merged[0][1] += merged.pop()[1]
            changed = True
        sy = [s for s in merged if s[1] != 0]
    return tuple((k, e) for k, e in sy)


def cyclically_equal(u: Sequence, v: Sequence) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = tuple(v) + tuple(v)
    u = tuple(u)
    return any(doubled[i:i + len(u)] == u for i in range(len(v)))


# -- presentations and Todd-Coxeter --------------------------------------------

@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            if any(abs(x) > self.ngens for x in r):
                raise ValidationError(f"relator {r} uses an unknown generator")
        object.__setattr__(self, "relators", rels)

    def power_moduli(self) -> dict[int, int]:
        """``{k: m}`` for relators that are literally a single power ``a_k^m``."""
        out: dict[int, int] = {}
        for r in self.relators:
            sy = syllables(r)
            if len(sy) == 1:
                k, e = sy[0]
                out[k] = math.gcd(out.get(k, 0), abs(e))
        return out

    def __str__(self) -> str:
        names = self.names or tuple(f"a{k}" for k in range(1, self.ngens + 1))
        rels = ", ".join(format_word(r, names) for r in self.relators)
        return f"< {', '.join(names)} | {rels} >"


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table; ``table[c][2k]`` is ``c . a_{k+1}`` and
    ``table[c][2k+1]`` is ``c . a_{k+1}^-1``.  Coset 0 is the subgroup."""

    table: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, c: int, word: Sequence[int]) -> int:
        for x in word:
            c = self.table[c][2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1]
        return c


def todd_coxeter(pres: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                 max_cosets: int = DEFAULT_COSET_CAP) -> CosetTable:
    """HLT coset enumeration of the subgroup generated by ``subgroup_words``.

    Cosets are defined in HLT order (relators scanned in the given order
    from each live coset in turn), so the result is deterministic.  Raises
    ``ResourceCapError`` once more than ``max_cosets`` cosets have been
    defined.
    """
    if max_cosets < 1:
        raise ValidationError("coset cap must be positive")
    ncols = 2 * pres.ngens

    def col(x):
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    rels = [[col(x) for x in r] for r in pres.relators if r]
    table: list[list[int]] = [[-1] * ncols]
    parent = [0]

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def define(c, x):
        if len(table) >= max_cosets:
            raise ResourceCapError(f"coset enumeration exceeded {max_cosets} cosets")
        n = len(table)
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c

    def merge(a, b, queue):
        a, b = find(a), find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            for x in range(ncols):
                f = table[e][x]
                if f == -1:
                    continue
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = -1
                e1, f1 = find(e), find(f)
                if table[e1][x] != -1:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] != -1:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c, word):
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != -1:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] != -1:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    for w in subgroup_words:
        w = [col(x) for x in free_reduce(w)]
        if w:
            scan_and_fill(0, w)
    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in rels:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] == -1:
                        define(c, x)
        c += 1

    live = [c for c in range(len(table)) if parent[c] == c]
    renum = {c: k for k, c in enumerate(live)}
    return CosetTable(tuple(tuple(renum[find(t)] for t in table[c]) for c in live))


def presentation_order(pres: Presentation, max_cosets: int = DEFAULT_COSET_CAP) -> int:
    return todd_coxeter(pres, (), max_cosets).index


def verify_presentation(pres: Presentation, group: FiniteGroup, images: Sequence,
                        max_cosets: int = DEFAULT_COSET_CAP) -> bool:
    """Whether ``a_k -> images[k-1]`` induces ``<a | R>`` isomorphic to ``group``.

    True iff every relator maps to 1, the images generate, and coset
    enumeration over the trivial subgroup gives exactly ``|group|`` cosets.
    Raises ``ResourceCapError`` (inconclusive) if the enumeration overflows.
    """
    if len(images) != pres.ngens:
        raise ValidationError(f"{len(images)} images for {pres.ngens} generators")
    idx = [group.idx(g) for g in images]
    if any(evaluate(r, group, idx) != 0 for r in pres.relators):
        return False
    if not group.generates(idx):
        return False
    return todd_coxeter(pres, (), max_cosets).index == group.order


# -- good presentations --------------------------------------------------------

class CertificateFailure(PQSurfError):
    """A certificate condition could not be met; ``index`` names the
    offending system position or relator when known."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Condition2:
    """``g_i = h a_j^ell h^-1`` with ``h`` given by the word ``h_word``."""

    j: int  # 1-based presentation generator
    ell: int
    h: int  # element index
    h_word: Word


@dataclass(frozen=True)
class ShapeA:
    """Relator certified as ``a_i^e1 h a_j^e2 h^-1``; ``e2 = 0`` covers
    plain powers ``a_i^e1``."""

    relator: int
    i: int
    e1: int
    h: Word
    j: int
    e2: int

    kind = "a"

    def word(self) -> Word:
        if self.e2 == 0:
            return letter_power(self.i, self.e1)
        return concat(letter_power(self.i, self.e1), self.h, letter_power(self.j, self.e2),
                      word_inverse(self.h))


@dataclass(frozen=True)
class ShapeB:
    """Relator certified as ``prod_i h~_i a_j(i)^ell_i h~_i^-1``, one factor
    per system element."""

    relator: int
    factors: tuple[tuple[Word, int, int], ...]  # (h~_i, j(i), ell_i)

    kind = "b"

    def word(self) -> Word:
        return concat(*(concat(h, letter_power(j, ell), word_inverse(h))
                        for h, j, ell in self.factors))


Shape = ShapeA | ShapeB


def _shortest_words(group: FiniteGroup, gens: Sequence[int]) -> dict[int, Word]:
    """Breadth-first shortest word for every element reachable from ``gens``;
    letters are tried in the order a1, a1^-1, a2, a2^-1, ..."""
    letters = []
    for k, g in enumerate(gens, start=1):
        letters += [(k, g), (-k, group.inv(g))]
    words = {0: ()}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for letter, g in letters:
            y = group.mul(x, g)
            if y not in words:
                words[y] = words[x] + (letter,)
                queue.append(y)
    return words


def find_condition2_data(sys: SphericalSystem, assignment: Sequence[int]) -> list[Condition2]:
    """Decompose each ``g_i`` as ``h a_j^ell h^-1``.

    ``assignment[k-1]`` is the system position supplying ``a_k``.
    Conjugators ``h`` are scanned by increasing word length in the ``a``'s,
    then ``j``, then ``ell``; the first hit is returned for each ``i``.
    """
    G = sys.group
    gens = [sys.elements[p] for p in assignment]
    words = _shortest_words(G, gens)
    if len(words) != G.order:
        raise CertificateFailure("assigned elements do not generate")
    powers = [{G.power(a, ell): ell for ell in range(G.element_order(a) - 1, 0, -1)} for a in gens]
    out = []
    for pos, g in enumerate(sys.elements):
        hit = None
        for h, hw in words.items():
            target = G.conj(g, G.inv(h))  # h^-1 g h must be a power of some a_j
            for j, pw in enumerate(powers, start=1):
                if target in pw:
                    hit = Condition2(j, pw[target], h, hw)
                    break
            if hit:
                break
        if hit is None:
            raise CertificateFailure(f"element {pos} is not conjugate to a generator power", pos)
        out.append(hit)
    return out


def _rotations(sy):
    return (sy[k:] + sy[:k] for k in range(len(sy)))


def _match_shape_a(norm, moduli, bound) -> tuple | None:
    """``(i, e1, h, j, e2)`` whose shape-(a) word normalizes to a cyclic
    conjugate of ``norm``."""
    n = len(norm)
    if n % 2 or n < 2:
        return None
    t = (n - 2) // 2
    for s in _rotations(norm):
        (i, e1), middle, (j, e2) = s[0], s[1:1 + t], s[1 + t]
        h = tuple(itertools.chain.from_iterable(letter_power(k, e) for k, e in middle))
        if len(h) > bound:
            continue
        cand = ShapeA(-1, i, e1, h, j, e2)
        if cyclically_equal(normal_syllables(cand.word(), moduli), norm):
            return i, e1, h, j, e2
    return None


def check_relator_shapes(pres: Presentation, cond2: Sequence[Condition2],
                         bound: int = 4) -> list[Shape]:
    """A shape certificate for every relator, or ``CertificateFailure``
    naming the first relator for which none was found within ``bound``
    (inconclusive, not a refutation).

    A relator matches a shape when the two agree as cyclic words after
    exponents are reduced modulo the presentation's power relators.
    Replacing each relator by its certificate's word therefore keeps the
    normal closure; :func:`certified_presentation` does that.
    """
    moduli = pres.power_moduli()
    product = ShapeB(-1, tuple((c.h_word, c.j, c.ell) for c in cond2)) if cond2 else None
    product_norm = normal_syllables(product.word(), moduli) if product else None
    out: list[Shape] = []
    for k, rel in enumerate(pres.relators):
        sy = syllables(cyclic_reduce(rel))
        if len(sy) <= 1:
            i, e = sy[0] if sy else (1, 0)
            out.append(ShapeA(k, i, e, (), i, 0))
            continue
        norm = normal_syllables(rel, moduli)
        if len(norm) <= 1:
            i, e = norm[0] if norm else (1, 0)
            out.append(ShapeA(k, i, e, (), i, 0))
            continue
        found = _match_shape_a(norm, moduli, bound)
        if found is not None:
            out.append(ShapeA(k, *found))
            continue
        if product is not None and cyclically_equal(norm, product_norm):
            out.append(ShapeB(k, product.factors))
            continue
        raise CertificateFailure(f"no shape certificate for relator {k}", k)
    return out


def certified_presentation(pres: Presentation, shapes: Sequence[Shape]) -> Presentation:
    """``pres`` with each relator replaced by its certificate word.  Power
    relators are kept so the normal closure is unchanged."""
    rels = list(pres.relators)
    for s in shapes:
        if len(syllables(rels[s.relator])) > 1:
            rels[s.relator] = s.word()
    return Presentation(pres.ngens, tuple(r for r in rels), pres.names)


@dataclass
class GoodPresentationWitness:
    original: SphericalSystem
    moves: tuple[int, ...]  # forward Hurwitz moves applied, in order
    system: SphericalSystem  # the system after the moves
    assignment: tuple[int, ...]  # system positions of a_1..a_s
    presentation: Presentation
    condition2: tuple[Condition2, ...]
    shapes: tuple[Shape, ...]
    family: str = "generic"

    @property
    def generators(self) -> list[int]:
        return [self.system.elements[p] for p in self.assignment]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "hurwitz_moves": list(self.moves),
            "generator_positions": list(self.assignment),
            "presentation": {
                "generators": self.presentation.ngens,
                "relators": [list(r) for r in self.presentation.relators],
                "text": str(self.presentation),
            },
            "condition2": [{"j": c.j, "ell": c.ell, "h_word": list(c.h_word)} for c in self.condition2],
            "shapes": [_shape_dict(s) for s in self.shapes],
        }


def _shape_dict(s: Shape) -> dict:
    if isinstance(s, ShapeA):
        return {"relator": s.relator, "kind": "a", "i": s.i, "e1": s.e1, "h": list(s.h),
                "j": s.j, "e2": s.e2}
    return {"relator": s.relator, "kind": "b",
            "factors": [{"h": list(h), "j": j, "ell": ell} for h, j, ell in s.factors]}


def verify_witness(w: GoodPresentationWitness, max_cosets: int = DEFAULT_COSET_CAP) -> bool:
    """Re-check every claim of a witness from scratch.

    Relators must equal their certificate words up to cyclic conjugation
    and free reduction; no exponent normalization is used here.
    """
    sys = w.original
    for i in w.moves:
        sys = hurwitz_move(sys, i)
    if sys.elements != w.system.elements:
        return False
    G = sys.group
    gens = w.generators
    if not verify_presentation(w.presentation, G, gens, max_cosets):
        return False
    if len(w.condition2) != len(sys.elements):
        return False
    for g, c in zip(sys.elements, w.condition2):
        if evaluate(c.h_word, G, gens) != c.h:
            return False
        if G.conj(G.power(gens[c.j - 1], c.ell), c.h) != g:
            return False
    if sorted(s.relator for s in w.shapes) != list(range(len(w.presentation.relators))):
        return False
    for s in w.shapes:
        if isinstance(s, ShapeB):
            if len(s.factors) != len(sys.elements):
                return False
            for g, (h, j, ell) in zip(sys.elements, s.factors):
                factor = concat(h, letter_power(j, ell), word_inverse(h))
                if evaluate(factor, G, gens) != g:
                    return False
        if not cyclically_equal(cyclic_reduce(w.presentation.relators[s.relator]),
                                cyclic_reduce(s.word())):
            return False
    return True


@dataclass
class Pi1Result:
    """``status`` is ``"verified"`` (witness attached), ``"refuted-at-bound"``
    (the bounded search ran to completion without a witness) or
    ``"inconclusive"`` (some coset enumeration hit its cap)."""

    status: str
    witness: GoodPresentationWitness | None = None
    tried: int = 0

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def _generator_subsets(sys: SphericalSystem, max_generators: int):
    """Position tuples whose elements generate and whose powers meet every
    class occurring in the system (otherwise condition 2 cannot hold)."""
    G = sys.group
    first_pos: dict[int, int] = {}
    for p, g in enumerate(sys.elements):
        first_pos.setdefault(g, p)
    positions = sorted(first_pos.values())
    needed = {G.class_of(g) for g in sys.elements}
    reach = {p: {G.class_of(G.power(sys.elements[p], e))
                 for e in range(1, G.element_order(sys.elements[p]))} for p in positions}
    for s in range(1, max_generators + 1):
        for combo in itertools.combinations(positions, s):
            if not needed <= set().union(*(reach[p] for p in combo)):
                continue
            if G.generates([sys.elements[p] for p in combo]):
                yield combo


def _reduced_words(s: int, max_len: int):
    """Freely reduced words over ``s`` generators by length, then letter order."""
    letters = [x for k in range(1, s + 1) for x in (k, -k)]
    layer: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def _seeded(G: FiniteGroup, gens: list[int]):
    """Presentations from the known-good families, tried before the generic
    search: cyclic, dihedral in (r, s) form and Coxeter form."""
    n = G.order
    if len(gens) == 1 and G.element_order(gens[0]) == n:
        yield "cyclic", [letter_power(1, n)]
    if len(gens) == 2:
        for kr, ks in ((1, 2), (2, 1)):
            r, s = gens[kr - 1], gens[ks - 1]
            m = G.element_order(r)
            if G.element_order(s) == 2 and 2 * m == n and G.power(G.mul(r, s), 2) == 0:
                yield "dihedral", [letter_power(kr, m), letter_power(ks, 2), (kr, ks, kr, ks)]
        if [G.element_order(a) for a in gens] == [2, 2]:
            m = G.element_order(G.mul(gens[0], gens[1]))
            if 2 * m == n:
                yield "coxeter", [(1, 1), (2, 2), (1, 2) * m]


def _generic_candidates(G: FiniteGroup, gens: list[int], moduli, word_bound: int):
    """Shape-(a) words that hold in ``G``, batched by conjugator length and
    deduplicated up to cyclic conjugation and exponent normalization."""
    s = len(gens)
    orders = [G.element_order(a) for a in gens]
    powers = [[G.power(a, e) for e in range(m)] for a, m in zip(gens, orders)]
    batches: list[list[Word]] = [[] for _ in range(word_bound + 1)]
    seen: set = set()
    for h in _reduced_words(s, word_bound):
        hv = evaluate(h, G, gens)
        hvi = G.inv(hv)
        for j in range(1, s + 1):
            for e2 in range(1, orders[j - 1]):
                x = G.mul(G.mul(hv, powers[j - 1][e2]), hvi)  # h a_j^e2 h^-1
                for i in range(1, s + 1):
                    for e1 in range(1, orders[i - 1]):
                        if G.mul(powers[i - 1][e1], x) != 0:
                            continue
                        norm = normal_syllables(ShapeA(-1, i, e1, h, j, e2).word(), moduli)
                        if len(norm) <= 1:
                            continue
                        key = min(_rotations(norm))
                        if key in seen:
                            continue
                        seen.add(key)
                        batches[len(h)].append(
                            tuple(itertools.chain.from_iterable(letter_power(k, e) for k, e in key)))
    return batches


class _Search:
    def __init__(self, cap: int):
        self.cap = cap
        self.overflows = 0

    def order(self, pres: Presentation) -> int | None:
        try:
            return todd_coxeter(pres, (), self.cap).index
        except ResourceCapError:
            self.overflows += 1
            return None

    def verify(self, pres, G, gens) -> bool:
        try:
            return verify_presentation(pres, G, gens, self.cap)
        except ResourceCapError:
            self.overflows += 1
            return False


def _finish(G, gens, pres, cond2, bound, search: _Search):
    """Certify shapes, substitute certificate words and re-verify."""
    try:
        shapes = check_relator_shapes(pres, cond2, bound)
    except CertificateFailure:
        return None
    pres = certified_presentation(pres, shapes)
    if not search.verify(pres, G, gens):
        return None
    return pres, shapes


def _try_assignment(sys: SphericalSystem, assignment, word_bound: int, search: _Search):
    G = sys.group
    gens = [sys.elements[p] for p in assignment]
    try:
        cond2 = find_condition2_data(sys, assignment)
    except CertificateFailure:
        return None
    s = len(gens)
    for family, rels in _seeded(G, gens):
        pres = Presentation(s, tuple(rels))
        if not search.verify(pres, G, gens):
            continue
        done = _finish(G, gens, pres, cond2, word_bound, search)
        if done:
            return family, done[0], cond2, done[1]

    moduli = {k: G.element_order(a) for k, a in enumerate(gens, start=1)}
    powers = [letter_power(k, m) for k, m in moduli.items()]
    product = ShapeB(-1, tuple((c.h_word, c.j, c.ell) for c in cond2)).word()
    rels = powers + ([product] if product else [])
    for batch in _generic_candidates(G, gens, moduli, word_bound):
        rels += batch
        if search.order(Presentation(s, tuple(rels))) == G.order:
            break
    else:
        return None
    # drop redundant relators, newest first; power relators stay
    k = len(rels) - 1
    while k >= len(powers):
        trial = rels[:k] + rels[k + 1:]
        if search.order(Presentation(s, tuple(trial))) == G.order:
            rels = trial
        k -= 1
    done = _finish(G, gens, Presentation(s, tuple(rels)), cond2, word_bound, search)
    if done:
        return "generic", done[0], cond2, done[1]
    return None


def hurwitz_variants(sys: SphericalSystem, max_moves: int):
    """``(moves, system)`` pairs reachable by at most ``max_moves`` forward
    moves, breadth first, skipping repeated systems."""
    seen = {sys.elements}
    layer = [((), sys)]
    yield (), sys
    for _ in range(max_moves):
        nxt = []
        for moves, s in layer:
            for i in range(len(s.elements) - 1):
                t = hurwitz_move(s, i)
                if t.elements not in seen:
                    seen.add(t.elements)
                    nxt.append((moves + (i,), t))
                    yield moves + (i,), t
        layer = nxt


def pi1_trivial_certificate(sys: SphericalSystem, word_bound: int = 3, max_generators: int = 4,
                            max_moves: int = 1, coset_cap: int | None = None) -> Pi1Result:
    """Search for a good presentation extending ``sys``.

    Loops over Hurwitz-moved variants of the system (unmoved first), then
    generating subsets of its elements (smallest first).  For each subset
    the seeded families are tried, then a generic search: power relators,
    the product relator and every shape-(a) relator that holds with a
    conjugator of length at most ``word_bound``, added in batches until
    coset enumeration gives ``|G|``, then pruned.  The result is never a
    claim that the fundamental group is nontrivial.
    """
    G = sys.group
    cap = coset_cap or max(1000, 64 * G.order)
    search = _Search(cap)
    tried = 0
    for moves, s in hurwitz_variants(sys, max_moves):
        for assignment in _generator_subsets(s, max_generators):
            tried += 1
            found = _try_assignment(s, assignment, word_bound, search)
            if found is None:
                continue
            family, pres, cond2, shapes = found
            witness = GoodPresentationWitness(sys, moves, s, tuple(assignment), pres,
                                              tuple(cond2), tuple(shapes), family)
            if not verify_witness(witness, cap):
                raise AssertionError("constructed witness failed re-verification")
            return Pi1Result("verified", witness, tried)
    return Pi1Result("inconclusive" if search.overflows else "refuted-at-bound", None, tried)


def transport_witness(w: GoodPresentationWitness, x: int) -> GoodPresentationWitness:
    """The witness for the system conjugated by ``x``: words are unchanged,
    group elements are conjugated."""
    G = w.original.group

    def conj(sys):
        return SphericalSystem(G, tuple(G.conj(g, x) for g in sys.elements))

    cond2 = tuple(Condition2(c.j, c.ell, G.conj(c.h, x), c.h_word) for c in w.condition2)
    return GoodPresentationWitness(conj(w.original), w.moves, conj(w.system), w.assignment,
                                   w.presentation, cond2, w.shapes, w.family)
