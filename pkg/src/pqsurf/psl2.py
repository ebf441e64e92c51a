"""PSL(2, q) for an odd prime q as a permutation group on the projective line.

Points ``0..q-1`` stand for ``[z : 1]`` and point ``q`` for ``[1 : 0]``.
Matrices act on row vectors, ``[x y] -> [x y] M``, so that the matrix
product ``M1 M2`` maps to the permutation product "apply M1, then M2" and
a product-one tuple of matrices stays product-one as permutations.
"""
from __future__ import annotations

from typing import Sequence

from .errors import ValidationError
from .permgroup import DEFAULT_ORDER_CAP, FiniteGroup, Permutation, _closure

Matrix = Sequence[Sequence[int]]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def mobius_permutation(q: int, m: Matrix) -> Permutation:
    """Permutation of P^1(F_q) induced by an invertible 2x2 matrix."""
    (a, b), (c, d) = ((int(x) % q for x in row) for row in m)
    if (a * d - b * c) % q == 0:
        raise ValidationError(f"matrix {m} is not invertible mod {q}")
    images = []
    for z in range(q):
        num, den = (a * z + c) % q, (b * z + d) % q
        images.append(q if den == 0 else num * pow(den, -1, q) % q)
    images.append(q if b == 0 else a * pow(b, -1, q) % q)
    return Permutation._raw(tuple(images))


class ProjectiveSpecialLinearGroup(FiniteGroup):
    """``PSL(2, q)`` acting on the ``q + 1`` points of the projective line."""

    def __init__(self, q: int, cap: int = DEFAULT_ORDER_CAP):
        if q % 2 == 0 or not _is_prime(q):
            raise ValidationError(f"q must be an odd prime, got {q}")
        self.q = q
        self.name = f"PSL(2,{q})"
        self.squares = frozenset(x * x % q for x in range(1, q))
        gens = [mobius_permutation(q, [[1, 1], [0, 1]]),
                mobius_permutation(q, [[0, q - 1], [1, 0]])]
        super().__init__(q + 1, gens, _closure(gens, q + 1, cap))
        self._matrices: dict[Permutation, tuple] | None = None

    def determinant(self, m: Matrix) -> int:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % self.q

    def from_matrix(self, m: Matrix) -> Permutation:
        """The element of the group represented by ``m``.

        Rejects singular matrices and those whose determinant is not a
        square (these lie in PGL(2, q) but not in PSL(2, q))."""
        det = self.determinant(m)
        if det == 0:
            raise ValidationError(f"matrix {m} is not invertible mod {self.q}")
        if det not in self.squares:
            raise ValidationError(f"matrix {m} has non-square determinant {det} mod {self.q}")
        return mobius_permutation(self.q, m)

    def pgl_element(self, m: Matrix) -> Permutation:
        """Permutation of any invertible matrix; used for outer automorphisms."""
        return mobius_permutation(self.q, m)

    def to_matrix(self, g) -> tuple[tuple[int, int], tuple[int, int]]:
        """Canonical determinant-one representative: the lexicographically
        smaller of ``M`` and ``-M`` with entries in ``[0, q)``."""
        if self._matrices is None:
            self._matrices = {}
            q = self.q
            for a in range(q):
                for b in range(q):
                    for c in range(q):
                        if a:
                            ds = [(1 + b * c) * pow(a, -1, q) % q]
                        elif (b * c) % q == q - 1:
                            ds = range(q)
                        else:
                            continue
                        for d in ds:
                            m = ((a, b), (c, d))
                            p = mobius_permutation(q, m)
                            old = self._matrices.get(p)
                            if old is None or m < old:
                                self._matrices[p] = m
        return self._matrices[self.elements[self.idx(g)]]


def psl2_group(q: int, cap: int = DEFAULT_ORDER_CAP) -> ProjectiveSpecialLinearGroup:
    return ProjectiveSpecialLinearGroup(q, cap)
