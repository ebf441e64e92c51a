import itertools

import pytest

from pqsurf.covers import enumerate_systems_by_orders, validate_system
from pqsurf.lattice import subgroup_classes
from pqsurf.permgroup import Permutation, group_from_generators
from pqsurf.psl2 import psl2_group

TRIPLE = ([[5, 3], [0, 8]], [[-1, 3], [4, 0]], [[0, 2], [6, 6]])


@pytest.fixture(scope="session")
def psl13():
    return psl2_group(13)


@pytest.fixture(scope="session")
def triple(psl13):
    return validate_system(psl13, [psl13.from_matrix(m) for m in TRIPLE])


@pytest.fixture(scope="session")
def systems237(psl13):
    return enumerate_systems_by_orders(psl13, [2, 3, 7])


@pytest.fixture(scope="session")
def lattice(psl13):
    return subgroup_classes(psl13)


@pytest.fixture(scope="session")
def subgroup(lattice):
    by_label = {}
    for c in lattice:
        by_label.setdefault(c.label, c.rep)
    return by_label


@pytest.fixture(scope="session")
def s3():
    return group_from_generators(3, [Permutation.from_cycles(3, (0, 1, 2)),
                                     Permutation.from_cycles(3, (0, 1))])


def all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]
