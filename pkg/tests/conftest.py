import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from braidhom import (
    QQ,
    ZZ,
    AlgebraData,
    algebra_from_constants,
    adjoin_unit,
    assoc_braiding,
    check_braided_character,
    check_ybe,
    dihedral_shelf,
    leibniz_braiding,
    shelf_braiding,
    trivial_shelf,
)


def verify_space(space):
    """Run the YBE check and verify every installed character."""
    rep = check_ybe(space)
    assert rep.ok, f"YBE failed: {rep.violation}"
    for name in list(space.characters):
        crep = check_braided_character(space, name)
        assert crep.ok, f"character {name} not braided: {crep.violation}"
    return space


def kz2_data(ring=ZZ) -> AlgebraData:
    """Group algebra of Z/2: basis e (unit), g with g*g = e."""
    triples = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)]
    return algebra_from_constants("associative", 2, triples, ring, unit_index=0)


def dual_numbers_data(ring=ZZ) -> AlgebraData:
    """k[x]/x^2: basis 1 (unit), x with x*x = 0."""
    triples = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]
    return algebra_from_constants("associative", 2, triples, ring, unit_index=0)


def sl2_data(ring=ZZ) -> AlgebraData:
    """sl2 with basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    triples = [
        (0, 1, 2, 1), (1, 0, 2, -1),
        (2, 0, 0, 2), (0, 2, 0, -2),
        (2, 1, 1, -2), (1, 2, 1, 2),
    ]
    return algebra_from_constants("leibniz", 3, triples, ring)


def nonlie_leibniz_data(ring=ZZ) -> AlgebraData:
    """Minimal non-Lie Leibniz bracket: [x,x] = y with y central."""
    return algebra_from_constants("leibniz", 2, [(0, 0, 1, 1)], ring)


def zero_coalgebra_data(ring=ZZ) -> AlgebraData:
    """One-dimensional coalgebra with zero coproduct (dual of the zero
    multiplication whose unitalization is the dual numbers)."""
    return algebra_from_constants("coalgebra", 1, [], ring)


@pytest.fixture
def r3():
    space = shelf_braiding(dihedral_shelf(3), ZZ)
    return verify_space(space)


@pytest.fixture
def r3_q():
    space = shelf_braiding(dihedral_shelf(3), QQ)
    return verify_space(space)


@pytest.fixture
def trivial2():
    return verify_space(shelf_braiding(trivial_shelf(2), ZZ))


@pytest.fixture
def trivial3():
    return verify_space(shelf_braiding(trivial_shelf(3), ZZ))


@pytest.fixture
def kz2():
    data = kz2_data(ZZ)
    space = assoc_braiding(data)
    space.add_character("aug", [1, 1])
    space.add_character("sign", [1, -1])
    return verify_space(space)


@pytest.fixture
def dual_numbers():
    data = dual_numbers_data(ZZ)
    space = assoc_braiding(data)
    space.add_character("counit", [1, 0])
    return verify_space(space)


@pytest.fixture
def sl2_unital():
    data = adjoin_unit(sl2_data(ZZ))
    return verify_space(leibniz_braiding(data))


@pytest.fixture
def nonlie_unital():
    data = adjoin_unit(nonlie_leibniz_data(ZZ))
    return verify_space(leibniz_braiding(data))
