import random

import pytest

from d4fine.exact import get_field
from d4fine.weyl import (
    IDENTITY,
    MINUS_IDENTITY,
    IsometryGroup,
    act_on_monomial_torus,
    act_on_torus,
    fixed_subtorus,
    intersect_fixed_subtori,
    mat_inv_int,
    mat_mul,
    stabilizer_indices,
    torus_point,
)

F = get_field(24)


@pytest.fixture(scope="module")
def group():
    return IsometryGroup()


def test_group_order_and_anchors(group):
    assert len(group) == 1152
    assert group[894].matrix == IDENTITY
    assert group[259].matrix == MINUS_IDENTITY
    assert len(group.weyl_subgroup()) == 192


def test_enumeration_is_lexicographic(group):
    flat = [tuple(x for row in e.matrix for x in row) for e in group.elements]
    assert flat == sorted(flat)


def test_group_closure_and_inverses(group):
    rng = random.Random(5)
    for _ in range(200):
        i = rng.randint(1, 1152)
        j = rng.randint(1, 1152)
        k = group.multiply(i, j)
        assert group[k].matrix == mat_mul(group[i].matrix, group[j].matrix)
        inv = group.inverse(i)
        assert mat_mul(group[i].matrix, group[inv].matrix) == IDENTITY


def test_roots_permuted(group):
    # every element maps the 24-root set bijectively onto itself
    from d4fine.liealg import _POS_ROOTS
    roots = {r for r in _POS_ROOTS} | {tuple(-x for x in r) for r in _POS_ROOTS}
    for e in group.elements:
        image = set()
        for r in roots:
            image.add(tuple(sum(r[i] * e.matrix[i][j] for i in range(4))
                            for j in range(4)))
        assert image == roots


def test_conjugacy_census(group):
    assert group.conjugacy_census() == {
        2: (139, 7),
        3: (80, 3),
        4: (228, 5),
        6: (464, 7),
        8: (144, 1),
        12: (96, 1),
    }


def test_census_totals(group):
    census = group.conjugacy_census()
    assert sum(c for c, _ in census.values()) == 1151


# Fixed-subtorus isomorphism types for the 25 representative indices:
# (order, free rank, torsion invariant factors)
TABLE2 = {
    894: (1, 4, []),
    1: (2, 2, [2]),
    3: (2, 3, []),
    9: (2, 2, []),
    19: (2, 1, [2, 2]),
    49: (2, 1, [2, 2]),
    259: (2, 0, [2, 2, 2, 2]),
    270: (2, 3, []),
    4: (3, 2, []),
    59: (3, 0, [3, 3]),
    96: (3, 2, []),
    2: (4, 1, [2]),
    7: (4, 1, [2]),
    30: (4, 2, []),
    34: (4, 0, [2, 2]),
    46: (4, 0, [2, 4]),
    10: (6, 1, []),
    11: (6, 1, []),
    20: (6, 0, [2, 2]),
    55: (6, 0, [2, 2]),
    56: (6, 1, []),
    78: (6, 1, []),
    318: (6, 0, []),
    8: (8, 0, [2]),
    58: (12, 0, []),
}


def test_table2_reproduction(group):
    for j, (order, rank, torsion) in TABLE2.items():
        assert group[j].order() == order, f"order mismatch at {j}"
        ft = fixed_subtorus([group[j].matrix])
        assert (ft.rank, ft.torsion) == (rank, torsion), f"torus mismatch at {j}"


def test_fixed_subtorus_points_are_fixed(group):
    # torsion generators are fixed pointwise under the exact torus action
    for j in (1, 19, 46, 59, 259):
        ft = fixed_subtorus([group[j].matrix])
        for p in ft.torsion_points(F):
            assert act_on_torus(group[j].matrix, p) == p
    # free directions: check the monomial action on the formal curves
    for j in (3, 9, 30, 894):
        ft = fixed_subtorus([group[j].matrix])
        exps = [[v[i] for v in ft.free_basis] for i in range(4)]
        assert act_on_monomial_torus(group[j].matrix, exps) == exps


def test_stabilizer_anchor(group):
    p1 = torus_point(F, [1, "w", "w", "w"])
    p2 = torus_point(F, ["w", 1, "w", 1])
    assert stabilizer_indices(group, [p1, p2]) == [59, 835, 894]


def test_stabilizer_identity_point(group):
    ones = torus_point(F, [1, 1, 1, 1])
    assert len(stabilizer_indices(group, [ones])) == 1152


def test_stabilizer_sign_points(group):
    pts = [torus_point(F, [-1, 1, 1, 1]), torus_point(F, [1, -1, 1, 1]),
           torus_point(F, [1, 1, -1, 1]), torus_point(F, [1, 1, 1, -1])]
    stab = set(stabilizer_indices(group, pts))
    expect = {e.index for e in group.elements
              if all((e.matrix[i][j] - (1 if i == j else 0)) % 2 == 0
                     for i in range(4) for j in range(4))}
    assert stab == expect


def test_intersect_fixed_subtori(group):
    ft = intersect_fixed_subtori(group, 4, 952)
    assert (ft.rank, ft.torsion) == (0, [3])
    assert ft.torsion_gens == [[1, 0, 0, 1]]  # {t_{x,1,1,x} : x^3 = 1}
    ft = intersect_fixed_subtori(group, 1149, 952)
    assert (ft.rank, ft.torsion) == (0, [])
    for j in (3, 59, 46):
        full = fixed_subtorus([group[j].matrix])
        both = intersect_fixed_subtori(group, 894, j)
        assert (both.rank, both.torsion) == (full.rank, full.torsion)


def test_coset_classes(group):
    cosets = group.coset_classes()
    for label in range(6):
        assert sum(1 for v in cosets.values() if v == label) == 192
    assert cosets[894] == 0
    assert cosets[96] == 0
    assert cosets[59] in (4, 5)
    assert group.coset_class(3) == 1


def test_act_on_torus_minus_identity(group):
    pt = torus_point(F, ["i", "w", -1, "z^1"])
    image = act_on_torus(MINUS_IDENTITY, pt)
    assert image == [x.inverse() for x in pt]


def test_act_composition(group):
    # the exponent-matrix action composes covariantly with the matrix product
    rng = random.Random(9)
    for _ in range(20):
        a = group[rng.randint(1, 1152)].matrix
        b = group[rng.randint(1, 1152)].matrix
        pt = torus_point(F, ["z^3", "w", "i", -1])
        lhs = act_on_torus(a, act_on_torus(b, pt))
        rhs = act_on_torus(mat_mul(a, b), pt)
        assert lhs == rhs


def test_mat_inv_int(group):
    rng = random.Random(13)
    for _ in range(20):
        m = group[rng.randint(1, 1152)].matrix
        assert mat_mul(m, mat_inv_int(m)) == IDENTITY
