"""The isometry group of the D4 root system and its action on the maximal torus.

Elements are 4x4 integer matrices in the simple-root basis; row i holds the
coordinates of the image of alpha_i. The full group (Weyl group extended by the
diagram symmetries) has order 1152 and is enumerated in a canonical order:
ascending lexicographic comparison of the flattened 16-tuples, reported with
1-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    Cyclo,
    CycloField,
    get_field,
    hermite_normal_form,
    integer_kernel,
    smith_normal_form,
)

# Standard generators: the four simple reflections and two diagram symmetries
# (a 3-cycle and a transposition of the outer nodes).
S1 = ((-1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
S2 = ((1, 1, 0, 0), (0, -1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1))
S3 = ((1, 0, 0, 0), (0, 1, 1, 0), (0, 0, -1, 0), (0, 0, 0, 1))
S4 = ((1, 0, 0, 0), (0, 1, 0, 1), (0, 0, 1, 0), (0, 0, 0, -1))
S5 = ((0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0))
S6 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))

DEFAULT_GENERATORS = (S1, S2, S3, S4, S5, S6)

IDENTITY = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
MINUS_IDENTITY = ((-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1))

# The 25 canonical representatives whose fixed subtori classify the
# order/fixed-torus types, grouped by element order; each maps to the
# expected (element order, free rank, torsion invariants) of its fixed
# subtorus.
TABLE2_EXPECTED = {
    894: (1, 4, ()),
    1: (2, 2, (2,)),
    3: (2, 3, ()),
    9: (2, 2, ()),
    19: (2, 1, (2, 2)),
    49: (2, 1, (2, 2)),
    259: (2, 0, (2, 2, 2, 2)),
    270: (2, 3, ()),
    4: (3, 2, ()),
    59: (3, 0, (3, 3)),
    96: (3, 2, ()),
    2: (4, 1, (2,)),
    7: (4, 1, (2,)),
    30: (4, 2, ()),
    34: (4, 0, (2, 2)),
    46: (4, 0, (2, 4)),
    10: (6, 1, ()),
    11: (6, 1, ()),
    20: (6, 0, (2, 2)),
    55: (6, 0, (2, 2)),
    56: (6, 1, ()),
    78: (6, 1, ()),
    318: (6, 0, ()),
    8: (8, 0, (2,)),
    58: (12, 0, ()),
}
TABLE2_INDICES = tuple(TABLE2_EXPECTED)


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )


def mat_inv_int(a):
    """Inverse of an integer matrix with determinant +-1."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(a)]
    from fractions import Fraction
    m = [[Fraction(x) for x in row] for row in aug]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    out = tuple(tuple(int(m[i][n + j]) for j in range(n)) for i in range(n))
    return out


@dataclass(frozen=True)
class IsometryElement:
    index: int                                 # 1-based canonical index
    matrix: tuple[tuple[int, ...], ...]

    def order(self) -> int:
        m = self.matrix
        k = 1
        while m != IDENTITY:
            m = mat_mul(m, self.matrix)
            k += 1
            assert k <= 48
        return k


class IsometryGroup:
    """Closure of the generators, canonically ordered and indexed from 1."""

    def __init__(self, generators=DEFAULT_GENERATORS):
        elems = {IDENTITY}
        frontier = [IDENTITY]
        gens = [tuple(tuple(row) for row in g) for g in generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    for y in (mat_mul(x, g), mat_mul(g, x)):
                        if y not in elems:
                            elems.add(y)
                            nxt.append(y)
            frontier = nxt
        ordered = sorted(elems, key=lambda m: tuple(x for row in m for x in row))
        self.elements = [IsometryElement(i + 1, m) for i, m in enumerate(ordered)]
        self.index_of = {e.matrix: e.index for e in self.elements}
        self.generators = gens
        self._orders = None
        self._weyl = None
        self._cosets = None
        self._classes = None

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, index: int) -> IsometryElement:
        """1-based canonical lookup."""
        return self.elements[index - 1]

    def multiply(self, i: int, j: int) -> int:
        return self.index_of[mat_mul(self[i].matrix, self[j].matrix)]

    def inverse(self, i: int) -> int:
        return self.index_of[mat_inv_int(self[i].matrix)]

    def orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [e.order() for e in self.elements]
        return self._orders

    def conjugacy_classes(self) -> list[list[int]]:
        """Partition of 1..N into conjugacy classes (each sorted, classes by min)."""
        if self._classes is not None:
            return self._classes
        seen = set()
        classes = []
        gens = self.generators
        ginv = [mat_inv_int(g) for g in gens]
        for e in self.elements:
            if e.index in seen:
                continue
            orbit = {e.matrix}
            frontier = [e.matrix]
            while frontier:
                nxt = []
                for m in frontier:
                    for g, gi in zip(gens, ginv):
                        c = mat_mul(mat_mul(g, m), gi)
                        if c not in orbit:
                            orbit.add(c)
                            nxt.append(c)
                frontier = nxt
            idxs = sorted(self.index_of[m] for m in orbit)
            seen.update(idxs)
            classes.append(idxs)
        classes.sort(key=lambda c: c[0])
        self._classes = classes
        return classes

    def conjugacy_census(self) -> dict[int, tuple[int, int]]:
        """order -> (number of elements of that order != id, number of classes)."""
        orders = self.orders()
        census: dict[int, list[int]] = {}
        for cls in self.conjugacy_classes():
            o = orders[cls[0] - 1]
            if o == 1:
                continue
            cnt, ncls = census.get(o, (0, 0))
            census[o] = (cnt + len(cls), ncls + 1)
        return dict(sorted(census.items()))

    def weyl_subgroup(self) -> set[int]:
        """Indices of the subgroup generated by the four simple reflections."""
        if self._weyl is None:
            sub = IsometryGroup(self.generators[:4])
            self._weyl = {self.index_of[e.matrix] for e in sub.elements}
        return self._weyl

    def coset_classes(self) -> dict[int, int]:
        """index -> coset label 0..5 of the Weyl subgroup in the full group.

        The cosets are V0 = W and V1..V5 = W*a, W*a*b, W*a*b^2, W*b, W*b^2
        where a and b are the canonically indexed elements 3 and 4.
        """
        if self._cosets is not None:
            return self._cosets
        w = self.weyl_subgroup()
        a, b = self[3].matrix, self[4].matrix
        b2 = mat_mul(b, b)
        reps = [IDENTITY, a, mat_mul(a, b), mat_mul(a, b2), b, b2]
        cosets = {}
        for label, rep in enumerate(reps):
            for wi in w:
                m = mat_mul(self[wi].matrix, rep)
                assert self.index_of[m] not in cosets, "coset reps not disjoint"
                cosets[self.index_of[m]] = label
        assert len(cosets) == len(self.elements)
        self._cosets = cosets
        return cosets

    def coset_class(self, i: int) -> int:
        return self.coset_classes()[i]


# ---------------------------------------------------------------------------
# Torus action and fixed subtori
# ---------------------------------------------------------------------------

def act_on_torus(matrix, params: list[Cyclo]) -> list[Cyclo]:
    """Image of the torus point t_{x,y,z,u} under an isometry.

    New i-th parameter is prod_j params[j] ** matrix[i][j].
    """
    out = []
    for row in matrix:
        acc = None
        for p, e in zip(params, row):
            if e == 0:
                continue
            factor = p ** e
            acc = factor if acc is None else acc * factor
        if acc is None:
            acc = params[0].field.one
        out.append(acc)
    return out


def act_on_monomial_torus(matrix, exps: list[list[int]]) -> list[list[int]]:
    """Same action on a formal point x_i = prod_k u_k^{exps[i][k]}."""
    nparams = len(exps[0]) if exps else 0
    return [
        [sum(row[j] * exps[j][k] for j in range(4)) for k in range(nparams)]
        for row in matrix
    ]


@dataclass
class FixedTorus:
    """The fixed subtorus of a set of isometries, in normalized coordinates.

    Points are t with coords x_i = prod_k f_k^{free_basis[k][i]} * prod_l z_l
    where f_k are free parameters and z_l = zeta_{torsion[l]}^{torsion_gens[l][i]}.
    """
    rank: int
    torsion: list[int]               # nontrivial invariant factors, divisibility chain
    free_basis: list[list[int]]      # HNF rows, each a 4-vector of exponents
    torsion_gens: list[list[int]]    # exponent 4-vectors for zeta_{torsion[l]}

    def torsion_points(self, field: CycloField) -> list[list[Cyclo]]:
        pts = []
        for d, g in zip(self.torsion, self.torsion_gens):
            z = field.root_of_unity(d)
            pts.append([z ** (e % d) for e in g])
        return pts

    def param_string(self) -> str:
        names_free = ["x", "y", "z", "u"][: self.rank]
        parts = []
        for i in range(4):
            factors = []
            for k, name in enumerate(names_free):
                e = self.free_basis[k][i]
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            for l, d in enumerate(self.torsion):
                e = self.torsion_gens[l][i] % d
                name = f"w{d}_{l}"
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors) if factors else "1")
        cond = "".join(
            f", w{d}_{l}^{d}=1" for l, d in enumerate(self.torsion)
        )
        return "t_{" + ",".join(parts) + "}" + cond


def fixed_subtorus(matrices) -> FixedTorus:
    """Common fixed subtorus of the given isometries.

    A point t (coords x_i) is fixed by B iff prod_j x_j^{B_ij} = x_i for all i,
    i.e. the exponent vector lies in the kernel of (B - I) acting on the
    character lattice; the identity component comes from the rational kernel,
    the component group from the torsion of the cokernel.
    """
    stacked = []
    for b in matrices:
        for i in range(4):
            stacked.append([b[i][j] - (1 if i == j else 0) for j in range(4)])
    if not stacked:
        stacked = [[0, 0, 0, 0]]
    res = smith_normal_form(stacked)
    rank = 0
    torsion = []
    torsion_cols = []
    ncols = 4
    for j in range(ncols):
        dj = res.d[j] if j < len(res.d) else 0
        if dj == 0:
            rank += 1
        elif dj > 1:
            torsion.append(dj)
            torsion_cols.append(j)
    free_cols = [j for j in range(ncols)
                 if (res.d[j] if j < len(res.d) else 0) == 0]
    free_raw = [[res.v[i][j] for i in range(ncols)] for j in free_cols]
    free_basis = hermite_normal_form(free_raw) if free_raw else []
    # torsion generator for divisor d at SNF column j: x_i = zeta_d^{v[i][j]}
    torsion_gens = [[res.v[i][j] % d for i in range(ncols)]
                    for d, j in zip(torsion, torsion_cols)]
    ft = FixedTorus(rank=rank, torsion=torsion, free_basis=free_basis,
                    torsion_gens=torsion_gens)
    _verify_fixed_subtorus(matrices, ft)
    return ft


def _verify_fixed_subtorus(matrices, ft: FixedTorus):
    # free directions: (B - I) @ v = 0 exactly
    for v in ft.free_basis:
        for b in matrices:
            for i in range(4):
                assert sum(b[i][j] * v[j] for j in range(4)) == v[i]
    # torsion generators fixed modulo their order
    for d, g in zip(ft.torsion, ft.torsion_gens):
        for b in matrices:
            for i in range(4):
                assert (sum(b[i][j] * g[j] for j in range(4)) - g[i]) % d == 0


def stabilizer_indices(group: IsometryGroup, points: list[list[Cyclo]]) -> list[int]:
    """Indices of all isometries fixing every given torus point."""
    out = []
    for e in group.elements:
        if all(act_on_torus(e.matrix, p) == p for p in points):
            out.append(e.index)
    return out


def intersect_fixed_subtori(group: IsometryGroup, i: int, j: int) -> FixedTorus:
    return fixed_subtorus([group[i].matrix, group[j].matrix])


def torus_point(field: CycloField, spec) -> list[Cyclo]:
    """Parse a 4-tuple of scalar specs into torus coordinates.

    Accepted entries: integers, Cyclo values, or the strings 'i', '-i', 'w'
    (a primitive cube root of unity), 'w2', and 'z^k' powers of zeta_N.
    """
    out = []
    for s in spec:
        if isinstance(s, Cyclo):
            out.append(s)
        elif isinstance(s, int):
            out.append(field.scalar(s))
        elif s == "i":
            out.append(field.root_of_unity(4))
        elif s == "-i":
            out.append(-field.root_of_unity(4))
        elif s == "w":
            out.append(field.root_of_unity(3))
        elif s == "w2":
            out.append(field.root_of_unity(3) ** 2)
        elif isinstance(s, str) and s.startswith("z^"):
            out.append(field.zeta() ** int(s[2:]))
        else:
            raise ValueError(f"bad torus coordinate spec {s!r}")
    for x in out:
        assert not x.is_zero()
    return out
