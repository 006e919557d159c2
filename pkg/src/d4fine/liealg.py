"""Structure-constant models of algebras.

Provides the split Lie algebra of type D4 (dimension 28) in a Chevalley-style
basis with its root datum, the orthogonal Lie algebra so(b) of an arbitrary
nondegenerate symmetric bilinear form, and derivation algebras of arbitrary
(not necessarily associative) finite-dimensional algebras.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact import Cyclo, CycloField, ExactMatrix, LinearSpan, get_field


class AlgebraData:
    """A finite-dimensional algebra given by sparse structure constants.

    structure[(i, j)] is a dict {k: c} meaning e_i * e_j = sum_k c * e_k.
    Pairs with zero product are omitted.
    """

    def __init__(self, field: CycloField, dim: int, basis_names: list[str],
                 structure: dict, anticommutative: bool = False):
        self.field = field
        self.dim = dim
        self.basis_names = basis_names
        self.structure = structure
        self.anticommutative = anticommutative

    def product(self, x: list[Cyclo], y: list[Cyclo]) -> list[Cyclo]:
        out = [self.field.zero] * self.dim
        for i, a in enumerate(x):
            if a.is_zero():
                continue
            for j, b in enumerate(y):
                if b.is_zero():
                    continue
                terms = self.structure.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms.items():
                        out[k] = out[k] + ab * c
        return out

    bracket = product

    def basis_vector(self, i: int) -> list[Cyclo]:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def product_basis(self, i: int, j: int) -> dict:
        return self.structure.get((i, j), {})

    def check_anticommutative(self):
        for i in range(self.dim):
            for j in range(i, self.dim):
                pij = self.structure.get((i, j), {})
                pji = self.structure.get((j, i), {})
                assert set(pij) == set(pji)
                for k, c in pij.items():
                    assert pji[k] == -c, f"antisymmetry fails at ({i},{j})"

    def check_jacobi(self):
        zero = [self.field.zero] * self.dim
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(i + 1, self.dim):
                ej = self.basis_vector(j)
                bij = self.product(ei, ej)
                for k in range(j + 1, self.dim):
                    ek = self.basis_vector(k)
                    total = self.product(bij, ek)
                    bjk = self.product(ej, ek)
                    bki = self.product(ek, ei)
                    t2 = self.product(bjk, ei)
                    t3 = self.product(bki, ej)
                    s = [a + b + c for a, b, c in zip(total, t2, t3)]
                    assert s == zero, f"Jacobi fails at ({i},{j},{k})"


@dataclass
class RootDatum:
    """Root data of the split D4 model relative to its Cartan slots 0..3."""
    simple_functionals: list[list[int]]        # row i = alpha_i as functional in w-coords
    root_of_slot: list[tuple[int, ...] | None]  # slot -> root in simple-root coords
    cartan_matrix: list[list[int]]
    slot_of_root: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.slot_of_root:
            self.slot_of_root = {
                r: s for s, r in enumerate(self.root_of_slot) if r is not None
            }


# Positive-root slots in display order: (kind, i, j) with matrix conventions
#   b_{i,j} = E_{j,i} - E_{i+4,j+4},  c_{i,j} = E_{j,i+4} - E_{i,j+4},
#   d_{i,j} = E_{i+4,j} - E_{j+4,i}   (1-based i, j).
_POS_SLOTS = [
    ("b", 2, 1), ("b", 3, 2), ("b", 4, 3), ("c", 3, 4),
    ("b", 3, 1), ("b", 4, 1), ("b", 4, 2), ("c", 4, 1),
    ("c", 4, 2), ("c", 2, 1), ("c", 3, 1), ("c", 2, 3),
]
_POS_ROOTS = [
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 0, 0), (1, 1, 1, 0), (0, 1, 1, 0), (1, 1, 0, 1),
    (0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 1), (0, 1, 1, 1),
]

SIMPLE_FUNCTIONALS = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]]

CARTAN_MATRIX = [
    [2, -1, 0, 0],
    [-1, 2, -1, -1],
    [0, -1, 2, 0],
    [0, -1, 0, 2],
]


def _mat8(field: CycloField, pairs) -> list[list[Cyclo]]:
    m = [[field.zero] * 8 for _ in range(8)]
    for (r, c), v in pairs:
        m[r][c] = field.scalar(v)
    return m


def _d4_basis_matrices(field: CycloField) -> list[list[list[Cyclo]]]:
    mats = []
    for i in range(4):  # h_i = E_{ii} - E_{i+4,i+4}
        mats.append(_mat8(field, [((i, i), 1), ((i + 4, i + 4), -1)]))

    def slot_matrix(kind, i, j):
        i -= 1
        j -= 1
        if kind == "b":
            return _mat8(field, [((j, i), 1), ((i + 4, j + 4), -1)])
        if kind == "c":
            return _mat8(field, [((j, i + 4), 1), ((i, j + 4), -1)])
        return _mat8(field, [((i + 4, j), 1), ((j + 4, i), -1)])

    for kind, i, j in _POS_SLOTS:
        mats.append(slot_matrix(kind, i, j))
    for kind, i, j in _POS_SLOTS:  # negatives: b_{ij} -> b_{ji}, c_{ij} -> d_{ij}
        if kind == "b":
            mats.append(slot_matrix("b", j, i))
        else:
            mats.append(slot_matrix("d", i, j))
    return mats


def _slot_name(kind, i, j):
    return f"{kind}{i}{j}"


def _d4_basis_names() -> list[str]:
    names = [f"h{i}" for i in range(1, 5)]
    names += [_slot_name(k, i, j) for k, i, j in _POS_SLOTS]
    for kind, i, j in _POS_SLOTS:
        names.append(_slot_name("b", j, i) if kind == "b" else _slot_name("d", i, j))
    return names


def _matrix_bracket(field, a, b):
    def mul(x, y):
        return [[sum((x[r][k] * y[k][c] for k in range(8)), field.zero)
                 for c in range(8)] for r in range(8)]
    ab = mul(a, b)
    ba = mul(b, a)
    return [[ab[r][c] - ba[r][c] for c in range(8)] for r in range(8)]


def structure_constants_from_matrices(field: CycloField, mats, product):
    """Sparse structure constants of span(mats) under the given matrix product."""
    n = len(mats)
    size = len(mats[0])
    span = LinearSpan(field, size * size)
    for m in mats:
        added = span.add([x for row in m for x in row])
        assert added, "basis matrices must be linearly independent"
    structure = {}
    for i in range(n):
        for j in range(n):
            p = product(mats[i], mats[j])
            coeffs = span.decompose([x for row in p for x in row])
            assert coeffs is not None, "algebra not closed under product"
            entry = {k: c for k, c in enumerate(coeffs) if not c.is_zero()}
            if entry:
                structure[(i, j)] = entry
    return structure


def build_d4_split(field: CycloField | None = None) -> tuple[AlgebraData, RootDatum]:
    """The split Lie algebra so(8) preserving the hyperbolic form, with root datum."""
    field = field or get_field(24)
    mats = _d4_basis_matrices(field)
    structure = structure_constants_from_matrices(
        field, mats, lambda a, b: _matrix_bracket(field, a, b)
    )
    alg = AlgebraData(field, 28, _d4_basis_names(), structure, anticommutative=True)
    roots: list = [None] * 4
    roots += [tuple(r) for r in _POS_ROOTS]
    roots += [tuple(-x for x in r) for r in _POS_ROOTS]
    rd = RootDatum(SIMPLE_FUNCTIONALS, roots, CARTAN_MATRIX)
    _verify_root_spaces(alg, rd)
    return alg, rd


def _verify_root_spaces(alg: AlgebraData, rd: RootDatum):
    """[h_i, x_alpha] = alpha(h_i) x_alpha for every root slot."""
    f = alg.field
    for slot in range(4, alg.dim):
        root = rd.root_of_slot[slot]
        for i in range(4):
            # alpha(h_i): alpha = sum n_k alpha_k, alpha_k(h_i) = simple_functionals[k][i]
            val = sum(n * rd.simple_functionals[k][i] for k, n in enumerate(root))
            br = alg.product_basis(i, slot)
            expect = {slot: f.scalar(val)} if val else {}
            assert br == expect, f"root space check failed at slot {slot}"


def root_weight(rd: RootDatum, slot: int, exps: tuple[int, int, int, int]) -> int:
    """Integer weight <root(slot), exps> of a one-parameter torus direction."""
    root = rd.root_of_slot[slot]
    if root is None:
        return 0
    return sum(n * e for n, e in zip(root, exps))


def build_so_of_form(field: CycloField, b_rows) -> AlgebraData:
    """so(b) = {x : x^t b + b x = 0} for a nondegenerate symmetric matrix b.

    The basis consists of the maps m_{p,q}(x) = b(e_p, x) e_q - b(e_q, x) e_p
    for p < q; the matrix of m_{p,q} has column j equal to b[p][j] e_q - b[q][j] e_p.
    The result keeps the 8x8 (or nxn) representations in .matrices and the
    (p, q) index pairs in .pair_index.
    """
    n = len(b_rows)
    b = [[x if isinstance(x, Cyclo) else field.scalar(x) for x in row] for row in b_rows]
    mats = []
    pairs = []
    for p in range(n):
        for q in range(p + 1, n):
            m = [[field.zero] * n for _ in range(n)]
            for j in range(n):
                if not b[p][j].is_zero():
                    m[q][j] = m[q][j] + b[p][j]
                if not b[q][j].is_zero():
                    m[p][j] = m[p][j] - b[q][j]
            mats.append(m)
            pairs.append((p, q))
    structure = structure_constants_from_matrices(
        field, mats, lambda x, y: _matrix_bracket_n(field, x, y, n)
    )
    alg = AlgebraData(field, len(mats), [f"m{p}{q}" for p, q in pairs], structure,
                      anticommutative=True)
    alg.matrices = mats
    alg.pair_index = pairs
    alg.form = b
    # every basis element is b-skew
    for m in mats:
        _assert_skew(field, m, b)
    return alg


def _matrix_bracket_n(field, a, b, n):
    def mul(x, y):
        return [[sum((x[r][k] * y[k][c] for k in range(n)), field.zero)
                 for c in range(n)] for r in range(n)]
    ab = mul(a, b)
    ba = mul(b, a)
    return [[ab[r][c] - ba[r][c] for c in range(n)] for r in range(n)]


def _assert_skew(field, m, b):
    n = len(b)
    for r in range(n):
        for c in range(n):
            v = sum((m[k][r] * b[k][c] + b[r][k] * m[k][c] for k in range(n)),
                    field.zero)
            assert v.is_zero(), "matrix is not skew for the form"


def derivation_algebra(alg: AlgebraData) -> AlgebraData:
    """The Lie algebra of derivations d(xy) = d(x)y + x d(y) of an algebra."""
    f = alg.field
    n = alg.dim
    # unknowns: d[r][c], r, c in 0..n-1 (column c = image of e_c)
    # equations: for each i, j, k: sum_r d[k][r]? -- build rows directly
    rows = []
    for i in range(n):
        for j in range(i if alg.anticommutative else 0, n):
            prod_ij = alg.product_basis(i, j)
            for k in range(n):
                row = [f.zero] * (n * n)
                # d(e_i e_j)_k = sum_m prod_ij[m] d[k][m]
                for m, c in prod_ij.items():
                    row[k * n + m] = row[k * n + m] + c
                # (d e_i) e_j contributes sum_r d[r][i] (e_r e_j)_k
                for r in range(n):
                    c = alg.product_basis(r, j).get(k)
                    if c is not None:
                        row[r * n + i] = row[r * n + i] - c
                # e_i (d e_j) contributes sum_r d[r][j] (e_i e_r)_k
                for r in range(n):
                    c = alg.product_basis(i, r).get(k)
                    if c is not None:
                        row[r * n + j] = row[r * n + j] - c
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if not rows:
        rows = [[f.zero] * (n * n)]
    kernel = ExactMatrix(f, rows).kernel()
    mats = [[[v[r * n + c] for c in range(n)] for r in range(n)] for v in kernel]
    if not mats:
        return AlgebraData(f, 0, [], {}, anticommutative=True)
    structure = structure_constants_from_matrices(
        f, mats, lambda x, y: _matrix_bracket_n(f, x, y, n)
    )
    der = AlgebraData(f, len(mats), [f"D{i}" for i in range(len(mats))], structure,
                      anticommutative=True)
    der.matrices = mats
    return der


def bracket_words_for_positive_roots(alg: AlgebraData, rd: RootDatum) -> dict:
    """For each non-simple root slot, a decomposition v_slot = (1/c) [v_a, v_b].

    Returns {slot: (slot_a, slot_b, c)} where slot_a carries a simple root
    (or its negative) and slot_b a previously decomposed root, and
    [v_a, v_b] = c * v_slot with c nonzero. Covers negative slots as well so a
    graded automorphism is determined by its values on the simple slots and
    their negatives.
    """
    words = {}
    simple_pos = {rd.root_of_slot[s]: s for s in range(4, 8)}
    known = set(range(4, 8)) | set(range(16, 20))  # simple slots and their negatives
    remaining = [s for s in range(4, alg.dim) if s not in known]
    while remaining:
        progressed = False
        for slot in list(remaining):
            root = rd.root_of_slot[slot]
            for sroot, sslot in simple_pos.items():
                for a_slot, a_root in ((sslot, sroot),
                                       (sslot + 12, tuple(-x for x in sroot))):
                    rest = tuple(r - a for r, a in zip(root, a_root))
                    b_slot = rd.slot_of_root.get(rest)
                    if b_slot is None or b_slot not in known:
                        continue
                    c = alg.product_basis(a_slot, b_slot).get(slot)
                    if c is None or c.is_zero():
                        continue
                    words[slot] = (a_slot, b_slot, c)
                    known.add(slot)
                    remaining.remove(slot)
                    progressed = True
                    break
                if slot in known:
                    break
            if slot in known:
                continue
        assert progressed, "bracket word search stalled"
    return words
