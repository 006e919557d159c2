"""Gradings induced by commuting families of semisimple automorphisms.

A quasitorus is specified by finite-order matrix automorphisms plus formal
one-parameter diagonal families. The induced grading is the joint eigenspace
decomposition; labels combine eigenvalue exponents (mod the generator orders)
with exact integer weights, so continuous parameters are never specialized.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact import ExactMatrix, LinearSpan, lattice_quotient_invariants
from .liealg import AlgebraData, RootDatum
from .autgroup import (
    Automorphism,
    Lifter,
    commute_check,
    compose,
    order_of,
    repair_commuting_twist,
    torus_automorphism,
    torus_monomial_family,
)
from .weyl import IsometryGroup, fixed_subtorus, torus_point


@dataclass
class QuasitorusSpec:
    finite_gens: list[Automorphism]
    continuous_gens: list[Automorphism]
    name: str = ""


@dataclass
class GradingComponent:
    finite_label: tuple[int, ...]
    weight_label: tuple[int, ...]
    basis: list[list]              # exact coordinate vectors

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class Grading:
    algebra: AlgebraData
    components: list[GradingComponent]
    finite_orders: list[int]       # one entry per (nontrivial) finite generator
    n_params: int                  # number of continuous generators


@dataclass
class GradingInvariants:
    type: tuple[int, ...]
    group_rank: int
    group_torsion: tuple[int, ...]
    dim_identity: int


def compute_grading(alg: AlgebraData, spec: QuasitorusSpec,
                    verify: bool = True) -> Grading:
    f = alg.field
    bad = commute_check(spec.finite_gens + spec.continuous_gens)
    if bad:
        raise ValueError(f"generator family does not commute: pairs {bad}")
    for g in spec.continuous_gens:
        assert g.kind == "diagonal-monomial" and g.n_params() == 1
    # 1. partition the basis slots by the integer weight vectors
    weight_of = [
        tuple(g.weights[slot][0] for g in spec.continuous_gens)
        for slot in range(alg.dim)
    ]
    blocks: dict[tuple, list[int]] = {}
    for slot, w in enumerate(weight_of):
        blocks.setdefault(w, []).append(slot)
    components = []
    for w, slots in blocks.items():
        basis = []
        for s in slots:
            v = [f.zero] * alg.dim
            v[s] = f.one
            basis.append(v)
        components.append(GradingComponent((), w, basis))
    # 2. refine by exact eigenspaces of each finite generator
    finite_orders = []
    for g in spec.finite_gens:
        n = order_of(g)
        assert isinstance(n, int), "finite generator has no finite order"
        if n == 1:
            continue  # identity: trivial factor, dropped
        finite_orders.append(n)
        zeta_n = f.root_of_unity(n)
        new_components = []
        for comp in components:
            m = len(comp.basis)
            images = [g.apply(v) for v in comp.basis]
            pieces = 0
            for k in range(n):
                ev = zeta_n ** k
                rows = [[images[c][r] - ev * comp.basis[c][r] for c in range(m)]
                        for r in range(alg.dim)]
                coeffs = ExactMatrix(f, rows).kernel()
                if not coeffs:
                    continue
                basis = []
                for cvec in coeffs:
                    v = [f.zero] * alg.dim
                    for c, coeff in enumerate(cvec):
                        if not coeff.is_zero():
                            for r in range(alg.dim):
                                v[r] = v[r] + coeff * comp.basis[c][r]
                    basis.append(v)
                pieces += len(basis)
                new_components.append(
                    GradingComponent(comp.finite_label + (k,), comp.weight_label,
                                     basis))
            assert pieces == m, "finite generator not semisimple on a block"
        components = new_components
    # 3. canonicalize: echelonized bases, sorted labels
    for comp in components:
        mat, _ = ExactMatrix(f, comp.basis).rref()
        comp.basis = mat.entries[: len(comp.basis)]
    components.sort(key=lambda c: (c.finite_label, c.weight_label))
    grading = Grading(alg, components, finite_orders, len(spec.continuous_gens))
    if verify:
        verify_grading(grading)
    return grading


def _label_sum(g: Grading, a: GradingComponent, b: GradingComponent):
    fin = tuple((x + y) % n for x, y, n in
                zip(a.finite_label, b.finite_label, g.finite_orders))
    w = tuple(x + y for x, y in zip(a.weight_label, b.weight_label))
    return fin, w


def verify_grading(g: Grading):
    alg = g.algebra
    f = alg.field
    assert sum(c.dim for c in g.components) == alg.dim
    total = LinearSpan(f, alg.dim)
    for comp in g.components:
        for v in comp.basis:
            assert total.add(v), "components are not independent"
    by_label = {(c.finite_label, c.weight_label): c for c in g.components}
    assert len(by_label) == len(g.components), "duplicate component labels"
    spans = {lab: LinearSpan(f, alg.dim) for lab in by_label}
    for lab, comp in by_label.items():
        for v in comp.basis:
            spans[lab].add(v)
    for a in g.components:
        for b in g.components:
            target = _label_sum(g, a, b)
            for x in a.basis:
                for y in b.basis:
                    z = alg.product(x, y)
                    if all(c.is_zero() for c in z):
                        continue
                    assert target in by_label, (
                        f"product lands outside the support: {target}"
                    )
                    assert spans[target].contains(z), (
                        f"multiplicativity fails: {a.finite_label}+{b.finite_label}"
                    )


def grading_type(g: Grading) -> tuple[int, ...]:
    hist: dict[int, int] = {}
    for c in g.components:
        hist[c.dim] = hist.get(c.dim, 0) + 1
    top = max(hist)
    out = tuple(hist.get(i, 0) for i in range(1, top + 1))
    assert sum(i * h for i, h in enumerate(out, start=1)) == g.algebra.dim
    return out


def grading_group(g: Grading) -> tuple[int, tuple[int, ...]]:
    """Rank and invariant factors of the subgroup generated by the support
    inside Z_{n_1} x ... x Z_{n_k} x Z^r."""
    k = len(g.finite_orders)
    dim = k + g.n_params
    if dim == 0:
        return 0, ()
    support = [list(c.finite_label) + list(c.weight_label) for c in g.components]
    relations = []
    for i, n in enumerate(g.finite_orders):
        row = [0] * dim
        row[i] = n
        relations.append(row)
    rank, torsion = lattice_quotient_invariants(support, relations, dim)
    return rank, tuple(torsion)


def identity_component_dim(g: Grading) -> int:
    zero = (tuple([0] * len(g.finite_orders)), tuple([0] * g.n_params))
    for c in g.components:
        if (c.finite_label, c.weight_label) == zero:
            return c.dim
    return 0


def fixed_subalgebra_dim(alg: AlgebraData, fam: list[Automorphism]) -> int:
    """Dimension of the joint fixed space of the family (eigenvalue 1
    throughout; a formal one-parameter family fixes exactly its weight-0 slots)."""
    f = alg.field
    rows = []
    for a in fam:
        if a.kind == "matrix":
            for i in range(alg.dim):
                row = list(a.matrix.entries[i])
                row[i] = row[i] - f.one
                rows.append(row)
        else:
            for slot, w in enumerate(a.weights):
                if any(x != 0 for x in w):
                    row = [f.zero] * alg.dim
                    row[slot] = f.one
                    rows.append(row)
    if not rows:
        return alg.dim
    return len(ExactMatrix(f, rows).kernel())


# ---------------------------------------------------------------------------
# The fourteen fine gradings (generator data and expected invariants)
# ---------------------------------------------------------------------------

# Generators per row: finite torus points (root-of-unity 4-tuples), continuous
# one-parameter exponent vectors, and isometry lifts with optional torus twist.
TABLE1_SPECS = {
    "Q1": dict(tori=[(-1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, 1)],
               params=[], lifts=[(1, None), (3, None), (19, None), (259, None)]),
    "Q2": dict(tori=[(-1, 1, 1, 1), (1, 1, -1, -1)],
               params=[(-1, 1, 0, 0)], lifts=[(1, None), (3, None), (19, None)]),
    "Q3": dict(tori=[(-1, 1, 1, 1)],
               params=[(-1, 1, 0, 0), (-1, 0, 1, 1)], lifts=[(1, None), (3, None)]),
    "Q4": dict(tori=[],
               params=[(-1, 1, 0, 0), (-1, 0, 1, 1), (1, 0, 0, -2)],
               lifts=[(3, None)]),
    "Q5": dict(tori=[(-1, 1, 1, 1), (1, -1, 1, -1)],
               params=[(-1, 0, 1, 1)], lifts=[(49, (1, -1, 1, 1))]),
    "Q6": dict(tori=[(1, -1, 1, 1), (-1, -1, 1, 1)],
               params=[], lifts=[(259, (-1, -1, -1, -1)), (7, None)]),
    "Q7": dict(tori=[(-1, 1, -1, 1), (1, -1, 1, 1)],
               params=[(0, 0, 0, 1)], lifts=[(280, None), (634, None)]),
    "Q8": dict(tori=[(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, -1)],
               params=[],
               lifts=[(1, ("i", 1, "i", "-i")), (259, (1, 1, 1, -1)),
                      (243, (-1, "-i", 1, 1))]),
    "Q9": dict(tori=[(-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)],
               params=[], lifts=[(259, None)]),
    "Q10": dict(tori=[(-1, 1, 1, 1)],
                params=[(-1, 1, 0, 0), (-1, 0, 1, 1)], lifts=[(1, None)]),
    "Q11": dict(tori=[],
                params=[(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
                lifts=[]),
    "Q12": dict(tori=[(1, -1, 1, 1), (-1, -1, -1, -1)],
                params=[], lifts=[(20, None)]),
    "Q13": dict(tori=[],
                params=[(0, 1, -2, 0), (1, 0, -3, 1)], lifts=[(4, None)]),
    "Q14": dict(tori=[(1, "w", "w", "w"), ("w", 1, "w", 1)],
                params=[], lifts=[(59, None)]),
}

# Expected invariants: (rank, torsion invariant factors), type, dim L_e.
TABLE1_EXPECTED = {
    "Q1": ((0, (2, 2, 2, 2, 2, 2, 2)), (28,), 0),
    "Q2": ((1, (2, 2, 2, 2, 2)), (28,), 1),
    "Q3": ((2, (2, 2, 2)), (26, 1), 2),
    "Q4": ((3, (2,)), (25, 0, 1), 3),
    "Q5": ((1, (2, 2, 2)), (25, 0, 1), 1),
    "Q6": ((0, (2, 2, 2, 4)), (24, 2), 0),
    "Q7": ((1, (2, 2, 2, 2)), (28,), 1),
    "Q8": ((0, (2, 2, 2, 2, 2, 2)), (28,), 0),
    "Q9": ((0, (2, 2, 2, 2, 2)), (24, 0, 0, 1), 0),
    "Q10": ((2, (2, 2)), (20, 4), 2),
    "Q11": ((4, ()), (24, 0, 0, 1), 4),
    "Q12": ((0, (2, 2, 6)), (14, 7), 0),
    "Q13": ((2, (3,)), (26, 1), 2),
    "Q14": ((0, (3, 3, 3)), (24, 2), 0),
}


class GradingContext:
    """Shared machinery: field, algebra, root datum, isometry group, lifter."""

    def __init__(self, field=None):
        from .exact import get_field
        self.field = field or get_field(24)
        self.alg, self.rd = __import__(
            "d4fine.liealg", fromlist=["build_d4_split"]
        ).build_d4_split(self.field)
        self.group = IsometryGroup()
        self.lifter = Lifter(self.alg, self.rd)

    def build_spec(self, name: str) -> QuasitorusSpec:
        data = TABLE1_SPECS[name]
        alg, rd, f = self.alg, self.rd, self.field
        finite = [torus_automorphism(alg, rd, torus_point(f, t), name=f"t{t}")
                  for t in data["tori"]]
        continuous = [torus_monomial_family(alg, rd, e) for e in data["params"]]
        for idx, twist in data["lifts"]:
            a = self.lifter.extend(self.group[idx])
            if twist is not None:
                a = compose(a, torus_automorphism(alg, rd, torus_point(f, twist)))
                a.name = f"lift{idx}*twist"
            finite.append(a)
        family = repair_commuting_twist(alg, rd, continuous + finite)
        finite = [a for a in family if a.kind == "matrix"]
        continuous = [a for a in family if a.kind == "diagonal-monomial"]
        return QuasitorusSpec(finite_gens=finite, continuous_gens=continuous,
                              name=name)

    def grading(self, name: str) -> Grading:
        return compute_grading(self.alg, self.build_spec(name))

    def invariants(self, name: str) -> GradingInvariants:
        g = self.grading(name)
        rank, torsion = grading_group(g)
        return GradingInvariants(type=grading_type(g), group_rank=rank,
                                 group_torsion=torsion,
                                 dim_identity=identity_component_dim(g))

    def q_family_of_index(self, j: int) -> list[Automorphism]:
        """The Q(j, id) generator family: the lift of the representative j
        plus generators of its fixed subtorus."""
        alg, rd, f = self.alg, self.rd, self.field
        fam = [self.lifter.extend(self.group[j])]
        ft = fixed_subtorus([self.group[j].matrix])
        for v in ft.free_basis:
            fam.append(torus_monomial_family(alg, rd, tuple(v)))
        for p in ft.torsion_points(f):
            fam.append(torus_automorphism(alg, rd, p))
        return fam


def table1_suite(ctx: GradingContext) -> list[dict]:
    """Compute all fourteen rows and compare to the expected invariants."""
    records = []
    for name in TABLE1_SPECS:
        inv = ctx.invariants(name)
        (rank, torsion), typ, dim_e = TABLE1_EXPECTED[name]
        record = dict(
            name=name,
            group_rank=inv.group_rank, group_torsion=list(inv.group_torsion),
            type=list(inv.type), dim_identity=inv.dim_identity,
            expected=dict(group_rank=rank, group_torsion=list(torsion),
                          type=list(typ), dim_identity=dim_e),
            match=(inv.group_rank == rank and inv.group_torsion == torsion
                   and inv.type == typ and inv.dim_identity == dim_e),
        )
        records.append(record)
    return records
