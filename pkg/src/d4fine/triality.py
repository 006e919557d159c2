"""Composition algebras and triality: an independent construction of four of
the fine gradings through the orthogonal Lie algebra of an octonion norm.

The Cayley algebra gives the para-Hurwitz symmetric composition (x*y = conj(x)
conj(y)); trace-zero 3x3 matrices give the Okubo composition. Each symmetric
composition S induces an order-3 triality operator on so(q_S), and suitable
automorphism families of S embed as quasitori whose gradings must reproduce
the corresponding rows of the classification.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact import Cyclo, CycloField, ExactMatrix, LinearSpan, get_field
from .liealg import AlgebraData, build_so_of_form
from .autgroup import Automorphism, commute_check, verify_bracket_preserving
from .gradings import QuasitorusSpec


@dataclass
class CompositionAlgebraData:
    alg: AlgebraData                 # dim-8 product table (not anticommutative)
    b: list[list[Cyclo]]             # polar form of the multiplicative norm q
    conj: ExactMatrix | None = None  # conjugation (Cayley case only)
    name: str = ""

    @property
    def field(self) -> CycloField:
        return self.alg.field

    def q(self, x) -> Cyclo:
        # q(x) = b(x,x)/2
        f = self.field
        acc = f.zero
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, xj in enumerate(x):
                if not xj.is_zero():
                    acc = acc + xi * xj * self.b[i][j]
        return acc * f.scalar(1) / f.scalar(2)


# Cayley basis order: e1, e2, u1, u2, u3, v1, v2, v3
_CAYLEY_NAMES = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"]


def build_cayley(field: CycloField | None = None) -> CompositionAlgebraData:
    """The split Cayley algebra in its standard basis, with conjugation and
    the norm recovered from x * conj(x) = q(x) * 1, 1 = e1 + e2."""
    field = field or get_field(24)
    f = field
    E1, E2, U1, U2, U3, V1, V2, V3 = range(8)
    U = [U1, U2, U3]
    V = [V1, V2, V3]
    structure: dict = {}

    def put(i, j, k, c):
        structure.setdefault((i, j), {})[k] = f.scalar(c)

    put(E1, E1, E1, 1)
    put(E2, E2, E2, 1)
    for t in range(3):
        put(E1, U[t], U[t], 1)   # e1 u_j = u_j
        put(U[t], E2, U[t], 1)   # u_j e2 = u_j
        put(E2, V[t], V[t], 1)   # e2 v_j = v_j
        put(V[t], E1, V[t], 1)   # v_j e1 = v_j
        put(U[t], V[t], E1, 1)   # u_i v_i = e1
        put(V[t], U[t], E2, 1)   # v_i u_i = e2
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        put(U[i], U[j], V[k], 1)   # u_i u_j = v_k
        put(U[j], U[i], V[k], -1)  # = -u_j u_i
        put(V[i], V[j], U[k], -1)  # -v_i v_j = u_k
        put(V[j], V[i], U[k], 1)   # v_j v_i = u_k
    alg = AlgebraData(f, 8, _CAYLEY_NAMES, structure)
    conj = ExactMatrix.zeros(f, 8, 8)
    ent = conj.entries
    ent[E1][E2] = f.one
    ent[E2][E1] = f.one
    for t in range(3):
        ent[U[t]][U[t]] = -f.one
        ent[V[t]][V[t]] = -f.one
    # recover the polar form: x conj(y) + y conj(x) = b(x,y) (e1 + e2)
    b = [[f.zero] * 8 for _ in range(8)]
    for i in range(8):
        xi = alg.basis_vector(i)
        for j in range(8):
            xj = alg.basis_vector(j)
            s = [a + c for a, c in
                 zip(alg.product(xi, conj.apply(xj)), alg.product(xj, conj.apply(xi)))]
            # must be a multiple of 1 = e1 + e2
            val = s[E1]
            unit = [f.zero] * 8
            unit[E1] = val
            unit[E2] = val
            assert s == unit, "norm polarization is not scalar"
            b[i][j] = val
    c = CompositionAlgebraData(alg=alg, b=b, conj=conj, name="cayley")
    _verify_norm_multiplicative(c)
    return c


def _verify_norm_multiplicative(c: CompositionAlgebraData):
    """q(xy) = q(x) q(y), polarized over all basis quadruples via
    b(xy, xy') = q(x) b(y, y') for basis x and all basis y, y'."""
    alg = c.alg
    for i in range(8):
        x = alg.basis_vector(i)
        qx = c.q(x)
        imgs = [alg.product(x, alg.basis_vector(j)) for j in range(8)]
        for j in range(8):
            for k in range(8):
                lhs = _polar(c, imgs[j], imgs[k])
                assert lhs == qx * c.b[j][k], "norm not multiplicative"


def _polar(c: CompositionAlgebraData, x, y) -> Cyclo:
    f = c.field
    acc = f.zero
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if not yj.is_zero():
                acc = acc + xi * yj * c.b[i][j]
    return acc


def build_para_hurwitz(c: CompositionAlgebraData) -> CompositionAlgebraData:
    """x * y = conj(x) conj(y) on the Cayley module; same norm."""
    f = c.field
    alg = c.alg
    structure: dict = {}
    for i in range(8):
        xi = c.conj.apply(alg.basis_vector(i))
        for j in range(8):
            yj = c.conj.apply(alg.basis_vector(j))
            p = alg.product(xi, yj)
            entry = {k: v for k, v in enumerate(p) if not v.is_zero()}
            if entry:
                structure[(i, j)] = entry
    ph = CompositionAlgebraData(
        alg=AlgebraData(f, 8, _CAYLEY_NAMES, structure),
        b=c.b, conj=None, name="para-hurwitz")
    _verify_symmetric_composition(ph)
    return ph


def _verify_symmetric_composition(s: CompositionAlgebraData):
    """(x*y)*x = q(x) y = x*(y*x), polarized in x over all basis pairs."""
    alg = s.alg
    f = s.field
    for i in range(8):
        for i2 in range(8):
            bii = s.b[i][i2]
            for j in range(8):
                y = alg.basis_vector(j)
                xi, xi2 = alg.basis_vector(i), alg.basis_vector(i2)
                lhs = [a + c for a, c in
                       zip(alg.product(alg.product(xi, y), xi2),
                           alg.product(alg.product(xi2, y), xi))]
                rhs = [bii * v for v in y]
                assert lhs == rhs, "symmetric composition identity fails (left)"
                lhs = [a + c for a, c in
                       zip(alg.product(xi, alg.product(y, xi2)),
                           alg.product(xi2, alg.product(y, xi)))]
                assert lhs == rhs, "symmetric composition identity fails (right)"


# Okubo basis: trace-zero 3x3 matrices
_OKUBO_BASIS = [
    ((1, 0, 0), (0, -1, 0), (0, 0, 0)),   # h1 = E11 - E22
    ((0, 0, 0), (0, 1, 0), (0, 0, -1)),   # h2 = E22 - E33
    ((0, 1, 0), (0, 0, 0), (0, 0, 0)),    # E12
    ((0, 0, 0), (1, 0, 0), (0, 0, 0)),    # E21
    ((0, 0, 1), (0, 0, 0), (0, 0, 0)),    # E13
    ((0, 0, 0), (0, 0, 0), (1, 0, 0)),    # E31
    ((0, 0, 0), (0, 0, 1), (0, 0, 0)),    # E23
    ((0, 0, 0), (0, 0, 0), (0, 1, 0)),    # E32
]
_OKUBO_NAMES = ["h1", "h2", "E12", "E21", "E13", "E31", "E23", "E32"]


def _m3(field, rows):
    return [[x if isinstance(x, Cyclo) else field.scalar(x) for x in row]
            for row in rows]


def _m3_mul(f, a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), f.zero)
             for j in range(3)] for i in range(3)]


def _m3_trace(f, a):
    return a[0][0] + a[1][1] + a[2][2]


def okubo_product(f: CycloField, x, y):
    """x*y = mu xy + (1-mu) yx - tr(xy)/3, with mu = (1-omega)/3."""
    w = f.root_of_unity(3)
    mu = (f.one - w) / f.scalar(3)
    xy = _m3_mul(f, x, y)
    yx = _m3_mul(f, y, x)
    tr = _m3_trace(f, xy) / f.scalar(3)
    out = [[mu * xy[i][j] + (f.one - mu) * yx[i][j] for j in range(3)]
           for i in range(3)]
    for i in range(3):
        out[i][i] = out[i][i] - tr
    return out


def _okubo_coords(f, span: LinearSpan, m):
    return span.decompose([x for row in m for x in row])


def build_okubo(field: CycloField | None = None) -> CompositionAlgebraData:
    """The Okubo symmetric composition on trace-zero 3x3 matrices; the norm is
    recovered from (x*y)*x = q(x) y rather than postulated."""
    f = field or get_field(24)
    basis = [_m3(f, rows) for rows in _OKUBO_BASIS]
    span = LinearSpan(f, 9)
    for m in basis:
        assert span.add([x for row in m for x in row])
    structure: dict = {}
    for i in range(8):
        for j in range(8):
            p = okubo_product(f, basis[i], basis[j])
            coords = _okubo_coords(f, span, p)
            assert coords is not None, "Okubo product left the trace-zero space"
            entry = {k: c for k, c in enumerate(coords) if not c.is_zero()}
            if entry:
                structure[(i, j)] = entry
    alg = AlgebraData(f, 8, _OKUBO_NAMES, structure)
    b = _recover_polar_form(alg)
    ok = CompositionAlgebraData(alg=alg, b=b, conj=None, name="okubo")
    _verify_symmetric_composition(ok)
    return ok


def _recover_polar_form(alg: AlgebraData) -> list[list[Cyclo]]:
    """Polar form from the polarized composition identity
    (x*y)*x' + (x'*y)*x = b(x,x') y, consistency-checked over all basis y."""
    f = alg.field
    n = alg.dim
    b = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        for i2 in range(i, n):
            xi, xi2 = alg.basis_vector(i), alg.basis_vector(i2)
            val = None
            for j in range(n):
                y = alg.basis_vector(j)
                s = [a + c for a, c in
                     zip(alg.product(alg.product(xi, y), xi2),
                         alg.product(alg.product(xi2, y), xi))]
                # s must equal val * y
                cand = s[j]
                rest = [f.zero] * n
                rest[j] = cand
                assert s == rest, "composition identity is not scalar on basis"
                if val is None:
                    val = cand
                else:
                    assert val == cand, "inconsistent norm recovery"
            b[i][i2] = b[i2][i] = val
    return b


@dataclass
class TrialityOperator:
    aut: Automorphism            # 28x28 matrix on so(b)
    so: AlgebraData              # the orthogonal algebra it acts on
    comp: CompositionAlgebraData
    plus: ExactMatrix            # the companion map g -> g^+


def triality_operator(s: CompositionAlgebraData) -> TrialityOperator:
    """Solve g(x*y) = g^-(x)*y + x*g^+(y) for every g in so(b); theta: g -> g^-.

    One elimination handles all 28 right-hand sides: the 512x56 coefficient
    matrix (8x8 basis pairs by the two unknown so(b) elements) is shared.
    """
    f = s.field
    so = build_so_of_form(f, s.b)
    n = so.dim
    assert n == 28
    mats = so.matrices
    alg = s.alg

    def apply8(m, vec):
        return [sum((m[r][c] * vec[c] for c in range(8)), f.zero) for r in range(8)]

    basis_vecs = [alg.basis_vector(i) for i in range(8)]
    # coefficient columns: g^- candidate a: rows (x,y,coord) of m_a(x)*y;
    # g^+ candidate a: x*m_a(y)
    rows = []
    rhs_rows = []
    g_imgs = [[apply8(m, v) for v in basis_vecs] for m in mats]
    prods = [[alg.product(basis_vecs[i], basis_vecs[j]) for j in range(8)]
             for i in range(8)]
    for i in range(8):
        for j in range(8):
            minus_cols = [alg.product(g_imgs[a][i], basis_vecs[j]) for a in range(n)]
            plus_cols = [alg.product(basis_vecs[i], g_imgs[a][j]) for a in range(n)]
            rhs_cols = [apply8(mats[a], prods[i][j]) for a in range(n)]
            for coord in range(8):
                rows.append([minus_cols[a][coord] for a in range(n)]
                            + [plus_cols[a][coord] for a in range(n)])
                rhs_rows.append([rhs_cols[a][coord] for a in range(n)])
    system = ExactMatrix(f, rows)
    rhs = ExactMatrix(f, rhs_rows)
    sol = system.solve(rhs)  # raises if inconsistent or underdetermined
    theta = ExactMatrix(f, [[sol.entries[i][j] for j in range(n)]
                            for i in range(n)])
    plus = ExactMatrix(f, [[sol.entries[n + i][j] for j in range(n)]
                           for i in range(n)])
    assert (theta ** 3).is_identity(), "triality operator must have order 3"
    verify_bracket_preserving(so, theta)
    aut = Automorphism(kind="matrix", matrix=theta, name=f"theta[{s.name}]")
    return TrialityOperator(aut=aut, so=so, comp=s, plus=plus)


def similitude_multiplier(s: CompositionAlgebraData, fm: ExactMatrix) -> Cyclo:
    """The scalar lam with b(f x, f y) = lam b(x, y); error if f is not a
    similitude of the norm."""
    f = s.field
    cols = [fm.apply(s.alg.basis_vector(i)) for i in range(8)]
    lam = None
    for i in range(8):
        for j in range(8):
            val = _polar(s, cols[i], cols[j])
            if lam is None and not s.b[i][j].is_zero():
                lam = val * s.b[i][j].inverse()
    if lam is None:
        raise ValueError("degenerate form")
    for i in range(8):
        for j in range(8):
            if _polar(s, cols[i], cols[j]) != lam * s.b[i][j]:
                raise ValueError("matrix is not a similitude of the norm")
    return lam


def conjugation_embedding(so: AlgebraData, s: CompositionAlgebraData,
                          fm: ExactMatrix, name: str = "") -> Automorphism:
    """The automorphism g -> f g f^-1 of so(b), for f a similitude of q."""
    similitude_multiplier(s, fm)  # raises when f is not a similitude
    f = s.field
    fi = fm.inverse()
    span = LinearSpan(f, 64)
    for m in so.matrices:
        assert span.add([x for row in m for x in row])
    n = so.dim
    cols = []
    for m in so.matrices:
        conj = fm * ExactMatrix(f, m) * fi
        coords = span.decompose([x for row in conj.entries for x in row])
        assert coords is not None, "conjugation left so(b)"
        cols.append(coords)
    mat = ExactMatrix(f, [[cols[j][i] for j in range(n)] for i in range(n)])
    verify_bracket_preserving(so, mat)
    return Automorphism(kind="matrix", matrix=mat, name=name or "conj")


def diagonal_weight_family(so: AlgebraData, s: CompositionAlgebraData,
                           exps: list[int], name: str = "") -> Automorphism:
    """One-parameter family In(diag(t^exps)) acting on so(b) in diagonal-
    monomial form: slot (p, q) has weight exps[p] + exps[q].

    Requires diag(t^exps) to be a formal isometry of b: whenever b[i][j] is
    nonzero, exps[i] + exps[j] = 0.
    """
    for i in range(8):
        for j in range(8):
            if not s.b[i][j].is_zero():
                assert exps[i] + exps[j] == 0, "family is not a formal isometry"
    weights = [(exps[p] + exps[q],) for p, q in so.pair_index]
    return Automorphism(kind="diagonal-monomial", weights=weights,
                        name=name or f"fam{exps}")


# GO-torus element t_{lam,a,b,g} = diag(lam, 1/lam, a, b, g, 1/a, 1/b, 1/g)
def go_torus(f: CycloField, lam, a, b, g) -> ExactMatrix:
    vals = [lam, lam.inverse(), a, b, g, a.inverse(), b.inverse(), g.inverse()]
    return ExactMatrix(f, [[vals[i] if i == j else f.zero for j in range(8)]
                           for i in range(8)])


def admissible_triple_diagonal(s: CompositionAlgebraData,
                               sqrt_lam: Cyclo, sqrt_a: Cyclo,
                               sqrt_b: Cyclo, sqrt_g: Cyclo):
    """(t^-, t^+) for the diagonal similitude t_{lam,a,b,g} with lam = sqrt_lam^2
    etc.; the square-root branches are the caller's explicit witnesses.

    Verifies the defining identity mu(t)^{-1} t(x*y) = t^-(x) * t^+(y) on all
    basis pairs of the symmetric composition; raises if the chosen branches do
    not satisfy it.
    """
    f = s.field
    sl, sa, sb, sg = sqrt_lam, sqrt_a, sqrt_b, sqrt_g
    lam, a, b, g = sl * sl, sa * sa, sb * sb, sg * sg
    t = go_torus(f, lam, a, b, g)
    lam_m = (sa * sb * sg * sl).inverse()
    a_m = sl * sa * (sb * sg).inverse()
    b_m = sl * sb * (sa * sg).inverse()
    g_m = sl * sg * (sa * sb).inverse()
    lam_p = sa * sb * sg * sl.inverse()
    a_p = sa * (sb * sg * sl).inverse()
    b_p = sb * (sa * sg * sl).inverse()
    g_p = sg * (sa * sb * sl).inverse()
    t_m = go_torus(f, lam_m, a_m, b_m, g_m)
    t_p = go_torus(f, lam_p, a_p, b_p, g_p)
    mu = similitude_multiplier(s, t)
    mu_inv = mu.inverse()
    alg = s.alg
    for i in range(8):
        xi = t_m.apply(alg.basis_vector(i))
        for j in range(8):
            yj = t_p.apply(alg.basis_vector(j))
            lhs = [mu_inv * v for v in
                   t.apply(alg.product(alg.basis_vector(i), alg.basis_vector(j)))]
            rhs = alg.product(xi, yj)
            if lhs != rhs:
                raise ValueError(
                    "admissible-triple identity fails for the chosen branches"
                )
    return t_m, t_p


# The order-2 similitude used by the P2 family, in the Cayley basis order
# (e1, e2, u1, u2, u3, v1, v2, v3).
F_MATRIX_ROWS = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
]

# 3x3 ingredients of the P3 family
P1_3X3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def okubo_inner_matrix(s: CompositionAlgebraData, p_rows) -> ExactMatrix:
    """In(p): x -> p x p^{-1} as an 8x8 matrix in the Okubo basis."""
    f = s.field
    p = _m3(f, p_rows)
    # invert the 3x3 exactly
    pm = ExactMatrix(f, p)
    pi = pm.inverse().entries
    span = LinearSpan(f, 9)
    basis = [_m3(f, rows) for rows in _OKUBO_BASIS]
    for m in basis:
        span.add([x for row in m for x in row])
    cols = []
    for m in basis:
        img = _m3_mul(f, _m3_mul(f, p, m), pi)
        coords = span.decompose([x for row in img for x in row])
        assert coords is not None
        cols.append(coords)
    return ExactMatrix(f, [[cols[j][i] for j in range(8)] for i in range(8)])


def okubo_inner_preserves_product(s: CompositionAlgebraData, p_rows) -> bool:
    f = s.field
    m = okubo_inner_matrix(s, p_rows)
    alg = s.alg
    for i in range(8):
        xi = m.apply(alg.basis_vector(i))
        for j in range(8):
            yj = m.apply(alg.basis_vector(j))
            if alg.product(xi, yj) != m.apply(
                alg.product(alg.basis_vector(i), alg.basis_vector(j))
            ):
                return False
    return True


def build_P(i: int, field: CycloField | None = None):
    """The quasitorus P_i (i = 1..4) on the orthogonal algebra of the relevant
    symmetric composition; returns (so_algebra, QuasitorusSpec)."""
    f = field or get_field(24)
    if i in (1, 2):
        cayley = build_cayley(f)
        ph = build_para_hurwitz(cayley)
        theta = triality_operator(ph)
        so = theta.so
        if i == 1:
            fam_a = diagonal_weight_family(so, ph, [0, 0, 1, 0, -1, -1, 0, 1],
                                           name="t_{a,1}")
            fam_b = diagonal_weight_family(so, ph, [0, 0, 0, 1, -1, 0, -1, 1],
                                           name="t_{1,b}")
            spec = QuasitorusSpec(finite_gens=[theta.aut],
                                  continuous_gens=[fam_a, fam_b], name="P1")
        else:
            t1 = _cayley_torus(so, ph, f.one, -f.one)   # t_{1,-1}
            t2 = _cayley_torus(so, ph, -f.one, f.one)   # t_{-1,1}
            fmat = ExactMatrix.from_rows(f, F_MATRIX_ROWS)
            fd = conjugation_embedding(so, ph, fmat, name="f")
            spec = QuasitorusSpec(finite_gens=[theta.aut, t1, t2, fd],
                                  continuous_gens=[], name="P2")
    elif i in (3, 4):
        ok = build_okubo(f)
        theta = triality_operator(ok)
        so = theta.so
        if i == 3:
            w = f.root_of_unity(3)
            p2_rows = [[f.one, 0, 0], [0, w, 0], [0, 0, w * w]]
            assert okubo_inner_preserves_product(ok, P1_3X3)
            assert okubo_inner_preserves_product(ok, p2_rows)
            in1 = conjugation_embedding(so, ok, okubo_inner_matrix(ok, P1_3X3),
                                        name="In(p1)")
            in2 = conjugation_embedding(so, ok, okubo_inner_matrix(ok, p2_rows),
                                        name="In(p2)")
            spec = QuasitorusSpec(finite_gens=[theta.aut, in1, in2], name="P3",
                                  continuous_gens=[])
        else:
            # In(diag(a, 1/a, 1)) and In(diag(1, 1/b, b)) on the Okubo basis
            # (h1, h2, E12, E21, E13, E31, E23, E32): E_{rs} -> (d_r/d_s) E_{rs}
            fam_a = diagonal_weight_family(so, ok, [0, 0, 2, -2, 1, -1, -1, 1],
                                           name="In(a,1/a,1)")
            fam_b = diagonal_weight_family(so, ok, [0, 0, 1, -1, -1, 1, -2, 2],
                                           name="In(1,1/b,b)")
            spec = QuasitorusSpec(finite_gens=[theta.aut],
                                  continuous_gens=[fam_a, fam_b], name="P4")
    else:
        raise ValueError("i must be in 1..4")
    bad = commute_check(spec.finite_gens + spec.continuous_gens)
    if bad:
        raise ValueError(f"P{i} family does not commute: {bad}")
    return so, spec


def _cayley_torus(so: AlgebraData, ph: CompositionAlgebraData,
                  a: Cyclo, b: Cyclo) -> Automorphism:
    """t_{a,b}^diamond: conjugation by diag(1,1,a,b,1/(ab),1/a,1/b,ab) on so."""
    f = ph.field
    ab = a * b
    vals = [f.one, f.one, a, b, ab.inverse(), a.inverse(), b.inverse(), ab]
    fm = ExactMatrix(f, [[vals[i] if i == j else f.zero for j in range(8)]
                         for i in range(8)])
    return conjugation_embedding(so, ph, fm, name=f"t_{{{a},{b}}}")
