"""Concrete automorphisms of the 28-dimensional split d4.

Contains diagonal torus automorphisms t_{a,b,c,d}, lifts of root-system
isometries to algebra automorphisms, and utilities for orders, commutators,
and torus-twist repair of generator families.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact import Cyclo, ExactMatrix, solve_congruence
from .liealg import AlgebraData, RootDatum, bracket_words_for_positive_roots, root_weight
from .weyl import IsometryElement, act_on_torus, mat_inv_int


class TwistSearchError(RuntimeError):
    """No commuting torus twist found within the conductor bound."""

    def __init__(self, obstructions):
        self.obstructions = obstructions
        super().__init__(f"no commuting twist; obstruction pairs {obstructions}")


@dataclass
class Automorphism:
    """A matrix automorphism or a formal one-parameter diagonal family.

    Matrix form: a 28x28 (or dim x dim) ExactMatrix acting on coordinates.
    Diagonal-monomial form: weights[i] is the integer exponent tuple of basis
    slot i in the formal parameters; the family is t -> diag(t^weights[i]).
    """
    kind: str                      # "matrix" | "diagonal-monomial"
    matrix: ExactMatrix | None = None
    weights: list[tuple[int, ...]] | None = None
    name: str = ""
    order_hint: int | None = None

    def apply(self, vec):
        assert self.kind == "matrix"
        return self.matrix.apply(vec)

    def n_params(self) -> int:
        return len(self.weights[0]) if self.kind == "diagonal-monomial" else 0


def verify_bracket_preserving(alg: AlgebraData, m: ExactMatrix):
    """sigma([x,y]) = [sigma(x), sigma(y)] on all basis pairs, exactly.

    Works on the sparse column supports so that monomial-shaped automorphisms
    (torus elements and isometry lifts) verify in linear time.
    """
    n = alg.dim
    zero = alg.field.zero
    cols = [[(r, m.entries[r][c]) for r in range(n)
             if not m.entries[r][c].is_zero()] for c in range(n)]

    def sparse_product(xs, ys):
        out: dict = {}
        for i, a in xs:
            for j, b in ys:
                terms = alg.structure.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms.items():
                        out[k] = out.get(k, zero) + ab * c
        return {k: v for k, v in out.items() if not v.is_zero()}

    for i in range(n):
        for j in range(i + 1, n):
            img: dict = {}
            for k, c in alg.product_basis(i, j).items():
                for r, v in cols[k]:
                    img[r] = img.get(r, zero) + c * v
            img = {k: v for k, v in img.items() if not v.is_zero()}
            lhs = sparse_product(cols[i], cols[j])
            assert lhs == img, (
                f"bracket preservation fails at pair ({alg.basis_names[i]}, "
                f"{alg.basis_names[j]})"
            )


def _sparse_to_vec(alg: AlgebraData, sparse: dict):
    v = [alg.field.zero] * alg.dim
    for k, c in sparse.items():
        v[k] = c
    return v


def torus_automorphism(alg: AlgebraData, rd: RootDatum, params: list[Cyclo],
                       name: str = "") -> Automorphism:
    """The diagonal automorphism t_{a,b,c,d}: 1 on the Cartan slots and the
    root monomial prod params[k]^{n_k} on the slot of root sum n_k alpha_k."""
    f = alg.field
    for p in params:
        if p.is_zero():
            raise ValueError("torus parameters must be nonzero")
    diag = []
    for slot in range(alg.dim):
        root = rd.root_of_slot[slot]
        if root is None:
            diag.append(f.one)
        else:
            val = f.one
            for p, e in zip(params, root):
                if e:
                    val = val * p ** e
            diag.append(val)
    m = ExactMatrix(f, [[diag[i] if i == j else f.zero for j in range(alg.dim)]
                        for i in range(alg.dim)])
    return Automorphism(kind="matrix", matrix=m, name=name or "t")


def torus_params_of(alg: AlgebraData, rd: RootDatum, a: Automorphism):
    """Parameters (a,b,c,d) if the automorphism is a torus element, else None."""
    m = a.matrix
    f = alg.field
    n = alg.dim
    for i in range(n):
        for j in range(n):
            if i != j and not m.entries[i][j].is_zero():
                return None
    params = [m.entries[4 + i][4 + i] for i in range(4)]  # simple-root slots
    candidate = torus_automorphism(alg, rd, params)
    if candidate.matrix == m:
        return params
    return None


def torus_monomial_family(alg: AlgebraData, rd: RootDatum, exps: tuple[int, ...],
                          name: str = "") -> Automorphism:
    """One-parameter family u -> t_{u^e1, u^e2, u^e3, u^e4} in diagonal-monomial
    form: the weight of each basis slot is <root, exps>."""
    weights = [(root_weight(rd, slot, exps),) for slot in range(alg.dim)]
    return Automorphism(kind="diagonal-monomial", weights=weights,
                        name=name or f"t^{exps}")


class Lifter:
    """Extends isometries of the root system to algebra automorphisms.

    The lift sends the simple-root vectors to the corresponding image-root
    vectors with coefficient 1, scales the negative-simple images to preserve
    the sl2 relations, and propagates to the remaining 20 slots through a
    fixed table of bracket words. Every lift is verified bracket-preserving on
    all basis pairs before it is returned.
    """

    def __init__(self, alg: AlgebraData, rd: RootDatum):
        self.alg = alg
        self.rd = rd
        self.words = bracket_words_for_positive_roots(alg, rd)
        f = alg.field
        # functionals of the simple roots in w-coordinates, as an exact matrix
        self.a_mat = ExactMatrix.from_rows(f, rd.simple_functionals)
        self._cache: dict = {}

    def extend(self, elem: IsometryElement, verify: bool = True) -> Automorphism:
        if elem.index in self._cache:
            return self._cache[elem.index]
        alg, rd, f = self.alg, self.rd, self.alg.field
        # The torus action x_i -> prod_j x_j^{m_ij} is realized on matrices by
        # conjugation with the lift of the *inverse* root permutation, so the
        # lift permutes root spaces by the rows of m^{-1}; with this choice
        # lift(m) t lift(m)^{-1} = act_on_torus(m, t) holds exactly.
        m = mat_inv_int(elem.matrix)
        # Cartan block p: (sigma(alpha))(p h) = alpha(h) => (M A) p = A
        ma = ExactMatrix.from_rows(f, [[m[i][j] for j in range(4)] for i in range(4)])
        p = (ma * self.a_mat).inverse() * self.a_mat

        def image_root(slot):
            root = rd.root_of_slot[slot]
            out = tuple(sum(root[i] * m[i][j] for i in range(4)) for j in range(4))
            return rd.slot_of_root[out]

        images: dict[int, tuple[int, Cyclo]] = {}  # slot -> (target slot, coeff)
        for i in range(4):
            images[4 + i] = (image_root(4 + i), f.one)
        # negative simples: coefficient forced by [s(e_i), s(f_i)] = p(h_{alpha_i})
        for i in range(4):
            e_slot, f_slot = 4 + i, 16 + i
            h = _sparse_to_vec(alg, alg.product_basis(e_slot, f_slot))[:4]
            target_h = p.apply(h)
            tgt_e, _ = images[e_slot]
            tgt_f = image_root(f_slot)
            base = _sparse_to_vec(alg, alg.product_basis(tgt_e, tgt_f))[:4]
            pivot = next(k for k in range(4) if not base[k].is_zero())
            c = target_h[pivot] * base[pivot].inverse()
            assert [c * x for x in base] == target_h
            images[f_slot] = (tgt_f, c)
        # remaining slots through bracket words
        pending = [s for s in range(4, alg.dim) if s not in images]
        while pending:
            for slot in list(pending):
                a, b, cword = self.words[slot]
                if a not in images or b not in images:
                    continue
                ta, ca = images[a]
                tb, cb = images[b]
                prod = alg.product_basis(ta, tb)
                tgt = image_root(slot)
                cprime = prod.get(tgt)
                assert cprime is not None and list(prod) == [tgt]
                images[slot] = (tgt, cword.inverse() * ca * cb * cprime)
                pending.remove(slot)
        cols = [[f.zero] * alg.dim for _ in range(alg.dim)]
        for j in range(4):
            for i in range(4):
                cols[j][i] = p.entries[i][j]
        for slot, (tgt, c) in images.items():
            cols[slot][tgt] = c
        mat = ExactMatrix(f, [[cols[j][i] for j in range(alg.dim)]
                              for i in range(alg.dim)])
        if verify:
            verify_bracket_preserving(alg, mat)
        aut = Automorphism(kind="matrix", matrix=mat, name=f"lift{elem.index}")
        aut.isometry = elem
        self._cache[elem.index] = aut
        return aut

    def slot_coefficients(self, elem: IsometryElement) -> dict[str, Cyclo]:
        """The scalar carried by each root slot under the lift (diagnostic)."""
        aut = self.extend(elem)
        out = {}
        for slot in range(4, self.alg.dim):
            col = [aut.matrix.entries[r][slot] for r in range(self.alg.dim)]
            tgt = next(r for r in range(self.alg.dim) if not col[r].is_zero())
            out[self.alg.basis_names[slot]] = col[tgt]
        return out


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    assert a.kind == b.kind == "matrix"
    return Automorphism(kind="matrix", matrix=a.matrix * b.matrix,
                        name=f"{a.name}*{b.name}")


def order_of(a: Automorphism, cap: int = 48):
    """Least n <= cap with a^n = 1, else the string 'infinite'."""
    if a.kind == "diagonal-monomial":
        if all(all(w == 0 for w in ws) for ws in a.weights):
            return 1
        return "infinite"
    m = a.matrix
    acc = m
    for n in range(1, cap + 1):
        if acc.is_identity():
            return n
        acc = acc * m
    return "infinite"


def _commutes(a: Automorphism, b: Automorphism) -> bool:
    if a.kind == "diagonal-monomial" and b.kind == "diagonal-monomial":
        return True
    if a.kind == "diagonal-monomial":
        a, b = b, a
    if b.kind == "diagonal-monomial":
        # a matrix commutes with diag(t^w) iff it preserves every weight space
        m = a.matrix
        for i in range(m.rows):
            for j in range(m.cols):
                if not m.entries[i][j].is_zero() and b.weights[i] != b.weights[j]:
                    return False
        return True
    return a.matrix * b.matrix == b.matrix * a.matrix


def commute_check(family: list[Automorphism]) -> list[tuple[int, int]]:
    """Indices of non-commuting pairs; empty list means abelian."""
    bad = []
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if not _commutes(family[i], family[j]):
                bad.append((i, j))
    return bad


def _commutator_params(alg, rd, a: Automorphism, b: Automorphism):
    """Torus parameters of a b a^-1 b^-1, or None if not a torus element."""
    comm = a.matrix * b.matrix * a.matrix.inverse() * b.matrix.inverse()
    return torus_params_of(alg, rd, Automorphism(kind="matrix", matrix=comm))


def repair_commuting_twist(alg: AlgebraData, rd: RootDatum,
                           family: list[Automorphism],
                           conductor: int | None = None) -> list[Automorphism]:
    """Adjust matrix generators by torus twists until the family is abelian.

    Generators are processed in order; each one failing to commute with the
    already-accepted generators is replaced by a * t where t is a torus
    automorphism with root-of-unity parameters zeta^e. The exponent vector e
    is found deterministically by solving the linear congruence that the
    commutator obstruction satisfies (the obstruction is affine-linear in e
    on the discrete-logarithm side). Raises TwistSearchError listing the
    obstruction pairs when no twist exists within the conductor.
    """
    n = alg.field.n if conductor is None else conductor
    assert alg.field.n % n == 0
    zeta = alg.field.zeta()
    big_n = alg.field.n
    accepted: list[Automorphism] = []
    for pos, a in enumerate(family):
        if all(_commutes(a, b) for b in accepted):
            accepted.append(a)
            continue
        obstructions = [(pos, i) for i, b in enumerate(accepted)
                        if not _commutes(a, b)]
        if a.kind != "matrix" or any(
            b.kind != "matrix" for i, b in enumerate(accepted)
            if (pos, i) in obstructions
        ):
            raise TwistSearchError(obstructions)
        blockers = [b for b in accepted if not _commutes(a, b)]

        def twisted(e):
            t = torus_automorphism(alg, rd, [zeta ** (x % big_n) for x in e])
            return compose(a, t)

        cand = _solve_twist_congruence(alg, rd, a, blockers, twisted, big_n)
        if cand is not None and not all(_commutes(cand, b) for b in accepted):
            # defensive: the congruence model should be exact; fall back to
            # the lexicographic enumeration if it ever is not
            cand = _enumerate_twist(accepted, twisted, n, big_n)
        if cand is None:
            raise TwistSearchError(obstructions)
        cand.name = f"{a.name}*twist"
        accepted.append(cand)
    assert not commute_check(accepted)
    return accepted


def _solve_twist_congruence(alg, rd, a, blockers, twisted, big_n):
    """The dlog of commutator(a*t(e), b) is affine-linear in the exponent
    vector e; probe the map at 0 and the unit vectors, then solve mod big_n."""
    def logs_of(aut, b):
        params = _commutator_params(alg, rd, aut, b)
        if params is None:
            return None
        logs = [alg.field.dlog_root_of_unity(x) for x in params]
        return None if any(l is None for l in logs) else logs

    base = []
    for b in blockers:
        l0 = logs_of(a, b)
        if l0 is None:
            return None
        base.append(l0)
    cols = []  # cols[k][bi] = linear-part column k against blocker bi
    for k in range(4):
        e = [0] * 4
        e[k] = 1
        col = []
        for bi, b in enumerate(blockers):
            l = logs_of(twisted(e), b)
            if l is None:
                return None
            col.append([(x - y) % big_n for x, y in zip(l, base[bi])])
        cols.append(col)
    rows, rhs = [], []
    for bi in range(len(blockers)):
        for c in range(4):
            rows.append([cols[k][bi][c] for k in range(4)])
            rhs.append(-base[bi][c])
    sol = solve_congruence(rows, rhs, big_n)
    return None if sol is None else twisted(sol)


def _enumerate_twist(accepted, twisted, n, big_n):
    """Deterministic fallback: lexicographic exponent vectors over Z_d, d | n."""
    from itertools import product as iproduct
    for d in [d for d in range(1, n + 1) if n % d == 0]:
        step = big_n // d
        for e in iproduct(range(d), repeat=4):
            cand = twisted([x * step for x in e])
            if all(_commutes(cand, b) for b in accepted):
                return cand
    return None
