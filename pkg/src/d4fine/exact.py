"""Exact arithmetic: rationals, cyclotomic field elements, dense linear algebra,
and integer matrix normal forms.

Everything here is exact; there is no floating point and no tolerance anywhere.
Scalars live in Q(zeta_N) for a fixed conductor N (default 24), represented in
the power basis modulo the N-th cyclotomic polynomial, so equality is a
coefficient comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

Q0 = Rational(0)
Q1 = Rational(1)


class ConductorError(ValueError):
    """Requested root of unity does not live in the configured field."""


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials known to divide exactly (ascending coeffs)."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn]
        assert c % den[dn] == 0
        q = c // den[dn]
        out[k] = q
        for j, d in enumerate(den):
            num[k + j] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycloField:
    """The cyclotomic field Q(zeta_N) with a fixed conductor N."""

    def __init__(self, conductor: int = 24):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.n = conductor
        self.phi = euler_phi(conductor)
        poly = cyclotomic_polynomial(conductor)
        self.min_poly = tuple(Rational(c) for c in poly)
        # reduction rows: x^k mod Phi_N for k = phi .. 2*phi - 2
        phi = self.phi
        rows = []
        cur = [-self.min_poly[i] for i in range(phi)]  # x^phi
        rows.append(tuple(cur))
        for _ in range(phi - 2):
            nxt = [Q0] + cur[: phi - 1]
            top = cur[phi - 1]
            if top != 0:
                nxt = [nxt[i] - top * self.min_poly[i] for i in range(phi)]
            rows.append(tuple(nxt))
            cur = nxt
        self._red = rows
        self.zero = Cyclo(self, (Q0,) * phi)
        self.one = self.scalar(1)
        self._dlog: dict[tuple, int] | None = None

    def scalar(self, r) -> "Cyclo":
        c = [Q0] * self.phi
        c[0] = Rational(r)
        return Cyclo(self, tuple(c))

    def zeta(self) -> "Cyclo":
        c = [Q0] * self.phi
        if self.phi == 1:
            # conductor 1 or 2: zeta is rational
            c[0] = Q1 if self.n == 1 else Rational(-1)
        else:
            c[1] = Q1
        return Cyclo(self, tuple(c))

    def root_of_unity(self, d: int) -> "Cyclo":
        """zeta_d = zeta_N^(N/d); requires d | N."""
        if d <= 0 or self.n % d != 0:
            raise ConductorError(
                f"order-{d} root of unity not available at conductor {self.n}"
            )
        return self.zeta() ** (self.n // d)

    def roots_of_unity(self) -> list["Cyclo"]:
        """All N-th roots of unity, zeta^0 .. zeta^(N-1)."""
        z = self.zeta()
        out = [self.one]
        for _ in range(self.n - 1):
            out.append(out[-1] * z)
        return out

    def dlog_root_of_unity(self, x: "Cyclo") -> int | None:
        """k with x = zeta_N^k, or None if x is not an N-th root of unity."""
        if self._dlog is None:
            self._dlog = {r.coeffs: k for k, r in enumerate(self.roots_of_unity())}
        return self._dlog.get(x.coeffs)

    def __repr__(self):
        return f"CycloField({self.n})"


@lru_cache(maxsize=None)
def get_field(conductor: int = 24) -> CycloField:
    return CycloField(conductor)


class Cyclo:
    """Element of Q(zeta_N) in the power basis; immutable and hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, int) or type(other) is type(Q0):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        phi = self.field.phi
        a = [(i, c) for i, c in enumerate(self.coeffs) if c != 0]
        b = [(j, c) for j, c in enumerate(o.coeffs) if c != 0]
        if not a or not b:
            return self.field.zero
        conv = [Q0] * (2 * phi - 1)
        for i, ca in a:
            for j, cb in b:
                conv[i + j] += ca * cb
        out = conv[:phi]
        red = self.field._red
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c != 0:
                row = red[k - phi]
                for i in range(phi):
                    if row[i] != 0:
                        out[i] += c * row[i]
        return Cyclo(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via extended Euclid in Q[x] against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.is_rational():
            return self.field.scalar(Q1 / self.coeffs[0])
        # r0 = Phi_N, r1 = self; track s with s*self = r (mod Phi_N)
        r0 = list(self.field.min_poly)
        r1 = list(self.coeffs)
        s0 = [Q0]
        s1 = [Q1]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i] != 0:
                    return i
            return -1

        while True:
            d1 = deg(r1)
            if d1 <= 0:
                break
            d0 = deg(r0)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            c = r0[d0] / r1[d1]
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[i + shift] -= c * r1[i]
            s0 += [Q0] * (len(s1) + shift - len(s0))
            for i in range(len(s1)):
                s0[i + shift] -= c * s1[i]
        if deg(r1) != 0:
            raise ZeroDivisionError("element not invertible (zero divisor?)")
        inv_c = Q1 / r1[0]
        # assemble s1 * inv_c as a field element (reduces any stray high degrees)
        acc = self.field.zero
        zpow = self.field.one
        z = self.field.zeta()
        for i, c in enumerate(s1):
            if c != 0:
                acc = acc + zpow * (c * inv_c)
            zpow = zpow * z
        return acc

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.coeffs == other.coeffs
        if isinstance(other, int) or type(other) is type(Q0):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def multiplicative_order(self, cap: int = 48) -> int | None:
        x = self
        for k in range(1, cap + 1):
            if x == self.field.one:
                return k
            x = x * self
        return None

    def __repr__(self):
        phi = self.field.phi
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append(f"{c}*z")
                else:
                    terms.append(f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Dense exact matrices over a CycloField
# ---------------------------------------------------------------------------

class ExactMatrix:
    """Dense matrix of Cyclo entries with exact linear algebra."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: CycloField, entries: list[list[Cyclo]]):
        self.field = field
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0

    @classmethod
    def from_rows(cls, field: CycloField, rows) -> "ExactMatrix":
        ent = []
        for r in rows:
            ent.append([x if isinstance(x, Cyclo) else field.scalar(x) for x in r])
        return cls(field, ent)

    @classmethod
    def identity(cls, field: CycloField, n: int) -> "ExactMatrix":
        return cls(field, [[field.one if i == j else field.zero for j in range(n)]
                           for i in range(n)])

    @classmethod
    def zeros(cls, field: CycloField, r: int, c: int) -> "ExactMatrix":
        return cls(field, [[field.zero] * c for _ in range(r)])

    def copy_entries(self):
        return [row[:] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.cols == other.rows
        zero = self.field.zero
        ocols = other.cols
        out = []
        oent = other.entries
        for row in self.entries:
            acc = [zero] * ocols
            for k, a in enumerate(row):
                if not a.is_zero():
                    orow = oent[k]
                    for j in range(ocols):
                        b = orow[j]
                        if not b.is_zero():
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix(self.field, out)

    def __add__(self, other):
        return ExactMatrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                        for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return ExactMatrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                        for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return ExactMatrix(self.field, [[-a for a in r] for r in self.entries])

    def scalar_mul(self, c: Cyclo) -> "ExactMatrix":
        return ExactMatrix(self.field, [[c * a for a in r] for r in self.entries])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, [list(col) for col in zip(*self.entries)])

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.cols == other.cols
        return ExactMatrix(self.field, self.copy_entries() + other.copy_entries())

    def apply(self, vec: list[Cyclo]) -> list[Cyclo]:
        zero = self.field.zero
        out = []
        for row in self.entries:
            acc = zero
            for a, x in zip(row, vec):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def is_identity(self) -> bool:
        one, = (self.field.one,)
        for i, row in enumerate(self.entries):
            for j, a in enumerate(row):
                if a != (one if i == j else self.field.zero):
                    return False
        return True

    def __pow__(self, e: int) -> "ExactMatrix":
        assert self.rows == self.cols
        if e < 0:
            return self.inverse() ** (-e)
        result = ExactMatrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        """Reduced row echelon form and pivot columns (exact, first-nonzero pivoting)."""
        m = self.copy_entries()
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * x for x in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ExactMatrix(self.field, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[list[Cyclo]]:
        """Basis of the right null space; each vector certified by re-multiplication."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        zero, one = self.field.zero, self.field.one
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for r, pc in enumerate(pivots):
                v[pc] = -red.entries[r][fc]
            assert all(x.is_zero() for x in self.apply(v)), "kernel certification failed"
            basis.append(v)
        return basis

    def inverse(self) -> "ExactMatrix":
        assert self.rows == self.cols
        n = self.rows
        aug = ExactMatrix(self.field,
                          [self.entries[i][:] + ExactMatrix.identity(self.field, n).entries[i]
                           for i in range(n)])
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix not invertible")
        return ExactMatrix(self.field, [row[n:] for row in red.entries])

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Solve self @ X = rhs exactly; raise if inconsistent or underdetermined."""
        aug = ExactMatrix(self.field,
                          [self.entries[i][:] + rhs.entries[i][:] for i in range(self.rows)])
        red, pivots = aug.rref()
        if any(p >= self.cols for p in pivots):
            raise ValueError("inconsistent linear system")
        if len(pivots) < self.cols:
            raise ValueError("underdetermined linear system")
        zero = self.field.zero
        out = [[zero] * rhs.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            out[pc] = red.entries[r][self.cols:]
        return ExactMatrix(self.field, out)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


class LinearSpan:
    """Incremental echelon of exact vectors; supports membership and decomposition."""

    def __init__(self, field: CycloField, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[tuple[int, list[Cyclo], list[Cyclo]]] = []  # (pivot, vec, expr)
        self.count = 0

    def _reduce(self, vec: list[Cyclo], expr: list[Cyclo]):
        vec = vec[:]
        for pivot, rvec, rexpr in self.rows:
            c = vec[pivot]
            if not c.is_zero():
                for i in range(self.dim):
                    vec[i] = vec[i] - c * rvec[i]
                for i in range(len(expr)):
                    expr[i] = expr[i] - c * rexpr[i]
        return vec, expr

    def add(self, vec: list[Cyclo]) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        expr = [self.field.zero] * (self.count + 1)
        expr[self.count] = self.field.one
        for _, _, rexpr in self.rows:
            rexpr.append(self.field.zero)
        red, expr = self._reduce(vec, expr)
        self.count += 1
        for p in range(self.dim):
            if not red[p].is_zero():
                inv = red[p].inverse()
                red = [inv * x for x in red]
                expr = [inv * x for x in expr]
                # back-substitute into existing rows
                for k, (pivot, rvec, rexpr) in enumerate(self.rows):
                    c = rvec[p]
                    if not c.is_zero():
                        nv = [a - c * b for a, b in zip(rvec, red)]
                        ne = [a - c * b for a, b in zip(rexpr, expr)]
                        self.rows[k] = (pivot, nv, ne)
                self.rows.append((p, red, expr))
                self.rows.sort(key=lambda t: t[0])
                return True
        # dependent: shrink expr bookkeeping back
        for _, _, rexpr in self.rows:
            rexpr.pop()
        self.count -= 1
        return False

    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: list[Cyclo]) -> bool:
        red, _ = self._reduce(vec[:], [])
        return all(x.is_zero() for x in red)

    def decompose(self, vec: list[Cyclo]) -> list[Cyclo] | None:
        """Coefficients over the *inserted* vectors, or None if not in span."""
        expr = [self.field.zero] * self.count
        red, expr = self._reduce(vec[:], expr)
        if any(not x.is_zero() for x in red):
            return None
        return [-x for x in expr]


# ---------------------------------------------------------------------------
# Integer matrices: Smith and Hermite normal forms, congruences, lattices
# ---------------------------------------------------------------------------

@dataclass
class SnfResult:
    """u @ a @ v == diag(d) with u, v unimodular and d a divisibility chain."""
    d: list[int]
    u: list[list[int]]
    v: list[list[int]]


def _int_mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def _int_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _int_det_unimodular(m) -> int:
    """Determinant by fraction-free expansion; matrices here are small (<=8)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    det = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        det += (-1) ** j * m[0][j] * _int_det_unimodular(minor)
    return det


def smith_normal_form(a: list[list[int]]) -> SnfResult:
    """SNF with transformation tracking: u @ a @ v = diag(d), d_i | d_{i+1}."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    u = _int_identity(rows)
    v = _int_identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in m:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize():
        t = 0
        while t < min(rows, cols):
            pr = pc = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] != 0:
                        pr, pc = i, j
                        break
                if pr is not None:
                    break
            if pr is None:
                return t
            swap_rows(t, pr)
            swap_cols(t, pc)
            while True:
                again = False
                for i in range(t + 1, rows):
                    if m[i][t] != 0:
                        q = m[i][t] // m[t][t]
                        add_row(t, i, -q)
                        if m[i][t] != 0:
                            swap_rows(t, i)
                            again = True
                for j in range(t + 1, cols):
                    if m[t][j] != 0:
                        q = m[t][j] // m[t][t]
                        add_col(t, j, -q)
                        if m[t][j] != 0:
                            swap_cols(t, j)
                            again = True
                if not again:
                    break
            if m[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    # diagonalize, then repair divisibility chain violations and re-eliminate
    while True:
        t = diagonalize()
        violation = None
        for i in range(t - 1):
            if m[i + 1][i + 1] % m[i][i] != 0:
                violation = i
                break
        if violation is None:
            break
        add_col(violation + 1, violation, 1)
    d = [m[i][i] for i in range(min(rows, cols))]
    res = SnfResult(d=d, u=u, v=v)
    _verify_snf(a, res)
    return res


def _verify_snf(a, res: SnfResult):
    prod = _int_mat_mul(_int_mat_mul(res.u, a), res.v)
    for i in range(len(prod)):
        for j in range(len(prod[0])):
            expect = res.d[i] if i == j and i < len(res.d) else 0
            assert prod[i][j] == expect, "SNF reconstruction failed"
    for i in range(len(res.d) - 1):
        if res.d[i] != 0:
            assert res.d[i + 1] % res.d[i] == 0, "SNF divisibility chain failed"
        else:
            assert res.d[i + 1] == 0, "SNF zero ordering failed"
    assert abs(_int_det_unimodular(res.u)) == 1, "u not unimodular"
    assert abs(_int_det_unimodular(res.v)) == 1, "v not unimodular"


def integer_kernel(a: list[list[int]]) -> list[list[int]]:
    """Basis of the integer null space {x : a @ x = 0}."""
    if not a:
        return []
    cols = len(a[0])
    res = smith_normal_form(a)
    basis = []
    for j in range(cols):
        dj = res.d[j] if j < len(res.d) else 0
        if dj == 0:
            basis.append([res.v[i][j] for i in range(cols)])
    return basis


def hermite_normal_form(a: list[list[int]]) -> list[list[int]]:
    """Row-style HNF (nonzero rows, positive pivots, reduced above)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        # find row with minimal nonzero |entry| in column c at or below r
        while True:
            cand = [i for i in range(r, rows) if m[i][c] != 0]
            if not cand:
                break
            i0 = min(cand, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            done = True
            for i in range(r + 1, rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < rows and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q != 0:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == rows:
                break
    return [row for row in m[:r]]


def solve_congruence(m: list[list[int]], rhs: list[int], mod: int) -> list[int] | None:
    """A solution x of m @ x = rhs (mod mod), or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    res = smith_normal_form(m)
    rp = [sum(res.u[i][k] * rhs[k] for k in range(rows)) % mod for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = res.d[i] if i < len(res.d) else 0
        if i < cols:
            from math import gcd
            g = gcd(di, mod)
            if g == 0:
                if rp[i] % mod != 0:
                    return None
                y[i] = 0
                continue
            if rp[i] % g != 0:
                return None
            # solve di * y = rp[i] (mod mod)
            di_, rp_, mod_ = di // g, rp[i] // g, mod // g
            y[i] = (rp_ * pow(di_, -1, mod_)) % mod_ if mod_ > 1 else 0
        else:
            if rp[i] % mod != 0:
                return None
    x = [sum(res.v[i][k] * y[k] for k in range(cols)) % mod for i in range(cols)]
    # certify
    for i in range(rows):
        if (sum(m[i][j] * x[j] for j in range(cols)) - rhs[i]) % mod != 0:
            return None
    return x


def lattice_quotient_invariants(
    big_gens: list[list[int]], small_gens: list[list[int]], dim: int
) -> tuple[int, list[int]]:
    """Invariants (free rank, torsion factors) of (L1 := <big+small>)/(L2 := <small>)."""
    all_gens = [g for g in big_gens] + [g for g in small_gens]
    b1 = hermite_normal_form(all_gens) if all_gens else []
    rank1 = len(b1)
    if not small_gens:
        return rank1, []
    b2 = hermite_normal_form(small_gens)
    rank2 = len(b2)
    if rank1 == 0:
        return 0, []
    # express each small generator in the basis b1 (exact integer solve)
    f = get_field(1)
    b1m = ExactMatrix.from_rows(f, [[b1[i][j] for i in range(rank1)] for j in range(dim)])
    rhs = ExactMatrix.from_rows(f, [[g[j] for g in small_gens] for j in range(dim)])
    sol = b1m.solve(rhs)
    rel = []
    for k in range(len(small_gens)):
        row = []
        for i in range(rank1):
            val = sol.entries[i][k].rational_value()
            num, den = val.numerator, val.denominator
            assert den == 1, "sublattice coordinates must be integral"
            row.append(int(num))
        rel.append(row)
    res = smith_normal_form(rel)
    divisors = [x for x in res.d if x != 0]
    torsion = [x for x in divisors if x > 1]
    return rank1 - rank2, torsion
