"""Exact integer linear algebra on free abelian groups.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so all
arithmetic is unbounded-precision.  A lattice vector is treated as a column: a
homomorphism ``Z^s -> Z^t`` is stored as a ``t x s`` row-major matrix and acts
by ``matrix @ v``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Vector, ...]


# ---------------------------------------------------------------------------
# small vector / matrix helpers


def as_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected an integer, got {x!r}")
    return x


def as_vector(v) -> Vector:
    return tuple(as_int(x) for x in v)


def as_matrix(rows, ncols=None) -> Matrix:
    m = tuple(as_vector(r) for r in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and m and len(m[0]) != ncols:
        raise ValueError(f"expected {ncols} columns, got {len(m[0])}")
    return m


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    return tuple(c * a for a in v)


def vneg(v) -> Vector:
    return tuple(-a for a in v)


def zero_vector(n) -> Vector:
    return (0,) * n


def unit_vector(n, i) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def is_zero(v):
    return not any(v)


def content(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v) -> Vector:
    """Divide out the gcd of the entries; the zero vector is returned as is."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def sign_normalize(v) -> Vector:
    """Primitive representative of the line through ``v`` with a positive leading entry."""
    v = primitive(v)
    for a in v:
        if a:
            return v if a > 0 else vneg(v)
    return v


def identity(n) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def zeros(rows, cols) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m, nrows_if_empty=0) -> Matrix:
    if not m:
        return tuple(() for _ in range(nrows_if_empty))
    return tuple(zip(*m))


def mat_vec(m, v) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def columns_to_matrix(cols, nrows) -> Matrix:
    """Matrix whose columns are ``cols`` (each of length ``nrows``)."""
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def matrix_columns(m, ncols=None):
    if not m:
        return [() for _ in range(ncols or 0)]
    return [tuple(row[j] for row in m) for j in range(len(m[0]))]


def hstack(*blocks, nrows):
    rows = []
    for i in range(nrows):
        row = ()
        for b in blocks:
            row += tuple(b[i]) if b else ()
        rows.append(row)
    return tuple(rows)


def block_diag(a, b, a_shape, b_shape) -> Matrix:
    ar, ac = a_shape
    br, bc = b_shape
    top = tuple(tuple(a[i]) + (0,) * bc for i in range(ar))
    bottom = tuple((0,) * ac + tuple(b[i]) for i in range(br))
    return top + bottom


# ---------------------------------------------------------------------------
# rational elimination


def _fraction_rref(rows, ncols):
    """Reduced row echelon form over Q.  Returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors, ncols=None):
    """Rank over Q of a list of vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    n = ncols if ncols is not None else len(vectors[0])
    # Integer elimination keeps this fast for the small sizes used here.
    rows = [list(v) for v in vectors]
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if a:
                b = pr[c]
                g = gcd(a, b)
                ri = [(b // g) * x - (a // g) * y for x, y in zip(rows[i], pr)]
                cg = content(ri)
                rows[i] = [x // cg for x in ri] if cg > 1 else ri
        r += 1
        if r == len(rows):
            break
    return r


def rational_solve(a, b, ncols):
    """Some rational solution x of ``a @ x = b``, or None if inconsistent."""
    aug = [tuple(row) + (rhs,) for row, rhs in zip(a, b)]
    rref, pivots = _fraction_rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(rref, pivots):
        x[c] = row[ncols]
    return x


def rational_kernel(rows, ncols):
    """Integer basis (not necessarily saturated) of the kernel over Q of ``rows``."""
    rref, pivots = _fraction_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(rref, pivots):
            x[c] = -row[f]
        basis.append(_clear_denominators(x))
    return basis


def _clear_denominators(x) -> Vector:
    den = 1
    for q in x:
        den = den * q.denominator // gcd(den, q.denominator)
    return primitive(tuple(int(q * den) for q in x))


def project_off(v, basis) -> Vector:
    """Primitive integer vector along the orthogonal projection of ``v`` off ``span(basis)``."""
    if not basis:
        return primitive(v)
    gram = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(dot(a, v)) for a in basis]
    coeffs = rational_solve(gram, rhs, len(basis))
    proj = [Fraction(x) for x in v]
    for c, b in zip(coeffs, basis):
        if c:
            proj = [p - c * y for p, y in zip(proj, b)]
    return _clear_denominators(proj)


def inverse_unimodular(m) -> Matrix:
    n = len(m)
    aug = [tuple(row) + unit_vector(n, i) for i, row in enumerate(m)]
    rref, pivots = _fraction_rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for row in rref:
        vals = row[n:]
        if any(q.denominator != 1 for q in vals):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(q) for q in vals))
    return tuple(inv)


def determinant(m):
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form


def _xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(vectors, n=None) -> Matrix:
    """Canonical row basis (row-style HNF) of the lattice spanned by ``vectors``.

    Two lists span the same lattice iff their HNFs are equal.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return ()
    n = n if n is not None else len(rows[0])
    r = 0
    pivots = []
    for c in range(n):
        for i in range(r + 1, len(rows)):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            if a == 0:
                rows[r], rows[i] = rows[i], rows[r]
                continue
            g, s, t = _xgcd(a, b)
            ra, rb = rows[r], rows[i]
            rows[r] = [s * x + t * y for x, y in zip(ra, rb)]
            rows[i] = [(a // g) * y - (b // g) * x for x, y in zip(ra, rb)]
        if r < len(rows) and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r][c]
            for i in range(r):
                q = rows[i][c] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
    return tuple(tuple(row) for row in rows[:r])


def lattice_coordinates(basis, v):
    """Integer coordinates of ``v`` in an independent ``basis``, or None if ``v`` is not in its span over Z."""
    if not basis:
        return () if is_zero(v) else None
    n = len(v)
    cols = columns_to_matrix(basis, n)
    x = rational_solve(cols, v, len(basis))
    if x is None or any(q.denominator != 1 for q in x):
        return None
    return tuple(int(q) for q in x)


def same_lattice(a, b, n=None):
    return hermite_normal_form(a, n) == hermite_normal_form(b, n)


# ---------------------------------------------------------------------------
# lattices and homomorphisms


@dataclass(frozen=True)
class Lattice:
    """The free abelian group ``Z^rank``."""

    rank: int

    def __post_init__(self):
        as_int(self.rank)
        if self.rank < 0:
            raise ValueError("lattice rank must be non-negative")

    def zero(self) -> Vector:
        return zero_vector(self.rank)

    def basis(self):
        return [unit_vector(self.rank, i) for i in range(self.rank)]

    def direct_sum(self, other):
        return Lattice(self.rank + other.rank)


@dataclass(frozen=True)
class LatticeHom:
    """A homomorphism ``source -> target`` given by a ``target.rank x source.rank`` matrix."""

    source: Lattice
    target: Lattice
    matrix: Matrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank:
            raise ValueError(f"matrix has {len(m)} rows, target rank is {self.target.rank}")
        if any(len(r) != self.source.rank for r in m):
            raise ValueError(f"matrix rows must have length {self.source.rank}")

    @classmethod
    def from_rows(cls, rows, source_rank=None):
        rows = as_matrix(rows)
        s = source_rank if source_rank is not None else (len(rows[0]) if rows else 0)
        return cls(Lattice(s), Lattice(len(rows)), rows)

    @classmethod
    def identity(cls, lattice):
        return cls(lattice, lattice, identity(lattice.rank))

    @classmethod
    def scalar(cls, lattice, n):
        return cls(lattice, lattice, tuple(vscale(n, r) for r in identity(lattice.rank)))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, zeros(target.rank, source.rank))

    def __call__(self, v) -> Vector:
        if len(v) != self.source.rank:
            raise ValueError(f"vector of length {len(v)} in a rank {self.source.rank} lattice")
        return mat_vec(self.matrix, v)

    def compose(self, inner):
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError("lattice mismatch in composition")
        if self.source.rank == 0:
            return LatticeHom.zero(inner.source, self.target)
        return LatticeHom(inner.source, self.target, mat_mul(self.matrix, inner.matrix)
                          if inner.source.rank else zeros(self.target.rank, 0))

    def transpose(self):
        """The dual map ``target^∨ -> source^∨``."""
        return LatticeHom(self.target, self.source, transpose(self.matrix, self.source.rank))

    def columns(self):
        return matrix_columns(self.matrix, self.source.rank)

    @cached_property
    def rank(self):
        return rank(self.matrix, self.source.rank)

    def is_isomorphism(self):
        return (self.source.rank == self.target.rank
                and abs(determinant(self.matrix)) == 1)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ matrix @ v == d`` with ``u``, ``v`` unimodular and ``d`` diagonal in divisibility order."""

    u: Matrix
    d: Matrix
    v: Matrix
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def diagonal(self):
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x)

    @property
    def invariant_factors(self):
        return tuple(x for x in self.diagonal if x)

    @property
    def u_inv(self) -> Matrix:
        if "u_inv" not in self._cache:
            self._cache["u_inv"] = inverse_unimodular(self.u) if self.u else ()
        return self._cache["u_inv"]

    @property
    def v_inv(self) -> Matrix:
        if "v_inv" not in self._cache:
            self._cache["v_inv"] = inverse_unimodular(self.v) if self.v else ()
        return self._cache["v_inv"]


def _snf_arrays(a, nrows, ncols):
    """In-place SNF of list-of-lists ``a``; returns (u, v) as lists of lists."""
    u = [list(r) for r in identity(nrows)]
    v = [list(r) for r in identity(ncols)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_addmul(dst, src, q):
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def col_addmul(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            # smallest |entry| in the trailing block, ties broken by (row, col)
            best = None
            for i in range(t, nrows):
                row = a[i]
                for j in range(t, ncols):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return u, v
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    row_addmul(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, nrows)
                        if any(a[i][j] % p for j in range(t + 1, ncols))), None)
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, v


def smith_normal_form(m) -> SnfDecomposition:
    """Smith normal form of a :class:`LatticeHom` (or a bare integer matrix).

    Pivots are chosen by smallest absolute value with lexicographic (row, column)
    tie-break, so the transforms are deterministic.
    """
    if isinstance(m, LatticeHom):
        nrows, ncols, mat = m.target.rank, m.source.rank, m.matrix
    else:
        mat = as_matrix(m)
        nrows, ncols = len(mat), (len(mat[0]) if mat else 0)
    a = [list(r) for r in mat]
    u, v = _snf_arrays(a, nrows, ncols)
    return SnfDecomposition(
        u=tuple(tuple(r) for r in u),
        d=tuple(tuple(r) for r in a),
        v=tuple(tuple(r) for r in v),
    )


def cokernel_invariants(m):
    """``(free_rank, torsion_factors)`` of ``coker(m)``; torsion factors are the invariant factors > 1."""
    snf = smith_normal_form(m)
    nrows = m.target.rank if isinstance(m, LatticeHom) else len(m)
    return nrows - snf.rank, [x for x in snf.invariant_factors if x > 1]


def kernel_basis(m):
    """Basis of ``ker(m)``, a saturated sublattice; canonical (HNF) order."""
    snf = smith_normal_form(m)
    ncols = m.source.rank if isinstance(m, LatticeHom) else (len(m[0]) if m else 0)
    vcols = matrix_columns(snf.v, ncols)
    return [tuple(r) for r in hermite_normal_form(vcols[snf.rank:], ncols)]


def saturate_sublattice(gens, n=None):
    """Basis of ``span_Q(gens) ∩ Z^n``, the smallest direct summand containing ``gens``."""
    gens = [as_vector(g) for g in gens if any(g)]
    if not gens:
        return []
    n = n if n is not None else len(gens[0])
    snf = smith_normal_form(columns_to_matrix(gens, n))
    cols = matrix_columns(snf.u_inv, n)[:snf.rank]
    return [tuple(r) for r in hermite_normal_form(cols, n)]


def quotient_by_saturated(basis, n):
    """Projection ``Z^n -> Z^(n-r)`` with kernel the saturated lattice spanned by ``basis``.

    Returns ``(projection, section)`` as matrices with ``projection @ section == I``.
    """
    basis = [b for b in basis if any(b)]
    if not basis:
        return identity(n), identity(n)
    snf = smith_normal_form(columns_to_matrix(basis, n))
    r = snf.rank
    if any(x != 1 for x in snf.invariant_factors):
        raise ValueError("sublattice is not saturated")
    proj = snf.u[r:]
    section = columns_to_matrix(matrix_columns(snf.u_inv, n)[r:], n)
    return tuple(proj), section
