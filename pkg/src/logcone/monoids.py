"""Affine monoids: finitely generated submonoids of a lattice.

An :class:`AffineMonoid` is stored by its generators.  Everything else (cone
hull, generated group, units, Hilbert basis of the saturation) is derived on
demand and cached.  Saturation always means integral closure inside the
generated group, so ``<2, 3>`` saturates to ``N`` while ``<(2,0), (0,2)>``
is already saturated.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Tuple

from . import _config
from .cones import Cone, all_faces, dual_cone
from .errors import NotSharpError
from .lattice import (
    Lattice,
    LatticeHom,
    Vector,
    _fraction_rref,
    as_vector,
    columns_to_matrix,
    dot,
    hermite_normal_form,
    identity,
    lattice_coordinates,
    mat_vec,
    quotient_by_saturated,
    rank,
    saturate_sublattice,
    smith_normal_form,
    unit_vector,
    vadd,
    vscale,
    vneg,
    vsub,
    zero_vector,
)


def _canonical_generators(gens):
    return tuple(sorted({g for g in gens if any(g)}))


@dataclass(frozen=True, eq=False)
class AffineMonoid:
    """The submonoid of ``lattice`` generated by ``generators``.

    ``==`` compares canonical generator lists; use :func:`same_monoid` to compare
    the monoids themselves.
    """

    lattice: Lattice
    generators: Tuple[Vector, ...]

    def __post_init__(self):
        n = self.lattice.rank
        gens = [as_vector(g) for g in self.generators]
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} does not live in Z^{n}")
        object.__setattr__(self, "generators", _canonical_generators(gens))

    # constructors ---------------------------------------------------------

    @classmethod
    def of(cls, rank, gens):
        return cls(Lattice(rank), tuple(gens))

    @classmethod
    def free(cls, rank):
        """``N^rank``."""
        return cls.of(rank, [unit_vector(rank, i) for i in range(rank)])

    @classmethod
    def group(cls, rank):
        """``Z^rank`` viewed as a monoid."""
        basis = [unit_vector(rank, i) for i in range(rank)]
        return cls.of(rank, basis + [vneg(b) for b in basis])

    @classmethod
    def trivial(cls, rank=0):
        return cls.of(rank, [])

    @classmethod
    def cone_points(cls, cone):
        """The saturated monoid ``cone ∩ Z^n``."""
        # Points b + k*r (r in the relative interior) make the group the full
        # saturated span without enlarging the cone.
        gens = list(cone.generators)
        r = cone.relint_point
        for b in saturate_sublattice(gens, cone.lattice.rank):
            k = 0
            while not cone.contains(vadd(b, vscale(k, r))):
                k += 1
            gens.append(vadd(b, vscale(k, r)))
        return saturation(cls(cone.lattice, tuple(gens)))

    def __eq__(self, other):
        return (isinstance(other, AffineMonoid) and self.lattice == other.lattice
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.lattice, self.generators))

    def __repr__(self):
        return f"AffineMonoid(rank={self.lattice.rank}, generators={list(self.generators)})"

    @property
    def rank(self):
        return self.lattice.rank

    # derived views ----------------------------------------------------------

    @cached_property
    def cone(self) -> Cone:
        return Cone.from_generators(self.lattice.rank, self.generators)

    @cached_property
    def group_basis(self):
        """HNF basis of the group generated by the monoid."""
        return tuple(hermite_normal_form(self.generators, self.lattice.rank))

    @property
    def group_rank(self):
        return len(self.group_basis)

    def in_group(self, v):
        return lattice_coordinates(self.group_basis, v) is not None

    @cached_property
    def units_basis(self):
        """HNF basis of the unit group."""
        c = self.cone
        unit_gens = [g for g in self.generators if c.contains(vneg(g))]
        return tuple(hermite_normal_form(unit_gens, self.lattice.rank))

    def is_unit(self, v):
        return lattice_coordinates(self.units_basis, v) is not None

    def is_sharp(self):
        return not self.units_basis

    def is_saturated(self):
        return self._saturated

    @cached_property
    def _saturated(self):
        return all(self._generated_contains(h) for h in hilbert_basis(self))

    @cached_property
    def _intrinsic(self):
        basis = self.group_basis
        n = self.lattice.rank
        if len(basis) == n and basis == identity(n):
            return self, LatticeHom.identity(self.lattice)
        coords = [lattice_coordinates(basis, g) for g in self.generators]
        r = len(basis)
        embed = LatticeHom(Lattice(r), self.lattice, columns_to_matrix(basis, n))
        return AffineMonoid.of(r, coords), embed

    def intrinsic(self):
        """The same monoid written in coordinates of a basis of its group."""
        return self._intrinsic[0]

    def intrinsic_embedding(self) -> LatticeHom:
        """Injective map from the intrinsic lattice to the ambient one."""
        return self._intrinsic[1]

    # membership -------------------------------------------------------------

    def contains(self, v):
        v = as_vector(v)
        if not any(v):
            return True
        if not self.in_group(v) or not self.cone.contains(v):
            return False
        if self._saturated:
            return True
        return self._generated_contains(v)

    __contains__ = contains

    @cached_property
    def _height(self):
        """A covector that is zero on units and positive on every other element."""
        h = zero_vector(self.lattice.rank)
        for f in self.cone.inequalities:
            h = vadd(h, f)
        return h

    def _generated_contains(self, v):
        """Exact membership in the monoid generated by the generators.

        Writing ``v`` as a sum of non-unit generators plus a unit, the height of the
        non-unit part equals the height of ``v``; since every non-unit generator has
        positive integer height, only finitely many sums need checking.
        """
        if not any(v):
            return True
        cone = self.cone
        if not cone.contains(v) or not self.in_group(v):
            return False
        h = self._height
        target = dot(h, v)
        steps = [(dot(h, g), g) for g in self.generators if dot(h, g) > 0]
        reach = [set() for _ in range(target + 1)]
        reach[0].add(zero_vector(self.lattice.rank))
        for t in range(1, target + 1):
            layer = reach[t]
            for w, g in steps:
                if w <= t:
                    for s in reach[t - w]:
                        layer.add(vadd(s, g))
        return any(self.is_unit(vsub(v, s)) for s in reach[target])


def same_monoid(a, b):
    """True iff ``a`` and ``b`` are the same submonoid of the same lattice."""
    if a.lattice != b.lattice:
        return False
    return all(b.contains(g) for g in a.generators) and all(a.contains(g) for g in b.generators)


def direct_sum(a, b):
    na, nb = a.rank, b.rank
    gens = [g + (0,) * nb for g in a.generators] + [(0,) * na + g for g in b.generators]
    return AffineMonoid.of(na + nb, gens)


# ---------------------------------------------------------------------------
# Hilbert bases


def _triangulate(cone):
    """Pulling triangulation of a pointed cone; simplices as sorted ray-index tuples."""
    rays = cone.rays
    d = cone.dim
    if len(rays) == d:
        return [tuple(range(len(rays)))]
    face_sets = set()
    facets = {}
    for f in all_faces(cone):
        idx = frozenset(i for i, r in enumerate(rays) if f.contains(r))
        face_sets.add(idx)
        facets.setdefault(f.dim, []).append(idx)
    dims = {s: rank([rays[i] for i in s], cone.lattice.rank) for s in face_sets}
    memo = {}

    def tri(s):
        if s in memo:
            return memo[s]
        k = dims[s]
        if len(s) == k:
            out = [tuple(sorted(s))]
        else:
            apex = min(s)
            out = []
            for g in facets.get(k - 1, []):
                if g < s and apex not in g:
                    out.extend(tuple(sorted(t + (apex,))) for t in tri(g))
        memo[s] = out
        return out

    return tri(frozenset(range(len(rays))))


def _inverse(m):
    n = len(m)
    aug = [tuple(row) + unit_vector(n, i) for i, row in enumerate(m)]
    rref, _ = _fraction_rref(aug, 2 * n)
    return [row[n:] for row in rref]


def _parallelepiped_points(cols, n):
    """Lattice points ``sum(l_i * b_i)`` with ``0 <= l_i < 1``, one per coset of ``B Z^n``."""
    b = columns_to_matrix(cols, n)
    snf = smith_normal_form(b)
    u_inv = snf.u_inv
    binv = _inverse(b)
    ranges = [range(x) for x in snf.diagonal]
    out = []

    def rec(i, k):
        if i == n:
            x = mat_vec(u_inv, k)
            lam = [sum((c * xi for c, xi in zip(row, x)), Fraction(0)) for row in binv]
            frac = [q - floor(q) for q in lam]
            p = [sum(f * row[j] for j, f in enumerate(frac)) for row in b]
            out.append(tuple(int(q) for q in p))
            return
        for t in ranges[i]:
            rec(i + 1, k + (t,))

    rec(0, ())
    return out


def _pointed_hilbert_basis(cone):
    """Hilbert basis of ``cone ∩ Z^d`` for a full-dimensional pointed cone."""
    d = cone.lattice.rank
    if d == 0:
        return []
    rays = cone.rays
    cands = set(rays)
    for simplex in _triangulate(cone):
        cands.update(_parallelepiped_points([rays[i] for i in simplex], d))
    cands.discard(zero_vector(d))
    height = zero_vector(d)
    for f in cone.inequalities:
        height = vadd(height, f)
    basis = []
    for g in sorted(cands, key=lambda g: (dot(height, g), g)):
        if not any(cone.contains(vsub(g, h)) for h in basis):
            basis.append(g)
    return sorted(basis)


def _intrinsic_hilbert_basis(m):
    """Hilbert basis of the saturation of a monoid whose group is all of ``Z^r``."""
    r = m.rank
    cone = m.cone
    lin = list(cone.lineality)
    if not lin:
        return _pointed_hilbert_basis(cone)
    proj, section = quotient_by_saturated(lin, r)
    q = len(proj)
    image = Cone.from_generators(q, [mat_vec(proj, g) for g in cone.generators])
    lifted = [mat_vec(section, h) for h in _pointed_hilbert_basis(image)] if q else []
    return lin + [vneg(l) for l in lin] + lifted


def hilbert_basis(m):
    """Minimal generating set of the saturation of ``m``, sorted.

    For sharp monoids this is the usual (unique) Hilbert basis.  When there are
    units the output is a basis of the unit group, its negatives, and lifts of the
    Hilbert basis of the sharpening; such a generating set is not unique.
    """
    return list(_hilbert_cached(m))


def _hilbert_cached(m):
    cached = m.__dict__.get("_hb")
    if cached is None:
        _config.guard_face_rank(m.group_rank, "Hilbert basis")
        q = m.intrinsic()
        embed = m.intrinsic_embedding()
        cached = tuple(sorted(embed(h) for h in _intrinsic_hilbert_basis(q)))
        m.__dict__["_hb"] = cached
    return cached


def saturation(m):
    """Integral closure of ``m`` in its generated group."""
    if m.__dict__.get("_saturated") is True:
        return m
    out = AffineMonoid(m.lattice, _hilbert_cached(m))
    out.__dict__["_hb"] = out.generators
    out.__dict__["_saturated"] = True
    return out


def is_saturated(m):
    return m.is_saturated()


def is_sharp(m):
    return m.is_sharp()


def units(m):
    """Basis of the unit group of ``m``."""
    return list(m.units_basis)


def sharpen(m):
    """``m`` modulo its units, in the quotient of the ambient lattice by the saturated unit lattice."""
    if m.is_sharp():
        return m
    n = m.rank
    proj, _ = quotient_by_saturated(saturate_sublattice(m.units_basis, n), n)
    return AffineMonoid.of(len(proj), [mat_vec(proj, g) for g in m.generators])


def sharpening_map(m) -> LatticeHom:
    """The lattice projection used by :func:`sharpen`."""
    n = m.rank
    if m.is_sharp():
        return LatticeHom.identity(m.lattice)
    proj, _ = quotient_by_saturated(saturate_sublattice(m.units_basis, n), n)
    return LatticeHom(m.lattice, Lattice(len(proj)), proj)


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True, eq=False)
class MonoidFace:
    """The face ``parent ∩ cone`` of ``parent``, for a face ``cone`` of its cone hull."""

    parent: AffineMonoid
    cone: Cone

    @cached_property
    def generator_indices(self):
        return tuple(i for i, g in enumerate(self.parent.generators) if self.cone.contains(g))

    @property
    def generators(self):
        return tuple(self.parent.generators[i] for i in self.generator_indices)

    def monoid(self):
        return AffineMonoid(self.parent.lattice, self.generators)

    def contains(self, v):
        return self.cone.contains(v) and self.parent.contains(v)

    @property
    def dim(self):
        return self.cone.dim

    def is_unit_face(self):
        return self.cone == self.parent.cone.face_containing([])

    def _key(self):
        return (self.parent, self.cone)

    def __eq__(self, other):
        return isinstance(other, MonoidFace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"MonoidFace(generators={list(self.generators)})"


def monoid_faces(m):
    """All faces of ``m``, from the unit face up to ``m``, ordered by dimension."""
    _config.guard_face_rank(m.rank, "monoid faces")
    return [MonoidFace(m, f) for f in all_faces(m.cone)]


def unit_face(m):
    return MonoidFace(m, m.cone.face_containing([]))


def full_face(m):
    return MonoidFace(m, m.cone)


def face_spanned_by(m, points):
    """Smallest face of ``m`` containing ``points``."""
    return MonoidFace(m, m.cone.face_containing([as_vector(p) for p in points]))


def localize_at_face(m, f):
    """The monoid generated by ``m`` and ``-f``."""
    if f.parent != m:
        raise ValueError("face belongs to a different monoid")
    return AffineMonoid(m.lattice, m.generators + tuple(vneg(g) for g in f.generators))


def groupification(m):
    return localize_at_face(m, full_face(m))


def dual_monoid(m):
    """Lattice points of the dual cone, in the dual of the group of ``m``.

    The group of ``m`` is identified with ``Z^r`` through the HNF basis of
    :meth:`AffineMonoid.intrinsic`; when that group is the whole ambient
    lattice the coordinates are the ambient ones.
    """
    if not m.is_sharp():
        raise NotSharpError("dual_monoid needs a sharp monoid")
    q = m.intrinsic()
    return AffineMonoid.cone_points(dual_cone(q.cone))


def contains(m, v):
    return m.contains(v)
