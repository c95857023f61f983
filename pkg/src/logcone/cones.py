"""Rational polyhedral cones and fans.

A :class:`Cone` keeps both descriptions in canonical form: primitive extreme rays
(taken orthogonal to the lineality space when there is one) plus a lineality
basis, and primitive facet covectors plus a basis of the orthogonal complement of
its span.  Both are computed by the double description method, so the dual cone
comes for free by swapping the two descriptions.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Tuple

from . import _config
from .errors import InvalidFanError, LinealityError, NotSharpError
from .lattice import (
    Lattice,
    Vector,
    as_vector,
    dot,
    primitive,
    project_off,
    rank,
    saturate_sublattice,
    sign_normalize,
    unit_vector,
    vneg,
    vscale,
    vsub,
    zero_vector,
)


# ---------------------------------------------------------------------------
# double description


def _double_description(n, constraints):
    """Generators of ``{x in R^n : <a, x> >= 0 for a in constraints}``.

    Returns ``(lineality, rays)``: an integer spanning set of the lineality space
    and the extreme rays modulo it.
    """
    lin = [unit_vector(n, i) for i in range(n)]
    rays = []
    processed = []
    for a in constraints:
        if not any(a):
            continue
        lvals = [dot(a, l) for l in lin]
        k = next((i for i, x in enumerate(lvals) if x), None)
        if k is not None:
            p, ap = lin[k], lvals[k]
            if ap < 0:
                p, ap = vneg(p), -ap
            new_lin = []
            for i, (l, x) in enumerate(zip(lin, lvals)):
                if i != k:
                    new_lin.append(primitive(vsub(vscale(ap, l), vscale(x, p))) if x else l)
            new_rays = []
            for r in rays:
                x = dot(a, r)
                new_rays.append(primitive(vsub(vscale(ap, r), vscale(x, p))) if x else r)
            new_rays.append(primitive(p))
            lin, rays = new_lin, new_rays
        else:
            vals = [dot(a, r) for r in rays]
            neg = [(r, x) for r, x in zip(rays, vals) if x < 0]
            if neg:
                pos = [(r, x) for r, x in zip(rays, vals) if x > 0]
                new = [r for r, x in zip(rays, vals) if x >= 0]
                if pos:
                    target = rank(processed, n) - 2
                    for rp, xp in pos:
                        zp = [c for c in processed if dot(c, rp) == 0]
                        for rn, xn in neg:
                            tight = [c for c in zp if dot(c, rn) == 0]
                            if len(tight) >= target and rank(tight, n) == target:
                                new.append(primitive(vsub(vscale(xp, rn), vscale(xn, rp))))
                rays = list(dict.fromkeys(new))
        processed.append(a)
    return lin, rays


def _canonical(n, lin, rays):
    lin_basis = tuple(saturate_sublattice(lin, n)) if lin else ()
    out = set()
    for r in rays:
        r = project_off(r, lin_basis) if lin_basis else primitive(r)
        if any(r):
            out.add(r)
    return lin_basis, tuple(sorted(out))


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True, eq=False)
class Cone:
    """A rational polyhedral cone in ``lattice ⊗ R``.

    Build one with :meth:`from_generators` or :meth:`from_inequalities`.
    ``rays`` are the primitive extreme rays, ``lineality`` a basis of the
    lineality lattice, ``inequalities`` the primitive facet covectors and
    ``equations`` a basis of the covectors vanishing on the cone.
    """

    lattice: Lattice
    rays: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...]
    inequalities: Tuple[Vector, ...]
    equations: Tuple[Vector, ...]

    # construction ---------------------------------------------------------

    @classmethod
    def _build(cls, n, lin, rays, dlin, drays):
        lin_c, rays_c = _canonical(n, lin, rays)
        dlin_c, drays_c = _canonical(n, dlin, drays)
        return cls(Lattice(n), rays_c, lin_c, drays_c, dlin_c)

    @classmethod
    def from_generators(cls, rank_or_lattice, gens):
        n = _rank_of(rank_or_lattice)
        gens = [as_vector(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} does not live in Z^{n}")
        dlin, drays = _double_description(n, gens)
        dual_gens = drays + dlin + [vneg(l) for l in dlin]
        lin, rays = _double_description(n, dual_gens)
        return cls._build(n, lin, rays, dlin, drays)

    @classmethod
    def from_inequalities(cls, rank_or_lattice, inequalities, equations=()):
        n = _rank_of(rank_or_lattice)
        ineqs = [as_vector(h) for h in inequalities]
        eqs = [as_vector(e) for e in equations]
        lin, rays = _double_description(n, ineqs + eqs + [vneg(e) for e in eqs])
        gens = rays + lin + [vneg(l) for l in lin]
        dlin, drays = _double_description(n, gens)
        return cls._build(n, lin, rays, dlin, drays)

    @classmethod
    def zero(cls, rank_or_lattice):
        n = _rank_of(rank_or_lattice)
        return cls.from_generators(n, [])

    @classmethod
    def whole_space(cls, rank_or_lattice):
        return cls.from_inequalities(_rank_of(rank_or_lattice), [])

    # identity -------------------------------------------------------------

    def _key(self):
        return (self.lattice.rank, self.lineality, self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def sort_key(self):
        return (self.dim, self.rays, self.lineality)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone({', '.join(map(str, self.rays))})"

    # properties -----------------------------------------------------------

    @property
    def ambient_rank(self):
        return self.lattice.rank

    @property
    def dim(self):
        return self.lattice.rank - len(self.equations)

    @property
    def is_pointed(self):
        return not self.lineality

    @property
    def is_full_dimensional(self):
        return not self.equations

    @cached_property
    def generators(self):
        return self.rays + self.lineality + tuple(vneg(l) for l in self.lineality)

    def contains(self, x):
        return (all(dot(h, x) >= 0 for h in self.inequalities)
                and all(dot(e, x) == 0 for e in self.equations))

    __contains__ = contains

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators)

    def interior_contains(self, x):
        """True iff ``x`` lies in the relative interior."""
        return (all(dot(h, x) > 0 for h in self.inequalities)
                and all(dot(e, x) == 0 for e in self.equations))

    @cached_property
    def relint_point(self) -> Vector:
        p = zero_vector(self.lattice.rank)
        for r in self.rays:
            p = tuple(a + b for a, b in zip(p, r))
        return p

    def intersect(self, other):
        _same_lattice(self, other)
        return Cone.from_inequalities(self.lattice.rank,
                                      self.inequalities + other.inequalities,
                                      self.equations + other.equations)

    def dual(self):
        return Cone(self.lattice, self.inequalities, self.equations, self.rays, self.lineality)

    def span_basis(self):
        """Basis of the saturated lattice ``span(cone) ∩ Z^n``."""
        return saturate_sublattice(self.generators, self.lattice.rank)

    def face_containing(self, points):
        """Smallest face of this cone containing ``points`` (which must lie in the cone)."""
        tight = [h for h in self.inequalities if all(dot(h, p) == 0 for p in points)]
        return Cone.from_inequalities(self.lattice.rank, self.inequalities,
                                      tuple(self.equations) + tuple(tight))

    def is_face_of(self, other):
        if not other.contains_cone(self):
            return False
        return other.face_containing(self.generators) == self

    def image(self, hom):
        """Image under a lattice homomorphism (a cone again)."""
        return Cone.from_generators(hom.target.rank, [hom(g) for g in self.generators])

    def product(self, other):
        a, b = self.lattice.rank, other.lattice.rank
        gens = [g + (0,) * b for g in self.generators] + [(0,) * a + g for g in other.generators]
        return Cone.from_generators(a + b, gens)


def _rank_of(x):
    return x.rank if isinstance(x, Lattice) else int(x)


def _same_lattice(a, b):
    if a.lattice != b.lattice:
        raise ValueError(f"lattice mismatch: rank {a.lattice.rank} vs {b.lattice.rank}")


@dataclass(frozen=True)
class HalfSpace:
    """``{y : <y, covector> >= 0}``, ``<= 0`` or ``= 0`` depending on ``sense``."""

    lattice: Lattice
    covector: Vector
    sense: str = ">=0"

    def __post_init__(self):
        if self.sense not in (">=0", "<=0", "=0"):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "covector", as_vector(self.covector))

    def contains(self, y):
        v = dot(self.covector, y)
        return v >= 0 if self.sense == ">=0" else v <= 0 if self.sense == "<=0" else v == 0

    def as_cone(self):
        n = self.lattice.rank
        if self.sense == ">=0":
            return Cone.from_inequalities(n, [self.covector])
        if self.sense == "<=0":
            return Cone.from_inequalities(n, [vneg(self.covector)])
        return Cone.from_inequalities(n, [], [self.covector])


def dual_cone(c):
    """``{u : <u, v> >= 0 for all v in c}`` in the dual lattice."""
    return c.dual()


def _face_ray_sets(c):
    n_rays = len(c.rays)
    facet_sets = {frozenset(i for i, r in enumerate(c.rays) if dot(h, r) == 0)
                  for h in c.inequalities}
    full = frozenset(range(n_rays))
    seen = {full}
    frontier = [full]
    while frontier:
        f = frontier.pop()
        for s in facet_sets:
            g = f & s
            if g not in seen:
                seen.add(g)
                frontier.append(g)
    return seen


def all_faces(c):
    """Faces of ``c`` (each containing the lineality space), canonically ordered."""
    _config.guard_face_rank(c.lattice.rank)
    lin_gens = list(c.lineality) + [vneg(l) for l in c.lineality]
    out = []
    for s in _face_ray_sets(c):
        if len(s) == len(c.rays):
            out.append(c)
        else:
            out.append(Cone.from_generators(c.lattice.rank,
                                            [c.rays[i] for i in sorted(s)] + lin_gens))
    return sorted(set(out), key=Cone.sort_key)


def faces(c):
    """All faces of a strongly convex cone, from ``{0}`` up to ``c``."""
    if not c.is_pointed:
        raise LinealityError(f"{c} contains a line")
    return all_faces(c)


# ---------------------------------------------------------------------------
# covering tests


def _cutting_hyperplanes(cones):
    hs = {}
    for k in cones:
        for h in tuple(k.inequalities) + tuple(k.equations):
            hs.setdefault(sign_normalize(h), None)
    return list(hs)


def _split(cell, h):
    vals = [dot(h, g) for g in cell.generators]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [cell]
    n = cell.lattice.rank
    return [Cone.from_inequalities(n, cell.inequalities + (h,), cell.equations),
            Cone.from_inequalities(n, cell.inequalities + (vneg(h),), cell.equations)]


def slice_cone(cell, hyperplanes):
    """Split ``cell`` by every hyperplane; returns the full-dimensional pieces."""
    cells = [cell]
    for h in hyperplanes:
        nxt = []
        for c in cells:
            nxt.extend(_split(c, h))
        cells = nxt
    return cells


def cone_covered_by(tau, cones):
    """Exact test of ``tau ⊆ ∪ cones`` for arbitrary (not necessarily fan-forming) cones.

    ``tau`` is split by every facet and span hyperplane of the covering cones; on
    each piece every covering cone either contains the relative interior or misses
    it, so testing one relative interior point per piece decides the question.
    """
    cones = [k for k in cones]
    if not cones:
        return False
    if tau.dim == 0:
        return True
    if any(k.contains_cone(tau) for k in cones):
        return True
    relevant = [k for k in cones if k.intersect(tau).dim == tau.dim]
    if not relevant:
        return False
    for cell in slice_cone(tau, _cutting_hyperplanes(relevant)):
        p = cell.relint_point
        if not any(k.contains(p) for k in relevant):
            return False
    return True


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True, eq=False)
class Fan:
    """A face-closed collection of strongly convex cones, canonically sorted.

    Use :meth:`from_cones` to close a list of cones under faces; the constructor
    itself trusts its input.  Call :func:`validate_fan` to check the axioms.
    """

    lattice: Lattice
    cones: Tuple[Cone, ...]

    @classmethod
    def from_cones(cls, rank_or_lattice, cones):
        n = _rank_of(rank_or_lattice)
        closed = set()
        for c in sorted(set(cones), key=lambda c: -c.dim):
            if c.lattice.rank != n:
                raise ValueError("cone lives in a different lattice")
            if c in closed:
                continue
            if not c.is_pointed:
                raise LinealityError(f"fan cones must be strongly convex, got {c}")
            closed.update(all_faces(c))
        return cls(Lattice(n), tuple(sorted(closed, key=Cone.sort_key)))

    @classmethod
    def from_rays(cls, rank_or_lattice, cone_rays):
        n = _rank_of(rank_or_lattice)
        return cls.from_cones(n, [Cone.from_generators(n, rs) for rs in cone_rays])

    @classmethod
    def empty(cls, rank_or_lattice):
        return cls(Lattice(_rank_of(rank_or_lattice)), ())

    def __eq__(self, other):
        return isinstance(other, Fan) and self.lattice == other.lattice and self.cones == other.cones

    def __hash__(self):
        return hash((self.lattice, self.cones))

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def __contains__(self, cone):
        return cone in self._cone_set

    def __repr__(self):
        return f"Fan(maximal={list(self.maximal_cones)})"

    @cached_property
    def _cone_set(self):
        return frozenset(self.cones)

    @cached_property
    def maximal_cones(self):
        out = []
        for c in sorted(self.cones, key=lambda c: -c.dim):
            if not any(m.dim > c.dim and m.contains_cone(c) for m in out):
                out.append(c)
        return tuple(sorted(out, key=Cone.sort_key))

    @property
    def dim(self):
        return max((c.dim for c in self.cones), default=-1)

    def support_contains(self, x):
        return any(c.contains(x) for c in self.maximal_cones)

    def rays(self):
        return sorted({r for c in self.cones if c.dim == 1 for r in c.rays})

    def hyperplanes(self):
        """Facet and span covectors of the maximal cones, sign-normalized.

        Every face of a maximal cone is cut out by these, so slicing by them
        makes each cone of the fan a union of cells.
        """
        return _cutting_hyperplanes(self.maximal_cones)


def validate_fan(f):
    """Raise :class:`InvalidFanError` unless ``f`` satisfies the fan axioms."""
    for c in f.cones:
        if not c.is_pointed:
            raise InvalidFanError(f"cone {c} is not strongly convex")
    for c in f.maximal_cones:
        for face in all_faces(c):
            if face not in f:
                raise InvalidFanError(f"face {face} of {c} is missing")
    maxes = f.maximal_cones
    for i, a in enumerate(maxes):
        for b in maxes[i + 1:]:
            m = a.intersect(b)
            if not (m.is_face_of(a) and m.is_face_of(b)):
                raise InvalidFanError(f"{a} and {b} do not meet in a common face")
    return f


def is_valid_fan(f):
    try:
        validate_fan(f)
    except InvalidFanError:
        return False
    return True


def fan_of_cone(c):
    return Fan.from_cones(c.lattice.rank, [c])


def _check_same(f, g):
    if f.lattice != g.lattice:
        raise ValueError("fans live in different lattices")


def common_refinement(f, g):
    """The fan ``{σ ∩ τ : σ in f, τ in g}``; its support is ``|f| ∩ |g|``."""
    _check_same(f, g)
    cones = set()
    for a in f.maximal_cones:
        for b in g.maximal_cones:
            if a.contains_cone(b):
                cones.add(b)
            elif b.contains_cone(a):
                cones.add(a)
            else:
                cones.add(a.intersect(b))
    return Fan.from_cones(f.lattice.rank, cones)


def refine_by_hyperplanes(f, hyperplanes):
    """Common refinement of ``f`` with the arrangement fan of ``hyperplanes``."""
    pieces = []
    hs = [sign_normalize(h) for h in hyperplanes if any(h)]
    for c in f.maximal_cones:
        pieces.extend(slice_cone(c, hs))
    return Fan.from_cones(f.lattice.rank, pieces)


def support_contained(f, g):
    """``|f| ⊆ |g|``."""
    _check_same(f, g)
    gm = g.maximal_cones
    return all(cone_covered_by(c, gm) for c in f.maximal_cones)


def same_support(f, g):
    return support_contained(f, g) and support_contained(g, f)


def is_subdivision(f, g):
    """True iff ``|f| = |g|`` and every cone of ``f`` lies in a cone of ``g``."""
    _check_same(f, g)
    gm = g.maximal_cones
    for c in f.maximal_cones:
        if not any(m.contains_cone(c) for m in gm):
            return False
    return support_contained(g, f)


def is_subfan(f, g):
    """True iff every cone of ``f`` is a cone of ``g``."""
    _check_same(f, g)
    return all(c in g for c in f.cones)


def is_complete(f):
    return cone_covered_by(Cone.whole_space(f.lattice.rank), f.maximal_cones)


def _orthants(n):
    out = []
    for signs in product((1, -1), repeat=n):
        out.append(Cone.from_generators(n, [vscale(s, unit_vector(n, i))
                                            for i, s in enumerate(signs)]))
    return out


def complete_fan(f):
    """A complete fan refining ``f`` on ``|f|``.

    Complete inputs are returned unchanged.  Otherwise the result is the
    arrangement fan of the coordinate hyperplanes together with every facet and
    span covector of the cones of ``f``, so each cone of ``f`` is a union of
    cones of the output.
    """
    n = f.lattice.rank
    if f.cones and is_complete(f):
        return f
    coords = [unit_vector(n, i) for i in range(n)]
    hs = [h for h in f.hyperplanes() if h not in coords]
    cells = []
    for orthant in _orthants(n):
        cells.extend(slice_cone(orthant, hs))
    return Fan.from_cones(n, cells)


def spec_fan(p):
    """The fan of all faces of the dual cone of a sharp monoid ``p``.

    The dual is taken in the dual of ``p``'s own group, so the monoid is first
    expressed in coordinates of a basis of its groupification.
    """
    if not p.is_sharp():
        raise NotSharpError("Spec(P) needs a sharp monoid")
    q = p.intrinsic()
    return Fan.from_cones(q.lattice.rank, [dual_cone(q.cone)])
