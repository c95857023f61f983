"""Pans: supports of fans, compared up to subdivision.

A :class:`Pan` stores a representative fan, normalized by slicing with the
coordinate hyperplanes.  Two pans are equal when their supports coincide,
which is decided exactly by :func:`logcone.cones.cone_covered_by`.

Union, intersection and the refinement for a list of subpans all work inside
one hyperplane arrangement: every support involved is a union of cells of the
arrangement fan, so a cell belongs to a support iff one relative interior point
does.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Tuple

from . import _config
from .cones import (
    Cone,
    Fan,
    HalfSpace,
    all_faces,
    complete_fan,
    cone_covered_by,
    dual_cone,
    slice_cone,
    validate_fan,
)
from .errors import InputTooLargeError, NotStronglyConvexError, PreconditionFailed
from .lattice import (
    Lattice,
    LatticeHom,
    as_vector,
    cokernel_invariants,
    columns_to_matrix,
    kernel_basis,
    lattice_coordinates,
    sign_normalize,
    transpose,
    unit_vector,
)
from .homs import is_injective, is_local, is_locally_exact, maximal_critical_faces
from .monoids import AffineMonoid, face_spanned_by, hilbert_basis, localize_at_face
from .report import Report


def _coordinate_hyperplanes(n):
    return [unit_vector(n, i) for i in range(n)]


def _fan_from_cells(n, cones, hyperplanes):
    """Fan of the arrangement cells (for ``hyperplanes`` plus coordinates) inside ``cones``."""
    hs = list(dict.fromkeys(sign_normalize(h) for h in
                            list(hyperplanes) + _coordinate_hyperplanes(n) if any(h)))
    pieces = []
    for c in cones:
        pieces.extend(slice_cone(c, hs))
    return Fan.from_cones(n, pieces)


def _support_contains_point(cones, x):
    return any(c.contains(x) for c in cones)


@dataclass(frozen=True, eq=False)
class Pan:
    """The support of ``rep``; equality is equality of supports."""

    lattice: Lattice
    rep: Fan

    @classmethod
    def from_cones(cls, rank, cones):
        """The union of arbitrary cones (overlaps and lineality allowed)."""
        cones = list(cones)
        hs = [h for c in cones for h in tuple(c.inequalities) + tuple(c.equations)]
        return cls(Lattice(rank), _fan_from_cells(rank, cones, hs))

    @classmethod
    def of_cone(cls, cone):
        return cls.from_cones(cone.lattice.rank, [cone])

    @classmethod
    def whole_space(cls, rank):
        return cls.of_cone(Cone.whole_space(rank))

    @classmethod
    def empty(cls, rank):
        return cls(Lattice(rank), Fan.empty(rank))

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def maximal_cones(self):
        return self.rep.maximal_cones

    @property
    def dim(self):
        return self.rep.dim

    def contains(self, x):
        return _support_contains_point(self.maximal_cones, as_vector(x))

    def contains_cone(self, c):
        return cone_covered_by(c, self.maximal_cones)

    def contains_pan(self, other):
        """``|other| ⊆ |self|``."""
        _same_rank(self, other)
        return all(self.contains_cone(c) for c in other.maximal_cones)

    def is_empty(self):
        return not self.rep.cones

    def __eq__(self, other):
        return isinstance(other, Pan) and pan_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"Pan(rank={self.rank}, maximal={list(self.maximal_cones)})"


def _same_rank(a, b):
    if a.lattice != b.lattice:
        raise ValueError(f"pans live in lattices of rank {a.rank} and {b.rank}")


def pan_of_fan(f, validate=True):
    """The pan ``|f|``, represented by ``f`` sliced by the coordinate hyperplanes."""
    if validate:
        validate_fan(f)
    n = f.lattice.rank
    return Pan(f.lattice, _fan_from_cells(n, f.maximal_cones, []))


def pan_equal(a, b):
    if a.lattice != b.lattice:
        return False
    return a.contains_pan(b) and b.contains_pan(a)


@dataclass(frozen=True, eq=False)
class PanMorphism:
    """A lattice map whose real extension carries ``source`` into ``target``."""

    map: LatticeHom
    source: Pan
    target: Pan
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.map.source != self.source.lattice or self.map.target != self.target.lattice:
            raise ValueError("lattice map does not match the pans")
        if self.check and not self.carries_support():
            raise ValueError("the image of the source pan leaves the target pan")

    def carries_support(self):
        return all(self.target.contains_cone(c.image(self.map)) for c in self.source.maximal_cones)

    @classmethod
    def inclusion(cls, sub, ambient):
        return cls(LatticeHom.identity(ambient.lattice), sub, ambient)

    def image(self):
        return image_pan(self.map, self.source)


def image_pan(hom, a):
    """The image of ``|a|`` under ``hom``, as a pan (image cone by image cone)."""
    return Pan.from_cones(hom.target.rank, [c.image(hom) for c in a.maximal_cones])


def is_subpan_inclusion(m):
    """True iff the lattice map is an isomorphism carrying the source into the target."""
    return m.map.is_isomorphism() and m.carries_support()


def is_subpan(b, a):
    """``|b| ⊆ |a|`` inside the same lattice."""
    return a.contains_pan(b)


# ---------------------------------------------------------------------------
# refinements, unions and intersections


def _arrangement_hyperplanes(fans):
    out = []
    for f in fans:
        out.extend(f.hyperplanes())
    return out


def cells_inside(sigma, pan):
    """Cones of ``sigma`` lying in ``|pan|``, assuming ``|pan|`` is a union of cones of ``sigma``."""
    mc = pan.maximal_cones
    return [c for c in sigma.cones if _support_contains_point(mc, c.relint_point)]


def restrict_fan(sigma, pan):
    """The subfan of ``sigma`` made of cones inside ``|pan|``."""
    return Fan(sigma.lattice, tuple(cells_inside(sigma, pan)))


def refine_for_subpans(a, subpans):
    """A fan ``Σ`` with ``|Σ| = a`` such that the cones of ``Σ`` inside each subpan
    form a subfan supported on it.

    Each subpan's representative is completed to a complete fan and ``a`` is
    sliced by all hyperplanes of those completions, which realizes the common
    refinement of ``a`` with every completion.
    """
    subpans = list(subpans)
    _config.guard_pan_rank(a.rank)
    if len(subpans) > _config.MAX_SUBPANS:
        raise _too_many(len(subpans))
    for i, b in enumerate(subpans):
        _same_rank(a, b)
        if not a.contains_pan(b):
            raise PreconditionFailed("subpan", f"pan #{i} is not contained in the ambient pan")
    if not subpans:
        return a.rep
    hs = _arrangement_hyperplanes([complete_fan(b.rep) for b in subpans])
    hs += _arrangement_hyperplanes([a.rep])
    return _fan_from_cells(a.rank, a.maximal_cones, hs)


def _too_many(k):
    return InputTooLargeError(f"refine_for_subpans accepts at most {_config.MAX_SUBPANS} subpans, got {k}")


def _common_fan(pans):
    n = pans[0].rank
    hs = _arrangement_hyperplanes([p.rep for p in pans])
    return _fan_from_cells(n, [c for p in pans for c in p.maximal_cones], hs)


def pan_union(a, b):
    _same_rank(a, b)
    return Pan(a.lattice, _common_fan([a, b]))


def pan_intersection(a, b):
    _same_rank(a, b)
    sigma = _common_fan([a, b])
    cells = [c for c in cells_inside(sigma, a) if b.contains(c.relint_point)]
    return Pan(a.lattice, Fan.from_cones(a.rank, cells))


def pan_union_all(rank, pans):
    pans = list(pans)
    if not pans:
        return Pan.empty(rank)
    return Pan(Lattice(rank), _common_fan(pans))


def pan_intersection_all(ambient, pans):
    out = ambient
    for p in pans:
        out = pan_intersection(out, p)
    return out


# ---------------------------------------------------------------------------
# closed covers


def is_closed_cover(a, parts):
    parts = list(parts)
    for p in parts:
        _same_rank(a, p)
    if not all(a.contains_pan(p) for p in parts):
        return False
    return pan_equal(pan_union_all(a.rank, parts), a)


@dataclass(frozen=True, eq=False)
class CechCube:
    """Cells ``cell(t) = ∩_{i : t_i = 0} B_i``, with ``A`` for the all-ones tuple."""

    ambient: Pan
    cover: Tuple[Pan, ...]
    cells: Dict[Tuple[int, ...], Pan]

    def __getitem__(self, key):
        return self.cells[tuple(key)]


def cech_cube(a, parts):
    parts = tuple(parts)
    for i, p in enumerate(parts):
        if not a.contains_pan(p):
            raise PreconditionFailed("subpan", f"part #{i} is not contained in the ambient pan")
    cells = {}
    for t in product((0, 1), repeat=len(parts)):
        cells[t] = pan_intersection_all(a, [p for p, ti in zip(parts, t) if ti == 0])
    return CechCube(a, parts, cells)


# ---------------------------------------------------------------------------
# strong convexity and monoids


def hull_cone(a):
    return Cone.from_generators(a.rank, [g for c in a.maximal_cones for g in c.generators])


def is_strongly_convex(a):
    """The support is a single cone containing no line."""
    if a.is_empty():
        return False
    hull = hull_cone(a)
    return hull.is_pointed and a.contains_cone(hull)


def support_cone(a):
    if not is_strongly_convex(a):
        raise NotStronglyConvexError(f"{a} is not a strongly convex cone")
    return hull_cone(a)


def monoid_of_pan(a):
    """The saturated monoid ``P`` with ``dual_cone(P) = |a|``."""
    return AffineMonoid.cone_points(dual_cone(support_cone(a)))


def spec_pan(p):
    """``|Spec(P)|`` for a sharp monoid, in the dual of its own group."""
    return Pan.of_cone(dual_cone(p.intrinsic().cone))


def is_isogeny(m):
    """Finite kernel and surjective onto the target support."""
    if kernel_basis(m.map) or not m.carries_support():
        return False
    return pan_equal(m.image(), m.target)


def vertical_locus(m):
    """Union of the faces of the source cone none of whose rays map to zero."""
    src = support_cone(m.source)
    support_cone(m.target)
    faces = [f for f in all_faces(src) if all(any(m.map(r)) for r in f.rays)]
    return Pan.from_cones(m.source.rank, faces)


def _as_halfspace(n, x):
    if isinstance(x, HalfSpace):
        return x
    return HalfSpace(Lattice(n), as_vector(x), ">=0")


def halfspace_region(c, xs):
    """``c ∩ H_1 ∩ ... ∩ H_k`` for covectors (read as ``>= 0``) or :class:`HalfSpace` objects."""
    hs = [_as_halfspace(c.rank, x) for x in xs]
    if not hs:
        return c
    sigma = _fan_from_cells(c.rank, c.maximal_cones,
                            [h.covector for h in hs] + _arrangement_hyperplanes([c.rep]))
    cells = [k for k in sigma.cones if all(h.contains(k.relint_point) for h in hs)]
    return Pan(c.lattice, Fan.from_cones(c.rank, cells))


# ---------------------------------------------------------------------------
# the geometric setup for localizing at a maximal critical face


def _coords(basis, vectors):
    out = []
    for v in vectors:
        c = lattice_coordinates(basis, v)
        if c is None:
            raise ValueError(f"{v} is not in the group spanned by {basis}")
        out.append(c)
    return out


def verify_pan7_setup(theta, g):
    """Validate the cone-level hypotheses for localizing ``θ: P -> Q`` at ``G``.

    ``g`` must be a maximal θ-critical face of ``Q``; ``θ`` must be injective,
    local and locally exact.  Cones live in the duals of the groups of ``P``,
    ``G`` and ``Q``, each written in its HNF basis.  ``α`` is dual to
    ``(p, x) -> θ(p) + x``, ``C`` is the preimage of ``A × B`` under ``α`` and the
    ``x_i`` are the Hilbert basis elements of ``Q`` outside ``θ(P)``.
    """
    for name, pred in (("injective", is_injective), ("local", is_local),
                       ("locally_exact", is_locally_exact)):
        if not pred(theta):
            raise PreconditionFailed(name, f"θ is not {name.replace('_', ' ')}")
    if g.parent != theta.target:
        raise PreconditionFailed("face_of_target", "G is not a face of the target")
    if g not in maximal_critical_faces(theta):
        raise PreconditionFailed("maximal_critical", "G is not a maximal θ-critical face")

    p, q = theta.source, theta.target
    qb = q.group_basis
    rq = len(qb)
    q_int = q.intrinsic()
    theta_cols = _coords(qb, [theta(b) for b in p.group_basis])
    p_img = AffineMonoid.of(rq, _coords(qb, [theta(x) for x in p.generators]))
    g_mon = AffineMonoid.of(rq, _coords(qb, g.generators))
    g_basis = list(g_mon.group_basis)
    rp, rg = len(theta_cols), len(g_basis)
    s = columns_to_matrix(theta_cols + g_basis, rq)
    alpha = LatticeHom(Lattice(rq), Lattice(rp + rg), transpose(s, rp + rg))
    theta_gp = LatticeHom(Lattice(rp), Lattice(rq), columns_to_matrix(theta_cols, rq))

    report = Report("pan7-setup")
    a_pan, b_pan = spec_pan(p), spec_pan(g_mon)
    d_pan = Pan.of_cone(dual_cone(q_int.cone))
    report.add("strongly_convex", all(is_strongly_convex(x) for x in (a_pan, b_pan, d_pan)),
               ranks={"A": rp, "B": rg, "D": rq})

    c_cone = Cone.from_inequalities(rq, p_img.generators + g_mon.generators)
    c_pan = Pan.of_cone(c_cone)
    ab_pan = Pan.of_cone(hull_cone(a_pan).product(hull_cone(b_pan)))
    free, torsion = cokernel_invariants(alpha)
    iso = is_isogeny(PanMorphism(alpha, c_pan, ab_pan, check=False))
    report.add("isogeny", iso, alpha=_matrix(alpha), kernel_rank=len(kernel_basis(alpha)),
               cokernel_free_rank=free, cokernel_torsion=torsion,
               theta_gp_cokernel_torsion=cokernel_invariants(theta_gp)[1])

    xs = [x for x in hilbert_basis(q_int) if not p_img.contains(x)]
    report.add("generators_cut_out_D", pan_equal(halfspace_region(c_pan, xs), d_pan),
               xs=[list(x) for x in xs])

    fiber = Pan.of_cone(Cone.from_inequalities(rq, c_cone.inequalities,
                                               tuple(c_cone.equations) + tuple(g_basis)))
    q_g = localize_at_face(q_int, face_spanned_by(q_int, g_mon.generators))
    report.add("fiber_is_spec_QG", pan_equal(fiber, Pan.of_cone(dual_cone(q_g.cone))))
    report.add("fiber_in_halfspaces",
               all(pan_equal(halfspace_region(fiber, [x]), fiber) for x in xs))
    return report


def _matrix(hom):
    return [list(r) for r in hom.matrix]
