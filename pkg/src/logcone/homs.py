"""Homomorphisms of affine monoids and the constructions built on them.

Pushouts are represented without torsion.  For ``h: P -> Q`` and ``k: P -> P'``
the integral pushout is the image of ``Q ⊕ P'`` in ``(Q^gp ⊕ P'^gp) / P^gp``; we
store its preimage in ``Z^{nQ} ⊕ Z^{nP'}`` instead, namely the monoid generated
by ``Q ⊕ P'`` together with the relation lattice ``{(h(x), -k(x))}``.  The
relations are units there, so quotienting by them recovers the pushout, and the
preimage is saturated exactly when the pushout is.
"""

from dataclasses import dataclass
from typing import Tuple

from . import _config
from .cones import Cone
from .errors import ExponentNotFound, NotSaturatedError, PreconditionFailed
from .lattice import (
    Lattice,
    LatticeHom,
    Vector,
    as_matrix,
    block_diag,
    hstack,
    identity,
    mat_mul,
    quotient_by_saturated,
    rank,
    saturate_sublattice,
    vneg,
    vscale,
    zeros,
)
from .monoids import (
    AffineMonoid,
    MonoidFace,
    direct_sum,
    hilbert_basis,
    localize_at_face,
    monoid_faces,
    saturation,
    sharpen,
    sharpening_map,
)


@dataclass(frozen=True, eq=False)
class MonoidHom:
    """A monoid homomorphism ``source -> target`` induced by a lattice map."""

    source: AffineMonoid
    target: AffineMonoid
    group_map: LatticeHom

    def __post_init__(self):
        gm = self.group_map
        if gm.source != self.source.lattice or gm.target != self.target.lattice:
            raise ValueError("group map does not match the monoid lattices")
        for g in self.source.generators:
            if not self.target.contains(gm(g)):
                raise ValueError(f"generator {g} maps to {gm(g)}, outside the target monoid")

    @classmethod
    def from_matrix(cls, source, target, matrix):
        m = as_matrix(matrix, source.rank)
        return cls(source, target, LatticeHom(source.lattice, target.lattice, m))

    @classmethod
    def identity(cls, m):
        return cls(m, m, LatticeHom.identity(m.lattice))

    @classmethod
    def multiplication(cls, m, n):
        """``x -> n x`` on ``m``."""
        return cls(m, m, LatticeHom.scalar(m.lattice, n))

    def __call__(self, v):
        return self.group_map(v)

    def compose(self, inner):
        """``self ∘ inner``."""
        return MonoidHom(inner.source, self.target, self.group_map.compose(inner.group_map))

    def __repr__(self):
        return f"MonoidHom({self.source!r} -> {self.target!r}, matrix={list(self.group_map.matrix)})"


# ---------------------------------------------------------------------------
# predicates


def is_injective(h):
    """Injective on the source group (equivalently on the source monoid)."""
    basis = h.source.group_basis
    return rank([h(b) for b in basis], h.target.rank) == len(basis)


def is_local(h):
    """Only units of the source map to units of the target."""
    return all(h.source.is_unit(g) for g in h.source.generators if h.target.is_unit(h(g)))


def _require_saturated(h):
    for side, m in (("source", h.source), ("target", h.target)):
        if not m.is_saturated():
            raise NotSaturatedError(f"the {side} monoid is not saturated")


def _exact_by_cones(source, target, group_map):
    """Cone criterion for exactness; both monoids must be saturated."""
    embed = source.intrinsic_embedding()
    composite = group_map.compose(embed)
    r = embed.source.rank
    cols = composite.columns()

    def pull(covectors):
        return [tuple(sum(a * b for a, b in zip(c, col)) for col in cols) for c in covectors]

    qc = target.cone
    preimage = Cone.from_inequalities(r, pull(qc.inequalities), pull(qc.equations))
    return preimage == source.intrinsic().cone


def is_exact(h):
    """``P = (θ^gp)^{-1}(Q)``, decided by comparing cones in the source group.

    Only saturated source and target are supported.
    """
    _require_saturated(h)
    return _exact_by_cones(h.source, h.target, h.group_map)


def preimage_face(h, g):
    """The face ``θ^{-1}(G)`` of the source, for a face ``G`` of the target."""
    pts = [x for x in h.source.generators if g.cone.contains(h(x))]
    return MonoidFace(h.source, h.source.cone.face_containing(pts))


def is_locally_exact(h):
    """Exact after localizing at every face ``G`` of the target and at ``θ^{-1}(G)``."""
    _require_saturated(h)
    _config.guard_face_rank(h.target.rank, "local exactness")
    for g in monoid_faces(h.target):
        f = preimage_face(h, g)
        if not _exact_by_cones(localize_at_face(h.source, f), localize_at_face(h.target, g),
                               h.group_map):
            return False
    return True


def is_kummer(h):
    """Injective, and every target element has a multiple in the image."""
    if not is_injective(h):
        return False
    image = Cone.from_generators(h.target.rank, [h(g) for g in h.source.generators])
    return image == h.target.cone


def _is_critical(h, g):
    return all(h.source.is_unit(x) for x in h.source.generators if g.cone.contains(h(x)))


def critical_faces(h):
    """Faces ``G`` of the target whose preimage is the unit face of the source."""
    _config.guard_face_rank(h.target.rank, "critical faces")
    return [g for g in monoid_faces(h.target) if _is_critical(h, g)]


def maximal_critical_faces(h):
    crit = critical_faces(h)
    return [g for g in crit
            if not any(o.dim > g.dim and o.cone.contains_cone(g.cone) for o in crit)]


# ---------------------------------------------------------------------------
# pushouts


@dataclass(frozen=True, eq=False)
class PushoutResult:
    """Pushout of ``h: P -> Q`` and ``k: P -> P'``.

    ``integral`` and ``fs`` live in ``Z^{nQ} ⊕ Z^{nP'}`` and contain the
    ``relations`` lattice as units; ``to_q`` and ``to_p_prime`` are the insertions.
    """

    integral: AffineMonoid
    fs: AffineMonoid
    relations: Tuple[Vector, ...]
    to_q: MonoidHom
    to_p_prime: MonoidHom

    def is_saturated(self):
        return self.integral.is_saturated()


def integral_pushout(h, k):
    if h.source != k.source:
        raise ValueError("the two homomorphisms must share their source")
    q, pp = h.target, k.target
    nq, np_ = q.rank, pp.rank
    relations = tuple(h(b) + vneg(k(b)) for b in h.source.group_basis)
    gens = ([g + (0,) * np_ for g in q.generators]
            + [(0,) * nq + g for g in pp.generators]
            + list(relations) + [vneg(r) for r in relations])
    integral = AffineMonoid.of(nq + np_, gens)
    fs = saturation(integral)
    n = nq + np_
    to_q = MonoidHom(q, integral, LatticeHom(q.lattice, Lattice(n),
                                             identity(nq) + zeros(np_, nq)))
    to_pp = MonoidHom(pp, integral, LatticeHom(pp.lattice, Lattice(n),
                                               zeros(nq, np_) + identity(np_)))
    return PushoutResult(integral, fs, relations, to_q, to_pp)


def fs_pushout_hom(h, k):
    """The base change of ``h`` along ``k``: ``P' -> fs pushout``."""
    po = integral_pushout(h, k)
    return MonoidHom(k.target, po.fs, po.to_p_prime.group_map)


def sharpened_pushout(h, k):
    """The sharpening of the fs pushout."""
    return sharpen(integral_pushout(h, k).fs)


def sharpen_hom(h):
    """The induced homomorphism between sharpenings."""
    qs = sharpening_map(h.target)
    section = _section(h.source)
    matrix = mat_mul(qs.matrix, mat_mul(h.group_map.matrix, section)) if section else ()
    src, tgt = sharpen(h.source), sharpen(h.target)
    return MonoidHom(src, tgt, LatticeHom(src.lattice, tgt.lattice,
                                          matrix or zeros(tgt.rank, src.rank)))


def _section(m):
    """A right inverse of the sharpening projection of ``m``."""
    if m.is_sharp():
        return identity(m.rank)
    _, sec = quotient_by_saturated(saturate_sublattice(m.units_basis, m.rank), m.rank)
    return sec


@dataclass(frozen=True)
class SharpeningComparison:
    """Both computation paths for the sharpened fs pushout and the comparison map."""

    direct: AffineMonoid
    via_sharpened: AffineMonoid
    comparison: LatticeHom
    isomorphic: bool


def compare_sharpened_pushouts(h, k):
    """Check that sharpening commutes with fs pushouts for saturated data.

    ``direct`` sharpens the fs pushout of ``h`` and ``k``; ``via_sharpened``
    first sharpens ``h`` and ``k``.  The comparison map is induced by the
    sharpening projections of ``Q`` and ``P'``; the paths agree iff it sends the
    Hilbert basis of one bijectively onto the other and is injective on groups.
    """
    for m in (h.source, h.target, k.target):
        if not m.is_saturated():
            raise NotSaturatedError("sharpened pushouts are compared for saturated monoids only")
    po1 = integral_pushout(h, k)
    direct = sharpen(po1.fs)
    s1 = _section(po1.fs)

    hs, ks = sharpen_hom(h), sharpen_hom(k)
    po2 = integral_pushout(hs, ks)
    pi2 = sharpening_map(po2.fs)
    via = sharpen(po2.fs)

    pq, ppp = sharpening_map(h.target), sharpening_map(k.target)
    both = block_diag(pq.matrix, ppp.matrix, (pq.target.rank, pq.source.rank),
                      (ppp.target.rank, ppp.source.rank))
    if direct.rank and via.rank:
        psi_m = mat_mul(pi2.matrix, mat_mul(both, s1))
    else:
        psi_m = zeros(via.rank, direct.rank)
    psi = LatticeHom(direct.lattice, via.lattice, psi_m)

    hb1, hb2 = hilbert_basis(direct), hilbert_basis(via)
    images = [psi(g) for g in hb1]
    iso = (sorted(images) == sorted(hb2) and len(set(images)) == len(hb1)
           and rank(images, via.rank) == rank(hb1, direct.rank))
    return SharpeningComparison(direct, via, psi, iso)


def is_pushout_saturated_along_mult(h, n):
    """Is the integral pushout of ``h`` along ``x -> n x`` on its source saturated?"""
    if n < 1:
        raise ValueError("n must be positive")
    return integral_pushout(h, MonoidHom.multiplication(h.source, n)).is_saturated()


@dataclass(frozen=True, eq=False)
class SaturationCertificate:
    exponent: int
    witness: PushoutResult


def _check_hypotheses(h):
    for name, pred in (("injective", is_injective), ("local", is_local),
                       ("locally_exact", is_locally_exact)):
        if not pred(h):
            raise PreconditionFailed(name, f"homomorphism is not {name.replace('_', ' ')}")


def find_saturation_exponent(h, n_max=64):
    """Smallest ``n <= n_max`` whose pushout along ``x -> n x`` is saturated."""
    _check_hypotheses(h)
    for n in range(1, n_max + 1):
        po = integral_pushout(h, MonoidHom.multiplication(h.source, n))
        if po.is_saturated():
            return SaturationCertificate(n, po)
    raise ExponentNotFound(n_max)


def is_saturated_along(h, m_max):
    """Are the pushouts of ``h`` along ``x -> m x`` saturated for every ``m <= m_max``?"""
    return all(is_pushout_saturated_along_mult(h, m) for m in range(1, m_max + 1))


def find_base_change_exponent(h, n_max=16, m_max=4):
    """Smallest ``n`` such that the base change of ``h`` along ``x -> n x`` passes
    :func:`is_saturated_along` with ``m_max``.

    This is the exponent that makes the fs base change a saturated morphism, as
    far as multiplication maps up to ``m_max`` can tell.
    """
    _check_hypotheses(h)
    for n in range(1, n_max + 1):
        theta_n = fs_pushout_hom(h, MonoidHom.multiplication(h.source, n))
        if is_saturated_along(theta_n, m_max):
            return SaturationCertificate(n, integral_pushout(h, MonoidHom.multiplication(h.source, n)))
    raise ExponentNotFound(n_max)


# ---------------------------------------------------------------------------
# chart construction for saturating a morphism


@dataclass(frozen=True, eq=False)
class ConservCharts:
    """``eta: P -> P ⊕ P``, ``incl: P -> P^gp ⊕ P`` (both ``p -> (p, n p)``),
    the first projection ``P ⊕ P -> P`` and the inclusion ``P ⊕ P -> P^gp ⊕ P``."""

    p: AffineMonoid
    n: int
    eta: MonoidHom
    incl: MonoidHom
    first_proj: MonoidHom
    inclusion: MonoidHom


def build_conserv_charts(p, n):
    if not p.is_sharp():
        raise PreconditionFailed("sharp", "P must be sharp")
    if not p.is_saturated():
        raise PreconditionFailed("saturated", "P must be saturated")
    if n < 1:
        raise ValueError("n must be positive")
    r = p.rank
    p2 = direct_sum(p, p)
    gb = p.group_basis
    p_prime = AffineMonoid.of(2 * r, [b + (0,) * r for b in gb] + [vneg(b) + (0,) * r for b in gb]
                              + [(0,) * r + g for g in p.generators])
    diag = identity(r) + tuple(vscale(n, row) for row in identity(r))
    lat, lat2 = p.lattice, Lattice(2 * r)
    eta = MonoidHom(p, p2, LatticeHom(lat, lat2, diag))
    incl = MonoidHom(p, p_prime, LatticeHom(lat, lat2, diag))
    proj = MonoidHom(p2, p, LatticeHom(lat2, lat, hstack(identity(r), zeros(r, r), nrows=r)))
    inclusion = MonoidHom(p2, p_prime, LatticeHom.identity(lat2))
    return ConservCharts(p, n, eta, incl, proj, inclusion)


def summand_faces(charts):
    """The faces ``P ⊕ 0`` and ``0 ⊕ P`` of ``P ⊕ P``."""
    p2 = charts.eta.target
    r = charts.p.rank
    left = [g + (0,) * r for g in charts.p.generators]
    right = [(0,) * r + g for g in charts.p.generators]
    return [MonoidFace(p2, p2.cone.face_containing(left)),
            MonoidFace(p2, p2.cone.face_containing(right))]

