"""Seeded random instances for property suites.

Every function takes a :class:`random.Random` so runs are reproducible.
"""

from .cones import Cone
from .homs import MonoidHom
from .lattice import LatticeHom, vneg
from .monoids import AffineMonoid, saturation
from .pans import Pan, pan_intersection


def random_vector(rng, rank, lo, hi):
    while True:
        v = tuple(rng.randint(lo, hi) for _ in range(rank))
        if any(v):
            return v


def random_pointed_cone(rng, rank, bound=5, max_rays=None):
    """A strongly convex cone spanned by a few random vectors with entries in ``[-bound, bound]``."""
    max_rays = max_rays or rank + 2
    while True:
        k = rng.randint(1, max_rays)
        c = Cone.from_generators(rank, [random_vector(rng, rank, -bound, bound) for _ in range(k)])
        if c.is_pointed:
            return c


def random_saturated_monoid(rng, rank, bound=4, unit_prob=0.3, max_gens=None, sharp=False):
    """Saturation of a random monoid; units appear at random unless ``sharp``."""
    max_gens = max_gens or rank + 1
    while True:
        gens = [random_vector(rng, rank, -bound, bound) for _ in range(rng.randint(1, max_gens))]
        if not sharp and rng.random() < unit_prob:
            u = random_vector(rng, rank, -bound, bound)
            gens += [u, vneg(u)]
        m = AffineMonoid.of(rank, gens)
        if not sharp or m.cone.is_pointed:
            return saturation(m)


def random_matrix(rng, rows, cols, bound=2):
    return tuple(tuple(rng.randint(-bound, bound) for _ in range(cols)) for _ in range(rows))


def random_hom_from(rng, p, target_rank, bound=2, extra=2, unit_prob=0.3):
    """A random map out of ``p``; the target is saturated and contains the image plus extras."""
    m = random_matrix(rng, target_rank, p.rank, bound)
    g = LatticeHom(p.lattice, AffineMonoid.trivial(target_rank).lattice, m)
    gens = [g(x) for x in p.generators]
    gens += [random_vector(rng, target_rank, -bound, bound) for _ in range(rng.randint(0, extra))]
    if rng.random() < unit_prob:
        u = random_vector(rng, target_rank, -bound, bound)
        gens += [u, vneg(u)]
    q = saturation(AffineMonoid.of(target_rank, gens))
    return MonoidHom(p, q, g)


def random_hom(rng, max_rank=3, bound=3):
    rp = rng.randint(1, max_rank)
    rq = rng.randint(1, max_rank)
    p = random_saturated_monoid(rng, rp, bound)
    return random_hom_from(rng, p, rq)


def random_pushout_data(rng, max_rank=3, bound=4):
    """A saturated span ``Q <- P -> P'`` with unit factors injected at random."""
    p = random_saturated_monoid(rng, rng.randint(1, max_rank), bound, unit_prob=0.5, max_gens=2)
    h = random_hom_from(rng, p, rng.randint(1, max_rank), unit_prob=0.5)
    k = random_hom_from(rng, p, rng.randint(1, max_rank), unit_prob=0.5)
    return h, k


def random_pan(rng, rank, bound=3, max_cones=2):
    cones = [random_pointed_cone(rng, rank, bound, max_rays=rank + 1)
             for _ in range(rng.randint(1, max_cones))]
    return Pan.from_cones(rank, cones)


def random_subpans(rng, ambient, count, bound=3):
    """``count`` nonzero subpans of ``ambient`` (the zero pan only if ``ambient`` is zero)."""
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        b = pan_intersection(ambient, random_pan(rng, ambient.rank, bound))
        if not b.is_empty() and (b.dim > 0 or ambient.dim <= 0):
            out.append(b)
        elif tries > 200:
            out.append(ambient)
    return out
