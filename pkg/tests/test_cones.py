import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logcone.cones import (
    Cone,
    Fan,
    HalfSpace,
    all_faces,
    common_refinement,
    complete_fan,
    dual_cone,
    faces,
    fan_of_cone,
    is_complete,
    is_subdivision,
    is_subfan,
    is_valid_fan,
    spec_fan,
    validate_fan,
)
from logcone.errors import InputTooLargeError, LinealityError, NotSharpError
from logcone.lattice import dot
from logcone.monoids import AffineMonoid
from logcone.sampling import random_pointed_cone


def C(*rays, n=2):
    return Cone.from_generators(n, rays)


SIGMA1, SIGMA2, SIGMA3, SIGMA4 = C((1, 0), (1, 1)), C((1, 1), (0, 1)), C((1, 0), (0, 1)), C((1, 0))
SIG1 = Fan.from_cones(2, [SIGMA1])
SIG2 = Fan.from_cones(2, [SIGMA1, SIGMA2])
SIG3 = Fan.from_cones(2, [SIGMA3])
SIG4 = Fan.from_cones(2, [SIGMA4])


def brute_dual_rays(c, bound=3):
    """Extremal covectors among small ones nonnegative on every ray."""
    n = c.lattice.rank
    pts = [u for u in itertools.product(range(-bound, bound + 1), repeat=n)
           if any(u) and all(dot(u, r) >= 0 for r in c.rays)]
    hull = Cone.from_generators(n, pts)
    return hull


def test_dual_examples():
    assert dual_cone(SIGMA3) == SIGMA3
    assert dual_cone(Cone.zero(2)) == Cone.whole_space(2)
    assert dual_cone(SIGMA1) == C((0, 1), (1, -1))
    assert dual_cone(SIGMA1) == brute_dual_rays(SIGMA1)


def test_dual_matches_brute_force_in_box():
    rng = random.Random(7)
    for _ in range(40):
        c = random_pointed_cone(rng, 2, bound=2)
        if c.dim == 2:
            assert dual_cone(c) == brute_dual_rays(c, bound=4)


def test_faces_examples():
    assert faces(C((1, 0))) == [Cone.zero(2), C((1, 0))]
    assert faces(SIGMA3) == [Cone.zero(2), C((0, 1)), C((1, 0)), SIGMA3]
    assert set(faces(SIGMA1)) == {Cone.zero(2), C((1, 0)), C((1, 1)), SIGMA1}


def test_faces_reject_lineality():
    with pytest.raises(LinealityError):
        faces(C((1, 0), (-1, 0)))


def test_face_rank_guard(monkeypatch):
    monkeypatch.setenv("LOGCONE_MAX_RANK", "2")
    with pytest.raises(InputTooLargeError):
        faces(Cone.from_generators(3, [(1, 0, 0)]))


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_dual_involution(seed, n):
    c = random_pointed_cone(random.Random(seed), n)
    assert dual_cone(dual_cone(c)) == c


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_faces_closed_under_faces(seed, n):
    c = random_pointed_cone(random.Random(seed), n, bound=3)
    fs = set(faces(c))
    for f in fs:
        assert set(faces(f)) <= fs


def test_common_refinement_examples():
    assert common_refinement(SIG2, SIG2) == SIG2
    assert common_refinement(SIG3, SIG2) == SIG2
    assert common_refinement(SIG1, fan_of_cone(SIGMA2)) == fan_of_cone(C((1, 1)))


@given(st.integers(0, 2 ** 32 - 1))
def test_common_refinement_properties(seed):
    rng = random.Random(seed)
    f = Fan.from_cones(2, [random_pointed_cone(rng, 2, 3)])
    g = Fan.from_cones(2, [random_pointed_cone(rng, 2, 3)])
    r = common_refinement(f, g)
    assert is_valid_fan(r)
    big = complete_fan(g)
    assert is_subdivision(common_refinement(big, g), g)


def test_subdivision_examples():
    assert is_subdivision(SIG2, SIG3)
    assert is_subdivision(SIG2, SIG2)
    assert not is_subdivision(SIG1, SIG3)


def test_subfan_examples():
    assert is_subfan(SIG1, SIG2)
    assert is_subfan(SIG2, SIG2)
    assert is_subfan(SIG4, SIG2)
    assert not is_subfan(SIG3, SIG2)


def directions(n, bound):
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=n) if any(v)]


def test_complete_fan_examples():
    whole = complete_fan(SIG3)
    assert complete_fan(whole) == whole
    assert complete_fan(Fan.from_cones(1, [C((1,), n=1)])) == Fan.from_cones(1, [C((1,), n=1), C((-1,), n=1)])
    out = complete_fan(SIG1)
    assert is_valid_fan(out)
    assert all(out.support_contains(v) for v in directions(2, 7))
    for c in out.cones:
        piece = c.intersect(SIGMA1)
        assert SIGMA1.contains_cone(piece)
        if piece.dim == 2:
            assert piece in out.cones


@given(st.integers(0, 2 ** 32 - 1))
def test_complete_fan_has_full_support(seed):
    rng = random.Random(seed)
    f = Fan.from_cones(2, [random_pointed_cone(rng, 2, 3)])
    out = complete_fan(f)
    assert is_valid_fan(out) and is_complete(out)
    assert all(out.support_contains(v) for v in directions(2, 7))
    # refines f on |f|
    restricted = Fan.from_cones(2, [c for c in out.cones if any(m.contains_cone(c) for m in f.maximal_cones)])
    assert is_subdivision(restricted, f)


def test_complete_fan_rank3_grid():
    f = Fan.from_cones(3, [C((1, 0, 0), (1, 1, 0), (1, 1, 1), n=3)])
    out = complete_fan(f)
    assert is_valid_fan(out)
    assert all(out.support_contains(v) for v in directions(3, 3))


def test_spec_fan_examples():
    assert spec_fan(AffineMonoid.free(2)) == fan_of_cone(SIGMA3)
    assert spec_fan(AffineMonoid.free(1)) == fan_of_cone(C((1,), n=1))
    p = AffineMonoid.of(2, [(1, 0), (1, 1), (1, 2)])
    assert spec_fan(p) == fan_of_cone(C((0, 1), (2, -1)))
    with pytest.raises(NotSharpError):
        spec_fan(AffineMonoid.of(1, [(1,), (-1,)]))


def test_fan_validation_rejects_bad_overlap():
    bad = Fan(SIGMA3.lattice, tuple(sorted(set(all_faces(SIGMA3)) | set(all_faces(C((1, 1), (-1, 1)))),
                                            key=Cone.sort_key)))
    assert not is_valid_fan(bad)
    with pytest.raises(Exception):
        validate_fan(bad)


def test_halfspace():
    h = HalfSpace(SIGMA3.lattice, (1, -1), ">=0")
    assert h.contains((2, 1)) and not h.contains((1, 2))
    assert h.as_cone().intersect(SIGMA3) == SIGMA1


def test_cone_from_inequalities_roundtrip():
    c = Cone.from_inequalities(2, [(0, 1), (1, -1)])
    assert c == SIGMA1
    assert c.dual() == dual_cone(SIGMA1)
