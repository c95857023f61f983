import json
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logcone.errors import ExponentNotFound, NotSaturatedError, PreconditionFailed
from logcone.homs import (
    MonoidHom,
    build_conserv_charts,
    compare_sharpened_pushouts,
    critical_faces,
    find_base_change_exponent,
    find_saturation_exponent,
    integral_pushout,
    is_exact,
    is_injective,
    is_kummer,
    is_local,
    is_locally_exact,
    is_pushout_saturated_along_mult,
    maximal_critical_faces,
    preimage_face,
    sharpened_pushout,
    summand_faces,
)
from logcone.lattice import LatticeHom, kernel_basis, mat_vec
from logcone.monoids import (
    AffineMonoid,
    face_spanned_by,
    hilbert_basis,
    same_monoid,
    sharpen,
    unit_face,
)
from logcone.sampling import random_hom, random_pushout_data

from oracles import pushout_is_saturated

GOLDEN = json.loads((Path(__file__).parent / "golden" / "saturation_exponents.json").read_text())

N = AffineMonoid.free(1)
N2 = AffineMonoid.free(2)


def hom(src, tgt, rows):
    return MonoidHom.from_matrix(src, tgt, rows)


DIAG = hom(N, N2, [[1], [1]])
DOUBLE = hom(N, N, [[2]])
IDENT = MonoidHom.identity(N)
EXAMPLES = {"identity": IDENT, "double": DOUBLE, "diag": DIAG}


def faces(m, *gens_lists):
    return {face_spanned_by(m, g) for g in gens_lists}


def test_hom_rejects_bad_generator_image():
    with pytest.raises(ValueError):
        hom(N, N, [[-1]])


def test_injective_and_local_examples():
    ident2 = MonoidHom.identity(N2)
    assert is_injective(ident2) and is_local(ident2)
    assert is_injective(DIAG) and is_local(DIAG)
    zero = hom(N, N, [[0]])
    assert not is_injective(zero) and not is_local(zero)


def test_exact_examples():
    assert is_exact(MonoidHom.identity(N2))
    assert is_exact(DIAG)
    assert not is_exact(hom(N, AffineMonoid.group(1), [[1]]))
    with pytest.raises(NotSaturatedError):
        is_exact(hom(AffineMonoid.of(1, [(2,), (3,)]), N, [[1]]))


def test_locally_exact_examples():
    assert is_locally_exact(DIAG)
    assert is_locally_exact(MonoidHom.identity(N2))
    # (1,-1) maps to 0 but is not in N², so the sum map is not even exact
    sum_map = hom(N2, N, [[1, 1]])
    assert not is_exact(sum_map)
    assert not is_locally_exact(sum_map)


def test_kummer_examples():
    assert is_kummer(DOUBLE)
    assert not is_kummer(DIAG)
    assert is_kummer(IDENT)


def test_critical_face_examples():
    assert set(maximal_critical_faces(DIAG)) == faces(N2, [(1, 0)], [(0, 1)])
    assert critical_faces(IDENT) == [unit_face(N)]
    assert critical_faces(DOUBLE) == [unit_face(N)]


@given(st.integers(0, 2 ** 32 - 1))
def test_exact_implies_local(seed):
    h = random_hom(random.Random(seed))
    if is_exact(h):
        assert is_local(h)


@given(st.integers(0, 2 ** 32 - 1))
def test_critical_faces_recomputed(seed):
    h = random_hom(random.Random(seed))
    if not is_local(h) or not h.target.is_sharp():
        return
    crit = critical_faces(h)
    assert unit_face(h.target) in crit
    for g in crit:
        pre = preimage_face(h, g)
        assert all(h.source.is_unit(x) for x in pre.generators)
        assert all(h.source.is_unit(x) for x in h.source.generators if g.contains(h(x)))


def test_pushout_examples():
    zero = AffineMonoid.trivial(0)
    q, pp = N2, N
    h0 = hom(zero, q, [[], []])
    k0 = hom(zero, pp, [[]])
    po = integral_pushout(h0, k0)
    assert same_monoid(po.integral, AffineMonoid.free(3))
    po = integral_pushout(DIAG, IDENT)
    # relations are units, so the pushout is Q after sharpening
    quotient = sharpen(po.integral)
    assert quotient.group_rank == 2 and len(hilbert_basis(quotient)) == 2
    assert po.is_saturated()
    po = integral_pushout(DOUBLE, hom(N, N, [[3]]))
    assert po.relations == ((2, -3),)
    assert not po.is_saturated()
    assert po.fs.is_saturated()
    assert pushout_is_saturated([(1,)], [(1,)], [[2]], [[3]]) is False


def _left_kernel(rows, n):
    """Covectors vanishing on every row."""
    return kernel_basis(LatticeHom.from_rows(rows, n)) if rows else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]


@given(st.integers(0, 2 ** 32 - 1))
def test_pushout_universal_property_on_generators(seed):
    rng = random.Random(seed)
    h, k = random_pushout_data(rng)
    po = integral_pushout(h, k)
    n = po.integral.rank
    # a cocone: any map killing the relations
    f_rows = _left_kernel(list(po.relations), n)
    if not f_rows:
        return
    f = LatticeHom.from_rows([tuple(rng.randint(-2, 2) for _ in range(len(f_rows)))
                              for _ in range(2)], len(f_rows))
    cocone = [tuple(sum(c * row[i] for c, row in zip(coeffs, f_rows)) for i in range(n))
              for coeffs in f.matrix]
    a = [tuple(r[: h.target.rank]) for r in cocone]
    b = [tuple(r[h.target.rank:]) for r in cocone]
    for g in h.source.generators:
        assert mat_vec(a, h(g)) == mat_vec(b, k(g))
    # mediating map is [a | b]; it is the only one, since insertions generate the group
    images = [po.to_q(g) for g in h.target.generators] + [po.to_p_prime(g) for g in k.target.generators]
    assert po.integral.group_rank == len(po.integral.group_basis)
    generated = AffineMonoid.of(n, images + list(po.relations) + [tuple(-x for x in r) for r in po.relations])
    assert same_monoid(generated, po.integral)


def test_sharpened_pushout_examples():
    pz = AffineMonoid.of(2, [(1, 0), (0, 1), (0, -1)])
    q = AffineMonoid.of(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1)])
    h = hom(pz, q, [[1, 0], [0, 0], [0, 1]])
    k = hom(pz, N, [[1, 0]])
    cmp = compare_sharpened_pushouts(h, k)
    assert cmp.isomorphic
    assert same_monoid(sharpened_pushout(h, k), cmp.direct)
    assert compare_sharpened_pushouts(DIAG, DOUBLE).isomorphic


@given(st.integers(0, 2 ** 32 - 1))
def test_sharpened_pushout_identity_random(seed):
    h, k = random_pushout_data(random.Random(seed))
    assert compare_sharpened_pushouts(h, k).isomorphic


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_mult_saturation_matches_golden_and_oracle(name):
    h = EXAMPLES[name]
    spec = GOLDEN["examples"][name]
    for n, expected in GOLDEN["pushout_saturated_along_mult"][name].items():
        n = int(n)
        assert is_pushout_saturated_along_mult(h, n) == expected
        cols = [list(c) for c in zip(*spec["matrix"])]
        assert pushout_is_saturated(spec["target"], [[1]], cols, [[n]]) == expected


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_saturation_exponent_golden_and_minimal(name):
    h = EXAMPLES[name]
    cert = find_saturation_exponent(h)
    assert cert.exponent == GOLDEN["saturation_exponent"][name]
    assert same_monoid(cert.witness.integral, cert.witness.fs)
    assert not any(is_pushout_saturated_along_mult(h, m) for m in range(1, cert.exponent))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_base_change_exponent_golden(name):
    h = EXAMPLES[name]
    assert find_base_change_exponent(h).exponent == GOLDEN["base_change_exponent"][name]


def test_exponent_preconditions_and_bound():
    with pytest.raises(PreconditionFailed):
        find_saturation_exponent(hom(N, N, [[0]]))
    with pytest.raises(ExponentNotFound):
        find_base_change_exponent(DOUBLE, n_max=1)


def test_conserv_charts_examples():
    c1 = build_conserv_charts(N, 1)
    assert c1.eta.group_map.matrix == DIAG.group_map.matrix
    c2 = build_conserv_charts(N, 2)
    assert c2.eta((1,)) == (1, 2)
    assert c2.first_proj.compose(c2.eta).group_map == LatticeHom.identity(N.lattice)
    c3 = build_conserv_charts(N2, 3)
    for h in (c3.eta, c3.incl):
        assert is_injective(h) and is_local(h)
    assert c3.first_proj.compose(c3.eta).group_map == LatticeHom.identity(N2.lattice)
    with pytest.raises(PreconditionFailed):
        build_conserv_charts(AffineMonoid.group(1), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_conserv_maximal_critical_faces_rank_one(n):
    c = build_conserv_charts(N, n)
    assert set(maximal_critical_faces(c.eta)) == set(summand_faces(c))


def test_conserv_maximal_critical_faces_rank_two_has_mixed_faces():
    # For P = N² the two summands are critical and maximal, but so are the
    # mixed faces spanned by one coordinate of each summand.
    c = build_conserv_charts(N2, 3)
    maximal = set(maximal_critical_faces(c.eta))
    summands = set(summand_faces(c))
    assert summands <= maximal
    mixed = {face_spanned_by(c.eta.target, [(1, 0, 0, 0), (0, 0, 0, 1)]),
             face_spanned_by(c.eta.target, [(0, 1, 0, 0), (0, 0, 1, 0)])}
    assert maximal == summands | mixed
