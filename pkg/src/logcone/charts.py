"""Worked examples: the four-fan localization figure and the chart complex ``W``.

Charts are modeled by exponent monoids in the ``(x, y)`` lattice ``Z^2``: the
monoid of ring monomials (``Z[xy, y^-1]`` becomes ``<(1,1), (0,-1)>``) and the
submonoid carrying the log structure (``N(xy)`` becomes ``<(1,1)>``).  Ring
level statements are reported as out of scope.
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .cones import Cone, Fan, dual_cone, is_subdivision, is_subfan
from .lattice import Vector, as_vector, mat_vec, quotient_by_saturated, saturate_sublattice
from .monoids import (
    AffineMonoid,
    face_spanned_by,
    is_saturated,
    is_sharp,
    localize_at_face,
    same_monoid,
    units,
)
from .pans import pan_equal, pan_of_fan, is_subpan
from .report import Report

RANK = 2
XY = (1, 1)


def _m(*gens):
    return AffineMonoid.of(RANK, gens)


@dataclass(frozen=True)
class Chart:
    name: str
    monomial: AffineMonoid
    log: AffineMonoid

    def log_with_units(self):
        """The log monoid enlarged by the units of the monomial monoid."""
        u = units(self.monomial)
        return AffineMonoid(self.monomial.lattice,
                            self.log.generators + tuple(u) + tuple(tuple(-x for x in b) for b in u))

    def log_inside_monomial(self):
        return all(self.monomial.contains(g) for g in self.log.generators)


@dataclass(frozen=True)
class Gluing:
    """``overlap`` is the localization of ``left`` at ``left_witness`` and of ``right`` at ``right_witness``."""

    left: str
    right: str
    overlap: str
    left_witness: Vector
    right_witness: Vector


@dataclass(frozen=True)
class ChartComplex:
    name: str
    charts: Tuple[Chart, ...]
    overlaps: Tuple[Chart, ...] = ()
    gluings: Tuple[Gluing, ...] = ()

    def chart(self, name):
        for c in self.charts + self.overlaps:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def chart_names(self):
        return tuple(c.name for c in self.charts)


@dataclass(frozen=True)
class StructureElement:
    element: Vector

    def __post_init__(self):
        object.__setattr__(self, "element", as_vector(self.element))


@dataclass(frozen=True)
class WData:
    """The charts and all complexes ``W, W1, ..., W6``."""

    charts: Dict[str, Chart]
    complexes: Dict[str, ChartComplex] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.complexes[name]


def w_charts(literal_v4=False):
    """Chart data; ``literal_v4`` uses the printed ``V4`` ring ``Z[xy, x^-1]``.

    The printed ring cannot be localized to ``V14`` or glued to ``V34``, so the
    default reads ``V4`` as ``N(xy) ⊕ N(y^-1) -> Z[xy, y^-1]``.
    """
    v4 = (Chart("V4", _m((1, 1), (-1, 0)), _m((1, 1), (-1, 0))) if literal_v4
          else Chart("V4", _m((1, 1), (0, -1)), _m((1, 1), (0, -1))))
    mixed = _m((1, 0), (0, 1), (0, -1))
    other = _m((1, 0), (-1, 0), (0, 1))
    torus = AffineMonoid.group(RANK)
    charts = [
        Chart("V1", _m((1, 0), (0, 1)), _m((1, 0), (0, 1))),
        Chart("V2", _m((1, 1), (0, -1)), _m((1, 1))),
        Chart("V3", _m((1, 1), (-1, 0)), _m((1, 1))),
        v4,
        Chart("V5", _m((1, 0), (1, 1)), _m((1, 0), (1, 1))),
        Chart("V12", mixed, _m((1, 0))),
        Chart("V14", mixed, _m((1, 0))),
        Chart("V13", other, _m((0, 1))),
        Chart("V35", other, _m((0, 1))),
        Chart("V23", torus, _m()),
        Chart("V34", torus, _m()),
    ]
    return {c.name: c for c in charts}


GLUINGS = {
    "V12": Gluing("V1", "V2", "V12", (0, 1), (0, -1)),
    "V13": Gluing("V1", "V3", "V13", (1, 0), (-1, 0)),
    "V23": Gluing("V2", "V3", "V23", (1, 0), (0, 1)),
    "V14": Gluing("V1", "V4", "V14", (0, 1), (0, -1)),
    "V34": Gluing("V3", "V4", "V34", (0, 1), (1, 0)),
    "V35": Gluing("V3", "V5", "V35", (-1, 0), (1, 0)),
}

LAYOUT = {
    "W": (("V1", "V2", "V3"), ("V12", "V13", "V23")),
    "W1": (("V2",), ()),
    "W2": (("V1", "V2"), ("V12",)),
    "W3": (("V3",), ()),
    "W4": (("V1", "V3"), ("V13",)),
    "W5": (("V1", "V3", "V4"), ("V13", "V14", "V34")),
    "W6": (("V3", "V5"), ("V35",)),
}


def build_w_complex(literal_v4=False):
    charts = w_charts(literal_v4)
    complexes = {}
    for name, (members, overlaps) in LAYOUT.items():
        complexes[name] = ChartComplex(
            name,
            tuple(charts[c] for c in members),
            tuple(charts[o] for o in overlaps),
            tuple(GLUINGS[o] for o in overlaps),
        )
    return WData(charts, complexes)


def _localize_at(m, w):
    return localize_at_face(m, face_spanned_by(m, [w]))


def validate_gluing(c):
    """Check every gluing: both localizations give the overlap, and log data agree."""
    report = Report(f"gluing:{c.name}")
    for ch in c.charts + c.overlaps:
        report.add(f"{ch.name}:log_in_monomial", ch.log_inside_monomial())
    for g in c.gluings:
        overlap = c.chart(g.overlap)
        for side, w in ((g.left, g.left_witness), (g.right, g.right_witness)):
            chart = c.chart(side)
            if not chart.monomial.contains(w):
                report.add(f"{g.overlap}:{side}:monomial", False, witness=list(w),
                           reason="witness is not a monomial of the chart")
                continue
            local = _localize_at(chart.monomial, w)
            mono_ok = same_monoid(local, overlap.monomial)
            report.add(f"{g.overlap}:{side}:monomial", mono_ok, witness=list(w),
                       localized=[list(x) for x in local.generators])
            restricted = Chart(side, local, chart.log).log_with_units()
            report.add(f"{g.overlap}:{side}:log", mono_ok and same_monoid(restricted, overlap.log_with_units()))
    return report


def check_structure_map(c, s):
    """``s`` lies in every chart's log monoid (up to units) and the gluings fix it."""
    s = s if isinstance(s, StructureElement) else StructureElement(s)
    for ch in c.charts + c.overlaps:
        if not ch.log_with_units().contains(s.element):
            return False
    # All charts share one exponent lattice and gluings are identities on it.
    return True


def _log_dual_fan(charts):
    return Fan.from_cones(RANK, [dual_cone(ch.log.cone) for ch in charts])


def verify_w_bullets(data):
    """The combinatorial content of the listed properties of ``W`` and its pieces."""
    ch = data.charts
    report = Report("w-bullets")

    # (a) j_5 is an isomorphism on underlying schemes: same monomial data, other logs.
    report.add("a:V4_monomial_equals_V2", same_monoid(ch["V4"].monomial, ch["V2"].monomial))
    report.add("a:V4_log_differs_from_V2", not same_monoid(ch["V4"].log, ch["V2"].log))
    w, w5 = data["W"], data["W5"]
    matched = (all(any(same_monoid(a.monomial, b.monomial) for b in w.charts) for a in w5.charts)
               and all(any(same_monoid(a.monomial, b.monomial) for b in w5.charts) for a in w.charts))
    report.add("a:W5_monomials_match_W", matched)

    # (b) j_56 is a dividing cover: V1, V4 subdivide V5 (V3 is shared and its dual has a line).
    fine = _log_dual_fan([ch["V1"], ch["V4"]])
    coarse = _log_dual_fan([ch["V5"]])
    report.add("b:W5_log_fan_subdivides_W6", is_subdivision(fine, coarse),
               fine=[str(x) for x in fine.maximal_cones], coarse=[str(x) for x in coarse.maximal_cones])
    report.add("b:V3_shared", "V3" in data["W5"].chart_names and "V3" in data["W6"].chart_names)

    # (c) X_3 ≅ S × A^1 and X_6 ≅ S × box, modulo the base direction xy.
    proj, _ = quotient_by_saturated(saturate_sublattice([XY], RANK), RANK)

    def image(m):
        return AffineMonoid.of(len(proj), [mat_vec(proj, g) for g in m.generators])

    v3 = image(ch["V3"].monomial)
    report.add("c:X3_fibre_is_free_rank_one", v3.is_sharp() and len(v3.generators) == 1
               and v3.is_saturated() and v3.group_rank == 1,
               fibre=[list(x) for x in v3.generators])
    v5 = image(ch["V5"].monomial)
    opposite = (len(v3.generators) == 1 and len(v5.generators) == 1
                and tuple(-x for x in v3.generators[0]) == v5.generators[0])
    report.add("c:X6_fibre_charts_are_opposite_rays", opposite,
               fibres=[[list(x) for x in v3.generators], [list(x) for x in v5.generators]])
    report.add("c:X6_log_boundary_is_one_point",
               len(image(ch["V5"].log).generators) == 1 and not image(ch["V3"].log).generators)

    # open immersions: chart subsets with identical data
    for small, big in (("W3", "W4"), ("W4", "W5"), ("W3", "W"), ("W4", "W")):
        names = set(data[big].chart_names)
        report.add(f"open_immersion:{small}->{big}", set(data[small].chart_names) <= names)

    report.out_of_scope("closed_immersions", "ring-level: closed complements with reduced structure")
    report.out_of_scope("f_proper", "scheme-level: properness")
    report.out_of_scope("X_minus_X2_to_S_iso", "ring-level: Z[xy, x^-1]/(x^-1)")
    return report


def verify_charts(data):
    """Gluing, structure map and chart invariants for every complex."""
    report = Report("w-complex")
    for name, cplx in data.complexes.items():
        report.extend(validate_gluing(cplx), prefix=f"{name}:")
        report.add(f"{name}:structure_map_xy", check_structure_map(cplx, XY))
    for ch in data.charts.values():
        report.add(f"{ch.name}:log_sharp_saturated", is_sharp(ch.log) and is_saturated(ch.log))
    return report


# ---------------------------------------------------------------------------
# the four fans


def localization_fans():
    def c(*rays):
        return Cone.from_generators(RANK, rays)

    s1, s2, s3, s4 = c((1, 0), (1, 1)), c((1, 1), (0, 1)), c((1, 0), (0, 1)), c((1, 0))
    return (Fan.from_cones(RANK, [s1]), Fan.from_cones(RANK, [s1, s2]),
            Fan.from_cones(RANK, [s3]), Fan.from_cones(RANK, [s4]))


def verify_localization_figure():
    f1, f2, f3, f4 = localization_fans()
    p1, p2, p3, p4 = (pan_of_fan(f) for f in (f1, f2, f3, f4))
    report = Report("localization-figure")
    report.add("subfan_S1_S2", is_subfan(f1, f2))
    report.add("subdivision_S2_S3", is_subdivision(f2, f3))
    report.add("subfan_S4_S3", is_subfan(f4, f3))
    report.add("support_S2_equals_S3", pan_equal(p2, p3))
    report.add("strict_supports",
               is_subpan(p1, p2) and not pan_equal(p1, p2)
               and is_subpan(p4, p3) and not pan_equal(p4, p3))
    return report
