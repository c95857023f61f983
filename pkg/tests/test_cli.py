import importlib
import json

import pytest

from logcone import cli


def run(argv, capsys):
    code = cli.run(argv)
    return code, capsys.readouterr().out


def run_json(argv, capsys):
    code, out = run(list(argv) + ["--format", "json"], capsys)
    return code, json.loads(out)


def test_localization_figure_json(capsys):
    code, data = run_json(["verify", "builtin", "localization-figure"], capsys)
    assert code == 0
    assert data["overall"] == "pass"
    assert [c["status"] for c in data["checks"]] == ["pass"] * 5
    assert data["command"][:3] == ["verify", "builtin", "localization-figure"]


def test_critical_faces_json(capsys, data_dir):
    code, data = run_json(["check", "hom", str(data_dir / "diag.json"), "--predicate", "critical-faces"],
                          capsys)
    assert code == 0
    assert sorted(map(tuple, (tuple(map(tuple, f)) for f in data["result"]["maximal"]))) == \
        [((0, 1),), ((1, 0),)]
    flagged = [f for f in data["result"]["critical_faces"] if f["maximal"]]
    assert len(flagged) == 2


def test_empty_file_exit_2(capsys, data_dir):
    code, out = run(["monoid", "hilbert", str(data_dir / "empty.json")], capsys)
    assert code == 2


def test_bad_path_reported(capsys, data_dir):
    code, data = run_json(["monoid", "hilbert", str(data_dir / "bad_path.json")], capsys)
    assert code == 2
    assert data["checks"][0]["details"]["path"] == "$.objects.x.rays[0][1]"


def test_argparse_errors_exit_2(capsys):
    assert cli.run(["bogus"]) == 2
    assert cli.run(["check", "hom"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert cli.run(["--help"]) == 0
    assert "logcone" in capsys.readouterr().out


def test_size_guard_exit_3(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LOGCONE_MAX_RANK", "1")
    code, data = run_json(["verify", "builtin", "localization-figure"], capsys)
    assert code == 3
    assert data["overall"] == "error"


@pytest.mark.parametrize("argv,expected", [
    (["check", "hom", "diag.json", "--predicate", "kummer"], 1),
    (["check", "hom", "diag.json", "--predicate", "locally-exact"], 0),
    (["check", "hom", "sum.json", "--predicate", "locally-exact"], 1),
    (["fan", "subdivision", "fans.json", "--obj", "S2", "--obj", "S3"], 0),
    (["fan", "subdivision", "fans.json", "--obj", "S1", "--obj", "S3"], 1),
    (["fan", "subfan", "fans.json", "--obj", "S1", "--obj", "S2"], 0),
    (["fan", "refine", "fans.json"], 0),
    (["fan", "complete", "fans.json", "--obj", "S1"], 0),
    (["fan", "validate", "fans.json"], 0),
    (["monoid", "hilbert", "monoid.json"], 0),
    (["monoid", "saturate", "monoid.json"], 0),
    (["monoid", "faces", "monoid.json"], 0),
    (["monoid", "dual", "monoid.json"], 0),
    (["monoid", "units", "monoid.json"], 0),
    (["monoid", "sharpen", "monoid.json"], 0),
    (["monoid", "spec-fan", "monoid.json"], 0),
    (["monoid", "is-saturated", "monoid.json"], 0),
    (["monoid", "is-saturated", "monoid.json", "--obj", "S"], 1),
    (["monoid", "contains", "monoid.json", "--obj", "S", "--point", "1"], 1),
    (["monoid", "is-sharp", "monoid.json"], 0),
    (["monoid", "contains", "monoid.json", "--point", "2", "2"], 0),
    (["monoid", "contains", "monoid.json"], 2),
    (["monoid", "localize", "monoid.json", "--face", "F"], 0),
    (["pushout", "double.json"], 0),
    (["pushout", "double.json", "--mult", "1"], 0),
    (["pushout", "double.json", "--mult", "2"], 1),
    (["pushout", "double.json", "--find-exponent", "8"], 0),
    (["pushout", "double.json", "--base-change-exponent", "1"], 1),
    (["pushout", "double.json", "--base-change-exponent", "8"], 0),
    (["pushout", "diag.json", "--sharpened", "--obj", "diag", "--obj", "diag"], 0),
    (["pan", "equal", "pans.json", "--obj", "A", "--obj", "A"], 0),
    (["pan", "equal", "pans.json"], 1),
    (["pan", "union", "pans.json"], 0),
    (["pan", "intersect", "pans.json"], 0),
    (["pan", "cover", "pans.json"], 0),
    (["pan", "cech", "pans.json"], 0),
    (["pan", "pan7", "diag.json"], 0),
    (["pan", "subpan", "pans.json", "--obj", "B1", "--obj", "A"], 0),
    (["pan", "subpan", "pans.json"], 1),
    (["pan", "refine", "pans.json"], 0),
    (["pan", "convex", "pans.json"], 0),
    (["pan", "monoid", "pans.json"], 0),
    (["pan", "isogeny", "proj.json"], 1),
    (["pan", "vertical", "proj.json"], 0),
    (["pan", "halfspace", "pans.json", "--covector", "1", "-1"], 0),
    (["lattice", "snf", "monoid.json"], 0),
    (["lattice", "kernel", "monoid.json"], 0),
    (["lattice", "cokernel", "monoid.json"], 0),
    (["lattice", "saturate", "monoid.json"], 0),
    (["cone", "dual", "monoid.json"], 0),
    (["cone", "faces", "monoid.json"], 0),
    (["chart", "validate", "chart.json"], 0),
    (["chart", "validate", "chart.json", "--element", "1", "0"], 1),
    (["verify", "property", "exact-implies-local", "--count", "20"], 0),
    (["verify", "property", "dual-involution", "--count", "20"], 0),
    (["verify", "property", "sharpened-pushout", "--count", "10"], 0),
])
def test_exit_codes(argv, expected, capsys, data_dir):
    argv = [str(data_dir / a) if a.endswith(".json") else a for a in argv]
    code, data = run_json(argv, capsys)
    assert code == expected, data
    assert data["overall"] in ("pass", "fail", "error")


def test_subpan_inclusion_result(capsys, data_dir):
    code, data = run_json(["pan", "subpan", str(data_dir / "pans.json"), "--obj", "B1", "--obj", "A"], capsys)
    assert data["checks"][0]["name"] == "is_subpan_inclusion"


def test_text_output(capsys, data_dir):
    code, out = run(["fan", "validate", str(data_dir / "fans.json")], capsys)
    assert code == 0 and out.startswith("fan validate: PASS")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert cli.run(["verify", "builtin", "localization-figure", "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["overall"] == "pass"


def test_seeded_property_is_deterministic(capsys):
    argv = ["verify", "property", "sharpened-pushout", "--count", "5", "--seed", "11", "--format", "json"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_dispatch_table_covers_library():
    modules = [importlib.import_module(f"logcone.{m}")
               for m in ("lattice", "cones", "monoids", "homs", "pans", "charts")]
    parser = cli.build_parser()
    groups = parser._subparsers._group_actions[0].choices
    for op, command in cli.OPERATIONS.items():
        assert any(callable(getattr(m, op, None)) for m in modules), op
        group = command.split()[0]
        assert group in groups, command
    spec_ops = {
        "smith_normal_form", "cokernel_invariants", "kernel_basis", "saturate_sublattice",
        "dual_cone", "faces", "common_refinement", "is_subdivision", "is_subfan", "complete_fan",
        "spec_fan", "hilbert_basis", "saturation", "is_saturated", "is_sharp", "units", "sharpen",
        "monoid_faces", "localize_at_face", "dual_monoid", "contains", "is_injective", "is_local",
        "is_exact", "is_locally_exact", "is_kummer", "critical_faces", "maximal_critical_faces",
        "integral_pushout", "sharpened_pushout", "is_pushout_saturated_along_mult",
        "find_saturation_exponent", "build_conserv_charts", "pan_of_fan", "pan_equal",
        "is_subpan_inclusion", "pan_union", "pan_intersection", "refine_for_subpans",
        "is_closed_cover", "cech_cube", "is_strongly_convex", "monoid_of_pan", "is_isogeny",
        "vertical_locus", "halfspace_region", "verify_pan7_setup", "build_w_complex",
        "validate_gluing", "check_structure_map", "verify_w_bullets", "verify_localization_figure",
    }
    assert spec_ops <= set(cli.OPERATIONS)
