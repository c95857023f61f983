import pytest

from logcone import _config, cli
from logcone.errors import InputTooLargeError
from logcone.report import Check, Report


def test_overall_status_rules():
    r = Report("t")
    assert r.overall == "pass"
    r.out_of_scope("ring", "not modeled")
    assert r.passed
    r.add("ok", True)
    r.error("boom", RuntimeError("x"))
    assert r.overall == "fail"
    assert r["boom"].details == {"error": "RuntimeError", "message": "x"}
    with pytest.raises(KeyError):
        r["missing"]


def test_check_rejects_unknown_status():
    with pytest.raises(ValueError):
        Check("x", "maybe")


def test_extend_prefixes_names():
    inner = Report("inner")
    inner.add("a", False)
    outer = Report("outer")
    outer.extend(inner, prefix="sub:")
    assert outer.checks[0].name == "sub:a" and not outer.passed


def test_env_guard(monkeypatch):
    assert _config.max_face_rank() == 6 and _config.max_pan_rank() == 4
    monkeypatch.setenv("LOGCONE_MAX_RANK", "8")
    assert _config.max_face_rank() == 8
    _config.guard_face_rank(8)
    with pytest.raises(InputTooLargeError):
        _config.guard_pan_rank(9)
    monkeypatch.setenv("LOGCONE_MAX_RANK", "lots")
    with pytest.raises(ValueError):
        _config.max_face_rank()


def test_bad_env_is_an_input_error(monkeypatch, capsys):
    monkeypatch.setenv("LOGCONE_MAX_RANK", "lots")
    assert cli.run(["verify", "builtin", "localization-figure"]) == 2
    capsys.readouterr()
