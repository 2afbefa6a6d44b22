"""Smoke test of the folcalc Python module.

Run directly (`python python/smoke_test.py`) or under pytest.
"""

import json

import pytest

import folcalc


def test_first_plane_example_in_aliased_variables():
    f = folcalc.Foliation("y*z^2*dx + x^2*z*dy - (x^2*y + x*y*z)*dz", ["x", "y", "z"])
    assert (f.n, f.e) == (2, 4)
    assert f.kupka_ideal() == ["x*y - 1/2*y*z", "y*z^2", "x^2*z"]
    assert f.unfolding_ideal() == f.kupka_ideal()
    assert f.in_u()
    assert f.is_kupka_point([1, 0, 0]) and f.is_kupka_point([0, 0, 1])
    assert not f.is_kupka_point([0, 1, 0])


def test_last_plane_example_report():
    f = folcalc.example("p2c")
    r = f.report()
    assert r["schema"] == folcalc.SCHEMA_VERSION
    assert r["ideals"]["K"] == ["x2", "x0*x1"]
    assert r["ideals"]["L"] == f.non_kupka_ideal()
    assert r["predicates"]["K_comaximal_with_CdOmega"] is False
    assert r["predicates"]["kupka_nonempty"] is True
    assert f.is_division_point([0, 0, 1])
    assert f.is_division_point(["1/2", "3", "-1"])


def test_report_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pathlib

    schema_path = pathlib.Path(__file__).resolve().parents[2] / "core" / "report.schema.json"
    schema = json.loads(schema_path.read_text())
    jsonschema.validate(folcalc.example("sl2").report(), schema)


def test_errors():
    with pytest.raises(folcalc.InvalidForm, match="integrability"):
        folcalc.Foliation("x1*dx0 - x0*dx1 + x3*dx2 - x2*dx3", ["x0", "x1", "x2", "x3"])
    with pytest.raises(ValueError):
        folcalc.Foliation("x0*dx0 +", ["x0", "x1", "x2"])
    with pytest.raises(ValueError):
        folcalc.example("p2z")
    with pytest.raises(ValueError, match="below the twist"):
        folcalc.example("sl2").unfolding_ideal(max_degree=3)
    assert issubclass(folcalc.StabilizationError, RuntimeError)


def test_run_mirrors_the_command_line():
    code, out, err = folcalc.run(["--format", "json", "example", "p2b"])
    assert code == 0 and err == ""
    assert json.loads(out)["predicates"]["I_equals_K"] is True
    code, out, _ = folcalc.run(["frobnicate"])
    assert code == 1


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok  {t.__name__}")
    print(f"{len(tests)} smoke tests passed")
    sys.exit(0)
