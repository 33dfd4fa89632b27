import math

import pytest

import ncres


def test_version_and_catalog():
    assert ncres.__version__ == "0.1.0"
    names = ncres.catalog_names()
    assert "log_kernel" in names
    assert "graded_norm_power" in names
    assert len(names) == 6


def test_log_kernel_both_routes():
    model = ncres.make_model("log_kernel", {"dim": "2", "p0": "1.5"})
    assert model.dim == 2
    assert model.order == -2.0
    assert model.has_symbol and model.has_kernel
    assert model.weights == [1, 1]

    w = ncres.wodzicki_residue(model, [0.0, 0.0])
    assert w.real == pytest.approx(-1.5, rel=1e-10)
    assert abs(w.imag) < 1e-12

    g = ncres.groupoidal_residue(model, [0.0, 0.0])
    assert g.accepted and not g.short_circuit
    assert g.value.real == pytest.approx(-1.5, rel=1e-8)
    assert len(g.samples) == 4
    assert all(s.converged for s in g.samples)

    sample = ncres.cocycle_sample(model, [0.0, 0.0], 2.0)
    assert sample.F_at_zero.real == pytest.approx(-1.5 * math.log(2.0), abs=1e-8)


def test_graded_equivalence():
    model = ncres.make_model("graded_norm_power", {"n": "1", "m": "-4"})
    assert model.weights == [2, 1, 1]

    rep = ncres.equivalence(model, [0.0, 0.0, 0.0])
    assert rep.agree
    assert rep.agreement_error < 1e-9
    assert rep.ponge.real == pytest.approx(rep.groupoidal.real, rel=1e-9)
    # the plain sphere integral and the weight-flux constant differ here
    assert rep.cocycle_constant.real == pytest.approx(2.0 * math.pi**2, rel=1e-8)
    assert rep.sphere_constant.real == pytest.approx(14.646999193420285, rel=1e-9)
    assert not rep.certified
    assert len(rep.s_values) == len(rep.certification_errors)


def test_residue_report_and_spec():
    spec = ncres.parse_spec_text(
        "grading = trivial(2)\noperator = log_kernel(p0=1)\npoint = 0, 0\n"
    )
    assert spec.grading == "trivial(2)"
    assert spec.operator_name == "log_kernel"
    assert spec.base_points == [[0.0, 0.0]]

    model = ncres.make_model(spec.operator_name, spec.operator_params)
    report = ncres.residue_report(model, spec.base_points[0])
    assert report.ok
    assert report.has_wodzicki and report.has_groupoidal
    assert report.wodzicki.real == pytest.approx(-1.0, rel=1e-9)
    assert report.agree
    assert report.note == ""


def test_errors_are_value_errors():
    with pytest.raises(ValueError, match="fourier_magic"):
        ncres.parse_spec_text("grading = trivial(2)\noperator = fourier_magic\n")
    with pytest.raises(ValueError):
        ncres.make_model("no_such_model")


def test_verify_conv_suite():
    checks = ncres.verify("conv")
    assert len(checks) >= 10
    for c in checks:
        assert c.ok, f"{c.name}: measured {c.measured} vs tolerance {c.tolerance}"
        assert c.measured <= c.tolerance
