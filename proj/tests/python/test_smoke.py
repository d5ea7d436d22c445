import os
import pathlib

import pytest

import tropreal

DATA = pathlib.Path(os.environ.get("TROPREAL_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def test_theta_invariants():
    c = tropreal.load_curve(str(DATA / "theta_unit.json"))
    assert (c.genus, c.delta, c.parity) == (2, 1, 0)
    assert c.violations() == []
    assert c.deformation_ranks() == (2, 1)
    assert c.sigma() == c.sigma_geometric() == "a12 * a21^-1 * a22"


def test_realizable_and_count():
    c = tropreal.theta()
    assert tropreal.realizability(c)["verdict"] == "true"
    assert tropreal.count(c)["total"] == 1
    t2 = tropreal.load_curve(str(DATA / "theta2_unit.json"))
    assert tropreal.count(t2)["total"] == 8


def test_formal_theta_is_not_realizable():
    c = tropreal.load_curve(str(DATA / "theta.json"))
    assert tropreal.realizability(c)["verdict"] == "false"
    assert tropreal.prelog(c)["feasible"] == "false"
    with pytest.raises(tropreal.NotRealizable):
        tropreal.count(c)


def test_prelog_verifies():
    rep = tropreal.prelog(tropreal.theta())
    assert rep["feasible"] == "true"
    assert rep["verification"]["pass"] is True


def test_errors_map_to_exceptions():
    with pytest.raises(tropreal.ParseError):
        tropreal.load_curve(str(DATA / "malformed.json"))
    with pytest.raises(tropreal.ConstraintError):
        tropreal.count(tropreal.load_curve(str(DATA / "theta_one_mark.json")))
    with pytest.raises(tropreal.DomainError):
        tropreal.count(tropreal.load_curve(str(DATA / "unbalanced.json")))


def test_snf_and_svg():
    assert tropreal.snf_diagonal([[2, 4], [6, 8]]) == [2, 4]
    svg = tropreal.plot_svg(tropreal.theta())
    assert svg.count('class="vertex"') == 2


def test_selftest_smoke():
    results = tropreal.selftest(cases=1)
    assert len(results) == 9
    assert all(r["passed"] for r in results)
