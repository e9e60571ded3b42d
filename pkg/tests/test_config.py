import pytest
from pydantic import ValidationError

from abacus.core.config import Settings
from abacus.core.errors import AbacusError, BudgetExceeded, InvalidArgument, ShapeMismatch
from abacus.schemas.report import VerificationReport
from abacus.schemas.run import RunConfig


def test_defaults_are_consistent():
    s = Settings(_env_file=None)
    s.validate_at_startup()
    assert s.TIME_SIGN == 1
    assert s.NNZ_BUDGET == 2**20


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("NNZ_BUDGET", "512")
    monkeypatch.setenv("TAPE_STRICT_GATES", "true")
    s = Settings(_env_file=None)
    assert s.NNZ_BUDGET == 512
    assert s.TAPE_STRICT_GATES is True


@pytest.mark.parametrize("field, value", [("NNZ_BUDGET", 0), ("TOL_ALGEBRA", -1.0), ("TIME_SIGN", 0)])
def test_field_validators(field, value):
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **{field: value})


def test_startup_validation_collects_problems():
    s = Settings(_env_file=None, SYM_GRADE_CAP=80, TOL_EXACT=1e-9)
    with pytest.raises(RuntimeError) as exc:
        s.validate_at_startup()
    assert "SYM_GRADE_CAP" in str(exc.value)
    assert "TOL_EXACT" in str(exc.value)


def test_error_codes():
    assert str(InvalidArgument("bad")) == "invalid-argument: bad"
    assert BudgetExceeded("x").code == "budget-exceeded"
    assert isinstance(ShapeMismatch("x"), ValueError)
    assert all(issubclass(e, AbacusError) for e in (InvalidArgument, BudgetExceeded, ShapeMismatch))
    assert InvalidArgument("x").exit_code == 2


def test_report_pass_and_dump():
    report = VerificationReport(suite="demo", tol=1e-12)
    report.add("ok", 1e-13)
    report.add("loose", 1e-6, tol=1e-5, i=0)
    assert report.passed
    report.add("bad", 1.0)
    assert not report.passed
    data = report.dump()
    assert data["pass"] is False
    assert data["checks"][1]["pass"] is True
    assert report.worst() == 1.0
    assert report.worst("ok") == pytest.approx(1e-13)


def test_run_config_rejects_bad_tol():
    with pytest.raises(ValidationError):
        RunConfig(tol=0)
    with pytest.raises(ValidationError):
        RunConfig(modes=-1)
