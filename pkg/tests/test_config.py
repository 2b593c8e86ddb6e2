import math
import pytest
from pydantic import ValidationError
from vecapprox.config import ApproxParams, Exponent, ExperimentConfig, RootConfig, SpacePair


def test_exponent_parse_numbers_and_infinity():
    assert Exponent.parse(2).reciprocal == 0.5
    assert Exponent.parse("1").reciprocal == 1.0
    for text in ("inf", "Infinity", "∞"):
        assert Exponent.parse(text).is_infinite
    assert Exponent.parse(math.inf).value() == math.inf


def test_exponent_below_one_rejected():
    with pytest.raises(ValueError):
        Exponent.parse(0.5)
    with pytest.raises(ValueError):
        Exponent.parse("nan")


def test_exponent_label():
    assert Exponent.parse(1).label == "1"
    assert Exponent.parse(2.5).label == "2.5"
    assert str(Exponent.parse("inf")) == "inf"


def test_space_pair_aliases_and_parsing():
    sp = SpacePair(**{"N1": 4, "N2": 9, "p": 1, "q": "inf", "u": 2, "v": 1})
    assert sp.n1 == 4 and sp.n2 == 9
    assert sp.q.is_infinite
    assert sp.cells == 36


def test_space_pair_serializes_labels():
    sp = SpacePair(n1=2, n2=3, p=1, q="inf", u=2, v=1)
    data = sp.model_dump(by_alias=True)
    assert data == {"N1": 2, "N2": 3, "p": "1", "q": "inf", "u": "2", "v": "1"}
    assert SpacePair(**data) == sp


def test_admissibility():
    assert SpacePair(n1=2, n2=2, p=1, q=2, u=2, v=1).is_admissible
    assert not SpacePair(n1=2, n2=2, p=2, q=1, u=2, v=1).is_admissible
    assert not SpacePair(n1=2, n2=2, p=1, q=2, u=1, v=2).is_admissible
    assert not SpacePair(n1=2, n2=2, p=2, q=2, u=2, v=1).is_admissible


def test_inner_gap():
    assert SpacePair(n1=2, n2=2, p=1, q=2, u=2, v=1).inner_gap == 0.5
    assert SpacePair(n1=2, n2=2, p=1, q=2, u="inf", v=1).inner_gap == 1.0


def test_approx_params_derived_counts():
    sp = SpacePair(n1=4, n2=4, p=1, q=2, u=2, v=1)
    params = ApproxParams(sp=sp, n=8, m=3)
    assert params.samples_per_row == 2
    assert params.rows_read == 2
    params.require_subfull_budget()
    with pytest.raises(ValueError):
        ApproxParams(sp=sp, n=16, m=3).require_subfull_budget()


def test_approx_params_rejects_zero_budget():
    sp = SpacePair(n1=4, n2=4, p=1, q=2, u=2, v=1)
    with pytest.raises(ValidationError):
        ApproxParams(sp=sp, n=0, m=1)


def test_experiment_config_defaults(experiment_config_data):
    config = RootConfig(**experiment_config_data).experiment
    assert config.sp.n1 == 8
    assert config.m_override == 3
    assert config.master_seed == 7
    assert config.w == 1.0
    assert config.format == "csv"
    assert config.label == "dispatch-mu1"


def test_experiment_config_budgets_strictly_increasing(experiment_config_data):
    data = experiment_config_data["experiment"]
    data["budgets"] = [8, 8, 16]
    with pytest.raises(ValidationError):
        ExperimentConfig(**data)


def test_experiment_config_rejects_bad_values(experiment_config_data):
    data = experiment_config_data["experiment"]
    for key, value in (("trials", 0), ("w", 0.5), ("measure", 7), ("algorithm", "a4"), ("format", "xml")):
        with pytest.raises(ValidationError):
            ExperimentConfig(**{**data, key: value})
