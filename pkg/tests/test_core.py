import json
from fractions import Fraction as F

import pytest

from fairmatch.core import errors
from fairmatch.core.config import settings
from fairmatch.core.logging import configure_logging, get_logger
from fairmatch.core.rational import (
    checked,
    common_denominator,
    format_rational,
    format_vector,
    parse_rational,
    parse_vector,
    variance,
)


def test_format_rational_is_always_p_over_q():
    assert format_rational(F(1)) == "1/1"
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(0)) == "0/1"


def test_parse_rational_forms():
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("7") == 7
    assert parse_rational("0.5") == F(1, 2)


@pytest.mark.parametrize("text", ["abc", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(errors.InvalidParameterError):
        parse_rational(text)


def test_vectors():
    assert parse_vector("3/2,1/2") == (F(3, 2), F(1, 2))
    assert format_vector((F(3, 2), F(1, 2))) == "3/2,1/2"
    assert format_vector((F(1), F(1))) == "1,1"


def test_overflow_is_reported():
    with pytest.raises(errors.RationalOverflowError):
        checked(F(2**200, 3))
    assert checked(F(2**20, 3)) == F(2**20, 3)


def test_common_denominator_and_variance():
    assert common_denominator([F(1, 2), F(1, 3), F(5)]) == 6
    assert variance((F(1), F(1))) == 0
    assert variance((F(2), F(0))) == 1


def test_error_contract():
    assert errors.GraphValidationError("x").exit_code == 1
    assert errors.InvalidParameterError("x").http_status == 422
    assert errors.NotRealizableError("x").exit_code == 2
    assert errors.BoundNotApplicableError("x").http_status == 409
    assert errors.GuardExceededError("x").exit_code == 3
    assert errors.GuardExceededError("x").http_status == 413
    assert issubclass(errors.NotRealizableError, errors.InfeasibleRequestError)


def test_settings_defaults():
    assert settings.SHAPLEY_EXACT_MAX_K == 10
    assert settings.DECREASING_MAX_K == 8
    assert settings.ENUMERATION_MAX_EDGES == 20
    assert settings.RATIONAL_BITS == 128


def test_json_logging_goes_to_stderr(capsys):
    configure_logging(level="INFO", fmt="json")
    get_logger("sweep").info("hello", extra={"rows": 3})
    captured = capsys.readouterr()
    assert captured.out == ""
    record = json.loads(captured.err.strip().splitlines()[-1])
    assert record["message"] == "hello"
    assert record["rows"] == 3
    assert record["name"] == "fairmatch.sweep"
