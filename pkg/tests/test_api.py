import cyclo
from cyclo import errors


def test_all_names_resolve():
    for name in cyclo.__all__:
        assert getattr(cyclo, name, None) is not None, name


def test_all_is_sorted_and_unique():
    assert list(cyclo.__all__) == sorted(set(cyclo.__all__))


def test_version_matches_tool_version():
    assert cyclo.__version__ == cyclo.TOOL_VERSION


def test_error_hierarchy():
    assert issubclass(cyclo.ValidationError, cyclo.CycloError)
    assert issubclass(cyclo.ValidationError, ValueError)
    for exc in (
        cyclo.BoundViolatedError,
        cyclo.DegreeCapExceededError,
        cyclo.MismatchError,
        cyclo.OverflowGuardError,
        cyclo.SearchExhaustedError,
    ):
        assert issubclass(exc, cyclo.CycloError)
        # Resource and consistency failures are not argument errors.
        assert not issubclass(exc, ValueError)


def test_specific_validation_errors_stay_in_errors_module():
    assert issubclass(errors.NotPrimeError, cyclo.ValidationError)
    assert issubclass(errors.OutOfRangeError, cyclo.ValidationError)
    assert issubclass(errors.InternalCheckError, cyclo.CycloError)
