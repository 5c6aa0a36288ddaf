import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def xy():
    return ("x", "y")


def _vars(variables):
    if isinstance(variables, str):
        return tuple(variables.split())
    return tuple(variables)


def make_system(variables, *exprs):
    from ratdyn.parsing import parse_map
    return parse_map(_vars(variables), exprs)


def rf(src, variables):
    from ratdyn.parsing import parse_expression
    return parse_expression(src, _vars(variables))


def poly(src, variables):
    f = rf(src, variables)
    assert f.den.is_constant and f.den.constant_value() == 1, f"{src} is not polynomial"
    return f.num


@pytest.fixture
def systems_dir():
    import ratdyn
    return os.path.join(os.path.dirname(ratdyn.__file__), "systems")
