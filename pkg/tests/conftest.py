from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from arsobstruct.path_algebra import instantiate, parse_presentation

# derandomized so that repeated runs are byte-identical
settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

ROOT = Path(__file__).resolve().parent.parent
INPUTS = ROOT / "example_inputs"


def load_alg(name: str, **kw):
    path = INPUTS / name
    return instantiate(parse_presentation(path.read_text(), source=str(path)), **kw)


@pytest.fixture(scope="session")
def inputs() -> Path:
    return INPUTS


@pytest.fixture(scope="session")
def gentle():
    return load_alg("gentle_two_nodes.alg")
