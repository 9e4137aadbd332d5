import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from uvlab.order import validate_poset  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fork():
    """x below y1 and y2."""
    return validate_poset([("x", "y1"), ("x", "y2")])


@pytest.fixture
def two_chain():
    return validate_poset([("x", "y")])
