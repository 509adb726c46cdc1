import os

import hypothesis
import pytest

from reflord import root_system

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def a3():
    return root_system("A", 3)


@pytest.fixture(scope="session")
def a2():
    return root_system("A", 2)
