import os

from hypothesis import settings as hypothesis_settings
import pytest

from deltalf.frontend.session import Session, SessionSettings
from deltalf.types import KernelSettings

from . import utils

hypothesis_settings.register_profile("default", max_examples=100, deadline=None)
hypothesis_settings.register_profile("ci", max_examples=500, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def kernel_settings():
    return KernelSettings(fuel=10_000, essence_fuel=10_000)


@pytest.fixture
def session():
    yield Session("test")


@pytest.fixture
def tracing_session():
    yield Session("trace", SessionSettings(trace=True))


@pytest.fixture
def basic_session():
    """Session with two atoms, a function and an element of each."""
    yield utils.session_from(
        "Axiom s : Type. Axiom t : Type. Axiom c : s. Axiom d : t. Axiom f : s -> t."
    )


@pytest.fixture
def corpus():
    """Load a corpus file into a fresh session."""
    return utils.load_corpus
