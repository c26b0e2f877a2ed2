"""Shared fixtures: enumerated groups are built once per module."""

import os

import pytest
from hypothesis import settings

from ocycle.oracle import build_group

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=25, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(autouse=True)
def _quiet(monkeypatch):
    monkeypatch.setenv("OCYCLE_QUIET", "1")


@pytest.fixture(scope="module")
def o4_plus():
    return build_group("Oplus", 4, 2)


@pytest.fixture(scope="module")
def o4_minus():
    return build_group("Ominus", 4, 2)


@pytest.fixture(scope="module")
def sp4():
    return build_group("Sp", 4, 2)
