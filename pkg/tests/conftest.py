"""Define dynamic test fixtures."""

from __future__ import annotations

import json
from typing import Any, cast

import pytest

from ncforms.freeforms import Signature, free_signature
from ncforms.quantum import weyl_algebra
from ncforms.rewrite import RewriteSystem
from ncforms.scalars import ParamTable
from tests.common import load_fixture


@pytest.fixture(name="broken_system_data", scope="session")
def broken_system_data_fixture() -> dict[str, Any]:
    """Return a fixture for a presentation with a non-confluent overlap."""
    return cast(dict[str, Any], json.loads(load_fixture("broken_system.json")))


@pytest.fixture(name="group_q_data", scope="session")
def group_q_data_fixture() -> dict[str, Any]:
    """Return a fixture for a Z2-indexed Q family."""
    return cast(dict[str, Any], json.loads(load_fixture("group_q.json")))


@pytest.fixture(name="q3_data", scope="session")
def q3_data_fixture() -> dict[str, Any]:
    """Return a fixture for a one-parameter 3x3 Q matrix."""
    return cast(dict[str, Any], json.loads(load_fixture("q3.json")))


@pytest.fixture(name="sl2_data", scope="session")
def sl2_data_fixture() -> dict[str, Any]:
    """Return a fixture for sl(2) Lie data with 1-based sparse entries."""
    return cast(dict[str, Any], json.loads(load_fixture("sl2.json")))


@pytest.fixture(name="free2")
def free2_fixture() -> Signature:
    """Return the even free signature on x1, x2, y1, y2 with a parameter h."""
    return free_signature(2, params=ParamTable.of("h"))


@pytest.fixture(name="weyl1", scope="session")
def weyl1_fixture() -> RewriteSystem:
    """Return the Weyl algebra on one canonical pair."""
    return weyl_algebra(1)
