"""Pytest configuration and fixtures."""
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from models.bowtie import make_bowtie
from models.consequence import ConsequenceTree
from models.prevention import PreventionTree
from tests.helpers import FIXTURES, dct, dpt, read_fixture


@pytest.fixture(autouse=True)
def isolated_env():
    """Hide any BOWTIE_* variables of the calling shell from the settings."""
    clean = {k: v for k, v in os.environ.items() if not k.startswith("BOWTIE_")}
    with patch.dict(os.environ, clean, clear=True):
        yield


@pytest.fixture(autouse=True)
def reset_lru_cache():
    """Reset the settings cache and cached services between tests."""
    from core.config import get_settings
    from services import reset_services

    get_settings.cache_clear()
    reset_services()
    yield
    get_settings.cache_clear()
    reset_services()


# --- Fixture corpus ---
@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def dpt_a() -> PreventionTree:
    return dpt(read_fixture("dpt_a.bt"))


@pytest.fixture
def dpt_s() -> PreventionTree:
    return dpt(read_fixture("dpt_s.bt"))


@pytest.fixture
def fb_dpt() -> PreventionTree:
    return dpt(read_fixture("fb_dpt.bt"))


@pytest.fixture
def fb_cond() -> PreventionTree:
    return dpt(read_fixture("fb_cond.bt"))


@pytest.fixture
def fb_dct() -> ConsequenceTree:
    return dct(read_fixture("fb_dct.bt"))


@pytest.fixture
def fb_bowtie(fb_dpt, fb_dct):
    return make_bowtie(fb_dpt, fb_dct, "server outage")
