"""Shared fixtures for quiverdp tests"""

import sys
from pathlib import Path

import pytest
import structlog

# Ensure src/ is on the path for imports
SRC_DIR = Path(__file__).parent.parent / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))


@pytest.fixture(autouse=True)
def _isolated_config(tmp_path, monkeypatch):
    """Point the config file at a temp dir and drop the cached config between tests."""
    from quiverdp.core import config

    monkeypatch.setattr(config, "QUIVERDP_DIR", tmp_path / ".quiverdp")
    monkeypatch.setattr(config, "CONFIG_FILE", tmp_path / ".quiverdp" / "config.toml")
    config.reset_config()
    yield
    config.reset_config()
    structlog.reset_defaults()


@pytest.fixture
def single_x():
    """l1 = l2 = 1, n = m = 2, one X-arrow"""
    from quiverdp.quiver.model import classify_zigzag
    from quiverdp.quiver.samples import single_pair

    return classify_zigzag(single_pair(dx=1))


@pytest.fixture
def one_of_each():
    """l1 = l2 = 1, n = m = 2, one arrow in each of X, Y, Z"""
    from quiverdp.quiver.model import classify_zigzag
    from quiverdp.quiver.samples import single_pair

    return classify_zigzag(single_pair(dx=1, dy=1, dz=1))


@pytest.fixture
def bilinear():
    from quiverdp.quiver.model import classify_zigzag
    from quiverdp.quiver.samples import bilinear_forms

    return classify_zigzag(bilinear_forms(1))
