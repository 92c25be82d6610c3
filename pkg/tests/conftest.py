import json
from pathlib import Path

import pytest

from ascon_aead import aead
from ascon_aead.kat import parse_kat_file

VECTOR_DIR = Path(__file__).parent / "vectors"
VARIANT_NAMES = ("ascon128", "ascon128a")


def kat_path(variant: str) -> Path:
    return VECTOR_DIR / variant / "LWC_AEAD_KAT_128_128.txt"


@pytest.fixture(scope="session")
def kat_records():
    """Parsed official vectors, keyed by variant name."""
    return {name: parse_kat_file(kat_path(name).read_text()) for name in VARIANT_NAMES}


@pytest.fixture(scope="session")
def phase_fixtures():
    """Pinned intermediate states for KAT record 545 (non-empty PT and AD)."""
    return json.loads((VECTOR_DIR / "phase_fixtures.json").read_text())


@pytest.fixture
def pure_path(monkeypatch):
    """Force the plain-Python block loops regardless of installed extras."""
    monkeypatch.setattr(aead, "_accel_backend", False)


def accel_available() -> bool:
    return aead._get_accel() is not None
