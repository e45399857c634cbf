import json
from pathlib import Path

import pytest

from ammet.worldbank import default_fixture_path, load_worldbank_csv

TESTS_DIR = Path(__file__).parent
API_PAYLOAD_PATH = TESTS_DIR / "data" / "wb_api_payload.json"


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    path = default_fixture_path()
    assert path.is_file(), "packaged indicator snapshot is missing"
    return path


@pytest.fixture(scope="session")
def fixture_records(fixture_path):
    """All 45 snapshot records at year 2017."""
    return load_worldbank_csv(fixture_path, year=2017)


@pytest.fixture(scope="session")
def country_records(fixture_records):
    """The 36 countries carrying a 2017 value (no aggregates)."""
    return [
        r for r in fixture_records
        if not r.is_aggregate and r.expenditure_pct is not None
    ]


@pytest.fixture(scope="session")
def api_payload_bytes() -> bytes:
    return API_PAYLOAD_PATH.read_bytes()


@pytest.fixture
def stub_opener(api_payload_bytes):
    """Opener that replays the frozen API payload and records request URLs."""
    calls = []

    def opener(url: str):
        calls.append(url)
        return 200, api_payload_bytes

    opener.calls = calls
    return opener


@pytest.fixture(scope="session")
def api_records(api_payload_bytes):
    """Record set the mocked API path should produce (via fetch_indicator)."""
    from ammet.worldbank import fetch_indicator

    payload = json.loads(api_payload_bytes)
    codes = [obs["countryiso3code"] for obs in payload[1]]
    return fetch_indicator(codes, 2017, opener=lambda url: (200, api_payload_bytes))
