"""Ingest of the World Bank government-expenditure indicator.

Both ingest paths normalize to the same CountryRecord shape:

* the bulk-download CSV layout (two metadata lines, a blank line, a quoted
  header with one column per year, one quoted row per country), and
* the v2 HTTP API (JSON, two-element payload of page metadata plus an
  observation array).

The indicator is NE.CON.GOVT.ZS, general government final consumption
expenditure as a percent of GDP. Percentages become spending shares by
dividing by 100 and rounding half-up to three decimals, the precision the
published country table uses; gains are the reciprocal rounded half-up to
six decimals.

A snapshot of the 2017 indicator values ships with the package (see
default_fixture_path) so everything except the live `fetch` path works
offline.
"""

from __future__ import annotations

import csv
import io
import json
import re
import urllib.error
import urllib.request
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from pathlib import Path

from ._validate import require_finite
from .errors import (
    ApiStatusError,
    DomainError,
    IndicatorMismatchError,
    ParseError,
    PayloadError,
    TransportError,
)
from .rounding import round_half_up

INDICATOR_CODE = "NE.CON.GOVT.ZS"
API_ROOT = "https://api.worldbank.org/v2"
API_PAGE_SIZE = 500

# World Bank region/income/lending groups that appear in the bulk files and
# the API next to real countries. Their codes share the [A-Z]{3} shape, so
# membership here is what tells an aggregate from a country.
AGGREGATE_CODES = frozenset({
    "AFE", "AFW", "ARB", "CEB", "CSS", "EAP", "EAR", "EAS", "ECA", "ECS",
    "EMU", "EUU", "FCS", "HIC", "HPC", "IBD", "IBT", "IDA", "IDB", "IDX",
    "INX", "LAC", "LCN", "LDC", "LIC", "LMC", "LMY", "LTE", "MEA", "MIC",
    "MNA", "NAC", "OED", "OSS", "PRE", "PSS", "PST", "SAS", "SSA", "SSF",
    "SST", "TEA", "TEC", "TLA", "TMN", "TSA", "TSS", "UMC", "WLD",
})

_ISO3_RE = re.compile(r"[A-Z]{3}")

_CSV_HEADER_PREFIX = ("Country Name", "Country Code", "Indicator Name", "Indicator Code")


@dataclass(frozen=True)
class CountryRecord:
    """One country (or aggregate) observation for one year."""

    name: str
    iso3: str
    year: int
    expenditure_pct: float | None = None

    def __post_init__(self):
        if not _ISO3_RE.fullmatch(self.iso3):
            raise DomainError(f"iso3 must be three uppercase letters, got {self.iso3!r}")
        if self.expenditure_pct is not None:
            pct = require_finite("expenditure_pct", self.expenditure_pct)
            if not 0.0 <= pct <= 100.0:
                raise DomainError(f"expenditure_pct must lie in [0, 100], got {pct!r}")

    @property
    def is_aggregate(self) -> bool:
        """True for World Bank region/income groups rather than countries."""
        return self.iso3 in AGGREGATE_CODES


@dataclass(frozen=True)
class AmplificationRow:
    """One line of the amplification table: share alpha, gain 1/alpha."""

    name: str
    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        expected = round_half_up(1.0 / self.alpha, 6)
        if self.beta != expected:
            raise DomainError(
                f"beta must be 1/alpha rounded to 6 decimals "
                f"({expected!r}), got {self.beta!r}"
            )


def to_alpha(expenditure_pct: float) -> float:
    """Spending share for a percentage of GDP: pct/100, three decimals.

    The division and rounding run in decimal arithmetic on the shortest
    decimal reading of the float, so e.g. 18.2 becomes exactly 0.182.
    """
    pct = require_finite("expenditure_pct", expenditure_pct)
    if not 0.0 < pct <= 100.0:
        raise DomainError(f"expenditure_pct must lie in (0, 100], got {pct!r}")
    share = (Decimal(repr(pct)) / 100).quantize(
        Decimal("0.001"), rounding=ROUND_HALF_UP
    )
    return float(share)


def build_amplification_table(
    records: list[CountryRecord],
) -> tuple[list[AmplificationRow], list[CountryRecord]]:
    """Amplification rows (sorted by name) plus the records skipped.

    Skipped are records without a value, or whose percentage rounds to a
    zero share (the gain is undefined there); they are returned, never
    dropped silently.
    """
    rows: list[AmplificationRow] = []
    skipped: list[CountryRecord] = []
    for record in records:
        if record.expenditure_pct is None or record.expenditure_pct <= 0:
            skipped.append(record)
            continue
        alpha = to_alpha(record.expenditure_pct)
        if alpha <= 0:
            skipped.append(record)
            continue
        rows.append(
            AmplificationRow(
                name=record.name, alpha=alpha, beta=round_half_up(1.0 / alpha, 6)
            )
        )
    rows.sort(key=lambda row: row.name)
    return rows, skipped


def parse_worldbank_csv(
    content, indicator_code: str = INDICATOR_CODE, year: int = 2017
) -> list[CountryRecord]:
    """Parse a World Bank bulk-download CSV into records for one year.

    `content` is the file as bytes or a binary stream. Layout errors raise
    ParseError naming the line and column; rows carrying a different
    indicator code raise IndicatorMismatchError. An empty cell in the
    requested year column yields a record with a missing percentage.
    """
    if hasattr(content, "read"):
        content = content.read()
    text = content.decode("utf-8-sig") if isinstance(content, bytes) else str(content)
    rows = list(csv.reader(io.StringIO(text)))

    if len(rows) < 4:
        raise ParseError(
            "file too short: expected two metadata lines, a blank line and a header"
        )
    if not rows[0] or rows[0][0] != "Data Source":
        raise ParseError("line 1, column 1: expected a 'Data Source' metadata line")
    if not rows[1] or rows[1][0] != "Last Updated Date":
        raise ParseError("line 2, column 1: expected a 'Last Updated Date' metadata line")
    if any(cell.strip() for cell in rows[2]):
        raise ParseError("line 3: expected a blank separator line")

    header = rows[3]
    for idx, want in enumerate(_CSV_HEADER_PREFIX):
        got = header[idx] if idx < len(header) else None
        if got != want:
            raise ParseError(f"line 4, column {idx + 1}: expected header cell {want!r}, got {got!r}")
    year_label = str(year)
    try:
        year_col = header.index(year_label)
    except ValueError:
        raise ParseError(f"line 4: header has no column for year {year_label}") from None

    records: list[CountryRecord] = []
    for line_no, row in enumerate(rows[4:], start=5):
        if not any(cell.strip() for cell in row):
            continue  # trailing blank line
        if len(row) < len(_CSV_HEADER_PREFIX):
            raise ParseError(f"line {line_no}: expected at least 4 columns, got {len(row)}")
        if row[3] != indicator_code:
            raise IndicatorMismatchError(
                f"line {line_no}, column 4: indicator {row[3]!r}, expected {indicator_code!r}"
            )
        cell = (row[year_col] if year_col < len(row) else "").strip()
        if cell:
            try:
                pct = float(cell)
            except ValueError:
                raise ParseError(
                    f"line {line_no}, column {year_col + 1}: not a number: {cell!r}"
                ) from None
        else:
            pct = None
        try:
            records.append(
                CountryRecord(name=row[0], iso3=row[1], year=year, expenditure_pct=pct)
            )
        except DomainError as exc:
            raise ParseError(f"line {line_no}: {exc}") from None
    return records


def load_worldbank_csv(
    path, indicator_code: str = INDICATOR_CODE, year: int = 2017
) -> list[CountryRecord]:
    """parse_worldbank_csv over a file on disk."""
    with open(path, "rb") as fh:
        return parse_worldbank_csv(fh, indicator_code=indicator_code, year=year)


def default_fixture_path() -> Path:
    """The packaged snapshot of the indicator (2016/2017 values)."""
    return Path(__file__).parent / "data" / "ne_con_govt_zs.csv"


def _default_opener(url: str) -> tuple[int, bytes]:
    """GET `url`, returning (status, body); transport trouble raises."""
    request = urllib.request.Request(url, headers={"User-Agent": "ammet/0.1"})
    try:
        with urllib.request.urlopen(request, timeout=30) as response:
            return response.status, response.read()
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read() or b""
    except (urllib.error.URLError, OSError) as exc:
        raise TransportError(f"request to {url} failed: {exc}") from exc


def fetch_indicator(
    iso3_codes: list[str],
    year: int,
    indicator_code: str = INDICATOR_CODE,
    opener=None,
) -> list[CountryRecord]:
    """Pull one year of the indicator for the given codes from the live API.

    Issues `GET {API_ROOT}/country/{codes joined by ;}/indicator/{code}
    ?date={year}&format=json&per_page=500`, follows the page metadata of
    the two-element payload across pages, and maps each observation to a
    CountryRecord (null values become missing percentages).

    `opener` (url -> (status, bytes)) exists for tests and custom
    transports; the default uses urllib. Transport failures, non-200
    statuses and malformed payloads raise TransportError, ApiStatusError
    and PayloadError respectively.
    """
    if not iso3_codes:
        raise DomainError("at least one ISO3 code is required")
    codes = [str(code).upper() for code in iso3_codes]
    for code in codes:
        if not _ISO3_RE.fullmatch(code):
            raise DomainError(f"not a three-letter code: {code!r}")
    if opener is None:
        opener = _default_opener

    base_url = (
        f"{API_ROOT}/country/{';'.join(codes)}/indicator/{indicator_code}"
        f"?date={year}&format=json&per_page={API_PAGE_SIZE}"
    )
    records: list[CountryRecord] = []
    page, pages = 1, 1
    while page <= pages:
        url = base_url if page == 1 else f"{base_url}&page={page}"
        status, body = opener(url)
        if status != 200:
            raise ApiStatusError(status, url)
        try:
            payload = json.loads(body)
        except ValueError as exc:
            raise PayloadError(f"response from {url} is not JSON: {exc}") from exc
        if (
            not isinstance(payload, list)
            or len(payload) < 2
            or not isinstance(payload[0], dict)
            or not isinstance(payload[1], list)
        ):
            raise PayloadError(
                f"response from {url} is not the documented (metadata, observations) pair"
            )
        meta, observations = payload[0], payload[1]
        try:
            pages = int(meta.get("pages", 1))
        except (TypeError, ValueError) as exc:
            raise PayloadError(f"page metadata malformed: {meta!r}") from exc
        for index, obs in enumerate(observations):
            try:
                value = obs["value"]
                record = CountryRecord(
                    name=obs["country"]["value"],
                    iso3=obs["countryiso3code"],
                    year=int(obs["date"]),
                    expenditure_pct=None if value is None else float(value),
                )
            except (KeyError, TypeError, ValueError, DomainError) as exc:
                raise PayloadError(f"observation {index} malformed: {exc}") from exc
            records.append(record)
        page += 1
    return records
