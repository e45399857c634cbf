"""Bulk CSV parsing, the live-API client (mocked), and table building."""

import json

import pytest

from ammet.errors import (
    ApiStatusError,
    DomainError,
    IndicatorMismatchError,
    ParseError,
    PayloadError,
    TransportError,
)
from ammet.worldbank import (
    AGGREGATE_CODES,
    INDICATOR_CODE,
    AmplificationRow,
    CountryRecord,
    build_amplification_table,
    fetch_indicator,
    parse_worldbank_csv,
    to_alpha,
)

from expected_table import AGGREGATE_NAMES, COUNTRY_ROWS, EXPECTED_TABLE


def mini_csv(rows, years=("2016", "2017")):
    """Assemble a small file in the bulk-download layout."""
    def q(fields):
        return ",".join(f'"{f}"' for f in fields) + ","
    head = [
        q(["Data Source", "World Development Indicators"]),
        q(["Last Updated Date", "2019-04-24"]),
        "",
        q(["Country Name", "Country Code", "Indicator Name", "Indicator Code"] + list(years)),
    ]
    return ("\n".join(head + [q(r) for r in rows]) + "\n").encode("utf-8")


INDICATOR_NAME = "General government final consumption expenditure (% of GDP)"


class TestParseWorldbankCsv:
    def test_single_row(self):
        content = mini_csv([["Argentina", "ARG", INDICATOR_NAME, INDICATOR_CODE, "", "18.2"]])
        records = parse_worldbank_csv(content, year=2017)
        assert records == [CountryRecord("Argentina", "ARG", 2017, 18.2)]

    def test_embedded_comma_in_quoted_name(self):
        content = mini_csv([["Korea, Rep.", "KOR", INDICATOR_NAME, INDICATOR_CODE, "", "15.3"]])
        (rec,) = parse_worldbank_csv(content, year=2017)
        assert rec.name == "Korea, Rep."
        assert rec.expenditure_pct == 15.3

    def test_empty_cell_is_missing(self):
        content = mini_csv([["Aruba", "ABW", INDICATOR_NAME, INDICATOR_CODE, "19.5", ""]])
        (rec,) = parse_worldbank_csv(content, year=2017)
        assert rec.expenditure_pct is None

    def test_other_year_column(self):
        content = mini_csv([["Aruba", "ABW", INDICATOR_NAME, INDICATOR_CODE, "19.5", ""]])
        (rec,) = parse_worldbank_csv(content, year=2016)
        assert rec.expenditure_pct == 19.5

    def test_wrong_indicator_code(self):
        content = mini_csv([["Argentina", "ARG", "GDP (current US$)", "NY.GDP.MKTP.CD", "", "1.0"]])
        with pytest.raises(IndicatorMismatchError, match="line 5"):
            parse_worldbank_csv(content, year=2017)

    def test_missing_year_column(self):
        content = mini_csv([], years=("2015", "2016"))
        with pytest.raises(ParseError, match="no column for year 2017"):
            parse_worldbank_csv(content, year=2017)

    def test_bad_metadata_line(self):
        content = b'"Bogus","x",\n"Last Updated Date","y",\n\n"Country Name","Country Code","Indicator Name","Indicator Code","2017",\n'
        with pytest.raises(ParseError, match="line 1"):
            parse_worldbank_csv(content, year=2017)

    def test_bad_header_cell(self):
        content = (
            b'"Data Source","x",\n"Last Updated Date","y",\n\n'
            b'"Country","Country Code","Indicator Name","Indicator Code","2017",\n'
        )
        with pytest.raises(ParseError, match="line 4, column 1"):
            parse_worldbank_csv(content, year=2017)

    def test_non_blank_separator_line(self):
        content = (
            b'"Data Source","x",\n"Last Updated Date","y",\n"oops",\n'
            b'"Country Name","Country Code","Indicator Name","Indicator Code","2017",\n'
        )
        with pytest.raises(ParseError, match="line 3"):
            parse_worldbank_csv(content, year=2017)

    def test_unparseable_number_names_line_and_column(self):
        content = mini_csv([["Argentina", "ARG", INDICATOR_NAME, INDICATOR_CODE, "", "n/a"]])
        with pytest.raises(ParseError, match="line 5, column 6"):
            parse_worldbank_csv(content, year=2017)

    def test_out_of_range_percentage(self):
        content = mini_csv([["Argentina", "ARG", INDICATOR_NAME, INDICATOR_CODE, "", "150.0"]])
        with pytest.raises(ParseError, match="line 5"):
            parse_worldbank_csv(content, year=2017)

    def test_accepts_binary_stream(self, fixture_path):
        with open(fixture_path, "rb") as fh:
            records = parse_worldbank_csv(fh, year=2017)
        assert len(records) == 45

    def test_snapshot_counts(self, fixture_records):
        # 36 countries + 6 aggregates with 2017 values, 3 rows without
        with_values = [r for r in fixture_records if r.expenditure_pct is not None]
        countries = [r for r in with_values if not r.is_aggregate]
        assert len(fixture_records) == 45
        assert len(with_values) == 42
        assert len(countries) >= 36

    def test_snapshot_has_all_expected_countries(self, country_records):
        assert {r.name for r in country_records} == {name for name, _, _ in COUNTRY_ROWS}

    def test_snapshot_count_against_line_scan(self, fixture_path, fixture_records):
        # independent oracle: scan raw lines, count rows whose 2017 cell
        # (4 fixed columns + 57 years in) is non-empty
        lines = fixture_path.read_text().splitlines()
        header = lines[3].split('","')
        year_idx = header.index("2017")
        count = 0
        for line in lines[4:]:
            cells = [c.strip('"') for c in line.split('","')]
            if cells[year_idx].strip('",'):
                count += 1
        assert count == 42
        assert count == sum(1 for r in fixture_records if r.expenditure_pct is not None)

    def test_aggregates_flagged(self, fixture_records):
        flagged = {r.name for r in fixture_records if r.is_aggregate}
        assert flagged == AGGREGATE_NAMES


class TestToAlpha:
    @pytest.mark.parametrize("pct,alpha", [
        (18.2, 0.182),
        (12.0, 0.12),
        (100.0, 1.0),
        (18.2338238506909, 0.182),  # full-precision value rounds to 3 decimals
        (19.95, 0.2),               # half-up at the third decimal
        (0.04, 0.0),                # below the smallest representable share
    ])
    def test_values(self, pct, alpha):
        assert to_alpha(pct) == alpha

    @pytest.mark.parametrize("bad", [0.0, -5.0, 100.1, float("nan")])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            to_alpha(bad)


class TestBuildAmplificationTable:
    def test_snapshot_reproduces_expected_table(self, fixture_records):
        from ammet.report import format_alpha, format_beta

        rows, skipped = build_amplification_table(fixture_records)
        assert [(r.name, format_alpha(r.alpha), format_beta(r.beta)) for r in rows] \
            == EXPECTED_TABLE
        assert sorted(r.name for r in skipped) == ["Aruba", "San Marino", "Venezuela, RB"]

    def test_integral_gain_displays_bare(self):
        from ammet.report import format_beta

        rows, _ = build_amplification_table(
            [CountryRecord("Brazil", "BRA", 2017, 20.0)]
        )
        assert rows[0].beta == 5.0
        assert format_beta(rows[0].beta) == "5"

    def test_empty_input(self):
        assert build_amplification_table([]) == ([], [])

    def test_rows_sorted_by_name(self, fixture_records):
        rows, _ = build_amplification_table(fixture_records)
        assert [r.name for r in rows] == sorted(r.name for r in rows)

    def test_row_validates_gain(self):
        with pytest.raises(DomainError):
            AmplificationRow("X", 0.2, 5.1)


class TestFetchIndicator:
    def test_mocked_payload_round_trip(self, stub_opener):
        records = fetch_indicator(["ARG"], 2017, opener=stub_opener)
        arg = next(r for r in records if r.iso3 == "ARG")
        assert arg.name == "Argentina"
        assert arg.year == 2017
        assert to_alpha(arg.expenditure_pct) == 0.182
        (url,) = stub_opener.calls
        assert url.startswith("https://api.worldbank.org/v2/country/ARG/indicator/")
        assert "NE.CON.GOVT.ZS" in url
        assert "date=2017" in url and "format=json" in url and "per_page=500" in url

    def test_codes_joined_with_semicolons(self, stub_opener):
        fetch_indicator(["arg", "che", "usa"], 2017, opener=stub_opener)
        assert "/country/ARG;CHE;USA/" in stub_opener.calls[0]

    def test_null_value_becomes_missing(self, stub_opener):
        records = fetch_indicator(["ABW"], 2017, opener=stub_opener)
        aruba = next(r for r in records if r.iso3 == "ABW")
        assert aruba.expenditure_pct is None

    def test_empty_code_list_is_usage_error(self):
        calls = []
        with pytest.raises(DomainError):
            fetch_indicator([], 2017, opener=lambda url: calls.append(url))
        assert calls == []  # rejected before any request

    def test_invalid_code_rejected(self):
        with pytest.raises(DomainError):
            fetch_indicator(["TOOLONG"], 2017, opener=lambda url: (200, b"[]"))

    def test_non_200_status(self):
        with pytest.raises(ApiStatusError) as excinfo:
            fetch_indicator(["ARG"], 2017, opener=lambda url: (503, b""))
        assert excinfo.value.status == 503

    def test_non_json_payload(self):
        with pytest.raises(PayloadError):
            fetch_indicator(["ARG"], 2017, opener=lambda url: (200, b"<html>"))

    def test_wrong_payload_shape(self):
        body = json.dumps([{"message": "no data"}]).encode()
        with pytest.raises(PayloadError):
            fetch_indicator(["ARG"], 2017, opener=lambda url: (200, body))

    def test_malformed_observation(self):
        body = json.dumps([{"pages": 1}, [{"date": "2017"}]]).encode()
        with pytest.raises(PayloadError):
            fetch_indicator(["ARG"], 2017, opener=lambda url: (200, body))

    def test_transport_error_propagates(self):
        def opener(url):
            raise TransportError("connection refused")

        with pytest.raises(TransportError):
            fetch_indicator(["ARG"], 2017, opener=opener)

    def test_pagination_followed(self):
        page1 = json.dumps([
            {"page": 1, "pages": 2, "per_page": 1, "total": 2},
            [{"indicator": {"id": INDICATOR_CODE}, "country": {"id": "AR", "value": "Argentina"},
              "countryiso3code": "ARG", "date": "2017", "value": 18.2}],
        ]).encode()
        page2 = json.dumps([
            {"page": 2, "pages": 2, "per_page": 1, "total": 2},
            [{"indicator": {"id": INDICATOR_CODE}, "country": {"id": "CH", "value": "Switzerland"},
              "countryiso3code": "CHE", "date": "2017", "value": 12.0}],
        ]).encode()

        def opener(url):
            return 200, (page2 if "page=2" in url else page1)

        records = fetch_indicator(["ARG", "CHE"], 2017, opener=opener)
        assert [r.iso3 for r in records] == ["ARG", "CHE"]

    def test_csv_and_api_paths_agree(self, fixture_records, api_records):
        assert set(api_records) == set(fixture_records)
        assert len(api_records) == len(fixture_records)


class TestCountryRecord:
    def test_rejects_bad_code(self):
        with pytest.raises(DomainError):
            CountryRecord("Nowhere", "N1", 2017, 10.0)

    def test_rejects_out_of_range_pct(self):
        with pytest.raises(DomainError):
            CountryRecord("Nowhere", "NOW", 2017, 101.0)

    def test_aggregate_codes_are_three_letters(self):
        assert all(len(code) == 3 and code.isupper() for code in AGGREGATE_CODES)
