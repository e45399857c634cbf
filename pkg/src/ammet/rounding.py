"""Decimal display conventions used by the tables and reports.

All published share/gain figures follow one convention: round half up at a
fixed number of decimal places, trim trailing zeros when printing (so a gain
of 5.000000 prints as "5"). Plain round() is half-even and would disagree on
ties, hence the Decimal detour. repr() of a float is its shortest round-trip
decimal, which makes Decimal(repr(x)) the faithful decimal reading of x.
"""

from decimal import Decimal, ROUND_HALF_UP

from .errors import DomainError


def _quantized(value: float, places: int) -> Decimal:
    if not isinstance(places, int) or places < 0:
        raise DomainError(f"places must be a non-negative integer, got {places!r}")
    try:
        d = Decimal(repr(float(value)))
    except Exception as exc:  # repr of nan/inf is not a valid Decimal
        raise DomainError(f"cannot round non-finite value {value!r}") from exc
    if not d.is_finite():
        raise DomainError(f"cannot round non-finite value {value!r}")
    return d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def round_half_up(value: float, places: int) -> float:
    """Round to `places` decimals, ties away from zero."""
    return float(_quantized(value, places))


def format_trimmed(value: float, places: int) -> str:
    """Round half up to `places` decimals and print without trailing zeros."""
    # format(..., "f") keeps normalize() from switching to exponent notation.
    return format(_quantized(value, places).normalize(), "f")
