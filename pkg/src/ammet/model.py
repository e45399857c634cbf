"""Exact arithmetic of the mixed-economy equilibrium and amplifier algebra.

A mixed economy in equilibrium splits its aggregate income Y into private
consumption C, private investment I, and public/governmental spending G:

    Y = C + I + G

The amplifier reading treats the government share alpha = G/Y as the input
fraction of an economic amplifier whose gain is beta = Y/G = 1/alpha. The
AMMET threshold caps alpha near 0.1 (gain 10): enough state participation
to function, small enough that the private remainder drives growth.

Everything here is a pure function over immutable values; no shared state,
safe under arbitrary concurrency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validate import require_finite, require_non_negative
from .errors import DomainError

# AMMET optimal intervention threshold: a tenth of GDP, gain of ten.
OPTIMAL_ALPHA = 0.1
OPTIMAL_BETA = 10.0

#: Relative tolerance for the alpha * beta = 1 pairing invariant.
PAIR_RTOL = 1e-12


@dataclass(frozen=True)
class EconomicAccount:
    """Macro aggregates in a common currency unit.

    Valid accounts satisfy income_y == consumption_c + investment_i +
    government_g exactly (left-to-right float sum) with every field
    non-negative; the constructor rejects anything else.
    """

    income_y: float
    consumption_c: float
    investment_i: float
    government_g: float

    def __post_init__(self):
        for name in ("income_y", "consumption_c", "investment_i", "government_g"):
            require_non_negative(name, getattr(self, name))
        total = (self.consumption_c + self.investment_i) + self.government_g
        if self.income_y != total:
            raise DomainError(
                f"account violates Y = C + I + G: Y={self.income_y!r}, "
                f"C+I+G={total!r}"
            )

    @property
    def government_share(self) -> float:
        """G/Y, the alpha of this account (undefined for zero income)."""
        if self.income_y == 0:
            raise DomainError("government share undefined for zero income")
        return self.government_g / self.income_y


@dataclass(frozen=True)
class AmplificationPoint:
    """A paired (alpha, beta) reading of one economy: beta = 1/alpha."""

    alpha: float
    beta: float

    def __post_init__(self):
        a = require_finite("alpha", self.alpha)
        b = require_finite("beta", self.beta)
        if not 0.0 < a <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {a!r}")
        if b < 1.0:
            raise DomainError(f"beta must be >= 1, got {b!r}")
        if abs(a * b - 1.0) > PAIR_RTOL:
            raise DomainError(f"alpha*beta must equal 1, got {a * b!r}")

    @classmethod
    def from_alpha(cls, alpha: float) -> "AmplificationPoint":
        return cls(alpha, beta_from_alpha(alpha))

    @classmethod
    def from_beta(cls, beta: float) -> "AmplificationPoint":
        return cls(alpha_from_beta(beta), beta)


@dataclass(frozen=True)
class ThresholdConstant:
    """The optimal spending share and its gain; their product is exactly 1."""

    optimal_alpha: float = OPTIMAL_ALPHA
    optimal_beta: float = OPTIMAL_BETA

    def __post_init__(self):
        if self.optimal_alpha * self.optimal_beta != 1.0:
            raise DomainError("optimal_alpha * optimal_beta must equal 1 exactly")


#: The canonical AMMET threshold: spend a tenth, amplify by ten.
OPTIMAL_THRESHOLD = ThresholdConstant()


def equilibrium_income(c: float, i: float, g: float) -> float:
    """Aggregate income of an economy consuming c, investing i, spending g.

    The result together with the inputs forms a valid EconomicAccount.
    """
    c = require_non_negative("c", c)
    i = require_non_negative("i", i)
    g = require_non_negative("g", g)
    total = (c + i) + g
    if not math.isfinite(total):
        raise DomainError("income overflows the float range")
    return total


def beta_from_alpha(alpha: float) -> float:
    """Amplification factor 1/alpha for a government spending share alpha."""
    alpha = require_finite("alpha", alpha)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    return 1.0 / alpha


def alpha_from_beta(beta: float) -> float:
    """Spending share 1/beta; inverse of beta_from_alpha."""
    beta = require_finite("beta", beta)
    if beta < 1.0:
        raise DomainError(f"beta must be >= 1, got {beta!r}")
    return 1.0 / beta


def government_spending(alpha: float, gdp: float) -> float:
    """Spending level alpha * gdp for a share alpha of a given GDP.

    Unlike beta_from_alpha, alpha = 0 is allowed: zero intervention is a
    valid spending level even though its gain is undefined.
    """
    alpha = require_finite("alpha", alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    gdp = require_non_negative("gdp", gdp)
    return alpha * gdp


def investment_amplification(y: float, i: float) -> float:
    """Gain Y/I of income over the investment that produced it.

    This is the investment reading of the amplification factor; it is a
    different quantity from the spending-share gain 1/alpha and the two are
    never interchanged.
    """
    y = require_finite("y", y)
    i = require_finite("i", i)
    if y <= 0:
        raise DomainError(f"y must be > 0, got {y!r}")
    if i <= 0:
        raise DomainError(f"i must be > 0, got {i!r}")
    if i > y:
        raise DomainError(f"i must not exceed y, got i={i!r} > y={y!r}")
    return y / i


def whatif_account(gdp: float, alpha: float, consumption_share: float) -> EconomicAccount:
    """Hypothetical account: share alpha of gdp goes to government, and the
    private remainder splits into consumption_share consumption, rest
    investment.

    Investment is computed as remainder - consumption (algebraically equal
    to (1 - consumption_share) * remainder) and income as the sum of the
    three components, so the Y = C + I + G identity holds bit-exactly; the
    income equals gdp up to float rounding (exactly, for representable
    splits).
    """
    gdp = require_non_negative("gdp", gdp)
    consumption_share = require_finite("consumption_share", consumption_share)
    if not 0.0 <= consumption_share <= 1.0:
        raise DomainError(
            f"consumption_share must lie in [0, 1], got {consumption_share!r}"
        )
    g = government_spending(alpha, gdp)
    remainder = gdp - g
    c = consumption_share * remainder
    i = remainder - c
    return EconomicAccount(equilibrium_income(c, i, g), c, i, g)
