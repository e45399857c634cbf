"""Mixed-economy amplifier toolkit.

Models a mixed economy as an amplifier: the government spending share
alpha = G/GDP plays the role of a transistor's base-current fraction, and
the economy's amplification factor is beta = 1/alpha. The package carries
the equilibrium/amplifier algebra, the physical transistor analog with a
DC bias-point solver, the AMMET region classifier, World Bank indicator
ingestion (bulk CSV and live API), and table/curve/scatter reporting.
"""

from .errors import (
    AmmetError,
    ApiStatusError,
    ConvergenceError,
    DomainError,
    IndicatorMismatchError,
    ParseError,
    PayloadError,
    TransportError,
    UsageError,
    WorldBankApiError,
)
from .model import (
    OPTIMAL_ALPHA,
    OPTIMAL_BETA,
    OPTIMAL_THRESHOLD,
    AmplificationPoint,
    EconomicAccount,
    ThresholdConstant,
    alpha_from_beta,
    beta_from_alpha,
    equilibrium_income,
    government_spending,
    investment_amplification,
    whatif_account,
)
from .regions import (
    ClassificationResult,
    ClassifiedRecord,
    Region,
    classify_alpha,
    classify_records,
)
from .report import (
    CurveSeries,
    curve_points,
    emit_curve,
    emit_table,
    parse_table,
    render_scatter_svg,
)
from .transistor import (
    BiasCircuit,
    OperatingPoint,
    TransistorParams,
    base_current,
    current_gain,
    effective_gain_with_leakage,
    gain_from_base_width,
    solve_bias_point,
)
from .worldbank import (
    AGGREGATE_CODES,
    INDICATOR_CODE,
    AmplificationRow,
    CountryRecord,
    build_amplification_table,
    default_fixture_path,
    fetch_indicator,
    load_worldbank_csv,
    parse_worldbank_csv,
    to_alpha,
)

__version__ = "0.1.0"
