"""Physical side of the amplifier analogy: a bipolar junction transistor.

The economy's government share maps onto the base current of a BJT in
common-emitter configuration: a thin base (small public sector) means little
recombination, a small base current, and a large current gain I_C/I_B.

The device model is deliberately minimal DC forward-active physics:

* base transport factor  alpha_T = sech(W / L_B)  (short-base diffusion),
* forward current gain   beta = gamma * alpha_T / (1 - gamma * alpha_T),
* base current           I_B = I_r + I_CBO  with constant leakage I_CBO,
* bias point of the one-transistor common-emitter stage from the base-loop
  diode equation, with collector current clamped at a fixed saturation
  headroom V_CE(sat).

No small-signal, temperature, or reverse-mode behavior is modeled.
All functions are pure; the solver keeps its state in locals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from ._validate import require_finite, require_non_negative, require_positive

#: Newton stops once the update falls below this (volts).
NEWTON_STEP_TOL = 1e-14
#: Iteration budget for the bias-point Newton loop.
NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class TransistorParams:
    """Device constants of the BJT.

    saturation_current  reverse saturation current of the base-emitter
                        junction (amperes)
    base_width          metallurgical base width W (meters)
    diffusion_length    minority-carrier diffusion length L_B in the base
    injection_efficiency  emitter injection efficiency gamma in (0, 1]
    thermal_voltage     kT/q (volts), 0.02585 at room temperature
    leakage_current     collector-base reverse leakage I_CBO (amperes)
    vce_saturation      collector-emitter voltage floor in saturation
    """

    saturation_current: float
    base_width: float
    diffusion_length: float
    injection_efficiency: float
    thermal_voltage: float = 0.02585
    leakage_current: float = 0.0
    vce_saturation: float = 0.2

    def __post_init__(self):
        require_positive("saturation_current", self.saturation_current)
        require_positive("base_width", self.base_width)
        require_positive("diffusion_length", self.diffusion_length)
        gamma = require_positive("injection_efficiency", self.injection_efficiency)
        if gamma > 1.0:
            raise DomainError(f"injection_efficiency must be <= 1, got {gamma!r}")
        require_positive("thermal_voltage", self.thermal_voltage)
        require_non_negative("leakage_current", self.leakage_current)
        require_non_negative("vce_saturation", self.vce_saturation)
        if self.forward_alpha >= 1.0:
            raise DomainError(
                "injection_efficiency * sech(W/L_B) must stay below 1 "
                "(gain would be unbounded)"
            )

    @property
    def transport_factor(self) -> float:
        """Base transport factor sech(W / L_B)."""
        return 1.0 / math.cosh(self.base_width / self.diffusion_length)

    @property
    def forward_alpha(self) -> float:
        """Common-base forward gain gamma * sech(W / L_B)."""
        return self.injection_efficiency * self.transport_factor


@dataclass(frozen=True)
class BiasCircuit:
    """Single-stage common-emitter bias network: V_CC through R_B and R_C."""

    supply_voltage: float
    base_resistor: float
    collector_resistor: float

    def __post_init__(self):
        require_non_negative("supply_voltage", self.supply_voltage)
        require_positive("base_resistor", self.base_resistor)
        require_positive("collector_resistor", self.collector_resistor)


@dataclass(frozen=True)
class OperatingPoint:
    """DC solution of the stage: (V_BE, I_B, I_C, V_CE) plus a clamp flag."""

    v_be: float
    i_b: float
    i_c: float
    v_ce: float
    saturated: bool

    def __post_init__(self):
        require_non_negative("i_b", self.i_b)
        require_non_negative("i_c", self.i_c)


def current_gain(i_c: float, i_b: float) -> float:
    """Common-emitter current gain I_C / I_B."""
    i_c = require_non_negative("i_c", i_c)
    i_b = require_finite("i_b", i_b)
    if i_b <= 0:
        raise DomainError(f"i_b must be > 0, got {i_b!r}")
    return i_c / i_b


def base_current(i_r: float, i_cbo: float) -> float:
    """Base current as recombination current plus constant leakage."""
    i_r = require_non_negative("i_r", i_r)
    i_cbo = require_non_negative("i_cbo", i_cbo)
    return i_r + i_cbo


def gain_from_base_width(params: TransistorParams) -> float:
    """Ideal forward gain of the device; strictly decreasing in base width.

    Thinning the base raises sech(W/L_B) toward 1, shrinking the
    recombination share of the base current and boosting the gain -- the
    device-side image of shrinking the public sector.
    """
    alpha_f = params.forward_alpha
    if alpha_f >= 1.0:
        raise DomainError("forward alpha >= 1: gain unbounded")
    return alpha_f / (1.0 - alpha_f)


def effective_gain_with_leakage(i_c: float, beta_ideal: float, i_cbo: float) -> float:
    """Realized gain I_C / (I_C/beta_ideal + I_CBO).

    Equals beta_ideal exactly when the leakage is zero (the denominator
    collapses to the recombination current alone) and is strictly smaller
    otherwise; grows toward beta_ideal as I_C dominates the leakage.
    """
    i_c = require_positive("i_c", i_c)
    beta_ideal = require_positive("beta_ideal", beta_ideal)
    i_cbo = require_non_negative("i_cbo", i_cbo)
    if i_cbo == 0.0:
        return beta_ideal
    return i_c / (i_c / beta_ideal + i_cbo)


def _newton_v_be(vcc: float, rb: float, i_s: float, vt: float,
                 max_iter: int = NEWTON_MAX_ITER) -> float:
    """Solve (V_CC - v)/R_B = I_S * (exp(v/V_T) - 1) for v on [0, V_CC].

    Start at v0 = V_T * ln(V_CC/(R_B*I_S) + 1) clamped into [0, V_CC]; there
    f <= 0, and f is concave and strictly decreasing, so Newton descends
    monotonically onto the root (no exp overflow: iterates never exceed v0).
    """
    v = vt * math.log(vcc / (rb * i_s) + 1.0)
    v = min(max(v, 0.0), vcc)
    for _ in range(max_iter):
        ex = math.exp(v / vt)
        f = (vcc - v) / rb - i_s * (ex - 1.0)
        fprime = -1.0 / rb - (i_s / vt) * ex
        step = f / fprime
        v -= step
        if abs(step) < NEWTON_STEP_TOL:
            return v
    raise ConvergenceError(
        f"bias-point Newton did not converge within {max_iter} iterations"
    )


def solve_bias_point(circuit: BiasCircuit, params: TransistorParams) -> OperatingPoint:
    """DC operating point of the common-emitter stage.

    The base loop fixes V_BE by Newton iteration on the diode equation; the
    base current is read off the resistor side, so the Kirchhoff residual
    (V_CC - V_BE)/R_B - I_B is zero by construction. The collector current
    beta * I_B is clamped at (V_CC - V_CE(sat))/R_C, with the flag set and
    V_CE pinned at the saturation floor when the clamp engages.

    Raises ConvergenceError if Newton exhausts its iteration budget (never
    silently returns a stale iterate).
    """
    vcc = circuit.supply_voltage
    rb = circuit.base_resistor
    rc = circuit.collector_resistor
    if vcc == 0.0:
        return OperatingPoint(v_be=0.0, i_b=0.0, i_c=0.0, v_ce=0.0, saturated=False)

    v_be = _newton_v_be(vcc, rb, params.saturation_current, params.thermal_voltage)
    i_b = (vcc - v_be) / rb
    beta = gain_from_base_width(params)

    sat_limit = max(0.0, (vcc - params.vce_saturation) / rc)
    i_c = beta * i_b
    if i_c > sat_limit:
        i_c = sat_limit
        v_ce = params.vce_saturation if sat_limit > 0.0 else vcc
        saturated = True
    else:
        v_ce = vcc - i_c * rc
        saturated = False
    return OperatingPoint(v_be=v_be, i_b=i_b, i_c=i_c, v_ce=v_ce, saturated=saturated)
