"""Independent bisection oracle for the amplifier-stage bias point.

Solves the same base-loop equation the package's Newton solver targets,

    (V_CC - v) / R_B = I_S * (exp(v / V_T) - 1),

but by plain interval bisection on [0, V_CC] down to a 1e-12 V bracket
(midpoint error <= 5e-13 V) and via expm1 rather than exp, so the float
path differs from the implementation under test.
"""

import math


def bisect_v_be(vcc: float, rb: float, i_s: float, vt: float,
                width: float = 1e-12) -> float:
    def residual(v: float) -> float:
        return (vcc - v) / rb - i_s * math.expm1(v / vt)

    lo, hi = 0.0, vcc
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# Reference circuit: V_CC=10 V, R_B=1e6, R_C=1e3, I_S=1e-14 A, V_T=0.02585 V,
# device W/L_B=0.1 with injection efficiency 0.995. Values frozen from this
# oracle (bisection to 1e-12 V) before the solver was written.
REFERENCE_V_BE = 0.5342770519209239
REFERENCE_I_B = 9.465722948079075e-06

# Ideal gain for W/L_B=0.1, gamma=0.995, evaluated with 50-digit arithmetic
# (sech and the alpha/(1-alpha) ratio in mpmath): 99.45854512337809920897...
REFERENCE_IDEAL_GAIN = 99.45854512337810
