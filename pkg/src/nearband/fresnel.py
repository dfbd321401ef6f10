"""Fresnel integrals and the closed-form beamforming-gain surface.

The cosine and sine Fresnel integrals used throughout the package follow
the normalized convention

    C(x) = int_0^x cos(pi t^2 / 2) dt,      S(x) = int_0^x sin(pi t^2 / 2) dt.

Evaluation is piecewise, tuned so the absolute error stays well below
1e-9 everywhere (in practice ~1e-15):

* ``|x| <= 1.6``   -- Maclaurin series in x^4 (no cancellation this low).
* ``1.6 < |x| <= 6`` -- Chebyshev fits of the auxiliary functions f, g of
  Abramowitz & Stegun 7.3.9-7.3.10 in the variable 1/x^2; the frozen
  coefficient tables are produced by ``scripts/gen_fresnel_coeffs.py``
  and validated against the quadrature oracle in the test suite.
* ``6 < |x| < 1e10`` -- alternating asymptotic series for f, g.  The
  oscillatory phase pi x^2 / 2 is reduced exactly (x^2 mod 4 via a
  Dekker split) so large arguments do not lose phase accuracy.
* ``|x| >= 1e10``  -- C, S = +/-0.5; the neglected terms are < 4e-11.

Both integrals are odd; negative arguments are folded by sign so the
identities C(-x) = -C(x), S(-x) = -S(x) hold bit-exactly.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "GammaPair",
    "fresnel_c",
    "fresnel_s",
    "fresnel_cs",
    "gain_closed_form",
    "gain_narrowband",
    "to_db",
    "SMALL_GAMMA2_CUTOFF",
]

# Branch boundaries of the piecewise evaluation.
_SERIES_MAX = 1.6
_AUX_MAX = 6.0
_HUGE = 1e10

# gain_closed_form switches to its gamma2 -> 0 limit when 2*gamma2 falls
# below this; the difference quotient of C, S cancels catastrophically there.
SMALL_GAMMA2_CUTOFF = 1e-6


class GammaPair(NamedTuple):
    """Point in the squint/curvature parameter plane.

    ``gamma1`` measures wideband (beam-squint) severity, ``gamma2`` near-field
    (wavefront-curvature) severity; ``gamma2`` is nonnegative by convention.
    """

    gamma1: float
    gamma2: float


def _series_coeffs(n_terms: int) -> tuple[np.ndarray, np.ndarray]:
    # C(x) = x * sum c_k x^(4k),  S(x) = x^3 * sum s_k x^(4k)
    half_pi = np.pi / 2.0
    c = np.empty(n_terms)
    s = np.empty(n_terms)
    a = 1.0  # (pi/2)^(2k) / (2k)!
    b = half_pi  # (pi/2)^(2k+1) / (2k+1)!
    for k in range(n_terms):
        if k:
            a *= -(half_pi * half_pi) / ((2 * k - 1) * (2 * k))
            b *= -(half_pi * half_pi) / ((2 * k) * (2 * k + 1))
        c[k] = a / (4 * k + 1)
        s[k] = b / (4 * k + 3)
    return c, s


_SER_C, _SER_S = _series_coeffs(20)

# Chebyshev tables for pi*x*f(x) and pi*x*g(x) on s = 1/x^2 over
# [1/36, 1/2.56]; generated by scripts/gen_fresnel_coeffs.py (fit residual
# below 1e-21).
_CHEB_S_LO = 1.0 / 36.0
_CHEB_S_HI = 1.0 / 2.56
_CHEB_F = np.array([
    1.9711807255867812736,
    -0.017222346270974770319,
    -0.0026535320618112425928,
    0.00037944103399960959495,
    -0.000019263623988187161462,
    -3.9616606914235523815e-6,
    1.4123023494501871801e-6,
    -2.4230594010772145644e-7,
    1.7073759508429559134e-8,
    5.1377394297968850179e-9,
    -2.6306409706106438032e-9,
    7.0100174844237974237e-10,
    -1.2140807358861309683e-10,
    5.9300942957764880400e-12,
    5.6126706080129869009e-12,
    -2.9412562646902639023e-12,
    9.4510626939594286871e-13,
    -2.2169763940833243219e-13,
    3.1764143912711854270e-14,
    2.8466103390794664597e-15,
    -4.2885872798692125725e-15,
    2.0136022811282141002e-15,
    -6.8495393357694101233e-16,
    1.8215840759545928729e-16,
    -3.3889254934015918349e-17,
    6.8807687913419998805e-19,
    3.1582887892147906292e-18,
    -1.9336176132849299457e-18,
    8.0810516480878626420e-19,
    -2.7245945035932559879e-19,
    7.4692823531881307135e-20,
    -1.4636980066508329472e-20,
])
_CHEB_G = np.array([
    0.12072648539345669028,
    0.049114576583604600106,
    -0.0025723884872101091969,
    -0.000099002765876068458726,
    0.000048944184447983016010,
    -7.2507272687716054811e-6,
    3.5812461888962531013e-7,
    1.4218422333657126253e-7,
    -5.5640385858776162176e-8,
    1.1716367516513190547e-8,
    -1.3492333016468426663e-9,
    -1.3161251561646544539e-10,
    1.3105091139483043611e-10,
    -4.5867405110618196141e-11,
    1.0979884011487255579e-11,
    -1.6572218399935277094e-12,
    -5.4290083608461801955e-14,
    1.5638759774328269779e-13,
    -7.2684604615650783451e-14,
    2.3449564291860841739e-14,
    -5.7272243344698489406e-15,
    8.9030202611022593361e-16,
    5.8979332759666946416e-17,
    -1.1910684478787721470e-16,
    6.1011812565758854127e-17,
    -2.2642065437764770939e-17,
    6.7325733067672174717e-18,
    -1.5332185473056776979e-18,
    1.7694818981667985523e-19,
    6.4570672007587765468e-20,
    -5.9745775176807399702e-20,
    2.9530333004505092081e-20,
    -1.1446645372493829084e-20,
])

# Asymptotic auxiliary series, signed coefficients of w = (pi x^2)^-2:
#   pi x f(x) = 1 - 3 w + 105 w^2 - ...          ((4k-1)!! alternating)
#   pi x g(x) = (1 - 15 w + 945 w^2 - ...) / (pi x^2)   ((4k+1)!!)
_ASYM_F = np.array([
    1.0, -3.0, 105.0, -10395.0, 2027025.0,
    -654729075.0, 316234143225.0, -213458046676875.0,
])
_ASYM_G = np.array([
    1.0, -15.0, 945.0, -135135.0, 34459425.0,
    -13749310575.0, 7905853580625.0, -6190283353629375.0,
])


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _clenshaw(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    b0 = np.zeros_like(t)
    b1 = np.zeros_like(t)
    for c in coeffs[:0:-1]:
        b0, b1 = 2.0 * t * b0 - b1 + c, b0
    return t * b0 - b1 + 0.5 * coeffs[0]


def _quarter_phase(x: np.ndarray) -> np.ndarray:
    # x^2 mod 4, exact: Dekker split keeps every partial product representable.
    c = 134217729.0 * x  # 2**27 + 1
    hi = c - (c - x)
    lo = x - hi
    return np.fmod(
        np.fmod(hi * hi, 4.0) + np.fmod(2.0 * hi * lo, 4.0) + np.fmod(lo * lo, 4.0),
        4.0,
    )


def _fresnel_cs_positive(ax: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """C(ax), S(ax) for nonnegative arguments."""
    c_out = np.empty_like(ax)
    s_out = np.empty_like(ax)

    small = ax <= _SERIES_MAX
    if small.any():
        x = ax[small]
        z = x ** 4
        c_out[small] = x * _horner(_SER_C, z)
        s_out[small] = x ** 3 * _horner(_SER_S, z)

    mid = (~small) & (ax <= _AUX_MAX)
    large = (~small) & (~mid) & (ax < _HUGE)
    for mask, via_cheb in ((mid, True), (large, False)):
        if not mask.any():
            continue
        x = ax[mask]
        pix = np.pi * x
        if via_cheb:
            s_var = 1.0 / (x * x)
            t = (2.0 * s_var - (_CHEB_S_LO + _CHEB_S_HI)) / (_CHEB_S_HI - _CHEB_S_LO)
            f = _clenshaw(_CHEB_F, t) / pix
            g = _clenshaw(_CHEB_G, t) / pix
            u = 0.5 * np.pi * x * x
        else:
            pix2 = pix * x
            w = 1.0 / (pix2 * pix2)
            f = _horner(_ASYM_F, w) / pix
            g = _horner(_ASYM_G, w) / (pix * pix2)
            u = 0.5 * np.pi * _quarter_phase(x)
        sn, cs = np.sin(u), np.cos(u)
        c_out[mask] = 0.5 + f * sn - g * cs
        s_out[mask] = 0.5 - f * cs - g * sn

    huge = ax >= _HUGE
    if huge.any():
        c_out[huge] = 0.5
        s_out[huge] = 0.5
    return c_out, s_out


def fresnel_cs(x):
    """Both Fresnel integrals ``(C(x), S(x))`` in one pass.

    Accepts a scalar or an ndarray; raises ``ValueError`` for non-finite
    input.  Scalars come back as plain floats.
    """
    arr = np.asarray(x, dtype=float)
    if not np.isfinite(arr).all():
        raise ValueError("fresnel integrals require finite arguments")
    sign = np.sign(arr)
    c, s = _fresnel_cs_positive(np.abs(arr))
    c *= sign
    s *= sign
    if arr.ndim == 0:
        return float(c), float(s)
    return c, s


def fresnel_c(x):
    """Cosine Fresnel integral C(x) = int_0^x cos(pi t^2/2) dt; odd in x."""
    return fresnel_cs(x)[0]


def fresnel_s(x):
    """Sine Fresnel integral S(x) = int_0^x sin(pi t^2/2) dt; odd in x."""
    return fresnel_cs(x)[1]


def gain_closed_form(gamma1, gamma2):
    """Normalized beamforming gain surface over the (gamma1, gamma2) plane.

        G = | [C(g1+g2) - C(g1-g2)] + j [S(g1+g2) - S(g1-g2)] | / (2 g2)

    The value lies in [0, 1] (1 = no mismatch loss) and is even in gamma1.
    When ``2*gamma2 < SMALL_GAMMA2_CUTOFF`` the difference quotient is
    replaced by its analytic gamma2 -> 0 limit, which is exactly 1 since
    |C'(g1) + j S'(g1)| = |exp(j pi g1^2 / 2)|.

    Raises ``ValueError`` for negative gamma2 or non-finite input.
    """
    g1 = np.asarray(gamma1, dtype=float)
    g2 = np.asarray(gamma2, dtype=float)
    if not (np.isfinite(g1).all() and np.isfinite(g2).all()):
        raise ValueError("gain_closed_form requires finite gamma1, gamma2")
    if (g2 < 0).any():
        raise ValueError("gamma2 must be nonnegative")

    g1, g2 = np.broadcast_arrays(g1, g2)
    out = np.ones(g1.shape)
    regular = 2.0 * g2 >= SMALL_GAMMA2_CUTOFF
    if regular.any():
        a1, a2 = g1[regular], g2[regular]
        c_hi, s_hi = fresnel_cs(a1 + a2)
        c_lo, s_lo = fresnel_cs(a1 - a2)
        out[regular] = np.hypot(c_hi - c_lo, s_hi - s_lo) / (2.0 * a2)
    if out.ndim == 0:
        return float(out)
    return out


def gain_narrowband(gamma2):
    """Near-field narrowband gain |C(g2) + j S(g2)| / g2.

    Defined as the gamma1 = 0 cut of :func:`gain_closed_form` (and computed
    through it, so the identity is exact by construction); the limit at
    gamma2 = 0 is 1.
    """
    return gain_closed_form(0.0, gamma2)


def to_db(value):
    """Convert a linear amplitude-gain ratio to decibels via 10*log10.

    A value of exactly 0 maps to the ``-inf`` sentinel; negative values are
    rejected.  This 10*log10 convention is what makes a 0.95 linear gain
    correspond to the -0.22 dB threshold used by the distance metrics.
    """
    arr = np.asarray(value, dtype=float)
    if np.isnan(arr).any() or (arr < 0).any():
        raise ValueError("to_db requires nonnegative, non-NaN input")
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(arr)
    if arr.ndim == 0:
        return float(out)
    return out
