"""Forward/inverse maps between link parameters and the gain surface.

Physical configurations are reduced to the carrier-independent tuple
(fbar, rbar, dbar, lbar, theta) and further to the two gain-surface
coordinates (gamma1, gamma2).  Inverting a gain threshold through those
maps yields the design limits exposed here:

* :func:`product_max` -- largest |gamma1*gamma2| on the main-lobe
  superlevel set of the gain surface,
* :func:`aperture_bandwidth_bound` / :func:`bmax` -- the implied cap on
  bandwidth times aperture and the maximum usable bandwidth,
* :func:`band_distance` -- smallest range beyond which the gain stays
  above the threshold at a given frequency offset (diverges to the
  ``inf`` sentinel past the usable bandwidth),
* :func:`effective_rayleigh_distance` / :func:`fraunhofer_distance` --
  the classical narrowband boundaries recovered as special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import SPEED_OF_LIGHT_M_S
from .fresnel import GammaPair, gain_closed_form, gain_narrowband

__all__ = [
    "Regime",
    "ThresholdSpec",
    "NoCrossingError",
    "gamma_from_regime",
    "fbar_from_gamma",
    "rbar_from_gamma",
    "product_max",
    "main_lobe_boundary",
    "aperture_bandwidth_bound",
    "bmax",
    "band_distance",
    "effective_rayleigh_distance",
    "fraunhofer_distance",
]

# Linear gain level defining the effective Rayleigh distance, and the
# associated boundary coefficient 1/(4 gamma2^2) at that level.
RAYLEIGH_GAIN_LINEAR = 0.95
RAYLEIGH_COEFF = 0.367


class NoCrossingError(RuntimeError):
    """A threshold inversion found no crossing inside its search window."""


@dataclass(frozen=True)
class Regime:
    """Normalized, carrier-independent description of a link geometry.

    fbar = f / f_c, rbar = r / lambda_c, dbar = d / lambda_c,
    lbar = N * dbar, theta_rad = incidence angle.
    """

    fbar: float
    rbar: float
    dbar: float
    lbar: float
    theta_rad: float

    def __post_init__(self):
        if not (1.0 + self.fbar > 0.0):
            raise ValueError("regime requires 1 + fbar > 0")
        if not (self.rbar > 0.0):
            raise ValueError("regime requires rbar > 0")
        if not (0.0 < self.dbar <= self.lbar):
            raise ValueError("regime requires lbar >= dbar > 0")
        if not (abs(self.theta_rad) < math.pi / 2):
            raise ValueError("regime requires |theta| < pi/2")


@dataclass(frozen=True)
class ThresholdSpec:
    """Gain threshold, stored in linear scale; tau_linear in (0, 1]."""

    tau_linear: float

    def __post_init__(self):
        if not (0.0 < self.tau_linear <= 1.0):
            raise ValueError("tau_linear must lie in (0, 1]")

    @property
    def tau_db(self) -> float:
        return 10.0 * math.log10(self.tau_linear)

    @classmethod
    def from_db(cls, tau_db: float) -> "ThresholdSpec":
        return cls(10.0 ** (tau_db / 10.0))


def gamma_from_regime(regime: Regime) -> GammaPair:
    """Map a normalized configuration to its gain-surface coordinates.

    gamma1 = -tan(theta) * fbar * sqrt(2 rbar / (1 + fbar))
    gamma2 = lbar * cos(theta) * sqrt((1 + fbar) / (2 rbar))
    """
    one_plus = 1.0 + regime.fbar
    if one_plus <= 0.0:
        raise ValueError("gamma map requires 1 + fbar > 0")
    g1 = -math.tan(regime.theta_rad) * regime.fbar * math.sqrt(2.0 * regime.rbar / one_plus)
    g2 = regime.lbar * math.cos(regime.theta_rad) * math.sqrt(one_plus / (2.0 * regime.rbar))
    return GammaPair(g1, g2)


def fbar_from_gamma(pair: GammaPair, lbar: float, theta_rad: float) -> float:
    """Recover the normalized frequency: fbar = -gamma1*gamma2 / (lbar sin theta).

    Singular at broadside (gamma1 is identically zero there, so fbar cannot
    be recovered); raises ``ValueError`` for theta = 0.
    """
    sin_t = math.sin(theta_rad)
    if sin_t == 0.0:
        raise ValueError("fbar is not recoverable at broadside (sin theta = 0)")
    if lbar <= 0.0:
        raise ValueError("lbar must be positive")
    return -pair.gamma1 * pair.gamma2 / (lbar * sin_t)


def rbar_from_gamma(fbar: float, gamma2: float, lbar: float, theta_rad: float) -> float:
    """Recover the normalized distance: rbar = lbar^2 cos^2(theta) (1+fbar) / (2 gamma2^2).

    gamma2 = 0 corresponds to infinite distance and returns the ``inf``
    sentinel rather than raising.
    """
    if gamma2 < 0.0:
        raise ValueError("gamma2 must be nonnegative")
    if gamma2 == 0.0:
        return math.inf
    cos_t = math.cos(theta_rad)
    return lbar * lbar * cos_t * cos_t * (1.0 + fbar) / (2.0 * gamma2 * gamma2)


# ---------------------------------------------------------------------------
# threshold inversion on the gain surface
# ---------------------------------------------------------------------------

_PRODUCT_STEP = 0.01
_PRODUCT_WINDOW = 4.0
_PRODUCT_LIMIT = 64.0


def _bisect_products(tau: float, g2: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        below = gain_closed_form(mid / g2, g2) < tau
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def _march_brackets(tau: float, g2: np.ndarray, p_start: float = 0.0):
    """March outward in p = gamma1*gamma2 until the gain first drops below tau.

    Returns (lo, hi) bracket arrays around the first crossing of each column.
    """
    lo = np.zeros_like(g2)
    hi = np.full_like(g2, np.nan)
    found = np.zeros(g2.shape, dtype=bool)
    p0 = p_start
    while not found.all():
        if p0 >= _PRODUCT_LIMIT:
            raise NoCrossingError(
                f"gain never crossed below tau={tau!r} within the product window"
            )
        p_grid = p0 + _PRODUCT_STEP * np.arange(1, int(_PRODUCT_WINDOW / _PRODUCT_STEP) + 1)
        open_g2 = g2[~found]
        gains = gain_closed_form(p_grid[None, :] / open_g2[:, None], open_g2[:, None])
        below = gains < tau
        hit = below.any(axis=1)
        first = below.argmax(axis=1)
        idx = np.flatnonzero(~found)
        sel = idx[hit]
        hi[sel] = p_grid[first[hit]]
        lo[sel] = p_grid[first[hit]] - _PRODUCT_STEP
        found[sel] = True
        p0 += _PRODUCT_WINDOW
    return lo, hi


def _first_crossing_products(tau: float, gamma2: np.ndarray) -> np.ndarray:
    """Boundary product gamma1*gamma2 per gamma2 column.

    For each gamma2 with on-axis gain above tau, marches outward in the
    product p = gamma1*gamma2 until the gain first drops below tau, then
    bisects the bracket.  Columns whose on-axis gain is already below tau
    (outside the main-lobe superlevel set) report 0.
    """
    g2 = np.asarray(gamma2, dtype=float)
    products = np.zeros_like(g2)
    alive = gain_narrowband(g2) >= tau
    if not alive.any():
        return products
    g2a = g2[alive]
    lo, hi = _march_brackets(tau, g2a)
    products[alive] = _bisect_products(tau, g2a, lo, hi)
    return products


def _first_crossing_at(tau: float, g2: float) -> float:
    """Scalar first-crossing product at one gamma2, via nested fine marches."""
    if float(gain_narrowband(g2)) < tau:
        return 0.0
    col = np.array([g2])
    lo, hi = _march_brackets(tau, col)
    lo_p, hi_p = float(lo[0]), float(hi[0])
    for _ in range(2):  # 0.01 / 4096^2 < 1e-9 resolution
        ps = np.linspace(lo_p, hi_p, 4097)
        below = gain_closed_form(ps[1:] / g2, g2) < tau
        j = int(below.argmax())
        hi_p = float(ps[j + 1])
        lo_p = float(ps[j])
    return 0.5 * (lo_p + hi_p)


@lru_cache(maxsize=4)
def _march_grid(grid_points: int, gamma2_lo: float, gamma2_hi: float):
    """Threshold-independent march table shared by all product_max calls."""
    g2 = np.geomspace(gamma2_lo, gamma2_hi, grid_points)
    p_grid = _PRODUCT_STEP * np.arange(1, int(_PRODUCT_WINDOW / _PRODUCT_STEP) + 1)
    gains = gain_closed_form(p_grid[None, :] / g2[:, None], g2[:, None])
    gains_nb = gain_narrowband(g2)
    gains.setflags(write=False)
    gains_nb.setflags(write=False)
    g2.setflags(write=False)
    p_grid.setflags(write=False)
    return g2, p_grid, gains, gains_nb


def main_lobe_boundary(tau_linear: float, gamma2: np.ndarray) -> np.ndarray:
    """First tau-crossing gamma1 >= 0 per gamma2 column.

    Traces the boundary of the main-lobe superlevel set; columns whose
    on-axis gain is already below tau return NaN (outside the region).
    """
    if not (0.0 < tau_linear < 1.0):
        raise ValueError("main_lobe_boundary requires a linear gain threshold in (0, 1)")
    g2 = np.asarray(gamma2, dtype=float)
    products = _first_crossing_products(tau_linear, g2)
    alive = gain_narrowband(g2) >= tau_linear
    out = np.full_like(g2, np.nan)
    out[alive] = products[alive] / g2[alive]
    return out


@lru_cache(maxsize=64)
def product_max(
    tau_linear: float,
    grid_points: int = 2048,
    gamma2_lo: float = 1e-3,
    gamma2_hi: float = 6.0,
) -> float:
    """Supremum of |gamma1*gamma2| over the main-lobe region with gain >= tau.

    Grid search over log-spaced gamma2 with a per-column first-crossing
    bisection, followed by a golden-section refinement of the maximizer.
    Deterministic for fixed grid settings.  Raises ``ValueError`` when the
    superlevel set is empty (tau >= 1) or tau is not a valid linear gain.
    """
    if not (0.0 < tau_linear < 1.0):
        raise ValueError("product_max requires a linear gain threshold in (0, 1)")
    g2_grid, p_grid, gains, gains_nb = _march_grid(grid_points, gamma2_lo, gamma2_hi)
    products = np.zeros_like(g2_grid)
    alive = gains_nb >= tau_linear
    if alive.any():
        below = gains[alive] < tau_linear
        hit = below.any(axis=1)
        first = below.argmax(axis=1)
        g2a = g2_grid[alive]
        lo = np.where(hit, p_grid[first] - _PRODUCT_STEP, np.nan)
        hi = np.where(hit, p_grid[first], np.nan)
        if not hit.all():
            # rare: crossing beyond the shared window; march those columns on
            lo_x, hi_x = _march_brackets(tau_linear, g2a[~hit], p_start=_PRODUCT_WINDOW)
            lo[~hit] = lo_x
            hi[~hit] = hi_x
        products[alive] = _bisect_products(tau_linear, g2a, lo, hi)
    i = int(products.argmax())
    best = float(products[i])

    # golden-section refinement of p*(gamma2) around the grid maximizer
    lo = g2_grid[max(i - 1, 0)]
    hi = g2_grid[min(i + 1, grid_points - 1)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0

    def at(g2: float) -> float:
        return _first_crossing_at(tau_linear, g2)

    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = at(c), at(d)
    for _ in range(40):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = at(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = at(d)
    return max(best, fc, fd)


def aperture_bandwidth_bound(tau_linear: float, theta_worst_rad: float) -> float:
    """Cap on bandwidth*aperture (Hz*m): |2 c [g1 g2]_max(tau) / sin(theta_worst)|.

    Broadside worst-case angle makes the bound vacuous and returns the
    ``inf`` sentinel.
    """
    sin_t = math.sin(theta_worst_rad)
    if sin_t == 0.0:
        return math.inf
    return abs(2.0 * SPEED_OF_LIGHT_M_S * product_max(tau_linear) / sin_t)


def bmax(aperture_m: float, tau_linear: float, theta_worst_rad: float) -> float:
    """Maximum usable bandwidth (Hz) for a fixed aperture at a gain threshold."""
    if aperture_m <= 0.0:
        raise ValueError("aperture must be positive")
    return aperture_bandwidth_bound(tau_linear, theta_worst_rad) / aperture_m


# ---------------------------------------------------------------------------
# frequency-selective near-field boundary
# ---------------------------------------------------------------------------

_BAND_POINTS_PER_DECADE = 64
_BAND_REL_TOL = 1e-6


def _gain_vs_rbar(rbar, fbar: float, lbar: float, theta_rad: float):
    """Gain at normalized distance rbar for a fixed frequency offset."""
    rbar = np.asarray(rbar, dtype=float)
    one_plus = 1.0 + fbar
    g2 = lbar * math.cos(theta_rad) * np.sqrt(one_plus / (2.0 * rbar))
    g1 = -fbar * lbar * math.sin(theta_rad) / g2
    return gain_closed_form(g1, g2)


def band_distance(
    f_hz: float,
    fc_hz: float,
    tau_linear: float,
    aperture_m: float,
    theta_rad: float,
) -> float:
    """Smallest distance (m) beyond which the gain stays >= tau at offset f.

    Scans log-spaced distances from the Fresnel-region floor up to 1e6x
    the Fraunhofer distance, locates the largest down-crossing of tau and
    refines it by bisection to a relative tolerance of 1e-6.  Returns the
    ``inf`` sentinel when no finite distance qualifies (the offset exceeds
    the usable bandwidth, where the large-distance gain limit falls below
    tau).  If the gain already holds above tau over the whole scanned
    range, the scan floor is returned.
    """
    if fc_hz <= 0.0 or aperture_m <= 0.0:
        raise ValueError("carrier and aperture must be positive")
    if not (abs(theta_rad) < math.pi / 2):
        raise ValueError("band_distance requires |theta| < pi/2")
    fbar = f_hz / fc_hz
    if 1.0 + fbar <= 0.0:
        raise ValueError("band_distance requires 1 + f/fc > 0")
    if not (0.0 < tau_linear < 1.0):
        raise ValueError("band_distance requires a linear gain threshold in (0, 1)")

    lam = SPEED_OF_LIGHT_M_S / fc_hz
    lbar = aperture_m / lam
    r_lo = max(0.5 * math.sqrt(aperture_m**3 / lam), 1e-3 * lam * lbar * lbar)
    r_hi = 1e6 * (2.0 * lbar * lbar * lam)

    if float(_gain_vs_rbar(r_hi / lam, fbar, lbar, theta_rad)) < tau_linear:
        return math.inf

    decades = math.log10(r_hi / r_lo)
    n = max(int(math.ceil(decades * _BAND_POINTS_PER_DECADE)), 2) + 1
    rbars = np.geomspace(r_lo / lam, r_hi / lam, n)
    gains = _gain_vs_rbar(rbars, fbar, lbar, theta_rad)
    below = gains < tau_linear
    if not below.any():
        return r_lo
    i = int(np.flatnonzero(below)[-1])

    lo, hi = float(rbars[i]), float(rbars[i + 1])
    while (hi - lo) > _BAND_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if float(_gain_vs_rbar(mid, fbar, lbar, theta_rad)) < tau_linear:
            lo = mid
        else:
            hi = mid
    return hi * lam


def effective_rayleigh_distance(theta_rad: float, lbar: float, wavelength_m: float) -> float:
    """Angle-dependent near-field boundary at the 0.95 linear gain level:
    0.367 * cos^2(theta) * 2 * lbar^2 * lambda_c."""
    cos_t = math.cos(theta_rad)
    return RAYLEIGH_COEFF * cos_t * cos_t * (2.0 * lbar * lbar * wavelength_m)


def fraunhofer_distance(lbar: float, wavelength_m: float) -> float:
    """Classical far-field boundary 2 * lbar^2 * lambda_c (= 2 L^2 / lambda)."""
    return 2.0 * lbar * lbar * wavelength_m
