"""Array-geometry optimization under an element budget and an EIRP cap.

For N elements and spreads (asd, zsd) both positive, the effective
beamwidth product is bounded below by AM-GM:

    bw_v * bw_h >= asd * zsd + bw_elev * bw_azim / N

with equality exactly when the nominal beam matches the channel,
bw_azim0 / bw_elev0 = asd / zsd.  That gives a closed-form real-valued
optimum (rows grow with the azimuth spread: widening in azimuth is
inevitable, so elements are better spent narrowing elevation) plus a
gain ceiling no geometry can beat.  The integer winner is then found by
an O(N) exhaustive scan, which also covers the degenerate zero-spread
cases the closed form cannot.

EIRP sizing inverts the regulatory cap EIRP = P_t + G_e + 20 log10(n)
for the largest compliant element count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .beam import (
    AngularSpread,
    ArrayGeometry,
    ElementPattern,
    GainReport,
    _upper_bound,
    effective_gain,
    effective_gain_value,
)
from .errors import DegenerateSpreadError, EirpTooLowError

_REL_TOL = 1e-12


@dataclass(frozen=True)
class ContinuousGeometry:
    """Real-valued optimizer output before integer refinement.

    rows_real * cols_real equals the element budget it was solved for;
    the integer scan decides how to spend the fractional parts.
    """

    rows_real: float
    cols_real: float

    def __post_init__(self) -> None:
        for name, value in (("rows_real", self.rows_real), ("cols_real", self.cols_real)):
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def n_elements(self) -> float:
        return self.rows_real * self.cols_real


@dataclass(frozen=True)
class OptimizationResult:
    """Scan winner with its gain report, the budget-level bound, and the
    continuous solution when one exists (None when a spread is zero)."""

    continuous: ContinuousGeometry | None
    integer_best: ArrayGeometry
    integer_gain: GainReport
    bound_gain_linear: float

    def __post_init__(self) -> None:
        if self.integer_gain.effective_gain_linear > self.bound_gain_linear * (1.0 + _REL_TOL):
            raise ValueError("integer-geometry gain exceeds the budget-level bound")


def gain_upper_bound(
    n_elements: int, element: ElementPattern, spread: AngularSpread
) -> float:
    """Best effective gain any geometry within the element budget can reach.

    Parameters
    ----------
    n_elements : int
        Element budget N, >= 1.  Geometries may underfill it.
    element : ElementPattern
    spread : AngularSpread

    Returns
    -------
    float
        2 / (asd * zsd + bw_elev * bw_azim / N), linear.  At zero spread
        this collapses to N times the element gain.
    """
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1, got {n_elements!r}")
    return _upper_bound(n_elements, element, spread)


def optimal_geometry_continuous(
    n_elements: int, element: ElementPattern, spread: AngularSpread
) -> ContinuousGeometry:
    """Closed-form real-valued geometry attaining the gain bound.

    rows = sqrt(N * bw_elev * asd / (bw_azim * zsd)) and cols = N / rows,
    which makes the nominal beamwidth ratio equal the spread ratio.

    Raises
    ------
    DegenerateSpreadError
        If either spread component is zero; the matching condition has
        no finite solution there.  Use :func:`optimal_geometry_integer`,
        whose scan handles the degenerate axis naturally.
    """
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1, got {n_elements!r}")
    if spread.asd_rad == 0.0 or spread.zsd_rad == 0.0:
        raise DegenerateSpreadError(
            "degenerate spread: closed-form geometry needs both spreads > 0"
        )
    rows = math.sqrt(
        n_elements * element.bw_elev_rad * spread.asd_rad
        / (element.bw_azim_rad * spread.zsd_rad)
    )
    return ContinuousGeometry(rows_real=rows, cols_real=n_elements / rows)


def _scan_candidates(n_elements: int) -> Iterable[ArrayGeometry]:
    # cols from 1 to N, rows = floor(N / cols). Any smaller row count is
    # dominated: gain is strictly increasing in rows at fixed cols.
    for cols in range(1, n_elements + 1):
        yield ArrayGeometry(rows=n_elements // cols, cols=cols)


def optimal_geometry_integer(
    n_elements: int,
    element: ElementPattern,
    spread: AngularSpread,
    allowed_geometries: Sequence[ArrayGeometry] | None = None,
) -> OptimizationResult:
    """Exhaustive integer optimization of rows x cols within the budget.

    Scans cols in [1, N] with rows = floor(N / cols); near-ties (1e-12
    relative) resolve toward the taller array, so zero spread returns
    (N, 1) deterministically.

    Parameters
    ----------
    n_elements : int
        Element budget N, >= 1.
    element : ElementPattern
    spread : AngularSpread
    allowed_geometries : sequence of ArrayGeometry, optional
        Restrict the scan to these candidates (feed-network or form
        factor constraints).  Each must fit the budget.

    Returns
    -------
    OptimizationResult
        The winner, its gain report, the budget-level bound, and the
        continuous solution (None when either spread is zero).
    """
    if n_elements < 1:
        raise ValueError(f"n_elements must be >= 1, got {n_elements!r}")
    if allowed_geometries is None:
        candidates: Iterable[ArrayGeometry] = _scan_candidates(n_elements)
    else:
        if not allowed_geometries:
            raise ValueError("allowed_geometries is empty")
        for geom in allowed_geometries:
            if geom.n_elements > n_elements:
                raise ValueError(
                    f"geometry {geom.rows}x{geom.cols} exceeds the element budget {n_elements}"
                )
        candidates = allowed_geometries

    best_geom: ArrayGeometry | None = None
    best_gain = -math.inf
    for geom in candidates:
        gain = effective_gain_value(element, geom.rows, geom.cols, spread)
        if best_geom is None or gain > best_gain * (1.0 + _REL_TOL):
            best_geom, best_gain = geom, gain
        elif gain >= best_gain * (1.0 - _REL_TOL) and geom.rows > best_geom.rows:
            best_geom, best_gain = geom, gain
    assert best_geom is not None

    if spread.asd_rad > 0.0 and spread.zsd_rad > 0.0:
        continuous = optimal_geometry_continuous(n_elements, element, spread)
    else:
        continuous = None
    return OptimizationResult(
        continuous=continuous,
        integer_best=best_geom,
        integer_gain=effective_gain(element, best_geom, spread),
        bound_gain_linear=gain_upper_bound(n_elements, element, spread),
    )


def max_elements_for_eirp(
    eirp_dbm: float, per_element_power_dbm: float, element_gain_dbi: float
) -> int:
    """Largest element count keeping EIRP within a regulatory cap.

    EIRP of an n-element array is P_t + G_e + 20 log10(n) (coherent
    voltage sum), so n_max = floor(10^((EIRP - P_t - G_e) / 20)).

    Raises
    ------
    EirpTooLowError
        If even a single element would exceed the cap.
    """
    for name, value in (
        ("eirp_dbm", eirp_dbm),
        ("per_element_power_dbm", per_element_power_dbm),
        ("element_gain_dbi", element_gain_dbi),
    ):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    n = math.floor(10.0 ** ((eirp_dbm - per_element_power_dbm - element_gain_dbi) / 20.0))
    if n < 1:
        raise EirpTooLowError("EIRP below single-element emission")
    return n


def hybrid_gain(n_subpanels: int, subpanel_gain_linear: float) -> float:
    """Digitally combined gain of M identical analog sub-panels: M times each."""
    if not isinstance(n_subpanels, int) or isinstance(n_subpanels, bool) or n_subpanels < 1:
        raise ValueError(f"n_subpanels must be a positive integer, got {n_subpanels!r}")
    if not (math.isfinite(subpanel_gain_linear) and subpanel_gain_linear > 0.0):
        raise ValueError(
            f"subpanel_gain_linear must be finite and > 0, got {subpanel_gain_linear!r}"
        )
    return n_subpanels * subpanel_gain_linear
