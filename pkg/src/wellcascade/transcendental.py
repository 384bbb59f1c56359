"""Boundary-matching functions of the asymmetric double square well.

For a :class:`~wellcascade.potential.WellPair` the bound-state energies in
(0, v_deep) are the roots of ``lhs(E) = rhs(E)``, where both sides follow
from matching the piecewise wavefunction and its derivative at the two
barrier edges.  Two regimes exist, selected by the sign of the squared
wavenumber in the shallow-well region:

* regime A (``E < v_deep - v_shallow``): the shallow region is evanescent,
  ``lhs = (beta + k1*coth(k1*a)) * exp(beta*(L-a)) / (beta - k1*coth(k1*a))``
* regime B (``E > v_deep - v_shallow``): the shallow region oscillates,
  ``lhs = (beta + k1*cot(k1*a)) * exp(beta*(L-a)) / (beta - k1*cot(k1*a))``

with ``rhs = (beta - k2*cot(k2*a)) * exp(-beta*(L-a)) / (beta + k2*cot(k2*a))``
in both regimes.  Here ``a`` is the well width, ``L`` the center distance,
``k1`` the shallow-region wavenumber, ``k2`` the deep-region wavenumber and
``beta`` the barrier decay rate.  The boundary energy itself is assigned to
regime B (measure-zero tie-break, documented for determinism).

Numerical notes
---------------
* Reported ``lhs``/``rhs`` carry a common positive factor ``exp(-beta*(L-a))``
  so magnitudes stay near unity; a positive common factor cannot move roots.
  Inside each side the ratio is evaluated with numerator and denominator
  normalised by the same positive quantity (``exp(k1*a)`` in regime A,
  ``sin`` instead of ``cot`` in the trigonometric parts), again value
  preserving.
* Both sides have poles where their denominators vanish.  A point is flagged
  as a pole when the denominator magnitude drops below ``1e-12`` of the
  numerator scale; flagged evaluations report NaN instead of a number.
* Deep-well-dominated eigenvalues lie exponentially close to poles of
  ``rhs`` (within ~1e-13 eV for the reference geometry), so root finding
  never uses the raw mismatch.  :func:`characteristic` returns the
  denominator-cleared form ``Nl*Dr - Nr*Dl``, which has the same roots, no
  poles, and a well-conditioned sign everywhere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .potential import WellPair
from .quantities import CODATA2018, PhysicalConstants

__all__ = [
    "Regime",
    "WavenumberSet",
    "MatchPoint",
    "GridScan",
    "classify_regime",
    "wavenumbers",
    "evaluate",
    "lhs",
    "rhs",
    "mismatch",
    "characteristic",
    "grid_scan",
]

POLE_RTOL = 1e-12


class Regime(str, enum.Enum):
    """Energy regime of the shallow-well region."""

    A = "A"  # below the shallow-well floor: evanescent
    B = "B"  # above the shallow-well floor: oscillatory

    def __str__(self) -> str:  # CSV/JSON friendly
        return self.value


@dataclass(frozen=True)
class WavenumberSet:
    """Region wavenumbers at one energy (1/Angstrom)."""

    k1: float
    beta: float
    k2: float
    regime: Regime


def _check_energy(pair: WellPair, energy_ev: float) -> None:
    if not (math.isfinite(energy_ev) and 0.0 < energy_ev < pair.v_deep):
        raise ValueError(
            f"energy must lie in (0, v_deep={pair.v_deep}); got {energy_ev!r}"
        )


def classify_regime(pair: WellPair, energy_ev: float) -> Regime:
    """Regime A below the shallow floor, B at or above it."""
    _check_energy(pair, energy_ev)
    return Regime.A if energy_ev < pair.shallow_floor else Regime.B


def wavenumbers(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
) -> WavenumberSet:
    regime = classify_regime(pair, energy_ev)
    f = constants.wavenumber_factor
    k2 = f * math.sqrt(energy_ev)
    beta = f * math.sqrt(pair.v_deep - energy_ev)
    if regime is Regime.A:
        k1 = f * math.sqrt(pair.shallow_floor - energy_ev)
    else:
        k1 = f * math.sqrt(energy_ev - pair.shallow_floor)
    return WavenumberSet(k1=k1, beta=beta, k2=k2, regime=regime)


@dataclass(frozen=True)
class MatchPoint:
    """One evaluation of both matching sides at a given energy."""

    energy_ev: float
    lhs: float
    rhs: float
    regime: Regime
    is_pole: bool

    @property
    def mismatch(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class GridScan:
    """Vectorised evaluation over an energy grid (used by solver and CLI)."""

    energies: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    regime_b: np.ndarray  # bool, True where regime B
    pole: np.ndarray  # bool, denominator below pole tolerance on either side
    char: np.ndarray  # denominator-cleared mismatch Nl*Dr - Nr*Dl
    char_scale: np.ndarray  # |Nl*Dr| + |Nr*Dl|, for relative residuals

    @property
    def mismatch(self) -> np.ndarray:
        return self.lhs - self.rhs


def _cleared_terms(pair: WellPair, energies: np.ndarray, constants: PhysicalConstants):
    """Numerators/denominators of the rescaled sides, free of poles.

    Regime A lhs uses ``q = exp(-2 k1 a)`` so that
    ``Nl = beta*(1-q) + k1*(1+q)`` is ``(beta + k1*coth(k1 a)) * (1 - q)``
    up to the common positive factor; trigonometric parts are multiplied
    through by the relevant ``sin`` so ``cot`` poles become ordinary zeros.
    ``Nr`` absorbs the full ``exp(-2 beta (L-a))`` of the rescaled rhs.
    """
    e = np.asarray(energies, dtype=float)
    f = constants.wavenumber_factor
    a = pair.width
    gap = pair.shallow_floor

    k2 = f * np.sqrt(e)
    beta = f * np.sqrt(pair.v_deep - e)
    reg_b = e >= gap

    k1a = f * np.sqrt(np.where(reg_b, 0.0, gap - e))
    q = np.exp(-2.0 * k1a * a)
    nl_a = beta * (1.0 - q) + k1a * (1.0 + q)
    dl_a = beta * (1.0 - q) - k1a * (1.0 + q)

    k1b = f * np.sqrt(np.where(reg_b, e - gap, 0.0))
    s1, c1 = np.sin(k1b * a), np.cos(k1b * a)
    nl_b = beta * s1 + k1b * c1
    dl_b = beta * s1 - k1b * c1

    nl = np.where(reg_b, nl_b, nl_a)
    dl = np.where(reg_b, dl_b, dl_a)

    s2, c2 = np.sin(k2 * a), np.cos(k2 * a)
    decay = np.exp(-2.0 * beta * (pair.distance - a))
    nr = decay * (beta * s2 - k2 * c2)
    dr = beta * s2 + k2 * c2
    return nl, dl, nr, dr, reg_b, beta


def grid_scan(
    pair: WellPair,
    energies: np.ndarray,
    constants: PhysicalConstants = CODATA2018,
    rescaled: bool = True,
) -> GridScan:
    """Evaluate lhs/rhs/mismatch and the cleared form over an energy grid.

    All energies must lie in (0, v_deep).  With ``rescaled=False`` the raw
    matching sides are returned (the common ``exp(-beta (L-a))`` factor is
    not applied); the cleared form is identical either way.
    """
    e = np.asarray(energies, dtype=float)
    if e.size and not (np.all(e > 0.0) and np.all(e < pair.v_deep)):
        raise ValueError("grid energies must lie strictly inside (0, v_deep)")
    nl, dl, nr, dr, reg_b, beta = _cleared_terms(pair, e, constants)
    pole = (np.abs(dl) < POLE_RTOL * np.abs(nl)) | (np.abs(dr) < POLE_RTOL * np.abs(nr))
    with np.errstate(divide="ignore", invalid="ignore"):
        lhs_vals = nl / dl
        rhs_vals = nr / dr
        if not rescaled:
            grow = np.exp(beta * (pair.distance - pair.width))
            lhs_vals = lhs_vals * grow
            rhs_vals = rhs_vals * grow
    # 0/0 at the exact regime boundary has no finite limit representation here;
    # treat any non-finite ratio as a pole as well.
    pole = pole | ~np.isfinite(lhs_vals) | ~np.isfinite(rhs_vals)
    lhs_vals = np.where(pole, np.nan, lhs_vals)
    rhs_vals = np.where(pole, np.nan, rhs_vals)
    return GridScan(
        energies=e,
        lhs=lhs_vals,
        rhs=rhs_vals,
        regime_b=reg_b,
        pole=pole,
        char=nl * dr - nr * dl,
        char_scale=np.abs(nl * dr) + np.abs(nr * dl),
    )


def evaluate(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
    rescaled: bool = True,
) -> MatchPoint:
    """Scalar evaluation of both matching sides at one energy."""
    _check_energy(pair, energy_ev)
    scan = grid_scan(pair, np.array([energy_ev]), constants, rescaled=rescaled)
    return MatchPoint(
        energy_ev=float(energy_ev),
        lhs=float(scan.lhs[0]),
        rhs=float(scan.rhs[0]),
        regime=Regime.B if bool(scan.regime_b[0]) else Regime.A,
        is_pole=bool(scan.pole[0]),
    )


def lhs(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
    rescaled: bool = True,
) -> float:
    """Shallow-side matching function; NaN when flagged as a pole."""
    return evaluate(pair, energy_ev, constants, rescaled=rescaled).lhs


def rhs(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
    rescaled: bool = True,
) -> float:
    """Deep-side matching function; NaN when flagged as a pole."""
    return evaluate(pair, energy_ev, constants, rescaled=rescaled).rhs


def mismatch(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
    rescaled: bool = True,
) -> float:
    """lhs - rhs on the regime branch; NaN propagates from pole flags."""
    point = evaluate(pair, energy_ev, constants, rescaled=rescaled)
    return point.mismatch


def characteristic(
    pair: WellPair,
    energy_ev: float,
    constants: PhysicalConstants = CODATA2018,
) -> tuple[float, float]:
    """Denominator-cleared mismatch and its magnitude scale at one energy.

    Returns ``(value, scale)`` where ``value = Nl*Dr - Nr*Dl`` vanishes
    exactly at the bound-state energies and ``scale`` bounds the size of the
    two products, so ``|value|/scale`` is a meaningful relative residual.
    """
    _check_energy(pair, energy_ev)
    nl, dl, nr, dr, _, _ = _cleared_terms(pair, np.array([energy_ev]), constants)
    value = float(nl[0] * dr[0] - nr[0] * dl[0])
    scale = float(abs(nl[0] * dr[0]) + abs(nr[0] * dl[0]))
    return value, scale
