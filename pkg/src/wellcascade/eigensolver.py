"""Bound-state search and geometry calibration for well pairs.

Roots are located by scanning the denominator-cleared matching function on a
uniform energy grid and refining every sign change by bisection.  Bisection
is unconditionally safe here because the cleared form is continuous and free
of poles; it always runs down to machine resolution, so the configured
``refine_tol`` acts as a guaranteed upper bound on the reported bracket
width rather than a stopping knob.

A level's ``residual`` is the magnitude of the cleared matching function at
the refined energy divided by its magnitude at the isolating grid bracket
(a positive rescaling, so the root set is untouched).  True roots collapse
this ratio to near machine epsilon; a sign change produced by anything that
is not a root cannot shrink it, which is what the ``residual_tol`` filter
screens for.  Raw-mismatch residuals would be meaningless here: deep-well
levels sit within ~1e-13 eV of poles of the deep-side matching function,
where the raw mismatch is ill-conditioned beyond double precision.

Calibration searches one geometry parameter (center distance or one depth)
so that the pair's levels best match a set of target energies, using a
deterministic coarse grid followed by golden-section refinement of the best
cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .potential import WellPair
from .quantities import CODATA2018, PhysicalConstants
from .transcendental import Regime, characteristic, classify_regime, grid_scan

__all__ = [
    "SolverConfig",
    "Level",
    "SolveDiagnostics",
    "SolveResult",
    "CalibrationResult",
    "CalibrationError",
    "solve_pair",
    "find_levels",
    "count_levels",
    "calibrate_distance",
    "calibrate_depth",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SolverConfig:
    """Scan/refinement tolerances for the bound-state search."""

    grid_step: float = 2e-5
    refine_tol: float = 1e-9
    residual_tol: float = 1e-8
    max_levels: int | None = None

    def __post_init__(self) -> None:
        if not (self.grid_step > self.refine_tol > 0.0):
            raise ValueError(
                f"need grid_step > refine_tol > 0, got {self.grid_step} / {self.refine_tol}"
            )
        if not (math.isfinite(self.residual_tol) and self.residual_tol > 0.0):
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")
        if self.max_levels is not None and self.max_levels < 0:
            raise ValueError(f"max_levels must be non-negative, got {self.max_levels}")


@dataclass(frozen=True)
class Level:
    """One bound state: pair-local energy plus solver bookkeeping.

    ``residual`` is the relative size of the cleared matching function at the
    root (see module notes); ``bracket`` is the final bisection interval.
    """

    energy: float
    regime: Regime
    residual: float
    bracket: tuple[float, float]
    index: int


@dataclass(frozen=True)
class SolveDiagnostics:
    grid_points: int
    sign_changes: int
    pole_points: int
    skipped_intervals: tuple[tuple[float, float], ...]
    discarded_candidates: tuple[float, ...]


@dataclass(frozen=True)
class SolveResult:
    pair: WellPair
    config: SolverConfig
    levels: tuple[Level, ...]
    diagnostics: SolveDiagnostics


def _bisect_characteristic(pair, lo, hi, f_lo, constants):
    """Shrink a verified sign-change bracket down to machine resolution."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        f_mid, _ = characteristic(pair, mid, constants)
        if f_mid == 0.0:
            return mid, mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def solve_pair(
    pair: WellPair,
    config: SolverConfig | None = None,
    *,
    e_min: float | None = None,
    e_max: float | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> SolveResult:
    """Find all bound states of ``pair`` with energies in (0, v_deep).

    Optional ``e_min``/``e_max`` restrict the scan window (used by the
    calibration loop and the CLI).  An empty level list is a valid outcome
    for wells too shallow or narrow to bind a state.
    """
    cfg = config or SolverConfig()
    step = cfg.grid_step
    lo = max(step, e_min if e_min is not None else step)
    hi = min(pair.v_deep - step, e_max if e_max is not None else pair.v_deep - step)
    if hi <= lo:
        empty = SolveDiagnostics(0, 0, 0, (), ())
        return SolveResult(pair=pair, config=cfg, levels=(), diagnostics=empty)

    n = int(math.floor((hi - lo) / step)) + 1
    energies = lo + step * np.arange(n)
    scan = grid_scan(pair, energies, constants)

    valid = np.isfinite(scan.char) & ~((scan.char == 0.0) & (scan.char_scale == 0.0))
    char = scan.char
    roots: list[float] = []
    discarded: list[float] = []
    skipped: list[tuple[float, float]] = []

    # exact zeros on the grid are roots already
    exact = valid & (char == 0.0)
    roots.extend(float(e) for e in energies[exact])
    brackets: list[tuple[float, float, float, float]] = []
    for i in np.nonzero((char[:-1] * char[1:]) < 0.0)[0]:
        if not (valid[i] and valid[i + 1]):
            skipped.append((float(energies[i]), float(energies[i + 1])))
            continue
        bracket_scale = max(abs(float(char[i])), abs(float(char[i + 1])))
        brackets.append(
            (float(energies[i]), float(energies[i + 1]), float(char[i]), bracket_scale)
        )
    sign_changes = len(brackets)

    levels: list[Level] = []
    for e in roots:
        levels.append(
            Level(
                energy=e,
                regime=classify_regime(pair, e),
                residual=0.0,
                bracket=(e, e),
                index=0,
            )
        )
    for b_lo, b_hi, f_lo, bracket_scale in brackets:
        r_lo, r_hi = _bisect_characteristic(pair, b_lo, b_hi, f_lo, constants)
        energy = 0.5 * (r_lo + r_hi)
        value, _ = characteristic(pair, energy, constants)
        # convergence measure: cleared mismatch at the root relative to its
        # size at the isolating grid bracket; a pole artifact cannot shrink
        residual = abs(value) / bracket_scale if bracket_scale > 0.0 else math.inf
        if residual > cfg.residual_tol:
            discarded.append(energy)
            continue
        levels.append(
            Level(
                energy=energy,
                regime=classify_regime(pair, energy),
                residual=residual,
                bracket=(r_lo, r_hi),
                index=0,
            )
        )

    levels.sort(key=lambda lv: lv.energy)
    if cfg.max_levels is not None:
        levels = levels[: cfg.max_levels]
    levels = [replace(lv, index=i) for i, lv in enumerate(levels)]
    diag = SolveDiagnostics(
        grid_points=n,
        sign_changes=sign_changes,
        pole_points=int(np.count_nonzero(scan.pole)),
        skipped_intervals=tuple(skipped),
        discarded_candidates=tuple(discarded),
    )
    return SolveResult(pair=pair, config=cfg, levels=tuple(levels), diagnostics=diag)


def find_levels(
    pair: WellPair,
    config: SolverConfig | None = None,
    *,
    e_min: float | None = None,
    e_max: float | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> list[Level]:
    return list(solve_pair(pair, config, e_min=e_min, e_max=e_max, constants=constants).levels)


def count_levels(
    pair: WellPair,
    config: SolverConfig | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> int:
    return len(find_levels(pair, config, constants=constants))


@dataclass(frozen=True)
class CalibrationResult:
    """Best parameter value found, its misfit, and the matched levels."""

    value: float
    misfit: float
    levels: tuple[float, ...]


class CalibrationError(ValueError):
    """Raised when no candidate reaches the misfit threshold."""

    def __init__(self, message: str, best: CalibrationResult):
        super().__init__(message)
        self.best = best


def _misfit(levels: list[float], targets: list[float]) -> float:
    if not levels:
        return math.inf
    return math.sqrt(sum(min((t - e) ** 2 for e in levels) for t in targets))


def _window_levels(pair, targets, cfg, pad, constants) -> list[float]:
    e_min = min(targets) - pad
    e_max = max(targets) + pad
    result = solve_pair(pair, cfg, e_min=e_min, e_max=e_max, constants=constants)
    return [lv.energy for lv in result.levels]


def _golden_minimize(objective, lo, hi, xtol):
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = objective(c), objective(d)
    while (hi - lo) > xtol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = objective(d)
    return 0.5 * (lo + hi)


def _calibrate_1d(make_pair, targets, lo, hi, step, misfit_tol, cfg, pad, constants, what):
    targets = [float(t) for t in targets]
    if not targets:
        raise ValueError("calibration needs at least one target energy")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"{what} range must be finite, got ({lo}, {hi})")
    if hi < lo:
        raise ValueError(f"empty {what} range ({lo}, {hi})")

    def objective(x: float) -> float:
        try:
            pair = make_pair(x)
        except ValueError:
            return math.inf
        return _misfit(_window_levels(pair, targets, cfg, pad, constants), targets)

    def result_at(x: float) -> CalibrationResult:
        pair = make_pair(x)
        levels = _window_levels(pair, targets, cfg, pad, constants)
        return CalibrationResult(value=x, misfit=_misfit(levels, targets), levels=tuple(levels))

    if hi == lo:
        best = result_at(lo)
    else:
        n = int(math.floor((hi - lo) / step)) + 1
        grid = [lo + i * step for i in range(n)]
        if grid[-1] < hi - 1e-12 * max(1.0, abs(hi)):
            grid.append(hi)
        misfits = [objective(x) for x in grid]
        b = int(np.argmin(misfits))
        if misfits[b] <= 1e-12:
            best = result_at(grid[b])
        else:
            g_lo = grid[max(0, b - 1)]
            g_hi = grid[min(len(grid) - 1, b + 1)]
            x_star = _golden_minimize(objective, g_lo, g_hi, xtol=1e-6 * max(step, 1e-9))
            best = result_at(x_star)
            coarse = result_at(grid[b])
            if coarse.misfit < best.misfit:
                best = coarse
    if best.misfit > misfit_tol:
        raise CalibrationError(
            f"calibration failed: best {what} {best.value:.6g} leaves misfit "
            f"{best.misfit:.3e} eV above threshold {misfit_tol:.3e} eV",
            best=best,
        )
    return best


def calibrate_distance(
    pair_template: WellPair,
    targets: list[float],
    l_range: tuple[float, float],
    *,
    config: SolverConfig | None = None,
    step: float = 0.01,
    misfit_tol: float = 5e-3,
    search_pad: float = 0.05,
    constants: PhysicalConstants = CODATA2018,
) -> CalibrationResult:
    """Find the center distance whose levels best match ``targets`` (eV).

    Searches ``l_range`` on a 0.01 Angstrom grid, then refines the best cell
    by golden section.  Raises :class:`CalibrationError` (carrying the best
    candidate) if the final misfit exceeds ``misfit_tol``.
    """
    lo, hi = float(l_range[0]), float(l_range[1])
    if lo <= pair_template.width:
        raise ValueError(
            f"distance range must exceed the well width {pair_template.width}, got {l_range}"
        )
    cfg = config or SolverConfig()

    def make_pair(distance: float) -> WellPair:
        return replace(pair_template, distance=distance)

    return _calibrate_1d(
        make_pair, targets, lo, hi, step, misfit_tol, cfg, search_pad, constants, "distance"
    )


def calibrate_depth(
    pair_template: WellPair,
    fixed_role: str,
    targets: list[float],
    depth_range: tuple[float, float],
    *,
    config: SolverConfig | None = None,
    step: float = 5e-4,
    misfit_tol: float = 5e-3,
    search_pad: float = 0.05,
    constants: PhysicalConstants = CODATA2018,
) -> CalibrationResult:
    """Search one well depth with the other held fixed.

    ``fixed_role`` names the depth that stays at its template value,
    ``"shallow"`` or ``"deep"``; the other one is varied over ``depth_range``.
    Target energies are pair-local (measured from the deep-well bottom).
    """
    lo, hi = float(depth_range[0]), float(depth_range[1])
    if fixed_role not in ("shallow", "deep"):
        raise ValueError(f"fixed_role must be 'shallow' or 'deep', got {fixed_role!r}")
    cfg = config or SolverConfig()
    if fixed_role == "shallow":
        if lo <= pair_template.v_shallow:
            raise ValueError(
                "searched deep depth must stay above the fixed shallow depth "
                f"{pair_template.v_shallow}, got range {depth_range}"
            )

        def make_pair(depth: float) -> WellPair:
            return replace(pair_template, v_deep=depth)

    else:
        if hi >= pair_template.v_deep or lo <= 0.0:
            raise ValueError(
                "searched shallow depth must stay inside (0, v_deep="
                f"{pair_template.v_deep}), got range {depth_range}"
            )

        def make_pair(depth: float) -> WellPair:
            return replace(pair_template, v_shallow=depth)

    return _calibrate_1d(
        make_pair, targets, lo, hi, step, misfit_tol, cfg, search_pad, constants, "depth"
    )
