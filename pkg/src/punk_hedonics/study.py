"""Experiment grid: four nested hedonic models over three time windows,
plus the before/after structural-change comparison."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .econometrics import (ConstantColumnError, InsufficientDataError, OlsFit,
                           ols_fit, pearson_matrix, significance_stars)
from .panel import PanelRow

INTERCEPT = "intercept"
DUMMY_REGRESSORS = ("x_dark", "x_light", "x_medium", "x_nonhuman", "x_male")

DEFAULT_SPLIT_DATE = dt.date(2021, 1, 1)
DEFAULT_CORRELATION_THRESHOLD = 0.5

# Human-readable labels for report output.
REGRESSOR_LABELS = {
    INTERCEPT: "(Intercept)",
    "x_dark": "Skin Tone: Dark",
    "x_light": "Skin Tone: Light",
    "x_medium": "Skin Tone: Medium",
    "x_nonhuman": "Skin Tone: Nonhuman",
    "x_male": "Male",
    "rarity": "Rarity",
    "active_wallet_pct": "Active Market Wallet (% change, daily)",
    "sales_volume_pct": "Sales Volume (USD, % change, daily)",
    "gas_price_gwei": "Gas Price (Gwei, average, daily)",
    "fx_pct": "ETH/USD (% change, daily)",
    "sentiment": "Sentiment Score",
}


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    id: int
    regressors: tuple[str, ...]


def model_specs() -> tuple[ModelSpec, ...]:
    """The four strictly nested regressor sets."""
    base = DUMMY_REGRESSORS + ("rarity",)
    demand = base + ("active_wallet_pct", "sales_volume_pct", "gas_price_gwei")
    with_fx = demand + ("fx_pct",)
    with_sentiment = with_fx + ("sentiment",)
    return (ModelSpec(1, base), ModelSpec(2, demand),
            ModelSpec(3, with_fx), ModelSpec(4, with_sentiment))


@dataclass(frozen=True)
class WindowSpec:
    label: str
    start: dt.date
    end: dt.date          # inclusive

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"window {self.label}: start must precede end")

    def contains(self, date: dt.date) -> bool:
        return self.start <= date <= self.end


def default_windows(study_start: dt.date = dt.date(2017, 6, 23),
                    study_end: dt.date = dt.date(2022, 10, 31),
                    split_date: dt.date = DEFAULT_SPLIT_DATE) -> tuple[WindowSpec, ...]:
    """The three study periods: pre-split, post-split, and full span."""
    return (WindowSpec("2017-2021", study_start, split_date - dt.timedelta(days=1)),
            WindowSpec("2021-2022", split_date, study_end),
            WindowSpec("2017-2022", study_start, study_end))


@dataclass
class SuiteResult:
    fits: dict[tuple[str, int], OlsFit]
    skipped_windows: dict[str, str]
    windows: tuple[WindowSpec, ...]


@dataclass
class PrecheckResult:
    names: tuple[str, ...]
    matrix: np.ndarray
    threshold: float
    weakly_correlated: bool
    offending_pairs: list[tuple[str, str, float]]


@dataclass(frozen=True)
class RegressorChange:
    regressor: str
    coef_before: float
    coef_after: float
    sign_flipped: bool
    stars_before: int
    stars_after: int
    significance_lost: bool


@dataclass
class StructuralChangeReport:
    changes: dict[str, RegressorChange]

    def change(self, regressor: str) -> RegressorChange:
        return self.changes[regressor]


def design_for(panel: list[PanelRow], model: ModelSpec) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """Design matrix (intercept first), response, and column names."""
    names = (INTERCEPT,) + model.regressors
    X = np.empty((len(panel), len(names)))
    X[:, 0] = 1.0
    for j, reg in enumerate(model.regressors, start=1):
        X[:, j] = [float(getattr(row, reg)) for row in panel]
    y = np.array([row.log_usd_price for row in panel])
    return X, y, names


def run_suite(panel: list[PanelRow],
              windows: tuple[WindowSpec, ...]) -> SuiteResult:
    """Fit every (window, model) cell; windows that cannot support the
    widest model are skipped with a reason, the rest still run."""
    specs = model_specs()
    max_params = 1 + len(specs[-1].regressors)
    fits: dict[tuple[str, int], OlsFit] = {}
    skipped: dict[str, str] = {}
    for window in windows:
        rows = [r for r in panel if window.contains(r.date)]
        if len(rows) <= max_params:
            skipped[window.label] = f"only {len(rows)} rows for {max_params} parameters"
            continue
        try:
            for spec in specs:
                X, y, names = design_for(rows, spec)
                fits[(window.label, spec.id)] = ols_fit(X, y, names=names)
        except (InsufficientDataError, ConstantColumnError) as exc:
            skipped[window.label] = str(exc)
            fits = {k: v for k, v in fits.items() if k[0] != window.label}
    return SuiteResult(fits=fits, skipped_windows=skipped, windows=tuple(windows))


def correlation_precheck(panel: list[PanelRow], model: ModelSpec,
                         threshold: float = DEFAULT_CORRELATION_THRESHOLD) -> PrecheckResult:
    """Pairwise correlations among the model's regressors.

    The weak-correlation flag is set only when every off-diagonal entry
    stays below the threshold in magnitude; otherwise the offending
    pairs are named.
    """
    if not panel:
        raise ValueError("panel is empty")
    columns = [(reg, np.array([float(getattr(row, reg)) for row in panel]))
               for reg in model.regressors]
    names, matrix = pearson_matrix(columns)
    offending = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            r = float(matrix[i, j])
            if abs(r) >= threshold:
                offending.append((names[i], names[j], r))
    return PrecheckResult(names=names, matrix=matrix, threshold=threshold,
                          weakly_correlated=not offending,
                          offending_pairs=offending)


def structural_change(fit_before: OlsFit, fit_after: OlsFit) -> StructuralChangeReport:
    """Per-regressor sign and significance transitions between two fits."""
    if fit_before.names != fit_after.names:
        raise AlignmentError(
            f"regressor sets differ: {fit_before.names} vs {fit_after.names}")
    changes = {}
    for i, name in enumerate(fit_before.names):
        before = float(fit_before.coefficients[i])
        after = float(fit_after.coefficients[i])
        stars_before = significance_stars(float(fit_before.p_values[i]))
        stars_after = significance_stars(float(fit_after.p_values[i]))
        changes[name] = RegressorChange(
            regressor=name,
            coef_before=before,
            coef_after=after,
            sign_flipped=before * after < 0,
            stars_before=stars_before,
            stars_after=stars_after,
            significance_lost=stars_before > 0 and stars_after == 0,
        )
    return StructuralChangeReport(changes=changes)


def fit_to_dict(fit: OlsFit) -> dict:
    return {
        "names": list(fit.names),
        "coefficients": [float(c) for c in fit.coefficients],
        "standard_errors": [float(s) for s in fit.standard_errors],
        "t_stats": [float(t) for t in fit.t_stats],
        "p_values": [float(p) for p in fit.p_values],
        "stars": [significance_stars(float(p)) for p in fit.p_values],
        "r2": fit.r2,
        "adj_r2": fit.adj_r2,
        "n_obs": fit.n_obs,
        "n_params": fit.n_params,
    }


def suite_to_dict(suite: SuiteResult) -> dict:
    """JSON-ready suite document keyed ``window.model``; schema versioned."""
    results = {f"{label}.{model_id}": fit_to_dict(fit)
               for (label, model_id), fit in sorted(suite.fits.items())}
    doc = {
        "schema_version": 1,
        "windows": [{"label": w.label, "start": w.start.isoformat(),
                     "end": w.end.isoformat()} for w in suite.windows],
        "skipped_windows": dict(sorted(suite.skipped_windows.items())),
        "results": results,
    }
    before = suite.fits.get(("2017-2021", 4))
    after = suite.fits.get(("2021-2022", 4))
    if before is not None and after is not None:
        report = structural_change(before, after)
        doc["structural_change"] = {
            name: {
                "coef_before": c.coef_before,
                "coef_after": c.coef_after,
                "sign_flipped": c.sign_flipped,
                "stars_before": c.stars_before,
                "stars_after": c.stars_after,
                "significance_lost": c.significance_lost,
            }
            for name, c in report.changes.items()
        }
    return doc
