"""Command-line pipeline: ``score``, ``keywords``, ``regress``, ``heatmap``, ``all``.

Each subcommand reads CSV inputs named in a key-value config file and
emits plot-ready CSV/JSON into the output directory.  No charts are
rendered here; the outputs are the data behind them.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import market, panel, study, tweets
from .econometrics import significance_stars
from .sentiment import load_lexicon
from .series import DailySeries, pct_change

DATA_DIR_ENV = "PUNK_HEDONICS_DATA_DIR"

_CONFIG_PATH_KEYS = ("tweet_corpus", "keyword_corpus", "sales", "gas", "fx", "lexicon")
_CONFIG_KEYS = _CONFIG_PATH_KEYS + (
    "output_dir", "window_start", "window_end", "split_date",
    "correlation_threshold", "max_adf_lag", "keywords", "language",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    tweet_corpus: Path | None = None
    keyword_corpus: Path | None = None
    sales: Path | None = None
    gas: Path | None = None
    fx: Path | None = None
    lexicon: Path | None = None
    output_dir: Path = Path("out")
    window_start: dt.date = tweets.STUDY_WINDOW_START
    window_end: dt.date = tweets.STUDY_WINDOW_END
    split_date: dt.date = study.DEFAULT_SPLIT_DATE
    correlation_threshold: float = study.DEFAULT_CORRELATION_THRESHOLD
    max_adf_lag: int | None = None
    keywords: tuple[str, ...] = tweets.DEFAULT_KEYWORDS
    language: str = "en"
    warnings: list[str] = field(default_factory=list)

    def require(self, *names: str) -> None:
        for name in names:
            path = getattr(self, name)
            if path is None:
                raise ConfigError(f"config key {name!r} is required for this command")
            if not Path(path).is_file():
                raise ConfigError(f"{name} file not found: {path}")


def parse_config_file(path: Path, data_dir: Path | None = None) -> RunConfig:
    """Parse ``key = value`` lines; '#' starts a comment.

    Relative input paths are resolved against --data-dir, else the
    PUNK_HEDONICS_DATA_DIR environment variable, else the config file's
    own directory.
    """
    if data_dir is None:
        env = os.environ.get(DATA_DIR_ENV)
        data_dir = Path(env) if env else path.parent
    config = RunConfig()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            _apply_config_value(config, key, value, data_dir)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return config


def _apply_config_value(config: RunConfig, key: str, value: str, data_dir: Path) -> None:
    if key in _CONFIG_PATH_KEYS:
        p = Path(value)
        setattr(config, key, p if p.is_absolute() else data_dir / p)
    elif key == "output_dir":
        config.output_dir = Path(value)
    elif key in ("window_start", "window_end", "split_date"):
        setattr(config, key, dt.date.fromisoformat(value))
    elif key == "correlation_threshold":
        config.correlation_threshold = float(value)
    elif key == "max_adf_lag":
        config.max_adf_lag = int(value)
    elif key == "keywords":
        kws = tuple(k.strip().lower() for k in value.split(",") if k.strip())
        if not kws:
            raise ValueError("keywords list is empty")
        config.keywords = kws
    elif key == "language":
        config.language = value


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_rejects(path: Path, report: tweets.IngestReport) -> None:
    _write_csv(path, ["row_number", "reason"],
               [[str(n), reason] for n, reason in report.rejects])


def _load_tweet_corpus(config: RunConfig, which: str):
    path = getattr(config, which)
    with open(path, "rb") as fh:
        corpus, report = tweets.ingest_tweets(
            fh, language_filter=config.language,
            window_start=config.window_start, window_end=config.window_end)
    if report.out_of_window:
        config.warnings.append(
            f"{path}: {report.out_of_window} rows outside the study window dropped")
    return corpus, report


def _lexicon(config: RunConfig):
    with open(config.lexicon, "rb") as fh:
        return load_lexicon(fh)


def cmd_score(config: RunConfig) -> None:
    """Daily mean sentiment plus the sign distribution over observed days."""
    config.require("tweet_corpus", "lexicon")
    out = config.output_dir
    corpus, report = _load_tweet_corpus(config, "tweet_corpus")
    _write_rejects(out / "tweet_rejects.csv", report)
    lexicon = _lexicon(config)
    daily = tweets.daily_mean_sentiment(corpus, lexicon)
    _write_csv(out / "daily_sentiment.csv", ["date", "value"],
               [[d.isoformat(), _fmt(v)] for d, v in daily.items()])
    values = daily.values
    distribution = [("positive", sum(1 for v in values if v > 0)),
                    ("negative", sum(1 for v in values if v < 0)),
                    ("neutral", sum(1 for v in values if v == 0))]
    _write_csv(out / "sentiment_distribution.csv", ["sign", "day_count"],
               [[sign, str(count)] for sign, count in distribution])
    if not corpus:
        config.warnings.append("no data: tweet corpus is empty after filtering")


def cmd_keywords(config: RunConfig) -> None:
    """Keyword frequencies and per-keyword mean sentiment."""
    config.require("keyword_corpus", "lexicon")
    out = config.output_dir
    corpus, report = _load_tweet_corpus(config, "keyword_corpus")
    _write_rejects(out / "keyword_rejects.csv", report)
    lexicon = _lexicon(config)
    kw_filter = tweets.KeywordFilter(config.keywords)
    freq = tweets.keyword_frequency(corpus, kw_filter)
    _write_csv(out / "keyword_frequency.csv", ["keyword", "count"],
               [[kw, str(freq[kw])] for kw in config.keywords])
    sentiments = tweets.keyword_sentiment(corpus, kw_filter, lexicon)
    _write_csv(out / "keyword_sentiment.csv", ["keyword", "mean_compound"],
               [[kw, "" if sentiments[kw] is None else _fmt(sentiments[kw])]
                for kw in config.keywords])


def _build_panel(config: RunConfig):
    corpus, tweet_report = _load_tweet_corpus(config, "tweet_corpus")
    lexicon = _lexicon(config)
    sentiment = tweets.daily_mean_sentiment(corpus, lexicon)
    with open(config.sales, "rb") as fh:
        sales, sales_report = market.ingest_sales(fh)
    sales = [s for s in sales if config.window_start <= s.date <= config.window_end]
    with open(config.gas, "rb") as fh:
        gas = market.ingest_gas(fh)
    with open(config.fx, "rb") as fh:
        fx = market.ingest_fx(fh)
    active, volume = market.daily_aggregates(sales, fx)
    active_pct, active_gaps = pct_change(active)
    volume_pct, volume_gaps = pct_change(volume)
    fx_pct, fx_gaps = pct_change(fx)
    rarity_map = market.rarity_score(sales)
    rows, coverage = panel.build_panel(
        sales, sentiment, active_pct, volume_pct, gas, fx_pct, fx, rarity_map)
    reports = {"tweets": tweet_report, "sales": sales_report,
               "pct_change_gaps": {"active_wallets": len(active_gaps),
                                   "sales_volume": len(volume_gaps),
                                   "fx": len(fx_gaps)}}
    return rows, coverage, reports


def cmd_regress(config: RunConfig) -> None:
    """Panel build, stationarity screen, 3 x 4 regression grid, reports."""
    config.require("tweet_corpus", "lexicon", "sales", "gas", "fx")
    out = config.output_dir
    rows, coverage, reports = _build_panel(config)
    _write_rejects(out / "tweet_rejects.csv", reports["tweets"])
    _write_rejects(out / "sales_rejects.csv", reports["sales"])
    with open(out / "panel.csv", "w", encoding="utf-8", newline="") as fh:
        panel.write_panel_csv(rows, fh)

    screen = panel.stationarity_screen(rows, max_lag=config.max_adf_lag)
    windows = study.default_windows(config.window_start, config.window_end,
                                    config.split_date)
    suite = study.run_suite(rows, windows)
    for label, reason in suite.skipped_windows.items():
        config.warnings.append(f"window {label} skipped: {reason}")
    precheck = study.correlation_precheck(rows, study.model_specs()[-1],
                                          threshold=config.correlation_threshold)

    doc = study.suite_to_dict(suite)
    doc["panel_coverage"] = {
        "total_sales": coverage.total_sales,
        "rows_emitted": coverage.rows_emitted,
        "drop_counts": dict(sorted(coverage.drop_counts.items())),
        "pct_change_gaps": reports["pct_change_gaps"],
    }
    doc["stationarity"] = {
        variable: ({"skip_reason": entry.skip_reason} if entry.result is None else {
            "statistic": entry.result.statistic,
            "lags": entry.result.lags,
            "n_obs": entry.result.n_obs,
            "critical_values": entry.result.critical_values,
            "stationary_at_5pct": entry.stationary_at_5pct,
        })
        for variable, entry in screen.items()
    }
    doc["correlation_precheck"] = {
        "threshold": precheck.threshold,
        "weakly_correlated": precheck.weakly_correlated,
        "names": list(precheck.names),
        "matrix": [[float(v) for v in row] for row in precheck.matrix],
        "offending_pairs": [[a, b, float(r)] for a, b, r in precheck.offending_pairs],
    }
    with open(out / "suite.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

    with open(out / "tables.txt", "w", encoding="utf-8") as fh:
        for window in windows:
            if window.label in suite.skipped_windows:
                fh.write(f"Window {window.label}: skipped "
                         f"({suite.skipped_windows[window.label]})\n\n")
                continue
            fh.write(_format_window_table(suite, window.label))
            fh.write("\n")

    _write_csv(out / "lollipop.csv",
               ["regressor", "coefficient", "stars", "model_tag"],
               _lollipop_rows(suite))


def _format_window_table(suite: study.SuiteResult, label: str) -> str:
    """Text table in the four-column nested-model layout: coefficient with
    stars, standard error in parentheses beneath, fit statistics below."""
    fits = {mid: suite.fits[(label, mid)] for mid in (1, 2, 3, 4)}
    order = fits[4].names
    star_text = {0: "", 1: "*", 2: "**", 3: "***"}
    name_width = max(len(study.REGRESSOR_LABELS[n]) for n in order) + 2
    col = 14
    lines = [f"Window {label}    Dependent Variable: log(USD Price)"]
    header = " " * name_width + "".join(f"({mid})".rjust(col) for mid in (1, 2, 3, 4))
    lines.append(header)
    for name in order:
        coef_cells, se_cells = [], []
        for mid in (1, 2, 3, 4):
            fit = fits[mid]
            if name in fit.names:
                i = fit.names.index(name)
                stars = star_text[significance_stars(float(fit.p_values[i]))]
                coef_cells.append(f"{fit.coefficients[i]:.4f}{stars}".rjust(col))
                se_cells.append(f"({fit.standard_errors[i]:.4f})".rjust(col))
            else:
                coef_cells.append(" " * col)
                se_cells.append(" " * col)
        lines.append(study.REGRESSOR_LABELS[name].ljust(name_width) + "".join(coef_cells))
        lines.append(" " * name_width + "".join(se_cells))
    lines.append("R^2".ljust(name_width)
                 + "".join(f"{fits[mid].r2:.4f}".rjust(col) for mid in (1, 2, 3, 4)))
    lines.append("Adjusted R^2".ljust(name_width)
                 + "".join(f"{fits[mid].adj_r2:.4f}".rjust(col) for mid in (1, 2, 3, 4)))
    lines.append("N".ljust(name_width)
                 + "".join(str(fits[mid].n_obs).rjust(col) for mid in (1, 2, 3, 4)))
    lines.append("Standard errors in parentheses. * p<0.1, ** p<0.05, *** p<0.01.")
    return "\n".join(lines) + "\n"


def _lollipop_rows(suite: study.SuiteResult) -> list[list[str]]:
    """Coefficient/stars rows for the two comparison charts: with vs
    without sentiment (models 3 and 4, pre-split window) and model 4
    before vs after the split."""
    comparisons = [
        (("2017-2021", 3), "2017-2021.without_sentiment"),
        (("2017-2021", 4), "2017-2021.with_sentiment"),
        (("2017-2021", 4), "before_2021"),
        (("2021-2022", 4), "after_2021"),
    ]
    rows = []
    for key, tag in comparisons:
        fit = suite.fits.get(key)
        if fit is None:
            continue
        for i, name in enumerate(fit.names):
            if name == study.INTERCEPT:
                continue
            stars = significance_stars(float(fit.p_values[i]))
            rows.append([name, _fmt(fit.coefficients[i]), str(stars), tag])
    return rows


def cmd_heatmap(config: RunConfig) -> None:
    """Gender x skin-tone counts and shares from the sales records."""
    config.require("sales")
    out = config.output_dir
    with open(config.sales, "rb") as fh:
        sales, report = market.ingest_sales(fh)
    _write_rejects(out / "sales_rejects.csv", report)
    distribution = market.attribute_distribution(sales)
    rows = []
    for gender in (market.Gender.MALE, market.Gender.FEMALE):
        for skin in market.SkinTone:
            count = distribution.count(gender, skin)
            share = distribution.share(gender, skin)
            rows.append([gender.value, skin.value, str(count), f"{100 * share:.1f}"])
    _write_csv(out / "heatmap.csv", ["gender", "skin_tone", "count", "share_pct"], rows)


COMMANDS = {
    "score": cmd_score,
    "keywords": cmd_keywords,
    "regress": cmd_regress,
    "heatmap": cmd_heatmap,
}


def cmd_all(config: RunConfig) -> None:
    for name in ("score", "keywords", "regress", "heatmap"):
        COMMANDS[name](config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="punk-hedonics",
        description="Sentiment scoring, market panel construction, and the "
                    "hedonic regression suite, emitting plot-ready data files.")
    parser.add_argument("--config", required=True, type=Path, help="key = value config file")
    parser.add_argument("--data-dir", type=Path, default=None,
                        help=f"prefix for relative input paths (default ${DATA_DIR_ENV} "
                             "or the config file directory)")
    parser.add_argument("--output-dir", type=Path, default=None)
    parser.add_argument("--split-date", type=dt.date.fromisoformat, default=None)
    parser.add_argument("--window-start", type=dt.date.fromisoformat, default=None)
    parser.add_argument("--window-end", type=dt.date.fromisoformat, default=None)
    parser.add_argument("--correlation-threshold", type=float, default=None)
    parser.add_argument("--max-adf-lag", type=int, default=None)
    parser.add_argument("--language", default=None)
    parser.add_argument("command", choices=[*COMMANDS, "all"])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if not args.config.is_file():
            raise ConfigError(f"config file not found: {args.config}")
        config = parse_config_file(args.config, data_dir=args.data_dir)
        for flag in ("output_dir", "split_date", "window_start", "window_end",
                     "correlation_threshold", "max_adf_lag", "language"):
            value = getattr(args, flag)
            if value is not None:
                setattr(config, flag, value)
        config.output_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "all":
            cmd_all(config)
        else:
            COMMANDS[args.command](config)
    except (ConfigError, tweets.SchemaError, market.UncoveredDatesError,
            panel.PanelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for warning in config.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
