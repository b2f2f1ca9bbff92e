"""Summary statistics over run records.

The headline metric is the final-100 average: per seed, the mean return
over that run's last min(100, episode count) episodes; reported per
alpha as the across-seed mean with standard error stdev/sqrt(n_seeds)
(sample stdev, ddof=1; zero when only one seed).  Alpha selection takes
the largest alpha whose 95% confidence interval (mean +/- 1.96 se)
overlaps the interval of the best mean.
"""

import csv
import math
import warnings

Z_95 = 1.96


def final_window_mean(returns, window=100):
    """Mean over the last min(window, len) episode returns."""
    if not returns:
        raise ValueError("no episodes")
    tail = returns[-window:]
    return sum(tail) / len(tail)


def summarize_final100(records):
    """Records -> rows {alpha_exponent, mean, std_error, n_seeds}.

    Records with zero completed episodes (or marked failed) are excluded
    with a warning. Rows come back sorted by alpha exponent.
    """
    by_alpha = {}
    for record in records:
        if record.failed or not record.episode_returns:
            warnings.warn(
                f"excluding empty/failed cell (alpha=2^{record.alpha_exponent}, "
                f"seed={record.seed})"
            )
            continue
        by_alpha.setdefault(record.alpha_exponent, []).append(
            final_window_mean(record.episode_returns)
        )
    rows = []
    for alpha_exponent in sorted(by_alpha):
        values = by_alpha[alpha_exponent]
        n = len(values)
        mean = sum(values) / n
        if n > 1:
            var = sum((v - mean) ** 2 for v in values) / (n - 1)
            std_error = math.sqrt(var) / math.sqrt(n)
        else:
            std_error = 0.0
        rows.append(
            {
                "alpha_exponent": alpha_exponent,
                "mean": mean,
                "std_error": std_error,
                "n_seeds": n,
            }
        )
    return rows


def select_alpha(rows):
    """Largest alpha whose 95% CI overlaps the best mean's CI."""
    if not rows:
        raise ValueError("empty sensitivity table")
    best = max(rows, key=lambda row: row["mean"])
    best_lo = best["mean"] - Z_95 * best["std_error"]
    best_hi = best["mean"] + Z_95 * best["std_error"]
    chosen = None
    for row in rows:
        lo = row["mean"] - Z_95 * row["std_error"]
        hi = row["mean"] + Z_95 * row["std_error"]
        if lo <= best_hi and best_lo <= hi:
            if chosen is None or row["alpha_exponent"] > chosen["alpha_exponent"]:
                chosen = row
    return chosen["alpha_exponent"]


def write_summary_csv(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["alpha_exponent", "mean", "std_error", "n_seeds"]
        )
        writer.writeheader()
        writer.writerows(rows)
