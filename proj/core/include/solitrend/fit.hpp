#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"
#include "solitrend/ohlc.hpp"

namespace solitrend {

/// One sech^2 pulse of the fitted train: amplitude * sech^2(width*(tau-center)).
struct PulseParams {
    double amplitude = 0.0;
    double width = 0.0;
    double center = 0.0;

    /// Wavenumber equivalent of the amplitude, amplitude = 2 kappa^2.
    double kappa() const { return std::sqrt(amplitude / 2.0); }
};

struct FitResult {
    std::vector<PulseParams> pulses;  // sorted by center time
    double drift = 0.0;               // C in the -C*tau background of the model
    double residual_rms = 0.0;
    std::string status;               // "converged" or "budget-exhausted"
    double trend_slope = 0.0;         // removed linear trend (per bar)
    double trend_intercept = 0.0;
    std::vector<std::string> warnings;
};

struct FitOptions {
    int n_pulses = 2;          // >= 1
    std::uint64_t seed = 1729; // jitter seed; fixed seed -> identical fits
    int starts = 8;            // multi-start count (first start is unjittered)
    int workers = 1;           // concurrent starts; reduction is deterministic
    int max_iterations = 6000; // simplex budget per start
};

/// Least-squares fit of  sum_m a_m sech^2(b_m (tau - c_m)) - C tau  to the
/// values (bar-index time). A linear trend is removed first and recorded;
/// the fitted C absorbs any residual slope. Coarse peak-seeded starts plus
/// seeded jitter, refined by Nelder-Mead; deterministic under a fixed seed.
FitResult fit_soliton_train(std::span<const double> values, const FitOptions& options);

/// Same on the close column of a series.
FitResult fit_soliton_train(const PriceSeries& series, const FitOptions& options);

/// Model evaluation for a parameter set (used by reports and tests).
double fit_model_value(const FitResult& fit, double tau);

struct ScoreRow {
    int pulse = 0;                    // 1-based, in center-time order
    double amplitude_ratio = 0.0;     // a_m / a_1
    double amp_nearest_square = 0.0;  // nearest m^2
    double amp_square_dev_pct = 0.0;  // max-denominator percent difference
    double amp_nearest_fib = 0.0;     // nearest Fibonacci power ratio
    double amp_fib_dev_pct = 0.0;
    double time_ratio = 0.0;          // (c_m - origin) / (c_1 - origin)
    double time_nearest_square = 0.0;
    double time_square_dev_pct = 0.0;
    double time_nearest_fib = 0.0;
    double time_fib_dev_pct = 0.0;
};

struct Scorecard {
    std::vector<ScoreRow> rows;
};

/// Amplitude and center-time ratios of a fitted train, normalized to the
/// first pulse, against the m^2 template and the Fibonacci ratio ladder.
/// Requires at least two pulses.
Scorecard ratio_scorecard(const FitResult& fit, double time_origin = 0.0);

void write_scorecard_text(std::ostream& out, const Scorecard& card);

}  // namespace solitrend
