#include "solitrend/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>
#include <random>

#include "solitrend/fib.hpp"

namespace solitrend {

namespace {

double sech2(double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s;
}

// Parameter packing: [log a_1.., log b_1.., c_1.., C], 3n+1 entries.
struct Packed {
    int n_pulses;

    double amplitude(std::span<const double> th, int m) const { return std::exp(th[(size_t)m]); }
    double width(std::span<const double> th, int m) const {
        return std::exp(th[(size_t)(n_pulses + m)]);
    }
    double center(std::span<const double> th, int m) const {
        return th[(size_t)(2 * n_pulses + m)];
    }
    double drift(std::span<const double> th) const { return th[(size_t)(3 * n_pulses)]; }
};

double rms_objective(std::span<const double> th, const Packed& pk,
                     std::span<const double> y) {
    const size_t n = y.size();
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i);
        double model = -pk.drift(th) * tau;
        for (int m = 0; m < pk.n_pulses; ++m)
            model += pk.amplitude(th, m) * sech2(pk.width(th, m) * (tau - pk.center(th, m)));
        const double r = model - y[i];
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(n));
}

struct SimplexResult {
    std::vector<double> best;
    double value = 0.0;
    bool converged = false;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). The best vertex value never increases.
template <class F>
SimplexResult nelder_mead(std::vector<double> x0, std::span<const double> step, F&& f,
                          int max_iterations) {
    const size_t dim = x0.size();
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += step[i];
    std::vector<double> vals(dim + 1);
    for (size_t i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

    std::vector<size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    bool converged = false;

    for (int iter = 0; iter < max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order[0];
        const size_t worst = order[dim];
        const size_t second_worst = order[dim - 1];

        if (std::fabs(vals[worst] - vals[best])
            <= 1e-12 * (std::fabs(vals[best]) + 1e-300) + 1e-15) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
        }
        for (size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

        for (size_t j = 0; j < dim; ++j) trial[j] = centroid[j] + (centroid[j] - pts[worst][j]);
        const double f_reflect = f(trial);

        if (f_reflect < vals[best]) {
            for (size_t j = 0; j < dim; ++j)
                trial2[j] = centroid[j] + 2.0 * (centroid[j] - pts[worst][j]);
            const double f_expand = f(trial2);
            if (f_expand < f_reflect) {
                pts[worst] = trial2;
                vals[worst] = f_expand;
            } else {
                pts[worst] = trial;
                vals[worst] = f_reflect;
            }
        } else if (f_reflect < vals[second_worst]) {
            pts[worst] = trial;
            vals[worst] = f_reflect;
        } else {
            const bool outside = f_reflect < vals[worst];
            for (size_t j = 0; j < dim; ++j)
                trial2[j] = centroid[j]
                          + 0.5 * ((outside ? trial[j] : pts[worst][j]) - centroid[j]);
            const double f_contract = f(trial2);
            if (f_contract < std::min(f_reflect, vals[worst])) {
                pts[worst] = trial2;
                vals[worst] = f_contract;
            } else {
                for (size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (size_t j = 0; j < dim; ++j)
                        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= dim; ++i)
        if (vals[i] < vals[best]) best = i;
    return {pts[best], vals[best], converged};
}

// Local maxima of the detrended series, tallest first.
std::vector<std::pair<int, double>> local_maxima(std::span<const double> y) {
    std::vector<std::pair<int, double>> out;
    for (int i = 1; i + 1 < static_cast<int>(y.size()); ++i)
        if (y[(size_t)i] > y[(size_t)(i - 1)] && y[(size_t)i] >= y[(size_t)(i + 1)])
            out.emplace_back(i, y[(size_t)i]);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

struct StartResult {
    SimplexResult simplex;
    int index = 0;
};

}  // namespace

FitResult fit_soliton_train(std::span<const double> values, const FitOptions& options) {
    if (options.n_pulses < 1) throw validation_error("fit: n_pulses must be >= 1");
    if (options.starts < 1) throw validation_error("fit: starts must be >= 1");
    if (options.workers < 1) throw validation_error("fit: workers must be >= 1");
    const int n = static_cast<int>(values.size());
    if (n < 3 * options.n_pulses + 2)
        throw validation_error("fit: series too short for " + std::to_string(options.n_pulses)
                               + " pulses");

    // Remove the linear trend; the model's own drift absorbs what remains.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += i;
        sy += values[(size_t)i];
        sxx += static_cast<double>(i) * i;
        sxy += i * values[(size_t)i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    std::vector<double> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) y[(size_t)i] = values[(size_t)i] - (intercept + slope * i);

    FitResult result;
    result.trend_slope = slope;
    result.trend_intercept = intercept;

    const auto maxima = local_maxima(y);
    if (static_cast<int>(maxima.size()) < options.n_pulses)
        result.warnings.push_back("n_pulses exceeds the number of detected peaks ("
                                  + std::to_string(maxima.size()) + ")");

    double y_scale = 1e-9;
    for (double v : y) y_scale = std::max(y_scale, std::fabs(v));

    // Base start: the tallest peaks seed the centers, half-width seeds the
    // widths; missing peaks fall back to an even spread.
    const Packed pk{options.n_pulses};
    const size_t dim = static_cast<size_t>(3 * options.n_pulses + 1);
    std::vector<double> base(dim);
    std::vector<std::pair<double, double>> seeds;  // (center, amplitude)
    for (int m = 0; m < options.n_pulses && m < static_cast<int>(maxima.size()); ++m)
        seeds.emplace_back(maxima[(size_t)m].first, std::max(maxima[(size_t)m].second, 1e-6 * y_scale));
    int fill = 1;
    while (static_cast<int>(seeds.size()) < options.n_pulses) {
        seeds.emplace_back(n * fill / (options.n_pulses + 1.0), 0.5 * y_scale);
        ++fill;
    }
    std::sort(seeds.begin(), seeds.end());
    for (int m = 0; m < options.n_pulses; ++m) {
        const double center = seeds[(size_t)m].first;
        const double amp = seeds[(size_t)m].second;
        // Half-width from where the series drops to half the peak.
        int idx = static_cast<int>(center);
        int halfw = 1;
        while (idx + halfw < n && y[(size_t)(idx + halfw)] > 0.5 * amp) ++halfw;
        base[(size_t)m] = std::log(amp);
        base[(size_t)(options.n_pulses + m)] = std::log(0.8814 / halfw);
        base[(size_t)(2 * options.n_pulses + m)] = center;
    }
    base[dim - 1] = 0.0;

    auto objective = [&](const std::vector<double>& th) {
        return rms_objective(th, pk, y);
    };

    std::vector<double> step(dim);
    for (int m = 0; m < options.n_pulses; ++m) {
        step[(size_t)m] = 0.3;
        step[(size_t)(options.n_pulses + m)] = 0.3;
        step[(size_t)(2 * options.n_pulses + m)] = std::max(1.0, 0.02 * n);
    }
    step[dim - 1] = 0.1 * y_scale / n;

    auto run_start = [&](int start_index) {
        std::vector<double> x0 = base;
        if (start_index > 0) {
            std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(start_index));
            std::uniform_real_distribution<double> jitter(-1.0, 1.0);
            for (int m = 0; m < options.n_pulses; ++m) {
                x0[(size_t)m] += 0.5 * jitter(rng);
                x0[(size_t)(options.n_pulses + m)] += 0.7 * jitter(rng);
                x0[(size_t)(2 * options.n_pulses + m)] += 0.05 * n * jitter(rng);
            }
        }
        return StartResult{nelder_mead(std::move(x0), step, objective, options.max_iterations),
                           start_index};
    };

    std::vector<StartResult> all;
    all.reserve(static_cast<size_t>(options.starts));
    if (options.workers == 1) {
        for (int s = 0; s < options.starts; ++s) all.push_back(run_start(s));
    } else {
        for (int begin = 0; begin < options.starts; begin += options.workers) {
            const int end = std::min(options.starts, begin + options.workers);
            std::vector<std::future<StartResult>> batch;
            for (int s = begin; s < end; ++s)
                batch.push_back(std::async(std::launch::async, run_start, s));
            for (auto& fut : batch) all.push_back(fut.get());
        }
    }

    // Deterministic reduction: best residual, ties broken by start index.
    const StartResult* winner = &all.front();
    for (const StartResult& cand : all) {
        if (cand.simplex.value < winner->simplex.value
            || (cand.simplex.value == winner->simplex.value && cand.index < winner->index))
            winner = &cand;
    }

    const std::vector<double>& th = winner->simplex.best;
    for (int m = 0; m < options.n_pulses; ++m)
        result.pulses.push_back(PulseParams{pk.amplitude(th, m), pk.width(th, m),
                                            pk.center(th, m)});
    std::sort(result.pulses.begin(), result.pulses.end(),
              [](const PulseParams& a, const PulseParams& b) { return a.center < b.center; });
    result.drift = pk.drift(th);
    result.residual_rms = winner->simplex.value;
    result.status = winner->simplex.converged ? "converged" : "budget-exhausted";
    return result;
}

FitResult fit_soliton_train(const PriceSeries& series, const FitOptions& options) {
    const std::vector<double> closes = series.closes();
    return fit_soliton_train(closes, options);
}

double fit_model_value(const FitResult& fit, double tau) {
    double v = fit.trend_intercept + fit.trend_slope * tau - fit.drift * tau;
    for (const PulseParams& p : fit.pulses) v += p.amplitude * sech2(p.width * (tau - p.center));
    return v;
}

namespace {

struct Nearest {
    double value = 0.0;
    double dev_pct = 0.0;
};

Nearest nearest_of(double ratio, std::span<const double> candidates, double preferred) {
    Nearest best{candidates[0], percent_difference(ratio, candidates[0])};
    for (double c : candidates) {
        const double dev = percent_difference(ratio, c);
        const bool better = dev < best.dev_pct - 1e-12;
        const bool tie = std::fabs(dev - best.dev_pct) <= 1e-12;
        // Ties resolve toward the pulse's own template value, then upward.
        if (better || (tie && c == preferred && best.value != preferred)
            || (tie && best.value != preferred && c > best.value))
            best = {c, dev};
    }
    return best;
}

}  // namespace

Scorecard ratio_scorecard(const FitResult& fit, double time_origin) {
    if (fit.pulses.size() < 2)
        throw validation_error("ratio_scorecard: need at least two fitted pulses");
    const PulseParams& first = fit.pulses.front();
    const double t1 = first.center - time_origin;
    if (!(t1 > 0.0))
        throw validation_error("ratio_scorecard: first pulse must come after the time origin");

    std::vector<double> squares;
    for (int m = 1; m <= static_cast<int>(fit.pulses.size()) + 3; ++m)
        squares.push_back(static_cast<double>(m) * m);
    std::vector<double> fib_ladder;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = -4; k <= 9; ++k) fib_ladder.push_back(std::pow(phi, k));

    Scorecard card;
    for (size_t i = 0; i < fit.pulses.size(); ++i) {
        const PulseParams& p = fit.pulses[i];
        ScoreRow row;
        row.pulse = static_cast<int>(i) + 1;
        row.amplitude_ratio = p.amplitude / first.amplitude;
        row.time_ratio = (p.center - time_origin) / t1;
        const double preferred = static_cast<double>((i + 1) * (i + 1));
        const Nearest amp_sq = nearest_of(row.amplitude_ratio, squares, preferred);
        const Nearest amp_fib = nearest_of(row.amplitude_ratio, fib_ladder, 0.0);
        const Nearest tm_sq = nearest_of(row.time_ratio, squares, preferred);
        const Nearest tm_fib = nearest_of(row.time_ratio, fib_ladder, 0.0);
        row.amp_nearest_square = amp_sq.value;
        row.amp_square_dev_pct = amp_sq.dev_pct;
        row.amp_nearest_fib = amp_fib.value;
        row.amp_fib_dev_pct = amp_fib.dev_pct;
        row.time_nearest_square = tm_sq.value;
        row.time_square_dev_pct = tm_sq.dev_pct;
        row.time_nearest_fib = tm_fib.value;
        row.time_fib_dev_pct = tm_fib.dev_pct;
        card.rows.push_back(row);
    }
    return card;
}

void write_scorecard_text(std::ostream& out, const Scorecard& card) {
    out << "pulse  amp_ratio  near_m2  dev%   near_fib  dev%   time_ratio  near_m2  dev%\n";
    char buf[160];
    for (const ScoreRow& r : card.rows) {
        std::snprintf(buf, sizeof buf, "%5d  %9.4g  %7.3g  %5.1f  %8.4g  %5.1f  %10.4g  %7.3g  %5.1f\n",
                      r.pulse, r.amplitude_ratio, r.amp_nearest_square, r.amp_square_dev_pct,
                      r.amp_nearest_fib, r.amp_fib_dev_pct, r.time_ratio, r.time_nearest_square,
                      r.time_square_dev_pct);
        out << buf;
    }
}

}  // namespace solitrend
