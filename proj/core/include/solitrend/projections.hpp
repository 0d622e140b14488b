#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "solitrend/errors.hpp"
#include "solitrend/ohlc.hpp"

namespace solitrend {

struct FitResult;

struct ProjectionLevel {
    std::string label;  // generating ratio + method, e.g. "APP 1.62"
    double ratio = 0.0;
    double value = 0.0;  // absolute price
};

struct ProjectionTime {
    std::string label;
    double ratio = 0.0;
    double value_bars = 0.0;  // bar-index units; wall clock only at reporting
};

struct ProjectionReport {
    std::string method;  // retracement | app | expansion | soliton-m2
    std::vector<std::pair<std::string, double>> anchors;
    std::vector<ProjectionLevel> levels;
    std::vector<ProjectionTime> times;
};

/// Levels at end - r * range * direction for the mirror ratio set.
ProjectionReport retracement_levels(const Swing& swing);

/// Alternate price projection: anchor + r * range * direction for the
/// projection ratio set, with matching time projections from the anchor bar.
ProjectionReport alternate_price_projection(const Swing& swing, double anchor_price,
                                            double anchor_bar);

/// Price expansion of the swing beyond its own end, same ratio set.
ProjectionReport expansion_levels(const Swing& swing);

/// Tops at origin + m^2 * range * direction and times at origin bar
/// + m^2 * span, m = 2..horizon_n, from the first trend swing.
ProjectionReport soliton_projection(const Swing& first_swing, int horizon_n);

/// JSON per the report schema; fit may be null.
std::string projection_report_json(const ProjectionReport& report, const FitResult* fit);

/// JSON for a standalone fit result (schema's fit object plus method).
std::string fit_report_json(const FitResult& fit);

void write_projection_text(std::ostream& out, const ProjectionReport& report);

}  // namespace solitrend
