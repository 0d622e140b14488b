#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

struct OhlcBar {
    std::int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::optional<double> volume;
};

struct PriceSeries {
    std::vector<OhlcBar> bars;

    std::vector<double> closes() const;
};

/// "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS" with optional trailing 'Z'.
std::int64_t parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t seconds);

/// CSV with header timestamp,open,high,low,close,volume. Strictly validated:
/// OHLC inequalities, strictly increasing timestamps, no duplicates; errors
/// name the offending line.
PriceSeries load_ohlc(std::istream& in);
PriceSeries load_ohlc_file(const std::string& path);
void write_ohlc(std::ostream& out, const PriceSeries& series);

struct PivotPoint {
    int index = 0;
    double price = 0.0;
    bool is_high = false;
    bool provisional = false;  // endpoint pivots not confirmed by a reversal
};

/// Zigzag on closes: a pivot is confirmed when price reverses by at least
/// threshold_fraction from the running extreme. Pivots alternate high/low;
/// the first and last bar are always included as provisional pivots.
std::vector<PivotPoint> detect_pivots(std::span<const double> closes, double threshold_fraction);
std::vector<PivotPoint> detect_pivots(const PriceSeries& series, double threshold_fraction);

struct Swing {
    PivotPoint start;
    PivotPoint end;
    bool up = false;
    double price_range = 0.0;      // > 0
    int span_bars = 0;             // > 0
    std::int64_t span_seconds = 0; // 0 when the series carries no timestamps
};

Swing make_swing(const PivotPoint& start, const PivotPoint& end, const PriceSeries* series);

/// Consecutive pivot pairs as swings.
std::vector<Swing> swings_from_pivots(std::span<const PivotPoint> pivots,
                                      const PriceSeries* series);

}  // namespace solitrend
