#include "solitrend/ohlc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace solitrend {

std::vector<double> PriceSeries::closes() const {
    std::vector<double> out;
    out.reserve(bars.size());
    for (const OhlcBar& b : bars) out.push_back(b.close);
    return out;
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0, tail = 0;
    int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d%c", &y, &mo, &d, &sep, &h, &mi, &s,
                        &tail);
    if (n == 3) {
        h = mi = s = 0;
    } else if (n >= 7) {
        if (sep != 'T' && sep != ' ')
            throw validation_error("timestamp: expected 'T' between date and time in '" + text + "'");
        if (n == 8 && tail != 'Z')
            throw validation_error("timestamp: unexpected suffix in '" + text + "'");
    } else {
        throw validation_error("timestamp: cannot parse '" + text + "'");
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
        throw validation_error("timestamp: field out of range in '" + text + "'");
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601(std::int64_t seconds) {
    std::int64_t days = seconds / 86400;
    std::int64_t rem = seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y = 0;
    unsigned m = 0, d = 0;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

namespace {

double parse_price(const std::string& field, int lineno, const char* name) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || !std::isfinite(v))
        throw validation_error("ohlc line " + std::to_string(lineno) + ": bad " + name + " '"
                               + field + "'");
    return v;
}

}  // namespace

PriceSeries load_ohlc(std::istream& in) {
    PriceSeries series;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("timestamp,", 0) == 0) continue;  // header row
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 5)
            throw validation_error("ohlc line " + std::to_string(lineno)
                                   + ": expected timestamp,open,high,low,close[,volume]");
        OhlcBar bar;
        bar.timestamp = parse_iso8601(fields[0]);
        bar.open = parse_price(fields[1], lineno, "open");
        bar.high = parse_price(fields[2], lineno, "high");
        bar.low = parse_price(fields[3], lineno, "low");
        bar.close = parse_price(fields[4], lineno, "close");
        if (fields.size() >= 6 && !fields[5].empty()) {
            bar.volume = parse_price(fields[5], lineno, "volume");
            if (*bar.volume < 0.0)
                throw validation_error("ohlc line " + std::to_string(lineno) + ": negative volume");
        }
        if (!(bar.low <= bar.open && bar.open <= bar.high)
            || !(bar.low <= bar.close && bar.close <= bar.high)
            || !(bar.low <= bar.high))
            throw validation_error("ohlc line " + std::to_string(lineno)
                                   + ": open/close outside [low, high]");
        if (!series.bars.empty()) {
            if (bar.timestamp == series.bars.back().timestamp)
                throw validation_error("ohlc line " + std::to_string(lineno)
                                       + ": duplicate timestamp");
            if (bar.timestamp < series.bars.back().timestamp)
                throw validation_error("ohlc line " + std::to_string(lineno)
                                       + ": timestamps must increase");
        }
        series.bars.push_back(bar);
    }
    if (series.bars.empty()) throw validation_error("ohlc: no data rows");
    return series;
}

PriceSeries load_ohlc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open: " + path);
    return load_ohlc(in);
}

void write_ohlc(std::ostream& out, const PriceSeries& series) {
    out << "timestamp,open,high,low,close,volume\n";
    char buf[160];
    for (const OhlcBar& b : series.bars) {
        std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g,%.10g,%.10g,", format_iso8601(b.timestamp).c_str(),
                      b.open, b.high, b.low, b.close);
        out << buf;
        if (b.volume) {
            std::snprintf(buf, sizeof buf, "%.10g", *b.volume);
            out << buf;
        }
        out << "\n";
    }
}

std::vector<PivotPoint> detect_pivots(std::span<const double> closes, double threshold_fraction) {
    if (!(threshold_fraction > 0.0))
        throw validation_error("detect_pivots: threshold_fraction must be > 0");
    const int n = static_cast<int>(closes.size());
    std::vector<PivotPoint> pivots;
    if (n == 0) return pivots;
    if (n == 1) {
        pivots.push_back({0, closes[0], true, true});
        return pivots;
    }

    enum class Dir { none, up, down };
    Dir dir = Dir::none;
    int hi_idx = 0, lo_idx = 0;
    double hi = closes[0], lo = closes[0];

    auto confirm = [&](int index, double price, bool is_high) {
        pivots.push_back({index, price, is_high, false});
    };

    for (int i = 1; i < n; ++i) {
        const double c = closes[static_cast<size_t>(i)];
        if (c > hi) {
            hi = c;
            hi_idx = i;
        }
        if (c < lo) {
            lo = c;
            lo_idx = i;
        }
        switch (dir) {
            case Dir::none:
                if (c <= hi * (1.0 - threshold_fraction)) {
                    confirm(hi_idx, hi, true);
                    dir = Dir::down;
                    lo = c;
                    lo_idx = i;
                } else if (c >= lo * (1.0 + threshold_fraction)) {
                    confirm(lo_idx, lo, false);
                    dir = Dir::up;
                    hi = c;
                    hi_idx = i;
                }
                break;
            case Dir::up:
                if (c <= hi * (1.0 - threshold_fraction)) {
                    confirm(hi_idx, hi, true);
                    dir = Dir::down;
                    lo = c;
                    lo_idx = i;
                }
                break;
            case Dir::down:
                if (c >= lo * (1.0 + threshold_fraction)) {
                    confirm(lo_idx, lo, false);
                    dir = Dir::up;
                    hi = c;
                    hi_idx = i;
                }
                break;
        }
    }

    // Endpoint pivots: first bar opens the sequence, last bar closes it,
    // both provisional, types chosen to keep high/low alternation.
    std::vector<PivotPoint> out;
    const double first = closes[0];
    const double last = closes[static_cast<size_t>(n - 1)];
    if (pivots.empty()) {
        const bool rising = last >= first;
        out.push_back({0, first, !rising, true});
        out.push_back({n - 1, last, rising, true});
        return out;
    }
    if (pivots.front().index > 0)
        out.push_back({0, first, !pivots.front().is_high, true});
    out.insert(out.end(), pivots.begin(), pivots.end());
    if (out.back().index < n - 1)
        out.push_back({n - 1, last, !out.back().is_high, true});
    return out;
}

std::vector<PivotPoint> detect_pivots(const PriceSeries& series, double threshold_fraction) {
    const std::vector<double> closes = series.closes();
    return detect_pivots(closes, threshold_fraction);
}

Swing make_swing(const PivotPoint& start, const PivotPoint& end, const PriceSeries* series) {
    Swing s;
    s.start = start;
    s.end = end;
    s.up = end.price > start.price;
    s.price_range = std::fabs(end.price - start.price);
    s.span_bars = end.index - start.index;
    if (!(s.price_range > 0.0)) throw validation_error("make_swing: zero price range");
    if (s.span_bars <= 0) throw validation_error("make_swing: pivots out of order");
    if (series) {
        const auto& bars = series->bars;
        if (start.index < 0 || end.index >= static_cast<int>(bars.size()))
            throw validation_error("make_swing: pivot index outside the series");
        s.span_seconds = bars[static_cast<size_t>(end.index)].timestamp
                       - bars[static_cast<size_t>(start.index)].timestamp;
    }
    return s;
}

std::vector<Swing> swings_from_pivots(std::span<const PivotPoint> pivots,
                                      const PriceSeries* series) {
    std::vector<Swing> out;
    for (size_t i = 1; i < pivots.size(); ++i)
        out.push_back(make_swing(pivots[i - 1], pivots[i], series));
    return out;
}

}  // namespace solitrend
