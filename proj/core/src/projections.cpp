#include "solitrend/projections.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "solitrend/fib.hpp"
#include "solitrend/fit.hpp"

namespace solitrend {

namespace {

std::string ratio_label(const char* method, double ratio) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s %.4g", method, ratio);
    return buf;
}

void check_level(double value, const std::string& label) {
    if (!std::isfinite(value) || !(value > 0.0))
        throw validation_error("projection level '" + label + "' is not a positive price: "
                               + std::to_string(value));
}

}  // namespace

ProjectionReport retracement_levels(const Swing& swing) {
    ProjectionReport report;
    report.method = "retracement";
    report.anchors = {{"swing_start", swing.start.price}, {"swing_end", swing.end.price}};
    const double dir = swing.up ? 1.0 : -1.0;
    for (double r : retracement_ratios()) {
        const std::string label = ratio_label("retracement", r);
        const double value = swing.end.price - r * swing.price_range * dir;
        check_level(value, label);
        report.levels.push_back({label, r, value});
    }
    return report;
}

ProjectionReport alternate_price_projection(const Swing& swing, double anchor_price,
                                            double anchor_bar) {
    if (!(anchor_price > 0.0))
        throw validation_error("alternate_price_projection: anchor price must be > 0");
    ProjectionReport report;
    report.method = "app";
    report.anchors = {{"anchor_price", anchor_price},
                      {"anchor_bar", anchor_bar},
                      {"swing_range", swing.price_range},
                      {"swing_span_bars", static_cast<double>(swing.span_bars)}};
    const double dir = swing.up ? 1.0 : -1.0;
    for (double r : miner_ratios()) {
        const std::string label = ratio_label("APP", r);
        const double value = anchor_price + r * swing.price_range * dir;
        check_level(value, label);
        report.levels.push_back({label, r, value});
        report.times.push_back({label, r, anchor_bar + r * swing.span_bars});
    }
    return report;
}

ProjectionReport expansion_levels(const Swing& swing) {
    ProjectionReport report;
    report.method = "expansion";
    report.anchors = {{"swing_start", swing.start.price}, {"swing_end", swing.end.price}};
    const double dir = swing.up ? 1.0 : -1.0;
    for (double r : miner_ratios()) {
        const std::string label = ratio_label("expansion", r);
        const double value = swing.end.price + r * swing.price_range * dir;
        check_level(value, label);
        report.levels.push_back({label, r, value});
    }
    return report;
}

ProjectionReport soliton_projection(const Swing& first_swing, int horizon_n) {
    if (horizon_n < 2)
        throw validation_error("soliton_projection: horizon must be >= 2");
    ProjectionReport report;
    report.method = "soliton-m2";
    report.anchors = {{"origin_price", first_swing.start.price},
                      {"origin_bar", static_cast<double>(first_swing.start.index)},
                      {"first_amplitude", first_swing.price_range},
                      {"first_span_bars", static_cast<double>(first_swing.span_bars)}};
    const double dir = first_swing.up ? 1.0 : -1.0;
    for (int m = 2; m <= horizon_n; ++m) {
        const double m2 = static_cast<double>(m) * m;
        char label[40];
        std::snprintf(label, sizeof label, "soliton-m2 (m=%d)", m);
        const double value = first_swing.start.price + m2 * first_swing.price_range * dir;
        check_level(value, label);
        report.levels.push_back({label, m2, value});
        report.times.push_back(
            {label, m2, first_swing.start.index + m2 * first_swing.span_bars});
    }
    return report;
}

namespace {

nlohmann::ordered_json fit_json_object(const FitResult& fit) {
    nlohmann::ordered_json jf;
    jf["params"] = nlohmann::ordered_json::array();
    for (const PulseParams& p : fit.pulses) {
        nlohmann::ordered_json jp;
        jp["amplitude"] = p.amplitude;
        jp["width"] = p.width;
        jp["center"] = p.center;
        jp["kappa"] = p.kappa();
        jf["params"].push_back(jp);
    }
    jf["drift"] = fit.drift;
    jf["trend_slope"] = fit.trend_slope;
    jf["trend_intercept"] = fit.trend_intercept;
    jf["residual"] = fit.residual_rms;
    jf["status"] = fit.status;
    jf["warnings"] = fit.warnings;
    return jf;
}

}  // namespace

std::string projection_report_json(const ProjectionReport& report, const FitResult* fit) {
    nlohmann::ordered_json j;
    j["method"] = report.method;
    j["anchors"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.anchors) j["anchors"][name] = value;
    j["levels"] = nlohmann::ordered_json::array();
    for (const ProjectionLevel& level : report.levels)
        j["levels"].push_back({{"label", level.label}, {"ratio", level.ratio},
                               {"value", level.value}});
    j["times"] = nlohmann::ordered_json::array();
    for (const ProjectionTime& time : report.times)
        j["times"].push_back({{"label", time.label}, {"ratio", time.ratio},
                              {"value", time.value_bars}});
    if (fit) j["fit"] = fit_json_object(*fit);
    return j.dump(2) + "\n";
}

std::string fit_report_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["method"] = "soliton-train-fit";
    j["fit"] = fit_json_object(fit);
    return j.dump(2) + "\n";
}

void write_projection_text(std::ostream& out, const ProjectionReport& report) {
    out << "method: " << report.method << "\n";
    for (const auto& [name, value] : report.anchors) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "anchor %s = %.10g\n", name.c_str(), value);
        out << buf;
    }
    for (const ProjectionLevel& level : report.levels) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "level %-22s %.10g\n", level.label.c_str(), level.value);
        out << buf;
    }
    for (const ProjectionTime& time : report.times) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "time  %-22s %.10g bars (~%lld)\n", time.label.c_str(),
                      time.value_bars, std::llround(time.value_bars));
        out << buf;
    }
}

}  // namespace solitrend
