#include "solitrend/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace solitrend {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 44;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Round tick spacing to 1/2/5 times a power of ten.
double tick_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm < 1.5) return mag;
    if (norm < 3.5) return 2.0 * mag;
    if (norm < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

std::string emit_svg(std::span<const double> xs, std::span<const double> ys,
                     const SvgStyle& style, std::span<const OverlayLevel> levels,
                     std::span<const OverlayTime> times) {
    if (xs.empty() || ys.empty() || xs.size() != ys.size())
        throw validation_error("emit_svg: need equal-length non-empty x and y data");

    double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
    for (double x : xs) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    for (double y : ys) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    for (const OverlayLevel& level : levels) {
        ymin = std::min(ymin, level.value);
        ymax = std::max(ymax, level.value);
    }
    for (const OverlayTime& time : times) {
        xmin = std::min(xmin, time.t);
        xmax = std::max(xmax, time.t);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    const double ypad = 0.04 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = style.width - kMarginLeft - kMarginRight;
    const double plot_h = style.height - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
        << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << " "
        << style.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty())
        out << "<text x=\"" << style.width / 2 << "\" y=\"22\" text-anchor=\"middle\""
            << " font-family=\"sans-serif\" font-size=\"15\">" << style.title << "</text>\n";

    // Axes
    out << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmax)
        << "\" y2=\"" << py(ymin) << "\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(ymin) << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << py(ymax) << "\"/>\n";
    out << "</g>\n";

    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    const double xstep = tick_step(xmax - xmin, 8);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep; x += xstep) {
        out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(ymin)) << "\" x2=\""
            << num(px(x)) << "\" y2=\"" << num(py(ymin) + 5) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(ymin) + 18)
            << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    const double ystep = tick_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep; y += ystep) {
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << num(py(y)) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << num(py(y)) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    out << "</g>\n";

    // Overlays under the data polyline.
    for (const OverlayLevel& level : levels) {
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << num(py(level.value)) << "\" x2=\""
            << num(px(xmax)) << "\" y2=\"" << num(py(level.value))
            << "\" stroke=\"#c44\" stroke-dasharray=\"6 3\"/>\n";
        if (!level.label.empty())
            out << "<text x=\"" << num(px(xmax) - 4) << "\" y=\"" << num(py(level.value) - 4)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\""
                << " fill=\"#c44\">" << level.label << "</text>\n";
    }
    for (const OverlayTime& time : times) {
        out << "<line x1=\"" << num(px(time.t)) << "\" y1=\"" << num(py(ymin)) << "\" x2=\""
            << num(px(time.t)) << "\" y2=\"" << num(py(ymax))
            << "\" stroke=\"#2a4\" stroke-dasharray=\"6 3\"/>\n";
        if (!time.label.empty())
            out << "<text x=\"" << num(px(time.t) + 4) << "\" y=\"" << num(py(ymax) + 12)
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#2a4\">" << time.label
                << "</text>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"1.5\""
        << " points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out << " ";
        out << num(px(xs[i])) << "," << num(py(ys[i]));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

std::string emit_svg(const WaveField& field, const SvgStyle& style) {
    std::vector<double> xs(static_cast<size_t>(field.grid.nx));
    for (int i = 0; i < field.grid.nx; ++i) xs[static_cast<size_t>(i)] = i * field.grid.dx;
    SvgStyle s = style;
    if (s.title.empty()) s.title = "field at t=" + num(field.time);
    return emit_svg(xs, field.samples, s);
}

}  // namespace solitrend
