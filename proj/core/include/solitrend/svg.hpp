#pragma once

#include <span>
#include <string>
#include <vector>

#include "solitrend/errors.hpp"
#include "solitrend/waves.hpp"

namespace solitrend {

struct SvgStyle {
    int width = 960;
    int height = 540;
    std::string title;
    std::string stroke = "#1f6feb";
};

struct OverlayLevel {
    double value = 0.0;  // horizontal line at this y-value
    std::string label;
};

struct OverlayTime {
    double t = 0.0;  // vertical marker at this x-value
    std::string label;
};

/// Self-contained SVG: one polyline, axes with ticks, optional horizontal
/// level lines and vertical time markers. Data maps linearly onto the plot
/// area; rejects empty input.
std::string emit_svg(std::span<const double> xs, std::span<const double> ys,
                     const SvgStyle& style, std::span<const OverlayLevel> levels = {},
                     std::span<const OverlayTime> times = {});

std::string emit_svg(const WaveField& field, const SvgStyle& style);

}  // namespace solitrend
